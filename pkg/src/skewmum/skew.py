"""Generalized Wigner-Yanase skew information I^s.

For a state with spectral decomposition rho = sum_l lam_l |l><l|,

    I^s(rho, A) = sum_{l != l'} [lam_l - f_s(lam_l, lam_l')] |<l|A|l'>|^2

where f_s is the power mean of order s <= 0. s = 0 gives the Wigner-Yanase
skew information, s = -1 the quantum Fisher information in the convention
F = sum (lam - lam')^2 / (2 (lam + lam')) |<l|A|l'>|^2 (a quarter of the
"4 x" convention common elsewhere), and s = -inf the min-mean quantity.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import SpectralDecomposition, as_density_matrix, as_hermitian, hermitian_eigendecomposition

ZERO_CUTOFF = 1e-12
# below this s, power means are evaluated in log space
LOG_SPACE_S = -50.0


@dataclass(frozen=True)
class SParameter:
    """Order of the generalized mean: a finite value <= 0, or -inf."""

    value: float

    def __post_init__(self):
        v = float(self.value)
        if math.isnan(v) or v > 0 or v == math.inf:
            raise ValueError(f"s must be <= 0 or -inf, got {self.value!r}")
        object.__setattr__(self, "value", v)

    @property
    def is_neg_inf(self) -> bool:
        return self.value == -math.inf

    @classmethod
    def parse(cls, text) -> "SParameter":
        if isinstance(text, SParameter):
            return text
        if isinstance(text, str):
            t = text.strip().lower()
            if t in ("-inf", "-infinity", "neg_inf"):
                return cls(-math.inf)
            try:
                return cls(float(t))
            except ValueError:
                raise ValueError(f"cannot parse s from {text!r}") from None
        return cls(float(text))

    def label(self) -> str:
        if self.is_neg_inf:
            return "-inf"
        return f"{self.value:g}"

    def __str__(self) -> str:
        return self.label()


S_WY = SParameter(0.0)
S_QFI = SParameter(-1.0)
S_MIN = SParameter(-math.inf)


def _as_s(s) -> SParameter:
    return s if isinstance(s, SParameter) else SParameter.parse(s)


def generalized_mean(s, a: float, b: float) -> float:
    """f_s(a, b), with f_s = 0 as soon as either argument is below 1e-12."""
    s = _as_s(s)
    if a < 0 or b < 0:
        raise ValueError(f"arguments must be nonnegative, got {a!r}, {b!r}")
    if a <= ZERO_CUTOFF or b <= ZERO_CUTOFF:
        return 0.0
    if a == b:
        return float(a)
    if s.is_neg_inf:
        return float(min(a, b))
    if s.value == 0.0:
        return math.sqrt(a * b)
    if s.value <= LOG_SPACE_S:
        la, lb = s.value * math.log(a), s.value * math.log(b)
        m = max(la, lb)
        return math.exp((m + math.log((math.exp(la - m) + math.exp(lb - m)) / 2)) / s.value)
    return ((a**s.value + b**s.value) / 2) ** (1 / s.value)


def mean_matrix(s, lam: np.ndarray) -> np.ndarray:
    """Array of f_s(lam_l, lam_l') for all l, l'."""
    s = _as_s(s)
    lam = np.where(lam <= ZERO_CUTOFF, 0.0, np.asarray(lam, dtype=float))
    a, b = lam[:, None], lam[None, :]
    zero = (a == 0.0) | (b == 0.0)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        if s.is_neg_inf:
            f = np.minimum(a, b)
        elif s.value == 0.0:
            f = np.sqrt(a * b)
        elif s.value <= LOG_SPACE_S:
            la, lb = s.value * np.log(a), s.value * np.log(b)
            m = np.maximum(la, lb)
            f = np.exp((m + np.log((np.exp(la - m) + np.exp(lb - m)) / 2)) / s.value)
        else:
            f = ((a**s.value + b**s.value) / 2) ** (1 / s.value)
    f = np.where(a == b, np.broadcast_to(a, f.shape), f)
    return np.where(zero, 0.0, f)


def skew_weights(s, lam: np.ndarray) -> np.ndarray:
    """W[l, l'] = lam_l - f_s(lam_l, lam_l') with the diagonal zeroed."""
    lam = np.asarray(lam, dtype=float)
    w = lam[:, None] - mean_matrix(s, lam)
    np.fill_diagonal(w, 0.0)
    return w


def variance(rho, a) -> float:
    rho = np.asarray(rho, dtype=complex)
    a = as_hermitian(a)
    if rho.shape != a.shape:
        raise ValueError(f"state shape {rho.shape} does not match observable {a.shape}")
    ra = rho @ a
    return float(np.real(np.sum(ra * a.T)) - np.real(np.trace(ra)) ** 2)


def skew_from_spectrum(dec: SpectralDecomposition, a: np.ndarray, weights: np.ndarray) -> float:
    """Evaluate I^s given a precomputed decomposition and weight matrix."""
    v = dec.eigenvectors
    elems = v.conj().T @ a @ v
    return float(np.sum(weights * (elems.real**2 + elems.imag**2)))


def skew_information(rho, a, s) -> float:
    """Generalized Wigner-Yanase skew information I^s(rho, A).

    Parameters
    ----------
    rho : array_like
        Density matrix.
    a : array_like
        Hermitian observable of the same dimension.
    s : SParameter, float or str
        Order of the generalized mean; ``"-inf"`` is accepted.
    """
    rho = as_density_matrix(rho)
    a = as_hermitian(a)
    if rho.shape != a.shape:
        raise ValueError(f"state shape {rho.shape} does not match observable {a.shape}")
    dec = hermitian_eigendecomposition(rho)
    return skew_from_spectrum(dec, a, skew_weights(s, dec.eigenvalues))


def quantum_fisher_information(rho, a) -> float:
    """sum_{l,l'} (lam_l - lam_l')^2 / (2 (lam_l + lam_l')) |<l|A|l'>|^2."""
    rho = as_density_matrix(rho)
    a = as_hermitian(a)
    dec = hermitian_eigendecomposition(rho)
    lam = np.clip(dec.eigenvalues, 0.0, None)
    s = lam[:, None] + lam[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        w = np.where(s > ZERO_CUTOFF, (lam[:, None] - lam[None, :]) ** 2 / (2 * s), 0.0)
    elems = dec.eigenvectors.conj().T @ a @ dec.eigenvectors
    return float(np.sum(w * np.abs(elems) ** 2))


def wigner_yanase(rho, a) -> float:
    """-1/2 tr([sqrt rho, A]^2), computed from the matrix square root."""
    rho = as_density_matrix(rho)
    a = as_hermitian(a)
    dec = hermitian_eigendecomposition(rho)
    root = (dec.eigenvectors * np.sqrt(np.clip(dec.eigenvalues, 0, None))) @ dec.eigenvectors.conj().T
    c = root @ a - a @ root
    return float(-0.5 * np.trace(c @ c).real)


@dataclass(frozen=True)
class IsotropicFamilySpectrum:
    """Spectrum of p |psi><psi| + (1-p) I / D with the pure-state variance."""

    lambda_top: float
    lambda_rest: float
    multiplicity: int
    pure_variance: float

    def __post_init__(self):
        if not self.lambda_top >= self.lambda_rest >= 0:
            raise ValueError("need lambda_top >= lambda_rest >= 0")
        if abs(self.lambda_top + self.multiplicity * self.lambda_rest - 1) > 1e-10:
            raise ValueError("eigenvalues do not sum to 1")


def isotropic_factor(lambda_top: float, lambda_rest: float, s) -> float:
    """lambda_top + lambda_rest - 2 f_s(lambda_top, lambda_rest)."""
    return lambda_top + lambda_rest - 2.0 * generalized_mean(s, lambda_top, lambda_rest)


def isotropic_closed_form(spec: IsotropicFamilySpectrum, s) -> float:
    """I^s of a rank-one-plus-white-noise state.

    Only (top, rest) pairs contribute, and the rest-block sum of
    |<psi|A|j>|^2 equals the variance of A in the top eigenvector.
    """
    return isotropic_factor(spec.lambda_top, spec.lambda_rest, s) * spec.pure_variance
