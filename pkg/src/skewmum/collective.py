"""Collective MUM observables P_Gamma = sum_{i in Gamma} P_i and the criterion sum.

Collective operators are applied to vectors site by site through tensor
reshapes; dense materialization is available for checks and small systems.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .linalg import (
    SpectralDecomposition,
    as_density_matrix,
    embed_at_site,
    hermitian_eigendecomposition,
    kron,
)
from .mum import MumSet
from .skew import isotropic_factor, skew_from_spectrum, skew_weights
from .states import PureState, StateFamily


class BoundViolation(AssertionError):
    """A quantity that is provably bounded exceeded its bound."""


def _check_sites(sites: Sequence[int], num_sites: int) -> tuple[int, ...]:
    sites = tuple(int(i) for i in sites)
    if not sites:
        raise ValueError("site subset must be nonempty")
    if len(set(sites)) != len(sites):
        raise ValueError(f"repeated sites in {sites}")
    for i in sites:
        if not 0 <= i < num_sites:
            raise IndexError(f"site {i} outside 0..{num_sites - 1}")
    return sites


def apply_local_sum(local: np.ndarray, vecs: np.ndarray, sites: Sequence[int], num_sites: int) -> np.ndarray:
    """Compute (sum_{i in sites} local_i) @ vecs for vecs of shape (d^N,) or (d^N, m)."""
    d = local.shape[0]
    squeeze = vecs.ndim == 1
    v = vecs.reshape(d**num_sites, -1)
    m = v.shape[1]
    t = v.reshape([d] * num_sites + [m])
    out = np.zeros_like(t, dtype=complex)
    for i in sites:
        # contract local on axis i, then move the new axis back into place
        out += np.moveaxis(np.tensordot(local, t, axes=([1], [i])), 0, i)
    out = out.reshape(d**num_sites, m)
    return out[:, 0] if squeeze else out


@dataclass(frozen=True)
class CollectiveObservable:
    num_sites: int
    local_dim: int
    site_subset: tuple[int, ...]
    b: int
    n: int
    local_effect: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.local_dim**self.num_sites

    def apply(self, vecs: np.ndarray) -> np.ndarray:
        return apply_local_sum(self.local_effect, vecs, self.site_subset, self.num_sites)

    def materialize(self) -> np.ndarray:
        out = np.zeros((self.dim, self.dim), dtype=complex)
        for i in self.site_subset:
            out += embed_at_site(self.local_effect, i, self.num_sites, self.local_dim)
        return out


def collective_observable(mum: MumSet, gamma: Sequence[int], b: int, n: int, num_sites: int) -> CollectiveObservable:
    if not 0 <= b <= mum.d:
        raise IndexError(f"measurement index {b} outside 0..{mum.d}")
    if not 0 <= n < mum.d:
        raise IndexError(f"outcome index {n} outside 0..{mum.d - 1}")
    sites = _check_sites(gamma, num_sites)
    return CollectiveObservable(num_sites, mum.d, sites, b, n, mum.effects[b, n])


def collective_operator(mum: MumSet, gamma: Sequence[int], b: int, n: int, num_sites: int) -> np.ndarray:
    """Dense matrix of sum_{i in gamma} P_n^(b) acting on site i."""
    return collective_observable(mum, gamma, b, n, num_sites).materialize()


def full_observables(mum: MumSet, num_sites: int) -> list[CollectiveObservable]:
    """All collective observables on Gamma = every site, in (b, n) order."""
    sites = tuple(range(num_sites))
    return [collective_observable(mum, sites, b, n, num_sites) for b, n in mum.pairs()]


def _num_sites(dim: int, d: int) -> int:
    n, size = 0, 1
    while size < dim:
        size *= d
        n += 1
    if size != dim:
        raise ValueError(f"dimension {dim} is not a power of local dimension {d}")
    return n


def lhs_terms(rho, mum: MumSet, s, num_sites: int | None = None, dec: SpectralDecomposition | None = None) -> list[float]:
    """I^s(rho, P_N,n^(b)) for every (b, n) in lexicographic order."""
    rho = as_density_matrix(rho)
    if num_sites is None:
        num_sites = _num_sites(rho.shape[0], mum.d)
    if rho.shape[0] != mum.d**num_sites:
        raise ValueError(f"state dim {rho.shape[0]} != {mum.d}^{num_sites}")
    if dec is None:
        dec = hermitian_eigendecomposition(rho)
    weights = skew_weights(s, dec.eigenvalues)
    v = dec.eigenvectors
    terms = []
    for obs in full_observables(mum, num_sites):
        elems = v.conj().T @ obs.apply(v)
        terms.append(float(np.sum(weights * (elems.real**2 + elems.imag**2))))
    return terms


def lhs_sum(rho, mum: MumSet, s, num_sites: int | None = None, dec: SpectralDecomposition | None = None) -> float:
    """Criterion left-hand side sum_{b,n} I^s(rho, P_N,n^(b)) on the dense path.

    The spectral decomposition of ``rho`` is computed once and shared by all
    (d + 1) d observables.
    """
    return float(sum(lhs_terms(rho, mum, s, num_sites, dec)))


def lhs_sum_dense(rho, mum: MumSet, s, num_sites: int | None = None) -> float:
    """Reference path: materialize every observable and evaluate I^s directly."""
    rho = as_density_matrix(rho)
    if num_sites is None:
        num_sites = _num_sites(rho.shape[0], mum.d)
    dec = hermitian_eigendecomposition(rho)
    weights = skew_weights(s, dec.eigenvalues)
    return float(sum(skew_from_spectrum(dec, o.materialize(), weights) for o in full_observables(mum, num_sites)))


def pure_variance_terms(psi: PureState | np.ndarray, mum: MumSet, num_sites: int | None = None) -> list[float]:
    """V(psi, P_N,n^(b)) for every (b, n), without materializing operators."""
    amps = psi.amplitudes if isinstance(psi, PureState) else np.asarray(psi, dtype=complex)
    if num_sites is None:
        num_sites = _num_sites(len(amps), mum.d)
    out = []
    for obs in full_observables(mum, num_sites):
        a_psi = obs.apply(amps)
        mean = np.vdot(amps, a_psi).real
        out.append(float(np.vdot(a_psi, a_psi).real - mean**2))
    return out


def variance_sum(rho, mum: MumSet, num_sites: int | None = None) -> float:
    """sum_{b,n} V(rho, P_N,n^(b)), an upper bound on the criterion sum."""
    rho = as_density_matrix(rho)
    if num_sites is None:
        num_sites = _num_sites(rho.shape[0], mum.d)
    total = 0.0
    for obs in full_observables(mum, num_sites):
        a = obs.materialize()
        ra = rho @ a
        total += float(np.real(np.sum(ra * a.T)) - np.real(np.trace(ra)) ** 2)
    return total


def lhs_sum_isotropic(family: StateFamily, p: float, mum: MumSet, s) -> float:
    """Criterion sum for p |psi><psi| + (1 - p) I / D via the closed form.

    Every term is isotropic_factor(lambda_top, lambda_rest, s) times the
    variance of the observable in psi.
    """
    if not isinstance(family, StateFamily):
        raise TypeError("lhs_sum_isotropic needs a StateFamily (pure state plus white noise)")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"noise parameter p must lie in [0, 1], got {p!r}")
    dim = family.total_dim
    rest = (1 - p) / dim
    factor = isotropic_factor(p + rest, rest, s)
    return factor * float(sum(pure_variance_terms(family.base, mum)))


def verify_prop31(mum: MumSet) -> tuple[float, float]:
    """Largest eigenvalue of sum_{b,n} P_n^(b) (x) P_n^(b) and the bound 1 + kappa."""
    d = mum.d
    cross = np.zeros((d * d, d * d), dtype=complex)
    for b, n in mum.pairs():
        p = mum.effects[b, n]
        cross += kron(p, p)
    top = float(hermitian_eigendecomposition(cross).eigenvalues[0])
    return top, 1.0 + mum.kappa


def subset_bound(gamma_size: int, d: int, kappa: float) -> float:
    return gamma_size**2 * (kappa - 1.0 / d) + gamma_size * (d * kappa - 1.0)


def verify_prop32(rho_gamma, mum: MumSet, gamma_size: int, s) -> tuple[float, float]:
    """Criterion sum on a reduced state together with its subset bound.

    Raises :class:`BoundViolation` if the sum exceeds the bound by more
    than 1e-9.
    """
    rho_gamma = as_density_matrix(rho_gamma)
    if rho_gamma.shape[0] != mum.d**gamma_size:
        raise ValueError(f"state dim {rho_gamma.shape[0]} != {mum.d}^{gamma_size}")
    lhs = lhs_sum(rho_gamma, mum, s, gamma_size)
    bound = subset_bound(gamma_size, mum.d, mum.kappa)
    if lhs > bound + 1e-9:
        raise BoundViolation(f"subset sum {lhs!r} exceeds bound {bound!r}")
    return lhs, bound
