"""Complete sets of mutually unbiased measurements (MUMs) in dimension d.

The construction starts from a Hilbert-Schmidt orthonormal basis of d^2 - 1
traceless Hermitian operators, arranges it on a (d-1) x (d+1) grid and forms

    F_n^(b) = F^(b) - (d + sqrt d) F_{n,b}     n < d
    F_d^(b) = (1 + sqrt d) F^(b)
    P_n^(b) = I/d + t F_n^(b)

with F^(b) the column sum of the grid. Indices are zero-based in code:
``effects[b, n]`` is P_{n+1}^{(b+1)}.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .linalg import hermiticity_defect
from .roots import bisect

GRAM_TOL = 1e-10


class PositivityError(ValueError):
    """A measurement effect has a negative eigenvalue at the requested t."""

    def __init__(self, b: int, n: int, min_eig: float, t: float):
        super().__init__(
            f"effect P_{n + 1}^({b + 1}) has min eigenvalue {min_eig:.3e} at t={t!r}"
        )
        self.b, self.n, self.min_eig, self.t = b, n, min_eig, t


def build_gell_mann_basis(d: int) -> list[np.ndarray]:
    """Generalized Gell-Mann matrices normalized to tr(F_j F_k) = delta_jk.

    Order: for each pair j < k the symmetric then the antisymmetric matrix,
    followed by the d - 1 diagonal ones. For d = 2 this is sigma_x, sigma_y,
    sigma_z, each divided by sqrt 2.
    """
    if d < 2:
        raise ValueError(f"need d >= 2, got {d}")
    out = []
    r2 = math.sqrt(2.0)
    for j in range(d):
        for k in range(j + 1, d):
            sym = np.zeros((d, d), dtype=complex)
            sym[j, k] = sym[k, j] = 1 / r2
            anti = np.zeros((d, d), dtype=complex)
            anti[j, k] = -1j / r2
            anti[k, j] = 1j / r2
            out += [sym, anti]
    for m in range(1, d):
        diag = np.zeros(d)
        diag[:m] = 1.0
        diag[m] = -m
        out.append(np.diag(diag / math.sqrt(m * (m + 1))).astype(complex))
    return out


def loo_gram_residual(basis: Sequence[np.ndarray]) -> float:
    """Max deviation of the Hilbert-Schmidt Gram matrix from the identity."""
    stack = np.asarray(basis)
    gram = np.einsum("aij,bji->ab", stack, stack)
    return float(np.max(np.abs(gram - np.eye(len(basis)))))


def validate_loo_basis(basis: Sequence[np.ndarray], d: int) -> None:
    if len(basis) != d * d - 1:
        raise ValueError(f"LOO basis needs {d * d - 1} operators, got {len(basis)}")
    for k, f in enumerate(basis):
        if f.shape != (d, d):
            raise ValueError(f"operator {k} has shape {f.shape}, expected {(d, d)}")
        if hermiticity_defect(f) > 1e-12:
            raise ValueError(f"operator {k} is not Hermitian")
        if abs(np.trace(f)) > 1e-12:
            raise ValueError(f"operator {k} is not traceless")
    res = loo_gram_residual(basis)
    if res > GRAM_TOL:
        raise ValueError(f"basis is not orthonormal: Gram residual {res:.3e}")


def kappa_of_t(d: int, t: float) -> float:
    return 1.0 / d + t * t * (1.0 + math.sqrt(d)) ** 2 * (d - 1)


def t_of_kappa(d: int, kappa: float) -> float:
    if d < 2:
        raise ValueError(f"need d >= 2, got {d}")
    if kappa <= 1.0 / d:
        raise ValueError(f"kappa must exceed 1/d = {1.0 / d!r}, got {kappa!r}")
    return math.sqrt((kappa - 1.0 / d) / (d - 1)) / (1.0 + math.sqrt(d))


def grid_operators(d: int, basis: Sequence[np.ndarray] | None = None) -> np.ndarray:
    """The (d+1) x d grid of traceless operators F_n^(b), shape (d+1, d, d, d)."""
    if basis is None:
        basis = build_gell_mann_basis(d)
    else:
        validate_loo_basis(basis, d)
    rd = math.sqrt(d)
    f_ops = np.zeros((d + 1, d, d, d), dtype=complex)
    for b in range(d + 1):
        # column-major flat index: k = b (d-1) + n
        col = [np.asarray(basis[b * (d - 1) + n], dtype=complex) for n in range(d - 1)]
        total = sum(col)
        for n in range(d - 1):
            f_ops[b, n] = total - (d + rd) * col[n]
        f_ops[b, d - 1] = (1 + rd) * total
    return f_ops


@dataclass(frozen=True)
class MumSet:
    """A complete set of d + 1 MUMs with d outcomes each.

    ``effects[b, n]`` and ``f_ops[b, n]`` are d x d arrays; both stacks are
    read-only after construction.
    """

    d: int
    t: float
    kappa: float
    effects: np.ndarray = field(repr=False)
    f_ops: np.ndarray = field(repr=False)

    @property
    def num_measurements(self) -> int:
        return self.d + 1

    def effect(self, b: int, n: int) -> np.ndarray:
        return self.effects[b, n]

    def pairs(self):
        """(b, n) in the fixed lexicographic summation order."""
        for b in range(self.d + 1):
            for n in range(self.d):
                yield b, n


def min_effect_eigenvalue(f_ops: np.ndarray, d: int, t: float) -> tuple[float, int, int]:
    """Smallest eigenvalue over all I/d + t F_n^(b), with its (b, n)."""
    worst = (math.inf, -1, -1)
    for b in range(d + 1):
        for n in range(d):
            lam = float(np.linalg.eigvalsh(np.eye(d) / d + t * f_ops[b, n])[0])
            if lam < worst[0]:
                worst = (lam, b, n)
    return worst


def build_mum_set(d: int, t: float, basis: Sequence[np.ndarray] | None = None) -> MumSet:
    """Build the MUM set at parameter ``t``.

    Raises
    ------
    PositivityError
        If some effect has an eigenvalue below -1e-10.
    """
    if d < 2:
        raise ValueError(f"need d >= 2, got {d}")
    if not t > 0:
        raise ValueError(f"t must be positive, got {t!r}")
    f_ops = grid_operators(d, basis)
    lam, b, n = min_effect_eigenvalue(f_ops, d, t)
    if lam < -1e-10:
        raise PositivityError(b, n, lam, t)
    effects = np.eye(d, dtype=complex) / d + t * f_ops
    effects.flags.writeable = False
    f_ops.flags.writeable = False
    kappa = kappa_of_t(d, t)
    if kappa > 1.0 + 1e-12:
        raise ValueError(f"kappa {kappa!r} exceeds 1")
    return MumSet(d, float(t), min(kappa, 1.0), effects, f_ops)


def build_mum_set_kappa(d: int, kappa: float, basis=None) -> MumSet:
    return build_mum_set(d, t_of_kappa(d, kappa), basis)


def max_positive_t(d: int, basis: Sequence[np.ndarray] | None = None) -> float:
    """Largest t keeping every effect positive semidefinite, by bisection.

    The minimum eigenvalue over all effects is concave and decreasing in t, so
    the feasible set is an interval [0, t_max]. The bisection runs to machine
    resolution and returns the feasible end of the final bracket.
    """
    f_ops = grid_operators(d, basis)

    def infeasible(t: float) -> bool:
        return min_effect_eigenvalue(f_ops, d, t)[0] < 0.0

    hi = 1.0
    while not infeasible(hi):
        hi *= 2.0
    return bisect(infeasible, 0.0, hi).lo


def default_mum_set(d: int) -> MumSet:
    return build_mum_set(d, max_positive_t(d))


def sum_f_residual(mum: MumSet) -> float:
    """max_b || sum_n F_n^(b) ||_max, zero for a valid grid."""
    return float(np.max(np.abs(mum.f_ops.sum(axis=1))))


def check_sum_squares(mum: MumSet) -> float:
    """|| sum_{b,n} (P_n^(b))^2 - (d+1) kappa I ||_max."""
    acc = np.zeros((mum.d, mum.d), dtype=complex)
    for b, n in mum.pairs():
        p = mum.effects[b, n]
        acc += p @ p
    return float(np.max(np.abs(acc - (mum.d + 1) * mum.kappa * np.eye(mum.d))))


def expected_overlap(d: int, kappa: float, b: int, n: int, b2: int, n2: int) -> float:
    if b != b2:
        return 1.0 / d
    if n == n2:
        return kappa
    return (1.0 - kappa) / (d - 1)


def trace_condition_residual(mum: MumSet) -> float:
    """Worst entrywise error in tr(P) = 1 and the pairwise overlap table."""
    d = mum.d
    flat = mum.effects.reshape((d + 1) * d, d, d)
    gram = np.einsum("aij,bji->ab", flat, flat)
    expect = np.empty_like(gram, dtype=float)
    labels = list(mum.pairs())
    for i, (b, n) in enumerate(labels):
        for j, (b2, n2) in enumerate(labels):
            expect[i, j] = expected_overlap(d, mum.kappa, b, n, b2, n2)
    traces = np.einsum("aii->a", flat)
    return float(max(np.max(np.abs(gram - expect)), np.max(np.abs(traces - 1.0))))


def completeness_residual(mum: MumSet) -> float:
    """max_b || sum_n P_n^(b) - I ||_max."""
    return float(np.max(np.abs(mum.effects.sum(axis=1) - np.eye(mum.d))))
