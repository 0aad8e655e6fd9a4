"""Closed-form k-separability / k-producibility bounds and detection verdicts."""
from __future__ import annotations

import enum
from dataclasses import asdict, dataclass

from .collective import lhs_sum
from .linalg import as_density_matrix
from .mum import MumSet
from .skew import SParameter

VERDICT_TOL = 1e-9


class CriterionKind(str, enum.Enum):
    KSEPARABILITY = "ksep"
    KPRODUCIBILITY = "kprod"

    @classmethod
    def parse(cls, text) -> "CriterionKind":
        if isinstance(text, cls):
            return text
        t = str(text).lower()
        aliases = {"ksep": cls.KSEPARABILITY, "kseparability": cls.KSEPARABILITY,
                   "kprod": cls.KPRODUCIBILITY, "kproducibility": cls.KPRODUCIBILITY}
        if t not in aliases:
            raise ValueError(f"unknown criterion {text!r}; use ksep or kprod")
        return aliases[t]


def _check_kappa(d: int, kappa: float) -> None:
    if d < 2:
        raise ValueError(f"need d >= 2, got {d}")
    if not 1.0 / d < kappa <= 1.0 + 1e-12:
        raise ValueError(f"kappa must lie in (1/d, 1], got {kappa!r}")


def ksep_bound(N: int, d: int, kappa: float, k: int) -> float:
    """Upper bound of the criterion sum over k-separable states, 2 <= k <= N."""
    if not 2 <= k <= N:
        raise ValueError(f"k-separability needs 2 <= k <= N, got k={k}, N={N}")
    _check_kappa(d, kappa)
    return N * (d * kappa - 1) + ((N - k + 1) ** 2 + k - 1) * (kappa - 1.0 / d)


def kprod_bound(N: int, d: int, kappa: float, k: int) -> float:
    """Upper bound of the criterion sum over k-producible states, 1 <= k <= N."""
    if not 1 <= k <= N:
        raise ValueError(f"k-producibility needs 1 <= k <= N, got k={k}, N={N}")
    _check_kappa(d, kappa)
    p = N // k
    if N == p * k:
        return N * k * (kappa - 1.0 / d) + N * (d * kappa - 1)
    return (N**2 + p**2 * k**2 + p * k**2 - 2 * p * k * N) * (kappa - 1.0 / d) + N * (d * kappa - 1)


def bound(kind, N: int, d: int, kappa: float, k: int) -> float:
    kind = CriterionKind.parse(kind)
    fn = ksep_bound if kind is CriterionKind.KSEPARABILITY else kprod_bound
    return fn(N, d, kappa, k)


def k_range(kind, N: int) -> range:
    """Meaningful k values: 2..N for k-separability, 1..N-1 for k-producibility."""
    if CriterionKind.parse(kind) is CriterionKind.KSEPARABILITY:
        return range(2, N + 1)
    return range(1, N)


@dataclass(frozen=True)
class CriterionReport:
    criterion_kind: CriterionKind
    N: int
    d: int
    kappa: float
    t: float
    s: SParameter
    k: int
    lhs: float
    bound: float

    @property
    def margin(self) -> float:
        return self.lhs - self.bound

    @property
    def violated(self) -> bool:
        return self.lhs > self.bound + VERDICT_TOL

    @property
    def verdict(self) -> str:
        if self.violated:
            return "violated"
        if self.lhs > self.bound:
            return "inconclusive-at-tolerance"
        return "not violated"

    @property
    def conclusion(self) -> str:
        if not self.violated:
            return "no entanglement certified by this criterion"
        if self.criterion_kind is CriterionKind.KSEPARABILITY:
            return f"state is {self.k}-nonseparable"
        return f"state contains {self.k + 1}-partite entanglement"

    def to_dict(self) -> dict:
        out = asdict(self)
        out["criterion_kind"] = self.criterion_kind.value
        out["s"] = self.s.label()
        out.update(margin=self.margin, violated=self.violated, verdict=self.verdict, conclusion=self.conclusion)
        return out


def evaluate_criterion(rho, mum: MumSet, s, k: int, kind, num_sites: int | None = None,
                       lhs: float | None = None) -> CriterionReport:
    """Compare the criterion sum of ``rho`` against the matching bound.

    A precomputed ``lhs`` may be supplied (e.g. from the isotropic fast path).
    """
    kind = CriterionKind.parse(kind)
    s = SParameter.parse(s)
    if num_sites is None:
        rho = as_density_matrix(rho)
        num_sites = _sites_of(rho.shape[0], mum.d)
    b = bound(kind, num_sites, mum.d, mum.kappa, k)
    if lhs is None:
        lhs = lhs_sum(rho, mum, s, num_sites)
    return CriterionReport(kind, num_sites, mum.d, mum.kappa, mum.t, s, k, float(lhs), float(b))


def _sites_of(dim: int, d: int) -> int:
    n = 0
    while d**n < dim:
        n += 1
    if d**n != dim:
        raise ValueError(f"dimension {dim} is not a power of {d}")
    return n


@dataclass(frozen=True)
class DepthResult:
    depth: int
    lhs: float
    bounds: dict

    def chain(self) -> list[str]:
        """Human-readable inequalities that fixed the depth."""
        lines = []
        for k, b in self.bounds.items():
            rel = ">" if self.lhs > b + VERDICT_TOL else "<="
            lines.append(f"I = {self.lhs:.10g} {rel} I_{k} = {b:.10g}")
        return lines


def certified_depth_report(rho, mum: MumSet, s, num_sites: int | None = None,
                           lhs: float | None = None) -> DepthResult:
    if lhs is None:
        rho = as_density_matrix(rho)
    if num_sites is None:
        num_sites = _sites_of(rho.shape[0], mum.d)
    if lhs is None:
        lhs = lhs_sum(rho, mum, s, num_sites)
    bounds = {}
    for k in range(1, num_sites + 1):
        bounds[k] = kprod_bound(num_sites, mum.d, mum.kappa, k)
        if lhs <= bounds[k] + VERDICT_TOL:
            return DepthResult(k, float(lhs), bounds)
    return DepthResult(num_sites, float(lhs), bounds)


def certified_depth(rho, mum: MumSet, s, num_sites: int | None = None) -> int:
    """Smallest k whose k-producibility bound holds.

    Every smaller k' is violated, so the state carries at least k-partite
    entanglement. Returns 1 when nothing is violated.
    """
    return certified_depth_report(rho, mum, s, num_sites).depth
