"""Benchmark qubit states and their white-noise families."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .linalg import MAX_DIM, kron_all, projector
from .skew import IsotropicFamilySpectrum, variance


@dataclass(frozen=True)
class PureState:
    amplitudes: np.ndarray = field(repr=False)
    label: str = ""

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).ravel()
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"state norm {norm!r} differs from 1")
        if len(amps) > MAX_DIM:
            raise ValueError(f"dimension {len(amps)} exceeds {MAX_DIM}")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return len(self.amplitudes)

    def density_matrix(self) -> np.ndarray:
        return projector(self.amplitudes)

    def num_qubits(self) -> int:
        n = int(round(math.log2(self.dim)))
        if 2**n != self.dim:
            raise ValueError(f"dimension {self.dim} is not a power of two")
        return n


def basis_state(bits: str) -> np.ndarray:
    v = np.zeros(2 ** len(bits), dtype=complex)
    v[int(bits, 2)] = 1.0
    return v


def superposition(bitstrings, label: str = "") -> PureState:
    """Equal-weight superposition of computational basis strings, normalized."""
    v = sum(basis_state(b) for b in bitstrings)
    return PureState(v / np.linalg.norm(v), label)


def ghz(n: int) -> PureState:
    if n < 2:
        raise ValueError(f"GHZ state needs N >= 2, got {n}")
    return superposition(["0" * n, "1" * n], f"ghz:{n}")


def w_state(n: int) -> PureState:
    if n < 2:
        raise ValueError(f"W state needs N >= 2, got {n}")
    strings = ["0" * (n - 1 - i) + "1" + "0" * i for i in range(n)]
    return superposition(strings, f"w:{n}")


def bell_pairs(n: int) -> PureState:
    """Product of (|00> + |11>)/sqrt 2 on site pairs (0,1), (2,3), ..."""
    if n < 2 or n % 2:
        raise ValueError(f"bell pairs need an even N >= 2, got {n}")
    v = kron_all([ghz(2).amplitudes] * (n // 2))
    return PureState(v, f"bellpairs:{n}")


def product(*states: PureState, label: str = "") -> PureState:
    return PureState(kron_all([s.amplitudes for s in states]), label)


def example37_states() -> dict[str, PureState]:
    """The three six-qubit network states: Bell^3, GHZ3 x GHZ3, GHZ4 x GHZ2.

    Amplitudes are normalized; the printed prefactors 1/8 and 1/4 would not be.
    """
    psi_a = superposition(
        ["000000", "000011", "001100", "001111", "110000", "110011", "111100", "111111"],
        "example37:a",
    )
    psi_b = superposition(["000000", "000111", "111000", "111111"], "example37:b")
    psi_c = superposition(["000000", "000011", "111100", "111111"], "example37:c")
    return {"a": psi_a, "b": psi_b, "c": psi_c}


@dataclass(frozen=True)
class StateFamily:
    """rho(p) = p |psi><psi| + (1 - p) I / D."""

    base: PureState
    description: str = ""

    @property
    def total_dim(self) -> int:
        return self.base.dim

    def density_matrix(self, p: float) -> np.ndarray:
        return isotropic_mixture(self, p)


def _check_p(p: float) -> None:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"noise parameter p must lie in [0, 1], got {p!r}")


def isotropic_mixture(family: StateFamily, p: float) -> np.ndarray:
    _check_p(p)
    dim = family.total_dim
    return p * family.base.density_matrix() + (1 - p) / dim * np.eye(dim, dtype=complex)


def spectrum_of(family: StateFamily, p: float, observable=None) -> IsotropicFamilySpectrum:
    """Rank-one-plus-isotropic spectrum; ``pure_variance`` uses ``observable`` if given."""
    _check_p(p)
    dim = family.total_dim
    rest = (1 - p) / dim
    v = 0.0 if observable is None else variance(family.base.density_matrix(), observable)
    return IsotropicFamilySpectrum(p + rest, rest, dim - 1, v)


def load_pure_state_json(path) -> PureState:
    """Read ``{"dim": D, "amplitudes": [[re, im], ...]}``; amplitudes are normalized."""
    doc = json.loads(Path(path).read_text())
    amps = np.array([complex(re, im) for re, im in doc["amplitudes"]])
    if "dim" in doc and int(doc["dim"]) != len(amps):
        raise ValueError(f"dim {doc['dim']} does not match {len(amps)} amplitudes")
    norm = np.linalg.norm(amps)
    if norm == 0:
        raise ValueError("amplitude vector is zero")
    return PureState(amps / norm, str(path))


def parse_state_spec(spec: str) -> PureState:
    """Resolve ``ghz:N``, ``w:N``, ``bellpairs:N``, ``example37:a|b|c`` or a JSON path."""
    kind, _, arg = spec.partition(":")
    kind = kind.lower()
    if kind == "ghz":
        return ghz(int(arg))
    if kind == "w":
        return w_state(int(arg))
    if kind == "bellpairs":
        return bell_pairs(int(arg))
    if kind == "example37":
        states = example37_states()
        if arg not in states:
            raise ValueError(f"example37 variant must be a, b or c, got {arg!r}")
        return states[arg]
    if spec.endswith(".json") or Path(spec).is_file():
        return load_pure_state_json(spec)
    raise ValueError(f"unknown state specifier {spec!r}")
