"""Permutation-avalanche spin registers.

A register of ``n`` apparatus spins evolves by a conditional pair flip on each
pair of sites ``(2k-1, 2k)`` (the second spin flips when the first is down),
followed by a relabelling of sites. Both maps send computational basis states
to basis states, so the dynamics is a permutation of the ``2^n`` basis states
and every orbit is a finite cycle.

Permutations are given in one-line notation over sites ``1..n``: the string
``"2341"`` sends the spin at site 1 to site 2, site 2 to site 3, and so on.
Cycle notation is accepted with ``notation="cycle"``.

Basis index digits are 0 for spin up and 1 for spin down, with site 1 as the
most significant digit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .entropy import shannon_entropy
from .errors import DimensionCapError, DimensionMismatchError, InvalidStateError, OrbitCapError
from .qstate import ProjectorFamily, PureState, UnitaryMap

ORBIT_DENSE_CAP = 12
TRACE_DENSE_CAP = 10
DEFAULT_ORBIT_CAP = 1 << 16


def parse_permutation(spec, n: int, notation: str = "one-line") -> tuple[int, ...]:
    """Zero-based destination list ``dest`` with ``dest[i]`` the new position of site ``i``."""
    if isinstance(spec, str):
        digits = [int(ch) for ch in spec.strip("() ").replace(",", "").replace(" ", "")]
    else:
        digits = [int(x) for x in spec]
    if notation == "one-line":
        if sorted(digits) != list(range(1, n + 1)):
            raise InvalidStateError(f"{spec!r} is not a bijection on 1..{n}")
        return tuple(d - 1 for d in digits)
    if notation == "cycle":
        if len(set(digits)) != len(digits) or any(not 1 <= d <= n for d in digits):
            raise InvalidStateError(f"{spec!r} is not a cycle on 1..{n}")
        dest = list(range(n))
        for i, d in enumerate(digits):
            dest[d - 1] = digits[(i + 1) % len(digits)] - 1
        return tuple(dest)
    raise InvalidStateError(f"unknown permutation notation {notation!r}")


def _seed_spins(seed, n: int) -> tuple[int, ...]:
    if seed == "minus":
        return (-1,) + (1,) * (n - 1)
    if seed == "all-up":
        return (1,) * n
    spins = tuple(int(x) for x in seed)
    if len(spins) != n or any(x not in (1, -1) for x in spins):
        raise InvalidStateError(f"seed must list {n} spins of +1/-1")
    return spins


@dataclass(frozen=True)
class AvalancheParams:
    n: int
    permutation: tuple
    steps: int = 1
    c_plus: complex = 1 / math.sqrt(2)
    c_minus: complex = 1 / math.sqrt(2)
    seed: tuple = field(default=None)

    def __post_init__(self):
        if self.n <= 0 or self.n % 2:
            raise InvalidStateError(f"n must be a positive even integer, got {self.n}")
        perm = tuple(int(x) for x in self.permutation)
        if sorted(perm) != list(range(self.n)):
            raise InvalidStateError(f"permutation {perm} is not a bijection on {self.n} sites")
        if self.steps < 1:
            raise InvalidStateError("steps must be positive")
        object.__setattr__(self, "permutation", perm)
        object.__setattr__(self, "c_plus", complex(self.c_plus))
        object.__setattr__(self, "c_minus", complex(self.c_minus))
        norm = abs(self.c_plus) ** 2 + abs(self.c_minus) ** 2
        if abs(norm - 1.0) > 1e-12:
            raise InvalidStateError(f"|c+|^2 + |c-|^2 = {norm:.15g}, expected 1")
        object.__setattr__(self, "seed", _seed_spins("minus" if self.seed is None else self.seed, self.n))

    @classmethod
    def from_notation(cls, n: int, permutation, notation: str = "one-line", **kwargs) -> "AvalancheParams":
        return cls(n, parse_permutation(permutation, n, notation), **kwargs)


def spins_to_index(spins: Sequence[int]) -> int:
    index = 0
    for s in spins:
        index = 2 * index + (0 if s == 1 else 1)
    return index


def index_to_spins(index: int, n: int) -> tuple[int, ...]:
    return tuple(1 - 2 * ((index >> (n - 1 - i)) & 1) for i in range(n))


def _digit_table(n: int) -> np.ndarray:
    """Row ``j`` holds the basis digits of index ``j``, site 1 first."""
    j = np.arange(2 ** n)
    return (j[:, None] >> (n - 1 - np.arange(n))[None, :]) & 1


def _digits_to_index(digits: np.ndarray) -> np.ndarray:
    n = digits.shape[1]
    return digits @ (1 << (n - 1 - np.arange(n)))


def _pair_digits(digits: np.ndarray, pairs) -> np.ndarray:
    out = digits.copy()
    for k in pairs:
        first, second = 2 * k - 2, 2 * k - 1
        out[:, second] ^= digits[:, first]
    return out


def pair_map(n: int, k: int) -> np.ndarray:
    """Basis index image under the pair flip on sites ``(2k-1, 2k)``."""
    if not 1 <= k <= n // 2:
        raise InvalidStateError(f"pair index {k} outside 1..{n // 2}")
    digits = _digit_table(n)
    return _digits_to_index(_pair_digits(digits, [k]))


def pair_unitary(n: int, k: int) -> UnitaryMap:
    """Permutation matrix fixing ``|++>``, ``|+->`` and swapping ``|-+> <-> |-->`` on one pair."""
    image = pair_map(n, k)
    u = np.zeros((2 ** n, 2 ** n), dtype=complex)
    u[image, np.arange(2 ** n)] = 1.0
    return UnitaryMap(u)


def step_map(p: AvalancheParams) -> np.ndarray:
    """Basis index image of one full step: every pair flip, then the site relabelling."""
    digits = _pair_digits(_digit_table(p.n), range(1, p.n // 2 + 1))
    moved = np.empty_like(digits)
    moved[:, list(p.permutation)] = digits
    return _digits_to_index(moved)


def avalanche_step(state: PureState, p: AvalancheParams) -> PureState:
    if state.dim != 2 ** p.n:
        raise DimensionMismatchError(f"state dimension {state.dim} != 2^{p.n}")
    out = np.zeros_like(state.vector)
    out[step_map(p)] = state.vector
    return PureState(out)


def step_spins(spins: Sequence[int], p: AvalancheParams) -> tuple[int, ...]:
    s = list(spins)
    for first in range(0, p.n, 2):
        if s[first] == -1:
            s[first + 1] = -s[first + 1]
    out = [0] * p.n
    for i, dest in enumerate(p.permutation):
        out[dest] = s[i]
    return tuple(out)


def two_cell_labels(n: int) -> np.ndarray:
    """Cell label per basis index: +1 when the total spin is positive, -1 otherwise (zero included)."""
    total = n - 2 * _digit_table(n).sum(axis=1)
    return np.where(total > 0, 1, -1)


@dataclass(frozen=True)
class OrbitReport:
    orbit_dim: int
    sector_dims: dict
    mean_magnetization: Fraction
    mean_site_magnetization: Fraction
    entropy_curve: tuple
    orbit: tuple

    def as_dict(self) -> dict:
        return {
            "orbit_dim": self.orbit_dim,
            "sector_dims": {str(k): v for k, v in sorted(self.sector_dims.items())},
            "mean_magnetization": str(self.mean_magnetization),
            "mean_magnetization_float": float(self.mean_magnetization),
            "mean_site_magnetization": str(self.mean_site_magnetization),
            "entropy_curve": [[step, s] for step, s in self.entropy_curve],
        }


def orbit(p: AvalancheParams, orbit_cap: int = DEFAULT_ORBIT_CAP) -> list[tuple[int, ...]]:
    """Successive spin configurations from the seed until the cycle closes."""
    states = [p.seed]
    current = step_spins(p.seed, p)
    while current != p.seed:
        states.append(current)
        if len(states) > orbit_cap:
            raise OrbitCapError(f"orbit longer than {orbit_cap}")
        current = step_spins(current, p)
    return states


def _pure_branch_entropy(plus_amp: complex, plus_cell: int, minus_amp: complex, minus_cell: int) -> float:
    """Pinched entropy of ``c+ |+, a> + c- |-, b>`` with basis states ``a`` and ``b``."""
    weights = {}
    weights[plus_cell] = weights.get(plus_cell, 0.0) + abs(plus_amp) ** 2
    weights[minus_cell] = weights.get(minus_cell, 0.0) + abs(minus_amp) ** 2
    total = sum(weights.values())
    return shannon_entropy([w / total for w in weights.values()])


def orbit_analysis(p: AvalancheParams, orbit_cap: int = DEFAULT_ORBIT_CAP) -> OrbitReport:
    """Orbit length, spin-sector occupation and time-averaged magnetisation of the seed.

    Sectors are keyed by total ``S_z = sum(sigma^3) / 2``; each counts the
    distinct orbit states with that total spin, which equals the rank of the
    projected orbit since the orbit consists of basis states.
    """
    if p.n > ORBIT_DENSE_CAP:
        raise DimensionCapError(f"n = {p.n} exceeds the orbit cap of {ORBIT_DENSE_CAP} spins")
    states = orbit(p, orbit_cap)
    sectors: dict = {}
    for s in states:
        key = sum(s) // 2
        sectors[key] = sectors.get(key, 0) + 1
    total = sum(sum(s) for s in states)
    mean_sz = Fraction(total, 2 * len(states))
    mean_site = Fraction(total, p.n * len(states))
    plus_cell = 1
    curve = []
    for step_count in range(len(states) + 1):
        s = states[step_count % len(states)]
        minus_cell = 1 if sum(s) > 0 else -1
        curve.append((step_count, _pure_branch_entropy(p.c_plus, plus_cell, p.c_minus, minus_cell)))
    return OrbitReport(len(states), sectors, mean_sz, mean_site, tuple(curve), tuple(states))


def full_state(p: AvalancheParams) -> PureState:
    """``c+ |+> (x) |all up> + c- |-> (x) |seed>`` on system plus register."""
    dim = 2 ** p.n
    v = np.zeros(2 * dim, dtype=complex)
    v[spins_to_index((1,) * p.n)] += p.c_plus
    v[dim + spins_to_index(p.seed)] += p.c_minus
    return PureState(v)


def full_step(state: PureState, p: AvalancheParams) -> PureState:
    """One step of the register dynamics on the down branch; the up branch is frozen."""
    dim = 2 ** p.n
    v = state.vector
    out = np.empty_like(v)
    out[:dim] = v[:dim]
    out[dim + step_map(p)] = v[dim:]
    return PureState(out)


def entropy_trace(p: AvalancheParams) -> list[tuple[int, float, float]]:
    """``(step, S_QB, S_vn)`` for the full superposition over ``p.steps`` steps.

    The phase cells are the sign of the register's total spin, lifted by the
    identity on the system qubit. The state is pure, so the pinched state has
    rank at most two and its spectrum is that of the Gram matrix of the
    projected vectors.
    """
    if p.n > TRACE_DENSE_CAP:
        raise DimensionCapError(f"n = {p.n} exceeds the dense cap of {TRACE_DENSE_CAP} spins")
    labels = np.tile(two_cell_labels(p.n), 2)
    state = full_state(p)
    out = []
    for step_count in range(p.steps + 1):
        v = state.vector
        projected = np.array([np.where(labels == cell, v, 0) for cell in (1, -1)])
        gram = projected.conj() @ projected.T
        spectrum = np.clip(np.linalg.eigvalsh(gram), 0.0, None)
        s_qb = shannon_entropy(spectrum / spectrum.sum())
        # the full state is pure at every step
        out.append((step_count, s_qb, 0.0))
        if step_count < p.steps:
            state = full_step(state, p)
    return out


def two_cell_family(n: int):
    """Sign-of-total-spin cells on system plus register, as a projector family."""
    return ProjectorFamily.from_basis_labels(np.tile(two_cell_labels(n), 2))
