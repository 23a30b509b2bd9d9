"""Decoherence functional and history probabilities for finite event sequences.

A history is a sequence of events. Event ``k`` carries the unitary that evolves
the state from event ``k-1`` (or from the preparation) to event ``k``, and the
projector family read out at that moment. The class operator of a label tuple
``(a_1, ..., a_n)`` is ``C = P_{a_n} U_n ... P_{a_1} U_1``.

Label tuples are enumerated row-major with the first event as the slowest
index, exactly as ``itertools.product`` produces them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionMismatchError, InvalidStateError
from .qstate import DensityMatrix, ProjectorFamily, UnitaryMap, hermitize

SUPPORT_THRESHOLD = 1e-10


@dataclass(frozen=True, eq=False)
class HistorySpec:
    events: tuple

    def __post_init__(self):
        events = tuple((u, fam) for u, fam in self.events)
        if not events:
            raise InvalidStateError("a history needs at least one event")
        dim = events[0][1].dim
        for u, fam in events:
            if u.dim != dim or fam.dim != dim:
                raise DimensionMismatchError("all events of a history must share one dimension")
        object.__setattr__(self, "events", events)

    @property
    def dim(self) -> int:
        return self.events[0][1].dim

    @classmethod
    def at_fixed_frame(cls, families: Sequence[ProjectorFamily]) -> "HistorySpec":
        """Events with trivial evolution in between."""
        eye = UnitaryMap.identity(families[0].dim)
        return cls(tuple((eye, f) for f in families))

    def labels(self) -> list[tuple[int, ...]]:
        return list(itertools.product(*(range(len(f)) for _, f in self.events)))


@dataclass(frozen=True, eq=False)
class DecoherenceMatrix:
    entries: np.ndarray
    labels: tuple

    def __post_init__(self):
        d = np.array(self.entries, dtype=complex, copy=True)
        if d.shape != (len(self.labels), len(self.labels)):
            raise InvalidStateError("decoherence matrix shape does not match its label list")
        if np.max(np.abs(d - d.conj().T)) > 1e-12:
            raise InvalidStateError("decoherence matrix is not Hermitian")
        diag = np.real(np.diag(d))
        if diag.min() < -1e-12 or abs(diag.sum() - 1.0) > 1e-10:
            raise InvalidStateError("decoherence matrix diagonal is not a probability vector")
        d.setflags(write=False)
        object.__setattr__(self, "entries", d)
        object.__setattr__(self, "labels", tuple(tuple(x) for x in self.labels))

    def max_offdiagonal(self) -> float:
        d = self.entries
        if d.shape[0] < 2:
            return 0.0
        return float(np.max(np.abs(d - np.diag(np.diag(d)))))


def class_operators(spec: HistorySpec) -> list[np.ndarray]:
    """One class operator per label tuple, in row-major label order."""
    ops = [np.eye(spec.dim, dtype=complex)]
    for u, fam in spec.events:
        # extending every prefix keeps the first event as the slowest index
        ops = [p @ u.matrix @ c for c in ops for p in fam.members]
    return ops


def decoherence_functional(rho: DensityMatrix, spec: HistorySpec) -> DecoherenceMatrix:
    """``D(a', a) = Tr[C_a' rho C_a^dagger]`` over all label pairs.

    Evaluated as a Gram matrix of the vectors ``vec(C_a rho^{1/2})``, which
    makes Hermiticity and positivity hold by construction.
    """
    if rho.dim != spec.dim:
        raise DimensionMismatchError(f"dimension mismatch: {rho.dim} != {spec.dim}")
    evals, evecs = np.linalg.eigh(hermitize(rho.matrix))
    root = (evecs * np.sqrt(np.clip(evals, 0.0, None))) @ evecs.conj().T
    vecs = np.array([(c @ root).ravel() for c in class_operators(spec)])
    d = vecs @ vecs.conj().T
    return DecoherenceMatrix(hermitize(d), tuple(spec.labels()))


def history_probabilities(d: DecoherenceMatrix) -> np.ndarray:
    return np.clip(np.real(np.diag(d.entries)), 0.0, None)


def decoheres(d: DecoherenceMatrix, tol: float) -> bool:
    """Definition of a decohering history set: every off-diagonal entry within ``tol``."""
    return d.max_offdiagonal() <= tol


def iterated_pinching_probabilities(rho: DensityMatrix, spec: HistorySpec) -> np.ndarray:
    """History probabilities by sequential measure-and-evolve, independent of the Gram route."""
    branches = [rho.matrix]
    for u, fam in spec.events:
        evolved = [u.matrix @ b @ u.matrix.conj().T for b in branches]
        branches = [p @ b @ p for b in evolved for p in fam.members]
    return np.array([np.trace(b).real for b in branches])


def support_cardinality(vector, threshold: float = SUPPORT_THRESHOLD) -> int:
    """Number of basis amplitudes with ``|c_j|^2`` above ``threshold``."""
    return int(np.count_nonzero(np.abs(np.asarray(vector)) ** 2 > threshold))
