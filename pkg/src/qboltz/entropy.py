"""Entropy functionals on density matrices and the second-law check."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, NotDecoherentInitialStateError
from .qstate import (
    DensityMatrix,
    ProjectorFamily,
    UnitaryMap,
    branch_weights,
    hermitize,
    is_decoherent,
    pinch,
)

EIGEN_CLIP = 1e-12
SUPPORT_TOL = 1e-12
DECOHERENCE_TOL = 1e-10
SECOND_LAW_TOL = 1e-9
BRANCH_WEIGHT_FLOOR = 1e-14


def shannon_entropy(probabilities) -> float:
    """``-sum p log p`` in nats, ignoring entries at or below ``EIGEN_CLIP``."""
    p = np.asarray(probabilities, dtype=float)
    p = p[p > EIGEN_CLIP]
    return max(0.0, float(-np.sum(p * np.log(p))))


def von_neumann_entropy(rho: DensityMatrix) -> float:
    kept = rho.spectrum()
    kept = kept[kept > EIGEN_CLIP]
    # unit trace is an invariant, so renormalising only strips diagonalisation rounding
    return shannon_entropy(kept / kept.sum())


def relative_entropy(rho1: DensityMatrix, rho2: DensityMatrix) -> float:
    """``Tr rho1 (log rho1 - log rho2)``; ``inf`` when rho1 has weight outside the support of rho2."""
    if rho1.dim != rho2.dim:
        raise DimensionMismatchError(f"dimension mismatch: {rho1.dim} != {rho2.dim}")
    e1, v1 = np.linalg.eigh(hermitize(rho1.matrix))
    e2, v2 = np.linalg.eigh(hermitize(rho2.matrix))
    e1 = np.clip(e1, 0.0, None)
    e2 = np.clip(e2, 0.0, None)
    # |<v1_i, v2_j>|^2 is the doubly stochastic overlap between the two eigenbases
    overlap = np.abs(v1.conj().T @ v2) ** 2
    kernel = e2 <= SUPPORT_TOL
    leaked = float(e1 @ overlap[:, kernel].sum(axis=1)) if kernel.any() else 0.0
    if leaked > SUPPORT_TOL:
        return float("inf")
    live1 = e1 > EIGEN_CLIP
    log_e2 = np.zeros_like(e2)
    log_e2[~kernel] = np.log(e2[~kernel])
    self_term = float(np.sum(e1[live1] * np.log(e1[live1])))
    cross_term = float(e1[live1] @ overlap[live1][:, ~kernel] @ log_e2[~kernel])
    return self_term - cross_term


def quantum_boltzmann_entropy(rho: DensityMatrix, family: ProjectorFamily) -> float:
    """Von Neumann entropy of the state pinched onto the phase cells."""
    return von_neumann_entropy(pinch(rho, family))


def collapse_average_entropy(rho: DensityMatrix, family: ProjectorFamily) -> float:
    """Weighted mean entropy of the post-measurement branches ``P_a rho P_a / w_a``."""
    total = 0.0
    for p in family.members:
        branch = hermitize(p @ rho.matrix @ p)
        w = float(np.trace(branch).real)
        if w > BRANCH_WEIGHT_FLOOR:
            total += w * shannon_entropy(np.clip(np.linalg.eigvalsh(branch / w), 0.0, None))
    return total


def equality_witness(rho_t: DensityMatrix, family: ProjectorFamily) -> float:
    """Largest entry of the symmetrised inter-cell blocks; zero iff rho_t is block diagonal."""
    m = rho_t.matrix
    cross = np.zeros_like(m)
    members = family.members
    for a in range(len(members)):
        for b in range(a + 1, len(members)):
            cross += members[a] @ m @ members[b] + members[b] @ m @ members[a]
    return float(np.max(np.abs(cross))) if cross.size else 0.0


@dataclass(frozen=True)
class EntropyReport:
    s_vn: float
    s_qb: float
    gap: float
    decoherent_initial: bool

    def __post_init__(self):
        if self.s_qb < self.s_vn - 1e-10:
            raise ValueError("pinched entropy fell below the von Neumann entropy")


def second_law_gap(rho0: DensityMatrix, unitary: UnitaryMap, family: ProjectorFamily) -> EntropyReport:
    """Entropy gain ``S_QB(U rho0 U^dagger) - S_QB(rho0)`` from a decoherent start.

    The gap is returned as computed; callers compare it with ``-SECOND_LAW_TOL``
    to decide whether the inequality held.
    """
    if not is_decoherent(rho0, family, DECOHERENCE_TOL):
        raise NotDecoherentInitialStateError(
            "initial state does not commute with every phase-cell projector")
    rho_t = unitary.apply(rho0)
    s_vn = von_neumann_entropy(rho0)
    s_qb_0 = quantum_boltzmann_entropy(rho0, family)
    s_qb_t = quantum_boltzmann_entropy(rho_t, family)
    return EntropyReport(s_vn=s_vn, s_qb=s_qb_t, gap=s_qb_t - s_qb_0, decoherent_initial=True)


def collapse_reduction(rho: DensityMatrix, family: ProjectorFamily) -> float:
    """``S_QB - sum w_a S(rho_a)``; equals the Shannon entropy of the branch weights."""
    return quantum_boltzmann_entropy(rho, family) - collapse_average_entropy(rho, family)


def branch_shannon_entropy(rho: DensityMatrix, family: ProjectorFamily) -> float:
    return shannon_entropy(branch_weights(rho, family))
