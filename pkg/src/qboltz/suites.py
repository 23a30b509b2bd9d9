"""Randomised property suites shared by the test-suite and the command-line runner.

Every trial takes its own ``numpy.random.SeedSequence`` so results do not depend
on how trials are split across workers.
"""

from __future__ import annotations

import numpy as np

from .entropy import (
    SECOND_LAW_TOL,
    collapse_average_entropy,
    equality_witness,
    quantum_boltzmann_entropy,
    relative_entropy,
    second_law_gap,
)
from .qstate import (
    DensityMatrix,
    hermitize,
    partial_trace,
    pinch,
    random_density_matrix,
    random_kraus_map,
    random_projector_family,
    random_unitary,
)

SECOND_LAW_DIMS = (4, 8, 16)
LEMMA_TOL = 1e-9
CONVERSE_WITNESS_FLOOR = 1e-6
LAMBDA_GRID = tuple(round(0.1 * k, 1) for k in range(1, 10))


def second_law_trial(seed: np.random.SeedSequence, dim: int) -> dict:
    """One randomised instance: decoherent start, Haar unitary, random phase cells."""
    rng = np.random.default_rng(seed)
    n_cells = int(rng.integers(2, min(dim, 4) + 1))
    family = random_projector_family(dim, n_cells, rng)
    rho0 = pinch(random_density_matrix(dim, rng), family)
    unitary = random_unitary(dim, rng)
    report = second_law_gap(rho0, unitary, family)
    witness = equality_witness(unitary.apply(rho0), family)
    return {
        "dim": dim,
        "n_cells": n_cells,
        "s_vn": report.s_vn,
        "s_qb_0": report.s_qb - report.gap,
        "s_qb_t": report.s_qb,
        "gap": report.gap,
        "witness": witness,
        "holds": bool(report.gap >= -SECOND_LAW_TOL),
        # equal entropies with surviving cross terms would contradict the converse direction
        "converse_candidate": bool(abs(report.gap) <= SECOND_LAW_TOL and witness > CONVERSE_WITNESS_FLOOR),
    }


def second_law_batch(seed: int, trials: int, dims=SECOND_LAW_DIMS) -> list[dict]:
    children = np.random.SeedSequence(seed).spawn(trials)
    return [second_law_trial(children[k], dims[k % len(dims)]) for k in range(trials)]


def _psd(m: np.ndarray, tol: float = 1e-12) -> bool:
    return bool(np.linalg.eigvalsh(hermitize(m))[0] >= -tol)


def lemma_trial(seed: np.random.SeedSequence) -> dict:
    """Relative-entropy properties on one random instance; each entry is True when the property held."""
    rng = np.random.default_rng(seed)
    dim = 4
    rho1 = random_density_matrix(dim, rng)
    rho2 = random_density_matrix(dim, rng)
    out = {}

    s12 = relative_entropy(rho1, rho2)
    out["nonnegative"] = s12 >= -LEMMA_TOL
    out["zero_iff_equal"] = abs(relative_entropy(rho1, rho1)) <= LEMMA_TOL and (
        s12 > LEMMA_TOL) == (np.max(np.abs(rho1.matrix - rho2.matrix)) > LEMMA_TOL)

    lam = float(rng.uniform(0.05, 0.95))
    sigma = random_density_matrix(dim, rng)
    dominating = DensityMatrix(hermitize(lam * rho1.matrix + (1 - lam) * sigma.matrix))
    ordered = _psd(dominating.matrix - lam * rho1.matrix)
    out["operator_bound"] = ordered and relative_entropy(rho1, dominating) <= -np.log(lam) + LEMMA_TOL

    sigma1 = random_density_matrix(dim, rng)
    sigma2 = random_density_matrix(dim, rng)
    convex = True
    for mix in LAMBDA_GRID:
        left = relative_entropy(
            DensityMatrix(hermitize(mix * rho1.matrix + (1 - mix) * rho2.matrix)),
            DensityMatrix(hermitize(mix * sigma1.matrix + (1 - mix) * sigma2.matrix)))
        right = mix * relative_entropy(rho1, sigma1) + (1 - mix) * relative_entropy(rho2, sigma2)
        convex &= left <= right + LEMMA_TOL
    out["joint_convexity"] = bool(convex)

    family = random_projector_family(dim, int(rng.integers(2, dim + 1)), rng)
    out["monotone_pinching"] = relative_entropy(pinch(rho1, family), pinch(rho2, family)) <= s12 + LEMMA_TOL
    keep = int(rng.integers(0, 2))
    reduced = relative_entropy(partial_trace(rho1, [2, 2], [keep]), partial_trace(rho2, [2, 2], [keep]))
    out["monotone_partial_trace"] = reduced <= s12 + LEMMA_TOL
    channel = random_kraus_map(dim, int(rng.choice([2, 4])), int(rng.integers(2, 5)), rng)
    out["monotone_kraus"] = relative_entropy(channel.apply(rho1), channel.apply(rho2)) <= s12 + LEMMA_TOL
    return {k: bool(v) for k, v in out.items()}


def lemma_batch(seed: int, trials: int) -> list[dict]:
    return [lemma_trial(s) for s in np.random.SeedSequence(seed).spawn(trials)]


def collapse_trial(seed: np.random.SeedSequence, dim: int = 6) -> dict:
    """Branch-averaged entropy against the pinched entropy for a random state and family."""
    rng = np.random.default_rng(seed)
    family = random_projector_family(dim, int(rng.integers(2, 4)), rng)
    rho = random_density_matrix(dim, rng)
    return {
        "average": collapse_average_entropy(rho, family),
        "s_qb": quantum_boltzmann_entropy(rho, family),
    }
