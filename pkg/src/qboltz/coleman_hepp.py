"""Finite Coleman-Hepp measurement chain.

A system qubit (site 0) is coupled to a chain of ``N = 2L + 1`` apparatus spins
(sites 1..N). Each discrete step advances a flip front by one site: if the
system is down, chain site ``t + 1`` is flipped by ``exp(-i pi/2 sigma^1) =
-i sigma^1``; if it is up, nothing happens. The apparatus starts in the product
state with single-site polarisation ``m = tanh(beta B)``.

Two engines are provided:

* the structured engine keeps a list of chain configurations with their
  thermal weights and two branch amplitudes, and evaluates entropies from
  closed-form spectra grouped by up-spin counts;
* the dense engine builds full density matrices and unitaries and is the
  oracle for small chains.

Configuration strings use bit 1 for spin up. Dense basis index digit 0 is
spin up, with the system qubit as the most significant digit.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import reduce

import numpy as np
from scipy.special import gammaln, xlogy
from scipy.stats import binom

from .entropy import equality_witness, quantum_boltzmann_entropy, von_neumann_entropy
from .errors import (
    DegenerateAmplitudesError,
    DimensionCapError,
    InvalidStateError,
    StepPastEndError,
)
from .qstate import (
    SIGMA_X,
    DensityMatrix,
    ProjectorFamily,
    UnitaryMap,
    embed_site_operator,
    hermitize,
    pinch,
)

DEFAULT_DENSE_CAP = 5
DEFAULT_BRANCH_CAP = 1 << 16
FLIP_PHASE = -1j


@dataclass(frozen=True)
class ColemanHeppParams:
    L: int
    c_plus: complex
    c_minus: complex
    beta_B: float = math.inf
    sign: int = 1

    def __post_init__(self):
        if int(self.L) != self.L or self.L < 0:
            raise InvalidStateError(f"L must be a non-negative integer (odd chain N = 2L+1), got {self.L}")
        object.__setattr__(self, "L", int(self.L))
        object.__setattr__(self, "c_plus", complex(self.c_plus))
        object.__setattr__(self, "c_minus", complex(self.c_minus))
        norm = abs(self.c_plus) ** 2 + abs(self.c_minus) ** 2
        if abs(norm - 1.0) > 1e-12:
            raise InvalidStateError(f"|c+|^2 + |c-|^2 = {norm:.15g}, expected 1")
        if not self.beta_B >= 0:
            raise InvalidStateError(f"beta_B must be non-negative, got {self.beta_B}")
        if self.sign not in (1, -1):
            raise InvalidStateError(f"sign must be +1 or -1, got {self.sign}")

    @property
    def n_sites(self) -> int:
        return 2 * self.L + 1

    @property
    def magnetization(self) -> float:
        return 1.0 if math.isinf(self.beta_B) else math.tanh(self.beta_B)

    @property
    def up_probability(self) -> float:
        """Single-site probability of spin up in the apparatus preparation."""
        return (1.0 + self.sign * self.magnetization) / 2.0

    @property
    def zero_temperature(self) -> bool:
        return math.isinf(self.beta_B)


@dataclass(frozen=True)
class ChainBranch:
    config: tuple
    weight: float
    amp_plus: complex
    amp_minus: complex


@dataclass(frozen=True)
class StructuredChainState:
    """Mixture over apparatus configurations ``I`` of the pure states

    ``amp_plus |+> (x) |I> + amp_minus |-> (x) |flip_t(I)>``

    where ``flip_t`` flips the first ``time_step`` chain sites.
    """

    params: ColemanHeppParams
    time_step: int
    branches: tuple

    @property
    def n_sites(self) -> int:
        return self.params.n_sites

    def minus_config(self, branch: ChainBranch) -> tuple:
        t = self.time_step
        return tuple(1 - b for b in branch.config[:t]) + branch.config[t:]

    def total_norm(self) -> float:
        return sum(b.weight * (abs(b.amp_plus) ** 2 + abs(b.amp_minus) ** 2) for b in self.branches)


# ---------------------------------------------------------------------------
# structured engine
# ---------------------------------------------------------------------------


def initial_state(p: ColemanHeppParams, branch_cap: int = DEFAULT_BRANCH_CAP) -> StructuredChainState:
    n = p.n_sites
    if p.zero_temperature:
        config = (1,) * n if p.sign == 1 else (0,) * n
        branches = (ChainBranch(config, 1.0, p.c_plus, p.c_minus),)
        return StructuredChainState(p, 0, branches)
    if 2 ** n > branch_cap:
        raise DimensionCapError(f"2^{n} configurations exceed the branch cap {branch_cap}")
    up = p.up_probability
    down = 1.0 - up
    branches = []
    for config in itertools.product((1, 0), repeat=n):
        ups = sum(config)
        weight = up ** ups * down ** (n - ups)
        branches.append(ChainBranch(config, weight, p.c_plus, p.c_minus))
    return StructuredChainState(p, 0, tuple(branches))


def step(s: StructuredChainState) -> StructuredChainState:
    """Advance the flip front by one site."""
    if s.time_step >= s.n_sites:
        raise StepPastEndError(f"flip front already at the chain end (t = {s.time_step})")
    branches = tuple(
        ChainBranch(b.config, b.weight, b.amp_plus, b.amp_minus * FLIP_PHASE) for b in s.branches)
    return StructuredChainState(s.params, s.time_step + 1, branches)


def evolve(p: ColemanHeppParams, t: int, branch_cap: int = DEFAULT_BRANCH_CAP) -> StructuredChainState:
    s = initial_state(p, branch_cap)
    for _ in range(t):
        s = step(s)
    return s


def _config_index(system_digit: int, config) -> int:
    index = system_digit
    for bit in config:
        index = 2 * index + (1 - bit)
    return index


def branch_vectors(s: StructuredChainState) -> np.ndarray:
    """Columns are ``sqrt(w_I) psi_I``; the density matrix is their Gram outer product."""
    dim = 2 ** (s.n_sites + 1)
    out = np.zeros((dim, len(s.branches)), dtype=complex)
    for k, b in enumerate(s.branches):
        root = math.sqrt(b.weight)
        out[_config_index(0, b.config), k] += root * b.amp_plus
        out[_config_index(1, s.minus_config(b)), k] += root * b.amp_minus
    return out


def density_matrix(s: StructuredChainState, dense_cap: int = DEFAULT_DENSE_CAP) -> DensityMatrix:
    if s.params.L > dense_cap:
        raise DimensionCapError(f"L = {s.params.L} exceeds the dense cap {dense_cap}")
    v = branch_vectors(s)
    return DensityMatrix(hermitize(v @ v.conj().T))


def _grouped_blocks(n: int, t: int, up: float):
    """Configuration classes keyed by up-counts in the flipped and unflipped blocks.

    Returns arrays over classes ``(a, b)`` with ``a`` ups among the first ``t``
    sites and ``b`` ups among the remaining ``n - t``: log multiplicity, log
    weight per configuration, and the chain polarity sign before and after
    the flip of the first ``t`` sites.
    """
    a, b = np.meshgrid(np.arange(t + 1), np.arange(n - t + 1), indexing="ij")
    a = a.ravel()
    b = b.ravel()
    log_mult = (gammaln(t + 1) - gammaln(a + 1) - gammaln(t - a + 1)
                + gammaln(n - t + 1) - gammaln(b + 1) - gammaln(n - t - b + 1))
    ups = a + b
    with np.errstate(divide="ignore"):
        log_w = xlogy(ups, up) + xlogy(n - ups, 1.0 - up)
    alive = np.isfinite(log_w)
    sign_before = np.sign(2 * ups - n)
    sign_after = np.sign(2 * (t - a + b) - n)
    return log_mult[alive], log_w[alive], sign_before[alive], sign_after[alive]


def _entropy_terms(log_mult, log_lambda) -> float:
    live = np.isfinite(log_lambda)
    lm, ll = log_mult[live], log_lambda[live]
    return float(-np.sum(np.exp(lm + ll) * ll))


@dataclass(frozen=True)
class CurvePoint:
    t: int
    s_vn: float
    s_qb: float
    witness: float


def structured_point(p: ColemanHeppParams, t: int) -> CurvePoint:
    """Exact entropies at flip-front position ``t`` without building any matrix.

    The pinched state is diagonal in the vectors ``P_a psi_I``; its eigenvalues
    are ``w_I |c+|^2`` and ``w_I |c-|^2`` when the flip moves ``I`` across the
    polarity boundary, and ``w_I`` otherwise.
    """
    n = p.n_sites
    if not 0 <= t <= n:
        raise StepPastEndError(f"t = {t} outside 0..{n}")
    log_mult, log_w, s_before, s_after = _grouped_blocks(n, t, p.up_probability)
    crossed = s_before != s_after
    prob_plus = abs(p.c_plus) ** 2
    prob_minus = abs(p.c_minus) ** 2
    with np.errstate(divide="ignore"):
        log_plus = math.log(prob_plus) if prob_plus > 0 else -math.inf
        log_minus = math.log(prob_minus) if prob_minus > 0 else -math.inf
    s_qb = (_entropy_terms(log_mult[~crossed], log_w[~crossed])
            + _entropy_terms(log_mult[crossed], log_w[crossed] + log_plus)
            + _entropy_terms(log_mult[crossed], log_w[crossed] + log_minus))
    witness = 0.0
    if crossed.any() and prob_plus * prob_minus > 0:
        witness = math.exp(float(np.max(log_w[crossed]))) * abs(p.c_plus * p.c_minus)
    up = p.up_probability
    s_vn = n * float(-xlogy(up, up) - xlogy(1 - up, 1 - up))
    return CurvePoint(t, s_vn, s_qb, witness)


def qb_entropy_curve(p: ColemanHeppParams) -> list[tuple[int, float]]:
    return [(t, structured_point(p, t).s_qb) for t in range(p.n_sites + 1)]


def structured_curve(p: ColemanHeppParams) -> list[CurvePoint]:
    return [structured_point(p, t) for t in range(p.n_sites + 1)]


def entropy_jump(p: ColemanHeppParams) -> float:
    """``S_QB`` at the end of the measurement minus its initial value."""
    if p.c_plus * p.c_minus == 0:
        raise DegenerateAmplitudesError("one branch amplitude vanishes; the jump is trivially zero")
    return structured_point(p, p.n_sites).s_qb - structured_point(p, 0).s_qb


def cross_term_mass(p: ColemanHeppParams) -> tuple[float, float]:
    """Weight each polarised preparation places in the opposite phase cell.

    ``m_plus = Tr(Pi_- Omega_+)`` and ``m_minus = Tr(Pi_+ Omega_-)``, as exact
    binomial tail sums.
    """
    if p.zero_temperature:
        return 0.0, 0.0
    n = p.n_sites
    m = p.magnetization
    m_plus = float(binom.cdf(p.L, n, (1 + m) / 2))
    m_minus = float(binom.sf(p.L, n, (1 - m) / 2))
    return m_plus, m_minus


def decoherence_time(M: int, w: float, r: float) -> float:
    """Critical time ``M + 1 - w + r`` after which an observable on the first ``M`` sites sees no cross term."""
    if M < 1:
        raise ValueError(f"M must be at least 1, got {M}")
    return M + 1 - w + r


def final_entropy_split(p: ColemanHeppParams) -> dict:
    """Final pinched entropy with and without the system-qubit label.

    The chain-only figure is ``S(|c+|^2 Omega_+ + |c-|^2 Omega_-)`` with the
    two fully flipped preparations; the labelled figure is ``S_QB(rho(N))``
    on system plus chain.
    """
    n = p.n_sites
    up = p.up_probability
    k = np.arange(n + 1)
    log_mult = gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1)
    with np.errstate(divide="ignore"):
        log_w_plus = xlogy(k, up) + xlogy(n - k, 1 - up)
        log_w_flipped = xlogy(n - k, up) + xlogy(k, 1 - up)
    mix = (abs(p.c_plus) ** 2 * np.exp(log_w_plus) + abs(p.c_minus) ** 2 * np.exp(log_w_flipped))
    with np.errstate(divide="ignore"):
        log_mix = np.log(mix)
    chain_only = _entropy_terms(log_mult, log_mix)
    return {"chain_only": chain_only, "with_system_label": structured_point(p, n).s_qb}


# ---------------------------------------------------------------------------
# cells, observables and cross elements
# ---------------------------------------------------------------------------


def chain_phase_cells(n_sites: int) -> ProjectorFamily:
    """Sign of total chain polarisation; N odd so no zero eigenvalue occurs."""
    if n_sites % 2 == 0:
        raise InvalidStateError("the chain length must be odd for two polarity cells")
    signs = [np.sign(2 * sum(c) - n_sites) for c in itertools.product((1, 0), repeat=n_sites)]
    return ProjectorFamily.from_basis_labels(signs)


def phase_cells(n_sites: int) -> ProjectorFamily:
    return chain_phase_cells(n_sites).lift(2)


def global_flip_string(n_sites: int) -> np.ndarray:
    """``sigma^1`` on the system and on every chain site."""
    return reduce(np.kron, [SIGMA_X] * (n_sites + 1))


def offdiag_overlap(p: ColemanHeppParams, t: int, observable, branch_cap: int = DEFAULT_BRANCH_CAP,
                    dense_cap: int = DEFAULT_DENSE_CAP) -> complex:
    """``sum_I w_I <c+ (+, I)| A | c- (-, flip_t I)>`` for ``A`` on the system and the first ``M`` sites.

    ``M`` is read off the size of ``observable`` (``2^(M+1)`` square). The
    remaining sites enter only through the overlap of the two tails, which is
    1 when they coincide and 0 otherwise.
    """
    a = np.asarray(observable, dtype=complex)
    m_sites = int(round(math.log2(a.shape[0]))) - 1
    if a.shape != (2 ** (m_sites + 1),) * 2 or not 0 <= m_sites <= p.n_sites:
        raise InvalidStateError(f"observable of shape {a.shape} does not fit system plus 0..N sites")
    if m_sites > dense_cap * 2 + 1:
        raise DimensionCapError(f"observable on {m_sites} sites exceeds the dense cap")
    s = evolve(p, t, branch_cap)
    total = 0j
    for b in s.branches:
        minus = s.minus_config(b)
        if b.config[m_sites:] != minus[m_sites:]:
            continue
        i_plus = _config_index(0, b.config[:m_sites])
        i_minus = _config_index(1, minus[:m_sites])
        total += b.weight * np.conj(b.amp_plus) * b.amp_minus * a[i_plus, i_minus]
    return complex(total)


def dense_offdiag_overlap(p: ColemanHeppParams, t: int, observable, dense_cap: int = DEFAULT_DENSE_CAP) -> complex:
    """Same cross element from full vectors with ``A`` embedded as ``A (x) 1``."""
    s = evolve(p, t)
    if p.L > dense_cap:
        raise DimensionCapError(f"L = {p.L} exceeds the dense cap {dense_cap}")
    a = np.asarray(observable, dtype=complex)
    full = np.kron(a, np.eye(2 ** (p.n_sites + 1) // a.shape[0]))
    total = 0j
    dim = 2 ** (p.n_sites + 1)
    for b in s.branches:
        plus = np.zeros(dim, dtype=complex)
        minus = np.zeros(dim, dtype=complex)
        plus[_config_index(0, b.config)] = b.amp_plus
        minus[_config_index(1, s.minus_config(b))] = b.amp_minus
        total += b.weight * np.vdot(plus, full @ minus)
    return complex(total)


def conditional_system_state(p: ColemanHeppParams, t: int) -> dict:
    """System state given each polarity reading of the chain.

    Maps the cell sign (+1 or -1) to ``(2x2 matrix, weight)``; empty cells are
    left out. Computed from grouped configuration classes.
    """
    n = p.n_sites
    log_mult, log_w, s_before, s_after = _grouped_blocks(n, t, p.up_probability)
    mass = np.exp(log_mult + log_w)
    prob_plus = abs(p.c_plus) ** 2
    prob_minus = abs(p.c_minus) ** 2
    out = {}
    for cell in (1, -1):
        up_part = prob_plus * float(mass[s_before == cell].sum())
        down_part = prob_minus * float(mass[s_after == cell].sum())
        rho = np.array([[up_part, 0], [0, down_part]], dtype=complex)
        if t == 0:
            # before any flip both branches share the chain configuration
            coherence = p.c_plus * np.conj(p.c_minus) * float(mass[s_before == cell].sum())
            rho[0, 1] = coherence
            rho[1, 0] = np.conj(coherence)
        weight = up_part + down_part
        if weight > 1e-300:
            out[cell] = (rho / weight, weight)
    return out


def conditional_expectation_defect(p: ColemanHeppParams, t: int, system_observable=None) -> float:
    """Largest deviation of ``E(A | cell)`` from the pointer-state value ``<u_cell|A|u_cell>``.

    The pointer reading +1 is matched with the system state up and -1 with
    down. Defaults to ``A = sigma^3``.
    """
    a = np.diag([1.0, -1.0]).astype(complex) if system_observable is None else np.asarray(system_observable)
    pointer = {1: np.array([1, 0], dtype=complex), -1: np.array([0, 1], dtype=complex)}
    worst = 0.0
    for cell, (rho, _) in conditional_system_state(p, t).items():
        value = np.trace(rho @ a)
        target = np.vdot(pointer[cell], a @ pointer[cell])
        worst = max(worst, abs(value - target))
    return float(worst)


# ---------------------------------------------------------------------------
# dense engine (oracle)
# ---------------------------------------------------------------------------


def apparatus_state(p: ColemanHeppParams) -> DensityMatrix:
    up = p.up_probability
    site = np.diag([up, 1.0 - up]).astype(complex)
    return DensityMatrix(reduce(np.kron, [site] * p.n_sites))


def dense_initial_state(p: ColemanHeppParams, dense_cap: int = DEFAULT_DENSE_CAP) -> DensityMatrix:
    if p.L > dense_cap:
        raise DimensionCapError(f"L = {p.L} exceeds the dense cap {dense_cap}")
    psi = np.array([p.c_plus, p.c_minus], dtype=complex)
    return DensityMatrix(np.kron(np.outer(psi, psi.conj()), apparatus_state(p).matrix))


def dense_step_unitary(n_sites: int, t: int) -> UnitaryMap:
    """``|+><+| (x) 1 + |-><-| (x) (-i sigma^1 on site t+1)``."""
    up_proj = np.diag([1.0, 0.0]).astype(complex)
    down_proj = np.diag([0.0, 1.0]).astype(complex)
    chain_eye = np.eye(2 ** n_sites, dtype=complex)
    flip = FLIP_PHASE * embed_site_operator(SIGMA_X, t, n_sites)
    return UnitaryMap(np.kron(up_proj, chain_eye) + np.kron(down_proj, flip))


def dense_states(p: ColemanHeppParams, dense_cap: int = DEFAULT_DENSE_CAP) -> list[DensityMatrix]:
    rho = dense_initial_state(p, dense_cap)
    out = [rho]
    for t in range(p.n_sites):
        rho = dense_step_unitary(p.n_sites, t).apply(rho)
        out.append(rho)
    return out


def dense_curve(p: ColemanHeppParams, dense_cap: int = DEFAULT_DENSE_CAP) -> list[CurvePoint]:
    cells = phase_cells(p.n_sites)
    return [
        CurvePoint(t, von_neumann_entropy(rho), quantum_boltzmann_entropy(rho, cells),
                   equality_witness(rho, cells))
        for t, rho in enumerate(dense_states(p, dense_cap))
    ]


def dense_conditional_system_state(rho: DensityMatrix, n_sites: int) -> dict:
    """Reference route for :func:`conditional_system_state` by explicit partial traces."""
    chain_cells = chain_phase_cells(n_sites)
    out = {}
    m = rho.matrix.reshape(2, 2 ** n_sites, 2, 2 ** n_sites)
    for label, proj in zip(chain_cells.labels, chain_cells.members):
        weighted = np.einsum("iajb,ba->ij", m, proj)
        weight = float(np.trace(weighted).real)
        if weight > 1e-300:
            out[int(label)] = (weighted / weight, weight)
    return out


def pinched_dense(p: ColemanHeppParams, t: int, dense_cap: int = DEFAULT_DENSE_CAP) -> DensityMatrix:
    return pinch(dense_states(p, dense_cap)[t], phase_cells(p.n_sites))


__all__ = [
    "ColemanHeppParams", "StructuredChainState", "ChainBranch", "CurvePoint", "initial_state", "step",
    "evolve", "density_matrix", "qb_entropy_curve", "structured_curve", "structured_point", "entropy_jump",
    "cross_term_mass", "decoherence_time", "offdiag_overlap", "dense_offdiag_overlap", "phase_cells",
    "chain_phase_cells", "global_flip_string", "conditional_expectation_defect", "conditional_system_state",
    "dense_initial_state", "dense_step_unitary", "dense_states", "dense_curve", "final_entropy_split",
    "apparatus_state",
]
