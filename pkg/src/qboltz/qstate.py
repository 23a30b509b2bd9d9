"""Dense states, projector families and channels on finite tensor-product spaces.

Conventions
-----------
* Basis vector ``|0>`` is spin up (sigma^3 = +1), ``|1>`` is spin down.
* ``tensor(a, b)`` is ``np.kron(a, b)``: the left factor is the slow index.
  Kronecker products are associative, so ``tensor(a, tensor(b, c))`` and
  ``tensor(tensor(a, b), c)`` agree exactly.
* In composite system+chain spaces the system qubit is the leftmost factor
  (site 0), followed by chain sites 1..N.

Every value type is immutable: arrays are copied on construction and marked
read-only.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Sequence

import numpy as np

from .errors import DimensionMismatchError, InvalidStateError, ZeroWeightError

HERMITIAN_TOL = 1e-12
PSD_TOL = 1e-10
TRACE_TOL = 1e-12
NORM_TOL = 1e-12
PROJECTOR_TOL = 1e-12
UNITARY_TOL = 1e-12
ZERO_WEIGHT_TOL = 1e-14

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)
UP = np.array([1, 0], dtype=complex)
DOWN = np.array([0, 1], dtype=complex)


def _frozen(a, dtype=complex) -> np.ndarray:
    out = np.array(a, dtype=dtype, copy=True)
    out.setflags(write=False)
    return out


def _max_entry(a: np.ndarray) -> float:
    return float(np.max(np.abs(a))) if a.size else 0.0


def _matrix(x) -> np.ndarray:
    if isinstance(x, (DensityMatrix, UnitaryMap)):
        return x.matrix
    return np.asarray(x)


def hermitize(a: np.ndarray) -> np.ndarray:
    """Remove the anti-Hermitian rounding residue of ``a``."""
    return 0.5 * (a + a.conj().T)


# ---------------------------------------------------------------------------
# value types
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, positive semidefinite, unit-trace matrix."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
            raise InvalidStateError(f"density matrix must be square, got shape {m.shape}")
        if _max_entry(m - m.conj().T) > HERMITIAN_TOL:
            raise InvalidStateError("density matrix is not Hermitian")
        tr = np.trace(m)
        if abs(tr - 1.0) > TRACE_TOL * max(1.0, m.shape[0] / 16):
            raise InvalidStateError(f"density matrix has trace {tr.real:.15g}, expected 1")
        if np.linalg.eigvalsh(hermitize(m))[0] < -PSD_TOL:
            raise InvalidStateError("density matrix has a negative eigenvalue")
        object.__setattr__(self, "matrix", _frozen(m))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def from_pure(cls, psi) -> "DensityMatrix":
        v = psi.vector if isinstance(psi, PureState) else np.asarray(psi, dtype=complex)
        return cls(np.outer(v, v.conj()))

    @classmethod
    def maximally_mixed(cls, dim: int) -> "DensityMatrix":
        return cls(np.eye(dim, dtype=complex) / dim)

    def spectrum(self) -> np.ndarray:
        """Eigenvalues in ascending order, clipped at zero."""
        return np.clip(np.linalg.eigvalsh(hermitize(self.matrix)), 0.0, None)

    def expectation(self, op) -> complex:
        return complex(np.trace(self.matrix @ np.asarray(op)))


@dataclass(frozen=True, eq=False)
class PureState:
    vector: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vector, dtype=complex)
        if v.ndim != 1 or v.size == 0:
            raise InvalidStateError(f"pure state must be a non-empty vector, got shape {v.shape}")
        if abs(np.linalg.norm(v) - 1.0) > NORM_TOL:
            raise InvalidStateError("pure state is not normalised")
        object.__setattr__(self, "vector", _frozen(v))

    @property
    def dim(self) -> int:
        return self.vector.shape[0]

    @classmethod
    def basis(cls, index: int, dim: int) -> "PureState":
        v = np.zeros(dim, dtype=complex)
        v[index] = 1.0
        return cls(v)

    def density(self) -> DensityMatrix:
        return DensityMatrix.from_pure(self)


@dataclass(frozen=True, eq=False)
class ProjectorFamily:
    """Orthogonal resolution of the identity ``{P_a}`` with scalar labels ``M_a``.

    The members play the role of phase cells: simultaneous eigenspaces of a
    set of commuting macroscopic observables.
    """

    members: tuple
    labels: tuple = ()

    def __post_init__(self):
        members = tuple(_frozen(p) for p in self.members)
        if not members:
            raise InvalidStateError("projector family needs at least one member")
        dim = members[0].shape[0]
        for p in members:
            if p.shape != (dim, dim):
                raise InvalidStateError("projector family members must share one square shape")
        labels = tuple(float(x) for x in self.labels) if self.labels else tuple(
            float(i) for i in range(len(members)))
        if len(labels) != len(members):
            raise InvalidStateError("one label per projector is required")
        for i, p in enumerate(members):
            if _max_entry(p - p.conj().T) > PROJECTOR_TOL:
                raise InvalidStateError(f"projector {i} is not Hermitian")
            for j in range(i, len(members)):
                prod = p @ members[j]
                target = p if i == j else np.zeros_like(p)
                if _max_entry(prod - target) > PROJECTOR_TOL:
                    raise InvalidStateError(f"projectors {i}, {j} violate P_a P_b = delta_ab P_a")
        if _max_entry(sum(members) - np.eye(dim)) > PROJECTOR_TOL:
            raise InvalidStateError("projectors do not sum to the identity")
        object.__setattr__(self, "members", members)
        object.__setattr__(self, "labels", labels)

    @property
    def dim(self) -> int:
        return self.members[0].shape[0]

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def observable(self) -> np.ndarray:
        """The macro-observable ``M = sum_a M_a P_a``."""
        return sum(m * p for m, p in zip(self.labels, self.members))

    @classmethod
    def trivial(cls, dim: int) -> "ProjectorFamily":
        return cls((np.eye(dim, dtype=complex),), (1.0,))

    @classmethod
    def computational(cls, dim: int) -> "ProjectorFamily":
        return cls.from_basis_labels(range(dim))

    @classmethod
    def from_basis_labels(cls, basis_labels: Sequence[float]) -> "ProjectorFamily":
        """Group computational basis states by label; cells ordered by label."""
        basis_labels = np.asarray(list(basis_labels), dtype=float)
        dim = basis_labels.size
        values = np.unique(basis_labels)
        members = []
        for v in values:
            p = np.zeros((dim, dim), dtype=complex)
            idx = np.flatnonzero(basis_labels == v)
            p[idx, idx] = 1.0
            members.append(p)
        return cls(tuple(members), tuple(values))

    @classmethod
    def from_observable(cls, m, tol: float = 1e-9) -> "ProjectorFamily":
        """Spectral projectors of a Hermitian observable, eigenvalues merged within ``tol``."""
        m = np.asarray(m, dtype=complex)
        evals, evecs = np.linalg.eigh(hermitize(m))
        groups = [[0]]
        for k in range(1, len(evals)):
            if evals[k] - evals[groups[-1][0]] > tol:
                groups.append([])
            groups[-1].append(k)
        members, labels = [], []
        for g in groups:
            v = evecs[:, g]
            members.append(hermitize(v @ v.conj().T))
            labels.append(float(np.mean(evals[g])))
        return cls(tuple(members), tuple(labels))

    def lift(self, left_dim: int) -> "ProjectorFamily":
        """``1_left (x) P_a`` for every member (the P_a = 1 (x) Pi_a construction)."""
        eye = np.eye(left_dim, dtype=complex)
        return ProjectorFamily(tuple(np.kron(eye, p) for p in self.members), self.labels)


@dataclass(frozen=True, eq=False)
class UnitaryMap:
    matrix: np.ndarray

    def __post_init__(self):
        u = np.asarray(self.matrix, dtype=complex)
        if u.ndim != 2 or u.shape[0] != u.shape[1]:
            raise InvalidStateError(f"unitary must be square, got shape {u.shape}")
        if _max_entry(u.conj().T @ u - np.eye(u.shape[0])) > UNITARY_TOL * max(1.0, u.shape[0] / 16):
            raise InvalidStateError("matrix is not unitary")
        object.__setattr__(self, "matrix", _frozen(u))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def identity(cls, dim: int) -> "UnitaryMap":
        return cls(np.eye(dim, dtype=complex))

    @classmethod
    def from_generator(cls, h, t: float = 1.0) -> "UnitaryMap":
        """``exp(i H t)`` for Hermitian ``H``, through its eigendecomposition."""
        h = np.asarray(h, dtype=complex)
        if _max_entry(h - h.conj().T) > HERMITIAN_TOL:
            raise InvalidStateError("generator is not Hermitian")
        evals, evecs = np.linalg.eigh(hermitize(h))
        return cls((evecs * np.exp(1j * t * evals)) @ evecs.conj().T)

    def __matmul__(self, other: "UnitaryMap") -> "UnitaryMap":
        return UnitaryMap(self.matrix @ other.matrix)

    @property
    def dagger(self) -> "UnitaryMap":
        return UnitaryMap(self.matrix.conj().T)

    def apply(self, rho: DensityMatrix) -> DensityMatrix:
        """Evolve ``rho -> U rho U^dagger``."""
        _check_dims(self.dim, rho.dim)
        return DensityMatrix(hermitize(self.matrix @ rho.matrix @ self.matrix.conj().T))


@dataclass(frozen=True, eq=False)
class KrausMap:
    """Completely positive trace-preserving map ``rho -> sum_i K_i rho K_i^dagger``."""

    operators: tuple

    def __post_init__(self):
        ops = tuple(_frozen(k) for k in self.operators)
        if not ops:
            raise InvalidStateError("Kraus map needs at least one operator")
        shape = ops[0].shape
        if any(k.shape != shape for k in ops):
            raise InvalidStateError("Kraus operators must share one shape")
        total = sum(k.conj().T @ k for k in ops)
        if _max_entry(total - np.eye(shape[1])) > UNITARY_TOL * max(1.0, shape[1] / 16):
            raise InvalidStateError("Kraus operators are not trace preserving")
        object.__setattr__(self, "operators", ops)

    @property
    def dim_in(self) -> int:
        return self.operators[0].shape[1]

    @property
    def dim_out(self) -> int:
        return self.operators[0].shape[0]

    def apply(self, rho: DensityMatrix) -> DensityMatrix:
        _check_dims(self.dim_in, rho.dim)
        out = sum(k @ rho.matrix @ k.conj().T for k in self.operators)
        return DensityMatrix(hermitize(out))


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def _check_dims(a: int, b: int):
    if a != b:
        raise DimensionMismatchError(f"dimension mismatch: {a} != {b}")


def tensor(a, b, *rest):
    """Kronecker product of vectors or matrices; the left factor is the slow index."""
    operands = [np.asarray(_matrix(x)) for x in (a, b, *rest)]
    if len({x.ndim for x in operands}) != 1:
        raise DimensionMismatchError("tensor operands must all be vectors or all be matrices")
    return reduce(np.kron, operands)


def embed_site_operator(op, site: int, n_sites: int) -> np.ndarray:
    """Place a single-qubit operator on ``site`` (0-based) of an ``n_sites`` register."""
    factors = [IDENTITY_2] * n_sites
    factors[site] = np.asarray(op, dtype=complex)
    return reduce(np.kron, factors)


def pinch(rho: DensityMatrix, family: ProjectorFamily) -> DensityMatrix:
    """``rho -> sum_a P_a rho P_a``: erase the coherences between cells."""
    _check_dims(rho.dim, family.dim)
    m = rho.matrix
    return DensityMatrix(hermitize(sum(p @ m @ p for p in family.members)))


def conditional_state(rho: DensityMatrix, alpha: int, family: ProjectorFamily):
    """State after reading cell ``alpha``, and the probability of that reading.

    Returns ``(P_a rho P_a / w_a, w_a)`` with ``w_a = Tr(rho P_a)``.
    """
    _check_dims(rho.dim, family.dim)
    p = family.members[alpha]
    w = float(np.real(np.trace(rho.matrix @ p)))
    if w <= ZERO_WEIGHT_TOL:
        raise ZeroWeightError(f"cell {alpha} has weight {w:.3g}")
    return DensityMatrix(hermitize(p @ rho.matrix @ p) / w), w


def branch_weights(rho: DensityMatrix, family: ProjectorFamily) -> np.ndarray:
    _check_dims(rho.dim, family.dim)
    return np.array([np.real(np.trace(rho.matrix @ p)) for p in family.members])


def partial_trace(rho: DensityMatrix, factor_dims: Sequence[int], keep) -> DensityMatrix:
    """Reduced density matrix on the factors listed in ``keep`` (in their original order)."""
    factor_dims = [int(d) for d in factor_dims]
    if int(np.prod(factor_dims)) != rho.dim:
        raise DimensionMismatchError(f"factor dims {factor_dims} do not multiply to {rho.dim}")
    keep = sorted({int(k) for k in ([keep] if np.isscalar(keep) else keep)})
    n = len(factor_dims)
    if any(k < 0 or k >= n for k in keep):
        raise DimensionMismatchError(f"keep indices {keep} out of range for {n} factors")
    traced = [k for k in range(n) if k not in keep]
    t = rho.matrix.reshape(factor_dims + factor_dims)
    for count, k in enumerate(traced):
        # each trace removes one row axis and its column partner
        ax = k - count
        t = np.trace(t, axis1=ax, axis2=ax + t.ndim // 2)
    d = int(np.prod([factor_dims[k] for k in keep])) if keep else 1
    return DensityMatrix(hermitize(t.reshape(d, d)))


def trace_norm_pure_diff(psi1: PureState, psi2: PureState) -> float:
    """Trace norm of ``|psi1><psi1| - |psi2><psi2|``, i.e. ``2 sqrt(1 - |<psi1,psi2>|^2)``."""
    _check_dims(psi1.dim, psi2.dim)
    # the component of psi2 orthogonal to psi1 has norm sqrt(1 - |<psi1,psi2>|^2) without cancellation
    residual = psi2.vector - np.vdot(psi1.vector, psi2.vector) * psi1.vector
    return 2.0 * min(1.0, float(np.linalg.norm(residual)))


def trace_norm(a) -> float:
    """Sum of singular values."""
    return float(np.sum(np.linalg.svd(np.asarray(a), compute_uv=False)))


def commutator(a, b) -> np.ndarray:
    return a @ b - b @ a


def is_decoherent(rho: DensityMatrix, family: ProjectorFamily, tol: float = 1e-10) -> bool:
    """True iff every phase-cell projector commutes with ``rho`` up to ``tol`` (max-entry)."""
    _check_dims(rho.dim, family.dim)
    return all(_max_entry(commutator(p, rho.matrix)) <= tol for p in family.members)


def mean_observable(rho: DensityMatrix, site_operators: Sequence) -> float:
    """``(1/N) sum_i Tr(rho O_i)``: the finite-N mean magnetisation."""
    ops = [np.asarray(o) for o in site_operators]
    for o in ops:
        _check_dims(rho.dim, o.shape[0])
    value = sum(np.trace(rho.matrix @ o) for o in ops) / len(ops)
    if abs(value.imag) > 1e-10:
        raise InvalidStateError(f"mean observable has imaginary part {value.imag:.3g}")
    return float(value.real)


def chain_site_operators(op, n_sites: int, offset: int = 0, total: int | None = None):
    """``op`` embedded on each of ``n_sites`` consecutive sites starting at ``offset``."""
    total = n_sites + offset if total is None else total
    return [embed_site_operator(op, offset + i, total) for i in range(n_sites)]


def product_density(single_site_states: Sequence) -> DensityMatrix:
    return DensityMatrix(reduce(np.kron, [np.asarray(s, dtype=complex) for s in single_site_states]))


# ---------------------------------------------------------------------------
# random instances (all take an explicit numpy Generator)
# ---------------------------------------------------------------------------


def random_pure_state(dim: int, rng: np.random.Generator) -> PureState:
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return PureState(v / np.linalg.norm(v))


def random_density_matrix(dim: int, rng: np.random.Generator, rank: int | None = None) -> DensityMatrix:
    """Ginibre-distributed density matrix of the given rank (full rank by default)."""
    rank = dim if rank is None else rank
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    m = g @ g.conj().T
    return DensityMatrix(hermitize(m / np.trace(m).real))


def random_unitary(dim: int, rng: np.random.Generator) -> UnitaryMap:
    """Haar-random unitary (QR of a Ginibre matrix with the phase fix)."""
    z = (rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return UnitaryMap(q * (d / np.abs(d)))


def random_projector_family(dim: int, n_members: int, rng: np.random.Generator) -> ProjectorFamily:
    """Split a random orthonormal basis into ``n_members`` non-empty groups."""
    if not 1 <= n_members <= dim:
        raise ValueError(f"need 1 <= n_members <= dim, got {n_members} for dim {dim}")
    u = random_unitary(dim, rng).matrix
    cuts = np.sort(rng.choice(np.arange(1, dim), size=n_members - 1, replace=False))
    blocks = np.split(np.arange(dim), cuts)
    members = tuple(hermitize(u[:, b] @ u[:, b].conj().T) for b in blocks)
    return ProjectorFamily(members, tuple(float(i) for i in range(n_members)))


def random_kraus_map(dim_in: int, dim_out: int, n_ops: int, rng: np.random.Generator) -> KrausMap:
    """Kraus operators cut from a random isometry ``C^dim_in -> C^(n_ops*dim_out)``."""
    big = n_ops * dim_out
    if big < dim_in:
        raise ValueError("n_ops * dim_out must be at least dim_in for an isometry")
    z = rng.normal(size=(big, dim_in)) + 1j * rng.normal(size=(big, dim_in))
    v, _ = np.linalg.qr(z)
    return KrausMap(tuple(v[k * dim_out:(k + 1) * dim_out, :] for k in range(n_ops)))
