"""Two-level system coupled to a quantum Anosov pair ``(H, K)`` on the line.

``H = lambda (p^2 - x^2) / 2`` and ``K = p - x`` are never discretised as
matrices. The coupled evolution reduces, for the branch coherence, to the
single translation-with-phase ``exp(i s K)`` with

    s(t) = 2 mu (1 - exp(-lambda t)) / lambda,

which acts on a wave function as

    (exp(i s K) phi)(x) = exp(-i s^2 / 2) exp(-i s x) phi(x + s).

The overlap ``(phi, exp(i s K) phi)`` vanishes once ``|s|`` exceeds twice the
support radius of ``phi``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import trapezoid

from .errors import GridTooCoarseError, InvalidStateError, MissingCaseBError

MIN_POINTS_PER_LENGTH = 16
DEFAULT_POINTS = 512
NEVER = math.inf


@dataclass(frozen=True)
class CaseB:
    re_lambda2: float
    alpha_p2: float
    t0: float = 0.0

    def __post_init__(self):
        if not self.re_lambda2 > 0:
            raise InvalidStateError("re_lambda2 must be positive")
        if self.alpha_p2 == 0:
            raise InvalidStateError("alpha_p2 must be non-zero")
        if self.t0 < 0:
            raise InvalidStateError("t0 must be non-negative")


@dataclass(frozen=True)
class AnosovParams:
    lyapunov: float
    coupling: float
    support_radius: float
    case_b: CaseB | None = None

    def __post_init__(self):
        if self.lyapunov == 0:
            raise InvalidStateError("the Lyapunov rate must be non-zero")
        if not self.coupling > 0:
            raise InvalidStateError("the coupling mu must be positive")
        if not self.support_radius > 0:
            raise InvalidStateError("the support radius must be positive")


def bump(x, radius: float) -> np.ndarray:
    """Smooth compactly supported profile ``exp(-1 / (1 - (x/radius)^2))`` on ``|x| < radius``."""
    u = np.asarray(x, dtype=float) / radius
    out = np.zeros_like(u)
    inside = np.abs(u) < 1
    out[inside] = np.exp(-1.0 / (1.0 - u[inside] ** 2))
    return out


@dataclass(frozen=True, eq=False)
class WavePacket:
    """Normalised compactly supported wave function, sampled on a uniform grid over its support.

    ``profile`` evaluates the unnormalised function anywhere on the line, so
    translated copies are exact rather than interpolated.
    """

    support_radius: float
    n_points: int = DEFAULT_POINTS
    profile: Callable = None

    def __post_init__(self):
        if not self.support_radius > 0:
            raise InvalidStateError("support radius must be positive")
        if self.profile is None:
            radius = self.support_radius
            object.__setattr__(self, "profile", lambda x: bump(x, radius))
        density = (self.n_points - 1) / (2 * self.support_radius)
        if density < MIN_POINTS_PER_LENGTH:
            raise GridTooCoarseError(
                f"{density:.3g} points per unit length, need at least {MIN_POINTS_PER_LENGTH}")
        grid = np.linspace(-self.support_radius, self.support_radius, self.n_points)
        raw = np.asarray(self.profile(grid), dtype=complex)
        norm = math.sqrt(trapezoid(np.abs(raw) ** 2, grid))
        grid.setflags(write=False)
        values = raw / norm
        values.setflags(write=False)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "scale", 1.0 / norm)

    @property
    def spacing(self) -> float:
        return float(self.grid[1] - self.grid[0])

    def __call__(self, x) -> np.ndarray:
        """Normalised wave function at arbitrary positions (zero outside the support)."""
        x = np.asarray(x, dtype=float)
        out = np.asarray(self.profile(x), dtype=complex) * self.scale
        return np.where(np.abs(x) <= self.support_radius, out, 0)

    def norm(self) -> float:
        return float(math.sqrt(trapezoid(np.abs(self.values) ** 2, self.grid)))

    def refined(self, factor: int = 2) -> "WavePacket":
        return WavePacket(self.support_radius, (self.n_points - 1) * factor + 1, self.profile)


def translation_magnitude(t: float, p: AnosovParams) -> float:
    """Displacement ``2 mu (1 - exp(-lambda t)) / lambda`` of the dilation group at time ``t``."""
    if t < 0:
        raise ValueError("t must be non-negative")
    lam = p.lyapunov
    return 2.0 * p.coupling * (-math.expm1(-lam * t)) / lam


def apply_dilation(phi: WavePacket, s: float, x) -> np.ndarray:
    """``(exp(i s K) phi)(x)`` with ``K = p - x``."""
    x = np.asarray(x, dtype=float)
    return np.exp(-0.5j * s * s) * np.exp(-1j * s * x) * phi(x + s)


def overlap_at_displacement(phi: WavePacket, s: float) -> complex:
    """``(phi, exp(i s K) phi)`` by trapezoid quadrature on the packet's grid."""
    x = phi.grid
    return complex(trapezoid(np.conj(phi.values) * apply_dilation(phi, s, x), x))


def overlap(t: float, phi: WavePacket, p: AnosovParams) -> complex:
    return overlap_at_displacement(phi, translation_magnitude(t, p))


def overlap_symmetric(t: float, phi: WavePacket, p: AnosovParams, n_points: int | None = None) -> complex:
    """Same quantity as :func:`overlap` from ``(exp(-i s K/2) phi, exp(i s K/2) phi)`` on a wider grid.

    Both half-displaced packets are built from the closed-form action, so the
    result checks the group law and the quadrature independently of the
    one-sided route.
    """
    s = translation_magnitude(t, p)
    half = 0.5 * s
    reach = phi.support_radius + abs(half)
    n_points = n_points or int(math.ceil(2 * reach / phi.spacing)) + 1
    x = np.linspace(-reach, reach, n_points)
    left = apply_dilation(phi, -half, x)
    right = apply_dilation(phi, half, x)
    return complex(trapezoid(np.conj(left) * right, x))


def oracle_threshold(p: AnosovParams) -> float:
    """First time at which ``s(t)`` reaches twice the support radius; ``inf`` if it never does."""
    ratio = p.support_radius * p.lyapunov / p.coupling
    if 1.0 - ratio <= 0.0:
        return NEVER
    return -math.log1p(-ratio) / p.lyapunov


@dataclass(frozen=True)
class ThresholdReport:
    """Printed threshold beside the exact one; ``None`` marks a quantity with no closed form."""

    paper_time: float
    paper_condition: float
    paper_condition_holds: bool
    oracle_time: float | None
    asymptotic_displacement: float | None

    def as_dict(self) -> dict:
        out = dict(self.__dict__)
        for key in ("paper_time", "oracle_time"):
            if out[key] is not None and math.isinf(out[key]):
                out[key] = "never"
        if out["asymptotic_displacement"] is not None and math.isinf(out["asymptotic_displacement"]):
            out["asymptotic_displacement"] = "unbounded"
        return out


def decoherence_time_case_a(p: AnosovParams) -> ThresholdReport:
    """Printed threshold ``|log 2| / lambda`` with ``a1 = S lambda / (4 mu)``, beside the exact root."""
    lam = p.lyapunov
    a1 = p.support_radius * lam / (4 * p.coupling)
    s_inf = 2 * p.coupling / lam if lam > 0 else math.inf
    return ThresholdReport(
        paper_time=abs(math.log(2)) / lam,
        paper_condition=a1,
        paper_condition_holds=a1 < 1,
        oracle_time=oracle_threshold(p),
        asymptotic_displacement=s_inf,
    )


def decoherence_time_case_b(p: AnosovParams) -> ThresholdReport:
    """``t02 = t0 + |log 2| / Re lambda2`` under ``a2 < 1``; ``never`` otherwise."""
    if p.case_b is None:
        raise MissingCaseBError("case (b) constants were not supplied")
    b = p.case_b
    a2 = p.support_radius * b.re_lambda2 * math.exp(b.t0 * b.re_lambda2) / (4 * p.coupling * b.alpha_p2)
    t02 = b.t0 + abs(math.log(2)) / b.re_lambda2
    holds = a2 < 1
    return ThresholdReport(
        paper_time=t02 if holds else NEVER,
        paper_condition=a2,
        paper_condition_holds=holds,
        oracle_time=None,
        asymptotic_displacement=None,
    )


def classical_flow_check(t: float, s: float, point, lam: float = 1.0) -> float:
    """Deviation between the two sides of ``tau_t o sigma_s = sigma_{s exp(-lambda t)} o tau_t``.

    Both sides are automorphisms acting on observables by pullback, so as
    point maps they compose in the opposite order: translating by ``s`` after
    the flow equals flowing after a translation by ``s exp(-lambda t)``.
    """
    x, p = point

    def flow(q):
        c, sh = math.cosh(lam * t), math.sinh(lam * t)
        return (c * q[0] + sh * q[1], c * q[1] + sh * q[0])

    def shift(q, amount):
        return (q[0] + amount, q[1] + amount)

    lhs = shift(flow((x, p)), s)
    rhs = flow(shift((x, p), s * math.exp(-lam * t)))
    return max(abs(lhs[0] - rhs[0]), abs(lhs[1] - rhs[1]))


def weyl_operator(beta: float, gamma: float, phi: WavePacket, x) -> np.ndarray:
    """``exp[i(beta x + gamma p)] phi = exp(i beta gamma / 2) exp(i beta x) phi(x + gamma)``."""
    x = np.asarray(x, dtype=float)
    return np.exp(0.5j * beta * gamma) * np.exp(1j * beta * x) * phi(x + gamma)


def _apply_dilation_generator(alpha, values: np.ndarray, x: np.ndarray, h: float) -> np.ndarray:
    """``alpha_p (-i d/dx) + alpha_x x`` with a second-order central difference."""
    alpha_p, alpha_x = alpha
    deriv = np.zeros_like(values)
    deriv[1:-1] = (values[2:] - values[:-2]) / (2 * h)
    return alpha_p * (-1j) * deriv + alpha_x * x * values


def symplectic_factor(alpha, beta_gamma) -> float:
    return alpha[0] * beta_gamma[0] - alpha[1] * beta_gamma[1]


def weyl_commutator_check(alpha, beta_gamma, phi: WavePacket) -> float:
    """Quadrature norm of ``[K_alpha, W] phi - (alpha_p beta - alpha_x gamma) W phi`` on a grid.

    The grid keeps the packet's spacing and is widened to hold the translated
    copy, so the residual is the finite-difference error, ``O(h^2)``.
    """
    beta, gamma = beta_gamma
    h = phi.spacing
    if 1.0 / h < MIN_POINTS_PER_LENGTH or abs(beta) * h > 0.5:
        raise GridTooCoarseError("grid does not resolve the applied phase or translation")
    reach = phi.support_radius + abs(gamma) + 4 * h
    n = int(round(2 * reach / h)) + 1
    x = -reach + h * np.arange(n)
    w_phi = weyl_operator(beta, gamma, phi, x)
    # K phi sampled directly on the translated grid x + gamma, so no interpolation enters
    shifted = _apply_dilation_generator(alpha, phi(x + gamma), x + gamma, h)
    w_k_phi = np.exp(0.5j * beta * gamma) * np.exp(1j * beta * x) * shifted
    k_w_phi = _apply_dilation_generator(alpha, w_phi, x, h)
    residual = k_w_phi - w_k_phi - symplectic_factor(alpha, beta_gamma) * w_phi
    return float(math.sqrt(trapezoid(np.abs(residual) ** 2, x)))


def reduced_system_matrix(t: float, phi: WavePacket, p: AnosovParams, c_plus: complex, c_minus: complex) -> np.ndarray:
    """Two-level reduced density matrix; the off-diagonal carries ``c+ conj(c-) * overlap(t)``."""
    coherence = c_plus * np.conj(c_minus) * overlap(t, phi, p)
    return np.array([[abs(c_plus) ** 2, coherence], [np.conj(coherence), abs(c_minus) ** 2]], dtype=complex)


def displays_decoherence(matrix: np.ndarray, tol: float = 1e-8) -> bool:
    """True when expectations reduce to a mixture of the two pointer states, i.e. no coherence survives."""
    return abs(matrix[0, 1]) <= tol
