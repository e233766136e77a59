"""Closed-form zero modes, their translates and overlap integrals.

Every mode has the form ``gamma * d * exp(-L(x))`` with a constant spinor
``d`` in {(1, i), (1, -i)} and a real exponent ``L``.  Overlaps and residuals
therefore reduce to scalar quadratures.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import InvalidParameter, NoExactZeroMode
from .profiles import Antiderivative, MassProfile, antiderivative, glue_walls
from .quadrature import integrate_real

__all__ = [
    "AnalyticMode",
    "ExactOddZeroMode",
    "ModeCombination",
    "zero_mode",
    "shifted_modes",
    "exact_zero_mode",
    "inner",
    "gram_matrix",
    "interaction",
    "interaction_matrix",
    "dirac_apply",
    "residual_norm",
]

SIGMA1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA3 = np.array([[1, 0], [0, -1]], dtype=complex)
UP = np.array([1.0, 1.0j])
DOWN = np.array([1.0, -1.0j])

#: improper integrals are cut at this many decay lengths past the outermost center
TAIL = 40.0


@dataclass(frozen=True, eq=False)
class AnalyticMode:
    """gamma * direction * exp(-exponent(x)); ``rate`` is exponent'."""

    direction: np.ndarray
    gamma: float
    exponent: Callable
    rate: Callable
    center: float = 0.0
    conjugated: bool = False
    kappa_inf: float = 1.0
    core: float = 1.0

    def scalar(self, x):
        return self.gamma * np.exp(-np.asarray(self.exponent(x), dtype=float))

    def __call__(self, x):
        """Spinor values, shape (2, len(x))."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        return self.direction[:, None] * self.scalar(x)[None, :]

    def derivative(self, x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        return -np.asarray(self.rate(x))[None, :] * self(x)

    def span(self) -> tuple[float, float]:
        w = TAIL / self.kappa_inf + (self.core if math.isfinite(self.core) else 0.0)
        return (self.center - w, self.center + w)


class ExactOddZeroMode(AnalyticMode):
    """Kernel element of the glued operator for an odd number of walls."""


@dataclass(frozen=True, eq=False)
class ModeCombination:
    """sum_j coefficients[j] * modes[j]."""

    coefficients: np.ndarray
    modes: tuple[AnalyticMode, ...]

    def __call__(self, x):
        return sum(b * m(x) for b, m in zip(self.coefficients, self.modes))

    def norm(self) -> float:
        G = gram_matrix(self.modes)
        b = self.coefficients
        return float(np.sqrt(np.real(np.vdot(b, G @ b))))


def _normalization(exponent, lo, hi, points) -> float:
    """gamma such that ||gamma (1, +-i) exp(-exponent)|| = 1."""
    mass = integrate_real(lambda x: math.exp(-2.0 * float(exponent(x))), lo, hi, points, epsabs=1e-14)
    return 1.0 / math.sqrt(2.0 * mass)


def _window(profile: MassProfile, centers=()) -> tuple[float, float, list[float]]:
    cs = list(profile.centers) + list(centers)
    w = TAIL / profile.kappa_inf + (profile.core_half_width if math.isfinite(profile.core_half_width) else 0.0)
    lo, hi = min(cs, default=0.0) - w, max(cs, default=0.0) + w
    return lo, hi, profile.breakpoints()


def zero_mode(profile: MassProfile) -> AnalyticMode:
    """Normalized kernel element of a single-wall operator."""
    if profile.n_walls != 1:
        raise InvalidParameter("zero_mode needs a single-wall profile")
    K = antiderivative(profile)
    flip = profile.sign_at_infinity[1] < 0
    exponent = (lambda x: -K(x)) if flip else K
    rate = (lambda x: -profile(x)) if flip else profile
    c = float(profile.centers[0])
    lo, hi, pts = _window(profile)
    gamma = _normalization(exponent, lo, hi, pts)
    return AnalyticMode(DOWN if flip else UP, gamma, exponent, rate, c, False,
                        profile.kappa_inf, profile.core_half_width)


def _shift(base_mode: AnalyticMode, K: Antiderivative, base: MassProfile, c: float, sign: int) -> AnalyticMode:
    return AnalyticMode(
        UP if sign > 0 else DOWN,
        base_mode.gamma,
        lambda x, c=c: K(np.asarray(x) - c),
        lambda x, c=c: base(np.asarray(x) - c),
        c,
        sign < 0,
        base.kappa_inf,
        base.core_half_width,
    )


def shifted_modes(base: MassProfile, n: int, half_spacing: float | None = None,
                  centers: Sequence[float] | None = None) -> list[AnalyticMode]:
    """Single-wall zero mode translated to each wall of the glued profile.

    Modes are returned right to left, so index 0 is the rightmost wall; walls of
    negative sign carry the conjugated mode.
    """
    if n < 1:
        raise InvalidParameter("n must be positive")
    if centers is None:
        if half_spacing is None:
            raise InvalidParameter("give half_spacing or centers")
        glued = glue_walls(base, n, half_spacing)
    else:
        if len(centers) != n:
            raise InvalidParameter(f"{len(centers)} centers given for n={n}")
        from .profiles import glue_at
        glued = glue_at(base, centers)
    z = zero_mode(base)
    K = antiderivative(base)
    return [_shift(z, K, base, c, s) for c, s in reversed(glued.walls)]


def exact_zero_mode(glued: MassProfile) -> ExactOddZeroMode:
    if glued.n_walls % 2 == 0:
        raise NoExactZeroMode("an even number of walls has no exact zero mode")
    K = antiderivative(glued)
    lo, hi, pts = _window(glued)
    gamma = _normalization(K, lo, hi, pts)
    return ExactOddZeroMode(UP, gamma, K, glued, 0.0, False, glued.kappa_inf, glued.core_half_width)


def _joint_window(modes, profile=None):
    lo = min(m.span()[0] for m in modes)
    hi = max(m.span()[1] for m in modes)
    pts = [m.center for m in modes]
    for m in modes:
        if math.isfinite(m.core):
            pts += [m.center - m.core, m.center + m.core]
    if profile is not None:
        pts += profile.breakpoints()
    return lo, hi, pts


def _complex_integral(f, lo, hi, pts, parts=(True, True), **kw) -> complex:
    re = integrate_real(lambda x: f(x).real, lo, hi, pts, **kw) if parts[0] else 0.0
    im = integrate_real(lambda x: f(x).imag, lo, hi, pts, **kw) if parts[1] else 0.0
    return complex(re, im)


def _parts(c: complex) -> tuple[bool, bool]:
    return (c.real != 0.0, c.imag != 0.0)


def inner(a: AnalyticMode, b: AnalyticMode) -> complex:
    """<a, b>, conjugate-linear in ``a``; exact zero when the spinors are orthogonal."""
    c = complex(np.vdot(a.direction, b.direction))
    if c == 0:
        return 0j
    lo, hi, pts = _joint_window((a, b))
    val = integrate_real(lambda x: math.exp(-float(a.exponent(x)) - float(b.exponent(x))), lo, hi, pts,
                         epsabs=1e-15)
    return c * a.gamma * b.gamma * val


def gram_matrix(modes: Sequence[AnalyticMode]) -> np.ndarray:
    n = len(modes)
    G = np.empty((n, n), dtype=complex)
    for i in range(n):
        G[i, i] = inner(modes[i], modes[i])
        for j in range(i + 1, n):
            G[i, j] = inner(modes[i], modes[j])
            G[j, i] = np.conj(G[i, j])
    return G


def interaction(profile: MassProfile, a: AnalyticMode, b: AnalyticMode) -> complex:
    """<a, D b> with D = i sigma3 d/dx + kappa sigma1."""
    c1 = complex(np.vdot(a.direction, SIGMA1 @ b.direction))
    c3 = complex(np.vdot(a.direction, SIGMA3 @ b.direction))
    if c1 == 0 and c3 == 0:
        return 0j
    lo, hi, pts = _joint_window((a, b), profile)

    def f(x):
        w = math.exp(-float(a.exponent(x)) - float(b.exponent(x)))
        return w * (c1 * float(profile(x)) - 1j * c3 * float(b.rate(x)))

    # the real and imaginary coefficient patterns tell which parts can be nonzero
    parts = (_parts(c1)[0] or _parts(c3)[1], _parts(c1)[1] or _parts(c3)[0])
    return a.gamma * b.gamma * _complex_integral(f, lo, hi, pts, parts, epsabs=1e-16)


def interaction_matrix(profile: MassProfile, modes: Sequence[AnalyticMode]) -> np.ndarray:
    n = len(modes)
    A = np.empty((n, n), dtype=complex)
    for i in range(n):
        A[i, i] = interaction(profile, modes[i], modes[i])
        for j in range(i + 1, n):
            A[i, j] = interaction(profile, modes[i], modes[j])
            A[j, i] = np.conj(A[i, j])
    return A


def dirac_apply(profile: MassProfile, mode: AnalyticMode, x) -> np.ndarray:
    """(D mode)(x) from the closed-form derivative; shape (2, len(x))."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    p = mode.scalar(x)
    d = mode.direction
    kap = np.asarray(profile(x), dtype=float)
    rate = np.asarray(mode.rate(x), dtype=float)
    return p[None, :] * (kap[None, :] * (SIGMA1 @ d)[:, None] - 1j * rate[None, :] * (SIGMA3 @ d)[:, None])


def residual_norm(profile: MassProfile, mode: AnalyticMode) -> float:
    """L2 norm of D_profile applied to ``mode``."""
    lo, hi, pts = _joint_window((mode,), profile)
    s1, s3 = SIGMA1 @ mode.direction, SIGMA3 @ mode.direction

    def f(x):
        v = float(profile(x)) * s1 - 1j * float(mode.rate(x)) * s3
        return math.exp(-2.0 * float(mode.exponent(x))) * float(np.real(np.vdot(v, v)))

    sq = integrate_real(f, lo, hi, pts, epsabs=1e-24, epsrel=1e-10)
    return mode.gamma * math.sqrt(max(sq, 0.0))
