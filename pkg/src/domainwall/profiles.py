"""Domain-wall mass profiles and their antiderivatives.

A single wall is described by a :class:`WallShape`, a positive-sign wall
centred at the origin.  A :class:`MassProfile` places copies of one shape at
a list of centres with alternating signs, optionally plus a compactly
supported bump.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import InvalidParameter, QuadratureError, SpacingTooSmall

__all__ = [
    "WallShape",
    "Bump",
    "MassProfile",
    "Antiderivative",
    "make_single_wall",
    "sampled_wall",
    "constant_mass",
    "glue_walls",
    "glue_at",
    "add_bump",
    "antiderivative",
    "MOLLIFIER_C0",
]

ArrayLike = float | np.ndarray


def _as_array(x):
    x = np.asarray(x, dtype=float)
    return x, np.atleast_1d(x).ravel()


def _restore(x, out):
    return out.reshape(x.shape)[()]


# --- the C-infinity example wall built from nu(xi) = exp(-1/xi) -------------

def _mollifier(x):
    x, flat = _as_array(x)
    out = np.sign(flat)
    s = 0.5 * (flat + 1.0)
    core = (s > 0.0) & (s < 1.0)
    sc = s[core]
    # 2 nu(s) / (nu(s) + nu(1 - s)) - 1 rewritten without under/overflow
    out[core] = np.tanh(0.5 * (1.0 / (1.0 - sc) - 1.0 / sc))
    return _restore(x, out)


def _mollifier_derivative(x):
    x, flat = _as_array(x)
    out = np.zeros_like(flat)
    s = 0.5 * (flat + 1.0)
    core = (s > 0.0) & (s < 1.0)
    sc = s[core]
    k = np.tanh(0.5 * (1.0 / (1.0 - sc) - 1.0 / sc))
    out[core] = 0.25 * (1.0 - k * k) * (1.0 / (1.0 - sc) ** 2 + 1.0 / sc**2)
    return _restore(x, out)


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)


class _TabulatedPrimitive:
    """P(t) = int_a^t f on [a, b] by composite Gauss-Legendre, constant slope outside."""

    def __init__(self, f, a, b, cells=128, tol=1e-12):
        self.f, self.a, self.b = f, float(a), float(b)
        self.edges = np.linspace(a, b, cells + 1)
        left, right = self.edges[:-1], self.edges[1:]
        full = self._cells(f, left, right, _GL_NODES, _GL_WEIGHTS)
        # error estimate: same cells split in two
        mid = 0.5 * (left + right)
        split = self._cells(f, left, mid, _GL_NODES, _GL_WEIGHTS) + self._cells(
            f, mid, right, _GL_NODES, _GL_WEIGHTS
        )
        self.error = float(np.sum(np.abs(full - split)))
        if self.error > tol:
            raise QuadratureError(
                f"tabulated primitive error {self.error:.2e} exceeds {tol:.1e}", self.error
            )
        self.cumulative = np.concatenate([[0.0], np.cumsum(split)])
        self.total = float(self.cumulative[-1])

    @staticmethod
    def _cells(f, lo, hi, nodes, weights):
        half = 0.5 * (hi - lo)
        pts = (lo + half)[:, None] + half[:, None] * nodes[None, :]
        return half * (f(pts) @ weights)

    def __call__(self, t):
        t, flat = _as_array(t)
        inside = np.clip(flat, self.a, self.b)
        j = np.clip(np.searchsorted(self.edges, inside, side="right") - 1, 0, len(self.edges) - 2)
        lo = self.edges[j]
        out = self.cumulative[j] + self._cells(self.f, lo, inside, _GL_NODES, _GL_WEIGHTS)
        return _restore(t, out)


def _mollifier_primitive_table():
    return _TabulatedPrimitive(_mollifier, 0.0, 1.0, cells=64)


_MOLL_TABLE = _mollifier_primitive_table()
#: int_0^1 (1 - kappa) for the unit mollifier wall
MOLLIFIER_C0 = 1.0 - _MOLL_TABLE.total


def _mollifier_primitive(t):
    t, flat = _as_array(t)
    a = np.abs(flat)
    out = np.where(a >= 1.0, a - MOLLIFIER_C0, _MOLL_TABLE(np.minimum(a, 1.0)))
    return _restore(t, out)


def _logcosh(t):
    t, flat = _as_array(t)
    a = np.abs(flat)
    return _restore(t, a + np.log1p(np.exp(-2.0 * a)) - math.log(2.0))


@dataclass(frozen=True, eq=False)
class WallShape:
    """Positive-sign wall centred at 0, in absolute units.

    ``primitive(t)`` is the integral of ``value`` from 0 to t.  ``derivative`` is
    None when it only exists in the distributional sense (sgn).
    """

    name: str
    kappa_inf: float
    core_half_width: float
    value: Callable[[ArrayLike], ArrayLike]
    primitive: Callable[[ArrayLike], ArrayLike]
    derivative: Callable[[ArrayLike], ArrayLike] | None
    odd: bool = True
    closed_form: bool = False

    @property
    def compact(self) -> bool:
        return math.isfinite(self.core_half_width)


def _scaled_shape(name, kinf):
    if name == "mollifier":
        return WallShape(
            name, kinf, 1.0,
            value=lambda x: kinf * _mollifier(x),
            primitive=lambda x: kinf * _mollifier_primitive(x),
            derivative=lambda x: kinf * _mollifier_derivative(x),
        )
    if name == "tanh":
        return WallShape(
            name, kinf, math.inf,
            value=lambda x: kinf * np.tanh(x),
            primitive=lambda x: kinf * _logcosh(x),
            derivative=lambda x: kinf / np.cosh(np.clip(x, -350, 350)) ** 2,
            closed_form=True,
        )
    if name == "sgn":
        return WallShape(
            name, kinf, 1.0,
            value=lambda x: kinf * np.sign(x),
            primitive=lambda x: kinf * np.abs(x),
            derivative=None,
            closed_form=True,
        )
    raise InvalidParameter(f"unknown wall kind {name!r}")


@dataclass(frozen=True, eq=False)
class Bump:
    """amplitude * exp(1 - 1/(1 - t^2)) with t = (x - center)/width, zero for |t| >= 1."""

    amplitude: float
    center: float = 0.0
    width: float = 1.0

    def __post_init__(self):
        if not self.width > 0:
            raise InvalidParameter("bump width must be positive")
        object.__setattr__(self, "_table", _TabulatedPrimitive(self._unit, -1.0, 1.0, cells=64))

    @staticmethod
    def _unit(t):
        t = np.asarray(t, dtype=float)
        out = np.zeros_like(t)
        inside = np.abs(t) < 1.0
        out[inside] = np.exp(1.0 - 1.0 / (1.0 - t[inside] ** 2))
        return out

    @property
    def support(self) -> tuple[float, float]:
        return (self.center - self.width, self.center + self.width)

    def __call__(self, x):
        x, flat = _as_array(x)
        return _restore(x, self.amplitude * self._unit((flat - self.center) / self.width))

    def derivative(self, x):
        x, flat = _as_array(x)
        t = (flat - self.center) / self.width
        out = np.zeros_like(t)
        inside = np.abs(t) < 1.0
        ti = t[inside]
        out[inside] = -2.0 * ti / (1.0 - ti**2) ** 2 * np.exp(1.0 - 1.0 / (1.0 - ti**2))
        return _restore(x, self.amplitude * out / self.width)

    def primitive(self, x):
        """int_{-inf}^x of the bump."""
        x, flat = _as_array(x)
        t = (flat - self.center) / self.width
        return _restore(x, self.amplitude * self.width * self._table(t))


@dataclass(frozen=True, eq=False)
class MassProfile:
    """Mass function kappa built from copies of one wall shape.

    ``walls`` holds (center, sign) pairs sorted by center.  An empty tuple means
    the constant mass ``kappa_inf``.
    """

    kind: str
    shape: WallShape | None
    walls: tuple[tuple[float, int], ...]
    kappa_inf: float
    half_spacing: float | None = None
    bump: Bump | None = None
    base: "MassProfile | None" = field(default=None, repr=False)

    def __post_init__(self):
        if not self.kappa_inf > 0:
            raise InvalidParameter("kappa_inf must be positive")
        signs = [s for _, s in self.walls]
        if any(s not in (1, -1) for s in signs):
            raise InvalidParameter("wall signs must be +1 or -1")
        if any(a == b for a, b in zip(signs, signs[1:])):
            raise InvalidParameter("consecutive wall signs must alternate")
        centers = [c for c, _ in self.walls]
        if any(b <= a for a, b in zip(centers, centers[1:])):
            raise InvalidParameter("wall centers must be strictly increasing")

    # -- metadata -------------------------------------------------------
    @property
    def centers(self) -> np.ndarray:
        return np.array([c for c, _ in self.walls], dtype=float)

    @property
    def signs(self) -> np.ndarray:
        return np.array([s for _, s in self.walls], dtype=int)

    @property
    def n_walls(self) -> int:
        return len(self.walls)

    @property
    def core_half_width(self) -> float:
        return self.shape.core_half_width if self.shape is not None else 0.0

    @property
    def is_single_wall(self) -> bool:
        return self.n_walls == 1 and self.bump is None

    @property
    def sign_at_infinity(self) -> tuple[int, int]:
        """Signs of kappa at -inf and +inf."""
        if not self.walls:
            return (1, 1)
        return (-int(self.walls[0][1]), int(self.walls[-1][1]))

    @property
    def outermost(self) -> float:
        """Largest |x| at which kappa is not yet asymptotically constant (finite proxy for tanh)."""
        r = float(np.max(np.abs(self.centers))) if self.walls else 0.0
        if self.shape is not None and self.shape.compact:
            r += self.core_half_width
        if self.bump is not None:
            r = max(r, abs(self.bump.support[0]), abs(self.bump.support[1]))
        return r

    def breakpoints(self) -> list[float]:
        """Points where kappa or a derivative may be non-smooth."""
        pts: list[float] = []
        for c in self.centers:
            pts.append(float(c))
            if self.shape is not None and self.shape.compact:
                pts += [float(c - self.core_half_width), float(c + self.core_half_width)]
        c = self.centers
        pts += list(0.5 * (c[1:] + c[:-1]))
        if self.bump is not None:
            pts += [self.bump.support[0], self.bump.center, self.bump.support[1]]
        return sorted(set(pts))

    def _segment(self, flat):
        c = self.centers
        mids = 0.5 * (c[1:] + c[:-1])
        return np.searchsorted(mids, flat, side="left")

    # -- evaluation -----------------------------------------------------
    def __call__(self, x):
        x, flat = _as_array(x)
        if not self.walls:
            out = np.full_like(flat, self.kappa_inf)
        else:
            j = self._segment(flat)
            out = self.signs[j] * self.shape.value(flat - self.centers[j])
        if self.bump is not None:
            out = out + self.bump(flat)
        return _restore(x, out)

    def derivative(self, x):
        """kappa'(x); raises for shapes without a classical derivative."""
        if self.walls and self.shape.derivative is None:
            raise InvalidParameter(f"{self.shape.name} wall has no classical derivative")
        x, flat = _as_array(x)
        if not self.walls:
            out = np.zeros_like(flat)
        else:
            j = self._segment(flat)
            out = self.signs[j] * self.shape.derivative(flat - self.centers[j])
        if self.bump is not None:
            out = out + self.bump.derivative(flat)
        return _restore(x, out)


def make_single_wall(kind: str, kappa_inf: float = 1.0) -> MassProfile:
    """Single positive-sign wall at the origin: ``mollifier``, ``tanh`` or ``sgn``."""
    if not (isinstance(kappa_inf, (int, float)) and kappa_inf > 0):
        raise InvalidParameter("kappa_inf must be positive")
    shape = _scaled_shape(kind, float(kappa_inf))
    return MassProfile(kind, shape, ((0.0, 1),), float(kappa_inf))


def sampled_wall(t: Sequence[float], values: Sequence[float], core_half_width: float | None = None) -> MassProfile:
    """Custom wall from samples of a monotone profile on [-w, w].

    The samples are interpolated by a cubic spline; outside the sampled range
    the mass is taken constant at the end values, which must be -k and +k.
    """
    t = np.asarray(t, dtype=float)
    v = np.asarray(values, dtype=float)
    if t.ndim != 1 or t.shape != v.shape or len(t) < 4:
        raise InvalidParameter("need at least 4 matching samples")
    if np.any(np.diff(t) <= 0):
        raise InvalidParameter("sample abscissae must increase")
    kinf = float(v[-1])
    if not kinf > 0 or not math.isclose(v[0], -kinf, rel_tol=1e-9, abs_tol=1e-12):
        raise InvalidParameter("samples must run from -kappa_inf to +kappa_inf")
    lo, hi = float(t[0]), float(t[-1])
    if lo >= 0 or hi <= 0:
        raise InvalidParameter("samples must straddle 0")
    spline = CubicSpline(t, v, bc_type="clamped")
    prim = spline.antiderivative()
    p0 = float(prim(0.0))
    plo, phi = float(prim(lo)) - p0, float(prim(hi)) - p0

    def value(x):
        x, flat = _as_array(x)
        return _restore(x, np.where(flat <= lo, -kinf, np.where(flat >= hi, kinf, spline(np.clip(flat, lo, hi)))))

    def derivative(x):
        x, flat = _as_array(x)
        inside = (flat > lo) & (flat < hi)
        return _restore(x, np.where(inside, spline(np.clip(flat, lo, hi), 1), 0.0))

    def primitive(x):
        x, flat = _as_array(x)
        mid = prim(np.clip(flat, lo, hi)) - p0
        out = np.where(flat <= lo, plo - kinf * (flat - lo), np.where(flat >= hi, phi + kinf * (flat - hi), mid))
        return _restore(x, out)

    width = core_half_width if core_half_width is not None else max(-lo, hi)
    odd = bool(np.allclose(t, -t[::-1]) and np.allclose(v, -v[::-1], atol=1e-12))
    shape = WallShape("custom", kinf, float(width), value, primitive, derivative, odd=odd)
    return MassProfile("custom", shape, ((0.0, 1),), kinf)


def constant_mass(kappa_inf: float = 1.0) -> MassProfile:
    return MassProfile("constant", None, (), float(kappa_inf))


def _check_base(base: MassProfile):
    if not base.is_single_wall or base.walls[0] != (0.0, 1):
        raise InvalidParameter("base must be a single positive wall at the origin")


def glue_at(base: MassProfile, centers: Sequence[float]) -> MassProfile:
    """Place copies of ``base`` at arbitrary increasing centers, rightmost sign +1."""
    _check_base(base)
    c = np.sort(np.asarray(centers, dtype=float))
    if c.size < 1:
        raise InvalidParameter("need at least one wall")
    if base.shape.compact and c.size > 1:
        gaps = np.diff(c)
        if np.min(gaps) <= 2 * base.core_half_width:
            raise SpacingTooSmall("wall cores overlap: centers must be more than two core widths apart")
    n = c.size
    walls = tuple((float(ci), 1 if (n - 1 - j) % 2 == 0 else -1) for j, ci in enumerate(c))
    return MassProfile("custom" if base.kind == "custom" else base.kind, base.shape, walls,
                       base.kappa_inf, None, None, base)


def glue_walls(base: MassProfile, n: int, half_spacing: float) -> MassProfile:
    """n copies of ``base`` at -(n-1)d, -(n-3)d, ..., (n-1)d with alternating signs."""
    _check_base(base)
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise InvalidParameter("n must be a positive integer")
    if n == 1:
        return base
    d = float(half_spacing)
    if not d > 0:
        raise InvalidParameter("half_spacing must be positive")
    if base.shape.compact and d <= base.core_half_width:
        raise SpacingTooSmall(f"half_spacing {d} must exceed the core half width {base.core_half_width}")
    centers = [(2 * j - (n - 1)) * d for j in range(n)]
    glued = glue_at(base, centers)
    return replace(glued, half_spacing=d)


def add_bump(profile: MassProfile, amplitude: float, center: float = 0.0, width: float = 1.0) -> MassProfile:
    """Profile plus a smooth compactly supported bump."""
    return replace(profile, kind="custom", bump=Bump(float(amplitude), float(center), float(width)))


class Antiderivative:
    """K(x) = int_0^x kappa for a :class:`MassProfile`.

    Built from the closed-form (or once-tabulated) primitive of the wall shape,
    stitched across segments so that K is continuous and K(0) = 0.
    """

    def __init__(self, profile: MassProfile, tol: float = 1e-10):
        self.profile = profile
        self.tol = tol
        if profile.walls:
            c, s = profile.centers, profile.signs
            mids = 0.5 * (c[1:] + c[:-1])
            prim = profile.shape.primitive
            # F_j(x) = s_j P(x - c_j) + const_j, constants fixed by continuity at mids
            const = np.zeros(len(c))
            for j, m in enumerate(mids):
                left = s[j] * prim(m - c[j]) + const[j]
                const[j + 1] = left - s[j + 1] * prim(m - c[j + 1])
            self._const = const
        self._offset = 0.0
        self._offset = float(self._raw(np.array([0.0]))[0])
        if profile.bump is not None:
            self.quadrature_error = profile.bump._table.error * abs(profile.bump.amplitude) * profile.bump.width
        else:
            self.quadrature_error = 0.0 if (not profile.walls or profile.shape.closed_form) else _MOLL_TABLE.error
        if self.quadrature_error > tol:
            raise QuadratureError("antiderivative tolerance not met", self.quadrature_error)

    @property
    def closed_form(self) -> bool:
        p = self.profile
        return p.bump is None and (not p.walls or p.shape.closed_form)

    def _raw(self, flat):
        p = self.profile
        if not p.walls:
            out = p.kappa_inf * flat
        else:
            j = p._segment(flat)
            out = p.signs[j] * p.shape.primitive(flat - p.centers[j]) + self._const[j]
        if p.bump is not None:
            out = out + p.bump.primitive(flat)
        return out - self._offset

    def __call__(self, x):
        x, flat = _as_array(x)
        return _restore(x, self._raw(flat))

    def derivative(self, x):
        return self.profile(x)


def antiderivative(profile: MassProfile, tol: float = 1e-10) -> Antiderivative:
    return Antiderivative(profile, tol)
