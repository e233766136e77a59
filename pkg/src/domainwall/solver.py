"""Direct eigensolvers for the Dirac operator D = i sigma3 d/dx + kappa sigma1.

Rotating the spinor by U = [[1, i], [1, -i]] / sqrt(2) gives components
beta1 = i*g and beta2 with

    E g     = (d/dx + kappa) beta2 = A beta2
    E beta2 = (-d/dx + kappa) g    = A^T g,

so A^T A and A A^T are the two Witten Laplacians.  The grid version stores
beta2 on nodes and g on half-nodes; A becomes a bidiagonal matrix and the
interleaved operator T = [[0, A], [A^T, 0]] is a symmetric tridiagonal matrix
with zero diagonal.  Its eigenvalues are the Dirac energies themselves, the
discrete spectrum is exactly symmetric, and the kernel dimension is fixed by
the matrix shape, which mirrors the index of the continuum operator.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy import sparse
from scipy.linalg import eigh_tridiagonal

from .errors import (
    DomainTruncationWarning,
    EigenvectorError,
    EssentialSpectrumWarning,
    IntegrationError,
    InvalidParameter,
    InvalidWindow,
    ReconstructionError,
    UnsupportedProfile,
)
from .profiles import MassProfile

__all__ = [
    "Grid",
    "StaggeredDirac",
    "WittenPair",
    "build_witten_pair",
    "eig_low",
    "SpectrumResult",
    "dirac_spectrum_in_gap",
    "shooting_oracle",
    "matching_function",
    "EnergyEstimateReport",
    "energy_estimate_check",
    "richardson",
]

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class Grid:
    """Uniform grid on [-L, L] with an odd number of nodes (0 is a node)."""

    half_length: float
    points: int

    def __post_init__(self):
        if not self.half_length > 0:
            raise InvalidParameter("half_length must be positive")
        if self.points < 3 or self.points % 2 == 0:
            raise InvalidParameter("points must be odd and at least 3")

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_length / (self.points - 1)

    @property
    def nodes(self) -> np.ndarray:
        m = (self.points - 1) // 2
        return self.spacing * np.arange(-m, m + 1)

    @property
    def midpoints(self) -> np.ndarray:
        x = self.nodes
        return 0.5 * (x[1:] + x[:-1])

    def refined(self, times: int = 1) -> "Grid":
        return Grid(self.half_length, (self.points - 1) * 2**times + 1)

    @classmethod
    def around(cls, profile: MassProfile, spacing: float = 0.01, margin: float = 20.0) -> "Grid":
        """Grid reaching ``margin / kappa_inf`` past the outermost wall, spacing at most ``spacing``."""
        reach = float(np.max(np.abs(profile.centers))) if profile.walls else 0.0
        if profile.shape is not None and profile.shape.compact:
            reach += profile.core_half_width
        if profile.bump is not None:
            reach = max(reach, *map(abs, profile.bump.support))
        half = reach + margin / profile.kappa_inf
        cells = int(math.ceil(half / spacing - 1e-9))
        return cls(cells * spacing, 2 * cells + 1)


class StaggeredDirac:
    """Zero-diagonal tridiagonal form of D on a staggered grid.

    The unknown vector interleaves beta2 at node k and g at half-node k.  A node
    next to a boundary where kappa points "outwards" carries no decaying beta2
    and is removed, which keeps spurious boundary states out of the gap.
    """

    def __init__(self, profile: MassProfile, grid: Grid):
        self.profile, self.grid = profile, grid
        N, h = grid.points, grid.spacing
        x = grid.nodes
        xm = grid.midpoints
        km = np.asarray(profile(xm), dtype=float)
        e = np.empty(2 * N - 2)
        e[0::2] = -1.0 / h + 0.5 * km
        e[1::2] = 1.0 / h + 0.5 * km
        pos = np.empty(2 * N - 1)
        pos[0::2], pos[1::2] = x, xm
        is_node = np.zeros(2 * N - 1, dtype=bool)
        is_node[0::2] = True
        lo, hi = 0, 2 * N - 1
        self.drop_left = bool(profile(x[0]) > 0)
        self.drop_right = bool(profile(x[-1]) < 0)
        if self.drop_left:
            lo += 1
        if self.drop_right:
            hi -= 1
        self.offdiag = e[lo : hi - 1]
        self.positions = pos[lo:hi]
        self.is_node = is_node[lo:hi]
        self._slice = slice(lo, hi)
        self.size = hi - lo
        #: dimension of the exact kernel (positive: beta2 type, negative: g type)
        self.index = int(self.is_node.sum() - (~self.is_node).sum())

    def kernel_vector(self) -> np.ndarray | None:
        """Unit vector spanning the exact kernel of T, or None when T is square-free of it."""
        if self.index == 0:
            return None
        e = self.offdiag
        # T v = 0 with v living on every other entry: v[j+2] = -e[j] v[j] / e[j+1]
        ratio = -e[0::2] / e[1::2]
        logs = np.concatenate([[0.0], np.cumsum(np.log(np.abs(ratio)))])
        signs = np.concatenate([[1.0], np.cumprod(np.sign(ratio))])
        v = np.zeros(self.size)
        v[0::2] = signs * np.exp(logs - logs.max())
        return v / np.linalg.norm(v)

    @property
    def norm(self) -> float:
        return 2.0 * float(np.max(np.abs(self.offdiag)))

    def matrix(self) -> sparse.csr_matrix:
        e = self.offdiag
        return sparse.diags([e, e], [-1, 1], shape=(self.size, self.size), format="csr")

    def matvec(self, w: np.ndarray) -> np.ndarray:
        e = self.offdiag if w.ndim == 1 else self.offdiag[:, None]
        out = np.zeros_like(w)
        out[:-1] += e * w[1:]
        out[1:] += e * w[:-1]
        return out

    def sample(self, spinor: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
        """Staggered representation of an analytic spinor alpha(x) -> (2, m)."""
        a = spinor(self.positions)
        beta1 = (a[0] + 1j * a[1]) / SQRT2
        beta2 = (a[0] - 1j * a[1]) / SQRT2
        return np.where(self.is_node, beta2, -1j * beta1)

    def inner(self, u: np.ndarray, v: np.ndarray) -> complex:
        return self.grid.spacing * np.vdot(u, v)

    def to_spinor(self, w: np.ndarray) -> np.ndarray:
        """Node values (2, N) in the original basis."""
        N = self.grid.points
        full = np.zeros(2 * N - 1, dtype=complex)
        full[self._slice] = w
        beta2 = full[0::2]
        g = full[1::2]
        gn = np.empty(N, dtype=complex)
        gn[1:-1] = 0.5 * (g[1:] + g[:-1])
        gn[0], gn[-1] = g[0], g[-1]
        beta1 = 1j * gn
        return np.vstack([(beta1 + beta2) / SQRT2, 1j * (beta2 - beta1) / SQRT2])


def _centered_residual(profile, grid, alpha, E):
    h = grid.spacing
    d = np.gradient(alpha, h, axis=1, edge_order=2)
    k = np.asarray(profile(grid.nodes))
    Da = np.vstack([1j * d[0] + k * alpha[1], -1j * d[1] + k * alpha[0]])
    r = Da - E * alpha
    return math.sqrt(h * float(np.sum(np.abs(r) ** 2)))


@dataclass(frozen=True, eq=False)
class WittenPair:
    """H_minus = -d^2 + kappa^2 - kappa' and H_plus = -d^2 + kappa^2 + kappa'.

    Three-point Laplacian on the interior nodes, Dirichlet at +-L.  ``factor``
    is the staggered first-order operator whose squares are the exact
    discrete partners of these two.
    """

    grid: Grid
    diag_minus: np.ndarray
    diag_plus: np.ndarray
    offdiag: np.ndarray
    derivative_rule: str
    factor: StaggeredDirac

    def lowest(self, k: int = 1, tol: float = 1e-12):
        return (eig_low(self.diag_minus, self.offdiag, k, tol)[0],
                eig_low(self.diag_plus, self.offdiag, k, tol)[0])


def build_witten_pair(profile: MassProfile, grid: Grid, derivative: str = "auto") -> WittenPair:
    """Sample both Witten Laplacians of ``profile`` on ``grid``.

    ``derivative`` is ``analytic``, ``difference`` or ``auto`` (analytic unless
    the profile carries a bump).
    """
    if profile.shape is not None and profile.shape.derivative is None:
        raise UnsupportedProfile("sgn walls have only a distributional kappa'; use the staggered solver or shooting")
    h = grid.spacing
    x = grid.nodes[1:-1]
    rule = derivative
    if rule == "auto":
        rule = "difference" if profile.kind == "custom" and profile.bump is not None else "analytic"
    if rule == "analytic":
        dk = np.asarray(profile.derivative(x))
    elif rule == "difference":
        dk = (np.asarray(profile(x + h)) - np.asarray(profile(x - h))) / (2 * h)
    else:
        raise InvalidParameter(f"unknown derivative rule {derivative!r}")
    k2 = np.asarray(profile(x)) ** 2
    lap = 2.0 / h**2
    off = np.full(len(x) - 1, -1.0 / h**2)
    return WittenPair(grid, lap + k2 - dk, lap + k2 + dk, off, rule, StaggeredDirac(profile, grid))


def eig_low(diag: np.ndarray, offdiag: np.ndarray, k: int, tol: float = 1e-12):
    """k lowest eigenpairs of a symmetric tridiagonal matrix.

    Sturm-sequence bisection followed by inverse iteration (LAPACK stebz/stein).
    """
    d = np.asarray(diag, dtype=float)
    e = np.asarray(offdiag, dtype=float)
    n = d.size
    if e.size != n - 1:
        raise InvalidParameter("offdiag must have one entry fewer than diag")
    if not 1 <= k <= n:
        raise InvalidParameter(f"k={k} outside 1..{n}")
    vals, vecs = eigh_tridiagonal(d, e, select="i", select_range=(0, k - 1), lapack_driver="stebz", tol=tol)
    Hv = d[:, None] * vecs
    Hv[:-1] += e[:, None] * vecs[1:]
    Hv[1:] += e[:, None] * vecs[:-1]
    hnorm = float(np.max(np.abs(d)) + 2 * np.max(np.abs(e), initial=0.0))
    res = np.linalg.norm(Hv - vecs * vals, axis=0)
    limit = 10 * max(tol, np.finfo(float).eps * n) * hnorm
    if np.any(res > limit):
        raise EigenvectorError(f"inverse iteration residual {res.max():.2e} above {limit:.2e}", vals)
    return vals, vecs


def richardson(values: Sequence, order: int = 2):
    """Repeated Richardson extrapolation for a sequence at h, h/2, h/4, ...

    Works on scalars or arrays; the error is assumed to be a series in h^order.
    """
    table = [np.asarray(v) for v in values]
    m = 1
    while len(table) > 1:
        f = 2.0 ** (order * m)
        table = [(f * b - a) / (f - 1) for a, b in zip(table[:-1], table[1:])]
        m += 1
    return table[0]


@dataclass(eq=False)
class SpectrumResult:
    """Gap eigenpairs with grid spinors on the nodes of ``grid``."""

    eigenvalues: np.ndarray
    eigenfunctions: list[np.ndarray]
    residuals: np.ndarray
    centered_residuals: np.ndarray
    grid: Grid
    method: str = "witten"
    boundary_amplitude: float = 0.0
    levels: list[np.ndarray] = field(default_factory=list)
    zero_count: int = 0

    @property
    def count(self) -> int:
        return len(self.eigenvalues)

    def eigenfunction_error(self, j: int, reference: np.ndarray) -> float:
        """L2 distance to ``reference`` (2, N) after normalizing and fixing the phase."""
        h = self.grid.spacing
        a = self.eigenfunctions[j]
        r = np.asarray(reference, dtype=complex)
        r = r / math.sqrt(h * float(np.sum(np.abs(r) ** 2)))
        ov = np.vdot(a, r)
        phase = ov / abs(ov) if ov != 0 else 1.0
        return math.sqrt(h * float(np.sum(np.abs(a * phase - r) ** 2)))

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "L": self.grid.half_length,
            "N": self.grid.points,
            "gap_eigenvalues": [float(v) for v in self.eigenvalues],
            "residuals": [float(v) for v in self.residuals],
            "boundary_amplitude": float(self.boundary_amplitude),
        }


def _solve_level(profile: MassProfile, grid: Grid, tol: float):
    op = StaggeredDirac(profile, grid)
    kinf = profile.kappa_inf
    zeros = np.zeros(op.size)
    # (vl, vu] keeps +E for every pair and every exact zero, whatever its rounding sign
    vals, vecs = eigh_tridiagonal(zeros, op.offdiag, select="v", select_range=(-1e-150, kinf),
                                  lapack_driver="stebz", tol=1e-300)
    order = np.argsort(np.abs(vals))
    vals, vecs = vals[order], vecs[:, order]
    nz = min(abs(op.index), len(vals))
    if np.any(vals[nz:] > kinf * (1 - 10 * tol)):
        warnings.warn("eigenvalue at the edge of the essential spectrum dropped", EssentialSpectrumWarning)
        keep = np.concatenate([np.arange(nz), nz + np.nonzero(vals[nz:] <= kinf * (1 - 10 * tol))[0]])
        vals, vecs = vals[keep], vecs[:, keep]
    energies, vectors = [], []
    for j, (E, w) in enumerate(zip(vals, vecs.T)):
        w = w.copy()
        nodes = w[op.is_node]
        ref = nodes if np.max(np.abs(nodes)) > 1e-3 * np.max(np.abs(w)) else w[~op.is_node]
        if ref[np.argmax(np.abs(ref))] < 0:
            w = -w
        if j < nz:
            energies.append(E)
            vectors.append(w)
        else:
            flipped = np.where(op.is_node, w, -w)
            energies += [E, -E]
            vectors += [w, flipped]
    order = np.argsort(energies, kind="stable")
    energies = np.asarray(energies)[order]
    vectors = [vectors[i] for i in order]
    return op, energies, vectors, nz


def dirac_spectrum_in_gap(profile: MassProfile, grid: Grid, tol: float = 1e-12, refinements: int = 0) -> SpectrumResult:
    """Eigenpairs of D in (-kappa_inf, kappa_inf).

    With ``refinements > 0`` the grid is halved that many times and eigenvalues
    and node values are Richardson-extrapolated in h^2.
    """
    if refinements < 0:
        raise InvalidParameter("refinements must be nonnegative")
    grids = [grid.refined(r) for r in range(refinements + 1)]
    levels = [_solve_level(profile, g, tol) for g in grids]
    counts = {len(lv[1]) for lv in levels}
    if len(counts) != 1:
        warnings.warn("gap eigenvalue count changes under refinement; using the finest grid only", RuntimeWarning)
        levels = levels[-1:]
        grids = grids[-1:]
    op, E, W, nz = levels[-1]

    # residual of the discrete eigenproblem on the finest level
    res = np.array([np.linalg.norm(op.matvec(w) - e * w) for e, w in zip(E, W)])
    limit = max(tol, 100 * np.finfo(float).eps * op.norm)
    if np.any(res > limit):
        raise ReconstructionError(f"eigenvector residual {res.max():.2e} above {limit:.2e}", float(res.max()))

    # node spinors restricted to the coarse grid, aligned to the finest level, extrapolated
    spinors_by_level = []
    for lv, g in zip(levels, grids):
        stride = (g.points - 1) // (grid.points - 1)
        spinors_by_level.append([lv[0].to_spinor(w)[:, ::stride] / math.sqrt(g.spacing) for w in lv[2]])
    finest = spinors_by_level[-1]
    functions = []
    for j in range(len(E)):
        seq = []
        for sp in spinors_by_level:
            s = sp[j]
            ov = np.vdot(s, finest[j]).real
            seq.append(s if ov >= 0 else -s)
        f = richardson(seq) if len(seq) > 1 else seq[0]
        f = f / math.sqrt(grid.spacing * float(np.sum(np.abs(f) ** 2)))
        functions.append(f)
    energies = richardson([lv[1] for lv in levels]) if len(levels) > 1 else E

    edge = max(5, grid.points // 200)
    amp = 0.0
    for f in functions:
        peak = float(np.max(np.abs(f)))
        amp = max(amp, float(np.max(np.abs(np.concatenate([f[:, :edge], f[:, -edge:]], axis=1)))) / peak)
    if amp > 1e-8:
        warnings.warn(f"eigenfunction boundary amplitude {amp:.1e}: enlarge the domain", DomainTruncationWarning)

    centered = np.array([_centered_residual(profile, grid, f, e) for f, e in zip(functions, energies)])
    return SpectrumResult(np.asarray(energies, dtype=float), functions, res, centered, grid, "witten", amp,
                          [lv[1] for lv in levels], nz)


# ---------------------------------------------------------------- shooting

def _start_left(kappa, E):
    mu = np.sqrt(kappa * kappa - E * E)
    if kappa > 0:
        return np.vstack([kappa + mu, E])
    return np.vstack([E, kappa - mu])


def _start_right(kappa, E):
    mu = np.sqrt(kappa * kappa - E * E)
    if kappa > 0:
        return np.vstack([E, kappa + mu])
    return np.vstack([kappa - mu, E])


def _rk4(profile, E, y, a, b, step, breakpoints):
    """Integrate y' = [[k, -E], [E, -k]] y from a to b; columns of y are energies."""
    direction = 1.0 if b > a else -1.0
    cuts = sorted({p for p in breakpoints if min(a, b) < p < max(a, b)}, reverse=direction < 0)
    edges = [a, *cuts, b]
    for s0, s1 in zip(edges[:-1], edges[1:]):
        m = max(1, int(math.ceil(abs(s1 - s0) / step)))
        hstep = (s1 - s0) / m
        xs = s0 + hstep * np.arange(m + 1)
        xh = xs[:-1] + 0.5 * hstep
        # one-sided values at the segment ends, so jumps at breakpoints are respected
        nudge = 1e-12 * max(1.0, abs(s0), abs(s1)) * direction
        xe = xs.copy()
        xe[0] += nudge
        xe[-1] -= nudge
        kn = np.asarray(profile(xe), dtype=float)
        kh = np.asarray(profile(xh), dtype=float)
        for i in range(m):
            y = _rk4_step(y, E, kn[i], kh[i], kn[i + 1], hstep)
            scale = np.max(np.abs(y), axis=0)
            if not np.all(np.isfinite(scale)) or np.any(scale == 0):
                raise IntegrationError("shooting integration lost the solution")
            y = y / scale
    return y


def _rk4_step(y, E, k0, km, k1, h):
    def f(k, v):
        return np.vstack([k * v[0] - E * v[1], E * v[0] - k * v[1]])

    a = f(k0, y)
    b = f(km, y + 0.5 * h * a)
    c = f(km, y + 0.5 * h * b)
    d = f(k1, y + h * c)
    return y + h / 6.0 * (a + 2 * b + 2 * c + d)


def _shoot_extent(profile: MassProfile) -> float:
    reach = float(np.max(np.abs(profile.centers))) if profile.walls else 0.0
    if profile.shape is not None and profile.shape.compact:
        reach += profile.core_half_width
    else:
        reach += 30.0 / profile.kappa_inf
    if profile.bump is not None:
        reach = max(reach, *map(abs, profile.bump.support))
    return reach + 1.0


def matching_function(profile: MassProfile, energies, step: float = 0.01) -> np.ndarray:
    """W(E) = g_L beta2_R - beta2_L g_R at x = 0 for decaying solutions from both sides."""
    E = np.atleast_1d(np.asarray(energies, dtype=float))
    X = _shoot_extent(profile)
    pts = profile.breakpoints()
    kl, kr = float(profile(-X)), float(profile(X))
    yl = _rk4(profile, E, _start_left(kl, E), -X, 0.0, step, pts)
    yr = _rk4(profile, E, _start_right(kr, E), X, 0.0, step, pts)
    return yl[0] * yr[1] - yl[1] * yr[0]


def shooting_oracle(profile: MassProfile, window: tuple[float, float] | None = None, tol: float = 1e-12,
                    step: float = 0.01, scan: int = 200) -> np.ndarray:
    """Gap eigenvalues from sign changes of the matching function.

    The scan grid is geometric towards 0 (split energies can be tiny) plus a
    uniform part; brackets are refined by batched 16-way multisection.
    """
    kinf = profile.kappa_inf
    if window is None:
        window = (-0.95 * kinf, 0.95 * kinf)
    lo, hi = map(float, window)
    if not (-kinf < lo < hi < kinf):
        raise InvalidWindow(f"window {window} must lie inside (-{kinf}, {kinf})")
    geo = np.geomspace(1e-14 * kinf, max(abs(lo), abs(hi)), scan)
    grid = np.concatenate([-geo, [0.0], geo, np.linspace(lo, hi, 2 * scan + 1)])
    grid = np.unique(grid[(grid >= lo) & (grid <= hi)])
    W = matching_function(profile, grid, step)
    sgn = np.sign(W)
    roots = list(grid[sgn == 0])
    nonzero = np.nonzero(sgn)[0]
    brackets = []
    for i0, i1 in zip(nonzero[:-1], nonzero[1:]):
        if sgn[i0] != sgn[i1] and i1 == i0 + 1:
            brackets.append((grid[i0], grid[i1], sgn[i0]))
    if brackets:
        a = np.array([b[0] for b in brackets])
        b = np.array([b[1] for b in brackets])
        sa = np.array([b[2] for b in brackets])
        atol = 1e-16 * kinf
        for _ in range(40):
            width = b - a
            active = width > tol * np.maximum(np.abs(a), np.abs(b)) + atol
            if not np.any(active):
                break
            t = np.linspace(0, 1, 17)[1:-1]
            pts = a[active, None] + width[active, None] * t[None, :]
            vals = np.sign(matching_function(profile, pts.ravel(), step)).reshape(pts.shape)
            idx = np.nonzero(active)[0]
            for r, k in enumerate(idx):
                row = vals[r]
                exact = np.nonzero(row == 0)[0]
                if exact.size:
                    a[k] = b[k] = pts[r, exact[0]]
                    continue
                change = np.nonzero(row != sa[k])[0]
                if change.size:
                    j = change[0]
                    b[k] = pts[r, j]
                    if j > 0:
                        a[k] = pts[r, j - 1]
                else:
                    a[k] = pts[r, -1]
        roots += list(0.5 * (a + b))
    return np.sort(np.asarray(roots, dtype=float))


# ---------------------------------------------------------- energy estimate

@dataclass(frozen=True)
class EnergyEstimateReport:
    min_ratio: float
    bound: float
    passed: bool
    trials: int
    seed: int
    ratios: np.ndarray = field(repr=False)
    unorthogonalized_ratio: float | None = None


def energy_estimate_check(profile: MassProfile, modes: Sequence = (), K: float = 0.5, trials: int = 100,
                          seed: int = 0, grid: Grid | None = None,
                          reference_mode=None) -> EnergyEstimateReport:
    """min ||D f|| / ||f|| over random trial spinors orthogonal to ``modes``.

    Trials are sums of one to five Gaussians (width 0.5 to 2) with random complex
    spinor coefficients, projected off the grid samples of ``modes``.  The bound
    compared against is (kappa_inf + K) / 2.
    """
    if not 0 < K < profile.kappa_inf:
        raise InvalidParameter("need 0 < K < kappa_inf")
    grid = grid or Grid.around(profile)
    op = StaggeredDirac(profile, grid)
    rng = np.random.default_rng(seed)
    basis = []
    for m in modes:
        v = op.sample(m)
        for q in basis:
            v = v - op.inner(q, v) * q
        basis.append(v / math.sqrt(op.inner(v, v).real))
    reach = (float(np.max(np.abs(profile.centers))) if profile.walls else 0.0) + 5.0
    x = op.positions
    ratios = np.empty(trials)
    for t in range(trials):
        count = int(rng.integers(1, 6))
        centers = rng.uniform(-reach, reach, count)
        widths = rng.uniform(0.5, 2.0, count)
        spin = rng.normal(size=(count, 2)) + 1j * rng.normal(size=(count, 2))

        def trial(xx, centers=centers, widths=widths, spin=spin):
            env = np.exp(-0.5 * ((xx[None, :] - centers[:, None]) / widths[:, None]) ** 2)
            return spin.T @ env

        f = op.sample(trial)
        for q in basis:
            f = f - op.inner(q, f) * q
        ratios[t] = np.linalg.norm(op.matvec(f)) / np.linalg.norm(f)
    bound = 0.5 * (profile.kappa_inf + K)
    unorth = None
    if reference_mode is not None:
        from .modes import residual_norm

        unorth = residual_norm(profile, reference_mode)
    mn = float(np.min(ratios)) if trials else math.inf
    return EnergyEstimateReport(mn, bound, mn >= bound, trials, seed, ratios, unorth)
