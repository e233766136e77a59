"""Reduction of the gap eigenproblem to an n x n matrix M(E).

With shifted zero modes alpha_1..alpha_n and P the orthogonal projection off
their span, the ansatz psi = sum_j b_j alpha_j + eta with eta in range(P)
turns (D - E) psi = 0 into

    M(E) b = 0,   M(E) = A - E G - R(E),

    A_ij = <alpha_i, D alpha_j>,  G_ij = <alpha_i, alpha_j>,
    R(E)_ij = <P D alpha_i, (P (D - E) P)^{-1} P D alpha_j>.

A and G come from quadrature; R(E) is computed on the staggered grid of
:mod:`domainwall.solver`.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy import optimize, sparse
from scipy.linalg import solve_banded
from scipy.sparse.linalg import splu

from .errors import (
    BoundaryRootWarning,
    InvalidParameter,
    InvalidWindow,
    ResolventError,
    RootMergeWarning,
)
from .modes import (
    AnalyticMode,
    ModeCombination,
    dirac_apply,
    gram_matrix,
    interaction_matrix,
    shifted_modes,
    zero_mode,
)
from .profiles import MassProfile, antiderivative, glue_walls
from .solver import Grid, StaggeredDirac

__all__ = [
    "coupling",
    "leading_matrix",
    "leading_eigenpairs",
    "asymptotic_eigenvalues",
    "ApproximateEigenpair",
    "approximate_eigenfunctions",
    "ProjectedResolvent",
    "ReducedMatrix",
    "assemble_full_matrix",
    "det_roots",
    "Corrector",
    "reconstruct_corrector",
]


def coupling(base: MassProfile, delta: float, odd_kappa: bool | None = None) -> float:
    """a = 2 gamma^2 exp(-K(delta) - K(-delta)), which is 2 gamma^2 exp(-2 K(delta)) for odd walls."""
    if delta <= 0:
        raise InvalidParameter("delta must be positive")
    gamma = zero_mode(base).gamma
    K = antiderivative(base)
    odd = base.shape.odd if odd_kappa is None else odd_kappa
    expo = 2.0 * float(K(delta)) if odd else float(K(delta)) + float(K(-delta))
    return 2.0 * gamma**2 * math.exp(-expo)


def _tridiag(n: int, a: float) -> np.ndarray:
    M = np.zeros((n, n), dtype=complex)
    idx = np.arange(n - 1)
    M[idx, idx + 1] = -1j * a
    M[idx + 1, idx] = 1j * a
    return M


def leading_matrix(n: int, delta: float, base: MassProfile) -> np.ndarray:
    """Tridiagonal M0: zero diagonal, -i a above and +i a below, modes ordered right to left."""
    if n < 1:
        raise InvalidParameter("n must be positive")
    if base.shape is not None and base.shape.compact and delta <= base.core_half_width:
        raise InvalidParameter("delta must exceed the core half width")
    return _tridiag(n, coupling(base, delta))


def _closed_form_pairs(n: int, a: float):
    k = np.arange(1, n + 1)
    theta = k * np.pi / (n + 1)
    vals = 2.0 * a * np.cos(theta)
    j = np.arange(1, n + 1)
    vecs = (1j ** j)[:, None] * np.sin(np.outer(j, theta)) * math.sqrt(2.0 / (n + 1))
    vecs = vecs / vecs[0][None, :] * np.abs(vecs[0])[None, :]  # first component real positive
    order = np.argsort(vals)
    return vals[order], vecs[:, order]


def leading_eigenpairs(n: int, delta: float, base: MassProfile):
    """Eigenvalues 2a cos(k pi/(n+1)) ascending, with eigenvectors in the columns."""
    leading_matrix(n, delta, base)  # validation only
    return _closed_form_pairs(n, coupling(base, delta))


def asymptotic_eigenvalues(n: int, delta: float, base: MassProfile, odd_kappa: bool | None = None) -> np.ndarray:
    odd = base.shape.odd if odd_kappa is None else odd_kappa
    if not odd and n not in (2, 3):
        raise NotImplementedError("non-odd walls have closed forms only for n = 2, 3")
    a = coupling(base, delta, odd)
    if n == 1:
        return np.zeros(1)
    if n == 2:
        return np.array([-a, a])
    if n == 3:
        return np.array([-math.sqrt(2.0) * a, 0.0, math.sqrt(2.0) * a])
    return _closed_form_pairs(n, a)[0]


@dataclass(frozen=True, eq=False)
class ApproximateEigenpair:
    energy: float
    coefficients: np.ndarray
    combination: ModeCombination


def approximate_eigenfunctions(n: int, delta: float, base: MassProfile) -> list[ApproximateEigenpair]:
    """Leading eigenvectors of M0 combined with the shifted modes, ascending in energy."""
    vals, vecs = leading_eigenpairs(n, delta, base)
    modes = tuple(shifted_modes(base, n, delta))
    return [ApproximateEigenpair(float(v), vecs[:, k], ModeCombination(vecs[:, k], modes))
            for k, v in enumerate(vals)]


class ProjectedResolvent:
    """Solves P (T - E) P psi = phi on range(P) for the staggered operator T.

    The constraint psi in range(P) is eliminated by a Schur complement: one
    banded LU solve of (T - E) X = [phi, Q], then an n x n system for the
    Lagrange multipliers.  When T - E is singular (odd wall counts at E = 0)
    the bordered system [[T - E, Q], [Q^H, 0]] is factorized instead.  Every
    solve is checked by its explicit residual.
    """

    def __init__(self, profile: MassProfile, modes: Sequence[AnalyticMode], grid: Grid, tol: float = 1e-9):
        self.profile, self.modes, self.grid, self.tol = profile, tuple(modes), grid, tol
        op = StaggeredDirac(profile, grid)
        self.op = op
        h = grid.spacing
        basis = []
        for m in modes:
            v = op.sample(m)
            for q in basis:
                v = v - h * np.vdot(q, v) * q
            basis.append(v / math.sqrt(h * np.vdot(v, v).real))
        self.Q = np.column_stack(basis)
        D = np.column_stack([op.sample(lambda x, m=m: dirac_apply(profile, m, x)) for m in modes])
        self.rhs = D - self.Q @ (h * (self.Q.conj().T @ D))
        self._kernel = op.kernel_vector()
        self._cache: dict[float, np.ndarray] = {}

    def _project(self, v):
        return v - self.Q @ (self.grid.spacing * (self.Q.conj().T @ v))

    def _check(self, E, psi):
        if not np.all(np.isfinite(psi)):
            raise ResolventError(f"projected solve overflowed at E={E}")
        resid = self._project(self.op.matvec(psi) - E * psi) - self.rhs
        rel = np.linalg.norm(resid) / max(np.linalg.norm(self.rhs), 1e-300)
        leak = np.linalg.norm(self.grid.spacing * (self.Q.conj().T @ psi)) / max(
            math.sqrt(self.grid.spacing) * np.linalg.norm(psi), 1e-300)
        if not np.all(np.isfinite(psi)) or rel > self.tol or leak > self.tol:
            raise ResolventError(f"projected solve residual {rel:.1e} (leak {leak:.1e}) at E={E}")
        return psi

    def _schur(self, E):
        e = self.op.offdiag
        band = np.zeros((3, self.op.size))
        band[0, 1:] = e
        band[2, :-1] = e
        n = self.Q.shape[1]
        Qh = self.Q.conj().T
        v0 = self._kernel
        try:
            if v0 is None:
                band[1, :] = -E
                X = solve_banded((1, 1), band, np.hstack([self.rhs, self.Q]), check_finite=False)
                XQ, Xphi = X[:, n:], X[:, :n]
                return self._check(E, Xphi - XQ @ np.linalg.solve(Qh @ XQ, Qh @ Xphi))
            # split psi = y + c v0 with y orthogonal to the kernel vector v0 of T
            band[1, :] = -E if abs(E) > 1e-200 else -1e-200
            B = np.hstack([self.rhs, self.Q])
            B = B - np.outer(v0, v0 @ B)
            Y = solve_banded((1, 1), band, B, check_finite=False)
            Y = Y - np.outer(v0, v0 @ Y)
            Yphi, YQ = Y[:, :n], Y[:, n:]
            K = np.zeros((n + 1, n + 1), dtype=complex)
            K[:n, :n] = -Qh @ YQ
            K[:n, n] = Qh @ v0
            K[n, :n] = v0 @ self.Q
            K[n, n] = -E
            rhs = np.vstack([-Qh @ Yphi, (v0 @ self.rhs)[None, :]])
            sol = np.linalg.solve(K, rhs)
            mu, c = sol[:n], sol[n]
            return self._check(E, Yphi - YQ @ mu + np.outer(v0, c))
        except (np.linalg.LinAlgError, ValueError) as exc:
            raise ResolventError(f"banded solve failed at E={E}") from exc

    def _bordered(self, E):
        n, size = self.Q.shape[1], self.op.size
        T = self.op.matrix().astype(complex) - E * sparse.identity(size, dtype=complex, format="csr")
        big = sparse.bmat([[T, sparse.csr_matrix(self.Q)],
                           [sparse.csr_matrix(self.grid.spacing * self.Q.conj().T), None]], format="csc")
        rhs = np.vstack([self.rhs, np.zeros((n, n), dtype=complex)])
        try:
            sol = splu(big).solve(rhs)
        except RuntimeError as exc:
            raise ResolventError(f"projected resolvent singular at E={E}") from exc
        return self._check(E, sol[:size])

    def solve(self, E: float) -> np.ndarray:
        """Columns psi_j = (P (T - E) P)^{-1} phi_j."""
        E = float(E)
        if E in self._cache:
            return self._cache[E]
        try:
            psi = self._schur(E)
        except ResolventError:
            # T - E (nearly) singular, e.g. E = 0 with an exact kernel: bordered LU instead
            psi = self._bordered(E)
        if len(self._cache) < 64:
            self._cache[E] = psi
        return psi

    def correction(self, E: float) -> np.ndarray:
        psi = self.solve(E)
        return self.grid.spacing * (self.rhs.conj().T @ psi)


@dataclass(eq=False)
class ReducedMatrix:
    """M(E) = A - E G - R(E) for n walls at half-spacing delta."""

    n: int
    delta: float
    interaction: np.ndarray
    gram: np.ndarray
    resolvent: ProjectedResolvent
    window: float
    leading: np.ndarray
    profile: MassProfile = field(repr=False)
    modes: tuple = field(repr=False, default=())

    def correction(self, E: float) -> np.ndarray:
        return self.resolvent.correction(E)

    def __call__(self, E: float) -> np.ndarray:
        if abs(E) > self.window:
            raise InvalidWindow(f"|E|={abs(E)} outside the window {self.window}")
        return self.interaction - E * self.gram - self.correction(E)

    def hermiticity_defect(self, E: float) -> float:
        M = self(E)
        return float(np.max(np.abs(M - M.conj().T)))

    def det(self, E: float) -> float:
        d = np.linalg.det(self(E))
        return float(d.real)

    def remainder(self, E: float) -> float:
        """max-norm of M(E) - (M0 - E I)."""
        return float(np.max(np.abs(self(E) - (self.leading - E * np.eye(self.n)))))


def assemble_full_matrix(n: int, delta: float, base: MassProfile, solver: Grid | None = None,
                         window: float | None = None, spacing: float = 0.01) -> ReducedMatrix:
    """Build M(E) for ``n`` copies of ``base``; ``solver`` is the grid used for R(E)."""
    if window is None:
        window = 0.9 * base.kappa_inf
    if not 0 < window < base.kappa_inf:
        raise InvalidWindow("window must satisfy 0 < K < kappa_inf")
    profile = glue_walls(base, n, delta)
    modes = tuple(shifted_modes(base, n, delta))
    grid = solver if solver is not None else Grid.around(profile, spacing)
    A = interaction_matrix(profile, modes)
    G = gram_matrix(modes)
    R = ProjectedResolvent(profile, modes, grid)
    return ReducedMatrix(n, float(delta), A, G, R, float(window), leading_matrix(n, delta, base), profile, modes)


def det_roots(reduced: ReducedMatrix, window: tuple[float, float] | None = None, scan: int = 40) -> np.ndarray:
    """Roots of det M(E) in ``window`` by sign-change scan plus Brent refinement."""
    K = reduced.window
    lo, hi = window if window is not None else (-K, K)
    if not (-K <= lo < hi <= K):
        raise InvalidWindow("det window must lie inside the matrix window")
    kinf = reduced.profile.kappa_inf
    geo = np.geomspace(1e-14 * kinf, max(abs(lo), abs(hi)), scan)
    pts = np.concatenate([np.linspace(lo, hi, 2 * reduced.n * 10), -geo, geo, [0.0]])
    pts = np.unique(pts[(pts >= lo) & (pts <= hi)])
    vals = np.array([reduced.det(E) for E in pts])
    scale = float(np.max(np.abs(vals)))
    roots = list(pts[vals == 0.0])
    nz = np.nonzero(vals)[0]
    for i0, i1 in zip(nz[:-1], nz[1:]):
        if i1 == i0 + 1 and np.sign(vals[i0]) != np.sign(vals[i1]):
            r = optimize.brentq(reduced.det, pts[i0], pts[i1], xtol=1e-300, rtol=4 * np.finfo(float).eps,
                                maxiter=200)
            roots.append(r)
    roots = np.sort(np.asarray(roots, dtype=float))
    if roots.size > 1:
        close = np.diff(roots) < 1e-12
        if np.any(close):
            warnings.warn("det roots closer than 1e-12 merged; gap eigenvalues should be simple",
                          RootMergeWarning)
            roots = roots[np.concatenate([[True], ~close])]
    edge = 1e-9 * max(scale, 1.0)
    for end in (lo, hi):
        if abs(reduced.det(end)) <= edge or np.any(np.abs(roots - end) < 1e-9):
            warnings.warn(f"det root at window boundary {end}", BoundaryRootWarning)
    return roots


@dataclass(frozen=True, eq=False)
class Corrector:
    """eta on the staggered grid together with its diagnostics."""

    coefficients: np.ndarray
    energy: float
    values: np.ndarray = field(repr=False)
    norm: float
    orthogonality: float
    residual: float
    residual_without: float


def reconstruct_corrector(reduced: ReducedMatrix, b: Sequence[complex], E: float,
                          solver: ProjectedResolvent | None = None) -> Corrector:
    """eta = -sum_j b_j (P (D - E) P)^{-1} P D alpha_j."""
    res = solver or reduced.resolvent
    b = np.asarray(b, dtype=complex)
    if b.shape != (reduced.n,):
        raise InvalidParameter(f"need {reduced.n} coefficients")
    op = res.op
    h = res.grid.spacing
    psi = res.solve(E)
    eta = -psi @ b
    base = sum(bj * op.sample(m) for bj, m in zip(b, reduced.modes))
    dbase = sum(bj * op.sample(lambda x, m=m: dirac_apply(reduced.profile, m, x)) for bj, m in zip(b, reduced.modes))
    r0 = dbase - E * base
    r1 = r0 + op.matvec(eta) - E * eta
    ortho = float(np.max(np.abs(h * (res.Q.conj().T @ eta)), initial=0.0))
    return Corrector(b, float(E), eta, math.sqrt(h * np.vdot(eta, eta).real), ortho,
                     math.sqrt(h * np.vdot(r1, r1).real), math.sqrt(h * np.vdot(r0, r0).real))
