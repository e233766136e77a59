"""Thin wrapper around adaptive Gauss-Kronrod quadrature with breakpoints."""
from __future__ import annotations

import warnings
from typing import Callable, Iterable

import numpy as np
from scipy import integrate

from .errors import QuadratureError


def integrate_real(
    f: Callable[[float], float],
    a: float,
    b: float,
    points: Iterable[float] = (),
    epsabs: float = 1e-13,
    epsrel: float = 1e-11,
    tol: float = 1e-10,
    rtol: float = 1e-10,
) -> float:
    """Integrate f over [a, b], splitting at ``points``.

    Each piece goes through QUADPACK separately; the summed error estimate must
    stay below ``max(tol, rtol * |integral|)``.
    """
    cuts = sorted({float(p) for p in points if a < p < b})
    edges = [a, *cuts, b]
    total, err = 0.0, 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        for lo, hi in zip(edges[:-1], edges[1:]):
            try:
                val, e = integrate.quad(f, lo, hi, epsabs=epsabs, epsrel=epsrel, limit=200)
            except integrate.IntegrationWarning as exc:
                raise QuadratureError(f"quadrature on [{lo}, {hi}] failed: {exc}") from exc
            total += val
            err += e
    if not np.isfinite(total) or err > max(tol, rtol * abs(total)):
        raise QuadratureError(f"quadrature error {err:.2e} exceeds {tol:.1e}", err)
    return total
