"""Special functions and quadrature backing the window/kernel/bound layers.

Everything here is a pure function of its arguments; all evaluators accept
scalars or numpy arrays and broadcast elementwise.  The error function and
Bessel functions are delegated to scipy.special (Cephes / AMOS), which meets
the accuracy targets of this package (erf absolute error <= 1e-15, J1/I1
relative error <= 1e-12 away from their zeros); odd symmetry is enforced by
construction.  The centered cardinal B-spline, its exact center values and
the Eulerian numbers are implemented here directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

import numpy as np
from scipy import integrate as _sci_integrate
from scipy import special as _sp


class OverflowDomain(ValueError):
    """Argument outside the overflow-safe domain of a special function."""


class InvalidOrder(ValueError):
    """B-spline order must be an even integer >= 2."""


class InvalidRange(ValueError):
    """Eulerian number index out of the valid range 1 <= k <= n."""


class NoConvergence(RuntimeError):
    """Adaptive quadrature exhausted its subdivision budget."""


# I1 overflows double precision shortly above exp(713); stay clear of it.
_I1_MAX_ARG = 700.0


def erf(x):
    """Error function (2/sqrt(pi)) * int_0^x exp(-t^2) dt.

    Odd symmetry erf(-x) = -erf(x) holds exactly: the evaluation only ever
    sees |x| and the sign is copied back.
    """
    x = np.asarray(x, dtype=float)
    out = _sp.erf(np.abs(x))
    out = np.where(x < 0, -out, out)
    return out if out.ndim else float(out)


def erfc(x):
    """Complementary error function 1 - erf(x)."""
    x = np.asarray(x, dtype=float)
    out = _sp.erfc(x)
    return out if out.ndim else float(out)


def bessel_j1(x):
    """Bessel function of the first kind J1(x); odd by construction."""
    x = np.asarray(x, dtype=float)
    out = _sp.j1(np.abs(x))
    out = np.where(x < 0, -out, out)
    return out if out.ndim else float(out)


def bessel_i1(x):
    """Modified Bessel function of the first kind I1(x).

    Raises OverflowDomain for |x| > 700, where the result would approach
    the double-precision overflow threshold.
    """
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > _I1_MAX_ARG):
        raise OverflowDomain(f"bessel_i1 requires |x| <= {_I1_MAX_ARG:g}")
    out = _sp.i1(x)
    return out if out.ndim else float(out)


def bessel_i1_scaled(x):
    """Exponentially scaled I1: exp(-|x|) * I1(x).  Safe for all finite x."""
    x = np.asarray(x, dtype=float)
    out = _sp.i1e(x)
    return out if out.ndim else float(out)


def cardinal_bspline(order_2s, x):
    """Centered cardinal B-spline M_{2s}(x) of even order ``order_2s``.

    Evaluated through the two-term de Boor recurrence on the shifted spline
    N_{2s} with uniform knots 0..2s, then recentered (M_{2s}(x) =
    N_{2s}(x + s)).  Supported on [-s, s], nonnegative, integrates to 1; the
    half-open knot intervals make the value at both support endpoints 0,
    consistent with continuity for order >= 2.
    """
    order = int(order_2s)
    if order != order_2s or order < 2 or order % 2:
        raise InvalidOrder(f"order must be an even integer >= 2, got {order_2s!r}")
    x = np.asarray(x, dtype=float)
    t = x + order / 2.0
    cols = [((t >= j) & (t < j + 1)).astype(float) for j in range(order)]
    for k in range(2, order + 1):
        cols = [
            ((t - j) * cols[j] + (j + k - t) * cols[j + 1]) / (k - 1)
            for j in range(order - k + 1)
        ]
    out = cols[0]
    return out if out.ndim else float(out)


def m2s_at_zero(s):
    """Exact center value M_{2s}(0) as a Fraction.

    Computed from the alternating binomial sum
    M_{2s}(0) = (1/(2s-1)!) * sum_{j=0}^{s-1} (-1)^j C(2s, j) (s-j)^{2s-1}
    in exact integer arithmetic; the floating-point form of this sum has
    catastrophic cancellation for large s.
    """
    s = int(s)
    if s < 1:
        raise InvalidRange(f"s must be >= 1, got {s}")
    num = sum((-1) ** j * comb(2 * s, j) * (s - j) ** (2 * s - 1) for j in range(s))
    return Fraction(num, factorial(2 * s - 1))


def eulerian_number(n, k):
    """Eulerian number E(n, k-1): permutations of 1..n with k-1 ascents.

    Exact integer; satisfies M_{2s}(0) = E(2s-1, s-1) / (2s-1)!.
    """
    n = int(n)
    k = int(k)
    if k < 1 or k > n:
        raise InvalidRange(f"need 1 <= k <= n, got n={n}, k={k}")
    return sum((-1) ** j * comb(n + 1, j) * (k - j) ** n for j in range(k))


@dataclass(frozen=True)
class Quadrature:
    """Tolerances and budget for adaptive quadrature."""

    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_subdivisions: int = 2000

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")


@dataclass(frozen=True)
class IntegralResult:
    value: float
    error: float


def integrate(f, a, b, q=Quadrature(), points=None):
    """Adaptive quadrature of ``f`` over [a, b] to the tolerances in ``q``.

    Backed by QUADPACK's globally adaptive Gauss-Kronrod scheme (21-point
    rule on each panel).  ``points`` may list interior break points such as
    removable singularities, so that no panel straddles them.  Returns an
    IntegralResult with the estimate and the achieved error estimate; raises
    NoConvergence when the subdivision budget is exhausted or QUADPACK gives
    up before meeting the tolerances.
    """
    if a > b:
        raise ValueError(f"need a <= b, got a={a}, b={b}")
    if a == b:
        return IntegralResult(0.0, 0.0)
    pts = None
    if points is not None:
        pts = [p for p in points if a < p < b]
        pts = pts or None
    out = _sci_integrate.quad(
        f, a, b,
        epsabs=q.abs_tol, epsrel=q.rel_tol, limit=q.max_subdivisions,
        points=pts, full_output=1,
    )
    value, err = out[0], out[1]
    if len(out) > 3:  # (value, err, infodict, message[, explain])
        raise NoConvergence(f"quadrature on [{a:g}, {b:g}] did not converge: {out[3]}")
    if not (err <= max(q.abs_tol, q.rel_tol * abs(value)) * 50):
        # QUADPACK reported success but the error estimate is far off target.
        raise NoConvergence(
            f"quadrature on [{a:g}, {b:g}] reached error {err:g} only"
        )
    return IntegralResult(float(value), float(err))


def gl_cumulative(f, nodes, max_width, order=15):
    """Cumulative integrals of ``f`` from nodes[0] to each node.

    Fixed-order Gauss-Legendre panels between consecutive nodes, with wide
    gaps subdivided to ``max_width`` so a panel never spans more than a
    fraction of the integrand's oscillation scale.  ``nodes`` must be sorted
    ascending; ``f`` must be vectorized.  Returns an array aligned with
    ``nodes``.  This is the bulk-evaluation companion of :func:`integrate`
    for the error-constant grids, where thousands of cumulative values of
    one smooth integrand are needed at once.
    """
    nodes = np.asarray(nodes, dtype=float)
    if nodes.ndim != 1 or nodes.size < 1:
        raise ValueError("nodes must be a 1-D array with at least one entry")
    if np.any(np.diff(nodes) < 0):
        raise ValueError("nodes must be sorted ascending")
    if nodes.size == 1:
        return np.zeros(1)
    xgl, wgl = np.polynomial.legendre.leggauss(order)
    # Refined panel grid: original nodes plus uniform subdivision of wide gaps.
    pieces = [nodes[:1]]
    for lo, hi in zip(nodes[:-1], nodes[1:]):
        gap = hi - lo
        if gap <= 0:
            pieces.append(np.array([hi]))
            continue
        nsub = max(1, int(math.ceil(gap / max_width)))
        sub = lo + gap * np.arange(1, nsub + 1) / nsub
        sub[-1] = hi  # keep original nodes exactly representable in the grid
        pieces.append(sub)
    grid = np.concatenate(pieces)
    lo, hi = grid[:-1], grid[1:]
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    samples = f(mid[:, None] + half[:, None] * xgl[None, :])
    panel = half * (samples @ wgl)
    cum = np.concatenate([[0.0], np.cumsum(panel)])
    # Map back onto the original nodes (grid is a superset, in order).
    pos = np.searchsorted(grid, nodes)
    return cum[pos]
