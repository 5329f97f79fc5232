"""Regularized sinc kernel psi = sinc(L*pi*x) * phi(x) and its Fourier
transform.

For each window the transform of psi is the window transform averaged over a
frequency band of width L,

    psihat(v) = (1/L) * int_{v-L/2}^{v+L/2} phihat(u) du,

which this module evaluates in closed form (Gaussian: erf difference) or by
quadrature of the closed-form phihat (B-spline, sinh).  A direct quadrature
oracle of psi itself is provided for cross-validation.  Tail bounds quantify
essential bandlimitation: psihat is negligible outside [-L(1+eps)/2,
L(1+eps)/2].
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import specfun
from .specfun import Quadrature
from .windows import SamplingConfig, WindowKind, WindowSpec, bspline_center_value, eval_truncated, eval_window


class WrongKind(ValueError):
    """Operation applied to a window kind it does not support."""


class EpsilonOutOfRange(ValueError):
    """Tail-bound band enlargement eps outside the bound's validity range."""


def sinc(x):
    """sin(x)/x with sinc(0) = 1.

    For |x| < 1e-4 the truncated Taylor series 1 - x^2/6 + x^4/120 is used;
    its truncation error there is below 1e-28.
    """
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < 1e-4
    xs = np.where(small, 0.0, x)
    x2 = x * x
    out = np.where(small, 1.0 - x2 / 6.0 + x2 * x2 / 120.0,
                   np.sin(xs) / np.where(small, 1.0, xs))
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class KernelEval:
    """A (window, sampling config) pair, the evaluable regularized kernel."""

    window: WindowSpec
    cfg: SamplingConfig


def psi(k: KernelEval, x):
    """Truncated regularized sinc: sinc(L*pi*x) * phi_m(x).

    psi(0) = 1 and psi(l/L) = 0 for integer l != 0, so reconstruction with
    psi interpolates the samples.  Zero outside [-m/L, m/L].
    """
    x = np.asarray(x, dtype=float)
    out = sinc(k.cfg.L * math.pi * x) * eval_truncated(k.window, k.cfg, x)
    out = np.asarray(out)
    return out if out.ndim else float(out)


def ft_window(w: WindowSpec, cfg: SamplingConfig, v):
    """Closed-form window transform phihat(v).  Vectorized over v.

    rect:    (2m/L) * sinc(2*pi*m*v/L)
    gauss:   sqrt(2*pi)*sigma * exp(-2*pi^2*sigma^2*v^2)
    bspline: m/(s*L*M_{2s}(0)) * sinc(pi*v*m/(s*L))^{2s}
    sinh:    pi*m*beta/(L*sinh(beta)) * B(w),  w = 2*pi*m*v/L, where B is
             J1(sqrt(w^2-beta^2))/sqrt(w^2-beta^2) for |w| > beta,
             I1(sqrt(beta^2-w^2))/sqrt(beta^2-w^2) for |w| < beta, and the
             common limit 1/2 at w = +-beta.  Evaluated through the scaled
             Bessel function so large beta cannot overflow.
    """
    scalar = np.ndim(v) == 0
    v = np.atleast_1d(np.asarray(v, dtype=float))
    L, m = cfg.L, cfg.m
    if w.kind is WindowKind.RECT:
        out = (2.0 * m / L) * sinc(2.0 * math.pi * m * v / L)
    elif w.kind is WindowKind.GAUSS:
        s2 = w.sigma * w.sigma
        out = math.sqrt(2.0 * math.pi) * w.sigma * np.exp(-2.0 * math.pi**2 * s2 * v * v)
    elif w.kind is WindowKind.BSPLINE:
        out = (m / (w.s * L * bspline_center_value(w.s))) * sinc(math.pi * v * m / (w.s * L)) ** (2 * w.s)
    else:
        beta = w.beta
        ww = 2.0 * math.pi * m * v / L
        x2 = ww * ww - beta * beta
        # pref = pi*m*beta/(L*sinh(beta)), written overflow-free
        pref = 2.0 * math.pi * m * beta * math.exp(-beta) / (L * (-math.expm1(-2.0 * beta)))
        prefe = 2.0 * math.pi * m * beta / (L * (-math.expm1(-2.0 * beta)))
        xj = np.sqrt(np.clip(x2, 0.0, None))
        xi = np.sqrt(np.clip(-x2, 0.0, None))
        with np.errstate(invalid="ignore", divide="ignore"):
            bj = np.where(xj > 0, specfun.bessel_j1(xj) / np.where(xj > 0, xj, 1.0), 0.5)
            # I1(x)/x * e^{-beta} = i1e(x) * e^{x-beta} / x
            bi = np.where(xi > 0, specfun.bessel_i1_scaled(xi) * np.exp(xi - beta) / np.where(xi > 0, xi, 1.0), 0.5 * math.exp(-beta))
        out = np.where(x2 >= 0, pref * bj, prefe * bi)
        near = np.abs(x2) < 1e-10
        out = np.where(near, pref * 0.5, out)
    return float(out[0]) if scalar else out


def ft_psi_gauss(k: KernelEval, v):
    """Transform of the Gaussian regularized sinc, as an erf difference:

    psihat(v) = (1/(2L)) * [erf(sqrt(2)*pi*sigma*(v+L/2))
                            - erf(sqrt(2)*pi*sigma*(v-L/2))].

    Even in v, positive, decreasing on [0, inf), with maximum
    erf(sqrt(2)*pi*sigma*L/2)/L < 1/L at v = 0.
    """
    if k.window.kind is not WindowKind.GAUSS:
        raise WrongKind(f"ft_psi_gauss needs a gauss window, got {k.window.kind.value}")
    v = np.asarray(v, dtype=float)
    L = k.cfg.L
    c = math.sqrt(2.0) * math.pi * k.window.sigma
    out = (specfun.erf(c * (v + L / 2.0)) - specfun.erf(c * (v - L / 2.0))) / (2.0 * L)
    out = np.asarray(out)
    return out if out.ndim else float(out)


def ft_psi_bspline(k: KernelEval, v, q: Quadrature = Quadrature(abs_tol=1e-12, rel_tol=1e-12)):
    """Transform of the B-spline regularized sinc,

    psihat(v) = m/(s*L^2*M_{2s}(0)) * int_{v-L/2}^{v+L/2}
                sinc(pi*u*m/(s*L))^{2s} du,

    by adaptive quadrature of the closed-form window transform over the
    length-L band.  Scalar in v (loops over arrays).
    """
    if k.window.kind is not WindowKind.BSPLINE:
        raise WrongKind(f"ft_psi_bspline needs a bspline window, got {k.window.kind.value}")
    varr = np.atleast_1d(np.asarray(v, dtype=float))
    L, m, s = k.cfg.L, k.cfg.m, k.window.s
    coeff = m / (s * L * L * bspline_center_value(s))
    f = lambda u: float(sinc(math.pi * u * m / (s * L))) ** (2 * s)
    out = np.array([
        coeff * specfun.integrate(f, vv - L / 2.0, vv + L / 2.0, q, points=[0.0]).value
        for vv in varr
    ])
    return out if np.ndim(v) else float(out[0])


def _sinh_scaled_tail(W: float, beta: float, q: Quadrature) -> float:
    """(beta/(2*sinh(beta))) * int_W^inf B(w) dw for W >= 0, where B is the
    even Bessel profile of the sinh window transform.

    Split at w = beta.  Above beta the substitution w = beta*cosh(t),
    z = beta*sinh(t) turns the integral into int J1(z)/sqrt(beta^2+z^2) dz
    with the closed-form total int_0^inf J1(beta*sinh t) dt =
    (1-e^-beta)/beta, so the scaled tail at W = beta is exactly
    e^-beta/(1+e^-beta).  Below beta the substitution w = beta*sin(theta)
    gives an I1(beta*cos theta) integrand, evaluated in scaled form.  All
    prefactors carry e^-beta so nothing overflows for large beta.
    """
    if W < 0:
        raise ValueError("W must be >= 0")
    pref = beta * math.exp(-beta) / (-math.expm1(-2.0 * beta))  # beta/(2 sinh beta)
    tail_at_beta = math.exp(-beta) / (1.0 + math.exp(-beta))
    if W >= beta:
        Z = math.sqrt(max(W * W - beta * beta, 0.0))
        if Z == 0.0:
            return tail_at_beta
        f = lambda z: specfun.bessel_j1(z) / math.sqrt(beta * beta + z * z)
        H = specfun.integrate(f, 0.0, Z, q).value
        return tail_at_beta - pref * H
    theta0 = math.asin(min(W / beta, 1.0))
    scale = beta / (-math.expm1(-2.0 * beta))

    def g(th):
        c = math.cos(th)
        return scale * specfun.bessel_i1_scaled(beta * c) * math.exp(-beta * (1.0 - c))

    I = specfun.integrate(g, theta0, math.pi / 2.0, q).value
    return I + tail_at_beta


def _sinh_S(wval: float, beta: float, q: Quadrature) -> float:
    """Odd cumulative (beta/(2*sinh(beta))) * int_0^w B; equals 1/2 minus the
    scaled tail for w >= 0 since the full-line integral of phihat is
    phi(0) = 1."""
    s = 0.5 - _sinh_scaled_tail(abs(wval), beta, q)
    return math.copysign(s, wval) if wval != 0 else 0.0


def ft_psi_sinh(k: KernelEval, v, q: Quadrature = Quadrature(abs_tol=1e-13, rel_tol=1e-12)):
    """Transform of the sinh-type regularized sinc.

    psihat(v) = (1/L) * int_{v-L/2}^{v+L/2} phihat(u) du with the piecewise
    Bessel integrand of the sinh window; the integrand switches between its
    I1 and J1 branches at the two roots w = +-beta of the scaled frequency
    w = 2*pi*m*u/L, so the integral is assembled from odd cumulative pieces
    that split exactly there.  Scalar in v (loops over arrays).
    """
    if k.window.kind is not WindowKind.SINH:
        raise WrongKind(f"ft_psi_sinh needs a sinh window, got {k.window.kind.value}")
    varr = np.atleast_1d(np.asarray(v, dtype=float))
    L, m = k.cfg.L, k.cfg.m
    beta = k.window.beta
    out = np.empty(varr.shape)
    for i, vv in enumerate(varr.ravel()):
        w_hi = 2.0 * math.pi * m * (vv + L / 2.0) / L
        w_lo = 2.0 * math.pi * m * (vv - L / 2.0) / L
        out.ravel()[i] = (_sinh_S(w_hi, beta, q) - _sinh_S(w_lo, beta, q)) / L
    return out if np.ndim(v) else float(out[0])


def ft_psi(k: KernelEval, v):
    """Closed-form psihat dispatched on the window kind (rect included,
    via the sine-integral antiderivative of its band integral)."""
    kind = k.window.kind
    if kind is WindowKind.GAUSS:
        return ft_psi_gauss(k, v)
    if kind is WindowKind.BSPLINE:
        return ft_psi_bspline(k, v)
    if kind is WindowKind.SINH:
        return ft_psi_sinh(k, v)
    from scipy.special import sici

    v = np.asarray(v, dtype=float)
    L, m = k.cfg.L, k.cfg.m
    a = 2.0 * math.pi * m / L
    out = (sici(a * (v + L / 2.0))[0] - sici(a * (v - L / 2.0))[0]) / (math.pi * L)
    return out if out.ndim else float(out)


def ft_psi_quadrature(k: KernelEval, v, q: Quadrature = Quadrature(abs_tol=1e-11, rel_tol=1e-11)):
    """Direct quadrature reference for psihat: 2*int_0^R psi(x)*cos(2*pi*v*x) dx.

    For the Gaussian the untruncated product sinc * phi is integrated (that
    is what the closed form describes) with the support cut at
    R = max(m/L, 12*sigma), where the Gaussian factor is below 1e-31; the
    compact windows use R = m/L.  Slow; intended for cross-validation only.
    """
    varr = np.atleast_1d(np.asarray(v, dtype=float))
    cfg, w = k.cfg, k.window
    if w.kind is WindowKind.GAUSS:
        R = max(cfg.m / cfg.L, 12.0 * w.sigma)

        def integrand(x, vv):
            return float(sinc(cfg.L * math.pi * x)) * float(eval_window(w, cfg, x)) * math.cos(2.0 * math.pi * vv * x)
    else:
        R = cfg.m / cfg.L

        def integrand(x, vv):
            return float(psi(k, x)) * math.cos(2.0 * math.pi * vv * x)

    out = np.array([
        2.0 * specfun.integrate(lambda x: integrand(x, vv), 0.0, R, q).value
        for vv in varr
    ])
    return out if np.ndim(v) else float(out[0])


def tail_bound(k: KernelEval, epsilon: float) -> float:
    """Upper bound on |psihat(v)| for |v| >= L*(1+eps)/2.

    gauss   (eps in (0,1)):    exp(-pi^2 sigma^2 L^2 eps^2 / 2)
                               / (sqrt(2 pi) L^2 pi sigma eps)
    bspline (eps > 2s/(m pi)): (2s/(eps m pi))^{2s-1}
                               / ((2s-1) pi L M_{2s}(0))
    sinh    (eps >= 4s/m, s = beta(1+lam)/(pi(1+2 lam))):
                               5 sqrt(2 s beta) / (4 L sqrt(m eps) sinh beta)
    """
    w, cfg = k.window, k.cfg
    L, m = cfg.L, cfg.m
    if w.kind is WindowKind.GAUSS:
        if not 0.0 < epsilon < 1.0:
            raise EpsilonOutOfRange(f"gauss tail bound needs eps in (0,1), got {epsilon!r}")
        sig = w.sigma
        return math.exp(-math.pi**2 * sig * sig * L * L * epsilon * epsilon / 2.0) / (
            math.sqrt(2.0 * math.pi) * L * L * math.pi * sig * epsilon
        )
    if w.kind is WindowKind.BSPLINE:
        s = w.s
        if not epsilon > 2.0 * s / (m * math.pi):
            raise EpsilonOutOfRange(
                f"bspline tail bound needs eps > 2s/(m*pi) = {2.0 * s / (m * math.pi):g}, got {epsilon!r}"
            )
        return (2.0 * s / (epsilon * m * math.pi)) ** (2 * s - 1) / (
            (2 * s - 1) * math.pi * L * bspline_center_value(s)
        )
    if w.kind is WindowKind.SINH:
        beta = w.beta
        s = beta * (1.0 + cfg.lam) / (math.pi * (1.0 + 2.0 * cfg.lam))
        if not epsilon >= 4.0 * s / m:
            raise EpsilonOutOfRange(
                f"sinh tail bound needs eps >= 4s/m = {4.0 * s / m:g}, got {epsilon!r}"
            )
        # 1/sinh(beta) = 2 e^-beta / (1 - e^-2beta)
        inv_sinh = 2.0 * math.exp(-beta) / (-math.expm1(-2.0 * beta))
        return 5.0 * math.sqrt(2.0 * s * beta) * inv_sinh / (4.0 * L * math.sqrt(m * epsilon))
    raise WrongKind("no tail bound for the rect window")
