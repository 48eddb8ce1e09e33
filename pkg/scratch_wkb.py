"""Arbitrate the order-rho^-2 WKB correction: paper closed form vs linear solve.

Oracle: quantize the EXACT action integral S(eps, rho) = int_{r1}^{r2} |p_r| dr
(p_r from the exact momentum, r1/r2 the exact quartic well roots) via
S = pi (n + 1/2), solve for eps at several rho, and extract the rho^-2
coefficient (eps(rho) - eps0) * rho^2.  Compare with both candidate Deltas.
"""
import math
import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

import dshydrogen as dh
from dshydrogen.params import Geometry


def eps0_closed(n, l, e2, M):
    L = l + 0.5
    denom = (n + 0.5 + math.sqrt(L * L - e2 * e2)) ** 2
    return M / math.sqrt(1.0 + e2 * e2 / denom)


def turning_data(eps, e2, L, M):
    """Flat roots r01 < r02 and the shifts Delta_i (de Sitter sign conv)."""
    D = e2 * e2 * eps * eps - (L * L - e2 * e2) * (M * M - eps * eps)
    s = math.sqrt(D)
    r01 = (e2 * eps - s) / (M * M - eps * eps)
    r02 = (e2 * eps + s) / (M * M - eps * eps)
    def delta(r0):
        return -r0 * r0 * (L * L + M * M * r0 * r0) / (2 * e2 * eps + 2 * r0 * (eps * eps - M * M))
    return r01, r02, delta(r01), delta(r02)


def A_coef(eps, M):
    return 1.0 - 1.0 / (2.0 * (1.0 - eps * eps / (M * M)))


def delta_paper(n, l, e2, M, geometry):
    eps0 = eps0_closed(n, l, e2, M)
    L = l + 0.5
    r01, r02, d1, d2 = turning_data(eps0, e2, L, M)
    A = A_coef(eps0, M)
    sgn = -1.0 if geometry == "ds" else +1.0   # -A pi sigma for dS, +A pi sigma for AdS
    bracket = d1 + d2 + d1 * math.sqrt(r02 / r01) + d2 * math.sqrt(r01 / r02) \
        + sgn * A * r01 * r02 * (r01 + r02)
    return (M * M - eps0 * eps0) ** 2 / (4 * e2 * e2 * M * M) * bracket


def delta_solved(n, l, e2, M):
    """Linear solve of the residue quantization at order rho^-2 (dS sign).

    G(eps,rho) = sqrt(M^2-eps^2) [ sigma/2 - sqrt(pi) - (A/rho^2) pi sigma / 2 ] = n + 1/2
    with r_i = r0i + Delta_i/rho^2.  AdS mirror gives the exact negative.
    """
    eps0 = eps0_closed(n, l, e2, M)
    L = l + 0.5
    r01, r02, d1, d2 = turning_data(eps0, e2, L, M)
    A = A_coef(eps0, M)
    sig0 = r01 + r02
    pi0 = r01 * r02
    bracket = -(d1 + d2) + d1 * math.sqrt(r02 / r01) + d2 * math.sqrt(r01 / r02) \
        + A * pi0 * sig0
    return (M * M - eps0 * eps0) ** 2 / (2 * e2 * e2 * M * M) * bracket


def exact_action(eps, e2, L, M, rho, geometry):
    cp = dh.make_classical(geometry, epsilon=eps, L=L, e2=e2, M=M, rho=rho)
    qr, well = dh.classify_turning_points(cp)
    reals = sorted(z.real for z in qr.roots if abs(z.imag) < 1e-8 * (1 + abs(z.real)))
    pos = [r for r in reals if r > 0]
    if geometry == "ds":
        r1, r2 = pos[0], pos[1]
    else:
        r1, r2 = pos[0], pos[1]
    def integrand(theta):
        r = r1 + (r2 - r1) * math.sin(theta) ** 2
        p2 = dh.momentum_squared(cp, r)
        return math.sqrt(max(p2, 0.0)) * (r2 - r1) * math.sin(2 * theta)
    val, err = quad(integrand, 0.0, math.pi / 2, limit=200, epsabs=1e-13, epsrel=1e-12)
    return val


def quantized_eps(n, l, e2, M, rho, geometry, delta_guess):
    L = l + 0.5
    target = math.pi * (n + 0.5)
    eps0 = eps0_closed(n, l, e2, M)
    f = lambda eps: exact_action(eps, e2, L, M, rho, geometry) - target
    half = max(5.0 * abs(delta_guess) / rho ** 2, 1e-7 * eps0)
    lo, hi = eps0 - half, min(eps0 + half, M * 0.9999999)
    return brentq(f, lo, hi, xtol=1e-15)


if __name__ == "__main__":
    M = 1.0
    for (n, l, e2) in [(0, 0, 0.1), (2, 1, 0.1), (1, 0, 0.05)]:
        eps0 = eps0_closed(n, l, e2, M)
        print(f"== n={n} l={l} e2={e2}: eps0 = {eps0:.12f}")
        print(f"   Delta_paper dS  = {delta_paper(n, l, e2, M, 'ds'):+.6e}")
        print(f"   Delta_paper AdS = {delta_paper(n, l, e2, M, 'ads'):+.6e}")
        print(f"   Delta_solved dS = {delta_solved(n, l, e2, M):+.6e}  (AdS = its negative)")
        dguess = delta_solved(n, l, e2, M)
        for geometry in ("ds", "ads"):
            for rho in (2e3, 4e3, 8e3, 1.6e4):
                try:
                    eps = quantized_eps(n, l, e2, M, rho, geometry, dguess)
                    print(f"   {geometry:3s} rho={rho:8.0f}: (eps-eps0)*rho^2 = {(eps - eps0) * rho**2:+.6e}")
                except Exception as exc:
                    print(f"   {geometry:3s} rho={rho:8.0f}: {type(exc).__name__}: {exc}")
