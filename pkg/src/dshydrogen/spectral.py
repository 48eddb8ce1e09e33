"""Direct integration of the radial equations and eigenvalue/resonance search.

Everything here works on the dimensionless radial equations

    f'' + 2(1 -/+ 2x^2) / (x (1 -/+ x^2)) f'
        + [ (E + alpha/x)^2/(1 -/+ x^2)^2
            - (M^2 + l(l+1)/x^2)/(1 -/+ x^2) ] f = 0

(upper signs de Sitter on x in (0,1), lower anti-de Sitter on x > 0).
The origin x = 0 is a regular singular point with regular behavior
f ~ x^A; integrations start from a Frobenius series evaluated a safe
distance away instead of the raw power law, which tames the stiffness at
the singular point.

Anti-de Sitter bound states: infinity is again a regular singular point
with indices -3/2 +/- sqrt(9/4 + M^2); the decaying branch is matched by
shooting.  The inward sweep integrates the logarithmic derivative
y = f'/f (Riccati form), which is self-correcting toward the decaying
solution and immune to the huge dynamic range at large M.  Its start
value comes from a 1/x Frobenius series at moderate M or from the
algebraic (WKB) root of the Riccati equation deep under the barrier at
large M, where the contamination of the dominant branch is suppressed
beyond machine precision.

de Sitter quasi-stationary states: the horizon is pushed to infinity by
the tortoise coordinate x* = artanh x, where u = x f obeys
u'' + W(x) u = 0 with W finite and positive at the horizon.  Outgoing
boundary data cannot be imposed on the real axis, so resonances are
located as sharp maxima of the interior-to-exterior amplitude ratio on a
real energy grid (the choice of an outgoing-wave interpretation is
recorded in the result metadata); widths come from the barrier
penetration factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from . import wkb
from .classical import classify_turning_points
from .errors import ConvergenceError, DomainError, IntegrationError, RangeError
from .params import ClassicalParams, Geometry, PhysicalParams, exponent_A, make_classical

__all__ = [
    "BoundaryKind",
    "RadialProblem",
    "RadialSolution",
    "SpectralMethod",
    "SpectrumEntry",
    "integrate_radial",
    "frobenius_start",
    "outer_logderiv_ads",
    "ads_bound_states",
    "ads_level_by_nodes",
    "ds_resonance_scan",
]


class BoundaryKind(Enum):
    REGULAR_ORIGIN = "RegularOrigin"
    DECAY_AT_INFINITY = "DecayAtInfinity"
    OUTGOING_AT_HORIZON = "OutgoingAtHorizon"


class SpectralMethod(Enum):
    EXACT = "Exact"
    WKB = "WKB"
    SHOOTING = "Shooting"
    RESONANCE_SCAN = "ResonanceScan"


@dataclass(frozen=True)
class RadialProblem:
    """Integration request for one radial equation in x = r/rho."""

    geometry: Geometry
    params: PhysicalParams
    x_min: float
    x_max: float
    boundary: BoundaryKind = BoundaryKind.REGULAR_ORIGIN

    def __post_init__(self):
        if self.x_min <= 0.0:
            raise RangeError(f"x_min must be > 0, got {self.x_min}")
        if self.geometry is Geometry.DE_SITTER and self.x_max >= 1.0:
            raise RangeError(f"de Sitter domain needs x_max < 1, got {self.x_max}")
        if self.x_max <= self.x_min:
            raise RangeError("x_max must exceed x_min")


@dataclass
class SpectrumEntry:
    n: int
    l: int
    energy: complex
    method: SpectralMethod
    residual: float
    node_count: int


@dataclass
class RadialSolution:
    """Sampled solution (x, f, f') with boundary-condition metadata."""

    x: np.ndarray
    f: np.ndarray
    fp: np.ndarray
    metadata: dict = field(default_factory=dict)

    @property
    def terminal(self) -> tuple[float, float]:
        return self.f[-1], self.fp[-1]


# ---------------------------------------------------------------------------
# local series at the origin
# ---------------------------------------------------------------------------

def frobenius_start(params: PhysicalParams, geometry: Geometry, x0: float,
                    nmax: int = 600, tol: float = 1e-15) -> tuple[float, float]:
    """(f, f') of the regular solution at small x0, normalized f ~ x^A.

    Sums the origin Frobenius series f = x^s sum a_k x^k with the powers
    of x0 folded into the recurrence (t_k = a_k x0^k), so huge raw
    coefficients at large E or M never materialize.  Stops once two
    consecutive terms drop below tol times the partial sum; raises if
    the budget nmax is exhausted.
    """
    E, alpha, M, l = params.E, params.alpha, params.M, params.l
    s = exponent_A(l, alpha)
    ll = l * (l + 1)
    sign_ds = geometry is Geometry.DE_SITTER
    x2, x4 = x0 * x0, x0 ** 4

    t = [1.0]
    S = 1.0
    Sd = s
    prev = math.inf
    for n in range(1, nmax + 1):
        acc = -2.0 * E * alpha * x0 * t[n - 1]
        if n >= 2:
            t2c = n + s - 2
            base = 2.0 * t2c * (t2c - 1.0) + 6.0 * t2c
            c2 = (base - E * E + M * M - ll) if sign_ds else (-base - E * E + M * M + ll)
            acc += c2 * x2 * t[n - 2]
        if n >= 4:
            t4c = n + s - 4
            base4 = t4c * (t4c - 1.0) + 4.0 * t4c
            c4 = -(base4 + M * M) if sign_ds else -(base4 - M * M)
            acc += c4 * x4 * t[n - 4]
        tn = acc / ((n + s) * (n + s) + (n + s) + alpha * alpha - ll)
        t.append(tn)
        S += tn
        Sd += (n + s) * tn
        if n >= 6 and abs(tn) + prev <= tol * max(abs(S), 1e-300):
            return x0 ** s * S, x0 ** (s - 1.0) * Sd
        prev = abs(tn)
    raise ConvergenceError(
        f"origin series not converged at x0={x0} within {nmax} terms", achieved=prev
    )


def _choose_x0(params: PhysicalParams, default: float = 1e-3) -> float:
    """Series abscissa keeping |E| x0 modest (no cancellation in the sum)."""
    scale = max(abs(params.E), abs(params.M), 1.0)
    return min(default, 2.0 / scale)


# ---------------------------------------------------------------------------
# the radial ODE right-hand sides
# ---------------------------------------------------------------------------

def _rhs_coeffs(params: PhysicalParams, geometry: Geometry):
    E, alpha, M, l = params.E, params.alpha, params.M, params.l
    ll = l * (l + 1)
    if geometry is Geometry.DE_SITTER:
        def P(x):
            return 2.0 * (1.0 - 2.0 * x * x) / (x * (1.0 - x * x))

        def Q(x):
            phi = 1.0 - x * x
            return (E + alpha / x) ** 2 / (phi * phi) - (M * M + ll / (x * x)) / phi
    else:
        def P(x):
            return 2.0 * (1.0 + 2.0 * x * x) / (x * (1.0 + x * x))

        def Q(x):
            phi = 1.0 + x * x
            return (E + alpha / x) ** 2 / (phi * phi) - (M * M + ll / (x * x)) / phi
    return P, Q


def integrate_radial(problem: RadialProblem, rtol: float = 1e-10,
                     atol: float = 1e-12, n_samples: int = 200) -> RadialSolution:
    """Adaptive high-order integration of the radial equation.

    Starts from the origin Frobenius series at x_min and reports sampled
    (f, f') up to x_max.  Failure of the step controller (for instance
    against the de Sitter horizon) raises :class:`IntegrationError` with
    the failing abscissa.
    """
    params = problem.params
    P, Q = _rhs_coeffs(params, problem.geometry)
    f0, fp0 = frobenius_start(params, problem.geometry, problem.x_min)

    def rhs(x, y):
        return [y[1], -P(x) * y[1] - Q(x) * y[0]]

    xs = np.linspace(problem.x_min, problem.x_max, n_samples)
    sol = solve_ivp(rhs, (problem.x_min, problem.x_max), [f0, fp0],
                    method="DOP853", rtol=rtol, atol=atol, t_eval=xs,
                    dense_output=False)
    if not sol.success:
        loc = sol.t[-1] if sol.t.size else problem.x_min
        raise IntegrationError(f"radial integration failed: {sol.message}", location=loc)
    meta = {
        "geometry": problem.geometry.value,
        "boundary": problem.boundary.value,
        "rtol": rtol,
        "normalization": "f ~ x^A at the origin",
    }
    if problem.boundary is BoundaryKind.OUTGOING_AT_HORIZON:
        meta["horizon_condition"] = (
            "outgoing-wave interpretation at the horizon (a convention choice; "
            "the equation itself fixes no boundary condition there)"
        )
    return RadialSolution(x=sol.t, f=sol.y[0], fp=sol.y[1], metadata=meta)


# ---------------------------------------------------------------------------
# anti-de Sitter outer boundary
# ---------------------------------------------------------------------------

def outer_logderiv_ads(params: PhysicalParams, x: float,
                       nmax: int = 400, tol: float = 1e-14) -> float:
    """Logarithmic derivative f'/f of the decaying branch at large x.

    Summed from the 1/x Frobenius series about infinity (a regular
    singular point with indices -3/2 +/- sqrt(9/4 + M^2)); powers of
    v = 1/x are folded into the recurrence terms.  Accurate when
    (3/2 + sqrt(9/4 + M^2))/x is modest, which the caller must arrange.
    """
    E, alpha, M, l = params.E, params.alpha, params.M, params.l
    ll = l * (l + 1)
    T = 1.5 + math.sqrt(2.25 + M * M)
    v = 1.0 / x
    v2, v3, v4 = v * v, v ** 3, v ** 4

    t = [1.0]
    S = 1.0
    Sd = T
    prev = math.inf
    for n in range(1, nmax + 1):
        acc = 0.0
        if n >= 2:
            t2 = n + T - 2
            acc -= (2.0 * t2 * (t2 - 1.0) - 2.0 * t2 + E * E - M * M - ll) * v2 * t[n - 2]
        if n >= 3:
            acc -= 2.0 * E * alpha * v3 * t[n - 3]
        if n >= 4:
            t4 = n + T - 4
            acc -= (t4 * (t4 - 1.0) + alpha * alpha - ll) * v4 * t[n - 4]
        tn = acc / (n * (n + 2.0 * T - 3.0))
        t.append(tn)
        S += tn
        Sd += (n + T) * tn
        if n >= 6 and abs(tn) + prev <= tol * max(abs(S), 1e-300):
            return -v * Sd / S
        prev = abs(tn)
    raise ConvergenceError(
        f"outer series not converged at x={x} within {nmax} terms", achieved=prev
    )


def _outer_turning_point(params: PhysicalParams, l: int) -> float:
    """Dimensionless outer classical turning point (Langer angular momentum)."""
    cp = make_classical(Geometry.ANTI_DE_SITTER, params.E, l + 0.5, params.alpha,
                        params.M, 1.0)
    try:
        qr, _ = classify_turning_points(cp)
        pos = sorted(z.real for z in qr.roots
                     if abs(z.imag) <= 1e-8 * (1 + abs(z.real)) and z.real > 0)
        if pos:
            return pos[-1]
    except Exception:
        pass
    return 1.0


def _barrier_suppression(P, Q, a: float, b: float, n_nodes: int = 16) -> float:
    """Gauss-Legendre estimate of int_a^b sqrt(max(-Q_eff, 0)) dx."""
    nodes, weights = np.polynomial.legendre.leggauss(n_nodes)
    xm, xh = 0.5 * (a + b), 0.5 * (b - a)
    total = 0.0
    for t, w in zip(nodes, weights):
        x = xm + xh * t
        qeff = Q(x) - 0.25 * P(x) ** 2   # crude effective potential
        total += w * math.sqrt(max(-qeff, 0.0))
    return xh * total


def _inward_logderiv(params: PhysicalParams, x_fit: float, rtol: float) -> float:
    """y = f'/f of the decaying solution at x_fit, integrated inward.

    Start data: the 1/x series about infinity when its expansion
    parameter T/x can be made modest with a short sweep, otherwise the
    algebraic decaying root of the Riccati equation at a point deep
    enough under the barrier that the dominant-branch contamination
    (suppressed like exp(-2 int |p|)) is beyond machine precision.  The
    inward direction is self-correcting either way: contamination of
    the decaying solution dies off going inward.
    """
    P, Q = _rhs_coeffs(params, Geometry.ANTI_DE_SITTER)
    x_out = max(x_fit, 1e-6)
    T = 1.5 + math.sqrt(2.25 + params.M ** 2)
    x_series = max(2.2, 1.6 * x_out, T / 8.0)

    x_start = None
    total = 0.0
    a = x_out
    while a < x_series:
        b = min(2.0 * a, x_series)
        total += _barrier_suppression(P, Q, a, b)
        if total >= 18.0:
            x_start = b
            break
        a = b
    if x_start is None:
        x_start = x_series
        y0 = outer_logderiv_ads(params, x_start)
    else:
        p, q = P(x_start), Q(x_start)
        disc = p * p - 4.0 * q
        y0 = 0.5 * (-p - math.sqrt(max(disc, 0.0)))

    def rhs(x, y):
        return [-(y[0] * y[0]) - P(x) * y[0] - Q(x)]

    sol = solve_ivp(rhs, (x_start, x_fit), [y0], method="DOP853",
                    rtol=rtol, atol=1e-12)
    if not sol.success:
        raise IntegrationError(f"inward Riccati sweep failed: {sol.message}",
                               location=sol.t[-1] if sol.t.size else x_start)
    return sol.y[0][-1]


def _outward_solution(params: PhysicalParams, x_fit: float, rtol: float,
                      n_samples: int = 400):
    problem = RadialProblem(Geometry.ANTI_DE_SITTER, params,
                            x_min=_choose_x0(params), x_max=x_fit,
                            boundary=BoundaryKind.REGULAR_ORIGIN)
    return integrate_radial(problem, rtol=rtol, n_samples=n_samples)


def _match_determinant(params: PhysicalParams, l: int, rtol: float) -> tuple[float, RadialSolution]:
    x_fit = _outer_turning_point(params, l)
    out = _outward_solution(params, x_fit, rtol)
    f, fp = out.terminal
    y_in = _inward_logderiv(params, x_fit, rtol)
    scale = max(abs(f), abs(fp), 1e-300)
    return (f * y_in - fp) / scale, out


def _count_nodes(values: np.ndarray) -> int:
    signs = np.sign(values)
    signs = signs[signs != 0]
    return int(np.sum(signs[1:] != signs[:-1]))


def ads_bound_states(params_template: PhysicalParams, l: int,
                     E_window: tuple[float, float], n_scan: int = 40,
                     rtol: float = 1e-10) -> list[SpectrumEntry]:
    """All anti-de Sitter bound states in a dimensionless energy window.

    Shooting to a fitting point at the outer classical turning point:
    sign changes of the matching determinant on the scan grid are
    bracketed and polished by Brent's method.  Node counts of the
    outward solution give the radial quantum number, consistent with
    the energy ordering.
    """
    if params_template.geometry is not Geometry.ANTI_DE_SITTER:
        raise DomainError("ads_bound_states needs anti-de Sitter parameters")
    lo, hi = E_window
    if not (math.isfinite(lo) and math.isfinite(hi) and hi > lo):
        raise DomainError(f"E_window must be finite with hi > lo, got {E_window}")
    base = PhysicalParams(geometry=params_template.geometry, E=0.0,
                          alpha=params_template.alpha, M=params_template.M,
                          l=int(l), rho=params_template.rho)

    grid = np.linspace(lo, hi, n_scan)
    dets = np.empty_like(grid)
    for i, E in enumerate(grid):
        dets[i], _ = _match_determinant(base.with_energy(float(E)), l, rtol)

    entries: list[SpectrumEntry] = []
    for i in range(len(grid) - 1):
        if not (np.isfinite(dets[i]) and np.isfinite(dets[i + 1])):
            continue
        if dets[i] == 0.0:
            root = grid[i]
        elif dets[i] * dets[i + 1] < 0.0:
            root = brentq(lambda E: _match_determinant(base.with_energy(E), l, rtol)[0],
                          grid[i], grid[i + 1], xtol=1e-11, rtol=8.9e-16)
        else:
            continue
        det, out = _match_determinant(base.with_energy(float(root)), l, rtol)
        nodes = _count_nodes(out.f)
        entries.append(SpectrumEntry(n=nodes, l=l, energy=complex(root),
                                     method=SpectralMethod.SHOOTING,
                                     residual=abs(det), node_count=nodes))
    entries.sort(key=lambda e: e.energy.real)
    return entries


def _node_cutoff(params: PhysicalParams, l: int) -> float:
    """Abscissa deep enough under the outer barrier for node bookkeeping.

    Walks outward from the turning point until the accumulated decay
    exponent int sqrt(-Q_eff) dx reaches ~18, so the energy window in
    which a tail node sits beyond the cutoff is exp(-36)-small.
    """
    P, Q = _rhs_coeffs(params, Geometry.ANTI_DE_SITTER)
    x_tp = _outer_turning_point(params, l)
    total = 0.0
    a = x_tp
    for _ in range(60):
        b = 1.45 * a
        total += _barrier_suppression(P, Q, a, b)
        a = b
        if total >= 18.0:
            break
    return a


def _node_count_at(params: PhysicalParams, l: int, rtol: float) -> int:
    """Nodes of the outward solution, counted well past the turning point.

    A monotone staircase in E: it equals the number of eigenvalues below
    E, jumping by one exponentially close to each eigenvalue.
    """
    out = _outward_solution(params, _node_cutoff(params, l), rtol, n_samples=600)
    return _count_nodes(out.f)


def ads_level_by_nodes(params_template: PhysicalParams, n: int, l: int,
                       E_center: float, halfwidth: float,
                       rtol: float = 1e-10, max_expand: int = 6) -> SpectrumEntry:
    """Targeted search for the bound state with exactly n radial nodes.

    Bisects the node-count staircase (cheap: one outward integration per
    step) to localize the jump n -> n+1, then polishes the eigenvalue on
    the matching determinant.  More robust than a blind window scan when
    the level spacing is far smaller than the energy uncertainty, as it
    is deep in the dense part of the anti-de Sitter spectrum.
    """
    base = PhysicalParams(geometry=params_template.geometry, E=0.0,
                          alpha=params_template.alpha, M=params_template.M,
                          l=int(l), rho=params_template.rho)

    def nodes(E: float) -> int:
        return _node_count_at(base.with_energy(E), l, rtol)

    lo, hi = E_center - halfwidth, E_center + halfwidth
    for _ in range(max_expand):
        if nodes(lo) <= n:
            break
        lo -= 2.0 * halfwidth
    for _ in range(max_expand):
        if nodes(hi) >= n + 1:
            break
        hi += 2.0 * halfwidth
    if nodes(lo) > n or nodes(hi) < n + 1:
        raise ConvergenceError(
            f"node-count window could not bracket level n={n} (l={l})"
        )
    while hi - lo > 1e-10 * max(1.0, abs(E_center)):
        mid = 0.5 * (lo + hi)
        if nodes(mid) <= n:
            lo = mid
        else:
            hi = mid
    pad = max(hi - lo, 1e-11 * max(1.0, abs(E_center)))
    a, b = lo - 2 * pad, hi + 2 * pad
    det_a, _ = _match_determinant(base.with_energy(a), l, rtol)
    det_b, _ = _match_determinant(base.with_energy(b), l, rtol)
    if det_a * det_b < 0.0:
        root = brentq(lambda E: _match_determinant(base.with_energy(E), l, rtol)[0],
                      a, b, xtol=1e-12 * max(1.0, abs(E_center)), rtol=8.9e-16)
    else:
        root = 0.5 * (lo + hi)
    det, out = _match_determinant(base.with_energy(float(root)), l, rtol)
    return SpectrumEntry(n=n, l=l, energy=complex(root),
                         method=SpectralMethod.SHOOTING,
                         residual=abs(det), node_count=_count_nodes(out.f))


# ---------------------------------------------------------------------------
# de Sitter resonance scan
# ---------------------------------------------------------------------------

def _wave_potential(params: PhysicalParams):
    """W(x) of u'' + W u = 0 in the tortoise coordinate, u = x f."""
    E, alpha, M, l = params.E, params.alpha, params.M, params.l
    ll = l * (l + 1)

    def W(x):
        phi = 1.0 - x * x
        return (E + alpha / x) ** 2 - phi * (M * M + ll / (x * x)) + 2.0 * phi

    return W


def _integrate_horizon(params: PhysicalParams, x0: float, x_plateau: float,
                       rtol: float, n_samples: int):
    """Integrate u'' + W u = 0 from x0 to the plateau in x* = artanh x."""
    W = _wave_potential(params)
    f0, fp0 = frobenius_start(params, Geometry.DE_SITTER, x0)
    u0 = x0 * f0
    # du/dx* = (1-x^2) d(x f)/dx
    up0 = (1.0 - x0 * x0) * (f0 + x0 * fp0)
    s0, s1 = math.atanh(x0), math.atanh(x_plateau)

    def rhs(s, y):
        x = math.tanh(s)
        return [y[1], -W(x) * y[0]]

    ss = np.linspace(s0, s1, n_samples)
    sol = solve_ivp(rhs, (s0, s1), [u0, up0], method="DOP853",
                    rtol=rtol, atol=1e-12, t_eval=ss)
    if not sol.success:
        raise IntegrationError(f"horizon-side integration failed: {sol.message}",
                               location=sol.t[-1] if sol.t.size else s0)
    return sol


def _amplitude_ratio(params: PhysicalParams, well_x: tuple[float, float],
                     x_plateau: float, rtol: float, n_samples: int) -> tuple[float, int]:
    """(interior/exterior amplitude ratio, node count inside the well)."""
    x0 = min(_choose_x0(params), 0.3 * well_x[0])
    sol = _integrate_horizon(params, x0, x_plateau, rtol, n_samples)
    xs = np.tanh(sol.t)
    mask = (xs >= well_x[0]) & (xs <= well_x[1])
    if not mask.any():
        raise RangeError("well interval not resolved by the sample grid")
    interior = float(np.max(np.abs(sol.y[0][mask])))
    W = _wave_potential(params)
    k = math.sqrt(max(W(x_plateau), 1e-300))
    u_end, up_end = sol.y[0][-1], sol.y[1][-1]
    exterior = math.hypot(u_end, up_end / k)
    nodes = _count_nodes(sol.y[0][mask])
    return interior / exterior, nodes


def ds_resonance_scan(params_template: PhysicalParams, eps_grid,
                      rtol: float = 1e-8, x_plateau: float = 0.999,
                      n_samples: int = 2000, n_zoom: int = 2) -> list[SpectrumEntry]:
    """Quasi-stationary de Sitter levels from a real-energy amplitude scan.

    For each physical energy eps on the grid the regular solution is
    driven through the barrier to the near-horizon plateau; long-lived
    states show up as sharp maxima of the interior-to-exterior amplitude
    ratio (a time-delay proxy).  Peaks are refined by grid zooming, then
    dressed with a width from the barrier penetration factor,
    Gamma = W_barrier * (level spacing)/(2 pi), and returned as complex
    energies eps_peak - i Gamma/2 (physical units of the template's rho).

    Returns an empty list (with no error) when no interior maximum
    exists, e.g. for a free particle with no Coulomb well.
    """
    p = params_template
    if p.geometry is not Geometry.DE_SITTER:
        raise DomainError("ds_resonance_scan needs de Sitter parameters")
    eps_grid = np.asarray(list(eps_grid), dtype=float)
    if eps_grid.size < 3:
        raise DomainError("eps_grid needs at least 3 points")
    rho = p.rho
    e2, M_phys = p.alpha, p.M / rho

    def well_for(eps: float):
        cp = make_classical(Geometry.DE_SITTER, eps, p.l + 0.5, e2, M_phys, rho)
        try:
            _, well = classify_turning_points(cp)
        except Exception:
            return None
        return well

    def ratio_for(eps: float):
        well = well_for(eps)
        if well is None:
            return None
        params = PhysicalParams(geometry=Geometry.DE_SITTER, E=eps * rho,
                                alpha=e2, M=p.M, l=p.l, rho=rho)
        wx = (well.r1 / rho, well.r2 / rho)
        return _amplitude_ratio(params, wx, x_plateau, rtol, n_samples)

    ratios = []
    for eps in eps_grid:
        res = ratio_for(float(eps))
        ratios.append((float(eps), math.nan if res is None else res[0]))

    entries: list[SpectrumEntry] = []
    vals = np.array([r[1] for r in ratios])
    for i in range(1, len(ratios) - 1):
        if not np.isfinite(vals[i - 1:i + 2]).all():
            continue
        if not (vals[i] > vals[i - 1] and vals[i] > vals[i + 1]):
            continue
        lo, hi = ratios[i - 1][0], ratios[i + 1][0]
        peak_eps, peak_ratio = ratios[i][0], vals[i]
        for _ in range(n_zoom):
            sub = np.linspace(lo, hi, 11)
            sub_vals = []
            for eps in sub:
                res = ratio_for(float(eps))
                sub_vals.append(-math.inf if res is None else res[0])
            j = int(np.argmax(sub_vals))
            peak_eps, peak_ratio = float(sub[j]), sub_vals[j]
            lo = sub[max(j - 1, 0)]
            hi = sub[min(j + 1, len(sub) - 1)]
        res = ratio_for(peak_eps)
        nodes = 0 if res is None else res[1]
        well = well_for(peak_eps)
        gamma = 0.0
        if well is not None and e2 > 0.0:
            cp = make_classical(Geometry.DE_SITTER, peak_eps, p.l + 0.5, e2, M_phys, rho)
            try:
                W_bar, _ = wkb.tunneling_probability(cp, well)
                spacing = (wkb.wkb_eps0(nodes + 1, p.l, e2, M_phys)
                           - wkb.wkb_eps0(nodes, p.l, e2, M_phys))
                gamma = W_bar * spacing / (2.0 * math.pi)
            except Exception:
                gamma = 0.0
        entries.append(SpectrumEntry(n=nodes, l=p.l,
                                     energy=complex(peak_eps, -0.5 * gamma),
                                     method=SpectralMethod.RESONANCE_SCAN,
                                     residual=float(hi - lo),
                                     node_count=nodes))
    return entries
