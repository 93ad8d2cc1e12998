"""Two-sided eigenvalue brackets for the leaky magnetic loop.

Separating the strip coordinates after the gauge reduction leaves two
families of comparison operators whose spectra sandwich the true 2D
eigenvalues:

    tau(-)_j  <=  lambda_j  <=  tau(+)_j,
    tau(+-)_j = zeta(+-) + mu(+-)_j,

where zeta(+-) are the transverse delta-well levels (transverse module)
and mu(+-)_j the eigenvalues of the longitudinal bound operators

    U(+-) = -[(1 -+ a g+)^-2 +- N(a)/2] d^2/ds^2 - gamma^2/4 +- N(a)/2 +- M(a)

on the twisted loop domain.  N(a) bounds the residual momentum coupling of
the reduced strip form and M(a) the residual potential |W + gamma^2/4|;
both vanish linearly as the strip half-width a -> 0, which is what makes
the bracket tight at strong coupling with the canonical choice
a(beta) = 6 ln(beta) / beta.

Constants are evaluated by grid maximization with a convergence check, not
interval arithmetic: reported values are honest numerics, not certified
bounds.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import comparison, transverse
from .errors import ConvergenceError, EllipticityError, PreconditionError

DEFAULT_GRID = 512


def w_potential(curve, B, s, u):
    """Full effective potential W(s, u) of the gauge-reduced strip operator.

    Evaluates the displayed sum term by term from the loop data (positions,
    tangent, curvature and the flux-phase derivative); no algebraic
    simplification is applied, so cancellations between the field terms act
    as an integration test of the geometry module.  W(s, u) - V(s, u)
    vanishes when B = 0, and W(s, 0) = -gamma(s)^2 / 4.
    """
    s_arr = np.atleast_1d(np.asarray(s, dtype=float))
    u_arr = np.broadcast_to(np.asarray(u, dtype=float), s_arr.shape)
    f = _strip_fields(curve, s_arr)
    jac = 1.0 + u_arr * f["gamma"]
    if np.any(jac <= 0.0):
        raise PreconditionError("evaluation outside the strip: 1 + u*gamma <= 0")

    from .geometry import effective_potential

    v = effective_potential(curve, s_arr, u_arr)
    x, y = f["x"], f["y"]
    ch, sh = f["cos_h"], f["sin_h"]
    p, p_prime, q = f["p"], f["p_prime"], f["q"]
    t_prime = f["t_prime"] * B  # d/ds of the flux phase at field B
    f2 = y + u_arr * ch  # Gamma_2 + u Gamma_1'
    f1 = x - u_arr * sh  # Gamma_1 - u Gamma_2'

    w = v
    w = w + 0.25 * jac**-2 * B**2 * u_arr**2 * p_prime**2
    w = w + 0.25 * B**2 * (x**2 - 2.0 * u_arr * x * sh + y**2 + 2.0 * u_arr * y * ch + u_arr**2)
    w = w + B * f2 * jac**-1 * t_prime * ch - B * f1 * jac**-1 * t_prime * sh
    w = w + 0.25 * jac**-2 * B**2 * q**2
    w = w + 0.25 * B**2 * p**2
    w = w + (
        B * f2 * jac**-1 * ch - B * f1 * jac**-1 * sh - B * jac**-2 * q
    ) * 0.5 * B * p_prime * u_arr
    w = w + (-B * f2 * sh - B * f1 * ch) * 0.5 * B * p
    return float(w[0]) if np.asarray(s).ndim == 0 else w


def momentum_coupling(curve, B, s, u):
    """Residual first-order coupling whose maximum defines N(a).

    The displayed integrand multiplying Im(g* dg/ds) in the reduced strip
    form, evaluated term by term.
    """
    s_arr = np.atleast_1d(np.asarray(s, dtype=float))
    u_arr = np.broadcast_to(np.asarray(u, dtype=float), s_arr.shape)
    f = _strip_fields(curve, s_arr)
    jac = 1.0 + u_arr * f["gamma"]
    ch, sh = f["cos_h"], f["sin_h"]
    f2 = f["y"] + u_arr * ch
    f1 = f["x"] - u_arr * sh
    out = (
        B * f2 * jac**-1 * ch
        - B * f1 * jac**-1 * sh
        - B * jac**-2 * f["q"]
        + B * jac**-2 * f["p_prime"] * u_arr
    )
    return float(out[0]) if np.asarray(s).ndim == 0 else out


def _tangential_component_series(curve):
    key = "p_series"
    if key not in curve._cache:
        grid_h = curve.tangent_angle
        grid_p = (
            curve.positions[:, 1] * np.sin(grid_h)
            + curve.positions[:, 0] * np.cos(grid_h)
        )
        from ._spectral import FourierSeries, derivative

        curve._cache[key] = FourierSeries(grid_p, curve.length)
        curve._cache["p_prime_grid"] = derivative(grid_p, curve.length)
    return curve._cache[key]


def _strip_fields(curve, s_arr):
    """Pointwise loop data entering the reduced strip form."""
    series = _tangential_component_series(curve)
    snap = curve._grid_snap(s_arr)
    hit = snap >= 0
    p_prime = np.empty(s_arr.shape)
    p_prime[hit] = curve._cache["p_prime_grid"][snap[hit]]
    if np.any(~hit):
        p_prime[~hit] = series(s_arr[~hit], order=1)
    pos = np.atleast_2d(curve.position(s_arr))
    h = curve.tangent_angle_at(s_arr)
    ch, sh = np.cos(h), np.sin(h)
    x, y = pos[:, 0], pos[:, 1]
    q = y * ch - x * sh              # normal component of Gamma
    p = y * sh + x * ch              # tangential component of Gamma
    return {
        "x": x, "y": y, "cos_h": ch, "sin_h": sh,
        "gamma": curve.curvature_at(s_arr),
        "q": q, "p": p, "p_prime": p_prime,
        "t_prime": -0.5 * q,  # flux-phase derivative per unit field
    }


@dataclass(frozen=True)
class BracketConstants:
    """Grid maxima N(a), M(a) of the residual strip couplings."""

    a: float
    B: float
    gamma_plus: float
    n_bound: float       # max |momentum coupling|, written N_B in outputs
    m_bound: float       # max |W + gamma^2/4|, written M_B in outputs
    grid_density: int
    converged: bool


def bracket_constants(curve, B, a, grid_density=DEFAULT_GRID):
    """Maxima N(a), M(a) over an (s, u) product grid, with refinement check.

    The grid is doubled until both maxima move by < 1%; two failed
    refinements raise ConvergenceError.  Requires a < 1/(2*gamma_plus),
    the regime where both constants are linearly small in a.
    """
    gamma_plus = curve.gamma_max
    if not 0.0 < a < 0.5 / gamma_plus:
        raise PreconditionError(
            f"a = {a:.6g} outside (0, 1/(2*gamma_plus)) = (0, {0.5 / gamma_plus:.6g})"
        )
    density = int(grid_density)
    prev = _grid_maxima(curve, B, a, density)
    for _ in range(2):
        density *= 2
        cur = _grid_maxima(curve, B, a, density)
        scale = max(cur[0], cur[1], 1e-300)
        if max(abs(cur[0] - prev[0]), abs(cur[1] - prev[1])) < 0.01 * scale:
            return BracketConstants(
                a=float(a), B=float(B), gamma_plus=gamma_plus,
                n_bound=cur[0], m_bound=cur[1],
                grid_density=density, converged=True,
            )
        prev = cur
    raise ConvergenceError(
        f"N, M maxima did not settle within 1% after two grid doublings "
        f"(last density {density})"
    )


def _grid_maxima(curve, B, a, density):
    n_u = max(17, density // 16) | 1
    stride = max(1, curve.n_samples // density)
    s = curve.arc_grid[::stride]
    u = np.linspace(-a, a, n_u)
    ss = np.broadcast_to(s, (n_u, s.size))
    uu = np.broadcast_to(u[:, None], (n_u, s.size))
    n_val = float(np.max(np.abs(momentum_coupling(curve, B, ss.ravel(), uu.ravel()))))
    w = w_potential(curve, B, ss.ravel(), uu.ravel())
    gam = np.broadcast_to(curve.curvature[::stride], (n_u, s.size)).ravel()
    m_val = float(np.max(np.abs(w + 0.25 * gam**2)))
    return n_val, m_val


def linearity_fit(curve, B, a_values, grid_density=DEFAULT_GRID):
    """Least-squares line through the origin for N(a) + M(a) versus a.

    Returns (k_fit, relative residual); the relative residual is the worst
    deviation from the fit divided by the largest N + M on the range.
    """
    a_values = np.asarray(a_values, dtype=float)
    totals = np.array([
        (lambda c: c.n_bound + c.m_bound)(bracket_constants(curve, B, a, grid_density))
        for a in a_values
    ])
    k_fit = float(np.dot(totals, a_values) / np.dot(a_values, a_values))
    residual = float(np.max(np.abs(totals - k_fit * a_values)) / np.max(totals))
    return k_fit, residual


def u_operator_spectrum(curve, B, a, sign, n_modes=comparison.DEFAULT_MODES,
                        n_eigs=9, grid_density=DEFAULT_GRID, constants=None):
    """Lowest eigenvalues mu(+-)_j of the longitudinal bound operators.

    sign '+' scales the kinetic term up and shifts the potential up (upper
    bound); sign '-' does the opposite.  For sign '-' the kinetic
    coefficient (1 + a g+)^-2 - N(a)/2 must stay positive, otherwise the
    bound operator is not elliptic at this (a, B) and the call refuses.
    """
    if sign not in ("+", "-"):
        raise PreconditionError("sign must be '+' or '-'")
    gamma_plus = curve.gamma_max
    consts = constants or bracket_constants(curve, B, a, grid_density)
    if sign == "+":
        coeff = (1.0 - a * gamma_plus) ** -2 + 0.5 * consts.n_bound
        shift = 0.5 * consts.n_bound + consts.m_bound
    else:
        coeff = (1.0 + a * gamma_plus) ** -2 - 0.5 * consts.n_bound
        shift = -0.5 * consts.n_bound - consts.m_bound
        if coeff <= 0.0:
            raise EllipticityError(
                f"lower bound operator lost ellipticity: kinetic coefficient "
                f"{coeff:.6g} <= 0 at a = {a:.6g}, B = {B:.6g}"
            )
    vals = comparison._eigensolve(
        curve, B, n_modes, n_eigs, kinetic_scale=coeff, energy_shift=shift
    )
    return vals, consts


@dataclass(frozen=True)
class BracketInterval:
    """Certified-by-construction enclosure of one 2D eigenvalue."""

    j: int
    a_used: float
    tau_minus: float
    tau_plus: float
    zeta_minus: float
    zeta_plus: float
    mu_minus: float
    mu_plus: float
    preconds_ok: bool

    @property
    def width(self):
        return self.tau_plus - self.tau_minus


def canonical_halfwidth(beta):
    """The strong-coupling strip half-width a(beta) = 6 ln(beta) / beta."""
    if beta <= 1.0:
        raise PreconditionError("beta must exceed 1 for the canonical half-width")
    return 6.0 * math.log(beta) / beta


def bracket(curve, B, beta, n, a=None, n_modes=comparison.DEFAULT_MODES,
            grid_density=DEFAULT_GRID):
    """Two-sided bounds tau(-)_j <= lambda_j <= tau(+)_j for j = 1..n.

    Uses the canonical half-width a(beta) = 6 ln(beta)/beta unless `a` is
    given explicitly (a sensitivity override; every validity condition is
    still enforced for the chosen value).  Refuses with the violated
    condition named when beta is too small for this curve, reporting the
    minimal admissible beta.
    """
    gamma_plus = curve.gamma_max
    a_used = canonical_halfwidth(beta) if a is None else float(a)
    conditions = [
        (a_used < 0.5 / gamma_plus,
         f"a = {a_used:.6g} >= 1/(2*gamma_plus) = {0.5 / gamma_plus:.6g}"),
        (a_used < curve.strip_halfwidth(),
         f"a = {a_used:.6g} >= injectivity half-width "
         f"{curve.strip_halfwidth():.6g}"),
        (beta * a_used > 8.0,
         f"beta*a = {beta * a_used:.6g} <= 8 (transverse uniqueness)"),
        (beta > 8.0 * gamma_plus / 3.0,
         f"beta = {beta:.6g} <= 8*gamma_plus/3 = {8 * gamma_plus / 3:.6g}"),
    ]
    violated = [msg for ok, msg in conditions if not ok]
    if violated:
        hint = ""
        if a is None:
            min_beta = _minimal_beta(curve)
            if min_beta is not None:
                hint = f"; minimal admissible beta for this curve is ~{min_beta:.4g}"
        raise PreconditionError("bracket refused: " + "; ".join(violated) + hint)

    zp = transverse.zeta_plus(a_used, beta, oracle_mesh=None)
    zm = transverse.zeta_minus(a_used, beta, gamma_plus, oracle_mesh=None)
    mu_plus, consts = u_operator_spectrum(
        curve, B, a_used, "+", n_modes, n, grid_density
    )
    mu_minus, _ = u_operator_spectrum(
        curve, B, a_used, "-", n_modes, n, grid_density, constants=consts
    )
    return [
        BracketInterval(
            j=j + 1, a_used=a_used,
            tau_minus=float(zm.zeta + mu_minus[j]),
            tau_plus=float(zp.zeta + mu_plus[j]),
            zeta_minus=zm.zeta, zeta_plus=zp.zeta,
            mu_minus=float(mu_minus[j]), mu_plus=float(mu_plus[j]),
            preconds_ok=True,
        )
        for j in range(n)
    ]


def _minimal_beta(curve, beta_max=1e4):
    """Smallest beta for which the canonical a(beta) passes all conditions."""
    gamma_plus = curve.gamma_max
    cap = min(0.5 / gamma_plus, curve.strip_halfwidth())

    def ok(beta):
        a_val = canonical_halfwidth(beta)
        return a_val < cap and beta * a_val > 8.0 and beta > 8.0 * gamma_plus / 3.0

    lo, hi = 1.5, beta_max
    if not ok(hi):
        return None
    while not ok(lo) and hi - lo > 1e-3 * hi:
        mid = math.sqrt(lo * hi)
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return hi


@dataclass(frozen=True, eq=False)
class CountGuarantee:
    """Certified-modulo-discretization count of negative 2D eigenvalues."""

    n: int
    tau_plus: np.ndarray
    mu_doubling_gap: float


def count_guarantee(curve, B, beta, a=None, n_modes=comparison.DEFAULT_MODES,
                    grid_density=DEFAULT_GRID):
    """Largest n with tau(+)_n < 0: at least that many 2D bound states.

    The upper spectrum mu(+) is recomputed at a doubled mode cutoff and the
    worst shift reported, since the guarantee is only as good as the
    discretized mu(+) values.
    """
    n_eigs = 16
    while True:
        intervals = bracket(curve, B, beta, n_eigs, a=a, n_modes=n_modes,
                            grid_density=grid_density)
        tau_plus = np.array([iv.tau_plus for iv in intervals])
        if np.any(tau_plus >= 0.0) or n_eigs >= 2 * n_modes:
            break
        n_eigs = min(2 * n_eigs, 2 * n_modes)
    count = int(np.searchsorted(tau_plus >= 0.0, True))
    check = bracket(curve, B, beta, min(n_eigs, 2 * n_modes // 2), a=a,
                    n_modes=2 * n_modes, grid_density=grid_density)
    gap = float(
        max(
            abs(iv.tau_plus - jv.tau_plus)
            for iv, jv in zip(intervals, check)
        )
    )
    return CountGuarantee(n=count, tau_plus=tau_plus, mu_doubling_gap=gap)
