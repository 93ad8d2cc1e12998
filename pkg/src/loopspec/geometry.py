"""Closed planar loops in arc-length form.

A loop is stored as M uniform arc-length samples of position, tangent
angle and signed curvature.  Sign convention used throughout the package:

    gamma = x'' y' - y'' x'   (unit-speed derivatives)

which is the *negative* of the textbook signed curvature; a counter-clockwise
unit circle has gamma = -1 and total signed curvature -2*pi.  The tangent
angle H obeys H' = -gamma and the tangent is (cos H, sin H) by construction,
so unit speed is exact.  Only gamma**2 enters the spectral operators, making
the convention costless, but reconstruction formulas depend on it.

The inward unit normal of a CCW loop is n = (-sin H, cos H); strip
coordinates (s, u) map to Gamma(s) + u*n(s) with Jacobian 1 + u*gamma(s).
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline, make_interp_spline
from scipy.spatial.distance import pdist
import shapely

from ._spectral import FourierSeries, derivative, mean_and_oscillation
from .errors import (
    ClosureError,
    ConvergenceError,
    CurveError,
    OrientationError,
    PreconditionError,
    SelfIntersectionError,
)

TWO_PI = 2.0 * np.pi

# Type invariants, enforced at construction.
CLOSURE_RTOL = 1e-8          # |Gamma(L) - Gamma(0)| <= CLOSURE_RTOL * L
TOTAL_TURN_ATOL = 1e-6       # | integral of gamma + 2*pi | <= TOTAL_TURN_ATOL
MIN_SAMPLES = 16


@dataclass(frozen=True, eq=False)
class LoopCurve:
    """A smooth counter-clockwise Jordan loop, sampled uniformly in arc length.

    Attributes
    ----------
    length : float
        Total arc length L.
    positions : (M, 2) ndarray
        Points Gamma(s_i) at s_i = i*L/M.
    tangent_angle : (M,) ndarray
        Continuous tangent angle H(s_i); the tangent is (cos H, sin H).
    curvature : (M,) ndarray
        Signed curvature gamma(s_i) in the package convention (CCW circle: -1/R).
    area : float
        Enclosed area, computed by the Green quadrature of the samples.
    closure_residual : float
        |Gamma(L) - Gamma(0)| as seen by the construction quadrature.
    interp : str
        Differentiation backend used to build the samples ("fourier" or "spline").
    """

    length: float
    positions: np.ndarray
    tangent_angle: np.ndarray
    curvature: np.ndarray
    area: float
    closure_residual: float
    interp: str = "fourier"
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        for name in ("positions", "tangent_angle", "curvature"):
            arr = np.ascontiguousarray(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        _validate(self)

    # -- basic descriptors ------------------------------------------------

    @property
    def n_samples(self):
        return self.curvature.size

    @property
    def arc_grid(self):
        """Sample abscissae s_i = i*L/M."""
        return np.arange(self.n_samples) * (self.length / self.n_samples)

    @property
    def gamma_max(self):
        """max |gamma| over the loop."""
        return float(np.max(np.abs(self.curvature)))

    @property
    def tangents(self):
        """(M, 2) unit tangents (cos H, sin H)."""
        return np.column_stack((np.cos(self.tangent_angle), np.sin(self.tangent_angle)))

    @property
    def normals(self):
        """(M, 2) inward unit normals (-sin H, cos H)."""
        return np.column_stack((-np.sin(self.tangent_angle), np.cos(self.tangent_angle)))

    # -- off-grid evaluation ----------------------------------------------

    def _series(self, name):
        cache = self._cache
        if name not in cache:
            L = self.length
            if name == "x":
                cache[name] = FourierSeries(self.positions[:, 0], L)
            elif name == "y":
                cache[name] = FourierSeries(self.positions[:, 1], L)
            elif name == "gamma":
                cache[name] = FourierSeries(self.curvature, L)
            elif name == "angle_osc":
                # H(s) minus its secular part 2*pi*s/L is periodic
                cache[name] = FourierSeries(
                    self.tangent_angle - TWO_PI * self.arc_grid / L, L
                )
            else:  # pragma: no cover
                raise KeyError(name)
        return cache[name]

    def _grid_snap(self, s):
        """Indices of samples hit exactly by s (within 1e-12*L), else -1."""
        step = self.length / self.n_samples
        idx = np.rint(np.asarray(s, dtype=float) / step).astype(int)
        near = np.abs(np.asarray(s, dtype=float) - idx * step) <= 1e-12 * self.length
        return np.where(near, idx % self.n_samples, -1)

    def position(self, s):
        """Gamma(s) for arbitrary s; exact stored samples are returned bit-for-bit."""
        s_arr = np.atleast_1d(np.asarray(s, dtype=float))
        snap = self._grid_snap(s_arr)
        out = np.empty((s_arr.size, 2))
        off = snap < 0
        if np.any(off):
            out[off, 0] = self._series("x")(s_arr[off])
            out[off, 1] = self._series("y")(s_arr[off])
        if np.any(~off):
            out[~off] = self.positions[snap[~off]]
        return out[0] if np.isscalar(s) or np.asarray(s).ndim == 0 else out

    def tangent_angle_at(self, s):
        s_arr = np.atleast_1d(np.asarray(s, dtype=float))
        snap = self._grid_snap(s_arr)
        hit = snap >= 0
        out = np.empty(s_arr.shape)
        if np.any(~hit):
            miss = s_arr[~hit]
            out[~hit] = self._series("angle_osc")(miss) + TWO_PI * miss / self.length
        # keep the stored winding on grid points (series drops full turns)
        out[hit] = self.tangent_angle[snap[hit]] + TWO_PI * np.floor(
            s_arr[hit] / self.length + 0.5 / self.n_samples
        )
        return float(out[0]) if np.asarray(s).ndim == 0 else out

    def curvature_at(self, s, nu=0):
        """gamma(s) and its arc-length derivatives (nu = 0, 1, 2)."""
        s_arr = np.atleast_1d(np.asarray(s, dtype=float))
        snap = self._grid_snap(s_arr)
        hit = snap >= 0
        grid_vals = self.curvature if nu == 0 else self._grid_derivative("gamma", nu)
        out = np.empty(s_arr.shape)
        out[hit] = grid_vals[snap[hit]]
        if np.any(~hit):
            out[~hit] = self._series("gamma")(s_arr[~hit], order=nu)
        return float(out[0]) if np.asarray(s).ndim == 0 else out

    def _grid_derivative(self, name, nu):
        """Cached spectral derivatives of a stored field on the sample grid."""
        key = ("grid_deriv", name, nu)
        if key not in self._cache:
            base = {"gamma": self.curvature}[name]
            self._cache[key] = derivative(base, self.length, order=nu)
        return self._cache[key]

    def strip_halfwidth(self, a_max=None):
        """Cached numerical injectivity half-width (see injectivity_halfwidth)."""
        key = ("halfwidth", a_max)
        if key not in self._cache:
            cap = 0.999 / self.gamma_max if a_max is None else a_max
            self._cache[key] = injectivity_halfwidth(self, cap)
        return self._cache[key]


def _validate(curve):
    m = curve.curvature.size
    if m < MIN_SAMPLES:
        raise CurveError(f"need at least {MIN_SAMPLES} samples, got {m}")
    if curve.positions.shape != (m, 2) or curve.tangent_angle.shape != (m,):
        raise CurveError("inconsistent sample array shapes")
    if not (np.isfinite(curve.positions).all() and np.isfinite(curve.curvature).all()):
        raise CurveError("non-finite sample data")
    if curve.length <= 0.0:
        raise CurveError("non-positive arc length")
    total_turn = float(np.mean(curve.curvature)) * curve.length
    if abs(total_turn + TWO_PI) > TOTAL_TURN_ATOL:
        if abs(total_turn - TWO_PI) < 1e-2:
            raise OrientationError(
                "loop is clockwise (total signed curvature +2*pi); refusing to flip"
            )
        raise CurveError(
            f"total signed curvature {total_turn:.6g} differs from -2*pi; "
            "not a simple CCW loop"
        )
    if curve.closure_residual > CLOSURE_RTOL * curve.length:
        raise ClosureError(
            f"closure residual {curve.closure_residual:.3e} exceeds "
            f"{CLOSURE_RTOL:g} * L",
            curve.closure_residual,
        )
    if curve.area <= 0.0:
        raise CurveError(f"non-positive enclosed area {curve.area:.6g}")


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------


def _finalize(length, positions, tangent_angle, curvature, interp, closure_residual):
    area = _green_area(positions, length)
    return LoopCurve(
        length=length,
        positions=positions,
        tangent_angle=tangent_angle,
        curvature=curvature,
        area=area,
        closure_residual=closure_residual,
        interp=interp,
    )


def _green_area(positions, length):
    """Area by the Green quadrature (1/2) closed-integral (x y' - y x') ds."""
    x, y = positions[:, 0], positions[:, 1]
    return float(0.5 * np.mean(x * derivative(y, length) - y * derivative(x, length)) * length)


def from_samples(points, m=1024, interp="fourier"):
    """Build a LoopCurve from points tracing a closed CCW curve.

    Parameters
    ----------
    points : (n, 2) array_like
        Vertices along the loop, in order.  A repeated closing point is
        dropped.  The polygon must be simple and counter-clockwise.
    m : int
        Number of uniform arc-length samples of the result.
    interp : {"fourier", "spline"}
        Differentiation backend for tangent/curvature: trigonometric
        interpolation of the resampled positions (default, spectral for
        smooth loops) or a periodic cubic spline (cross-check fallback).

    Notes
    -----
    The input points are first interpolated by a periodic quintic spline in
    chord-length parameter; arc length is accumulated by per-interval
    Gauss-Legendre quadrature and inverted by vectorized Newton iteration,
    so the resampling itself does not limit the curvature accuracy.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise CurveError("points must be an (n, 2) array")
    if pts.shape[0] > 1 and np.allclose(pts[0], pts[-1], atol=1e-12 * _span(pts)):
        pts = pts[:-1]
    keep = np.ones(len(pts), dtype=bool)
    keep[1:] = np.any(np.abs(np.diff(pts, axis=0)) > 1e-14 * _span(pts), axis=1)
    pts = pts[keep]
    if len(np.unique(pts, axis=0)) < MIN_SAMPLES:
        raise CurveError(f"need at least {MIN_SAMPLES} distinct points")
    ring = shapely.LinearRing(pts)
    if not ring.is_simple:
        raise SelfIntersectionError("input polygon intersects itself")
    if not ring.is_ccw:
        raise OrientationError("input polygon is clockwise; refusing to flip")
    if interp not in ("fourier", "spline"):
        raise CurveError(f"unknown interp mode {interp!r}")

    closed = np.vstack([pts, pts[:1]])
    chord = np.hypot(*np.diff(closed, axis=0).T)
    t_knots = np.concatenate([[0.0], np.cumsum(chord)])
    spline = make_interp_spline(t_knots, closed, k=5, bc_type="periodic", axis=0)
    dspline = spline.derivative()

    # arc length per knot interval by 10-point Gauss-Legendre
    gl_x, gl_w = np.polynomial.legendre.leggauss(10)
    mid = 0.5 * (t_knots[:-1] + t_knots[1:])
    half = 0.5 * np.diff(t_knots)
    nodes = mid[:, None] + half[:, None] * gl_x[None, :]
    speeds = np.hypot(*dspline(nodes.ravel()).T).reshape(nodes.shape)
    seg_len = half * (speeds @ gl_w)
    s_knots = np.concatenate([[0.0], np.cumsum(seg_len)])
    length = float(s_knots[-1])

    targets = np.arange(m) * (length / m)
    t_vals = np.interp(targets, s_knots, t_knots)
    for _ in range(6):  # Newton on s(t) - target, machine-accurate in ~3 steps
        j = np.clip(np.searchsorted(t_knots, t_vals, side="right") - 1, 0, len(half) - 1)
        mid_j = 0.5 * (t_knots[j] + t_vals)
        half_j = 0.5 * (t_vals - t_knots[j])
        part_nodes = mid_j[:, None] + half_j[:, None] * gl_x[None, :]
        part_speed = np.hypot(*dspline(part_nodes.ravel()).T).reshape(part_nodes.shape)
        s_here = s_knots[j] + half_j * (part_speed @ gl_w)
        speed_here = np.hypot(*dspline(t_vals).T)
        step = (s_here - targets) / speed_here
        t_vals = t_vals - step
        if np.max(np.abs(step)) < 1e-15 * t_knots[-1]:
            break

    positions = spline(t_vals)
    if interp == "fourier":
        xp = derivative(positions[:, 0], length)
        yp = derivative(positions[:, 1], length)
        xpp = derivative(positions[:, 0], length, order=2)
        ypp = derivative(positions[:, 1], length, order=2)
        speed = np.hypot(xp, yp)
        curvature = (xpp * yp - ypp * xp) / speed**3
        angle = np.unwrap(np.arctan2(yp, xp))
    else:
        # differentiate the tangent angle rather than the position twice:
        # the periodic-spline trapezoid identity then makes the total
        # signed curvature exactly -2*pi
        s_grid = targets
        csp = CubicSpline(
            np.concatenate([s_grid, [length]]),
            np.vstack([positions, positions[:1]]),
            bc_type="periodic",
            axis=0,
        )
        xp, yp = csp(s_grid, 1).T
        angle = np.unwrap(np.arctan2(yp, xp))
        angle_osc = angle - TWO_PI * s_grid / length
        hsp = CubicSpline(
            np.concatenate([s_grid, [length]]),
            np.concatenate([angle_osc, angle_osc[:1]]),
            bc_type="periodic",
        )
        curvature = -(TWO_PI / length + hsp(s_grid, 1))
    mean_tx = np.mean(np.cos(angle))
    mean_ty = np.mean(np.sin(angle))
    residual = length * float(np.hypot(mean_tx, mean_ty))
    return _finalize(length, positions, angle, curvature, interp, residual)


def _span(pts):
    return max(float(np.ptp(pts[:, 0])), float(np.ptp(pts[:, 1])), 1e-300)


def from_curvature(gamma, length, base_point=(0.0, 0.0), base_angle=0.0, m=1024,
                   closure_rtol=1e-6):
    """Reconstruct a loop from its signed curvature.

    The tangent angle is H(s) = base_angle - cumulative integral of gamma,
    and positions follow by integrating (cos H, sin H) from `base_point`.
    Both integrals are spectral, so a consistent (gamma, length) pair closes
    to near machine precision.

    Parameters
    ----------
    gamma : callable or (m,) array_like
        Signed curvature on [0, L), either a function of arc length or
        samples on the uniform grid.
    length : float
        Arc length L of the loop.
    closure_rtol : float
        Raise ClosureError when |Gamma(L) - Gamma(0)| > closure_rtol * L.

    Raises
    ------
    ClosureError
        If the curve does not close (inconsistent gamma and L).  The
        residual is attached to the exception.
    OrientationError
        If gamma describes a clockwise loop.
    """
    if length <= 0.0:
        raise CurveError("length must be positive")
    s_grid = np.arange(m) * (length / m)
    g = np.asarray(gamma(s_grid) if callable(gamma) else gamma, dtype=float)
    if g.shape != (m,):
        raise CurveError("gamma samples must match the requested grid size")

    mean_g, osc_g = mean_and_oscillation(g, length)
    turn = -mean_g * length  # total tangent winding
    if abs(turn - TWO_PI) > 1e-8 * TWO_PI:
        if abs(turn + TWO_PI) <= 1e-8 * TWO_PI:
            raise OrientationError(
                "curvature describes a clockwise loop (total turning -2*pi)"
            )
        # tangent does not come back to itself: integrate naively to report
        # how badly the endpoints miss
        angle = base_angle - (mean_g * s_grid + osc_g)
        ds = length / m
        dx = np.sum(np.cos(angle)) * ds
        dy = np.sum(np.sin(angle)) * ds
        residual = float(np.hypot(dx, dy))
        raise ClosureError(
            f"total turning {turn:.6g} is not 2*pi; endpoint mismatch "
            f"~{residual:.3g} (L and gamma are inconsistent)",
            residual,
        )

    angle = base_angle - (mean_g * s_grid + osc_g)
    tx, ty = np.cos(angle), np.sin(angle)
    mean_x, osc_x = mean_and_oscillation(tx, length)
    mean_y, osc_y = mean_and_oscillation(ty, length)
    residual = float(length * np.hypot(mean_x, mean_y))
    if residual > closure_rtol * length:
        raise ClosureError(
            f"closure residual {residual:.3e} exceeds {closure_rtol:g} * L",
            residual,
        )
    positions = np.column_stack(
        (
            base_point[0] + mean_x * s_grid + osc_x,
            base_point[1] + mean_y * s_grid + osc_y,
        )
    )
    return _finalize(length, positions, angle, g, "fourier", residual)


# ---------------------------------------------------------------------------
# presets
# ---------------------------------------------------------------------------


def circle(radius=1.0, m=1024):
    """CCW circle of given radius centered at the origin (gamma = -1/R)."""
    if radius <= 0.0:
        raise CurveError("radius must be positive")
    length = TWO_PI * radius
    s = np.arange(m) * (length / m)
    theta = s / radius
    positions = radius * np.column_stack((np.cos(theta), np.sin(theta)))
    angle = theta + 0.5 * np.pi
    curvature = np.full(m, -1.0 / radius)
    return _finalize(length, positions, angle, curvature, "fourier", 0.0)


def ellipse(a=2.0, b=1.0, m=1024):
    """CCW ellipse x = a cos t, y = b sin t, resampled by true arc length.

    The arc-length map uses the incomplete elliptic integral, so sample
    positions and curvature carry no interpolation error.
    """
    from scipy.optimize import brentq
    from scipy.special import ellipe, ellipeinc

    if a <= 0.0 or b <= 0.0:
        raise CurveError("semi-axes must be positive")
    if a < b:
        a, b = b, a  # parametrization below assumes a >= b; shape is the same
    par = 1.0 - (b / a) ** 2

    def arc(t):
        # integral of sqrt(a^2 sin^2 + b^2 cos^2) from 0 to t
        return a * (ellipe(par) - ellipeinc(0.5 * np.pi - t, par))

    length = float(4.0 * a * ellipe(par))
    targets = np.arange(m) * (length / m)
    t_vals = np.empty(m)
    t_vals[0] = 0.0
    lo = 0.0
    for i in range(1, m):
        hi = min(lo + 4.0 * (targets[i] - targets[i - 1]) / b, TWO_PI)
        while arc(hi) < targets[i] and hi < TWO_PI:
            hi = min(hi + 0.5, TWO_PI)
        t_vals[i] = brentq(lambda t: arc(t) - targets[i], lo, hi, xtol=1e-14)
        lo = t_vals[i]
    positions = np.column_stack((a * np.cos(t_vals), b * np.sin(t_vals)))
    speed = np.hypot(a * np.sin(t_vals), b * np.cos(t_vals))
    angle = np.unwrap(np.arctan2(b * np.cos(t_vals), -a * np.sin(t_vals)))
    curvature = -a * b / speed**3
    return _finalize(length, positions, angle, curvature, "fourier", 0.0)


def wiggly_loop(amplitude=0.3, lobes=3, m=1024):
    """Perturbed circle gamma(s) = -1 + amplitude*cos(lobes * 2*pi*s/L).

    The length is found by a one-parameter search: closure of the tangent
    requires the total turning -(integral of gamma) to equal 2*pi, which
    pins L; position closure then follows because the curvature harmonics
    (lobes >= 2) cannot feed the tangent's first harmonic.
    """
    from scipy.optimize import brentq

    if lobes < 2:
        raise CurveError("lobes must be >= 2 for a closed perturbed circle")
    if not 0.0 <= amplitude < 1.0:
        raise CurveError("amplitude must lie in [0, 1)")

    def gamma_for(L):
        return lambda s: -1.0 + amplitude * np.cos(lobes * TWO_PI * s / L)

    def turning_defect(L):
        s = np.arange(m) * (L / m)
        return -np.mean(gamma_for(L)(s)) * L - TWO_PI

    length = brentq(turning_defect, 0.5 * TWO_PI, 2.0 * TWO_PI, xtol=1e-13)
    return from_curvature(gamma_for(length), length, base_point=(1.0, 0.0),
                          base_angle=0.5 * np.pi, m=m)


# ---------------------------------------------------------------------------
# derived quantities
# ---------------------------------------------------------------------------


def enclosed_area(curve):
    """Enclosed area |Omega|, with an internal consistency cross-check.

    Two independent quadratures must agree to 1e-8 relative: the Green
    integral of the sampled positions (derivatives re-computed from the
    positions) and the accumulated flux phase at unit field, which uses the
    stored tangent instead.  Disagreement signals a broken parametrization.
    """
    area_green = _green_area(curve.positions, curve.length)
    area_phase = flux_phase(curve, 1.0, curve.length)
    if abs(area_green - area_phase) > 1e-8 * abs(area_green):
        raise ConvergenceError(
            f"area quadratures disagree: {area_green!r} vs {area_phase!r}"
        )
    return area_green


def flux_phase(curve, B, s):
    """Accumulated gauge phase T(s) = -(B/2) * integral of (y x' - x y').

    T(L) equals B * |Omega| (Green's theorem), which is checked against the
    stored area to 1e-8 relative whenever s reaches L.
    """
    s_arr = np.atleast_1d(np.asarray(s, dtype=float))
    if np.any(s_arr < -1e-12) or np.any(s_arr > curve.length * (1 + 1e-12)):
        raise PreconditionError("arc length outside [0, L]")
    key = "phase_parts"
    if key not in curve._cache:
        x, y = curve.positions[:, 0], curve.positions[:, 1]
        integrand = y * np.cos(curve.tangent_angle) - x * np.sin(curve.tangent_angle)
        mean, osc = mean_and_oscillation(integrand, curve.length)
        curve._cache[key] = (mean, FourierSeries(osc, curve.length))
    mean, osc_series = curve._cache[key]
    out = -0.5 * B * (mean * s_arr + osc_series(s_arr))
    return float(out[0]) if np.asarray(s).ndim == 0 else out


def strip_point(curve, s, u):
    """Map strip coordinates (s, u) to the plane: Gamma(s) + u * n(s).

    u > 0 is the inward side of a CCW loop.  The Jacobian 1 + u*gamma(s)
    must stay positive.
    """
    s_arr = np.atleast_1d(np.asarray(s, dtype=float))
    u_arr = np.broadcast_to(np.asarray(u, dtype=float), s_arr.shape)
    jac = 1.0 + u_arr * curve.curvature_at(s_arr)
    if np.any(jac <= 0.0):
        raise PreconditionError("strip coordinate outside the valid tube: 1 + u*gamma <= 0")
    pos = np.atleast_2d(curve.position(s_arr))
    h = curve.tangent_angle_at(s_arr)
    out = pos + u_arr[..., None] * np.column_stack((-np.sin(h), np.cos(h)))
    return out[0] if np.asarray(s).ndim == 0 else out


def injectivity_halfwidth(curve, a_max, resolution=None, n_s=256, n_u=9):
    """Largest validated strip half-width a <= a_max (numerical test).

    Bisection at the given resolution (default 1e-3 * L) over two grid
    criteria: the Jacobian 1 + u*gamma stays positive for |u| <= a, and no
    two strip images come closer than half the planar distance their strip
    coordinates imply (pairwise scan with the tangential metric shrunk by
    the worst Jacobian).  This is a numerical stand-in for the true
    injectivity half-width and can overestimate it between grid points.
    """
    if a_max <= 0.0:
        raise PreconditionError("a_max must be positive")
    if resolution is None:
        resolution = 1e-3 * curve.length
    stride = max(1, curve.n_samples // n_s)
    s_grid = curve.arc_grid[::stride]
    gam = curve.curvature[::stride]
    pos = curve.positions[::stride]
    h = curve.tangent_angle[::stride]
    normals = np.column_stack((-np.sin(h), np.cos(h)))
    length = curve.length

    ss = np.tile(s_grid, n_u)
    s_pair = pdist(ss[:, None], metric="cityblock")
    s_pair = np.minimum(s_pair, length - s_pair)

    def admissible(a):
        u_grid = np.linspace(-a, a, n_u)
        jac = 1.0 + np.multiply.outer(u_grid, gam)
        if np.min(jac) <= 0.0:
            return False
        jac_min = float(np.min(jac))
        points = (pos[None, :, :] + u_grid[:, None, None] * normals[None, :, :])
        points = points.reshape(-1, 2)
        image_dist = pdist(points)
        uu = np.repeat(u_grid, len(s_grid))
        du_pair = pdist(uu[:, None], metric="cityblock")
        implied = np.hypot(jac_min * s_pair, du_pair)
        return not np.any(image_dist < 0.5 * implied - 1e-12)

    lo, hi = 0.0, float(a_max)
    if admissible(hi):
        return hi
    while hi - lo > resolution:
        mid = 0.5 * (lo + hi)
        if admissible(mid):
            lo = mid
        else:
            hi = mid
    if lo < resolution:
        raise ConvergenceError(
            "no admissible strip half-width above the search resolution"
        )
    return lo


def effective_potential(curve, s, u):
    """Curvature-induced potential V(s, u) of the strip coordinates.

    V = (1/2)(1+u*g)^-3 u g'' - (5/4)(1+u*g)^-4 u^2 g'^2 - (1/4)(1+u*g)^-2 g^2

    with g = gamma(s); derivatives of gamma come from spectral
    differentiation of the stored samples.  At u = 0 this is exactly
    -gamma^2/4.
    """
    s_arr = np.atleast_1d(np.asarray(s, dtype=float))
    u_arr = np.broadcast_to(np.asarray(u, dtype=float), s_arr.shape)
    g = curve.curvature_at(s_arr)
    g1 = curve.curvature_at(s_arr, nu=1)
    g2 = curve.curvature_at(s_arr, nu=2)
    jac = 1.0 + u_arr * g
    if np.any(jac <= 0.0):
        raise PreconditionError("evaluation outside the strip: 1 + u*gamma <= 0")
    out = (
        0.5 * jac**-3 * u_arr * g2
        - 1.25 * jac**-4 * u_arr**2 * g1**2
        - 0.25 * jac**-2 * g**2
    )
    return float(out[0]) if np.asarray(s).ndim == 0 else out
