"""Independent closed-form and semi-analytic references.

These back-check the main solvers without sharing any machinery with them:
the free ring levels, the exact twisted-ring spectrum of a circle, and the
radially separated delta-ring eigenvalues at zero field.  The modified
Bessel functions are implemented here from scratch (series, a cosh-integral
quadrature and Wronskian-normalized recurrences) so the oracle does not
depend on the solver stack.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import ConvergenceError, NoBoundStateError, PreconditionError

_M_MAX = 10
_X_MAX = 100.0


def ideal_ring(length, n, phi):
    """Energy level of a free particle on a ring threaded by flux.

    E_n(phi) = (2*pi/L)^2 (n + phi)^2 in units hbar = c = 2m = 1, so the
    level currents -dE/dphi depend linearly on the flux.
    """
    if length <= 0.0:
        raise PreconditionError("length must be positive")
    return (2.0 * math.pi / length) ** 2 * (n + phi) ** 2


def mu_circle(radius, B, j):
    """j-th twisted-ring eigenvalue of a circle, counted with multiplicity.

    For constant curvature the flux-reduced operator is diagonal in Fourier
    modes: the spectrum is {((2*pi*k - B*pi*R^2)/(2*pi*R))^2 - 1/(4R^2)}
    over integer k, sorted ascending.
    """
    if radius <= 0.0 or j < 1:
        raise PreconditionError("need radius > 0 and j >= 1")
    flux = B * radius * radius / 2.0  # B|Omega| / (2*pi)
    half_window = j + int(abs(flux)) + 2
    k = np.arange(-half_window, half_window + 1)
    vals = np.sort(((k - flux) / radius) ** 2 - 0.25 / radius**2)
    return float(vals[j - 1])


# ---------------------------------------------------------------------------
# modified Bessel functions I_m, K_m  (integer order 0..10, 0 < x <= 100)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BesselPair:
    """I_m(x), K_m(x) with derivatives, Wronskian-checked at construction."""

    order: int
    argument: float
    i_value: float
    k_value: float
    i_prime: float
    k_prime: float

    @property
    def wronskian_defect(self):
        """x * (K I' - K' I) - 1; should be ~1e-13 or below."""
        x = self.argument
        return x * (self.k_value * self.i_prime - self.k_prime * self.i_value) - 1.0


def _i_series(m, x):
    """Power series for I_m; all terms positive, no cancellation."""
    half = 0.5 * x
    term = half**m / math.factorial(m)
    total = term
    x2 = half * half
    for j in range(1, 500):
        term *= x2 / (j * (j + m))
        total += term
        if term < 1e-18 * total:
            return total
    raise ConvergenceError(f"I_{m}({x}) series did not converge")


def _k01_quadrature(x):
    """K_0(x), K_1(x) from the cosh integral, composite Gauss-Legendre.

    K_m(x) = integral over t >= 0 of exp(-x cosh t) cosh(m t); the integrand
    is analytic and decays double-exponentially, so a few dozen panels reach
    machine precision uniformly on the supported x range.
    """
    upper = math.acosh(1.0 + 760.0 / x)
    nodes, weights = np.polynomial.legendre.leggauss(24)
    edges = np.linspace(0.0, upper, 33)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1] - edges[0])
    t = (mid[:, None] + half * nodes[None, :]).ravel()
    w = half * np.tile(weights, mid.size)
    decay = np.exp(-x * np.cosh(t))
    k0 = float(np.dot(w, decay))
    k1 = float(np.dot(w, decay * np.cosh(t)))
    return k0, k1


def bessel_ik(m, x):
    """Modified Bessel pair (I_m, K_m) for integer 0 <= m <= 10, 0 < x <= 100.

    K comes from the cosh-integral quadrature at orders 0, 1 and the stable
    upward recurrence above; I comes from Miller's downward recurrence,
    normalized through the cross Wronskian K_m I_{m+1} + K_{m+1} I_m = 1/x
    against the independently computed K values.
    """
    if not (isinstance(m, (int, np.integer)) and 0 <= m <= _M_MAX):
        raise PreconditionError(f"order must be an integer in [0, {_M_MAX}]")
    if not (0.0 < x <= _X_MAX):
        raise PreconditionError(f"argument must lie in (0, {_X_MAX}]")
    x = float(x)

    k_vals = np.empty(_M_MAX + 2)
    k_vals[0], k_vals[1] = _k01_quadrature(x)
    for j in range(1, _M_MAX + 1):
        k_vals[j + 1] = k_vals[j - 1] + (2.0 * j / x) * k_vals[j]

    top = int(max(m, x) + 25)
    raw = np.zeros(top + 2)
    raw[top + 1] = 0.0
    raw[top] = 1e-150  # headroom on both sides: K can be ~1e-45, growth ~1e110
    for j in range(top, 0, -1):
        raw[j - 1] = raw[j + 1] + (2.0 * j / x) * raw[j]
        if raw[j - 1] > 1e250:
            raw[j - 1 :] *= 1e-250
    scale = 1.0 / (x * (k_vals[0] * raw[1] + k_vals[1] * raw[0]))
    i_vals = raw[: _M_MAX + 2] * scale

    i_prime = i_vals[1] if m == 0 else 0.5 * (i_vals[m - 1] + i_vals[m + 1])
    k_prime = -k_vals[1] if m == 0 else -0.5 * (k_vals[m - 1] + k_vals[m + 1])
    pair = BesselPair(int(m), x, float(i_vals[m]), float(k_vals[m]),
                      float(i_prime), float(k_prime))
    if abs(pair.wronskian_defect) > 1e-12:
        raise ConvergenceError(
            f"Wronskian defect {pair.wronskian_defect:.2e} at m={m}, x={x}"
        )
    return pair


def _ik_product(m, x):
    """I_m(x) * K_m(x) with the inline Wronskian verification."""
    return bessel_ik(m, x).i_value * bessel_ik(m, x).k_value


def circle_delta_2d(radius, beta, m):
    """Exact bound-state energy of the 2D delta ring at zero field.

    Separating polar coordinates, the radial solution is I_m(kappa r)
    inside and K_m(kappa r) outside; continuity plus the delta jump of
    strength beta at r = radius and the Wronskian reduce to the scalar
    condition

        beta * radius * I_m(kappa*radius) * K_m(kappa*radius) = 1,

    and the eigenvalue is -kappa^2.  Each angular sector m >= 1 is doubly
    degenerate.

    Raises NoBoundStateError when the sector has no root (the product
    I_m K_m at the origin starts below 1/(beta*radius)).
    """
    if radius <= 0.0 or beta <= 0.0:
        raise PreconditionError("radius and beta must be positive")
    if not (isinstance(m, (int, np.integer)) and 0 <= m <= _M_MAX):
        raise PreconditionError(f"angular order must be an integer in [0, {_M_MAX}]")

    def matching(kappa):
        return beta * radius * _ik_product(int(m), kappa * radius) - 1.0

    lo = 1e-8 / radius
    if m >= 1 and beta * radius / (2.0 * m) <= 1.0 + 1e-14:
        raise NoBoundStateError(
            f"no bound state in sector m={m}: beta*R/(2m) = "
            f"{beta * radius / (2 * m):.6g} <= 1"
        )
    if matching(lo) <= 0.0:
        raise NoBoundStateError(f"no sign change in sector m={m}")
    hi = max(beta, 2.0 / radius)
    while matching(hi) > 0.0:
        hi *= 2.0
        if hi * radius > _X_MAX:
            raise ConvergenceError("root bracket exceeds the Bessel range")
    kappa = brentq(matching, lo, hi, xtol=1e-300, rtol=1e-13)
    return -kappa * kappa


def circle_delta_2d_levels(radius, beta, count):
    """First `count` delta-ring levels at zero field, sector union.

    The full spectrum is the union over angular sectors m; every m >= 1
    contributes a doubly degenerate level while its sector still binds.
    """
    levels = [circle_delta_2d(radius, beta, 0)]
    for m in range(1, _M_MAX + 1):
        if len(levels) >= count:
            break
        try:
            val = circle_delta_2d(radius, beta, m)
        except NoBoundStateError:
            break
        levels += [val, val]
    if len(levels) < count:
        raise NoBoundStateError(
            f"only {len(levels)} bound levels exist below sector {_M_MAX}"
        )
    return np.sort(np.asarray(levels[:count]))
