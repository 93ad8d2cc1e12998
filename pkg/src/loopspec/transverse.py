"""Cross-section modes: a delta well on (-a, a) with hard or Robin ends.

These one-dimensional operators carry the leading strong-coupling energy
-beta^2/4 of the leaky loop.  Two variants bracket the full problem:

  kind '+': -f'' with f(+-a) = 0 (Dirichlet ends) and the delta jump
            f'(0+) - f'(0-) = -beta f(0); unique negative eigenvalue
            zeta_plus in (-beta^2/4, -beta^2/4 + 2 beta^2 exp(-beta a / 2))
            provided beta*a > 8/3.

  kind '-': -f'' with attractive Robin ends f'(a) = g+ f(a),
            f'(-a) = -g+ f(-a) (g+ = curvature bound) and the same delta
            jump; unique negative eigenvalue zeta_minus in
            (-beta^2/4 - (2205/16) beta^2 exp(-beta a / 2), -beta^2/4)
            provided a*beta > 8 and beta > 8 g+ / 3.

The transcendental matching equations below are derived from the even
bound mode (the decay ansatz cosh/sinh of kappa(a - |u|)); they are not
taken on faith: every root is gated behind an independent second-order
finite-difference oracle, so an algebra slip cannot silently corrupt the
downstream eigenvalue brackets.  Outside the stated parameter regions the
module refuses rather than extrapolates.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.optimize import brentq

from .errors import ConvergenceError, PreconditionError

DEFAULT_ORACLE_MESH = 801


@dataclass(frozen=True)
class TransverseEigenvalue:
    """Negative eigenvalue of a transverse delta operator.

    kappa is the decay rate of the bound mode, zeta = -kappa^2 its energy;
    second_eigenvalue is the next level from the finite-difference oracle
    (a witness that only one negative eigenvalue exists), None if the
    oracle was skipped.
    """

    a: float
    beta: float
    gamma_plus: float
    kind: str
    kappa: float
    zeta: float
    second_eigenvalue: float | None = None

    @property
    def paper_bounds(self):
        """The proven enclosure (lower, upper) for this kind."""
        base = -0.25 * self.beta**2
        slack = self.beta**2 * np.exp(-0.5 * self.beta * self.a)
        if self.kind == "+":
            return (base, base + 2.0 * slack)
        return (base - (2205.0 / 16.0) * slack, base)


def _bracketed_root(fn, lo, hi, what):
    flo, fhi = fn(lo), fn(hi)
    # tanh saturation can park the root on an endpoint to machine precision
    if fhi == 0.0:
        return hi
    if flo == 0.0:
        return lo
    if not (flo < 0.0 < fhi or fhi < 0.0 < flo):
        raise ConvergenceError(
            f"{what}: no sign change on [{lo:.6g}, {hi:.6g}] "
            f"(f = {flo:.3g}, {fhi:.3g})"
        )
    return brentq(fn, lo, hi, xtol=1e-300, rtol=1e-13)


def zeta_plus(a, beta, oracle_mesh=DEFAULT_ORACLE_MESH):
    """Ground state of the Dirichlet-ended delta well (kind '+').

    The even mode sinh(kappa(a - |u|)) gives the matching condition
    2*kappa = beta * tanh(kappa a) with a unique root in (0, beta/2).
    Requires beta*a > 8/3 (uniqueness region); refuses otherwise.
    """
    if beta * a <= 8.0 / 3.0:
        raise PreconditionError(
            f"beta*a = {beta * a:.4g} <= 8/3: single-bound-state regime "
            "not guaranteed; refusing"
        )

    def matching(kappa):
        return beta * np.tanh(kappa * a) - 2.0 * kappa

    kappa = _bracketed_root(matching, 1e-9 * beta, 0.5 * beta, "zeta_plus")
    result = TransverseEigenvalue(
        a=float(a), beta=float(beta), gamma_plus=0.0, kind="+",
        kappa=kappa, zeta=-kappa * kappa,
        second_eigenvalue=_oracle_second(a, beta, 0.0, "+", oracle_mesh),
    )
    _check_enclosure(result)
    return result


def zeta_minus(a, beta, gamma_plus, oracle_mesh=DEFAULT_ORACLE_MESH):
    """Ground state of the Robin-ended delta well (kind '-').

    The even mode gives tanh(kappa a)(2 kappa^2 + beta g+) =
    kappa (beta + 2 g+), whose relevant root lies in
    (beta/2, beta/2 + g+ + 1/a); for g+ = 0 this reduces to
    2*kappa*tanh(kappa a) = beta (Neumann ends).  Requires a*beta > 8 and
    beta > 8 g+ / 3.
    """
    if gamma_plus < 0.0:
        raise PreconditionError("gamma_plus must be >= 0")
    if a * beta <= 8.0:
        raise PreconditionError(
            f"a*beta = {a * beta:.4g} <= 8: refusing (outside the proven regime)"
        )
    if beta <= 8.0 * gamma_plus / 3.0:
        raise PreconditionError(
            f"beta = {beta:.4g} <= 8*gamma_plus/3 = {8 * gamma_plus / 3:.4g}: refusing"
        )

    def matching(kappa):
        return np.tanh(kappa * a) * (2.0 * kappa**2 + beta * gamma_plus) - kappa * (
            beta + 2.0 * gamma_plus
        )

    kappa = _bracketed_root(
        matching, 0.5 * beta, 0.5 * beta + gamma_plus + 1.0 / a, "zeta_minus"
    )
    result = TransverseEigenvalue(
        a=float(a), beta=float(beta), gamma_plus=float(gamma_plus), kind="-",
        kappa=kappa, zeta=-kappa * kappa,
        second_eigenvalue=_oracle_second(a, beta, gamma_plus, "-", oracle_mesh),
    )
    _check_enclosure(result)
    return result


def _check_enclosure(result):
    lo, hi = result.paper_bounds
    tol = 1e-12 * result.beta**2  # endpoint roots from tanh saturation
    lo, hi = lo - tol, hi + tol
    if not lo < result.zeta < hi:
        raise ConvergenceError(
            f"zeta{result.kind} = {result.zeta!r} escaped its proven "
            f"enclosure ({lo!r}, {hi!r}); matching equation or root finder is wrong"
        )
    if result.second_eigenvalue is not None and result.second_eigenvalue < -1e-8:
        raise ConvergenceError(
            f"oracle second eigenvalue {result.second_eigenvalue:.3e} < 0: "
            "more than one bound state, uniqueness assumption violated"
        )


def _oracle_second(a, beta, gamma_plus, kind, mesh):
    if mesh is None:
        return None
    return transverse_fd_oracle(a, beta, gamma_plus, kind, mesh)[1]


def transverse_fd_oracle(a, beta, gamma_plus, kind, mesh_points=DEFAULT_ORACLE_MESH):
    """Two lowest eigenvalues by symmetric second differences; O(h^2).

    The delta is deposited as -beta/h on the center node (which the odd
    mesh guarantees sits at u = 0).  Dirichlet drops the end nodes; Robin
    ends use the ghost-node elimination, symmetrized by half-weighting the
    boundary rows (a similarity transform restores a plain symmetric
    tridiagonal problem).
    """
    n = int(mesh_points)
    if n < 201 or n % 2 == 0:
        raise PreconditionError("mesh_points must be odd and >= 201")
    if kind not in ("+", "-"):
        raise PreconditionError("kind must be '+' or '-'")
    h = 2.0 * a / (n - 1)
    center = (n - 1) // 2

    if kind == "+":
        size = n - 2
        diag = np.full(size, 2.0 / h**2)
        diag[center - 1] -= beta / h
        off = np.full(size - 1, -1.0 / h**2)
    else:
        size = n
        diag = np.full(size, 2.0 / h**2)
        diag[center] -= beta / h
        off = np.full(size - 1, -1.0 / h**2)
        # ghost elimination f'(+-a) = -+ g+ f(+-a), then D^{-1/2} A D^{-1/2}
        # with D = diag(1/2, 1, ..., 1, 1/2)
        diag[0] = 2.0 / h**2 - 2.0 * gamma_plus / h
        diag[-1] = 2.0 / h**2 - 2.0 * gamma_plus / h
        off[0] = -np.sqrt(2.0) / h**2
        off[-1] = -np.sqrt(2.0) / h**2
    vals = eigh_tridiagonal(
        diag, off, eigvals_only=True, select="i", select_range=(0, 1)
    )
    return float(vals[0]), float(vals[1])
