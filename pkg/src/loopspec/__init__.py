"""loopspec: spectra and persistent currents of leaky quantum loops.

A numerical laboratory for a charged particle in the plane, confined to a
smooth loop by a strong attractive delta interaction and threaded by a
homogeneous magnetic field.  The package computes

* loop geometry in arc-length form (curvature, strip coordinates,
  enclosed area, flux phases),
* the flux-twisted one-dimensional comparison spectrum mu_n(B) and the
  persistent currents -d mu_n / d phi,
* transverse delta-well levels with proven enclosures,
* two-sided brackets tau(-)_j <= lambda_j <= tau(+)_j for the full 2D
  eigenvalues, built from separated bound operators,
* the direct 2D spectrum on a truncated grid (Peierls phases, deposited
  delta line, Richardson refinement),
* independent oracles (free ring, circle closed forms, Bessel delta ring).

Units: hbar = c = 2m = 1; the flux quantum corresponds to
B * |Omega| = 2*pi.
"""

__version__ = "0.1.0"

from .bracketing import (
    BracketConstants,
    BracketInterval,
    bracket,
    bracket_constants,
    canonical_halfwidth,
    count_guarantee,
    linearity_fit,
    momentum_coupling,
    u_operator_spectrum,
    w_potential,
)
from .comparison import (
    ComparisonSpectrum,
    SweepResult,
    fd_mu_spectrum,
    mu_spectrum,
    persistent_current,
    ring_hamiltonian,
    sweep,
)
from .errors import (
    ClosureError,
    ConvergenceError,
    CrossingWarning,
    CurveError,
    EllipticityError,
    LoopSpecError,
    NoBoundStateError,
    OrientationError,
    PreconditionError,
    SelfIntersectionError,
)
from .geometry import (
    LoopCurve,
    circle,
    effective_potential,
    ellipse,
    enclosed_area,
    flux_phase,
    from_curvature,
    from_samples,
    injectivity_halfwidth,
    strip_point,
    wiggly_loop,
)
from .oracles import (
    BesselPair,
    bessel_ik,
    circle_delta_2d,
    circle_delta_2d_levels,
    ideal_ring,
    mu_circle,
)
from .solver2d import (
    Grid2D,
    RefineResult,
    Spectrum2D,
    box_for,
    grid_hamiltonian,
    lowest_eigenvalues,
    refine,
    solve,
)
from .transverse import (
    TransverseEigenvalue,
    transverse_fd_oracle,
    zeta_minus,
    zeta_plus,
)
