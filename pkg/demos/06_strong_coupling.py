"""Strong-coupling approach of the 2D levels to the ring prediction.

As the delta coupling grows, lambda_1(B, beta) + beta^2/4 approaches the
flux-twisted ring level mu_1(B).  The residual e_1 is tiny, so it is
measured with the oracle-anchored field difference: the zero-field level
is known exactly (Bessel oracle) and the field shift is computed on one
grid, where the deposition error cancels in the difference.

Runtime: a couple of minutes (the finest grids are ~360k nodes).
"""

import numpy as np

from loopspec import Grid2D, circle, circle_delta_2d, mu_spectrum, solve

ring = circle(1.0, 2048)

runs = {
    5.0: ((-3.0, 3.0, -3.0, 3.0), 0.01),
    10.0: ((-2.0, 2.0, -2.0, 2.0), 0.005),
    20.0: ((-1.5, 1.5, -1.5, 1.5), 0.005),
}

print(f"{'beta':>6} {'lambda_1(B=1)':>16} {'e_1':>10} {'e_1*beta/ln(beta)':>18}")
values = {}
for beta, (box, h) in runs.items():
    grid = Grid2D(box, h)
    shift = (
        solve(ring, 1.0, beta, grid, 2).eigenvalues[0]
        - solve(ring, 0.0, beta, grid, 2).eigenvalues[0]
    )
    lam = circle_delta_2d(1.0, beta, 0) + shift
    mu1 = mu_spectrum(ring, 1.0, n_eigs=1).eigenvalues[0]
    e1 = lam + beta**2 / 4.0 - mu1
    values[beta] = e1
    print(f"{beta:6.0f} {lam:16.6f} {e1:+10.5f} {e1 * beta / np.log(beta):18.5f}")

print("\nratios e_1(2 beta)/e_1(beta):",
      f"{values[10.0] / values[5.0]:.2f}, {values[20.0] / values[10.0]:.2f}")
print("the residual shrinks much faster than the beta^-1 ln(beta) guarantee;")
print("the normalized column would be flat if the bound were saturated.")
