"""Command-line experiment driver.

Every subcommand reads a JSON config (--config), runs deterministically
(seed recorded), and writes CSV with a commented header echoing the exact
configuration and the package version, so outputs are reproducible
byte-for-byte.  Exit codes: 0 success, 2 precondition violation,
3 numerical non-convergence.

Subcommands: geometry | spectrum | current | transverse | bracket |
solve2d | asymptotics | oracle.
"""

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__, bracketing, comparison, oracles, solver2d, transverse
from .config import ExperimentConfig
from .errors import ConvergenceError, PreconditionError

EXIT_PRECONDITION = 2
EXIT_CONVERGENCE = 3


def _fmt(value):
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.17g}"
    return str(value)


def _write_csv(out, command, config, columns, rows, footer=()):
    lines = [
        f"# loopspec {__version__}",
        f"# command: {command}",
        f"# config: {config.echo()}",
        ",".join(columns),
    ]
    lines += [",".join(_fmt(v) for v in row) for row in rows]
    lines += [f"# {note}" for note in footer]
    text = "\n".join(lines) + "\n"
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _grid(config, key, scale=1.0):
    spec = config.require(key)
    if isinstance(spec, list):
        return np.asarray(spec, dtype=float) * scale
    if isinstance(spec, dict):
        return np.linspace(spec["start"], spec["stop"], int(spec["count"])) * scale
    raise PreconditionError(f"'{key}' must be a list or a start/stop/count object")


def _parallel_map(fn, items, jobs):
    if jobs <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


# -- subcommands -------------------------------------------------------------


def cmd_geometry(config, out, jobs, seed):
    curve = config.build_curve()
    s = curve.arc_grid
    rows = [
        (si, xi, yi, hi, gi)
        for si, (xi, yi), hi, gi in zip(
            s, curve.positions, curve.tangent_angle, curve.curvature
        )
    ]
    footer = [
        f"length: {_fmt(curve.length)}",
        f"area: {_fmt(curve.area)}",
        f"closure_residual: {_fmt(curve.closure_residual)}",
        f"total_signed_curvature: {_fmt(float(np.mean(curve.curvature) * curve.length))}",
        f"gamma_max: {_fmt(curve.gamma_max)}",
    ]
    _write_csv(out, "geometry", config, ["s", "x", "y", "H", "gamma"], rows, footer)


def _spectrum_rows(curve, b_grid, n_modes, n_eigs, dphi, jobs):
    import warnings

    def one(b):
        spec = comparison.mu_spectrum(curve, b, n_modes, n_eigs)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            cur = [
                comparison.persistent_current(curve, j + 1, b, dphi, n_modes)
                for j in range(n_eigs)
            ]
        return spec, cur

    results = _parallel_map(one, list(b_grid), jobs)
    rows = []
    flagged = 0
    for b, (spec, cur) in zip(b_grid, results):
        flagged += 0 if spec.converged else 1
        rows.append((b, spec.flux, *spec.eigenvalues, *cur))
    return rows, flagged


def cmd_spectrum(config, out, jobs, seed):
    curve = config.build_curve()
    b_grid = _grid(config, "B_grid")
    n_modes = int(config.get("n_modes", comparison.DEFAULT_MODES))
    n_eigs = int(config.get("n_eigs", 3))
    dphi = float(config.get("dphi", 1e-4))
    rows, flagged = _spectrum_rows(curve, b_grid, n_modes, n_eigs, dphi, jobs)
    cols = (
        ["B", "phi"]
        + [f"mu_{j + 1}" for j in range(n_eigs)]
        + [f"I_{j + 1}" for j in range(n_eigs)]
    )
    footer = [f"unconverged_points: {flagged}"] if flagged else ()
    _write_csv(out, "spectrum", config, cols, rows, footer)
    if flagged:
        raise ConvergenceError(f"{flagged} grid points failed the doubling test")


def cmd_current(config, out, jobs, seed):
    curve = config.build_curve()
    phi_grid = _grid(config, "phi_grid")
    b_grid = phi_grid * (2.0 * np.pi / curve.area)
    n_modes = int(config.get("n_modes", comparison.DEFAULT_MODES))
    n_eigs = int(config.get("n_eigs", 1))
    dphi = float(config.get("dphi", 1e-4))
    rows, flagged = _spectrum_rows(curve, b_grid, n_modes, n_eigs, dphi, jobs)
    rows = [(phi, *row) for phi, row in zip(phi_grid, rows)]
    mu1 = np.array([row[3] for row in rows])
    cols = (
        ["phi", "B", "phi_check"]
        + [f"mu_{j + 1}" for j in range(n_eigs)]
        + [f"I_{j + 1}" for j in range(n_eigs)]
    )
    footer = [f"mu_1_spread: {_fmt(float(mu1.max() - mu1.min()))}"]
    if flagged:
        footer.append(f"unconverged_points: {flagged}")
    _write_csv(out, "current", config, cols, rows, footer)
    if flagged:
        raise ConvergenceError(f"{flagged} grid points failed the doubling test")


def cmd_transverse(config, out, jobs, seed):
    a_values = np.asarray(config.require("a_values"), dtype=float)
    beta_values = np.asarray(config.require("beta_values"), dtype=float)
    gamma_plus = float(config.get("gamma_plus", 0.0))
    mesh = int(config.get("oracle_mesh", transverse.DEFAULT_ORACLE_MESH))
    rows = []
    for a in a_values:
        for beta in beta_values:
            zp = zm = None
            if beta * a > 8.0 / 3.0:
                zp = transverse.zeta_plus(a, beta, oracle_mesh=None)
            if a * beta > 8.0 and beta > 8.0 * gamma_plus / 3.0:
                zm = transverse.zeta_minus(a, beta, gamma_plus, oracle_mesh=None)
            fd_p = transverse.transverse_fd_oracle(a, beta, 0.0, "+", mesh)
            fd_m = transverse.transverse_fd_oracle(a, beta, gamma_plus, "-", mesh)
            rows.append(
                (
                    a, beta, gamma_plus,
                    zp.zeta if zp else "nan",
                    zm.zeta if zm else "nan",
                    *(zp.paper_bounds if zp else ("nan", "nan")),
                    *(zm.paper_bounds if zm else ("nan", "nan")),
                    fd_p[0], fd_m[0],
                )
            )
    cols = [
        "a", "beta", "gamma_plus", "zeta_plus", "zeta_minus",
        "zeta_plus_lower", "zeta_plus_upper", "zeta_minus_lower",
        "zeta_minus_upper", "fd_plus", "fd_minus",
    ]
    _write_csv(out, "transverse", config, cols, rows)


def cmd_bracket(config, out, jobs, seed):
    curve = config.build_curve()
    b = float(config.get("B", 0.0))
    beta_grid = _grid(config, "beta_grid")
    n = int(config.get("n", 1))
    a_override = config.get("a")
    join = bool(config.get("join_solver2d", False))
    rows = []
    footer = []
    for beta in beta_grid:
        intervals = bracketing.bracket(curve, b, float(beta), n, a=a_override)
        consts = bracketing.bracket_constants(curve, b, intervals[0].a_used)
        lam = eps = None
        if join:
            h_seq = config.require("h_sequence")
            res = solver2d.refine(curve, b, float(beta), h_seq, k=n,
                                  box=_box_from(config, curve, beta, h_seq),
                                  seed=seed)
            lam, eps = res.eigenvalues, res.eps_disc
        for iv in intervals:
            row = [
                b, beta, iv.a_used, iv.j, iv.tau_minus, iv.tau_plus,
                iv.zeta_minus, iv.zeta_plus, iv.mu_minus, iv.mu_plus,
                consts.n_bound, consts.m_bound, iv.preconds_ok,
            ]
            if join:
                contained = (
                    iv.tau_minus - eps[iv.j - 1]
                    <= lam[iv.j - 1]
                    <= iv.tau_plus + eps[iv.j - 1]
                )
                row += [lam[iv.j - 1], eps[iv.j - 1], contained]
            rows.append(tuple(row))
    cols = [
        "B", "beta", "a", "j", "tau_minus", "tau_plus", "zeta_minus",
        "zeta_plus", "mu_minus", "mu_plus", "N_B", "M_B", "preconds_ok",
    ]
    if join:
        cols += ["lambda", "eps_disc", "contained"]
    _write_csv(out, "bracket", config, cols, rows, footer)


def _box_from(config, curve, beta, h_seq):
    box = config.get("box")
    if box is not None:
        return tuple(box)
    return solver2d.box_for(curve, float(beta), float(max(h_seq)))


def cmd_solve2d(config, out, jobs, seed):
    curve = config.build_curve() if config.curve_spec else None
    b = float(config.get("B", 0.0))
    beta = float(config.get("beta", 0.0))
    k = int(config.get("k", 4))
    shift = config.get("shift")
    h_seq = config.get("h_sequence")
    if h_seq is None:
        h_seq = [config.require("h")]
    box = config.get("box")
    if box is None:
        box = solver2d.box_for(curve, beta, float(max(h_seq)))
    rows = []
    footer = []
    for h in h_seq:
        grid = solver2d.Grid2D(tuple(box), float(h))
        spec = solver2d.solve(curve, b, beta, grid, k, shift=shift, seed=seed)
        rows.append(
            (
                b, beta, h, *box, *spec.eigenvalues, *spec.residuals,
                spec.deposited_length,
            )
        )
    if len(h_seq) >= 3:
        res = solver2d.refine(curve, b, beta, h_seq, k, box=tuple(box), seed=seed)
        footer.append(
            "extrapolated: "
            + " ".join(_fmt(v) for v in res.eigenvalues)
        )
        footer.append("orders: " + " ".join(_fmt(v) for v in res.orders))
        footer.append("eps_disc: " + " ".join(_fmt(v) for v in res.eps_disc))
    cols = (
        ["B", "beta", "h", "x0", "x1", "y0", "y1"]
        + [f"lambda_{j + 1}" for j in range(k)]
        + [f"residual_{j + 1}" for j in range(k)]
        + ["deposited_length"]
    )
    _write_csv(out, "solve2d", config, cols, rows, footer)


def cmd_asymptotics(config, out, jobs, seed):
    curve = config.build_curve()
    b = float(config.get("B", 0.0))
    beta_grid = _grid(config, "beta_grid")
    n = int(config.get("n", 1))
    use_oracle = bool(config.get("oracle_check", False))
    rows = []
    for beta in beta_grid:
        mu = comparison.mu_spectrum(curve, b, n_eigs=n).eigenvalues
        if use_oracle:
            if b != 0.0:
                raise PreconditionError("oracle_check is only valid at B = 0")
            radius = curve.length / (2.0 * np.pi)
            lam = oracles.circle_delta_2d_levels(radius, float(beta), n)
            eps = np.zeros(n)
            orders = np.zeros(n)
        else:
            h_seq = config.require("h_sequence")
            res = solver2d.refine(
                curve, b, float(beta), h_seq, k=n,
                box=_box_from(config, curve, beta, h_seq), seed=seed,
            )
            lam, eps, orders = res.eigenvalues, res.eps_disc, res.orders
        for j in range(n):
            e_val = lam[j] + beta**2 / 4.0 - mu[j]
            rows.append(
                (
                    b, beta, j + 1, lam[j], mu[j], e_val,
                    e_val * beta / np.log(beta), eps[j], orders[j],
                )
            )
    cols = ["B", "beta", "n", "lambda", "mu", "e", "e_normalized", "eps_disc", "order"]
    _write_csv(out, "asymptotics", config, cols, rows)


def cmd_oracle(config, out, jobs, seed):
    radius = float(config.get("radius", 1.0))
    beta = float(config.get("beta", 5.0))
    m_max = int(config.get("m_max", 5))
    rows = []
    for m in range(m_max + 1):
        try:
            energy = oracles.circle_delta_2d(radius, beta, m)
            kappa = float(np.sqrt(-energy))
            rows.append((m, kappa, energy))
        except oracles.NoBoundStateError:
            rows.append((m, "nan", "nan"))
    _write_csv(out, "oracle", config, ["m", "kappa", "eigenvalue"], rows)


COMMANDS = {
    "geometry": cmd_geometry,
    "spectrum": cmd_spectrum,
    "current": cmd_current,
    "transverse": cmd_transverse,
    "bracket": cmd_bracket,
    "solve2d": cmd_solve2d,
    "asymptotics": cmd_asymptotics,
    "oracle": cmd_oracle,
}


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="loopspec",
        description="Spectra, currents and eigenvalue brackets of leaky magnetic loops",
    )
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--config", required=True, help="JSON configuration file")
    parser.add_argument("--out", default=None, help="output CSV path (default stdout)")
    parser.add_argument("--jobs", type=int, default=1, help="worker threads for grids")
    parser.add_argument("--seed", type=int, default=0, help="solver starting-vector seed")
    args = parser.parse_args(argv)

    try:
        config = ExperimentConfig.load(args.config)
        COMMANDS[args.command](config, args.out, args.jobs, args.seed)
    except PreconditionError as err:
        print(f"precondition violated: {err}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ConvergenceError as err:
        print(f"numerical non-convergence: {err}", file=sys.stderr)
        return EXIT_CONVERGENCE
    return 0


if __name__ == "__main__":
    sys.exit(main())
