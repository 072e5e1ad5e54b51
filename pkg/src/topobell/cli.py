"""Command-line front end.

Subcommands::

    scan       S versus composite phase (plot-ready columns)
    chsh       S at four settings, closed form vs projector, self-checked
    eigs       interaction Hamiltonian, eigenpairs and analytic fidelities
    mc         Monte Carlo counts against analytic probabilities
    optimize   numerically maximized S next to the reference-angle S

Output is CSV (header row, 15 significant digits) or JSON lines. Exit codes:
0 success, 2 invalid arguments, 3 self-check failure.

Examples::

    topobell scan --model ac --phase-min 0 --phase-max 3.14159265 --steps 3
    topobell chsh --model ac --phase 0.42
    topobell eigs --effect ac --E 2 --mu 0.5 --s -1
    topobell mc --model ac --phase pi/2 --alpha pi/2 --beta pi/2 --samples 1000000 --seed 7
    topobell optimize --model ab --phase-min 0 --phase-max 6 --steps 8
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import re
import sys

import numpy as np

from . import chsh, dirac, montecarlo, phases
from .chsh import PAPER_ANGLES, ChshSettings
from .spinor import eig_hermitian_2x2, fidelity

logger = logging.getLogger("topobell")

SELF_CHECK_TOL = 1e-9

_NUM = r"[0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?"
_PI_EXPR = re.compile(rf"^\s*([-+]?)\s*({_NUM})?\s*\*?\s*pi\s*(?:/\s*({_NUM}))?\s*$")


def radians(text: str) -> float:
    """Parse a radian value: a float, or ``pi`` expressions like ``3*pi/4``."""
    t = text.strip().lower()
    if "deg" in t or "°" in t:
        raise argparse.ArgumentTypeError(f"{text!r}: angles are radians only; degree input is rejected")
    try:
        value = float(t)
    except ValueError:
        m = _PI_EXPR.match(t)
        if not m:
            raise argparse.ArgumentTypeError(f"{text!r} is not a radian value") from None
        sign, coef, denom = m.groups()
        value = (-1.0 if sign == "-" else 1.0) * float(coef or 1.0) * math.pi / float(denom or 1.0)
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"{text!r} is not finite")
    return value


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _finite(text: str) -> float:
    v = float(text)
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError("must be finite")
    return v


def fmt(x) -> str:
    if isinstance(x, str):
        return x
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x)).lower()
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x) + 0.0, ".15g")  # + 0.0 turns -0.0 into 0.0


class Writer:
    """Single output sink for either CSV or JSON lines; column order is fixed."""

    def __init__(self, stream, columns, fmt_name: str):
        self.columns = list(columns)
        self.format = fmt_name
        self.stream = stream
        if fmt_name == "csv":
            self._csv = csv.writer(stream, lineterminator="\n")
            self._csv.writerow(self.columns)

    def row(self, values):
        values = list(values)
        if len(values) != len(self.columns):
            raise ValueError("row width does not match header")
        if self.format == "csv":
            self._csv.writerow([fmt(v) for v in values])
        else:
            obj = {col: _json_value(v) for col, v in zip(self.columns, values)}
            self.stream.write(json.dumps(obj) + "\n")


def _json_value(v):
    # Same 15-digit rounding as the CSV path so both formats carry equal numbers.
    if isinstance(v, str):
        return v
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    return float(fmt(v))


# -- model flags ------------------------------------------------------------

_FACTOR_FLAGS = {
    "ab": ("e_charge", "Phi"),
    "dual-ab": ("g_charge", "Phi_E"),
    "ac": ("mu", "lambda_E"),
    "hmw": ("d_moment", "lambda_B"),
}
_FLAG_NAMES = {"e_charge": "--e", "Phi": "--Phi", "g_charge": "--g", "Phi_E": "--Phi-E",
               "mu": "--mu", "lambda_E": "--lambda", "d_moment": "--d", "lambda_B": "--lambda-B"}


def add_model_flags(p: argparse.ArgumentParser, with_phase: bool = True):
    g = p.add_argument_group("phase model")
    g.add_argument("--model", choices=sorted(phases.MODEL_TYPES), default="ac")
    g.add_argument("--arm", choices=["left", "right"], default="left",
                   help="particle that encircles the flux/charge line")
    if with_phase:
        g.add_argument("--phase", type=radians, default=None,
                       help="composite phase: e*Phi (ab), g*Phi_E (dual-ab), 2*mu*lambda (ac), "
                            "2*d*lambda_B (hmw), delta (berry)")
    g.add_argument("--e", dest="e_charge", type=_finite, help="charge (ab)")
    g.add_argument("--Phi", dest="Phi", type=_finite, help="enclosed flux (ab)")
    g.add_argument("--g", dest="g_charge", type=_finite, help="magnetic charge (dual-ab)")
    g.add_argument("--Phi-E", dest="Phi_E", type=_finite, help="electric flux (dual-ab)")
    g.add_argument("--mu", dest="mu", type=_finite, help="magnetic dipole moment (ac)")
    g.add_argument("--lambda", dest="lambda_E", type=_finite, help="line charge density (ac)")
    g.add_argument("--d", dest="d_moment", type=_finite, help="electric dipole moment (hmw)")
    g.add_argument("--lambda-B", dest="lambda_B", type=_finite, help="magnetic line density (hmw)")


def _arm(args) -> phases.Arm:
    return phases.Arm(args.arm)


def build_model(args, phase: float | None = None) -> phases.PhaseModel:
    """Model from CLI flags; a composite phase beats separate physical factors."""
    names = _FACTOR_FLAGS.get(args.model, ())
    given = {n: getattr(args, n, None) for n in names if getattr(args, n, None) is not None}
    if phase is None:
        phase = getattr(args, "phase", None)
    if phase is not None:
        if given:
            logger.warning("composite phase given; ignoring %s", ", ".join(_FLAG_NAMES[k] for k in given))
        return phases.model_from_phase(args.model, phase)
    if given:
        cls = phases.MODEL_TYPES[args.model]
        return cls(**given)
    return phases.model_from_phase(args.model, 0.0)


def add_angle_flags(p: argparse.ArgumentParser):
    g = p.add_argument_group("settings (radians)")
    g.add_argument("--angles", choices=["paper", "custom"], default=None,
                   help="paper = (0, pi/4, 3pi/4, pi/2) (default); custom takes the four flags below, "
                        "and is implied when they are given")
    g.add_argument("--alpha", type=radians)
    g.add_argument("--beta", type=radians)
    g.add_argument("--alpha-p", dest="alpha_p", type=radians)
    g.add_argument("--beta-p", dest="beta_p", type=radians)


def settings_from(args, parser) -> ChshSettings:
    vals = [args.alpha, args.beta, args.alpha_p, args.beta_p]
    if args.angles is None:
        args.angles = "paper" if all(v is None for v in vals) else "custom"
    if args.angles == "paper":
        if any(v is not None for v in vals):
            parser.error("angle flags need --angles custom")
        return PAPER_ANGLES
    if any(v is None for v in vals):
        parser.error("--angles custom needs --alpha --beta --alpha-p --beta-p")
    return ChshSettings(*vals)


# -- commands ---------------------------------------------------------------

def cmd_scan(args, parser, out) -> int:
    if args.steps < 2:
        parser.error("--steps must be >= 2")
    if not args.phase_min < args.phase_max:
        parser.error("--phase-min must be < --phase-max")
    settings = settings_from(args, parser)
    cols = ["phase", "s_closed_form", "s_projector"] + (["s_optimized"] if args.optimized else [])
    w = Writer(out, cols, args.format)
    for ph in np.linspace(args.phase_min, args.phase_max, args.steps):
        model = phases.model_from_phase(args.model, float(ph))
        delta = phases.relative_phase(model)
        if args.angles == "paper":
            closed = float(chsh.s_paper_curve(delta))
        else:
            closed = chsh.s_closed_form(settings, delta)
        proj = chsh.evaluate(model, settings, _arm(args)).s_value
        row = [float(ph), closed, proj]
        if args.optimized:
            row.append(chsh.maximize_s(model, _arm(args), args.grid, args.refine).s_value)
        w.row(row)
    return 0


def cmd_chsh(args, parser, out) -> int:
    settings = settings_from(args, parser)
    model = build_model(args)
    closed = chsh.evaluate(model, settings, _arm(args), chsh.Method.CLOSED_FORM)
    proj = chsh.evaluate(model, settings, _arm(args), chsh.Method.PROJECTOR)
    diff = proj.s_value - closed.s_value
    w = Writer(out, ["model", "phase", "alpha", "beta", "alpha_p", "beta_p",
                     "s_closed_form", "s_projector", "difference"], args.format)
    w.row([args.model, model.phase, *settings.as_tuple(), closed.s_value, proj.s_value, diff])
    if abs(diff) > SELF_CHECK_TOL:
        print(f"self-check failed: |S_projector - S_closed_form| = {abs(diff):.3e} > {SELF_CHECK_TOL:g}",
              file=sys.stderr)
        return 3
    return 0


def cmd_eigs(args, parser, out) -> int:
    cfg = dirac.PlanarDiracConfig(s=args.s)
    try:
        if args.effect == "ab":
            field = dirac.AbFieldConfig(A_mag=args.A, theta=args.theta, e_charge=args.e)
            h = dirac.h_ab(field, cfg)
            analytic = dirac.ab_eigenpairs(field, cfg)
        else:
            if args.Ex is not None or args.Ey is not None:
                field = dirac.AcFieldConfig.from_field(args.Ex or 0.0, args.Ey or 0.0, mu=args.mu)
            else:
                field = dirac.AcFieldConfig(E_mag=args.E, theta=args.theta, mu=args.mu)
            h = dirac.h_ac(field, cfg)
            analytic = dirac.ac_eigenpairs(field, cfg)
    except ValueError as exc:
        parser.error(str(exc))
    numeric = eig_hermitian_2x2(h)
    degenerate = abs(numeric[0][0] - numeric[1][0]) <= 1e-12
    h_cols = [f"h{i}{j}_{part}" for i in range(2) for j in range(2) for part in ("re", "im")]
    h_vals = [getattr(h[i, j], part) for i in range(2) for j in range(2) for part in ("real", "imag")]
    w = Writer(out, ["effect", "s", "index", "eigenvalue", "analytic_eigenvalue", "v0_re", "v0_im",
                     "v1_re", "v1_im", "analytic_state", "fidelity", "degenerate", *h_cols], args.format)
    for k, ((lam, vec), (alam, avec, label)) in enumerate(zip(numeric, analytic)):
        # any vector is an eigenvector of a degenerate 2x2 Hermitian matrix
        fid = 1.0 if degenerate else fidelity(vec, avec)
        w.row([args.effect, args.s, k, lam, alam, vec[0].real, vec[0].imag, vec[1].real, vec[1].imag,
               label, fid, degenerate, *h_vals])
    return 0


def cmd_mc(args, parser, out) -> int:
    model = build_model(args)
    angles = (args.alpha, args.beta, args.alpha_p, args.beta_p)
    if args.chsh:
        if all(v is None for v in angles):
            settings = PAPER_ANGLES
        elif any(v is None for v in angles):
            parser.error("--chsh needs all four angles or none")
        else:
            settings = ChshSettings(*angles)
    else:
        if args.alpha_p is not None or args.beta_p is not None:
            parser.error("--alpha-p/--beta-p need --chsh")
        if args.s_estimate:
            parser.error("--s-estimate needs --chsh")
        settings = (args.alpha or 0.0, args.beta or 0.0)
    cfg = montecarlo.SampleConfig(seed=args.seed, n_samples=args.samples, settings=settings,
                                  model=model, arm=_arm(args))
    if args.s_estimate:
        est = montecarlo.empirical_s(cfg)
        analytic = chsh.s_function(phases.evolved_singlet(model, _arm(args)), settings)
        z = (est.value - analytic) / est.std_error if est.std_error > 0 else 0.0
        w = Writer(out, ["phase", "samples_per_pair", "seed", "s_empirical", "std_error", "s_analytic", "z_score"],
                   args.format)
        w.row([model.phase, args.samples, args.seed, est.value, est.std_error, analytic, z])
        return 0
    counts = montecarlo.sample_outcomes(cfg)
    w = Writer(out, ["pair", "alpha", "beta", "outcome", "count", "frequency", "probability",
                     "std_error", "z_score"], args.format)
    freq, se, z = counts.frequencies, counts.std_errors, counts.z_scores
    for k, (a, b) in enumerate(counts.pairs):
        for j, name in enumerate(montecarlo.OUTCOMES):
            w.row([k, a, b, name, int(counts.counts[k, j]), freq[k, j], counts.probabilities[k, j], se[k, j], z[k, j]])
    return 0


def cmd_optimize(args, parser, out) -> int:
    if args.grid < 8:
        parser.error("--grid must be >= 8")
    if args.phase is not None and args.steps is not None:
        parser.error("give either --phase or a --phase-min/--phase-max/--steps sweep")
    if args.steps is not None:
        if args.steps < 2 or not args.phase_min < args.phase_max:
            parser.error("sweep needs --steps >= 2 and --phase-min < --phase-max")
        grid = [float(p) for p in np.linspace(args.phase_min, args.phase_max, args.steps)]
        models = [phases.model_from_phase(args.model, p) for p in grid]
    else:
        models = [build_model(args)]
    w = Writer(out, ["phase", "s_optimized", "alpha", "beta", "alpha_p", "beta_p", "s_paper"], args.format)
    for model in models:
        rep = chsh.maximize_s(model, _arm(args), args.grid, args.refine)
        paper = chsh.evaluate(model, PAPER_ANGLES, _arm(args)).s_value
        w.row([model.phase, rep.s_value, *rep.settings.as_tuple(), paper])
    return 0


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    common.add_argument("-v", "--verbose", action="store_true")
    parser = argparse.ArgumentParser(
        prog="topobell",
        description="Topological phases on entangled spin singlets: CHSH statistics and optimization.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=__doc__.split("Examples::", 1)[1],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scan", parents=[common], help="S versus composite phase")
    add_model_flags(p, with_phase=False)
    p.add_argument("--phase-min", type=radians, default=0.0)
    p.add_argument("--phase-max", type=radians, default=math.pi)
    p.add_argument("--steps", type=int, default=101)
    add_angle_flags(p)
    p.add_argument("--optimized", action="store_true", help="add an s_optimized column")
    p.add_argument("--grid", type=int, default=24)
    p.add_argument("--refine", type=_positive_int, default=40)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("chsh", parents=[common], help="S at four settings, closed form and projector")
    add_model_flags(p)
    add_angle_flags(p)
    p.set_defaults(func=cmd_chsh)

    p = sub.add_parser("eigs", parents=[common], help="interaction Hamiltonian eigenstructure")
    p.add_argument("--effect", choices=["ab", "ac"], required=True)
    p.add_argument("--A", type=_finite, default=1.0, help="gauge potential magnitude (ab)")
    p.add_argument("--e", type=_finite, default=1.0, help="charge (ab)")
    p.add_argument("--E", type=_finite, default=1.0, help="redefined field magnitude E~ (ac)")
    p.add_argument("--Ex", type=_finite, help="in-plane E_x (ac); overrides --E/--theta")
    p.add_argument("--Ey", type=_finite, help="in-plane E_y (ac); overrides --E/--theta")
    p.add_argument("--mu", type=_finite, default=1.0, help="magnetic dipole moment (ac)")
    p.add_argument("--theta", type=radians, default=0.0)
    p.add_argument("--s", type=int, choices=[1, -1], default=1)
    p.set_defaults(func=cmd_eigs)

    p = sub.add_parser("mc", parents=[common], help="Monte Carlo outcome sampling")
    add_model_flags(p)
    p.add_argument("--alpha", type=radians)
    p.add_argument("--beta", type=radians)
    p.add_argument("--alpha-p", dest="alpha_p", type=radians)
    p.add_argument("--beta-p", dest="beta_p", type=radians)
    p.add_argument("--chsh", action="store_true", help="sample all four S-function pairs")
    p.add_argument("--s-estimate", action="store_true", help="with --chsh: emit the empirical S only")
    p.add_argument("--samples", type=_positive_int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_mc)

    p = sub.add_parser("optimize", parents=[common], help="maximize S over the four angles")
    add_model_flags(p)
    p.add_argument("--phase-min", type=radians, default=0.0)
    p.add_argument("--phase-max", type=radians, default=math.pi)
    p.add_argument("--steps", type=int)
    p.add_argument("--grid", type=int, default=24)
    p.add_argument("--refine", type=_positive_int, default=40)
    p.set_defaults(func=cmd_optimize)
    return parser


def main(argv=None, out=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    if getattr(args, "seed", None) is not None and not 0 <= args.seed < 2**64:
        parser.error("--seed must be an unsigned 64-bit integer")
    try:
        return args.func(args, parser, out or sys.stdout)
    except ValueError as exc:
        parser.error(str(exc))


if __name__ == "__main__":
    sys.exit(main())
