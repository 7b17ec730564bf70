"""Command-line front end.

    sectorexp bound --alpha1 .. --alpha2 .. --theta1 .. --theta2 .. --a1p .. --a1m .. --a2p .. --a2m ..
    sectorexp transform --function exp:1,0,1,0 --omega1 -3,0 --omega2 -3,0
    sectorexp invert --function exp:1,0,1,0 --z1 1,0 --z2 1,0
    sectorexp member --function exp:1,0,1,0 --theta1 0 --theta2 0 --nu1 1 --nu2 1
    sectorexp indicator --function exp:1,0,1,0 --coord 1 --theta 0.5
    sectorexp polya --a 2,0 --z 1,0 --radius 3
    sectorexp verify {sharpness,roundtrip,convexity,branch,polya} [--output results.csv]

Angles are radians, complex numbers ``re,im``. ``--config FILE`` reads
``key = value`` lines that act like the matching flags; explicit flags win.
Exit status: 0 success, 1 computation or verification failure, 2 bad input.
"""

from __future__ import annotations

import argparse
import cmath
import csv
import io
import json
import math
import re
import sys
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .errors import EvaluationOverflow, QuadratureError
from .functions import GrowthEnvelope, evaluate, from_id
from .geometry import SectorPair, build_lambda, corner_point, support_value
from .indicator import (GrowthGrid, convexity_bound, estimate_indicator_1d, membership_test,
                        verify_theorem)
from .inversion import (InversionPlan, default_plan, invert_2d_batch, invert_2d_deformed,
                        worker_count)
from .polya import borel_eval, borel_tail_bound, exponential_series, load_series, polya_reconstruct
from .quadrature import QuadratureConfig
from .transform import ConcatenatedLaplace, branch_consistency, branch_select, evaluate_m

QUARTER_PI = math.pi / 4
SUITES = ("sharpness", "roundtrip", "convexity", "branch", "polya")


class UsageError(ValueError):
    pass


def parse_complex(text: str) -> complex:
    parts = text.split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected 're,im', got {text!r}")
    try:
        return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 're,im', got {text!r}") from None


def parse_floats(text: str) -> list[float]:
    try:
        return [float(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


@dataclass(frozen=True)
class RunConfig:
    function: str = "exp:1,0,1,0"
    alpha1: float = QUARTER_PI
    alpha2: float = QUARTER_PI
    envelope: Optional[tuple] = None
    quadrature: QuadratureConfig = QuadratureConfig()
    output: Optional[str] = None
    fmt: str = "json"

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        slopes = (args.a1p, args.a1m, args.a2p, args.a2m)
        given = [s is not None for s in slopes]
        if any(given) and not all(given):
            raise UsageError("envelope overrides need all of --a1p --a1m --a2p --a2m")
        overrides = {k: getattr(args, k) for k in
                     ("rel_tol", "abs_tol", "panel_nodes", "max_panels", "tail_margin")
                     if getattr(args, k) is not None}
        quad = replace(QuadratureConfig(), **overrides)
        cfg = cls(args.function, args.alpha1, args.alpha2,
                  tuple(slopes) if all(given) else None, quad, args.output, args.format)
        cfg.sectors  # validate angles before any computation
        return cfg

    @property
    def sectors(self) -> SectorPair:
        return SectorPair(self.alpha1, self.alpha2)

    def model(self):
        f, env = from_id(self.function, self.sectors)
        if self.envelope is not None:
            env = GrowthEnvelope(*self.envelope, scale=env.scale, epsilon=env.epsilon)
        return f, env

    def transform(self) -> ConcatenatedLaplace:
        f, env = self.model()
        return ConcatenatedLaplace(f, env, self.quadrature)


def _cplx(z: complex) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def emit(result: dict, cfg_output: Optional[str], fmt: str):
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        flat = {k: (json.dumps(v) if isinstance(v, (dict, list)) else v) for k, v in result.items()}
        writer.writerow(flat.keys())
        writer.writerow(flat.values())
        text = buf.getvalue()
    else:
        text = json.dumps(result) + "\n"
    if cfg_output:
        Path(cfg_output).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands

def cmd_bound(args) -> int:
    cons = convexity_bound([args.alpha1, args.alpha2], [args.theta1, args.theta2],
                           [args.a1p, args.a2p], [args.a1m, args.a2m])
    emit({"C1": cons[0], "C2": cons[1]}, args.output, args.format)
    return 0


def cmd_transform(args) -> int:
    cfg = RunConfig.from_args(args)
    t = cfg.transform()
    signs = branch_select(t, args.omega1, args.omega2)
    value, err = evaluate_m(t, args.omega1, args.omega2, signs)
    emit({"function": cfg.function, "omega1": _cplx(args.omega1), "omega2": _cplx(args.omega2),
          "value": _cplx(value), "error": err, "branch": list(signs)}, cfg.output, cfg.fmt)
    return 0


def _plan(t: ConcatenatedLaplace, args, cfg: RunConfig) -> InversionPlan:
    plan = default_plan(t, args.z_min, cfg.quadrature)
    c1, c2 = plan.contour1, plan.contour2
    if args.vertex1 is not None:
        c1 = type(c1)(args.vertex1, c1.alpha, c1.type_bound)
    if args.vertex2 is not None:
        c2 = type(c2)(args.vertex2, c2.alpha, c2.type_bound)
    return InversionPlan(c1, c2, args.z_min, cfg.quadrature)


def cmd_invert(args) -> int:
    cfg = RunConfig.from_args(args)
    t = cfg.transform()
    plan = _plan(t, args, cfg)
    out = {"function": cfg.function, "z1": _cplx(args.z1), "z2": _cplx(args.z2)}
    if args.delta is None:
        value = complex(invert_2d_batch(t, plan, [args.z1], [args.z2])[0])
        out["contours"] = {"kind": "gamma", "vertex1": plan.contour1.vertex,
                           "vertex2": plan.contour2.vertex, "z_min": plan.z_min}
    else:
        env = t.envelope
        thetas = (cmath.phase(args.z1), cmath.phase(args.z2))
        cons = convexity_bound([cfg.alpha1, cfg.alpha2], thetas,
                               [env.a1_plus, env.a2_plus], [env.a1_minus, env.a2_minus])
        lam1 = build_lambda(plan.contour1, thetas[0], cons[0], args.delta)
        lam2 = build_lambda(plan.contour2, thetas[1], cons[1], args.delta)
        value, bound = invert_2d_deformed(t, lam1, lam2, args.z1, args.z2, args.z_min, cfg.quadrature)
        out["bound"] = bound
        out["contours"] = {"kind": "lambda", "vertex1": lam1.vertex, "vertex2": lam2.vertex,
                           "theta1": thetas[0], "theta2": thetas[1], "C1": cons[0], "C2": cons[1],
                           "delta": args.delta, "z_min": args.z_min}
    out["value"] = _cplx(value)
    try:
        exact = evaluate(t.source, args.z1, args.z2)
        out["exact"] = _cplx(exact)
        out["error"] = abs(value - exact)
    except EvaluationOverflow:
        pass
    emit(out, cfg.output, cfg.fmt)
    return 0


def _grid(args) -> GrowthGrid:
    return GrowthGrid(args.r0, args.ratio, args.count)


def cmd_member(args) -> int:
    cfg = RunConfig.from_args(args)
    f, _ = cfg.model()
    v = membership_test(f, (args.theta1, args.theta2), (args.nu1, args.nu2), _grid(args),
                        args.slope_tol)
    emit({"function": cfg.function, "theta": [args.theta1, args.theta2], "nu": [args.nu1, args.nu2],
          "accepted": v.accepted, "residual_slope": v.residual_slope,
          "residual_offset": v.residual_offset, "slope_tol": v.slope_tol}, cfg.output, cfg.fmt)
    return 0


def cmd_indicator(args) -> int:
    cfg = RunConfig.from_args(args)
    f, _ = cfg.model()
    other = args.fixed
    if args.coord == 1:
        def log_abs(r, th):
            return f.log_abs(r, th, abs(other), cmath.phase(other))
    else:
        def log_abs(r, th):
            return f.log_abs(abs(other), cmath.phase(other), r, th)
    value = estimate_indicator_1d(None, args.theta, _grid(args), log_abs=log_abs)
    emit({"function": cfg.function, "coord": args.coord, "theta": args.theta,
          "fixed": _cplx(other), "indicator": value}, cfg.output, cfg.fmt)
    return 0


def _series(args):
    if args.series:
        return load_series(args.series)
    return exponential_series(args.a, args.order)


def cmd_polya(args) -> int:
    s = _series(args)
    radius = args.radius if args.radius is not None else s.type_radius + 1.0
    quad = replace(QuadratureConfig(), **{k: getattr(args, k) for k in ("rel_tol", "abs_tol")
                                          if getattr(args, k) is not None})

    def g(w):
        return borel_eval(s, w)

    out = {"order": s.order, "type_radius": s.type_radius, "center": _cplx(args.center),
           "radius": radius}
    if args.omega is not None:
        out["borel"] = _cplx(borel_eval(s, args.omega))
        out["borel_tail"] = borel_tail_bound(s, args.omega)
    out["value"] = _cplx(polya_reconstruct(g, args.center, radius, args.z, quad))
    emit(out, args.output, args.format)
    return 0


# ---------------------------------------------------------------------------
# verification suites

@dataclass
class Case:
    case_id: str
    inputs: dict
    expected: object
    actual: object
    error: float
    passed: bool


def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x)).lower()
    if isinstance(x, complex):
        return f"{x.real!r}{x.imag:+.17g}j"
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return str(x)


def _numeric(case_id, inputs, expected, actual, tol, relative=False) -> Case:
    err = abs(actual - expected)
    if relative:
        err /= max(1.0, abs(expected))
    return Case(case_id, inputs, expected, actual, float(err), bool(err <= tol))


def _flag(case_id, inputs, expected: bool, actual: bool) -> Case:
    return Case(case_id, inputs, expected, actual, 0.0 if expected == actual else 1.0,
                expected == actual)


def suite_sharpness(args, cfg: RunConfig) -> list[Case]:
    q = QUARTER_PI
    a = math.sqrt(2) / 2
    sectors = SectorPair(q, q)
    f, env = from_id("exp:1,0,1,0", sectors)
    inputs = {"alpha": q, "theta": 0.0, "A": a}
    cons = convexity_bound([q, q], [0, 0], [a, a], [a, a])
    cases = [_numeric("C1", inputs, 1.0, cons[0], 1e-12),
             _numeric("C2", inputs, 1.0, cons[1], 1e-12),
             _numeric("C_corner", inputs, 1.0, support_value(corner_point(q, a, a), 0.0), 1e-12)]
    for nu, expect in (((1.0, 1.0), True), ((0.95, 1.0), False)):
        v = membership_test(f, (0.0, 0.0), nu)
        cases.append(_flag(f"member_{nu[0]}_{nu[1]}", {"nu1": nu[0], "nu2": nu[1]}, expect, v.accepted))
    rep = verify_theorem(f, env, (0.0, 0.0), constants=(0.9, 0.9))
    cases.append(_flag("deflated_rejected", {"C": 0.9}, False, rep.verified))
    t = ConcatenatedLaplace(f, env, cfg.quadrature)
    m, _ = evaluate_m(t, -3, -3)
    cases.append(_numeric("m_at_-3_-3", {"omega": -3.0}, -1 / (16 * math.pi ** 2), m, 1e-8, True))
    value = complex(invert_2d_batch(t, default_plan(t, cfg=cfg.quadrature), [1.0], [1.0])[0])
    cases.append(_numeric("invert_at_1_1", {"z": 1.0}, math.e ** 2, value, 1e-6, True))
    return cases


def suite_roundtrip(args, cfg: RunConfig) -> list[Case]:
    t = cfg.transform()
    plan = default_plan(t, cfg=cfg.quadrature)
    pts = [(r1, f1 * cfg.alpha1, r2, f2 * cfg.alpha2)
           for r1 in args.radii for f1 in args.angles for r2 in args.radii for f2 in args.angles]
    z1 = np.array([r1 * cmath.exp(1j * a1) for r1, a1, _, _ in pts])
    z2 = np.array([r2 * cmath.exp(1j * a2) for _, _, r2, a2 in pts])
    values = invert_2d_batch(t, plan, z1, z2)
    cases = []
    for k, ((r1, a1, r2, a2), v) in enumerate(zip(pts, values)):
        exact = evaluate(t.source, z1[k], z2[k])
        cases.append(_numeric(f"rt{k:03d}", {"r1": r1, "theta1": a1, "r2": r2, "theta2": a2},
                              exact, complex(v), args.tol, relative=True))
    return cases


def suite_convexity(args, cfg: RunConfig) -> list[Case]:
    f, env = cfg.model()
    rep = verify_theorem(f, env, (args.theta1, args.theta2), deflate=args.deflate)
    cases = []
    for eps, v in rep.rows:
        inputs = {"epsilon": eps, "nu1": rep.constants[0] + eps, "nu2": rep.constants[1] + eps}
        if eps > 0:
            cases.append(_flag(f"eps_{eps}", inputs, True, v.accepted))
        else:
            # the estimate makes no claim at eps = 0; recorded for information
            cases.append(Case(f"eps_{eps}", inputs, "any", v.accepted, 0.0, True))
    return cases


BRANCH_POINTS = ((-3, -3), (-3.5, -3), (-3, -4), (-4 + 0.5j, -3), (-4 - 0.5j, -3.5),
                 (-3.5 + 0.3j, -3.5 - 0.3j), (-5, -3), (-3, -5 + 1j), (-4 + 1j, -4 - 1j), (-6, -6))


def suite_branch(args, cfg: RunConfig) -> list[Case]:
    t = cfg.transform()
    cases = []
    for k, (w1, w2) in enumerate(BRANCH_POINTS):
        dev = branch_consistency(t, complex(w1), complex(w2))
        cases.append(Case(f"br{k:02d}", {"omega1": complex(w1), "omega2": complex(w2)},
                          0.0, dev, dev, dev <= args.tol))
    return cases


def suite_polya(args, cfg: RunConfig) -> list[Case]:
    s = exponential_series(2.0, 60)
    cases = []
    for w in (3, 3j, -3, 4 + 2j, 5):
        w = complex(w)
        cases.append(_numeric(f"borel_{_fmt(w)}", {"omega": w}, 1 / (w - 2), borel_eval(s, w), 1e-8))

    def g(w):
        return borel_eval(s, w)

    recon = {}
    for r in (2.5, 3.0, 5.0):
        recon[r] = polya_reconstruct(g, 0, r, 1.0, cfg.quadrature)
        cases.append(_numeric(f"recon_r{r}", {"radius": r, "z": 1.0}, math.e ** 2, recon[r], 1e-6, True))
    spread = max(abs(a - b) for a in recon.values() for b in recon.values())
    cases.append(Case("radius_spread", {"radius": "2.5|3|5"}, 0.0, spread, spread, spread <= 1e-8))
    cases.append(_numeric("pole_outside", {"radius": 1.0},
                          0.0, polya_reconstruct(lambda w: 1 / (w - 2), 0, 1.0, 1.0), 1e-10))
    return cases


SUITE_FUNCS = {"sharpness": suite_sharpness, "roundtrip": suite_roundtrip,
               "convexity": suite_convexity, "branch": suite_branch, "polya": suite_polya}


def cmd_verify(args) -> int:
    cfg = RunConfig.from_args(args)
    cases = SUITE_FUNCS[args.suite](args, cfg)
    input_keys = []
    for c in cases:
        input_keys += [k for k in c.inputs if k not in input_keys]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["case_id", *input_keys, "expected", "actual", "error", "pass"])
    for c in cases:
        writer.writerow([c.case_id, *(_fmt(c.inputs.get(k, "")) for k in input_keys),
                         _fmt(c.expected), _fmt(c.actual), _fmt(c.error), _fmt(c.passed)])
    passed = sum(c.passed for c in cases)
    summary = {"suite": args.suite, "function": cfg.function, "cases": len(cases),
               "passed": passed, "failed": len(cases) - passed,
               "max_error": max((c.error for c in cases), default=0.0),
               "pass": passed == len(cases), "output": cfg.output}
    if cfg.output:
        Path(cfg.output).write_text(buf.getvalue())
        sys.stdout.write(json.dumps(summary) + "\n")
    else:
        sys.stdout.write(buf.getvalue())
        sys.stderr.write(json.dumps(summary) + "\n")
    return 0 if summary["pass"] else 1


# ---------------------------------------------------------------------------
# parser

def _common(p: argparse.ArgumentParser, function: bool = True):
    if function:
        p.add_argument("--function", default="exp:1,0,1,0", help="catalog id")
        p.add_argument("--alpha1", type=float, default=QUARTER_PI)
        p.add_argument("--alpha2", type=float, default=QUARTER_PI)
        for name in ("a1p", "a1m", "a2p", "a2m"):
            p.add_argument(f"--{name}", type=float, help="envelope slope override")
    p.add_argument("--rel-tol", type=float)
    p.add_argument("--abs-tol", type=float)
    if function:
        p.add_argument("--panel-nodes", type=int)
        p.add_argument("--max-panels", type=int)
        p.add_argument("--tail-margin", type=float)
    p.add_argument("--output", help="write results here instead of standard output")
    p.add_argument("--format", choices=("json", "csv"), default="json")


def _grid_opts(p: argparse.ArgumentParser):
    p.add_argument("--r0", type=float, default=0.5)
    p.add_argument("--ratio", type=float, default=1.3)
    p.add_argument("--count", type=int, default=20)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sectorexp", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="trigonometric-convexity constants C1, C2")
    for name in ("alpha1", "alpha2", "theta1", "theta2", "a1p", "a1m", "a2p", "a2m"):
        p.add_argument(f"--{name}", type=float, required=True)
    p.add_argument("--output")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(handler=cmd_bound)

    p = sub.add_parser("transform", help="concatenated Laplace transform at one point")
    _common(p)
    p.add_argument("--omega1", type=parse_complex, required=True)
    p.add_argument("--omega2", type=parse_complex, required=True)
    p.set_defaults(handler=cmd_transform)

    p = sub.add_parser("invert", help="inversion integral at one point")
    _common(p)
    p.add_argument("--z1", type=parse_complex, required=True)
    p.add_argument("--z2", type=parse_complex, required=True)
    p.add_argument("--z-min", type=float, default=1e-2)
    p.add_argument("--vertex1", type=float)
    p.add_argument("--vertex2", type=float)
    p.add_argument("--delta", type=float, help="use cut contours with this chord offset")
    p.set_defaults(handler=cmd_invert)

    p = sub.add_parser("member", help="growth-set membership test")
    _common(p)
    _grid_opts(p)
    for name in ("theta1", "theta2", "nu1", "nu2"):
        p.add_argument(f"--{name}", type=float, required=True)
    p.add_argument("--slope-tol", type=float)
    p.set_defaults(handler=cmd_member)

    p = sub.add_parser("indicator", help="one-variable indicator along a ray")
    _common(p)
    _grid_opts(p)
    p.add_argument("--coord", type=int, choices=(1, 2), default=1)
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--fixed", type=parse_complex, default=0j, help="value of the other variable")
    p.set_defaults(handler=cmd_indicator)

    p = sub.add_parser("polya", help="Borel transform and circle reconstruction")
    _common(p, function=False)
    p.add_argument("--series", help="coefficient file, one 're im' per line")
    p.add_argument("--a", type=parse_complex, default=1 + 0j, help="use the series of exp(a z)")
    p.add_argument("--order", type=int, default=60)
    p.add_argument("--center", type=parse_complex, default=0j)
    p.add_argument("--radius", type=float)
    p.add_argument("--z", type=parse_complex, required=True)
    p.add_argument("--omega", type=parse_complex)
    p.set_defaults(handler=cmd_polya)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=SUITES)
    _common(p)
    p.add_argument("--theta1", type=float, default=0.0)
    p.add_argument("--theta2", type=float, default=0.0)
    p.add_argument("--deflate", type=float, default=0.0)
    p.add_argument("--radii", type=parse_floats, default=[0.5, 1.5, 3.0])
    p.add_argument("--angles", type=parse_floats, default=[-0.5, 0.0, 0.5],
                   help="angles as fractions of the sector opening")
    p.add_argument("--tol", type=float, help="pass threshold (suite default if omitted)")
    p.set_defaults(handler=cmd_verify)
    return parser


SUITE_TOL = {"roundtrip": 1e-6, "branch": 1e-7}


def expand_config(argv: list[str]) -> list[str]:
    """Replace ``--config FILE`` by the flags it lists, placed before explicit flags."""
    if "--config" not in argv:
        return argv
    i = argv.index("--config")
    if i + 1 >= len(argv):
        raise UsageError("--config needs a file name")
    path = argv[i + 1]
    rest = argv[:i] + argv[i + 2:]
    tokens = []
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    for n, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{n}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        tokens += [f"--{key.replace('_', '-')}", value]
    head = 2 if rest and rest[0] == "verify" else 1
    return rest[:head] + tokens + rest[head:]


NEGATIVE_VALUE = re.compile(r"^-(\d|\.\d)")


def attach_negative_values(argv: list[str]) -> list[str]:
    """Rewrite ``--flag -3,0`` as ``--flag=-3,0`` so argparse does not read a flag."""
    out = []
    for tok in argv:
        if out and out[-1].startswith("--") and "=" not in out[-1] and NEGATIVE_VALUE.match(tok):
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        argv = attach_negative_values(expand_config(argv))
        args = parser.parse_args(argv)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"sectorexp: error: {exc}\n")
        return 2
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "tol", "absent") is None:
        args.tol = SUITE_TOL.get(args.suite, 0.0)
    try:
        worker_count()
        return args.handler(args)
    except (QuadratureError, EvaluationOverflow, RuntimeError, ArithmeticError) as exc:
        sys.stderr.write(f"sectorexp: computation failed: {exc}\n")
        return 1
    except (ValueError, TypeError) as exc:
        sys.stderr.write(f"sectorexp: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
