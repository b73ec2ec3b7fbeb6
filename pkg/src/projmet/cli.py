"""Command line front end: JSON job in, deterministic JSON report out.

Subcommands:

  invariants   point invariants (L1, L2, the slope-linear invariant, nu5,
               the obstruction vector V, det M)
  check        full metrisability verdict over the sample points
  tractor      the 6x6 tractor stack: determinant, contraction cross-check,
               optional projective-change invariance block
  recover      transport a witness and reconstruct a metric on a grid
  selftest     quick internal consistency run, no input file

Exit codes: 0 metrisable (or informational command succeeded), 1 not
metrisable / degenerate / recovery refusal, 2 inconclusive, 3 bad input.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import random
import sys
import time
from fractions import Fraction

from . import __version__
from . import expressions as ex
from . import linalg
from .expressions import ExprError, parse_expr
from .invariants import (
    JetStructure,
    VERDICT_DEGENERATE,
    VERDICT_FLAT,
    VERDICT_INCONCLUSIVE,
    VERDICT_METRISABLE,
    VERDICT_NOT,
    analyze_point,
    decide_metrisability,
    liouville_L,
    nu5,
    matrix_M,
    tresse_I1,
)
from .jets import JetError, to_scalar
from .model import (
    DegenerateMetricError,
    LambdaPoly,
    MetricInput,
    NotCubicError,
    ProjectiveStructure,
    ode_from_lambda,
    ode_from_metric,
)
from .recovery import (
    GridSpec,
    RecoveryError,
    recover_metric,
)
from .tractor import (
    AffineConnection,
    det_by_contraction,
    projective_change,
    tractor_data,
    theta_bar,
    theta_values,
    change_connection,
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INCONCLUSIVE = 2
EXIT_INPUT = 3


class InputError(Exception):
    pass


def to_jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, float):
        if math.isnan(obj) or math.isinf(obj):
            return repr(obj)
        return obj
    if isinstance(obj, (str, int, bool)) or obj is None:
        return obj
    if dataclasses.is_dataclass(obj):
        return {
            f.name: to_jsonable(getattr(obj, f.name))
            for f in dataclasses.fields(obj)
        }
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in sorted(obj.items())}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    return str(obj)


def _scalar_in(v, what):
    try:
        if isinstance(v, (int, float, str)):
            return to_scalar(v)
    except (ValueError, TypeError):
        pass
    raise InputError("%s: expected a number or a rational string, got %r"
                     % (what, v))


class Job:
    def __init__(self, data):
        if not isinstance(data, dict):
            raise InputError("job file must hold a JSON object")
        self.data = data
        self.kind = data.get("kind")
        if self.kind not in ("ode", "metric", "lambda"):
            raise InputError('"kind" must be "ode", "metric", or "lambda"')
        self.structure = self._build_structure(data)
        self.points = self._build_points(data)
        self.order = data.get("order", 10)
        if not isinstance(self.order, int) or self.order < 5:
            raise InputError('"order" must be an integer >= 5')
        self.tolerance = data.get("tolerance", 1e-9)
        if not isinstance(self.tolerance, (int, float)) or self.tolerance <= 0:
            raise InputError('"tolerance" must be a positive number')
        self.arithmetic = data.get("arithmetic", "auto")
        if self.arithmetic not in ("auto", "rational", "float"):
            raise InputError(
                '"arithmetic" must be "auto", "rational", or "float"')

    def _parse(self, src, what):
        if not isinstance(src, str):
            raise InputError("%s must be an expression string" % what)
        try:
            return parse_expr(src)
        except ExprError as err:
            raise InputError("%s: %s" % (what, err)) from err

    def _build_structure(self, data):
        try:
            if self.kind == "ode":
                coeffs = [
                    self._parse(data.get(k, "0"), k)
                    for k in ("A0", "A1", "A2", "A3")
                ]
                return ProjectiveStructure(*coeffs)
            if self.kind == "metric":
                for k in ("E", "G"):
                    if k not in data:
                        raise InputError(
                            'metric jobs need "E" and "G" (and optional "F")')
                metric = MetricInput(
                    self._parse(data["E"], "E"),
                    self._parse(data.get("F", "0"), "F"),
                    self._parse(data["G"], "G"),
                )
                pts = self._build_points(data)
                return ode_from_metric(metric, check_points=pts)
            coeffs = data.get("p_coeffs")
            if not isinstance(coeffs, list) or not coeffs:
                raise InputError(
                    'lambda jobs need a non-empty "p_coeffs" list')
            lam = LambdaPoly(tuple(
                self._parse(c, "p_coeffs[%d]" % i) if isinstance(c, str)
                else ex.num(_scalar_in(c, "p_coeffs[%d]" % i))
                for i, c in enumerate(coeffs)
            ))
            return ode_from_lambda(lam)
        except (NotCubicError, DegenerateMetricError) as err:
            raise InputError(str(err)) from err

    def _build_points(self, data):
        pts = data.get("points")
        if not isinstance(pts, list) or not pts:
            raise InputError('"points" must be a non-empty list of [x, y]')
        out = []
        for p in pts:
            if not isinstance(p, list) or len(p) != 2:
                raise InputError("each point must be a two-element list")
            out.append((
                _scalar_in(p[0], "point x"),
                _scalar_in(p[1], "point y"),
            ))
        return out


def load_job(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as err:
        raise InputError("cannot read %s: %s" % (path, err)) from err
    except json.JSONDecodeError as err:
        raise InputError("invalid JSON in %s: %s" % (path, err)) from err
    return Job(data)


def _verdict_exit(verdict):
    if verdict in (VERDICT_METRISABLE, VERDICT_FLAT):
        return EXIT_OK
    if verdict in (VERDICT_NOT, VERDICT_DEGENERATE):
        return EXIT_NEGATIVE
    return EXIT_INCONCLUSIVE


def cmd_invariants(job, mode):
    slope = job.data.get("slope", 0)
    slope = _scalar_in(slope, "slope")
    points = []
    for p in job.points:
        js = JetStructure.at(job.structure, p, job.order, mode)
        l1, l2 = liouville_L(js)
        m = matrix_M(js)
        points.append({
            "point": [p[0], p[1]],
            "mode": "exact" if js.exact else "float",
            "L1": l1.value,
            "L2": l2.value,
            "I1_coeffs": [-6 * l1.value, -6 * l2.value],
            "I1_at_slope": tresse_I1(js, slope),
            "nu5": nu5(js),
            "V": [row_entry for row_entry in m[0]],
            "det_M": linalg.det(m),
        })
    report = {
        "command": "invariants",
        "order": job.order,
        "slope": slope,
        "points": points,
    }
    return report, EXIT_OK


def cmd_check(job, mode):
    rep = decide_metrisability(
        job.structure, job.points, job.order, job.tolerance, mode
    )
    report = {"command": "check", "report": rep}
    return report, _verdict_exit(rep.verdict)


def cmd_tractor(job, mode):
    change_src = job.data.get("change")
    f_expr = None
    if change_src is not None:
        try:
            f_expr = parse_expr(change_src)
        except ExprError as err:
            raise InputError('"change": %s' % err) from err
    points = []
    for p in job.points:
        js = JetStructure.at(job.structure, p, job.order, mode)
        conn = AffineConnection.from_structure(js)
        td = tractor_data(conn)
        theta = theta_bar(td)
        vals = theta_values(theta)
        det_direct = linalg.det(vals)
        contraction = det_by_contraction(vals)
        if isinstance(det_direct, Fraction):
            agrees = contraction == det_direct
        else:
            ref = max(1.0, abs(det_direct))
            agrees = abs(contraction - det_direct) <= 1e-9 * ref
        m = matrix_M(js)
        entry = {
            "point": [p[0], p[1]],
            "mode": "exact" if js.exact else "float",
            "det_M": linalg.det(m),
            "det_theta": det_direct,
            "D": det_direct / 4320,
            "contraction": contraction,
            "contraction_agrees": agrees,
        }
        if f_expr is not None:
            entry["change"] = _change_block(js, conn, theta, f_expr, p,
                                            job.order)
        points.append(entry)
    report = {"command": "tractor", "order": job.order, "points": points}
    return report, EXIT_OK


def _change_block(js, conn, theta, f_expr, point, order):
    target = theta[0][0].order
    wx = ex.eval_jet(ex.differentiate(f_expr, "x"), point, target,
                     "float" if not js.exact else "auto")
    wy = ex.eval_jet(ex.differentiate(f_expr, "y"), point, target,
                     "float" if not js.exact else "auto")
    theta_a = projective_change(theta, (wx, wy))
    det_a = linalg.det(theta_values(theta_a))

    f_jet = ex.eval_jet(f_expr, point, conn.order, "float")
    conn_b = change_connection(
        AffineConnection(
            tuple(tuple(tuple(e.to_float() for e in r) for r in pl)
                  for pl in conn.gamma),
            conn.s.to_float(),
        ),
        f_jet,
    )
    theta_b = theta_bar(tractor_data(conn_b))
    det_b = linalg.det(theta_values(theta_b))
    fval = float(ex.eval_scalar(f_expr, point[0], point[1]))
    scale = math.exp(-18.0 * fval)
    expected = float(det_a) * scale
    ref = max(1.0, abs(expected))
    return {
        "f": ex.to_string(f_expr),
        "det_after_ops": det_a,
        "det_ops_equals_original": _close(det_a, linalg.det(
            theta_values(theta))),
        "det_recomputed": det_b,
        "scale": scale,
        "invariance_agrees": abs(det_b - expected) <= 1e-9 * ref,
    }


def _close(a, b):
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a == b
    ref = max(1.0, abs(float(a)), abs(float(b)))
    return abs(float(a) - float(b)) <= 1e-9 * ref


def cmd_recover(job, mode):
    rep = decide_metrisability(
        job.structure, job.points, job.order, job.tolerance, mode
    )
    code = _verdict_exit(rep.verdict)
    if code != EXIT_OK:
        return {
            "command": "recover",
            "verdict": rep.verdict,
            "refused": True,
            "reason": "structure is not metrisable at the sample points"
            if code == EXIT_NEGATIVE else "verdict inconclusive",
        }, code

    witness = job.data.get("witness")
    if witness is None:
        witness = next(
            (r.witness for r in rep.points if r.witness is not None), None)
        if witness is None:
            # flat structures: every vector is parallel, pick a definite one
            witness = (1.0, 0.0, 1.0, 0.0, 0.0, 0.0)
    else:
        if not isinstance(witness, list) or len(witness) != 6:
            raise InputError('"witness" must be a list of six numbers')
        witness = tuple(
            float(_scalar_in(v, "witness")) for v in witness)

    gspec = job.data.get("grid", {})
    if not isinstance(gspec, dict):
        raise InputError('"grid" must be an object')
    center = gspec.get("center")
    if center is None:
        center = [float(job.points[0][0]), float(job.points[0][1])]
    if not isinstance(center, list) or len(center) != 2:
        raise InputError('"grid.center" must be [x, y]')
    grid = GridSpec(
        center=(float(_scalar_in(center[0], "grid.center")),
                float(_scalar_in(center[1], "grid.center"))),
        h=float(_scalar_in(gspec.get("h", 0.1), "grid.h")),
        n=int(gspec.get("n", 9)),
        substeps=int(gspec.get("substeps", 4)),
    )
    if grid.n < 2 or grid.substeps < 1 or not grid.h > 0:
        raise InputError("grid needs n >= 2, substeps >= 1, h > 0")

    try:
        result = recover_metric(job.structure, witness, grid)
    except RecoveryError as err:
        return {
            "command": "recover",
            "verdict": rep.verdict,
            "refused": True,
            "reason": str(err),
        }, EXIT_NEGATIVE

    nodes = [
        {
            "node": [k[0], k[1]],
            "point": list(result.section.grid.point(*k)),
            "E": v[0], "F": v[1], "G": v[2],
            "delta": v[3],
            "signature": v[4],
        }
        for k, v in sorted(result.metric.nodes.items())
    ]
    report = {
        "command": "recover",
        "verdict": rep.verdict,
        "witness": list(witness),
        "grid": {
            "center": list(grid.center), "h": grid.h, "n": grid.n,
            "substeps": grid.substeps,
        },
        "transport_defect": result.section.defect,
        "roundtrip_residual": result.residual,
        "signature": result.metric.signature,
        "excluded_nodes": [list(k) for k in result.metric.excluded],
        "nodes": nodes,
    }
    return report, EXIT_OK


def cmd_selftest(_job, _mode):
    rng = random.Random(20240811)
    checks = 0

    # flat structure: everything vanishes
    flat = ProjectiveStructure.flat()
    js = JetStructure.at(flat, (0, 0), 8)
    l1, l2 = liouville_L(js)
    assert l1.is_zero() and l2.is_zero()
    assert linalg.det(matrix_M(js)) == 0
    checks += 1

    # the canonical degenerate example: rank facts and kernel vector
    pain = ProjectiveStructure.from_exprs("6*y^2+x", "0", "0", "0")
    repp = analyze_point(pain, (0, 0), order=10)
    assert repp.l1 == -12 and repp.l2 == 0
    assert repp.rank_m == 3 and repp.det_m == 0
    assert repp.verdict == VERDICT_DEGENERATE
    checks += 1

    # contraction equals the determinant on a random exact stack
    mat = [[Fraction(rng.randint(-9, 9)) for _ in range(6)]
           for _ in range(6)]
    mat[0][0] = Fraction(0)
    assert det_by_contraction(mat) == linalg.det(mat)
    checks += 1

    # tractor determinant vanishes with det M on a polynomial structure
    poly = ProjectiveStructure.from_exprs("x^2+y", "y^2", "x*y", "x+1")
    js = JetStructure.at(poly, (1, 1), 10)
    td = tractor_data(AffineConnection.from_structure(js))
    vals = theta_values(theta_bar(td))
    detm = linalg.det(matrix_M(js))
    dett = linalg.det(vals)
    assert (detm == 0) == (dett == 0)
    checks += 1

    return {"command": "selftest", "status": "ok", "checks": checks}, EXIT_OK


COMMANDS = {
    "invariants": cmd_invariants,
    "check": cmd_check,
    "tractor": cmd_tractor,
    "recover": cmd_recover,
    "selftest": cmd_selftest,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="projmet",
        description="Decide metrisability of a plane projective structure "
                    "and reconstruct compatible metrics.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("invariants", "point invariants and det M"),
        ("check", "metrisability verdict over sample points"),
        ("tractor", "tractor-stack cross-check"),
        ("recover", "reconstruct a metric on a grid"),
        ("selftest", "internal consistency checks"),
    ):
        p = sub.add_parser(name, help=help_text)
        if name != "selftest":
            p.add_argument("--input", required=True,
                           help="JSON job description")
        p.add_argument("--output", help="write the report here instead of "
                                        "stdout")
        p.add_argument("--mode", choices=("auto", "rational", "float"),
                       help="override the job's arithmetic mode")
        p.add_argument("--timing", action="store_true",
                       help="include wall-clock timing in the report")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    started = time.perf_counter()
    job = None
    try:
        job = load_job(args.input) if getattr(args, "input", None) else None
        mode = args.mode or (job.arithmetic if job else "auto")
        report, code = COMMANDS[args.command](job, mode)
    except InputError as err:
        report, code = {"error": str(err)}, EXIT_INPUT
    except (ExprError, JetError, NotCubicError,
            DegenerateMetricError) as err:
        report, code = {"error": str(err)}, EXIT_INPUT
    report["version"] = __version__
    if job is not None:
        report["input"] = job.data
    if args.timing:
        report["timing_seconds"] = round(time.perf_counter() - started, 6)
    text = json.dumps(to_jsonable(report), indent=2, sort_keys=True) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
