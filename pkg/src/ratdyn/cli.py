"""Command-line front end: orbits, segment clouds, entropy, statistics,
and verification checks, with deterministic CSV/JSON/SVG emission.

Every output embeds the tool version, the full run configuration, and the
seed; nothing embeds a timestamp, so reruns with the same arguments are
byte-identical. CSV is canonical, SVG is an optional derived view whose
data attributes repeat the CSV strings verbatim.
"""

import argparse
import csv
import io
import json
import random
import sys

from gmpy2 import mpq

from . import __version__
from .arithmetic import MPReal
from .degree_growth import entropy
from .elliptic import (TORSION12_CURVE, TORSION12_STATE, curve_from_state,
                       ell_backward, ell_state, ell_step, invariant_C,
                       iterate_ell, on_curve, random_ell_state)
from .errors import PrecisionExhausted, RatdynError, SingularHit
from .finite_field_stats import CSV_HEADER, ff_sweep
from .maps import PlaneState, get_map, parse_map_id, step_forward
from .solvability import (invariant_tan2, roundtrip_test,
                          verify_closed_form_logistic, verify_closed_form_tan)
from .svgout import SvgScatter, fmt

DEFAULT_FF_MAPS = ["tan:k=3", "hv:a=1", "mcm:a=2"]


def parse_rat(text):
    try:
        return mpq(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from e


def parse_pair(text):
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected x,y: {text!r}")
    return tuple(parse_rat(p) for p in parts)


def _config_dict(args):
    skip = {"func", "out"}
    cfg = {}
    for key, val in sorted(vars(args).items()):
        if key in skip or val is None:
            continue
        if isinstance(val, mpq):
            val = str(val)
        elif isinstance(val, tuple):
            val = ",".join(str(v) for v in val)
        elif isinstance(val, list):
            val = [str(v) for v in val]
        cfg[key] = val
    return cfg


def _meta_lines(args, extra=()):
    cfg = json.dumps(_config_dict(args), sort_keys=True)
    lines = [f"# ratdyn={__version__}", f"# config={cfg}"]
    lines.extend(f"# {line}" for line in extra)
    return lines


def _emit(text, path):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(payload, args):
    payload = dict(payload)
    payload["version"] = __version__
    payload["config"] = _config_dict(args)
    _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)


def _svg_path(out):
    if not out:
        return None
    return out.rsplit(".", 1)[0] + ".svg" if "." in out else out + ".svg"


def _random_start(seed):
    rng = random.Random(seed)
    return (mpq(rng.randint(-10, 10), rng.randint(1, 10)),
            mpq(rng.randint(-10, 10), rng.randint(1, 10)))


def _plane_orbit_values(mapdef, start, n, bits):
    """x_0 .. x_{min(n,singular)+1} in MPReal, plus the singular step if hit."""
    u = MPReal.from_rational(start[0], bits)
    v = MPReal.from_rational(start[1], bits)
    state = PlaneState(u, v)
    xs = [state.u, state.v]
    note = None
    for step in range(n):
        try:
            state = step_forward(mapdef, state)
        except SingularHit as e:
            note = f"singular=step {step + 1}: {e}"
            break
        if not (state.u.is_finite() and state.v.is_finite()):
            note = f"singular=step {step + 1}: orbit left the finite range"
            break
        xs.append(state.v)
    return xs, note


def cmd_orbit(args):
    map_id = parse_map_id(args.map)
    n = args.iters if args.iters is not None else 1000
    meta_extra = []
    rows = []
    svg_points = []
    if map_id.name == "elliptic":
        if args.start:
            coords = [parse_rat(p) for p in args.start.split(",")]
            if len(coords) != 4:
                raise argparse.ArgumentTypeError(
                    "elliptic orbits need --start x0,y0,x1,y1")
            state = ell_state(*coords)
            curve = curve_from_state(state)
        else:
            state, curve = random_ell_state(args.seed)
        header = ["n", "xprev", "yprev", "x", "y"]
        try:
            states = iterate_ell(state, map_id.k, n, curve)
        except (RatdynError, SingularHit) as e:
            states = [state]
            meta_extra.append(f"singular={e}")
        for i, s in enumerate(states):
            rows.append([i, fmt(s.prev.x), fmt(s.prev.y), fmt(s.cur.x),
                         fmt(s.cur.y)])
            svg_points.append((float(s.cur.x), float(s.cur.y), i))
        meta_extra.append("note=exact rational iteration")
    elif map_id.name == "ritt_gauss":
        mapdef = get_map(map_id)
        from .arithmetic import GaussRat

        start = args.start
        if start:
            re, im = parse_pair(start)
        else:
            re, im = _random_start(args.seed)
        v = GaussRat(re, im)
        header = ["n", "x", "y"]
        vals = [v]
        for step in range(n):
            try:
                v = step_forward(mapdef, PlaneState(v, v)).v
            except SingularHit as e:
                meta_extra.append(f"singular=step {step + 1}: {e}")
                break
            vals.append(v)
        for i, val in enumerate(vals):
            rows.append([i, fmt(val.re), fmt(val.im)])
            svg_points.append((float(val.re), float(val.im), i))
        meta_extra.append("note=exact Gaussian-rational iteration")
    else:
        mapdef = get_map(map_id)
        start = parse_pair(args.start) if args.start else _random_start(args.seed)
        if mapdef.one_dim:
            start = (start[1], start[1])
        xs, note = _plane_orbit_values(mapdef, start, n, args.bits)
        if note:
            meta_extra.append(note)
        header = ["n", "x", "y"]
        for i in range(len(xs) - 1):
            rows.append([i, fmt(xs[i]), fmt(xs[i + 1])])
            svg_points.append((float(xs[i]), float(xs[i + 1]), i))
        meta_extra.append(
            f"note=fixed precision ({args.bits} bits): long orbits accumulate rounding")
    buf = io.StringIO()
    for line in _meta_lines(args, meta_extra):
        buf.write(line + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    _emit(buf.getvalue(), args.out)
    if args.svg:
        if not args.out:
            print("--svg needs --out", file=sys.stderr)
            return 2
        chart = SvgScatter(title=f"orbit {args.map}",
                           meta=" ".join(_meta_lines(args)))
        for x, y, i in svg_points:
            chart.add(x, y, i)
        _emit(chart.render(), _svg_path(args.out))
    return 0


def cmd_segment(args):
    map_id = parse_map_id(args.map)
    if map_id.name in ("elliptic", "ritt_gauss"):
        print("segment clouds are for plane maps with rational coefficients",
              file=sys.stderr)
        return 2
    mapdef = get_map(map_id)
    n = args.iters if args.iters is not None else 12
    m = args.points
    (ux, uy), (vx, vy) = args.seg_from, args.seg_to
    pts = []
    for i in range(m):
        t = mpq(i, m - 1) if m > 1 else mpq(0)
        pts.append((ux + t * (vx - ux), uy + t * (vy - uy)))
    report = roundtrip_test(mapdef, pts, n, tol=args.tol)
    if not report.passed:
        _emit_json({"check": "segment_precision", **report.to_dict()}, args)
        return 1
    rows = []
    svg_points = []
    excluded = set(report.excluded)
    for idx, (pu, pv) in enumerate(pts):
        state = PlaneState(MPReal.from_rational(pu, report.bits),
                           MPReal.from_rational(pv, report.bits))
        for j in range(n + 1):
            if j > 0:
                try:
                    state = step_forward(mapdef, state)
                except SingularHit:
                    break
                if not (state.u.is_finite() and state.v.is_finite()):
                    break
            rows.append([idx, j, fmt(state.u), fmt(state.v)])
            svg_points.append((float(state.u), float(state.v), j))
    meta = [f"roundtrip_max_dev={report.max_dev:.6e}",
            f"bits={report.bits}",
            f"excluded={sorted(excluded)}"]
    buf = io.StringIO()
    for line in _meta_lines(args, meta):
        buf.write(line + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["point", "iter", "x", "y"])
    w.writerows(rows)
    _emit(buf.getvalue(), args.out)
    if args.svg:
        if not args.out:
            print("--svg needs --out", file=sys.stderr)
            return 2
        chart = SvgScatter(title=f"segment images under {args.map}",
                           meta=" ".join(_meta_lines(args)))
        for x, y, j in svg_points:
            chart.add(x, y, j)
        _emit(chart.render(), _svg_path(args.out))
    return 0


def cmd_entropy(args):
    report = entropy(args.map, N=args.iters, seed=args.seed)
    _emit_json(report.to_dict(), args)
    return 0


def cmd_ffstats(args):
    maps = args.map or list(DEFAULT_FF_MAPS)
    all_rows = []
    for spec in maps:
        all_rows.extend(ff_sweep(spec, pmin=args.pmin, pmax=args.pmax,
                                 count=args.primes, samples=args.samples,
                                 seed=args.seed, cap=args.cap))
    buf = io.StringIO()
    for line in _meta_lines(args):
        buf.write(line + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for row in all_rows:
        w.writerow(row.as_csv_row())
    _emit(buf.getvalue(), args.out)
    if args.svg:
        if not args.out:
            print("--svg needs --out", file=sys.stderr)
            return 2
        chart = SvgScatter(title="mean orbit length / Hasse-Weil bound",
                           meta=" ".join(_meta_lines(args)), radius=2.5)
        chart.hlines.append(1.0)
        for mi, spec in enumerate(maps):
            series = [(r.p, r.normalized) for r in all_rows
                      if r.map == str(parse_map_id(spec))]
            chart.polylines.append((spec, series))
            for p, norm in series:
                chart.add(p, norm, mi)
        _emit(chart.render(), _svg_path(args.out))
    return 0


def _verify_closed_form(args):
    map_id = parse_map_id(args.map)
    n = args.iters
    if map_id.name == "logistic":
        n = 30 if n is None else n
        tol = args.tol if args.tol is not None else 1e-20
        x0 = parse_rat(args.start) if args.start else mpq(7, 10)
        try:
            return verify_closed_form_logistic(x0, n, tol=tol)
        except PrecisionExhausted as e:
            return e.witness
    if map_id.name == "tan":
        n = 40 if n is None else n
        tol = args.tol if args.tol is not None else 1e-15
        start = parse_pair(args.start) if args.start else (mpq(1, 3), mpq(1, 7))
        try:
            return verify_closed_form_tan(start, map_id.k, n, tol=tol)
        except PrecisionExhausted as e:
            return e.witness
    raise argparse.ArgumentTypeError(
        "closed-form checks exist for logistic and tan:k=K")


def _ell_start(args, map_id):
    if args.start:
        coords = [parse_rat(p) for p in args.start.split(",")]
        if len(coords) != 4:
            raise argparse.ArgumentTypeError("need --start x0,y0,x1,y1")
        state = ell_state(*coords)
        return state, curve_from_state(state)
    if map_id.k == 3:
        return TORSION12_STATE, TORSION12_CURVE
    return random_ell_state(args.seed)


def _verify_invariant(args):
    map_id = parse_map_id(args.map)
    if map_id.name == "tan" and map_id.k == 2:
        n = args.iters if args.iters is not None else 100
        start = parse_pair(args.start) if args.start else (mpq(1, 3), mpq(2, 5))
        mapdef = get_map(map_id)
        state = PlaneState(*start)
        c0 = invariant_tan2(state)
        drift = mpq(0)
        for _ in range(n):
            state = step_forward(mapdef, state)
            drift = max(drift, abs(invariant_tan2(state) - c0))
        return {"check": "invariant", "map": str(map_id), "N": n, "tol": 0.0,
                "max_dev": float(drift), "bits": 0, "pass": drift == 0}
    if map_id.name == "elliptic":
        n = args.iters if args.iters is not None else 50
        state, curve = _ell_start(args, map_id)
        states = iterate_ell(state, map_id.k, n, curve)
        drift = mpq(0)
        c_drift = mpq(0)
        c0 = None
        for s in states:
            if s.prev.x == s.cur.x:
                continue
            c2 = curve_from_state(s)
            drift = max(drift, abs(c2.g2 - curve.g2), abs(c2.g3 - curve.g3))
            c = invariant_C(s)
            if c0 is None:
                c0 = c
            c_drift = max(c_drift, abs(c - c0))
        ok = drift == 0 and (map_id.k != 2 or c_drift == 0)
        return {"check": "invariant", "map": str(map_id), "N": n, "tol": 0.0,
                "max_dev": float(drift if map_id.k != 2
                                 else max(drift, c_drift)),
                "bits": 0, "pass": bool(ok),
                "C_drift": float(c_drift)}
    raise argparse.ArgumentTypeError(
        "invariant checks exist for tan:k=2 and ell:k=K")


def _verify_roundtrip(args):
    map_id = parse_map_id(args.map)
    if map_id.name in ("elliptic", "ritt_gauss"):
        raise argparse.ArgumentTypeError(
            "roundtrip checks are for plane maps with rational coefficients")
    n = args.iters if args.iters is not None else 12
    tol = args.tol if args.tol is not None else 1e-3
    m = args.points
    (ux, uy), (vx, vy) = args.seg_from, args.seg_to
    pts = []
    for i in range(m):
        t = mpq(i, m - 1) if m > 1 else mpq(0)
        pts.append((ux + t * (vx - ux), uy + t * (vy - uy)))
    report = roundtrip_test(get_map(map_id), pts, n, tol=tol, bits=args.bits)
    d = report.to_dict()
    d["check"] = "roundtrip"
    return d


def _verify_elliptic(args):
    map_id = parse_map_id(args.map)
    if map_id.name != "elliptic":
        raise argparse.ArgumentTypeError("elliptic checks need --map ell:k=K")
    n = args.iters if args.iters is not None else 20
    state, curve = _ell_start(args, map_id)
    states = iterate_ell(state, map_id.k, n, curve)
    ok = all(on_curve(s.prev, curve) and on_curve(s.cur, curve)
             for s in states)
    for i in range(len(states) - 1, 0, -1):
        back = ell_backward(states[i], map_id.k, curve)
        if back.coords() != states[i - 1].coords():
            ok = False
            break
    return {"check": "elliptic", "map": str(map_id), "N": n, "tol": 0.0,
            "max_dev": 0.0 if ok else 1.0, "bits": 0, "pass": bool(ok)}


def cmd_verify(args):
    dispatch = {
        "closed-form": _verify_closed_form,
        "invariant": _verify_invariant,
        "roundtrip": _verify_roundtrip,
        "elliptic": _verify_elliptic,
    }
    result = dispatch[args.check](args)
    if hasattr(result, "to_dict"):
        result = result.to_dict()
        result.setdefault("check", "closed-form")
    _emit_json(result, args)
    return 0 if result["pass"] else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ratdyn",
        description="Exact experimentation with solvable chaotic rational maps.")
    parser.add_argument("--version", action="version",
                        version=f"ratdyn {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, bits_default=256, map_action="store"):
        if map_action == "append":
            p.add_argument("--map", action="append", default=None,
                           help="map spec; repeatable "
                           "(default tan:k=3 hv:a=1 mcm:a=2)")
        else:
            p.add_argument("--map", required=False,
                           help="map spec, e.g. tan:k=3, hv:a=1, power:k=4, "
                           "ell:k=2")
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--seed", type=int, default=0,
                       help="seed recorded in output metadata (default 0)")
        p.add_argument("--bits", type=int, default=bits_default,
                       help=f"working precision (default {bits_default})")
        p.add_argument("--tol", type=float, default=None,
                       help="tolerance where the check defines one")
        p.add_argument("-n", "--iters", type=int, default=None,
                       help="iteration count (per-command default)")

    p_orbit = sub.add_parser("orbit", help="iterate one start, emit (n, x_n, x_{n+1})")
    common(p_orbit)
    p_orbit.add_argument("--start", help="start state 'u,v' (rationals; "
                         "four coords for ell maps; default seeded random)")
    p_orbit.add_argument("--svg", action="store_true",
                         help="also write an SVG scatter next to --out")
    p_orbit.set_defaults(func=cmd_orbit)

    p_seg = sub.add_parser("segment",
                           help="iterate a segment of starts, certified by a roundtrip")
    common(p_seg)
    p_seg.add_argument("--from", dest="seg_from", type=parse_pair,
                       default=(mpq(-1, 2), mpq(-1, 3)),
                       help="segment start 'x,y' (default -1/2,-1/3)")
    p_seg.add_argument("--to", dest="seg_to", type=parse_pair,
                       default=(mpq(1, 2), mpq(2, 5)),
                       help="segment end 'x,y' (default 1/2,2/5)")
    p_seg.add_argument("--points", type=int, default=100,
                       help="points on the segment (default 100)")
    p_seg.add_argument("--svg", action="store_true",
                       help="also write an SVG scatter next to --out")
    p_seg.set_defaults(func=cmd_segment, tol=1e-3)

    p_ent = sub.add_parser("entropy", help="degree growth and entropy report")
    common(p_ent)
    p_ent.set_defaults(func=cmd_entropy)

    p_ff = sub.add_parser("ffstats", help="orbit-length statistics over F_p")
    common(p_ff, map_action="append")
    p_ff.add_argument("--pmin", type=int, default=500,
                      help="lowest prime (default 500)")
    p_ff.add_argument("--pmax", type=int, default=5000,
                      help="highest prime (default 5000)")
    p_ff.add_argument("--samples", type=int, default=100,
                      help="random starts per prime (default 100)")
    p_ff.add_argument("--primes", type=int, default=24,
                      help="primes kept from the range, evenly spaced (default 24)")
    p_ff.add_argument("--cap", type=int, default=None,
                      help="orbit length cap (default p^2)")
    p_ff.add_argument("--svg", action="store_true",
                      help="also write an SVG chart next to --out")
    p_ff.set_defaults(func=cmd_ffstats)

    p_ver = sub.add_parser("verify", help="machine-readable pass/fail checks")
    p_ver.add_argument("check",
                       choices=["closed-form", "invariant", "roundtrip",
                                "elliptic"])
    common(p_ver, bits_default=None)
    p_ver.add_argument("--start", help="start state (rationals, comma-separated)")
    p_ver.add_argument("--from", dest="seg_from", type=parse_pair,
                       default=(mpq(-1, 2), mpq(-1, 3)),
                       help="roundtrip segment start (default -1/2,-1/3)")
    p_ver.add_argument("--to", dest="seg_to", type=parse_pair,
                       default=(mpq(1, 2), mpq(2, 5)),
                       help="roundtrip segment end (default 1/2,2/5)")
    p_ver.add_argument("--points", type=int, default=100,
                       help="roundtrip points (default 100)")
    p_ver.set_defaults(func=cmd_verify)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "map", None) is None and args.subcommand not in ("ffstats",):
        parser.error("--map is required")
    try:
        return args.func(args)
    except argparse.ArgumentTypeError as e:
        parser.error(str(e))
    except BrokenPipeError:
        return 0
    except (RatdynError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
