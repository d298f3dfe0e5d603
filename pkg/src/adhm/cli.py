"""Command-line driver. Every subcommand prints one JSON object (sorted keys).

Exit status: 0 when a verdict was computed, 1 on bad input or a violated
precondition, 2 when a resource bound stopped the computation.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .errors import AdhmError, BoundExceeded, MalformedInput
from .exactla import Mat, field_from_json, parse_field
from .monad import (enumerate_points, fiber_profile, framing_check, perverse_hom_profile, perverse_test, scan_alpha,
                    scan_beta)
from .planebridge import PlaneADHM, c1zero_lift, c1zero_roundtrip, to_plane
from .quiverrep import BlowupRep, NewQuiverRep, enumerate_reps, mu_residual
from .stability import (ChernData, StabilityParam, blowup_point_maps, candidate_walls, chamber_rep, classify_W0,
                        criteria_semistable, hn_filtration, jh_filtration, kronecker_decompose, wall_signs,
                        zeta_semistable)
from .sweeps import ASSERTIONS, sweep


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise MalformedInput(f"expected comma-separated integers, got {text!r}") from exc


def _load(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise MalformedInput(f"cannot read {path}: {exc}") from exc


def _rep(args) -> BlowupRep:
    if not args.inp:
        raise MalformedInput("--in is required")
    return BlowupRep.from_json(_load(args.inp))


def _zeta(args) -> StabilityParam:
    if not args.zeta:
        raise MalformedInput("--zeta is required")
    return StabilityParam.parse(args.zeta)


def _chern(args) -> ChernData:
    if args.r is None or args.k is None or args.n is None:
        raise MalformedInput("--r, --k and --n are required")
    return ChernData(args.r, args.k, Fraction(args.n))


# --- subcommands --------------------------------------------------------------------

def cmd_mu(args):
    X = _rep(args)
    R = mu_residual(X)
    return {"residual": R.to_json(), "flat": R.is_zero()}


def cmd_stability(args):
    return zeta_semistable(_rep(args), _zeta(args), strict=not args.literal,
                           max_subspaces=args.max_subspaces).to_json()


def cmd_criteria(args):
    cert = True if args.s2_certificate else None
    return criteria_semistable(_rep(args), _zeta(args), s2_certificate=cert,
                               max_subspaces=args.max_subspaces).to_json()


def cmd_hn(args):
    return hn_filtration(NewQuiverRep.of(_rep(args)), _zeta(args), max_subspaces=args.max_subspaces).to_json()


def cmd_jh(args):
    return jh_filtration(NewQuiverRep.of(_rep(args)), _zeta(args), max_subspaces=args.max_subspaces).to_json()


def cmd_classify_w0(args):
    dims = _ints(args.dims or "")
    if len(dims) != 2:
        raise MalformedInput("--dims=n0,n1 is required")
    return classify_W0(dims, _zeta(args)).to_json()


def _pencil(data):
    if isinstance(data, dict) and "dims" in data:
        X = BlowupRep.from_json(data)
        return X.B1, X.B2
    try:
        field = field_from_json(data["field"])
        B1, B2 = data["B1"], data["B2"]
        rows = int(data.get("rows", len(B1)))
        cols = int(data.get("cols", len(B1[0]) if B1 else 0))
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise MalformedInput(f"pencil JSON needs field, B1, B2: {exc}") from exc
    return Mat.from_json(field, B1, rows, cols), Mat.from_json(field, B2, rows, cols)


def cmd_kronecker(args):
    if not args.inp:
        raise MalformedInput("--in is required")
    B1, B2 = _pencil(_load(args.inp))
    blocks, P, Q = kronecker_decompose(B1, B2)
    return {"blocks": [b.to_json(B1.field) for b in blocks], "P": P.to_json(), "Q": Q.to_json()}


def cmd_walls(args):
    c = _chern(args)
    return {"candidates": candidate_walls(c), "dims": list(c.dims)}


def cmd_chamber(args):
    if args.m is None:
        raise MalformedInput("--m is required")
    walls = candidate_walls(_chern(args))
    zeta = chamber_rep(args.m, walls)
    return {"zeta": zeta.to_json(), "signs": {str(k): v for k, v in wall_signs(zeta, walls).items()}}


def cmd_scan_beta(args):
    return scan_beta(_rep(args), args.max_degree, args.max_points).to_json()


def cmd_scan_alpha(args):
    return scan_alpha(_rep(args), args.max_degree, args.max_points).to_json()


def cmd_fibers(args):
    X = _rep(args)
    fp = fiber_profile(X, enumerate_points(X.field, args.degree, args.max_points))
    out = fp.to_json()
    out["euler"] = sorted(fp.euler())
    return out


def cmd_framing(args):
    return {"framing": framing_check(_rep(args), args.degree, strict=args.strict, max_points=args.max_points)}


def cmd_perverse(args):
    table = perverse_hom_profile(_rep(args), args.m_max)
    return {"profile": [{"n": n, "hom_to_c": a, "hom_from_c": b} for n, a, b in table],
            "perverse": {str(m): perverse_test(table, m) for m in range(args.m_max + 2)}}


def cmd_to_plane(args):
    return to_plane(_rep(args), args.side).to_json()


def cmd_c1_roundtrip(args):
    if not args.inp:
        raise MalformedInput("--in is required")
    A = PlaneADHM.from_json(_load(args.inp))
    return {"roundtrip": c1zero_roundtrip(A), "lift": c1zero_lift(A).to_json()}


def cmd_enumerate(args):
    dims = _ints(args.dims or "")
    if len(dims) not in (2, 3):
        raise MalformedInput("--dims=n0,n1[,r] is required")
    field = parse_field(args.field)
    reps = enumerate_reps(dims, field, flat_only=args.flat, max_tuples=args.max_tuples)
    if args.list:
        listed = [X.to_json() for X in reps]
        return {"count": len(listed), "reps": listed}
    return {"count": sum(1 for _ in reps)}


def cmd_blowup_point(args):
    field = parse_field(args.field)
    if args.triple:
        (z1, z2), zw = blowup_point_maps(field, args.triple.split(","))
        fmt = field.format
        return {"point": {"z12": [fmt(z1), fmt(z2)], "zw": [fmt(x) for x in zw]}}
    if args.point:
        try:
            a, b = args.point.split(";")
        except ValueError as exc:
            raise MalformedInput("--point expects 'z1,z2;z,w'") from exc
        triple = blowup_point_maps(field, (a.split(","), b.split(",")))
        return {"triple": [field.format(x) for x in triple]}
    raise MalformedInput("--triple or --point is required")


def cmd_sweep(args):
    dims = _ints(args.dims or "")
    field = parse_field(args.field)
    zeta = StabilityParam.parse(args.zeta) if args.zeta else None
    return sweep(dims, field, zeta, args.assertion, max_tuples=args.max_tuples, workers=args.workers,
                 method=args.method)


COMMANDS = {
    "mu": cmd_mu, "stability": cmd_stability, "criteria": cmd_criteria, "hn": cmd_hn, "jh": cmd_jh,
    "classify-w0": cmd_classify_w0, "kronecker": cmd_kronecker, "walls": cmd_walls, "chamber": cmd_chamber,
    "scan-beta": cmd_scan_beta, "scan-alpha": cmd_scan_alpha, "fibers": cmd_fibers, "framing": cmd_framing,
    "perverse": cmd_perverse, "to-plane": cmd_to_plane, "c1-roundtrip": cmd_c1_roundtrip,
    "enumerate": cmd_enumerate, "blowup-point": cmd_blowup_point, "sweep": cmd_sweep,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise MalformedInput(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="adhm", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--in", dest="inp", help="input JSON file ('-' for stdin)")
        s.add_argument("--out", help="write the JSON report here instead of stdout")
        s.add_argument("--zeta", help="stability parameter 'zeta0,zeta1'")
        s.add_argument("--dims", help="dimensions 'n0,n1[,r]'")
        s.add_argument("--field", default="GF2", help="Q, GF<p> or GF<p>^<k>")
        s.add_argument("--max-subspaces", type=int, default=None)
        s.add_argument("--max-tuples", type=int, default=None)
        s.add_argument("--max-points", type=int, default=None)
        if name in ("walls", "chamber"):
            s.add_argument("--r", type=int)
            s.add_argument("--k", type=int)
            s.add_argument("--n")
            s.add_argument("--m", type=int)
        if name == "stability":
            s.add_argument("--literal", action="store_true",
                           help="with r = 0, apply the framed inequalities instead of the balanced ones")
        if name == "criteria":
            s.add_argument("--s2-certificate", action="store_true", help="assert (S2) over Q")
        if name in ("scan-beta", "scan-alpha"):
            s.add_argument("--max-degree", type=int, default=None)
        if name in ("fibers", "framing"):
            s.add_argument("--degree", type=int, default=1)
        if name == "framing":
            s.add_argument("--strict", action="store_true", help="raise when (S2) fails")
        if name == "perverse":
            s.add_argument("--m-max", type=int, default=3)
        if name == "to-plane":
            s.add_argument("--side", choices=("left", "right"), default="right")
        if name == "enumerate":
            s.add_argument("--flat", action="store_true")
            s.add_argument("--list", action="store_true")
        if name == "blowup-point":
            s.add_argument("--triple", help="'B1,B2,d'")
            s.add_argument("--point", help="'z1,z2;z,w'")
        if name == "sweep":
            s.add_argument("--assert", dest="assertion", choices=ASSERTIONS, required=True)
            s.add_argument("--workers", type=int, default=1)
            s.add_argument("--method", choices=("auto", "enumeration", "orbit-slices"), default="auto")
    return p


def run(argv: list[str]) -> tuple[int, dict, str | None]:
    """(exit code, report, output path)."""
    out = None
    try:
        args = build_parser().parse_args(argv)
        if not args.command:
            raise MalformedInput("a subcommand is required")
        out = args.out
        return 0, COMMANDS[args.command](args), out
    except BoundExceeded as exc:
        return 2, {"error": "BoundExceeded", "message": str(exc)}, None
    except AdhmError as exc:
        return 1, {"error": type(exc).__name__, "message": str(exc)}, None


def main(argv: list[str] | None = None) -> int:
    code, report, out = run(sys.argv[1:] if argv is None else argv)
    text = json.dumps(report, sort_keys=True)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    if code:
        print(report["message"], file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
