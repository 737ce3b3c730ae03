"""Command-line entry point: every operation behind one executable.

Exit codes: 0 = computed (negative mathematical answers included),
1 = usage error, 2 = input validation error, 3 = internal invariant
violation.  Output is canonical JSON (sorted keys, exact rational
strings); --format human renders a readable table instead.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import serialize
from .classify import pd_flat_sweep, triangle_exclusion_p3
from .errors import BudgetError, CoefficientSystemError, InputError, InternalError
from .funcs import greedy_decompose
from .groups import group
from .sets import find_spectrum, find_tiling_complement, is_spectrum, is_tiling
from .tuples import (
    average_from_weak_tiling,
    is_dispersive,
    near_pencil_tuple,
    triangle_tuple,
    verify_four_tuple,
)
from .weakpd import pd_tiling_feasible


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read_json(path: str):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from None
    return serialize.loads(text)


def _write(args, text: str) -> None:
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _human_table(pairs) -> str:
    width = max(len(k) for k, _ in pairs)
    return "".join(f"{k.ljust(width)}  {v}\n" for k, v in pairs)


def _emit(args, payload: dict, human_pairs=None) -> None:
    if getattr(args, "format", "json") == "human" and human_pairs is not None:
        _write(args, _human_table(human_pairs))
    else:
        _write(args, serialize.dumps_canonical(payload))


# -- subcommand handlers -------------------------------------------------


def _cmd_analyze(args) -> int:
    a = serialize.pointset_from_json(_read_json(args.input))
    comp = find_tiling_complement(a)
    spec = find_spectrum(a)
    cert = pd_tiling_feasible(a)
    payload = {
        "p": a.group.p,
        "d": a.group.d,
        "set": [list(x) for x in a.elems],
        "size": len(a),
        "tiles": comp is not None,
        "complement": [list(x) for x in comp.elems] if comp else None,
        "spectral": spec is not None,
        "spectrum": [list(x) for x in spec.points] if spec else None,
        "weak_pd_feasible": cert is not None,
        "h": serialize.rayfn_to_json(cert.h) if cert else None,
    }
    if comp is not None and not is_tiling(a, comp):
        raise InternalError("complement failed re-verification")
    if spec is not None and not is_spectrum(a, spec.points):
        raise InternalError("spectrum failed re-verification")
    pairs = [
        ("group", f"(Z_{a.group.p})^{a.group.d}"),
        ("set", " ".join(str(list(x)) for x in a.elems)),
        ("tiles", str(payload["tiles"]).lower()),
        ("spectral", str(payload["spectral"]).lower()),
        ("weak-pd feasible", str(payload["weak_pd_feasible"]).lower()),
    ]
    _emit(args, payload, pairs)
    return 0


def _cmd_tile_check(args) -> int:
    a = serialize.pointset_from_json(_read_json(args.a))
    b = serialize.pointset_from_json(_read_json(args.b))
    _emit(args, {"tiling": is_tiling(a, b)})
    return 0


def _cmd_tile_complement(args) -> int:
    a = serialize.pointset_from_json(_read_json(args.input))
    comp = find_tiling_complement(a)
    if comp is None:
        _emit(args, {"tiles": False})
        return 0
    if not is_tiling(a, comp):
        raise InternalError("complement failed re-verification")
    _emit(args, {"tiles": True, "complement": [list(x) for x in comp.elems]})
    return 0


def _cmd_spectrum(args) -> int:
    a = serialize.pointset_from_json(_read_json(args.input))
    spec = find_spectrum(a)
    if spec is None:
        _emit(args, {"spectral": False})
        return 0
    if not is_spectrum(a, spec.points):
        raise InternalError("spectrum failed re-verification")
    _emit(args, {"spectral": True, "spectrum": [list(x) for x in spec.points]})
    return 0


def _cmd_weak_pd(args) -> int:
    a = serialize.pointset_from_json(_read_json(args.input))
    cert = pd_tiling_feasible(a)
    if cert is None:
        _emit(args, {"feasible": False})
    else:
        _emit(args, serialize.certificate_to_json(cert))
    return 0


def _cmd_four_tuple(args) -> int:
    a = serialize.pointset_from_json(_read_json(args.input))
    cert = pd_tiling_feasible(a)
    if cert is None:
        _emit(args, {"feasible": False})
        return 0
    tup = average_from_weak_tiling(a, cert.h)
    if not verify_four_tuple(tup).ok:
        raise InternalError("averaged tuple failed re-verification")
    _emit(args, serialize.fourtuple_to_json(tup))
    return 0


def _cmd_verify_tuple(args) -> int:
    tup = serialize.fourtuple_from_json(_read_json(args.input))
    report = verify_four_tuple(tup)
    payload = report.as_dict()
    payload["mass_f"] = serialize.rational_to_str(report.mass_f)
    payload["mass_f_is_integer"] = report.mass_f_is_integer
    pairs = [(k, str(v).lower()) for k, v in report.as_dict().items()]
    pairs.append(("mass_f", payload["mass_f"]))
    _emit(args, payload, pairs)
    return 0


def _cmd_dispersive(args) -> int:
    tup = serialize.fourtuple_from_json(_read_json(args.input))
    payload = {}
    pairs = []
    for name, fn in tup.functions:
        verdict, witness = is_dispersive(fn)
        payload[name] = {
            "dispersive": verdict,
            "witness_plane_normal": list(witness.normal.rep) if witness else None,
        }
        pairs.append((name, str(verdict).lower()))
    _emit(args, payload, pairs)
    return 0


def _cmd_decompose(args) -> int:
    f = serialize.rayfn_from_json(_read_json(args.input))
    try:
        dec = greedy_decompose(f)
    except ValueError as e:
        raise InputError(str(e)) from None
    _emit(args, serialize.decomposition_to_json(dec))
    return 0


def _cmd_david(args) -> int:
    try:
        tup = triangle_tuple(args.p)
    except ValueError as e:
        raise InputError(str(e)) from None
    if not verify_four_tuple(tup).ok:
        raise InternalError("triangle tuple failed re-verification")
    _emit(args, serialize.fourtuple_to_json(tup))
    return 0


def _cmd_near_pencil(args) -> int:
    points = None
    if args.points:
        obj = serialize.loads(args.points)
        if not isinstance(obj, list):
            raise InputError("--points: expected a JSON list of points")
        points = [tuple(x) for x in obj]
    try:
        tup = near_pencil_tuple(args.p, args.k, points)
    except ValueError as e:
        raise InputError(str(e)) from None
    _emit(args, serialize.fourtuple_to_json(tup))
    return 0


def _cmd_classify(args) -> int:
    g = group(args.p, args.d)
    sizes = _parse_sizes(args.sizes) if args.sizes else None
    jobs = args.jobs
    if jobs is None:
        env = os.environ.get("ZPDTILING_JOBS")
        jobs = int(env) if env else os.cpu_count() or 1
    report = pd_flat_sweep(
        g,
        mode=args.mode,
        sizes=sizes,
        seed=args.seed,
        sample_count=args.count,
        jobs=jobs,
    )
    text = "".join(serialize.dumps_canonical(rec) for rec in report.records())
    _write(args, text)
    return 0


def _cmd_p3_exclusion(args) -> int:
    report = triangle_exclusion_p3()
    payload = {
        "p2_vacuous": report.p2_vacuous,
        "candidates": {
            "from_f": {
                "value": serialize.rational_to_str(report.from_f),
                "integer": report.from_f_integral,
            },
            "from_h": {
                "value": serialize.rational_to_str(report.from_h),
                "integer": report.from_h_integral,
            },
        },
        "sizes_checked": list(report.sizes_checked),
        "reps_checked": report.reps_checked,
        "matches": [
            {"side": side, "elems": [list(x) for x in elems]}
            for side, elems in report.matches
        ],
        "positive_control": report.positive_control,
        "excluded": report.excluded,
    }
    if not report.positive_control:
        raise InternalError("positive control failed: matcher is vacuous")
    _emit(args, payload)
    return 0


def _parse_sizes(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..", 1)
            try:
                out.extend(range(int(lo), int(hi) + 1))
            except ValueError:
                raise UsageError(f"bad size range {part!r}") from None
        else:
            try:
                out.append(int(part))
            except ValueError:
                raise UsageError(f"bad size {part!r}") from None
    return out


def _build_parser() -> _Parser:
    parser = _Parser(prog="zpdtiling", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.set_defaults(func=func)
        sp.add_argument("--out", help="write output to this path instead of stdout")
        sp.add_argument(
            "--format", choices=("json", "human"), default="json",
            help="output rendering",
        )
        return sp

    sp = add("analyze", _cmd_analyze, "full verdict for one point set")
    sp.add_argument("--input", required=True, help="point-set JSON (or - for stdin)")

    sp = add("tile-check", _cmd_tile_check, "check whether A + B tiles the group")
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)

    sp = add("tile-complement", _cmd_tile_complement, "search for a tiling complement")
    sp.add_argument("--input", required=True)

    sp = add("spectrum", _cmd_spectrum, "search for a spectrum")
    sp.add_argument("--input", required=True)

    sp = add("weak-pd", _cmd_weak_pd, "decide weak pd-tiling; emit a certificate")
    sp.add_argument("--input", required=True)

    sp = add("four-tuple", _cmd_four_tuple, "averaging pipeline from a set")
    sp.add_argument("--input", required=True)

    sp = add("verify-tuple", _cmd_verify_tuple, "check the nine tuple axioms")
    sp.add_argument("--input", required=True)

    sp = add("dispersive", _cmd_dispersive, "plane-sweep dispersiveness verdicts")
    sp.add_argument("--input", required=True)

    sp = add("decompose", _cmd_decompose, "greedy constant/hyperplane/line decomposition")
    sp.add_argument("--input", required=True)

    sp = add("david", _cmd_david, "the triangle-configuration tuple")
    sp.add_argument("--p", type=int, required=True)

    sp = add("near-pencil", _cmd_near_pencil, "generalized near-pencil tuple")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--points", help="optional JSON list of k projective points")

    sp = add("classify", _cmd_classify, "sweep verdicts over families of sets")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--mode", choices=("exhaustive", "orbit", "sample"), default="exhaustive")
    sp.add_argument("--sizes", help="orbit mode sizes, e.g. 1..9 or 3,5,9")
    sp.add_argument("--seed", type=int, default=0, help="sample mode seed")
    sp.add_argument("--count", type=int, default=1000, help="sample mode set count")
    sp.add_argument("--jobs", type=int, help="worker count (default: ZPDTILING_JOBS or all cores)")

    add("david-p3-exclusion", _cmd_p3_exclusion, "exhaustive p=3 generation check")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 1
    except SystemExit as e:  # --help
        return int(e.code or 0)
    try:
        return args.func(args)
    except InputError as e:
        print(f"input error: {e}", file=sys.stderr)
        return 2
    except BudgetError as e:
        print(f"refused: {e}", file=sys.stderr)
        return 2
    except (InternalError, CoefficientSystemError) as e:
        print(f"internal error: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
