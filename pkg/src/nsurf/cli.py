"""Command line front end.

Subcommands: validate, enumerate, analyze, slopes, width.  Every JSON
payload carries the tool version and the sha256 digest of the input
file, keys are sorted, and integers that do not fit in 64 bits are
emitted as decimal strings.  Output for a given input is byte
identical across runs and thread counts.

Exit codes: 0 success, 1 domain error (structured JSON error object on
stdout), 2 usage error.
"""

import argparse
import hashlib
import json
import sys
from fractions import Fraction

from . import __version__
from .coordinates import (ALMOST_NORMAL, NORMAL, check_vector,
                          coordinate_count, edge_weights,
                          euler_characteristic)
from .enumeration import vertex_solutions
from .errors import CoordinateError, NsurfError
from .morse import (LMAX, SEARCH_CAP, WIDTH, bridge_report, event_line,
                    lmax_profile, minimize, parse_morse_word,
                    vertex_good_position, width)
from .slopes import slope_survey
from .surfaces import analyze
from .triangulation import parse_triangulation, validate

INT64_MIN = -(1 << 63)
INT64_MAX = (1 << 63) - 1


def _jsonable(value):
    """Payload tree with exact values made JSON-safe.

    Integers beyond the signed 64-bit range become decimal strings,
    fractions become "p/q" strings, tuples become lists.
    """
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        if INT64_MIN <= value <= INT64_MAX:
            return value
        return str(value)
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return _jsonable(value.numerator)
        return "%d/%d" % (value.numerator, value.denominator)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    raise TypeError("cannot serialize %r" % (value,))


def _text_lines(value, prefix):
    if isinstance(value, dict):
        if not value:
            return ["%s = {}" % prefix]
        out = []
        for k in sorted(value):
            out.extend(_text_lines(value[k], "%s.%s" % (prefix, k) if prefix else str(k)))
        return out
    if isinstance(value, list):
        if not value:
            return ["%s = []" % prefix]
        out = []
        for i, item in enumerate(value):
            out.extend(_text_lines(item, "%s[%d]" % (prefix, i)))
        return out
    return ["%s = %s" % (prefix, json.dumps(value))]


def _emit(payload, fmt, stream):
    payload = _jsonable(payload)
    if fmt == "text":
        stream.write("\n".join(_text_lines(payload, "")) + "\n")
    else:
        stream.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def _parse_tri(text):
    return parse_triangulation(text)


def _cmd_validate(args, text):
    tri = _parse_tri(text)
    return {"command": "validate", "report": validate(tri)}


def _cmd_enumerate(args, text):
    tri = _parse_tri(text)
    sols = vertex_solutions(tri, args.system, threads=args.threads)
    entries = []
    for vec in sols:
        entries.append({
            "vector": list(vec),
            "chi": euler_characteristic(tri, args.system, vec),
            "edge_weights": list(edge_weights(tri, args.system, vec)),
        })
    return {
        "command": "enumerate",
        "system": args.system,
        "count": len(entries),
        "solutions": entries,
    }


def _infer_system(tri, vec):
    for system in (NORMAL, ALMOST_NORMAL):
        if len(vec) == coordinate_count(tri, system):
            return system
    raise CoordinateError(
        "vector length %d matches neither coordinate system" % len(vec))


def _cmd_analyze(args, text):
    tri = _parse_tri(text)
    try:
        vec = json.loads(args.vector)
    except ValueError:
        raise CoordinateError("--vector must be a JSON integer array") from None
    if (not isinstance(vec, list)
            or any(isinstance(x, bool) or not isinstance(x, int) for x in vec)):
        raise CoordinateError("--vector must be a JSON integer array")
    system = _infer_system(tri, vec)
    check_vector(tri, system, vec)
    return {
        "command": "analyze",
        "system": system,
        "vector": vec,
        "analysis": analyze(tri, system, vec),
    }


def _cmd_slopes(args, text):
    tri = _parse_tri(text)
    entries = slope_survey(tri, args.chi_min, args.max_bdry,
                           zero_chi_cap=args.zero_chi_cap)
    return {
        "command": "slopes",
        "chi_min": args.chi_min,
        "max_boundary_points": args.max_bdry,
        "zero_chi_cap": args.zero_chi_cap,
        "count": len(entries),
        "slopes": [{
            "slope": list(e["slope"]),
            "provenance": e["provenance"],
            "multiplicity": e["multiplicity"],
            "witness": list(e["witness"]),
        } for e in entries],
    }


def _cmd_width(args, text):
    word = parse_morse_word(text)
    payload = {
        "command": "width",
        "event_count": len(word.events),
        "events": [event_line(ev) for ev in word.events],
        "width": width(word),
        "gap_counts": list(word.gap_counts()),
        "lmax_profile": list(lmax_profile(word).values),
    }
    if word.vertex() is None:
        is_bridge, number = bridge_report(word)
        payload["bridge"] = {"is_bridge": is_bridge, "bridge_number": number}
        payload["vertex_good_position"] = None
    else:
        payload["bridge"] = None
        payload["vertex_good_position"] = vertex_good_position(word)
    if args.minimize:
        objective = WIDTH if args.objective == "width" else LMAX
        better, value = minimize(word, objective, cap=args.search_cap)
        payload["minimized"] = {
            "objective": args.objective,
            "events": [event_line(ev) for ev in better.events],
            "value": list(value.values) if objective == LMAX else value,
            "width": width(better),
        }
    return payload


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="nsurf",
        description="Normal surface enumeration, analysis, boundary slopes, "
                    "and Morse-word width on triangulated 3-manifolds.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("input", help="input file")
        p.add_argument("--format", choices=("json", "text"), default="json")

    p = sub.add_parser("validate", help="structural report for a triangulation")
    common(p)
    p.set_defaults(func=_cmd_validate)

    # namespaced spelling of the same report: `nsurf tri validate <file>`
    group = sub.add_parser("tri", help="triangulation subcommands")
    tri_sub = group.add_subparsers(dest="tri_command", required=True)
    p = tri_sub.add_parser("validate")
    common(p)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("enumerate", help="vertex solutions of the matching cone")
    common(p)
    p.add_argument("--system", choices=(NORMAL, ALMOST_NORMAL), default=NORMAL)
    p.add_argument("--threads", type=_positive_int, default=1)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("analyze", help="topology of the carried surface")
    common(p)
    p.add_argument("--vector", required=True,
                   help="coordinate vector as a JSON integer array")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("slopes", help="boundary slope survey")
    common(p)
    p.add_argument("--chi-min", type=int, required=True,
                   help="lowest Euler characteristic searched")
    p.add_argument("--max-bdry", type=int, required=True,
                   help="boundary point budget per candidate")
    p.add_argument("--zero-chi-cap", type=_positive_int, default=2,
                   help="copies allowed per zero-chi coordinate")
    p.set_defaults(func=_cmd_slopes)

    p = sub.add_parser("width", help="width and profiles of a Morse word")
    common(p)
    p.add_argument("--minimize", action="store_true",
                   help="search the commutation closure for a cheaper word")
    p.add_argument("--objective", choices=("width", "lmax"), default="width")
    p.add_argument("--search-cap", type=_positive_int, default=SEARCH_CAP,
                   help="largest word length minimize will accept")
    p.set_defaults(func=_cmd_width)
    return parser


def main(argv=None):
    args = _build_parser().parse_args(argv)
    digest = None
    try:
        with open(args.input, "rb") as handle:
            data = handle.read()
        digest = hashlib.sha256(data).hexdigest()
        payload = args.func(args, data.decode("utf-8"))
    except (NsurfError, OSError, UnicodeDecodeError) as exc:
        error = {
            "error": {"type": type(exc).__name__, "message": str(exc)},
            "input_digest": digest,
            "version": __version__,
        }
        _emit(error, args.format, sys.stdout)
        return 1
    payload["input_digest"] = digest
    payload["version"] = __version__
    _emit(payload, args.format, sys.stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
