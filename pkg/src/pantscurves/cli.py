"""Command-line front end.

Every command emits one output record: a human table (``--format text``),
the JSON record described by ``schema/output-record.schema.json``, or CSV
with a header row.

Exit codes: 0 success / all pass, 1 verification failure or counterexample,
2 usage or parse error, 3 resource or convergence error.

Environment overrides:

``PANTSCURVES_MAX_RADIUS``   oracle radius cap (default ``2(|w1| + |w2|) + 8``)
``PANTSCURVES_LENGTH_CAP``   length cap for ``si-classes`` (default ``2k + 2``)
``PANTSCURVES_MAX_CLASSES``  enumeration size cap (default 2,000,000)
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Callable

from . import __version__
from .engine import intersection, self_intersection
from .errors import (
    CapUnverifiedError,
    EllipticElementError,
    NotConvergedError,
    OddCountError,
    PantsCurvesError,
    ResourceLimitError,
    SharedEndpointError,
    TrivialClassError,
    WordSyntaxError,
)
from .lab import (
    classes_with_si,
    classify_two_intersections,
    equiv_class_222,
    k_equivalent,
    probes_for,
    scan_triples,
    triple_of,
)
from .oracle import oracle_intersection, oracle_self_intersection
from .verify import run_verification
from .words import canonical_class, enumerate_classes, is_boundary_parallel, pretty

SCHEMA_VERSION = "1.0"

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _env_int(name: str) -> int | None:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{name} must be an integer, got {raw!r}")


class Result:
    """Structured output of one command."""

    def __init__(self, payload, text_lines, csv_header, csv_rows, exit_code=EXIT_OK):
        self.payload = payload
        self.text_lines = text_lines
        self.csv_header = csv_header
        self.csv_rows = csv_rows
        self.exit_code = exit_code


def _word_row(c, show_pretty: bool) -> list:
    return [c.word, pretty(c.word)] if show_pretty else [c.word]


def _word_header(show_pretty: bool) -> list[str]:
    return ["word", "pretty"] if show_pretty else ["word"]


def _parse_class(text: str, oriented: bool = False):
    return canonical_class(text, oriented=oriented)


# --------------------------------------------------------------------------
# commands


def cmd_canon(args, settings) -> Result:
    c = _parse_class(args.word, args.oriented)
    payload = {
        "input": args.word,
        "word": c.word,
        "pretty": pretty(c.word),
        "root": c.root,
        "exponent": c.exponent,
        "is_power": c.is_power,
        "boundary_parallel": is_boundary_parallel(c),
    }
    header = list(payload)
    lines = [f"{k:18} {v}" for k, v in payload.items()]
    return Result(payload, lines, header, [list(payload.values())])


def cmd_si(args, settings) -> Result:
    c = _parse_class(args.word)
    value = self_intersection(c)
    payload = {"word": c.word, "si": value}
    code = EXIT_OK
    if args.oracle:
        payload["oracle_si"] = oracle_self_intersection(c, settings["max_radius"])
        payload["agree"] = payload["oracle_si"] == value
        code = EXIT_OK if payload["agree"] else EXIT_FAIL
        lines = [f"{value}", f"oracle {payload['oracle_si']} ({'agree' if payload['agree'] else 'MISMATCH'})"]
    else:
        lines = [str(value)]
    return Result(payload, lines, list(payload), [list(payload.values())], code)


def cmd_int(args, settings) -> Result:
    c1, c2 = _parse_class(args.word1), _parse_class(args.word2)
    value = intersection(c1, c2)
    payload = {"word1": c1.word, "word2": c2.word, "i": value}
    code = EXIT_OK
    if args.oracle:
        payload["oracle_i"] = oracle_intersection(c1, c2, settings["max_radius"])
        payload["agree"] = payload["oracle_i"] == value
        code = EXIT_OK if payload["agree"] else EXIT_FAIL
        lines = [f"{value}", f"oracle {payload['oracle_i']} ({'agree' if payload['agree'] else 'MISMATCH'})"]
    else:
        lines = [str(value)]
    return Result(payload, lines, list(payload), [list(payload.values())], code)


def cmd_triple(args, settings) -> Result:
    c = _parse_class(args.word)
    t = triple_of(c)
    payload = {"word": c.word, "triple": list(t)}
    return Result(payload, [f"({t[0]}, {t[1]}, {t[2]})"], ["word", "vAB", "vCb", "vAC"], [[c.word, *t]])


def _class_list_result(classes, show_pretty, extra_payload) -> Result:
    payload = dict(extra_payload)
    payload["count"] = len(classes)
    payload["classes"] = [c.word for c in classes]
    if show_pretty:
        payload["pretty"] = [pretty(c.word) for c in classes]
    rows = [_word_row(c, show_pretty) for c in classes]
    lines = ["  ".join(r) for r in rows] + [f"# {len(classes)} classes"]
    return Result(payload, lines, _word_header(show_pretty), rows)


def cmd_enum(args, settings) -> Result:
    classes = enumerate_classes(
        args.max_len,
        non_power_only=not args.powers,
        unoriented=not args.oriented,
        exclude_boundary_parallel=not args.include_boundary,
    )
    return _class_list_result(classes, args.pretty, {"max_len": args.max_len})


def cmd_si_classes(args, settings) -> Result:
    cap = args.cap if args.cap is not None else settings["length_cap"]
    classes = classes_with_si(args.k, length_cap=cap, include_powers=args.powers)
    return _class_list_result(classes, args.pretty, {"k": args.k})


def cmd_kequiv(args, settings) -> Result:
    c1, c2 = _parse_class(args.word1), _parse_class(args.word2)
    probes = probes_for(args.k, args.power_probes)
    v1 = [intersection(c1, p) for p in probes]
    v2 = [intersection(c2, p) for p in probes]
    equivalent = k_equivalent(c1, c2, args.k, args.power_probes)
    payload = {
        "word1": c1.word,
        "word2": c2.word,
        "k": args.k,
        "equivalent": equivalent,
        "probes": [p.word for p in probes],
        "vector1": v1,
        "vector2": v2,
    }
    lines = [
        f"{c1.word} and {c2.word} are {'' if equivalent else 'not '}{args.k}-equivalent",
        f"{'probe':>12} {c1.word:>10} {c2.word:>10}",
    ]
    lines += [f"{p.word:>12} {a:>10} {b:>10}" for p, a, b in zip(probes, v1, v2)]
    rows = [[p.word, a, b] for p, a, b in zip(probes, v1, v2)]
    return Result(payload, lines, ["probe", "i_word1", "i_word2"], rows)


def cmd_scan_triples(args, settings) -> Result:
    scan = scan_triples(args.max_len)
    ok = scan["conjecture_holds"] and not scan["odd_entries"]
    lines = [f"{r['word']:>{args.max_len}}  {tuple(r['triple'])}" for r in scan["dataset"]]
    lines.append(f"# observed sorted triples: {', '.join(str(tuple(t)) for t in scan['observed_sorted'])}")
    lines.append(f"# max <= 2 min and equality cases: {'hold' if ok else 'COUNTEREXAMPLE'}")
    for v in scan["ratio_violations"] + scan["equality_violations"]:
        lines.append(f"# counterexample {v['word']} {tuple(v['triple'])}")
    lines.append(
        "# reported triples present: "
        + ("yes" if scan["reported_present"] else f"missing {scan['missing_reported']}")
    )
    rows = [[r["word"], *r["triple"]] for r in scan["dataset"]]
    return Result(scan, lines, ["word", "vAB", "vCb", "vAC"], rows, EXIT_OK if ok else EXIT_FAIL)


def cmd_classify_two(args, settings) -> Result:
    res = classify_two_intersections(args.max_len)
    lines = []
    rows = []
    for m in res["members"]:
        spelled = "; ".join(f"{f} (m={mm}, n={nn})" for f, mm, nn in m["matches"])
        lines.append(f"{m['word']:>{args.max_len}}  {spelled}")
        rows.extend([m["word"], f, mm, nn] for f, mm, nn in m["matches"])
    for w in res["non_members"]:
        lines.append(f"{w:>{args.max_len}}  NO FAMILY")
        rows.append([w, "", "", ""])
    lines.append(f"# {len(res['members'])} members, {len(res['non_members'])} non-members")
    if res["families_never_witnessed"]:
        lines.append(f"# families never witnessed: {', '.join(res['families_never_witnessed'])}")
    return Result(
        res, lines, ["word", "family", "m", "n"], rows, EXIT_OK if res["passed"] else EXIT_FAIL
    )


def cmd_class_222(args, settings) -> Result:
    classes = equiv_class_222(args.max_len)
    result = _class_list_result(classes, args.pretty, {"max_len": args.max_len})
    result.text_lines.append("# computed list; classes with t = (2, 2, 2)")
    return result


def cmd_verify(args, settings) -> Result:
    claims = run_verification(args.max_len, args.max_exp)
    payload = {
        "max_len": args.max_len,
        "max_exp": args.max_exp,
        "all_passed": all(c.passed for c in claims),
        "claims": [c.as_dict() for c in claims],
    }
    width = max(len(c.name) for c in claims)
    lines = [f"{'claim':<{width}}  result  statement"]
    lines += [f"{c.name:<{width}}  {'PASS' if c.passed else 'FAIL':<6}  {c.statement}" for c in claims]
    for c in claims:
        if not c.passed:
            lines.append(f"# {c.name}: {json.dumps(c.detail, sort_keys=True)}")
    rows = [[c.name, "PASS" if c.passed else "FAIL", c.statement] for c in claims]
    code = EXIT_OK if payload["all_passed"] else EXIT_FAIL
    return Result(payload, lines, ["claim", "result", "statement"], rows, code)


# --------------------------------------------------------------------------
# parser


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _nonnegative(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--pretty", action="store_true", help="add a C/c shorthand column")

    parser = _Parser(
        prog="pantscurves",
        description="Intersection numbers of closed curves on the pair of pants.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func: Callable, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("canon", cmd_canon, "canonical form, root, exponent and boundary flag")
    p.add_argument("word")
    p.add_argument("--oriented", action="store_true")

    p = add("si", cmd_si, "self-intersection number")
    p.add_argument("word")
    p.add_argument("--oracle", action="store_true", help="also run the hyperbolic oracle")

    p = add("int", cmd_int, "geometric intersection number")
    p.add_argument("word1")
    p.add_argument("word2")
    p.add_argument("--oracle", action="store_true", help="also run the hyperbolic oracle")

    p = add("triple", cmd_triple, "intersections with aB, Cb, aC")
    p.add_argument("word")

    p = add("enum", cmd_enum, "enumerate classes")
    p.add_argument("--max-len", type=_positive, required=True)
    p.add_argument("--oriented", action="store_true")
    p.add_argument("--powers", action="store_true", help="include powers")
    p.add_argument("--include-boundary", action="store_true", help="include a, b, ab and powers")

    p = add("si-classes", cmd_si_classes, "all classes with a given self-intersection")
    p.add_argument("k", type=_nonnegative)
    p.add_argument("--cap", type=_positive, default=None)
    p.add_argument("--powers", action="store_true", help="include powers of smaller classes")

    p = add("kequiv", cmd_kequiv, "decide k-equivalence of two classes")
    p.add_argument("word1")
    p.add_argument("word2")
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--power-probes", action="store_true", help="include power probe classes")

    p = add("scan-triples", cmd_scan_triples, "t-triples and the doubling conjecture")
    p.add_argument("--max-len", type=_positive, required=True)

    p = add("classify-two", cmd_classify_two, "classes meeting aB twice vs the C^m families")
    p.add_argument("--max-len", type=_positive, required=True)

    p = add("class-222", cmd_class_222, "classes with t = (2, 2, 2)")
    p.add_argument("--max-len", type=_positive, required=True)

    p = add("verify-paper", cmd_verify, "reproduce every finite claim")
    p.add_argument("--max-len", type=_positive, default=8)
    p.add_argument("--max-exp", type=_positive, default=3)

    return parser


def _render(result: Result, args, settings) -> str:
    if args.format == "json":
        record = {
            "schemaVersion": SCHEMA_VERSION,
            "command": args.command,
            "settings": settings,
            "payload": result.payload,
        }
        return json.dumps(record, indent=2, sort_keys=True) + "\n"
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(result.csv_header)
        writer.writerows(result.csv_rows)
        return buf.getvalue()
    return "\n".join(result.text_lines) + "\n"


_RESOURCE_ERRORS = (
    CapUnverifiedError,
    NotConvergedError,
    ResourceLimitError,
    OddCountError,
    EllipticElementError,
    SharedEndpointError,
)


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        settings = {
            "orientation": "oriented" if getattr(args, "oriented", False) else "unoriented",
            "max_radius": _env_int("PANTSCURVES_MAX_RADIUS"),
            "length_cap": _env_int("PANTSCURVES_LENGTH_CAP"),
            "max_classes": _env_int("PANTSCURVES_MAX_CLASSES"),
        }
        result = args.func(args, settings)
    except UsageError as exc:
        print(str(exc), file=stderr)
        return EXIT_USAGE
    except (WordSyntaxError, TrivialClassError) as exc:
        print(f"pantscurves: {exc}", file=stderr)
        return EXIT_USAGE
    except _RESOURCE_ERRORS as exc:
        op = getattr(args, "command", "?")
        print(f"pantscurves {op}: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_RESOURCE
    except PantsCurvesError as exc:
        print(f"pantscurves: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_RESOURCE
    stdout.write(_render(result, args, settings))
    return result.exit_code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
