"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 a level cap was hit.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .classes import DEFAULT_LEVEL_CAP, LevelCapExceeded, counts_csv, load_class_file
from .engine import TABLE1, SeedBijection, SeedGroup, run_extension, run_group_extension
from .perm import PermutationError, Symmetry, contains, format_perm, format_perms, parse_perm, shadow
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _load_json_arg(text: str):
    path = Path(text)
    if path.exists():
        with open(path) as fh:
            return json.load(fh)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"not a seed name, file or JSON: {text!r} ({exc})") from None


def parse_seed(text: str) -> SeedBijection:
    if text in TABLE1:
        return TABLE1[text]
    data = _load_json_arg(text)
    if not isinstance(data, dict):
        raise UsageError("seed JSON must be an object mapping R elements to images")
    try:
        return SeedBijection.from_mapping(data)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def parse_group(text: str) -> SeedGroup:
    if text.lower() in ("aut-r", "aut(r)", "full"):
        return SeedGroup.full()
    if all(part in TABLE1 for part in text.split(",")):
        return SeedGroup.generate(TABLE1[p] for p in text.split(","))
    data = _load_json_arg(text)
    if not isinstance(data, list):
        raise UsageError("group JSON must be a list of seeds (names or image maps)")
    gens = [TABLE1[g] if isinstance(g, str) else SeedBijection.from_mapping(g) for g in data]
    return SeedGroup.generate(gens)


def _max_length(args, default: int) -> int:
    value = args.max_length if args.max_length is not None else args.max_n
    return default if value is None else value


def _summary(basis_by_length: dict, counts: list[int]) -> list[str]:
    lines = ["counts: " + ",".join(map(str, counts))]
    allb = [b for bs in basis_by_length.values() for b in bs]
    if not allb:
        lines.append("basis: (empty)")
        return lines
    for n in sorted(basis_by_length):
        if basis_by_length[n]:
            lines.append(f"basis[{n}] ({len(basis_by_length[n])}): {format_perms(basis_by_length[n])}")
    lines.append(f"basis: {len(allb)} elements")
    return lines


def cmd_shadow(args):
    print(format_perms(shadow(parse_perm(args.perm))))


def cmd_contains(args):
    print("true" if contains(parse_perm(args.haystack), parse_perm(args.needle)) else "false")


def cmd_symmetry(args):
    try:
        s = Symmetry(args.word if args.word not in ("id", "e") else "")
    except PermutationError as exc:
        raise UsageError(str(exc)) from None
    print(format_perm(s.apply(parse_perm(args.perm))))


def cmd_enumerate(args):
    cls = load_class_file(args.basis_file, cap=args.cap, threads=args.threads)
    sys.stdout.write(counts_csv(cls.counts(_max_length(args, 10))))


def cmd_extend(args):
    seed = parse_seed(args.seed)
    iso = run_extension(seed, _max_length(args, 7), cap=args.cap)
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(iso.to_report(args.table_up_to), fh, indent=1)
    print("\n".join(_summary(iso.basis, iso.counts())))


def cmd_extend_group(args):
    group = parse_group(args.group)
    ext = run_group_extension(group, _max_length(args, 7), cap=args.cap)
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(ext.to_report(args.table_up_to), fh, indent=1)
    print(f"group order: {len(group)}")
    print("\n".join(_summary(ext.basis, ext.counts())))


def cmd_verify(args):
    report = run_suite(args.suite, args.bases)
    if args.json:
        print(json.dumps(report.to_json(), indent=1))
    else:
        print("\n".join(report.lines()))
    return report.exit_code


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="patterniso",
                                 description="Maximal isomorphisms between permutation pattern classes.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("shadow", help="lower covers of a permutation")
    p.add_argument("perm")
    p.set_defaults(func=cmd_shadow)

    p = sub.add_parser("contains", help="pattern containment test")
    p.add_argument("haystack")
    p.add_argument("needle")
    p.set_defaults(func=cmd_contains)

    p = sub.add_parser("symmetry", help="apply a word in r, c, i (left to right)")
    p.add_argument("perm")
    p.add_argument("word")
    p.set_defaults(func=cmd_symmetry)

    def sized(p):
        p.add_argument("max_n", nargs="?", type=int)
        p.add_argument("--max-length", type=int)
        p.add_argument("--cap", type=int, default=DEFAULT_LEVEL_CAP, help="members allowed per level")
        p.add_argument("--threads", type=int, default=1)

    p = sub.add_parser("enumerate", help="counts of Av(basis) as CSV")
    p.add_argument("basis_file")
    sized(p)
    p.set_defaults(func=cmd_enumerate)

    for name, func, what in (("extend", cmd_extend, "seed"), ("extend-group", cmd_extend_group, "group")):
        p = sub.add_parser(name, help=f"maximal extension of a {what}")
        p.add_argument(what, help="h1..h6 or JSON (inline or file)" if what == "seed"
                       else "aut-R, comma-separated h-names, or a JSON list of seeds")
        sized(p)
        p.add_argument("--out", help="write the JSON report here")
        p.add_argument("--table-up-to", type=int, default=5, help="longest length in report tables")
        p.set_defaults(func=func)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--json", action="store_true")
    p.add_argument("--bases", help="JSON object overriding class bases, e.g. {\"2\": [...]} ")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code = args.func(args)
    except (PermutationError, UsageError, ValueError, json.JSONDecodeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except LevelCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    return EXIT_OK if code is None else code


if __name__ == "__main__":
    sys.exit(main())
