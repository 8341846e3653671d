"""Command-line entry point.

    eislat verify all|e8-lambda4|lambda10-split|ambient|chordal|arcs|conjugate-lambda|gamma-gram
    eislat cusps --height H [--out CLASSES.json]
    eislat hyperplanes --height H --max N [--prefer CLASSES.json] [--out RECORDS.json]
    eislat boundary incidence CLASSES.json RECORDS.json
    eislat boundary disjointness RECORDS.json --pairs N
    eislat lattice info|shortvec|isometry FILE [FILE] [--norm M]

Exit codes: 0 all verified, 2 something refuted, 3 something inconclusive,
1 usage or I/O error.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import __version__, boundary, constructions
from .elattice import (
    ELattice,
    Mu3ZLattice,
    e_invariants,
    e_isometry_definite,
    from_mu3,
    underlying_mu3,
)
from .eisenstein import EisensteinInt
from .reports import INCONCLUSIVE, REFUTED, VERIFIED, WitnessReport, stopwatch, worst_status
from .zlattice import (
    LatticeError,
    ZLattice,
    is_positive_definite,
    isometry_definite,
    lattice_invariants,
    short_vectors,
)

EXIT_CODES = {VERIFIED: 0, REFUTED: 2, INCONCLUSIVE: 3}
VERIFY_CLAIMS = ("e8-lambda4", "lambda10-split", "ambient", "chordal", "arcs", "conjugate-lambda", "gamma-gram")


class UsageError(Exception):
    pass


# report emission ------------------------------------------------------------


def emit_report(results: Sequence[WitnessReport], fmt: str = "json") -> str:
    counts = {s: sum(1 for r in results if r.status == s) for s in (VERIFIED, REFUTED, INCONCLUSIVE)}
    assert sum(counts.values()) == len(results)
    if fmt == "text":
        lines = []
        for r in results:
            bound = json.dumps(r.search_bound, sort_keys=True, separators=(",", ":"))
            lines.append(f"{r.claim_id}  {r.status}  (bound={bound}, elapsed={r.elapsed_ms}ms)")
        return "\n".join(lines) + ("\n" if lines else "")
    payload = {
        "tool_version": __version__,
        "seed_invariants": {
            "claims_total": len(results),
            "verified": counts[VERIFIED],
            "refuted": counts[REFUTED],
            "inconclusive": counts[INCONCLUSIVE],
        },
        "reports": [r.to_json() for r in results],
    }
    return json.dumps(payload, indent=2) + "\n"


def exit_code(results: Sequence[WitnessReport]) -> int:
    worst = worst_status(results)
    return EXIT_CODES[worst] if worst else 0


# file helpers ---------------------------------------------------------------


def read_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc


def write_text(path: str, text: str) -> None:
    try:
        with open(path, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from exc


def load_lattice(path: str):
    """A ZLattice, ELattice or Mu3ZLattice (converted to its ELattice) from JSON."""
    data = read_json(path)
    if not isinstance(data, dict):
        raise UsageError(f"{path}: expected a JSON object")
    try:
        if "hgram" in data:
            return ELattice.from_json(data)
        if "gram" in data and "t" in data:
            return from_mu3(Mu3ZLattice.from_json(data))[0]
        if "gram" in data:
            return ZLattice.from_json(data)
    except (LatticeError, TypeError, ValueError) as exc:
        raise UsageError(f"{path}: {exc}") from exc
    raise UsageError(f"{path}: expected a 'gram' or 'hgram' field")


# commands ---------------------------------------------------------------------


def run_verify(args) -> list[WitnessReport]:
    height = args.height
    runners = {
        "e8-lambda4": lambda: constructions.verify_e8_lambda4(),
        "lambda10-split": lambda: constructions.verify_lambda10_split(height, parallel=args.parallel),
        "ambient": lambda: constructions.verify_ambient(),
        "chordal": lambda: constructions.verify_chordal(),
        "arcs": lambda: constructions.verify_arcs(),
        "conjugate-lambda": lambda: constructions.verify_conjugate_lambda(args.k),
        "gamma-gram": lambda: constructions.verify_gamma_gram(args.k),
    }
    claims = VERIFY_CLAIMS if args.claim == "all" else (args.claim,)
    return [runners[c]() for c in claims]


def run_cusps(args) -> list[WitnessReport]:
    classes, report = boundary.classify_cusps(args.height, parallel=args.parallel)
    if args.out:
        write_text(args.out, json.dumps(boundary.classes_to_json(classes, members=args.members)) + "\n")
    return [report]


def run_hyperplanes(args) -> list[WitnessReport]:
    prefer = None
    if args.prefer:
        classes = boundary.classes_from_json(read_json(args.prefer))
        prefer = [v for c in classes for v in c.representatives]
    records, report = boundary.find_hyperplanes(args.height, args.max, prefer=prefer)
    if args.out:
        write_text(args.out, json.dumps(boundary.hyperplanes_to_json(records)) + "\n")
    return [report]


def run_boundary(args) -> list[WitnessReport]:
    if args.check == "incidence":
        if len(args.files) != 2:
            raise UsageError("boundary incidence needs CLASSES.json and RECORDS.json")
        classes = boundary.classes_from_json(read_json(args.files[0]), boundary.big_lambda())
        records = boundary.hyperplanes_from_json(read_json(args.files[1]))
        try:
            return [boundary.check_incidence(classes, records)]
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    if len(args.files) != 1:
        raise UsageError("boundary disjointness needs RECORDS.json")
    records = boundary.hyperplanes_from_json(read_json(args.files[0]))
    try:
        return [boundary.check_disjointness(records, args.pairs)]
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _ejson(M) -> list:
    return [[EisensteinInt.coerce(x).to_json() for x in row] for row in M]


def run_lattice(args) -> list[WitnessReport]:
    if args.action in ("info", "shortvec") and len(args.files) != 1:
        raise UsageError(f"lattice {args.action} takes one file")
    if args.action == "isometry" and len(args.files) != 2:
        raise UsageError("lattice isometry takes two files")
    lats = [load_lattice(p) for p in args.files]
    with stopwatch() as sw:
        if args.action == "info":
            L = lats[0]
            if isinstance(L, ELattice):
                inv = e_invariants(L)
                wit = {
                    "kind": "eisenstein",
                    "rank": L.rank,
                    "signature": list(inv.signature),
                    "det": inv.det.to_json(),
                    "underlying": lattice_invariants(underlying_mu3(L).base).to_json(),
                }
            else:
                wit = {
                    "kind": "integral",
                    "rank": L.rank,
                    "det": L.det(),
                    "positive_definite": is_positive_definite(L),
                    **lattice_invariants(L).to_json(),
                }
            return [WitnessReport("lattice-info", VERIFIED, wit, {"exact": True}, sw["ms"])]
        if args.action == "shortvec":
            if args.norm is None:
                raise UsageError("lattice shortvec needs --norm")
            L = lats[0]
            try:
                if isinstance(L, ELattice):
                    # h(v, v) = m corresponds to integral norm 2m/3 on the underlying lattice
                    if (2 * args.norm) % 3:
                        vecs = []
                    else:
                        vecs = short_vectors(underlying_mu3(L).base, 2 * args.norm // 3)
                else:
                    vecs = short_vectors(L, args.norm)
            except LatticeError as exc:
                raise UsageError(str(exc)) from exc
            wit = {"norm": args.norm, "count_up_to_sign": len(vecs), "vectors": [list(v) for v in vecs]}
            return [WitnessReport("lattice-shortvec", VERIFIED, wit, {"norm": args.norm}, sw["ms"])]
        L1, L2 = lats
        if type(L1) is not type(L2):
            raise UsageError("lattice isometry needs two lattices of the same kind")
        try:
            if isinstance(L1, ELattice):
                g = e_isometry_definite(L1, L2)
                wit = {"isometry": _ejson(g) if g is not None else None}
            else:
                g = isometry_definite(L1, L2)
                wit = {"isometry": [list(r) for r in g] if g is not None else None}
        except LatticeError as exc:
            raise UsageError(str(exc)) from exc
        # the search is exhaustive: no isometry found means none exists
        status = VERIFIED if g is not None else REFUTED
    return [WitnessReport("lattice-isometry", status, wit, {"exhaustive": True}, sw["ms"])]


# argument parsing ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--report", metavar="PATH", help="write the report to PATH")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json", help="JSON output (default)")
    fmt.add_argument("--text", dest="fmt", action="store_const", const="text", help="one line per claim")
    common.add_argument("--parallel", type=int, default=1, metavar="N", help="worker processes (default 1)")
    common.add_argument("--height", type=int, default=2, metavar="H", help="coordinate norm bound (default 2)")

    p = argparse.ArgumentParser(prog="eislat", description="Eisenstein lattice claim verifier.")
    p.add_argument("--version", action="version", version=f"eislat {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="verify one claim or all of them")
    v.add_argument("claim", choices=("all",) + VERIFY_CLAIMS)
    v.add_argument("--k", type=int, default=10, help="largest k for the Lambda_k family checks")

    c = sub.add_parser("cusps", parents=[common], help="classify cusps of Lambda")
    c.add_argument("--out", metavar="PATH", help="write the cusp classes file")
    c.add_argument("--members", action="store_true", help="include every found vector in the classes file")

    h = sub.add_parser("hyperplanes", parents=[common], help="find Lambda_10-hyperplanes of Lambda")
    h.add_argument("--max", type=int, default=10, metavar="N", help="maximum number of records")
    h.add_argument("--prefer", metavar="CLASSES", help="try normals through these cusps first")
    h.add_argument("--out", metavar="PATH", help="write the hyperplane records file")

    b = sub.add_parser("boundary", parents=[common], help="incidence and disjointness checks")
    b.add_argument("check", choices=("incidence", "disjointness"))
    b.add_argument("files", nargs="+")
    b.add_argument("--pairs", type=int, default=10, metavar="N", help="maximum number of pairs")

    lat = sub.add_parser("lattice", parents=[common], help="lattice utilities")
    lat.add_argument("action", choices=("info", "shortvec", "isometry"))
    lat.add_argument("files", nargs="+")
    lat.add_argument("--norm", type=int)
    return p


COMMANDS = {
    "verify": run_verify,
    "cusps": run_cusps,
    "hyperplanes": run_hyperplanes,
    "boundary": run_boundary,
    "lattice": run_lattice,
}


def run_command(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse prints the synopsis itself
        return 0 if exc.code == 0 else 1
    fmt = args.fmt or "json"
    if args.parallel < 1:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: --parallel must be at least 1", file=sys.stderr)
        return 1
    try:
        results = COMMANDS[args.command](args)
        text = emit_report(results, fmt)
        if args.report:
            write_text(args.report, text)
            if fmt == "json":
                sys.stdout.write(emit_report(results, "text"))
            else:
                sys.stdout.write(text)
        else:
            sys.stdout.write(text)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 1
    return exit_code(results)


def main(argv: Sequence[str] | None = None) -> int:
    return run_command(argv)


if __name__ == "__main__":
    sys.exit(main())
