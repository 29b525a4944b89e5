"""Command-line front end.

Exit status contract: 0 all applicable checks passed, 1 some check failed,
2 nothing was applicable, 64 usage error, 65 malformed or invalid input
data, 69 enumeration budget exhausted.

Configuration precedence is flags over environment over defaults; the
environment knobs are ARRGATE_SCAN_CAP, ARRGATE_ENUM_BUDGET_NODES and
ARRGATE_ENUM_BUDGET_SECS.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass

from .combinatorics import (
    DEFAULT_VECTOR_CAP,
    RealizationClass,
    WeakCombinatorics,
    feasible_count_vectors,
    triple_count_from_degree,
)
from .enumeration import DEFAULT_MAX_DEGREE, DEFAULT_NODE_BUDGET, enumerate_triple_systems
from .errors import (
    ArrgateError,
    BudgetExceededError,
    CapExceededError,
    IncidenceFileError,
    NonIntegralTripleCountError,
)
from .incfile import content_digest, dump_certificate, parse_incidence
from .lattice import lemma_km_residue
from .pipeline import check_incidence, check_weak_combinatorics
from .verdicts import Status, exit_code_for

EX_OK = 0
EX_FAIL = 1
EX_NOT_APPLICABLE = 2
EX_USAGE = 64
EX_DATA = 65
EX_BUDGET = 69

ENV_SCAN_CAP = "ARRGATE_SCAN_CAP"
ENV_BUDGET_NODES = "ARRGATE_ENUM_BUDGET_NODES"
ENV_BUDGET_SECS = "ARRGATE_ENUM_BUDGET_SECS"

DEFAULT_TRIPLE_SCAN_CAP = 1_000_000

WC_CHECKS = (
    "pair_count_identity",
    "all_multiplicities_odd",
    "line_parity",
    "mod16_congruence",
    "triple_only_degree_gate",
)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse with the sysexits-style usage code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def _parse_counts(specs: list[str]) -> dict[int, int]:
    counts: dict[int, int] = {}
    for spec in specs:
        for chunk in spec.split(","):
            chunk = chunk.strip()
            if not chunk:
                continue
            m_str, _, n_str = chunk.partition(":")
            try:
                m, n = int(m_str), int(n_str)
            except ValueError:
                raise _UsageError(f"counts entry {chunk!r} is not of the form M:COUNT")
            if m in counts:
                raise _UsageError(f"multiplicity {m} given twice")
            counts[m] = n
    return counts


def _env_int(name: str) -> int | None:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise _UsageError(f"environment variable {name} must be an integer, got {raw!r}")


def _env_float(name: str) -> float | None:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return None
    try:
        return float(raw)
    except ValueError:
        raise _UsageError(f"environment variable {name} must be a number, got {raw!r}")


# ---------------------------------------------------------------------------
# check


def _cmd_check(args) -> int:
    realization = RealizationClass(args.realization) if args.realization else None

    if args.file is not None:
        if args.degree is not None or args.counts:
            raise _UsageError("give either an incidence file or --degree/--counts, not both")
        if args.file == "-":
            text = sys.stdin.read()
            label = "stdin"
        else:
            try:
                with open(args.file, "r", encoding="utf-8") as handle:
                    text = handle.read()
            except OSError as exc:
                print(f"arrgate check: cannot read {args.file}: {exc}", file=sys.stderr)
                return EX_DATA
            label = os.path.basename(args.file)
        inc, name, _ = parse_incidence(text)
        subject = f"{name or label} (sha256:{content_digest(text)})"
        report = check_incidence(inc, realization, subject=subject)
    else:
        if args.degree is None:
            raise _UsageError("either an incidence file or --degree is required")
        counts = _parse_counts(args.counts)
        wc = WeakCombinatorics(args.degree, counts)
        report = check_weak_combinatorics(wc, realization)

    if args.format == "json":
        sys.stdout.write(report.to_json())
    else:
        sys.stdout.write(report.render_table())
    return exit_code_for(report.overall)


# ---------------------------------------------------------------------------
# scan


@dataclass(frozen=True)
class ScanRow:
    d: int
    counts: dict[int, int]
    verdicts: dict[str, str]
    residues: dict[str, int | None]
    gate_reason: str
    feasible: str

    def counts_text(self) -> str:
        return ",".join(f"{m}:{n}" for m, n in sorted(self.counts.items())) or "-"

    def to_obj(self) -> dict:
        return {
            "d": self.d,
            "counts": {str(m): n for m, n in sorted(self.counts.items())},
            "verdicts": self.verdicts,
            "residues": self.residues,
            "gate_reason": self.gate_reason,
            "feasible": self.feasible,
        }


def _row_from_report(d: int, wc: WeakCombinatorics, gate_reason: str) -> ScanRow:
    report = check_weak_combinatorics(wc)
    verdicts = {}
    residues: dict[str, int | None] = {"mod16": None, "mod24": None}
    for v in report.verdicts:
        verdicts[v.check] = v.status.value
        if v.check == "mod16_congruence" and isinstance(v.witness, int):
            residues["mod16"] = v.witness
        if v.check == "triple_only_degree_gate" and isinstance(v.witness, int):
            residues["mod24"] = v.witness
    return ScanRow(d, wc.counts, verdicts, residues, gate_reason, report.overall.value)


def _triple_only_row(d: int) -> ScanRow:
    try:
        t3 = triple_count_from_degree(d)
    except NonIntegralTripleCountError:
        verdicts = {check: Status.NOT_APPLICABLE.value for check in WC_CHECKS}
        residues = {"mod16": None, "mod24": d % 24}
        return ScanRow(d, {}, verdicts, residues, "non-integral t_3", Status.FAIL.value)
    wc = WeakCombinatorics(d, {3: t3} if t3 else {})
    return _row_from_report(d, wc, f"d mod 24 = {d % 24}")


def _scan_rows(args, cap: int) -> list[ScanRow]:
    rows = []
    for d in range(args.d_min, args.d_max + 1):
        if args.triple_only:
            rows.append(_triple_only_row(d))
        else:
            for wc in feasible_count_vectors(d, odd_only=args.odd_only, cap=cap):
                rows.append(_row_from_report(
                    d, wc, f"d mod 24 = {d % 24}" if all(m == 3 for m in wc.counts) else ""))
    return rows


def _emit_scan(rows: list[ScanRow], fmt: str) -> str:
    columns = ["d", "counts", *WC_CHECKS, "mod16", "mod24", "feasible", "gate_reason"]

    def cells(row: ScanRow) -> list[str]:
        residue16 = row.residues["mod16"]
        residue24 = row.residues["mod24"]
        return [str(row.d), row.counts_text(),
                *(row.verdicts.get(check, "") for check in WC_CHECKS),
                "" if residue16 is None else str(residue16),
                "" if residue24 is None else str(residue24),
                row.feasible, row.gate_reason]

    if fmt == "json":
        return json.dumps({"rows": [row.to_obj() for row in rows]}, indent=2) + "\n"
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow(cells(row))
        return buffer.getvalue()
    lines = ["| " + " | ".join(columns) + " |",
             "|" + "|".join("---" for _ in columns) + "|"]
    for row in rows:
        lines.append("| " + " | ".join(cells(row)) + " |")
    return "\n".join(lines) + "\n"


def _cmd_scan(args) -> int:
    default_cap = DEFAULT_TRIPLE_SCAN_CAP if args.triple_only else DEFAULT_VECTOR_CAP
    cap = args.cap if args.cap is not None else _env_int(ENV_SCAN_CAP)
    if cap is None:
        cap = default_cap
    if args.d_min < 1:
        raise _UsageError("scan range must start at 1 or above")
    if args.d_min > args.d_max:
        raise _UsageError("d_min must not exceed d_max")
    if args.d_max > cap:
        raise CapExceededError(args.d_max, cap)
    rows = _scan_rows(args, cap)
    sys.stdout.write(_emit_scan(rows, args.format))
    return EX_OK


# ---------------------------------------------------------------------------
# enumerate


def _cmd_enumerate(args) -> int:
    node_budget = args.budget_nodes if args.budget_nodes is not None else _env_int(ENV_BUDGET_NODES)
    if node_budget is None:
        node_budget = DEFAULT_NODE_BUDGET
    time_budget = args.budget_secs if args.budget_secs is not None else _env_float(ENV_BUDGET_SECS)

    if args.degree > DEFAULT_MAX_DEGREE:
        raise _UsageError(f"degree {args.degree} beyond the supported cap {DEFAULT_MAX_DEGREE}")
    if args.degree == DEFAULT_MAX_DEGREE and not args.large:
        raise _UsageError(
            f"degree {DEFAULT_MAX_DEGREE} can take a long time; pass --large to opt in")
    if args.degree < 1:
        raise _UsageError("degree must be >= 1")

    cert = enumerate_triple_systems(args.degree, node_budget=node_budget,
                                    time_budget=time_budget, workers=args.workers)
    verify = None
    if args.verify:
        verify = {}
        for i, inc in enumerate(cert.structures):
            residue = lemma_km_residue(inc)
            verify[i] = {"lemma_residue": residue,
                         "verdict": Status.PASS.value if residue == 0 else Status.FAIL.value}

    text = dump_certificate(cert, verify)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    print(f"arrgate enumerate: degree {cert.degree}: {len(cert.structures)} class(es), "
          f"{cert.stats.nodes} nodes, {cert.stats.wall_time:.3f}s", file=sys.stderr)
    return EX_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> _Parser:
    parser = _Parser(prog="arrgate",
                     description="Obstruction gate for line-arrangement combinatorics: "
                                 "mod-16 and mod-24 congruence checks, exact lattice "
                                 "verification, and triple-system enumeration.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="check one arrangement (file or inline counts)")
    p_check.add_argument("file", nargs="?", default=None,
                         help="incidence file (JSON document; '-' for stdin)")
    p_check.add_argument("--degree", type=int, default=None, help="number of lines")
    p_check.add_argument("--counts", action="append", default=[],
                         metavar="M:COUNT[,M:COUNT...]",
                         help="multiplicity counts, e.g. 3:26")
    p_check.add_argument("--realization",
                         choices=[rc.value for rc in RealizationClass], default=None,
                         help="also run the classical inequality filters for this class")
    p_check.add_argument("--format", choices=["human", "json"], default="human")
    p_check.set_defaults(func=_cmd_check)

    p_scan = sub.add_parser("scan", help="scan a degree range for feasibility")
    p_scan.add_argument("d_min", type=int)
    p_scan.add_argument("d_max", type=int)
    p_scan.add_argument("--triple-only", action="store_true",
                        help="one row per degree with the forced triple count")
    p_scan.add_argument("--odd-only", action="store_true",
                        help="restrict count vectors to odd multiplicities")
    p_scan.add_argument("--cap", type=int, default=None,
                        help=f"largest allowed degree (default {DEFAULT_TRIPLE_SCAN_CAP} "
                             f"for --triple-only, else {DEFAULT_VECTOR_CAP}; "
                             f"env {ENV_SCAN_CAP})")
    p_scan.add_argument("--format", choices=["md", "csv", "json"], default="md")
    p_scan.set_defaults(func=_cmd_scan)

    p_enum = sub.add_parser("enumerate",
                            help="enumerate only-triple-point structures up to isomorphism")
    p_enum.add_argument("degree", type=int)
    p_enum.add_argument("--verify", action="store_true",
                        help="append the lattice residue per structure")
    p_enum.add_argument("--budget-nodes", type=int, default=None,
                        help=f"search node budget (default {DEFAULT_NODE_BUDGET}; "
                             f"env {ENV_BUDGET_NODES})")
    p_enum.add_argument("--budget-secs", type=float, default=None,
                        help=f"wall-time budget per subtree (env {ENV_BUDGET_SECS})")
    p_enum.add_argument("--workers", type=int, default=1,
                        help="parallel workers over search subtrees (results identical)")
    p_enum.add_argument("--large", action="store_true",
                        help=f"opt in to degree {DEFAULT_MAX_DEGREE}")
    p_enum.add_argument("--output", "-o", default=None, help="write the certificate here")
    p_enum.set_defaults(func=_cmd_enumerate)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"arrgate {args.command}: error: {exc}", file=sys.stderr)
        return EX_USAGE
    except CapExceededError as exc:
        print(f"arrgate {args.command}: error: {exc}", file=sys.stderr)
        return EX_USAGE
    except BudgetExceededError as exc:
        print(f"arrgate {args.command}: error: {exc}; partial results discarded",
              file=sys.stderr)
        return EX_BUDGET
    except IncidenceFileError as exc:
        print(f"arrgate {args.command}: error: {exc}", file=sys.stderr)
        return EX_DATA
    except (ArrgateError, ValueError, TypeError) as exc:
        print(f"arrgate {args.command}: error: {exc}", file=sys.stderr)
        return EX_DATA


if __name__ == "__main__":
    sys.exit(main())
