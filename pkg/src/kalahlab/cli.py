"""Command-line driver for reproducible kalah decision-rule experiments.

Workflow: `gen-boards` writes a seeded board population; `estimate-rhf` and
`contest` consume it and append records to a results CSV; `report` renders
the collected results as the flaw-rate table, the per-variant contest tables
and the flaw-rate/performance comparison.

All randomness flows from the master seed through derive_seed(master, label)
sub-seeds, so stages can be re-run independently and byte-identically.
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional, Sequence, TextIO

from .contest import ContestRow, run_contest
from .engine import (Board, Variant, board_from_line, board_to_line,
                     derive_seed, gen_random_board)
from .rhf import estimate_rhf
from .solver import SolveCache
from .stats import Conclusion, one_tailed_two_proportion

BOARD_FILE_FORMAT = "kalahlab-boards v1"
RESULTS_FORMAT = "kalahlab-results v1"
RESULT_COLUMNS = [
    "kind", "variant", "depth", "seed", "prefix_len", "f_count", "fwin_count",
    "rhf", "boards_used", "boards_discarded", "pairs_examined",
    "minimax_better", "pct", "p_value", "conclusion", "boards_consumed",
]


@dataclass
class ExperimentConfig:
    """Everything a run needs; round-trips losslessly through JSON."""

    variant: Variant = Variant.STANDARD
    holes: int = 3
    max_stones: int = 6
    boards: int = 1000
    prefix_len: int = 4
    depth_lo: int = 2
    depth_hi: int = 7
    alpha: float = 0.05
    min_critical: int = 100
    seed: int = 42
    out: Optional[str] = None

    def __post_init__(self):
        if isinstance(self.variant, str):
            self.variant = Variant(self.variant)
        if not 1 <= self.depth_lo <= self.depth_hi <= 12:
            raise ValueError("depth range must lie within [1, 12]")
        for name in ("holes", "max_stones", "boards", "min_critical"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")
        if self.prefix_len < 0:
            raise ValueError("prefix_len must be >= 0")

    def to_json(self) -> str:
        d = asdict(self)
        d["variant"] = self.variant.value
        return json.dumps(d, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        return cls(**json.loads(text))


def parse_depths(text: str) -> tuple[int, int]:
    """Accepts '2..7' or a single depth like '3'."""
    if ".." in text:
        lo, _, hi = text.partition("..")
        return int(lo), int(hi)
    d = int(text)
    return d, d


# --- board files ---

def write_board_file(path, boards: Sequence[Board], config: ExperimentConfig) -> None:
    with open(path, "w") as f:
        f.write(f"# {BOARD_FILE_FORMAT} seed={config.seed} holes={config.holes} "
                f"max-stones={config.max_stones} count={len(boards)}\n")
        for board in boards:
            f.write(board_to_line(board) + "\n")


def read_board_file(path, expect_seed: Optional[int] = None) -> list[Board]:
    """Parse a board file, rejecting malformed, negative, or out-of-bound
    entries with the offending line number."""
    boards = []
    header: dict[str, str] = {}
    with open(path) as f:
        for lineno, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                parts = line.lstrip("# ").split()
                for token in parts:
                    if "=" in token:
                        k, _, v = token.partition("=")
                        header[k] = v
                continue
            try:
                board = board_from_line(line)
            except ValueError as exc:
                raise ValueError(f"{path}: line {lineno}: {exc}") from None
            if "holes" in header and board.holes != int(header["holes"]):
                raise ValueError(f"{path}: line {lineno}: expected "
                                 f"{header['holes']} pits per side, got {board.holes}")
            if "max-stones" in header:
                cap = int(header["max-stones"])
                if max(board.pits_south + board.pits_north) > cap:
                    raise ValueError(f"{path}: line {lineno}: pit exceeds the "
                                     f"declared {cap}-stone bound")
                if board.store_south or board.store_north:
                    raise ValueError(f"{path}: line {lineno}: generated boards "
                                     "must have empty stores")
            boards.append(board)
    if expect_seed is not None and "seed" in header and int(header["seed"]) != expect_seed:
        print(f"warning: board file was generated with seed {header['seed']}, "
              f"not the configured seed {expect_seed}", file=sys.stderr)
    if not boards:
        raise ValueError(f"{path}: no boards found")
    return boards


# --- results CSV ---

def append_results(path, rows: Sequence[dict]) -> None:
    path = Path(path)
    fresh = not path.exists() or path.stat().st_size == 0
    with open(path, "a", newline="") as f:
        if fresh:
            f.write(f"# {RESULTS_FORMAT}\n")
            writer = csv.DictWriter(f, fieldnames=RESULT_COLUMNS)
            writer.writeheader()
        else:
            writer = csv.DictWriter(f, fieldnames=RESULT_COLUMNS)
        for row in rows:
            writer.writerow({k: ("" if row.get(k) is None else row.get(k, ""))
                             for k in RESULT_COLUMNS})


def read_results(paths) -> list[dict]:
    rows = []
    for path in paths:
        with open(path, newline="") as f:
            first = f.readline().rstrip("\n")
            if not first.startswith("#"):
                raise ValueError(f"{path}: missing version header")
            reader = csv.DictReader(f)
            for lineno, row in enumerate(reader, start=3):
                if row.get("kind") not in ("rhf", "contest"):
                    raise ValueError(f"{path}: row {lineno}: unknown kind {row.get('kind')!r}")
                rows.append(row)
    return rows


def contest_row_to_dict(row: ContestRow, seed: int) -> dict:
    return {
        "kind": "contest", "variant": row.variant.value, "depth": row.depth,
        "seed": seed, "pairs_examined": row.pairs_examined,
        "minimax_better": row.minimax_better,
        "pct": None if row.pct is None else f"{row.pct:.6f}",
        "p_value": None if row.p_value is None else f"{row.p_value:.6g}",
        "conclusion": row.conclusion.name, "boards_consumed": row.boards_consumed,
    }


# --- commands ---

def cmd_gen_boards(config: ExperimentConfig) -> None:
    if not config.out:
        raise SystemExit("gen-boards needs --out for the board file")
    rng = random.Random(derive_seed(config.seed, "boards"))
    boards = [gen_random_board(config.holes, config.max_stones, rng)
              for _ in range(config.boards)]
    write_board_file(config.out, boards, config)
    print(f"wrote {len(boards)} boards to {config.out}")


def cmd_estimate_rhf(config: ExperimentConfig, board_file: str) -> None:
    if not config.out:
        raise SystemExit("estimate-rhf needs --out for the results CSV")
    boards = read_board_file(board_file, expect_seed=config.seed)
    rng = random.Random(derive_seed(config.seed, "rhf", config.variant.value))
    est = estimate_rhf(boards, config.variant, prefix_len=config.prefix_len,
                       rng=rng, cache=SolveCache())
    append_results(config.out, [{
        "kind": "rhf", "variant": config.variant.value, "seed": config.seed,
        "prefix_len": config.prefix_len, "f_count": est.f_count,
        "fwin_count": est.fwin_count,
        "rhf": None if est.rhf is None else f"{est.rhf:.6f}",
        "boards_used": est.boards_used, "boards_discarded": est.boards_discarded,
    }])
    shown = "undefined" if est.rhf is None else f"{est.rhf:.3f}"
    print(f"{config.variant.value:14s} F={est.f_count:5d}  F&Win(n)={est.fwin_count:5d}  "
          f"rhf={shown}")


def cmd_contest(config: ExperimentConfig, board_file: str) -> None:
    if not config.out:
        raise SystemExit("contest needs --out for the results CSV")
    boards = read_board_file(board_file, expect_seed=config.seed)
    done = set()
    if Path(config.out).exists():
        for row in read_results([config.out]):
            if row["kind"] == "contest":
                done.add((row["variant"], int(row["depth"])))
    print(f"{'depth':>5} {'pairs':>6} {'mm better':>9} {'pct':>7} "
          f"{'significance':>12}  conclusion")
    for depth in range(config.depth_lo, config.depth_hi + 1):
        if (config.variant.value, depth) in done:
            print(f"{depth:5d}  (already in {config.out}, skipped)")
            continue
        row = run_contest(boards, config.variant, depth,
                          alpha=config.alpha, min_critical=config.min_critical)
        append_results(config.out, [contest_row_to_dict(row, config.seed)])
        print(f"{depth:5d} {row.pairs_examined:6d} {row.minimax_better:9d} "
              f"{_pct(row.pct):>7} {_sig(row.p_value):>12}  {row.conclusion}")


def _pct(x: Optional[float]) -> str:
    return "-" if x is None else f"{100 * x:.1f}%"


def _sig(p: Optional[float]) -> str:
    if p is None:
        return "-"
    if p < 0.001:
        return "<0.1%"
    return f"{100 * p:.1f}%"


def cmd_report(results_files: Sequence[str], out: Optional[TextIO] = None) -> None:
    rows = read_results(results_files)
    out = out or sys.stdout
    w = out.write

    rhf_rows = {r["variant"]: r for r in rows if r["kind"] == "rhf"}
    contest_rows = [r for r in rows if r["kind"] == "contest"]

    w("RATE OF HEURISTIC FLAW\n")
    order = [v.value for v in Variant]
    if rhf_rows:
        w(f"{'game type':14s} {'F':>6} {'F & Win(n)':>11} {'rhf':>7}\n")
        for variant in order:
            r = rhf_rows.get(variant)
            if r is None:
                continue
            shown = "undef" if r["rhf"] == "" else f"{float(r['rhf']):.3f}"
            w(f"{variant:14s} {r['f_count']:>6} {r['fwin_count']:>11} {shown:>7}\n")
        missing = [v for v in order if v not in rhf_rows]
        if missing:
            w(f"(incomplete: no estimates for {', '.join(missing)})\n")
        std, prem = rhf_rows.get("standard"), rhf_rows.get("no-premature")
        if std and prem and std["rhf"] != "" and prem["rhf"] != "":
            z, p = one_tailed_two_proportion(
                int(std["fwin_count"]), int(std["f_count"]),
                int(prem["fwin_count"]), int(prem["f_count"]))
            verdict = "significant" if p < 0.05 else "not significant"
            w(f"standard vs no-premature (one-tailed pooled two-proportion "
              f"z-test, independence assumed): z={z:.2f}, p={_sig(p)} -> "
              f"{verdict} at 95%\n")
    else:
        w("(no flaw-rate records)\n")

    for variant in order:
        table = sorted((r for r in contest_rows if r["variant"] == variant),
                       key=lambda r: int(r["depth"]))
        if not table:
            continue
        w(f"\nCONTESTS: MINIMAX vs PRODUCT ({variant})\n")
        w(f"{'depth':>5} {'pairs':>6} {'mm better':>9} {'pct':>7} "
          f"{'significance':>12}  conclusion\n")
        for r in table:
            pct = None if r["pct"] == "" else float(r["pct"])
            p = None if r["p_value"] == "" else float(r["p_value"])
            w(f"{int(r['depth']):5d} {r['pairs_examined']:>6} "
              f"{r['minimax_better']:>9} {_pct(pct):>7} {_sig(p):>12}  "
              f"{Conclusion[r['conclusion']]}\n")

    w("\nFLAW RATE vs PRODUCT PERFORMANCE\n")
    have_all_rhf = all(v in rhf_rows and rhf_rows[v]["rhf"] != "" for v in order)
    perf: dict[str, float] = {}
    for variant in order:
        pcts = [float(r["pct"]) for r in contest_rows
                if r["variant"] == variant and r["pct"] != ""]
        if pcts:
            perf[variant] = 1.0 - sum(pcts) / len(pcts)  # product's mean share
    if have_all_rhf and len(perf) == len(order):
        by_rhf = sorted(order, key=lambda v: -float(rhf_rows[v]["rhf"]))
        by_perf = sorted(order, key=lambda v: -perf[v])
        w("ranking by flaw rate:            " + " > ".join(by_rhf) + "\n")
        w("ranking by product performance:  " + " > ".join(by_perf) + "\n")
        agree = "agree" if by_rhf == by_perf else "disagree"
        w(f"the two rankings {agree} "
          f"(performance = product's mean share of critical pairs)\n")
    else:
        w("(incomplete: needs flaw-rate and contest records for all three "
          "variants)\n")


def main(argv: Optional[Sequence[str]] = None) -> None:
    parser = argparse.ArgumentParser(
        prog="kalahlab",
        description="Kalah decision-rule experiments: flaw-rate estimation "
                    "and minimax-vs-product contests.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_variant=True):
        if with_variant:
            p.add_argument("--variant", type=Variant,
                           choices=list(Variant), default=Variant.STANDARD)
        p.add_argument("--holes", type=int, default=3)
        p.add_argument("--max-stones", type=int, default=6)
        p.add_argument("--boards", type=int, default=1000)
        p.add_argument("--prefix-len", type=int, default=4)
        p.add_argument("--depths", type=parse_depths, default=(2, 7),
                       metavar="A..B")
        p.add_argument("--alpha", type=float, default=0.05)
        p.add_argument("--min-critical", type=int, default=100)
        p.add_argument("--seed", type=int, default=42)
        p.add_argument("--out", required=True)

    p_gen = sub.add_parser("gen-boards", help="write a random board population")
    add_common(p_gen, with_variant=False)

    p_rhf = sub.add_parser("estimate-rhf", help="estimate the rate of heuristic flaw")
    p_rhf.add_argument("board_file")
    add_common(p_rhf)

    p_con = sub.add_parser("contest", help="run minimax-vs-product contests")
    p_con.add_argument("board_file")
    add_common(p_con)

    p_rep = sub.add_parser("report", help="render collected results")
    p_rep.add_argument("results", nargs="+")
    p_rep.add_argument("--out")

    args = parser.parse_args(argv)
    if args.command == "report":
        if args.out:
            with open(args.out, "w") as f:
                cmd_report(args.results, f)
            print(f"wrote report to {args.out}")
        else:
            cmd_report(args.results)
        return

    config = ExperimentConfig(
        variant=getattr(args, "variant", Variant.STANDARD),
        holes=args.holes, max_stones=args.max_stones, boards=args.boards,
        prefix_len=args.prefix_len, depth_lo=args.depths[0],
        depth_hi=args.depths[1], alpha=args.alpha,
        min_critical=args.min_critical, seed=args.seed, out=args.out)
    if args.command == "gen-boards":
        cmd_gen_boards(config)
    elif args.command == "estimate-rhf":
        cmd_estimate_rhf(config, args.board_file)
    elif args.command == "contest":
        cmd_contest(config, args.board_file)


if __name__ == "__main__":
    main()
