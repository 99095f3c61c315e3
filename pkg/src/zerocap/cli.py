"""Command-line front end: ``zerocap <subcommand> ...``.

Every subcommand writes CSV (default) or JSON to stdout or ``--output``.
SNRs are given in dB here and converted to linear before reaching the
library.

Exit codes: 0 success, 2 bad arguments, 3 solver failure, 4 failed
Monte Carlo verification.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .copulas import ArchLowerCopula, BivariateCopula, parse_copula
from .errors import DomainError, ZocError
from .marginals import GainDistribution, parse_distribution
from .montecarlo import verify_zoc
from .zoc import (
    Combiner,
    bounds_report,
    bsym_check_arch,
    bsym_check_w,
    generic_two_link,
    mrc_inner_bound,
    mrc_two_link_ct,
    sc_n_heterogeneous,
    sc_n_homogeneous,
)

DEFAULT_SEED = 0x5EED

# short column names used by the published plot data files
SHORT_ALIASES = {"capacity_bits": "capac"}

EXIT_PARSE, EXIT_SOLVER, EXIT_VERIFY = 2, 3, 4


class ParseError(Exception):
    pass


class VerificationFailed(Exception):
    def __init__(self, report):
        super().__init__("verification failed")
        self.report = report


def fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.9g}"


def _json_number(value):
    if isinstance(value, (bool, np.bool_)):
        return int(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    return float(f"{float(value):.9g}")


@dataclass
class CsvTable:
    header: list[str]
    rows: list[list]

    def __post_init__(self):
        if any(len(r) != len(self.header) for r in self.rows):
            raise ValueError("ragged table")

    def renamed(self, aliases: dict[str, str]) -> "CsvTable":
        return CsvTable([aliases.get(h, h) for h in self.header], self.rows)

    def to_csv(self) -> str:
        lines = [",".join(self.header)]
        lines += [",".join(fmt(v) for v in row) for row in self.rows]
        return "\n".join(lines) + "\n"

    def to_records(self) -> list[dict]:
        return [{h: _json_number(v) for h, v in zip(self.header, row)} for row in self.rows]

    def to_json(self) -> str:
        return json.dumps(self.to_records(), indent=2) + "\n"


# ---------------------------------------------------------------------------
# argument parsing helpers


def parse_grid(text: str) -> np.ndarray:
    """``lo:hi:count`` -> ``count`` evenly spaced values (``lo`` alone if count is 1)."""
    parts = text.split(":")
    if len(parts) == 1:
        try:
            return np.array([float(parts[0])])
        except ValueError as exc:
            raise ParseError(f"bad grid {text!r}") from exc
    if len(parts) != 3:
        raise ParseError(f"grid must look like lo:hi:count, got {text!r}")
    try:
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise ParseError(f"bad grid {text!r}") from exc
    if count < 1:
        raise ParseError("grid count must be >= 1")
    return np.array([lo]) if count == 1 else np.linspace(lo, hi, count)


def parse_n_range(text: str) -> range:
    """``lo:hi`` (inclusive) or a single integer."""
    try:
        parts = [int(p) for p in text.split(":")]
    except ValueError as exc:
        raise ParseError(f"bad n range {text!r}") from exc
    if len(parts) == 1:
        parts *= 2
    if len(parts) != 2 or parts[0] > parts[1] or parts[0] < 2 or parts[1] > 10**6:
        raise ParseError(f"n range must be lo:hi within [2, 1e6], got {text!r}")
    return range(parts[0], parts[1] + 1)


def _dist(spec: str) -> GainDistribution:
    try:
        return parse_distribution(spec)
    except DomainError as exc:
        raise ParseError(str(exc)) from exc


def _dists(specs: Sequence[str] | None, expected: int | None = None) -> list[GainDistribution]:
    specs = specs or []
    if expected is not None and len(specs) != expected:
        raise ParseError(f"expected {expected} --dist options, got {len(specs)}")
    return [_dist(s) for s in specs]


def _with_snr(template: str, snr_db: float) -> GainDistribution:
    name, _, body = template.partition(":")
    body = f"{body},snr_db={snr_db!r}" if body else f"snr_db={snr_db!r}"
    return _dist(f"{name}:{body}")


# ---------------------------------------------------------------------------
# commands


def cmd_curve_t(args) -> CsvTable:
    F1, F2 = _dists(args.dist, 2)
    grid = parse_grid(args.t_grid)
    if np.any((grid < 0) | (grid > 1)):
        raise ParseError("t grid must lie within [0, 1]")
    rows = [[t, mrc_two_link_ct(F1, F2, float(t)).rate_bits] for t in grid]
    return CsvTable(["t", "capacity_bits"], rows)


def cmd_snr_grid(args) -> CsvTable:
    if not 0.0 <= args.t <= 1.0:
        raise ParseError("t must lie within [0, 1]")
    g1 = parse_grid(args.snr1_grid)
    g2 = parse_grid(args.snr2_grid) if args.snr2_grid else g1
    rows = []
    for a in g1:
        F1 = _with_snr(args.family, float(a))
        for b in g2:
            F2 = _with_snr(args.family, float(b))
            rows.append([a, b, mrc_two_link_ct(F1, F2, args.t).rate_bits])
    return CsvTable(["snr1_db", "snr2_db", "capacity_bits"], rows)


def cmd_bounds(args) -> CsvTable:
    (F,) = _dists(args.dist, 1)
    ns = parse_n_range(args.n_range)
    rows = [
        [r.n, r.inner_bits, r.outer_w_bits, r.outer_jm_bits, r.gap_bits, r.gap_limit_bits, r.bsym_w, r.bsym_arch]
        for r in bounds_report(F, ns)
    ]
    return CsvTable(["n", "inner", "outer_w", "outer_jm", "gap", "gap_limit", "bsym_w", "bsym_arch"], rows)


def cmd_sc(args):
    Fs = _dists(args.dist)
    if not Fs:
        raise ParseError("at least one --dist is required")
    if len(Fs) == 1:
        if args.n_range is None:
            raise ParseError("a single --dist needs --n-range")
        F = Fs[0]
        rows = [[n, sc_n_homogeneous(F, n).rate_bits] for n in parse_n_range(args.n_range)]
        return CsvTable(["n", "capacity_bits"], rows)
    if args.n_range is not None:
        raise ParseError("--n-range only applies to a single --dist")
    res = sc_n_heterogeneous(Fs)
    record = {"n": len(Fs), "p_star": res.p_star, "s_star": res.snr_threshold, "rate": res.rate_bits}
    return record


def _verify_setup(args):
    comb = Combiner.parse(args.combiner)
    Fs = _dists(args.dist)
    if not Fs:
        raise ParseError("at least one --dist is required")
    if args.copula and args.coupling:
        raise ParseError("give either --copula or --coupling, not both")

    if args.copula:
        try:
            coupling = parse_copula(args.copula)
        except DomainError as exc:
            raise ParseError(str(exc)) from exc
        dim = coupling.dim
    elif args.coupling in ("rotation", "hetero_sc"):
        coupling = args.coupling
        dim = args.n if args.coupling == "rotation" and args.n else len(Fs)
    else:
        raise ParseError("one of --copula or --coupling {rotation,hetero_sc} is required")

    if len(Fs) == 1 and dim > 1:
        Fs = Fs * dim
    if len(Fs) != dim:
        raise ParseError(f"coupling has dimension {dim} but {len(Fs)} marginals were given")

    if args.claim is not None:
        return coupling, Fs, comb, args.claim
    if isinstance(coupling, BivariateCopula):
        claim = generic_two_link(coupling, Fs[0], Fs[1], comb).rate_bits
    elif isinstance(coupling, ArchLowerCopula) and comb is Combiner.MRC:
        claim = mrc_inner_bound(Fs[0], dim)
    elif coupling == "rotation" and comb is Combiner.SC:
        claim = sc_n_homogeneous(Fs[0], dim).rate_bits
    elif coupling == "hetero_sc" and comb is Combiner.SC:
        claim = sc_n_heterogeneous(Fs).rate_bits
    else:
        raise ParseError("no analytic claim for this coupling/combiner; pass --claim")
    return coupling, Fs, comb, claim


def cmd_verify(args) -> dict:
    if args.samples < 1000:
        raise ParseError("--samples must be >= 1000")
    coupling, Fs, comb, claim = _verify_setup(args)
    result = verify_zoc(coupling, Fs, comb, claim, N=args.samples, seed=args.seed, delta_bits=args.delta)
    report = {
        "coupling": args.copula or args.coupling,
        "combiner": comb.value,
        "claim_bits": claim,
        "delta_bits": args.delta,
        "seed": args.seed,
        "samples": args.samples,
        "at_claim": result.at_claim.as_dict(),
        "above_claim": result.above_claim.as_dict(),
        "passed": result.passed,
    }
    if not result.passed:
        raise VerificationFailed(report)
    return report


def _verdict_dict(v) -> dict:
    return {
        "lemma": v.lemma,
        "condition_value": v.condition_value,
        "holds": v.holds,
        "quasiconcavity_ok": v.quasiconcavity_ok,
        "x_star": v.x_star,
        "notes": list(v.notes),
        **v.extras,
    }


def cmd_bsym(args) -> dict:
    (F,) = _dists(args.dist, 1)
    if args.n < 2:
        raise ParseError("--n must be >= 2")
    return {
        "n": args.n,
        "w_boundary": _verdict_dict(bsym_check_w(F, args.n)),
        "arch_boundary": _verdict_dict(bsym_check_arch(F, args.n)),
    }


def cmd_sample(args) -> CsvTable:
    from .montecarlo import gains_from_copula

    try:
        c = parse_copula(args.copula)
    except DomainError as exc:
        raise ParseError(str(exc)) from exc
    Fs = _dists(args.dist)
    if len(Fs) == 1:
        Fs = Fs * c.dim
    if len(Fs) != c.dim:
        raise ParseError(f"copula has dimension {c.dim} but {len(Fs)} marginals were given")
    if args.samples < 1:
        raise ParseError("--samples must be >= 1")
    batch = gains_from_copula(c, Fs, args.samples, args.seed)
    return CsvTable([f"x{i + 1}" for i in range(batch.n)], batch.gains.tolist())


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zerocap", description="Zero-outage capacities of dependent fading channels."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, table=True):
        p.add_argument("--output", "-o", help="write to this file instead of stdout")
        p.add_argument("--format", choices=["csv", "json"], default="csv" if table else "json")
        if table:
            p.add_argument("--short-columns", action="store_true",
                           help="rename capacity_bits to capac")

    p = sub.add_parser("curve-t", help="two-link MRC ZOC versus copula parameter t")
    p.add_argument("--dist", action="append", required=True, help="marginal spec, given twice")
    p.add_argument("--t-grid", default="0:1:101")
    common(p)
    p.set_defaults(func=cmd_curve_t)

    p = sub.add_parser("snr-grid", help="two-link MRC ZOC on a grid of SNR pairs")
    p.add_argument("--family", default="rayleigh", help="e.g. rayleigh or nakagami:m=5 (no snr_db)")
    p.add_argument("--t", type=float, default=0.5)
    p.add_argument("--snr1-grid", default="-10:10:21", help="dB grid lo:hi:count")
    p.add_argument("--snr2-grid", default=None, help="defaults to --snr1-grid")
    common(p)
    p.set_defaults(func=cmd_snr_grid)

    p = sub.add_parser("bounds", help="inner/outer bounds on the n-link MRC maximum ZOC")
    p.add_argument("--dist", action="append", required=True)
    p.add_argument("--n-range", default="2:10")
    common(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("sc", help="maximum ZOC with selection combining")
    p.add_argument("--dist", action="append", required=True)
    p.add_argument("--n-range", default=None)
    common(p)
    p.set_defaults(func=cmd_sc)

    p = sub.add_parser("verify", help="Monte Carlo check of a zero-outage claim")
    p.add_argument("--copula", default=None)
    p.add_argument("--coupling", choices=["rotation", "hetero_sc"], default=None)
    p.add_argument("--n", type=int, default=None, help="number of links for the rotation coupling")
    p.add_argument("--dist", action="append", required=True)
    p.add_argument("--combiner", default="mrc")
    p.add_argument("--claim", type=float, default=None, help="rate in bits; computed if omitted")
    p.add_argument("--delta", type=float, default=0.05)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common(p, table=False)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bsym", help="sufficient B-SYM conditions for a marginal")
    p.add_argument("--dist", action="append", required=True)
    p.add_argument("--n", type=int, required=True)
    common(p, table=False)
    p.set_defaults(func=cmd_bsym)

    p = sub.add_parser("sample", help="draw gain samples from a copula as CSV")
    p.add_argument("--copula", required=True)
    p.add_argument("--dist", action="append", required=True)
    p.add_argument("--samples", type=int, default=2000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common(p)
    p.set_defaults(func=cmd_sample)
    return parser


def _render(result, args) -> str:
    if isinstance(result, CsvTable):
        if getattr(args, "short_columns", False):
            result = result.renamed(SHORT_ALIASES)
        return result.to_json() if args.format == "json" else result.to_csv()
    if args.format == "csv":
        table = CsvTable(list(result), [list(result.values())])
        return table.to_csv()
    return json.dumps(result, indent=2, default=_json_number) + "\n"


def _emit(text: str, args, stdout) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        stdout.write(text)


def main(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result = args.func(args)
    except (ParseError, DomainError) as exc:
        print(f"zerocap: error: {exc}", file=stderr)
        return EXIT_PARSE
    except VerificationFailed as exc:
        _emit(json.dumps(exc.report, indent=2) + "\n", args, stdout)
        print("zerocap: verification failed", file=stderr)
        return EXIT_VERIFY
    except ZocError as exc:
        print(f"zerocap: solver failure: {exc}", file=stderr)
        return EXIT_SOLVER
    _emit(_render(result, args), args, stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())


def main_entry() -> None:
    sys.exit(main())
