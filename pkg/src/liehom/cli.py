"""Command-line front end.

    liehom lyndon   --max-weight 12
    liehom homology --algebra quotient_K --max-weight 15
    liehom certify  --input family.json --format json
    liehom cache    inspect | clear

Exit status is 0 exactly when every verdict in the report passes, 1 when some
verdict fails and 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Callable

from . import __version__
from .cechains import differential_matrix
from .construction import (
    CertificatePreconditionError,
    independence_certificate,
    load_input,
    minimal_sequence,
    random_rank_families,
    rank_bound_certificate,
    verify_admissible,
    verify_block_structure,
    verify_d_injective_occ2_degree3,
    verify_domega_equality,
    verify_fset_properties,
)
from .exactlinalg import rank
from .freelie import (
    FreeLieAlgebra,
    GradedAlgebra,
    lyndon_words,
    nilpotent_truncation,
    quotient_J,
    quotient_K,
    witt_dimension,
)
from .freelie.cache import ENV_VAR, BracketCache
from .homology import BettiTable, ResourceLimitExceeded, betti_table, v_map_matrix, v_space
from .report import CertificateReport, ReportBundle

log = logging.getLogger("liehom")

DEFAULT_WEIGHT = {"free": 10, "quotient_K": 30, "quotient_J": 30, "nilpotent": 10}


@dataclass
class RunConfig:
    command: str
    algebra: str | None = None
    max_weight: int | None = None
    truncate: int | None = None
    input: str | None = None
    format: str = "text"
    cache_dir: str | None = None
    jobs: int = 1
    occurrence: int | None = None
    max_degree: int | None = None
    timing: bool = False
    max_cell: int = 20000
    use_cache: bool = True

    def validate(self) -> None:
        if self.max_weight is not None and self.max_weight < 1:
            raise ValueError("--max-weight must be >= 1")
        if self.truncate is not None and self.truncate < 1:
            raise ValueError("--truncate must be >= 1")
        if self.format not in ("json", "csv", "text"):
            raise ValueError("--format must be json, csv or text")
        if self.jobs < 1:
            raise ValueError("--jobs must be >= 1")


class UsageError(ValueError):
    pass


def make_algebra(selector: str) -> GradedAlgebra:
    if selector == "free":
        return FreeLieAlgebra(("a", "b"))
    if selector in ("quotient_K", "K"):
        return quotient_K()
    if selector in ("quotient_J", "J"):
        return quotient_J()
    if selector.startswith("nilpotent"):
        _, _, q = selector.partition(":")
        if not q.isdigit():
            raise UsageError("nilpotent truncation is written nilpotent:Q, e.g. nilpotent:4")
        return nilpotent_truncation(int(q))
    raise UsageError(f"unknown algebra {selector!r} (free, quotient_K, quotient_J, nilpotent:Q)")


def _timed(cfg: RunConfig, fn: Callable[[], CertificateReport]) -> CertificateReport:
    t0 = time.perf_counter()
    rep = fn()
    if cfg.timing:
        rep.timing_ms = round((time.perf_counter() - t0) * 1000, 3)
    return rep


# -- lyndon -----------------------------------------------------------------


def cmd_lyndon(cfg: RunConfig) -> ReportBundle:
    N = cfg.max_weight or 12
    gens = ("a", "b")
    words = list(lyndon_words(len(gens), N))
    counts = [sum(1 for w in words if len(w) == n) for n in range(1, N + 1)]
    witt = [witt_dimension(len(gens), n) for n in range(1, N + 1)]
    verdict = CertificateReport(
        name="lyndon_witt_agreement",
        parameters={"generators": list(gens), "max_weight": N},
        passed=counts == witt,
        witnesses={"counts": counts, "witt": witt},
    )
    return ReportBundle(
        config_echo=_echo(cfg),
        verdicts=[verdict],
        extra={"words": ["".join(gens[i] for i in w) for w in words]},
    )


# -- homology ---------------------------------------------------------------


def _d_squared(alg: GradedAlgebra, N: int, occ: int | None, max_degree: int | None) -> CertificateReport:
    bad = []
    cells = 0
    for n in range(N + 1):
        top = n if max_degree is None else min(n, max_degree + 1)
        for p in range(2, top + 1):
            prod = differential_matrix(p - 1, n, alg, occ) @ differential_matrix(p, n, alg, occ)
            cells += 1
            if not prod.is_zero():
                bad.append([p, n])
    return CertificateReport(
        name="d_squared_zero",
        parameters={"algebra": alg.name, "max_weight": N, "occurrence": occ},
        passed=not bad,
        witnesses={"cells_checked": cells, "failures": bad},
    )


def _expected_pattern(alg: GradedAlgebra, table: BettiTable, cfg: RunConfig) -> list[CertificateReport]:
    N = table.max_weight
    occ = table.occurrence_filter
    out = []
    if alg.name == "free" and occ is None:
        bad = []
        for (p, n), d in table.entries.items():
            want = 1 if (p, n) == (0, 0) else len(alg.generators) if (p, n) == (1, 1) else 0
            if d != want:
                bad.append({"p": p, "n": n, "dim": d, "expected": want})
        out.append(CertificateReport("free_homology_pattern", {"max_weight": N}, not bad, {"mismatches": bad}))
    elif alg.name == "free":
        bad = [{"p": p, "n": n, "dim": d} for (p, n), d in table.entries.items() if p >= 2 and d]
        out.append(CertificateReport(
            "occurrence_subcomplex_acyclic", {"max_weight": N, "occurrence": occ}, not bad, {"nonzero": bad}
        ))
    elif alg.name == "quotient_K" and occ is None:
        bad = []
        for n in range(N + 1):
            want = 1 if n >= 3 and n % 2 else 0
            if table.get(2, n) != want:
                bad.append({"n": n, "dim": table.get(2, n), "expected": want})
        out.append(CertificateReport("quotient_K_H2_odd_weights", {"max_weight": N}, not bad, {"mismatches": bad}))
        vbad = []
        for p in range(1, N - 1):
            if len(v_space(alg, p)) != (p // 2 if p % 2 == 0 else p // 2 + 1):
                vbad.append({"p": p, "dim": len(v_space(alg, p))})
            if p % 2 == 1:
                m = v_map_matrix(alg, p)
                if not (m.rows == m.cols and rank(m) == m.rows):
                    vbad.append({"map_from": p, "shape": list(m.shape)})
        out.append(CertificateReport("quotient_K_V_spaces", {"max_weight": N}, not vbad, {"failures": vbad}))
    elif alg.name == "quotient_J" and occ is not None:
        free = FreeLieAlgebra(("a", "b"))
        ref = betti_table(free, N, occ, cfg.max_degree, jobs=cfg.jobs)
        rank_bad = []
        for n in range(N + 1):
            for p in range(1, n + 1):
                rj = rank(differential_matrix(p, n, alg, occ))
                rf = rank(differential_matrix(p, n, free, occ))
                if rj != rf:
                    rank_bad.append({"p": p, "n": n, "rank_J": rj, "rank_free": rf})
        same = ref.entries == table.entries
        out.append(CertificateReport(
            "occurrence_subcomplex_matches_free",
            {"max_weight": N, "occurrence": occ},
            same and not rank_bad,
            {"betti_equal": same, "rank_mismatches": rank_bad},
        ))
    return out


def cmd_homology(cfg: RunConfig) -> ReportBundle:
    if not cfg.algebra:
        raise UsageError("--algebra is required")
    alg = make_algebra(cfg.algebra)
    N = cfg.max_weight or DEFAULT_WEIGHT[_family(cfg.algebra)]
    if cfg.max_weight is None and _family(cfg.algebra) == "quotient_J" and cfg.occurrence is None:
        N = 20  # unfiltered J chain groups pass 20000 basis elements near weight 29
    if cfg.use_cache:
        BracketCache(cfg.cache_dir).get_or_build(alg, N)
    t0 = time.perf_counter()
    table = betti_table(alg, N, cfg.occurrence, cfg.max_degree, jobs=cfg.jobs, max_cell=cfg.max_cell)
    verdicts = [
        CertificateReport(
            "betti_table",
            {"algebra": alg.name, "max_weight": N, "occurrence": cfg.occurrence},
            True,
            {"cells": len(table.entries)},
            round((time.perf_counter() - t0) * 1000, 3) if cfg.timing else None,
        ),
        _timed(cfg, lambda: _d_squared(alg, N, cfg.occurrence, cfg.max_degree)),
    ]
    verdicts += _expected_pattern(alg, table, cfg)
    return ReportBundle(config_echo=_echo(cfg), verdicts=verdicts, extra={"betti": table.to_dict()})


def _family(selector: str) -> str:
    if selector.startswith("nilpotent"):
        return "nilpotent"
    return {"K": "quotient_K", "J": "quotient_J"}.get(selector, selector)


# -- certify ----------------------------------------------------------------


def _rank_suite(T: int = 40, count: int = 50) -> CertificateReport:
    reports = [rank_bound_certificate(fam, T) for fam in random_rank_families(count, 5, T, seed=0)]
    e0 = [1] + [0] * (T - 1)
    e1 = [0, 1] + [0] * (T - 2)
    reports.append(rank_bound_certificate([(e0, e1)], T))
    reports.append(rank_bound_certificate([(e1, e1)], T))
    return CertificateReport(
        name="rank_bound",
        parameters={"families": len(reports), "T": T},
        passed=all(r.passed for r in reports),
        witnesses={
            "ranks": [[r.witnesses["rank"], r.witnesses["bound"]] for r in reports],
            "rank_one_per_pair_holds": all(r.witnesses["rank_one_per_pair_holds"] for r in reports),
        },
    )


def _fset_clauses(seq, A=None) -> list[CertificateReport]:
    rep = verify_fset_properties(seq, A)
    out = []
    labels = {"i": "fset_distinct", "ii": "fset_row_membership", "iii": "fset_no_mirror",
              "sums": "fset_sum_separation"}
    for clause, name in labels.items():
        n = rep.witnesses["violations"][clause]
        wit = {"violations": n, "pairs": rep.witnesses["pairs"],
               "examples": rep.witnesses["examples"].get(clause, [])[:5]}
        if clause == "iii":
            wit["mirror_diagnostics"] = rep.witnesses["mirror_diagnostics"]
        out.append(CertificateReport(name, rep.parameters, n == 0, wit))
    return out


def _independence(seq, subsets, T) -> CertificateReport:
    try:
        return independence_certificate(seq, subsets, T)
    except CertificatePreconditionError as exc:
        return CertificateReport(
            "independence",
            {"sequence": seq.to_dict(), "subsets": [sorted(A) for A in subsets], "T": T},
            False,
            {"error": str(exc), "minimal_truncation": exc.minimal_truncation},
        )


def _run_task(task: tuple) -> list[CertificateReport]:
    kind, args, timing = task
    t0 = time.perf_counter()
    if kind == "admissible":
        out = [verify_admissible(*args)]
    elif kind == "fset":
        out = _fset_clauses(*args)
    elif kind == "block":
        out = [verify_block_structure(*args)]
    elif kind == "domega":
        out = [verify_domega_equality(*args)]
    elif kind == "injective":
        out = [verify_d_injective_occ2_degree3(*args)]
    elif kind == "rank":
        out = [_rank_suite()]
    elif kind == "independence":
        out = [_independence(*args)]
    else:
        raise ValueError(kind)
    if timing:
        ms = round((time.perf_counter() - t0) * 1000, 3)
        for r in out:
            r.timing_ms = ms
    return out


def cmd_certify(cfg: RunConfig) -> ReportBundle:
    if cfg.input:
        seq, subsets, doc = load_input(cfg.input)
    else:
        seq = minimal_sequence(4)
        subsets = [frozenset({2}), frozenset({3}), frozenset({4})]
        doc = {"minimal_sequence": 4, "subsets": [[2], [3], [4]]}
    N = cfg.max_weight or 52
    # F-set of the chains actually requested
    union = sorted(set().union(*subsets))
    tasks: list[tuple] = [("admissible", (seq,), cfg.timing), ("fset", (seq, union), cfg.timing)]
    for A in subsets:
        for k in range(2, seq.m + 1):
            tasks.append(("block", (seq, A, k), cfg.timing))
    for A in subsets:
        tasks.append(("domega", (seq, A, N), cfg.timing))
    tasks.append(("injective", (min(N, 52),), cfg.timing))
    tasks.append(("rank", (), cfg.timing))
    tasks.append(("independence", (seq, subsets, cfg.truncate), cfg.timing))
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_run_task, tasks))
    else:
        results = [_run_task(t) for t in tasks]
    verdicts = [r for group in results for r in group]
    echo = _echo(cfg)
    echo["input_document"] = doc
    return ReportBundle(config_echo=echo, verdicts=verdicts)


# -- cache ------------------------------------------------------------------


def cmd_cache(cfg: RunConfig, action: str) -> int:
    cache = BracketCache(cfg.cache_dir)
    if action == "clear":
        n = cache.clear()
        print(f"removed {n} cache entries from {cache.directory}")
        return 0
    entries = cache.entries()
    print(f"cache directory: {cache.directory}")
    for e in entries:
        print("  " + " ".join(f"{k}={v}" for k, v in e.items()))
    if not entries:
        print("  (empty)")
    return 0 if all(e["valid"] for e in entries) else 1


# -- output -----------------------------------------------------------------


def _echo(cfg: RunConfig) -> dict:
    d = asdict(cfg)
    # volatile settings stay out of the report so output is identical across runs
    for k in ("cache_dir", "jobs", "timing", "use_cache", "format", "max_cell"):
        d.pop(k)
    return d


def render(bundle: ReportBundle, fmt: str) -> str:
    if fmt == "json":
        return bundle.to_json()
    if fmt == "csv":
        if "betti" in bundle.extra:
            b = bundle.extra["betti"]
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["algebra", "occurrence", "p", "n", "dim"])
            for e in b["entries"]:
                occ = "" if b["occurrence_filter"] is None else b["occurrence_filter"]
                w.writerow([b["algebra"], occ, e["p"], e["n"], e["dim"]])
            return buf.getvalue() + "\n" + bundle.to_csv()
        return bundle.to_csv()
    text = []
    if "words" in bundle.extra:
        text.append(" ".join(bundle.extra["words"]))
    if "betti" in bundle.extra:
        text.append(_betti_text(bundle.extra["betti"]))
    text.append(bundle.to_text())
    return "\n".join(text)


def _betti_text(b: dict) -> str:
    entries = {(e["p"], e["n"]): e["dim"] for e in b["entries"]}
    N = b["max_weight"]
    P = max((p for p, _ in entries), default=0)
    head = f"H_p(n) for {b['algebra']}" + (f", occurrence {b['occurrence_filter']}" if b["occurrence_filter"] is not None else "")
    lines = [head, "  n: " + " ".join(f"{n:>3}" for n in range(N + 1))]
    for p in range(P + 1):
        cells = [f"{entries[(p, n)]:>3}" if (p, n) in entries else "  ." for n in range(N + 1)]
        lines.append(f"p={p:<2} " + " ".join(cells))
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-weight", "-N", type=int, default=None, help="weight truncation N")
    common.add_argument("--format", choices=("json", "csv", "text"), default="text")
    common.add_argument("--cache-dir", default=None, help=f"bracket-table cache (env {ENV_VAR})")
    common.add_argument("--jobs", "-j", type=int, default=1, help="worker processes")
    common.add_argument("--timing", action="store_true", help="record timing_ms (reports then differ run to run)")

    parser = argparse.ArgumentParser(prog="liehom", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"liehom {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("lyndon", parents=[common], help="Lyndon words vs the Witt formula")

    h = sub.add_parser("homology", parents=[common], help="Betti table of a Chevalley-Eilenberg complex")
    h.add_argument("--algebra", "-a", required=True, help="free | quotient_K | quotient_J | nilpotent:Q")
    h.add_argument("--occurrence", type=int, default=None, help="restrict to chains of this b-occurrence")
    h.add_argument("--max-degree", type=int, default=None, help="largest chain degree p")
    h.add_argument("--max-cell", type=int, default=20000, help="refuse chain groups larger than this")
    h.add_argument("--no-cache", action="store_true", help="skip the bracket-table cache")

    c = sub.add_parser("certify", parents=[common], help="sequence, matrix and boundary certificates")
    c.add_argument("--input", "-i", default=None, help="JSON with r/s (or minimal_sequence) and subsets")
    c.add_argument("--truncate", "-T", type=int, default=None, help="matrix truncation T (default: automatic)")

    k = sub.add_parser("cache", parents=[common], help="inspect or clear the bracket-table cache")
    k.add_argument("action", choices=("inspect", "clear"))
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(message)s", stream=sys.stderr)
    args = build_parser().parse_args(argv)
    cfg = RunConfig(
        command=args.command,
        algebra=getattr(args, "algebra", None),
        max_weight=args.max_weight,
        truncate=getattr(args, "truncate", None),
        input=getattr(args, "input", None),
        format=args.format,
        cache_dir=args.cache_dir,
        jobs=args.jobs,
        occurrence=getattr(args, "occurrence", None),
        max_degree=getattr(args, "max_degree", None),
        timing=args.timing,
        max_cell=getattr(args, "max_cell", 20000),
        use_cache=not getattr(args, "no_cache", False),
    )
    try:
        cfg.validate()
        if cfg.command == "cache":
            return cmd_cache(cfg, args.action)
        bundle = {"lyndon": cmd_lyndon, "homology": cmd_homology, "certify": cmd_certify}[cfg.command](cfg)
    except ResourceLimitExceeded as exc:
        print(f"liehom: error: {exc}; lower --max-weight or raise --max-cell", file=sys.stderr)
        return 2
    except (UsageError, ValueError) as exc:
        print(f"liehom: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(render(bundle, cfg.format))
    return 0 if bundle.passed else 1


if __name__ == "__main__":
    sys.exit(main())
