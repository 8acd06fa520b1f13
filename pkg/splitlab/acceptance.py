"""
Executable acceptance suite.

Each criterion checks one catalog identity or runs one cross-validation
sweep and returns a pass flag with a JSON-ready detail block.
"""

import time
from collections.abc import Callable, Iterable
from dataclasses import dataclass
from typing import Any

import numpy as np
import structlog

from splitlab import catalog
from splitlab.config import Settings, get_settings
from splitlab.corpus import (
    cographic_corpus,
    connected_multigraphs,
    graphic_corpus,
    planted_tilde_hosts,
    random_binary_matroids,
    regular_corpus,
)
from splitlab.gf2 import BitMatrix, row_space_equal
from splitlab.matroid import (
    BinaryMatroid,
    MinorSpec,
    dual,
    from_graph,
    is_2_cocircuit,
    isomorphic,
    loops_coloops,
    minor,
    pairs,
    same_matroid,
)
from splitlab.recognition import classify, graphic_by_realization, has_minor
from splitlab.splitting import SplitError, SplitPair, split, split_graph
from splitlab.theorems import (
    CASES,
    CURRENT_CASES,
    minimality_report,
    sweep_corpus,
    verdict_changes,
)

logger = structlog.get_logger()

Detail = dict[str, Any]


@dataclass(frozen=True)
class CriterionResult:
    """Outcome of one acceptance criterion."""

    criterion: int
    title: str
    passed: bool
    runtime_s: float
    detail: Detail

    def to_dict(self) -> dict[str, Any]:
        return {
            "criterion": self.criterion,
            "title": self.title,
            "passed": self.passed,
            "runtime_s": round(self.runtime_s, 3),
            "detail": self.detail,
        }


def _iso(a: BinaryMatroid, b: BinaryMatroid) -> bool:
    return isomorphic(a, b) is not None


def contraction_identity(settings: Settings) -> tuple[bool, Detail]:
    contracted = catalog.matroid("R10").contract(["4", "5"])
    row_space = contracted.elements == catalog.MATRIX_B_LABELS and row_space_equal(
        contracted.reduced, BitMatrix.from_rows(catalog.MATRIX_B)
    )
    bijection = isomorphic(contracted, catalog.matroid("G1"))
    return row_space and bijection is not None, {
        "row_space_equals_B": row_space,
        "isomorphic_to_G1": bijection is not None,
        "bijection": bijection,
    }


def dual_identities(settings: Settings) -> tuple[bool, Detail]:
    g6 = _iso(dual(catalog.matroid("G6")), catalog.matroid("G1"))
    g7 = _iso(dual(catalog.matroid("G7")), catalog.matroid("G2"))
    return g6 and g7, {"dual_G6_is_G1": g6, "dual_G7_is_G2": g7}


def catalog_minors(settings: Settings) -> tuple[bool, Detail]:
    g3 = _iso(catalog.matroid("G3"), catalog.matroid("K5"))
    g4 = has_minor(catalog.matroid("G4"), catalog.matroid("G1"))
    a1 = has_minor(catalog.matroid("MA1"), catalog.matroid("R10"))
    detail = {
        "G3_is_K5": g3,
        "G1_minor_of_G4": None if g4 is None else g4.to_dict(),
        "R10_minor_of_MA1": None if a1 is None else a1.to_dict(),
    }
    return g3 and g4 is not None and a1 is not None, detail


def classification(settings: Settings) -> tuple[bool, Detail]:
    r10 = classify(catalog.matroid("R10"))
    f7 = classify(catalog.matroid("F7"))
    named_ok = (r10.regular, r10.graphic, r10.cographic) == (True, False, False) and not (
        f7.regular or f7.graphic or f7.cographic
    )

    cfg = settings.corpus
    matroids = graphic_corpus(cfg) + cographic_corpus(cfg)
    matroids += random_binary_matroids(
        cfg.random_matroids, cfg.random_max_rows, cfg.random_max_cols, settings.seed
    )
    checked, mismatches = 0, []
    for index, M in enumerate(matroids):
        if M.size > settings.realization_bound:
            continue
        checked += 1
        graph = graphic_by_realization(M)
        realized = graph is not None and same_matroid(from_graph(graph), M)
        if classify(M).graphic != realized:
            mismatches.append(index)
    return named_ok and not mismatches, {
        "R10": r10.to_dict(),
        "F7": f7.to_dict(),
        "corpus_checked": checked,
        "mismatches": mismatches,
    }


def _observation_failures(M: BinaryMatroid, x: str, y: str, rng: np.random.Generator) -> list[str]:
    p = SplitPair(x, y)
    S = split(M, p)
    failed = []
    _, coloops = loops_coloops(M)
    _, split_coloops = loops_coloops(S)
    if S.rank - M.rank not in (0, 1):
        failed.append("rank_step")
    if x in coloops and not {x, y} <= split_coloops:
        failed.append("coloop_propagation")
    if x not in coloops and y not in coloops and not is_2_cocircuit(S, x, y):
        failed.append("becomes_2_cocircuit")
    if is_2_cocircuit(M, x, y) and not same_matroid(S, M):
        failed.append("identity_on_2_cocircuit")
    if not same_matroid(S, split(M, p, basis=list(reversed(M.elements)))):
        failed.append("standard_form_independence")
    others = [e for e in M.elements if e not in (x, y)]
    if others:
        chosen = [others[i] for i in rng.permutation(len(others))]
        cut = int(rng.integers(0, len(chosen) + 1))
        spec = MinorSpec(frozenset(chosen[:cut][:1]), frozenset(chosen[cut:][:1]))
        if not same_matroid(minor(S, spec), split(minor(M, spec), p)):
            failed.append("minor_commutation")
    return failed


def splitting_observations(settings: Settings) -> tuple[bool, Detail]:
    cfg = settings.corpus
    rng = np.random.default_rng(settings.seed)
    matroids = random_binary_matroids(
        cfg.random_matroids, cfg.random_max_rows, cfg.random_max_cols, settings.seed
    )
    checks, failures = 0, []
    for index, M in enumerate(matroids):
        for x, y in pairs(M):
            for first, second in ((x, y), (y, x)):
                checks += 1
                for name in _observation_failures(M, first, second, rng):
                    failures.append({"index": index, "pair": [first, second], "check": name})
    return not failures, {"matroids": len(matroids), "pair_checks": checks, "failures": failures[:20]}


def _case_corpora(settings: Settings) -> dict[str, list[BinaryMatroid]]:
    cfg = settings.corpus
    graphic = graphic_corpus(cfg)
    cographic = [dual(M) for M in graphic]
    regular = regular_corpus(cfg)
    return {
        "1.3": graphic,
        "2.8": graphic,
        "1.4": cographic,
        "2.9": cographic,
        "3.2": regular,
        "3.4": regular,
    }


def theorem_oracle_equivalence(settings: Settings) -> tuple[bool, Detail]:
    corpora = _case_corpora(settings)
    detail: Detail = {}
    for case_id in CURRENT_CASES:
        records = sweep_corpus(corpora[case_id], CASES[case_id])
        statuses = [r["status"] for r in records]
        detail[case_id] = {
            status: statuses.count(status)
            for status in ("agree", "disagree", "skipped_input_class", "skipped_precondition")
        }
    passed = all(counts["disagree"] == 0 and counts["agree"] > 0 for counts in detail.values())
    return passed, detail


def minimality_and_redundancy(settings: Settings) -> tuple[bool, Detail]:
    minimal = [("G1", "1.3"), ("G2", "1.3"), ("G3", "1.3"), ("G1", "3.2"), ("G2", "3.2"), ("K5", "3.2")]
    redundant = [("G4", "1.3"), ("MA1", "3.4")]
    detail: Detail = {"minimal": [], "redundant": []}
    passed = True
    for name, case_id in minimal:
        report = minimality_report(name, CASES[case_id])
        detail["minimal"].append(report.to_dict())
        passed &= report.passed
    for name, case_id in redundant:
        report = minimality_report(name, CASES[case_id])
        detail["redundant"].append(report.to_dict())
        passed &= report.oracle_fails and report.offending_minor is not None

    # K5 separates the corrected case from the superseded one
    changed = verdict_changes([catalog.matroid("K5")], CASES["3.4"], CASES["3.3"])
    detail["superseded_case_differs_on_K5"] = bool(changed)
    return passed and bool(changed), detail


def _planted_pair_order(host: BinaryMatroid, planted: tuple[str, str]) -> Iterable[tuple[str, str]]:
    yield planted
    for p in pairs(host):
        if set(p) != set(planted):
            yield p


def tilde_lemma(settings: Settings) -> tuple[bool, Detail]:
    total = settings.corpus.lemma_hosts
    hosts = planted_tilde_hosts("K5", (total + 1) // 2, settings.seed)
    hosts += planted_tilde_hosts("K33", total // 2, settings.seed + 1)
    failures = []
    planted_pair_sufficed = 0
    for index, planted in enumerate(hosts):
        F = catalog.matroid(planted.excluded)
        found = None
        for x, y in _planted_pair_order(planted.host, planted.pair):
            if has_minor(split(planted.host, SplitPair(x, y)), F) is not None:
                found = (x, y)
                break
        if found is None:
            failures.append({"index": index, "excluded": planted.excluded, "kind": planted.kind})
        elif set(found) == set(planted.pair):
            planted_pair_sufficed += 1
    return not failures, {
        "hosts": len(hosts),
        "planted_pair_sufficed": planted_pair_sufficed,
        "failures": failures,
    }


def graph_split_compatibility(settings: Settings) -> tuple[bool, Detail]:
    max_edges = 6
    checked, failures = 0, []
    for g in connected_multigraphs(max_edges, max_edges + 1):
        M = from_graph(g)
        for a, b in pairs(M):
            p = SplitPair(a, b)
            x, y = g.edge(a), g.edge(b)
            for v in sorted({x.u, x.v} & {y.u, y.v}):
                try:
                    h = split_graph(g, p, vertex=v)
                except SplitError:
                    continue
                checked += 1
                if not same_matroid(from_graph(h), split(M, p)):
                    failures.append({"graph": g.format(), "pair": [a, b], "vertex": v})
    return not failures and checked > 0, {"splits_checked": checked, "failures": failures[:20]}


CRITERIA: list[tuple[int, str, Callable[[Settings], tuple[bool, Detail]]]] = [
    (1, "R10 contraction identity", contraction_identity),
    (2, "Dual identities", dual_identities),
    (3, "Catalog minor relations", catalog_minors),
    (4, "Classification and graph realization agree", classification),
    (5, "Splitting observations", splitting_observations),
    (6, "Forbidden-minor decision matches the splitting oracle", theorem_oracle_equivalence),
    (7, "Minimality and redundancy of forbidden minors", minimality_and_redundancy),
    (8, "Planted tilde minors survive some splitting", tilde_lemma),
    (9, "Graph and matroid splitting agree", graph_split_compatibility),
]


def run_acceptance_suite(
    settings: Settings | None = None, only: Iterable[int] | None = None
) -> list[CriterionResult]:
    """
    Run the acceptance criteria in order.

    Args:
        settings: Bounds, seed and corpus sizes (active settings by default)
        only: Criterion numbers to run; all when None

    Returns:
        One result per criterion run
    """
    settings = settings or get_settings()
    selected = None if only is None else set(only)
    results = []
    for number, title, check in CRITERIA:
        if selected is not None and number not in selected:
            continue
        logger.info("criterion_started", criterion=number, title=title)
        start = time.perf_counter()
        try:
            passed, detail = check(settings)
        except Exception as e:
            logger.error(
                "criterion_crashed", criterion=number, error=str(e), error_type=type(e).__name__
            )
            passed, detail = False, {"error": str(e), "error_type": type(e).__name__}
        result = CriterionResult(number, title, passed, time.perf_counter() - start, detail)
        logger.info(
            "criterion_finished", criterion=number, passed=passed, runtime_s=round(result.runtime_s, 3)
        )
        results.append(result)
    return results
