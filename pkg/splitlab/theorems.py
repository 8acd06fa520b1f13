"""
Decision procedures for when every splitting of a matroid stays in a class.

Each TheoremCase pairs an input class with a target class and a set of
forbidden minors. `decide_by_forbidden_minors` answers by minor search;
`oracle_all_splits` answers by brute force over every pair. On inputs that
meet a case's preconditions the two must agree.
"""

from collections.abc import Iterable
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

import structlog

from splitlab import catalog
from splitlab.config import get_settings
from splitlab.matroid import (
    BinaryMatroid,
    EnumerationBoundError,
    MinorSpec,
    pairs,
    single_element_minors,
)
from splitlab.recognition import (
    MinorWitness,
    TildeWitness,
    find_tilde_minor,
    has_minor,
    is_cographic,
    is_graphic,
    is_regular,
)
from splitlab.splitting import SplitPair, split

logger = structlog.get_logger()


class InputClassError(ValueError):
    """Raised when a matroid is outside the input class of a case."""

    pass


class UnknownCaseError(ValueError):
    """Raised when a case id is not defined."""

    pass


class MatroidClass(str, Enum):
    """Minor-closed classes used as inputs and targets."""

    GRAPHIC = "graphic"
    COGRAPHIC = "cographic"
    REGULAR = "regular"


def in_class(M: BinaryMatroid, cls: MatroidClass, bound: int | None = None) -> bool:
    match cls:
        case MatroidClass.GRAPHIC:
            return is_graphic(M, bound)
        case MatroidClass.COGRAPHIC:
            return is_cographic(M, bound)
        case MatroidClass.REGULAR:
            return is_regular(M, bound)
    raise ValueError(f"Unknown matroid class {cls!r}")


@dataclass(frozen=True)
class TheoremCase:
    """
    One splitting characterization.

    Attributes:
        id: Case token used on the command line
        input_class: Class the input matroid must belong to
        target: Class every splitting must stay in
        forbidden_set: Catalog names of the forbidden minors
        tilde_exclusions: Catalog names F whose tilde class the input must avoid
        superseded: Whether a later case replaces this one
    """

    id: str
    input_class: MatroidClass
    target: MatroidClass
    forbidden_set: tuple[str, ...]
    tilde_exclusions: tuple[str, ...] = ()
    superseded: bool = False

    def __post_init__(self) -> None:
        if self.target is MatroidClass.REGULAR:
            raise ValueError(f"Case {self.id}: target must be graphic or cographic")
        for name in self.forbidden_set + self.tilde_exclusions:
            if name not in catalog.NAMES:
                raise ValueError(f"Case {self.id}: unknown catalog name {name!r}")

    def to_dict(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "input_class": self.input_class.value,
            "target": self.target.value,
            "forbidden_set": list(self.forbidden_set),
            "tilde_exclusions": list(self.tilde_exclusions),
            "superseded": self.superseded,
        }


CASES: dict[str, TheoremCase] = {
    case.id: case
    for case in (
        TheoremCase("1.3", MatroidClass.GRAPHIC, MatroidClass.GRAPHIC, ("G1", "G2", "G3")),
        TheoremCase("1.4", MatroidClass.COGRAPHIC, MatroidClass.COGRAPHIC, ("G1", "G2")),
        TheoremCase(
            "2.8", MatroidClass.GRAPHIC, MatroidClass.COGRAPHIC, ("G1", "G2", "G5"), ("K5", "K33")
        ),
        TheoremCase(
            "2.9", MatroidClass.COGRAPHIC, MatroidClass.GRAPHIC, ("G1", "G2"),
            ("K5dual", "K33dual"),
        ),
        TheoremCase(
            "3.2", MatroidClass.REGULAR, MatroidClass.GRAPHIC, ("G1", "G2", "K5"),
            ("K5dual", "K33dual"),
        ),
        TheoremCase(
            "3.4", MatroidClass.REGULAR, MatroidClass.COGRAPHIC, ("G1", "G2", "G3"), ("K5", "K33")
        ),
        TheoremCase(
            "3.3", MatroidClass.REGULAR, MatroidClass.COGRAPHIC, ("G1", "G2", "MA1"),
            ("K5", "K33"), superseded=True,
        ),
    )
}  # fmt: skip

CURRENT_CASES = tuple(case_id for case_id, case in CASES.items() if not case.superseded)


def get_case(case_id: str) -> TheoremCase:
    """
    Look up a case by id.

    Raises:
        UnknownCaseError: If the id is not defined
    """
    try:
        return CASES[case_id]
    except KeyError:
        raise UnknownCaseError(f"Unknown case {case_id!r}. Available: {list(CASES)}") from None


@dataclass(frozen=True)
class DecisionReport:
    """
    Outcome of a decision procedure.

    Attributes:
        verdict: Whether every splitting stays in the target class
        route: "forbidden_minors" or "oracle"
        case_id: Case decided, when the forbidden-minor route was used
        minor_witness: Forbidden minor found, as (catalog name, embedding)
        failed_pair: First pair whose splitting left the target class
        failed_property: Property that failed_pair broke
        precondition_status: "passed", or "violated" when a tilde minor is present
        tilde_witness: Tilde minor found, as (catalog name of F, witness)
    """

    verdict: bool
    route: str
    case_id: str | None = None
    minor_witness: tuple[str, MinorWitness] | None = field(default=None, hash=False)
    failed_pair: SplitPair | None = None
    failed_property: MatroidClass | None = None
    precondition_status: str = "passed"
    tilde_witness: tuple[str, TildeWitness] | None = field(default=None, hash=False)

    def __post_init__(self) -> None:
        if self.route not in ("forbidden_minors", "oracle"):
            raise ValueError(f"Unknown route {self.route!r}")
        if self.precondition_status not in ("passed", "violated"):
            raise ValueError(f"Unknown precondition status {self.precondition_status!r}")
        if not self.verdict and self.minor_witness is None and self.failed_pair is None:
            raise ValueError("A false verdict needs a witness")

    def to_dict(self) -> dict[str, Any]:
        result: dict[str, Any] = {
            "verdict": self.verdict,
            "route": self.route,
            "precondition_status": self.precondition_status,
        }
        if self.case_id is not None:
            result["case"] = self.case_id
        if self.minor_witness is not None:
            name, witness = self.minor_witness
            result["witness"] = {"minor": name, **witness.to_dict()}
        if self.failed_pair is not None:
            result["witness"] = {
                "pair": self.failed_pair.to_dict(),
                "property": self.failed_property.value if self.failed_property else None,
            }
        if self.tilde_witness is not None:
            name, tilde = self.tilde_witness
            result["tilde_witness"] = {"excluded": name, **tilde.to_dict()}
        return result


def oracle_all_splits(
    M: BinaryMatroid, prop: MatroidClass, bound: int | None = None
) -> DecisionReport:
    """
    Check every splitting of M against a target class.

    Pairs are visited in label order and the first failing pair is reported.
    Splittings that coincide as labeled matroids are classified once.

    Raises:
        EnumerationBoundError: If M exceeds the oracle bound
    """
    limit = get_settings().oracle_bound if bound is None else bound
    if M.size > limit:
        raise EnumerationBoundError(f"Splitting oracle needs at most {limit} elements, got {M.size}")
    if prop is MatroidClass.REGULAR:
        raise ValueError("Oracle property must be graphic or cographic")

    checked: dict[Any, bool] = {}
    for x, y in pairs(M):
        pair = SplitPair(x, y)
        result = split(M, pair)
        key = result.reduced
        if key not in checked:
            checked[key] = in_class(result, prop, bound)
        if not checked[key]:
            logger.debug("oracle_pair_failed", x=x, y=y, property=prop.value)
            return DecisionReport(
                verdict=False, route="oracle", failed_pair=pair, failed_property=prop
            )
    logger.debug("oracle_passed", size=M.size, property=prop.value, distinct_splits=len(checked))
    return DecisionReport(verdict=True, route="oracle")


def check_precondition(
    M: BinaryMatroid, case: TheoremCase, bound: int | None = None
) -> tuple[str, TildeWitness] | None:
    """
    First tilde minor of an excluded F found in M, or None.

    Raises:
        InputClassError: If M is outside the case's input class
    """
    if not in_class(M, case.input_class, bound):
        raise InputClassError(
            f"Case {case.id} needs a {case.input_class.value} matroid; input is not"
        )
    for name in case.tilde_exclusions:
        excluded = catalog.matroid(name)
        tilde = find_tilde_minor(M, excluded, bound)
        if tilde is not None:
            return name, tilde
    return None


def decide_by_forbidden_minors(
    M: BinaryMatroid, case: TheoremCase, bound: int | None = None
) -> DecisionReport:
    """
    Decide a case by searching for its forbidden minors.

    The verdict is true when no forbidden minor is present. A tilde minor of
    an excluded matroid marks the precondition violated; the verdict is
    still reported but the characterization makes no claim about it.

    Raises:
        InputClassError: If M is outside the case's input class
        EnumerationBoundError: If M exceeds the enumeration bound
    """
    tilde = check_precondition(M, case, bound)
    if tilde is not None:
        logger.warning(
            "tilde_precondition_violated", case=case.id, excluded=tilde[0],
            condition=tilde[1].condition,
        )  # fmt: skip

    found: tuple[str, MinorWitness] | None = None
    for name in case.forbidden_set:
        forbidden = catalog.matroid(name)
        if forbidden.size > M.size:
            continue
        witness = has_minor(M, forbidden, bound)
        if witness is not None:
            found = (name, witness)
            break

    report = DecisionReport(
        verdict=found is None,
        route="forbidden_minors",
        case_id=case.id,
        minor_witness=found,
        precondition_status="passed" if tilde is None else "violated",
        tilde_witness=tilde,
    )
    logger.debug("case_decided", case=case.id, size=M.size, verdict=report.verdict)
    return report


@dataclass(frozen=True)
class MinimalityReport:
    """
    Whether a forbidden minor is minimal for a case.

    Attributes:
        name: Catalog entry checked
        case_id: Case checked against
        oracle_fails: The entry itself has a splitting outside the target
        offending_minor: A single-element minor meeting the preconditions
            whose splittings also leave the target, if any
        skipped_minors: Single-element minors outside the preconditions
    """

    name: str
    case_id: str
    oracle_fails: bool
    offending_minor: MinorSpec | None
    skipped_minors: int

    @property
    def passed(self) -> bool:
        return self.oracle_fails and self.offending_minor is None

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "case": self.case_id,
            "passed": self.passed,
            "oracle_fails": self.oracle_fails,
            "offending_minor": None if self.offending_minor is None else self.offending_minor.to_dict(),
            "skipped_minors": self.skipped_minors,
        }


def _meets_precondition(M: BinaryMatroid, case: TheoremCase, bound: int | None = None) -> bool:
    try:
        return check_precondition(M, case, bound) is None
    except InputClassError:
        return False


def minimality_report(
    name: str, case: TheoremCase, bound: int | None = None
) -> MinimalityReport:
    """
    Check a catalog entry for minor-minimality among splitting obstructions.

    Raises:
        EnumerationBoundError: If the entry exceeds the oracle bound
    """
    M = catalog.matroid(name)
    oracle_fails = not oracle_all_splits(M, case.target, bound).verdict
    offending = None
    skipped = 0
    if oracle_fails:
        for spec, N in single_element_minors(M):
            if not _meets_precondition(N, case, bound):
                skipped += 1
                continue
            if not oracle_all_splits(N, case.target, bound).verdict:
                offending = spec
                break
    report = MinimalityReport(name, case.id, oracle_fails, offending, skipped)
    logger.info("minimality_checked", **report.to_dict())
    return report


def verify_minimality(name: str, case: TheoremCase, bound: int | None = None) -> bool:
    """Check that an entry's splittings leave the target class but no smaller minor's do."""
    return minimality_report(name, case, bound).passed


def sweep_corpus(
    matroids: Iterable[BinaryMatroid], case: TheoremCase
) -> list[dict[str, Any]]:
    """
    Compare the forbidden-minor decision with the oracle on each matroid.

    Records carry a status of "agree", "disagree", "skipped_input_class" or
    "skipped_precondition".
    """
    records = []
    for index, M in enumerate(matroids):
        record: dict[str, Any] = {"index": index, "size": M.size, "rank": M.rank}
        try:
            decision = decide_by_forbidden_minors(M, case)
        except InputClassError:
            records.append({**record, "status": "skipped_input_class"})
            continue
        if decision.precondition_status == "violated":
            records.append({**record, "status": "skipped_precondition"})
            continue
        oracle = oracle_all_splits(M, case.target)
        agree = decision.verdict == oracle.verdict
        if not agree:
            logger.error(
                "case_disagreement", case=case.id, index=index, elements=list(M.elements),
                decided=decision.verdict, oracle=oracle.verdict,
            )  # fmt: skip
        records.append(
            {
                **record,
                "status": "agree" if agree else "disagree",
                "decided": decision.verdict,
                "oracle": oracle.verdict,
            }
        )
    logger.info(
        "corpus_swept", case=case.id, total=len(records),
        disagreements=sum(r["status"] == "disagree" for r in records),
    )  # fmt: skip
    return records


def verdict_changes(
    matroids: Iterable[BinaryMatroid], first: TheoremCase, second: TheoremCase
) -> list[int]:
    """Indices of matroids on which two cases' forbidden-minor verdicts differ."""
    changed = []
    for index, M in enumerate(matroids):
        try:
            a = decide_by_forbidden_minors(M, first)
            b = decide_by_forbidden_minors(M, second)
        except InputClassError:
            continue
        if a.verdict != b.verdict:
            changed.append(index)
    return changed
