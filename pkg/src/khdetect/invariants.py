"""Invariants read off reduced rank tables: Jones polynomial, determinant,
unknot-detection certificates and the satellite rank bound."""

from __future__ import annotations

import enum
import json
from collections import defaultdict
from dataclasses import asdict, dataclass, field
from typing import Union

from .khovanov import GradedComplex, RankTable, euler_characteristic


class ConventionError(ValueError):
    """A table that cannot come from a reduced knot complex in our grading."""


class InvariantViolation(AssertionError):
    """A proven inequality failed on computed data; points to an engine bug."""

    def __init__(self, report):
        super().__init__(f"invariant violated: {report}")
        self.report = report


@dataclass(frozen=True)
class LaurentPoly:
    coefficients: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {int(e): int(c) for e, c in sorted(self.coefficients.items()) if c}
        object.__setattr__(self, "coefficients", clean)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self):
        return hash(tuple(self.coefficients.items()))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = defaultdict(int, self.coefficients)
        for e, c in other.coefficients.items():
            out[e] += c
        return LaurentPoly(out)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = defaultdict(int)
        for e1, c1 in self.coefficients.items():
            for e2, c2 in other.coefficients.items():
                out[e1 + e2] += c1 * c2
        return LaurentPoly(out)

    def inverted(self) -> "LaurentPoly":
        """Substitute q -> 1/q."""
        return LaurentPoly({-e: c for e, c in self.coefficients.items()})

    def __call__(self, value):
        return sum(c * value**e for e, c in self.coefficients.items())

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        return " + ".join(f"{c}*q^{e}" for e, c in self.coefficients.items())

    def to_json(self) -> dict:
        return {str(e): c for e, c in self.coefficients.items()}


def jones(t: Union[RankTable, GradedComplex]) -> LaurentPoly:
    """Graded Euler characteristic sum (-1)^i q^j dim; for a reduced knot table
    this is the Jones polynomial with t = q^2."""
    if isinstance(t, GradedComplex):
        return LaurentPoly(euler_characteristic(t))
    out = defaultdict(int)
    for (i, j), v in t.entries.items():
        out[j] += -v if i % 2 else v
    return LaurentPoly(out)


def determinant(t: RankTable) -> int:
    """|Jones at q^2 = -1| = |sum (-1)^(i + j/2) dim|."""
    total = 0
    for (i, j), v in t.entries.items():
        if j % 2:
            raise ConventionError(
                f"odd quantum grading {j} at homological degree {i}; "
                "expected a reduced knot table"
            )
        total += -v if (i + j // 2) % 2 else v
    return abs(total)


@dataclass(frozen=True)
class DetectionReport:
    determinant: int
    total_rank: int

    @property
    def slack(self) -> int:
        return self.total_rank - self.determinant

    @property
    def holds(self) -> bool:
        return self.slack >= 0

    def to_json(self) -> dict:
        return {**asdict(self), "slack": self.slack, "holds": self.holds}


def check_detection_inequality(t: RankTable) -> DetectionReport:
    """det(K) <= rank of reduced Khovanov homology."""
    report = DetectionReport(determinant(t), t.total_rank)
    if not report.holds:
        raise InvariantViolation(report)
    return report


class Verdict(str, enum.Enum):
    UNKNOT = "Unknot"
    KNOTTED = "Knotted"
    INCONCLUSIVE = "Inconclusive"


EXIT_CODES = {Verdict.UNKNOT: 0, Verdict.KNOTTED: 1, Verdict.INCONCLUSIVE: 2}


@dataclass(frozen=True)
class Certificate:
    knot_name: str
    total_rank: int
    asserted_class: bool  # caller asserts tangle unknotting number one
    verdict: Verdict

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.verdict]

    def to_json(self) -> dict:
        return {
            "knot_name": self.knot_name,
            "total_rank": self.total_rank,
            "asserted_class": self.asserted_class,
            "verdict": self.verdict.value,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def certify(t: RankTable, asserted_class: bool, knot_name: str = "") -> Certificate:
    """Rank > 1 always certifies a knot. Rank 1 certifies the unknot only
    when the caller vouches for tangle unknotting number one."""
    rank = t.total_rank
    if rank < 1:
        raise ConventionError("a reduced knot table has rank at least 1")
    if rank > 1:
        verdict = Verdict.KNOTTED
    elif asserted_class:
        verdict = Verdict.UNKNOT
    else:
        verdict = Verdict.INCONCLUSIVE
    return Certificate(knot_name, rank, asserted_class, verdict)


@dataclass(frozen=True)
class SatelliteBoundReport:
    n: int
    total_rank: int
    applicable: bool

    @property
    def bound(self) -> int:
        return 4 * abs(self.n) + 1

    @property
    def slack(self) -> int | None:
        return self.total_rank - self.bound if self.applicable else None

    def to_json(self) -> dict:
        return {**asdict(self), "bound": self.bound, "slack": self.slack}


def check_satellite_bound(t: RankTable, n: int, companion_nontrivial: bool) -> SatelliteBoundReport:
    """rank(K_n) >= 4|n| + 1 for a nontrivial companion.

    Negative ``n`` is checked with ``|n|``: K_{-n} is the mirror of the
    positive satellite of the mirrored companion.
    """
    report = SatelliteBoundReport(n, t.total_rank, companion_nontrivial and n != 0)
    if report.applicable and report.slack < 0:
        raise InvariantViolation(report)
    return report
