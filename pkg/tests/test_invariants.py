import json

import pytest
from hypothesis import given

from khdetect.invariants import (
    ConventionError,
    InvariantViolation,
    LaurentPoly,
    Verdict,
    certify,
    check_detection_inequality,
    check_satellite_bound,
    determinant,
    jones,
)
from khdetect.khovanov import RankTable, build_complex, khovanov
from khdetect.pd import UNKNOT, mirror, writhe

from knots import braid_knots, corpus, knot
from oracles import goeritz_determinant, jones_from_bracket


def test_laurent_rendering():
    p = LaurentPoly({-8: -1, -6: 1, -2: 1, 3: 0})
    assert str(p) == "-1*q^-8 + 1*q^-6 + 1*q^-2"
    assert str(LaurentPoly()) == "0"
    assert p.to_json() == {"-8": -1, "-6": 1, "-2": 1}


def test_laurent_arithmetic():
    p = LaurentPoly({1: 1, -1: 1})
    assert p * p == LaurentPoly({2: 1, 0: 2, -2: 1})
    assert p + LaurentPoly({1: -1}) == LaurentPoly({-1: 1})
    assert p.inverted() == p
    assert LaurentPoly({0: 1}) == 1


def test_jones_of_unknot_and_trefoil():
    assert jones(khovanov(UNKNOT)) == 1
    assert jones(khovanov(knot("3_1"))) == LaurentPoly({-2: 1, -6: 1, -8: -1})


def test_jones_from_complex_equals_jones_from_homology():
    d = knot("5_2")
    assert jones(build_complex(d)) == jones(khovanov(d))


@pytest.mark.parametrize("name, d", corpus(10))
def test_jones_matches_bracket_oracle(name, d):
    assert jones(khovanov(d)).coefficients == jones_from_bracket(d.tuples(), writhe(d))


@pytest.mark.parametrize("name, d", corpus(10))
def test_determinant_matches_goeritz(name, d):
    t = khovanov(d)
    det = determinant(t)
    assert det == goeritz_determinant(d.tuples(), 0) == goeritz_determinant(d.tuples(), 1)
    assert det % 2 == 1
    assert jones(t)(1) == 1


@given(braid_knots(max_crossings=7))
def test_determinant_matches_goeritz_random(d):
    assert determinant(khovanov(d)) == goeritz_determinant(d.tuples())


@given(braid_knots(max_crossings=6))
def test_jones_of_mirror_inverts_q(d):
    assert jones(khovanov(mirror(d))) == jones(khovanov(d)).inverted()


def test_determinant_examples():
    assert determinant(khovanov(UNKNOT)) == 1
    assert determinant(khovanov(knot("3_1"))) == 3
    assert determinant(khovanov(knot("4_1"))) == 5


def test_odd_grading_is_a_convention_error():
    with pytest.raises(ConventionError):
        determinant(khovanov(knot("3_1"), reduced=False))


def test_detection_inequality_reports():
    r = check_detection_inequality(khovanov(UNKNOT))
    assert (r.determinant, r.total_rank, r.slack, r.holds) == (1, 1, 0, True)
    r = check_detection_inequality(khovanov(knot("10_124")))
    assert (r.determinant, r.total_rank, r.slack) == (1, 7, 6)
    assert json.loads(json.dumps(r.to_json()))["slack"] == 6


class _Undercounted(RankTable):
    # reports fewer generators than its entries hold
    @property
    def total_rank(self):
        return 1


def test_detection_inequality_violation_is_reported():
    assert check_detection_inequality(RankTable({(0, 0): 1, (1, 2): 2})).slack == 0
    with pytest.raises(InvariantViolation) as exc:
        check_detection_inequality(_Undercounted({(0, 0): 3}))
    assert exc.value.report.slack == -2
    assert not exc.value.report.holds


@pytest.mark.parametrize("name, d", corpus())
def test_detection_inequality_on_corpus(name, d):
    assert check_detection_inequality(khovanov(d)).holds


def test_certificates():
    one = khovanov(UNKNOT)
    seven = khovanov(knot("10_124"))
    assert certify(one, True).verdict is Verdict.UNKNOT
    assert certify(one, False).verdict is Verdict.INCONCLUSIVE
    assert certify(seven, True).verdict is Verdict.KNOTTED
    assert certify(seven, False).verdict is Verdict.KNOTTED
    c = certify(seven, False, "10_124")
    assert json.loads(c.dumps()) == {
        "knot_name": "10_124",
        "total_rank": 7,
        "asserted_class": False,
        "verdict": "Knotted",
    }
    assert [certify(one, True).exit_code, c.exit_code, certify(one, False).exit_code] == [0, 1, 2]


def test_empty_table_cannot_be_certified():
    with pytest.raises(ConventionError):
        certify(RankTable(), True)


def test_satellite_bound_reports():
    r = check_satellite_bound(RankTable({(0, 0): 5}), 1, True)
    assert (r.bound, r.slack, r.applicable) == (5, 0, True)
    r = check_satellite_bound(RankTable({(0, 0): 1}), 0, False)
    assert not r.applicable and r.slack is None
    assert check_satellite_bound(RankTable({(0, 0): 1}), 2, False).slack is None
    with pytest.raises(InvariantViolation):
        check_satellite_bound(RankTable({(0, 0): 7}), 2, True)
    assert check_satellite_bound(RankTable({(0, 0): 9}), -2, True).bound == 9
