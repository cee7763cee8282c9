import pytest
from hypothesis import given
from hypothesis import strategies as st

from khdetect.cube import gray_code, resolve, states, transition
from khdetect.pd import UNKNOT, parse_pd

from knots import braid_knots

TREFOIL = parse_pd("PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]")


def test_trefoil_extreme_states():
    # all-0 is the A-state: three circles for the negative trefoil
    assert resolve(TREFOIL, "000").circles == ((1, 4), (2, 5), (3, 6))
    # all-1 is the oriented resolution here: two Seifert circles
    assert resolve(TREFOIL, "111").circles == ((1, 3, 5), (2, 6, 4))
    assert resolve(TREFOIL, "110").circles == ((1, 3, 6, 4, 2, 5),)


def test_trefoil_transitions():
    t = transition(TREFOIL, resolve(TREFOIL, "000"), 0)
    assert (t.kind, t.inputs, t.outputs) == ("merge", (1, 2), (1,))
    t = transition(TREFOIL, resolve(TREFOIL, "110"), 2)
    assert (t.kind, t.inputs, t.outputs) == ("split", (1,), (1, 2))


def test_flipping_a_one_bit_is_rejected():
    with pytest.raises(ValueError):
        transition(TREFOIL, resolve(TREFOIL, "100"), 0)


@pytest.mark.parametrize("bits", ["00", "0000", "01a", 8, -1])
def test_bad_state_words(bits):
    with pytest.raises(ValueError):
        resolve(TREFOIL, bits)


def test_unknot_has_one_state():
    (s,) = list(states(UNKNOT))
    assert s.bits == "" and s.circles == ((1,),)


def test_gray_code_neighbours_differ_in_one_bit():
    codes = list(gray_code(5))
    assert sorted(codes) == list(range(32))
    assert all(bin(a ^ b).count("1") == 1 for a, b in zip(codes, codes[1:]))


@given(braid_knots(max_crossings=6), st.data())
def test_circles_partition_the_edges(d, data):
    n = len(d)
    mask = data.draw(st.integers(0, (1 << n) - 1))
    s = resolve(d, mask)
    edges = [e for c in s.circles for e in c]
    assert sorted(edges) == list(range(1, d.edge_count + 1))
    assert s.weight == bin(mask).count("1")


@given(braid_knots(max_crossings=6), st.data())
def test_each_flip_changes_the_circle_count_by_one(d, data):
    n = len(d)
    if n == 0:
        return
    mask = data.draw(st.integers(0, (1 << n) - 1))
    zeros = [k for k in range(n) if not mask >> k & 1]
    if not zeros:
        return
    k = data.draw(st.sampled_from(zeros))
    s = resolve(d, mask)
    t = transition(d, s, k)
    after = len(resolve(d, mask | 1 << k).circles)
    assert after - len(s.circles) == (-1 if t.kind == "merge" else 1)
    for key in t.inputs:
        assert any(min(c) == key for c in s.circles)


def test_states_enumerates_every_state_once():
    words = [s.bits for s in states(TREFOIL)]
    assert len(words) == 8 == len(set(words))
