import pytest
from hypothesis import given
from hypothesis import strategies as st

from khdetect.f2 import F2Matrix, MalformedComplexError, homology_rank, rank

from oracles import dense_rank


@st.composite
def matrices(draw, max_dim=12, rows=None, cols=None):
    r = draw(st.integers(0, max_dim)) if rows is None else rows
    c = draw(st.integers(0, max_dim)) if cols is None else cols
    data = draw(st.lists(st.integers(0, (1 << c) - 1), min_size=r, max_size=r))
    return F2Matrix(r, c, tuple(data))


@given(matrices())
def test_rank_matches_dense_oracle(m):
    assert rank(m) == dense_rank(m.to_dense())


@given(matrices())
def test_rank_of_transpose(m):
    assert rank(m) == rank(m.transpose())
    assert m.transpose().transpose() == m


@given(matrices())
def test_dense_round_trip(m):
    assert F2Matrix.from_dense(m.to_dense(), m.cols) == m


@given(st.data())
def test_product_matches_dense(data):
    a = data.draw(matrices(max_dim=8))
    b = data.draw(matrices(max_dim=8, rows=a.cols))
    da, db = a.to_dense(), b.to_dense()
    expected = [
        [sum(da[i][k] & db[k][j] for k in range(a.cols)) % 2 for j in range(b.cols)]
        for i in range(a.rows)
    ]
    assert (a @ b).to_dense() == expected


@given(st.data())
def test_homology_of_a_split_complex(data):
    # d_out = B, d_in = C with B C = 0 built from a kernel basis of B
    b = data.draw(matrices(max_dim=8))
    kernel = _kernel_basis(b)
    k = data.draw(st.integers(0, 6))
    picks = [data.draw(st.lists(st.booleans(), min_size=len(kernel), max_size=len(kernel))) for _ in range(k)]
    cols = []
    for pick in picks:
        v = 0
        for use, vec in zip(pick, kernel):
            if use:
                v ^= vec
        cols.append(v)
    c = F2Matrix(b.cols, k, tuple(
        sum(((cols[j] >> r) & 1) << j for j in range(k)) for r in range(b.cols)
    ))
    assert (b @ c).is_zero()
    h = homology_rank(c, b)
    assert h == b.cols - dense_rank(b.to_dense()) - dense_rank(c.to_dense())
    assert 0 <= h <= len(kernel)


def _kernel_basis(m: F2Matrix) -> list[int]:
    # reduce [M^T | I] on the columns of M
    n = m.cols
    rows = [(m.transpose().row_data[i] if m.rows else 0, 1 << i) for i in range(n)]
    basis, pivots = [], {}
    for v, tag in rows:
        while v:
            low = v & -v
            if low not in pivots:
                pivots[low] = (v, tag)
                break
            pv, pt = pivots[low]
            v, tag = v ^ pv, tag ^ pt
        else:
            basis.append(tag)
    return basis


def test_from_entries_cancels_repeats():
    m = F2Matrix.from_entries(2, 2, [(0, 0), (0, 0), (1, 1), (0, 1)])
    assert m.to_dense() == [[0, 1], [0, 1]]


def test_nonzero_square_is_rejected():
    d = F2Matrix.identity(2)
    with pytest.raises(MalformedComplexError):
        homology_rank(d, d)


def test_shape_mismatch():
    with pytest.raises(ValueError):
        homology_rank(F2Matrix.zeros(3, 1), F2Matrix.zeros(1, 2))
    with pytest.raises(ValueError):
        F2Matrix.zeros(2, 3) @ F2Matrix.zeros(2, 3)


def test_row_bits_beyond_width_are_rejected():
    with pytest.raises(ValueError):
        F2Matrix(1, 2, (4,))


def test_identity_and_zero():
    assert rank(F2Matrix.identity(7)) == 7
    assert rank(F2Matrix.zeros(4, 5)) == 0
    assert homology_rank(F2Matrix.zeros(3, 0), F2Matrix.zeros(0, 3)) == 3
