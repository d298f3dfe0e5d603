import random

import pytest
from hypothesis import strategies as st

from adhm.exactla import GF, QQ, Mat
from adhm.quiverrep import BlowupRep

FIELDS = [QQ, GF(2), GF(3), GF(5), GF(2, 2), GF(2, 3), GF(3, 2)]


def field_ids(f):
    return repr(f)


def random_mat(field, nrows, ncols, rng, density=1.0):
    def entry():
        if rng.random() > density:
            return field.zero
        if field.is_finite:
            return rng.randrange(field.order)
        return field.from_int(rng.randint(-4, 4))
    return Mat._raw(field, tuple(tuple(entry() for _ in range(ncols)) for _ in range(nrows)), nrows, ncols)


def random_invertible(field, n, rng):
    while True:
        M = random_mat(field, n, n, rng)
        if M.is_invertible():
            return M


def example_111(field=None, d=1):
    """dims (1,1,1) with d, i = 1 and B = j = 0."""
    return BlowupRep.build(field or GF(2), 1, 1, 1, d=[[d]], i=[[1]])


def o_minus_c(field=None):
    """dims (1,0,1) with i = 1."""
    return BlowupRep.build(field or GF(2), 1, 0, 1, i=[[1]])


@st.composite
def matrices(draw, field, max_rows=4, max_cols=4, rows=None, cols=None):
    nrows = draw(st.integers(0, max_rows)) if rows is None else rows
    ncols = draw(st.integers(0, max_cols)) if cols is None else cols
    if field.is_finite:
        elem = st.integers(0, field.order - 1)
    else:
        elem = st.integers(-5, 5).map(field.from_int)
    data = draw(st.lists(st.lists(elem, min_size=ncols, max_size=ncols), min_size=nrows, max_size=nrows))
    return Mat._raw(field, tuple(tuple(r) for r in data), nrows, ncols)


@pytest.fixture
def rng():
    return random.Random(20240611)
