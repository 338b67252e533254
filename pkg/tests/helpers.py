"""Shared strategies and small brute-force oracles for the test suite."""

from fractions import Fraction

from hypothesis import strategies as st

from rbsystems.fields import GF, QQ, QQ_q, RationalFunction
from rbsystems.tensor import Tensor2, Tensor3

small_ints = st.integers(min_value=-6, max_value=6)
rationals = st.builds(Fraction, small_ints, st.integers(min_value=1, max_value=5))


@st.composite
def rational_functions(draw):
    num = draw(st.lists(small_ints, min_size=1, max_size=4))
    den = draw(st.lists(small_ints, min_size=1, max_size=3).filter(any))
    q = RationalFunction.q()

    def poly(cs):
        out = RationalFunction(0)
        for k, c in enumerate(cs):
            out = out + RationalFunction(c) * q ** k
        return out

    return poly(num) / poly(den)


def field_values(field):
    if field is QQ:
        return rationals
    if field is QQ_q:
        return rational_functions()
    return st.integers(min_value=0, max_value=field.p - 1).map(field)


FIELDS = [QQ, QQ_q, GF(2), GF(5), GF(7)]


def elements(A, values=small_ints):
    return st.lists(values, min_size=A.dim, max_size=A.dim).map(A.element)


def tensors2(A, max_terms=4):
    idx = st.integers(min_value=0, max_value=A.dim - 1)
    term = st.tuples(idx, idx, small_ints)
    return st.lists(term, max_size=max_terms).map(lambda ts: Tensor2.from_terms(A, ts))


def tensors3(A, max_terms=4):
    idx = st.integers(min_value=0, max_value=A.dim - 1)
    term = st.tuples(idx, idx, idx, small_ints)
    return st.lists(term, max_size=max_terms).map(lambda ts: Tensor3.from_terms(A, ts))


def matrix_of(A, a):
    """Dense matrix of an element of a matrix algebra (list of lists)."""
    n = sum(A.blocks) if A.blocks else int(round(A.dim ** 0.5))
    M = [[0] * n for _ in range(n)]
    for (i, j), c in zip(A.matrix_units, a.coeffs):
        M[i][j] = c
    return M
