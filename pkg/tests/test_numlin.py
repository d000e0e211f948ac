from fractions import Fraction as F

import pytest

from qomotivic.errors import NotSublattice
from qomotivic.numlin import (contains_lattice, dual_lattice, hermite_rows, integer_kernel,
                              intersect_coordinate_subspace, lattice_from_generators,
                              lattice_index, lattice_sum, nullspace, primitive_in, rank, rref,
                              solve_in_span, span_key, standard_lattice, vec)


def lat(*gens):
    return lattice_from_generators([vec(g) for g in gens], len(gens[0]))


def test_rank_and_nullspace():
    rows = [vec((1, 2, 3)), vec((2, 4, 6)), vec((0, 1, 1))]
    assert rank(rows) == 2
    ns = nullspace(rows, 3)
    assert len(ns) == 1
    assert all(sum(a * b for a, b in zip(r, ns[0])) == 0 for r in rows)


def test_rref_is_reduced():
    R, pivots = rref([vec((2, 4)), vec((1, 3))])
    assert pivots == [0, 1]
    assert R == [vec((1, 0)), vec((0, 1))]


def test_solve_in_span():
    assert solve_in_span([vec((1, 0)), vec((1, 1))], vec((3, 2))) == (F(1), F(2))
    assert solve_in_span([vec((1, 0))], vec((0, 1))) is None


def test_hermite_rows_canonical():
    H = hermite_rows([[2, 4], [1, 3]])
    assert H == [(1, 1), (0, 2)]
    assert hermite_rows([[4, 6], [2, 3]]) == [(2, 3)]


def test_integer_kernel():
    K = integer_kernel([[1, 1, 1]], 3)
    assert len(K) == 2
    assert all(sum(K[i]) == 0 for i in range(2))
    assert hermite_rows(K) == hermite_rows([(1, -1, 0), (0, 1, -1)])


def test_chain_lattice_of_first_example():
    M = lat((1, 0), (0, 1), ("3/2", 0), ("7/4", 0), (2, "1/2"))
    assert str(M) == "(1/4)Z x (1/2)Z"
    assert str(dual_lattice(M)) == "4Z x 2Z"


def test_lattice_equality_is_canonical():
    assert lat((1, 1), (0, 2)) == lat((1, -1), (2, 0))
    assert lat((1, 1), (0, 2)) != standard_lattice(2)


def test_index_and_containment():
    Z2 = standard_lattice(2)
    half = lat(("1/2", 0), (0, 1))
    assert contains_lattice(half, Z2)
    assert lattice_index(Z2, half) == 2
    with pytest.raises(NotSublattice):
        lattice_index(half, Z2)


def test_sum_and_dual_involution():
    a = lat(("1/2", 0), (0, 1))
    b = lat((1, 0), (0, "1/3"))
    s = lattice_sum(a, b)
    assert s == lat(("1/2", 0), (0, "1/3"))
    assert dual_lattice(dual_lattice(s)) == s


def test_dual_of_non_diagonal():
    N = dual_lattice(lat(("1/2", "1/2", 0), (1, 0, 0), (0, 1, 0), (0, 0, "1/4")))
    assert N == lat((1, 1, 0), (0, 2, 0), (0, 0, 4))


def test_intersect_coordinate_subspace():
    M = lat(("1/4", 0), (0, "1/2"))
    assert intersect_coordinate_subspace(M, (0,)) == lat(("1/4",))
    skew = lat(("1/2", "1/2"), (1, 0), (0, 1))
    assert intersect_coordinate_subspace(skew, (1,)) == lat((1,))


def test_primitive_in():
    N = lat((4, 0), (0, 2))
    assert primitive_in(vec((1, 1)), N) == vec((4, 4))
    assert primitive_in(vec((1, 4)), N) == vec((4, 16))
    assert primitive_in(vec((0, 3)), N) == vec((0, 2))


def test_membership_and_coordinates():
    N = lat((1, 1, 0), (0, 2, 0), (0, 0, 4))
    assert vec((4, 2, 8)) in N
    assert vec((1, 0, 0)) not in N
    assert all(x.denominator == 1 for x in N.coordinates(vec((4, 2, 8))))


def test_span_key_ignores_generating_set():
    assert span_key([vec((1, 0, 0)), vec((1, 1, 0))], 3) == \
        span_key([vec((0, 2, 0)), vec((3, 0, 0))], 3)
