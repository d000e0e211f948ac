from collections import Counter

import pytest

from qomotivic.errors import InvalidSubstitution, NotSimplicial
from qomotivic.genfun import (closed_cone_series, closed_series, expand_in_box,
                              parallelepiped_points, relint_cone_series, substitute_L,
                              substitute_LT)
from qomotivic.ltseries import BivRat, LVolRat
from qomotivic.numlin import lattice_from_generators, standard_lattice, vec
from qomotivic.polyhedra import box_points, make_cone

Z2 = standard_lattice(2)


def test_parallelepiped_size_is_the_index():
    rays = (vec((1, 0)), vec((1, 3)))
    pts = parallelepiped_points(rays, (False, False), Z2)
    assert pts == [vec((0, 0)), vec((1, 1)), vec((1, 2))]


def test_half_open_flags_shift_boundary_points():
    rays = (vec((1, 0)), vec((0, 1)))
    assert parallelepiped_points(rays, (True, False), Z2) == [vec((1, 0))]


def test_parallelepiped_in_lower_dimension():
    rays = (vec((2, 2, 0)),)
    N = lattice_from_generators([vec((1, 1, 0)), vec((0, 1, 0)), vec((0, 0, 1))], 3)
    assert parallelepiped_points(make_cone(rays, N).rays, (False,), N) == [vec((0, 0, 0))]


def test_orthant_series():
    cs = closed_series(make_cone([(1, 0), (0, 1)]), Z2)
    assert cs.terms() == {vec((0, 0)): 1}
    rel = relint_cone_series(make_cone([(1, 0), (0, 1)]), Z2)
    assert rel.terms() == {vec((1, 1)): 1}


def test_non_simplicial_requires_triangulation():
    c = make_cone([(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)])
    with pytest.raises(NotSimplicial):
        closed_cone_series(c, (False,) * 4, standard_lattice(3))


def test_relint_series_of_square_cone_matches_enumeration():
    N = standard_lattice(3)
    c = make_cone([(1, 0, 1), (0, 1, 1), (1, 2, 1), (2, 1, 1)])
    got = expand_in_box(relint_cone_series(c, N), 5)
    want = {p: 1 for p in box_points(N, 5) if c.relint_contains(p)}
    assert got == want


def test_closed_series_of_cone_with_index():
    N = lattice_from_generators([vec((4, 0)), vec((0, 2))], 2)
    c = make_cone([(1, 1), (1, 4)], N)
    got = expand_in_box(closed_series(c, N), 24)
    want = {p: 1 for p in box_points(N, 24) if c.contains(p)}
    assert got == want


def test_substitute_LT_on_a_ray():
    N = lattice_from_generators([vec((4, 0)), vec((0, 2))], 2)
    ray = make_cone([(1, 4)], N)
    # Psi_2 = (-1,1), phi_2 = (0,1) on this ray of the first example
    x = substitute_LT(relint_cone_series(ray, N), vec((-1, 1)), vec((0, 1)))
    assert x == BivRat({(12, 16): 1}, Counter({(12, 16): 1}))


def test_substitution_errors():
    cs = closed_series(make_cone([(1, 0), (0, 1)]), Z2)
    with pytest.raises(InvalidSubstitution):
        substitute_LT(cs, vec((0, 1)), vec((0, 1)))
    with pytest.raises(InvalidSubstitution):
        substitute_LT(cs, vec((1, 1)), vec(("1/2", 1)))
    with pytest.raises(InvalidSubstitution):
        substitute_L(cs, vec((-1, 0)))


def test_substitute_L():
    rel = relint_cone_series(make_cone([(1, 0), (0, 1)]), Z2)
    assert substitute_L(rel, vec((-1, -1))) == LVolRat({-2: 1}, {1: 2})
