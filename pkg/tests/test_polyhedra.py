from itertools import product

import pytest

from qomotivic.errors import EmptyGenerators
from qomotivic.numlin import lattice_from_generators, standard_lattice, vec
from qomotivic.polyhedra import (box_points, cone_from_halfspaces, dual_fan, intersect_cones,
                                 make_cone, min_generators, newton_data, orthant_fan,
                                 piece_contains, refine, support_value, triangulate)


def N_e1():
    return lattice_from_generators([vec((4, 0)), vec((0, 2))], 2)


def test_make_cone_drops_redundant_generators():
    c = make_cone([(1, 0), (0, 1), (1, 1), (2, 0)])
    assert c.rays == (vec((0, 1)), vec((1, 0)))
    assert c.dim == 2 and c.is_simplicial()


def test_rays_are_primitive_in_the_lattice():
    c = make_cone([(1, 1), (1, 4)], N_e1())
    assert set(c.rays) == {vec((4, 4)), vec((4, 16))}


def test_square_cone_faces():
    c = make_cone([(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)])
    assert len(c.rays) == 4 and not c.is_simplicial()
    dims = sorted(f.dim for f in c.faces())
    assert dims == [0, 1, 1, 1, 1, 2, 2, 2, 2, 3]


def test_relint_membership():
    c = make_cone([(1, 0), (1, 1)])
    assert c.relint_contains(vec((2, 1)))
    assert not c.relint_contains(vec((1, 0)))
    assert c.contains(vec((1, 0)))
    ray = make_cone([(1, 1, 0)])
    assert ray.relint_contains(vec((2, 2, 0)))
    assert not ray.relint_contains(vec((2, 1, 0)))


def test_halfspaces_and_intersection():
    c = cone_from_halfspaces([(1, 0), (0, 1), (1, -1)], [], 2)
    assert set(c.rays) == {vec((1, 0)), vec((1, 1))}
    a = make_cone([(1, 0), (0, 1)])
    b = make_cone([(1, 1), (-1, 1)])
    assert set(intersect_cones(a, b).rays) == {vec((1, 1)), vec((0, 1))}


def test_support_value_and_argmin():
    nd = newton_data([(1, 0), (0, 1), ("3/2", 0)])
    assert support_value(nd, vec((4, 2))) == 2
    assert min_generators(nd, vec((2, 2))) == (vec((1, 0)), vec((0, 1)))
    with pytest.raises(EmptyGenerators):
        support_value(newton_data([]), vec((1, 1)))


def test_dual_fan_of_first_jacobian_ideal():
    nd = newton_data([(1, 0), (0, 1), ("3/2", 0), ("7/4", 0), (2, "1/2")])
    fan = dual_fan(nd, N_e1())
    assert {r.rays[0] for r in fan.rays()} == {vec((4, 0)), vec((0, 2)), vec((4, 4))}
    assert len(fan.maximal) == 2


def test_refine_with_orthant_is_identity():
    nd = newton_data([(1, 1), (3, "1/2"), ("3/2", 1)])
    fan = dual_fan(nd)
    assert refine([fan, orthant_fan(2)]).keys() == fan.keys()


def test_fan_locate():
    fan = dual_fan(newton_data([(1, 0), (0, 1)]))
    assert fan.locate(vec((1, 1))).dim == 1
    assert fan.locate(vec((1, 2))).dim == 2


def test_triangulation_partitions_lattice_points():
    c = make_cone([(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1), (1, 1, 2)])
    pieces = triangulate(c)
    assert all(p.is_simplicial() for p, _ in pieces)
    for v in product(range(-3, 4), range(-3, 4), range(0, 4)):
        v = vec(v)
        hits = sum(piece_contains(p, f, v) for p, f in pieces)
        assert hits == (1 if c.contains(v) else 0), v


def test_box_points():
    pts = box_points(N_e1(), 8, positive=True)
    assert sorted(pts) == sorted(vec((a, b)) for a in (4, 8) for b in (2, 4, 6, 8))
    assert len(box_points(standard_lattice(2), 2)) == 9
