import pytest

from reference import E1, BRANCH_D3
from qomotivic.ltseries import BivRat, LVolRat
from qomotivic.motivic import (Settings, assemble, candidate_poles, curve_multiplicity,
                               interior_terms, motivic_volume, p_curve, p_geom, p_interior,
                               p_point)
from qomotivic.oracle import geom_coefficients, series_coefficients, volume_trace
from qomotivic.qocore import validate


def test_point_and_curve_terms():
    assert p_point().expand(3) == [{0: 1}] * 4
    c = p_curve(2).expand(4)
    assert c[:2] == [{}, {}]
    assert c[2] == {1: 1, 0: -1} and c[3] == {2: 1, 1: -1}
    assert p_curve(1).expand(3)[3] == {3: 1, 0: -1}
    with pytest.raises(ValueError):
        p_curve(0)


def test_curve_section_series_has_its_multiplicity():
    cd = validate("qo", 1, [("7/3",)])
    assert curve_multiplicity(p_interior(cd)) == 3
    assert set(p_geom(cd).den) <= candidate_poles(cd)


@pytest.mark.parametrize("d,data", [
    (2, [("1/2", "1/3")]),
    (2, [("1/3", "1/3")]),
    (3, [("1/2", "1/2", "1/3")]),
])
def test_fallback_terms_match_enumeration(d, data):
    cd = validate("qo", d, data)
    terms = interior_terms(cd)
    assert any(t.method == "reconstructed" for t in terms)
    order = 10 if d == 2 else 7
    assert p_interior(cd).expand(order) == series_coefficients(cd, order)


def test_closed_terms_only_for_first_example():
    assert {t.method for t in interior_terms(validate("qo", 2, E1))} == {"closed"}


@pytest.mark.parametrize("d", [1, 2, 3])
def test_smooth_volume_is_one(d):
    assert motivic_volume(validate("qo", d, [])) == LVolRat({0: 1})


def test_volume_trace_first_example():
    cd = validate("qo", 2, E1)
    assert motivic_volume(cd).expand(-8) == volume_trace(cd, 8)


def test_branch_section_lattice_changes_the_series():
    cd = validate("qo", 2, E1)
    ambient = p_geom(cd)
    branch = p_geom(cd, Settings(section_lattice="branch"))
    assert ambient != branch
    assert branch.expand(8) == geom_coefficients(cd, 8, section_lattice="branch")


def test_assemble_branch_d3():
    cd = validate("qo", 3, BRANCH_D3)
    rep = assemble(cd)
    assert not rep.warnings
    assert rep.geom == p_geom(cd)
    assert set(rep.geom.den) == set(rep.poles)
    assert rep.volume == motivic_volume(cd)


def test_geom_is_sum_over_sections():
    cd = validate("qo", 2, E1)
    assert isinstance(p_geom(cd), BivRat)
    assert p_geom(cd).expand(10) == geom_coefficients(cd, 10)
