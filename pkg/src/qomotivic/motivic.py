"""Assembly of the interior series P(S), the full series P_geom, candidate poles
and the motivic volume.

For tau in D_k the per-cone series is

    (L-1)^k sum_{s>=1} sum_{classes at s} L^(s k - ord_{J_k}) T^s.

When nu -> (ord_{J_1},...,ord_{J_k}) is injective on lin(tau) each class is a
single nu and the sum over s telescopes:

    sum_{s=phi_k}^{phi_{k+1}-1} L^(sk - ord_k) T^s
        = (L^Psi_k T^phi_k - L^Psi_{k+1} T^phi_{k+1}) / (1 - L^k T).

Both terms are lattice-point series of relative interiors pushed through a
linear substitution.  Otherwise the class sum is enumerated and a numerator
is reconstructed against the prescribed denominator.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import InvalidSubstitution, NotStabilized
from .genfun import relint_cone_series, substitute_L, substitute_LT
from .ltseries import L_MINUS_ONE, BivRat, LVolRat, lp_pow, reconstruct_numerator
from .numlin import dot, primitive_in, rank
from .oracle import DEFAULT_BOX_LIMIT, series_coefficients
from .polyhedra import min_generators as _argmin
from .qocore import (b_set, dk_cones, fan_k, jacobian_generators, linear_minimizer, phi,
                     phi_psi_linear, psi, refinement, sections)

log = logging.getLogger(__name__)


@dataclass
class Settings:
    section_lattice: str = "ambient"
    box_limit: int = DEFAULT_BOX_LIMIT
    guard: int = None


DEFAULTS = Settings()


def p_point():
    return BivRat({(0, 0): 1}, {(0, 1): 1})


def p_curve(m):
    if m < 1:
        raise ValueError("multiplicity must be positive")
    return BivRat({(1, m): 1, (0, m): -1}, {(1, 1): 1, (0, m): 1})


@dataclass
class ConeTerm:
    k: int
    cone: object
    method: str          # "closed" or "reconstructed"
    series: object


def _injective(cd, k, cone):
    rows = [tuple(dot(r, linear_minimizer(cd, i, cone)) for i in range(1, k + 1))
            for r in cone.rays]
    return rank(rows) == cone.dim


def _closed_term(cd, k, cone):
    N = cd.N
    ps, ph = phi_psi_linear(cd, k, cone)
    first = substitute_LT(relint_cone_series(cone, N), ps, ph)
    total = first
    if k < cd.d:
        for sub in refinement(cd, k + 1).cones:
            if sub.dim == 0 or not cone.relint_contains(sub.relint_point()):
                continue
            ps1, ph1 = phi_psi_linear(cd, k + 1, sub)
            total = total - substitute_LT(relint_cone_series(sub, N), ps1, ph1)
    factor = BivRat({(0, 0): 1}, {(k, 1): 1}).scaled(lp_pow(L_MINUS_ONE, k))
    return total * factor


def _fallback_denominator(cd, k, cone):
    N = cd.N
    den = Counter()
    for ray in cone.faces():
        if ray.dim != 1:
            continue
        nu = ray.rays[0]
        ab = (psi(cd, k, nu), phi(cd, k, nu))
        if ab[1] >= 1:
            den[ab] = 1
    if k < cd.d:
        for ray in refinement(cd, k + 1).rays():
            nu = ray.rays[0]
            if not cone.contains(nu):
                continue
            if phi(cd, k + 1, nu) != phi(cd, k, nu):
                ab = (psi(cd, k + 1, nu), phi(cd, k + 1, nu))
                if ab[1] >= 1:
                    den[ab] = 1
    den[(k, 1)] = 1
    return den


def _reconstructed_term(cd, k, cone, settings):
    patterns = tuple(
        _pattern_mask(cd, i, cone) for i in range(1, k + 1))

    def select(key):
        return key.k == k and key.patterns == patterns

    den = _fallback_denominator(cd, k, cone)
    degree = sum(b * m for (_, b), m in den.items())
    guard = settings.guard or 2 * max(b for _, b in den)
    order = degree + guard + 4
    for _ in range(6):
        coeffs = series_coefficients(cd, order, settings.box_limit, select=select,
                                     cone=cone)
        try:
            num = reconstruct_numerator(coeffs, den, guard)
            return BivRat(num, den)
        except NotStabilized:
            order *= 2
    raise NotStabilized(f"reconstruction for k={k}, cone {cone.key} did not stabilize")


def _pattern_mask(cd, k, cone):
    gens = jacobian_generators(cd, k).generators
    argmin = set(_argmin(jacobian_generators(cd, k), cone.relint_point()))
    return sum(1 << j for j, g in enumerate(gens) if g in argmin)


def p_ktau(cd, k, cone, settings=DEFAULTS):
    return _p_ktau_term(cd, k, cone, settings).series


def _p_ktau_term(cd, k, cone, settings=DEFAULTS):
    if _injective(cd, k, cone):
        series, method = _closed_term(cd, k, cone), "closed"
    else:
        series, method = _reconstructed_term(cd, k, cone, settings), "reconstructed"
    if k < cd.d:
        series, ok = series.cancel((k, 1))
        if not ok and not series.is_zero():
            log.warning("factor (1 - L^%d T) did not cancel for cone %s", k, cone.key)
    return ConeTerm(k, cone, method, series)


def interior_terms(cd, settings=DEFAULTS):
    terms = []
    for k in range(1, cd.d + 1):
        for dk in dk_cones(cd, k):
            if dk.interior:
                terms.append(_p_ktau_term(cd, k, dk.cone, settings))
    return terms


def _sum(series_list):
    total = BivRat()
    for x in series_list:
        total = total + x
    return total


@lru_cache(maxsize=None)
def _p_interior_cached(cd, section_lattice, box_limit, guard):
    settings = Settings(section_lattice, box_limit, guard)
    total = _sum(t.series for t in interior_terms(cd, settings))
    return total.cancel_all_except(b_set(cd))


def p_interior(cd, settings=DEFAULTS):
    x = _p_interior_cached(cd, settings.section_lattice, settings.box_limit, settings.guard)
    return BivRat(x.num, x.den)


def section_series(cd, settings=DEFAULTS):
    """List of (SectionData, interior series) over all faces."""
    out = []
    for sec in sections(cd, settings.section_lattice):
        if sec.chardata is None:
            out.append((sec, p_point()))
        else:
            out.append((sec, p_interior(sec.chardata, settings)))
    return out


def p_geom(cd, settings=DEFAULTS):
    total = _sum(x for _, x in section_series(cd, settings))
    return total.cancel_all_except(candidate_poles(cd, settings))


def curve_multiplicity(series):
    """First T-exponent of a curve section's series."""
    return min(t for (_, t) in series.num)


def candidate_poles(cd, settings=DEFAULTS):
    out = set()
    for sec in sections(cd, settings.section_lattice):
        if sec.chardata is None:
            out.add((0, 1))
        else:
            out |= set(b_set(sec.chardata))
            if sec.chardata.d == 1:
                m = _curve_multiplicity_from_lattice(sec.chardata)
                out |= {(1, 1), (0, m)}
    return frozenset(out)


def _curve_multiplicity_from_lattice(cd):
    nu = primitive_in((1,), cd.N)
    return int(nu[0] * min(x[0] for x in cd.elements))


def motivic_volume(cd):
    d = cd.d
    N = cd.N
    total = LVolRat()
    for cone in fan_k(cd, d).cones:
        if cone.dim == 0 or not cone.relint_in_interior():
            continue
        w = linear_minimizer(cd, d, cone)
        for r in cone.rays:
            if dot(r, w) == 0:
                raise InvalidSubstitution(f"ord_J{d} vanishes on ray {r}")
        total = total + substitute_L(relint_cone_series(cone, N), tuple(-x for x in w))
    return (total * lp_pow(L_MINUS_ONE, d)).reduced()


@dataclass
class AssemblyReport:
    terms: list
    sections: list
    interior: object
    geom: object
    poles: frozenset
    volume: object = None
    warnings: list = field(default_factory=list)


def assemble(cd, settings=DEFAULTS, with_volume=True):
    terms = interior_terms(cd, settings)
    secs = section_series(cd, settings)
    geom = p_geom(cd, settings)
    poles = candidate_poles(cd, settings)
    stray = sorted(set(geom.den) - set(poles))
    warnings = []
    if stray:
        warnings.append(f"denominator factors outside the candidate poles: {stray}")
    vol = motivic_volume(cd) if with_volume else None
    return AssemblyReport(terms, secs, p_interior(cd, settings), geom, poles, vol, warnings)
