"""Rational generating series of lattice points in cones.

A ``ConeSeries`` is a numerator (finite sum of monomials x^u) over a product
of factors (1 - x^v), one per denominator ray v.  Closed simplicial cones
use the fundamental parallelepiped; relative interiors are assembled by
inclusion-exclusion over faces.
"""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import InvalidSubstitution, NotSimplicial
from .ltseries import BivRat, LVolRat
from .numlin import (common_denominator, dot, hermite_rows, integer_kernel, inverse,
                     nullspace, rank, vadd, zero)
from .polyhedra import triangulate


@dataclass(frozen=True)
class ConeSeries:
    numerator: tuple      # sorted (point, coeff) pairs
    rays: tuple           # denominator rays

    def terms(self):
        return dict(self.numerator)


def _freeze(terms):
    return tuple(sorted((p, c) for p, c in terms.items() if c))


def _times_one_minus(terms, v):
    out = Counter(terms)
    for p, c in terms.items():
        out[vadd(p, v)] -= c
    return {p: c for p, c in out.items() if c}


def _int_coords(N, v):
    cs = N.coordinates(v)
    assert all(x.denominator == 1 for x in cs), "point not in N"
    return tuple(int(x) for x in cs)


def _saturation(C, d):
    """Basis (integer rows) of Z^d intersected with the rational span of C."""
    if len(C) == d:
        return [tuple(int(i == j) for j in range(d)) for i in range(d)]
    perp = nullspace([tuple(Fraction(x) for x in row) for row in C], d)
    perp_int = []
    for p in perp:
        den = common_denominator([p])
        perp_int.append(tuple(int(x * den) for x in p))
    return integer_kernel(perp_int, d)


def parallelepiped_points(rays, flags, N):
    """Points of N in the half-open parallelepiped spanned by ``rays``.

    Coefficient t_i runs over [0,1), or (0,1] when flags[i] is set.
    """
    k = len(rays)
    d = N.ambient_dim
    if k == 0:
        return [zero(d)]
    C = [_int_coords(N, r) for r in rays]
    S = _saturation(C, d)
    # express C in the basis S: C = A S
    cols = next(cs for cs in _column_choices(S, k))
    Ssq = [[Fraction(S[i][j]) for j in cols] for i in range(k)]
    Sinv = inverse(Ssq)
    A = [[sum((C[r][cols[j]] * Sinv[j][i] for j in range(k)), Fraction(0)) for i in range(k)]
         for r in range(k)]
    A_int = [[int(x) for x in row] for row in A]
    assert all(Fraction(x) == y for ra, rb in zip(A_int, A) for x, y in zip(ra, rb))
    H = hermite_rows(A_int)
    Ainv = inverse(A)
    basis = N.basis
    pts = []
    for y in _box(tuple(H[i][i] for i in range(k))):
        t = [sum((y[j] * Ainv[j][i] for j in range(k)), Fraction(0)) for i in range(k)]
        t = [x - (x.numerator // x.denominator) for x in t]
        t = [Fraction(1) if (x == 0 and f) else x for x, f in zip(t, flags)]
        ncoord = [sum((t[i] * C[i][j] for i in range(k)), Fraction(0)) for j in range(d)]
        pts.append(tuple(sum((ncoord[i] * basis[i][j] for i in range(d)), Fraction(0))
                         for j in range(d)))
    return sorted(pts)


def _column_choices(S, k):
    for cols in combinations(range(len(S[0])), k):
        if rank([tuple(Fraction(S[i][j]) for j in cols) for i in range(k)]) == k:
            yield cols


def _box(sizes):
    pts = [()]
    for s in sizes:
        pts = [p + (i,) for p in pts for i in range(s)]
    return pts


def closed_cone_series(cone, flags, N):
    if not cone.is_simplicial():
        raise NotSimplicial(f"{cone} is not simplicial")
    pts = parallelepiped_points(cone.rays, flags, N)
    return ConeSeries(_freeze(Counter(pts)), tuple(cone.rays))


def closed_series(cone, N):
    """Series of all lattice points of a closed cone, over its rays."""
    total = Counter()
    for piece, flags in triangulate(cone):
        cs = closed_cone_series(piece, flags, N)
        terms = cs.terms()
        for r in cone.rays:
            if r not in piece.rays:
                terms = _times_one_minus(terms, r)
        total.update(terms)
    return ConeSeries(_freeze(total), tuple(cone.rays))


def relint_cone_series(cone, N):
    total = Counter()
    for idx in cone.face_index_sets:
        face = cone.face(idx)
        sign = (-1) ** (cone.dim - face.dim)
        cs = closed_series(face, N) if face.rays else \
            ConeSeries(((zero(cone.d), 1),), ())
        terms = cs.terms()
        for i, r in enumerate(cone.rays):
            if i not in idx:
                terms = _times_one_minus(terms, r)
        for p, c in terms.items():
            total[p] += sign * c
    return ConeSeries(_freeze(total), tuple(cone.rays))


def expand_in_box(cs, bound):
    """Coefficients of the expansion at points with every coordinate <= bound.

    Rays must have nonnegative coordinates and be nonzero.
    """
    out = Counter()
    rays = cs.rays
    for p, c in cs.numerator:
        stack = [(p, 0)]
        while stack:
            q, start = stack.pop()
            if any(x > bound for x in q):
                continue
            out[q] += c
            for i in range(start, len(rays)):
                stack.append((vadd(q, rays[i]), i))
    return {p: c for p, c in out.items() if c}


def _pairing_int(u, m):
    v = dot(u, m)
    if v.denominator != 1:
        raise InvalidSubstitution(f"pairing {v} is not an integer")
    return int(v)


def substitute_LT(cs, a_map, b_map):
    num = Counter()
    for p, c in cs.numerator:
        num[(_pairing_int(p, a_map), _pairing_int(p, b_map))] += c
    den = Counter()
    for r in cs.rays:
        ab = (_pairing_int(r, a_map), _pairing_int(r, b_map))
        if ab == (0, 0):
            raise InvalidSubstitution(f"ray {r} maps to (0,0)")
        den[ab] += 1
    return BivRat(num, den)


def substitute_L(cs, a_map):
    num = Counter()
    for p, c in cs.numerator:
        num[_pairing_int(p, a_map)] += c
    den = Counter()
    for r in cs.rays:
        a = _pairing_int(r, a_map)
        if a >= 0:
            raise InvalidSubstitution(f"ray {r} maps to L^{a} with a >= 0")
        den[-a] += 1
    return LVolRat(num, den)
