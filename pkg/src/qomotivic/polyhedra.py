"""Rational cones inside the orthant, dual fans of Newton polyhedra, refinements.

Cones are pointed and described by their extreme rays.  Rays are scaled to
be primitive in a reference lattice N (the standard lattice unless the
caller supplies one).  Facet normals and equations of the linear span are
computed on demand from the rays.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product

from .errors import EmptyGenerators, InternalInconsistency
from .numlin import (ZERO, dot, nullspace, primitive_direction, primitive_in, rank,
                     solve_in_span, standard_lattice, unit, vec, vsum, zero)


@dataclass(frozen=True, eq=False)
class Cone:
    d: int
    rays: tuple

    @cached_property
    def key(self):
        return tuple(sorted(primitive_direction(r) for r in self.rays))

    def __eq__(self, other):
        return isinstance(other, Cone) and self.d == other.d and self.key == other.key

    def __hash__(self):
        return hash((self.d, self.key))

    def __repr__(self):
        return f"Cone({self.key})"

    @cached_property
    def dim(self):
        return rank(self.rays) if self.rays else 0

    @cached_property
    def equations(self):
        """Basis of the orthogonal complement of the linear span."""
        return tuple(nullspace(self.rays, self.d)) if self.rays else \
            tuple(unit(self.d, i) for i in range(self.d))

    @cached_property
    def facets(self):
        """List of (inward normal, frozenset of ray indices on the facet)."""
        k = self.dim
        rays = self.rays
        if k == 0:
            return []
        if k == 1:
            return [(rays[0], frozenset())]
        out = {}
        for sub in combinations(range(len(rays)), k - 1):
            if rank([rays[i] for i in sub]) != k - 1:
                continue
            cands = nullspace([rays[i] for i in sub], self.d)
            n = next((c for c in cands if any(dot(c, r) != 0 for r in rays)), None)
            vals = [dot(n, r) for r in rays]
            if all(v >= 0 for v in vals):
                pass
            elif all(v <= 0 for v in vals):
                n = tuple(-x for x in n)
                vals = [-v for v in vals]
            else:
                continue
            zs = frozenset(i for i, v in enumerate(vals) if v == 0)
            if zs not in out:
                out[zs] = n
        return [(n, zs) for zs, n in sorted(out.items(), key=lambda t: sorted(t[0]))]

    def contains(self, v):
        return all(dot(e, v) == 0 for e in self.equations) and \
            all(dot(n, v) >= 0 for n, _ in self.facets)

    def relint_contains(self, v):
        return all(dot(e, v) == 0 for e in self.equations) and \
            all(dot(n, v) > 0 for n, _ in self.facets)

    def relint_point(self):
        return vsum(self.rays, self.d)

    def relint_in_interior(self):
        return all(x > 0 for x in self.relint_point())

    def face(self, idx):
        return Cone(self.d, tuple(self.rays[i] for i in sorted(idx)))

    @cached_property
    def face_index_sets(self):
        """All faces, as sets of ray indices, including the cone and {0}."""
        faces = {frozenset(range(len(self.rays)))}
        frontier = [zs for _, zs in self.facets]
        while frontier:
            new = []
            for f in frontier:
                if f in faces:
                    continue
                faces.add(f)
                new.append(f)
            frontier = []
            for f in new:
                for _, zs in self.facets:
                    g = f & zs
                    if g not in faces:
                        frontier.append(g)
        return sorted(faces, key=lambda s: (len(s), sorted(s)))

    def faces(self):
        return [self.face(s) for s in self.face_index_sets]

    def is_simplicial(self):
        return len(self.rays) == self.dim


def make_cone(directions, N=None):
    """Cone generated by ``directions`` with rays primitive in ``N``.

    Duplicate and non-extreme generators are dropped.
    """
    dirs = []
    for v in directions:
        p = primitive_direction(vec(v))
        if p not in dirs:
            dirs.append(p)
    if not dirs:
        return Cone(len(directions[0]) if directions else 0, ())
    d = len(dirs[0])
    raw = Cone(d, tuple(vec(p) for p in dirs))
    extreme = []
    k = raw.dim
    for i, r in enumerate(raw.rays):
        on = [n for n, zs in raw.facets if i in zs]
        if k == 1 or rank(list(on) + list(raw.equations)) == d - 1:
            extreme.append(dirs[i])
    return cone_from_extreme(extreme, N)


def cone_from_extreme(dirs, N=None):
    dirs = sorted(set(primitive_direction(vec(v)) for v in dirs))
    d = len(dirs[0])
    N = N or standard_lattice(d)
    return Cone(d, tuple(primitive_in(vec(p), N) for p in dirs))


def zero_cone(d):
    return Cone(d, ())


def rays_from_halfspaces(ineqs, eqs, d):
    """Extreme ray directions of {x : <a,x> >= 0 (a in ineqs), <e,x> = 0 (e in eqs)}.

    The cone is assumed pointed.
    """
    cons = []
    seen = set()
    for a in list(eqs) + list(ineqs):
        if any(a):
            key = primitive_direction(a)
            if key not in seen:
                seen.add(key)
                cons.append(a)
    found = set()
    for sub in combinations(cons, d - 1):
        if d > 1 and rank(sub) != d - 1:
            continue
        ns = nullspace(list(sub), d)
        if len(ns) != 1:
            continue
        r = ns[0]
        for cand in (r, tuple(-x for x in r)):
            if all(dot(e, cand) == 0 for e in eqs) and all(dot(a, cand) >= 0 for a in ineqs):
                found.add(primitive_direction(cand))
    return sorted(found)


def cone_from_halfspaces(ineqs, eqs, d, N=None):
    dirs = rays_from_halfspaces(ineqs, eqs, d)
    if not dirs:
        return zero_cone(d)
    return cone_from_extreme(dirs, N)


def intersect_cones(a, b, N=None):
    d = a.d
    ineqs = [n for n, _ in a.facets] + [n for n, _ in b.facets]
    eqs = list(a.equations) + list(b.equations)
    return cone_from_halfspaces(ineqs, eqs, d, N)


def orthant_inequalities(d):
    return [unit(d, i) for i in range(d)]


# -- Newton data and dual fans ------------------------------------------------------

@dataclass(frozen=True)
class NewtonData:
    generators: tuple
    lattice_M: object = None


def newton_data(generators, lattice_M=None):
    gens = []
    for g in generators:
        g = vec(g)
        if g not in gens:
            gens.append(g)
    return NewtonData(tuple(gens), lattice_M)


def support_value(nd, nu):
    if not nd.generators:
        raise EmptyGenerators("no generators")
    return min(dot(nu, g) for g in nd.generators)


def min_generators(nd, nu):
    if not nd.generators:
        raise EmptyGenerators("no generators")
    vals = [dot(nu, g) for g in nd.generators]
    m = min(vals)
    return tuple(g for g, v in zip(nd.generators, vals) if v == m)


@dataclass(frozen=True, eq=False)
class Fan:
    d: int
    cones: tuple
    maximal: tuple
    N: object = field(default=None)

    def rays(self):
        return [c for c in self.cones if c.dim == 1]

    def locate(self, nu):
        """The cone whose relative interior contains ``nu``."""
        for c in self.cones:
            if c.relint_contains(nu):
                return c
        raise ValueError("point outside the fan support")

    def keys(self):
        return {c.key for c in self.cones}


def fan_from_maximal(maximal, d, N=None):
    allc = {}
    for c in maximal:
        for f in c.faces():
            allc.setdefault(f.key, f)
    cones = tuple(sorted(allc.values(), key=lambda c: (c.dim, c.key)))
    maximal = tuple(sorted(maximal, key=lambda c: c.key))
    return Fan(d, cones, maximal, N)


def dual_fan(nd, N=None):
    if not nd.generators:
        raise EmptyGenerators("no generators")
    gens = nd.generators
    d = len(gens[0])
    maximal = {}
    for g in gens:
        ineqs = orthant_inequalities(d) + [tuple(h - x for h, x in zip(hh, g))
                                          for hh in gens if hh != g]
        c = cone_from_halfspaces(ineqs, [], d, N)
        if c.dim == d:
            maximal.setdefault(c.key, c)
    return fan_from_maximal(list(maximal.values()), d, N)


def orthant_fan(d, N=None):
    return fan_from_maximal([cone_from_extreme([unit(d, i) for i in range(d)], N)], d, N)


def refine(fans):
    fans = list(fans)
    acc = fans[0]
    for nxt in fans[1:]:
        maximal = {}
        for a, b in product(acc.maximal, nxt.maximal):
            c = intersect_cones(a, b, acc.N)
            if c.dim == acc.d:
                maximal.setdefault(c.key, c)
        acc = fan_from_maximal(list(maximal.values()), acc.d, acc.N)
    return acc


# -- half-open triangulation --------------------------------------------------------

def _plain_triangulation(c):
    """Simplicial pieces (as ray tuples) of a pulling triangulation of c."""
    if c.is_simplicial():
        return [c.rays]
    order = sorted(range(len(c.rays)), key=lambda i: primitive_direction(c.rays[i]))
    apex = order[0]
    pieces = []
    for _, zs in c.facets:
        if apex in zs:
            continue
        facet = c.face(zs)
        for sub in _plain_triangulation(facet):
            pieces.append((c.rays[apex],) + tuple(sub))
    return pieces


def _generic_point(c, pieces):
    n = len(c.rays)
    for t in range(1, 50):
        weights = [Fraction(1) + Fraction(j + 1, (t + 1) * n + j) for j in range(n)]
        y = vsum([tuple(w * x for x in r) for w, r in zip(weights, c.rays)], c.d)
        coords = [solve_in_span(list(p), y) for p in pieces]
        if all(all(x != 0 for x in cs) for cs in coords):
            return y, coords
    raise InternalInconsistency("no generic point found for the triangulation")


def triangulate(c):
    """Half-open simplicial pieces of c.

    Returns a list of (simplicial Cone, flags) where flags[i] is True when the
    facet opposite ray i is open, so each lattice point of c lies in exactly
    one piece.
    """
    if c.dim == 0:
        return [(c, ())]
    if c.is_simplicial():
        return [(c, (False,) * len(c.rays))]
    pieces = _plain_triangulation(c)
    _, coords = _generic_point(c, pieces)
    out = []
    for p, cs in zip(pieces, coords):
        order = sorted(range(len(p)), key=lambda i: primitive_direction(p[i]))
        rays = tuple(p[i] for i in order)
        flags = tuple(cs[i] < 0 for i in order)
        out.append((Cone(c.d, rays), flags))
    return out


def piece_contains(piece, flags, v):
    """Membership of v in a half-open simplicial piece."""
    cs = solve_in_span(list(piece.rays), v)
    if cs is None:
        return False
    return all((x > 0) if open_ else (x >= 0) for x, open_ in zip(cs, flags))


def box_points(lat, bound, positive=False):
    """Points of ``lat`` with every coordinate in [0, bound], or (0, bound].

    Relies on the upper triangular canonical basis: coordinate i only
    depends on the first i+1 basis rows.
    """
    d = lat.ambient_dim
    basis = lat.basis
    pts = [zero(d)]
    for i in range(d):
        piv = basis[i][i]
        new = []
        for partial in pts:
            cur = partial[i]
            if positive:
                cmin = math.floor(-cur / piv) + 1
            else:
                cmin = math.ceil(-cur / piv)
            cmax = math.floor((bound - cur) / piv)
            for c in range(cmin, cmax + 1):
                new.append(tuple(a + c * b for a, b in zip(partial, basis[i])))
        pts = new
    return pts
