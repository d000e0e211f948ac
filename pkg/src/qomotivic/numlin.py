"""Exact rational vectors and lattices in Q^d.

A lattice is stored as an integer row Hermite normal form ``hnf`` together
with a positive integer ``scale``; the basis rows are ``hnf[i] / scale``.
Both are reduced to a canonical form, so two lattices are equal exactly
when their dataclass fields are equal.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm

from .errors import NotSublattice, RankDeficient

ZERO = Fraction(0)


# -- vectors -----------------------------------------------------------------

def vec(xs):
    return tuple(Fraction(x) for x in xs)


def zero(d):
    return (ZERO,) * d


def unit(d, i):
    return tuple(Fraction(int(j == i)) for j in range(d))


def dot(u, v):
    return sum((a * b for a, b in zip(u, v)), ZERO)


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v):
    return tuple(c * a for a in v)


def vsum(vs, d):
    out = zero(d)
    for v in vs:
        out = vadd(out, v)
    return out


def common_denominator(vs):
    den = 1
    for v in vs:
        for x in v:
            den = lcm(den, Fraction(x).denominator)
    return den


def primitive_direction(v):
    """The primitive integer vector on the ray through ``v``."""
    den = common_denominator([v])
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no direction")
    return tuple(x // g for x in ints)


def fmt_rat(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def fmt_vec(v):
    return "(" + ",".join(fmt_rat(x) for x in v) + ")"


# -- rational linear algebra ---------------------------------------------------

def rref(rows):
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    m = [list(map(Fraction, r)) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        m[r] = [x / piv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(row) for row in m[:r]], pivots


def rank(rows):
    return len(rref(rows)[0])


def nullspace(rows, n):
    """Basis of {x in Q^n : <row, x> = 0 for every row}."""
    red, pivots = rref(rows)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [ZERO] * n
        x[f] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def solve_in_span(rows, v):
    """Coefficients c with sum c_i rows_i = v, or None if v is not in the span.

    ``rows`` must be linearly independent.
    """
    k = len(rows)
    n = len(v)
    # columns of the system are the rows; augment with v
    aug = [[rows[i][j] for i in range(k)] + [v[j]] for j in range(n)]
    red, pivots = rref(aug)
    if k in pivots:
        return None
    c = [ZERO] * k
    for row, p in zip(red, pivots):
        c[p] = row[k]
    return tuple(c)


def inverse(mat):
    n = len(mat)
    aug = [list(map(Fraction, mat[i])) + [Fraction(int(i == j)) for j in range(n)]
           for i in range(n)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise RankDeficient("matrix is singular")
    return [tuple(row[n:]) for row in red]


def span_key(vectors, n):
    """Canonical description of the linear span of ``vectors`` in Q^n."""
    red, _ = rref([v for v in vectors]) if vectors else ([], [])
    return tuple(red) if red else ()


# -- integer row reduction -------------------------------------------------------

def hermite_rows(rows):
    """Row Hermite normal form of an integer matrix (nonzero rows only).

    Pivots are positive and entries above a pivot lie in [0, pivot).
    Columns without a pivot are skipped, so any rank is accepted.
    """
    a = [list(r) for r in rows if any(r)]
    if not a:
        return []
    ncols = len(a[0])
    r = 0
    for c in range(ncols):
        while True:
            nz = [i for i in range(r, len(a)) if a[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[p] = a[p], a[r]
            clean = True
            for i in range(r + 1, len(a)):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    if a[i][c]:
                        clean = False
            if clean:
                break
        if r < len(a) and a[r][c] != 0:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
            for i in range(r):
                q = a[i][c] // a[r][c]
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
            r += 1
            if r == len(a):
                break
    return [tuple(row) for row in a[:r]]


def integer_kernel(mat, n):
    """Basis of {x in Z^n : mat x = 0} for an integer matrix with n columns."""
    m = len(mat)
    aug = [tuple(mat[i][j] for i in range(m)) + tuple(int(i == j) for i in range(n))
           for j in range(n)]
    red = hermite_rows(aug)
    return [row[m:] for row in red if not any(row[:m])]


# -- lattices ----------------------------------------------------------------------

@dataclass(frozen=True)
class Lattice:
    ambient_dim: int
    scale: int
    hnf: tuple

    @property
    def basis(self):
        return tuple(tuple(Fraction(x, self.scale) for x in row) for row in self.hnf)

    @property
    def covolume(self):
        det = Fraction(1)
        for i, row in enumerate(self.hnf):
            det *= Fraction(row[i], self.scale)
        return det

    def coordinates(self, v):
        """Rational c with v = c . basis (the basis is upper triangular)."""
        d = self.ambient_dim
        w = [Fraction(x) * self.scale for x in v]
        c = [ZERO] * d
        for i in range(d):
            c[i] = w[i] / self.hnf[i][i]
            if c[i]:
                for j in range(i, d):
                    w[j] -= c[i] * self.hnf[i][j]
        return tuple(c)

    def __contains__(self, v):
        return all(x.denominator == 1 for x in self.coordinates(v))

    def __str__(self):
        d = self.ambient_dim
        diag = all(self.hnf[i][j] == 0 for i in range(d) for j in range(d) if i != j)
        if diag:
            parts = []
            for i in range(d):
                f = Fraction(self.hnf[i][i], self.scale)
                if f == 1:
                    parts.append("Z")
                elif f.numerator == 1:
                    parts.append(f"(1/{f.denominator})Z")
                else:
                    parts.append(f"{fmt_rat(f)}Z")
            return " x ".join(parts)
        return "span_Z{" + ", ".join(fmt_vec(b) for b in self.basis) + "}"


def lattice_from_generators(gens, ambient_dim):
    gens = [vec(g) for g in gens]
    for g in gens:
        if len(g) != ambient_dim:
            raise ValueError(f"generator {fmt_vec(g)} has wrong length")
    den = common_denominator(gens)
    rows = hermite_rows([tuple(int(x * den) for x in g) for g in gens])
    if len(rows) < ambient_dim:
        raise RankDeficient(f"generators span a lattice of rank {len(rows)} < {ambient_dim}")
    g = den
    for row in rows:
        for x in row:
            g = gcd(g, x)
    return Lattice(ambient_dim, den // g, tuple(tuple(x // g for x in row) for row in rows))


def standard_lattice(d):
    return Lattice(d, 1, tuple(tuple(int(i == j) for j in range(d)) for i in range(d)))


def member(lat, v):
    return v in lat


def contains_lattice(sup, sub):
    return all(b in sup for b in sub.basis)


def lattice_index(sub, sup):
    if not contains_lattice(sup, sub):
        raise NotSublattice(f"{sub} is not contained in {sup}")
    q = sub.covolume / sup.covolume
    assert q.denominator == 1
    return int(q)


def lattice_sum(a, b):
    return lattice_from_generators(list(a.basis) + list(b.basis), a.ambient_dim)


def dual_lattice(lat):
    inv = inverse(lat.basis)
    d = lat.ambient_dim
    # rows of the inverse transpose = columns of the inverse
    rows = [tuple(inv[i][j] for i in range(d)) for j in range(d)]
    return lattice_from_generators(rows, d)


def intersect_coordinate_subspace(lat, keep):
    """lat intersected with span{e_i : i in keep}, in the |keep|-dim frame."""
    keep = sorted(keep)
    if not keep:
        raise ValueError("keep must be nonempty")
    d = lat.ambient_dim
    drop = [i for i in range(d) if i not in keep]
    order = drop + keep
    # echelon form with the dropped columns first: trailing rows vanish on them
    rows = hermite_rows([tuple(row[i] for i in order) for row in lat.hnf])
    tail = [row[len(drop):] for row in rows[len(drop):]]
    return lattice_from_generators(
        [tuple(Fraction(x, lat.scale) for x in row) for row in tail], len(keep))


def primitive_in(direction, lat):
    """Shortest nonzero point of ``lat`` on the ray through ``direction``."""
    c = lat.coordinates(direction)
    prim = primitive_direction(c)
    basis = lat.basis
    d = lat.ambient_dim
    return tuple(sum((prim[i] * basis[i][j] for i in range(d)), ZERO) for j in range(d))


def independent(vectors):
    return rank(vectors) == len(vectors)


def subsets_of_rank(vectors, k):
    """All k-subsets (as index tuples) of linearly independent vectors."""
    return [idx for idx in combinations(range(len(vectors)), k)
            if independent([vectors[i] for i in idx])]
