"""Brute-force jet-class enumeration.

Scans nu in N with all coordinates in (0, B], computes ord_{J_1..J_d} by
direct minimization over the generators, and collects the distinct class
keys (k, argmin patterns, ord values) per jet level s.  A class at level s
contributes (L-1)^k L^(s k - ord_{J_k}).  The box B is doubled until the
class data is stable, then doubled once more.  Single-cone sums scan the
cone's relative interior in ray coordinates instead of an axis box.

This module shares nothing with the closed-form pipeline beyond the
generator lists of the J_k and the lattice N.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import BudgetExceeded, InternalInconsistency
from .ltseries import L_MINUS_ONE, lp_add, lp_pow, lp_shift, lp_str
from .numlin import common_denominator
from .genfun import parallelepiped_points
from .polyhedra import triangulate
from .qocore import jacobian_generators

DEFAULT_BOX_LIMIT = 2 ** 20
_INT64_SAFE = 2 ** 62


@dataclass(frozen=True)
class JetClassKey:
    k: int
    patterns: tuple     # argmin bitmask of J_1..J_k at nu
    ords: tuple         # ord_{J_1}(nu), ..., ord_{J_k}(nu)
    s: int


def _lattice_points(N, bound):
    """Integer matrix of points of N (scaled by N.scale) with coordinates in (0, bound]."""
    d = N.ambient_dim
    H = np.array(N.hnf, dtype=object)
    scale = N.scale
    top = bound * scale
    pts = np.zeros((1, d), dtype=object)
    for i in range(d):
        piv = int(H[i][i])
        blocks = []
        for p in pts:
            cur = int(p[i])
            cmin = (-cur) // piv + 1
            cmax = (top - cur) // piv
            if cmax < cmin:
                continue
            cs = np.arange(cmin, cmax + 1, dtype=object)
            blocks.append(p[None, :] + cs[:, None] * H[i][None, :])
        pts = np.concatenate(blocks) if blocks else np.zeros((0, d), dtype=object)
    return pts


def _count_box(N, bound):
    total = 1
    for i in range(N.ambient_dim):
        total *= max(1, (bound * N.scale) // N.hnf[i][i])
    return total


def _generator_matrix(cd, k):
    gens = jacobian_generators(cd, k).generators
    den = common_denominator(gens)
    G = np.array([[int(x * den) for x in g] for g in gens], dtype=object)
    pos = np.array([all(x > 0 for x in g) for g in gens])
    return G, den, pos


def _cone_pieces(cone, N):
    sc = N.scale
    out = []
    for piece, flags in triangulate(cone):
        rays = np.array([[int(x * sc) for x in r] for r in piece.rays], dtype=object)
        pts = [[int(x * sc) for x in p] for p in parallelepiped_points(piece.rays, flags, N)]
        out.append((rays, np.array(pts, dtype=object)))
    return out


def _cone_points(cone, N, bound):
    """Scaled points of relint(cone) in N with positive coordinates.

    Each half-open simplicial piece contributes its parallelepiped points
    plus c_i times its rays, 0 <= c_i < bound; the pieces are disjoint.
    """
    blocks = []
    for rays, pts in _cone_pieces(cone, N):
        grid = np.meshgrid(*[np.arange(bound, dtype=object)] * len(rays), indexing="ij")
        combos = np.stack([g.ravel() for g in grid], axis=1)
        shift = combos.dot(rays)
        blocks.append((shift[:, None, :] + pts[None, :, :]).reshape(-1, N.ambient_dim))
    P = np.concatenate(blocks)
    normals = [n for n, _ in cone.facets]
    den = common_denominator(normals) if normals else 1
    keep = np.all(P > 0, axis=1)
    if normals:
        Nm = np.array([[int(x * den) for x in n] for n in normals], dtype=object)
        keep &= np.all(P.dot(Nm.T) > 0, axis=1)
    return P[keep.astype(bool)]


def _cone_count(cone, N, bound):
    return sum(len(pts) * bound ** len(rays) for rays, pts in _cone_pieces(cone, N))


def _class_table(cd, P, s_max):
    """Class key -> (phi_k, min(s_max + 1, max phi_{k+1} over the fiber)).

    ``P`` holds scaled points of N.  Only classes with phi_k <= s_max are kept.
    """
    N = cd.N
    d = cd.d
    if len(P) == 0:
        return {}
    pmax = int(np.abs(P).max())
    ords = []
    patterns = []
    interior_ok = []
    for k in range(1, d + 1):
        G, den, pos = _generator_matrix(cd, k)
        scale = N.scale * den
        if int(np.abs(G).max()) * pmax * d < _INT64_SAFE:
            vals = P.astype(np.int64) @ G.T.astype(np.int64)
        else:
            vals = P @ G.T
        mins = vals.min(axis=1)
        if np.any(mins % scale != 0):
            raise InternalInconsistency("non-integral ord value in the oracle")
        mask = vals == mins[:, None]
        weights = np.array([1 << j for j in range(G.shape[0])], dtype=object)
        patterns.append((mask.astype(object) * weights[None, :]).sum(axis=1))
        ords.append((mins // scale).astype(object))
        if k < d:
            interior_ok.append(~np.any(mask & ~pos[None, :], axis=1))
        else:
            interior_ok.append(np.ones(len(P), dtype=bool))
    cap = s_max + 1
    table = {}
    for k in range(1, d + 1):
        lo = ords[k - 1] - (ords[k - 2] if k > 1 else 0)
        if k < d:
            hi = ords[k] - ords[k - 1]
        else:
            hi = np.full(len(P), cap, dtype=object)
        keep = interior_ok[k - 1] & (lo <= s_max) & (hi > lo)
        for idx in np.nonzero(keep)[0]:
            key = (k, tuple(int(patterns[i][idx]) for i in range(k)),
                   tuple(int(ords[i][idx]) for i in range(k)))
            l, h = int(lo[idx]), min(int(hi[idx]), cap)
            old = table.get(key)
            if old is None:
                table[key] = (l, h)
            else:
                if old[0] != l:
                    raise InternalInconsistency(f"class {key} has two phi_k values")
                if h > old[1]:
                    table[key] = (l, h)
    return table


@lru_cache(maxsize=None)
def _stable_table(cd, s_max, box_limit, cone=None):
    """Class table for the whole orthant, or for relint(cone) only."""
    bound = max(4, s_max) if cone is None else 4
    history = []
    while True:
        size = _count_box(cd.N, bound) if cone is None else _cone_count(cone, cd.N, bound)
        if size > box_limit:
            raise BudgetExceeded(
                f"oracle box {bound} exceeds the limit of {box_limit} points before "
                f"stabilizing; raise --box-limit or lower --order")
        if cone is None:
            P = _lattice_points(cd.N, bound)
        else:
            P = _cone_points(cone, cd.N, bound)
        cur = _class_table(cd, P, s_max)
        history.append(cur)
        if len(history) >= 3 and history[-1] == history[-2] == history[-3]:
            return cur, bound
        bound *= 2


def enumerate_classes(cd, s_max, box_limit=DEFAULT_BOX_LIMIT, cone=None):
    """Map s -> sorted list of (JetClassKey, ord_{J_k}, k) for 1 <= s <= s_max."""
    table, _ = _stable_table(cd, s_max, box_limit, cone)
    out = {s: [] for s in range(1, s_max + 1)}
    for (k, pats, ords), (lo, hi) in sorted(table.items()):
        for s in range(max(lo, 1), hi):
            out[s].append((JetClassKey(k, pats, ords, s), ords[-1], k))
    return out


def class_contribution(k, ord_k, s):
    return lp_shift(lp_pow(L_MINUS_ONE, k), s * k - ord_k)


def series_coefficients(cd, s_max, box_limit=DEFAULT_BOX_LIMIT, select=None, cone=None):
    """Coefficients of T^0..T^s_max of the interior series by enumeration.

    ``cone`` restricts the scan to its relative interior and ``select``
    filters class keys; together they give single-cone sums.
    """
    classes = enumerate_classes(cd, s_max, box_limit, cone)
    coeffs = [{} for _ in range(s_max + 1)]
    for s, items in classes.items():
        for key, ord_k, k in items:
            if select is not None and not select(key):
                continue
            coeffs[s] = lp_add(coeffs[s], class_contribution(k, ord_k, s))
    return coeffs


def geom_coefficients(cd, s_max, section_lattice="ambient", box_limit=DEFAULT_BOX_LIMIT):
    """Coefficients of the full series: point term plus every section's interior series."""
    from .qocore import sections
    coeffs = [{0: 1} for _ in range(s_max + 1)]
    for sec in sections(cd, section_lattice):
        if sec.chardata is None:
            continue
        part = series_coefficients(sec.chardata, s_max, box_limit)
        coeffs = [lp_add(a, b) for a, b in zip(coeffs, part)]
    return coeffs


def volume_trace(cd, precision, box_limit=DEFAULT_BOX_LIMIT):
    """Truncated motivic volume read off the enumeration.

    L^(-s d) times the T^s coefficient of the interior series, at
    s = precision + d, agrees with the volume in every exponent >= -precision:
    the k = d classes left out have ord_{J_d} > s, and every k < d class sits
    below L^(d - 1 - s) after the shift.
    """
    s = precision + cd.d
    coeff = series_coefficients(cd, s, box_limit)[s]
    return {e: c for e, c in lp_shift(coeff, -s * cd.d).items() if e >= -precision}


@dataclass
class CrosscheckReport:
    order: int
    mismatches: list      # (s, closed, oracle)
    classes: dict

    @property
    def ok(self):
        return not self.mismatches

    def first_mismatch(self):
        return self.mismatches[0] if self.mismatches else None

    def lines(self):
        out = []
        for s, a, b in self.mismatches:
            out.append(f"T^{s}: closed form {lp_str(a)} != enumeration {lp_str(b)}")
            for key, ord_k, k in self.classes.get(s, []):
                out.append(f"    class k={k} ords={key.ords}")
        if not out:
            out.append(f"all {self.order + 1} coefficients agree")
        return out


def crosscheck(cd, s_max, closed_coeffs=None, box_limit=DEFAULT_BOX_LIMIT):
    """Compare closed-form coefficients with the enumeration, listing every mismatch."""
    if closed_coeffs is None:
        from .motivic import p_interior
        closed_coeffs = p_interior(cd).expand(s_max)
    oracle = series_coefficients(cd, s_max, box_limit)
    classes = enumerate_classes(cd, s_max, box_limit)
    mism = [(s, a, b) for s, (a, b) in enumerate(zip(closed_coeffs, oracle)) if a != b]
    return CrosscheckReport(s_max, mism, classes)

