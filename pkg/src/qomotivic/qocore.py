"""Characteristic data, logarithmic jacobian generators and the w_k minimizers.

Elements e_1..e_{d+g} are indexed from 0: indices 0..d-1 are the coordinate
vectors and index d+j-1 is the characteristic exponent lambda_j.  Public
results report n, m, t in the 1-based conventions of the minimization
algorithm (0 meaning "none", g+1 meaning "infinity" for t).
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .errors import (InternalInconsistency, InvalidInput, NotCharacteristic, NotMonotone,
                     NotNormalized)
from .numlin import (contains_lattice, dot, dual_lattice, fmt_vec, independent,
                     intersect_coordinate_subspace, lattice_from_generators, lattice_index,
                     primitive_in, rank, span_key, unit, vec, vsum, zero)
from .polyhedra import dual_fan, min_generators, newton_data, refine, support_value

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class LatticeChain:
    lattices: tuple        # M_0, ..., M_g
    indices: tuple         # n_1, ..., n_g
    M: object
    N: object


@dataclass(frozen=True)
class CharData:
    mode: str              # "qo" or "toric"
    d: int
    exponents: tuple       # lambda_1..lambda_g, or semigroup generators
    lattice_M: object
    chain: object = None
    permutation: tuple = ()
    warnings: tuple = field(default=(), compare=False)

    @property
    def g(self):
        return len(self.exponents) if self.mode == "qo" else 0

    @property
    def N(self):
        return _dual(self.lattice_M)

    @property
    def elements(self):
        """e_1..e_d followed by the characteristic exponents (qo), or the generators."""
        if self.mode == "qo":
            return tuple(unit(self.d, i) for i in range(self.d)) + self.exponents
        return self.exponents


@lru_cache(maxsize=None)
def _dual(M):
    return dual_lattice(M)


# -- validation ---------------------------------------------------------------------

def _check_vectors(vs, d, what):
    out = []
    for i, v in enumerate(vs):
        try:
            v = vec(v)
        except (ValueError, ZeroDivisionError, TypeError) as exc:
            raise InvalidInput(f"{what}[{i}]: not a rational vector ({exc})") from None
        if len(v) != d:
            raise InvalidInput(f"{what}[{i}] = {fmt_vec(v)} has length {len(v)}, expected {d}")
        if any(x < 0 for x in v):
            raise InvalidInput(f"{what}[{i}] = {fmt_vec(v)} has a negative entry")
        if not any(v):
            raise InvalidInput(f"{what}[{i}] is the zero vector")
        out.append(v)
    return out


def _lex_permutation(exps, d):
    """Coordinate order making the coordinate rows (lambda_1^i,...,lambda_g^i) lex-descending."""
    rows = [tuple(lam[i] for lam in exps) for i in range(d)]
    return tuple(sorted(range(d), key=lambda i: tuple(-x for x in rows[i])))


def validate(mode, d, exponents, lattice=None, derived=False, permute=True):
    """Validate input data and build the CharData (with lattice chain in qo mode).

    ``derived`` marks section data: normalization problems only warn there.
    ``lattice`` supplies the ambient lattice M (must contain the generated one).
    """
    if not isinstance(d, int) or d < 1:
        raise InvalidInput(f"d must be a positive integer, got {d!r}")
    if mode == "qo":
        return _validate_qo(d, exponents, lattice, derived, permute)
    if mode == "toric":
        return _validate_toric(d, exponents, lattice)
    raise InvalidInput(f"unknown mode {mode!r}")


def _validate_qo(d, exponents, lattice, derived, permute):
    exps = _check_vectors(exponents, d, "exponents")
    warnings = []
    perm = tuple(range(d))
    if permute and not derived and exps:
        perm = _lex_permutation(exps, d)
        if perm != tuple(range(d)):
            exps = [tuple(e[i] for i in perm) for e in exps]
            warnings.append("coordinates permuted to " + str(tuple(p + 1 for p in perm)))
    for j in range(len(exps) - 1):
        a, b = exps[j], exps[j + 1]
        if a == b or any(x > y for x, y in zip(a, b)):
            raise NotMonotone(f"lambda_{j + 1} = {fmt_vec(a)} is not strictly below "
                              f"lambda_{j + 2} = {fmt_vec(b)} componentwise")
    units = [unit(d, i) for i in range(d)]
    lattices = [lattice_from_generators(units, d)]
    indices = []
    for j, lam in enumerate(exps):
        prev = lattices[-1]
        if lam in prev:
            raise NotCharacteristic(f"lambda_{j + 1} = {fmt_vec(lam)} lies in M_{j}")
        nxt = lattice_from_generators(list(prev.basis) + [lam], d)
        indices.append(lattice_index(prev, nxt))
        lattices.append(nxt)
    if exps:
        lam = exps[0]
        if all(x == 0 for x in lam[1:]) and lam[0] < 1:
            msg = f"lambda_1 = {fmt_vec(lam)} is of the form (x,0,...,0) with x < 1"
            if not derived:
                raise NotNormalized(msg)
            warnings.append("section data not normalized: " + msg)
    M = lattices[-1]
    if lattice is not None:
        if not contains_lattice(lattice, M):
            raise InvalidInput(f"supplied lattice {lattice} does not contain {M}")
        M = lattice
    chain = LatticeChain(tuple(lattices), tuple(indices), M, _dual(M))
    for w in warnings:
        log.info(w)
    return CharData("qo", d, tuple(exps), M, chain, perm, tuple(warnings))


def _in_semigroup(v, gens, budget=10_000):
    """Whether v is a nonnegative integer combination of gens (bounded search)."""
    seen = set()
    stack = [v]
    steps = 0
    while stack:
        cur = stack.pop()
        if not any(cur):
            return True
        if cur in seen:
            continue
        seen.add(cur)
        steps += 1
        if steps > budget:
            raise InvalidInput("semigroup membership search exceeded its budget")
        for g in gens:
            rest = tuple(a - b for a, b in zip(cur, g))
            if all(x >= 0 for x in rest):
                stack.append(rest)
    return False


def minimal_generators(gens):
    gens = sorted(set(gens))
    out = []
    for g in gens:
        others = [h for h in gens if h != g]
        if not _in_semigroup(g, others):
            out.append(g)
    return out


def _validate_toric(d, generators, lattice):
    gens = _check_vectors(generators, d, "generators")
    for i in range(d):
        if not any(all(g[j] == 0 for j in range(d) if j != i) for g in gens):
            raise InvalidInput(f"no generator on the axis of coordinate {i + 1}")
    gens = minimal_generators(gens)
    M = lattice_from_generators(gens, d)
    if lattice is not None:
        if not contains_lattice(lattice, M):
            raise InvalidInput(f"supplied lattice {lattice} does not contain {M}")
        M = lattice
    return CharData("toric", d, tuple(gens), M, None, tuple(range(d)), ())


# -- logarithmic jacobian generators ---------------------------------------------------

def _valid_expression(cd, idx):
    if cd.mode == "qo" and sum(1 for i in idx if i >= cd.d) > 1:
        return False
    els = cd.elements
    return independent([els[i] for i in idx])


@lru_cache(maxsize=None)
def jacobian_generators(cd, k):
    els = cd.elements
    gens = []
    if cd.mode == "qo":
        for coords in combinations(range(cd.d), k - 1):
            for j in range(len(els)):
                if j in coords:
                    continue
                idx = tuple(sorted(coords + (j,)))
                if _valid_expression(cd, idx):
                    gens.append(vsum([els[i] for i in idx], cd.d))
    else:
        for idx in combinations(range(len(els)), k):
            if independent([els[i] for i in idx]):
                gens.append(vsum([els[i] for i in idx], cd.d))
    return newton_data(sorted(set(gens)), cd.lattice_M)


def element_names(cd):
    if cd.mode == "qo":
        return [f"e{i + 1}" for i in range(cd.d)] + [f"l{j + 1}" for j in range(cd.g)]
    return [f"g{i + 1}" for i in range(len(cd.elements))]


def generator_expressions(cd, k):
    """Generator of J_k -> sorted list of the element sums producing it."""
    els = cd.elements
    names = element_names(cd)
    out = {}
    for idx in combinations(range(len(els)), k):
        if _valid_expression(cd, idx):
            out.setdefault(vsum([els[i] for i in idx], cd.d), []).append(
                "+".join(names[i] for i in idx))
    return {g: sorted(v) for g, v in out.items()}


def _as_int(x):
    x = Fraction(x)
    if x.denominator != 1:
        raise InternalInconsistency(f"expected an integer value, got {x}")
    return int(x)


def ord_jk(cd, k, nu):
    if k == 0:
        return 0
    return _as_int(support_value(jacobian_generators(cd, k), nu))


def phi(cd, k, nu):
    if k == 0:
        return 0
    return ord_jk(cd, k, nu) - ord_jk(cd, k - 1, nu)


def psi(cd, k, nu):
    if k <= 1:
        return 0
    return (k - 1) * ord_jk(cd, k, nu) - k * ord_jk(cd, k - 1, nu)


def active_k(cd, nu, s):
    """The k with phi_k(nu) <= s < phi_{k+1}(nu)."""
    k = 0
    while k < cd.d and phi(cd, k + 1, nu) <= s:
        k += 1
    return k


# -- the w_k minimization algorithm ---------------------------------------------------------

@dataclass(frozen=True)
class WkResult:
    k: int
    w: tuple
    summands: tuple       # 0-based element indices, sorted
    span: tuple           # canonical description of l_k(nu)
    n: int
    m: int
    t: int
    i: int                # 1-based element index of i(k), 0 when k = d
    choices: tuple        # "a" or "b" for each step 2..k


def _step_indices(cd, W):
    d, g = cd.d, cd.g
    els = cd.elements
    chars = [i for i in W if i >= d]
    n = chars[0] - d + 1 if chars else 0
    vs = [els[i] for i in W]
    r = len(vs)
    t = g + 1
    for j in range(1, g + 1):
        if rank(vs + [els[d + j - 1]]) > r:
            t = j
            break
    m = 0
    for c in range(d):
        if c not in W and rank(vs + [els[c]]) == r:
            m = c + 1
            break
    return n, m, t


def wk_algorithm(cd, nu, k):
    nu = vec(nu)
    if cd.mode != "qo":
        return _wk_toric(cd, nu, k)
    d, g = cd.d, cd.g
    els = cd.elements
    vals = [dot(nu, e) for e in els]
    order = sorted(range(d + g), key=lambda i: (vals[i], i >= d, i))

    def value(W):
        return sum((vals[i] for i in W), Fraction(0))

    W = (order[0],)
    choices = []
    for _ in range(1, k):
        n, m, t = _step_indices(cd, W)
        i_next = next(i for i in order if i not in W and _valid_expression(cd, W + (i,)))
        a = tuple(sorted(W + (i_next,)))
        b = None
        if m != 0 and t != g + 1 and n != 0:
            b = tuple(sorted([i for i in W if i != d + n - 1] + [d + t - 1, m - 1]))
        if b is None or value(a) <= value(b):
            W, c = a, "a"
        else:
            W, c = b, "b"
        choices.append(c)
    n, m, t = _step_indices(cd, W)
    i_k = 0
    if k < d:
        i_k = next(i for i in order if i not in W and _valid_expression(cd, W + (i,))) + 1
    w = vsum([els[i] for i in W], d)
    if not _valid_expression(cd, W):
        raise InternalInconsistency(f"invalid summand set {W}")
    expected = support_value(jacobian_generators(cd, k), nu)
    if dot(nu, w) != expected:
        raise InternalInconsistency(
            f"w_{k} = {fmt_vec(w)} gives {dot(nu, w)} but ord_J{k}({fmt_vec(nu)}) = {expected}")
    return WkResult(k, w, W, span_key([els[i] for i in W], d), n, m, t, i_k, tuple(choices))


def _wk_toric(cd, nu, k):
    """Greedy choice: the first k independent generators in increasing pairing."""
    els = cd.elements
    vals = [dot(nu, e) for e in els]
    order = sorted(range(len(els)), key=lambda i: (vals[i], i))
    W = ()
    for i in order:
        if len(W) == k:
            break
        if independent([els[j] for j in W + (i,)]):
            W = W + (i,)
    W = tuple(sorted(W))
    w = vsum([els[i] for i in W], cd.d)
    if dot(nu, w) != support_value(jacobian_generators(cd, k), nu):
        raise InternalInconsistency("greedy toric minimizer disagrees with brute force")
    return WkResult(k, w, W, span_key([els[i] for i in W], cd.d), 0, 0, 1, 0, ())


def ell_nu_s(cd, nu, s):
    """(k, canonical span of l^s_nu) for the k with (nu, s) in A_k."""
    nu = vec(nu)
    k = active_k(cd, nu, s)
    if k == 0:
        return 0, ()
    res = wk_algorithm(cd, nu, k)
    els = cd.elements
    limit = cd.d + res.t - 1       # elements e_j with j < d + t(k), 1-based
    vs = [els[j] for j in range(limit) if dot(nu, els[j]) <= s]
    return k, span_key(vs, cd.d)


def p_index(cd, nu, s):
    """The integer p(k) for (nu, s) in A_k, or None when k = 0."""
    nu = vec(nu)
    k = active_k(cd, nu, s)
    if k == 0:
        return None
    res = wk_algorithm(cd, nu, k)
    lam = (zero(cd.d),) + cd.exponents
    if res.n == 0:
        return max(j for j in range(cd.g + 1) if dot(nu, lam[j]) <= s)
    cands = [res.n]
    if res.m != 0:
        em = unit(cd.d, res.m - 1)
        for j in range(res.n + 1, res.t):
            v = tuple(a - b + c for a, b, c in zip(em, lam[res.n], lam[j]))
            if dot(nu, v) <= s:
                cands.append(j)
    return max(cands)


# -- fans, D_k, B(S) -------------------------------------------------------------------------

@lru_cache(maxsize=None)
def fan_k(cd, k):
    return dual_fan(jacobian_generators(cd, k), cd.N)


@lru_cache(maxsize=None)
def refinement(cd, k):
    """The common refinement of the dual fans of J_1..J_k."""
    if k == 1:
        return fan_k(cd, 1)
    return refine([refinement(cd, k - 1), fan_k(cd, k)])


@lru_cache(maxsize=None)
def linear_minimizer(cd, k, cone):
    """A generator of J_k minimal on the relative interior of ``cone`` (0 for k = 0)."""
    if k == 0:
        return zero(cd.d)
    return min_generators(jacobian_generators(cd, k), cone.relint_point())[0]


@dataclass(frozen=True)
class DkCone:
    cone: object
    interior: bool


@lru_cache(maxsize=None)
def dk_cones(cd, k):
    out = []
    for c in refinement(cd, k).cones:
        if c.dim == 0:
            continue
        interior = c.relint_in_interior()
        if k < cd.d:
            if not interior:
                continue
            argmin = min_generators(jacobian_generators(cd, k), c.relint_point())
            if not all(all(x > 0 for x in g) for g in argmin):
                continue
        out.append(DkCone(c, interior))
    return tuple(out)


def phi_psi_linear(cd, k, cone):
    """Vectors (Psi_k, phi_k) in M that agree with Psi_k, phi_k on ``cone``."""
    wk = linear_minimizer(cd, k, cone)
    wk1 = linear_minimizer(cd, k - 1, cone)
    ph = tuple(a - b for a, b in zip(wk, wk1))
    ps = tuple((k - 1) * a - k * b for a, b in zip(wk, wk1))
    return ps, ph


@lru_cache(maxsize=None)
def b_set(cd):
    d = cd.d
    out = {(d, 1)}
    N = cd.N
    for k in range(1, d + 1):
        for ray in refinement(cd, k).rays():
            if k < d and not ray.relint_in_interior():
                continue
            nu = primitive_in(ray.rays[0], N)
            ab = (psi(cd, k, nu), phi(cd, k, nu))
            if k == d and ab[1] < 1:
                raise InternalInconsistency(
                    f"phi_{d}({fmt_vec(nu)}) = {ab[1]} < 1 on a ray contributing to B")
            out.add(ab)
    return frozenset(out)


# -- coordinate sections ---------------------------------------------------------------------

@dataclass(frozen=True)
class SectionData:
    keep: tuple            # 0-based coordinates spanning the section
    surviving: tuple       # exponents (or generators) kept, in the section frame
    lattice_ambient: object
    lattice_branch: object
    index: int             # [M(theta) : M(theta, zeta)]
    chardata: object       # CharData of the section, None for the point


def sections(cd, section_lattice="ambient"):
    if section_lattice not in ("ambient", "branch"):
        raise InvalidInput(f"unknown section lattice {section_lattice!r}")
    d = cd.d
    out = []
    for size in range(d, -1, -1):
        for keep in combinations(range(d), size):
            out.append(_section(cd, keep, section_lattice))
    return out


def _section(cd, keep, section_lattice):
    d = cd.d
    if len(keep) == d:
        return SectionData(keep, cd.exponents, cd.lattice_M,
                           cd.lattice_M, 1, cd)
    if not keep:
        return SectionData((), (), None, None, 1, None)
    r = len(keep)
    proj = [tuple(v[i] for i in keep) for v in cd.exponents
            if all(v[j] == 0 for j in range(d) if j not in keep)]
    ambient = intersect_coordinate_subspace(cd.lattice_M, keep)
    if cd.mode == "qo":
        kept = []
        cur = lattice_from_generators([unit(r, i) for i in range(r)], r)
        for lam in proj:
            if lam not in cur:
                kept.append(lam)
                cur = lattice_from_generators(list(cur.basis) + [lam], r)
        branch = cur
        lat = ambient if section_lattice == "ambient" else branch
        sub = validate("qo", r, kept, lattice=lat, derived=True)
    else:
        kept = proj
        branch = lattice_from_generators(kept, r)
        lat = ambient if section_lattice == "ambient" else branch
        sub = validate("toric", r, kept, lattice=lat)
    return SectionData(keep, tuple(kept), ambient, branch,
                       lattice_index(branch, ambient), sub)
