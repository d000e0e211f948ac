"""Rational functions in the formal symbols L and T.

An ``LPoly`` is a Laurent polynomial in L, stored as a dict exponent -> int.
A ``BivRat`` is N(L,T) / prod (1 - L^a T^b)^m with N a polynomial in T whose
coefficients are LPolys; the denominator is a Counter of (a, b) pairs.  Its
numerator is a dict (Lexp, Texp) -> int.

No gcd normalization is ever attempted: denominators keep their factors so
that the candidate-pole form stays visible.  Equality is tested by
cross-multiplication.
"""

from collections import Counter

from .errors import NonPolynomialCoefficient, NotStabilized


# -- Laurent polynomials in L -------------------------------------------------------

def lp(terms=None):
    return {e: c for e, c in (terms or {}).items() if c}


def lp_add(a, b, sign=1):
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) + sign * c
    return {e: c for e, c in out.items() if c}


def lp_mul(a, b):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def lp_shift(a, k):
    return {e + k: c for e, c in a.items()}


def lp_pow(a, n):
    out = {0: 1}
    for _ in range(n):
        out = lp_mul(out, a)
    return out


L_MINUS_ONE = {1: 1, 0: -1}


def lp_div_one_minus(p, a):
    """Exact quotient p / (1 - L^a); raises NonPolynomialCoefficient otherwise."""
    if a == 0:
        raise ZeroDivisionError("1 - L^0")
    if a < 0:
        # 1 - L^a = -L^a (1 - L^-a)
        q = lp_div_one_minus(p, -a)
        return {e - a: -c for e, c in q.items()}
    if not p:
        return {}
    rem = dict(p)
    q = {}
    lo = min(rem)
    hi = max(rem)
    # q_e = p_e + q_{e-a}, scanning upward
    for e in range(lo, hi - a + 1):
        c = rem.get(e, 0) + q.get(e - a, 0)
        if c:
            q[e] = c
    # check: q * (1 - L^a) == p
    if lp_add(lp_add(q, lp_shift(q, a), -1), p, -1):
        raise NonPolynomialCoefficient(f"{lp_str(p)} is not divisible by 1-L^{a}")
    return q


def lp_str(p):
    if not p:
        return "0"
    parts = []
    for e in sorted(p, reverse=True):
        c = p[e]
        mono = "" if e == 0 else ("L" if e == 1 else f"L^{e}")
        if mono == "":
            s = str(abs(c))
        elif abs(c) == 1:
            s = mono
        else:
            s = f"{abs(c)}*{mono}"
        parts.append(("-" if c < 0 else "+", s))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, s in parts[1:]:
        out += f" {sign} {s}"
    return out


# -- bivariate polynomials ----------------------------------------------------------

def bp_add(a, b, sign=1):
    out = dict(a)
    for k, c in b.items():
        out[k] = out.get(k, 0) + sign * c
    return {k: c for k, c in out.items() if c}


def bp_mul(a, b):
    out = {}
    for (l1, t1), c1 in a.items():
        for (l2, t2), c2 in b.items():
            k = (l1 + l2, t1 + t2)
            out[k] = out.get(k, 0) + c1 * c2
    return {k: c for k, c in out.items() if c}


def bp_times_factor(p, ab, mult=1):
    """p * (1 - L^a T^b)^mult."""
    a, b = ab
    for _ in range(mult):
        out = dict(p)
        for (l, t), c in p.items():
            k = (l + a, t + b)
            out[k] = out.get(k, 0) - c
        p = {k: c for k, c in out.items() if c}
    return p


def bp_times_den(p, den):
    for ab in sorted(den):
        p = bp_times_factor(p, ab, den[ab])
    return p


def bp_div_factor(p, ab):
    """Exact quotient p / (1 - L^a T^b) with b >= 1, or None."""
    a, b = ab
    if not p:
        return {}
    by_t = {}
    for (l, t), c in p.items():
        by_t.setdefault(t, {})[l] = c
    tmax = max(by_t)
    q = {}
    for t in range(0, tmax - b + 1):
        cur = lp_add(by_t.get(t, {}), lp_shift(q.get(t - b, {}), a))
        if cur:
            q[t] = cur
    # remainder must vanish
    out = {(l, t): c for t, cs in q.items() for l, c in cs.items()}
    if bp_add(bp_times_factor(out, ab), p, -1):
        return None
    return out


def bp_from_tcoeffs(coeffs):
    return {(l, t): c for t, cs in enumerate(coeffs) for l, c in cs.items() if c}


def bp_tdegree(p):
    return max((t for _, t in p), default=-1)


def _den_union(x, y):
    out = Counter(x)
    for k, m in y.items():
        out[k] = max(out[k], m)
    return out


class BivRat:
    """N / prod (1 - L^a T^b)^m, immutable by convention."""

    __slots__ = ("num", "den")

    def __init__(self, num=None, den=None):
        self.num = {k: c for k, c in (num or {}).items() if c}
        self.den = Counter({k: m for k, m in (den or {}).items() if m})
        for a, b in self.den:
            if (a, b) == (0, 0):
                raise ValueError("denominator factor (0,0)")

    @staticmethod
    def monomial(l, t, coeff=1):
        return BivRat({(l, t): coeff})

    @staticmethod
    def one():
        return BivRat({(0, 0): 1})

    def is_zero(self):
        return not self.num

    def _lifted(self, den):
        extra = Counter(den)
        extra.subtract(self.den)
        return bp_times_den(self.num, +extra)

    def __add__(self, other):
        den = _den_union(self.den, other.den)
        return BivRat(bp_add(self._lifted(den), other._lifted(den)), den)

    def __neg__(self):
        return BivRat({k: -c for k, c in self.num.items()}, self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, BivRat):
            other = BivRat({(0, 0): other})
        return BivRat(bp_mul(self.num, other.num), self.den + other.den)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, BivRat):
            return NotImplemented
        den = _den_union(self.den, other.den)
        return self._lifted(den) == other._lifted(den)

    def __hash__(self):
        raise TypeError("BivRat is not hashable")

    def __repr__(self):
        return f"BivRat({self.to_text()})"

    def scaled(self, lpoly):
        """Multiply by a Laurent polynomial in L."""
        return BivRat(bp_mul(self.num, {(e, 0): c for e, c in lpoly.items()}), self.den)

    def divide_factor(self, ab):
        """Multiply by (1 - L^a T^b)^(-1)."""
        den = Counter(self.den)
        den[ab] += 1
        return BivRat(self.num, den)

    def cancel(self, ab):
        """Try to cancel one factor (1 - L^a T^b) from the denominator.

        Returns (new BivRat, True) on success, (self, False) otherwise.
        """
        if self.den[ab] == 0:
            return self, False
        if ab[1] == 0:
            return self, False
        q = bp_div_factor(self.num, ab)
        if q is None:
            return self, False
        den = Counter(self.den)
        den[ab] -= 1
        return BivRat(q, den), True

    def cancel_all_except(self, keep):
        """Cancel denominator factors outside ``keep`` as far as exact division allows."""
        x = self
        changed = True
        while changed:
            changed = False
            for ab in sorted(x.den):
                if ab in keep:
                    continue
                y, ok = x.cancel(ab)
                if ok:
                    x, changed = y, True
        return x

    def reduce_factors(self):
        """Cancel every denominator factor that divides the numerator exactly."""
        return self.cancel_all_except(set())

    def denominator_pairs(self):
        return set(self.den)

    def expand(self, order):
        """Coefficients of T^0..T^order as LPolys."""
        series = {}
        for (l, t), c in self.num.items():
            if t <= order:
                series.setdefault(t, {})
                series[t][l] = series[t].get(l, 0) + c
        coeffs = [lp(series.get(t, {})) for t in range(order + 1)]
        zero_b = []
        for (a, b), m in sorted(self.den.items()):
            if b == 0:
                zero_b.extend([a] * m)
                continue
            for _ in range(m):
                # S_new[t] = S[t] + L^a S_new[t - b]
                for t in range(b, order + 1):
                    if coeffs[t - b]:
                        coeffs[t] = lp_add(coeffs[t], lp_shift(coeffs[t - b], a))
        for a in zero_b:
            coeffs = [lp_div_one_minus(cf, a) for cf in coeffs]
        return coeffs

    def to_text(self):
        return bivrat_text(self.num, self.den)

    def to_json(self):
        return {
            "numerator": [[l, t, c] for (l, t), c in sorted(self.num.items(),
                                                            key=lambda kv: (kv[0][1], -kv[0][0]))],
            "denominator": [[a, b, m] for (a, b), m in sorted(self.den.items(),
                                                              key=lambda kv: (kv[0][1], kv[0][0]))],
        }


def _mono_text(l, t):
    parts = []
    if l:
        parts.append("L" if l == 1 else f"L^{l}")
    if t:
        parts.append("T" if t == 1 else f"T^{t}")
    return "*".join(parts)


def poly_text(num):
    if not num:
        return "0"
    items = sorted(num.items(), key=lambda kv: (kv[0][1], -kv[0][0]))
    out = ""
    for i, ((l, t), c) in enumerate(items):
        mono = _mono_text(l, t)
        mag = abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
        if i == 0:
            out = ("-" if c < 0 else "") + body
        else:
            out += (" - " if c < 0 else " + ") + body
    return out


def factor_text(a, b):
    return f"(1 - {_mono_text(a, b)})"


def bivrat_text(num, den):
    n = poly_text(num)
    if not den:
        return n
    fs = []
    for (a, b), m in sorted(den.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        f = factor_text(a, b)
        fs.append(f if m == 1 else f"{f}^{m}")
    return f"({n}) / ({'*'.join(fs)})"


def reconstruct_numerator(coeffs, denominator, guard=None):
    """Numerator Q with sum coeffs_s T^s = Q / prod(1 - L^a T^b), checked on a guard window."""
    if guard is None:
        guard = 2 * max((b for (_, b) in denominator), default=1)
    order = len(coeffs) - 1
    prod = bp_from_tcoeffs(coeffs)
    prod = bp_times_den(prod, Counter(denominator))
    prod = {k: c for k, c in prod.items() if k[1] <= order}
    cut = order - guard
    bad = sorted({t for (_, t) in prod if t > cut})
    if bad or cut < 0:
        raise NotStabilized(f"nonzero coefficients in guard window at T-degrees {bad}"
                            if bad else "not enough coefficients for the guard window")
    return prod


# -- volumes -----------------------------------------------------------------------------

class LVolRat:
    """N(L) / prod (1 - L^-c)^m, with c >= 1."""

    __slots__ = ("num", "den")

    def __init__(self, num=None, den=None):
        self.num = lp(num)
        self.den = Counter({c: m for c, m in (den or {}).items() if m})
        if any(c < 1 for c in self.den):
            raise ValueError("volume denominators need c >= 1")

    def _lifted(self, den):
        extra = Counter(den)
        extra.subtract(self.den)
        p = self.num
        for c, m in sorted((+extra).items()):
            for _ in range(m):
                p = lp_add(p, lp_shift(p, -c), -1)
        return p

    def __add__(self, other):
        den = _vol_union(self.den, other.den)
        return LVolRat(lp_add(self._lifted(den), other._lifted(den)), den)

    def __mul__(self, other):
        if isinstance(other, LVolRat):
            return LVolRat(lp_mul(self.num, other.num), self.den + other.den)
        return LVolRat(lp_mul(self.num, other), self.den)

    __rmul__ = __mul__

    def __neg__(self):
        return LVolRat({e: -c for e, c in self.num.items()}, self.den)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, LVolRat):
            return NotImplemented
        den = _vol_union(self.den, other.den)
        return self._lifted(den) == other._lifted(den)

    def __hash__(self):
        raise TypeError("LVolRat is not hashable")

    def __repr__(self):
        return f"LVolRat({self.to_text()})"

    def reduced(self):
        """Same value with every denominator factor dividing the numerator removed."""
        num, den = self.num, Counter(self.den)
        for c in sorted(den):
            while den[c] and num:
                try:
                    num = lp_div_one_minus(num, -c)
                except NonPolynomialCoefficient:
                    break
                den[c] -= 1
        return LVolRat(num, den)

    def expand(self, floor):
        """Expansion in L^-1, keeping exponents >= floor."""
        p = {e: c for e, c in self.num.items()}
        for c, m in self.den.items():
            for _ in range(m):
                out = {}
                for e, x in p.items():
                    f = e
                    while f >= floor:
                        out[f] = out.get(f, 0) + x
                        f -= c
                p = out
        return {e: c for e, c in p.items() if c and e >= floor}

    def to_text(self):
        n = lp_str(self.num)
        if not self.den:
            return n
        fs = []
        for c, m in sorted(self.den.items()):
            f = f"(1 - L^-{c})"
            fs.append(f if m == 1 else f"{f}^{m}")
        return f"({n}) / ({'*'.join(fs)})"

    def to_json(self):
        return {"numerator": [[e, c] for e, c in sorted(self.num.items(), reverse=True)],
                "denominator": [[c, m] for c, m in sorted(self.den.items())]}


def _vol_union(x, y):
    out = Counter(x)
    for k, m in y.items():
        out[k] = max(out[k], m)
    return out


def vol_from_positive_form(num, den):
    """Build an LVolRat from N(L) / prod (1 - L^c)^m with c >= 1.

    Uses 1/(1 - L^c) = -L^-c / (1 - L^-c).
    """
    p = lp(num)
    for c, m in den.items():
        for _ in range(m):
            p = {e - c: -k for e, k in p.items()}
    return LVolRat(p, den)
