"""Seeded random characteristic data and lattice points for property tests."""

import random
from fractions import Fraction

from qomotivic.errors import InvalidInput
from qomotivic.numlin import common_denominator
from qomotivic.qocore import validate


def random_exponents(rng, d, g, max_den=8):
    exps = []
    prev = (Fraction(0),) * d
    for _ in range(g):
        step = []
        for i in range(d):
            if rng.random() < 0.4:
                step.append(Fraction(0))
            else:
                step.append(Fraction(rng.randint(1, max_den), rng.randint(1, max_den)))
        if not any(step):
            step[rng.randrange(d)] = Fraction(1, rng.randint(1, max_den))
        nxt = tuple(a + b for a, b in zip(prev, step))
        exps.append(nxt)
        prev = nxt
    return exps


def random_chardata(rng, max_d=3, max_g=3, max_den=8):
    d = rng.choice([x for x in (1, 2, 2, 3, 3, 3) if x <= max_d])
    g = rng.choice([0] + [x for x in range(1, max_g + 1) for _ in range(3)])
    while True:
        try:
            return validate("qo", d, random_exponents(rng, d, g, max_den))
        except InvalidInput:
            continue


def random_interior_point(rng, cd, size=6):
    """A point of N with all coordinates positive."""
    N = cd.N
    D = common_denominator(cd.lattice_M.basis)
    while True:
        nu = [D * rng.randint(1, rng.choice((1, size, 4 * size))) for _ in range(cd.d)]
        for b in N.basis:
            c = rng.randint(-2, 2)
            nu = [x + c * y for x, y in zip(nu, b)]
        nu = tuple(Fraction(x) for x in nu)
        if all(x > 0 for x in nu):
            assert nu in N
            return nu


def samples(seed, count, **kw):
    rng = random.Random(seed)
    for _ in range(count):
        cd = random_chardata(rng, **kw)
        yield rng, cd, random_interior_point(rng, cd)


def random_level(rng, cd, nu, phi):
    """A jet level s, usually inside a nonempty window phi_k <= s < phi_{k+1}."""
    ph = [phi(cd, k, nu) for k in range(1, cd.d + 1)] + [None]
    windows = [k for k in range(1, cd.d + 1) if ph[k] is None or ph[k - 1] < ph[k]]
    if rng.random() < 0.1 or not windows:
        return rng.randint(0, ph[0])
    k = rng.choice(windows)
    hi = ph[k] - 1 if ph[k] is not None else ph[k - 1] + 5
    return rng.randint(ph[k - 1], hi)
