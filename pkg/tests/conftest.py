import random

import pytest

from polyabc.fields import (PRIME_FIELD, RATFUNC_T_ADIC, RATIONAL_P_ADIC, FieldSpec)
from polyabc.mvpoly import MvPoly

Q2 = FieldSpec(RATIONAL_P_ADIC, 2)
Q3 = FieldSpec(RATIONAL_P_ADIC, 3)
Q5 = FieldSpec(RATIONAL_P_ADIC, 5)
F2 = FieldSpec(PRIME_FIELD, 2)
F3 = FieldSpec(PRIME_FIELD, 3)
F5 = FieldSpec(PRIME_FIELD, 5)
F3T = FieldSpec(RATFUNC_T_ADIC, 3)

ALL_SPECS = [Q2, Q3, Q5, F2, F3, F5, F3T]
CHARP_SPECS = [F2, F3, F5, F3T]


def random_coeff(rng: random.Random, spec: FieldSpec, nonzero=False):
    if spec.kind == PRIME_FIELD:
        lo = 1 if nonzero else 0
        return spec.from_int(rng.randrange(lo, spec.p))
    if spec.kind == RATIONAL_P_ADIC:
        num = rng.randint(-20, 20)
        den = rng.choice([1, 1, 1, 2, 3, spec.p, spec.p * spec.p])
        if nonzero and num == 0:
            num = rng.randint(1, 20)
        from fractions import Fraction

        return spec.from_fraction(Fraction(num, den))
    deg = rng.randint(0, 2)
    num = [rng.randrange(spec.p) for _ in range(deg + 1)]
    if nonzero and not any(num):
        num[0] = 1 + rng.randrange(spec.p - 1)
    t = spec.t()
    acc, c = spec.one(), spec.zero()
    for x in num:
        c = c + spec.from_int(x) * acc
        acc = acc * t
    if rng.random() < 0.3 and not c.is_zero():
        c = c / (spec.one() + t) if rng.random() < 0.5 else c / t
    return c


def random_poly(rng: random.Random, spec: FieldSpec, m: int, max_deg: int,
                max_terms: int = 4, nonzero=False) -> MvPoly:
    pairs = []
    for _ in range(rng.randint(1, max_terms)):
        exps = [0] * m
        budget = rng.randint(0, max_deg)
        for _ in range(budget):
            exps[rng.randrange(m)] += 1
        pairs.append((tuple(exps), random_coeff(rng, spec)))
    f = MvPoly.from_terms(spec, m, pairs)
    if nonzero and f.is_zero():
        return MvPoly.one(spec, m)
    return f


def random_gamma(rng: random.Random, m: int, max_weight: int):
    exps = [0] * m
    for _ in range(rng.randint(0, max_weight)):
        exps[rng.randrange(m)] += 1
    return tuple(exps)


@pytest.fixture
def rng():
    return random.Random(20260811)
