import random

import pytest

from polyabc.errors import CasError, NotDivisible
from polyabc.mvpoly import (MvPoly, divides, exact_div, gcd_with_power, multiplicity,
                            poly_from_text, poly_gcd, poly_lcm)
from polyabc.oracle import squarefree_factor_oracle

from conftest import ALL_SPECS, F2, F3, F5, Q2, Q3, random_poly


def _z(spec, m=1, i=0):
    return MvPoly.variable(spec, m, i)


def _c(spec, k, m=1):
    return MvPoly.constant(spec, m, spec.from_int(k))


def test_product_example():
    z, one = _z(Q3), MvPoly.one(Q3, 1)
    assert (z + one) * (z - one) == z * z - one


def test_additive_identity():
    rng = random.Random(1)
    for spec in ALL_SPECS:
        f = random_poly(rng, spec, 2, 4)
        assert f + MvPoly.zero(spec, 2) == f


def test_frobenius_cube():
    x, y = _z(F3, 2, 0), _z(F3, 2, 1)
    cube = (x + y) ** 3
    assert cube == x ** 3 + y ** 3


def test_exact_div_examples():
    x, y = _z(Q2, 2, 0), _z(Q2, 2, 1)
    assert exact_div(x * x * y + x * y * y, x + y) == x * y
    f = random_poly(random.Random(2), Q2, 2, 4)
    assert exact_div(f, MvPoly.one(Q2, 2)) == f
    z, one = _z(Q2), MvPoly.one(Q2, 1)
    with pytest.raises(NotDivisible):
        exact_div(z * z + one, z)


def test_exact_div_round_trip():
    rng = random.Random(3)
    for spec in ALL_SPECS:
        for _ in range(40):
            f = random_poly(rng, spec, 2, 4)
            g = random_poly(rng, spec, 2, 3, nonzero=True)
            assert exact_div(f * g, g) == f


def test_gcd_examples():
    z, one = _z(Q2), MvPoly.one(Q2, 1)
    f = (z + one) ** 2 * (z + _c(Q2, 2))
    g = (z + one) * (z + _c(Q2, 3))
    assert poly_gcd(f, g) == z + one
    h = random_poly(random.Random(4), Q3, 2, 4, nonzero=True)
    assert poly_gcd(h, MvPoly.zero(Q3, 2)) == h.normalized()
    x, y, w = _z(F5, 3, 0), _z(F5, 3, 1), _z(F5, 3, 2)
    g2 = poly_gcd(x * y, x * w)
    assert g2 == x
    # quotients by the gcd are coprime
    assert poly_gcd(exact_div(x * y, g2), exact_div(x * w, g2)).is_constant()


def test_gcd_both_zero():
    with pytest.raises(CasError) as exc:
        poly_gcd(MvPoly.zero(Q2, 1), MvPoly.zero(Q2, 1))
    assert exc.value.code == "BOTH_ZERO"


def test_lcm_examples():
    x, y = _z(Q2, 2, 0), _z(Q2, 2, 1)
    assert poly_lcm(x, y) == x * y
    f = random_poly(random.Random(5), F3, 2, 3, nonzero=True)
    assert poly_lcm(f, f) == f.normalized()
    z, one = _z(Q2), MvPoly.one(Q2, 1)
    lcm = poly_lcm((z + one) * z, (z + one) * (z + _c(Q2, 2)))
    expected = z * (z + one) * (z + _c(Q2, 2))
    assert lcm == expected.normalized()
    with pytest.raises(CasError) as exc:
        poly_lcm(MvPoly.zero(Q2, 1), z)
    assert exc.value.code == "ZERO_INPUT"


def test_multiplicity_examples():
    z, one = _z(Q2), MvPoly.one(Q2, 1)
    f = (z + one) ** 3 * (z + _c(Q2, 2))
    assert multiplicity(f, z + one) == 3
    assert multiplicity(z + _c(Q2, 3), z + one) == 0
    zp = _z(F3)
    assert multiplicity(zp ** 3, zp) == 3
    with pytest.raises(CasError) as exc:
        multiplicity(f, MvPoly.one(Q2, 1))
    assert exc.value.code == "CONSTANT_DIVISOR"


def test_multiplicity_additive():
    rng = random.Random(6)
    z, one = _z(Q3), MvPoly.one(Q3, 1)
    P = z + one
    for _ in range(20):
        f = random_poly(rng, Q3, 1, 3, nonzero=True)
        base = multiplicity(f, P)
        k = rng.randint(1, 3)
        assert multiplicity(f * P ** k, P) == base + k


def test_oracle_examples():
    z, one = _z(Q2), MvPoly.one(Q2, 1)
    pairs = squarefree_factor_oracle(z * z * (z + one))
    assert [(str(g), e) for g, e in pairs] == [("1 * z1", 2), ("1 * z1 + 1", 1)]
    irr = z * z + one  # irreducible over Q
    assert squarefree_factor_oracle(irr) == [(irr.normalized(), 1)]
    x, y = _z(F2, 2, 0), _z(F2, 2, 1)
    pairs = squarefree_factor_oracle(x ** 2 * y ** 4)
    assert pairs == [(x, 2), (y, 4)]


def test_oracle_degree_guard():
    z = _z(Q2)
    with pytest.raises(CasError) as exc:
        squarefree_factor_oracle(z ** 9)
    assert exc.value.code == "DEGREE_TOO_LARGE"


def test_oracle_reconstructs_product():
    rng = random.Random(7)
    for spec in (Q2, F2, F3):
        for _ in range(15):
            f = random_poly(rng, spec, 2, 3, nonzero=True)
            g = random_poly(rng, spec, 2, 3, nonzero=True)
            prod = f * g
            if prod.is_constant() or prod.total_degree() > 8:
                continue
            pairs = squarefree_factor_oracle(prod)
            rebuilt = MvPoly.one(spec, 2)
            for h, e in pairs:
                rebuilt = rebuilt * h ** e
            assert rebuilt.normalized() == prod.normalized()
            # pairwise coprime
            for i in range(len(pairs)):
                for j in range(i + 1, len(pairs)):
                    assert poly_gcd(pairs[i][0], pairs[j][0]).is_constant()


def test_gcd_against_planted_factors():
    rng = random.Random(8)
    z, one = _z(Q2), MvPoly.one(Q2, 1)
    primes = [z, z + one, z + _c(Q2, 2), z * z + one]
    for _ in range(40):
        e = [rng.randint(0, 2) for _ in primes]
        d = [rng.randint(0, 2) for _ in primes]
        f = MvPoly.one(Q2, 1)
        g = MvPoly.one(Q2, 1)
        for P, ei, di in zip(primes, e, d):
            f = f * P ** ei
            g = g * P ** di
        expected = MvPoly.one(Q2, 1)
        for P, ei, di in zip(primes, e, d):
            expected = expected * P ** min(ei, di)
        got = poly_gcd(f, g)
        assert got == expected.normalized()
        assert divides(got, f) and divides(got, g)


def test_gcd_common_divisor_property_multivar():
    rng = random.Random(9)
    for spec in (Q2, F3):
        x, y = _z(spec, 2, 0), _z(spec, 2, 1)
        catalog = [x, y, x + y, x + MvPoly.one(spec, 2), x * y + MvPoly.one(spec, 2)]
        for _ in range(25):
            common = catalog[rng.randrange(len(catalog))]
            f = common * random_poly(rng, spec, 2, 2, nonzero=True)
            g = common * random_poly(rng, spec, 2, 2, nonzero=True)
            got = poly_gcd(f, g)
            assert divides(common, got) or divides(got, common) or divides(common, got)
            assert divides(got, f) and divides(got, g)
            assert divides(common, got)


def test_gcd_with_power_truncates():
    z, one = _z(Q2), MvPoly.one(Q2, 1)
    f = z ** 3 * (z + one)
    s = z * (z + one)
    assert gcd_with_power(f, s, 2) == (z ** 2 * (z + one)).normalized()
    assert gcd_with_power(f, s, 10) == f.normalized()


def test_text_grammar_round_trip():
    rng = random.Random(10)
    for spec in ALL_SPECS:
        for m in (1, 2, 3):
            for _ in range(20):
                f = random_poly(rng, spec, m, 4)
                if f.is_zero():
                    assert poly_from_text(spec, m, str(f)).is_zero()
                else:
                    assert poly_from_text(spec, m, str(f)) == f


def test_canonical_term_order():
    x, y = _z(Q2, 2, 0), _z(Q2, 2, 1)
    f = x * y + y ** 3 + x
    monos = [e for e, _ in f.sorted_terms()]
    assert monos == [(0, 3), (1, 1), (1, 0)]  # graded-lex descending


def test_spec_mismatch_poly():
    with pytest.raises(CasError) as exc:
        _z(Q2) + _z(Q3)
    assert exc.value.code == "SPEC_MISMATCH"


def test_gcd_three_variables_planted():
    rng = random.Random(11)
    for spec in (Q2, F3):
        x = _z(spec, 3, 0)
        y = _z(spec, 3, 1)
        w = _z(spec, 3, 2)
        one = MvPoly.one(spec, 3)
        catalog = [x, y, w, x + y, y + w, x + y + w + one]
        for _ in range(10):
            rng.shuffle(catalog)
            common = catalog[0] * catalog[1]
            f = common * catalog[2]
            g = common * catalog[3]
            got = poly_gcd(f, g)
            assert divides(common, got) and divides(got, f) and divides(got, g)
            q1, q2 = exact_div(f, got), exact_div(g, got)
            assert poly_gcd(q1, q2).is_constant()


def test_gcd_differential_vs_sympy():
    import sympy

    syms = sympy.symbols("a b c")

    def to_sympy(f):
        e = sympy.Integer(0)
        for exps, cf in f.terms.items():
            t = sympy.Rational(cf.val.numerator, cf.val.denominator)
            for s, k in zip(syms, exps):
                t *= s ** k
            e += t
        return e

    rng = random.Random("diffgcd")
    for _ in range(80):
        m = rng.randint(1, 3)
        f = random_poly(rng, Q3, m, 3, nonzero=True)
        g = random_poly(rng, Q3, m, 3, nonzero=True)
        h = random_poly(rng, Q3, m, 2, nonzero=True)
        ours = poly_gcd(f * h, g * h)
        theirs = sympy.gcd(to_sympy(f * h), to_sympy(g * h))
        assert sympy.simplify(to_sympy(ours) / theirs).is_constant()
