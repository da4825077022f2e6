import random

import pytest

from polyabc.errors import CasError, SearchExhausted
from polyabc.mvpoly import MvPoly, multiplicity
from polyabc.wronskian import (collection_independence_index, f_independent, f_rank,
                               find_certificate, gen_wronskian, index_of_independence,
                               poly_matrix_rank)

from conftest import F2, F3, Q2, random_poly


def _z(spec, m=1, i=0):
    return MvPoly.variable(spec, m, i)


def _one(spec, m=1):
    return MvPoly.one(spec, m)


def test_gen_wronskian_examples():
    z, one = _z(Q2), _one(Q2)
    assert gen_wronskian([one, z], [(0,), (1,)]) == one
    zp = _z(F3)
    assert gen_wronskian([_one(F3), zp ** 3], [(0,), (3,)]) == _one(F3)
    f = random_poly(random.Random(0), Q2, 1, 3, nonzero=True)
    assert gen_wronskian([f, f], [(0,), (1,)]).is_zero()


def test_gen_wronskian_validation():
    with pytest.raises(CasError):
        gen_wronskian([_z(Q2)], [(0,), (1,)])
    with pytest.raises(CasError):
        gen_wronskian([_z(Q2), _one(Q2)], [(1,), (0,)])


def test_certificate_char0():
    z, one = _z(Q2), _one(Q2)
    cert = find_certificate([one, z], 1)
    assert cert.gammas == [(0,), (1,)]
    assert cert.determinant == one
    assert cert.validate()


def test_certificate_charp_exhaustion_and_success():
    zp, one = _z(F3), _one(F3)
    with pytest.raises(SearchExhausted):
        find_certificate([one, zp ** 3], 1)
    with pytest.raises(SearchExhausted):
        find_certificate([one, zp ** 3], 2)
    cert = find_certificate([one, zp ** 3], 3)
    assert cert.gammas == [(0,), (3,)]
    assert not cert.determinant.is_zero()
    assert cert.validate()


def test_certificate_not_independent():
    z = _z(Q2)
    with pytest.raises(CasError) as exc:
        find_certificate([z, z + z], 1)
    assert exc.value.code == "NOT_F_INDEPENDENT"


def test_certificate_monotone_in_step():
    rng = random.Random("mono")
    for spec in (Q2, F3):
        for _ in range(20):
            fs = [random_poly(rng, spec, 1, 4, nonzero=True) for _ in range(3)]
            if not f_independent(fs):
                continue
            for c in (1, 2, 3, 4):
                try:
                    cert = find_certificate(fs, c)
                except SearchExhausted:
                    continue
                # once a step works, bigger steps work too
                for c2 in range(c + 1, 5):
                    cert2 = find_certificate(fs, c2)
                    assert not cert2.determinant.is_zero()
                break


def test_nonzero_wronskian_implies_independence():
    # dependent tuples make every generalized Wronskian vanish
    rng = random.Random("dep")
    for spec in (Q2, F3):
        for _ in range(15):
            f = random_poly(rng, spec, 2, 3, nonzero=True)
            g = random_poly(rng, spec, 2, 3, nonzero=True)
            h = f + g  # dependent triple
            for gammas in ([(0, 0), (1, 0), (0, 1)], [(0, 0), (0, 1), (1, 1)]):
                assert gen_wronskian([f, g, h], gammas).is_zero()


def test_index_examples():
    zp, one = _z(F3), _one(F3)
    res = index_of_independence([one, zp ** 3])
    assert res.index_s == 2
    level, qs = res.dependent_over
    assert level == 1
    acc = MvPoly.zero(F3, 1)
    for q, f in zip(qs, [one, zp ** 3]):
        acc = acc + q * f
    assert acc.is_zero()
    assert index_of_independence([one, zp]).index_s == 1
    x, y = _z(F3, 2, 0), _z(F3, 2, 1)
    assert index_of_independence([_one(F3, 2), x ** 3 * y ** 9]).index_s == 2


def test_index_wrong_characteristic():
    with pytest.raises(CasError) as exc:
        index_of_independence([_one(Q2), _z(Q2)])
    assert exc.value.code == "WRONG_CHARACTERISTIC"


def test_index_reports_cap():
    zp, one = _z(F2), _one(F2)
    res = index_of_independence([one, zp ** 4])
    assert res.index_s == 3           # z^4 = z^(p^2) over F_2
    assert res.search_cap >= res.index_s - 1


def test_collection_index():
    zp, one = _z(F3), _one(F3)
    fs = [one, zp ** 3, -(one + zp ** 3)]
    assert collection_independence_index(fs) == 2
    fs2 = [one, zp, -(one + zp)]
    assert collection_independence_index(fs2) == 1


def test_divisibility_single_function():
    # P^e || f_i with e > |gamma^last| leaves at least e - |gamma^last| in W
    z, one = _z(Q2), _one(Q2)
    P = z + one
    rng = random.Random("divw")
    for e in (2, 3, 4):
        f0 = P ** e * (z + MvPoly.constant(Q2, 1, Q2.from_int(2)))
        f1 = z
        gammas = [(0,), (1,)]
        W = gen_wronskian([f0, f1], gammas)
        if W.is_zero():
            continue
        assert multiplicity(W, P) >= e - 1


def test_divisibility_charp_full_multiplicity():
    # p^t | e with p^t above every component keeps the full P^e in W
    zp, one = _z(F3), _one(F3)
    P = zp + one
    f0 = P ** 9 * zp
    f1 = zp + MvPoly.constant(F3, 1, F3.from_int(2))
    W = gen_wronskian([f0, f1], [(0,), (1,)])
    assert not W.is_zero()
    assert multiplicity(W, P) >= 9


def test_product_level_divisibility():
    # with k the coprimality level, the loss is the top k-1 derivative weights
    z, one = _z(Q2), _one(Q2)
    P = z
    rng = random.Random("wtrunc")
    for _ in range(10):
        e0, e1 = rng.randint(1, 3), rng.randint(1, 3)
        f0 = P ** e0 * (z + one)
        f1 = P ** e1 * (z + MvPoly.constant(Q2, 1, Q2.from_int(2)))
        f2 = one + z ** 5
        fs = [f0, f1, f2]
        gammas = [(0,), (1,), (2,)]
        W = gen_wronskian(fs, gammas)
        if W.is_zero():
            continue
        k = 3  # P divides f0 and f1 but not f2
        ell = 2 + 1  # |gamma^2| + |gamma^1|
        e = e0 + e1
        if e > ell:
            assert multiplicity(W, P) >= e - ell


def test_poly_matrix_rank_basic():
    z, one = _z(Q2), _one(Q2)
    rows = [[one, z], [z, z * z]]
    assert poly_matrix_rank(rows) == 1
    rows = [[one, z], [z, z * z + one]]
    assert poly_matrix_rank(rows) == 2


def test_f_rank():
    z, one = _z(Q2), _one(Q2)
    assert f_rank([one, z, one + z]) == 2
    assert f_rank([z, z + z]) == 1


def test_charp_multivariate_certificates_with_power_structure():
    from polyabc.hasse import frobenius_power
    from polyabc.wronskian import independent_over_power_subfield

    rng = random.Random("mvcert")
    done = 0
    while done < 25:
        base = [random_poly(rng, F2, 2, 2, nonzero=True) for _ in range(3)]
        fs = [base[0], frobenius_power(base[1], 1),
              frobenius_power(base[2], rng.choice((1, 2)))]
        if not f_independent(fs):
            continue
        res = index_of_independence(fs)
        c = 2 ** (res.index_s - 1)
        cert = find_certificate(fs, c)
        assert not cert.determinant.is_zero()
        assert cert.validate()
        assert independent_over_power_subfield(fs, res.index_s)
        if res.index_s > 1:
            assert not independent_over_power_subfield(fs, res.index_s - 1)
        done += 1
