import random
from fractions import Fraction

import pytest

from polyabc.errors import CasError
from polyabc.fields import NEG_INFINITY
from polyabc.mvpoly import MvPoly
from polyabc.nevanlinna import (PiecewiseLinear, counting, log_gauss_norm,
                                norm_profile, poisson_constant, truncated_counting)

from conftest import ALL_SPECS, F3, Q2, Q3, Q5, random_poly


def _z(spec, m=1, i=0):
    return MvPoly.variable(spec, m, i)


def _c(spec, k, m=1):
    return MvPoly.constant(spec, m, spec.from_int(k))


def test_log_gauss_norm_examples():
    z, one = _z(Q2), MvPoly.one(Q2, 1)
    assert log_gauss_norm(z ** 3 + one, 2) == 6
    for rho in (-3, 0, Fraction(7, 2)):
        assert log_gauss_norm(one, rho) == 0
    f = _z(Q5) - _c(Q5, 5)
    assert log_gauss_norm(f, -2) == -1
    assert log_gauss_norm(MvPoly.zero(Q2, 1), 1) is NEG_INFINITY


def test_norm_profile_examples():
    z = _z(Q2)
    prof = norm_profile(z)
    assert prof.breakpoints == [] and prof.slopes == [1] and prof.anchor == 0
    f = _z(Q5) - _c(Q5, 5)
    prof = norm_profile(f)
    assert prof.breakpoints == [Fraction(-1)]
    assert prof.slopes == [0, 1]
    mono = _c(Q2, 3, 2) * _z(Q2, 2, 0) ** 2 * _z(Q2, 2, 1)
    prof = norm_profile(mono)
    assert prof.breakpoints == [] and prof.slopes == [3]
    with pytest.raises(CasError) as exc:
        norm_profile(MvPoly.zero(Q2, 1))
    assert exc.value.code == "ZERO_POLY"


def test_profile_convex_nondecreasing():
    rng = random.Random("prof")
    for spec in ALL_SPECS:
        for _ in range(40):
            f = random_poly(rng, spec, 2, 6, nonzero=True)
            prof = norm_profile(f)
            assert all(s >= 0 for s in prof.slopes)
            assert all(a < b for a, b in zip(prof.slopes, prof.slopes[1:]))
            assert prof.final_slope == f.total_degree()
            assert prof.initial_slope == f.min_degree()


def test_counting_examples():
    z = _z(Q2)
    cd = counting(z)
    assert cd.n_at_zero == 1 and cd.n_values == [1] and cd.integrated.value(3) == 3
    f = _z(Q5) - _c(Q5, 5)
    cd = counting(f)
    assert cd.n_values == [0, 1]
    assert cd.breakpoints == [Fraction(-1)]
    assert cd.integrated.value(-5) == 0
    assert cd.integrated.value(2) == 3  # rho + 1 above the breakpoint
    cd2 = counting(_z(Q3) ** 2)
    assert cd2.n_at_zero == 2 and cd2.integrated.value(1) == 2


def test_counting_step_matches_slopes():
    rng = random.Random("steps")
    for spec in ALL_SPECS:
        f = random_poly(rng, spec, 2, 5, nonzero=True)
        cd = counting(f)
        assert cd.n_values == [int(s) for s in cd.integrated.slopes]
        assert cd.n_at(Fraction(10 ** 6)) == f.total_degree()


def test_poisson_examples():
    assert poisson_constant(_z(Q2)) == 0
    assert poisson_constant(_z(Q5) - _c(Q5, 5)) == 1
    c = MvPoly.constant(Q5, 1, Q5.from_fraction(Fraction(1, 5)))
    assert poisson_constant(c) == -Fraction(1)  # N = 0, log|1/5| = 1


def test_poisson_constancy_random():
    rng = random.Random("poisson")
    for spec in ALL_SPECS:
        for _ in range(50):
            f = random_poly(rng, spec, 2, 6, nonzero=True)
            poisson_constant(f)  # raises NOT_CONSTANT on failure


def test_norm_multiplicativity():
    rng = random.Random("gauss")
    for spec in ALL_SPECS:
        for _ in range(40):
            f = random_poly(rng, spec, 2, 4, nonzero=True)
            g = random_poly(rng, spec, 2, 4, nonzero=True)
            assert norm_profile(f * g) == norm_profile(f) + norm_profile(g)


def test_counting_additivity():
    rng = random.Random("adds")
    for spec in ALL_SPECS:
        for _ in range(40):
            f = random_poly(rng, spec, 2, 4, nonzero=True)
            g = random_poly(rng, spec, 2, 4, nonzero=True)
            cf, cg, cfg = counting(f), counting(g), counting(f * g)
            assert cfg.integrated == cf.integrated + cg.integrated
            for rho in (-2, Fraction(-1, 2), 0, 1, 3):
                assert cfg.n_at(rho) == cf.n_at(rho) + cg.n_at(rho)
            for b in cfg.breakpoints:
                assert cfg.n_at(b) == cf.n_at(b) + cg.n_at(b)


def test_factor_bound():
    # f = gh: log|g|_rho <= log|f|_rho - log|h|_rho0 for rho >= rho0
    rng = random.Random("factor")
    for spec in (Q2, F3):
        for _ in range(25):
            g = random_poly(rng, spec, 1, 3, nonzero=True)
            h = random_poly(rng, spec, 1, 3, nonzero=True)
            f = g * h
            rho0 = Fraction(rng.randint(-3, 2))
            off = log_gauss_norm(h, rho0)
            for d in (0, 1, Fraction(5, 2)):
                rho = rho0 + d
                assert log_gauss_norm(g, rho) <= log_gauss_norm(f, rho) - off


def test_log_r_below_counting():
    # non-constant f: N_f(rho) - rho is bounded below on rho >= 0
    rng = random.Random("nlogr")
    for spec in ALL_SPECS:
        for _ in range(20):
            f = random_poly(rng, spec, 1, 5, nonzero=True)
            if f.is_constant():
                continue
            N = counting(f).integrated
            assert N.final_slope >= 1
            # exact check on a grid: min over rho >= 0 is attained at a breakpoint or 0
            cands = [Fraction(0)] + [b for b in N.breakpoints if b >= 0]
            assert min(N.value(r) - r for r in cands) > -10 ** 9


def test_truncated_counting_examples():
    z = _z(Q2)
    cd = truncated_counting(z ** 3, 1)
    assert cd.n_values == [1]
    f = (_z(Q3) + MvPoly.one(Q3, 1)) * _z(Q3)
    assert truncated_counting(f, 5).integrated == counting(f).integrated
    zp = _z(F3)
    cd = truncated_counting(zp ** 3, 2)
    assert cd.n_values == [2]


def test_truncated_slope_caps_multiplicities():
    rng = random.Random("trunc")
    z, one = _z(Q2), MvPoly.one(Q2, 1)
    primes = [z, z + one, z + _c(Q2, 2)]
    for _ in range(20):
        exps = [rng.randint(0, 3) for _ in primes]
        if not any(exps):
            continue
        f = MvPoly.one(Q2, 1)
        for P, e in zip(primes, exps):
            f = f * P ** e
        for ell in (1, 2, 3):
            cd = truncated_counting(f, ell)
            assert cd.integrated.final_slope == sum(min(ell, e) for e in exps if e)


# -- piecewise-linear algebra ------------------------------------------------

def test_pl_abs_and_max():
    A = PiecewiseLinear([], [1], -2)          # rho - 2
    B = PiecewiseLinear([], [0], 0)           # 0
    M = A.max_with(B)
    assert M.value(0) == 0 and M.value(5) == 3 and M.value(2) == 0
    assert M.breakpoints == [Fraction(2)]
    absA = A.abs()
    assert absA.value(2) == 0 and absA.value(0) == 2 and absA.value(3) == 1


def test_pl_add_sub_scale():
    A = PiecewiseLinear([Fraction(0)], [0, 2], 1)
    B = PiecewiseLinear([Fraction(1)], [1, 3], 0)
    S = A + B
    for rho in (-2, 0, Fraction(1, 2), 1, 4):
        assert S.value(rho) == A.value(rho) + B.value(rho)
    D = A - B
    for rho in (-1, 0, 2):
        assert D.value(rho) == A.value(rho) - B.value(rho)
    half = A.scale(Fraction(1, 2))
    assert half.value(4) == A.value(4) / 2


def test_pl_nonnegativity():
    assert PiecewiseLinear([Fraction(0)], [-1, 1], 0).is_nonnegative()
    assert not PiecewiseLinear([Fraction(0)], [1, -1], 0).is_nonnegative()
    assert PiecewiseLinear([], [0], 3).is_nonnegative()
    assert not PiecewiseLinear([], [1], 3).is_nonnegative()


def test_pl_operations_pointwise():
    rng = random.Random("plmax")

    def rand_pl():
        nb = rng.randint(0, 3)
        bps = sorted(set(Fraction(rng.randint(-8, 8), rng.randint(1, 3))
                         for _ in range(nb)))
        slopes = [Fraction(rng.randint(-4, 4), rng.randint(1, 2))
                  for _ in range(len(bps) + 1)]
        return PiecewiseLinear(bps, slopes, Fraction(rng.randint(-5, 5)))

    for _ in range(150):
        A, B = rand_pl(), rand_pl()
        M = A.max_with(B)
        S = A + B
        D = (A - B).abs()
        for _ in range(10):
            r = Fraction(rng.randint(-40, 40), rng.randint(1, 4))
            assert M.value(r) == max(A.value(r), B.value(r))
            assert S.value(r) == A.value(r) + B.value(r)
            assert D.value(r) == abs(A.value(r) - B.value(r))
        assert M.final_slope == max(A.final_slope, B.final_slope)
        assert M.initial_slope == min(A.initial_slope, B.initial_slope)
