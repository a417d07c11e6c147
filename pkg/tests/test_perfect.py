import random
from fractions import Fraction

import pytest

from conftest import make_module
from drinheights.errors import IsotrivialModuleError
from drinheights.gf import finite_field
from drinheights.perfect import (InsepLevel, insep_height,
                                 key_dichotomy_check, lehper_check)
from drinheights.heights import global_height, lehmer_bounds
from drinheights.places import InfinitePlace
from drinheights.ratfunc import Poly, RatFunc, parse_poly, parse_ratfunc
from drinheights.torsion import annihilator_of
from drinheights.verify import rand_with_valuation


def test_insep_height_carlitz_level1(car3, F3):
    h = insep_height(car3, 1, RatFunc.x(F3))  # u = t^(1/3)
    assert h.is_exact and h.value == Fraction(4, 9)


def test_insep_height_isotrivial(tau2, F2):
    h = insep_height(tau2, 1, RatFunc.x(F2))
    assert h.is_exact and h.value == Fraction(1, 2)
    assert global_height(tau2, RatFunc.x(F2)).value == 1


def test_insep_height_level0_is_global(car3, F3):
    for s in ("1", "t", "(t^2+1)/t", "t^2+2*t"):
        x = parse_ratfunc(F3, s)
        assert insep_height(car3, 0, x) == global_height(car3, x)


def test_sharpness_decay(tau2, F2):
    for n in range(4):
        h = insep_height(tau2, n, RatFunc.x(F2))
        assert h.is_exact and h.value == Fraction(1, 2**n)


def test_bad_set_size_invariant(car3, psi2, F3):
    mods = [car3, psi2, make_module(F3, "t", "1/t", "1")]
    for mod in mods:
        s0 = len(mod.bad_reduction_set())
        for n in range(3):
            level = InsepLevel(mod, n)
            assert len(level.bad_places()) == s0


def test_tv_growth(car3):
    q, r = car3.q, car3.r
    p = car3.field.char
    for n in range(3):
        level = InsepLevel(car3, n)
        for w in level.bad_places():
            T = level.pushed.reduction_data(w).T
            assert T >= Fraction(p**n, q**r)


def test_isotrivial_decay_random(tau2, F2):
    rng = random.Random(71)
    for _ in range(40):
        x = RatFunc(Poly(F2, [rng.randrange(2) for _ in range(4)]),
                    Poly(F2, [rng.randrange(2), rng.randrange(2), 1]))
        if x.is_zero() or x.is_constant():
            continue
        base = global_height(tau2, x)
        for n in range(4):
            h = insep_height(tau2, n, x)  # prime field: root has same coeffs
            assert h.is_exact and h.value == base.value / 2**n


def test_key_dichotomy_psi2_torsion(psi2, F2):
    report = key_dichotomy_check(psi2, 0, RatFunc.x(F2))
    assert report.branch == 2
    assert report.b == parse_poly(F2, "t")
    assert all(val == float("inf") for _, val in report.valuations)


def test_key_dichotomy_carlitz_branch1(car3, F3):
    report = key_dichotomy_check(car3, 0, RatFunc.one(F3))
    assert report.branch == 1
    assert report.place == InfinitePlace(F3)
    assert report.local == Fraction(1, 3)
    assert report.threshold == Fraction(1, 2) / 3**18


def test_key_dichotomy_zero(car3, F3):
    report = key_dichotomy_check(car3, 0, RatFunc.zero(F3))
    assert report.branch == 2 and report.b.is_one()


def test_key_dichotomy_at_level(car3, F3):
    report = key_dichotomy_check(car3, 1, RatFunc.x(F3))
    assert report.branch in (1, 2)
    if report.branch == 2:
        pushed = InsepLevel(car3, 1).pushed
        for w, val in report.valuations:
            assert val > pushed.reduction_data(w).T


def test_another_dichotomy_fuzz(car3, psi2, F3):
    """pair outside Q x R at v(x) <= T_v forces h_v >= -M d/q^(2r)."""
    import math
    from drinheights.heights import local_height
    rng = random.Random(72)
    mods = [car3, psi2, make_module(F3, "t", "1/t", "1")]
    for i in range(120):
        mod = mods[i % len(mods)]
        for v in mod.bad_reduction_set():
            rd = mod.reduction_data(v)
            x = rand_with_valuation(rng, v, rng.randint(-3, math.floor(rd.T)))
            vx = v.valuation(x)
            if rd.pair_in(Fraction(vx), v.angular_component(x), sets=rd.Q):
                continue
            h = local_height(mod, v, x)
            assert h.is_exact
            assert h.value >= Fraction(-rd.M) * v.degree / mod.q**(2 * mod.r)


def test_lehper_check_examples(car3, F3):
    rep = lehper_check(car3, 1, RatFunc.x(F3))
    assert not rep.torsion
    assert rep.height.value == Fraction(4, 9)
    assert rep.bound == Fraction(1, 3**19)
    assert rep.margin == Fraction(4, 9) - Fraction(1, 3**19)

    rep = lehper_check(car3, 0, RatFunc.one(F3))
    assert rep.height.value == Fraction(1, 3)


def test_lehper_check_torsion_report(psi2, F2):
    rep = lehper_check(psi2, 0, RatFunc.x(F2))
    assert rep.torsion and rep.annihilator == parse_poly(F2, "t")


def test_lehper_check_isotrivial_rejected(tau2, F2):
    with pytest.raises(IsotrivialModuleError):
        lehper_check(tau2, 1, RatFunc.x(F2))


def test_lehper_floor_random(car3, F3):
    bound = lehmer_bounds(car3).lehper
    rng = random.Random(73)
    done = 0
    levels = {n: InsepLevel(car3, n) for n in range(3)}
    while done < 60:
        n = rng.randint(0, 2)
        level = levels[n]
        y = RatFunc(Poly(F3, [rng.randrange(3) for _ in range(4)]),
                    Poly(F3, [rng.randrange(3) for _ in range(3)] + [1]))
        if y.is_zero() or annihilator_of(level.pushed, y) is not None:
            continue
        done += 1
        rep = lehper_check(car3, n, y)
        assert rep.height.value > bound
