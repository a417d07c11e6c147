import random

import pytest

from conftest import make_module
from drinheights.drinfeld import DrinfeldModule
from drinheights.errors import InseparableKernelError
from drinheights.gf import finite_field
from drinheights.ratfunc import Poly, RatFunc, parse_poly, parse_ratfunc
from drinheights.torsion import (annihilator_bound, annihilator_of,
                                 is_torsion, kernel_in_K, torsion_enumerate,
                                 torsion_lattice)


def R(field, s, var="t"):
    return parse_ratfunc(field, s, var=var)


def psi_p_module(p):
    """The Carlitz module over F_p(u) with t = -u^(p-1)."""
    field = finite_field(p)
    a0 = -RatFunc.x(field)**(p - 1)
    return field, DrinfeldModule(field, [a0, RatFunc.one(field)])


def test_is_torsion_psi2(psi2, F2):
    cert = is_torsion(psi2, RatFunc.x(F2))
    assert cert.torsion and cert.annihilator == parse_poly(F2, "t")

    cert = is_torsion(psi2, RatFunc.one(F2))
    assert cert.torsion and cert.annihilator == parse_poly(F2, "t^2+t")
    # no degree-1 annihilator works for the point 1
    for b in ("t", "t+1", "1"):
        assert not psi2.act(parse_poly(F2, b), RatFunc.one(F2)).is_zero()


def test_is_torsion_carlitz_nontorsion(car3, F3):
    cert = is_torsion(car3, RatFunc.one(F3))
    assert not cert.torsion
    assert cert.witness.kind == "witness"
    assert cert.witness.local > 0


def test_torsion_constants_when_S_empty(tau2, F2):
    assert annihilator_of(tau2, RatFunc.one(F2)) == parse_poly(F2, "t+1")
    assert annihilator_of(tau2, RatFunc.zero(F2)) == Poly.one(F2)
    assert annihilator_of(tau2, RatFunc.x(F2)) is None
    bound = annihilator_bound(tau2)
    assert bound.constants_only


def test_annihilator_bound_psi2(psi2, F2):
    bound = annihilator_bound(psi2)
    assert bound.D == 2
    expect = (parse_poly(F2, "t")**2 * parse_poly(F2, "t+1")**2
              * parse_poly(F2, "t^2+t+1"))
    assert bound.b_lcm == expect and bound.b_lcm.degree == 6


def test_annihilator_bound_carlitz_q3(car3, F3):
    bound = annihilator_bound(car3)
    assert bound.D == 1
    assert bound.b_lcm == parse_poly(F3, "t^3-t")


def test_annihilator_bound_psi_p():
    for p in (3, 5):
        field, mod = psi_p_module(p)
        S = mod.bad_reduction_set()
        assert len(S) == 1
        bound = annihilator_bound(mod)
        assert bound.D == 1
        # lcm of all monic degree <= 1 polynomials is t^p - t
        xp = Poly(field, [0, field.neg(1)] + [0] * (p - 2) + [1])
        assert bound.b_lcm == xp


def test_kernel_examples(psi2, car3, F2, F3):
    k = kernel_in_K(psi2, parse_poly(F2, "t"))
    assert [str(x) for x in k] == ["0", "t"]
    k = kernel_in_K(psi2, parse_poly(F2, "t^2+t"))
    assert [str(x) for x in k] == ["0", "1", "t", "t+1"]
    k = kernel_in_K(car3, parse_poly(F3, "t"))
    assert [str(x) for x in k] == ["0"]


def test_kernel_inseparable_rejected(F3):
    # finite characteristic: a_0 = 0 and t | b means b(a_0) = 0
    mod = make_module(F3, "0", "t", "1")
    assert mod.bad_reduction_set()  # S nonempty, so the kernel is meaningful
    with pytest.raises(InseparableKernelError):
        kernel_in_K(mod, parse_poly(F3, "t"))


def test_kernel_is_subspace(psi2, F2):
    pts = kernel_in_K(psi2, parse_poly(F2, "t^2+t"))
    pool = set(pts)
    for x in pts:
        for y in pts:
            assert x + y in pool
        for c in F2.elements():
            assert x.scale(c) in pool
    assert len(pts) == 4 <= F2.order**(psi2.r * 2)


def test_torsion_enumerate_psi2(psi2):
    assert [str(x) for x in torsion_enumerate(psi2)] == ["0", "1", "t", "t+1"]


def test_torsion_enumerate_psi3():
    field, mod = psi_p_module(3)
    pts = torsion_enumerate(mod)
    assert [x.to_string("u") for x in pts] == ["0", "u", "2*u"]
    t_poly = Poly.x(field)
    for x in pts:
        assert mod.act(t_poly, x).is_zero()


def test_torsion_enumerate_psi5():
    field, mod = psi_p_module(5)
    pts = torsion_enumerate(mod)
    assert len(pts) == 5
    assert [x.to_string("u") for x in pts] == ["0", "u", "2*u", "3*u", "4*u"]


def test_torsion_enumerate_carlitz(car3):
    assert [str(x) for x in torsion_enumerate(car3)] == ["0"]


def test_minimal_annihilator_divides_blcm(psi2, F2):
    bound = annihilator_bound(psi2)
    for x in torsion_enumerate(psi2):
        b = annihilator_of(psi2, x)
        assert (bound.b_lcm % b).is_zero()


def test_torsion_decision_matches_blcm_kill(psi2, car3):
    rng = random.Random(61)
    for mod in (psi2, car3):
        bound = annihilator_bound(mod)
        for _ in range(100):
            q = mod.field.order
            x = RatFunc(Poly(mod.field, [rng.randrange(q) for _ in range(4)]),
                        Poly(mod.field, [rng.randrange(q) for _ in range(3)] + [1]))
            assert (annihilator_of(mod, x) is not None) == \
                mod.act(bound.b_lcm, x).is_zero()
        for x in torsion_enumerate(mod):
            assert mod.act(bound.b_lcm, x).is_zero()


def test_torsion_lattice_bounds(psi2, F2):
    Q, m_inf = torsion_lattice(psi2)
    assert Q.is_one() and m_inf == 1
    # every torsion point respects the pole bound
    for x in torsion_enumerate(psi2):
        assert x.den.is_one() and (x.is_zero() or x.num.degree <= 1)


def test_annihilator_degree_within_bound(psi2):
    bound = annihilator_bound(psi2)
    for x in torsion_enumerate(psi2):
        b = annihilator_of(psi2, x)
        assert b.degree <= bound.D
