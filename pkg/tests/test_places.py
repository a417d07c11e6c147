import random
from fractions import Fraction

import pytest

from drinheights.gf import finite_field
from drinheights.places import (INFINITY, FinitePlace, InfinitePlace,
                                SubstitutionEmbedding, angular_component,
                                coherent_degree, expansion, extend_places,
                                is_constant, place_below, support)
from drinheights.ratfunc import Poly, RatFunc, parse_poly, parse_ratfunc

F2 = finite_field(2)
F3 = finite_field(3)


def P(field, s, var="t"):
    return parse_poly(field, s, var=var)


def R(field, s, var="t"):
    return parse_ratfunc(field, s, var=var)


def test_valuation_examples():
    assert InfinitePlace(F3).valuation(R(F3, "t")) == -1
    assert FinitePlace(P(F2, "t")).valuation(R(F2, "t^2+t")) == 1
    assert InfinitePlace(F3).valuation(RatFunc.zero(F3)) == INFINITY


def test_support_example_and_sum_formula():
    y = R(F3, "(t^2+1)/t^3")
    sup = support(y)
    as_strs = {(p.to_string(), v) for p, v in sup}
    assert as_strs == {("v[t]", -3), ("v[t^2+1]", 1), ("v[inf]", 1)}
    assert sum(p.degree * v for p, v in sup) == 0


def test_support_of_t_and_constants():
    assert {(p.to_string(), v) for p, v in support(R(F2, "t"))} == \
        {("v[t]", 1), ("v[inf]", -1)}
    assert support(RatFunc.one(F3)) == []
    with pytest.raises(ValueError):
        support(RatFunc.zero(F3))


def test_sum_formula_random():
    rng = random.Random(21)
    for _ in range(100):
        num = Poly(F3, [rng.randrange(3) for _ in range(rng.randint(1, 5))])
        den = Poly(F3, [rng.randrange(3) for _ in range(rng.randint(1, 5))])
        if num.is_zero() or den.is_zero():
            continue
        y = RatFunc(num, den)
        if y.is_zero():
            continue
        assert sum(p.degree * v for p, v in support(y)) == 0


def test_residue_examples():
    vq = FinitePlace(P(F3, "u^2+1", var="u"))
    assert vq.residue(RatFunc.x(F3)) == vq.residue_field.gen
    assert InfinitePlace(F3).residue(R(F3, "(t+1)/t")).val == 1
    assert FinitePlace(P(F2, "t")).residue(R(F2, "t+1")).val == 1
    with pytest.raises(ValueError):
        InfinitePlace(F3).residue(R(F3, "t"))


def test_angular_component_examples():
    assert InfinitePlace(F3).angular_component(R(F3, "t^2+1")).val == 1
    assert FinitePlace(P(F2, "t")).angular_component(R(F2, "t^2+t")).val == 1
    vq = FinitePlace(P(F3, "u^2+1", var="u"))
    assert vq.angular_component(vq.uniformizer).val == 1
    with pytest.raises(ValueError):
        vq.angular_component(RatFunc.zero(F3))


def test_angular_component_never_zero():
    rng = random.Random(22)
    places = [InfinitePlace(F3), FinitePlace(P(F3, "t")),
              FinitePlace(P(F3, "t^2+1"))]
    for _ in range(100):
        num = Poly(F3, [rng.randrange(3) for _ in range(rng.randint(1, 4))])
        den = Poly(F3, [rng.randrange(3) for _ in range(rng.randint(1, 4))])
        if num.is_zero() or den.is_zero():
            continue
        y = RatFunc(num, den)
        if y.is_zero():
            continue
        for v in places:
            assert v.angular_component(y).val != 0


def test_angular_law():
    rng = random.Random(23)
    v = InfinitePlace(F3)
    pi = v.uniformizer
    for _ in range(200):
        val = rng.randint(-3, 3)
        def unit():
            while True:
                d = rng.randint(0, 2)
                num = Poly(F3, [rng.randrange(3) for _ in range(d)] +
                           [rng.randrange(1, 3)])
                den = Poly(F3, [rng.randrange(3) for _ in range(d)] +
                           [rng.randrange(1, 3)])
                y = RatFunc(num, den)
                if v.valuation(y) == 0:
                    return y
        y = unit() * pi**val
        z = unit() * pi**val
        if y == z:
            continue
        same_ac = v.angular_component(y) == v.angular_component(z)
        assert (v.valuation(y - z) > val) == same_ac


def test_extend_places_t_to_u2():
    emb = SubstitutionEmbedding(R(F3, "u^2", var="u"))
    assert emb.degree == 2

    exts = extend_places(emb, FinitePlace(P(F3, "t")))
    assert [(e.above.to_string("u"), e.e, e.f, e.d_above) for e in exts] == \
        [("v[u]", 2, 1, Fraction(1, 2))]

    exts = extend_places(emb, FinitePlace(P(F3, "t+1")))
    assert [(e.above.to_string("u"), e.e, e.f, e.d_above) for e in exts] == \
        [("v[u^2+1]", 1, 2, Fraction(1))]

    exts = extend_places(emb, FinitePlace(P(F3, "t+2")))  # t - 1 splits
    assert [(e.above.to_string("u"), e.e, e.f, e.d_above) for e in exts] == \
        [("v[u+1]", 1, 1, Fraction(1, 2)), ("v[u+2]", 1, 1, Fraction(1, 2))]


def test_extend_places_defectless_random():
    rng = random.Random(24)
    images = ["u^2", "u^3", "u^4+u", "(u^2+1)/u", "u^3+u+1", "1/u^2"]
    for _ in range(60):
        emb = SubstitutionEmbedding(R(F3, images[rng.randrange(len(images))],
                                      var="u"))
        d = rng.randint(1, 3)
        f = Poly(F3, [rng.randrange(3) for _ in range(d)] + [1])
        from drinheights.ratfunc import is_irreducible
        v = FinitePlace(f) if is_irreducible(f) else InfinitePlace(F3)
        exts = extend_places(emb, v)  # internal defect check
        assert sum(e.e * e.f for e in exts) == emb.degree


def test_tower_consistency():
    # composing t -> u^2 with u -> w^2 matches t -> w^4, degrees multiply
    s1 = SubstitutionEmbedding(R(F3, "u^2", var="u"))
    s2 = SubstitutionEmbedding(R(F3, "w^2", var="w"))
    direct = s1.compose(s2)
    assert direct.image == R(F3, "w^4", var="w")
    for v in [FinitePlace(P(F3, "t")), FinitePlace(P(F3, "t+1")),
              FinitePlace(P(F3, "t+2")), FinitePlace(P(F3, "t^2+1")),
              InfinitePlace(F3)]:
        via_tower = {}
        for e1 in extend_places(s1, v):
            for e2 in extend_places(s2, e1.above, degree_below=e1.d_above):
                via_tower[e2.above] = e2.d_above
        via_direct = {e.above: e.d_above for e in extend_places(direct, v)}
        assert via_tower == via_direct


def test_place_below_roundtrip():
    for img in ("u^2", "u^3+u", "(u^2+1)/u"):
        emb = SubstitutionEmbedding(R(F3, img, var="u"))
        for v in [FinitePlace(P(F3, "t")), FinitePlace(P(F3, "t^2+1")),
                  InfinitePlace(F3)]:
            for ext in extend_places(emb, v):
                assert place_below(emb, ext.above) == v
                assert coherent_degree(emb, ext.above) == ext.d_above


def test_is_constant():
    assert is_constant(RatFunc.one(F3))
    assert not is_constant(R(F3, "t"))
    assert is_constant(R(F3, "(t+1)/(t+1)"))
    assert is_constant(RatFunc.zero(F3))


def test_expansion_reconstructs():
    rng = random.Random(25)
    places = [InfinitePlace(F2), FinitePlace(P(F2, "t")),
              FinitePlace(P(F2, "t^2+t+1"))]
    for _ in range(40):
        num = Poly(F2, [rng.randrange(2) for _ in range(rng.randint(1, 4))])
        den = Poly(F2, [rng.randrange(2) for _ in range(rng.randint(1, 4))])
        if num.is_zero() or den.is_zero():
            continue
        y = RatFunc(num, den)
        if y.is_zero():
            continue
        for v in places:
            upto = 3
            coeffs = expansion(v, y, upto)
            partial = RatFunc.zero(F2)
            pi = v.uniformizer
            for lvl, c in coeffs:
                assert c.val != 0
                partial = partial + v.lift(c) * pi**lvl
            rest = y - partial
            if not rest.is_zero():
                assert v.valuation(rest) > upto
