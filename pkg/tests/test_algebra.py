import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from chordcount.algebra import (GENERATORS, ParamPoly, RatFunc, Series, finite_poles, laurent_expand,
                                residue_at, residue_at_infinity, zhukovsky_inverse)

z = sp.Symbol("z")

small_fracs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
exps = st.tuples(*[st.integers(-2, 3) for _ in GENERATORS])
polys = st.dictionaries(exps, small_fracs, max_size=4).map(ParamPoly)


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == ParamPoly()


@settings(max_examples=60, deadline=None)
@given(polys)
def test_parampoly_text_roundtrip(a):
    assert ParamPoly.from_text(a.to_text()) == a
    assert ParamPoly.from_text(a.to_text()).to_text() == a.to_text()


def test_normalize_u():
    p = ParamPoly.monomial(3, u=5, mu=-1)
    assert p.normalize_u() == ParamPoly.monomial(3, u=1, mu=1)


def test_parse():
    assert ParamPoly.parse("2*mu^2/e2 - 3*gamma/hbar") == (
        ParamPoly.monomial(2, mu=2, e2=-1) - ParamPoly.monomial(3, gamma=1, hbar=-1))


def _random_ratfunc(rng: random.Random) -> RatFunc:
    poles = [Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(rng.randint(1, 4))]
    den = sp.Integer(1)
    for p in poles:
        den *= (z - sp.Rational(p.numerator, p.denominator)) ** rng.randint(1, 3)
    deg = sp.degree(den, z) + rng.randint(-2, 2)
    num = sum(sp.Rational(rng.randint(-9, 9), rng.randint(1, 5)) * z ** i for i in range(max(deg, 0) + 1))
    return RatFunc.from_expr(num / den, z)


def test_residue_sum_zero_random():
    rng = random.Random(20240611)
    for _ in range(100):
        f = _random_ratfunc(rng)
        total = sum(residue_at(f, p) for p in finite_poles(f)) + residue_at_infinity(f)
        assert total == 0


def test_residue_examples():
    assert residue_at(RatFunc.from_expr(1 / (z - 1), z), 1) == 1
    f = RatFunc.from_expr(1 / (z ** 2 - 1), z)
    assert residue_at(f, 1) == Fraction(1, 2) and residue_at(f, -1) == Fraction(-1, 2)
    w = sp.Symbol("w")
    g = RatFunc.from_expr(z / ((z ** 2 - 1) * (z * w - 1)), z, params=[w])
    assert sp.simplify(residue_at(g, 1 / w) - 1 / (1 - w ** 2)) == 0
    assert residue_at(f, 3) == 0


def test_residue_outside_field_rejected():
    with pytest.raises(ValueError):
        residue_at(RatFunc.from_expr(1 / (z - 1), z), sp.Symbol("q"))


def test_laurent_examples():
    w = sp.Symbol("w")
    s = laurent_expand(RatFunc.from_expr(1 / (1 - 4 * w), w), at=0, order=3)
    assert [s[i] for i in range(4)] == [1, 4, 16, 64]
    s = laurent_expand(RatFunc.from_expr(w / (1 - 4 * w) ** 2, w), at=0, order=3)
    assert [s[i] for i in range(4)] == [0, 1, 8, 48]


def test_catalan_via_sqrt():
    # (1 - sqrt(1 - 4w)) / (2w)
    one_minus = Series("w", [1, -4], 6)
    r = one_minus.sqrt()
    cat = (Series("w", [1], 6) - r).shift(-1) * Fraction(1, 2)
    assert [cat[i] for i in range(5)] == [1, 1, 2, 5, 14]


def test_series_ops():
    a = Series("w", [1, 2, 3], 5)
    b = a.reciprocal()
    one = a * b
    assert one[0] == 1 and all(one[i] == 0 for i in range(1, 6))
    x = Series("w", [0, 1, 1], 6)
    inv = x.reversion()
    comp = x.compose(inv)
    assert [comp[i] for i in range(7)] == [0, 1, 0, 0, 0, 0, 0]
    # truncation order of a product is the min of the operands'
    assert (Series("w", [1, 1], 3) * Series("w", [1, 1], 5)).order == 3


def test_series_text_roundtrip():
    s = Series("t", [ParamPoly.gen("mu"), 0, Fraction(3, 7)], 4, -1, log_coeff=ParamPoly.monomial(-2, mu=1, e2=-1))
    assert Series.from_text(s.to_text()) == s
    assert Series.from_text(s.to_text()).to_text() == s.to_text()


def test_zhukovsky_inverse():
    # z(x) = u/(mu x) - u/x - u mu/x^3 - 2 u mu^2/x^5 ...
    zs = zhukovsky_inverse(5)
    m = ParamPoly.monomial
    assert zs[-1] == m(1, u=1, mu=-1)
    assert [zs[i] for i in (1, 3, 5)] == [m(-1, u=1), m(-1, u=1, mu=1), m(-2, u=1, mu=2)]
    assert all(zs[i] == 0 for i in (0, 2, 4))


def test_zhukovsky_catalan():
    zs = zhukovsky_inverse(11)
    u = ParamPoly.gen("u")
    got = [-(ParamPoly.coerce(zs[2 * k + 1])).coefficient(u=1, mu=k) for k in range(5)]
    assert got == [1, 1, 2, 5, 14]
