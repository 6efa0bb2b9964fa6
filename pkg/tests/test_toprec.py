import itertools
import random
from fractions import Fraction

import pytest
import sympy as sp

from chordcount.multirat import PAIR, Z, ZM1, ZP1, MultiRat
from chordcount.toprec import (TMP, DiffKey, Recursion, SeedKeyError, compute_W, full_pattern, gamma_operator,
                               keys_up_to, recursion_kernel, seed_differentials)

from conftest import SLOW

SLOW_KEYS = {DiffKey(0, 4, 1), DiffKey(0, 5, 0)}
PROPERTY_KEYS = [k for k in keys_up_to(3) if SLOW or k not in SLOW_KEYS]

zz, zeta, mu = sp.symbols("z zeta mu", positive=True)
z1, z2 = sp.symbols("z1 z2")


@pytest.fixture(scope="module")
def computed():
    rec = Recursion()
    return {k: compute_W(k, rec).body for k in PROPERTY_KEYS}


def _eval_sym(expr, point):
    return sp.Rational(expr.subs(point))


def test_seeds():
    seeds = seed_differentials()
    assert seeds["W010"] == "u/z"
    p = {0: Fraction(3), 1: Fraction(5, 2)}
    assert seeds["W020"].evaluate(p) == Fraction(1, (3 * Fraction(5, 2) - 1) ** 2)
    z = Fraction(7, 3)
    want = 1 / z - 1 / (2 * (z - 1)) - 1 / (2 * (z + 1))
    assert seeds["W011"].evaluate({0: z}) == want
    a, b = Fraction(3), Fraction(5, 2)
    extra = (a * a - 1) * (b * b - 1) / (2 * (a - b) ** 2 * (a * b - 1) ** 2)
    assert seeds["calW020"].evaluate(p) == 1 / (a * b - 1) ** 2 + extra


def test_kernel_matches_assembled_formula():
    # dS(z, zeta) / (y(zeta) dx(zeta)), y = u (zeta - 1/zeta), x = u (zeta + 1/zeta), u^2 = mu
    u = sp.sqrt(mu)
    dS = 1 / (zz - zeta) - 1 / (zz - 1 / zeta)
    y = u * (zeta - 1 / zeta)
    dx = sp.diff(u * (zeta + 1 / zeta), zeta)
    expr = sp.simplify(dS / (y * dx) * mu)
    k = recursion_kernel(0, TMP)
    for zv, sv in [(3, Fraction(1, 2)), (Fraction(5, 2), Fraction(-2, 7)), (-4, 3)]:
        assert k.evaluate({0: zv, TMP: sv}) == _eval_sym(expr, {zz: sp.Rational(zv), zeta: sp.Rational(sv)})


def test_kernel_factor_swap_under_inversion():
    # the two terms of dS(z, zeta) trade places under zeta -> 1/zeta
    dS = 1 / (zz - zeta) - 1 / (zz - 1 / zeta)
    assert sp.simplify(dS.subs(zeta, 1 / zeta) + dS) == 0


def test_gamma_operator_derived_from_w():
    w = sp.sqrt(mu) * (zeta + 1 / zeta)
    wp = sp.diff(w, zeta)
    # d^2 zeta / dw^2 * (dw/dzeta)^2 = -w'' / w'
    correction = sp.simplify(-sp.diff(wp, zeta) / wp)
    assert sp.simplify(correction + 2 / (zeta * (zeta ** 2 - 1))) == 0
    f = seed_differentials()["W011"]
    f_sym = 1 / zeta - 1 / (2 * (zeta - 1)) - 1 / (2 * (zeta + 1))
    g_sym = sp.diff(f_sym, zeta) + correction * f_sym
    for v in (Fraction(3), Fraction(-5, 4), Fraction(1, 3)):
        assert gamma_operator(f, 0).evaluate({0: v}) == _eval_sym(g_sym, {zeta: sp.Rational(v)})


def test_seed_rejected():
    for k in [(0, 1, 0), (0, 2, 0), (0, 1, 1)]:
        with pytest.raises(SeedKeyError):
            compute_W(DiffKey(*k))
    with pytest.raises(ValueError):
        compute_W(DiffKey(0, 0, 0))


def test_compute_W_examples(cs):
    assert cs.extract_ctilde(1, 1, 0, 4).coeffs == [0, 0, 1, 10, 70]
    w = sp.Symbol("w")

    def expand(f):
        ref = sp.series(f, w, 0, 7).removeO()
        return [int(ref.coeff(w, i)) for i in range(7)]

    assert cs.extract_ctilde(3, 0, 0, 6).coeffs == expand(2 * w ** 2 * (3 + 4 * w) / (1 - 4 * w) ** sp.Rational(9, 2))
    assert cs.extract_ctilde(1, 0, 2, 6).coeffs == expand(
        w * (1 + w - sp.sqrt(1 - 4 * w)) / (1 - 4 * w) ** sp.Rational(5, 2))


def test_W010_diagonal(cs):
    s = cs.diagonal_resolvent(1, 0, 0, 7)
    from chordcount.algebra import ParamPoly
    assert [s[i] for i in range(1, 8, 2)] == [ParamPoly.monomial(c, mu=m) for c, m in ((1, 1), (1, 2), (2, 3), (5, 4))]


def test_permutation_symmetry(computed):
    for key, body in computed.items():
        for i, j in itertools.combinations(range(key.h), 2):
            assert body.substitute({i: j, j: i}).canonical() == body, key


def test_parity(computed):
    for key, body in computed.items():
        want = body if key.h % 2 == 0 else -body
        assert body.reflect().canonical() == want.canonical(), key


def test_pole_alphabet(computed):
    # coincident-point factors never survive; z_i z_j - 1 does (e.g. in W^(0,2)_1)
    allowed = {Z, ZM1, ZP1, PAIR}
    pair_keys = set()
    for key, body in computed.items():
        kinds = {k[0] for k, _ in body.den}
        assert kinds <= allowed, key
        if PAIR in kinds:
            pair_keys.add(key)
    assert DiffKey(0, 2, 1) in pair_keys


def _bodies(order):
    rec = Recursion()
    return {k: rec.body(k.g, k.h, k.l, 0, full_pattern(k.h)).canonical().to_text() for k in order}


def test_memo_determinism():
    keys = keys_up_to(2)
    ref = _bodies(keys)
    rng = random.Random(7)
    for _ in range(3):
        order = keys[:]
        rng.shuffle(order)
        assert _bodies(order) == ref


def test_multirat_text_roundtrip(computed):
    for body in computed.values():
        text = body.to_text()
        back = MultiRat.from_text(text)
        assert back == body and back.to_text() == text


def test_multirat_from_text_rejects_garbage():
    with pytest.raises(Exception):
        MultiRat.from_text("1/1@0 || bogus.0^1")
