import pytest

from chordcount.algebra import ParamPoly
from chordcount.chordseries import MODES, combine_ctilde, needed_ctilde
from chordcount.verification import closed_form_checks, printed_count_checks, sum_rule_checks


def test_diagonal_examples(cs):
    s = cs.diagonal_resolvent(2, 0, 0, 12)
    # x^-2 times w / (1 - 4w)^2 at w = mu x^-2; only even powers occur
    got = [ParamPoly.coerce(s[2 + 2 * k]) for k in range(5)]
    assert got == [ParamPoly.monomial(c, mu=k) for k, c in enumerate([0, 1, 8, 48, 256])]
    assert all(s[i] == 0 for i in range(1, 13, 2))


def test_extract_examples(cs):
    assert cs.extract_ctilde(1, 0, 0, 5).coeffs == [1, 1, 2, 5, 14, 42]
    assert cs.extract_ctilde(1, 0, 1, 4).coeffs == [0, 1, 5, 22, 93]
    assert cs.extract_ctilde(3, 0, 1, 4).coeffs[3:] == [116, 3204]


def test_combine_examples(cs):
    assert cs.combine("orientable", 1, 2, 7)[3:] == [21, 440, 5440, 51840, 421120]
    assert cs.combine("nonoriented", 2, 1, 5)[2:] == [5, 52, 374, 2290]
    assert cs.combine("nonorientable-only", 2, 1, 4)[2:] == [4, 42, 304]


def test_printed_counts(cs):
    bad = [c.line() for c in printed_count_checks(cs) if not c.ok]
    assert not bad


def test_closed_forms(cs):
    bad = [c.line() for c in closed_form_checks(6, cs) if not c.ok]
    assert not bad


def test_sum_rules(cs):
    assert all(c.ok for c in sum_rule_checks(6, cs))


def test_crosscap_zero_is_planar(cs):
    for b in (1, 2, 3):
        assert cs.combine("nonoriented", 0, b, 6) == cs.combine("orientable", 0, b, 6)


@pytest.mark.parametrize("b", [1, 2, 3])
def test_support_bounds(cs, b):
    k_max = 6
    for h in range(0, 5):
        row = cs.combine("nonoriented", h, b, k_max)
        assert all(c == 0 for k, c in enumerate(row) if h > k - b + 1)
        assert all(c >= 0 for c in row)
    for g in range(0, 3):
        row = cs.combine("orientable", g, b, k_max)
        assert all(c == 0 for k, c in enumerate(row) if 2 * g > k - b + 1)


def test_needed_ctilde():
    assert needed_ctilde("orientable", 2) == [(2, 0)]
    assert sorted(needed_ctilde("nonoriented", 2)) == [(0, 2), (1, 0)]


def test_combine_with_fake_ctilde():
    def ct(g, l, b, k_max):
        return [10 * g + l] * (k_max + 1)

    # 2^g weights: h = 3 takes (0, 3) and (1, 1)
    assert combine_ctilde(ct, "nonoriented", 3, 1, 2) == [3 + 2 * 11] * 3
    assert set(MODES) == {"orientable", "nonoriented", "nonorientable-only"}
