"""Diagonal specialization of Gaussian differentials and chord-diagram count tables.

Sign wiring: with x = u (z + 1/z) and bodies normalized as mu^(-chi) * body,

    C~_{g,l,b}(w) = (-1)^l * mu^chi * x^b * W^{(g,b)}_l(z,...,z) / x'(z)^b,   w = mu / x^2.

The (-1)^l is fixed by requiring C~_{0,1,1} = w + 5w^2 + ... to be nonnegative.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from .algebra import ParamPoly, Series
from .multirat import MultiRat, ZM1, ZP1, Z
from .toprec import Recursion

Y = "1/x"


class ExtractionError(ValueError):
    """A coefficient failed the integrality or mu-grading check."""


@dataclass
class CtildeSeries:
    g: int
    l: int
    b: int
    coeffs: List[int]  # coefficient of w^k for k = 0..order

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k]


@dataclass
class CountTable:
    kind: str  # orientable | non-oriented | non-orientable-only
    entries: Dict[Tuple[int, int, int], int] = field(default_factory=dict)

    def series(self, gh: int, b: int, k_max: int) -> List[int]:
        return [self.entries.get((gh, b, k), 0) for k in range(k_max + 1)]


def _q_of_y(order: int) -> Series:
    """q = 1/z(x) as a series in y = 1/x: q = u y C(mu y^2) with C the Catalan series."""
    u = ParamPoly.gen("u")
    mu = ParamPoly.gen("mu")
    cs: List = [0] * (order + 1)
    cat = 1
    k = 0
    while 2 * k + 1 <= order:
        cs[2 * k + 1] = u * mu ** k * cat
        cat = cat * 2 * (2 * k + 1) // (k + 2)
        k += 1
    return Series(Y, cs, order, 0)


def _body_in_q(body: MultiRat, var: int, order: int) -> Series:
    """Expand a univariate body in z = 1/q as a Laurent series in q (Fraction coefficients)."""
    den = dict(body.den)
    a = den.pop((Z, var), 0)
    b = den.pop((ZM1, var), 0)
    c = den.pop((ZP1, var), 0)
    if den:
        raise ExtractionError(f"diagonal body has unexpected factors {den}")
    terms = {}
    for mon, coeff in body.num.iterterms():
        if any(e for i, e in enumerate(mon) if i != var):
            raise ExtractionError("diagonal body is not univariate")
        terms[mon[var]] = Fraction(int(coeff.numerator), int(coeff.denominator))
    # z^n = q^-n ; z^-a = q^a ; (z-1)^-b = q^b (1-q)^-b ; (z+1)^-c = q^c (1+q)^-c
    lo = min(terms) if terms else 0
    hi = max(terms) if terms else 0
    shift = -hi + a + b + c
    rel = order - shift
    if rel < 0:
        return Series("q", [], order, 0)
    num = Series("q", [terms.get(hi - i, 0) for i in range(hi - lo + 1)], rel)
    one_minus = Series("q", [1, -1], rel)
    one_plus = Series("q", [1, 1], rel)
    den_s = (one_minus ** b) * (one_plus ** c)
    return (num / den_s).shift(shift)


MODES = ("orientable", "nonoriented", "nonorientable-only")
CtildeFn = Callable[[int, int, int, int], List[int]]


def needed_ctilde(mode: str, gh: int) -> List[Tuple[int, int]]:
    """(g, l) pairs entering a count series."""
    if mode == "orientable":
        return [(gh, 0)]
    if mode in ("nonoriented", "nonorientable-only"):
        out = [(g, gh - 2 * g) for g in range(gh // 2 + 1)]
        if mode == "nonorientable-only" and gh % 2 == 0 and (gh // 2, 0) not in out:
            out.append((gh // 2, 0))
        return out
    raise ValueError(f"unknown mode {mode}")


def combine_ctilde(ct: CtildeFn, mode: str, gh: int, b: int, k_max: int) -> List[int]:
    """Orientable C = C~_{g,0}; nonoriented C^r_h = sum_{2g+l=h} 2^g C~_{g,l};
    nonorientable-only = C^r_{2g} - C_g (odd h: all of C^r_h)."""
    def tilde(g: int, l: int) -> List[int]:
        if 2 * g - 2 + b + l < -1 or b < 1:
            return [0] * (k_max + 1)
        return ct(g, l, b, k_max)

    if mode == "orientable":
        res = tilde(gh, 0)
    elif mode in ("nonoriented", "nonorientable-only"):
        res = [0] * (k_max + 1)
        for g in range(gh // 2 + 1):
            res = [r + (2 ** g) * c for r, c in zip(res, tilde(g, gh - 2 * g))]
        if mode == "nonorientable-only" and gh % 2 == 0:
            res = [x - y for x, y in zip(res, tilde(gh // 2, 0))]
    else:
        raise ValueError(f"unknown mode {mode}")
    if any(r < 0 for r in res):
        raise ExtractionError(f"negative count in {mode} ({gh},{b})")
    return res


class ChordSeries:
    """Extraction of C~ series from the recursion (shared memo)."""

    def __init__(self, recursion: Optional[Recursion] = None) -> None:
        self.rec = recursion or Recursion()

    def diagonal_body(self, b: int, g: int, l: int) -> Optional[MultiRat]:
        """Body of W^{(g,b)}_l(z,...,z); None for (0,1,0) which is handled in closed form."""
        if (g, b, l) == (0, 1, 0):
            return None
        return self.rec.body(g, b, l, 0, [(0, b - 1)]).canonical()

    def diagonal_resolvent(self, b: int, g: int, l: int, order_x: int) -> Series:
        """W^{(g,b)}_l(z(x),...,z(x)) / dx^b as a series in y = 1/x through y^order_x."""
        chi = 2 * g - 2 + b + l
        u = ParamPoly.gen("u")
        mu = ParamPoly.gen("mu")
        q = _q_of_y(order_x + 2 * b + 2)
        if (g, b, l) == (0, 1, 0):
            # W010 / dx = u / z = u q
            return (q * u).map(lambda c: c.normalize_u()).truncate(order_x)
        body = self.diagonal_body(b, g, l)
        inner_order = order_x + 4 * b + 4
        fq = _body_in_q(body, 0, inner_order)
        # 1/x'(z)^b = (u (1 - q^2))^-b
        fq = fq * (Series("q", [1, 0, -1], inner_order) ** (-b))
        composed = fq.map(ParamPoly.coerce).compose(q)
        pref = mu ** (-chi) * u ** (-b)
        return composed.map(lambda c: (c * pref).normalize_u()).truncate(order_x)

    def extract_ctilde(self, b: int, g: int, l: int, k_max: int) -> CtildeSeries:
        chi = 2 * g - 2 + b + l
        order_x = b + 2 * k_max
        omega = self.diagonal_resolvent(b, g, l, order_x)
        sign = -1 if l % 2 else 1
        out: List[int] = []
        for k in range(k_max + 1):
            c = ParamPoly.coerce(omega[b + 2 * k])
            # omega = x^-b (1/mu)^chi (-1)^l C~(mu x^-2)  =>  coefficient = (-1)^l mu^(k - chi) C~_k
            want = ParamPoly.monomial(1, mu=k - chi)
            val = c * want.inverse()
            if not val.is_const():
                raise ExtractionError(f"wrong mu-grading at ({g},{l},{b}) k={k}: {c}")
            v = val.const_value() * sign
            if v.denominator != 1:
                raise ExtractionError(f"non-integer coefficient at ({g},{l},{b}) k={k}: {v}")
            out.append(int(v))
        for k in range(order_x + 1):
            if (k - b) % 2 and k >= 0:
                c = omega[k]
                if c != 0:
                    raise ExtractionError(f"odd-parity term y^{k} in ({g},{l},{b})")
        return CtildeSeries(g, l, b, out)

    def combine(self, mode: str, gh: int, b: int, k_max: int) -> List[int]:
        """Count series for one (g or h, b): orientable, nonoriented, nonorientable-only."""
        return combine_ctilde(self._ct, mode, gh, b, k_max)

    def _ct(self, g: int, l: int, b: int, k_max: int) -> List[int]:
        return self.extract_ctilde(b, g, l, k_max).coeffs

    def table(self, mode: str, gh_values, b_values, k_max: int) -> CountTable:
        t = CountTable(kind=mode)
        for gh in gh_values:
            for b in b_values:
                for k, c in enumerate(self.combine(mode, gh, b, k_max)):
                    t.entries[(gh, b, k)] = c
        return t
