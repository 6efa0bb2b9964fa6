"""Beta-deformed topological recursion for the Gaussian curve in the Zhukovsky variable.

Differentials are stored as ``mu^(-chi) * body`` with ``body`` a ``MultiRat`` over Q,
where chi = 2g - 2 + h + l.  A body is computed on a *pattern*: the first point is
the free variable z0 and the remaining h - 1 points take the values z1..zr with
multiplicities m1..mr.  The all-ones pattern is the full differential; coarser
patterns are its specializations and keep the number of variables small.

The contour integral around the unit disk is evaluated through the outside poles.
With K(z, s) = s^3 / ((z - s)(z s - 1)(s^2 - 1)) (the kernel dS / (y dx)
in units of 1/mu), and Rec = O(s^-3) at infinity,

    sum of inside residues = -Res_{s=z} - sum_j Res_{s=z_j}
                           = G(z) Rec(z) - 1/2 sum_j d/ds [K(z, s) R_j(s)] at s = z_j

where G(z) = z^3 / (z^2 - 1)^2 and R_j is the coefficient of the recursion-only
two-point function in Rec, whose Laurent tail at s = z_j is 1/2 (s - z_j)^-2 with
no simple-pole part.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .multirat import DIFF, PAIR, Z, ZM1, ZP1, MultiRat, NVARS

Pattern = Tuple[int, ...]
TMP = NVARS - 1  # integration variable


class RecursionError_(RuntimeError):
    """Recursion produced a factor outside the admissible pole alphabet."""


@dataclass(frozen=True)
class DiffKey:
    g: int
    h: int
    l: int

    @property
    def chi(self) -> int:
        return 2 * self.g - 2 + self.h + self.l

    def is_seed(self) -> bool:
        return (self.g, self.h, self.l) in {(0, 1, 0), (0, 2, 0), (0, 1, 1)}


def _x(i: int) -> MultiRat:
    return MultiRat.var(i)


def seed_W020(i: int = 0, j: int = 1) -> MultiRat:
    if i == j:
        return MultiRat.inv_factor((ZM1, i), 2).divide_by_factor((ZP1, i), 2)
    return MultiRat.inv_factor((PAIR, min(i, j), max(i, j)), 2)


def seed_calW020(i: int = 0, j: int = 1) -> MultiRat:
    a, b = min(i, j), max(i, j)
    extra = ((_x(a) * _x(a) - 1) * (_x(b) * _x(b) - 1)).divide_by_factor((DIFF, a, b), 2)
    extra = extra.divide_by_factor((PAIR, a, b), 2) * Fraction(1, 2)
    return seed_W020(a, b) + extra


def seed_W011(i: int = 0) -> MultiRat:
    return -MultiRat.inv_factor((Z, i)).divide_by_factor((ZM1, i)).divide_by_factor((ZP1, i))


def gamma_operator(f: MultiRat, i: int) -> MultiRat:
    """d/dz_i - 2/(z_i (z_i^2 - 1)), the Zhukovsky form of the gamma-term operator."""
    shift = MultiRat.const(2).divide_by_factor((Z, i)).divide_by_factor((ZM1, i)).divide_by_factor((ZP1, i))
    return f.diff(i) - shift * f


def kernel(z: int, s: int) -> MultiRat:
    """K(z, s) = s^3 / ((z - s)(z s - 1)(s^2 - 1)), i.e. dS(z, s) / (y(s) dx(s)) times mu."""
    k = _x(s) * _x(s) * _x(s)
    if z < s:
        k = k.divide_by_factor((DIFF, z, s))
    else:
        k = (-k).divide_by_factor((DIFF, s, z))
    k = k.divide_by_factor((PAIR, min(z, s), max(z, s)))
    return k.divide_by_factor((ZM1, s)).divide_by_factor((ZP1, s))


def outside_weight(z: int) -> MultiRat:
    """G(z) = z^3 / (z^2 - 1)^2, minus the residue of K(z, s) at s = z."""
    return (_x(z) * _x(z) * _x(z)).divide_by_factor((ZM1, z), 2).divide_by_factor((ZP1, z), 2)


class Recursion:
    """Memoized evaluator of Gaussian differentials on patterns."""

    def __init__(self, memo: Optional[Dict[Tuple[int, int, int, Pattern], MultiRat]] = None) -> None:
        self.memo: Dict[Tuple[int, int, int, Pattern], MultiRat] = memo if memo is not None else {}

    # --- access -------------------------------------------------------
    def body(self, g: int, h: int, l: int, outer: int, syms: Sequence[Tuple[int, int]],
             recursion_variant: bool = False) -> Optional[MultiRat]:
        """Body of W^{(g,h)}_l(outer; syms) with syms = [(variable, multiplicity)].

        Returns None for the vanishing recursion-only (0,1,0) entry.
        """
        syms = [(v, m) for v, m in syms if m]
        if h != 1 + sum(m for _, m in syms):
            raise ValueError("pattern size mismatch")
        if (g, h, l) == (0, 1, 0):
            if recursion_variant:
                return None
            raise ValueError("W^(0,1)_0 has no rational Zhukovsky body in this representation")
        if (g, h, l) == (0, 1, 1):
            return seed_W011(outer)
        if (g, h, l) == (0, 2, 0):
            (v, _), = syms
            if recursion_variant:
                return seed_calW020(outer, v)
            return seed_W020(outer, v)
        order = sorted(range(len(syms)), key=lambda i: -syms[i][1])
        pattern = tuple(syms[i][1] for i in order)
        base = self.base(g, h, l, pattern)
        mapping = {0: outer}
        for pos, i in enumerate(order):
            mapping[pos + 1] = syms[i][0]
        return base.substitute(mapping)

    def base(self, g: int, h: int, l: int, pattern: Pattern) -> MultiRat:
        key = (g, h, l, pattern)
        got = self.memo.get(key)
        if got is None:
            got = self._compute(g, h, l, pattern)
            self.memo[key] = got
        return got

    # --- recursion ----------------------------------------------------
    def _compute(self, g: int, h: int, l: int, pattern: Pattern) -> MultiRat:
        if (g, h, l) == (0, 3, 0) and pattern == (2,):
            return self.base(0, 3, 0, (1, 1)).substitute({2: 1}).canonical()
        r = len(pattern)
        syms = [(i + 1, m) for i, m in enumerate(pattern)]
        rec = MultiRat.const(0)
        if g >= 1:
            rec = rec + self.body(g - 1, h + 1, l, 0, syms + [(0, 1)])
        for k in range(g + 1):
            for n in range(l + 1):
                a_key = (g - k, l - n)
                b_key = (k, n)
                for js in itertools.product(*[range(m + 1) for m in pattern]):
                    ha = 1 + sum(js)
                    hb = 1 + sum(pattern) - sum(js)
                    if not _stable(a_key[0], ha, a_key[1]) or not _stable(b_key[0], hb, b_key[1]):
                        continue
                    A = self.body(a_key[0], ha, a_key[1], 0, [(i + 1, j) for i, j in enumerate(js)], True)
                    B = self.body(b_key[0], hb, b_key[1], 0,
                                  [(i + 1, m - j) for i, (m, j) in enumerate(zip(pattern, js))], True)
                    if A is None or B is None:
                        continue
                    mult = 1
                    for m, j in zip(pattern, js):
                        mult *= comb(m, j)
                    rec = rec + (A * B) * mult
        if l >= 1:
            rec = rec + gamma_operator(self.body(g, h, l - 1, 0, syms), 0)
        total = outside_weight(0) * rec
        # outside poles at the symbols
        for i, m in enumerate(pattern):
            rest = [(v, mm - (1 if v == i + 1 else 0)) for v, mm in syms]
            if not _stable(g, h - 1, l):
                continue
            R = self.body(g, h - 1, l, TMP, rest, True)
            if R is None:
                continue
            piece = (kernel(0, TMP) * R).diff(TMP).substitute({TMP: i + 1})
            total = total - piece * m  # 1/2 * 2 * m
        out = total.canonical()
        for k, _ in out.den:
            if k[0] == DIFF:
                raise RecursionError_(f"surviving coincident-point factor in W({g},{h},{l}) pattern {pattern}")
        return out


def _stable(g: int, h: int, l: int) -> bool:
    return h >= 1 and g >= 0 and l >= 0 and 2 * g - 2 + h + l >= 0


# ---------------------------------------------------------------------------
# public surface


@dataclass(frozen=True)
class Differential:
    key: DiffKey
    body: MultiRat  # W / (dz_0 ... dz_{h-1}) in units mu^(-chi)


class SeedKeyError(ValueError):
    """compute_W was asked for one of the closed-form seeds."""


def seed_differentials() -> Dict[str, object]:
    """Closed-form seeds.  W010 is returned as its x-form coefficient u / z (a string)."""
    return {
        "W010": "u/z",
        "W020": seed_W020(0, 1),
        "W011": seed_W011(0),
        "calW020": seed_calW020(0, 1),
    }


def recursion_kernel(z: int = 0, s: int = TMP) -> MultiRat:
    return kernel(z, s)


def full_pattern(h: int) -> List[Tuple[int, int]]:
    return [(i, 1) for i in range(1, h)]


def compute_W(key: DiffKey, memo: Optional[Recursion] = None) -> Differential:
    if key.is_seed():
        raise SeedKeyError(f"{key} is a seed")
    if key.chi < 0 or key.h < 1:
        raise ValueError(f"unstable key {key}")
    rec = memo if memo is not None else Recursion()
    return Differential(key, rec.body(key.g, key.h, key.l, 0, full_pattern(key.h)).canonical())


def keys_up_to(chi_max: int) -> List[DiffKey]:
    """Non-seed keys with chi <= chi_max in recursion order (chi, then h ascending)."""
    out = []
    for chi in range(0, chi_max + 1):
        for h in range(1, chi + 3):
            for g in range(0, (chi + 2 - h) // 2 + 1):
                l = chi - (2 * g - 2 + h)
                key = DiffKey(g, h, l)
                if l >= 0 and not key.is_seed():
                    out.append(key)
    return out
