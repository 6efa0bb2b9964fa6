"""Multivariate rational functions in Zhukovsky variables with factored denominators.

Numerators are sparse polynomials over Q (sympy ``PolyRing``); denominators are
products of powers of factors from the alphabet

    z_i,  z_i - 1,  z_i + 1,  z_i z_j - 1,  z_i - z_j      (i < j).

A ``MultiRat`` is canonical when no denominator factor divides the numerator.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Mapping, Tuple

from sympy.polys.domains import QQ
from sympy.polys.rings import ring

NVARS = 10
RING, *GENS = ring(",".join(f"z{i}" for i in range(NVARS)), QQ)

# factor keys: (kind, i) or (kind, i, j) with i < j
Z, ZM1, ZP1, PAIR, DIFF = 0, 1, 2, 3, 4
FactorKey = Tuple[int, ...]


class AlphabetError(ValueError):
    """A denominator factor outside the supported alphabet was requested."""


def _key_str(key: FactorKey) -> str:
    kind = key[0]
    if kind == Z:
        return f"z{key[1]}"
    if kind == ZM1:
        return f"(z{key[1]}-1)"
    if kind == ZP1:
        return f"(z{key[1]}+1)"
    if kind == PAIR:
        return f"(z{key[1]}*z{key[2]}-1)"
    return f"(z{key[1]}-z{key[2]})"


@lru_cache(maxsize=None)
def factor_poly(key: FactorKey):
    kind = key[0]
    x = GENS[key[1]]
    if kind == Z:
        return x
    if kind == ZM1:
        return x - 1
    if kind == ZP1:
        return x + 1
    y = GENS[key[2]]
    if kind == PAIR:
        return x * y - 1
    if kind == DIFF:
        return x - y
    raise AlphabetError(f"unknown factor kind {kind}")


@lru_cache(maxsize=None)
def factor_power(key: FactorKey, e: int):
    return factor_poly(key) ** e


def _vars_of(key: FactorKey) -> Tuple[int, ...]:
    return key[1:]


def _synthetic(coeffs: Dict[int, object], root: int):
    """Quotient of sum c_k t^k by (t - root), or None when the remainder is nonzero."""
    top = max(coeffs)
    low = min(coeffs)
    acc = QQ(0)
    qs = {}
    for d in range(top, low, -1):
        acc = acc * root + coeffs.get(d, QQ(0))
        if acc:
            qs[d - 1] = acc
    if acc * root + coeffs.get(low, QQ(0)) != 0:
        return None
    return qs


def _divide_exact(p, key: FactorKey):
    """Return p / factor if the division is exact, else None.

    Every alphabet factor becomes (t - root) in a suitable grading variable t,
    so the division is a synthetic division on grouped coefficients.
    """
    kind = key[0]
    i = key[1]
    if kind == Z:
        if any(m[i] == 0 for m in p.itermonoms()):
            return None
        out = {}
        for m, c in p.iterterms():
            mm = list(m)
            mm[i] -= 1
            out[tuple(mm)] = c
        return RING.from_dict(out)
    j = key[2] if len(key) > 2 else None
    groups: Dict[tuple, Dict[int, object]] = {}
    for m, c in p.iterterms():
        rest = list(m)
        if kind in (ZM1, ZP1):
            pos = m[i]
            rest[i] = 0
        elif kind == PAIR:
            pos = min(m[i], m[j])
            rest[i], rest[j] = m[i] - pos, m[j] - pos
        else:  # DIFF: homogeneous components in (z_i, z_j), t = z_i / z_j
            pos = m[i]
            rest[i], rest[j] = 0, m[i] + m[j]
        groups.setdefault(tuple(rest), {})[pos] = c
    root = -1 if kind == ZP1 else 1
    out = {}
    for rest, coeffs in groups.items():
        qs = _synthetic(coeffs, root)
        if qs is None:
            return None
        for d, c in qs.items():
            mm = list(rest)
            if kind in (ZM1, ZP1):
                mm[i] = d
            elif kind == PAIR:
                mm[i] += d
                mm[j] += d
            else:
                n = rest[j]
                mm[i], mm[j] = d, n - 1 - d
            out[tuple(mm)] = c
    return RING.from_dict(out)


class MultiRat:
    """num / prod(factor^e); immutable."""

    __slots__ = ("num", "den", "_canon")

    def __init__(self, num, den: Mapping[FactorKey, int] | Iterable = (), canonical: bool = False):
        if not isinstance(num, type(RING.one)):
            num = RING(num)
        self.num = num
        d = dict(den)
        self.den = tuple(sorted((k, e) for k, e in d.items() if e))
        if any(e < 0 for _, e in self.den):
            raise ValueError("negative denominator exponent")
        self._canon = canonical or not num

    # construction helpers
    @staticmethod
    def const(c) -> "MultiRat":
        return MultiRat(RING(QQ(Fraction(c).numerator, Fraction(c).denominator)), (), canonical=True)

    @staticmethod
    def var(i: int) -> "MultiRat":
        return MultiRat(GENS[i], (), canonical=True)

    @staticmethod
    def inv_factor(key: FactorKey, e: int = 1) -> "MultiRat":
        return MultiRat(RING.one, {key: e}, canonical=True)

    @property
    def den_map(self) -> Dict[FactorKey, int]:
        return dict(self.den)

    def is_zero(self) -> bool:
        return not self.num

    def variables(self) -> Tuple[int, ...]:
        vs = set()
        for m in self.num.itermonoms():
            vs.update(i for i, e in enumerate(m) if e)
        for k, _ in self.den:
            vs.update(_vars_of(k))
        return tuple(sorted(vs))

    # arithmetic
    def __neg__(self) -> "MultiRat":
        return MultiRat(-self.num, self.den, self._canon)

    def __add__(self, other) -> "MultiRat":
        if not isinstance(other, MultiRat):
            other = MultiRat.const(other)
        if not other.num:
            return self
        if not self.num:
            return other
        da, db = dict(self.den), dict(other.den)
        keys = set(da) | set(db)
        common = {k: max(da.get(k, 0), db.get(k, 0)) for k in keys}
        na, nb = self.num, other.num
        for k, e in common.items():
            ea, eb = e - da.get(k, 0), e - db.get(k, 0)
            if ea:
                na = na * factor_power(k, ea)
            if eb:
                nb = nb * factor_power(k, eb)
        return MultiRat(na + nb, common)

    __radd__ = __add__

    def __sub__(self, other) -> "MultiRat":
        return self + (-other if isinstance(other, MultiRat) else MultiRat.const(-Fraction(other)))

    def __rsub__(self, other) -> "MultiRat":
        return (-self) + other

    def __mul__(self, other) -> "MultiRat":
        if not isinstance(other, MultiRat):
            f = Fraction(other)
            return MultiRat(self.num * QQ(f.numerator, f.denominator), self.den, self._canon)
        d = dict(self.den)
        for k, e in other.den:
            d[k] = d.get(k, 0) + e
        return MultiRat(self.num * other.num, d)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "MultiRat":
        f = Fraction(other)
        return self * Fraction(f.denominator, f.numerator)

    def __pow__(self, n: int) -> "MultiRat":
        out = MultiRat.const(1)
        for _ in range(n):
            out = out * self
        return out

    def divide_by_factor(self, key: FactorKey, e: int = 1) -> "MultiRat":
        d = dict(self.den)
        d[key] = d.get(key, 0) + e
        return MultiRat(self.num, d)

    # canonical form
    def canonical(self) -> "MultiRat":
        if self._canon:
            return self
        num = self.num
        den = dict(self.den)
        for k in list(den):
            while den[k]:
                q = _divide_exact(num, k)
                if q is None:
                    break
                num = q
                den[k] -= 1
        return MultiRat(num, den, canonical=True)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiRat):
            other = MultiRat.const(other)
        a, b = self.canonical(), other.canonical()
        return a.den == b.den and a.num == b.num

    def __hash__(self) -> int:
        c = self.canonical()
        return hash((c.den, tuple(sorted(c.num.items()))))

    # calculus and substitution
    def diff(self, i: int) -> "MultiRat":
        """Partial derivative with respect to z_i (result not canonicalized)."""
        x = GENS[i]
        involved = [(k, e) for k, e in self.den if i in _vars_of(k)]
        if not involved:
            return MultiRat(self.num.diff(x), self.den)
        prod_all = RING.one
        for k, _ in involved:
            prod_all = prod_all * factor_poly(k)
        num = self.num.diff(x) * prod_all
        for k, e in involved:
            fprime = factor_poly(k).diff(x)
            rest = RING.one
            for k2, _ in involved:
                if k2 != k:
                    rest = rest * factor_poly(k2)
            num = num - self.num * (e * fprime) * rest
        den = dict(self.den)
        for k, _ in involved:
            den[k] += 1
        return MultiRat(num, den)

    def substitute(self, mapping: Mapping[int, int]) -> "MultiRat":
        """Rename variables z_i -> z_mapping[i]; several may merge into one."""
        if not mapping:
            return self
        m = [mapping.get(i, i) for i in range(NVARS)]
        out: Dict[tuple, object] = {}
        for mon, c in self.num.iterterms():
            nm = [0] * NVARS
            for i, e in enumerate(mon):
                if e:
                    nm[m[i]] += e
            t = tuple(nm)
            v = out.get(t)
            out[t] = c if v is None else v + c
        num = RING.from_dict({k: v for k, v in out.items() if v})
        den: Dict[FactorKey, int] = {}
        for k, e in self.den:
            keys, sign = _map_factor(k, m)
            if sign < 0 and e % 2:
                num = -num
            for nk in keys:
                den[nk] = den.get(nk, 0) + e
        return MultiRat(num, den)

    def evaluate(self, point: Mapping[int, Fraction]) -> Fraction:
        """Exact evaluation at a rational point (all variables present must be given)."""
        vals = [Fraction(0)] * NVARS
        for i, v in point.items():
            vals[i] = Fraction(v)
        num = Fraction(0)
        for mon, c in self.num.iterterms():
            t = Fraction(int(c.numerator), int(c.denominator))
            for i, e in enumerate(mon):
                if e:
                    t *= vals[i] ** e
            num += t
        den = Fraction(1)
        for k, e in self.den:
            den *= _factor_value(k, vals) ** e
        if den == 0:
            raise ZeroDivisionError("evaluation on a pole")
        return num / den

    def reflect(self) -> "MultiRat":
        """f(-z_0, ..., -z_9)."""
        out = {}
        for mon, c in self.num.iterterms():
            out[mon] = -c if sum(mon) % 2 else c
        num = RING.from_dict(out)
        den: Dict[FactorKey, int] = {}
        flips = 0
        for k, e in self.den:
            kind = k[0]
            if kind in (Z, DIFF):
                den[k] = e
                flips += e
            elif kind in (ZM1, ZP1):  # -z - 1 = -(z + 1), -z + 1 = -(z - 1)
                den[(ZP1 if kind == ZM1 else ZM1, k[1])] = e
                flips += e
            else:
                den[k] = e
        return MultiRat(-num if flips % 2 else num, den)

    # text
    def to_text(self) -> str:
        """Canonical form as 'numerator || denominator' with sorted monomials and factors."""
        c = self.canonical()
        terms = []
        for mon, coeff in sorted(c.num.iterterms()):
            terms.append(f"{coeff.numerator}/{coeff.denominator}@{','.join(map(str, mon))}")
        den = ",".join(f"{'.'.join(map(str, k))}^{e}" for k, e in c.den)
        return f"{';'.join(terms) or '0'} || {den}"

    @staticmethod
    def from_text(text: str) -> "MultiRat":
        num_s, den_s = (part.strip() for part in text.split("||"))
        terms = {}
        if num_s != "0":
            for part in num_s.split(";"):
                coeff, mon = part.split("@")
                n, d = coeff.split("/")
                exps = tuple(int(v) for v in mon.split(","))
                if len(exps) != NVARS:
                    raise ValueError(f"bad monomial {part!r}")
                terms[exps] = QQ(int(n), int(d))
        den = {}
        for part in filter(None, den_s.split(",")):
            k, e = part.split("^")
            key = tuple(int(v) for v in k.split("."))
            factor_poly(key)  # rejects unknown kinds
            den[key] = int(e)
        return MultiRat(RING.from_dict(terms), den)

    def __repr__(self) -> str:
        den = "*".join(f"{_key_str(k)}^{e}" for k, e in self.den) or "1"
        return f"MultiRat(({self.num.as_expr()}) / ({den}))"


def _factor_value(key: FactorKey, vals) -> Fraction:
    kind = key[0]
    x = vals[key[1]]
    if kind == Z:
        return x
    if kind == ZM1:
        return x - 1
    if kind == ZP1:
        return x + 1
    y = vals[key[2]]
    return x * y - 1 if kind == PAIR else x - y


def _map_factor(key: FactorKey, m) -> Tuple[Tuple[FactorKey, ...], int]:
    """Image of a factor under a variable map, with a sign (+1 or -1)."""
    kind = key[0]
    if kind in (Z, ZM1, ZP1):
        return ((kind, m[key[1]]),), 1
    i, j = m[key[1]], m[key[2]]
    if kind == PAIR:
        if i == j:
            return ((ZM1, i), (ZP1, i)), 1
        return ((PAIR, min(i, j), max(i, j)),), 1
    if i == j:
        raise ZeroDivisionError("coincident-point factor z_i - z_j collapsed to zero")
    return ((DIFF, min(i, j), max(i, j)),), (1 if i < j else -1)
