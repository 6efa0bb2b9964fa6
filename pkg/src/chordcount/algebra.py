"""Exact arithmetic substrate: parameter polynomials, truncated series, univariate
rational functions with residues, and the Zhukovsky inversion.

``Rat`` is ``fractions.Fraction``.  ``ParamPoly`` is a Laurent polynomial over Q in
the generators u (= sqrt(mu)), mu, e1, e2, hbar, gamma.  ``Series`` is a truncated
Laurent series whose coefficients may be ints, Fractions, ParamPolys or Series.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import sympy as sp

Rat = Fraction
GENERATORS: Tuple[str, ...] = ("u", "mu", "e1", "e2", "hbar", "gamma")
_NG = len(GENERATORS)
_ZERO_EXP = (0,) * _NG
Exp = Tuple[int, ...]


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if hasattr(c, "numerator") and hasattr(c, "denominator"):
        return Fraction(int(c.numerator), int(c.denominator))
    raise TypeError(f"not a rational: {c!r}")


class ParamPoly:
    """Finite map from exponent vectors over GENERATORS to nonzero Fractions."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Exp, Fraction]] = None):
        self.terms: Dict[Exp, Fraction] = {}
        if terms:
            for e, c in terms.items():
                if c:
                    self.terms[tuple(e)] = _frac(c)
        self._hash = None

    # constructors
    @classmethod
    def const(cls, c) -> "ParamPoly":
        c = _frac(c)
        return cls({_ZERO_EXP: c} if c else {})

    @classmethod
    def gen(cls, name: str, power: int = 1) -> "ParamPoly":
        e = [0] * _NG
        e[GENERATORS.index(name)] = power
        return cls({tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, coeff=1, **powers: int) -> "ParamPoly":
        e = [0] * _NG
        for k, v in powers.items():
            e[GENERATORS.index(k)] = v
        return cls({tuple(e): _frac(coeff)})

    @staticmethod
    def coerce(x) -> "ParamPoly":
        if isinstance(x, ParamPoly):
            return x
        return ParamPoly.const(x)

    # predicates
    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and _ZERO_EXP in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def const_value(self) -> Fraction:
        if not self.is_const():
            raise ValueError(f"not a constant: {self}")
        return self.terms.get(_ZERO_EXP, Fraction(0))

    # arithmetic
    def __add__(self, other) -> "ParamPoly":
        if not isinstance(other, ParamPoly):
            try:
                other = ParamPoly.const(other)
            except TypeError:
                return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return ParamPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "ParamPoly":
        return ParamPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "ParamPoly":
        if not isinstance(other, ParamPoly):
            try:
                other = ParamPoly.const(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "ParamPoly":
        return (-self) + other

    def __mul__(self, other) -> "ParamPoly":
        if not isinstance(other, ParamPoly):
            try:
                c = _frac(other)
            except TypeError:
                return NotImplemented
            if not c:
                return ParamPoly()
            return ParamPoly({e: v * c for e, v in self.terms.items()})
        out: Dict[Exp, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return ParamPoly(out)

    __rmul__ = __mul__

    def inverse(self) -> "ParamPoly":
        if not self.is_monomial():
            raise ZeroDivisionError(f"only monomials are invertible in ParamPoly: {self}")
        (e, c), = self.terms.items()
        return ParamPoly({tuple(-a for a in e): 1 / c})

    def __truediv__(self, other) -> "ParamPoly":
        if isinstance(other, ParamPoly):
            return self * other.inverse()
        return self * (1 / _frac(other))

    def __rtruediv__(self, other) -> "ParamPoly":
        return ParamPoly.coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "ParamPoly":
        if n < 0:
            return self.inverse() ** (-n)
        out = ParamPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, ParamPoly):
            try:
                other = ParamPoly.const(other)
            except TypeError:
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    # transformations
    def normalize_u(self) -> "ParamPoly":
        """Rewrite u^2 -> mu so that every u-exponent is 0 or 1."""
        out: Dict[Exp, Fraction] = {}
        for e, c in self.terms.items():
            q, r = divmod(e[0], 2)
            ne = (r, e[1] + q) + e[2:]
            out[ne] = out.get(ne, 0) + c
        return ParamPoly(out)

    def degree(self, name: str) -> Tuple[int, int]:
        i = GENERATORS.index(name)
        ds = [e[i] for e in self.terms] or [0]
        return min(ds), max(ds)

    def subs(self, name: str, value: "ParamPoly") -> "ParamPoly":
        """Substitute a generator; negative powers need an invertible value."""
        i = GENERATORS.index(name)
        value = ParamPoly.coerce(value)
        cache: Dict[int, ParamPoly] = {}
        out = ParamPoly()
        for e, c in self.terms.items():
            k = e[i]
            if k not in cache:
                cache[k] = value ** k
            rest = list(e)
            rest[i] = 0
            out = out + ParamPoly({tuple(rest): c}) * cache[k]
        return out

    def map_coeffs(self, f: Callable[[Fraction], Fraction]) -> "ParamPoly":
        return ParamPoly({e: f(c) for e, c in self.terms.items()})

    def coefficient(self, **powers: int) -> Fraction:
        e = [0] * _NG
        for k, v in powers.items():
            e[GENERATORS.index(k)] = v
        return self.terms.get(tuple(e), Fraction(0))

    # text
    def to_text(self) -> str:
        """Canonical serialization: sorted monomials, decimal integers."""
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            parts.append(f"{c.numerator}/{c.denominator}@{','.join(str(a) for a in e)}")
        return ";".join(parts)

    @classmethod
    def from_text(cls, text: str) -> "ParamPoly":
        text = text.strip()
        if text == "0":
            return cls()
        out = {}
        for part in text.split(";"):
            c, e = part.split("@")
            n, d = c.split("/")
            exps = tuple(int(a) for a in e.split(","))
            if len(exps) != _NG:
                raise ValueError(f"bad exponent vector in {part!r}")
            out[exps] = Fraction(int(n), int(d))
        return cls(out)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mon = "*".join(
                (g if a == 1 else f"{g}^{a}") for g, a in zip(GENERATORS, e) if a
            )
            if not mon:
                parts.append(str(c))
            elif c == 1:
                parts.append(mon)
            elif c == -1:
                parts.append("-" + mon)
            else:
                parts.append(f"{c}*{mon}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__

    @classmethod
    def parse(cls, text: str) -> "ParamPoly":
        """Parse a human-written polynomial such as '2*mu^2/e2 - 3*gamma/hbar'."""
        syms = {g: sp.Symbol(g) for g in GENERATORS}
        expr = sp.expand(sp.sympify(text.replace("^", "**"), locals=syms))
        out = ParamPoly()
        for term in sp.Add.make_args(expr):
            coeff, rest = term.as_coeff_Mul()
            e = [0] * _NG
            for fac in sp.Mul.make_args(rest):
                if fac == 1:
                    continue
                base, ex = fac.as_base_exp()
                e[GENERATORS.index(str(base))] += int(ex)
            out = out + ParamPoly({tuple(e): Fraction(int(sp.numer(coeff)), int(sp.denom(coeff)))})
        return out


# ---------------------------------------------------------------------------
# truncated series


def _is_zero(c) -> bool:
    if isinstance(c, (int, Fraction)):
        return c == 0
    if isinstance(c, ParamPoly):
        return not c.terms
    if isinstance(c, Series):
        return c.is_zero()
    return c == 0


def _inv(c):
    if isinstance(c, (int, Fraction)):
        return 1 / Fraction(c)
    if isinstance(c, ParamPoly):
        return c.inverse()
    if isinstance(c, Series):
        return c.reciprocal()
    return 1 / c


class Series:
    """Truncated Laurent series sum_{n=val}^{order} c_n var^n (+ log_coeff * log var).

    ``order`` is the largest exponent known exactly.
    """

    __slots__ = ("var", "val", "coeffs", "order", "log_coeff")

    def __init__(self, var: str, coeffs: Sequence, order: int, val: int = 0, log_coeff=0):
        self.var = var
        self.val = val
        self.order = order
        n = max(0, order - val + 1)
        cs = list(coeffs[:n])
        cs += [0] * (n - len(cs))
        self.coeffs = cs
        self.log_coeff = log_coeff

    # construction
    @classmethod
    def from_dict(cls, var: str, terms: Mapping[int, object], order: int) -> "Series":
        if not terms:
            return cls(var, [], order, 0)
        lo = min(min(terms), 0)
        cs = [0] * max(0, order - lo + 1)
        for k, v in terms.items():
            if k <= order:
                cs[k - lo] = v
        return cls(var, cs, order, lo)

    @classmethod
    def from_function(cls, var: str, f: Callable[[int], object], order: int, val: int = 0) -> "Series":
        return cls(var, [f(n) for n in range(val, order + 1)], order, val)

    @classmethod
    def const(cls, var: str, c, order: int) -> "Series":
        return cls(var, [c], order, 0)

    @classmethod
    def variable(cls, var: str, order: int) -> "Series":
        return cls(var, [0, 1], order, 0)

    # access
    def __getitem__(self, n: int):
        if n > self.order:
            raise IndexError(f"coefficient {n} beyond truncation order {self.order}")
        if n < self.val:
            return 0
        return self.coeffs[n - self.val]

    def items(self) -> Iterable[Tuple[int, object]]:
        for i, c in enumerate(self.coeffs):
            if not _is_zero(c):
                yield self.val + i, c

    def valuation(self) -> Optional[int]:
        for n, _ in self.items():
            return n
        return None

    def is_zero(self) -> bool:
        return all(_is_zero(c) for c in self.coeffs) and _is_zero(self.log_coeff)

    def truncate(self, order: int) -> "Series":
        return Series(self.var, self.coeffs, min(order, self.order), self.val, self.log_coeff)

    def normalized(self) -> "Series":
        """Drop leading zero coefficients (raise the stored valuation)."""
        v = self.valuation()
        if v is None or v == self.val:
            return self
        return Series(self.var, self.coeffs[v - self.val:], self.order, v, self.log_coeff)

    def map(self, f: Callable) -> "Series":
        return Series(self.var, [f(c) for c in self.coeffs], self.order, self.val,
                      f(self.log_coeff) if not _is_zero(self.log_coeff) else 0)

    def _check(self, other: "Series") -> None:
        if other.var != self.var:
            raise ValueError(f"series variables differ: {self.var} vs {other.var}")

    # arithmetic
    def __add__(self, other) -> "Series":
        if not isinstance(other, Series):
            other = Series(self.var, [other], self.order if self.order >= 0 else 0, 0)
            if self.order < 0:
                other = other.truncate(self.order)
        self._check(other)
        order = min(self.order, other.order)
        lo = min(self.val, other.val)
        cs = []
        for n in range(lo, order + 1):
            a = self[n] if n >= self.val else 0
            b = other[n] if n >= other.val else 0
            cs.append(a + b)
        return Series(self.var, cs, order, lo, self.log_coeff + other.log_coeff)

    __radd__ = __add__

    def __neg__(self) -> "Series":
        return self.map(lambda c: -c)

    def __sub__(self, other) -> "Series":
        return self + (-other)

    def __rsub__(self, other) -> "Series":
        return (-self) + other

    def __mul__(self, other) -> "Series":
        if not isinstance(other, Series):
            return self.map(lambda c: c * other)
        self._check(other)
        if not _is_zero(self.log_coeff) or not _is_zero(other.log_coeff):
            raise ValueError("products of log-carrying series are not supported")
        a, b = self.normalized(), other.normalized()
        order = min(a.order + b.val, b.order + a.val)
        val = a.val + b.val
        n = order - val + 1
        if n <= 0:
            return Series(self.var, [], order, val)
        out = [0] * n
        ac = [(i, c) for i, c in enumerate(a.coeffs[:n]) if not _is_zero(c)]
        bc = [(j, c) for j, c in enumerate(b.coeffs[:n]) if not _is_zero(c)]
        for i, x in ac:
            lim = n - i
            for j, y in bc:
                if j >= lim:
                    break
                out[i + j] = out[i + j] + x * y
        return Series(self.var, out, order, val)

    def __rmul__(self, other) -> "Series":
        return self.map(lambda c: other * c)

    def shift(self, k: int) -> "Series":
        """Multiply by var^k."""
        return Series(self.var, self.coeffs, self.order + k, self.val + k, self.log_coeff)

    def reciprocal(self) -> "Series":
        a = self.normalized()
        v = a.valuation()
        if v is None:
            raise ZeroDivisionError("reciprocal of a zero series")
        c0inv = _inv(a.coeffs[0])
        prec = a.order - v  # relative precision
        out = [c0inv]
        for n in range(1, prec + 1):
            acc = 0
            for k in range(1, n + 1):
                if k < len(a.coeffs) and not _is_zero(a.coeffs[k]):
                    acc = acc + a.coeffs[k] * out[n - k]
            out.append(-(c0inv * acc) if not _is_zero(acc) else 0)
        return Series(self.var, out, prec - v, -v)

    def __truediv__(self, other) -> "Series":
        if isinstance(other, Series):
            return self * other.reciprocal()
        return self.map(lambda c: c * _inv(other))

    def __rtruediv__(self, other) -> "Series":
        return self.reciprocal() * other

    def __pow__(self, n: int) -> "Series":
        if n < 0:
            return self.reciprocal() ** (-n)
        out = None
        base = self
        while True:
            if n & 1:
                out = base if out is None else out * base
            n >>= 1
            if not n:
                break
            base = base * base
        return out if out is not None else Series(self.var, [1], self.order - 0, 0)

    def derivative(self) -> "Series":
        cs = [(self.val + i) * c for i, c in enumerate(self.coeffs)]
        out = Series(self.var, cs, self.order, self.val).shift(-1)
        if not _is_zero(self.log_coeff):
            out = out + Series(self.var, [self.log_coeff], out.order, -1)
        return out

    def compose(self, inner: "Series") -> "Series":
        """self(inner) for an inner series of positive valuation."""
        v = inner.normalized().valuation()
        if v is None or v < 1:
            raise ValueError("composition needs an inner series of positive valuation")
        if not _is_zero(self.log_coeff):
            raise ValueError("cannot compose a log-carrying series")
        bound = (self.order + 1) * v - 1  # first neglected term of self
        result = Series(inner.var, [], bound, 0)
        power = inner.reciprocal() ** (-self.val) if self.val < 0 else None
        if self.val > 0:
            power = inner ** self.val
        for i, c in enumerate(self.coeffs):
            n = self.val + i
            if n == 0:
                cur = Series(inner.var, [1], bound, 0)
            else:
                cur = power
            if not _is_zero(c):
                result = result + cur * c
            if n == -1:
                power = None
            elif n >= 0:
                power = inner if cur is None or n == 0 else cur * inner
            else:
                power = cur * inner
        return result

    def reversion(self) -> "Series":
        """Compositional inverse of a series with valuation exactly 1."""
        a = self.normalized()
        if a.val != 1:
            raise ValueError("reversion needs valuation 1")
        c1inv = _inv(a.coeffs[0])
        # Newton-free fixed point: g = (x - (f(g) - c1 g)) / c1
        x = Series.variable(self.var, a.order)
        g = x * c1inv
        for _ in range(a.order):
            g = (x - (a.compose(g) - g * a.coeffs[0])) * c1inv
        return g.truncate(a.order)

    def sqrt(self) -> "Series":
        """Square root of a series whose leading coefficient is 1 at valuation 0."""
        a = self.normalized()
        if a.val != 0 or a.coeffs[0] != 1:
            raise ValueError("sqrt implemented for series 1 + O(var)")
        out = [Fraction(1)]
        for n in range(1, a.order + 1):
            acc = a.coeffs[n] if n < len(a.coeffs) else 0
            for k in range(1, n):
                acc = acc - out[k] * out[n - k]
            out.append(acc * Fraction(1, 2))
        return Series(self.var, out, a.order, 0)

    def __eq__(self, other) -> bool:
        if isinstance(other, Series):
            if other.var != self.var:
                return False
            order = min(self.order, other.order)
            lo = min(self.val, other.val)
            return all(_is_zero(self[n] - other[n]) for n in range(lo, order + 1)) and _is_zero(
                self.log_coeff - other.log_coeff)
        try:
            if _is_zero(other):
                return self.is_zero()
            return self == Series(self.var, [other], self.order, 0)
        except TypeError:  # foreign scalar types probe equality with floats
            return False

    __hash__ = None  # mutable-looking value type

    # text
    def to_text(self) -> str:
        head = f"{self.var}|{self.val}|{self.order}|{_coeff_text(self.log_coeff)}"
        return head + "|" + "|".join(_coeff_text(c) for c in self.coeffs)

    @classmethod
    def from_text(cls, text: str) -> "Series":
        parts = text.strip().split("|")
        var, val, order, logc = parts[0], int(parts[1]), int(parts[2]), parts[3]
        cs = [_coeff_from_text(p) for p in parts[4:]]
        return cls(var, cs, order, val, _coeff_from_text(logc))

    def __repr__(self) -> str:
        terms = [f"({c})*{self.var}^{n}" for n, c in self.items()]
        if not _is_zero(self.log_coeff):
            terms.append(f"({self.log_coeff})*log({self.var})")
        return " + ".join(terms or ["0"]) + f" + O({self.var}^{self.order + 1})"


def _coeff_text(c) -> str:
    if isinstance(c, ParamPoly):
        return "P" + c.to_text()
    c = _frac(c)
    return f"Q{c.numerator}/{c.denominator}"


def _coeff_from_text(t: str):
    if t.startswith("P"):
        return ParamPoly.from_text(t[1:])
    n, d = t[1:].split("/")
    return Fraction(int(n), int(d))


# ---------------------------------------------------------------------------
# univariate rational functions and residues


class RatFunc:
    """Univariate rational function with coefficients in a sympy field (QQ or QQ(params)).

    Canonical form: coprime numerator and monic denominator.
    """

    __slots__ = ("var", "num", "den")

    def __init__(self, num: sp.Poly, den: sp.Poly):
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        num, den = sp.Poly(num), sp.Poly(den)
        dom = num.domain.unify(den.domain)
        if not dom.is_Field:
            dom = dom.get_field()
        num, den = num.set_domain(dom), den.set_domain(dom)
        g = num.gcd(den)
        num, den = num.exquo(g), den.exquo(g)
        lc = den.LC()
        num, den = num.quo_ground(lc), den.quo_ground(lc)
        self.var = num.gen
        self.num = num
        self.den = den

    @classmethod
    def from_expr(cls, expr, var, params: Sequence = ()) -> "RatFunc":
        expr = sp.together(sp.sympify(expr))
        n, d = sp.fraction(expr)
        dom = sp.QQ.frac_field(*params) if params else sp.QQ
        return cls(sp.Poly(n, var, domain=dom), sp.Poly(d, var, domain=dom))

    def as_expr(self):
        return self.num.as_expr() / self.den.as_expr()

    def __eq__(self, other) -> bool:
        return isinstance(other, RatFunc) and self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __add__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc(self.num * other.num, self.den * other.den)

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        return self + (-other)

    def canonical(self) -> "RatFunc":
        return RatFunc(self.num, self.den)


def _to_domain(dom, value):
    return dom.from_sympy(sp.sympify(value))


def _out(dom, v):
    if dom == sp.QQ:
        return Fraction(int(v.numerator), int(v.denominator))
    return dom.to_sympy(v)


def pole_order(f: RatFunc, pole) -> int:
    dom = f.den.domain
    p = _to_domain(dom, pole)
    d = f.den.shift(dom.to_sympy(p)) if p else f.den
    coeffs = list(reversed(d.rep.to_list()))
    m = 0
    while m < len(coeffs) and coeffs[m] == dom.zero:
        m += 1
    return m


def residue_at(f: RatFunc, pole):
    """Coefficient of (var - pole)^-1 in the Laurent expansion of f at pole.

    The pole must lie in the coefficient field of f; a regular point returns 0.
    """
    dom = f.den.domain
    try:
        p = _to_domain(dom, pole)
    except Exception as exc:  # sympy raises CoercionFailed with a varying class
        raise ValueError(f"pole {pole} does not lie in the coefficient field {dom}") from exc
    d = f.den.shift(dom.to_sympy(p)) if p else f.den
    n = f.num.shift(dom.to_sympy(p)) if p else f.num
    dc = list(reversed(d.rep.to_list()))
    m = 0
    while dc[m] == dom.zero:
        m += 1
    if m == 0:
        return _out(dom, dom.zero)
    dt = dc[m:]
    nc = list(reversed(n.rep.to_list()))
    # coefficient of eps^(m-1) in N(eps) / Dt(eps)
    inv0 = dom.one / dt[0]
    q: List = []
    for k in range(m):
        acc = nc[k] if k < len(nc) else dom.zero
        for j in range(1, k + 1):
            if j < len(dt):
                acc = acc - dt[j] * q[k - j]
        q.append(acc * inv0)
    return _out(dom, q[m - 1])


def residue_at_infinity(f: RatFunc):
    """Res_{var=inf} f = -(coefficient of var^-1 in the expansion at infinity)."""
    dom = f.den.domain
    dn, dd = f.num.degree(), f.den.degree()
    if dn < 0:
        return _out(dom, dom.zero)
    if dd - dn != 1:
        if dd - dn > 1:
            return _out(dom, dom.zero)
        # polynomial part present: long division first
        q, r = f.num.div(f.den)
        return residue_at_infinity(RatFunc(r, f.den)) if not r.is_zero else _out(dom, dom.zero)
    return _out(dom, -(dom.from_sympy(f.num.LC()) / dom.from_sympy(f.den.LC())))


def finite_poles(f: RatFunc) -> List:
    """Rational poles of f (over QQ only)."""
    if f.den.domain != sp.QQ:
        raise ValueError("finite_poles needs rational coefficients")
    return [r for r in sp.roots(f.den, filter="Q").keys()]


def laurent_expand(f: RatFunc, at="infinity", order: int = 5) -> Series:
    """Exact expansion of a rational function over QQ.

    At infinity the series variable is '1/<var>' and exponents count powers of 1/var.
    """
    if f.den.domain != sp.QQ:
        raise ValueError("laurent_expand needs rational coefficients")
    var = str(f.var)

    def coeffs(poly: sp.Poly) -> List[Fraction]:
        return [_frac(c) for c in reversed(poly.all_coeffs())]

    if at == "infinity":
        # f(1/y) = y^(dd - dn) * Nrev(y) / Drev(y)
        n, d = coeffs(f.num), coeffs(f.den)
        nr, dr = list(reversed(n)), list(reversed(d))
        shift = (len(d) - 1) - (len(n) - 1)
        rel = order - shift
        num = Series("1/" + var, nr, max(rel, 0))
        den = Series("1/" + var, dr, max(rel, 0))
        return (num * den.reciprocal()).shift(shift).truncate(order)
    p = _frac(at)
    n = coeffs(f.num.shift(sp.Rational(p.numerator, p.denominator)))
    d = coeffs(f.den.shift(sp.Rational(p.numerator, p.denominator)))
    m = 0
    while d[m] == 0:
        m += 1
    vname = f"({var}-{p})" if p else var
    rel = order + m
    num = Series(vname, n, max(rel, 0))
    den = Series(vname, d[m:], max(rel, 0))
    return (num * den.reciprocal()).shift(-m).truncate(order)


def zhukovsky_inverse(order: int) -> Series:
    """z(x) with x = u (z + 1/z), as a Laurent series in y = 1/x with ParamPoly coefficients.

    Solved by the fixed point z = x/u - 1/z; returns terms through y^order.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    u = ParamPoly.gen("u")
    y = "1/x"
    lead = Series(y, [u.inverse()], order, -1)
    z = lead
    for _ in range(order + 2):
        z = lead - z.reciprocal().truncate(order)
        z = z.map(lambda c: c.normalize_u() if isinstance(c, ParamPoly) else c)
    return z.truncate(order)
