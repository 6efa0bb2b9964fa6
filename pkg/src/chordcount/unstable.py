"""Unstable free energies of genus-0 one-cut curves y^2 = M(x)^2 (x - a)(x - b).

Two value kinds are supported.  Exact curves carry sympy expressions.  Series
curves carry truncated series in s whose coefficients live in the rational field
Q(z, u), with

    u = sqrt(mu),    t = z / (u (1 + z^2)),

i.e. z = u t C(mu t^2) with C the Catalan series.  In these coordinates the square
roots of 1 - 4 mu t^2 that appear in the RNA branch points become rational.

Zeros and poles of M are given as ``Root`` (one point alpha) or ``RootPair`` (two
conjugate points through their sum and product).  Every quantity used by the
formulas is symmetric in the points of a pair, so conjugate roots are never split.

A factor at alpha is traded for the point s_alpha with |s_alpha| < 1 defined by
alpha = S - (D / 2)(s_alpha + 1/s_alpha), where S = (a + b) / 2 and D = (a - b) / 2.
The square root sqrt(sigma(alpha)) is the branch behaving like x at infinity, so
that (alpha - S + sqrt(sigma(alpha))) / 2 = -(D / 2) / s_alpha.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import List, Optional, Sequence, Tuple, Union

import sympy as sp
from sympy.polys.domains import QQ
from sympy.polys.fields import field as _field

from .algebra import ParamPoly, Series

K, Z, U = _field("z,u", QQ)
MU_K = U ** 2
T_K = Z / (U * (1 + Z ** 2))
S_VAR = "s"


class BranchError(ValueError):
    """The |s_i| < 1 branch cannot be selected, or a selected point violates it."""


class DegenerateCurveError(ValueError):
    """M vanishes (or blows up) at a branch point."""


Value = Union[sp.Expr, Series]


@dataclass(frozen=True)
class Root:
    alpha: object
    m: int

    @property
    def degree(self) -> int:
        return 1


@dataclass(frozen=True)
class RootPair:
    """The two roots of x^2 - total x + product, each with multiplicity m."""

    total: object
    product: object
    m: int

    @property
    def degree(self) -> int:
        return 2


Factor = Union[Root, RootPair]


@dataclass
class OneCutCurve:
    a: object
    b: object
    c: object = 1
    factors: Sequence[Factor] = ()

    @property
    def is_series(self) -> bool:
        return isinstance(self.a, Series)

    @property
    def center(self):
        return (self.a + self.b) * _half(self.a)

    @property
    def half_width(self):
        """D = (a - b) / 2."""
        return (self.a - self.b) * _half(self.a)

    def moment(self, x):
        """M(x) for an exact curve."""
        out = sp.sympify(self.c)
        for f in self.factors:
            if isinstance(f, Root):
                out *= (x - f.alpha) ** f.m
            else:
                out *= (x ** 2 - f.total * x + f.product) ** f.m
        return out


@dataclass
class SPoint:
    """Elementary symmetric functions of the points s_i attached to one factor.

    ``e2`` is None for a single root (then ``e1`` is s itself).
    """

    factor: Factor
    e1: object
    e2: Optional[object] = None

    def poly_at(self, x):
        """prod_i (1 - s_i x)."""
        if self.e2 is None:
            return 1 - self.e1 * x
        return 1 - self.e1 * x + self.e2 * x * x

    def x_sum_product(self):
        """Sum and product of X_i = s_i + 1/s_i."""
        if self.e2 is None:
            return self.e1 + _recip(self.e1), None
        e1, e2 = self.e1, self.e2
        return e1 * (1 + e2) * _recip(e2), (e2 * e2 + 1 + e1 * e1 - 2 * e2) * _recip(e2)


def _half(like):
    if isinstance(like, Series) or isinstance(like, type(K.one)):
        return K(QQ(1, 2))
    return sp.Rational(1, 2)


def _recip(v):
    if isinstance(v, Series):
        return v.reciprocal()
    return 1 / v


# ---------------------------------------------------------------------------
# log values


@dataclass
class LogValue:
    """const + series, with const a sympy expression (s-independent) and series O(s)."""

    const: sp.Expr = field(default_factory=lambda: sp.Integer(0))
    series: Optional[Series] = None

    def __add__(self, other: "LogValue") -> "LogValue":
        if self.series is None:
            ser = other.series
        elif other.series is None:
            ser = self.series
        else:
            ser = self.series + other.series
        return LogValue(self.const + other.const, ser)

    def __neg__(self) -> "LogValue":
        return self * -1

    def __sub__(self, other: "LogValue") -> "LogValue":
        return self + (-other)

    def __mul__(self, r) -> "LogValue":
        r = Fraction(r)
        ser = None if self.series is None else self.series * K(QQ(r.numerator, r.denominator))
        return LogValue(self.const * sp.Rational(r.numerator, r.denominator), ser)

    __rmul__ = __mul__

    def coefficient(self, n: int):
        """s^n coefficient (n >= 1) as an element of Q(z, u)."""
        if self.series is None:
            raise ValueError("exact value has no s-expansion")
        return self.series[n]

    def simplified(self) -> "LogValue":
        return LogValue(sp.simplify(sp.expand_log(self.const, force=True)), self.series)


def _const(v) -> LogValue:
    return LogValue(sp.sympify(v))


def log_value(v) -> LogValue:
    """log|v| for an exact value or a series with nonzero constant term."""
    if isinstance(v, type(K.one)):
        if not v:
            raise DegenerateCurveError("log of zero")
        return LogValue(sp.log(sp.Abs(v.as_expr())))
    if not isinstance(v, Series):
        v = sp.sympify(v)
        if v == 0:
            raise DegenerateCurveError("log of zero")
        return LogValue(sp.log(sp.Abs(v)))
    v = v.normalized()
    if v.val != 0:
        raise DegenerateCurveError(f"series log needs a nonzero constant term (valuation {v.val})")
    a0 = v[0]
    ratio = v * (1 / a0)
    # log(ratio) = integral of ratio' / ratio
    quot = ratio.derivative() * ratio.reciprocal()
    coeffs = [0] + [quot[n - 1] * K(QQ(1, n)) for n in range(1, v.order + 1)]
    return LogValue(sp.log(sp.Abs(a0.as_expr())), Series(S_VAR, coeffs, v.order, 0))


# ---------------------------------------------------------------------------
# helpers for Q(z, u)


def _z_valuation(f) -> int:
    """Order of vanishing of f at z = 0 (negative for a pole)."""
    num = min(m[0] for m in f.numer.itermonoms())
    den = min(m[0] for m in f.denom.itermonoms())
    return num - den


def field_sqrt(f):
    """A square root of f inside Q(z, u), or BranchError if f is not a square there."""
    root = K.one
    for part, sign in ((f.numer, 1), (f.denom, -1)):
        c, facs = part.factor_list()
        rc = sp.sqrt(sp.Rational(int(c.numerator), int(c.denominator)))
        if not rc.is_rational:
            raise BranchError(f"constant {c} is not a rational square")
        piece = K(QQ(int(sp.numer(rc)), int(sp.denom(rc))))
        for fac, e in facs:
            if e % 2:
                raise BranchError(f"{f.as_expr()} is not a square in Q(z, u)")
            piece = piece * K(fac) ** (e // 2)
        root = root * (piece if sign > 0 else 1 / piece)
    if root * root != f:
        raise BranchError(f"square root check failed for {f.as_expr()}")
    return root


def _series_sqrt(v: Series, root0) -> Series:
    """Square root of a series with a prescribed square root of its constant term."""
    v = v.normalized()
    if v.val != 0 or root0 * root0 != v[0]:
        raise BranchError("constant term does not match the prescribed root")
    out = [root0]
    inv2 = 1 / (2 * root0)
    for n in range(1, v.order + 1):
        acc = v[n]
        for k in range(1, n):
            acc = acc - out[k] * out[n - k]
        out.append(acc * inv2)
    return Series(S_VAR, out, v.order, 0)


def _newton_steps(order: int) -> int:
    n, prec = 0, 1
    while prec <= order:
        prec *= 2
        n += 1
    return n + 1


def _const_series(c, order: int) -> Series:
    return Series(S_VAR, [K(c) if not isinstance(c, type(K.one)) else c], order, 0)


def _assert_vanishes(v: Series, what: str) -> None:
    bad = [n for n, c in v.items()]
    if bad:
        raise ArithmeticError(f"{what} fails at s^{bad[0]}")


# ---------------------------------------------------------------------------
# s-points


def _small_root_exact(x) -> sp.Expr:
    x = sp.sympify(x)
    disc = sp.sqrt(x ** 2 - 4)
    cands = [sp.simplify((x - disc) / 2), sp.simplify((x + disc) / 2)]
    inside = []
    for c in cands:
        test = sp.Abs(c) < 1
        if test not in (sp.true, sp.false):
            raise BranchError(f"cannot decide |s| < 1 for {c}")
        if test == sp.true:
            inside.append(c)
    if len(inside) != 1:
        raise BranchError(f"no unique root with |s| < 1 for X = {x}")
    return inside[0]


def _small_root_series(x: Series) -> Series:
    """Root of s^2 - X s + 1 = 0 continuous with the small root at s = 0."""
    x0 = x[0]
    disc = field_sqrt(x0 * x0 - 4)
    cands = [(x0 - disc) * K(QQ(1, 2)), (x0 + disc) * K(QQ(1, 2))]
    small = [c for c in cands if _z_valuation(c) > 0]
    if len(small) != 1:
        raise BranchError("no unique vanishing root at s = 0")
    order = x.order
    p = _const_series(small[0], order)
    for _ in range(_newton_steps(order)):
        p = p - (p * p - x * p + 1) * (2 * p - x).reciprocal()
        p = p.truncate(order)
    _assert_vanishes(p * p - x * p + 1, "s-point equation")
    return p


def _pair_series(total_x: Series, prod_x: Series) -> Tuple[Series, Series]:
    """(e1, e2) of the small roots s_1, s_2 given the sum and product of X_i = s_i + 1/s_i."""
    p0, q0 = total_x[0], prod_x[0]
    # at s = 0 the two X_i are the roots of X^2 - p0 X + q0
    disc = field_sqrt(p0 * p0 - 4 * q0)
    xs = [(p0 - disc) * K(QQ(1, 2)), (p0 + disc) * K(QQ(1, 2))]
    pts = []
    for x0 in xs:
        r = field_sqrt(x0 * x0 - 4)
        small = [c for c in ((x0 - r) * K(QQ(1, 2)), (x0 + r) * K(QQ(1, 2))) if _z_valuation(c) > 0]
        if len(small) != 1:
            raise BranchError("no unique vanishing root for a pair member")
        pts.append(small[0])
    order = total_x.order
    e1 = _const_series(pts[0] + pts[1], order)
    e2 = _const_series(pts[0] * pts[1], order)
    for _ in range(_newton_steps(order)):
        f1 = e1 * (1 + e2) - total_x * e2
        f2 = e2 * e2 + 1 + e1 * e1 - 2 * e2 - prod_x * e2
        j11, j12 = 1 + e2, e1 - total_x
        j21, j22 = 2 * e1, 2 * e2 - 2 - prod_x
        det_inv = (j11 * j22 - j12 * j21).reciprocal()
        e1 = (e1 - (j22 * f1 - j12 * f2) * det_inv).truncate(order)
        e2 = (e2 - (j11 * f2 - j21 * f1) * det_inv).truncate(order)
    _assert_vanishes(e1 * (1 + e2) - total_x * e2, "pair equation (sum)")
    _assert_vanishes(e2 * e2 + 1 + e1 * e1 - 2 * e2 - prod_x * e2, "pair equation (product)")
    return e1, e2


def s_points(curve: OneCutCurve) -> List[SPoint]:
    """The |s_i| < 1 points for every factor of the curve."""
    S, D = curve.center, curve.half_width
    inv_d = _recip(D)
    out = []
    for f in curve.factors:
        if isinstance(f, Root):
            x = (S - f.alpha) * 2 * inv_d
            if curve.is_series:
                out.append(SPoint(f, _small_root_series(x)))
            else:
                out.append(SPoint(f, sp.simplify(_small_root_exact(x))))
            continue
        # X_i = 2 (S - alpha_i) / D
        total_x = (2 * S - f.total) * 2 * inv_d
        prod_x = (S * S - S * f.total + f.product) * 4 * inv_d * inv_d
        if curve.is_series:
            e1, e2 = _pair_series(total_x, prod_x)
            out.append(SPoint(f, e1, e2))
        else:
            xs = sp.solve(sp.Symbol("X") ** 2 - total_x * sp.Symbol("X") + prod_x, sp.Symbol("X"))
            if len(xs) != 2:
                raise BranchError("degenerate pair")
            s1, s2 = (_small_root_exact(x) for x in xs)
            out.append(SPoint(f, sp.simplify(s1 + s2), sp.simplify(s1 * s2)))
    return out


def check_s_point(curve: OneCutCurve, pt: SPoint) -> bool:
    """alpha(s) = S - (D/2)(s + 1/s) to truncation order (symmetric functions for pairs)."""
    S, D = curve.center, curve.half_width
    sx, px = pt.x_sum_product()
    h = D * _half(D)
    f = pt.factor
    if isinstance(f, Root):
        diffs = [f.alpha - (S - h * sx)]
    else:
        diffs = [f.total - (2 * S - h * sx), f.product - (S * S - S * h * sx + h * h * px)]
    for d in diffs:
        if isinstance(d, Series):
            if not d.is_zero():
                return False
        elif sp.simplify(d) != 0:
            return False
    return True


# ---------------------------------------------------------------------------
# the three unstable terms


def _branch_product(curve: OneCutCurve):
    """M(a) M(b) (a - b)^4."""
    a, b = curve.a, curve.b
    acc = curve.c * curve.c
    if not isinstance(acc, Series) and curve.is_series:
        acc = K(acc) if not isinstance(acc, type(K.one)) else acc
    for f in curve.factors:
        if isinstance(f, Root):
            val = (a - f.alpha) * (b - f.alpha)
        else:
            val = (a * a - f.total * a + f.product) * (b * b - f.total * b + f.product)
        if _vanishes(val):
            raise DegenerateCurveError("a zero or pole of M sits at a branch point")
        acc = acc * (val ** f.m if f.m >= 0 else _recip(val) ** (-f.m))
    d = a - b
    return acc * d * d * d * d


def _vanishes(v) -> bool:
    if isinstance(v, Series):
        return v.normalized().val != 0 or v.is_zero()
    return sp.simplify(v) == 0


def f10(curve: OneCutCurve) -> LogValue:
    """F_{1,0} = -(1/24) log|M(a) M(b) (a - b)^4|."""
    return log_value(_branch_product(curve)) * Fraction(-1, 24)


def d_f01_dmu(curve: OneCutCurve, points: Optional[List[SPoint]] = None) -> LogValue:
    pts = points if points is not None else s_points(curve)
    D = curve.half_width
    quarter = D * _half(D)  # (a - b) / 4
    out = _const(1) + log_value(curve.c) + log_value(quarter * quarter) * Fraction(1, 2)
    # log[(alpha - S + sqrt(sigma(alpha))) / 2] = log|(a - b)/4| - log|s|, per point
    for p in pts:
        deg = p.factor.degree
        prod_s = p.e1 if p.e2 is None else p.e2
        out = out + (log_value(quarter) * deg - log_value(prod_s)) * p.factor.m
    return out


def _cross_product(p: SPoint, q: SPoint):
    """prod over points x of p and y of q of (1 - x y)."""
    if q.e2 is None:
        return p.poly_at(q.e1)
    if p.e2 is None:
        return q.poly_at(p.e1)
    e1, e2, f1, f2 = p.e1, p.e2, q.e1, q.e2
    return 1 - e1 * f1 + e2 * (f1 * f1 - 2 * f2) + e1 * e1 * f2 - e1 * e2 * f1 * f2 + e2 * e2 * f2 * f2


def klein_part(curve: OneCutCurve, points: Optional[List[SPoint]] = None) -> LogValue:
    """-1/2 sum m_i log(1 - s_i^2) - 1/2 sum m_i m_j log(1 - s_i s_j)."""
    pts = points if points is not None else s_points(curve)
    out = _const(0)
    for p in pts:
        out = out + log_value(p.poly_at(1) * p.poly_at(-1)) * Fraction(-p.factor.m, 2)
    for p in pts:
        for q in pts:
            out = out + log_value(_cross_product(p, q)) * Fraction(-p.factor.m * q.factor.m, 2)
    return out


def f02(curve: OneCutCurve, points: Optional[List[SPoint]] = None) -> LogValue:
    """F_{0,2}; the s-independent -log(sqrt 2) is not included."""
    return klein_part(curve, points) + log_value(_branch_product(curve)) * Fraction(1, 24)


# ---------------------------------------------------------------------------
# the RNA curve


@dataclass
class BranchSeries:
    sigma: Series  # (a + b) t / 2
    delta_sq: Series  # ((a - b) t / 2)^2
    e: Series  # D^2 = 4 mu + s e


def _rna_residuals(S: Series, D2: Series, order: int) -> Tuple[Series, Series]:
    s = Series.variable(S_VAR, order)
    t, mu = T_K, MU_K
    R = D2 * 3 - 4 * mu
    first = S * t * R - (D2 - 4 * mu)
    second = (s * s) * 4 * t ** 4 * R ** 6 - D2 * (D2 - 4 * mu) ** 2 * (D2 * 4 - R * R * t * t) ** 3
    return first, second


def rna_branch_series(order_s: int) -> BranchSeries:
    """Branch points of the RNA curve as s-series with coefficients in Q(z, u).

    With D^2 = 4 mu + s e, the second equation divided by s^2 is regular in e and its
    e-derivative at s = 0 is invertible; S then follows from the first equation.
    """
    n = order_s
    t, mu = T_K, MU_K
    s = Series.variable(S_VAR, n + 1)
    # e0^2 = 64 mu^2 t^4 / (1 - 4 mu t^2)^3; the sign is fixed by S > 0 for small s, t > 0
    e0 = field_sqrt(64 * mu ** 2 * t ** 4 / (1 - 4 * mu * t * t) ** 3)
    if _leading_sign(e0) < 0:
        e0 = -e0
    e = _const_series(e0, n)
    for _ in range(_newton_steps(n)):
        D2 = s * e + 4 * mu
        R = D2 * 3 - 4 * mu
        Q = D2 * 4 - R * R * t * t
        Q2 = Q * Q
        G = D2 * e * e * Q2 * Q - R ** 6 * 4 * t ** 4
        dQ = s * 4 - R * s * 6 * t * t
        Ge = s * e * e * Q2 * Q + D2 * e * Q2 * Q * 2 + D2 * e * e * Q2 * dQ * 3 - R ** 5 * s * 24 * t ** 4
        e = (e - G.truncate(n) * Ge.truncate(n).reciprocal()).truncate(n)
    D2 = (s * e + 4 * mu).truncate(n + 1)
    S = (s * e * (t * (s * e * 3 + 8 * mu)).reciprocal()).truncate(n + 1)
    first, second = _rna_residuals(S, D2, n + 1)
    _assert_vanishes(first.truncate(n + 1), "first branch-point equation")
    _assert_vanishes(second.truncate(n + 2), "second branch-point equation")
    return BranchSeries(sigma=(S * t).truncate(n), delta_sq=(D2 * t * t).truncate(n), e=e)


def _leading_sign(f) -> int:
    """Sign of the lowest z-power coefficient of f at u = 1."""
    z = sp.Symbol("z")
    expr = sp.together(f.as_expr().subs(sp.Symbol("u"), 1))
    lead = sp.series(expr, z, 0, _z_valuation(f) + 1).removeO()
    c = sp.Poly(lead * z ** (-_z_valuation(f)), z).as_expr() if lead != 0 else 0
    return 1 if c > 0 else -1


def rna_curve(order_s: int) -> OneCutCurve:
    """The RNA one-cut curve with M(x) = (x - alpha_1)(x - alpha_2)(x - 1/t)^-2."""
    br = rna_branch_series(order_s)
    n = order_s
    t, mu = T_K, MU_K
    inv_t = 1 / t
    S = br.sigma * inv_t
    D2 = br.delta_sq * (inv_t * inv_t)
    # D = (a - b)/2 < 0
    D = -_series_sqrt(D2, 2 * U)
    sig, dsq = br.sigma, br.delta_sq
    eta = sig * (4 - 4 * dsq - 7 * sig + 3 * sig * sig) * (sig - 1).reciprocal()
    c0 = (2 - sig) * (inv_t * K(QQ(1, 2)))
    r2 = -eta * (inv_t * inv_t * K(QQ(1, 4)))
    pair = RootPair(total=c0 * 2, product=(c0 * c0 - r2).truncate(n), m=1)
    pole = Root(alpha=_const_series(inv_t, n), m=-2)
    return OneCutCurve(a=(S + D).truncate(n), b=(S - D).truncate(n), c=K.one, factors=(pair, pole))


# ---------------------------------------------------------------------------
# expansion in t


def _catalan_z(order: int) -> Series:
    """z = u t C(mu t^2) as a t-series with ParamPoly coefficients."""
    cs: List = [0] * (order + 1)
    cat, k = 1, 0
    while 2 * k + 1 <= order:
        cs[2 * k + 1] = ParamPoly.monomial(cat, u=2 * k + 1)
        cat = cat * 2 * (2 * k + 1) // (k + 2)
        k += 1
    return Series("t", cs, order, 0)


def _poly_in_t(poly, zs: Series, order: int) -> Series:
    out = Series("t", [], order, 0)
    powers = {0: Series("t", [ParamPoly.const(1)], order, 0)}
    for (i, j), c in poly.terms():
        if i not in powers:
            powers[i] = zs ** i
        coeff = ParamPoly.monomial(Fraction(int(c.numerator), int(c.denominator)), u=j)
        out = out + powers[i] * coeff
    return out


def expand_in_t(f, order_t: int) -> Series:
    """Expand f in Q(z, u) as a t-series through t^order_t; coefficients in mu (and u)."""
    if not f:
        return Series("t", [], order_t, 0)
    dv = min(m[0] for m in f.denom.itermonoms())
    work = order_t + 2 * dv + 2
    zs = _catalan_z(work)
    num = _poly_in_t(f.numer, zs, work)
    den = _poly_in_t(f.denom, zs, work)
    out = (num / den).map(lambda c: ParamPoly.coerce(c).normalize_u())
    if out.order < order_t:
        raise ArithmeticError("insufficient t-precision")
    return out.truncate(order_t)


def klein_generating_series(order_s: int, order_t: int) -> Series:
    """F_{1,0} + F_{0,2} of the RNA curve as an s-series of t-series (s^0 part dropped)."""
    curve = rna_curve(order_s)
    pts = s_points(curve)
    for p in pts:
        if not check_s_point(curve, p):
            raise BranchError(f"s-point identity fails for {p.factor}")
    val = klein_part(curve, pts)
    coeffs = [Series("t", [], order_t, 0)] + [expand_in_t(val.coefficient(b), order_t) for b in range(1, order_s + 1)]
    return Series(S_VAR, coeffs, order_s, 0)


def series_counts(ser: Series, b: int, order_t: int, chi: int) -> List[int]:
    """Integers c_k with [s^b t^(2k)] ser = c_k mu^(k - chi) / b!."""
    tser = ser[b]
    out = []
    for k in range(order_t // 2 + 1):
        c = ParamPoly.coerce(tser[2 * k])
        val = c * ParamPoly.monomial(factorial(b), mu=chi - k)
        if not val.is_const():
            raise ArithmeticError(f"unexpected mu-grading at s^{b} t^{2 * k}: {c}")
        v = val.const_value()
        if v.denominator != 1:
            raise ArithmeticError(f"non-integer count at s^{b} t^{2 * k}: {v}")
        out.append(int(v))
    for k in range(1, order_t + 1, 2):
        if ParamPoly.coerce(tser[k]):
            raise ArithmeticError(f"odd power t^{k} at s^{b}")
    return out


def klein_counts(b: int, k_max: int) -> List[int]:
    """(C^r_{2,b} - C_{1,b})(k) for k = 0..k_max from the unstable formulas."""
    ser = klein_generating_series(b, 2 * k_max)
    return series_counts(ser, b, 2 * k_max, b)


UNSTABLE_KEYS = ((1, 0), (0, 1), (0, 2))


def unstable_ctilde(g: int, l: int, b: int, k_max: int) -> List[int]:
    """C~_{g,l,b}(k) for (g, l) in UNSTABLE_KEYS, read off the RNA-curve unstable terms.

    F_{g,l} carries (-1)^l C~ mu^(k - chi) t^(2k) s^b / b!.  The d/dmu of F_{0,1} loses
    the k = b - 1 term, which vanishes anyway because a single cross-cap needs k >= b.
    """
    if (g, l) not in UNSTABLE_KEYS:
        raise ValueError(f"(g, l) = ({g}, {l}) is not an unstable term")
    curve = rna_curve(b)
    chi = 2 * g - 2 + b + l
    if (g, l) == (1, 0):
        val = f10(curve)
    elif (g, l) == (0, 2):
        val = f02(curve)
    else:
        val = d_f01_dmu(curve)
    ser = Series(S_VAR, [Series("t", [], 2 * k_max, 0)] * b + [expand_in_t(val.coefficient(b), 2 * k_max)],
                 b, 0)
    if (g, l) != (0, 1):
        return series_counts(ser, b, 2 * k_max, chi)
    raw = series_counts(ser, b, 2 * k_max, b)  # d/dmu lowers the mu-power by one
    out = []
    for k, v in enumerate(raw):
        w = k - b + 1
        if w == 0:
            if v:
                raise ArithmeticError("nonzero coefficient where the mu-derivative must vanish")
            out.append(0)
            continue
        if v % w:
            raise ArithmeticError(f"mu-derivative coefficient {v} not divisible by {w}")
        out.append(-v // w)
    return out
