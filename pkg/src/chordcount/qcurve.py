"""Coefficient hierarchy of the RNA quantum curve and the resulting free energies.

The phase function is S = -(2 mu / e2) log x + sum_{b,p,k} S[b,p,k] s^b x^-p t^k.
Multiplying its PDE by (1 - t x)^2 and reading off s^b x^-p t^k gives one relation
per (b, p, k); it is divided by -e2 so that the b = 1 instances match the usual
printed normalization (leading term 2(p+2) S[b,p+2,k-2]).

Solving schedule for b >= 1, level M = p + k ascending:
  * q = M - b down to 1: the relation at (p=q, k=M-q) pins S[b,q,M-q] through its
    2q S[b,q,k] term (all other same-level entries have larger q);
  * the p = 0 relation at k = M pins S[b,0,M-2] through -e1 (M - 2 + 2b);
  * the p = -1 relation is then a pure consistency check (audited).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Dict, Iterable, List, Optional, Tuple

from .algebra import ParamPoly, Series
from .chordseries import CtildeSeries

Key = Tuple[int, int, int]  # (b, p, k)
Mono = Tuple[Key, ...]  # product of unknowns, sorted; () is the constant term

MU = ParamPoly.gen("mu")
E1 = ParamPoly.gen("e1")
E2 = ParamPoly.gen("e2")
HBAR = ParamPoly.gen("hbar")
GAMMA = ParamPoly.gen("gamma")
LOG_D = -2 * MU / E2  # x d/dx of the log term of S_0


class HierarchyError(RuntimeError):
    """Inconsistent or underdetermined hierarchy."""


def gaussian_S0(p_max: int) -> Dict[int, ParamPoly]:
    """S[0,p] for 0 < p <= p_max (odd ones vanish).

    Recursion from the Gaussian ODE; note the +4 mu (p-1) sign, which the ODE forces.
    """
    out: Dict[int, ParamPoly] = {p: ParamPoly() for p in range(1, p_max + 1)}
    if p_max >= 2:
        out[2] = MU * (2 * MU + E2) / (2 * E2)
    for half in range(2, p_max // 2 + 1):
        acc = (E2 * ((half - 1) * (2 * half - 1)) + MU * (4 * (half - 1))) * out[2 * half - 2]
        for q in range(1, half - 1):
            acc = acc + E2 * (2 * q * (half - q - 1)) * out[2 * q] * out[2 * half - 2 * q - 2]
        out[2 * half] = acc * Fraction(1, 2 * half)
    return out


@dataclass
class Relation:
    """sum_mono coeff * prod(S[key]) = 0; unknowns of backbone 0 are already substituted."""

    b: int
    p: int
    k: int
    terms: Dict[Mono, ParamPoly] = field(default_factory=dict)

    def add(self, mono: Iterable[Key], coeff) -> None:
        coeff = ParamPoly.coerce(coeff)
        if not coeff:
            return
        m = tuple(sorted(mono))
        v = self.terms.get(m, ParamPoly()) + coeff
        if v:
            self.terms[m] = v
        else:
            self.terms.pop(m, None)

    def keys(self) -> set:
        return {key for m in self.terms for key in m}

    def coefficient_of(self, key: Key) -> ParamPoly:
        return self.terms.get((key,), ParamPoly())

    def evaluate(self, values: Dict[Key, ParamPoly], skip: Optional[Key] = None) -> ParamPoly:
        acc = ParamPoly()
        for m, c in self.terms.items():
            if skip is not None and m == (skip,):
                continue
            t = c
            for key in m:
                t = t * values[key]
            acc = acc + t
        return acc

    def __str__(self) -> str:
        parts = []
        for m, c in sorted(self.terms.items()):
            mon = "*".join(f"S[{b},{p},{k}]" for b, p, k in m) or "1"
            parts.append(f"({c})*{mon}")
        return " + ".join(parts) + " = 0"


class _Phase:
    """Lookup of S[b,p,k] as a symbolic key, a known Gaussian constant, or zero."""

    def __init__(self, s0: Dict[int, ParamPoly]):
        self.s0 = s0

    def entry(self, b: int, p: int, k: int):
        """Returns (coeff, mono) with the entry equal to coeff * prod(mono), or None if zero."""
        if p < 0 or k < 0:
            return None
        if b == 0:
            if k != 0 or p == 0:
                return None
            v = self.s0.get(p)
            if v is None:
                raise HierarchyError(f"Gaussian coefficient S[0,{p}] not available")
            return (v, ()) if v else None
        if k < b:
            return None
        return ParamPoly.const(1), ((b, p, k),)

    def deriv(self, b: int, q: int, k: int):
        """Coefficient of x^(-q-1) t^k in dS_b/dx (the log term counts at q = 0)."""
        if b == 0 and q == 0 and k == 0:
            return LOG_D, ()
        e = self.entry(b, q, k)
        if e is None or q == 0:
            return None
        return e[0] * (-q), e[1]


def instantiate_equation(b: int, p: int, k: int, s0: Optional[Dict[int, ParamPoly]] = None) -> Relation:
    """Relation from the s^b x^-p t^k coefficient of the quantum-curve PDE, b >= 1, p >= -1."""
    if b < 1 or p < -1 or k < 0:
        raise ValueError(f"relation index out of range: {(b, p, k)}")
    if s0 is None:
        s0 = gaussian_S0(p + 4)
    S = _Phase(s0)
    rel = Relation(b, p, k)
    acc: Dict[Mono, ParamPoly] = {}

    def put(entry, coeff) -> None:
        if entry is None:
            return
        c, mono = entry
        v = c * coeff
        if v:
            m = tuple(sorted(mono))
            acc[m] = acc.get(m, ParamPoly()) + v

    # (1 - t x)^2 = sum_i w_i t^i x^i
    square = ((0, 1), (1, -2), (2, 1))
    for i, w in square:
        # e2^2 (1-tx)^2 S_b''
        q = p + i - 2
        e = S.entry(b, q, k - i)
        if e is not None:
            put(e, E2 * E2 * (w * q * (q + 1)))
        # e2^2 (1-tx)^2 sum_a S_a' S_{b-a}'
        r = p + i - 2  # x^(-r-2) of the product
        for a in range(b + 1):
            for q1 in range(r + 1):
                q2 = r - q1
                for j in range(k - i + 1):
                    d1 = S.deriv(a, q1, j)
                    if d1 is None:
                        continue
                    d2 = S.deriv(b - a, q2, k - i - j)
                    if d2 is None:
                        continue
                    put((d1[0] * d2[0], d1[1] + d2[1]), E2 * E2 * w)
        # 2 e2 x (1-tx)^2 S_b'
        d = S.deriv(b, p + i, k - i)
        if d is not None:
            put(d, E2 * (2 * w))
    # -2 e2 t S_{b-1}'
    put(S.deriv(b - 1, p - 1, k - 1), E2 * (-2))
    # source -4 mu t^2 (2 - t x) at b = 1
    if b == 1:
        if p == 0 and k == 2:
            put((ParamPoly.const(1), ()), MU * (-8))
        if p == -1 and k == 3:
            put((ParamPoly.const(1), ()), MU * 4)
    # e1 e2 b t^2 (2 - t x) S_b  and  e1 e2 t^3 (1 - t x) dS_b/dt
    put(S.entry(b, p, k - 2), E1 * E2 * (2 * b + (k - 2)))
    put(S.entry(b, p + 1, k - 3), E1 * E2 * (-(b + (k - 3))))
    scale = (-E2).inverse()
    for m, v in acc.items():
        rel.add(m, v * scale)
    return rel


@dataclass
class HierarchyState:
    b_max: int
    k_max: int  # t-degree bound of the S[b,0,.] columns
    level_max: int
    s0: Dict[int, ParamPoly]
    values: Dict[Key, ParamPoly] = field(default_factory=dict)
    audit_log: List[str] = field(default_factory=list)

    def get(self, b: int, p: int, k: int) -> ParamPoly:
        if b == 0:
            if k:
                return ParamPoly()
            return self.s0.get(p, ParamPoly()) if p else ParamPoly()
        return self.values.get((b, p, k), ParamPoly())

    def series(self, b: int, p: int) -> Series:
        order = self.level_max - p
        return Series("t", [self.get(b, p, k) for k in range(order + 1)], order)


def _entry_known(state: HierarchyState, key: Key) -> bool:
    b, p, k = key
    return k < b or key in state.values


def solve_hierarchy(b_max: int, k_max: int, audit: bool = True) -> HierarchyState:
    """All S[b,p,k] with b <= b_max, p + k <= k_max + 2 (S[b,0,k] for k <= k_max)."""
    level_max = k_max + 2
    s0 = gaussian_S0(level_max + 4)
    st = HierarchyState(b_max, k_max, level_max, s0)
    for b in range(1, b_max + 1):
        for M in range(b, level_max + 1):
            for q in range(M - b, 0, -1):
                _pin(st, instantiate_equation(b, q, M - q, s0), (b, q, M - q))
            if M - 2 >= b:
                _pin(st, instantiate_equation(b, 0, M, s0), (b, 0, M - 2))
            elif M - 2 >= 0:
                st.values[(b, 0, M - 2)] = ParamPoly()
    # entries below the support k >= b are zero and never stored
    st.values = {key: v for key, v in st.values.items() if key[2] >= key[0]}
    if audit:
        audit_hierarchy(st)
    return st


def _pin(st: HierarchyState, rel: Relation, key: Key) -> None:
    coeff = rel.coefficient_of(key)
    unknown = [k for k in rel.keys() if k != key and not _entry_known(st, k)]
    if unknown:
        raise HierarchyError(f"schedule bug: {key} pinned with unknowns {sorted(unknown)}")
    vals = {k: st.values.get(k, ParamPoly()) for k in rel.keys()}
    rest = rel.evaluate(vals, skip=key if coeff else None)
    if not coeff:
        if rest:
            raise HierarchyError(f"relation {(rel.b, rel.p, rel.k)} cannot pin {key}: zero pivot")
        st.values.setdefault(key, ParamPoly())
        return
    if not coeff.is_monomial():
        raise HierarchyError(f"non-monomial pivot {coeff} for {key}")
    st.values[key] = -rest / coeff


def audit_hierarchy(st: HierarchyState) -> List[str]:
    """Re-substitute every relation whose entries all lie in the solved range."""
    log: List[str] = []
    for b in range(1, st.b_max + 1):
        for M in range(-1, st.level_max + 1):
            for p in range(-1, M + 1):
                k = M - p
                if k < 0:
                    continue
                rel = instantiate_equation(b, p, k, st.s0)
                keys = rel.keys()
                if any(kb >= 1 and kk >= kb and (kb, kp, kk) not in st.values for kb, kp, kk in keys):
                    continue
                vals = {key: st.values.get(key, ParamPoly()) for key in keys}
                res = rel.evaluate(vals)
                if res:
                    raise HierarchyError(f"relation ({b},{p},{k}) violated: residual {res}")
                log.append(f"ok b={b} p={p} k={k} terms={len(rel.terms)}")
    for (b, p, k), v in st.values.items():
        if (p + k) % 2 and v:
            raise HierarchyError(f"parity violation at S[{b},{p},{k}]")
        if b >= 2 and p == 0 and k <= 2 * b - 3 and v:
            raise HierarchyError(f"S[{b},0,{k}] should vanish")
        for e in v.terms:
            if e[0] or e[4] or e[5]:
                raise HierarchyError(f"unexpected generator in S[{b},{p},{k}]")
    st.audit_log = log
    return log


def swap_eps(x: ParamPoly) -> ParamPoly:
    return ParamPoly({e[:2] + (e[3], e[2]) + e[4:]: c for e, c in x.terms.items()})


def eps_to_hbar_gamma(x: ParamPoly) -> ParamPoly:
    """Rewrite a symmetric Laurent polynomial in e1, e2 using e1+e2 = -2 hbar gamma, e1 e2 = -4 hbar^2."""
    if swap_eps(x) != x:
        raise HierarchyError(f"not symmetric under e1 <-> e2: {x}")
    if not x:
        return x
    shift = max(max(0, -e[2]) for e in x.terms)
    shift = max(shift, max(max(0, -e[3]) for e in x.terms))
    poly = x * (E1 * E2) ** shift
    s1 = HBAR * GAMMA * (-2)
    s2 = HBAR * HBAR * (-4)
    out = ParamPoly()
    rest = poly
    while rest:
        e = max(rest.terms, key=lambda v: (v[2], v[3]))
        c = rest.terms[e]
        a, bb = e[2], e[3]
        if bb > a:
            raise HierarchyError("symmetric reduction failed")
        base = ParamPoly({e[:2] + (0, 0) + e[4:]: c})
        rest = rest - base * (E1 + E2) ** (a - bb) * (E1 * E2) ** bb
        out = out + base * s1 ** (a - bb) * s2 ** bb
    return out * s2 ** (-shift)


def free_energy(b: int, k_max: int, state: Optional[HierarchyState] = None) -> Series:
    """F_b(mu, hbar, gamma; t) through t^k_max."""
    if state is None or state.b_max < b or state.k_max < k_max:
        state = solve_hierarchy(b, k_max)
    cs = []
    for k in range(k_max + 1):
        v = eps_to_hbar_gamma(state.get(b, 0, k))
        for e in v.terms:
            h, gm = e[4], e[5]
            if (h - gm) % 2:
                raise HierarchyError(f"hbar/gamma grading violated in F_{b} at t^{k}")
        cs.append(v)
    return Series("t", cs, k_max)


def ctilde_from_free_energy(g: int, l: int, b: int, k_max: int,
                            state: Optional[HierarchyState] = None) -> CtildeSeries:
    """Read C~_{g,l,b}(w) off F_b through w^k_max."""
    F = free_energy(b, 2 * k_max, state)
    out = []
    chi = 2 * g - 2 + b + l
    for k in range(k_max + 1):
        c = ParamPoly.coerce(F[2 * k])
        if b == 1 and k == 0:
            c = c + MU * HBAR ** -2
        # (-gamma)^l hbar^(2g-2+l) mu^(k-chi) C_k / b!
        coeff = c.coefficient(mu=k - chi, hbar=2 * g - 2 + l, gamma=l)
        for e, v in c.terms.items():
            gh, gg = e[4], e[5]
            gl = gg
            twice_g = gh - gg + 2
            if twice_g % 2 or twice_g < 0:
                raise HierarchyError(f"grading violation in F_{b} at t^{2 * k}: {c}")
            if e[1] != k - (b - 2 + twice_g + gl):
                raise HierarchyError(f"mu-grading violation in F_{b} at t^{2 * k}: {c}")
        v = coeff * factorial(b) * (-1) ** l
        if v.denominator != 1:
            raise HierarchyError(f"non-integer C~ coefficient {v}")
        out.append(int(v))
    # odd t-powers must vanish
    for n in range(1, 2 * k_max + 1, 2):
        if F[n]:
            raise HierarchyError(f"odd t-power in F_{b}")
    return CtildeSeries(g, l, b, out)
