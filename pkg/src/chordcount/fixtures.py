"""Loaders for the printed reference data shipped in ``chordcount/data``."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from .algebra import ParamPoly

DATA = Path(__file__).with_name("data")


@dataclass
class FixtureTerm:
    k: int
    expected: ParamPoly
    printed: Optional[str] = None  # literal printed form when annotated
    note: str = ""

    @property
    def annotated(self) -> bool:
        return self.printed is not None


@dataclass
class FixtureSeries:
    name: str  # G (Gaussian, x^-p), S (phase coefficient), F (free energy)
    b: int
    p: int
    order: int
    terms: Dict[int, FixtureTerm] = field(default_factory=dict)

    def expected(self, k: int) -> ParamPoly:
        t = self.terms.get(k)
        return t.expected if t else ParamPoly()


@lru_cache(maxsize=None)
def phase_fixtures() -> Tuple[FixtureSeries, ...]:
    out: List[FixtureSeries] = []
    cur: Optional[FixtureSeries] = None
    for raw in (DATA / "phase_fixtures.txt").read_text().splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("series "):
            _, name, b, p, order = line.split()
            cur = FixtureSeries(name, int(b), int(p), int(order))
            out.append(cur)
            continue
        head, expected, printed, note = (s.strip() for s in line.split("|"))
        k = int(head.split()[1])
        assert cur is not None
        cur.terms[k] = FixtureTerm(k, ParamPoly.parse(expected), printed or None, note)
    return tuple(out)


@lru_cache(maxsize=None)
def count_fixtures() -> Dict[Tuple[str, int, int], Tuple[int, ...]]:
    out = {}
    for raw in (DATA / "count_fixtures.txt").read_text().splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, vals = line.split(":")
        mode, gh, b = head.split()
        out[(mode, int(gh), int(b))] = tuple(int(v) for v in vals.split())
    return out


@lru_cache(maxsize=None)
def closed_forms() -> Dict[Tuple[int, int, int], str]:
    out = {}
    for raw in (DATA / "ctilde_closed_forms.txt").read_text().splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, expr = line.split(":")
        g, l, b = (int(v) for v in head.split())
        out[(g, l, b)] = expr.strip()
    return out


def closed_form_series(g: int, l: int, b: int, k_max: int) -> List[int]:
    """Taylor coefficients of a printed closed form, expanded independently with sympy."""
    import sympy as sp

    w = sp.Symbol("w")
    expr = sp.sympify(closed_forms()[(g, l, b)], locals={"w": w})
    ser = sp.series(expr, w, 0, k_max + 1).removeO()
    poly = sp.Poly(sp.expand(ser), w)
    out = []
    for k in range(k_max + 1):
        c = poly.coeff_monomial(w ** k)
        if not c.is_integer:
            raise ValueError(f"non-integer closed-form coefficient {c}")
        out.append(int(c))
    return out


# Census values from the one-backbone, three-chord enumeration
CENSUS_1_3 = {"h1": 22, "h2_nonorientable": 42, "b": 1, "k": 3}
