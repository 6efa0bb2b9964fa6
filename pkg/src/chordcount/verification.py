"""Cross-checks between the independent pipelines and the shipped reference data."""
from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Iterable, List, Optional, Sequence, Tuple

from .algebra import ParamPoly
from .chordseries import MODES, ChordSeries
from .fixtures import CENSUS_1_3, closed_form_series, closed_forms, count_fixtures, phase_fixtures
from .oracle import census
from .qcurve import HierarchyState, ctilde_from_free_energy, free_energy, gaussian_S0, solve_hierarchy


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        tail = f"  ({self.detail})" if self.detail else ""
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}{tail}"


def _cmp(name: str, got: Sequence[int], want: Sequence[int]) -> Check:
    if list(got) == list(want):
        return Check(name, True)
    bad = next(i for i, (a, b) in enumerate(zip(got, want)) if a != b) if len(got) == len(want) else -1
    return Check(name, False, f"got {list(got)} want {list(want)} first diff at k={bad}")


def printed_count_checks(cs: Optional[ChordSeries] = None, modes: Iterable[str] = ("orientable", "nonoriented")
                         ) -> List[Check]:
    cs = cs or ChordSeries()
    out = []
    for (mode, gh, b), want in sorted(count_fixtures().items()):
        if mode not in modes:
            continue
        got = cs.combine(mode, gh, b, len(want) - 1)
        out.append(_cmp(f"printed {mode} gh={gh} b={b}", got, want))
    return out


def closed_form_checks(k_max: int = 6, cs: Optional[ChordSeries] = None) -> List[Check]:
    cs = cs or ChordSeries()
    out = []
    for (g, l, b) in sorted(closed_forms()):
        got = cs.extract_ctilde(b, g, l, k_max).coeffs
        out.append(_cmp(f"closed form C~[{g},{l},{b}]", got, closed_form_series(g, l, b, k_max)))
    return out


def ctilde_keys(chi_max: int) -> List[Tuple[int, int, int]]:
    """(g, l, b) with b >= 1 and -1 <= 2g - 2 + b + l <= chi_max."""
    out = []
    for b in range(1, chi_max + 3):
        for g in range(0, chi_max // 2 + 2):
            for l in range(0, chi_max + 2):
                if -1 <= 2 * g - 2 + b + l <= chi_max:
                    out.append((g, l, b))
    return sorted(out, key=lambda k: (2 * k[0] - 2 + k[2] + k[1], k))


def qcurve_checks(chi_max: int = 4, k_max: int = 6, cs: Optional[ChordSeries] = None,
                  state: Optional[HierarchyState] = None) -> List[Check]:
    cs = cs or ChordSeries()
    keys = ctilde_keys(chi_max)
    b_max = max(b for _, _, b in keys)
    state = state or solve_hierarchy(b_max, 2 * k_max)
    out = []
    for g, l, b in keys:
        a = ctilde_from_free_energy(g, l, b, k_max, state).coeffs
        c = cs.extract_ctilde(b, g, l, k_max).coeffs
        out.append(_cmp(f"qcurve vs toprec C~[{g},{l},{b}]", a, c))
    return out


def _fixture_value(state: HierarchyState, s0, name: str, b: int, p: int, k: int) -> ParamPoly:
    if name == "G":
        return s0.get(k, ParamPoly())
    if name == "S":
        return state.get(b, p, k)
    raise ValueError(name)


def phase_checks(names: Sequence[str] = ("G", "S"), state: Optional[HierarchyState] = None) -> List[Check]:
    """Shipped phase-function and free-energy terms against the hierarchy.

    An annotated term passes when the computed value equals the corrected entry and
    differs from the literal printed form.
    """
    fx = [f for f in phase_fixtures() if f.name in names]
    order = max(f.order for f in fx)
    state = state or solve_hierarchy(3, order)
    s0 = gaussian_S0(order + 2)
    out = []
    energies = {}
    for f in fx:
        label = f"{f.name}[{f.b},{f.p}]" if f.name == "S" else f"{f.name}{f.b}" if f.name == "F" else "Gaussian"
        for k in range(f.order + 1):
            if f.name == "F":
                if f.b not in energies:
                    energies[f.b] = free_energy(f.b, f.order, state)
                got = ParamPoly.coerce(energies[f.b][k])
            else:
                got = _fixture_value(state, s0, f.name, f.b, f.p, k)
            want = f.expected(k)
            term = f.terms.get(k)
            name = f"{label} order {k}"
            if got != want:
                out.append(Check(name, False, f"computed {got}, expected {want}"))
            elif term is not None and term.annotated:
                lit_k, lit = printed_literal(term.printed, k)
                contradicts = lit_k != k or ParamPoly.parse(lit) != got
                out.append(Check(name, contradicts, f"annotated: {term.note}"))
            elif term is not None:
                out.append(Check(name, True))
    return out


def printed_literal(text: str, k: int) -> Tuple[int, str]:
    """Split an annotation into (printed order, printed expression); 'k=3: expr' moves the order."""
    if text.startswith("k=") and ":" in text:
        head, expr = text.split(":", 1)
        return int(head[2:]), expr.strip()
    return k, text


def annotated_terms(names: Sequence[str] = ("S", "F")) -> List[Tuple[str, int, int, int, str, str]]:
    """(name, b, p, k, printed literal, note) for every annotated fixture term."""
    out = []
    for f in phase_fixtures():
        if f.name not in names:
            continue
        for k, term in sorted(f.terms.items()):
            if term.annotated:
                out.append((f.name, f.b, f.p, k, term.printed, term.note))
    return out


def _double_factorial(n: int) -> int:
    return prod(range(n, 0, -2)) if n > 0 else 1


def sum_rule_checks(k_max: int = 6, cs: Optional[ChordSeries] = None) -> List[Check]:
    cs = cs or ChordSeries()
    out = []
    ori = [0] * (k_max + 1)
    for g in range(k_max // 2 + 1):
        ori = [a + c for a, c in zip(ori, cs.combine("orientable", g, 1, k_max))]
    out.append(_cmp("sum over genus, b=1", ori, [_double_factorial(2 * k - 1) for k in range(k_max + 1)]))
    non = [0] * (k_max + 1)
    for h in range(k_max + 1):
        non = [a + c for a, c in zip(non, cs.combine("nonoriented", h, 1, k_max))]
    out.append(_cmp("sum over cross-caps, b=1", non,
                    [2 ** k * _double_factorial(2 * k - 1) for k in range(k_max + 1)]))
    return out


ORACLE_GRID: Tuple[Tuple[int, int], ...] = tuple(
    [(1, k) for k in range(1, 7)] + [(2, k) for k in range(1, 5)] + [(3, k) for k in range(1, 4)])


def oracle_checks(grid: Sequence[Tuple[int, int]] = ORACLE_GRID, cs: Optional[ChordSeries] = None
                  ) -> List[Check]:
    """Every genus / cross-cap class of the census against the recursion pipeline."""
    cs = cs or ChordSeries()
    out = []
    for b, k in grid:
        plain = census(b, k, twisted=False)
        twisted = census(b, k, twisted=True)
        tables = {
            "orientable": plain.orientable_by_genus(),
            "orientable (twisted census)": twisted.orientable_by_genus(),
            "nonoriented": twisted.nonoriented_by_crosscap(),
            "nonorientable-only": twisted.nonorientable_by_crosscap(),
        }
        for label, table in tables.items():
            mode = "orientable" if label.startswith("orientable") else label
            # chi = b - k + n >= b - k + 1 bounds the cross-cap number by k - b + 1
            h_max = max(k - b + 1, 0)
            classes = range(0, (h_max // 2 if mode == "orientable" else h_max) + 1)
            got = [table.get(c, 0) for c in classes]
            want = [cs.combine(mode, c, b, k)[k] for c in classes]
            extra = sorted(set(table) - set(classes))
            ok = got == want and not extra
            out.append(Check(f"oracle {label} b={b} k={k}", ok,
                             "" if ok else f"census {dict(table)} pipeline {dict(zip(classes, want))}"))
    return out


def census_checks() -> List[Check]:
    t = census(CENSUS_1_3["b"], CENSUS_1_3["k"], twisted=True)
    h1 = t.nonoriented_by_crosscap().get(1, 0)
    h2 = t.nonorientable_by_crosscap().get(2, 0)
    return [
        Check("census cross-cap 1 at (b,k)=(1,3)", h1 == CENSUS_1_3["h1"], f"{h1}"),
        Check("census non-orientable cross-cap 2 at (b,k)=(1,3)", h2 == CENSUS_1_3["h2_nonorientable"], f"{h2}"),
    ]


def klein_checks(b_max: int = 3, k_max: int = 4, cs: Optional[ChordSeries] = None) -> List[Check]:
    from .unstable import klein_counts

    cs = cs or ChordSeries()
    out = []
    for b in range(1, b_max + 1):
        out.append(_cmp(f"Klein bottle b={b}", klein_counts(b, k_max),
                        cs.combine("nonorientable-only", 2, b, k_max)))
    return out


__all__ = ["Check", "MODES", "ORACLE_GRID", "census_checks", "annotated_terms", "closed_form_checks",
           "ctilde_keys", "klein_checks", "oracle_checks", "phase_checks", "printed_count_checks",
           "qcurve_checks", "sum_rule_checks"]
