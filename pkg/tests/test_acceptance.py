"""Acceptance criteria, one PASS/FAIL line each.

Run under pytest (lines appear in the terminal summary) or directly with
``python tests/test_acceptance.py``.
"""
import itertools
import os
import random
import sys
import time
from functools import lru_cache
from typing import Callable, Dict, List, Tuple

import pytest

from chordcount.algebra import ParamPoly, finite_poles, residue_at, residue_at_infinity
from chordcount.chordseries import ChordSeries
from chordcount.fixtures import count_fixtures, phase_fixtures
from chordcount.qcurve import free_energy, gaussian_S0, instantiate_equation, solve_hierarchy
from chordcount.toprec import DiffKey, Recursion, compute_W, full_pattern, keys_up_to
from chordcount.verification import (Check, census_checks, closed_form_checks, klein_checks, oracle_checks,
                                     printed_literal, qcurve_checks, sum_rule_checks)

sys.path.insert(0, os.path.dirname(__file__))
from test_algebra import _random_ratfunc  # noqa: E402

SLOW = os.environ.get("CHORDCOUNT_SLOW") == "1"
RESULTS: Dict[int, str] = {}

# the only annotations the criteria name: (series, b, p, k)
NAMED_S = {("S", 1, 0, 2)}
NAMED_F = {("F", 3, 0, 6)}


@lru_cache(maxsize=None)
def shared_cs() -> ChordSeries:
    return ChordSeries()


@lru_cache(maxsize=None)
def shared_state():
    return solve_hierarchy(6, 12)


def _timed(limit: float, fn: Callable[[], Tuple[bool, str]]) -> Tuple[bool, str]:
    t0 = time.time()
    ok, detail = fn()
    dt = time.time() - t0
    timing = f"{dt:.1f}s, limit {limit:.0f}s"
    return ok and dt < limit, f"{detail}; {timing}" if detail else timing


def _failures(checks: List[Check]) -> Tuple[bool, str]:
    bad = [c for c in checks if not c.ok]
    if bad:
        return False, "; ".join(c.line() for c in bad[:4])
    return True, f"{len(checks)} checks"


def _printed_counts(mode: str) -> Tuple[bool, str]:
    cs = ChordSeries()  # fresh memo so the timing is honest
    checks = []
    for (m, gh, b), want in sorted(count_fixtures().items()):
        if m == mode:
            got = cs.combine(mode, gh, b, len(want) - 1)
            checks.append(Check(f"{mode} gh={gh} b={b}", got == list(want), f"got {got}"))
    return _failures(checks)


def criterion_1():
    return _timed(60, lambda: _printed_counts("orientable"))


def criterion_2():
    return _timed(120, lambda: _printed_counts("nonoriented"))


def criterion_3():
    return _failures(closed_form_checks(6, shared_cs()))


def criterion_4():
    return _timed(600, lambda: _failures(qcurve_checks(4, 6, ChordSeries(), shared_state())))


def _strict_phase(names, named, k_cap=None) -> Tuple[bool, str]:
    """Every printed term must equal the solution, except the named annotations."""
    state = shared_state()
    s0 = gaussian_S0(20)
    energies = {}
    bad, checked = [], 0
    for f in phase_fixtures():
        if f.name not in names:
            continue
        top = f.order if k_cap is None else min(f.order, k_cap)
        for k in range(top + 1):
            if f.name == "G":
                got = s0.get(k, ParamPoly())
            elif f.name == "S":
                got = state.get(f.b, f.p, k)
            else:
                energies.setdefault(f.b, free_energy(f.b, f.order, state))
                got = energies[f.b][k]
            term = f.terms.get(k)
            label = f"{f.name}[{f.b},{f.p}] t^{k}" if f.name != "G" else f"Gaussian x^-{k}"
            checked += 1
            if got != f.expected(k):
                bad.append(f"{label} computed value differs from the corrected entry")
            elif term is not None and term.annotated and (f.name, f.b, f.p, k) not in named:
                lit_k, lit = printed_literal(term.printed, k)
                if ParamPoly.parse(lit) != got or lit_k != k:
                    bad.append(f"{label} as printed contradicts the solution ({term.note})")
    if bad:
        return False, f"{len(bad)} of {checked} terms: " + "; ".join(bad)
    return True, f"{checked} terms"


def criterion_5():
    return _strict_phase(("G", "S"), NAMED_S)


def criterion_6():
    return _strict_phase(("F",), NAMED_F, k_cap=8)


def criterion_7():
    return _timed(300, lambda: _failures(oracle_checks(cs=shared_cs()) + census_checks()))


def criterion_8():
    return _failures(sum_rule_checks(6, shared_cs()))


def criterion_9():
    return _failures(klein_checks(3, 4, shared_cs()))


SLOW_KEYS = {DiffKey(0, 4, 1), DiffKey(0, 5, 0)}


def _residue_suite() -> List[str]:
    rng = random.Random(1234)
    bad = []
    for n in range(100):
        f = _random_ratfunc(rng)
        if sum(residue_at(f, p) for p in finite_poles(f)) + residue_at_infinity(f) != 0:
            bad.append(f"residue sum #{n}")
    return bad


def _differential_suite() -> Tuple[List[str], int]:
    rec = Recursion()
    bodies = {}
    for key in keys_up_to(3):
        if key in SLOW_KEYS and not SLOW:
            continue
        bodies[(key.g, key.h, key.l, "full")] = (key.h, [0] + [i for i, _ in full_pattern(key.h)],
                                                  compute_W(key, rec).body)
    for (g, h, l, pat), body in list(rec.memo.items()) + list(shared_cs().rec.memo.items()):
        ones = [0] + [i + 1 for i, m in enumerate(pat) if m == 1]
        bodies[(g, h, l, pat)] = (h, ones, body)
    bad = []
    for label, (h, free, body) in bodies.items():
        if body.reflect().canonical() != (body if h % 2 == 0 else -body).canonical():
            bad.append(f"parity {label}")
        for i, j in itertools.combinations(free, 2):
            if body.substitute({i: j, j: i}).canonical() != body.canonical():
                bad.append(f"symmetry {label} ({i},{j})")
    return bad, len(bodies)


def _audit_suite() -> Tuple[List[str], int]:
    st = shared_state()
    covered = set()
    for line in st.audit_log:
        _, b, p, k, _ = line.split()
        covered |= instantiate_equation(int(b[2:]), int(p[2:]), int(k[2:]), st.s0).keys()
    missing = [key for key in st.values if key not in covered]
    return [f"unaudited S{key}" for key in missing[:5]], len(st.values)


def _determinism_suite() -> List[str]:
    keys = keys_up_to(2)

    def bodies(order):
        rec = Recursion()
        return {k: rec.body(k.g, k.h, k.l, 0, full_pattern(k.h)).canonical().to_text() for k in order}

    ref = bodies(keys)
    rng = random.Random(99)
    bad = []
    for n in range(3):
        order = keys[:]
        rng.shuffle(order)
        if bodies(order) != ref:
            bad.append(f"memo order #{n}")
    return bad


def criterion_10():
    bad = _residue_suite()
    diff_bad, n_diff = _differential_suite()
    audit_bad, n_solved = _audit_suite()
    bad += diff_bad + audit_bad + _determinism_suite()
    scope = "" if SLOW else "; (0,4,1) and (0,5,0) skipped, set CHORDCOUNT_SLOW=1"
    detail = f"100 residue sums, {n_diff} differentials, {n_solved} audited coefficients{scope}"
    return (not bad), ("; ".join(bad[:4]) if bad else detail)


CRITERIA = {
    1: ("orientable printed series", criterion_1),
    2: ("non-oriented printed series", criterion_2),
    3: ("closed-form C~ fixtures", criterion_3),
    4: ("quantum-curve equivalence", criterion_4),
    5: ("phase-function tables, named annotations only", criterion_5),
    6: ("free energies F1..F3, named annotation only", criterion_6),
    7: ("oracle ground truth", criterion_7),
    8: ("sum rules", criterion_8),
    9: ("Klein-bottle cross-check", criterion_9),
    10: ("property suites", criterion_10),
}


def run_criterion(n: int) -> Tuple[bool, str]:
    name, fn = CRITERIA[n]
    ok, detail = fn()
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {name} ({detail})"
    RESULTS[n] = line
    print(line)
    return ok, line


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n):
    ok, line = run_criterion(n)
    assert ok, line


if __name__ == "__main__":
    outcomes = [run_criterion(n)[0] for n in sorted(CRITERIA)]
    sys.exit(0 if all(outcomes) else 1)
