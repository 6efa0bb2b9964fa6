"""Command-line interface: ``chordcount count | verify | cache``.

Exit codes: 0 success, 1 verification mismatch, 2 infeasible request, 3 cache or IO error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .cache import CacheError, MemoStore, key_label
from .chordseries import MODES, ChordSeries, combine_ctilde, needed_ctilde

EXIT_OK, EXIT_MISMATCH, EXIT_INFEASIBLE, EXIT_IO = 0, 1, 2, 3
METHODS = ("toprec", "qcurve", "oracle", "klein")


class Infeasible(ValueError):
    """Request outside a method's envelope."""


@dataclass
class RunConfig:
    method: str
    mode: str
    gh_values: List[int]
    b_values: List[int]
    k_max: int
    fmt: str = "text"
    cache_dir: Optional[str] = None
    use_cache: bool = True
    audit: bool = False
    max_chi: int = 5
    max_k: int = 10
    oracle_budget: int = 2_000_000


Entries = Dict[Tuple[int, int, int], int]


def _int_list(text: str) -> List[int]:
    """'2', '1,3' or '1-3'."""
    out: List[int] = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part[1:]:
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    if any(v < 0 for v in out):
        raise argparse.ArgumentTypeError("values must be nonnegative")
    return sorted(set(out))


# ---------------------------------------------------------------------------
# methods


def _max_chi(cfg: RunConfig) -> int:
    return max(2 * g - 2 + b + l for gh in cfg.gh_values for b in cfg.b_values
               for g, l in needed_ctilde(cfg.mode, gh))


def _check_k(cfg: RunConfig, name: str) -> None:
    if cfg.k_max > cfg.max_k:
        raise Infeasible(f"{name}: k <= {cfg.max_k} (requested {cfg.k_max})")


def run_toprec(cfg: RunConfig) -> Entries:
    _check_k(cfg, "toprec")
    chi = _max_chi(cfg)
    if chi > cfg.max_chi:
        raise Infeasible(f"toprec: 2g-2+b+l <= {cfg.max_chi} (requested {chi})")
    store = MemoStore(cfg.cache_dir) if cfg.use_cache else None
    cs = ChordSeries(store.recursion() if store else None)
    out = {}
    for gh in cfg.gh_values:
        for b in cfg.b_values:
            for k, c in enumerate(cs.combine(cfg.mode, gh, b, cfg.k_max)):
                out[(gh, b, k)] = c
    if store:
        store.save(cs.rec.memo)
    return out


QCURVE_MAX_B = 6


def run_qcurve(cfg: RunConfig) -> Entries:
    from .qcurve import ctilde_from_free_energy, solve_hierarchy

    _check_k(cfg, "qcurve")
    b_top = max(cfg.b_values)
    if b_top > QCURVE_MAX_B:
        raise Infeasible(f"qcurve: b <= {QCURVE_MAX_B} (requested {b_top})")
    state = solve_hierarchy(b_top, 2 * cfg.k_max, audit=cfg.audit)

    def ct(g: int, l: int, b: int, k_max: int) -> List[int]:
        return ctilde_from_free_energy(g, l, b, k_max, state).coeffs

    return {(gh, b, k): c for gh in cfg.gh_values for b in cfg.b_values
            for k, c in enumerate(combine_ctilde(ct, cfg.mode, gh, b, cfg.k_max))}


def run_oracle(cfg: RunConfig) -> Entries:
    from .oracle import census, diagram_count

    twisted = cfg.mode != "orientable"
    for b in cfg.b_values:
        if b < 1:
            raise Infeasible("oracle: b >= 1")
        cost = sum(diagram_count(b, k, twisted) for k in range(cfg.k_max + 1))
        if cost > cfg.oracle_budget:
            raise Infeasible(f"oracle: (b={b}, k<={cfg.k_max}) needs {cost} diagrams, "
                             f"budget {cfg.oracle_budget} (raise with --oracle-budget)")
    out = {}
    for b in cfg.b_values:
        for k in range(cfg.k_max + 1):
            cc = census(b, k, twisted, budget=cfg.oracle_budget)
            table = {"orientable": cc.orientable_by_genus,
                     "nonoriented": cc.nonoriented_by_crosscap,
                     "nonorientable-only": cc.nonorientable_by_crosscap}[cfg.mode]()
            for gh in cfg.gh_values:
                out[(gh, b, k)] = table.get(gh, 0)
    return out


KLEIN_MAX_B = 4


def run_klein(cfg: RunConfig) -> Entries:
    from .unstable import UNSTABLE_KEYS, unstable_ctilde

    _check_k(cfg, "klein")
    for gh in cfg.gh_values:
        keys = [(g, l) for g, l in needed_ctilde(cfg.mode, gh)]
        if any(k not in UNSTABLE_KEYS for k in keys):
            raise Infeasible("klein: only classes built from the unstable terms "
                             "(orientable genus 1, cross-caps 1 and 2)")
    if max(cfg.b_values) > KLEIN_MAX_B or min(cfg.b_values) < 1:
        raise Infeasible(f"klein: 1 <= b <= {KLEIN_MAX_B}")
    return {(gh, b, k): c for gh in cfg.gh_values for b in cfg.b_values
            for k, c in enumerate(combine_ctilde(unstable_ctilde, cfg.mode, gh, b, cfg.k_max))}


RUNNERS: Dict[str, Callable[[RunConfig], Entries]] = {
    "toprec": run_toprec, "qcurve": run_qcurve, "oracle": run_oracle, "klein": run_klein,
}


# ---------------------------------------------------------------------------
# rendering


def render(cfg: RunConfig, entries: Entries) -> str:
    keys = sorted(entries)
    if cfg.fmt == "json":
        doc = {"method": cfg.method, "mode": cfg.mode,
               "entries": [{"g_or_h": gh, "b": b, "k": k, "count": str(entries[(gh, b, k)])}
                           for gh, b, k in keys]}
        return json.dumps(doc, indent=2) + "\n"
    if cfg.fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["g_or_h", "b", "k", "count"])
        for gh, b, k in keys:
            w.writerow([gh, b, k, entries[(gh, b, k)]])
        return buf.getvalue()
    label = "genus" if cfg.mode == "orientable" else "cross-caps"
    lines = [f"# method={cfg.method} mode={cfg.mode}"]
    for gh in cfg.gh_values:
        for b in cfg.b_values:
            lines.append(f"{label}={gh} b={b}")
            for k in range(cfg.k_max + 1):
                lines.append(f"  k={k:<3d} {entries[(gh, b, k)]}")
    return "\n".join(lines) + "\n"


def cmd_count(cfg: RunConfig, out=None, err=None) -> int:
    out, err = out or sys.stdout, err or sys.stderr
    if cfg.method != "all":
        entries = RUNNERS[cfg.method](cfg)
        out.write(render(cfg, entries))
        return EXIT_OK
    results: Dict[str, Entries] = {}
    for name in METHODS:
        try:
            results[name] = RUNNERS[name](cfg)
        except Infeasible as exc:
            err.write(f"skipped {exc}\n")
    if not results:
        raise Infeasible("no method covers this request")
    names = sorted(results)
    ref = results[names[0]]
    bad = [(key, {n: results[n][key] for n in names}) for key in sorted(ref)
           if len({results[n][key] for n in names}) > 1]
    for key, vals in bad:
        err.write(f"MISMATCH (g_or_h,b,k)={key}: {vals}\n")
    err.write(f"methods compared: {', '.join(names)}\n")
    out.write(render(cfg, ref))
    return EXIT_MISMATCH if bad else EXIT_OK


# ---------------------------------------------------------------------------
# verify


def cmd_verify(fixture: Optional[str], no_oracle: bool, chi_max: int, k_max: int,
               out=None) -> int:
    from . import verification as v

    out = out or sys.stdout
    if fixture == "appendix-a":
        checks = v.census_checks()
    elif fixture == "appendix-c":
        checks = v.phase_checks(("G", "S", "F"))
    else:
        cs = ChordSeries()
        checks = v.qcurve_checks(chi_max, k_max, cs)
        checks += v.printed_count_checks(cs)
        checks += v.sum_rule_checks(6, cs)
        checks += v.klein_checks(3, 4, cs)
        checks += v.census_checks()
        if not no_oracle:
            checks += v.oracle_checks(cs=cs)
    for c in checks:
        out.write(c.line() + "\n")
    failed = sum(not c.ok for c in checks)
    out.write(f"{len(checks) - failed} passed, {failed} failed\n")
    return EXIT_MISMATCH if failed else EXIT_OK


# ---------------------------------------------------------------------------
# cache


def cmd_cache(action: str, cache_dir: Optional[str], out=None) -> int:
    out = out or sys.stdout
    store = MemoStore(cache_dir)
    if action == "list":
        keys = store.keys()
        for key in keys:
            out.write(key_label(key) + "\n")
        out.write(f"{len(keys)} entries in {store.path}\n")
        return EXIT_OK
    if action == "validate":
        bad = store.validate()
        n = len(store.keys())
        for key, diff in bad:
            out.write(f"STALE {key_label(key)}\n{diff}\n")
        out.write(f"{n - len(bad)} of {n} entries valid\n")
        return EXIT_IO if bad else EXIT_OK
    removed = store.clear()
    out.write(("removed " if removed else "nothing to remove at ") + f"{store.path}\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="chordcount", description="Count connected chord diagrams by topology.")
    p.add_argument("--cache-dir", help="recursion memo directory (default: $CHORDCOUNT_CACHE_DIR)")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", help="print a table of counts")
    c.add_argument("--mode", choices=MODES, default="orientable")
    gh = c.add_mutually_exclusive_group()
    gh.add_argument("--genus", type=_int_list, help="genus (orientable mode), e.g. 1 or 0-2")
    gh.add_argument("--crosscap", type=_int_list, help="cross-cap number (other modes)")
    c.add_argument("--backbones", type=_int_list, default=[1])
    c.add_argument("--max-chords", type=int, default=6)
    c.add_argument("--method", choices=METHODS + ("all",), default="toprec")
    c.add_argument("--format", choices=("text", "json", "csv"), default="text")
    c.add_argument("--no-cache", action="store_true", help="do not read or write the memo")
    c.add_argument("--audit", action="store_true", help="audit the hierarchy solution (qcurve)")
    c.add_argument("--max-chi", type=int, default=5)
    c.add_argument("--max-k", type=int, default=10)
    c.add_argument("--oracle-budget", type=int, default=2_000_000)

    v = sub.add_parser("verify", help="cross-check the pipelines")
    v.add_argument("--fixture", choices=("appendix-a", "appendix-c"),
                   help="appendix-a: census values at (b,k)=(1,3); appendix-c: phase-function tables")
    v.add_argument("--no-oracle", action="store_true")
    v.add_argument("--max-chi", type=int, default=4)
    v.add_argument("--max-chords", type=int, default=8)

    k = sub.add_parser("cache", help="maintain the recursion memo")
    k.add_argument("action", choices=("list", "validate", "clear"))
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "count":
            if args.mode == "orientable" and args.crosscap is not None:
                raise Infeasible("orientable mode takes --genus")
            if args.mode != "orientable" and args.genus is not None:
                raise Infeasible(f"{args.mode} mode takes --crosscap")
            if args.max_chords < 0:
                raise Infeasible("--max-chords must be >= 0")
            cfg = RunConfig(method=args.method, mode=args.mode,
                            gh_values=args.genus or args.crosscap or [0],
                            b_values=args.backbones, k_max=args.max_chords, fmt=args.format,
                            cache_dir=args.cache_dir, use_cache=not args.no_cache, audit=args.audit,
                            max_chi=args.max_chi, max_k=args.max_k, oracle_budget=args.oracle_budget)
            if min(cfg.b_values) < 1:
                raise Infeasible("--backbones must be >= 1")
            return cmd_count(cfg)
        if args.command == "verify":
            return cmd_verify(args.fixture, args.no_oracle, args.max_chi, args.max_chords)
        return cmd_cache(args.action, args.cache_dir)
    except Infeasible as exc:
        sys.stderr.write(f"infeasible request: {exc}\n")
        return EXIT_INFEASIBLE
    except (CacheError, OSError) as exc:
        sys.stderr.write(f"cache/IO error: {exc}\n")
        return EXIT_IO


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
