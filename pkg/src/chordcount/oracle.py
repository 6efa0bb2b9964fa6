"""Exhaustive enumeration of (twisted) chord diagrams.

Sites of all backbones sit on one line, backbone by backbone, with chords drawn
above it.  Every site carries two corners (left, right).  The fattened surface's
boundary is the 2-regular graph on corners made of

  * backbone segments: right corner of a site to the left corner of the next site
    on the same backbone, and the last right corner around the back to the first
    left corner;
  * band sides: for a chord i < j, untwisted bands join iL-jR and iR-jL, twisted
    bands join iL-jL and iR-jR.

Boundary cycles are its connected components.  An empty backbone is a disk with
one boundary cycle.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from math import comb, prod
from typing import Dict, Iterator, List, Sequence, Tuple


class OracleBudgetError(ValueError):
    """The requested enumeration exceeds the configured budget."""


DEFAULT_BUDGET = 10 ** 8


@dataclass(frozen=True)
class ChordDiagram:
    sizes: Tuple[int, ...]  # sites per backbone
    partner: Tuple[int, ...]  # fixed-point-free involution on global site indices
    twists: Tuple[int, ...] = ()  # per chord, in order of the smaller endpoint

    @property
    def b(self) -> int:
        return len(self.sizes)

    @property
    def k(self) -> int:
        return len(self.partner) // 2

    def chords(self) -> List[Tuple[int, int]]:
        return [(i, j) for i, j in enumerate(self.partner) if i < j]

    def encode(self) -> str:
        """'sizes|pairs|twists', e.g. '2,2|0-2,1-3|01'."""
        pairs = ",".join(f"{i}-{j}" for i, j in self.chords())
        tw = "".join(str(t) for t in self.twists)
        return f"{','.join(map(str, self.sizes))}|{pairs}|{tw}"

    @classmethod
    def decode(cls, text: str) -> "ChordDiagram":
        sizes_s, pairs_s, tw = text.split("|")
        sizes = tuple(int(s) for s in sizes_s.split(",")) if sizes_s else ()
        n = sum(sizes)
        partner = [-1] * n
        for pr in filter(None, pairs_s.split(",")):
            i, j = (int(v) for v in pr.split("-"))
            partner[i], partner[j] = j, i
        return cls(sizes, tuple(partner), tuple(int(c) for c in tw))


def compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """Ordered ways to place `total` sites on `parts` labeled backbones (empty allowed)."""
    for cuts in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        out = []
        for c in cuts + (total + parts - 1,):
            out.append(c - prev - 1)
            prev = c
        yield tuple(out)


def matchings(n: int) -> Iterator[Tuple[int, ...]]:
    """All perfect matchings of range(n) as partner tuples."""
    partner = [-1] * n

    def rec() -> Iterator[Tuple[int, ...]]:
        try:
            i = partner.index(-1)
        except ValueError:
            yield tuple(partner)
            return
        for j in range(i + 1, n):
            if partner[j] == -1:
                partner[i], partner[j] = j, i
                yield from rec()
                partner[i] = partner[j] = -1

    if n % 2 == 0:
        yield from rec()


def _double_factorial(n: int) -> int:
    return prod(range(n, 0, -2)) if n > 0 else 1


def diagram_count(b: int, k: int, twisted: bool) -> int:
    return comb(2 * k + b - 1, b - 1) * _double_factorial(2 * k - 1) * (2 ** k if twisted else 1)


def enumerate_diagrams(b: int, k: int, twisted: bool, budget: int = DEFAULT_BUDGET) -> Iterator[ChordDiagram]:
    if b < 1 or k < 0:
        raise ValueError("need b >= 1 and k >= 0")
    est = diagram_count(b, k, twisted)
    if est > budget:
        raise OracleBudgetError(f"(b={b}, k={k}) needs {est} diagrams, budget {budget}")
    ms = list(matchings(2 * k))
    for sizes in compositions(2 * k, b):
        for m in ms:
            if twisted:
                for tw in itertools.product((0, 1), repeat=k):
                    yield ChordDiagram(sizes, m, tw)
            else:
                yield ChordDiagram(sizes, m, (0,) * k)


class _DSU:
    __slots__ = ("p",)

    def __init__(self, n: int):
        self.p = list(range(n))

    def find(self, x: int) -> int:
        p = self.p
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.p[ra] = rb


def _segment_edges(sizes: Sequence[int]) -> List[Tuple[int, int]]:
    edges = []
    start = 0
    for m in sizes:
        for s in range(start, start + m):
            nxt = s + 1 if s + 1 < start + m else start
            edges.append((2 * s + 1, 2 * nxt))  # right corner of s to left corner of next
        start += m
    return edges


def boundary_cycles(d: ChordDiagram) -> int:
    n_sites = len(d.partner)
    dsu = _DSU(2 * n_sites)
    for a, c in _segment_edges(d.sizes):
        dsu.union(a, c)
    for idx, (i, j) in enumerate(d.chords()):
        if d.twists and d.twists[idx]:
            dsu.union(2 * i, 2 * j)
            dsu.union(2 * i + 1, 2 * j + 1)
        else:
            dsu.union(2 * i, 2 * j + 1)
            dsu.union(2 * i + 1, 2 * j)
    cycles = len({dsu.find(x) for x in range(2 * n_sites)})
    return cycles + sum(1 for m in d.sizes if m == 0)


def _backbone_of(sizes: Sequence[int]) -> List[int]:
    return [v for v, m in enumerate(sizes) for _ in range(m)]


def is_connected(d: ChordDiagram) -> bool:
    if d.b == 1:
        return True
    if any(m == 0 for m in d.sizes):
        return False
    owner = _backbone_of(d.sizes)
    dsu = _DSU(d.b)
    for i, j in d.chords():
        dsu.union(owner[i], owner[j])
    return len({dsu.find(v) for v in range(d.b)}) == 1


def is_orientable(d: ChordDiagram) -> bool:
    """True iff backbone flips o_v exist with twist = o_u xor o_v on every chord."""
    owner = _backbone_of(d.sizes)
    colour: Dict[int, int] = {}
    adj: Dict[int, List[Tuple[int, int]]] = {v: [] for v in range(d.b)}
    for idx, (i, j) in enumerate(d.chords()):
        t = d.twists[idx] if d.twists else 0
        adj[owner[i]].append((owner[j], t))
        adj[owner[j]].append((owner[i], t))
    for root in range(d.b):
        if root in colour:
            continue
        colour[root] = 0
        stack = [root]
        while stack:
            v = stack.pop()
            for w, t in adj[v]:
                want = colour[v] ^ t
                if w not in colour:
                    colour[w] = want
                    stack.append(w)
                elif colour[w] != want:
                    return False
    return True


@dataclass
class ClassifiedCount:
    b: int
    k: int
    twisted: bool
    # (connected, n, orientable) -> number of labeled diagrams
    raw: Counter = field(default_factory=Counter)

    @property
    def total(self) -> int:
        return sum(self.raw.values())

    def euler(self, n: int) -> int:
        return self.b - self.k + n

    def orientable_by_genus(self) -> Dict[int, int]:
        """c_{g,b}(k) from untwisted diagrams."""
        out: Counter = Counter()
        for (conn, n, ori), c in self.raw.items():
            if conn and ori:
                chi = self.euler(n)
                out[(2 - chi) // 2] += c
        if self.twisted:
            # orientable twisted diagrams are the untwisted ones times the 2^(b-1) flips
            out = Counter({g: c // 2 ** (self.b - 1) for g, c in out.items()})
        return dict(out)

    def _by_crosscap(self, only_nonorientable: bool) -> Dict[int, int]:
        if not self.twisted:
            raise ValueError("cross-cap classes need a twisted census")
        out: Counter = Counter()
        for (conn, n, ori), c in self.raw.items():
            if conn and not (only_nonorientable and ori):
                out[2 - self.euler(n)] += c
        norm = 2 ** (self.b - 1)
        res = {}
        for h, c in out.items():
            if c % norm:
                raise ArithmeticError(f"twisted count {c} not divisible by {norm}")
            res[h] = c // norm
        return res

    def nonoriented_by_crosscap(self) -> Dict[int, int]:
        """c^r_{h,b}(k); the raw labeled count is divided by the 2^(b-1) backbone flips."""
        return self._by_crosscap(False)

    def nonorientable_by_crosscap(self) -> Dict[int, int]:
        return self._by_crosscap(True)


def census(b: int, k: int, twisted: bool, budget: int = DEFAULT_BUDGET) -> ClassifiedCount:
    out = ClassifiedCount(b, k, twisted)
    for d in enumerate_diagrams(b, k, twisted, budget):
        conn = is_connected(d)
        n = boundary_cycles(d)
        ori = is_orientable(d) if twisted else True
        out.raw[(conn, n, ori)] += 1
    return out
