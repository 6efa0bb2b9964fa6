"""On-disk memo of recursion bodies, one canonical text line per (g, h, l, pattern)."""
from __future__ import annotations

import difflib
import os
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from .multirat import MultiRat
from .toprec import Pattern, Recursion

ENV_VAR = "CHORDCOUNT_CACHE_DIR"
HEADER = "# chordcount recursion memo v1"
MemoKey = Tuple[int, int, int, Pattern]


class CacheError(RuntimeError):
    """Unreadable or corrupt cache file."""


def default_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "chordcount"


def chi_of(key: MemoKey) -> int:
    g, h, l, _ = key
    return 2 * g - 2 + h + l


def sort_keys(keys) -> List[MemoKey]:
    return sorted(keys, key=lambda k: (chi_of(k), k[0], k[1], k[2], k[3]))


def _key_text(key: MemoKey) -> str:
    g, h, l, pat = key
    return f"{g} {h} {l} {','.join(map(str, pat))}"


def _parse_key(text: str) -> MemoKey:
    parts = text.split()
    if len(parts) not in (3, 4):
        raise ValueError(f"bad key {text!r}")
    pat = tuple(int(v) for v in parts[3].split(",")) if len(parts) == 4 else ()
    return int(parts[0]), int(parts[1]), int(parts[2]), pat


class MemoStore:
    def __init__(self, directory: Optional[os.PathLike] = None) -> None:
        self.dir = Path(directory) if directory is not None else default_dir()

    @property
    def path(self) -> Path:
        return self.dir / "memo.txt"

    def load(self) -> Dict[MemoKey, MultiRat]:
        if not self.path.exists():
            return {}
        try:
            lines = self.path.read_text().splitlines()
        except OSError as exc:
            raise CacheError(f"cannot read {self.path}: {exc}") from exc
        out: Dict[MemoKey, MultiRat] = {}
        for n, line in enumerate(lines, 1):
            if not line.strip() or line.startswith("#"):
                continue
            try:
                head, body = line.split("\t", 1)
                out[_parse_key(head)] = MultiRat.from_text(body)
            except Exception as exc:  # any parse failure means corruption
                raise CacheError(f"{self.path}:{n}: corrupt entry ({exc})") from exc
        return out

    def save(self, memo: Dict[MemoKey, MultiRat]) -> None:
        lines = [HEADER]
        for key in sort_keys(memo):
            lines.append(f"{_key_text(key)}\t{memo[key].to_text()}")
        try:
            self.dir.mkdir(parents=True, exist_ok=True)
            tmp = self.path.with_suffix(".tmp")
            tmp.write_text("\n".join(lines) + "\n")
            tmp.replace(self.path)
        except OSError as exc:
            raise CacheError(f"cannot write {self.path}: {exc}") from exc

    def keys(self) -> List[MemoKey]:
        return sort_keys(self.load())

    def recursion(self) -> Recursion:
        """A Recursion seeded from the cache; call ``save(rec.memo)`` to persist new work."""
        return Recursion(self.load())

    def validate(self) -> List[Tuple[MemoKey, str]]:
        """Recompute every entry from scratch; return (key, diff) for each mismatch."""
        stored = self.load()
        fresh = Recursion()
        bad = []
        for key in sort_keys(stored):
            g, h, l, pat = key
            want = fresh.base(g, h, l, pat).canonical().to_text()
            have = stored[key].to_text()
            if want != have:
                diff = "\n".join(difflib.unified_diff(
                    _split(have), _split(want), "cached", "recomputed", lineterm="", n=0))
                bad.append((key, diff))
        return bad

    def clear(self) -> bool:
        try:
            if self.path.exists():
                self.path.unlink()
                return True
        except OSError as exc:
            raise CacheError(f"cannot remove {self.path}: {exc}") from exc
        return False


def _split(text: str) -> List[str]:
    num, den = text.split("||")
    return num.strip().split(";") + ["|| " + den.strip()]


def key_label(key: MemoKey) -> str:
    g, h, l, pat = key
    return f"chi={chi_of(key)} (g,h,l)=({g},{h},{l}) pattern={','.join(map(str, pat)) or '-'}"
