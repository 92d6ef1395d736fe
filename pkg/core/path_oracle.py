"""Brute-force enumeration of generalized Schroder paths with area and diagonal weights.

Two families are walked geometrically:

* slope m/n paths from (0,0) to (nl, ml) staying weakly below ny = mx, with
  every midway vertex (x != nl and y != 0) below ny = mx - s;
* strip paths from (0,0) to (fl+k-1, l) staying weakly right of x = fy.

The stable strip counts are obtained by growing k until the table stops
changing. Tables hold exact integer counts keyed by (d, A, l): d diagonal
steps, A the scaled area index, l the size.
"""

from __future__ import annotations

import logging
import time
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import Callable, Dict, Iterator, List, Optional, Tuple

from core.errors import InvalidSlope, NonIntegralExponent, PathError, StabilizationFailure
from core.graded import AQCoeff
from core.path_geometry import slope_region_j, strip_region_j
from core.xseries import XSeries

log = logging.getLogger(__name__)

Key = Tuple[int, int, int]
Suffix = Counter  # (d, contribution) -> count


class Step(Enum):
    RIGHT = (1, 0)
    UP = (0, 1)
    DIAG = (1, 1)

    @property
    def dx(self) -> int:
        return self.value[0]

    @property
    def dy(self) -> int:
        return self.value[1]


FORWARD_STEPS = (Step.RIGHT, Step.UP, Step.DIAG)


class FamilyKind(str, Enum):
    SLOPE = "slope"
    STRIP = "strip"
    STRIP_STABLE = "strip_stable"
    BACKWARD = "backward"


@dataclass(frozen=True)
class FamilyTag:
    kind: FamilyKind
    m: int
    n: int
    s_or_k: Optional[int] = None

    @property
    def f(self) -> int:
        return self.n


@dataclass
class WeightTable:
    family: FamilyTag
    area_unit: Fraction
    l_max: int
    entries: Dict[Key, int] = field(default_factory=dict)
    # highest area index covered (stable strip tables only)
    j_max: Optional[int] = None
    k_star: Optional[int] = None

    def add(self, key: Key, count: int) -> None:
        if count:
            self.entries[key] = self.entries.get(key, 0) + count

    def merge(self, other: "WeightTable") -> "WeightTable":
        if other.family != self.family:
            raise ValueError(f"cannot merge {other.family} into {self.family}")
        out = WeightTable(self.family, self.area_unit, max(self.l_max, other.l_max), dict(self.entries), self.j_max)
        for key, c in sorted(other.entries.items()):
            out.add(key, c)
        return out

    def at_size(self, l: int) -> Dict[Tuple[int, int], int]:
        return {(d, A): c for (d, A, ll), c in self.entries.items() if ll == l}

    def totals(self) -> List[int]:
        out = [0] * (self.l_max + 1)
        for (_, _, l), c in self.entries.items():
            out[l] += c
        return out

    def q_exponent(self, A: int) -> int:
        e = Fraction(A) * self.area_unit * 2
        if e.denominator != 1:
            raise NonIntegralExponent(f"scaled area {A} gives q^{e}")
        return int(e)

    def __iter__(self) -> Iterator[Tuple[Key, int]]:
        return iter(sorted(self.entries.items(), key=lambda kv: (kv[0][2], kv[0][0], kv[0][1])))


def check_slope(m: int, n: int) -> None:
    if m < 1 or n < 1:
        raise InvalidSlope(f"slope {m}/{n} needs positive integers")
    if gcd(m, n) != 1:
        raise InvalidSlope(f"gcd({m}, {n}) = {gcd(m, n)} != 1")


# ---------------------------------------------------------------------------
# generic lattice walk
# ---------------------------------------------------------------------------

class _Walk:
    """One DFS problem: start (0,0), fixed target, vertex predicate and a
    per-step additive contribution."""

    def __init__(
        self,
        target: Tuple[int, int],
        allowed: Callable[[int, int], bool],
        contribution: Callable[[Step, int, int], int],
        cap: Optional[Callable[[int], bool]] = None,
    ):
        self.target = target
        self.allowed = allowed
        self.contribution = contribution
        # cap(c) is True when a suffix contribution c can be dropped
        self.cap = cap
        self._memo: Dict[Tuple[int, int], Suffix] = {}

    def _moves(self, x: int, y: int) -> Iterator[Tuple[Step, int, int]]:
        tx, ty = self.target
        for st in FORWARD_STEPS:
            nx, ny = x + st.dx, y + st.dy
            if nx > tx or ny > ty:
                continue
            if not self.allowed(nx, ny):
                continue
            yield st, nx, ny

    def suffix(self, x: int, y: int) -> Suffix:
        """(d, contribution) -> number of paths from (x, y) to the target."""
        key = (x, y)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        out: Suffix = Counter()
        if (x, y) == self.target:
            out[(0, 0)] = 1
        else:
            for st, nx, ny in self._moves(x, y):
                w = self.contribution(st, x, y)
                dd = 1 if st is Step.DIAG else 0
                for (d, c), cnt in self.suffix(nx, ny).items():
                    tot = c + w
                    if self.cap is not None and self.cap(tot):
                        continue
                    out[(d + dd, tot)] += cnt
        self._memo[key] = out
        return out

    def first_steps(self) -> List[Tuple[Step, int, int]]:
        if (0, 0) == self.target:
            return []
        return list(self._moves(0, 0))

    def paths(self) -> Iterator[Tuple[List[Tuple[int, int]], int, int]]:
        """Plain walk: (vertices, d, contribution) for every path."""
        stack = [((0, 0), [(0, 0)], 0, 0)]
        while stack:
            (x, y), verts, d, c = stack.pop()
            if (x, y) == self.target:
                yield verts, d, c
                continue
            for st, nx, ny in self._moves(x, y):
                tot = c + self.contribution(st, x, y)
                if self.cap is not None and self.cap(tot):
                    continue
                stack.append(((nx, ny), verts + [(nx, ny)], d + (st is Step.DIAG), tot))


def _walk_parts(walk: _Walk, workers: int) -> List[Suffix]:
    if workers <= 1:
        return [walk.suffix(0, 0)]
    firsts = walk.first_steps()
    if not firsts:
        return [walk.suffix(0, 0)]

    def branch(item: Tuple[Step, int, int]) -> Suffix:
        st, nx, ny = item
        # each branch owns its memo table
        sub = _Walk(walk.target, walk.allowed, walk.contribution, walk.cap)
        w = walk.contribution(st, 0, 0)
        dd = 1 if st is Step.DIAG else 0
        out: Suffix = Counter()
        for (d, c), cnt in sub.suffix(nx, ny).items():
            if walk.cap is not None and walk.cap(c + w):
                continue
            out[(d + dd, c + w)] += cnt
        return out

    with ThreadPoolExecutor(max_workers=min(workers, len(firsts))) as pool:
        return list(pool.map(branch, firsts))


# ---------------------------------------------------------------------------
# slope family
# ---------------------------------------------------------------------------

def _slope_walk(m: int, n: int, s: int, l: int) -> _Walk:
    X, Y = n * l, m * l

    def allowed(x: int, y: int) -> bool:
        if n * y > m * x:
            return False
        if x != X and y != 0 and n * y > m * x - s:
            return False
        return True

    def contribution(st: Step, x: int, y: int) -> int:
        # twice the area under the step
        if st is Step.RIGHT:
            return 2 * y
        if st is Step.DIAG:
            return 2 * y + 1
        return 0

    return _Walk((X, Y), allowed, contribution)


def enum_slope(
    m: int,
    n: int,
    s: int,
    l_max: int,
    *,
    memo: bool = True,
    weighted: bool = True,
    check_geometry: bool = False,
    workers: int = 1,
) -> WeightTable:
    check_slope(m, n)
    if s < 0 or l_max < 0:
        raise ValueError("s and l_max must be non-negative")
    mn = m * n
    table = WeightTable(FamilyTag(FamilyKind.SLOPE, m, n, s), Fraction(1, 2 * mn), l_max)
    t0 = time.perf_counter()
    for l in range(l_max + 1):
        if s > mn * l:
            continue
        walk = _slope_walk(m, n, s, l)
        full = mn * l * l
        if memo and not check_geometry:
            for part in _walk_parts(walk, workers):
                partial = WeightTable(table.family, table.area_unit, l_max)
                for (d, under2), cnt in part.items():
                    partial.add((d, mn * (full - under2), l) if weighted else (0, 0, l), cnt)
                table = table.merge(partial)
            continue
        for verts, d, under2 in walk.paths():
            j = full - under2
            if check_geometry:
                g = slope_region_j(verts, m, n, l)
                if g != j:
                    raise PathError(f"step rule j={j} disagrees with polygon j={g} for {verts}")
            table.add((d, mn * j, l) if weighted else (0, 0, l), 1)
    log.debug("enum_slope m=%d n=%d s=%d lmax=%d: %d entries in %.0f ms",
              m, n, s, l_max, len(table.entries), (time.perf_counter() - t0) * 1000)
    return table


# ---------------------------------------------------------------------------
# strip families
# ---------------------------------------------------------------------------

def _strip_walk(f: int, k: int, l: int, j_max: Optional[int]) -> _Walk:
    def allowed(x: int, y: int) -> bool:
        return f * y <= x

    def contribution(st: Step, x: int, y: int) -> int:
        if st is Step.UP:
            return 2 * x - f * (2 * y + 1)
        if st is Step.DIAG:
            return 2 * x + 1 - f * (2 * y + 1)
        return 0

    cap = None if j_max is None else (lambda c: c > j_max)
    return _Walk((f * l + k - 1, l), allowed, contribution, cap)


def enum_strip(
    f: int,
    k: int,
    l_max: int,
    *,
    j_max: Optional[int] = None,
    memo: bool = True,
    weighted: bool = True,
    check_geometry: bool = False,
    workers: int = 1,
) -> WeightTable:
    """Strip paths to (fl+k-1, l); j_max drops entries with larger area index
    (contributions are non-negative, so the walk prunes on it)."""
    if f < 1 or k < 1:
        raise ValueError(f"strip family needs f, k >= 1 (got f={f}, k={k})")
    if l_max < 0:
        raise ValueError("l_max must be non-negative")
    table = WeightTable(FamilyTag(FamilyKind.STRIP, 1, f, k), Fraction(1, 2), l_max, j_max=j_max)
    for l in range(l_max + 1):
        walk = _strip_walk(f, k, l, j_max)
        if memo and not check_geometry:
            for part in _walk_parts(walk, workers):
                partial = WeightTable(table.family, table.area_unit, l_max)
                for (d, j), cnt in part.items():
                    partial.add((d, j, l) if weighted else (0, 0, l), cnt)
                table = table.merge(partial)
            continue
        for verts, d, j in walk.paths():
            if check_geometry:
                g = strip_region_j(verts, f, l)
                if g != j:
                    raise PathError(f"step rule j={j} disagrees with polygon j={g} for {verts}")
            table.add((d, j, l) if weighted else (0, 0, l), 1)
    return table


def strip_count_bound(j: int, f: int, l: int) -> int:
    return max((j - f + 2) ** l, 0)


def enum_strip_stable(f: int, l_max: int, j_max: int, *, workers: int = 1) -> WeightTable:
    if j_max < 0:
        raise ValueError("j_max must be non-negative")
    guard = j_max + f + 2
    prev = enum_strip(f, 1, l_max, j_max=j_max, workers=workers)
    k = 1
    while True:
        k += 1
        if k > guard:
            raise StabilizationFailure(f"strip counts for f={f} did not stabilize by k={guard}")
        cur = enum_strip(f, k, l_max, j_max=j_max, workers=workers)
        for key, c in prev.entries.items():
            if cur.entries.get(key, 0) < c:
                d, j, l = key
                raise StabilizationFailure(
                    f"count n(i={2 * d}, j={j}, l={l}) decreased from {c} to {cur.entries.get(key, 0)} at k={k}"
                )
        log.debug("strip f=%d k=%d: %d entries", f, k, len(cur.entries))
        if cur.entries == prev.entries:
            break
        prev = cur
    table = WeightTable(FamilyTag(FamilyKind.STRIP_STABLE, 1, f, None), Fraction(1, 2), l_max, dict(cur.entries), j_max)
    table.k_star = k - 1
    log.info("strip f=%d stabilized at k=%d (j<=%d, l<=%d)", f, k - 1, j_max, l_max)
    return table


# ---------------------------------------------------------------------------
# generating functions
# ---------------------------------------------------------------------------

def table_to_series(table: WeightTable, l_max: Optional[int] = None) -> XSeries:
    l_max = table.l_max if l_max is None else l_max
    window = None
    if table.family.kind is FamilyKind.STRIP_STABLE and table.j_max is not None:
        window = table.j_max + 1
    rows: Dict[int, List[Tuple[int, int, int]]] = {}
    for (d, A, l), c in table.entries.items():
        if l > l_max:
            continue
        rows.setdefault(l, []).append((2 * d, table.q_exponent(A), c))
    coeffs = [AQCoeff.from_table(rows.get(l, []), window) for l in range(l_max + 1)]
    return XSeries.build(coeffs, l_max + 1)


def base_case_entries(m: int, n: int, l: int) -> Dict[Tuple[int, int], int]:
    """Closed form when no midway vertex survives: the all-Right-then-Up path
    and, for l >= 1, the path ending with one diagonal step (as (d, A))."""
    mn = m * n
    out = {(0, mn * mn * l * l): 1}
    if l >= 1:
        out[(1, mn * (mn * l * l - 1))] = 1
    return out
