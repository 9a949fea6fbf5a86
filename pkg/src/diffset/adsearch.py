"""Exhaustive ADS existence search over Z_v via fixed-density necklaces.

One representative per cyclic rotation class is enumerated (the
lexicographically least rotation of the binary indicator word), with the
autocorrelation profile maintained incrementally along the generation
tree.  Since placed ones are only ever appended, difference counts grow
monotonically down any branch, so a branch dies as soon as some count
exceeds lambda+1 or too many counts sit at lambda+1; the pruning removes
only branches that cannot reach a two-valued profile, keeping every mode
complete.
"""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass
from itertools import combinations
from math import comb, gcd
from typing import Callable, Iterable, Optional, Sequence

from .arith import euler_phi
from .diffcore import classify, t_hat
from .groups import GroupSpec
from .report import (
    STATUS_DS_ONLY,
    STATUS_EXISTS,
    STATUS_NONE,
    STATUS_TIMEOUT,
    SearchReport,
)


def forced_params(v: int, k: int) -> tuple[int, int, int]:
    """(lambda, t, t_hat) forced on any (v,k) two-valued profile.

    lambda = floor(k(k-1)/(v-1)); t = (lambda+1)(v-1) - k(k-1).
    """
    if v < 3 or not 1 <= k <= v:
        raise ValueError(f"forced_params needs v >= 3 and 1 <= k <= v, got {v}, {k}")
    lam = k * (k - 1) // (v - 1)
    t = (lam + 1) * (v - 1) - k * (k - 1)
    return lam, t, t_hat(t, v)


def necklace_count(v: int, k: int) -> int:
    """Number of k-subsets of Z_v up to rotation (Burnside)."""
    if not 0 <= k <= v:
        raise ValueError(f"necklace_count needs 0 <= k <= v")
    g = gcd(v, k) if k else v
    return sum(euler_phi(d) * comb(v // d, k // d) for d in _divisors(g) if k % d == 0 or k == 0) // v


def _divisors(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def enumerate_fixed_density(v: int, k: int, visitor: Optional[Callable] = None) -> int:
    """Visit one representative per rotation class of k-subsets of Z_v.

    Representatives are the positions of ones in the lexicographically
    least rotation of the indicator word.  Returns the number visited.
    """
    if not 0 <= k <= v:
        raise ValueError("need 0 <= k <= v")
    if k == 0:
        if visitor:
            visitor(())
        return 1
    a = [0] * (v + 1)
    ones: list[int] = []
    total = 0

    def gen(t: int, p: int):
        nonlocal total
        placed = len(ones)
        if placed > k or placed + (v - t + 1) < k:
            return
        if t > v:
            if placed == k and v % p == 0:
                total += 1
                if visitor:
                    visitor(tuple(x - 1 for x in ones))
            return
        c = a[t - p]
        a[t] = c
        if c == 1:
            ones.append(t)
        gen(t + 1, p)
        if c == 1:
            ones.pop()
        else:
            a[t] = 1
            ones.append(t)
            gen(t + 1, t)
            ones.pop()
            a[t] = 0

    gen(1, 1)
    return total


class NecklaceCursor:
    """Fixed-density necklace walk with an incremental difference profile.

    Exposes the internals the property tests sample: the current word,
    the running counts, and histogram-derived min/max trackers.
    """

    def __init__(self, v: int, k: int):
        if not 0 <= k <= v:
            raise ValueError("need 0 <= k <= v")
        self.v = v
        self.k = k
        self.word = [0] * v
        self.ones: list[int] = []
        self.counts = [0] * v
        self.hist = [0] * (k * (k - 1) + 1) if k else [0]
        self.hist[0] = v - 1
        self.visited = 0

    def place(self, pos: int):
        v = self.v
        for q in self.ones:
            d = (pos - q) % v
            self._bump(d, +1)
            self._bump(v - d, +1)
        self.ones.append(pos)
        self.word[pos] = 1

    def unplace(self):
        pos = self.ones.pop()
        self.word[pos] = 0
        v = self.v
        for q in self.ones:
            d = (pos - q) % v
            self._bump(d, -1)
            self._bump(v - d, -1)

    def _bump(self, d: int, delta: int):
        c = self.counts[d]
        self.hist[c] -= 1
        c += delta
        self.counts[d] = c
        self.hist[c] += 1

    def profile_min(self) -> int:
        return next(c for c, n in enumerate(self.hist) if n)

    def profile_max(self) -> int:
        return next(c for c in range(len(self.hist) - 1, -1, -1) if self.hist[c])

    def current_set(self) -> tuple[int, ...]:
        return tuple(sorted(self.ones))

    def walk(self, visitor: Callable) -> int:
        """Visit every fixed-density necklace, maintaining the profile."""
        v, k = self.v, self.k
        if k == 0:
            visitor(self)
            self.visited = 1
            return 1
        a = [0] * (v + 1)

        def gen(t: int, p: int):
            placed = len(self.ones)
            if placed > k or placed + (v - t + 1) < k:
                return
            if t > v:
                if placed == k and v % p == 0:
                    self.visited += 1
                    visitor(self)
                return
            c = a[t - p]
            a[t] = c
            if c == 1:
                self.place(t - 1)
            gen(t + 1, p)
            if c == 1:
                self.unplace()
            else:
                a[t] = 1
                self.place(t - 1)
                gen(t + 1, t)
                self.unplace()
                a[t] = 0

        gen(1, 1)
        return self.visited


def rotation_canonical(subset: Iterable[int], v: int) -> tuple[int, ...]:
    """Lexicographically least rotation of the subset, as a sorted tuple."""
    s = sorted(x % v for x in subset)
    best = None
    for r in s or [0]:
        cand = tuple(sorted((x - r) % v for x in s))
        if best is None or cand < best:
            best = cand
    return best if best is not None else tuple(s)


def search_ads(
    v: int,
    k: int,
    mode: str = "exists",
    *,
    node_limit: Optional[int] = None,
    time_limit: Optional[float] = None,
) -> SearchReport:
    """Decide whether some k-subset of Z_v has a {lambda, lambda+1} profile.

    When (v-1) | k(k-1) the forced t is v-1, a proper ADS is impossible and
    any solution is a perfect DS: such cells report DS_ONLY.  Otherwise any
    solution is a proper ADS with the forced parameters.
    """
    mode = mode.lower()
    if mode not in ("exists", "count", "all"):
        raise ValueError(f"unknown mode {mode!r}")
    if not 2 <= k <= v - 2:
        raise ValueError(f"search_ads needs 2 <= k <= v-2, got k={k}, v={v}")
    lam, t_forced, _ = forced_params(v, k)
    cap_budget = (v - 1) - t_forced  # how many differences may sit at lambda+1
    divisible = t_forced == v - 1
    t0 = time.perf_counter()
    deadline = time.monotonic() + time_limit if time_limit is not None else None

    counts = [0] * v
    over = 0  # differences above lambda+1 (fatal)
    at_cap = 0  # differences at exactly lambda+1
    under = v - 1 if lam > 0 else 0  # differences below lambda
    ones: list[int] = []
    a = [0] * (v + 1)
    state = {"nodes": 0, "count": 0, "witness": None, "timed_out": False}
    collect: Optional[list] = [] if mode == "all" else None

    def bump(d: int, delta: int):
        nonlocal over, at_cap, under
        c = counts[d] + delta
        counts[d] = c
        if delta > 0:
            if c == lam:
                under -= 1
            elif c == lam + 1:
                at_cap += 1
            elif c == lam + 2:
                at_cap -= 1
                over += 1
        else:
            if c == lam - 1:
                under += 1
            elif c == lam:
                at_cap -= 1
            elif c == lam + 1:
                at_cap += 1
                over -= 1

    def place(pos: int) -> None:
        for q in ones:
            d = (pos - q) % v
            bump(d, +1)
            bump(v - d, +1)
        ones.append(pos)

    def unplace() -> None:
        pos = ones.pop()
        for q in ones:
            d = (pos - q) % v
            bump(d, -1)
            bump(v - d, -1)

    def gen(t: int, p: int) -> bool:
        state["nodes"] += 1
        if node_limit is not None and state["nodes"] > node_limit:
            state["timed_out"] = True
            raise _Abort
        if deadline is not None and state["nodes"] & 0x3FF == 0:
            if time.monotonic() > deadline:
                state["timed_out"] = True
                raise _Abort
        placed = len(ones)
        if placed > k or placed + (v - t + 1) < k:
            return False
        if over or at_cap > cap_budget:
            return False
        if t > v:
            if placed == k and v % p == 0 and over == 0 and under == 0:
                if mode == "exists":
                    state["witness"] = list(rotation_canonical(ones, v))
                    return True
                state["count"] += 1
                if collect is not None:
                    collect.append(list(rotation_canonical(ones, v)))
            return False
        c = a[t - p]
        a[t] = c
        if c == 1:
            place(t - 1)
            if gen(t + 1, p):
                return True
            unplace()
            return False
        if gen(t + 1, p):
            return True
        a[t] = 1
        place(t - 1)
        if gen(t + 1, t):
            return True
        unplace()
        a[t] = 0
        return False

    try:
        gen(1, 1)
    except _Abort:
        pass

    seconds = time.perf_counter() - t0
    if state["timed_out"] and state["witness"] is None and not state["count"]:
        return SearchReport(status=STATUS_TIMEOUT, nodes=state["nodes"], seconds=seconds)
    found = state["witness"] is not None or state["count"] > 0
    if not found:
        return SearchReport(status=STATUS_NONE, nodes=state["nodes"], seconds=seconds,
                            count=None if mode == "exists" else 0)
    status = STATUS_DS_ONLY if divisible else STATUS_EXISTS
    witness = state["witness"] or (collect[0] if collect else None)
    return SearchReport(
        status=status, witness=witness,
        count=None if mode == "exists" else state["count"],
        witnesses=collect, nodes=state["nodes"], seconds=seconds,
    )


class _Abort(Exception):
    pass


def naive_ads_scan(v: int, k: int) -> SearchReport:
    """Brute-force oracle: scan all C(v,k) subsets with a fresh profile each.

    Independent of the necklace enumeration and of the incremental counts;
    used to cross-check search_ads on small instances.
    """
    lam, t_forced, _ = forced_params(v, k)
    divisible = t_forced == v - 1
    t0 = time.perf_counter()
    witness = None
    found_any = False
    for subset in combinations(range(v), k):
        counts = [0] * v
        for x, y in combinations(subset, 2):
            d = (x - y) % v
            counts[d] += 1
            counts[v - d] += 1
        vals = set(counts[1:])
        if vals <= {lam, lam + 1}:
            found_any = True
            witness = list(rotation_canonical(subset, v))
            break
    seconds = time.perf_counter() - t0
    if not found_any:
        return SearchReport(status=STATUS_NONE, seconds=seconds)
    status = STATUS_DS_ONLY if divisible else STATUS_EXISTS
    return SearchReport(status=status, witness=witness, seconds=seconds)


@dataclass(frozen=True)
class GridCell:
    v: int
    k: int
    lam: int
    t: int
    t_hat: int
    status: str
    witness: Optional[tuple[int, ...]] = None

    def to_csv_row(self) -> list:
        wit = "" if self.witness is None else " ".join(map(str, self.witness))
        return [self.v, self.k, self.lam, self.t, self.t_hat, self.status, wit]


GRID_CSV_HEADER = ["v", "k", "lambda", "t", "t_hat", "status", "witness"]


def existence_grid(
    v_max: int,
    k_min: int = 2,
    k_max: Optional[int] = None,
    *,
    v_min: int = 4,
    node_limit: Optional[int] = None,
    time_limit: Optional[float] = None,
) -> list[GridCell]:
    """One cell per (v,k): search for k <= v/2, complement duality above.

    Per-cell budget overruns become TIMEOUT cells; the grid always
    completes.  Cells are ordered by (v, k).
    """
    cells: list[GridCell] = []
    for v in range(max(4, v_min), v_max + 1):
        half = v // 2
        top = min(k_max, v - 2) if k_max is not None else v - 2
        searched: dict[int, GridCell] = {}
        for k in range(2, half + 1):
            rep = search_ads(v, k, "exists", node_limit=node_limit, time_limit=time_limit)
            lam, t, th = forced_params(v, k)
            searched[k] = GridCell(v, k, lam, t, th, rep.status,
                                   tuple(rep.witness) if rep.witness else None)
        for k in range(max(2, k_min), top + 1):
            if k <= half:
                cells.append(searched[k])
                continue
            mate = searched.get(v - k)
            lam, t, th = forced_params(v, k)
            if mate is None:
                continue
            witness = None
            if mate.witness is not None:
                comp = sorted(set(range(v)) - set(mate.witness))
                witness = rotation_canonical(comp, v)
            cells.append(GridCell(v, k, lam, t, th, mate.status, witness))
    return cells


def grid_to_csv(cells: Sequence[GridCell]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(GRID_CSV_HEADER)
    for cell in cells:
        writer.writerow(cell.to_csv_row())
    return buf.getvalue()


def grid_to_text(cells: Sequence[GridCell]) -> str:
    """Figure-1-style text rendering: E for exists, D for DS-only, digits of
    t_hat for nonexistence, ? for timeout."""
    byv: dict[int, dict[int, GridCell]] = {}
    kmax = 0
    for c in cells:
        byv.setdefault(c.v, {})[c.k] = c
        kmax = max(kmax, c.k)
    lines = [" v\\k " + "".join(f"{k:>3}" for k in range(2, kmax + 1))]
    for v in sorted(byv):
        row = [f"{v:>4} "]
        for k in range(2, kmax + 1):
            cell = byv[v].get(k)
            if cell is None:
                row.append("   ")
            elif cell.status == STATUS_EXISTS:
                row.append("  E")
            elif cell.status == STATUS_DS_ONLY:
                row.append("  D")
            elif cell.status == STATUS_TIMEOUT:
                row.append("  ?")
            else:
                row.append(f"{cell.t_hat:>3}")
        lines.append("".join(row))
    return "\n".join(lines)


def verify_witness(cell: GridCell) -> bool:
    """Re-classify a witness against the cell's forced parameters."""
    if cell.witness is None:
        return True
    cls = classify(list(cell.witness), GroupSpec([cell.v]))
    if cell.status == STATUS_DS_ONLY:
        return cls.is_ds() and cls.lam == cell.lam
    if cell.status == STATUS_EXISTS:
        return cls.is_ads() and (cls.lam, cls.t) == (cell.lam, cell.t)
    return False
