"""Exhaustive modular Golomb ruler search and the relative-difference-set bridge.

The search places marks in increasing order starting at 0 and keeps three
bitmasks per depth: the used differences, the positions that would collide
with a used difference, and the positions whose doubled value is a sum of
two placed marks.  Free positions are then exactly the valid children, so
candidate generation costs O(1) per child.  Orbits under x -> ax+b with
gcd(a, v) = 1 are collapsed by a prefix canonicity test: a prefix is
abandoned as soon as some full affine map sends it to a lexicographically
smaller sorted tuple.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

from .arith import is_perfect_square
from .diffcore import Classification, classify, verify_relative_ds
from .groups import GroupSpec, units
from .report import STATUS_EXISTS, STATUS_NONE, STATUS_TIMEOUT, SearchReport

# Optimal Golomb ruler lengths L(k) for k <= 15 (literature constants; the
# k <= 8 entries are re-derived by optimal_golomb_length in the test suite).
_GOLOMB_LENGTH = {
    1: 0, 2: 1, 3: 3, 4: 6, 5: 11, 6: 17, 7: 25, 8: 34,
    9: 44, 10: 55, 11: 72, 12: 85, 13: 106, 14: 127, 15: 151,
}

_DEFAULT_PRUNE_LO = 3
_DEFAULT_PRUNE_HI = 5
_TIME_CHECK_MASK = 0x3FF


def golomb_length(k: int) -> int:
    """Optimal (non-modular) Golomb ruler length for 1 <= k <= 15."""
    if k not in _GOLOMB_LENGTH:
        raise ValueError(f"golomb_length embedded for 1 <= k <= 15, got {k}")
    return _GOLOMB_LENGTH[k]


def optimal_golomb_length(k: int) -> int:
    """Search oracle: minimal length of a Golomb ruler with k marks.

    Exhaustive, intended for k <= 8 where it validates the embedded table.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if k == 1:
        return 0
    lo = k * (k - 1) // 2  # k(k-1)/2 distinct positive differences needed
    for L in range(lo, 4 * lo + 2):
        if _ruler_exists(k, L):
            return L
    raise RuntimeError("optimal ruler search exceeded its bound")  # unreachable


def _ruler_exists(k: int, L: int) -> bool:
    """Is there a Golomb ruler with k marks inside [0, L]?"""

    def rec(marks, used):
        j = len(marks)
        if j == k:
            return True
        last = marks[-1]
        for c in range(last + 1, L - (k - j) + 2):
            nm = 0
            ok = True
            for m in marks:
                b = 1 << (c - m)
                if (used | nm) & b:
                    ok = False
                    break
                nm |= b
            if ok and rec(marks + [c], used | nm):
                return True
        return False

    return rec([0], 0)


def is_mgr(marks: Sequence[int], v: int) -> bool:
    """True iff all k(k-1) ordered differences of marks are distinct mod v."""
    ms = sorted(m % v for m in marks)
    if len(set(ms)) != len(ms):
        return False
    seen = set()
    for i, a in enumerate(ms):
        for b in ms[i + 1 :]:
            d = (b - a) % v
            if d in seen or (v - d) % v in seen or d == (v - d) % v:
                return False
            seen.add(d)
    return True


def _affine_beats(pm: int, marks: Sequence[int], v: int, full: int, us: Sequence[int]) -> bool:
    """Does some map x -> a(x - d) send the set to a lex-smaller sorted tuple?

    pm is the bitmask of marks.  Comparison of equal-size sets as sorted
    tuples reduces to: the smaller set owns the low bit of the symmetric
    difference.
    """
    for a in us:
        qm = 0
        for m in marks:
            qm |= 1 << (a * m % v)
        for m in marks:
            d = a * m % v
            t = ((qm >> d) | (qm << (v - d))) & full
            x = t ^ pm
            if x and (x & -x) & t:
                return True
    return False


def is_canonical_affine(marks: Sequence[int], v: int) -> bool:
    """Is the set lexicographically least in its orbit under x -> ax+b?

    Sound on prefixes: returns False only when a full affine map already
    beats the given marks, so any extension by larger marks is beaten too.
    """
    ms = sorted(m % v for m in marks)
    if len(set(ms)) != len(ms):
        raise ValueError("marks must be distinct")
    if not ms:
        return True
    if ms[0] != 0:
        return False  # the translate by -min is strictly smaller
    pm = 0
    for m in ms:
        pm |= 1 << m
    full = (1 << v) - 1
    return not _affine_beats(pm, ms, v, full, units(v))


def canonical_affine_form(marks: Sequence[int], v: int) -> tuple[int, ...]:
    """Lexicographically least affine image of the set (orbit representative)."""
    ms = sorted(m % v for m in marks)
    best = None
    for a in units(v):
        imgs = sorted(a * m % v for m in ms)
        for d in imgs:
            cand = tuple(sorted((x - d) % v for x in imgs))
            if best is None or cand < best:
                best = cand
    return best if best is not None else ()


class _Abort(Exception):
    """Unwinds the search on node/time budget exhaustion."""


def _search_core(
    v: int,
    k: int,
    mode: str,
    prune: bool,
    canonical: bool,
    prune_lo: int,
    prune_hi: int,
    node_limit: Optional[int],
    deadline: Optional[float],
    m2: Optional[int] = None,
) -> dict:
    """One search (sub)tree; m2 fixes the second mark for partitioned runs."""
    full = (1 << v) - 1
    us = units(v)
    half = v // 2 if v % 2 == 0 else 0
    inv2 = pow(2, -1, v) if v % 2 == 1 else None
    exists_mode = mode == "exists"
    collect = [] if mode == "all" else None

    state = {"nodes": 0, "count": 0, "witness": None, "timed_out": False}
    marks = [0] * (k + 1)
    used_s = [0] * (k + 1)
    blocked_s = [0] * (k + 1)
    if half:
        used_s[1] = blocked_s[1] = 1 << half  # difference v/2 self-pairs

    def leaf(last_c: int) -> bool:
        marks[k - 1] = last_c
        ruler = marks[:k]
        if canonical and mode != "exists":
            pm = 0
            for m in ruler:
                pm |= 1 << m
            if _affine_beats(pm, ruler, v, full, us):
                return False
        if exists_mode:
            state["witness"] = list(ruler)
            return True
        state["count"] += 1
        if collect is not None:
            collect.append(list(ruler))
        return False

    def rec(j: int) -> bool:
        state["nodes"] += 1
        if node_limit is not None and state["nodes"] > node_limit:
            state["timed_out"] = True
            raise _Abort
        if deadline is not None and state["nodes"] & _TIME_CHECK_MASK == 0:
            if time.monotonic() > deadline:
                state["timed_out"] = True
                raise _Abort
        if prune and prune_lo <= j <= prune_hi:
            pm = 0
            for i in range(j):
                pm |= 1 << marks[i]
            if _affine_beats(pm, marks[:j], v, full, us):
                return False
        used = used_s[j]
        blocked = blocked_s[j]
        last = marks[j - 1]
        if j == k - 1:
            freemask = ~blocked & full & ~((1 << (last + 1)) - 1)
            while freemask:
                low = freemask & -freemask
                freemask ^= low
                if leaf(low.bit_length() - 1):
                    return True
            return False
        hi = v - (k - j - 1)
        freemask = ~blocked & ((1 << hi) - 1) & ~((1 << (last + 1)) - 1)
        while freemask:
            low = freemask & -freemask
            c = low.bit_length() - 1
            freemask ^= low
            nm = 0
            for i in range(j):
                d = c - marks[i]
                nm |= (1 << d) | (1 << (v - d))
            marks[j] = c
            u2 = used | nm
            b2 = blocked
            for i in range(j):
                m = marks[i]
                b2 |= ((nm << m) | (nm >> (v - m))) & full
            b2 |= ((u2 << c) | (u2 >> (v - c))) & full
            if inv2 is not None:
                for i in range(j):
                    b2 |= 1 << ((c + marks[i]) * inv2 % v)
            else:
                for i in range(j):
                    s = c + marks[i]
                    if s % 2 == 0:
                        x = (s // 2) % v
                        b2 |= (1 << x) | (1 << ((x + half) % v))
            used_s[j + 1] = u2
            blocked_s[j + 1] = b2
            if rec(j + 1):
                return True
        return False

    try:
        if m2 is None:
            rec(1)
        elif not blocked_s[1] & (1 << m2):
            # seed the fixed second mark, then search its subtree
            nm = (1 << m2) | (1 << (v - m2))
            marks[1] = m2
            u2 = used_s[1] | nm
            b2 = blocked_s[1] | nm  # rotate(nm, 0)
            b2 |= ((u2 << m2) | (u2 >> (v - m2))) & full
            if inv2 is not None:
                b2 |= 1 << (m2 * inv2 % v)
            elif m2 % 2 == 0:
                x = m2 // 2
                b2 |= (1 << x) | (1 << ((x + half) % v))
            used_s[2] = u2
            blocked_s[2] = b2
            rec(2)
    except _Abort:
        pass

    return {
        "nodes": state["nodes"],
        "count": state["count"],
        "witness": state["witness"],
        "witnesses": collect,
        "timed_out": state["timed_out"],
    }


def _run_partition(args) -> dict:
    return _search_core(*args)


def search_mgr(
    v: int,
    k: int,
    mode: str = "exists",
    *,
    prune: bool = True,
    canonical: bool = True,
    prune_depth_min: int = _DEFAULT_PRUNE_LO,
    prune_depth_max: int = _DEFAULT_PRUNE_HI,
    node_limit: Optional[int] = None,
    time_limit: Optional[float] = None,
    jobs: int = 1,
) -> SearchReport:
    """Exhaustive (v,k)-MGR search.

    mode: 'exists' returns one witness or NONE; 'count'/'all' enumerate
    canonical representatives (set canonical=False for raw enumeration of
    all rulers with first mark 0).  Budget overruns yield status TIMEOUT
    with the explored node count.
    """
    mode = mode.lower()
    if mode not in ("exists", "count", "all"):
        raise ValueError(f"unknown mode {mode!r}")
    if not 2 <= k <= v:
        raise ValueError(f"search_mgr needs 2 <= k <= v, got k={k}, v={v}")
    if mode != "exists" and not canonical:
        prune = False  # orbit pruning is unsound for raw enumeration
    t0 = time.perf_counter()
    deadline = time.monotonic() + time_limit if time_limit is not None else None
    if v - 1 < k * (k - 1):
        # pigeonhole: k(k-1) distinct nonzero differences cannot fit
        return SearchReport(
            status=STATUS_NONE, nodes=0, seconds=time.perf_counter() - t0,
            count=None if mode == "exists" else 0,
            witnesses=[] if mode == "all" else None,
        )

    if jobs > 1 and k >= 3:
        parts = [
            (v, k, mode, prune, canonical, prune_depth_min, prune_depth_max,
             node_limit, deadline, m2)
            for m2 in range(1, v - (k - 2))
        ]
        results = []
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futs = [pool.submit(_run_partition, p) for p in parts]
            for fut in futs:
                r = fut.result()
                results.append(r)
                if mode == "exists" and r["witness"] is not None:
                    for other in futs:
                        other.cancel()
                    break
        raw = {
            "nodes": sum(r["nodes"] for r in results),
            "count": sum(r["count"] for r in results),
            "witness": next((r["witness"] for r in results if r["witness"]), None),
            "witnesses": sum((r["witnesses"] or [] for r in results), [])
            if mode == "all"
            else None,
            "timed_out": any(r["timed_out"] for r in results),
        }
    else:
        raw = _search_core(
            v, k, mode, prune, canonical, prune_depth_min, prune_depth_max,
            node_limit, deadline,
        )

    seconds = time.perf_counter() - t0
    if raw["timed_out"] and raw["witness"] is None:
        return SearchReport(status=STATUS_TIMEOUT, nodes=raw["nodes"], seconds=seconds)
    if mode == "exists":
        if raw["witness"] is not None:
            return SearchReport(
                status=STATUS_EXISTS, witness=raw["witness"],
                nodes=raw["nodes"], seconds=seconds,
            )
        return SearchReport(status=STATUS_NONE, nodes=raw["nodes"], seconds=seconds)
    status = STATUS_EXISTS if raw["count"] else STATUS_NONE
    return SearchReport(
        status=status, count=raw["count"], witnesses=raw["witnesses"],
        witness=(raw["witnesses"][0] if raw["witnesses"] else None),
        nodes=raw["nodes"], seconds=seconds,
    )


@dataclass(frozen=True)
class Ruler:
    """Marks of a (candidate) modular Golomb ruler, first mark 0."""

    v: int
    marks: tuple[int, ...]

    def __post_init__(self):
        ms = tuple(self.marks)
        if not ms or ms[0] != 0 or list(ms) != sorted(set(ms)):
            raise ValueError("marks must be strictly increasing and start at 0")
        if ms[-1] >= self.v:
            raise ValueError("marks must lie in [0, v)")

    def is_valid(self) -> bool:
        return is_mgr(self.marks, self.v)

    def classify(self) -> Classification:
        return classify(list(self.marks), GroupSpec([self.v]))


@dataclass
class Spectrum:
    """Moduli admitting a (v,k)-MGR: searched members below 2L(k)+1 plus the tail."""

    k: int
    bound: int  # every v >= bound is a member by the doubling bound
    members: list[int]
    witnesses: dict[int, list[int]]
    timeouts: list[int]

    def contains(self, v: int) -> Optional[bool]:
        if v >= self.bound:
            return True
        if v in self.timeouts:
            return None
        return v in self.members

    @property
    def complete(self) -> bool:
        return not self.timeouts

    def tail_start(self) -> int:
        """Least V with [V, bound) fully members, the 'v >= V' tail."""
        tail = self.bound
        while tail - 1 in self.members:
            tail -= 1
        return tail

    def compact(self) -> tuple[list[int], int]:
        """(sporadic members, tail start): the {a, b} + {v >= c} presentation."""
        tail = self.tail_start()
        return [m for m in self.members if m < tail], tail

    def to_json(self) -> dict:
        sporadic, tail = self.compact()
        return {
            "k": self.k,
            "bound": self.bound,
            "members_below_bound": self.members,
            "sporadic": sporadic,
            "tail_start": tail,
            "timeouts": self.timeouts,
            "witnesses": {str(v): w for v, w in sorted(self.witnesses.items())},
        }


def spectrum(
    k: int,
    *,
    prune: bool = True,
    node_limit: Optional[int] = None,
    time_limit: Optional[float] = None,
    jobs: int = 1,
) -> Spectrum:
    """MGR(k) membership for all v below the Golomb-ruler doubling bound.

    Searches v in [k(k-1)+1, 2L(k)]; everything at or above 2L(k)+1 is a
    member because an optimal ruler of length L(k) survives reduction mod v.
    Per-v budget overruns are recorded, not fatal.
    """
    L = golomb_length(k)
    bound = 2 * L + 1
    members: list[int] = []
    witnesses: dict[int, list[int]] = {}
    timeouts: list[int] = []
    lo = k * (k - 1) + 1
    cells = list(range(lo, bound))

    def run_cell(v: int) -> SearchReport:
        return search_mgr(
            v, k, "exists",
            prune=prune, node_limit=node_limit, time_limit=time_limit,
        )

    if jobs > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_spectrum_cell, [
                (v, k, prune, node_limit, time_limit) for v in cells
            ]))
    else:
        reports = [run_cell(v) for v in cells]
    for v, rep in zip(cells, reports):
        if rep.status == STATUS_EXISTS:
            members.append(v)
            witnesses[v] = rep.witness
        elif rep.status == STATUS_TIMEOUT:
            timeouts.append(v)
    return Spectrum(k=k, bound=bound, members=members, witnesses=witnesses, timeouts=timeouts)


def _spectrum_cell(args) -> SearchReport:
    v, k, prune, node_limit, time_limit = args
    return search_mgr(v, k, "exists", prune=prune, node_limit=node_limit, time_limit=time_limit)


def mgr_to_relative_ds(marks: Sequence[int], k: Optional[int] = None):
    """Read a (k^2-k+2, k)-MGR as a relative ((k^2-k+2)/2, 2, k, 1)-DS.

    The forbidden subgroup is {0, v/2}; the missing difference of such an
    MGR is forced to v/2 by symmetry, which is re-verified here.
    """
    ms = sorted(marks)
    if k is None:
        k = len(ms)
    if len(ms) != k:
        raise ValueError("marks/k mismatch")
    v = k * k - k + 2
    if any(not 0 <= m < v for m in ms):
        raise ValueError(f"marks must lie in [0, {v}) for k={k}")
    if not is_mgr(ms, v):
        raise ValueError(f"marks are not a ({v},{k})-MGR")
    G = GroupSpec([v])
    N = [0, v // 2]
    expect = (v // 2, 2, k, 1)
    if not verify_relative_ds(ms, G, N, expect=expect):
        raise AssertionError(f"({v},{k})-MGR failed relative-DS verification")
    return list(ms), expect


@dataclass(frozen=True)
class RyserCheck:
    passed: bool
    reason: str


def ryser_conditions(m: int, k: int, lam: int, n: int = 2) -> RyserCheck:
    """Necessary square conditions for a cyclic relative (m,2,k,lambda)-DS.

    m even requires k-2*lambda to be a perfect square; m odd requires k to
    be one.  Passing is necessary, not sufficient.
    """
    if n != 2:
        raise ValueError("ryser_conditions applies to forbidden subgroups of order 2")
    if m % 2 == 0:
        val = k - 2 * lam
        ok = val >= 0 and _is_square(val)
        return RyserCheck(ok, f"m even: k-2*lambda = {val} {'is' if ok else 'is not'} a square")
    ok = _is_square(k)
    return RyserCheck(ok, f"m odd: k = {k} {'is' if ok else 'is not'} a square")


def _is_square(n: int) -> bool:
    return is_perfect_square(n)


def ryser_project(D: Sequence[int], m: int):
    """Project a relative (m,2,k,lambda)-DS in Z_{2m} to an (m,k,2*lambda)-DS in Z_m."""
    v = 2 * m
    G = GroupSpec([v])
    els = G.coerce_set(D)
    k = len(els)
    num = k * (k - 1)
    den = 2 * (m - 1)
    if m < 2 or num % den != 0:
        raise ValueError(f"no integral lambda for k={k}, m={m}")
    lam = num // den
    if not verify_relative_ds(els, G, [0, m], expect=(m, 2, k, lam)):
        raise ValueError("input is not a relative (m,2,k,lambda)-DS w.r.t. {0, m}")
    projected = sorted({e[0] % m for e in els})
    if len(projected) != k:
        raise ValueError("projection collapsed elements; input invalid")
    Gm = GroupSpec([m])
    cls = classify(projected, Gm)
    if not (cls.is_ds() and cls.lam == 2 * lam):
        raise AssertionError(f"projection failed to verify as ({m},{k},{2 * lam})-DS: {cls}")
    return projected, cls
