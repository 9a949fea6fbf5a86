"""Difference profiles and the classification algebra.

The difference profile of a k-subset D is the multiset of the k(k-1)
ordered differences of distinct elements; a subset is a difference set
when the profile is constant at lambda off the identity, and an almost
difference set when it takes exactly the two values lambda and lambda+1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .groups import GroupElement, GroupSpec

KIND_DS = "DS"
KIND_ADS = "ADS"
KIND_NONE = "NONE"

# Above this many element pairs the rank-1 profile switches from an
# outer-product count to FFT autocorrelation (guarded, see below).
_OUTER_PAIR_LIMIT = 30_000_000
_NUMPY_MIN_K = 64


def t_hat(t: int, v: int) -> int:
    """min(t, v-1-t), the imbalance measure of an ADS parameter set."""
    if not 0 <= t <= v - 1:
        raise ValueError(f"t={t} out of range [0, {v - 1}]")
    return min(t, v - 1 - t)


@dataclass(frozen=True)
class AdsParams:
    v: int
    k: int
    lam: int
    t: int

    @property
    def n(self) -> int:
        return self.k - self.lam

    @property
    def t_hat(self) -> int:
        return t_hat(self.t, self.v)

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.v, self.k, self.lam, self.t)


@dataclass(frozen=True)
class Classification:
    kind: str
    v: int
    k: int
    lam: Optional[int] = None
    t: Optional[int] = None

    @property
    def params(self) -> Optional[AdsParams]:
        if self.kind != KIND_ADS:
            return None
        return AdsParams(self.v, self.k, self.lam, self.t)

    @property
    def t_hat(self) -> Optional[int]:
        return None if self.t is None else t_hat(self.t, self.v)

    def is_ds(self) -> bool:
        return self.kind == KIND_DS

    def is_ads(self) -> bool:
        return self.kind == KIND_ADS

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind, "v": self.v, "k": self.k}
        if self.lam is not None:
            out["lambda"] = self.lam
        if self.t is not None:
            out["t"] = self.t
            out["t_hat"] = self.t_hat
        return out

    def __str__(self) -> str:
        if self.kind == KIND_DS:
            return f"({self.v},{self.k},{self.lam})-DS"
        if self.kind == KIND_ADS:
            return f"({self.v},{self.k},{self.lam},{self.t})-ADS"
        return f"NONE(v={self.v},k={self.k})"


class DiffProfile:
    """Dense difference-count vector indexed by group element index.

    counts[i] is the number of ordered pairs of distinct elements of D
    whose difference is element_at(i); counts[0] (the identity) is 0.
    """

    __slots__ = ("G", "k", "counts")

    def __init__(self, G: GroupSpec, k: int, counts: Sequence[int]):
        if len(counts) != G.v:
            raise ValueError("counts length must equal group order")
        self.G = G
        self.k = k
        self.counts = list(counts)

    def count_of(self, g) -> int:
        return self.counts[self.G.index_of(g)]

    def nonzero_counts(self) -> list[int]:
        """Counts over the v-1 nonidentity elements."""
        return self.counts[1:]

    def total(self) -> int:
        return sum(self.counts)

    def is_symmetric(self) -> bool:
        G = self.G
        return all(
            self.counts[i] == self.counts[G.index_of(G.neg(G.element_at(i)))]
            for i in range(G.v)
        )


def _profile_pure(idx: list[int], G: GroupSpec) -> list[int]:
    counts = [0] * G.v
    els = [G.element_at(i) for i in idx]
    for i, a in enumerate(els):
        for j, b in enumerate(els):
            if i != j:
                counts[G.index_of(G.sub(a, b))] += 1
    return counts


def _profile_outer(x: np.ndarray, v: int) -> list[int]:
    diffs = (x[:, None] - x[None, :]) % v
    counts = np.bincount(diffs.ravel(), minlength=v)
    counts[0] -= len(x)  # remove the i == j diagonal
    return counts.tolist()


def _profile_fft(x: np.ndarray, v: int) -> Optional[list[int]]:
    """Cyclic autocorrelation via FFT, with exactness guards.

    Returns None when the guards cannot certify an exact integer result.
    """
    ind = np.zeros(v, dtype=np.float64)
    ind[x] = 1.0
    f = np.fft.rfft(ind)
    raw = np.fft.irfft(f * np.conj(f), n=v)
    counts = np.rint(raw).astype(np.int64)
    k = len(x)
    if np.max(np.abs(raw - counts)) > 0.05:
        return None
    if counts[0] != k or int(counts[1:].sum()) != k * (k - 1):
        return None
    if not np.array_equal(counts[1:], counts[1:][::-1]):
        return None
    counts[0] = 0
    return counts.tolist()


def _profile_blocked(x: np.ndarray, v: int) -> list[int]:
    """Exact O(k^2) fallback with bounded memory."""
    counts = np.zeros(v, dtype=np.int64)
    block = max(1, _OUTER_PAIR_LIMIT // max(len(x), 1))
    for lo in range(0, len(x), block):
        d = (x[lo : lo + block, None] - x[None, :]) % v
        counts += np.bincount(d.ravel(), minlength=v)
    counts[0] -= len(x)
    return counts.tolist()


def difference_profile(D, G: GroupSpec) -> DiffProfile:
    """Exact difference profile of D; duplicate elements are rejected."""
    els = G.coerce_set(D)
    k = len(els)
    idx = [G.index_of(e) for e in els]
    if G.rank == 1 and k >= _NUMPY_MIN_K:
        x = np.asarray(idx, dtype=np.int64)
        if k * k <= _OUTER_PAIR_LIMIT:
            counts = _profile_outer(x, G.v)
        else:
            counts = _profile_fft(x, G.v)
            if counts is None:
                counts = _profile_blocked(x, G.v)
    else:
        counts = _profile_pure(idx, G)
    return DiffProfile(G, k, counts)


def classify(D, G: GroupSpec) -> Classification:
    """DS / ADS / NONE verdict for a subset of G.

    A perfect difference set is always reported as DS, never as an ADS
    with t = 0 or t = v-1; k in {0, 1} gives a DS with lambda = 0.
    """
    prof = difference_profile(D, G)
    return classify_profile(prof)


def classify_profile(prof: DiffProfile) -> Classification:
    v, k = prof.G.v, prof.k
    if k <= 1:
        return Classification(KIND_DS, v, k, lam=0)
    values = set(prof.nonzero_counts())
    if len(values) == 1:
        return Classification(KIND_DS, v, k, lam=values.pop())
    if len(values) == 2:
        lam, hi = sorted(values)
        if hi == lam + 1:
            t = sum(1 for c in prof.nonzero_counts() if c == lam)
            return Classification(KIND_ADS, v, k, lam=lam, t=t)
    return Classification(KIND_NONE, v, k)


def sumset(D, G: GroupSpec) -> set[GroupElement]:
    """S(D): all sums of two distinct elements of D."""
    els = G.coerce_set(D)
    out: set[GroupElement] = set()
    for i, a in enumerate(els):
        for b in els[i + 1 :]:
            out.add(G.add(a, b))
    return out


def complement(D, G: GroupSpec) -> tuple[list[GroupElement], Classification]:
    """G \\ D together with its verified classification.

    Requires D to classify as DS or ADS; the complement must then match
    the parameter map (v, v-k, v-2k+lambda, t).
    """
    base = classify(D, G)
    if base.kind == KIND_NONE:
        raise ValueError("complement is only defined for DS/ADS inputs")
    dset = set(G.coerce_set(D))
    comp = [g for g in G.elements() if g not in dset]
    cls = classify(comp, G)
    v, k = base.v, base.k
    expect_lam = v - 2 * k + base.lam
    if cls.kind != base.kind or cls.lam != expect_lam or cls.t != base.t:
        raise AssertionError(
            f"complement parameter map violated: {base} -> {cls}, "
            f"expected lambda={expect_lam}, t={base.t}"
        )
    return comp, cls


def verify_relative_ds(D, G: GroupSpec, N, expect=None) -> bool:
    """Check that D is a relative difference set with forbidden subgroup N.

    N is given as an explicit list of elements and must be a subgroup;
    the profile must vanish on N minus the identity and be constant on
    the rest.  `expect` optionally pins (m, n, k, lambda).
    """
    nset = set(G.coerce_set(N))
    ident = G.identity()
    if ident not in nset or any(G.sub(a, b) not in nset for a in nset for b in nset):
        raise ValueError("N is not closed under the group operation")
    if G.v % len(nset) != 0:
        raise ValueError("|N| does not divide |G|")
    prof = difference_profile(D, G)
    n = len(nset)
    m = G.v // n
    k = prof.k
    forbidden_idx = {G.index_of(g) for g in nset}
    lam = None
    for i in range(1, G.v):
        c = prof.counts[i]
        if i in forbidden_idx:
            if c != 0:
                return False
        else:
            if lam is None:
                lam = c
            elif c != lam:
                return False
    if lam is None:  # N = G: no elements outside the forbidden subgroup
        lam = 0
    if expect is not None and tuple(expect) != (m, n, k, lam):
        return False
    return True
