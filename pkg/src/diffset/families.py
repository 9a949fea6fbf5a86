"""Generators for the classical difference-set families and embedded sporadic sets.

Residue families (quadratic/Paley, quartic, octic, with or without zero),
the Singer planar construction over prime fields, and the eight embedded
sporadic records used by the extension scanner.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .arith import factorize, is_prime, primitive_root
from .diffcore import Classification, classify
from .groups import GroupElement, GroupSpec

FAMILY_NAMES = (
    "PALEY",
    "QUARTIC_B",
    "QUARTIC_B0",
    "OCTIC_O",
    "OCTIC_O0",
    "SINGER",
    "SPORADIC",
)


@dataclass(frozen=True)
class FamilySpec:
    name: str
    p: Optional[int] = None  # prime modulus for residue families
    q: Optional[int] = None  # prime order for SINGER
    sporadic_id: Optional[str] = None
    with_zero: bool = False

    def __post_init__(self):
        if self.name not in FAMILY_NAMES:
            raise ValueError(f"unknown family {self.name!r}")


def power_residues(p: int, e: int) -> set[int]:
    """The e-th power residues modulo the prime p (the class C_0)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if e < 1 or (p - 1) % e != 0:
        raise ValueError(f"e={e} must divide p-1={p - 1}")
    return {pow(x, e, p) for x in range(1, p)}


def paley(v: int) -> set[int]:
    """Quadratic residues modulo a prime v = 3 (mod 4): a ((v, (v-1)/2, (v-3)/4))-DS."""
    if not is_prime(v) or v % 4 != 3:
        raise ValueError(f"Paley set needs a prime v = 3 (mod 4), got {v}")
    return power_residues(v, 2)


# --- Singer planar difference sets -----------------------------------------


def _find_irreducible_cubic(q: int) -> tuple[int, int, int]:
    """Coefficients (b2, b1, b0) of a monic irreducible x^3+b2x^2+b1x+b0 over GF(q).

    Degree 3 makes root-freeness sufficient for irreducibility.
    """
    for b2 in range(q):
        for b1 in range(q):
            for b0 in range(1, q):  # b0 = 0 has the root 0
                if all((x * x * x + b2 * x * x + b1 * x + b0) % q for x in range(q)):
                    return (b2, b1, b0)
    raise RuntimeError(f"no irreducible cubic over GF({q})")  # unreachable for prime q


def _cubic_mul(a, b, q, red):
    """Multiply degree<3 polynomials mod (x^3 + red2 x^2 + red1 x + red0) over GF(q)."""
    b2, b1, b0 = red
    c = [0] * 5
    for i in range(3):
        if a[i]:
            for j in range(3):
                c[i + j] = (c[i + j] + a[i] * b[j]) % q
    for i in (4, 3):  # x^3 = -(b2 x^2 + b1 x + b0)
        if c[i]:
            t = c[i]
            c[i] = 0
            c[i - 1] = (c[i - 1] - t * b2) % q
            c[i - 2] = (c[i - 2] - t * b1) % q
            c[i - 3] = (c[i - 3] - t * b0) % q
    return (c[0], c[1], c[2])


def _cubic_pow(a, n, q, red):
    out = (1, 0, 0)
    while n:
        if n & 1:
            out = _cubic_mul(out, a, q, red)
        a = _cubic_mul(a, a, q, red)
        n >>= 1
    return out


def singer_planar(q: int) -> set[int]:
    """A (q^2+q+1, q+1, 1) planar difference set in Z_{q^2+q+1}, q prime.

    Discrete logs of the 2-dimensional subspace spanned by {1, x} in
    GF(q^3)*, taken modulo q^2+q+1.
    """
    if not is_prime(q):
        raise ValueError(f"Singer construction implemented for prime q only, got {q}")
    red = _find_irreducible_cubic(q)
    order = q**3 - 1
    v = q * q + q + 1
    prime_factors = list(factorize(order))
    beta = None
    for c1 in range(q):
        for c0 in range(q):
            cand = (c0, 1, c1)  # c0 + x + c1*x^2
            if all(_cubic_pow(cand, order // r, q, red) != (1, 0, 0) for r in prime_factors):
                beta = cand
                break
        if beta:
            break
    if beta is None:
        raise RuntimeError(f"no generator of GF({q}^3)* found")  # unreachable
    D = set()
    x = (1, 0, 0)
    for i in range(v):
        if x[2] == 0:  # in the span of {1, x}
            D.add(i)
        x = _cubic_mul(x, beta, q, red)
    if len(D) != q + 1:
        raise RuntimeError("Singer construction produced a set of the wrong size")
    return D


# --- Embedded sporadic sets -------------------------------------------------

# The seven database-scan records (2-group difference sets that extend to an
# ADS by adding the listed element) plus the Z2xZ8 biplane, which has no
# valid extension and witnesses that the odd-order sumset shortcut fails for
# even order.


@dataclass(frozen=True)
class SporadicRecord:
    id: str
    group: GroupSpec
    elements: tuple[GroupElement, ...]
    added: Optional[GroupElement]  # documented extension element, if any


_Z44 = GroupSpec([4, 4])
_Z88 = GroupSpec([8, 8])
_Z444 = GroupSpec([4, 4, 4])
_Z28 = GroupSpec([2, 8])

SPORADIC_RECORDS: tuple[SporadicRecord, ...] = (
    SporadicRecord(
        "16-6-2-Z4xZ4",
        _Z44,
        ((0, 0), (1, 0), (2, 0), (0, 1), (3, 2), (0, 3)),
        (1, 1),
    ),
    SporadicRecord(
        "64-28-12-Z8xZ8",
        _Z88,
        (
            (0, 0), (1, 0), (0, 1), (2, 0), (0, 2), (4, 0),
            (0, 4), (1, 1), (3, 0), (1, 2), (1, 4), (0, 3),
            (4, 1), (4, 4), (3, 4), (1, 6), (2, 3), (2, 5),
            (4, 3), (6, 4), (4, 6), (3, 3), (5, 5), (7, 2),
            (6, 3), (6, 5), (7, 6), (7, 7),
        ),
        (3, 1),
    ),
    SporadicRecord(
        "64-28-12-Z4xZ4xZ4-a",
        _Z444,
        (
            (0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1),
            (2, 0, 0), (0, 2, 0), (1, 1, 0), (1, 0, 1),
            (1, 2, 0), (1, 0, 2), (2, 0, 1), (0, 0, 3),
            (2, 2, 0), (1, 1, 1), (3, 1, 0), (1, 2, 1),
            (1, 2, 2), (2, 3, 0), (2, 1, 2), (0, 3, 2),
            (2, 0, 3), (1, 1, 3), (1, 3, 2), (3, 0, 3),
            (3, 3, 1), (3, 3, 2), (3, 2, 3), (3, 3, 3),
        ),
        (0, 1, 1),
    ),
    SporadicRecord(
        "64-28-12-Z4xZ4xZ4-b",
        _Z444,
        (
            (0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1),
            (2, 0, 0), (0, 2, 0), (1, 1, 0), (1, 0, 1),
            (3, 0, 0), (1, 0, 2), (0, 1, 1), (0, 1, 2),
            (2, 0, 1), (2, 2, 0), (1, 3, 0), (3, 0, 2),
            (0, 3, 1), (0, 1, 3), (2, 3, 0), (0, 2, 3),
            (3, 1, 2), (3, 2, 1), (3, 0, 3), (1, 2, 3),
            (0, 3, 3), (2, 3, 2), (2, 2, 3), (3, 3, 2),
        ),
        (1, 1, 1),
    ),
    SporadicRecord(
        "64-28-12-Z4xZ4xZ4-c",
        _Z444,
        (
            (0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1),
            (2, 0, 0), (0, 2, 0), (1, 1, 0), (1, 0, 1),
            (3, 0, 0), (1, 0, 2), (0, 1, 1), (2, 1, 0),
            (0, 2, 1), (2, 2, 0), (1, 0, 3), (3, 0, 2),
            (0, 3, 1), (0, 1, 3), (0, 3, 2), (2, 0, 3),
            (3, 3, 0), (3, 1, 2), (1, 3, 2), (3, 2, 1),
            (0, 3, 3), (2, 3, 2), (2, 2, 3), (3, 2, 3),
        ),
        (1, 1, 1),
    ),
    SporadicRecord(
        "64-28-12-Z4xZ4xZ4-d",
        _Z444,
        (
            (0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1),
            (2, 0, 0), (0, 2, 0), (1, 1, 0), (1, 0, 1),
            (3, 0, 0), (1, 0, 2), (0, 1, 1), (2, 1, 0),
            (0, 2, 1), (0, 0, 3), (2, 2, 0), (1, 0, 3),
            (3, 0, 2), (0, 3, 1), (0, 3, 2), (0, 2, 3),
            (3, 3, 0), (3, 1, 2), (1, 3, 2), (3, 2, 1),
            (2, 1, 3), (2, 3, 2), (3, 2, 3), (2, 3, 3),
        ),
        (1, 1, 1),
    ),
    SporadicRecord(
        "64-28-12-Z4xZ4xZ4-e",
        _Z444,
        (
            (0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1),
            (2, 0, 0), (0, 2, 0), (1, 1, 0), (1, 0, 1),
            (3, 0, 0), (1, 0, 2), (0, 1, 1), (2, 1, 0),
            (0, 2, 1), (0, 0, 3), (2, 2, 0), (1, 3, 0),
            (1, 0, 3), (3, 0, 2), (0, 3, 2), (0, 2, 3),
            (3, 1, 2), (3, 2, 1), (2, 3, 1), (2, 1, 3),
            (0, 3, 3), (2, 3, 2), (3, 3, 2), (3, 2, 3),
        ),
        (1, 1, 1),
    ),
    SporadicRecord(
        "16-6-2-Z2xZ8",
        _Z28,
        ((0, 0), (0, 1), (0, 2), (0, 5), (1, 0), (1, 6)),
        None,
    ),
)

_SPORADIC_BY_ID = {r.id: r for r in SPORADIC_RECORDS}

# Table-scan records: the ones carrying a documented extension element.
TABLE1_IDS = tuple(r.id for r in SPORADIC_RECORDS if r.added is not None)


def sporadic(record_id: str) -> SporadicRecord:
    try:
        return _SPORADIC_BY_ID[record_id]
    except KeyError:
        raise ValueError(
            f"unknown sporadic id {record_id!r}; known: {sorted(_SPORADIC_BY_ID)}"
        ) from None


def sporadic_ids() -> list[str]:
    return [r.id for r in SPORADIC_RECORDS]


def generate(spec: FamilySpec) -> tuple[GroupSpec, list[GroupElement]]:
    """Materialize a family instance as (group, element list)."""
    name = spec.name
    if name == "SPORADIC":
        rec = sporadic(spec.sporadic_id or "")
        return rec.group, list(rec.elements)
    if name == "SINGER":
        if spec.q is None:
            raise ValueError("SINGER needs q")
        D = singer_planar(spec.q)
        G = GroupSpec([spec.q**2 + spec.q + 1])
        return G, G.coerce_set(sorted(D))
    if spec.p is None:
        raise ValueError(f"{name} needs p")
    p = spec.p
    if name == "PALEY":
        D = paley(p)
    elif name in ("QUARTIC_B", "QUARTIC_B0"):
        D = power_residues(p, 4)
    elif name in ("OCTIC_O", "OCTIC_O0"):
        D = power_residues(p, 8)
    else:
        raise ValueError(f"unknown family {name!r}")
    if name.endswith("0") or spec.with_zero:
        D = D | {0}
    G = GroupSpec([p])
    return G, G.coerce_set(sorted(D))


def generate_classified(spec: FamilySpec) -> tuple[GroupSpec, list[GroupElement], Classification]:
    G, D = generate(spec)
    return G, D, classify(D, G)


# Residue-family generator helper used by tests: a primitive root makes the
# class structure explicit without changing the set.
def power_residues_via_root(p: int, e: int) -> set[int]:
    g = primitive_root(p)
    f = (p - 1) // e
    return {pow(g, e * s, p) for s in range(f)}
