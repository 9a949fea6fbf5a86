"""Cyclotomic numbers of order 8 and the octic ADS classification machinery.

Order-8 cyclotomic numbers come in four closed-form cases: p = 1 or 9
(mod 16), crossed with 2 being a quartic residue mod p or not, written in
terms of the representations p = x^2 + 4y^2 = a^2 + 2b^2 with
x = a = 1 (mod 4).  The signs of y and b are generator-dependent and are
fixed empirically by matching the closed form against direct enumeration.

The (i,0) column drives everything: octic residues form a difference set
iff that column is constant, and an almost difference set iff the column's
distinct entries split into two consecutive values, which reduces to small
exact linear systems whose integer solutions the solver enumerates.
Norm-form solution families b^2 - 2y^2 = N are walked along the unit orbit
of Z[sqrt(2)] with exact integer arithmetic.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Optional

from .arith import (
    factorize,
    is_perfect_square,
    is_prime,
    prime_certainty,
    primitive_root,
)
from .diffcore import AdsParams, classify
from .families import power_residues
from .groups import GroupSpec

# --- tables -----------------------------------------------------------------


@dataclass(frozen=True)
class CyclotomicTable:
    p: int
    e: int
    f: int
    g: int  # generator whose power classes index the rows/columns
    numbers: tuple[tuple[int, ...], ...]

    def total(self) -> int:
        return sum(sum(row) for row in self.numbers)

    def row_sums(self) -> list[int]:
        return [sum(row) for row in self.numbers]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.numbers)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "e": self.e,
            "f": self.f,
            "generator": self.g,
            "numbers": [list(r) for r in self.numbers],
        }


def _require_prime(p: int):
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def _is_primitive_root(g: int, p: int) -> bool:
    return all(pow(g, (p - 1) // q, p) != 1 for q in factorize(p - 1))


def cyclotomic_numbers(p: int, e: int, g: Optional[int] = None) -> CyclotomicTable:
    """Exact (i,j)_e table by direct enumeration: O(p) time and space.

    (i,j)_e counts x with x in C_i and x+1 in C_j, classes taken with
    respect to the generator g.
    """
    _require_prime(p)
    if e < 2 or (p - 1) % e != 0:
        raise ValueError(f"e={e} must divide p-1={p - 1}")
    if g is None:
        g = primitive_root(p)
    elif not _is_primitive_root(g % p, p):
        raise ValueError(f"{g} is not a primitive root mod {p}")
    f = (p - 1) // e
    cls = [0] * p  # discrete log mod e; cls[0] unused
    x = 1
    for j in range(p - 1):
        cls[x] = j % e
        x = x * g % p
    numbers = [[0] * e for _ in range(e)]
    for x in range(1, p - 1):
        numbers[cls[x]][cls[x + 1]] += 1
    return CyclotomicTable(p, e, f, g, tuple(tuple(r) for r in numbers))


# --- quadratic representations ----------------------------------------------


@dataclass(frozen=True)
class QuadReps:
    """p = x^2 + 4y^2 = a^2 + 2b^2 with x = a = 1 (mod 4).

    x and a are then sign-unique; y and b start nonnegative until a sign
    convention is fixed against an enumerated table.
    """

    p: int
    x: int
    y: int
    a: int
    b: int
    sign_convention: str = "y,b nonnegative (unnormalized)"

    def __post_init__(self):
        if self.x * self.x + 4 * self.y * self.y != self.p:
            raise ValueError(f"x^2+4y^2 != p for {self}")
        if self.a * self.a + 2 * self.b * self.b != self.p:
            raise ValueError(f"a^2+2b^2 != p for {self}")
        if self.x % 4 != 1 or self.a % 4 != 1:
            raise ValueError(f"need x = a = 1 (mod 4), got x={self.x}, a={self.a}")

    def with_signs(self, y_sign: int, b_sign: int, note: str) -> "QuadReps":
        return QuadReps(self.p, self.x, y_sign * abs(self.y),
                        self.a, b_sign * abs(self.b), note)


def _norm_mod4(x: int) -> int:
    return x if x % 4 == 1 else -x


def quad_representations(p: int) -> QuadReps:
    """Bounded search for both representations of a prime p = 1 (mod 8)."""
    _require_prime(p)
    if p % 8 != 1:
        raise ValueError(f"p = 1 (mod 8) required, got {p} = {p % 8} (mod 8)")
    xy = None
    for y in range(1, isqrt(p // 4) + 1):
        r = p - 4 * y * y
        if r >= 0 and is_perfect_square(r):
            xy = (_norm_mod4(isqrt(r)), y)
            break
    ab = None
    for b in range(1, isqrt(p // 2) + 1):
        r = p - 2 * b * b
        if r >= 0 and is_perfect_square(r):
            ab = (_norm_mod4(isqrt(r)), b)
            break
    if xy is None or ab is None:
        raise ValueError(f"no representation found for {p}")  # impossible for p = 1 mod 8
    return QuadReps(p, xy[0], xy[1], ab[0], ab[1])


# --- order-8 closed forms ----------------------------------------------------

# 15 coefficients A..O as (const, cx, ca, cy, cb): 64*letter = p + const +
# cx*x + ca*a + cy*y + cb*b.  Keyed by (p mod 16, 2 quartic residue?).

_COEFFS = {
    (1, True): (
        (-23, -18, -24, 0, 0),   # A
        (-7, 2, 4, 16, 16),      # B
        (-7, 6, 0, 16, 0),       # C
        (-7, 2, 4, -16, 16),     # D
        (-7, -2, 8, 0, 0),       # E
        (-7, 2, 4, 16, -16),     # F
        (-7, 6, 0, -16, 0),      # G
        (-7, 2, 4, -16, -16),    # H
        (1, 2, -4, 0, 0),        # I
        (1, -6, 4, 0, 0),        # J
        (1, 2, -4, 0, 0),        # K
        (1, 2, -4, 0, 0),        # L
        (1, -6, 4, 0, 0),        # M
        (1, -2, 0, 0, 0),        # N
        (1, 2, -4, 0, 0),        # O
    ),
    (1, False): (
        (-23, 6, 0, 0, 0),       # A
        (-7, 2, 4, 0, 0),        # B
        (-7, -2, -8, -16, 0),    # C
        (-7, 2, 4, 0, 0),        # D
        (-7, -10, 0, 0, 0),      # E
        (-7, 2, 4, 0, 0),        # F
        (-7, -2, -8, 16, 0),     # G
        (-7, 2, 4, 0, 0),        # H
        (1, -6, 4, 0, 0),        # I
        (1, 2, -4, 0, -16),      # J
        (1, 2, -4, 16, 0),       # K
        (1, 2, -4, -16, 0),      # L
        (1, 2, -4, 0, 16),       # M
        (1, 6, 8, 0, 0),         # N
        (1, -6, 4, 0, 0),        # O
    ),
    (9, True): (
        (-15, -2, 0, 0, 0),      # A
        (1, 2, -4, 16, 0),       # B
        (1, 6, 8, -16, 0),       # C
        (1, 2, -4, -16, 0),      # D
        (1, -18, 0, 0, 0),       # E
        (1, 2, -4, 16, 0),       # F
        (1, 6, 8, 16, 0),        # G
        (1, 2, -4, -16, 0),      # H
        (-7, 2, 4, 0, 0),        # I
        (-7, 2, 4, 0, 0),        # J
        (1, -6, 4, 0, 16),       # K
        (1, 2, -4, 0, 0),        # L
        (1, -6, 4, 0, -16),      # M
        (-7, -2, -8, 0, 0),      # N
        (1, 2, -4, 0, 0),        # O
    ),
    (9, False): (
        (-15, -10, -8, 0, 0),    # A
        (1, 2, -4, 0, -16),      # B
        (1, -2, 0, 16, 0),       # C
        (1, 2, -4, 0, -16),      # D
        (1, 6, 24, 0, 0),        # E
        (1, 2, -4, 0, 16),       # F
        (1, -2, 0, -16, 0),      # G
        (1, 2, -4, 0, 16),       # H
        (-7, 2, 4, 16, 0),       # I
        (-7, 2, 4, -16, 0),      # J
        (1, 2, -4, 0, 0),        # K
        (1, -6, 4, 0, 0),        # L
        (1, 2, -4, 0, 0),        # M
        (-7, 6, 0, 0, 0),        # N
        (1, -6, 4, 0, 0),        # O
    ),
}

_LAYOUTS = {
    1: (
        "ABCDEFGH",
        "BHIJKLMI",
        "CIGMNONJ",
        "DJMFLOOK",
        "EKNLEKNL",
        "FLOOKDJM",
        "GMNONJCI",
        "HIJKLMIB",
    ),
    9: (
        "ABCDEFGH",
        "IJKLFDLM",
        "NONMGLCK",
        "JOOIHMKB",
        "AINJAINJ",
        "IHMKBJOO",
        "NMGLCKNO",
        "JKLFDLMI",
    ),
}


def two_is_quartic_residue(p: int) -> bool:
    """Quartic character of 2 mod a prime p = 1 (mod 8)."""
    if p % 8 != 1:
        raise ValueError(f"defined for p = 1 (mod 8), got {p}")
    return pow(2, (p - 1) // 4, p) == 1


def octic_case(p: int) -> tuple[int, bool]:
    """(p mod 16, whether 2 is a quartic residue) for a prime p = 1 (mod 8)."""
    _require_prime(p)
    m = p % 16
    if m not in (1, 9):
        raise ValueError(f"p = 1 (mod 8) required, got {p}")
    return m, two_is_quartic_residue(p)


def octic_closed_form(p: int, reps: QuadReps, case: Optional[tuple[int, bool]] = None) -> CyclotomicTable:
    """Assemble the 8x8 order-8 table from the case's 15 coefficient formulas.

    Every scaled entry must be divisible by 64; failure signals a wrong
    case or unnormalized signs of y, b.
    """
    if case is None:
        case = octic_case(p)
    coeffs = _COEFFS[case]
    layout = _LAYOUTS[case[0]]
    x, a, y, b = reps.x, reps.a, reps.y, reps.b
    values = []
    for letter, (c0, cx, ca, cy, cb) in zip("ABCDEFGHIJKLMNO", coeffs):
        num = p + c0 + cx * x + ca * a + cy * y + cb * b
        if num % 64 != 0:
            raise ValueError(
                f"64*{letter} = {num} not divisible by 64 at p={p}: wrong case or signs"
            )
        values.append(num // 64)
    byletter = dict(zip("ABCDEFGHIJKLMNO", values))
    numbers = tuple(tuple(byletter[ch] for ch in row) for row in layout)
    return CyclotomicTable(p, 8, (p - 1) // 8, 0, numbers)


def sign_normalization(p: int, g: Optional[int] = None) -> tuple[QuadReps, CyclotomicTable]:
    """Fix the signs of y and b so the closed form matches enumeration.

    The matching sign pair depends on (p, g); exactly one of the four
    choices can match, and none matching signals an implementation bug.
    """
    table = cyclotomic_numbers(p, 8, g)
    base = quad_representations(p)
    case = octic_case(p)
    matches = []
    for ys in (1, -1):
        for bs in (1, -1):
            cand = base.with_signs(ys, bs, f"matched enumeration at g={table.g}")
            try:
                closed = octic_closed_form(p, cand, case)
            except ValueError:
                continue
            if closed.numbers == table.numbers:
                matches.append(cand)
    if len(matches) != 1:
        # y and b are even and nonzero for p = 1 (mod 8), so flipping either
        # sign shifts some entry by y/2 or b/2 != 0: exactly one pair can match
        raise AssertionError(
            f"{len(matches)} sign choices match enumeration at p={p}, g={table.g}"
        )
    return matches[0], table


# --- octic DS / ADS classification -------------------------------------------


def octic_residue_set(p: int, with_zero: bool = False) -> list[int]:
    D = sorted(power_residues(p, 8))
    if with_zero:
        D = [0] + D
    return D


def octic_ds_test(p: int) -> Optional[int]:
    """lambda when the octic residues mod p form a difference set, else None.

    Requires the constant (i,0) column, possible only for p = 9 (mod 16),
    and there equivalent to x = -3, a = 1, i.e. p = 9 + 4y^2 = 1 + 2b^2.
    """
    _require_prime(p)
    if p % 8 != 1:
        raise ValueError(f"octic residues need p = 1 (mod 8), got {p}")
    if p % 16 != 9:
        return None  # one of the (i,0) is odd and the rest even: no DS
    if not (is_perfect_square((p - 9) // 4) if (p - 9) % 4 == 0 else False):
        return None
    if not (is_perfect_square((p - 1) // 2) if (p - 1) % 2 == 0 else False):
        return None
    f = (p - 1) // 8
    assert (f - 1) % 8 == 0  # forced by p = 1 + 8t^2 with t odd
    return (f - 1) // 8


def _theorem_condition_O(p: int) -> bool:
    """p = 8t^2 + 49 = 64u^2 + 441 with t odd, u even (plus 17, 41 specials)."""
    if p in (17, 41):
        return True
    if p <= 441:
        return False
    q8, r8 = divmod(p - 49, 8)
    q64, r64 = divmod(p - 441, 64)
    if r8 or r64 or not (is_perfect_square(q8) and is_perfect_square(q64)):
        return False
    return isqrt(q8) % 2 == 1 and isqrt(q64) % 2 == 0


def _theorem_condition_O0(p: int) -> bool:
    """p = 8t^2 + 1 = 64u^2 + 9 with t and u odd (plus the 41 special)."""
    if p == 41:
        return True
    if p <= 9:
        return False
    q8, r8 = divmod(p - 1, 8)
    q64, r64 = divmod(p - 9, 64)
    if r8 or r64 or not (is_perfect_square(q8) and is_perfect_square(q64)):
        return False
    return isqrt(q8) % 2 == 1 and isqrt(q64) % 2 == 1


def _octic_params(p: int, with_zero: bool) -> AdsParams:
    k = (p - 1) // 8 + (1 if with_zero else 0)
    lam = k * (k - 1) // (p - 1)
    t = (lam + 1) * (p - 1) - k * (k - 1)
    return AdsParams(p, k, lam, t)


def _classify_octic(p: int, with_zero: bool, verify_limit: int) -> Optional[AdsParams]:
    _require_prime(p)
    if p % 8 != 1:
        return None
    condition = _theorem_condition_O0(p) if with_zero else _theorem_condition_O(p)
    params = _octic_params(p, with_zero) if condition else None
    if p <= verify_limit:
        cls = classify(octic_residue_set(p, with_zero), GroupSpec([p]))
        direct = cls.params if cls.is_ads() else None
        if (direct is None) != (params is None) or (params and direct != params):
            raise RuntimeError(
                f"octic theorem condition and direct verification disagree at "
                f"p={p}, with_zero={with_zero}: condition={params}, direct={direct}"
            )
    return params


def classify_type_O(p: int, verify_limit: int = 10**6) -> Optional[AdsParams]:
    """ADS parameters of the octic residues mod p, or None.

    For p <= verify_limit the arithmetic characterization is double-checked
    against a direct profile of the residue set; disagreement is fatal.
    """
    return _classify_octic(p, with_zero=False, verify_limit=verify_limit)


def classify_type_O0(p: int, verify_limit: int = 10**6) -> Optional[AdsParams]:
    """ADS parameters of {0} plus the octic residues mod p, or None."""
    return _classify_octic(p, with_zero=True, verify_limit=verify_limit)


# --- the Table 3/4 linear systems --------------------------------------------


@dataclass(frozen=True)
class OcticSystemRow:
    a: int
    x: int
    norm: int  # (x^2 - a^2) / 2 = b^2 - 2y^2
    factors: tuple[tuple[int, int], ...]  # of |norm|, (prime, exponent)
    assignment: tuple[int, ...]  # 0 -> lambda, 1 -> lambda+1, per column letter
    solved_y: Optional[int] = None
    solved_b: Optional[int] = None

    def factor_string(self) -> str:
        if self.norm == 0:
            return "0"
        parts = [f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors]
        return ("-" if self.norm < 0 else "") + "*".join(parts)

    def key(self) -> tuple[int, int, int]:
        return (self.a, self.x, self.norm)

    def to_json(self) -> dict:
        out = {
            "a": self.a,
            "x": self.x,
            "norm": self.norm,
            "factors": self.factor_string(),
            "assignment": list(self.assignment),
        }
        if self.solved_y is not None:
            out["y"] = self.solved_y
        if self.solved_b is not None:
            out["b"] = self.solved_b
        return out


def _solve_exact(rows: list[list[Fraction]], rhs: list[Fraction]):
    """Gaussian elimination over Q: ('none'|'unique'|'under', solution)."""
    m = [row[:] + [r] for row, r in zip(rows, rhs)]
    nrows, ncols = len(m), len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c]
        m[r] = [val / inv for val in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                factor = m[i][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if m[i][ncols] != 0:
            return "none", None
    if len(pivots) < ncols:
        return "under", None
    sol = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        sol[c] = m[i][ncols]
    return "unique", sol


def _column_letters(mod16: int) -> list[str]:
    layout = _LAYOUTS[mod16]
    seen: list[str] = []
    for row in layout:
        if row[0] not in seen:
            seen.append(row[0])
    return seen


def solve_octic_systems(
    mod16: int, two_quartic: bool, target: str = "O"
) -> list[OcticSystemRow]:
    """All integer (a, x) solving some two-valued (i,0) assignment.

    target 'O' classifies the bare octic residue set; 'O0' adds zero, which
    bumps the (0,0) entry (and its equal (4,0) partner when f is odd, both
    carried by the letter A) before the assignment systems are solved.
    Solutions keep the x = a = 1 (mod 4) normalization; each row carries
    norm (x^2-a^2)/2 and its factorization.
    """
    if mod16 not in (1, 9):
        raise ValueError("mod16 must be 1 or 9")
    if target not in ("O", "O0"):
        raise ValueError("target must be 'O' or 'O0'")
    coeffs = dict(zip("ABCDEFGHIJKLMNO", _COEFFS[(mod16, two_quartic)]))
    letters = _column_letters(mod16)
    exprs = {ch: list(coeffs[ch]) for ch in letters}
    if target == "O0":
        # f odd (p = 9 mod 16): +1 at classes 0 and 4, both letter A;
        # f even (p = 1 mod 16): +2 at class 0 only, again letter A.
        exprs["A"] = exprs["A"][:]
        exprs["A"][0] += 64 if mod16 == 9 else 128
    # variables that actually separate the column expressions
    var_idx = [
        i for i in range(1, 5)
        if len({tuple(exprs[ch])[i] for ch in letters}) > 1
    ]
    rows_out: list[OcticSystemRow] = []
    seen: set[tuple[int, int, int]] = set()
    nletters = len(letters)
    for mask in range(1, (1 << nletters) - 1):
        eps = [(mask >> i) & 1 for i in range(nletters)]
        ref = letters[0]
        rows, rhs = [], []
        consistent = True
        for i, ch in enumerate(letters[1:], start=1):
            # 64*(expr(ch) - expr(ref)) = 64*(eps(ch) - eps(ref))
            coefrow = [Fraction(exprs[ch][v] - exprs[ref][v]) for v in var_idx]
            const = exprs[ch][0] - exprs[ref][0]
            target_rhs = Fraction(64 * (eps[i] - eps[0]) - const)
            if not any(coefrow) and target_rhs != 0:
                consistent = False
                break
            rows.append(coefrow)
            rhs.append(target_rhs)
        if not consistent:
            continue
        status, sol = _solve_exact(rows, rhs)
        if status != "unique":
            continue
        values = dict(zip(var_idx, sol))
        x = values.get(1, Fraction(0))
        a = values.get(2, Fraction(0))
        y = values.get(3)
        b = values.get(4)
        if any(val.denominator != 1 for val in sol):
            continue
        x, a = int(x), int(a)
        if x % 4 != 1 or a % 4 != 1:
            continue
        norm = (x * x - a * a) // 2
        row = OcticSystemRow(
            a=a,
            x=x,
            norm=norm,
            factors=tuple(sorted(factorize(abs(norm)).items())) if norm else (),
            assignment=tuple(eps),
            solved_y=int(y) if y is not None else None,
            solved_b=int(b) if b is not None else None,
        )
        if row.key() not in seen:
            seen.add(row.key())
            rows_out.append(row)
    return rows_out


# --- norm-equation orbit enumeration ------------------------------------------


@dataclass(frozen=True)
class NormSolution:
    b: int
    y: int
    norm: int
    seed: tuple[int, int]
    index: int  # number of u^2 multiplications from the seed
    p: Optional[int] = None
    p_is_prime: Optional[bool] = None
    certainty: Optional[str] = None

    def to_json(self) -> dict:
        out = {
            "b": self.b,
            "y": self.y,
            "norm": self.norm,
            "seed": list(self.seed),
            "index": self.index,
        }
        if self.p is not None:
            out["p"] = self.p
            out["p_is_prime"] = self.p_is_prime
            out["primality"] = self.certainty
        return out


def norm_seed_solutions(N: int) -> list[tuple[int, int]]:
    """Orbit seeds of b^2 - 2y^2 = N: irreducible under (b,y) -> (3b-4y, 3y-2b).

    Seeds have 0 <= y <= 2*sqrt(|N|); multiplication by u^2 = 3 + 2*sqrt(2)
    walks each branch upward without revisiting.
    """
    if N == 0:
        raise ValueError("N must be nonzero")
    seeds = []
    for y in range(0, 2 * isqrt(abs(N)) + 2):
        bb = N + 2 * y * y
        if bb < 0 or not is_perfect_square(bb):
            continue
        b = isqrt(bb)
        rb, ry = 3 * b - 4 * y, 3 * y - 2 * b
        if rb >= 0 and 0 <= ry < y:
            continue  # reducible: reached from a smaller solution
        seeds.append((b, y))
    return sorted(seeds, key=lambda s: (s[1], s[0]))


def enumerate_norm_solutions(
    N: int,
    max_results: int = 20,
    a: Optional[int] = None,
    x: Optional[int] = None,
) -> list[NormSolution]:
    """Walk all u^2-orbits of b^2 - 2y^2 = N, merged by increasing b.

    With a family (a, x) given, each solution carries p = a^2 + 2b^2
    (equal to x^2 + 4y^2 when both are supplied) and its primality,
    labeled deterministic or probable per the Miller-Rabin regime.
    """
    if a is not None and x is not None and (x * x - a * a) != 2 * N:
        raise ValueError(f"(x^2-a^2)/2 = {(x * x - a * a) // 2} != N = {N}")
    seeds = norm_seed_solutions(N)
    out: list[NormSolution] = []
    heap: list[tuple[int, int, int, int]] = []
    for si, (b, y) in enumerate(seeds):
        heapq.heappush(heap, (b, y, si, 0))
    while heap and len(out) < max_results:
        b, y, si, idx = heapq.heappop(heap)
        assert b * b - 2 * y * y == N  # exact orbit invariant, every step
        p = None
        prime = None
        cert = None
        if a is not None:
            p = a * a + 2 * b * b
        elif x is not None:
            p = x * x + 4 * y * y
        if p is not None:
            prime = is_prime(p)
            cert = prime_certainty(p)
        out.append(NormSolution(b, y, N, seeds[si], idx, p, prime, cert))
        nb, ny = 3 * b + 4 * y, 2 * b + 3 * y
        heapq.heappush(heap, (nb, ny, si, idx + 1))
    return out


def norm_prime_values(N: int, a: int, count: int, max_scan: int = 200) -> list[int]:
    """The first `count` primes of the family p = a^2 + 2b^2 over norm-N solutions."""
    sols = enumerate_norm_solutions(N, max_results=max_scan, a=a)
    primes = [s.p for s in sols if s.p_is_prime]
    return primes[:count]
