"""Integer arithmetic helpers: primality, factorization, primitive roots."""

from __future__ import annotations

import random
from math import gcd, isqrt

# Below this bound the Miller-Rabin base set {2,3,...,41} is a proven
# deterministic primality test (Sorenson & Webster).
_MR_DETERMINISTIC_BOUND = 3_317_044_064_679_887_385_961_981
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _mr_witness(a: int, d: int, r: int, n: int) -> bool:
    """True if a witnesses compositeness of n = 2^r * d + 1, d odd."""
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(r - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


def is_prime(n: int, rounds: int = 40) -> bool:
    """Miller-Rabin primality test.

    Deterministic below _MR_DETERMINISTIC_BOUND; above it, `rounds`
    random bases are used (see prime_certainty for honest labeling).
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    if n < _MR_DETERMINISTIC_BOUND:
        return not any(_mr_witness(a, d, r, n) for a in _MR_BASES if a % n != 0)
    rng = random.Random(n)
    for _ in range(max(rounds, 40)):
        a = rng.randrange(2, n - 1)
        if _mr_witness(a, d, r, n):
            return False
    return True


def prime_certainty(n: int) -> str:
    """How sure is_prime(n) is: 'deterministic' or 'probable'."""
    return "deterministic" if n < _MR_DETERMINISTIC_BOUND else "probable"


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division, {prime: exponent}."""
    if n < 1:
        raise ValueError(f"factorize wants n >= 1, got {n}")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        f += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def primitive_root(p: int) -> int:
    """Smallest primitive root modulo the prime p."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 2:
        return 1
    factors = list(factorize(p - 1))
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    raise RuntimeError(f"no primitive root found for {p}")  # unreachable


def is_perfect_square(n: int) -> bool:
    if n < 0:
        return False
    r = isqrt(n)
    return r * r == n


def euler_phi(v: int) -> int:
    """Euler totient via factorization."""
    if v < 1:
        raise ValueError(f"euler_phi wants v >= 1, got {v}")
    out = v
    for p in factorize(v):
        out -= out // p
    return out
