"""Integer helpers shared across the package: primality, factoring, CRT."""

from __future__ import annotations

import math
from dataclasses import dataclass

# Deterministic Miller-Rabin witness set, valid far beyond the 2^61 field bound.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# Trial division gives up past this; a prime cofactor is still accepted.
_TRIAL_LIMIT = 1 << 26


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test for word-sized integers."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> list[tuple[int, int]]:
    """Factor n into (prime, multiplicity) pairs, ascending.

    Trial division up to 2^26, then a primality test on whatever is left.
    A composite cofactor past that bound is out of desk-scale reach and
    raises ValueError rather than stalling.
    """
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    if n > 1 and is_prime(n):
        return [(n, 1)]
    factors: list[tuple[int, int]] = []
    rest = n
    d = 2
    while d * d <= rest and d <= _TRIAL_LIMIT:
        if rest % d == 0:
            e = 0
            while rest % d == 0:
                rest //= d
                e += 1
            factors.append((d, e))
            # a prime cofactor ends the scan; saves the full sweep to the
            # trial limit when n has one large prime factor
            if rest > 1 and is_prime(rest):
                break
        d += 1 if d == 2 else 2
    if rest > 1:
        if not is_prime(rest):
            raise ValueError(
                f"{n} has composite cofactor {rest} beyond desk-scale trial division"
            )
        factors.append((rest, 1))
    return factors


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b)."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return a, s0, t0


def crt(residues: list[tuple[int, int]]) -> tuple[int, int]:
    """Combine (residue, modulus) pairs with pairwise coprime moduli.

    Returns (x, M) with x = r_i mod m_i for every pair and M the product.
    """
    x, m = 0, 1
    for r, n in residues:
        g, s, _ = xgcd(m, n)
        if g != 1:
            raise ValueError(f"moduli {m} and {n} are not coprime")
        # s*m = 1 mod n, so the correction term leaves x mod m untouched
        x = (x + (r - x) * s % n * m) % (m * n)
        m *= n
    return x, m


@dataclass(frozen=True)
class Factorization:
    """A positive integer together with its verified prime factorization."""

    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        prod = 1
        for p, e in self.factors:
            if e < 1 or not is_prime(p):
                raise ValueError(f"bad factor {p}^{e} in factorization of {self.n}")
            prod *= p**e
        if prod != self.n:
            raise ValueError(f"factors multiply to {prod}, not {self.n}")

    @classmethod
    def from_int(cls, n: int) -> "Factorization":
        return cls(n, tuple(factorize(n)))

    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def merge(self, other: "Factorization") -> "Factorization":
        """Factorization of the product n * other.n."""
        exps: dict[int, int] = {}
        for p, e in self.factors + other.factors:
            exps[p] = exps.get(p, 0) + e
        return Factorization(self.n * other.n, tuple(sorted(exps.items())))

    def __str__(self) -> str:
        if not self.factors:
            return "1 = 1"
        parts = [f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors]
        return f"{self.n} = " + " * ".join(parts)

    @classmethod
    def parse(cls, text: str) -> "Factorization":
        """Inverse of str(): e.g. '12 = 2^2 * 3'."""
        left, _, right = text.partition("=")
        n = int(left.strip())
        right = right.strip()
        if n == 1 and right in ("1", ""):
            return cls(1, ())
        factors = []
        for chunk in right.split("*"):
            base, _, exp = chunk.strip().partition("^")
            factors.append((int(base), int(exp) if exp else 1))
        return cls(n, tuple(factors))


def lcm(a: int, b: int) -> int:
    return math.lcm(a, b)
