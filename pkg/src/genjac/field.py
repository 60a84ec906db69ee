"""Exact arithmetic in F_p and F_{p^k}, with an opt-in multiplication counter.

Extension fields use a polynomial basis modulo a monic irreducible
reduction polynomial, coefficients stored little-endian by degree.
Every element multiplication or division records one tick in each
counter scoped over the operation; nothing else is instrumented, so the
counts compare the work different group laws ask of the field.
"""

from __future__ import annotations

from contextlib import contextmanager
from contextvars import ContextVar
from typing import Iterator, Sequence

from .numbertheory import is_prime

# Characteristic stays word-sized; exact Python ints do the rest.
PRIME_BOUND = 1 << 61


class MulCounter:
    """Tally of field multiplications and divisions, split by extension degree."""

    __slots__ = ("muls", "by_degree")

    def __init__(self) -> None:
        self.muls = 0
        self.by_degree: dict[int, int] = {}

    def record(self, degree: int) -> None:
        self.muls += 1
        self.by_degree[degree] = self.by_degree.get(degree, 0) + 1

    def __repr__(self) -> str:
        return f"MulCounter(muls={self.muls}, by_degree={self.by_degree})"


_counters: ContextVar[tuple[MulCounter, ...]] = ContextVar("genjac_mul_counters", default=())


@contextmanager
def count_mults() -> Iterator[MulCounter]:
    """Scope a fresh MulCounter over the enclosed field operations.

    Scopes nest (an outer counter keeps seeing inner work) and are
    context-local, so concurrent tasks each observe only their own
    operations.
    """
    counter = MulCounter()
    token = _counters.set(_counters.get() + (counter,))
    try:
        yield counter
    finally:
        _counters.reset(token)


def _tick(degree: int) -> None:
    for counter in _counters.get():
        counter.record(degree)


class _Field:
    """Shared behavior of the prime field and its extensions."""

    p: int
    degree: int
    order: int

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise ValueError("mismatched field parameters")
            return value
        if isinstance(value, int):
            coeffs = [0] * self.degree
            coeffs[0] = value % self.p
            return FieldElement(self, tuple(coeffs))
        if isinstance(value, Sequence):
            if len(value) > self.degree:
                raise ValueError(f"too many coefficients for degree-{self.degree} field")
            coeffs = [c % self.p for c in value]
            coeffs += [0] * (self.degree - len(coeffs))
            return FieldElement(self, tuple(coeffs))
        raise TypeError(f"cannot coerce {value!r} into {self}")

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, (0,) * self.degree)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, (1,) + (0,) * (self.degree - 1))

    def elements(self) -> Iterator["FieldElement"]:
        """All field elements, in a fixed base-p little-endian order."""
        for coeffs in _coeff_tuples(self.p, self.degree):
            yield FieldElement(self, coeffs)

    def sample(self, rng) -> "FieldElement":
        v = rng.randrange(self.order)
        coeffs = []
        for _ in range(self.degree):
            coeffs.append(v % self.p)
            v //= self.p
        return FieldElement(self, tuple(coeffs))

    def from_record(self, text: str) -> "FieldElement":
        return self(parse_coeffs(text))


def _coeff_tuples(p: int, k: int) -> Iterator[tuple[int, ...]]:
    # little-endian counting: constant coefficient varies fastest
    for v in range(p**k):
        out = []
        for _ in range(k):
            out.append(v % p)
            v //= p
        yield tuple(out)


class PrimeField(_Field):
    """F_p for a word-sized prime p."""

    __slots__ = ("p", "degree", "order")

    def __init__(self, p: int) -> None:
        if not isinstance(p, int) or not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p >= PRIME_BOUND:
            raise ValueError(f"prime {p} exceeds the 2^61 bound")
        self.p = p
        self.degree = 1
        self.order = p

    @property
    def name(self) -> str:
        return f"F_{self.p}"

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("PrimeField", self.p))

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"


class ExtField(_Field):
    """F_{p^k} in a polynomial basis modulo a monic irreducible polynomial."""

    __slots__ = ("base", "p", "degree", "order", "poly")

    def __init__(self, base: PrimeField, degree: int, poly: Sequence[int]) -> None:
        if not isinstance(base, PrimeField):
            raise ValueError("extension must sit over a PrimeField")
        if degree < 2:
            raise ValueError("extension degree must be at least 2; use PrimeField for k=1")
        poly = tuple(c % base.p for c in poly)
        if len(poly) != degree + 1 or poly[-1] != 1:
            raise ValueError("reduction polynomial must be monic of the stated degree")
        if not _poly_is_irreducible(poly, base.p):
            raise ValueError(f"reduction polynomial {list(poly)} is reducible over F_{base.p}")
        self.base = base
        self.p = base.p
        self.degree = degree
        self.order = base.p**degree
        self.poly = poly

    @classmethod
    def quadratic(cls, base: PrimeField) -> "ExtField":
        """F_{p^2} = F_p[u]/(u^2+1); needs p = 3 mod 4 so that -1 is a non-square."""
        if base.p % 4 != 3:
            raise ValueError(f"u^2+1 is reducible over F_{base.p}; supply a polynomial")
        return cls(base, 2, (1, 0, 1))

    @property
    def name(self) -> str:
        return f"F_{self.p}^{self.degree}"

    def embed(self, elem: "FieldElement") -> "FieldElement":
        """Lift a base-field element along the inclusion F_p -> F_{p^k}."""
        if elem.field != self.base:
            raise ValueError("mismatched field parameters")
        return FieldElement(self, elem.coeffs + (0,) * (self.degree - 1))

    def _reduce_product(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        k, p = self.degree, self.p
        conv = [0] * (2 * k - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    conv[i + j] += ai * bj
        for i in range(2 * k - 2, k - 1, -1):
            c = conv[i] % p
            if c:
                base = i - k
                for j in range(k):
                    pj = self.poly[j]
                    if pj:
                        conv[base + j] -= c * pj
            conv[i] = 0
        return tuple(c % p for c in conv[:k])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ExtField)
            and other.p == self.p
            and other.degree == self.degree
            and other.poly == self.poly
        )

    def __hash__(self) -> int:
        return hash(("ExtField", self.p, self.degree, self.poly))

    def __repr__(self) -> str:
        return f"ExtField(p={self.p}, degree={self.degree}, poly={list(self.poly)})"


class FieldElement:
    """Immutable element of a PrimeField or ExtField."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: _Field, coeffs: tuple[int, ...]) -> None:
        self.field = field
        self.coeffs = coeffs

    def _check(self, other: "FieldElement") -> None:
        if not isinstance(other, FieldElement) or other.field != self.field:
            raise ValueError("mismatched field parameters")

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        f = self.field
        if f.degree == 1:
            return FieldElement(f, ((self.coeffs[0] + other.coeffs[0]) % f.p,))
        return FieldElement(f, tuple((x + y) % f.p for x, y in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        f = self.field
        if f.degree == 1:
            return FieldElement(f, ((self.coeffs[0] - other.coeffs[0]) % f.p,))
        return FieldElement(f, tuple((x - y) % f.p for x, y in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "FieldElement":
        f = self.field
        return FieldElement(f, tuple(-x % f.p for x in self.coeffs))

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        f = self.field
        _tick(f.degree)
        if f.degree == 1:
            return FieldElement(f, (self.coeffs[0] * other.coeffs[0] % f.p,))
        return FieldElement(f, f._reduce_product(self.coeffs, other.coeffs))

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        # divides via inverse-and-multiply, so one counter tick per division
        self._check(other)
        return self * other.inverse()

    def inverse(self) -> "FieldElement":
        f = self.field
        if self.is_zero():
            raise ZeroDivisionError(f"division by zero in {f!r}")
        if f.degree == 1:
            return FieldElement(f, (pow(self.coeffs[0], -1, f.p),))
        return FieldElement(f, _poly_inverse(self.coeffs, f.poly, f.p))

    def __pow__(self, n: int) -> "FieldElement":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        if n == 0:
            if self.is_zero():
                raise ArithmeticError("0**0 is undefined")
            return self.field.one
        acc = self
        for bit in bin(n)[3:]:
            acc = acc * acc
            if bit == "1":
                acc = acc * self
        return acc

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldElement)
            and other.field == self.field
            and other.coeffs == self.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def serialize(self) -> str:
        """Comma-separated coefficients, little-endian by degree."""
        return ",".join(str(c) for c in self.coeffs)

    def sqrt(self) -> "FieldElement | None":
        """A square root if one exists, else None (Tonelli-Shanks in F_q)."""
        f = self.field
        q = f.order
        if self.is_zero():
            return self
        one = f.one
        if self ** ((q - 1) // 2) != one:
            return None
        if q % 4 == 3:
            return self ** ((q + 1) // 4)
        s, t = 0, q - 1
        while t % 2 == 0:
            t //= 2
            s += 1
        z = None
        for cand in f.elements():
            if not cand.is_zero() and cand ** ((q - 1) // 2) != one:
                z = cand
                break
        c = z**t
        x = self ** ((t + 1) // 2)
        b = self**t
        m = s
        while b != one:
            i, probe = 0, b
            while probe != one:
                probe = probe * probe
                i += 1
            e = c ** (1 << (m - i - 1))
            x = x * e
            c = e * e
            b = b * c
            m = i
        return x

    def __repr__(self) -> str:
        if self.field.degree == 1:
            return f"{self.coeffs[0]} (mod {self.field.p})"
        return f"({self.serialize()}) in {self.field.name}"


# -- polynomial helpers over F_p, coefficients as little-endian int tuples --


def _ptrim(a: Sequence[int]) -> tuple[int, ...]:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def _pmul(a: Sequence[int], b: Sequence[int], p: int) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _ptrim(out)


def _pmod(a: Sequence[int], m: Sequence[int], p: int) -> tuple[int, ...]:
    # m monic
    a = list(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm and any(a):
        c = a[-1] % p
        if c:
            shift = len(a) - 1 - dm
            for j in range(dm + 1):
                a[shift + j] = (a[shift + j] - c * m[j]) % p
        a.pop()
    return _ptrim(a)


def _psub(a: Sequence[int], b: Sequence[int], p: int) -> tuple[int, ...]:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _ptrim((x - y) % p for x, y in zip(a, b))


def _pgcd(a: Sequence[int], b: Sequence[int], p: int) -> tuple[int, ...]:
    a, b = _ptrim(a), _ptrim(b)
    while b:
        bm = _monic(b, p)
        a, b = bm, _pmod(a, bm, p)
    return _monic(a, p) if a else ()


def _monic(a: Sequence[int], p: int) -> tuple[int, ...]:
    a = _ptrim(a)
    if not a:
        return ()
    lead = a[-1]
    if lead == 1:
        return a
    inv = pow(lead, -1, p)
    return tuple(c * inv % p for c in a)


def _ppowmod(base: Sequence[int], e: int, m: Sequence[int], p: int) -> tuple[int, ...]:
    result: tuple[int, ...] = (1,)
    b = _pmod(base, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, b, p), m, p)
        b = _pmod(_pmul(b, b, p), m, p)
        e >>= 1
    return result


def _poly_is_irreducible(poly: tuple[int, ...], p: int) -> bool:
    """Rabin's test: x^(p^k) = x mod f, and gcd(x^(p^(k/r)) - x, f) = 1 for prime r | k."""
    k = len(poly) - 1
    x = (0, 1)
    frob = x
    checkpoints = {}
    for i in range(1, k + 1):
        frob = _ppowmod(frob, p, poly, p)
        checkpoints[i] = frob
    if _psub(checkpoints[k], x, p):
        return False
    r = 2
    kk = k
    primes = set()
    while r * r <= kk:
        if kk % r == 0:
            primes.add(r)
            while kk % r == 0:
                kk //= r
        r += 1
    if kk > 1:
        primes.add(kk)
    for r in primes:
        g = _pgcd(_psub(checkpoints[k // r], x, p), poly, p)
        if len(g) - 1 != 0:
            return False
    return True


def _poly_inverse(coeffs: tuple[int, ...], poly: tuple[int, ...], p: int) -> tuple[int, ...]:
    # extended Euclid in F_p[x]; raw int arithmetic keeps the counter clean
    a = _ptrim(coeffs)
    r0, r1 = tuple(poly), a
    s0, s1 = (), (1,)
    while r1:
        # divide r0 by r1
        q = _pdivmod_q(r0, r1, p)
        r0, r1 = r1, _psub(r0, _pmul(q, r1, p), p)
        s0, s1 = s1, _psub(s0, _pmul(q, s1, p), p)
    if len(r0) != 1:
        raise ZeroDivisionError("element is not invertible")
    inv_lead = pow(r0[0], -1, p)
    out = [c * inv_lead % p for c in s0]
    out += [0] * (len(poly) - 1 - len(out))
    return tuple(out[: len(poly) - 1])


def _pdivmod_q(a: Sequence[int], b: Sequence[int], p: int) -> tuple[int, ...]:
    a = list(_ptrim(a))
    b = _ptrim(b)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - db, 0)
    while len(a) - 1 >= db and any(a):
        c = a[-1] * inv % p
        shift = len(a) - 1 - db
        if c:
            q[shift] = c
            for j in range(db + 1):
                a[shift + j] = (a[shift + j] - c * b[j]) % p
        a.pop()
    return _ptrim(q)


def parse_coeffs(text: str) -> list[int]:
    """Parse 'c0,c1,...' little-endian coefficient text."""
    text = text.strip()
    if not text:
        raise ValueError("empty coefficient record")
    return [int(chunk) for chunk in text.split(",")]


def coeffs_to_record(coeffs: Sequence[int]) -> str:
    return ",".join(str(c) for c in coeffs)
