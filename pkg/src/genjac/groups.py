"""Commutative group backends and extensions presented by symmetric 2-cocycles.

A normalized symmetric 2-cocycle c: A x A -> B twists the product set
A x B into a commutative group:

    (a1, b1) + (a2, b2) = (a1 + a2, b1 + b2 + c(a1, a2))

with identity (0, 0) and inverse (-a, -(b + c(a, -a))).  Embedding B as
{(0, b)} and projecting to A makes 0 -> B -> C -> A -> 0 exact; that
exactness is what the discrete-log reduction in dlp.py exploits.  All
backends write their law additively, including the multiplicative group
of a field, so the same extension machinery covers every case.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Iterator

from .curve import Curve, Point, SupportCollisionError
from .field import FieldElement, _Field
from .numbertheory import Factorization


class NotInImageError(Exception):
    """Element is not in the embedded copy of the fiber group."""


class Group(ABC):
    """Commutative group written additively."""

    @property
    @abstractmethod
    def identity(self):
        ...

    @abstractmethod
    def add(self, x, y):
        ...

    @abstractmethod
    def neg(self, x):
        ...

    @abstractmethod
    def serialize(self, x) -> str:
        ...

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def scalar_mul(self, n: int, x):
        if n < 0:
            n, x = -n, self.neg(x)
        if n == 0:
            return self.identity
        acc = x
        for bit in bin(n)[3:]:
            acc = self.add(acc, acc)
            if bit == "1":
                acc = self.add(acc, x)
        return acc

    def elements(self) -> Iterator:
        raise NotImplementedError(f"{self.describe()} is not enumerable")

    def sample(self, rng):
        raise NotImplementedError(f"{self.describe()} does not support sampling")

    def describe(self) -> str:
        return type(self).__name__


class CyclicGroup(Group):
    """Z/n with elements 0..n-1; the cheap test backend."""

    def __init__(self, n: int) -> None:
        if n < 1:
            raise ValueError("modulus must be positive")
        self.n = n

    @property
    def identity(self) -> int:
        return 0

    def add(self, x: int, y: int) -> int:
        return (x + y) % self.n

    def neg(self, x: int) -> int:
        return -x % self.n

    def serialize(self, x: int) -> str:
        return str(x)

    def elements(self) -> Iterator[int]:
        return iter(range(self.n))

    def sample(self, rng) -> int:
        return rng.randrange(self.n)

    def describe(self) -> str:
        return f"Z/{self.n}"

    def __eq__(self, other) -> bool:
        return isinstance(other, CyclicGroup) and other.n == self.n

    def __hash__(self) -> int:
        return hash(("CyclicGroup", self.n))


class CurveGroup(Group):
    """Rational points of a short-Weierstrass curve under chord-and-tangent."""

    def __init__(self, curve: Curve) -> None:
        self.curve = curve

    @property
    def identity(self) -> Point:
        return self.curve.infinity

    def add(self, x: Point, y: Point) -> Point:
        return self.curve.add(x, y)

    def neg(self, x: Point) -> Point:
        return self.curve.neg(x)

    def serialize(self, x: Point) -> str:
        return x.serialize()

    def elements(self) -> Iterator[Point]:
        return iter(self.curve.enumerate_points())

    def sample(self, rng) -> Point:
        return self.curve.random_point(rng)

    def describe(self) -> str:
        return f"E({self.curve.field.name})"

    def __eq__(self, other) -> bool:
        return isinstance(other, CurveGroup) and other.curve == self.curve

    def __hash__(self) -> int:
        return hash(("CurveGroup", self.curve))


class MultiplicativeGroup(Group):
    """Nonzero field elements; the additive interface wraps multiplication."""

    def __init__(self, field: _Field) -> None:
        self.field = field

    @property
    def identity(self) -> FieldElement:
        return self.field.one

    def add(self, x: FieldElement, y: FieldElement) -> FieldElement:
        return x * y

    def neg(self, x: FieldElement) -> FieldElement:
        return x.inverse()

    def serialize(self, x: FieldElement) -> str:
        return x.serialize()

    def elements(self) -> Iterator[FieldElement]:
        return (x for x in self.field.elements() if not x.is_zero())

    def sample(self, rng) -> FieldElement:
        while True:
            x = self.field.sample(rng)
            if not x.is_zero():
                return x

    def describe(self) -> str:
        return f"Gm({self.field.name})"

    def __eq__(self, other) -> bool:
        return isinstance(other, MultiplicativeGroup) and other.field == self.field

    def __hash__(self) -> int:
        return hash(("MultiplicativeGroup", self.field))


@dataclass(frozen=True)
class ExtElement:
    """Element of an extension group: a base-group part and a fiber part."""

    a_part: Any
    b_part: Any

    def __repr__(self) -> str:
        return f"({self.a_part!r}, {self.b_part!r})"


class Cocycle(ABC):
    """Symmetric normalized 2-cocycle c: A x A -> B bound to its two groups.

    Normalized means c(x, 0) = c(0, x) = 0 in B, so (0, 0) really is the
    extension's identity.  The tag identifies the construction: "zero",
    "coboundary", or "generalized-jacobian".
    """

    tag: str

    def __init__(self, a_group: Group, b_group: Group) -> None:
        self.a_group = a_group
        self.b_group = b_group

    @abstractmethod
    def __call__(self, p, q):
        ...

    def describe(self) -> str:
        return self.tag


class ZeroCocycle(Cocycle):
    """Identically zero; the extension is the direct product A x B."""

    tag = "zero"

    def __call__(self, p, q):
        return self.b_group.identity


class CoboundaryCocycle(Cocycle):
    """c(p, q) = g(p) + g(q) - g(p+q) for a table-backed g with g(0) = 0.

    Always a valid cocycle, and the resulting extension is isomorphic to
    the direct product, which makes these good randomized test subjects.
    Requires an enumerable A so the table can be checked for coverage.
    """

    tag = "coboundary"

    def __init__(self, a_group: Group, b_group: Group, table: dict) -> None:
        super().__init__(a_group, b_group)
        if table.get(a_group.identity) != b_group.identity:
            raise ValueError("coboundary table must send 0 to 0")
        for a in a_group.elements():
            if a not in table:
                raise ValueError(f"coboundary table misses {a_group.serialize(a)}")
        self.table = table

    @classmethod
    def random(cls, a_group: Group, b_group: Group, rng) -> "CoboundaryCocycle":
        table = {a: b_group.sample(rng) for a in a_group.elements()}
        table[a_group.identity] = b_group.identity
        return cls(a_group, b_group, table)

    def __call__(self, p, q):
        B = self.b_group
        return B.sub(B.add(self.table[p], self.table[q]), self.table[self.a_group.add(p, q)])

    def describe(self) -> str:
        return f"coboundary(|A|={len(self.table)})"


class ExtensionGroup(Group):
    """The group on A x B determined by a symmetric 2-cocycle."""

    def __init__(self, cocycle: Cocycle) -> None:
        self.cocycle = cocycle
        self.a_group = cocycle.a_group
        self.b_group = cocycle.b_group

    @property
    def identity(self) -> ExtElement:
        return ExtElement(self.a_group.identity, self.b_group.identity)

    def add(self, x: ExtElement, y: ExtElement) -> ExtElement:
        A, B = self.a_group, self.b_group
        a_sum = A.add(x.a_part, y.a_part)
        b_sum = B.add(x.b_part, y.b_part)
        return ExtElement(a_sum, B.add(b_sum, self.cocycle(x.a_part, y.a_part)))

    def neg(self, x: ExtElement) -> ExtElement:
        A, B = self.a_group, self.b_group
        a_neg = A.neg(x.a_part)
        return ExtElement(a_neg, B.neg(B.add(x.b_part, self.cocycle(x.a_part, a_neg))))

    def serialize(self, x: ExtElement) -> str:
        return f"{self.a_group.serialize(x.a_part)}|{self.b_group.serialize(x.b_part)}"

    def embed(self, b) -> ExtElement:
        """The injection B -> C, b -> (0, b)."""
        return ExtElement(self.a_group.identity, b)

    def project(self, x: ExtElement):
        """The projection C -> A."""
        return x.a_part

    def unembed(self, x: ExtElement):
        """Partial inverse of embed; defined only on the embedded copy of B."""
        if x.a_part != self.a_group.identity:
            raise NotInImageError("element does not lie in the embedded fiber")
        return x.b_part

    def elements(self) -> Iterator[ExtElement]:
        for a in self.a_group.elements():
            for b in self.b_group.elements():
                yield ExtElement(a, b)

    def sample(self, rng) -> ExtElement:
        return ExtElement(self.a_group.sample(rng), self.b_group.sample(rng))

    def describe(self) -> str:
        return (
            f"extension of {self.a_group.describe()} by {self.b_group.describe()}"
            f" [{self.cocycle.describe()}]"
        )


def direct_product(a_group: Group, b_group: Group) -> ExtensionGroup:
    return ExtensionGroup(ZeroCocycle(a_group, b_group))


def element_order(group: Group, x, order_multiple: Factorization) -> int:
    """Exact order of x given a factored multiple of it."""
    n = order_multiple.n
    if group.scalar_mul(n, x) != group.identity:
        raise ValueError(f"{n} is not a multiple of the element's order")
    for l, e in order_multiple.factors:
        for _ in range(e):
            if n % l == 0 and group.scalar_mul(n // l, x) == group.identity:
                n //= l
            else:
                break
    return n


@dataclass
class CheckReport:
    """Outcome of a batch of relation checks, with labeled failures."""

    checks: int = 0
    failures: list[str] | None = None

    def __post_init__(self) -> None:
        if self.failures is None:
            self.failures = []

    def record(self, ok: bool, label: str) -> None:
        self.checks += 1
        if not ok:
            self.failures.append(label)

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        return f"{self.checks} checks, {len(self.failures)} failures"


def verify_cocycle(cocycle: Cocycle, triples: list[tuple]) -> CheckReport:
    """Check symmetry and the cocycle relation on each supplied A-triple.

    Relations, written additively in B:

        c(p, q) = c(q, p)
        c(p, q) + c(p+q, r) = c(q, r) + c(p, q+r)
    """
    A, B = cocycle.a_group, cocycle.b_group
    report = CheckReport()
    for p, q, r in triples:
        label = f"({A.serialize(p)}, {A.serialize(q)}, {A.serialize(r)})"
        report.record(cocycle(p, q) == cocycle(q, p), f"symmetry on {label}")
        lhs = B.add(cocycle(p, q), cocycle(A.add(p, q), r))
        rhs = B.add(cocycle(q, r), cocycle(p, A.add(q, r)))
        report.record(lhs == rhs, f"cocycle relation on {label}")
    return report


def verify_group_axioms(group: Group, triples: list[tuple]) -> CheckReport:
    """Commutativity, associativity, identity, and inverse on each triple."""
    report = CheckReport()
    e = group.identity
    for x, y, z in triples:
        label = f"({group.serialize(x)}, {group.serialize(y)}, {group.serialize(z)})"
        report.record(group.add(x, y) == group.add(y, x), f"commutativity on {label}")
        report.record(
            group.add(group.add(x, y), z) == group.add(x, group.add(y, z)),
            f"associativity on {label}",
        )
        report.record(group.add(x, e) == x, f"identity on {label}")
        report.record(group.add(x, group.neg(x)) == e, f"inverse on {label}")
    return report


def sample_admissible_triples(cocycle: Cocycle, count: int, rng, max_tries: int = 100000):
    """Random A-triples on which both cocycle relations evaluate cleanly.

    Modulus cocycles refuse to evaluate when an argument pair's support
    hits the modulus; such draws are skipped.  Returns (triples, skipped).
    """
    A = cocycle.a_group
    out: list[tuple] = []
    skipped = 0
    for _ in range(max_tries):
        if len(out) >= count:
            break
        p, q, r = A.sample(rng), A.sample(rng), A.sample(rng)
        try:
            cocycle(p, q)
            cocycle(q, p)
            cocycle(A.add(p, q), r)
            cocycle(q, r)
            cocycle(p, A.add(q, r))
        except SupportCollisionError:
            skipped += 1
            continue
        out.append((p, q, r))
    else:
        raise RuntimeError(f"could not find {count} admissible triples in {max_tries} draws")
    return out, skipped


def sample_operable_triples(group: Group, count: int, rng, max_tries: int = 100000):
    """Random element triples on which all four axiom checks evaluate cleanly."""
    out: list[tuple] = []
    skipped = 0
    for _ in range(max_tries):
        if len(out) >= count:
            break
        x, y, z = group.sample(rng), group.sample(rng), group.sample(rng)
        try:
            group.add(group.add(x, y), z)
            group.add(x, group.add(y, z))
            group.add(y, x)
            group.add(x, group.neg(x))
        except SupportCollisionError:
            skipped += 1
            continue
        out.append((x, y, z))
    else:
        raise RuntimeError(f"could not find {count} operable triples in {max_tries} draws")
    return out, skipped
