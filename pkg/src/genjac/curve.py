"""Affine short-Weierstrass curves y^2 = x^3 + ax + b over exact finite fields.

Besides the chord-and-tangent group law this module evaluates the
rational function v/l attached to a pair of points P, Q: l is the line
through P and Q (tangent at P when P = Q, vertical when Q = -P) and v
is the vertical line through P + Q.  The quotient has divisor
(P+Q) + (O) - (P) - (Q), which is exactly the shape a modulus cocycle
needs.  Evaluating at a point of that support, or anywhere the raw
formula degenerates, is a hard error rather than a silent wrong value.
"""

from __future__ import annotations

from typing import Iterator

from .field import ExtField, FieldElement, _Field
from .numbertheory import Factorization

# Point enumeration walks the whole field; keep it desk-scale.
ENUM_BOUND = 1 << 22


class SupportCollisionError(Exception):
    """Evaluation point lies in the zero/pole support of the requested function."""


class Curve:
    """y^2 = x^3 + ax + b over a field of characteristic at least 5."""

    __slots__ = ("field", "a", "b", "base_curve", "_infinity")

    def __init__(self, field: _Field, a, b, _base: "Curve | None" = None) -> None:
        if field.p in (2, 3):
            raise ValueError("short Weierstrass form needs characteristic >= 5")
        self.field = field
        self.a = field(a)
        self.b = field(b)
        disc = field(4) * self.a * self.a * self.a + field(27) * self.b * self.b
        if disc.is_zero():
            raise ValueError("singular curve: 4a^3 + 27b^2 = 0")
        self.base_curve = _base
        self._infinity = Point(self, None, None)

    @property
    def infinity(self) -> "Point":
        return self._infinity

    def point(self, x, y) -> "Point":
        x, y = self.field(x), self.field(y)
        if y * y != x * x * x + self.a * x + self.b:
            raise ValueError(f"({x!r}, {y!r}) is not on {self!r}")
        return Point(self, x, y)

    def parse_point(self, record: str) -> "Point":
        """Inverse of Point.serialize(): 'inf' or 'x;y' coefficient lists."""
        record = record.strip()
        if record == "inf":
            return self.infinity
        xs, _, ys = record.partition(";")
        if not ys:
            raise ValueError(f"bad point record {record!r}")
        return self.point(self.field.from_record(xs), self.field.from_record(ys))

    def extend(self, ext_field: ExtField) -> "Curve":
        """The same equation over an extension of this curve's field."""
        if ext_field.base != self.field:
            raise ValueError("extension field does not contain the curve's field")
        return Curve(ext_field, ext_field.embed(self.a), ext_field.embed(self.b), _base=self)

    def embed_point(self, P: "Point") -> "Point":
        if P.curve != self.base_curve:
            raise ValueError("point does not come from this curve's base curve")
        if P.is_infinity:
            return self.infinity
        f = self.field
        return Point(self, f.embed(P.x), f.embed(P.y))

    def add(self, P: "Point", Q: "Point") -> "Point":
        if P.curve != self or Q.curve != self:
            raise ValueError("points on mismatched curves")
        if P.is_infinity:
            return Q
        if Q.is_infinity:
            return P
        if P.x == Q.x:
            if P.y != Q.y or P.y.is_zero():
                return self._infinity
            x2 = P.x * P.x
            lam = (x2 + x2 + x2 + self.a) / (P.y + P.y)
        else:
            lam = (Q.y - P.y) / (Q.x - P.x)
        x3 = lam * lam - P.x - Q.x
        y3 = lam * (P.x - x3) - P.y
        return Point(self, x3, y3)

    def neg(self, P: "Point") -> "Point":
        if P.is_infinity:
            return P
        return Point(self, P.x, -P.y)

    def scalar_mul(self, n: int, P: "Point") -> "Point":
        if n < 0:
            return self.scalar_mul(-n, self.neg(P))
        if n == 0 or P.is_infinity:
            return self._infinity
        acc = P
        for bit in bin(n)[3:]:
            acc = self.add(acc, acc)
            if bit == "1":
                acc = self.add(acc, P)
        return acc

    def enumerate_points(self, bound: int = ENUM_BOUND) -> list["Point"]:
        """All rational points including the identity; field must be desk-scale."""
        if self.field.order > bound:
            raise ValueError(f"field of order {self.field.order} exceeds enumeration bound {bound}")
        roots: dict[FieldElement, list[FieldElement]] = {}
        for y in self.field.elements():
            roots.setdefault(y * y, []).append(y)
        points = [self._infinity]
        for x in self.field.elements():
            rhs = x * x * x + self.a * x + self.b
            for y in roots.get(rhs, ()):
                points.append(Point(self, x, y))
        return points

    def random_point(self, rng, max_tries: int = 10000) -> "Point":
        """A uniform-ish random affine point, via random x and a square-root attempt."""
        f = self.field
        for _ in range(max_tries):
            x = f.sample(rng)
            rhs = x * x * x + self.a * x + self.b
            if rhs.is_zero():
                return Point(self, x, f.zero)
            y = rhs.sqrt()
            if y is None:
                continue
            if rng.randrange(2):
                y = -y
            return Point(self, x, y)
        raise RuntimeError("no curve point found; curve suspiciously small")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Curve)
            and other.field == self.field
            and other.a == self.a
            and other.b == self.b
        )

    def __hash__(self) -> int:
        return hash(("Curve", self.field, self.a.coeffs, self.b.coeffs))

    def __repr__(self) -> str:
        return f"Curve(y^2 = x^3 + {self.a.serialize()}*x + {self.b.serialize()} over {self.field.name})"


class Point:
    """Affine curve point, or the identity when both coordinates are None."""

    __slots__ = ("curve", "x", "y")

    def __init__(self, curve: Curve, x: FieldElement | None, y: FieldElement | None) -> None:
        self.curve = curve
        self.x = x
        self.y = y

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __add__(self, other: "Point") -> "Point":
        return self.curve.add(self, other)

    def __sub__(self, other: "Point") -> "Point":
        return self.curve.add(self, self.curve.neg(other))

    def __neg__(self) -> "Point":
        return self.curve.neg(self)

    def __rmul__(self, n: int) -> "Point":
        if not isinstance(n, int):
            return NotImplemented
        return self.curve.scalar_mul(n, self)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Point)
            and other.curve == self.curve
            and other.x == self.x
            and other.y == self.y
        )

    def __hash__(self) -> int:
        if self.is_infinity:
            return hash((self.curve, None))
        return hash((self.curve, self.x.coeffs, self.y.coeffs))

    def serialize(self) -> str:
        if self.is_infinity:
            return "inf"
        return f"{self.x.serialize()};{self.y.serialize()}"

    def __repr__(self) -> str:
        if self.is_infinity:
            return "Point(inf)"
        return f"Point({self.x.serialize()}; {self.y.serialize()})"


def element_order(P: Point, group_order: Factorization) -> int:
    """Exact order of P given a factored multiple of it (usually the group order)."""
    n = group_order.n
    if not (n * P).is_infinity:
        raise ValueError(f"group order {n} is inconsistent with the point")
    for l, e in group_order.factors:
        for _ in range(e):
            if n % l == 0 and (n // l * P).is_infinity:
                n //= l
            else:
                break
    return n


def eval_line_fraction(P: Point, Q: Point, X: Point) -> FieldElement:
    """Evaluate (v/l)(X) for the chord-vertical pair attached to P and Q.

    P and Q may live on the base curve while X lives on an extension of
    it; the pair is lifted before evaluating.  When P or Q is the
    identity the function is the constant 1.  Otherwise X must avoid
    {O, P, Q, P+Q, -(P+Q)}: those are the zeros and poles of l and v,
    where the quotient is 0, undefined, or 0/0.
    """
    curve = X.curve
    if P.curve != curve or Q.curve != curve:
        if curve.base_curve is not None and P.curve == curve.base_curve == Q.curve:
            P = curve.embed_point(P)
            Q = curve.embed_point(Q)
        else:
            raise ValueError("X must live on the points' curve or an extension of it")
    if P.is_infinity or Q.is_infinity:
        return curve.field.one
    if X.is_infinity:
        raise SupportCollisionError("the identity is in the support")
    S = curve.add(P, Q)
    if X == P or X == Q:
        raise SupportCollisionError("X is a pole of the line fraction")
    if X == S or X == curve.neg(S):
        raise SupportCollisionError("X is a zero of the vertical line")
    if S.is_infinity:
        # l is the vertical through P and v is the constant 1
        return curve.field.one / (X.x - P.x)
    if P == Q:
        x2 = P.x * P.x
        lam = (x2 + x2 + x2 + curve.a) / (P.y + P.y)
    else:
        lam = (Q.y - P.y) / (Q.x - P.x)
    l = (X.y - P.y) - lam * (X.x - P.x)
    v = X.x - S.x
    return v / l


def iter_subgroup(gen: Point) -> Iterator[Point]:
    """Points of <gen> in the order O, gen, 2*gen, ..."""
    cur = gen.curve.infinity
    while True:
        yield cur
        cur = cur + gen
        if cur.is_infinity:
            return
