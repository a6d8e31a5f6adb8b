"""Affine short-Weierstrass curves y^2 = x^3 + ax + b over a prime field.

Points are plain tuples ``(x, y)``; the point at infinity is ``None``.
Curves and points are validated when constructed, after which the group
operations assume their inputs are on the curve.
"""

from dataclasses import dataclass
from math import isqrt
from typing import List, Optional, Tuple

from .modular import MAX_MODULUS, mod_inv

Point = Optional[Tuple[int, int]]
INFINITY: Point = None


class NoOrderFound(ValueError):
    pass


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    for d in range(3, isqrt(m) + 1, 2):
        if m % d == 0:
            return False
    return True


@dataclass(frozen=True)
class CurveParams:
    p: int
    a: int
    b: int

    def __post_init__(self):
        if not 3 <= self.p <= MAX_MODULUS:
            raise ValueError(f"p = {self.p} outside supported range [3, 2**31]")
        if not is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        object.__setattr__(self, "a", self.a % self.p)
        object.__setattr__(self, "b", self.b % self.p)
        if (4 * self.a**3 + 27 * self.b**2) % self.p == 0:
            raise ValueError(f"singular curve: 4a^3 + 27b^2 = 0 mod {self.p}")

    def point(self, x: int, y: int) -> Tuple[int, int]:
        """Build a validated affine point."""
        pt = (x % self.p, y % self.p)
        if not is_on_curve(pt, self):
            raise ValueError(f"{pt} is not on {self}")
        return pt


def is_on_curve(pt: Point, c: CurveParams) -> bool:
    if pt is None:
        return True
    x, y = pt
    if not (0 <= x < c.p and 0 <= y < c.p):
        return False
    return (y * y - (x * x * x + c.a * x + c.b)) % c.p == 0


def negate(pt: Point, c: CurveParams) -> Point:
    if pt is None:
        return None
    x, y = pt
    return (x, -y % c.p)


def add(p1: Point, p2: Point, c: CurveParams) -> Point:
    if p1 is None:
        return p2
    if p2 is None:
        return p1
    x1, y1 = p1
    x2, y2 = p2
    p = c.p
    if x1 == x2 and (y1 + y2) % p == 0:
        # covers P + (-P) and doubling a point with y = 0
        return None
    if p1 == p2:
        lam = (3 * x1 * x1 + c.a) * mod_inv(2 * y1, p) % p
    else:
        lam = (y2 - y1) * mod_inv(x2 - x1, p) % p
    x3 = (lam * lam - x1 - x2) % p
    y3 = (lam * (x1 - x3) - y1) % p
    return (x3, y3)


def double(pt: Point, c: CurveParams) -> Point:
    return add(pt, pt, c)


def scalar_mul(s: int, pt: Point, c: CurveParams) -> Point:
    """Compute ``[s]pt`` by left-to-right double-and-add."""
    if s < 0:
        return scalar_mul(-s, negate(pt, c), c)
    result = None
    for bit in bin(s)[2:]:
        result = add(result, result, c)
        if bit == "1":
            result = add(result, pt, c)
    return result


def scalar_mul_cost(s: int) -> int:
    """Number of non-trivial additions/doublings ``scalar_mul`` spends on ``s``."""
    s = abs(s)
    if s <= 1:
        return 0
    return (s.bit_length() - 1) + (bin(s).count("1") - 1)


def order_of(pt: Point, c: CurveParams, bound: int) -> int:
    """Smallest ``n <= bound`` with ``[n]pt`` at infinity, by repeated addition."""
    acc = pt
    for n in range(1, bound + 1):
        if acc is None:
            return n
        acc = add(acc, pt, c)
    raise NoOrderFound(f"no multiple of {pt} up to {bound} is the identity")


def enumerate_points(c: CurveParams) -> List[Point]:
    """All points of the curve, infinity first, then sorted by ``(x, y)``."""
    p = c.p
    roots: dict = {}
    for y in range(p):
        roots.setdefault(y * y % p, []).append(y)
    points: List[Point] = [None]
    for x in range(p):
        rhs = (x * x * x + c.a * x + c.b) % p
        for y in roots.get(rhs, ()):
            points.append((x, y))
    return points


def _prime_factors(m: int) -> List[int]:
    factors = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            factors.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        factors.append(m)
    return factors


@dataclass(frozen=True)
class GroupContext:
    """A discrete-log instance: find k with ``Q = [k]P`` where ``n = ord(P)``."""

    curve: CurveParams
    P: Tuple[int, int]
    Q: Point
    n: int

    def __post_init__(self):
        if self.P is None:
            raise ValueError("generator must be an affine point")
        for name, pt in (("P", self.P), ("Q", self.Q)):
            if not is_on_curve(pt, self.curve):
                raise ValueError(f"{name} = {pt} is not on the curve")
        if self.n < 2:
            raise ValueError("order of P must be at least 2")
        if scalar_mul(self.n, self.P, self.curve) is not None:
            raise ValueError(f"[{self.n}]P is not the identity")
        for q in _prime_factors(self.n):
            if scalar_mul(self.n // q, self.P, self.curve) is None:
                raise ValueError(f"{self.n} is a multiple of ord(P), not the order")

    @classmethod
    def from_values(cls, p, a, b, P, Q, n=None) -> "GroupContext":
        curve = CurveParams(p, a, b)
        P = curve.point(*P)
        Q = None if Q is None else curve.point(*Q)
        if n is None:
            n = order_of(P, curve, p + 1 + 2 * isqrt(p) + 2)
        return cls(curve, P, Q, n)
