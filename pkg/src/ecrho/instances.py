"""Instance records: JSON I/O, the two worked examples and random generation."""

import json
import random
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import List, Optional, Tuple, Union

from .curve import CurveParams, GroupContext, _prime_factors, enumerate_points, is_prime, scalar_mul

FIELDS = ("p", "a", "b", "px", "py", "qx", "qy", "n")


@dataclass(frozen=True)
class InstanceSpec:
    p: int
    a: int
    b: int
    px: int
    py: int
    qx: int
    qy: int
    n: Optional[int] = None

    @classmethod
    def from_dict(cls, record: dict) -> "InstanceSpec":
        missing = [f for f in FIELDS[:-1] if f not in record]
        if missing:
            raise ValueError(f"instance record missing fields: {', '.join(missing)}")
        values = {}
        for f in FIELDS:
            v = record.get(f)
            if v is None:
                continue
            if isinstance(v, bool) or not isinstance(v, int):
                raise ValueError(f"field {f!r} must be an integer, got {v!r}")
            values[f] = v
        return cls(**values)

    def to_dict(self) -> dict:
        d = asdict(self)
        if d["n"] is None:
            del d["n"]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "InstanceSpec":
        return cls.from_dict(json.loads(text))

    @classmethod
    def from_context(cls, ctx: GroupContext) -> "InstanceSpec":
        c = ctx.curve
        if ctx.Q is None:
            raise ValueError("Q at infinity has no record form")
        return cls(c.p, c.a, c.b, ctx.P[0], ctx.P[1], ctx.Q[0], ctx.Q[1], ctx.n)

    def context(self) -> GroupContext:
        """Validate and build the group context (computing n if absent)."""
        return GroupContext.from_values(
            self.p, self.a, self.b, (self.px, self.py), (self.qx, self.qy), self.n
        )


def load_records(path: Union[str, Path]) -> List[dict]:
    """Read a file holding one flat record or an array of them."""
    data = json.loads(Path(path).read_text())
    if isinstance(data, dict):
        return [data]
    if isinstance(data, list) and all(isinstance(r, dict) for r in data):
        return data
    raise ValueError(f"{path}: expected an object or an array of objects")


def example1() -> GroupContext:
    """y^2 = x^3 + 130x + 565 over F_719, P = (312, 90) of order 233, log Q = 158."""
    return InstanceSpec(719, 130, 565, 312, 90, 475, 662, 233).context()


def example2() -> GroupContext:
    """y^2 = x^3 + 250x + 844 over F_1009, P = (909, 601) of order 1007, log Q = 766."""
    return InstanceSpec(1009, 250, 844, 909, 601, 134, 52, 1007).context()


def _point_order(pt, curve: CurveParams, group_order: int) -> int:
    n = group_order
    for q in _prime_factors(group_order):
        while n % q == 0 and scalar_mul(n // q, pt, curve) is None:
            n //= q
    return n


def random_curve(rng: random.Random, p_min: int, p_max: int) -> CurveParams:
    while True:
        p = rng.randint(p_min, p_max)
        if not is_prime(p) or p < 5:
            continue
        try:
            return CurveParams(p, rng.randrange(p), rng.randrange(p))
        except ValueError:
            continue


def random_instance(
    rng: random.Random,
    n_min: int = 51,
    n_max: int = 4999,
    p_min: int = 53,
    p_max: int = 6000,
) -> Tuple[GroupContext, int]:
    """Draw ``(ctx, k)`` with ``n_min <= ord(P) <= n_max`` and ``Q = [k]P``."""
    while True:
        curve = random_curve(rng, p_min, p_max)
        points = enumerate_points(curve)
        P = rng.choice(points[1:])
        n = _point_order(P, curve, len(points))
        if not n_min <= n <= n_max:
            continue
        k = rng.randint(1, n - 1)
        Q = scalar_mul(k, P, curve)
        if Q is None:
            continue
        return GroupContext(curve, P, Q, n), k
