"""Integer arithmetic modulo small moduli.

Moduli here are either the field prime ``p`` or the order ``n`` of the base
point, and ``n`` may well be composite, so inversion goes through the
extended Euclidean algorithm rather than Fermat's little theorem.

Python integers never overflow, but the toolkit is deliberately desk-scale:
moduli are capped at :data:`MAX_MODULUS` so that every product of two
residues stays below 2**62.
"""

from typing import Tuple

MAX_MODULUS = 2**31


class NotInvertible(ArithmeticError):
    """Raised when a residue shares a factor with the modulus."""

    def __init__(self, value: int, modulus: int, gcd: int):
        super().__init__(f"{value} is not invertible mod {modulus} (gcd = {gcd})")
        self.value = value
        self.modulus = modulus
        self.gcd = gcd


def check_modulus(m: int) -> int:
    if not 2 <= m <= MAX_MODULUS:
        raise ValueError(f"modulus {m} outside supported range [2, 2**31]")
    return m


def mod_add(x: int, y: int, m: int) -> int:
    return (x + y) % m


def mod_mul(x: int, y: int, m: int) -> int:
    return (x * y) % m


def ext_gcd(x: int, y: int) -> Tuple[int, int, int]:
    """Return ``(g, u, v)`` with ``g = gcd(x, y)`` and ``u*x + v*y == g``."""
    if x < 0 or y < 0:
        raise ValueError("ext_gcd expects nonnegative inputs")
    if x == 0 and y == 0:
        raise ValueError("gcd(0, 0) is undefined")
    r0, r1 = x, y
    u0, u1 = 1, 0
    v0, v1 = 0, 1
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    return r0, u0, v0


def mod_inv(x: int, m: int) -> int:
    """Inverse of ``x`` modulo ``m``.

    Raises:
        NotInvertible: if ``gcd(x, m) != 1``.
    """
    x %= m
    g, u, _ = ext_gcd(x, m)
    if g != 1:
        raise NotInvertible(x, m, g)
    return u % m


def mod_div(num: int, den: int, m: int) -> int:
    """Return ``num / den mod m`` for possibly negative ``num`` and ``den``."""
    return (num % m) * mod_inv(den % m, m) % m
