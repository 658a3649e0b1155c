"""Prime fields carrying a root of unity of prescribed order."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

# Deterministic Miller-Rabin witnesses, valid for every n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` by trial division."""
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1 if q == 2 else 2
    if n > 1:
        out.append(n)
    return out


def primitive_root(p: int) -> int:
    """Smallest generator of the multiplicative group mod ``p``."""
    if p == 2:
        return 1
    factors = prime_factors(p - 1)
    g = 2
    while True:
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
        g += 1


@dataclass(frozen=True)
class PrimeField:
    """GF(p) together with ``zeta``, an element of exact order ``n``."""

    p: int
    n: int
    zeta: int

    def __post_init__(self):
        if self.p % 2 == 0 or not is_prime(self.p):
            raise ValueError(f"p={self.p} is not an odd prime")
        if (self.p - 1) % self.n:
            raise ValueError(f"n={self.n} does not divide p-1={self.p - 1}")
        if pow(self.zeta, self.n, self.p) != 1:
            raise ValueError("zeta^n != 1")
        for q in prime_factors(self.n):
            if pow(self.zeta, self.n // q, self.p) == 1:
                raise ValueError(f"zeta does not have exact order {self.n}")

    def root(self, e: int) -> int:
        """``zeta**e`` for any integer exponent (taken mod n)."""
        return pow(self.zeta, e % self.n, self.p)

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, self.p - 2, self.p)

    def powers(self) -> list[int]:
        return [self.root(e) for e in range(self.n)]


@lru_cache(maxsize=256)
def find_field(n: int, min_p: int = 2) -> PrimeField:
    """Smallest odd prime ``p >= min_p`` with ``n | p - 1``.

    ``zeta = g**((p-1)/n)`` where ``g`` is the smallest primitive root, so
    the result is a deterministic function of ``(n, min_p)``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    p = max(min_p, n + 1, 3)
    # first candidate congruent to 1 mod n
    p += (1 - p) % n
    while p % 2 == 0 or not is_prime(p):
        p += n
    g = primitive_root(p)
    return PrimeField(p, n, pow(g, (p - 1) // n, p))
