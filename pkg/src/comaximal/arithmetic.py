"""Squarefree moduli: validated factorization and totients."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ComaximalError, NotSquarefree, PrimeModulus, TooManyPrimes, TooSmall

MAX_PRIMES = 16


def is_prime(k: int) -> bool:
    if k < 2:
        return False
    if k < 4:
        return True
    if k % 2 == 0 or k % 3 == 0:
        return False
    i = 5
    while i * i <= k:
        if k % i == 0 or k % (i + 2) == 0:
            return False
        i += 6
    return True


def next_prime(k: int) -> int:
    """Smallest prime strictly greater than ``k``."""
    q = max(k + 1, 2)
    while not is_prime(q):
        q += 1
    return q


def distinct_primes(n: int) -> tuple[int, ...]:
    """Sorted prime factors of a squarefree ``n >= 2`` by trial division.

    Unlike :func:`factor_squarefree` this accepts a prime ``n`` (one factor).
    """
    if n < 2:
        raise TooSmall(f"n must be at least 2, got {n}")
    primes = []
    rest = n
    d = 2
    while d * d <= rest:
        if rest % d == 0:
            rest //= d
            if rest % d == 0:
                raise NotSquarefree(f"{n} is not squarefree: {d}^2 = {d * d} divides {n}")
            primes.append(d)
        d += 1 if d == 2 else 2
    if rest > 1:
        primes.append(rest)
    return tuple(primes)


@dataclass(frozen=True)
class Modulus:
    """A squarefree ``n = p_1 * ... * p_m`` with ``p_1 < ... < p_m`` and ``m >= 2``.

    Prime indices are 1-based everywhere in this package, so ``primes[i - 1]``
    is ``p_i``.
    """

    n: int
    primes: tuple[int, ...]

    def __post_init__(self) -> None:
        primes = tuple(self.primes)
        object.__setattr__(self, "primes", primes)
        if len(primes) < 2:
            raise PrimeModulus(f"need at least two distinct primes, got {primes}")
        if len(primes) > MAX_PRIMES:
            raise TooManyPrimes(f"at most {MAX_PRIMES} prime factors supported, got {len(primes)}")
        if any(a >= b for a, b in zip(primes, primes[1:])):
            raise NotSquarefree(f"primes must be strictly increasing: {primes}")
        if not all(is_prime(p) for p in primes):
            raise ComaximalError(f"non-prime factor in {primes}")
        if math.prod(primes) != self.n:
            raise ComaximalError(f"product of {primes} is not {self.n}")

    @property
    def m(self) -> int:
        return len(self.primes)

    def prime(self, i: int) -> int:
        """``p_i`` for a 1-based index ``i``."""
        return self.primes[i - 1]

    def __str__(self) -> str:
        return f"{self.n} = " + "*".join(map(str, self.primes))


def factor_squarefree(n: int) -> Modulus:
    """Validate ``n`` as a squarefree composite and return its ordered primes.

    >>> factor_squarefree(30).primes
    (2, 3, 5)
    """
    primes = distinct_primes(n)
    if len(primes) == 1:
        raise PrimeModulus(f"{n} is prime: G2 has no vertices")
    return Modulus(n, primes)


def from_primes(primes) -> Modulus:
    primes = tuple(sorted(primes))
    return Modulus(math.prod(primes), primes)


def euler_phi(mod: Modulus) -> int:
    return math.prod(p - 1 for p in mod.primes)


def totient(k: int) -> int:
    """Euler's totient of an arbitrary positive integer (trial division)."""
    if k < 1:
        raise ValueError(f"totient needs k >= 1, got {k}")
    result = k
    rest = k
    d = 2
    while d * d <= rest:
        if rest % d == 0:
            while rest % d == 0:
                rest //= d
            result -= result // d
        d += 1
    if rest > 1:
        result -= result // rest
    return result


def count_units(n: int) -> int:
    """Units mod ``n`` counted by a direct gcd scan; a slow cross-check."""
    return sum(1 for x in range(1, n + 1) if math.gcd(x, n) == 1)


def squarefree_composites(limit: int, start: int = 2):
    """Yield every squarefree ``n`` in ``[start, limit]`` with at least two prime factors."""
    for n in range(max(start, 2), limit + 1):
        try:
            primes = distinct_primes(n)
        except NotSquarefree:
            continue
        if len(primes) >= 2:
            yield n
