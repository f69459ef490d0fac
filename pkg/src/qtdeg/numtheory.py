"""Number-theoretic characterizations backing the degree-set laws.

Everything here is exact integer arithmetic.  Decompositions are found by
ascending brute force so outputs are deterministic; membership decisions go
through the classical criteria (prime factorization for two squares,
Legendre's 4^p(8q+7) form for three squares) rather than through the search
that produces the witness, so the two routes cross-check each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt


@dataclass(frozen=True)
class Factorization:
    """Prime factorization ``sign * prod(p**e)`` with primes strictly increasing."""

    sign: int
    pairs: tuple[tuple[int, int], ...]

    def value(self) -> int:
        n = self.sign
        for p, e in self.pairs:
            n *= p**e
        return n


def factorize(n: int) -> Factorization:
    """Trial-division factorization of a nonzero integer."""
    if n == 0:
        raise ValueError("0 has no prime factorization")
    sign = 1 if n > 0 else -1
    n = abs(n)
    pairs = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            pairs.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        pairs.append((n, 1))
    return Factorization(sign, tuple(pairs))


def is_sum_two_squares(k: int) -> bool:
    """k >= 0 is a sum of two squares iff every prime = 3 mod 4 divides it
    to an even power."""
    if k < 0:
        return False
    if k == 0:
        return True
    for p, e in factorize(k).pairs:
        if p % 4 == 3 and e % 2 == 1:
            return False
    return True


def sum_two_squares(k: int) -> tuple[int, int] | None:
    """Decompose k = u*u + v*v, or None when the two-square criterion fails.

    The witness is the lexicographically least pair with u <= v.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if not is_sum_two_squares(k):
        return None
    u = 0
    while 2 * u * u <= k:
        v = isqrt(k - u * u)
        if u * u + v * v == k:
            return (u, v)
        u += 1
    raise AssertionError(f"two-square criterion held but no witness for {k}")


def is_sum_three_squares(k: int) -> bool:
    """k >= 0 is a sum of three squares iff it is not of the form 4^p(8q+7)
    (Legendre)."""
    if k < 0:
        return False
    while k % 4 == 0 and k > 0:
        k //= 4
    return k % 8 != 7


def sum_three_squares(k: int) -> tuple[int, int, int] | None:
    if k < 0:
        raise ValueError("k must be nonnegative")
    if not is_sum_three_squares(k):
        return None
    u = 0
    while 3 * u * u <= k:
        rest = k - u * u
        v = u
        while 2 * v * v <= rest:
            w = isqrt(rest - v * v)
            if v * v + w * w == rest:
                return (u, v, w)
            v += 1
        u += 1
    raise AssertionError(f"three-square criterion held but no witness for {k}")


def sum_four_squares(k: int) -> tuple[int, int, int, int]:
    """Decompose k >= 0 into four squares (always possible, Lagrange)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    u = 0
    while 4 * u * u <= k:
        rest = k - u * u
        three = _three_squares_at_least(rest, u)
        if three is not None:
            return (u,) + three
        u += 1
    raise AssertionError(f"no four-square witness for {k}")


def _three_squares_at_least(k, lo):
    v = lo
    while 3 * v * v <= k:
        rest = k - v * v
        w = v
        while 2 * w * w <= rest:
            x = isqrt(rest - w * w)
            if w * w + x * x == rest and x >= w:
                return (v, w, x)
            w += 1
        v += 1
    return None


def diff_two_squares(k: int) -> tuple[int, int] | None:
    """Closed-form witness k = m*m - n*n, or None exactly when k = 2 mod 4.

    Odd k gives ((k+1)/2, (k-1)/2); k = 4t gives (t+1, t-1).  Both identities
    hold for negative k as well.
    """
    if k % 4 == 2:
        return None
    if k % 2 == 1:
        return ((k + 1) // 2, (k - 1) // 2)
    t = k // 4
    return (t + 1, t - 1)


def is_perfect_square(k: int) -> int | None:
    """Nonnegative integer square root when k is a perfect square, else None."""
    if k < 0:
        return None
    r = isqrt(k)
    return r if r * r == k else None
