"""Quasitoric 4-manifolds as connected-sum triples.

Every quasitoric 4-manifold is diffeomorphic to a connected sum of copies of
CP^2, anti-CP^2 (reversed orientation) and S^2 x S^2, so a manifold is
recorded as the triple of summand counts (a, b, c).  The empty sum is
rejected: every quasitoric 4-manifold over an m-gon has rank m - 2 >= 1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .quadform import Matrix, direct_sum

HYPERBOLIC: Matrix = ((0, 1), (1, 0))


class SpecSyntaxError(ValueError):
    """Malformed manifold spec string; ``offset`` is the byte position."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


@dataclass(frozen=True)
class QuasitoricSum:
    """Counts of CP^2, anti-CP^2 and S^2 x S^2 connected summands."""

    a: int
    b: int
    c: int

    def __post_init__(self):
        for name in ("a", "b", "c"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 0:
                raise ValueError(f"summand count {name} must be a nonnegative integer, got {v!r}")
        if self.a + self.b + self.c == 0:
            raise ValueError("empty connected sum: need at least one summand")

    @property
    def rank(self) -> int:
        return self.a + self.b + 2 * self.c

    @property
    def sig(self) -> int:
        return self.a - self.b

    def contains(self, other: "QuasitoricSum") -> bool:
        return self.a >= other.a and self.b >= other.b and self.c >= other.c

    def __str__(self):
        return format_spec(self)


def make_sum(a: int, b: int, c: int) -> QuasitoricSum:
    return QuasitoricSum(a, b, c)


def intersection_matrix(m: QuasitoricSum) -> Matrix:
    """Block-diagonal form: a ones, b minus-ones, then c hyperbolic blocks.

    The hyperbolic blocks come after the diagonal entries so certificate row
    indices line up with the canonical layout used everywhere else.
    """
    rows = []
    n = m.rank
    for i in range(m.a):
        rows.append(tuple(1 if j == i else 0 for j in range(n)))
    for i in range(m.b):
        rows.append(tuple(-1 if j == m.a + i else 0 for j in range(n)))
    base = m.a + m.b
    for i in range(m.c):
        rows.append(tuple(1 if j == base + 2 * i + 1 else 0 for j in range(n)))
        rows.append(tuple(1 if j == base + 2 * i else 0 for j in range(n)))
    return tuple(rows)


def reverse_orientation(m: QuasitoricSum) -> QuasitoricSum:
    """Orientation reversal swaps CP^2 and anti-CP^2 counts; the hyperbolic
    part is preserved because -H is integrally congruent to H."""
    return QuasitoricSum(m.b, m.a, m.c)


def reversal_basis_change(m: QuasitoricSum) -> Matrix:
    """Unimodular Q with Q^t * (-A(m)) * Q = A(reverse_orientation(m)).

    The diagonal blocks swap by a permutation; each -H block is fixed up by
    the shear diag(1, -1).
    """
    n = m.rank
    cols = []
    # column j of Q = where basis vector j of the reversed form maps to
    for i in range(m.b):  # reversed form lists b plus-ones first
        cols.append(m.a + i)
    for i in range(m.a):
        cols.append(i)
    q = [[0] * n for _ in range(n)]
    for j, src in enumerate(cols):
        q[src][j] = 1
    base = m.a + m.b
    for i in range(m.c):
        q[base + 2 * i][base + 2 * i] = 1
        q[base + 2 * i + 1][base + 2 * i + 1] = -1
    return tuple(tuple(row) for row in q)


def connected_sum(m1: QuasitoricSum, m2: QuasitoricSum) -> QuasitoricSum:
    return QuasitoricSum(m1.a + m2.a, m1.b + m2.b, m1.c + m2.c)


_ATOMS = {"CP2": (1, 0, 0), "-CP2": (0, 1, 0), "S2xS2": (0, 0, 1)}
_INT_RE = re.compile(r"\d+")
_ATOM_RE = re.compile(r"-?[A-Za-z][A-Za-z0-9]*|-[A-Za-z0-9]+")


def parse_spec(text: str) -> QuasitoricSum:
    """Parse "a*CP2 # b*-CP2 # c*S2xS2" style spec strings.

    Whitespace-insensitive; repeated atoms accumulate.  Raises
    SpecSyntaxError with a byte offset for malformed input and ValueError
    for an empty (zero-total) sum.
    """
    pos = 0

    def skip_ws():
        nonlocal pos
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def parse_term():
        nonlocal pos
        skip_ws()
        if pos >= len(text):
            raise SpecSyntaxError("expected a summand term", pos)
        count = 1
        m_int = _INT_RE.match(text, pos)
        if m_int:
            count = int(m_int.group())
            pos = m_int.end()
            skip_ws()
            if pos >= len(text) or text[pos] != "*":
                raise SpecSyntaxError("expected '*' after count", pos)
            pos += 1
            skip_ws()
        m_atom = _ATOM_RE.match(text, pos)
        if not m_atom:
            found = text[pos] if pos < len(text) else "end of input"
            raise SpecSyntaxError(f"expected a summand name, found {found!r}", pos)
        atom = m_atom.group()
        if atom not in _ATOMS:
            raise SpecSyntaxError(f"unknown summand {atom!r}", m_atom.start())
        pos = m_atom.end()
        return count, _ATOMS[atom]

    a = b = c = 0
    count, (da, db, dc) = parse_term()
    a, b, c = count * da, count * db, count * dc
    while True:
        skip_ws()
        if pos >= len(text):
            break
        if text[pos] != "#":
            raise SpecSyntaxError(f"expected '#', found {text[pos]!r}", pos)
        pos += 1
        count, (da, db, dc) = parse_term()
        a, b, c = a + count * da, b + count * db, c + count * dc
    if a + b + c == 0:
        raise ValueError("empty connected sum: total summand count is zero")
    return QuasitoricSum(a, b, c)


def format_spec(m: QuasitoricSum) -> str:
    """Canonical form "a*CP2 # b*-CP2 # c*S2xS2" (zero terms and the
    prefix "1*" omitted)."""
    parts = []
    for count, atom in ((m.a, "CP2"), (m.b, "-CP2"), (m.c, "S2xS2")):
        if count == 1:
            parts.append(atom)
        elif count > 1:
            parts.append(f"{count}*{atom}")
    return " # ".join(parts)
