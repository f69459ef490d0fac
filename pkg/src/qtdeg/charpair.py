"""Characteristic pairs over polygons and their intersection forms.

A characteristic pair assigns a vector in Z^2 to each edge of an m-gon so
that adjacent vectors form a basis of Z^2.  The cohomology ring of the
associated 4-manifold is the Stanley-Reisner ring of the polygon modulo two
linear forms; degree-2 and degree-4 pieces are computed by exact Smith
reduction, the degree-4 piece is checked to be infinite cyclic, and the cup
product pairing on degree 2 gives the intersection form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .manifold import QuasitoricSum
from .quadform import (
    Matrix,
    as_matrix,
    determinant,
    identity,
    inertia,
    is_even_form,
    scalar_mul,
    smith_normal_form,
)
from .search import search_congruence

MAX_FACETS = 64


class InvalidPairError(ValueError):
    """Characteristic condition fails; carries the offending facet indices."""

    def __init__(self, message, indices=None):
        super().__init__(message)
        self.indices = indices


@dataclass(frozen=True)
class CharPair:
    m: int
    lambdas: tuple[tuple[int, int], ...]


def _det2(u, v) -> int:
    return u[0] * v[1] - u[1] * v[0]


def validate_pair(m: int, lambdas) -> CharPair:
    """Check the facet count and the cyclic adjacent unimodularity condition."""
    if m < 3:
        raise InvalidPairError(f"a polygon needs at least 3 facets, got {m}")
    if m > MAX_FACETS:
        raise InvalidPairError(f"facet count {m} exceeds the sanity bound {MAX_FACETS}")
    vecs = tuple((int(v[0]), int(v[1])) for v in lambdas)
    if len(vecs) != m:
        raise InvalidPairError(f"expected {m} facet vectors, got {len(vecs)}")
    for i in range(m):
        j = (i + 1) % m
        d = _det2(vecs[i], vecs[j])
        if d not in (1, -1):
            raise InvalidPairError(
                f"facet vectors {i} and {j} have determinant {d}, not +-1",
                indices=(i, j),
            )
    return CharPair(m, vecs)


def _invert_unimodular(v: Matrix) -> Matrix:
    """Exact inverse of a unimodular integer matrix."""
    n = len(v)
    aug = [[Fraction(v[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(i for i in range(col, n) if aug[i][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col]:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    out = []
    for i in range(n):
        row = aug[i][n:]
        if any(x.denominator != 1 for x in row):
            raise AssertionError("matrix is not unimodular")
        out.append(tuple(int(x) for x in row))
    return tuple(out)


def _adjacent(i: int, j: int, m: int) -> bool:
    return (j - i) % m == 1 or (i - j) % m == 1


def _degree4_generators(m: int):
    """Surviving degree-4 monomials: all squares plus adjacent products."""
    gens = [(i, i) for i in range(m)]
    seen = set()
    for i in range(m):
        j = (i + 1) % m
        key = (min(i, j), max(i, j))
        if key not in seen:
            seen.add(key)
            gens.append(key)
    index = {g: t for t, g in enumerate(gens)}
    return gens, index


def cohomology_form(pair: CharPair) -> Matrix:
    """The intersection form in a deterministic degree-2 basis.

    Degree 2 is Z^m modulo the two linear relations; a Smith basis splits off
    the relations and the remaining m-2 basis vectors lift the quotient.
    Degree 4 is the span of surviving monomials modulo (linear form) * v_i;
    it must be infinite cyclic and the cup products of the degree-2 basis
    reduce into its generator.  The generator's sign is normalized so the
    product of the first two facet classes evaluates to det(lambda_0,
    lambda_1).
    """
    m, lam = pair.m, pair.lambdas
    rel2 = as_matrix([[lam[j][r] for j in range(m)] for r in range(2)])
    u2, d2, v2 = smith_normal_form(rel2)
    if d2[0][0] != 1 or d2[1][1] != 1:
        raise AssertionError("degree-2 relations are not a direct summand")
    w = _invert_unimodular(v2)
    lifts = [w[r] for r in range(2, m)]  # degree-2 basis lifts in Z^m

    gens, gidx = _degree4_generators(m)
    g_count = len(gens)

    def product_vector(x, y):
        """Coordinates of (sum x_i v_i)(sum y_j v_j) in the surviving basis."""
        out = [0] * g_count
        for i in range(m):
            if x[i] == 0:
                continue
            for j in range(m):
                if y[j] == 0:
                    continue
                if i == j:
                    out[gidx[(i, i)]] += x[i] * y[j]
                elif _adjacent(i, j, m):
                    out[gidx[(min(i, j), max(i, j))]] += x[i] * y[j]
        return out

    relations = []
    for r in range(2):
        theta = [lam[j][r] for j in range(m)]
        for i in range(m):
            basis_i = [0] * m
            basis_i[i] = 1
            relations.append(product_vector(theta, basis_i))
    rel4 = as_matrix(relations)
    u4, d4, v4 = smith_normal_form(rel4)
    diag = [d4[i][i] for i in range(min(len(rel4), g_count))]
    nonzero = [x for x in diag if x != 0]
    if len(nonzero) != g_count - 1 or any(abs(x) != 1 for x in nonzero):
        raise AssertionError("degree-4 part is not infinite cyclic")

    def evaluate(vec) -> int:
        # coordinate along the free generator, i.e. the last coordinate in
        # the Smith basis of the generator space
        total = 0
        for i in range(g_count):
            if vec[i]:
                total += vec[i] * v4[i][g_count - 1]
        return total

    e01 = evaluate(product_vector(_unit(m, 0), _unit(m, 1)))
    if e01 not in (1, -1):
        raise AssertionError("product of adjacent facet classes is not a generator")
    sign = _det2(lam[0], lam[1]) * e01

    size = m - 2
    rows = []
    for r in range(size):
        row = []
        for s in range(size):
            row.append(sign * evaluate(product_vector(lifts[r], lifts[s])))
        rows.append(tuple(row))
    form = tuple(rows)
    if determinant(form) not in (1, -1):
        raise AssertionError("intersection form is not unimodular")
    return form


def _unit(m, i):
    out = [0] * m
    out[i] = 1
    return out


@dataclass(frozen=True)
class Identification:
    triple: QuasitoricSum | None
    warning: str | None = None

    @property
    def determined(self) -> bool:
        return self.triple is not None


def identify_manifold(pair: CharPair) -> Identification:
    """Resolve the connected-sum triple from rank, signature and parity.

    Even forms must have signature zero (no quasitoric 4-manifold carries an
    E8 summand); odd definite forms up to rank 8 are confirmed diagonal by a
    complete orthogonal-vector search.
    """
    form = cohomology_form(pair)
    r = len(form)
    p, q, z = inertia(form)
    if z != 0:
        return Identification(None, "degenerate form (this should be impossible)")
    sigma = p - q
    if is_even_form(form):
        if sigma != 0:
            return Identification(
                None,
                f"even form with signature {sigma}: inconsistent with a "
                f"connected sum of CP^2, -CP^2 and S^2xS^2",
            )
        return Identification(QuasitoricSum(0, 0, r // 2))
    if p > 0 and q > 0:
        return Identification(QuasitoricSum((r + sigma) // 2, (r - sigma) // 2, 0))
    # odd definite: confirm congruence to the diagonal form
    if r > 8:
        return Identification(
            None, f"odd definite form of rank {r} > 8: diagonal confirmation out of range"
        )
    sgn = 1 if p == r else -1
    target = scalar_mul(sgn, identity(r))
    status, _, _ = search_congruence(form, target, 1)
    if status != "found":
        return Identification(
            None, "odd definite form not congruent to a diagonal one (unexpected)"
        )
    triple = QuasitoricSum(r, 0, 0) if sgn == 1 else QuasitoricSum(0, r, 0)
    return Identification(triple)


def parse_vectors(text: str):
    """Parse the CLI facet-vector syntax: "1,0;0,1;-1,-1"."""
    vecs = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = chunk.split(",")
        if len(parts) != 2:
            raise ValueError(f"facet vector {chunk!r} must have two components")
        vecs.append((int(parts[0].strip()), int(parts[1].strip())))
    return vecs
