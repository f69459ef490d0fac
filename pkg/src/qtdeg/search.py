"""Exhaustive certificate search: integer matrices P with P^t A P = k B.

The search runs column by column over the target form.  Candidates for each
column solve v^t A v = t subject to the linear cross constraints against the
columns already chosen.  For definite domain forms the candidate sets are
complete (rational Cholesky decomposition with back-substitution intervals),
so exhausting the tree proves non-existence.  Indefinite domains are only
ever searched inside a max-norm box and exhaustion proves nothing; the
outcome is then Unknown rather than NoneExists.

All arithmetic is exact (ints and Fractions).
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from . import obstructions
from .manifold import QuasitoricSum, format_spec, intersection_matrix
from .quadform import (
    Matrix,
    as_matrix,
    congruence,
    determinant,
    dims,
    inertia,
    is_symmetric,
    scalar_mul,
    zeros,
)


class CertificateError(ValueError):
    pass


@dataclass(frozen=True)
class Certificate:
    """Matrix witness of a degree-k map; re-verified on construction."""

    matrix: Matrix
    domain: QuasitoricSum
    target: QuasitoricSum
    degree: int

    def __post_init__(self):
        object.__setattr__(self, "matrix", as_matrix(self.matrix))
        a = intersection_matrix(self.domain)
        b = intersection_matrix(self.target)
        rows, cols = dims(self.matrix)
        if rows != len(a) or cols != len(b):
            raise CertificateError(
                f"matrix is {rows}x{cols}, expected {len(a)}x{len(b)}"
            )
        if congruence(self.matrix, a) != scalar_mul(self.degree, b):
            raise CertificateError(
                f"matrix does not certify degree {self.degree} for "
                f"{format_spec(self.domain)} -> {format_spec(self.target)}"
            )

    def to_json(self):
        return {
            "domain": format_spec(self.domain),
            "target": format_spec(self.target),
            "degree": self.degree,
            "matrix": [list(row) for row in self.matrix],
        }


@dataclass(frozen=True)
class SearchOutcome:
    """Found(certificate) | NoneExists(reason) | Unknown(reason).

    ``complete`` records whether the answer is definitive: it is True for
    every Found and NoneExists, False for Unknown.
    """

    status: str  # "found" | "none" | "unknown"
    certificate: Certificate | None = None
    reason: str | None = None

    @property
    def complete(self) -> bool:
        return self.status != "unknown"

    @staticmethod
    def found(cert: Certificate) -> "SearchOutcome":
        return SearchOutcome("found", certificate=cert)

    @staticmethod
    def none_exists(reason: str) -> "SearchOutcome":
        return SearchOutcome("none", reason=reason)

    @staticmethod
    def unknown(reason: str) -> "SearchOutcome":
        return SearchOutcome("unknown", reason=reason)

    def to_json(self):
        doc = {
            "domain": None,
            "target": None,
            "degree": None,
            "matrix": None,
            "status": self.status,
            "complete": self.complete,
        }
        if self.certificate is not None:
            doc.update(self.certificate.to_json())
        if self.reason is not None:
            doc["reason"] = self.reason
        return doc


@dataclass(frozen=True)
class Budget:
    """Search budget: wall-clock seconds and/or a deterministic node count."""

    max_nodes: int | None = None
    max_seconds: float | None = None

    def __post_init__(self):
        if self.max_nodes is not None and self.max_nodes <= 0:
            raise ValueError("max_nodes must be positive")
        if self.max_seconds is not None and self.max_seconds <= 0:
            raise ValueError("max_seconds must be positive")


class _BudgetExceeded(Exception):
    def __init__(self, reason):
        self.reason = reason


class _Meter:
    def __init__(self, budget: Budget | None):
        self.nodes = 0
        self.budget = budget
        self.t0 = time.monotonic() if budget and budget.max_seconds else None

    def tick(self, n=1):
        self.nodes += n
        b = self.budget
        if b is None:
            return
        if b.max_nodes is not None and self.nodes > b.max_nodes:
            raise _BudgetExceeded(f"node budget exhausted ({b.max_nodes} nodes)")
        if b.max_seconds is not None and self.nodes % 1024 == 0:
            if time.monotonic() - self.t0 > b.max_seconds:
                raise _BudgetExceeded(f"time budget exhausted ({b.max_seconds}s)")


# ---------------------------------------------------------------------------
# exact interval helpers

def _sqrt_box(bound: Fraction, shift: Fraction) -> tuple[int, int]:
    """Integer interval of v with (v + shift)^2 <= bound (bound >= 0)."""
    bn, bd = bound.numerator, bound.denominator
    sn, sd = shift.numerator, shift.denominator
    x = isqrt(bn * bd * sd * sd)
    hi = (x - sn * bd) // (bd * sd)
    lo = -((x + sn * bd) // (bd * sd))
    return lo, hi


def _exact_roots(d: Fraction, shift: Fraction, rem: Fraction) -> list[int]:
    """Integers v with d*(v + shift)^2 == rem exactly (d > 0, rem >= 0)."""
    r = rem / d
    rn, rd = r.numerator, r.denominator
    sq_n, sq_d = isqrt(rn), isqrt(rd)
    if sq_n * sq_n != rn or sq_d * sq_d != rd:
        return []
    root = Fraction(sq_n, sq_d)
    out = []
    for x in ({root, -root} if root else {root}):
        v = x - shift
        if v.denominator == 1:
            out.append(int(v))
    return sorted(out)


def _definite_kind(a: Matrix) -> int:
    """+1 positive definite, -1 negative definite, 0 otherwise."""
    p, m, z = inertia(a)
    n = len(a)
    if z == 0 and p == n:
        return 1
    if z == 0 and m == n:
        return -1
    return 0


def _cholesky(a: Matrix):
    """A = R^t D R for positive definite A; R unit upper triangular.

    Returns (d, r) as Fractions; d[i] > 0.
    """
    n = len(a)
    g = [[Fraction(x) for x in row] for row in a]
    d = [Fraction(0)] * n
    r = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d[i] = g[i][i]
        if d[i] <= 0:
            raise ValueError("matrix is not positive definite")
        r[i][i] = Fraction(1)
        for j in range(i + 1, n):
            r[i][j] = g[i][j] / d[i]
        for p in range(i + 1, n):
            for q in range(p, n):
                g[p][q] -= g[p][i] * g[i][q] / d[i]
                g[q][p] = g[p][q]
    return d, r


def _inverse_diagonal(a: Matrix) -> list[Fraction]:
    """Diagonal of A^{-1} for invertible symmetric A, computed exactly."""
    n = len(a)
    det = determinant(a)
    if det == 0:
        raise ValueError("singular form")
    out = []
    for j in range(n):
        minor = tuple(
            tuple(a[r][c] for c in range(n) if c != j)
            for r in range(n)
            if r != j
        )
        cof = determinant(minor) if n > 1 else 1
        out.append(Fraction(cof, det))
    return out


# ---------------------------------------------------------------------------
# complete enumeration for definite forms

def _enumerate_definite(a: Matrix, t: int, constraints, meter: _Meter):
    """All integer v with v^t A v = t for positive definite A, subject to the
    linear constraints [(w, c)] meaning sum_j w[j]*v[j] == c.

    Fincke-Pohst back-substitution on the exact Cholesky factorization; a
    Cauchy-Schwarz bound prunes constraint-infeasible subtrees when A is
    diagonal, with a coordinate-box bound as the generic fallback.
    """
    n = len(a)
    if t < 0:
        return []
    d, r = _cholesky(a)
    diag = all(r[i][j] == 0 for i in range(n) for j in range(i + 1, n))
    int_diag = diag and all(x.denominator == 1 for x in d)

    inv_diag = _inverse_diagonal(a)
    coord_box = [_sqrt_box(q * t, Fraction(0))[1] if q * t >= 0 else 0 for q in inv_diag]

    cons = []
    for w, c in constraints:
        # prefix[i] = sum_{j < i} |w_j| * coord_box_j  (coords 0..i-1 unassigned
        # when the recursion sits at level i-1)
        prefix = [0] * (n + 1)
        for j in range(n):
            prefix[j + 1] = prefix[j] + abs(w[j]) * coord_box[j]
        if diag:
            csum = [Fraction(0)] * (n + 1)
            for j in range(n):
                csum[j + 1] = csum[j] + Fraction(w[j] * w[j], 1) / d[j]
        else:
            csum = None
        cons.append((tuple(w), c, prefix, csum))

    out = []
    v = [0] * n
    shifts = [[Fraction(0)] * n]  # shifts[depth][i] = sum_{j>i assigned} R_ij v_j

    def rec(i, rem, partials):
        # i: coordinate being assigned (from n-1 down); rem: remaining norm
        # budget; partials: per-constraint dot products of assigned coords
        meter.tick()
        shift = shifts[-1]
        if i == 0:
            for x in _exact_roots(d[0], shift[0], rem):
                ok = True
                for (w, c, prefix, csum), p in zip(cons, partials):
                    if p + w[0] * x != c:
                        ok = False
                        break
                if ok:
                    v[0] = x
                    out.append(tuple(v))
            return
        lo, hi = _sqrt_box(rem / d[i], shift[i])
        for x in range(lo, hi + 1):
            used = d[i] * (x + shift[i]) ** 2
            new_rem = rem - used
            if new_rem < 0:
                continue
            new_partials = []
            feasible = True
            for (w, c, prefix, csum), p in zip(cons, partials):
                np_ = p + w[i] * x
                gap = c - np_
                if abs(gap) > prefix[i]:
                    feasible = False
                    break
                if csum is not None and gap * gap > new_rem * csum[i]:
                    feasible = False
                    break
                new_partials.append(np_)
            if not feasible:
                continue
            v[i] = x
            if diag:
                rec(i - 1, new_rem, new_partials)
            else:
                new_shift = shift.copy()
                for j in range(i):
                    new_shift[j] += r[j][i] * x
                shifts.append(new_shift)
                rec(i - 1, new_rem, new_partials)
                shifts.pop()
        v[i] = 0

    if int_diag:
        _enumerate_definite_int([int(x) for x in d], t, cons, out, meter)
    else:
        rec(n - 1, Fraction(t), [0] * len(cons))
    return sorted(set(out))


def _enumerate_definite_int(d, t, cons, out, meter):
    """Integer-only fast path for diagonal positive definite forms."""
    n = len(d)
    v = [0] * n

    def rec(i, rem, partials):
        meter.tick()
        if i == 0:
            if rem % d[0] == 0:
                q = rem // d[0]
                x0 = isqrt(q)
                roots = {x0, -x0} if x0 * x0 == q else set()
                for x in sorted(roots):
                    ok = True
                    for (w, c, prefix, csum), p in zip(cons, partials):
                        if p + w[0] * x != c:
                            ok = False
                            break
                    if ok:
                        v[0] = x
                        out.append(tuple(v))
            return
        hi = isqrt(rem // d[i])
        for x in range(-hi, hi + 1):
            new_rem = rem - d[i] * x * x
            new_partials = []
            feasible = True
            for (w, c, prefix, csum), p in zip(cons, partials):
                np_ = p + w[i] * x
                gap = c - np_
                if abs(gap) > prefix[i]:
                    feasible = False
                    break
                if gap * gap * csum[i].denominator > new_rem * csum[i].numerator:
                    feasible = False
                    break
                new_partials.append(np_)
            if not feasible:
                continue
            v[i] = x
            rec(i - 1, new_rem, new_partials)
        v[i] = 0

    rec(n - 1, t, [0] * len(cons))


# ---------------------------------------------------------------------------
# bounded enumeration for indefinite forms

def _enumerate_box(a: Matrix, t: int, constraints, box: int, meter: _Meter):
    """All integer v with v^t A v = t and max-norm <= box."""
    n = len(a)
    # suffix[i] = max possible |contribution| of coordinates >= i to the form
    abs_a = [[abs(x) for x in row] for row in a]
    ff = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        ff[i] = ff[i + 1] + abs_a[i][i] * box * box
        for j in range(i + 1, n):
            ff[i] += 2 * abs_a[i][j] * box * box

    cons = []
    for w, c in constraints:
        suffix = [0] * (n + 1)
        for j in range(n - 1, -1, -1):
            suffix[j] = suffix[j + 1] + abs(w[j]) * box
        cons.append((tuple(w), c, suffix))

    out = []
    v = [0] * n
    link = [[a[i][j] for j in range(n)] for i in range(n)]

    def rec(i, val, lin, partials):
        # val: exact form value of assigned coords 0..i-1
        # lin[j] for j >= i: sum_{p < i} a[j][p] * v[p]
        meter.tick()
        if i == n:
            if val == t:
                for (w, c, suffix), p in zip(cons, partials):
                    if p != c:
                        return
                out.append(tuple(v))
            return
        # range prune: future contribution is bounded by cross + pure parts
        cross_bound = 2 * box * sum(abs(lin[j]) for j in range(i, n))
        if not (val - cross_bound - ff[i] <= t <= val + cross_bound + ff[i]):
            return
        for x in range(-box, box + 1):
            new_val = val + a[i][i] * x * x + 2 * x * lin[i]
            new_partials = []
            feasible = True
            for (w, c, suffix), p in zip(cons, partials):
                np_ = p + w[i] * x
                if abs(c - np_) > suffix[i + 1]:
                    feasible = False
                    break
                new_partials.append(np_)
            if not feasible:
                continue
            v[i] = x
            if x == 0:
                rec(i + 1, new_val, lin, new_partials)
            else:
                new_lin = lin.copy()
                for j in range(i + 1, n):
                    new_lin[j] += a[j][i] * x
                rec(i + 1, new_val, new_lin, new_partials)
        v[i] = 0

    rec(0, 0, [0] * n, [0] * len(cons))
    return sorted(set(out))


# ---------------------------------------------------------------------------
# public enumeration

_ENUM_CACHE: dict = {}


def enumerate_norm_vectors(a: Matrix, t: int, box_bound: int | None = None):
    """Solutions of v^t A v = t, deduplicated and sorted lexicographically.

    Definite A: the complete solution set (box_bound is ignored).  Indefinite
    or degenerate A: solutions with max-norm <= box_bound, which must then be
    supplied.
    """
    if not is_symmetric(a):
        raise ValueError("form must be symmetric")
    kind = _definite_kind(a)
    key = (a, t, None if kind != 0 else box_bound)
    hit = _ENUM_CACHE.get(key)
    if hit is not None:
        return hit
    meter = _Meter(None)
    if kind == 1:
        res = _enumerate_definite(a, t, [], meter)
    elif kind == -1:
        res = _enumerate_definite(scalar_mul(-1, a), -t, [], meter)
    else:
        if box_bound is None:
            raise ValueError("box_bound is required for an indefinite form")
        if box_bound < 1:
            raise ValueError("box_bound must be >= 1")
        res = _enumerate_box(a, t, [], box_bound, meter)
    if len(_ENUM_CACHE) > 512:
        _ENUM_CACHE.clear()
    _ENUM_CACHE[key] = res
    return res


def _canonical_sign(vec) -> bool:
    for x in vec:
        if x > 0:
            return True
        if x < 0:
            return False
    return True  # zero vector


def search_congruence(
    a: Matrix,
    b: Matrix,
    k: int,
    box_bound: int | None = None,
    budget: Budget | None = None,
):
    """Search for integer P with P^t A P = k B.

    Returns (status, matrix | None, reason).  Status "none" is only reported
    when the domain form is definite, where the enumeration is complete.
    Candidate columns are processed in descending |k * b_jj| order and the
    first processed column is enumerated up to global sign (P and -P certify
    the same degree).
    """
    n, _ = dims(a)
    l, _ = dims(b)
    kind = _definite_kind(a)
    if kind == 0:
        if box_bound is None:
            raise ValueError("box_bound is required for an indefinite domain form")
        if box_bound < 1:
            raise ValueError("box_bound must be >= 1")
    meter = _Meter(budget)
    order = sorted(range(l), key=lambda j: (-abs(k * b[j][j]), j))

    def candidates(j, chosen):
        t = k * b[j][j]
        cons = [(wvec, k * b[jj][j]) for jj, wvec in chosen]
        if kind == 1:
            return _enumerate_definite(a, t, cons, meter)
        if kind == -1:
            neg_cons = [(w, -c) for w, c in cons]
            return _enumerate_definite(scalar_mul(-1, a), -t, neg_cons, meter)
        return _enumerate_box(a, t, cons, box_bound, meter)

    columns: dict[int, tuple] = {}
    chosen: list[tuple[int, tuple]] = []  # (orig index, A*p as tuple)

    def a_times(vec):
        return tuple(sum(a[i][j] * vec[j] for j in range(n)) for i in range(n))

    def dfs(pos):
        if pos == l:
            return True
        j = order[pos]
        cand = candidates(j, chosen)
        if pos == 0:
            cand = [v for v in cand if _canonical_sign(v)]
        for vec in cand:
            meter.tick()
            columns[j] = vec
            chosen.append((j, a_times(vec)))
            if dfs(pos + 1):
                return True
            chosen.pop()
            del columns[j]
        return False

    try:
        ok = dfs(0)
    except _BudgetExceeded as e:
        return ("unknown", None, e.reason)
    if ok:
        p = tuple(tuple(columns[j][i] for j in range(l)) for i in range(n))
        return ("found", p, None)
    if kind != 0:
        return ("none", None, "complete enumeration over the definite domain form exhausted")
    return ("unknown", None, f"no certificate inside the search box (box_bound={box_bound})")


def verify_certificate(p: Matrix, m: QuasitoricSum, n: QuasitoricSum, k: int) -> bool:
    """True iff P^t A P equals k * B entrywise."""
    p = as_matrix(p)
    a = intersection_matrix(m)
    b = intersection_matrix(n)
    rows, cols = dims(p)
    if rows != len(a) or cols != len(b):
        raise ValueError(
            f"matrix is {rows}x{cols}, expected {len(a)}x{len(b)} for these manifolds"
        )
    return congruence(p, a) == scalar_mul(k, b)


def zero_certificate(m: QuasitoricSum, n: QuasitoricSum) -> Certificate:
    return Certificate(zeros(m.rank, n.rank), m, n, 0)


def find_certificate(
    m: QuasitoricSum,
    n: QuasitoricSum,
    k: int,
    box_bound: int | None = None,
    budget: Budget | None = None,
) -> SearchOutcome:
    """Decide realizability of degree k by obstructions plus column search.

    Degree 0 is always realized by the zero matrix.  A firing obstruction
    yields NoneExists without searching; otherwise the Gram search runs,
    complete for definite domain forms and box-bounded for indefinite ones.
    """
    if k == 0:
        return SearchOutcome.found(zero_certificate(m, n))
    obs = obstructions.run_all(m, n, k)
    if obs:
        reasons = "; ".join(o.detail for o in obs)
        return SearchOutcome.none_exists(reasons)
    a = intersection_matrix(m)
    b = intersection_matrix(n)
    status, p, reason = search_congruence(a, b, k, box_bound=box_bound, budget=budget)
    if status == "found":
        return SearchOutcome.found(Certificate(p, m, n, k))
    if status == "none":
        return SearchOutcome.none_exists(reason)
    return SearchOutcome.unknown(reason)
