"""Fast necessary conditions ruling out a degree before any search.

Each check encodes an algebraic consequence of P^t A P = k B, so a firing
obstruction is a proof of non-existence.  None of them is sufficient: an
empty result means "not excluded here", never "realizable".
"""

from __future__ import annotations

from dataclasses import dataclass

from .manifold import QuasitoricSum, format_spec, intersection_matrix
from .numtheory import is_perfect_square
from .quadform import determinant

KIND_RANK = "Rank"
KIND_DET_SQUARE = "DetSquare"
KIND_INERTIA = "Inertia"
KIND_PARITY = "Parity"


@dataclass(frozen=True)
class Obstruction:
    kind: str
    detail: str
    source: str

    def to_json(self):
        return {"kind": self.kind, "detail": self.detail, "source": self.source}


def form_inertia(m: QuasitoricSum) -> tuple[int, int]:
    """(p_plus, p_minus) of the intersection form, read off the block counts."""
    return (m.a + m.c, m.b + m.c)


def rank_obstruction(m, n, k) -> Obstruction | None:
    """Nonzero degree forces rank(domain) >= rank(target): P^t and A*P are
    rank-deficient otherwise and k^rank(N) * det B would vanish."""
    if k != 0 and m.rank < n.rank:
        return Obstruction(
            KIND_RANK,
            f"rank {m.rank} of {format_spec(m)} is smaller than rank {n.rank} "
            f"of {format_spec(n)}, so only degree 0 is possible",
            "rank-comparison",
        )
    return None


def det_square_obstruction(m, n, k) -> Obstruction | None:
    """For equal ranks l, taking determinants gives det(P)^2 = k^l * det B / det A,
    so the right side must be a nonnegative perfect square."""
    l = m.rank
    if k == 0 or l != n.rank:
        return None
    s = determinant(intersection_matrix(m)) * determinant(intersection_matrix(n))
    if l % 2 == 0:
        if s == -1:
            return Obstruction(
                KIND_DET_SQUARE,
                f"equal even rank {l} with opposite form determinants makes "
                f"det(P)^2 = -{abs(k)}^{l} < 0",
                "unimodular-determinant",
            )
        return None
    sign_k = 1 if k > 0 else -1
    if sign_k != s:
        return Obstruction(
            KIND_DET_SQUARE,
            f"equal odd rank {l}: det(P)^2 = k^{l} * detB/detA is negative "
            f"for k = {k}",
            "unimodular-determinant",
        )
    if is_perfect_square(abs(k)) is None:
        return Obstruction(
            KIND_DET_SQUARE,
            f"equal odd rank {l}: |k| = {abs(k)} must be a perfect square "
            f"since det(P)^2 = |k|^{l}",
            "unimodular-determinant",
        )
    return None


def inertia_obstruction(m, n, k) -> Obstruction | None:
    """P^t A P = k B realizes k*B as a restriction of A over the reals, so
    the inertia of k*B is dominated componentwise by the inertia of A."""
    if k == 0:
        return None
    pa, ma = form_inertia(m)
    pb, mb = form_inertia(n)
    if k < 0:
        pb, mb = mb, pb
    if pb > pa or mb > ma:
        return Obstruction(
            KIND_INERTIA,
            f"inertia ({pb},{mb}) of k*B exceeds inertia ({pa},{ma}) of the "
            f"domain form for k = {k}",
            "inertia-bound",
        )
    return None


def parity_obstruction(m, n, k) -> Obstruction | None:
    """An even domain form only takes even values, so an odd diagonal entry
    k * b_jj on the target side forces k to be even."""
    if k % 2 != 0:
        if m.a == 0 and m.b == 0 and n.a + n.b >= 1:
            return Obstruction(
                KIND_PARITY,
                f"the domain form of {format_spec(m)} is even but the target "
                f"has an odd diagonal entry, so odd k = {k} is impossible",
                "even-form-parity",
            )
    return None


def run_all(m, n, k) -> list[Obstruction]:
    """All firing checks, in the fixed order rank, inertia, det-square,
    parity (no short-circuit, so reports are exhaustive)."""
    checks = (rank_obstruction, inertia_obstruction, det_square_obstruction, parity_obstruction)
    return [o for check in checks if (o := check(m, n, k)) is not None]


def obstructs_all_positive(m, n) -> bool:
    """True when rank or inertia rules out every k > 0."""
    if m.rank < n.rank:
        return True
    pa, ma = form_inertia(m)
    pb, mb = form_inertia(n)
    return pb > pa or mb > ma


def obstructs_all_negative(m, n) -> bool:
    """True when rank or inertia rules out every k < 0."""
    if m.rank < n.rank:
        return True
    pa, ma = form_inertia(m)
    pb, mb = form_inertia(n)
    return mb > pa or pb > ma
