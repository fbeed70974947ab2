"""Morita invariants of noncommutative tori and the equivalence decision.

The ordered K0 invariant is carried by the *trace range*: the subgroup of R
generated by 1 and the Pfaffians of the even-sized principal submatrices of
theta.  Two algebras are strongly Morita equivalent exactly when those ranges
agree up to a positive factor (plus matching dimension) and the centers have
the same torus dimension.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .exactlin import (
    IncompatibleField,
    Scalar,
    hnf,
    integral_solution_lattice,
)
from .reduction import SkewMatrix
from .reduction import degeneracy_subgroup as _degeneracy_subgroup

DEFAULT_SEARCH_HEIGHT = 20

REASON_RANK = "rank"
REASON_RATIO_FIELD = "ratio-field"
REASON_ORDER = "multiplier-order"
REASON_DIMENSION = "dimension"
REASON_CENTER = "center"


@dataclass(frozen=True)
class Verdict:
    """Outcome of an equivalence decision.

    kind is "equivalent" (with a positive witness mu), "not-equivalent"
    (with a machine-checkable reason code and a printable detail), or
    "unknown" (the bounded mu-search was exhausted at `bound`).
    """

    kind: str
    mu: Scalar | None = None
    reason: str | None = None
    detail: str | None = None
    bound: int | None = None

    @classmethod
    def equivalent(cls, mu: Scalar) -> "Verdict":
        mu = Scalar.of(mu)
        assert mu.sign() > 0
        return cls(kind="equivalent", mu=mu)

    @classmethod
    def not_equivalent(cls, reason: str, detail: str) -> "Verdict":
        return cls(kind="not-equivalent", reason=reason, detail=detail)

    @classmethod
    def unknown(cls, bound: int, detail: str | None = None) -> "Verdict":
        return cls(kind="unknown", bound=bound, detail=detail)

    @property
    def is_equivalent(self) -> bool:
        return self.kind == "equivalent"

    @property
    def is_unknown(self) -> bool:
        return self.kind == "unknown"


def degeneracy_subgroup(theta: SkewMatrix):
    """{x in Z^n : x @ theta in Z^n}; its rank is the center's torus dimension."""
    return _degeneracy_subgroup(theta)


# ---------------------------------------------------------------------------
# Pfaffians


def pfaffian(skew: SkewMatrix) -> Scalar:
    """Pfaffian by recursive expansion along the first row."""
    if skew.n % 2:
        raise ValueError("pfaffian needs an even-dimensional matrix")
    return _pf_rec(skew.rows, list(range(skew.n)))


def _pf_rec(rows, idx) -> Scalar:
    if not idx:
        return Scalar(1)
    i0 = idx[0]
    total = Scalar(0)
    sign = 1
    for pos in range(1, len(idx)):
        j = idx[pos]
        val = rows[i0][j]
        if val:
            rest = idx[1:pos] + idx[pos + 1:]
            term = val * _pf_rec(rows, rest)
            total = total + (term if sign > 0 else -term)
        sign = -sign
    return total


def _matchings(elems):
    """Yield (pairs, parity) over all perfect matchings of elems.

    parity is the sign of the permutation obtained by writing the pairs in
    order, i.e. exactly the sign attached to the matching in the Pfaffian.
    """
    if not elems:
        yield (), 1
        return
    first = elems[0]
    for t in range(1, len(elems)):
        partner = elems[t]
        rest = elems[1:t] + elems[t + 1:]
        for pairs, par in _matchings(rest):
            yield ((first, partner),) + pairs, par * (-1) ** (t - 1)


def pfaffian_from_matchings(skew: SkewMatrix) -> Scalar:
    """Pfaffian as the signed sum over perfect matchings (oracle route)."""
    if skew.n % 2:
        raise ValueError("pfaffian needs an even-dimensional matrix")
    total = Scalar(0)
    for pairs, par in _matchings(tuple(range(skew.n))):
        prod = Scalar(1)
        for i, j in pairs:
            prod = prod * skew.rows[i][j]
        total = total + (prod if par > 0 else -prod)
    return total


# ---------------------------------------------------------------------------
# trace ranges


def _subgroup_key(gens):
    """Canonical (d, denom, rows) presentation of the subgroup of R generated
    by exact scalars: coordinates over {1, sqrt(d)} with one positive common
    denominator, row basis in HNF, content coprime to the denominator."""
    gens = [Scalar.of(g) for g in gens]
    ds = {g.d for g in gens if g.d is not None}
    if len(ds) > 1:
        raise IncompatibleField(f"generators mix quadratic fields {sorted(ds)}")
    d = ds.pop() if ds else None
    nonzero = [g for g in gens if g]
    if not nonzero:
        return (None, 1, ())
    denom = 1
    for g in nonzero:
        for f in (g.rat, g.quad):
            denom = denom * f.denominator // math.gcd(denom, f.denominator)
    rows = [[int(g.rat * denom), int(g.quad * denom)] for g in nonzero]
    h, _ = hnf(rows)
    rows = [r for r in h if any(r)]
    content = denom
    for r in rows:
        for x in r:
            content = math.gcd(content, x)
    if content > 1:
        denom //= content
        rows = [[x // content for x in r] for r in rows]
    if all(r[1] == 0 for r in rows):
        d = None
    return (d, denom, tuple(tuple(r) for r in rows))


def _key_scalars(key) -> list[Scalar]:
    d, denom, rows = key
    return [Scalar(Fraction(a, denom), Fraction(b, denom), d if b else None) for a, b in rows]


def _key_contains(key, x: Scalar) -> bool:
    d, denom, rows = key
    if x.quad and x.d != d:
        return False
    ca, cb = x.rat * denom, x.quad * denom
    if ca.denominator != 1 or cb.denominator != 1:
        return False
    v = [int(ca), int(cb)]
    for row in rows:
        p = 0 if row[0] else 1
        if row[p] == 0:
            continue
        if v[p] % row[p]:
            return False
        c = v[p] // row[p]
        v = [x0 - c * y0 for x0, y0 in zip(v, row)]
    return not any(v)


class TraceRange:
    """A finitely generated subgroup of R containing 1, held canonically.

    Elements are (a + b sqrt(d)) / denom with (a, b) running over an HNF row
    lattice; the representation is unique for the subgroup, so equality of
    trace ranges is representation equality.
    """

    __slots__ = ("d", "denom", "coord_rows")

    def __init__(self, generators):
        d, denom, rows = _subgroup_key(generators)
        if not rows:
            raise ValueError("a trace range needs a nonzero generator")
        self.d = d
        self.denom = denom
        self.coord_rows = rows
        if not _key_contains(self._key, Scalar(1)):
            raise ValueError("a trace range must contain 1")

    @property
    def _key(self):
        return (self.d, self.denom, self.coord_rows)

    @property
    def basis(self) -> tuple[Scalar, ...]:
        return tuple(_key_scalars(self._key))

    @property
    def rank(self) -> int:
        return len(self.coord_rows)

    def contains(self, x) -> bool:
        return _key_contains(self._key, Scalar.of(x))

    def scaled_equals(self, mu, other: "TraceRange") -> bool:
        """Exact test of mu * self == other as subgroups of R."""
        mu = Scalar.of(mu)
        return _subgroup_key([b * mu for b in self.basis]) == other._key

    def covolume(self) -> Fraction:
        """Covolume of the coordinate lattice (rank-2 ranges only)."""
        assert self.rank == 2
        rows = self.coord_rows
        det = rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
        return Fraction(abs(det), self.denom * self.denom)

    def __eq__(self, other):
        return isinstance(other, TraceRange) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"TraceRange({[str(b) for b in self.basis]})"


def trace_range(theta: SkewMatrix) -> TraceRange:
    """Subgroup of R generated by 1 and the Pfaffians of the even-sized
    principal submatrices of theta (the image of K0 under the trace)."""
    gens = [Scalar(1)]
    for size in range(2, theta.n + 1, 2):
        for idx in itertools.combinations(range(theta.n), size):
            gens.append(pfaffian(theta.submatrix(idx)))
    return TraceRange(gens)


# ---------------------------------------------------------------------------
# equality up to a positive factor


def _mult_matrix(b: Scalar, d: int) -> list[list[Fraction]]:
    # row (p, q) * M(b) = coordinates of (p + q sqrt d) * b over {1, sqrt d}
    return [[b.rat, b.quad], [b.quad * d, b.rat]]


def _lattice_conditions(l1: TraceRange, l2: TraceRange):
    """Rational 2x4 condition matrix N with x in the transporter
    {x : x * L1 <= L2} iff coord(x) @ N is integral."""
    d = l1.d
    h2 = [[Fraction(x, l2.denom) for x in row] for row in l2.coord_rows]
    det = h2[0][0] * h2[1][1] - h2[0][1] * h2[1][0]
    h2_inv = [
        [h2[1][1] / det, -h2[0][1] / det],
        [-h2[1][0] / det, h2[0][0] / det],
    ]
    cols = []
    for b in l1.basis:
        mb = _mult_matrix(b, d)
        prod = [
            [sum(mb[i][k] * h2_inv[k][j] for k in range(2)) for j in range(2)]
            for i in range(2)
        ]
        cols.append(prod)
    return [[cols[0][i][0], cols[0][i][1], cols[1][i][0], cols[1][i][1]] for i in range(2)]


def _embedding_norm(x: Scalar) -> Fraction:
    # sum of squares of the two real embeddings, up to the factor 2: a
    # positive definite size measure on Q(sqrt d)
    q = x.rat * x.rat
    if x.quad:
        q += x.quad * x.quad * x.d
    return q


def _lagrange_reduce(t1: Scalar, t2: Scalar) -> tuple[Scalar, Scalar]:
    """Gauss-Lagrange reduction of a rank-2 scalar lattice basis under the
    positive embedding norm, so small multipliers get small coordinates."""
    d = t1.d if t1.d is not None else t2.d

    def bil(x, y):
        b = x.rat * y.rat
        if x.quad and y.quad:
            b += x.quad * y.quad * d
        return b

    while True:
        if _embedding_norm(t1) > _embedding_norm(t2):
            t1, t2 = t2, t1
        denom = _embedding_norm(t1)
        m = (2 * bil(t1, t2) + denom) // (2 * denom)
        if m == 0:
            return t1, t2
        t2 = t2 - m * t1


def _transporter_basis(l1: TraceRange, l2: TraceRange):
    """Z-basis of {x in Q(sqrt d) : x * L1 <= L2} as scalars (reduced)."""
    n_cond = _lattice_conditions(l1, l2)
    det1 = n_cond[0][0] * n_cond[1][1] - n_cond[0][1] * n_cond[1][0]
    # x @ first condition block integral bounds the denominators of x
    inv1 = [
        [n_cond[1][1] / det1, -n_cond[0][1] / det1],
        [-n_cond[1][0] / det1, n_cond[0][0] / det1],
    ]
    dx = 1
    for row in inv1:
        for f in row:
            dx = dx * f.denominator // math.gcd(dx, f.denominator)
    scaled = [[Scalar(f / dx) for f in row] for row in n_cond]
    lat = integral_solution_lattice(scaled, 4)
    assert lat.rank == 2, "the transporter of two full lattices has rank 2"
    d = l1.d
    t1, t2 = (
        Scalar(Fraction(row[0], dx), Fraction(row[1], dx), d if row[1] else None)
        for row in lat.basis
    )
    return list(_lagrange_reduce(t1, t2))


def _multiplier_order_key(l: TraceRange):
    """Canonical presentation of {x : x * L <= L}, an order in Q(sqrt d);
    it is invariant under scaling L, so differing orders rule out any mu."""
    return _subgroup_key(_transporter_basis(l, l))


def _scaling_search(l1: TraceRange, l2: TraceRange, height: int) -> Scalar | None:
    """Search mu with mu * L1 = L2 among transporter elements of coordinate
    height <= height; complete up to that height because every valid mu
    lies in the transporter lattice."""
    t1, t2 = _transporter_basis(l1, l2)
    ratio = l2.covolume() / l1.covolume()
    for h in range(1, height + 1):
        for a in range(-h, h + 1):
            for b in range(-h, h + 1):
                if max(abs(a), abs(b)) != h:
                    continue
                mu = a * t1 + b * t2
                if not mu:
                    continue
                if abs(mu.norm()) != ratio:
                    continue
                mu = abs(mu)
                if l1.scaled_equals(mu, l2):
                    return mu
    return None


def range_equal_up_to_scaling(
    l1: TraceRange, l2: TraceRange, height: int = DEFAULT_SEARCH_HEIGHT
) -> Verdict:
    """Decide whether L2 = mu * L1 for some real mu > 0.

    Ladder: rank comparison; rank-1 generator ratio; ratio-field comparison;
    multiplier-order comparison; exact equality (mu = 1); bounded transporter
    search; otherwise Unknown with the exhausted height.
    """
    if l1.rank != l2.rank:
        return Verdict.not_equivalent(
            REASON_RANK, f"trace-range-rank {l1.rank} vs {l2.rank}"
        )
    if l1.rank == 1:
        g1 = l1.basis[0]
        g2 = l2.basis[0]
        return Verdict.equivalent(abs(g2 / g1))
    if l1.d != l2.d:
        return Verdict.not_equivalent(
            REASON_RATIO_FIELD, f"ratio-field sqrt({l1.d}) vs sqrt({l2.d})"
        )
    if _multiplier_order_key(l1) != _multiplier_order_key(l2):
        return Verdict.not_equivalent(
            REASON_ORDER, "multiplier-order mismatch"
        )
    if l1 == l2:
        return Verdict.equivalent(Scalar(1))
    mu = _scaling_search(l1, l2, height)
    if mu is not None:
        return Verdict.equivalent(mu)
    return Verdict.unknown(height)


# ---------------------------------------------------------------------------
# the decision procedure


def k_group_ranks(theta: SkewMatrix) -> tuple[int, int]:
    """Ranks of (K0, K1): (2^{n-1}, 2^{n-1}) for n > 0, (1, 0) for n = 0."""
    if theta.n == 0:
        return (1, 0)
    r = 2 ** (theta.n - 1)
    return (r, r)


def ordered_k0_isomorphic(
    theta1: SkewMatrix, theta2: SkewMatrix, height: int = DEFAULT_SEARCH_HEIGHT
) -> Verdict:
    """Ordered-K0 isomorphism: trace ranges agree up to a positive factor and
    the dimensions are equal (or one algebra is C and the other C(T)).

    The dimension test is decisive, so it runs before the range search and
    Unknown can only arise from the search itself.
    """
    n1, n2 = theta1.n, theta2.n
    if not (n1 == n2 or n1 + n2 == 1):
        r1, _ = k_group_ranks(theta1)
        r2, _ = k_group_ranks(theta2)
        return Verdict.not_equivalent(REASON_DIMENSION, f"k0-rank {r1} vs {r2}")
    return range_equal_up_to_scaling(trace_range(theta1), trace_range(theta2), height)


def morita_equivalent(
    theta1: SkewMatrix, theta2: SkewMatrix, height: int = DEFAULT_SEARCH_HEIGHT
) -> Verdict:
    """Strong Morita equivalence: isomorphic ordered K0 and equal center
    dimension (the rank of the degeneracy subgroup)."""
    c1 = degeneracy_subgroup(theta1).rank
    c2 = degeneracy_subgroup(theta2).rank
    if c1 != c2:
        return Verdict.not_equivalent(REASON_CENTER, f"center-rank {c1} vs {c2}")
    return ordered_k0_isomorphic(theta1, theta2, height)
