"""Twisted group algebras of finitely generated abelian groups.

A group is presented by its free rank r and a divisor chain of torsion
orders; a skew-symmetric bicharacter is an exponent matrix E over the
generators, pairing(g, h) = e(g @ E @ h^t) on exponent vectors.  The module
computes the kernel-of-pairing invariants, the simple quotient, the trace
range (through matrix-algebra splitting of the torsion), and the full
equivalence decision.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .exactlin import (
    IntLattice,
    Scalar,
    int_inverse_unimodular,
    integral_solution_lattice,
    mat_identity,
    mat_mul,
    snf,
    solve_row_system,
)
from .invariants import (
    DEFAULT_SEARCH_HEIGHT,
    REASON_CENTER,
    REASON_DIMENSION,
    TraceRange,
    Verdict,
    range_equal_up_to_scaling,
    trace_range,
)
from .reduction import SkewMatrix


class InvalidBicharacter(ValueError):
    """Exponent matrix violates a bicharacter constraint."""


class FgGroup:
    """A finitely generated abelian group Z^r + Z/m_1 + ... + Z/m_s.

    Generators are indexed 0..r-1 (free) then r..r+s-1 (torsion); torsion
    orders form a divisor chain m_1 | m_2 | ... with every m_i >= 2.
    """

    __slots__ = ("free_rank", "torsion_orders")

    def __init__(self, free_rank: int, torsion_orders=()):
        free_rank = int(free_rank)
        torsion_orders = tuple(int(m) for m in torsion_orders)
        if free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        for m in torsion_orders:
            if m < 2:
                raise ValueError("torsion orders must be >= 2")
        for a, b in zip(torsion_orders, torsion_orders[1:]):
            if b % a:
                raise ValueError(
                    f"torsion orders must form a divisor chain, got {torsion_orders}"
                )
        self.free_rank = free_rank
        self.torsion_orders = torsion_orders

    @classmethod
    def from_relations(cls, num_generators: int, relation_rows) -> "FgGroup":
        """Quotient of Z^num_generators by the row span of the relations."""
        rows = [list(map(int, r)) for r in relation_rows]
        if not rows:
            return cls(num_generators)
        s, _, _ = snf(rows)
        divisors = [
            s[i][i]
            for i in range(min(len(rows), num_generators))
            if s[i][i] != 0
        ]
        torsion = [d for d in divisors if d > 1]
        return cls(num_generators - len(divisors), torsion)

    @property
    def ngens(self) -> int:
        return self.free_rank + len(self.torsion_orders)

    @property
    def torsion_size(self) -> int:
        return math.prod(self.torsion_orders)

    def generator_orders(self) -> tuple[int, ...]:
        """Order of each generator, 0 meaning infinite."""
        return (0,) * self.free_rank + self.torsion_orders

    def relation_rows(self) -> list[list[int]]:
        n = self.ngens
        r = self.free_rank
        return [
            [m if j == r + i else 0 for j in range(n)]
            for i, m in enumerate(self.torsion_orders)
        ]

    def __eq__(self, other):
        return isinstance(other, FgGroup) and (
            (self.free_rank, self.torsion_orders)
            == (other.free_rank, other.torsion_orders)
        )

    def __hash__(self):
        return hash((self.free_rank, self.torsion_orders))

    def __repr__(self):
        return f"FgGroup(free={self.free_rank}, torsion={list(self.torsion_orders)})"


class Bicharacter:
    """A skew-symmetric bicharacter via its exponent matrix on generators."""

    __slots__ = ("group", "exponents")

    def __init__(self, group: FgGroup, rows):
        n = group.ngens
        rows = tuple(tuple(Scalar.of(x) for x in r) for r in rows)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise InvalidBicharacter(f"exponent matrix must be {n}x{n}")
        for i in range(n):
            if not rows[i][i].is_integer():
                raise InvalidBicharacter("diagonal exponents must be integers")
            for j in range(i + 1, n):
                if not (rows[i][j] + rows[j][i]).is_integer():
                    raise InvalidBicharacter(
                        "matrix must be skew-symmetric modulo Z"
                    )
        orders = group.generator_orders()
        for i, m in enumerate(orders):
            if not m:
                continue
            for j in range(n):
                for val in (rows[i][j], rows[j][i]):
                    if not (m * val).is_integer():
                        raise InvalidBicharacter(
                            f"order-{m} generator {i} pairs by a non m-th root"
                        )
        self.group = group
        self.exponents = rows

    @classmethod
    def from_skew(cls, theta: SkewMatrix) -> "Bicharacter":
        """The bicharacter of a noncommutative torus on Z^n."""
        return cls(FgGroup(theta.n), [list(r) for r in theta.rows])

    def pairing_exponent(self, x, y) -> Scalar:
        """g @ E @ h^t for exponent vectors; defined modulo Z."""
        acc = Scalar(0)
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if yj:
                    acc = acc + xi * self.exponents[i][j] * yj
        return acc

    def __repr__(self):
        return f"Bicharacter({self.group!r})"


def normalize_cocycle(rows) -> SkewMatrix:
    """Skew-symmetrization Theta - Theta^t of a cocycle exponent matrix on Z^n."""
    mat = [[Scalar.of(x) for x in r] for r in rows]
    n = len(mat)
    if any(len(r) != n for r in mat):
        raise ValueError("cocycle exponent matrix must be square")
    return SkewMatrix(
        [[mat[i][j] - mat[j][i] for j in range(n)] for i in range(n)]
    )


def _pairing_kernel_lattice(sigma: Bicharacter) -> IntLattice:
    """{x in Z^N : x @ E all integral}, the lift of the kernel of the pairing."""
    n = sigma.group.ngens
    if n == 0:
        return IntLattice(0)
    return integral_solution_lattice([list(r) for r in sigma.exponents], n)


def hsigma(sigma: Bicharacter) -> tuple[int, tuple[int, ...]]:
    """Structure (rank, torsion orders) of the kernel of the pairing.

    The kernel is the image in G of the lattice {x : x @ E integral}; its
    rank is the center's torus dimension and its torsion size the number of
    connected components of the center's spectrum.
    """
    lat = _pairing_kernel_lattice(sigma)
    rel = sigma.group.relation_rows()
    if lat.rank == 0:
        return (0, ())
    if not rel:
        return (lat.rank, ())
    basis = [list(b) for b in lat.basis]
    coords = []
    for row in rel:
        c = solve_row_system(basis, row)
        if c is None:
            raise InvalidBicharacter(
                "group relations escape the pairing kernel"
            )
        coords.append(c)
    s, _, _ = snf(coords)
    divisors = [
        s[i][i] for i in range(min(len(coords), lat.rank))
    ]
    assert all(divisors), "relation rows are independent"
    torsion = tuple(d for d in divisors if d > 1)
    return (lat.rank - len(coords), torsion)


def k_group_ranks_tga(sigma: Bicharacter) -> tuple[int, int]:
    """Ranks of (K0, K1) of the twisted algebra: |tor| * 2^{rank-1} twice for
    positive rank, else (|tor|, 0)."""
    _, torsion = hsigma(sigma)
    tor = math.prod(torsion)
    r = sigma.group.free_rank
    if r == 0:
        return (tor, 0)
    return (tor * 2 ** (r - 1), tor * 2 ** (r - 1))


def _present_quotient(sigma: Bicharacter, carrier_rows, relation_rows) -> Bicharacter:
    """Bicharacter induced on carrier/relations.

    carrier_rows is a basis of a sublattice K of Z^N, relation_rows a family
    of rows inside K; the quotient K / span(relations) is re-presented with
    free generators first, then a torsion divisor chain, and the exponent
    matrix is restricted along the chosen generator lifts.
    """
    ell = len(carrier_rows)
    if ell == 0:
        return Bicharacter(FgGroup(0), [])
    coords = []
    for row in relation_rows:
        c = solve_row_system(carrier_rows, row)
        assert c is not None, "relations must lie inside the carrier"
        coords.append(c)
    if coords:
        s, _, v = snf(coords)
        orders = [
            s[i][i] if i < min(len(coords), ell) else 0 for i in range(ell)
        ]
        lifts_w = int_inverse_unimodular(v)
    else:
        orders = [0] * ell
        lifts_w = mat_identity(ell)
    lift_rows = mat_mul(lifts_w, carrier_rows)

    free_idx = [i for i in range(ell) if orders[i] == 0]
    tors_idx = [i for i in range(ell) if orders[i] >= 2]
    perm = free_idx + tors_idx
    group = FgGroup(len(free_idx), tuple(orders[i] for i in tors_idx))

    def induced(a, b):
        val = sigma.pairing_exponent(lift_rows[a], lift_rows[b])
        # exponents only matter mod Z; pull the rational part into [0, 1)
        return Scalar(val.rat - math.floor(val.rat), val.quad, val.d)

    rows = [[induced(a, b) for b in perm] for a in perm]
    return Bicharacter(group, rows)


def simple_quotient(sigma: Bicharacter) -> Bicharacter:
    """The bicharacter induced on G / ker(pairing); always nondegenerate."""
    lat = _pairing_kernel_lattice(sigma)
    n = sigma.group.ngens
    out = _present_quotient(
        sigma, mat_identity(n), [list(b) for b in lat.basis]
    )
    assert hsigma(out) == (0, ()), "quotient pairing must be nondegenerate"
    return out


def _split_top_torsion(sigma: Bicharacter):
    """One matrix-algebra splitting step for a nondegenerate pairing.

    Take the torsion generator t of largest order m.  Nondegeneracy forces
    some group element to pair with t through a primitive m-th root (the
    gcd criterion below); compressing by a spectral projection of u_t turns
    the algebra into M_m of the twisted algebra of ker(pairing with t)/<t>.
    Returns (smaller bicharacter, m), or None when no partner exists.
    """
    group = sigma.group
    n = group.ngens
    t = n - 1
    m = group.torsion_orders[-1]
    jvals = []
    for i in range(n):
        v = m * sigma.exponents[t][i]
        assert v.is_integer()
        jvals.append(v.as_int() % m)
    if math.gcd(*jvals, m) != 1:
        return None
    kernel = integral_solution_lattice(
        [[Scalar(Fraction(j, m))] for j in jvals], 1
    )
    relations = group.relation_rows()
    relations.append([1 if i == t else 0 for i in range(n)])
    for row in relations:
        assert kernel.contains(row)
    out = _present_quotient(sigma, [list(b) for b in kernel.basis], relations)
    if hsigma(out) != (0, ()):
        return None
    return out, m


def _skew_from_exponents(sigma: Bicharacter) -> SkewMatrix:
    """Skew representative of a pairing on a free group (same values mod Z)."""
    e = sigma.exponents
    n = len(e)
    rows = [
        [
            e[i][j] if i < j else (-e[j][i] if i > j else Scalar(0))
            for j in range(n)
        ]
        for i in range(n)
    ]
    return SkewMatrix(rows)


def trace_range_tga(sigma: Bicharacter) -> TraceRange | None:
    """Common image of K0 under the extremal traces, or None when the
    torsion splitting fails (unsupported input).

    Pipeline: pass to the simple quotient; split torsion generators off one
    at a time, each contributing a matrix-algebra factor that scales the
    range by 1/m; read the torsion-free remainder as a torus.
    """
    current = simple_quotient(sigma)
    multiplier = 1
    while current.group.torsion_orders:
        step = _split_top_torsion(current)
        if step is None:
            return None
        current, m = step
        multiplier *= m
    base = trace_range(_skew_from_exponents(current))
    if multiplier == 1:
        return base
    return TraceRange([b / multiplier for b in base.basis])


def morita_equivalent_tga(
    sigma1: Bicharacter, sigma2: Bicharacter, height: int = DEFAULT_SEARCH_HEIGHT
) -> Verdict:
    """Strong Morita equivalence of two twisted group algebras.

    Requires equal centers (rank and torsion size of the pairing kernel),
    compatible group ranks, and trace ranges agreeing up to a positive
    factor; Unknown propagates from the bounded search or an unsupported
    trace-range computation.
    """
    r1, tor1 = hsigma(sigma1)
    r2, tor2 = hsigma(sigma2)
    size1, size2 = math.prod(tor1), math.prod(tor2)
    if r1 != r2:
        return Verdict.not_equivalent(REASON_CENTER, f"center-rank {r1} vs {r2}")
    if size1 != size2:
        return Verdict.not_equivalent(
            REASON_CENTER, f"center-torsion {size1} vs {size2}"
        )
    g1, g2 = sigma1.group.free_rank, sigma2.group.free_rank
    if not (g1 == g2 or g1 + g2 == 1):
        return Verdict.not_equivalent(REASON_DIMENSION, f"group-rank {g1} vs {g2}")
    t1 = trace_range_tga(sigma1)
    t2 = trace_range_tga(sigma2)
    if t1 is None or t2 is None:
        return Verdict.unknown(height, detail="trace range unsupported")
    return range_equal_up_to_scaling(t1, t2, height)
