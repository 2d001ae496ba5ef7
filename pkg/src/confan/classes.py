"""Invariants of the incidence variety: its class in the Grothendieck ring,
the bidegree under the two hyperplane classes, graded cohomology ranks in the
round case, and the graded Betti data of the linked ideal's resolution."""

from __future__ import annotations

from math import comb

from .errors import (
    Degenerate,
    DivisionFailure,
    HasLoops,
    Mismatch,
    NonDivisible,
    NotConnected,
    NotRound,
)
from .matroid import (
    ClassPoly,
    Matroid,
    contract,
    flats,
    is_connected,
    is_round,
    loops_of,
    matroid_from_bases,
    rank_of,
    reduced_char_poly,
)


def _projective_space(k: int) -> ClassPoly:
    # class of P^(k-1): 1 + L + ... + L^(k-1)
    return ClassPoly([1] * k, "L")


def motivic_class(m: Matroid) -> ClassPoly:
    """Class of the incidence variety: sum over proper flats F of the reduced
    characteristic polynomial of the contraction, weighted by the class of
    the projective space of betas vanishing outside rank(complement) directions."""
    if loops_of(m):
        raise HasLoops("matroid has loops")
    if not is_connected(m):
        raise NotConnected("class formula needs a connected matroid")
    full = m.ground
    total = ClassPoly([], "L")
    for f in flats(m).flats:
        if f == full:
            continue
        try:
            chi = reduced_char_poly(contract(m, f)).with_symbol("L")
        except NonDivisible as exc:
            raise DivisionFailure(str(exc)) from None
        weight = _projective_space(m.n - rank_of(m, full & ~f))
        total = total + chi * weight
    return total


def _wheel_example_matroid() -> Matroid:
    # rank 3 on 5 elements; the two dependent triples are 124 and 135
    bases = [
        b
        for b in [
            (1, 2, 3), (1, 2, 4), (1, 2, 5), (1, 3, 4), (1, 3, 5),
            (1, 4, 5), (2, 3, 4), (2, 3, 5), (2, 4, 5), (3, 4, 5),
        ]
        if set(b) not in ({1, 2, 4}, {1, 3, 5})
    ]
    return matroid_from_bases(5, bases)


def x_motivic_example() -> ClassPoly:
    """Class of the hypersurface cut out by the degeneracy locus for the
    fixed five-element rank-3 example, from the incidence class by
    inclusion-exclusion over the fibre structure."""
    lam = motivic_class(_wheel_example_matroid())
    ell = ClassPoly([1, 1], "L")
    two_ell = ClassPoly([1, 2], "L")
    return two_ell + lam - ell * two_ell


class BiDegree:
    """
    Finitely supported coefficients on monomials H^i H*^j.

    coeffs - dict (i, j) -> int
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = {k: int(v) for k, v in coeffs.items() if v}

    def __eq__(self, other):
        return isinstance(other, BiDegree) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def total(self) -> int:
        return sum(self.coeffs.values())

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for (i, j), c in sorted(self.coeffs.items(), key=lambda kv: (-kv[0][0], kv[0][1])):
            body = ""
            if c != 1:
                body += str(c)
            if i:
                body += "H" if i == 1 else "H^%d" % i
            if j:
                body += "H*" if j == 1 else "H*^%d" % j
            if not body:
                body = str(c)
            parts.append(body)
        return "+".join(parts)

    def __repr__(self):
        return "BiDegree(%s)" % self

    def to_json(self):
        return [
            {"h": i, "hstar": j, "coeff": c}
            for (i, j), c in sorted(self.coeffs.items(), key=lambda kv: (-kv[0][0], kv[0][1]))
        ]


def chow_bidegree(n: int, r: int) -> BiDegree:
    """Expansion of H^(n-r) (H + H*)^r: coefficient comb(r, k) on H^(n-k) H*^k."""
    if not 0 < r < n:
        raise Degenerate("need 0 < r < n")
    return BiDegree({(n - k, k): comb(r, k) for k in range(r + 1)})


# ---------------------------------------------------------------------------
# round case cohomology
# ---------------------------------------------------------------------------


def _reduce_ab(m: Matroid, poly):
    """Normal form in Z[a,b] modulo a^r and the monic-in-b relation.

    poly is a dict (i, j) -> int for a^i b^j.  The second relation rewrites
    b^(n-r) as lower b-powers with a-multiples; powers a^r and beyond vanish.
    """
    r, n = m.r, m.n
    d = n - r
    # b^d = sum_{k=1..min(r,d)} -comb(n,k) (-1)^k a^k b^(d-k)
    rewrite = {k: -comb(n, k) * (-1) ** k for k in range(1, min(r, d) + 1)}
    work = dict(poly)
    out = {}
    while work:
        (i, j), c = work.popitem()
        if not c:
            continue
        if i >= r:
            continue
        if j < d:
            out[(i, j)] = out.get((i, j), 0) + c
            continue
        for k, coeff in rewrite.items():
            key = (i + k, j - k)
            work[key] = work.get(key, 0) + c * coeff
    return {k: v for k, v in out.items() if v}


def is_truncation_boundary(m: Matroid) -> bool:
    """The relation's formal expansion hits a negative power exactly here."""
    return m.n == 2 * m.r - 1


def cohomology_basis(m: Matroid):
    """Graded ranks of Z[a,b] modulo a^r and the degree-(n-r) relation, for a
    round matroid: monomials a^i b^j with i < r, j < n-r, graded by i+j.

    Cross-checked against the product of the two truncated geometric series.
    """
    if m.r < 2:
        raise Degenerate("rank below 2 has no interesting quotient")
    if not is_round(m):
        raise NotRound("cohomology formula needs a round matroid")
    r, n = m.r, m.n
    d = n - r
    top = (r - 1) + (d - 1)
    ranks = [0] * (top + 1)
    for i in range(r):
        for j in range(d):
            ranks[i + j] += 1
    # Hilbert series cross-check: [r]_t * [n-r]_t
    product = ClassPoly([1] * r) * ClassPoly([1] * d)
    if tuple(ranks) != product.coeffs:
        raise Mismatch("graded ranks disagree with the Hilbert product")
    # reduction sanity: b^d must land in the monomial basis span
    nf = _reduce_ab(m, {(0, d): 1})
    if any(i >= r or j >= d for i, j in nf):
        raise Mismatch("normal form escaped the monomial basis")
    return tuple(ranks)


# ---------------------------------------------------------------------------
# resolution data
# ---------------------------------------------------------------------------


class BettiTable:
    """
    rows - tuple indexed by homological degree; each row is a tuple of
           (twist, multiplicity) pairs
    """

    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = tuple(tuple(row) for row in rows)

    def __eq__(self, other):
        return isinstance(other, BettiTable) and self.rows == other.rows

    def rank(self, i: int) -> int:
        return sum(mult for _, mult in self.rows[i])

    def type(self) -> int:
        return self.rank(len(self.rows) - 1)

    def alternating_sum(self) -> int:
        return sum(
            (-1) ** i * self.rank(i) for i in range(len(self.rows))
        )

    def __str__(self):
        lines = []
        for i, row in enumerate(self.rows):
            body = " + ".join("R(%d)^%d" % (tw, mult) for tw, mult in row)
            lines.append("F%d = %s" % (i, body))
        return "\n".join(lines)

    def to_json(self):
        return [
            [{"twist": tw, "mult": mult} for tw, mult in row] for row in self.rows
        ]


def resolution_betti(n: int, r: int) -> BettiTable:
    """Twists and multiplicities of the length-r resolution of the linked ideal."""
    if not 0 < r < n:
        raise Degenerate("need 0 < r < n")
    rows = [((0, 1),)]
    for i in range(1, r):
        rows.append(((-2 * i, comb(r, i)), (-(r + i - 1), comb(r, i - 1))))
    rows.append(((1 - 2 * r, comb(r, r - 1)),))
    return BettiTable(rows)


def a_invariant(n: int, r: int) -> int:
    if not 0 < r < n:
        raise Degenerate("need 0 < r < n")
    return r - 1 - n
