"""Matroids with explicit basis lists, on ground sets {1..n} stored as bitmasks.

Everything downstream (flats, duality, minors, roundness, characteristic
polynomials) reads off the basis list, which keeps each query auditable.
Ground sets are desk scale; the basis list is exponential in n by design.
"""

from __future__ import annotations

from itertools import combinations

from .arith import Matrix, matrix_rank
from .errors import (
    Degenerate,
    DisconnectedGraph,
    EmptyResult,
    HasLoops,
    NonDivisible,
    RankDeficient,
)


def mask_of(elements) -> int:
    """Bitmask of a collection of 1-based elements."""
    m = 0
    for e in elements:
        m |= 1 << (e - 1)
    return m


def elements_of(mask: int) -> tuple:
    """Sorted 1-based elements of a bitmask."""
    out = []
    e = 1
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return tuple(out)


def subset_label(mask: int, n: int) -> str:
    """Compact label: digit string for n <= 9, dotted beyond; the empty set
    prints as the empty sign and the full set as E."""
    if mask == 0:
        return "∅"
    if mask == (1 << n) - 1:
        return "E"
    parts = [str(e) for e in elements_of(mask)]
    return "".join(parts) if n <= 9 else ".".join(parts)


def parse_subset_label(label: str, n: int) -> int:
    label = label.strip()
    if label in ("∅", "0", ""):
        return 0
    if label == "E":
        return (1 << n) - 1
    if "." in label or "," in label:
        elements = [int(tok) for tok in label.replace(",", ".").split(".") if tok]
    else:
        elements = [int(ch) for ch in label]
    if any(not 1 <= e <= n for e in elements):
        raise ValueError("element out of range in %r" % label)
    return mask_of(elements)


class ClassPoly:
    """
    Univariate integer polynomial with a display symbol.

    coeffs - tuple, coeffs[d] is the coefficient of symbol**d
    symbol - the variable name used for printing ("t", "L")
    """

    __slots__ = ("coeffs", "symbol")

    def __init__(self, coeffs, symbol="t"):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coeffs = tuple(int(c) for c in coeffs)
        self.symbol = symbol

    @classmethod
    def monomial(cls, degree, symbol="t", coeff=1):
        return cls([0] * degree + [coeff], symbol)

    def degree(self):
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, ClassPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        size = max(len(a), len(b))
        a = a + (0,) * (size - len(a))
        b = b + (0,) * (size - len(b))
        return ClassPoly([x + y for x, y in zip(a, b)], self.symbol)

    def __sub__(self, other):
        return self + ClassPoly([-c for c in other.coeffs], self.symbol)

    def __mul__(self, other):
        if isinstance(other, int):
            return ClassPoly([c * other for c in self.coeffs], self.symbol)
        out = [0] * (len(self.coeffs) + len(other.coeffs))
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return ClassPoly(out, self.symbol)

    __rmul__ = __mul__

    def evaluate(self, x: int) -> int:
        total = 0
        for c in reversed(self.coeffs):
            total = total * x + c
        return total

    def div_exact(self, other: "ClassPoly") -> "ClassPoly":
        """Exact quotient; raises NonDivisible on a nonzero remainder."""
        rem = list(self.coeffs)
        d = other.coeffs
        if not d:
            raise NonDivisible("division by zero polynomial")
        out = [0] * max(len(rem) - len(d) + 1, 0)
        for i in range(len(rem) - len(d), -1, -1):
            q, r = divmod(rem[i + len(d) - 1], d[-1])
            if r:
                raise NonDivisible("leading coefficient does not divide")
            out[i] = q
            for j, dc in enumerate(d):
                rem[i + j] -= q * dc
        if any(rem):
            raise NonDivisible("nonzero remainder")
        return ClassPoly(out, self.symbol)

    def with_symbol(self, symbol: str) -> "ClassPoly":
        return ClassPoly(self.coeffs, symbol)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for d in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[d]
            if not c:
                continue
            mag = abs(c)
            if d == 0:
                body = str(mag)
            elif d == 1:
                body = self.symbol if mag == 1 else "%d%s" % (mag, self.symbol)
            else:
                body = (
                    "%s^%d" % (self.symbol, d)
                    if mag == 1
                    else "%d%s^%d" % (mag, self.symbol, d)
                )
            if not parts:
                parts.append("-" + body if c < 0 else body)
            else:
                parts.append(("-" if c < 0 else "+") + body)
        return "".join(parts)

    def __repr__(self):
        return "ClassPoly(%s)" % self


class Matroid:
    """
    Matroid on {1..n} with an explicit basis list.

    n     - ground set size
    r     - rank (common size of all bases)
    bases - frozenset of basis bitmasks
    """

    def __init__(self, n, bases, check=None):
        if n < 1:
            raise ValueError("ground set must be nonempty")
        bases = frozenset(bases)
        if not bases:
            raise ValueError("a matroid needs at least one basis")
        sizes = {b.bit_count() for b in bases}
        if len(sizes) != 1:
            raise ValueError("bases of unequal size")
        full = (1 << n) - 1
        if any(b & ~full for b in bases):
            raise ValueError("basis outside the ground set")
        self.n = n
        self.r = sizes.pop()
        self.bases = bases
        if check is None:
            check = n <= 10
        if check:
            self._check_exchange()

    def _check_exchange(self):
        for b1 in self.bases:
            for b2 in self.bases:
                if b1 == b2:
                    continue
                out = b1 & ~b2
                swap_in = b2 & ~b1
                while out:
                    x = out & -out
                    found = False
                    rest = swap_in
                    while rest:
                        y = rest & -rest
                        if (b1 & ~x) | y in self.bases:
                            found = True
                            break
                        rest &= rest - 1
                    if not found:
                        raise ValueError(
                            "basis exchange fails for %x, %x" % (b1, b2)
                        )
                    out &= out - 1

    @property
    def ground(self) -> int:
        return (1 << self.n) - 1

    def __eq__(self, other):
        if not isinstance(other, Matroid):
            return NotImplemented
        return self.n == other.n and self.bases == other.bases

    def __hash__(self):
        return hash((self.n, self.bases))

    def __repr__(self):
        return "Matroid(n=%d, r=%d, %d bases)" % (self.n, self.r, len(self.bases))


class FlatLattice:
    """
    All flats of a matroid, graded by rank.

    flats - tuple of bitmasks sorted by (rank, mask)
    rank  - dict flat -> rank
    """

    def __init__(self, flats, rank, n):
        self.rank = dict(rank)
        self.flats = tuple(sorted(flats, key=lambda f: (self.rank[f], f)))
        self.n = n

    def __iter__(self):
        return iter(self.flats)

    def __len__(self):
        return len(self.flats)

    def __contains__(self, f):
        return f in self.rank

    def proper(self):
        """Flats other than the full ground set (the closure of the empty set counts)."""
        top = (1 << self.n) - 1
        return tuple(f for f in self.flats if f != top)

    def nonempty_proper(self):
        top = (1 << self.n) - 1
        return tuple(f for f in self.flats if f != top and f != 0)

    def by_rank(self, k):
        return tuple(f for f in self.flats if self.rank[f] == k)

    def covers(self, f):
        """Minimal flats strictly containing f."""
        above = [g for g in self.flats if g != f and g & f == f]
        return tuple(
            g
            for g in above
            if not any(h != g and h != f and h & f == f and g & h == h for h in above)
        )


def matroid_from_bases(n, bases) -> Matroid:
    """Matroid from explicit bases given as element lists (1-based)."""
    return Matroid(n, [mask_of(b) for b in bases])


def uniform_matroid(r, n) -> Matroid:
    if not 0 < r <= n:
        raise ValueError("uniform matroid needs 0 < r <= n")
    return Matroid(
        n, [mask_of(c) for c in combinations(range(1, n + 1), r)], check=False
    )


def matroid_from_matrix(a: Matrix) -> Matroid:
    """Column matroid of a full-row-rank matrix."""
    r, n = a.nrows, a.ncols
    if r == 0 or r == n:
        raise Degenerate("need 0 < r < n, got r=%d n=%d" % (r, n))
    if matrix_rank(a) < r:
        raise RankDeficient("row rank below %d" % r)
    bases = []
    for cols in combinations(range(n), r):
        if matrix_rank(a.column_submatrix(cols)) == r:
            bases.append(mask_of(c + 1 for c in cols))
    return Matroid(n, bases, check=False)


def _connected_components(vertices, edges):
    parent = {v: v for v in vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    return len({find(v) for v in vertices})


def matroid_from_graph(edges) -> Matroid:
    """Cycle matroid of a connected graph; edges are numbered 1..n in input order."""
    edges = [tuple(e) for e in edges]
    n = len(edges)
    if n == 0:
        raise ValueError("no edges")
    vertices = []
    seen = set()
    for u, v in edges:
        for w in (u, v):
            if w not in seen:
                seen.add(w)
                vertices.append(w)
    if _connected_components(vertices, edges) != 1:
        raise DisconnectedGraph("graph is not connected")
    r = len(vertices) - 1
    if r == 0:
        raise Degenerate("single-vertex graph has a rank-0 matroid")
    bases = []
    for subset in combinations(range(n), r):
        chosen = [edges[i] for i in subset]
        if _connected_components(vertices, chosen) == 1:
            bases.append(mask_of(i + 1 for i in subset))
    if not bases:
        raise Degenerate("graph has no spanning tree")
    return Matroid(n, bases, check=False)


def rank_of(m: Matroid, s: int) -> int:
    """Rank of a subset: the largest basis intersection."""
    return max((b & s).bit_count() for b in m.bases)


def closure(m: Matroid, s: int) -> int:
    rk = rank_of(m, s)
    out = s
    for e in range(m.n):
        bit = 1 << e
        if not s & bit and rank_of(m, s | bit) == rk:
            out |= bit
    return out


def flats(m: Matroid) -> FlatLattice:
    """Every flat, found by closing all subsets."""
    found = {}
    for s in range(1 << m.n):
        f = closure(m, s)
        if f not in found:
            found[f] = rank_of(m, f)
    return FlatLattice(found.keys(), found, m.n)


def loops_of(m: Matroid) -> int:
    return closure(m, 0)


def coloops_of(m: Matroid) -> int:
    return loops_of(dual(m))


def dual(m: Matroid) -> Matroid:
    full = m.ground
    return Matroid(m.n, [full & ~b for b in m.bases], check=False)


def _relabel(masks, keep_mask, n):
    keep = elements_of(keep_mask)
    position = {e: i for i, e in enumerate(keep)}
    out = []
    for mask in masks:
        new = 0
        for e in elements_of(mask):
            new |= 1 << position[e]
        out.append(new)
    return out, len(keep)


def delete(m: Matroid, f: int) -> Matroid:
    """Deletion M minus f; surviving elements are renumbered 1..n' in order."""
    keep = m.ground & ~f
    if keep == 0 or rank_of(m, keep) == 0:
        raise EmptyResult("deletion leaves nothing of positive rank")
    rk = rank_of(m, keep)
    bases = []
    for cols in combinations(elements_of(keep), rk):
        s = mask_of(cols)
        if rank_of(m, s) == rk:
            bases.append(s)
    relabeled, n2 = _relabel(bases, keep, m.n)
    return Matroid(n2, relabeled, check=False)


def contract(m: Matroid, f: int) -> Matroid:
    """Contraction M/f; surviving elements are renumbered 1..n' in order."""
    if f == 0:
        return m
    keep = m.ground & ~f
    if keep == 0:
        raise EmptyResult("contracting the whole ground set")
    rf = rank_of(m, f)
    rk = m.r - rf
    if rk == 0:
        raise EmptyResult("contraction has rank zero")
    bases = []
    for cols in combinations(elements_of(keep), rk):
        s = mask_of(cols)
        if rank_of(m, s | f) == m.r:
            bases.append(s)
    relabeled, n2 = _relabel(bases, keep, m.n)
    return Matroid(n2, relabeled, check=False)


def is_connected(m: Matroid) -> bool:
    """No partition E = E1 | E2 with rank(E1) + rank(E2) = rank(E), both parts nonempty."""
    full = m.ground
    for s in range(1, 1 << (m.n - 1)):
        if rank_of(m, s) + rank_of(m, full & ~s) == m.r:
            return False
    return True


def is_round(m: Matroid) -> bool:
    """rank(E minus F) = rank(E) for every proper flat F, the empty closure included."""
    full = m.ground
    for f in flats(m).proper():
        if rank_of(m, full & ~f) < m.r:
            return False
    return True


def char_poly(m: Matroid) -> ClassPoly:
    """Characteristic polynomial via Moebius recursion on the flat lattice."""
    if loops_of(m) != 0:
        raise HasLoops("characteristic polynomial of a matroid with loops")
    lattice = flats(m)
    mu = {}
    for f in lattice.flats:
        below = sum(mu[g] for g in lattice.flats if g != f and g & f == g)
        mu[f] = 1 if f == 0 else -below
    coeffs = [0] * (m.r + 1)
    for f in lattice.flats:
        coeffs[m.r - lattice.rank[f]] += mu[f]
    return ClassPoly(coeffs, "t")


def reduced_char_poly(m: Matroid) -> ClassPoly:
    """char_poly divided exactly by (t - 1)."""
    return char_poly(m).div_exact(ClassPoly([-1, 1], "t"))
