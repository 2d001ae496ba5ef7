"""Fans in the doubled quotient lattice: Bergman fans, square biflats and the
square conormal fan, the shear map and its negative, the coarse and fine
resolution fans, and the structural checks (unimodularity, coordinate-fan
maps, refinement certificates, divisor incidence, fibre fans).

Lattice model: vectors live in (Z^E / Z*e_E)^2.  A class is stored by the
unique representative whose minimum entry per block is zero, and exact linear
algebra runs through the isomorphism to Z^(2n-2) that drops the last
coordinate of each block after subtracting it.
"""

from __future__ import annotations

from itertools import combinations
from math import gcd

from .arith import Matrix, det, matrix_rank, solve_exact
from .errors import (
    HasLoops,
    LoopOrColoop,
    NotAFlat,
    NotPure,
    NotSimplicial,
    ParseError,
)
from .matroid import (
    Matroid,
    coloops_of,
    dual,
    elements_of,
    flats,
    loops_of,
    mask_of,
    parse_subset_label,
    subset_label,
)


def _min_zero(block):
    m = min(block)
    return tuple(x - m for x in block)


class LatticeVector:
    """
    Element of the doubled quotient lattice, canonical min-zero representative.

    e, f - integer tuples of equal length n, each with minimum entry 0
    """

    __slots__ = ("e", "f")

    def __init__(self, e, f):
        e = tuple(e)
        f = tuple(f)
        if len(e) != len(f) or not e:
            raise ValueError("blocks must be nonempty and of equal length")
        object.__setattr__(self, "e", _min_zero(e))
        object.__setattr__(self, "f", _min_zero(f))

    def __setattr__(self, *a):
        raise AttributeError("immutable")

    @property
    def n(self):
        return len(self.e)

    def __eq__(self, other):
        return (
            isinstance(other, LatticeVector)
            and self.e == other.e
            and self.f == other.f
        )

    def __hash__(self):
        return hash((self.e, self.f))

    def __repr__(self):
        return "LatticeVector(e=%r, f=%r)" % (self.e, self.f)

    def __add__(self, other):
        return LatticeVector(
            tuple(a + b for a, b in zip(self.e, other.e)),
            tuple(a + b for a, b in zip(self.f, other.f)),
        )

    def __neg__(self):
        return LatticeVector(tuple(-a for a in self.e), tuple(-a for a in self.f))

    def scale(self, k: int):
        if k < 0:
            return (-self).scale(-k)
        return LatticeVector(tuple(k * a for a in self.e), tuple(k * a for a in self.f))

    def coords(self):
        """Image in Z^(2n-2): subtract the last entry of each block and drop it."""
        return tuple(a - self.e[-1] for a in self.e[:-1]) + tuple(
            b - self.f[-1] for b in self.f[:-1]
        )

    def is_zero(self) -> bool:
        return not any(self.e) and not any(self.f)

    def primitive(self):
        c = 0
        for x in self.coords():
            c = gcd(c, x)
        if c <= 1:
            return self
        return LatticeVector(
            tuple(a // c for a in self.e), tuple(b // c for b in self.f)
        )


def _indicator(mask: int, n: int):
    return tuple(1 if mask >> i & 1 else 0 for i in range(n))


def lattice_e(mask: int, n: int) -> LatticeVector:
    return LatticeVector(_indicator(mask, n), (0,) * n)


def lattice_f(mask: int, n: int) -> LatticeVector:
    return LatticeVector((0,) * n, _indicator(mask, n))


def biflat_ray(fmask: int, gmask: int, n: int) -> LatticeVector:
    """The ray -e_F + f_G of a square biflat."""
    return LatticeVector(
        tuple(-x for x in _indicator(fmask, n)), _indicator(gmask, n)
    )


def mu_apply(v: LatticeVector, direction: str) -> LatticeVector:
    """The shear (x,y) -> (x, x+y), or its negative (x,y) -> (-x, -x-y)."""
    x, y = v.e, v.f
    if direction == "forward":
        return LatticeVector(x, tuple(a + b for a, b in zip(x, y)))
    if direction == "minus":
        return LatticeVector(
            tuple(-a for a in x), tuple(-a - b for a, b in zip(x, y))
        )
    raise ValueError("direction must be 'forward' or 'minus'")


class Fan:
    """
    Simplicial fan presented by rays and index sets.

    n        - ground-set size (length of each lattice block)
    rays     - tuple of primitive LatticeVector
    labels   - tuple of ray labels
    cones    - frozenset of frozensets of ray indices, closed under faces;
               always contains the empty set (the origin)
    ray_data - optional tuple of (F, G) mask pairs when rays index biflats
    """

    __slots__ = ("n", "rays", "labels", "cones", "ray_data")

    def __init__(self, n, rays, labels, cones, ray_data=None):
        self.n = n
        self.rays = tuple(rays)
        self.labels = tuple(labels)
        cones = {frozenset(c) for c in cones}
        cones.add(frozenset())
        self.cones = frozenset(cones)
        self.ray_data = None if ray_data is None else tuple(ray_data)

    def __eq__(self, other):
        if not isinstance(other, Fan):
            return NotImplemented
        if self.n != other.n or len(self.rays) != len(other.rays):
            return False
        if set(self.rays) != set(other.rays):
            return False

        def keyed(fan):
            order = sorted(range(len(fan.rays)), key=lambda i: (fan.rays[i].e, fan.rays[i].f))
            back = {old: new for new, old in enumerate(order)}
            cones = {frozenset(back[i] for i in c) for c in fan.cones}
            labels = tuple(fan.labels[i] for i in order)
            return cones, labels

        return keyed(self) == keyed(other)

    def __hash__(self):
        return hash((self.n, frozenset(self.rays)))

    def maximal_cones(self):
        out = [
            c
            for c in self.cones
            if not any(c < d for d in self.cones)
        ]
        return sorted(out, key=lambda c: sorted(c))

    def cone_dim(self, cone) -> int:
        if not cone:
            return 0
        rows = [self.rays[i].coords() for i in sorted(cone)]
        return matrix_rank(Matrix(rows, ncols=2 * self.n - 2))


def count_maximal_cones(f: Fan) -> int:
    """Number of inclusion-maximal cones; the trivial fan counts its origin."""
    return len(f.maximal_cones())


# ---------------------------------------------------------------------------
# fan constructions
# ---------------------------------------------------------------------------


def _chains(items, below):
    """All chains in a finite poset, as tuples in decreasing order.

    items is a sequence; below(a, b) means a is strictly below b.  Yields the
    empty chain too.
    """
    n = len(items)
    stack = [((), None)]
    while stack:
        chain, last = stack.pop()
        yield chain
        for i in range(n):
            if i in chain:
                continue
            if last is None or below(items[i], items[last]):
                stack.append((chain + (i,), i))


def bergman_fan(m: Matroid) -> Fan:
    """Fan of strict flags of nonempty proper flats, with rays e_F."""
    if loops_of(m):
        raise HasLoops("matroid has loops")
    props = flats(m).nonempty_proper()
    rays = [lattice_e(f, m.n) for f in props]
    labels = [subset_label(f, m.n) for f in props]
    cones = set()
    order = {f: i for i, f in enumerate(props)}

    # iterative chain enumeration; flags ordered decreasing
    stack = [((), None)]
    while stack:
        chain, last = stack.pop()
        cones.add(frozenset(chain))
        for f in props:
            if last is not None and not (f != last and f & last == f):
                continue
            stack.append((chain + (order[f],), f))
    return Fan(m.n, rays, labels, cones)


def square_biflats(m: Matroid):
    """All pairs (F, G): F a flat of m, G a flat of the dual, F within G,
    G nonempty, F proper, and not the degenerate pair (empty, full)."""
    if loops_of(m) or coloops_of(m):
        raise LoopOrColoop("square biflats need a loopless, coloopless matroid")
    full = m.ground
    out = []
    dual_flats = flats(dual(m)).flats
    for f in flats(m).flats:
        if f == full:
            continue
        for g in dual_flats:
            if g == 0 or (f == 0 and g == full):
                continue
            if f & g == f:
                out.append((f, g))
    out.sort(key=lambda p: (-bin(p[0]).count("1"), p[0], -bin(p[1]).count("1"), p[1]))
    return out


def biflat_label(pair, n: int) -> str:
    return "%s⊆%s" % (subset_label(pair[0], n), subset_label(pair[1], n))


def square_conormal_fan(m: Matroid) -> Fan:
    """Fan on rays -e_F + f_G over square biflats; cones are biflag chains
    (both components decreasing) whose union of G minus F stays proper."""
    pairs = square_biflats(m)
    n = m.n
    full = m.ground
    rays = [biflat_ray(f, g, n).primitive() for f, g in pairs]
    labels = [biflat_label(p, n) for p in pairs]
    cones = set()
    k = len(pairs)

    def leq(a, b):
        return a[0] & b[0] == a[0] and a[1] & b[1] == a[1]

    stack = [((), None, 0)]
    while stack:
        chain, last, union = stack.pop()
        cones.add(frozenset(chain))
        for i in range(k):
            p = pairs[i]
            if i in chain:
                continue
            if last is not None and (p == pairs[last] or not leq(p, pairs[last])):
                continue
            u = union | (p[1] & ~p[0])
            if u == full:
                continue
            stack.append((chain + (i,), i, u))
    return Fan(n, rays, labels, cones, ray_data=pairs)


def delta_tilde_fan(m: Matroid) -> Fan:
    """Image of the square conormal fan under the negative shear;
    rays become e_F - f_(G minus F)."""
    base = square_conormal_fan(m)
    rays = [mu_apply(v, "minus").primitive() for v in base.rays]
    return Fan(base.n, rays, base.labels, base.cones, ray_data=base.ray_data)


def delta_fan(m: Matroid) -> Fan:
    """Negative shear of the product of the negated Bergman fan of m with the
    Bergman fan of its dual."""
    if loops_of(m) or coloops_of(m):
        raise LoopOrColoop("needs a loopless, coloopless matroid")
    n = m.n
    left = bergman_fan(m)
    right = bergman_fan(dual(m))
    rays = []
    labels = []
    for v, lab in zip(left.rays, left.labels):
        rays.append(mu_apply(-v, "minus").primitive())
        labels.append(lab)
    off = len(rays)
    for v, lab in zip(right.rays, right.labels):
        shifted = LatticeVector((0,) * n, v.e)
        rays.append(mu_apply(shifted, "minus").primitive())
        labels.append("*" + lab)
    cones = set()
    for c1 in left.cones:
        for c2 in right.cones:
            cones.add(frozenset(c1) | frozenset(i + off for i in c2))
    return Fan(n, rays, labels, cones)


# ---------------------------------------------------------------------------
# structural checks
# ---------------------------------------------------------------------------


def is_unimodular(fan: Fan, cone) -> bool:
    """Generators are independent and extend to a basis of the lattice:
    the gcd of all maximal minors of the coordinate matrix is 1."""
    idx = sorted(cone)
    if not idx:
        return True
    rows = [fan.rays[i].coords() for i in idx]
    k = len(rows)
    mat = Matrix(rows, ncols=2 * fan.n - 2)
    if matrix_rank(mat) < k:
        return False
    g = 0
    for cols in combinations(range(2 * fan.n - 2), k):
        d = det(mat.column_submatrix(cols))
        if isinstance(d, int):
            g = gcd(g, d)
        else:
            if d.denominator != 1:
                return False
            g = gcd(g, int(d))
        if g == 1:
            return True
    return g == 1


def maps_into_coordinate_fan(fan: Fan, cone, block: str, sign: str) -> bool:
    """Whether the projected cone lands in one cone of the coordinate fan.

    Project each generator to the chosen block, apply the sign, and intersect
    the argmin sets; nonempty intersection means a common minimizing
    coordinate, and the min inequalities survive nonnegative combinations.
    """
    if block not in ("first", "second"):
        raise ValueError("block must be 'first' or 'second'")
    idx = sorted(cone)
    if not idx:
        return True
    j_set = None
    for i in idx:
        v = fan.rays[i]
        proj = v.e if block == "first" else v.f
        if sign == "minus":
            proj = tuple(-x for x in proj)
        elif sign != "plus":
            raise ValueError("sign must be 'plus' or 'minus'")
        lo = min(proj)
        cur = {j for j, x in enumerate(proj) if x == lo}
        j_set = cur if j_set is None else j_set & cur
        if not j_set:
            return False
    return True


def _check_pure_simplicial(fan: Fan):
    maxes = fan.maximal_cones()
    dims = set()
    for c in maxes:
        d = fan.cone_dim(c)
        if d < len(c):
            raise NotSimplicial("cone with dependent generators")
        dims.add(d)
    if len(dims) != 1:
        raise NotPure("maximal cones of unequal dimension")
    return maxes, dims.pop()


def _cone_coords_columns(fan: Fan, cone):
    idx = sorted(cone)
    cols = [fan.rays[i].coords() for i in idx]
    rows = [[cols[j][t] for j in range(len(idx))] for t in range(2 * fan.n - 2)]
    return Matrix(rows, ncols=len(idx))


def _membership(fan_c: Fan, cone, vec_coords):
    """Barycentric coordinates of a vector in a simplicial cone, or None."""
    mat = _cone_coords_columns(fan_c, cone)
    sol = solve_exact(mat, list(vec_coords))
    if sol is None:
        return None
    if any(x < 0 for x in sol):
        return None
    return sol


def refines(fine: Fan, coarse: Fan) -> bool:
    """Certified refinement of simplicial fans of equal pure dimension.

    Checks: every fine ray lies in the coarse support; every maximal fine
    cone sits inside a single maximal coarse cone; and inside each coarse
    cone the fine cones match along facets (interior facets shared by
    exactly two cones, boundary facets lying in coarse facets, at least one
    fine cone per coarse cone).
    """
    fine_max, d_fine = _check_pure_simplicial(fine)
    coarse_max, d_coarse = _check_pure_simplicial(coarse)
    if d_fine != d_coarse:
        raise NotPure("fans have different dimensions")

    def containing_cone(vec):
        for c in coarse_max:
            if _membership(coarse, c, vec.coords()) is not None:
                return c
        return None

    for v in fine.rays:
        if containing_cone(v) is None:
            return False

    assignment = {c: [] for c in map(frozenset, coarse_max)}
    for tau in fine_max:
        home = None
        for c in coarse_max:
            if all(
                _membership(coarse, c, fine.rays[i].coords()) is not None
                for i in tau
            ):
                home = frozenset(c)
                break
        if home is None:
            return False
        assignment[home].append(tau)

    for sigma, taus in assignment.items():
        if not taus:
            return False
        sigma_idx = sorted(sigma)
        bary = {}
        for tau in taus:
            for i in tau:
                if i not in bary:
                    bary[i] = _membership(coarse, sigma, fine.rays[i].coords())
        facet_count = {}
        for tau in taus:
            for drop in tau:
                rho = frozenset(tau - {drop})
                facet_count[rho] = facet_count.get(rho, 0) + 1
        for rho, cnt in facet_count.items():
            on_boundary = any(
                all(not bary[i][j] for i in rho) for j in range(len(sigma_idx))
            )
            if on_boundary:
                if cnt != 1:
                    return False
            elif cnt != 2:
                return False
    return True


def divisor_incidence(biflats, n: int) -> bool:
    """Whether the given distinct square biflats admit a common cone: they
    must sort into a chain decreasing in both components with the union of
    the differences staying proper."""
    if not biflats:
        raise ValueError("empty biflat list")
    pairs = sorted(
        set(biflats),
        key=lambda p: (-bin(p[0]).count("1"), -bin(p[1]).count("1"), p[0], p[1]),
    )
    if len(pairs) != len(biflats):
        raise ValueError("biflats must be distinct")
    union = 0
    full = (1 << n) - 1
    for (f1, g1), (f2, g2) in zip(pairs, pairs[1:]):
        if f1 & f2 != f2 or g1 & g2 != g2:
            return False
    for f, g in pairs:
        union |= g & ~f
    return union != full


def fibre_fan(m: Matroid, flat: int, subset: int) -> Fan:
    """Subfan of the fine resolution fan on rays whose biflat (F', G')
    satisfies F' within the given flat and G' minus F' within the subset."""
    lattice = flats(m)
    if flat not in lattice.rank:
        raise NotAFlat("%s is not a flat" % subset_label(flat, m.n))
    big = delta_tilde_fan(m)
    keep = [
        i
        for i, (f, g) in enumerate(big.ray_data)
        if f & ~flat == 0 and (g & ~f) & ~subset == 0
    ]
    keep_set = set(keep)
    reindex = {old: new for new, old in enumerate(keep)}
    cones = {
        frozenset(reindex[i] for i in c)
        for c in big.cones
        if set(c) <= keep_set
    }
    return Fan(
        m.n,
        [big.rays[i] for i in keep],
        [big.labels[i] for i in keep],
        cones,
        ray_data=[big.ray_data[i] for i in keep],
    )


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def fan_to_json(fan: Fan) -> dict:
    """Plain-dict form: rays with both blocks, cones maximal-first."""
    maxes = {frozenset(c) for c in fan.maximal_cones()}
    ordered = sorted(
        fan.cones,
        key=lambda c: (frozenset(c) not in maxes, -len(c), sorted(c)),
    )
    return {
        "n": fan.n,
        "rays": [
            {"label": lab, "e": list(v.e), "f": list(v.f)}
            for lab, v in zip(fan.labels, fan.rays)
        ],
        "cones": [sorted(c) for c in ordered],
    }


def fan_from_json(data) -> Fan:
    try:
        n = int(data["n"])
        rays = [LatticeVector(r["e"], r["f"]) for r in data["rays"]]
        labels = [str(r.get("label", "")) for r in data["rays"]]
        cones = [frozenset(int(i) for i in c) for c in data["cones"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError("bad fan JSON: %s" % exc) from None
    for c in cones:
        if any(i < 0 or i >= len(rays) for i in c):
            raise ParseError("cone references a missing ray")
    return Fan(n, rays, labels, cones)


def parse_biflat_label(label: str, n: int):
    parts = label.split("⊆")
    if len(parts) != 2:
        parts = label.split("<=")
    if len(parts) != 2:
        raise ParseError("biflat label must look like F⊆G")
    return parse_subset_label(parts[0], n), parse_subset_label(parts[1], n)
