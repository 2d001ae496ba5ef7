"""Certificates in positive characteristic: standard-form reduction, the lead
terms of the bilinear generators under the x-then-u block order, the Frobenius
splitting witness monomial, linkage generators, and an S-pair division oracle.
"""

from __future__ import annotations

from fractions import Fraction

from .arith import Fp, Matrix, MultiPoly, TermOrder, _rref, poly_lead_term
from .config import (
    Configuration,
    config_new,
    lambda_system,
    psi_det,
)
from .errors import (
    Degenerate,
    LeadTermFailure,
    OrderViolation,
    ParseError,
    RankDeficient,
)


class Certificate:
    """
    Re-checkable verdict object.

    kind    - "InitialIdeal" | "FPurity" | "Linkage"
    verdict - "pass" | "fail"
    data    - JSON-ready payload (order, leads, witness, p, ...)
    reason  - set when verdict is "fail"
    """

    __slots__ = ("kind", "verdict", "data", "reason")

    def __init__(self, kind, verdict, data, reason=None):
        self.kind = kind
        self.verdict = verdict
        self.data = dict(data)
        self.reason = reason

    def __eq__(self, other):
        return (
            isinstance(other, Certificate)
            and self.kind == other.kind
            and self.verdict == other.verdict
            and self.data == other.data
            and self.reason == other.reason
        )

    def __repr__(self):
        return "Certificate(%s, %s)" % (self.kind, self.verdict)

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        out.update(self.data)
        out["verdict"] = self.verdict
        if self.reason is not None:
            out["reason"] = self.reason
        return out


def certificate_from_json(data) -> Certificate:
    try:
        body = dict(data)
        kind = body.pop("kind")
        verdict = body.pop("verdict")
    except (KeyError, TypeError):
        raise ParseError("certificate JSON needs kind and verdict") from None
    reason = body.pop("reason", None)
    return Certificate(kind, verdict, body, reason)


ORDER_NAME = "x-lex,u-lex"


def block_order(n: int, r: int) -> TermOrder:
    # x1 > ... > xn > u1 > ... > ur; plain lex on the concatenated exponents
    return TermOrder.lex(n + r)


def mono_str(mono, variables) -> str:
    parts = [
        v if e == 1 else "%s^%d" % (v, e) for v, e in zip(variables, mono) if e
    ]
    return "*".join(parts) if parts else "1"


def row_reduce_to_standard(c: Configuration):
    """Equivalent configuration with an identity block up front.

    Columns are permuted so the lexicographically first basis leads, then the
    rows are fully reduced.  Returns (configuration, permutation); entry j of
    the permutation is the original 0-based column now in position j.
    """
    _, pivots = _rref(c.a)
    if len(pivots) < c.r:
        raise RankDeficient("row rank below %d" % c.r)
    perm = list(pivots) + [j for j in range(c.n) if j not in pivots]
    reduced_rows, _ = _rref(c.a.column_submatrix(perm))
    std = config_new(Matrix(reduced_rows, ncols=c.n))
    return std, tuple(perm)


def _expected_lead(i: int, n: int, r: int):
    mono = [0] * (n + r)
    mono[i] = 1
    mono[n + i] = 1
    return tuple(mono)


def lead_term_certificate(c: Configuration) -> Certificate:
    """Verify lead(q_i) = x_i*u_i for all i under the block order.

    A pass certifies the generators are a Groebner basis with squarefree,
    pairwise coprime initial terms, hence a radical complete intersection.
    """
    ls = lambda_system(c)
    order = block_order(c.n, c.r)
    leads = []
    for i, q in enumerate(ls.qs):
        mono, _ = poly_lead_term(q, order)
        if mono != _expected_lead(i, c.n, c.r):
            raise OrderViolation(
                "lead of q%d is %s, not %s; reduce to standard form first"
                % (i + 1, mono_str(mono, ls.variables), "x%d*u%d" % (i + 1, i + 1))
            )
        leads.append(mono)
    for m in leads:
        if any(e > 1 for e in m):
            raise OrderViolation("lead term not squarefree")
    for i in range(len(leads)):
        for j in range(i + 1, len(leads)):
            if any(a and b for a, b in zip(leads[i], leads[j])):
                raise OrderViolation("lead terms share a variable")
    return Certificate(
        "InitialIdeal",
        "pass",
        {
            "order": ORDER_NAME,
            "leads": [mono_str(m, ls.variables) for m in leads],
        },
    )


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _reduce_mod_p(c: Configuration, p: int) -> Configuration:
    rows = []
    for row in c.a.rows:
        out = []
        for x in row:
            if isinstance(x, Fp):
                if x.p != p:
                    raise ValueError("entries live in characteristic %d" % x.p)
                out.append(x)
            else:
                fr = Fraction(x)
                if fr.denominator % p == 0:
                    raise LeadTermFailure(
                        "entry %s has denominator divisible by %d" % (fr, p)
                    )
                out.append(Fp(fr.numerator, p) / Fp(fr.denominator, p))
        rows.append(out)
    return config_new(Matrix(rows, ncols=c.n))


def fedder_witness(c: Configuration, p: int) -> Certificate:
    """Splitting witness mod p: the lead monomial of (q_1*...*q_r)^(p-1).

    The witness prod x_i^(p-1) u_i^(p-1) is read off the verified lead terms
    without expanding the power; the pass condition is that every exponent
    stays below p, which p-1 does by construction and the certificate records.
    """
    if not _is_prime(p):
        raise ValueError("p must be prime, got %d" % p)
    reduced = _reduce_mod_p(c, p)
    base = lead_term_certificate(reduced)
    variables = lambda_system(c).variables
    witness = [0] * (c.n + c.r)
    for i in range(c.r):
        witness[i] = p - 1
        witness[c.n + i] = p - 1
    ok = all(e < p for e in witness)
    return Certificate(
        "FPurity",
        "pass" if ok else "fail",
        {
            "order": ORDER_NAME,
            "leads": base.data["leads"],
            "witness": mono_str(tuple(witness), variables),
            "p": p,
            "witness_exponent": p - 1,
        },
        reason=None if ok else "witness exponent reaches p",
    )


def linkage_generators(c: Configuration):
    """The bilinear generators together with the determinant polynomial,
    all in the joint variable ring; the determinant identity is re-checked."""
    ls = lambda_system(c)
    psi = psi_det(c)
    lifted = MultiPoly(
        ls.variables,
        {m + (0,) * c.r: coeff for m, coeff in psi.terms.items()},
    )
    return list(ls.qs) + [lifted]


# ---------------------------------------------------------------------------
# division oracle
# ---------------------------------------------------------------------------


def _coeff_div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        return Fraction(a, b)
    return a / b


def _mono_divides(m, f) -> bool:
    return all(a <= b for a, b in zip(m, f))


def _mono_sub(f, m):
    return tuple(a - b for a, b in zip(f, m))


def _term_mul(p: MultiPoly, mono, coeff) -> MultiPoly:
    return MultiPoly(
        p.variables,
        {
            tuple(a + b for a, b in zip(m, mono)): c * coeff
            for m, c in p.terms.items()
        },
    )


def divide_remainder(f: MultiPoly, basis, order: TermOrder) -> MultiPoly:
    """Multivariate division remainder of f by the basis list."""
    remainder = MultiPoly.zero(f.variables)
    work = f
    while work.terms:
        mono, coeff = poly_lead_term(work, order)
        hit = None
        for g in basis:
            gm, gc = poly_lead_term(g, order)
            if _mono_divides(gm, mono):
                hit = (g, gm, gc)
                break
        if hit is None:
            t = MultiPoly(work.variables, {mono: coeff})
            remainder = remainder + t
            work = work - t
        else:
            g, gm, gc = hit
            work = work - _term_mul(g, _mono_sub(mono, gm), _coeff_div(coeff, gc))
    return remainder


def spair_reduction_check(c: Configuration) -> bool:
    """Independent Groebner confirmation: every S-pair of the bilinear
    generators divides to zero.  Exhaustive, so gated to small ground sets."""
    if c.n > 6:
        raise Degenerate("S-pair oracle is gated to n <= 6")
    ls = lambda_system(c)
    order = block_order(c.n, c.r)
    qs = list(ls.qs)
    for i in range(len(qs)):
        mi, ci = poly_lead_term(qs[i], order)
        for j in range(i + 1, len(qs)):
            mj, cj = poly_lead_term(qs[j], order)
            lcm = tuple(max(a, b) for a, b in zip(mi, mj))
            s = _term_mul(qs[i], _mono_sub(lcm, mi), _coeff_div(1, ci)) - _term_mul(
                qs[j], _mono_sub(lcm, mj), _coeff_div(1, cj)
            )
            if divide_remainder(s, qs, order).terms:
                return False
    return True
