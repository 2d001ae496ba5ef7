"""Input parsing: matrix JSON, edge-list graph files, basis-list JSON, and the
polynomial reader used for round-trip checks.

Formats:
  *.graph       one edge per line, "u v"; '#' starts a comment
  *.bases.json  {"n": int, "bases": [[1-based elements], ...]}
  *.json        {"rows": [["1", "0", "3/4", ...], ...],
                 "field": "Q" | "Fp", "p": prime}   (field defaults to Q)
"""

from __future__ import annotations

import json
from fractions import Fraction

from .arith import Fp, Matrix, MultiPoly
from .config import Configuration, config_from_graph, config_new
from .errors import ParseError
from .matroid import (
    Matroid,
    matroid_from_bases,
    matroid_from_graph,
    matroid_from_matrix,
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


def parse_scalar(text, field: str = "Q", p: int | None = None):
    try:
        fr = Fraction(str(text))
    except (ValueError, ZeroDivisionError):
        raise ParseError("bad scalar %r" % (text,)) from None
    if field == "Q":
        return int(fr) if fr.denominator == 1 else fr
    if fr.denominator % p == 0:
        raise ParseError("scalar %s undefined mod %d" % (fr, p))
    return Fp(fr.numerator, p) / Fp(fr.denominator, p)


def matrix_from_json(data) -> Matrix:
    if not isinstance(data, dict) or "rows" not in data:
        raise ParseError("matrix JSON needs a 'rows' key")
    field = data.get("field", "Q")
    p = data.get("p")
    if field == "Fp":
        if not isinstance(p, int) or not _is_prime(p):
            raise ParseError("field Fp needs a prime 'p'")
    elif field != "Q":
        raise ParseError("field must be 'Q' or 'Fp'")
    rows = data["rows"]
    if not rows or not all(isinstance(r, (list, tuple)) for r in rows):
        raise ParseError("'rows' must be a nonempty list of lists")
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise ParseError("ragged matrix rows")
    parsed = [[parse_scalar(x, field, p) for x in row] for row in rows]
    return Matrix(parsed, ncols=widths.pop())


def matrix_to_json(m: Matrix, field: str = "Q", p: int | None = None) -> dict:
    out = {"rows": [[str(x) for x in row] for row in m.rows]}
    if field != "Q":
        out["field"] = field
        out["p"] = p
    return out


def parse_graph_text(text: str):
    edges = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        tokens = body.split()
        if len(tokens) != 2:
            raise ParseError("line %d: expected 'u v', got %r" % (lineno, line))
        edges.append((tokens[0], tokens[1]))
    if not edges:
        raise ParseError("graph file has no edges")
    return edges


def bases_from_json(data) -> Matroid:
    try:
        n = int(data["n"])
        bases = [[int(e) for e in b] for b in data["bases"]]
    except (KeyError, TypeError, ValueError):
        raise ParseError("bases JSON needs 'n' and 'bases'") from None
    if not bases:
        raise ParseError("empty basis list")
    if any(not 1 <= e <= n for b in bases for e in b):
        raise ParseError("basis element out of range")
    try:
        return matroid_from_bases(n, bases)
    except ValueError as exc:
        raise ParseError("not a matroid: %s" % exc) from None


def detect_format(path: str) -> str:
    if path.endswith(".graph"):
        return "graph"
    if path.endswith(".bases.json"):
        return "bases"
    if path.endswith(".json"):
        return "matrix"
    raise ParseError("cannot infer format of %r (.graph/.json/.bases.json)" % path)


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError("cannot read %s: %s" % (path, exc)) from None


def _load_json(path: str):
    try:
        return json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise ParseError("bad JSON in %s: %s" % (path, exc)) from None


def load_matroid(path: str, fmt: str | None = None, max_n: int | None = None) -> Matroid:
    fmt = fmt or detect_format(path)
    if fmt == "graph":
        edges = parse_graph_text(_read(path))
        _check_cap(len(edges), max_n)
        return matroid_from_graph(edges)
    if fmt == "bases":
        m = bases_from_json(_load_json(path))
        _check_cap(m.n, max_n)
        return m
    if fmt == "matrix":
        a = matrix_from_json(_load_json(path))
        _check_cap(a.ncols, max_n)
        return matroid_from_matrix(a)
    raise ParseError("unknown format %r" % fmt)


def load_configuration(
    path: str, fmt: str | None = None, max_n: int | None = None
) -> Configuration:
    fmt = fmt or detect_format(path)
    if fmt == "graph":
        edges = parse_graph_text(_read(path))
        _check_cap(len(edges), max_n)
        return config_from_graph(edges)
    if fmt == "matrix":
        a = matrix_from_json(_load_json(path))
        _check_cap(a.ncols, max_n)
        return config_new(a)
    if fmt == "bases":
        raise ParseError("a basis list carries no realization; give a matrix or graph")
    raise ParseError("unknown format %r" % fmt)


def _check_cap(n: int, max_n: int | None):
    if max_n is not None and n > max_n:
        raise ParseError(
            "ground set size %d exceeds the cap %d (CONFIG_RESOLVE_MAX_N)" % (n, max_n)
        )


def parse_poly(text: str, variables) -> MultiPoly:
    """Inverse of the polynomial printer, over the rationals."""
    variables = tuple(variables)
    index = {v: i for i, v in enumerate(variables)}
    text = text.strip().replace(" ", "")
    if not text:
        raise ParseError("empty polynomial string")
    if text == "0":
        return MultiPoly.zero(variables)
    terms: dict = {}
    pos = 0
    sign = 1
    if text[0] in "+-":
        sign = -1 if text[0] == "-" else 1
        pos = 1
    chunk = []
    chunks = []
    while pos <= len(text):
        if pos == len(text) or text[pos] in "+-":
            chunks.append((sign, "".join(chunk)))
            if pos < len(text):
                sign = -1 if text[pos] == "-" else 1
                chunk = []
            pos += 1
        else:
            chunk.append(text[pos])
            pos += 1
    for sgn, body in chunks:
        if not body:
            raise ParseError("empty term in %r" % text)
        mono = [0] * len(variables)
        coeff = Fraction(1)
        for factor in body.split("*"):
            if not factor:
                raise ParseError("empty factor in %r" % body)
            if factor[0].isdigit():
                try:
                    coeff *= Fraction(factor)
                except ValueError:
                    raise ParseError("bad coefficient %r" % factor) from None
                continue
            name, _, exp = factor.partition("^")
            if name not in index:
                raise ParseError("unknown variable %r" % name)
            e = 1
            if exp:
                try:
                    e = int(exp)
                except ValueError:
                    raise ParseError("bad exponent %r" % exp) from None
                if e < 0:
                    raise ParseError("negative exponent %r" % factor)
            mono[index[name]] += e
        co = coeff * sgn
        key = tuple(mono)
        terms[key] = terms.get(key, 0) + (int(co) if co.denominator == 1 else co)
    return MultiPoly(variables, terms)
