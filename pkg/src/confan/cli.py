"""Batch command line: matroid reports, configuration polynomials, fans with
structural verification, resolution fibre reports, invariant classes, and
positive-characteristic certificates.

Exit codes: 0 success, 1 computation error, 2 parse error, 3 a verification
check failed.  CONFIG_RESOLVE_MAX_N caps the ground-set size (default 12).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .charp import (
    fedder_witness,
    lead_term_certificate,
    row_reduce_to_standard,
    spair_reduction_check,
)
from .classes import (
    a_invariant,
    chow_bidegree,
    cohomology_basis,
    is_truncation_boundary,
    motivic_class,
    resolution_betti,
)
from .config import psi_basis_expansion, psi_det
from .errors import ConfanError, ParseError, VerificationFailure
from .fans import (
    bergman_fan,
    biflat_label,
    delta_fan,
    delta_tilde_fan,
    divisor_incidence,
    fan_to_json,
    fibre_fan,
    is_unimodular,
    maps_into_coordinate_fan,
    refines,
    square_conormal_fan,
)
from .inputs import load_configuration, load_matroid
from .matroid import (
    char_poly,
    dual,
    flats,
    is_connected,
    is_round,
    loops_of,
    parse_subset_label,
    rank_of,
    reduced_char_poly,
    subset_label,
)

FAN_BUILDERS = {
    "bergman": bergman_fan,
    "square-conormal": square_conormal_fan,
    "delta": delta_fan,
    "delta-tilde": delta_tilde_fan,
}


def _ground_cap() -> int:
    raw = os.environ.get("CONFIG_RESOLVE_MAX_N", "12")
    try:
        return int(raw)
    except ValueError:
        raise ParseError("CONFIG_RESOLVE_MAX_N must be an integer, got %r" % raw) from None


def cmd_matroid_info(args, cap):
    m = load_matroid(args.input, args.format, cap)
    lattice = flats(m)
    full = m.ground
    nonround = [
        subset_label(f, m.n)
        for f in lattice.proper()
        if rank_of(m, full & ~f) < m.r
    ]
    lines = [
        "elements: %d" % m.n,
        "rank: %d" % m.r,
        "bases: %d" % len(m.bases),
    ]
    flat_report = {}
    for k in range(m.r + 1):
        labels = [subset_label(f, m.n) for f in lattice.by_rank(k)]
        flat_report[k] = labels
        lines.append("flats rank %d: %s" % (k, ", ".join(labels)))
    connected = is_connected(m)
    round_ = is_round(m)
    lines.append("connected: %s" % str(connected).lower())
    lines.append("round: %s" % str(round_).lower())
    lines.append(
        "non-round flats: %s" % (", ".join(nonround) if nonround else "none")
    )
    payload = {
        "n": m.n,
        "rank": m.r,
        "bases": len(m.bases),
        "flats": flat_report,
        "connected": connected,
        "round": round_,
        "nonround_flats": nonround,
    }
    if not loops_of(m):
        chi = char_poly(m)
        chib = reduced_char_poly(m)
        lines.append("chi = %s" % chi)
        lines.append("chi reduced = %s" % chib)
        payload["chi"] = str(chi)
        payload["chi_reduced"] = str(chib)
    else:
        lines.append("chi: undefined (matroid has loops)")
    md = dual(m)
    lines.append("dual: rank %d, %d bases" % (md.r, len(md.bases)))
    payload["dual"] = {"rank": md.r, "bases": len(md.bases)}
    return lines, payload, []


def cmd_psi(args, cap):
    c = load_configuration(args.input, args.format, cap)
    psi = psi_basis_expansion(c)
    lines = ["psi = %s" % psi]
    payload = {"psi": str(psi)}
    if args.check_det:
        psi_det(c)
        lines.append("det check: pass")
        payload["det_check"] = "pass"
    return lines, payload, []


def cmd_fan(args, cap):
    m = load_matroid(args.input, args.format, cap)
    fan = FAN_BUILDERS[args.which](m)
    maxes = fan.maximal_cones()
    dim = max(fan.cone_dim(c) for c in maxes)
    lines = [
        "fan: %s" % args.which,
        "rays: %d" % len(fan.rays),
        "maximal cones: %d" % len(maxes),
        "dimension: %d" % dim,
    ]
    for i, lab in enumerate(fan.labels):
        lines.append("ray %d: %s e=%s f=%s" % (i, lab, list(fan.rays[i].e), list(fan.rays[i].f)))
    failures = []
    verify = {}
    if args.verify_unimodular:
        bad = [c for c in fan.cones if not is_unimodular(fan, c)]
        verify["unimodular"] = "pass" if not bad else "fail"
        if bad:
            failures.append(
                "unimodular: FAIL on %d cones, e.g. rays %s"
                % (len(bad), sorted(bad[0]))
            )
        else:
            lines.append("unimodular: pass")
    if args.verify_maps:
        bad1 = [c for c in maxes if not maps_into_coordinate_fan(fan, c, "first", "plus")]
        bad2 = [c for c in maxes if not maps_into_coordinate_fan(fan, c, "second", "minus")]
        verify["pi1"] = "pass" if not bad1 else "fail"
        verify["minus_pi2"] = "pass" if not bad2 else "fail"
        if bad1:
            failures.append("π1: FAIL on %d maximal cones" % len(bad1))
        else:
            lines.append("π1: pass")
        if bad2:
            names = [
                "{%s}" % ", ".join(fan.labels[i] for i in sorted(c)) for c in bad2[:5]
            ]
            failures.append(
                "-π2: FAIL on %d maximal cones: %s" % (len(bad2), "; ".join(names))
            )
        else:
            lines.append("-π2: pass")
    if args.verify_refines:
        ok = refines(delta_tilde_fan(m), delta_fan(m))
        verify["refines"] = "pass" if ok else "fail"
        if ok:
            lines.append("refines: pass")
        else:
            failures.append("refines: FAIL")
    payload = fan_to_json(fan)
    payload["which"] = args.which
    if verify:
        payload["verify"] = verify
    return lines, payload, failures


def cmd_resolve_report(args, cap):
    m = load_matroid(args.input, args.format, cap)
    try:
        fmask = parse_subset_label(args.flat, m.n)
        smask = parse_subset_label(args.subset, m.n)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    fib = fibre_fan(m, fmask, smask)
    labels = list(fib.labels)
    lines = ["fibre rays (%d): %s" % (len(labels), ", ".join(labels))]
    lines.append("divisors:")
    for lab in labels:
        lines.append("  %s" % lab)
    pairs = []
    lines.append("incidence:")
    for i in range(len(labels)):
        for j in range(i + 1, len(labels)):
            hit = divisor_incidence([fib.ray_data[i], fib.ray_data[j]], m.n)
            word = "incident" if hit else "disjoint"
            lines.append("  %s | %s: %s" % (labels[i], labels[j], word))
            pairs.append({"a": labels[i], "b": labels[j], "incident": hit})
    payload = {
        "flat": args.flat,
        "subset": args.subset,
        "rays": labels,
        "incidence": pairs,
    }
    return lines, payload, []


def cmd_classes(args, cap):
    m = load_matroid(args.input, args.format, cap)
    lam = motivic_class(m)
    bi = chow_bidegree(m.n, m.r)
    ainv = a_invariant(m.n, m.r)
    betti = resolution_betti(m.n, m.r)
    lines = [
        "[Λ] = %s" % lam,
        "bidegree = %s" % bi,
        "a-inv = %d" % ainv,
        "type = %d" % betti.type(),
    ]
    for row in str(betti).splitlines():
        lines.append("betti %s" % row)
    payload = {
        "lambda_class": str(lam),
        "bidegree": str(bi),
        "a_invariant": ainv,
        "type": betti.type(),
        "betti": betti.to_json(),
    }
    if m.r >= 2 and is_round(m):
        ranks = cohomology_basis(m)
        note = " (boundary case n=2r-1)" if is_truncation_boundary(m) else ""
        lines.append("cohomology ranks: %s%s" % (",".join(map(str, ranks)), note))
        payload["cohomology_ranks"] = list(ranks)
        payload["truncation_boundary"] = is_truncation_boundary(m)
    else:
        lines.append("cohomology: n/a (needs a round matroid of rank >= 2)")
    return lines, payload, []


def cmd_charp(args, cap):
    c = load_configuration(args.input, args.format, cap)
    std, perm = row_reduce_to_standard(c)
    cert = lead_term_certificate(std)
    try:
        fcert = fedder_witness(std, args.p)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    lines = [
        "permutation: %s" % " ".join(str(j + 1) for j in perm),
        "initial ideal: %s (leads %s)" % (cert.verdict, ", ".join(cert.data["leads"])),
        "fedder witness (p=%d): %s -> %s"
        % (args.p, fcert.data["witness"], fcert.verdict),
    ]
    failures = []
    if cert.verdict != "pass":
        failures.append("initial ideal certificate failed")
    if fcert.verdict != "pass":
        failures.append("fedder witness failed: %s" % fcert.reason)
    payload = {
        "permutation": [j + 1 for j in perm],
        "initial": cert.to_json(),
        "fpurity": fcert.to_json(),
    }
    if args.strict:
        ok = spair_reduction_check(std)
        payload["spairs"] = "pass" if ok else "fail"
        if ok:
            lines.append("s-pair reduction: pass")
        else:
            failures.append("s-pair reduction: FAIL")
    return lines, payload, failures


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", help="input file (.graph, .json, .bases.json)")
    common.add_argument(
        "--format",
        choices=("graph", "matrix", "bases"),
        default=None,
        help="override format detection",
    )
    common.add_argument("--seed", type=int, default=0, help="seed for sampled searches")
    common.add_argument("--output", choices=("text", "json"), default="text")

    parser = argparse.ArgumentParser(
        prog="confan",
        description="Exact matroid, configuration-polynomial, and fan computations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("matroid-info", parents=[common]).set_defaults(fn=cmd_matroid_info)

    p_psi = sub.add_parser("psi", parents=[common])
    p_psi.add_argument("--check-det", action="store_true", dest="check_det")
    p_psi.set_defaults(fn=cmd_psi)

    p_fan = sub.add_parser("fan", parents=[common])
    p_fan.add_argument("--which", choices=sorted(FAN_BUILDERS), required=True)
    p_fan.add_argument("--verify-unimodular", action="store_true")
    p_fan.add_argument("--verify-maps", action="store_true")
    p_fan.add_argument("--verify-refines", action="store_true")
    p_fan.set_defaults(fn=cmd_fan)

    p_res = sub.add_parser("resolve-report", parents=[common])
    p_res.add_argument("--flat", required=True)
    p_res.add_argument("--subset", required=True)
    p_res.set_defaults(fn=cmd_resolve_report)

    sub.add_parser("classes", parents=[common]).set_defaults(fn=cmd_classes)

    p_chp = sub.add_parser("charp", parents=[common])
    p_chp.add_argument("--p", type=int, required=True)
    p_chp.add_argument("--strict", action="store_true")
    p_chp.set_defaults(fn=cmd_charp)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cap = _ground_cap()
        lines, payload, failures = args.fn(args, cap)
    except ParseError as exc:
        print("parse error: %s" % exc, file=sys.stderr)
        return 2
    except VerificationFailure as exc:
        print("verification failure: %s" % exc, file=sys.stderr)
        return 3
    except ConfanError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    if args.output == "json":
        payload = {"command": args.command, "seed": args.seed, **payload}
        if failures:
            payload["failures"] = failures
        print(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        print("seed: %d" % args.seed)
        for line in lines:
            print(line)
        for f in failures:
            print(f)
    return 3 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
