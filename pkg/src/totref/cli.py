"""Command line front end.

Verbs: ``pair verify``, ``family build|verify-complex|verify-tr``,
``hom compute|verify-hg|verify-gaba|verify-end|verify-ext``,
``family run-main`` and ``oracle hom``.  Exit codes: 0 all checks pass,
1 a mathematical check failed (the report names the first failing
certificate), 2 usage or parse error, 3 a theorem precondition is unmet.
Every error also appears as a structured JSON record.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import (DimensionMismatch, EquivalenceViolation,
                     InvalidResolution, NonHomogeneous, NotAComplex,
                     NotAUnit, ParseError, PreconditionFailed, TooLarge,
                     TotrefError, UnitInput, UnknownVariable,
                     UnsupportedQuotient, WrongBackend)
from .family import (module_g, module_h, verify_complex,
                     verify_total_reflexivity)
from .homcalc import (brute_force_hom_oracle, hom_presentation, run_family,
                      verify_end_ring, verify_ext_swap, verify_hom_g_ab_a,
                      verify_hom_hg)
from .modules import hilbert_function, minimal_generator_count
from .report import SCHEMA_VERSION, VerificationReport
from .rings import (DEFAULT_DEGREE_BOUND, FiniteLocalRing,
                    ring_from_descriptor)
from .zerodiv import exact_pair, verify_regular_pair

USAGE_ERRORS = (ParseError, UnknownVariable, DimensionMismatch,
                WrongBackend, NonHomogeneous, UnsupportedQuotient,
                TooLarge, NotAComplex, InvalidResolution)
PRECONDITION_ERRORS = (PreconditionFailed, UnitInput, NotAUnit)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="totref",
        description="verify zero-divisor pair constructions and the "
                    "module families they generate")
    groups = parser.add_subparsers(dest="group", required=True)

    def common(sub):
        sub.add_argument("--ring", required=True,
                         help="ring descriptor: a JSON file path or an "
                              "inline JSON object")
        sub.add_argument("--x", required=True, help="first pair member")
        sub.add_argument("--y", required=True, help="second pair member")
        sub.add_argument("--degree", type=int, default=None,
                         help="degree bound for graded scopes "
                              f"(default {DEFAULT_DEGREE_BOUND})")
        sub.add_argument("--format", choices=("text", "json"),
                         default="text")
        sub.add_argument("--output", default=None,
                         help="write the report to this file instead of "
                              "stdout")
        sub.add_argument("--probe", action="store_true",
                         help="run checks even when theorem hypotheses "
                              "fail, recording their status")
        return sub

    pair_g = groups.add_parser("pair").add_subparsers(dest="action",
                                                      required=True)
    common(pair_g.add_parser("verify"))

    family_g = groups.add_parser("family").add_subparsers(dest="action",
                                                          required=True)
    sub = common(family_g.add_parser("build"))
    sub.add_argument("--a", required=True)
    sub = common(family_g.add_parser("verify-complex"))
    sub.add_argument("--a", required=True)
    sub.add_argument("--length", type=int, default=4)
    sub = common(family_g.add_parser("verify-tr"))
    sub.add_argument("--a", required=True)
    sub.add_argument("--i-max", type=int, default=2)
    sub = common(family_g.add_parser("run-main"))
    sub.add_argument("--b", required=True,
                     help="multiplier element, or a comma separated "
                          "sequence b_1,...,b_n")
    sub.add_argument("--n-max", type=int, default=None)
    sub.add_argument("--i-max", type=int, default=2)

    hom_g = groups.add_parser("hom").add_subparsers(dest="action",
                                                    required=True)
    sub = common(hom_g.add_parser("compute"))
    sub.add_argument("--source", required=True,
                     help="flavor:element, e.g. gamma:z or eta:3")
    sub.add_argument("--target", required=True)
    sub = common(hom_g.add_parser("verify-hg"))
    sub.add_argument("--a", required=True)
    sub.add_argument("--b", required=True)
    sub = common(hom_g.add_parser("verify-gaba"))
    sub.add_argument("--a", required=True)
    sub.add_argument("--b", required=True)
    sub = common(hom_g.add_parser("verify-end"))
    sub.add_argument("--a", required=True)
    sub.add_argument("--idempotent-budget", type=int, default=None)
    sub = common(hom_g.add_parser("verify-ext"))
    sub.add_argument("--a", required=True)
    sub.add_argument("--b", required=True)
    sub.add_argument("--i-max", type=int, default=2)

    oracle_g = groups.add_parser("oracle").add_subparsers(dest="action",
                                                          required=True)
    sub = common(oracle_g.add_parser("hom"))
    sub.add_argument("--source", required=True)
    sub.add_argument("--target", required=True)
    sub.add_argument("--budget", type=int, default=None)
    return parser


def _load_ring(source: str):
    text = source.strip()
    if text.startswith("{"):
        try:
            desc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid inline ring descriptor: {exc}")
    else:
        try:
            with open(source, encoding="utf-8") as handle:
                desc = json.load(handle)
        except OSError as exc:
            raise ParseError(f"cannot read ring file {source!r}: {exc}")
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid ring file {source!r}: {exc}")
    return ring_from_descriptor(desc)


def _pair_of(ring, args, verified: bool = True):
    pair = exact_pair(ring, ring.parse(args.x), ring.parse(args.y),
                      args.degree)
    if verified and not pair.is_exact:
        raise PreconditionFailed(
            f"({args.x}, {args.y}) is not an exact pair of zero divisors: "
            f"{pair.exact_report.first_failure() or 'exactness fails'}")
    return pair


def _presentation(pair, text: str):
    kind, sep, expr = text.partition(":")
    if not sep or not expr:
        raise ParseError("presentations are written flavor:element, "
                         "e.g. gamma:z or eta:3")
    kind = kind.strip().lower()
    elem = pair.ring.parse(expr)
    if kind in ("gamma", "g"):
        return module_g(pair, elem, strict=False)
    if kind in ("eta", "h"):
        return module_h(pair, elem, strict=False)
    raise ParseError(f"unknown presentation flavor {kind!r}; "
                     "use gamma or eta")


def _module_stats(module, bound) -> dict:
    stats = {"label": module.label,
             "presentation": repr(module.rho),
             "minimal_generators": minimal_generator_count(module)}
    if isinstance(module.ring, FiniteLocalRing):
        stats["size"] = module.size()
    else:
        top = bound if bound is not None else DEFAULT_DEGREE_BOUND
        stats["hilbert_function"] = hilbert_function(module, 0, top)
    return stats


# ---------------------------------------------------------------------------
# handlers: each returns (payload, exit_code); payload is either a
# VerificationReport-like object (has to_dict/summary_lines) or a dict

def _cmd_pair_verify(args):
    ring = _load_ring(args.ring)
    pair = _pair_of(ring, args, verified=False)
    rep = pair.exact_report
    try:
        reg = verify_regular_pair(pair, args.degree)
        rep.details["regular"] = pair.regular
        rep.details["regularity_conditions"] = {
            key: reg.details[key]
            for key in ("x_injective_mod_y", "y_injective_mod_x",
                        "intersection_trivial")}
    except EquivalenceViolation:
        raise
    return rep, (0 if rep.passed else 1)


def _cmd_family_build(args):
    ring = _load_ring(args.ring)
    pair = _pair_of(ring, args)
    a = ring.parse(args.a)
    payload = {"schema": SCHEMA_VERSION, "kind": "family-build",
               "ring": ring.descriptor(), "pair": pair.describe(),
               "a": ring.format(a),
               "modules": [
                   _module_stats(module_g(pair, a, strict=False),
                                 args.degree),
                   _module_stats(module_h(pair, a, strict=False),
                                 args.degree)]}
    return payload, 0


def _cmd_family_verify_complex(args):
    ring = _load_ring(args.ring)
    pair = _pair_of(ring, args)
    rep = verify_complex(pair, ring.parse(args.a), args.length,
                         args.degree, strict=not args.probe)
    return rep, (0 if rep.passed else 1)


def _cmd_family_verify_tr(args):
    ring = _load_ring(args.ring)
    pair = _pair_of(ring, args)
    rep = verify_total_reflexivity(pair, ring.parse(args.a), args.i_max,
                                   args.degree, strict=not args.probe)
    return rep, (0 if rep.passed else 1)


def _cmd_family_run_main(args):
    ring = _load_ring(args.ring)
    pair = _pair_of(ring, args)
    b_seq = [part.strip() for part in args.b.split(",") if part.strip()]
    fam = run_family(pair, b_seq, args.n_max, args.degree, args.i_max)
    return fam, (0 if fam.passed else 1)


def _cmd_hom_compute(args):
    ring = _load_ring(args.ring)
    pair = _pair_of(ring, args)
    source = _presentation(pair, args.source)
    target = _presentation(pair, args.target)
    hp = hom_presentation(source, target, args.degree)
    payload = {"schema": SCHEMA_VERSION, "kind": "hom-presentation",
               "source": source.label, "target": target.label,
               "scope": hp.scope,
               "generators": [repr(g) for g in hp.generators],
               "generator_degrees": list(hp.gen_degrees),
               "module": _module_stats(hp.module, args.degree)}
    return payload, 0


def _cmd_hom_verify_hg(args):
    ring = _load_ring(args.ring)
    pair = _pair_of(ring, args)
    rep = verify_hom_hg(pair, ring.parse(args.a), ring.parse(args.b),
                        args.degree, strict=not args.probe)
    return rep, (0 if rep.passed else 1)


def _cmd_hom_verify_gaba(args):
    ring = _load_ring(args.ring)
    pair = _pair_of(ring, args)
    rep = verify_hom_g_ab_a(pair, ring.parse(args.a), ring.parse(args.b),
                            args.degree, strict=not args.probe)
    return rep, (0 if rep.passed else 1)


def _cmd_hom_verify_end(args):
    ring = _load_ring(args.ring)
    pair = _pair_of(ring, args)
    rep = verify_end_ring(pair, ring.parse(args.a), args.degree,
                          args.idempotent_budget, strict=not args.probe)
    return rep, (0 if rep.passed else 1)


def _cmd_hom_verify_ext(args):
    ring = _load_ring(args.ring)
    pair = _pair_of(ring, args)
    rep = verify_ext_swap(pair, ring.parse(args.a), ring.parse(args.b),
                          args.i_max, args.degree)
    return rep, (0 if rep.passed else 1)


def _cmd_oracle_hom(args):
    ring = _load_ring(args.ring)
    pair = _pair_of(ring, args)
    source = _presentation(pair, args.source)
    target = _presentation(pair, args.target)
    maps = brute_force_hom_oracle(source, target, args.budget)
    payload = {"schema": SCHEMA_VERSION, "kind": "hom-oracle",
               "source": source.label, "target": target.label,
               "map_count": len(maps)}
    return payload, 0


_HANDLERS = {
    ("pair", "verify"): _cmd_pair_verify,
    ("family", "build"): _cmd_family_build,
    ("family", "verify-complex"): _cmd_family_verify_complex,
    ("family", "verify-tr"): _cmd_family_verify_tr,
    ("family", "run-main"): _cmd_family_run_main,
    ("hom", "compute"): _cmd_hom_compute,
    ("hom", "verify-hg"): _cmd_hom_verify_hg,
    ("hom", "verify-gaba"): _cmd_hom_verify_gaba,
    ("hom", "verify-end"): _cmd_hom_verify_end,
    ("hom", "verify-ext"): _cmd_hom_verify_ext,
    ("oracle", "hom"): _cmd_oracle_hom,
}


def _render(args, payload, code: int) -> str:
    if isinstance(payload, dict):
        if args.format == "json":
            return json.dumps(payload, indent=2)
        lines = []
        for key, value in payload.items():
            if isinstance(value, (dict, list)):
                value = json.dumps(value)
            lines.append(f"{key}: {value}")
        return "\n".join(lines)
    # report objects: VerificationReport or FamilyReport
    if isinstance(payload, VerificationReport):
        if code == 1:
            payload.details["first_failing_certificate"] = \
                payload.first_failure()
        if args.format == "json":
            return payload.to_json()
        lines = payload.summary_lines()
        if code == 1:
            lines.append("first failing certificate: "
                         f"{payload.first_failure()}")
        return "\n".join(lines)
    # FamilyReport
    if code == 1:
        payload.certificates.details["first_failing_certificate"] = \
            payload.certificates.first_failure()
    if args.format == "json":
        return payload.to_json()
    lines = [f"family run: {'pass' if payload.passed else 'fail'}",
             f"ring: {json.dumps(payload.ring)}",
             f"pair: {json.dumps(payload.pair)}",
             f"b: {payload.b_elements}", f"a: {payload.a_elements}"]
    for entry in payload.modules:
        lines.append("module " + json.dumps(entry))
    for entry in payload.pairwise:
        lines.append("pairwise " + json.dumps(entry))
    for entry in payload.hom_table:
        lines.append("hom " + json.dumps(entry))
    lines.extend(payload.certificates.summary_lines())
    if code == 1:
        lines.append("first failing certificate: "
                     f"{payload.certificates.first_failure()}")
    return "\n".join(lines)


def _emit(args, text: str) -> None:
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
    else:
        print(text)


def _emit_error(args, exc: BaseException, code: int) -> int:
    record = {"schema": SCHEMA_VERSION, "kind": "error",
              "error": type(exc).__name__, "message": str(exc),
              "exit_code": code}
    if getattr(args, "format", "text") == "json":
        _emit(args, json.dumps(record, indent=2))
    else:
        print(f"error: {exc}", file=sys.stderr)
        print(json.dumps(record), file=sys.stderr)
    return code


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if exc.code in (0, None):
            return 0
        record = {"schema": SCHEMA_VERSION, "kind": "error",
                  "error": "UsageError",
                  "message": "invalid command line", "exit_code": 2}
        print(json.dumps(record), file=sys.stderr)
        return 2
    handler = _HANDLERS[(args.group, args.action)]
    try:
        payload, code = handler(args)
    except PRECONDITION_ERRORS as exc:
        return _emit_error(args, exc, 3)
    except EquivalenceViolation as exc:
        return _emit_error(args, exc, 1)
    except USAGE_ERRORS as exc:
        return _emit_error(args, exc, 2)
    except TotrefError as exc:
        return _emit_error(args, exc, 2)
    _emit(args, _render(args, payload, code))
    return code


if __name__ == "__main__":
    sys.exit(main())
