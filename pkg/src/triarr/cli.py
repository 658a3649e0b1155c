"""Command-line entry point: ``triarr <command> ...``.

Exit codes: 0 ok, 2 malformed input, 3 internal invariant failure,
4 forced relation (realize), 5 sampling exhausted (realize),
6 no Saito certificate (certify).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from math import gcd

import numpy as np

from . import analysis as an
from . import combinatorics as cb
from .arrangement import SIDES, Line, RUA, make_rua, tr_signature
from .errors import InvariantViolation, SamplingExhausted, TriarrError
from .exactmath import find_field, is_prime
from .freeness import (classify, curves_through_T, derivation_basis,
                       fields_for, saito_certificate, section_base_locus, ziegler_exponents,
                       _random_section)
from .realization import realize

EXIT_OK, EXIT_INPUT, EXIT_INVARIANT, EXIT_FORCED, EXIT_EXHAUSTED, EXIT_NO_CERT = 0, 2, 3, 4, 5, 6


class InputError(Exception):
    pass


class CheckFailed(Exception):
    def __init__(self, message: str, report: dict | None = None):
        super().__init__(message)
        self.report = report or {}


def default_seed() -> int:
    raw = os.environ.get("TRIARR_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"TRIARR_SEED must be an integer, got {raw!r}")


def _read_json(path: str) -> dict:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}")
    if not isinstance(doc, dict):
        raise InputError(f"{path}: expected a JSON object")
    return doc


def _read_arrangement(path: str) -> RUA:
    doc = _read_json(path)
    try:
        return RUA.from_json(doc)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: malformed arrangement: {exc}")


def _read_combinatorics(path: str) -> cb.AbstractCombinatorics:
    doc = _read_json(path)
    try:
        return cb.AbstractCombinatorics.from_json(doc)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: malformed combinatorics: {exc}")


def _emit(doc, args, text: str | None = None) -> None:
    if args.pretty and text is not None:
        out = text
    else:
        out = json.dumps(doc, indent=2 if args.pretty else None, sort_keys=False)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out + "\n")
    else:
        print(out)


def _validate(A: RUA) -> None:
    # both calls raise InvariantViolation on inconsistency
    cb.singular_points(A)
    cb.c2(A)


def minimal_modulus(A: RUA) -> int:
    """Smallest m | n such that every exponent is a multiple of n/m."""
    g = A.n
    for f in ("A", "B", "C"):
        for e in A.exps(f):
            g = gcd(g, e)
    return A.n // g if g else 1


def _shrink(A: RUA, m: int) -> RUA:
    f = A.n // m
    return make_rua(m, [e // f for e in A.ea], [e // f for e in A.eb],
                    [e // f for e in A.ec], A.sides)


# ---------------------------------------------------------------------------
# commands


def cmd_analyze(args) -> int:
    A = _read_arrangement(args.input)
    _validate(A)
    seed = default_seed()
    rep = classify(A, args.primes, seed)
    F = fields_for(A.n, 1)[0]
    doc = {"arrangement": A.to_json(), "signature": list(tr_signature(A).as_tuple()),
           **cb.report_fragment(A), "triples_per_line": cb.triples_per_line(A),
           "freeness": rep.to_json(),
           "ziegler": {s: list(ziegler_exponents(A, F, Line(s))) for s in SIDES if s in A.sides}}
    if len(A.sides) == 3:
        N = args.N or A.n
        doc["complete_prediction"] = {"N": N, **an.predict_free_complete(A, N).to_json()}
        m = minimal_modulus(A)
        if m != A.n:
            B = _shrink(A, m)
            doc["minimal_embedding"] = {"N": m, **an.predict_free_complete(B, m).to_json()}
    else:
        doc["uncomplete_prediction"] = an.predict_free_uncomplete(A).to_json()
    text = (f"{A}\nsignature {doc['signature']}  t = {doc['t']}  c2 = {doc['c2']}\n"
            f"freeness: {rep.label()}  mdr = {rep.mdr}"
            + (f"  jumping point {rep.jumping_point}" if rep.jumping_point else ""))
    _emit(doc, args, text)
    return EXIT_OK


def cmd_realize(args) -> int:
    C = _read_combinatorics(args.input)
    seed = args.seed if args.seed is not None else default_seed()
    try:
        res = realize(C, seed=seed)
    except SamplingExhausted as exc:
        print(json.dumps({"outcome": "exhausted", "error": str(exc)}), file=sys.stderr)
        return EXIT_EXHAUSTED
    if res.outcome == "forced":
        _emit(res.to_json(), args)
        return EXIT_FORCED
    _validate(res.rua)
    doc = res.rua.to_json() if not args.report else res.to_json()
    _emit(doc, args, str(res.rua))
    return EXIT_OK


def cmd_complement(args) -> int:
    A = _read_arrangement(args.input)
    N = args.N or A.n
    a, b, c = tr_signature(A).as_tuple()
    stats = cb.complement_stats(A, N)
    if not stats["identity_holds"]:
        raise InvariantViolation("|T| identity failed", stats)
    doc = {**stats, "min_trem": cb.min_trem(N, a, b, c),
           "min_trem_formula": cb.min_trem_formula(N, a, b, c),
           "prediction": an.predict_free_complete(A, N).to_json()}
    _emit(doc, args, f"N={N} t_rem={stats['t_rem']} min={doc['min_trem']} "
                     f"prediction={doc['prediction']['verdict']}")
    return EXIT_OK


def cmd_enumerate(args) -> int:
    if args.N < 1 or args.N > 6:
        raise InputError("--N must be between 1 and 6")
    if args.N >= 5:
        print(f"warning: N={args.N} enumerates {2 ** (3 * args.N)} inner-line subsets "
              "per side set; this takes a long time", file=sys.stderr)
    seed = default_seed()
    records = []
    fh = open(args.out, "w") if args.out else sys.stdout
    try:
        for rec in an.enumerate_corpus(args.N, args.sides, args.primes, seed, args.workers):
            records.append(rec)
            fh.write(json.dumps(rec) + "\n")
        fh.write(json.dumps({"summary": an.summarize(records)}) + "\n")
    finally:
        if fh is not sys.stdout:
            fh.close()
    return EXIT_OK


def _check(cond: bool, message: str, checks: list) -> None:
    checks.append({"check": message, "ok": bool(cond)})
    if not cond:
        raise CheckFailed(message, {"checks": checks})


def repro_section6(primes: int = 2, seed: int = 0, family: int | None = None) -> dict:
    """Build the free / nearly free pair and assert the claims about it.

    Raises CheckFailed at the first failed assertion.
    """
    checks: list = []
    if family is None:
        A0, A1 = an.section6_pair()
    else:
        A0, A1 = an.nearly_free_family(family, seed)
    k = 2 if family is None else family
    t0, t1 = cb.t_vector(A0), cb.t_vector(A1)
    _check(t0.t == t1.t, "equal t-vectors", checks)
    if family is None:
        _check(t0.t == {2: 24, 3: 12, 6: 3}, "t-vector is t2=24, t3=12, t6=3", checks)
    r0, r1 = classify(A0, primes, seed), classify(A1, primes, seed)
    _check(r0.agree and r1.agree, "all primes agree", checks)
    e = 3 * k + 1
    _check(r0.cls == "free" and r0.exponents == (e, e), f"first member free ({e},{e})", checks)
    _check(r0.certificate == (e, e), "Saito certificate at the exponents", checks)
    _check(r1.cls == "nearly_free" and r1.mdr == 3 * k,
           f"second member nearly free with mdr {3 * k}", checks)
    _check(r0.c2 == r1.c2 == e * e, f"c2 = {e * e} for both", checks)
    _check(not cb.same_combinatorics(A0, A1), "intersection lattices differ", checks)
    doc = {"first": {"arrangement": A0.to_json(), "freeness": r0.to_json()},
           "second": {"arrangement": A1.to_json(), "freeness": r1.to_json()}}
    if family is None:
        F0 = fields_for(A0.n, 1)[0]
        F1 = fields_for(A1.n, 1)[0]
        theta = _random_section(derivation_basis(A0, F0, 7),
                                np.random.default_rng(seed), F0.p)
        locus = section_base_locus(A0, F0, theta, seed)
        _check(locus == [], "a degree-7 section of the free member vanishes nowhere", checks)
        jp = r1.jumping_point
        _check(jp is not None and tuple(jp) == (1, 1, 1), "jumping point (1:1:1)", checks)
        ct = (curves_through_T(A0, F0, 3), curves_through_T(A1, F1, 3))
        _check(ct == (0, 1), "cubics through T: 0 for the free member, 1 for the other", checks)
        parts = (sorted(sorted(v) for v in cb.triples_per_line(A0).values()),
                 sorted(sorted(v) for v in cb.triples_per_line(A1).values()))
        _check(parts[0] == [[2, 3, 3, 4], [3, 3, 3, 3], [3, 3, 3, 3]]
               and parts[1] == [[3, 3, 3, 3]] * 3,
               "triples per line: 2+3+4+3 on one family vs 3+3+3+3 everywhere", checks)
        doc["curves_through_T_3"] = list(ct)
        doc["triples_per_line"] = {"first": cb.triples_per_line(A0),
                                   "second": cb.triples_per_line(A1)}
    doc["checks"] = checks
    return doc


def cmd_repro(args) -> int:
    seed = default_seed()
    try:
        doc = repro_section6(args.primes, seed, args.family)
    except CheckFailed as exc:
        print(json.dumps({"failed": str(exc), **exc.report}), file=sys.stderr)
        return EXIT_INVARIANT
    text = "\n".join(f"[{'ok' if c['ok'] else 'FAIL'}] {c['check']}" for c in doc["checks"])
    _emit(doc, args, text)
    return EXIT_OK


def cmd_certify(args) -> int:
    A = _read_arrangement(args.input)
    e1, e2 = args.exponents
    if args.prime is None:
        F = fields_for(A.n, 1)[0]
    else:
        p = args.prime
        if not is_prime(p) or p == 2 or (p - 1) % A.n:
            raise InputError(f"--prime must be an odd prime with {A.n} | p - 1")
        F = find_field(A.n, p)
        assert F.p == p
    cert = saito_certificate(A, F, e1, e2, seed=default_seed())
    if cert is None:
        print(json.dumps({"certificate": None, "p": F.p, "exponents": [e1, e2]}))
        return EXIT_NO_CERT
    _emit(cert.to_json(), args,
          f"p={F.p} degrees={cert.degrees} det(E, theta1, theta2) = {cert.scalar} * f")
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--pretty", action="store_true", help="human-readable output")

    ap = argparse.ArgumentParser(prog="triarr", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="full report for an arrangement")
    p.add_argument("input")
    p.add_argument("--primes", type=int, default=2)
    p.add_argument("--N", type=int, default=None, help="ambient full monomial modulus")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("realize", parents=[common], help="realize combinatorics as an RUA")
    p.add_argument("input")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--report", action="store_true", help="include labels and modulus")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("complement", parents=[common], help="complement triple count")
    p.add_argument("input")
    p.add_argument("--N", type=int, default=None)
    p.set_defaults(func=cmd_complement)

    p = sub.add_parser("enumerate", parents=[common], help="predictor vs oracle over a corpus")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--sides", choices=("all", "subsets"), default="all")
    p.add_argument("--primes", type=int, default=2)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("repro-section6", parents=[common],
                       help="free vs nearly free pair with equal weak combinatorics")
    p.add_argument("--family", type=int, default=None, metavar="k")
    p.add_argument("--primes", type=int, default=2)
    p.set_defaults(func=cmd_repro)

    p = sub.add_parser("certify", parents=[common], help="Saito certificate at given degrees")
    p.add_argument("input")
    p.add_argument("--exponents", type=int, nargs=2, required=True, metavar=("E1", "E2"))
    p.add_argument("--prime", type=int, default=None)
    p.set_defaults(func=cmd_certify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        if getattr(args, "primes", 1) < 1:
            raise InputError("--primes must be positive")
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvariantViolation as exc:
        print(json.dumps({"invariant_violation": str(exc), "dump": exc.dump}, default=str),
              file=sys.stderr)
        return EXIT_INVARIANT
    except (TriarrError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
