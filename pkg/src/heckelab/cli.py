"""Command-line entry point for the workbench.

Subcommands: powers (monomial-family witness search), translates
(translate-family witness search), isotest (geometric isogeny test),
census (signature census of two parametric varieties), hecke (modular
polynomial evaluation and neighbor enumeration).

Exit codes: 0 success with findings, 1 usage error, 2 clean exhaustion
or a clean negative, 3 budget exhaustion.  All randomness is derived
from --seed, so identical invocations print identical bytes; field
elements are printed as (level, coefficients, modulus) triples so
results stay interpretable across machines.
"""

from __future__ import annotations

import argparse
import json
import sys

from .census import ParametricVariety, census
from .config import RunConfig
from .curves import IsogenyClassifier, JInvariant
from .errors import (
    BudgetExceeded,
    CharTooSmall,
    ExtensionTooLarge,
    HeckelabError,
    IncompleteFactorization,
    LevelMismatch,
    MalformedData,
    NotPrime,
    UnknownLevel,
)
from .fields import FieldTower
from .modpoly import hecke_neighbors, load_phi, phi_eval
from .witnesses import (
    MonomialCurvePair,
    make_translate_spec,
    monomial_witness_record,
    monomial_witness_search,
    translate_hypothesis_check,
    translate_witness_record,
    translate_witness_search,
    verify_monomial_witness,
    verify_translate_witness,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_EXHAUSTED = 2
EXIT_BUDGET = 3


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x != ""]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {exc}")


def _emit(out, lines):
    for line in lines:
        out.write(line + "\n")


def _parse_element(tower: FieldTower, text: str, default_level: int = 1):
    """An element given as an int, comma list, or JSON triple."""
    text = text.strip()
    if text.startswith("{"):
        rec = json.loads(text)
        level = int(rec["level"])
        coeffs = [int(c) for c in rec["coeffs"]]
        tower.ensure_level(level)
        if "modulus" in rec:
            have = list(tower.level(level).modulus)
            if [c % tower.p for c in rec["modulus"]] != have:
                raise ValueError(
                    "modulus mismatch: rerun with the seed that produced "
                    f"this element (tower has {have})"
                )
        return tower.element(level, coeffs)
    if "," in text:
        coeffs = [int(c) for c in text.split(",")]
        return tower.element(len(coeffs), coeffs)
    return tower.from_int(default_level, int(text))


def cmd_powers(args, out) -> int:
    tower = FieldTower(args.p, RunConfig(seed=args.seed))
    pair = MonomialCurvePair(args.p, tuple(args.a), tuple(args.b))
    witnesses, log = monomial_witness_search(
        tower, pair, m_max=args.m_max, lambda_max=args.lambda_max,
        max_witnesses=args.max_witnesses,
    )
    for w in witnesses:
        ok, why = verify_monomial_witness(tower, pair, w)
        if not ok:
            raise AssertionError(f"emitted witness failed verification: {why}")
    if args.format == "json":
        _emit(out, [monomial_witness_record(pair, w) for w in witnesses])
    else:
        for w in witnesses:
            _emit(out, [
                f"lambda={w.lam} level={w.t.level} exponents={list(w.exponents)} "
                f"t={list(w.t.coeffs)} verified={w.verified}"
            ])
        if args.verbose:
            for subject, reason in log.entries:
                _emit(out, [f"# {subject}: {reason}"])
    return EXIT_OK if witnesses else EXIT_EXHAUSTED


def cmd_translates(args, out) -> int:
    tower = FieldTower(args.p, RunConfig(seed=args.seed))
    offsets = args.b
    spec = make_translate_spec(tower, args.e, offsets)
    if not translate_hypothesis_check(spec):
        _emit(out, ["hypothesis fails: some offset ratio leaves the prime field"])
        return EXIT_EXHAUSTED
    witnesses, log = translate_witness_search(tower, spec, args.d_list)
    for w in witnesses[: args.verify_limit]:
        ok, why = verify_translate_witness(tower, spec, w)
        if not ok:
            raise AssertionError(f"emitted witness failed verification: {why}")
    if args.format == "json":
        _emit(out, [translate_witness_record(spec, w) for w in witnesses])
    else:
        for w in witnesses:
            _emit(out, [
                f"d={w.d} level={w.s.level} exponents={list(w.exponents)} "
                f"s={list(w.s.coeffs)} verified={w.verified}"
            ])
    return EXIT_OK if witnesses else EXIT_EXHAUSTED


def cmd_isotest(args, out) -> int:
    tower = FieldTower(args.p, RunConfig(seed=args.seed))
    classifier = IsogenyClassifier(tower)
    js = []
    for text in (args.j1, args.j2):
        if text.strip() == "cusp":
            js.append(JInvariant.cusp())
        else:
            js.append(JInvariant(_parse_element(tower, text)))
    verdict = classifier.geometric_isogeny_test(js[0], js[1])
    labels = []
    for j in js:
        labels.append("cusp" if j.is_cusp else str(classifier.label(j)))
    if args.format == "json":
        _emit(out, [json.dumps(
            {"isogenous": verdict, "labels": labels}, sort_keys=True)])
    else:
        _emit(out, [f"isogenous: {verdict}", f"labels: {labels[0]} | {labels[1]}"])
    return EXIT_OK


def _variety_from_spec(tower: FieldTower, spec: dict, level: int) -> ParametricVariety:
    kind = spec.get("kind", "curve")
    if kind == "diagonal":
        return ParametricVariety.diagonal(tower, int(spec.get("n", 2)), level)
    if kind == "full_plane":
        return ParametricVariety.full_plane(tower, int(spec.get("n", 2)), level)
    if kind == "point":
        vals = [None if v is None else v for v in spec["values"]]
        elems = []
        for v in vals:
            if v is None:
                elems.append(None)
            elif isinstance(v, list):
                elems.append(tower.element(level, v))
            else:
                elems.append(tower.from_int(level, int(v)))
        return ParametricVariety.point(tower, elems, level)
    if kind == "curve":
        coord_polys = []
        for m in spec["maps"]:
            coord_polys.append((m["num"], m.get("den", [1])))
        return ParametricVariety.from_univariate(tower, level, coord_polys)
    raise ValueError(f"unknown variety kind {kind!r}")


def cmd_census(args, out) -> int:
    with open(args.spec_file) as fh:
        spec = json.load(fh)
    p = int(spec["p"])
    level = int(spec.get("e", 1))
    tower = FieldTower(p, RunConfig(seed=args.seed))
    tower.ensure_level(level)
    v = _variety_from_spec(tower, spec["v"], level)
    w = _variety_from_spec(tower, spec["w"], level)
    m_max = args.m_max or int(spec.get("m_max", 2))
    classifier = IsogenyClassifier(tower)
    report = census(tower, classifier, v, w, m_max)
    if args.format == "json":
        _emit(out, [report.to_json()])
    else:
        out.write(report.to_csv())
    return EXIT_OK


def cmd_hecke(args, out) -> int:
    mp = load_phi(args.N)
    tower = FieldTower(args.p, RunConfig(seed=args.seed))
    j = JInvariant(_parse_element(tower, args.j))
    if args.eval is not None:
        y = _parse_element(tower, args.eval, default_level=j.value.level)
        common = j.value.level
        val = phi_eval(mp, j.value, tower.embed(y, common) if y.level != common else y)
        if args.format == "json":
            _emit(out, [json.dumps({"value": list(val.coeffs), "level": val.level},
                                   sort_keys=True)])
        else:
            _emit(out, [f"phi_{args.N}(j, y) = {list(val.coeffs)} at level {val.level}"])
        return EXIT_OK
    neighbors = hecke_neighbors(tower, j, args.N)
    if args.format == "json":
        recs = [
            {"level": nb.value.level, "coeffs": list(nb.value.coeffs),
             "modulus": list(tower.level(nb.value.level).modulus)}
            for nb in neighbors
        ]
        _emit(out, [json.dumps({"count": len(neighbors), "neighbors": recs},
                               sort_keys=True)])
    else:
        _emit(out, [f"count: {len(neighbors)}"])
        for nb in neighbors:
            _emit(out, [f"level={nb.value.level} coeffs={list(nb.value.coeffs)}"])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    def add_common(parser, suppress: bool):
        # subparsers get SUPPRESS defaults so they never clobber a value
        # given before the subcommand
        d = (lambda v: argparse.SUPPRESS if suppress else v)
        parser.add_argument("--seed", type=int, default=d(0),
                            help="deterministic seed")
        parser.add_argument("--format", choices=("text", "json", "csv"),
                            default=d("text"))
        parser.add_argument("--out", default=d(None),
                            help="write output to a file")
        parser.add_argument(
            "--workers", type=int, default=d(1),
            help="worker count for searches (1 = sequential, the default; "
                 "deterministic output is only guaranteed sequentially)")

    common = argparse.ArgumentParser(add_help=False)
    add_common(common, suppress=True)
    ap = argparse.ArgumentParser(
        prog="heckelab",
        description="workbench for isogeny classes and Hecke correspondences "
                    "over finite fields",
    )
    add_common(ap, suppress=False)
    sub = ap.add_subparsers(dest="command", required=True)

    p1 = sub.add_parser("powers", help="monomial-family isogeny witnesses",
                        parents=[common])
    p1.add_argument("--p", type=int, required=True)
    p1.add_argument("--a", type=_int_list, required=True)
    p1.add_argument("--b", type=_int_list, required=True)
    p1.add_argument("--m-max", type=int, default=6)
    p1.add_argument("--lambda-max", type=int, default=10**4)
    p1.add_argument("--max-witnesses", type=int, default=None)
    p1.add_argument("--verbose", action="store_true")
    p1.set_defaults(func=cmd_powers)

    p2 = sub.add_parser("translates", help="translate-family isogeny witnesses", parents=[common])
    p2.add_argument("--p", type=int, required=True)
    p2.add_argument("--e", type=int, default=1)
    p2.add_argument("--b", type=_int_list, required=True)
    p2.add_argument("--d-list", type=_int_list, default=[1])
    p2.add_argument("--verify-limit", type=int, default=8)
    p2.set_defaults(func=cmd_translates)

    p3 = sub.add_parser("isotest", help="geometric isogeny test of two j-invariants", parents=[common])
    p3.add_argument("--p", type=int, required=True)
    p3.add_argument("--j1", required=True)
    p3.add_argument("--j2", required=True)
    p3.set_defaults(func=cmd_isotest)

    p4 = sub.add_parser("census", help="signature census from a JSON spec file", parents=[common])
    p4.add_argument("--spec-file", required=True)
    p4.add_argument("--m-max", type=int, default=None)
    p4.set_defaults(func=cmd_census)

    p5 = sub.add_parser("hecke", help="modular polynomial neighbors/evaluation", parents=[common])
    p5.add_argument("--p", type=int, required=True)
    p5.add_argument("--N", type=int, required=True)
    p5.add_argument("--j", required=True)
    p5.add_argument("--eval", default=None, metavar="Y")
    p5.set_defaults(func=cmd_hecke)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    if args.workers < 1:
        print("error: --workers must be positive", file=sys.stderr)
        return EXIT_USAGE
    out = sys.stdout
    close = False
    if args.out:
        out = open(args.out, "w")
        close = True
    try:
        return args.func(args, out)
    except (NotPrime, CharTooSmall, UnknownLevel, MalformedData, LevelMismatch,
            ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BudgetExceeded, ExtensionTooLarge, IncompleteFactorization) as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except HeckelabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        if close:
            out.close()


if __name__ == "__main__":
    sys.exit(main())
