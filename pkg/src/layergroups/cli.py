"""Command-line front end.

Exit codes: 0 when every check passes, 1 when any check fails, 2 on usage,
parse, or domain errors. Reports go to stdout and diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bunch import bunch_equal, bunch_validate
from .chain import (
    chain_compare,
    chain_mul,
    chain_negate,
    chain_residuum,
    format_chain_element,
    parse_chain_element,
    rho,
)
from .decompose import decompose_chain, verify_decomposition_sampled
from .errors import LayerGroupsError, NoClassJ
from .finite_chain import (
    fc_enumerate_homs,
    fc_materialize,
    fc_validate,
    format_finite_chain,
    generate_sugihara,
    parse_finite_chain,
)
from .formats import format_bunch, load_bunch, load_bunch_hom, load_finite_chain, parse_bunch
from .hom import SKELETON_MODES, bh_validate, check_extension, hom_correspondence_check
from .oracle import (
    SampleConfig,
    check_axioms,
    check_cover_lemma,
    check_lemma_equivalences,
    check_roundtrip_finite,
)
from .report import ValidationReport


def _cfg(args):
    return SampleConfig(coordinate_bound=args.bound, samples=args.samples, seed=args.seed)


def _emit(args, rep):
    sys.stdout.write(rep.render(args.format))
    return 0 if rep.ok else 1


def _is_chain_file(text):
    for ln in text.splitlines():
        s = ln.strip()
        if s and not s.startswith("#"):
            return s.split()[0] == "n"
    return False


def cmd_validate_bunch(args):
    return _emit(args, bunch_validate(load_bunch(args.bunch)))


def cmd_validate_chain(args):
    return _emit(args, fc_validate(load_finite_chain(args.chain)))


_ARITY = {"mul": 2, "neg": 1, "res": 2, "cmp": 2, "rho": 2}


def _evaluate(B, expr):
    parts = expr.split()
    if not parts or parts[0] not in _ARITY:
        raise ValueError(f"unknown operation in {expr!r}; use mul, neg, res, cmp or rho")
    op, rest = parts[0], parts[1:]
    if len(rest) != _ARITY[op]:
        raise ValueError(f"{op} takes {_ARITY[op]} argument(s)")
    if op == "rho":
        return format_chain_element(rho(B, rest[0], parse_chain_element(rest[1])))
    xs = [parse_chain_element(p) for p in rest]
    if op == "mul":
        return format_chain_element(chain_mul(B, *xs))
    if op == "neg":
        return format_chain_element(chain_negate(B, *xs))
    if op == "res":
        return format_chain_element(chain_residuum(B, *xs))
    return chain_compare(B, *xs).name


def cmd_build_eval(args):
    B = load_bunch(args.bunch)
    rep = bunch_validate(B)
    if not rep.ok:
        sys.stderr.write("invalid bunch:\n" + rep.render())
        return 2
    results = [_evaluate(B, e) for e in args.expr]
    if args.format == "structured":
        payload = [{"expr": e, "result": r} for e, r in zip(args.expr, results)]
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        sys.stdout.write("".join(r + "\n" for r in results))
    return 0


def cmd_decompose(args):
    C = load_finite_chain(args.chain)
    rep = fc_validate(C)
    if not rep.ok:
        sys.stderr.write("invalid chain:\n" + rep.render())
        return 1
    sys.stdout.write(format_bunch(decompose_chain(C)))
    return 0


def cmd_roundtrip(args):
    text = Path(args.file).read_text()
    if _is_chain_file(text):
        return _emit(args, check_roundtrip_finite(parse_finite_chain(text)))
    B = parse_bunch(text)
    rep = ValidationReport()
    rep.extend(bunch_validate(B), "bunch:")
    if not rep.ok:
        return _emit(args, rep)
    if B.is_all_trivial():
        same = bunch_equal(decompose_chain(fc_materialize(B)), B)
        rep.add("bunch-roundtrip", same, None if same else "decomposed bunch differs")
    else:
        rep.extend(verify_decomposition_sampled(B, _cfg(args)))
    return _emit(args, rep)


def cmd_materialize(args):
    B = load_bunch(args.bunch)
    rep = bunch_validate(B)
    if not rep.ok:
        sys.stderr.write("invalid bunch:\n" + rep.render())
        return 2
    C = fc_materialize(B)
    names = " ".join(format_chain_element(e) for e in C.elements)
    sys.stdout.write(f"# elements: {names}\n" + format_finite_chain(C))
    return 0


def cmd_check_hom(args):
    phi = load_bunch_hom(args.hom)
    rep = ValidationReport()
    rep.extend(bunch_validate(phi.source), "source:")
    rep.extend(bunch_validate(phi.target), "target:")
    if rep.ok:
        r = bh_validate(phi, skeleton=args.skeleton)
        rep.extend(r)
        if r.ok and args.samples:
            rep.extend(check_extension(phi, _cfg(args)), "extension:")
    return _emit(args, rep)


def cmd_enum_homs(args):
    C1, C2 = load_finite_chain(args.source), load_finite_chain(args.target)
    for C, name in ((C1, args.source), (C2, args.target)):
        if not fc_validate(C).ok:
            sys.stderr.write(f"{name}: invalid chain\n")
            return 2
    homs = fc_enumerate_homs(C1, C2)
    if args.format == "structured":
        sys.stdout.write(json.dumps({"count": len(homs), "homs": [list(h) for h in homs]}) + "\n")
    else:
        sys.stdout.write(f"count {len(homs)}\n")
        sys.stdout.write("".join("hom " + " ".join(map(str, h)) + "\n" for h in homs))
    return 0


def cmd_correspondence(args):
    C1, C2 = load_finite_chain(args.source), load_finite_chain(args.target)
    for C, name in ((C1, args.source), (C2, args.target)):
        if not fc_validate(C).ok:
            sys.stderr.write(f"{name}: invalid chain\n")
            return 2
    return _emit(args, hom_correspondence_check(C1, C2))


def cmd_axioms(args):
    B = load_bunch(args.bunch)
    rep = ValidationReport()
    rep.extend(bunch_validate(B), "bunch:")
    if not rep.ok:
        return _emit(args, rep)
    cfg = _cfg(args)
    suites = args.suite or ["axioms"]
    if "all" in suites:
        suites = ["axioms", "lemmas", "cover", "decomposition"]
    for s in suites:
        if s == "axioms":
            rep.extend(check_axioms(B, cfg), "axioms:")
        elif s == "lemmas":
            rep.extend(check_lemma_equivalences(B, cfg), "lemmas:")
        elif s == "cover":
            try:
                rep.extend(check_cover_lemma(B, cfg), "cover:")
            except NoClassJ:
                if args.suite and "all" not in args.suite:
                    raise
        elif s == "decomposition":
            rep.extend(verify_decomposition_sampled(B, cfg), "decomposition:")
    return _emit(args, rep)


def cmd_gen_sugihara(args):
    sys.stdout.write(format_finite_chain(generate_sugihara(args.kind, args.n)))
    return 0


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=10_000)
    common.add_argument("--bound", type=int, default=50)
    common.add_argument("--format", choices=("text", "structured"), default="text")

    p = argparse.ArgumentParser(prog="layergroups", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(fn=fn)
        return sp

    add("validate-bunch", cmd_validate_bunch, "check a bunch file").add_argument("bunch")
    add("validate-chain", cmd_validate_chain, "check a finite-chain file").add_argument("chain")
    sp = add("build-eval", cmd_build_eval, "evaluate chain operations on element literals")
    sp.add_argument("bunch")
    sp.add_argument("expr", nargs="+", help='e.g. "mul u:[3] t:[1]", "neg u:*[2]", "cmp a b"')
    add("decompose", cmd_decompose, "print the bunch of a finite chain").add_argument("chain")
    add("roundtrip", cmd_roundtrip, "chain -> bunch -> chain (or bunch -> chain -> bunch)"
        ).add_argument("file")
    add("materialize", cmd_materialize, "finite chain of an all-trivial bunch").add_argument("bunch")
    sp = add("check-hom", cmd_check_hom, "validate a bunch-hom file")
    sp.add_argument("hom")
    sp.add_argument("--skeleton", choices=SKELETON_MODES, default="merge-into-o",
                    help="how S1 treats labels with a common image")
    for name, fn, h in (("enum-homs", cmd_enum_homs, "list finite-chain homomorphisms"),
                        ("correspondence", cmd_correspondence, "compare chain and bunch homs")):
        sp = add(name, fn, h)
        sp.add_argument("source")
        sp.add_argument("target")
    sp = add("axioms", cmd_axioms, "run sampled verification suites on a bunch")
    sp.add_argument("bunch")
    sp.add_argument("--suite", action="append",
                    choices=("axioms", "lemmas", "cover", "decomposition", "all"))
    sp = add("gen-sugihara", cmd_gen_sugihara, "print a Sugihara chain")
    sp.add_argument("kind", choices=("odd", "even"))
    sp.add_argument("n", type=int)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.fn(args)
    except (LayerGroupsError, ValueError, OSError) as e:
        sys.stderr.write(f"error: {e}\n")
        return 2


run = main

if __name__ == "__main__":
    sys.exit(main())
