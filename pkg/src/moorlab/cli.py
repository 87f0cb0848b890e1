"""Command-line front end: verification suites and element-document transforms.

Exit codes: 0 when every check passes, 1 when any check fails, 2 for usage
or input errors.  Machine-format output is canonical JSON, byte-identical
across runs with the same inputs and seeds.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import bialgebra, cofree, documents, operad, perm
from .config import DEFAULTS, generator_names
from .free_algebra import Element, basis_words, symbols_of
from .linalg import map_slots, span_rank
from .reports import Check, Report, merge


def _print_report(report: Report, fmt: str) -> int:
    sys.stdout.write(report.to_json() if fmt == "machine" else report.to_human())
    return report.exit_code


def _graded_words(generators, max_degree):
    words = []
    for d in range(1, max_degree + 1):
        words.extend(basis_words(generators, d))
    return words


def _cmd_dims(args) -> int:
    checks = []
    for n in range(1, args.max + 1):
        count = operad.catalan(n - 1) * math.factorial(n)
        dim = operad.moor_dim(n)
        checks.append(Check(
            f"dim Moor({n}) = {n}", dim == n,
            detail=f"computed {dim} from {count} tree operations"))
    dims = Report(suite="dims", parameters={}, checks=tuple(checks))
    series = operad.generating_series_check(args.max)
    report = merge("dims", {"max_arity": args.max}, [dims, series])
    return _print_report(report, args.format)


def _cmd_dual_check(args) -> int:
    return _print_report(operad.koszul_dual_check(), args.format)


def _cmd_axioms(args) -> int:
    gens = generator_names(args.generators)
    inst = bialgebra.free_instance(gens)
    words = _graded_words(gens, args.max_degree)
    elements = [Element.term(w) for w in words]

    parts = [
        bialgebra.validate_instance(inst, args.max_degree),
        cofree.check_coalgebra_axioms(cofree.COFREE, elements,
                                      label="cofree cooperation"),
    ]

    phi_bad = []
    for x in elements:
        lhs = cofree.coproduct(bialgebra.free_to_cofree(x))
        rhs = map_slots(
            lambda w: bialgebra.free_to_cofree(Element.term(w)),
            bialgebra.coproduct(x))
        if lhs != rhs:
            phi_bad.append(repr(x))
    rank_bad = []
    for d in range(1, args.max_degree + 1):
        slice_words = basis_words(gens, d)
        images = [bialgebra.free_to_cofree(Element.term(w)) for w in slice_words]
        if span_rank(images) != len(slice_words):
            rank_bad.append(f"degree {d}")
    parts.append(Report(
        suite="factorial-isomorphism", parameters={},
        checks=(
            Check("factorial isomorphism intertwines the two coproducts",
                  not phi_bad, detail=f"{len(elements)} basis words",
                  counterexample={"cases": phi_bad[:3]} if phi_bad else None),
            Check("factorial isomorphism has full rank on every slice",
                  not rank_bad,
                  counterexample={"cases": rank_bad} if rank_bad else None),
        )))

    invariance_bad = []
    handles = (("free coproduct", inst.coalgebra()),
               ("cofree cooperation", cofree.COFREE))
    for label, handle in handles:
        for n in range(2, DEFAULTS.invariance_slots + 1):
            for x in elements:
                if not cofree.last_slots_invariant(handle, n, x):
                    invariance_bad.append(f"{label}, n={n}, x={x!r}")
    parts.append(Report(
        suite="invariance", parameters={},
        checks=(Check(
            f"iterated coproducts are symmetric in their last n slots"
            f" (n <= {DEFAULTS.invariance_slots})",
            not invariance_bad,
            detail=f"both coproducts, {len(elements)} basis words",
            counterexample={"cases": invariance_bad[:3]}
            if invariance_bad else None),)))

    report = merge("axioms",
                   {"generators": args.generators, "max_degree": args.max_degree},
                   parts)
    return _print_report(report, args.format)


def _cmd_rigidity(args) -> int:
    gens = generator_names(args.generators)
    if args.relabel is None:
        inst = bialgebra.free_instance(gens)
    else:
        inst = bialgebra.relabeled_instance(gens, args.relabel)
    parts = [
        bialgebra.rigidity_check(inst, args.max_degree),
        bialgebra.check_primitive_action(inst, args.max_degree),
    ]
    parameters = {"generators": args.generators, "max_degree": args.max_degree,
                  "instance": inst.name}
    return _print_report(merge("rigidity", parameters, parts), args.format)


def _perm_degree(x: perm.PermElem) -> int:
    degrees = [w.degree for w, _ in x.body.items()]
    return max(degrees, default=0)


def _cmd_perm(args) -> int:
    gens = generator_names(args.generators)
    bound = args.max_degree
    basis = perm.perm_basis(gens, bound)
    graded = [(_perm_degree(x), x) for x in basis]

    triples = [(x, y, z)
               for dx, x in graded
               for dy, y in graded if dx + dy <= bound
               for dz, z in graded if dx + dy + dz <= bound]
    parts = [perm.check_axioms(triples)]

    compat_bad = []
    pairs = 0
    for dx, x in graded:
        for dy, y in graded:
            if dx + dy > bound:
                continue
            try:
                ok = perm.check_compatibility(x, y)
            except perm.UndefinedPermProductError:
                continue
            pairs += 1
            if not ok:
                compat_bad.append(f"x={x!r} y={y!r}")
    parts.append(Report(
        suite="perm-compat", parameters={},
        checks=(Check("coproduct/product compatibility", not compat_bad,
                      detail=f"{pairs} legal pairs",
                      counterexample={"cases": compat_bad[:3]}
                      if compat_bad else None),)))

    words = _graded_words(gens, bound)
    handle = cofree.Coalgebra(
        name="perm-words",
        coproduct=lambda e: perm.coproduct(perm.PermElem.from_element(e)))
    parts.append(cofree.check_coalgebra_axioms(
        handle, [Element.term(w) for w in words], label="perm coproduct"))

    coincide_bad = [str(w) for w in words
                    if perm.coproduct(perm.PermElem.from_word(w))
                    != bialgebra.coproduct(Element.term(w))]
    one = perm.PermElem.one()
    sample = perm.PermElem.from_word(words[0]) if words else one
    unit_checks = (
        Check("x |> 1 = x", perm.perm_mul(sample, one) == sample),
        Check("1 |> x is rejected for word x",
              _raises_undefined(lambda: perm.perm_mul(one, sample))
              if words else True),
        Check("r(v (x) 1) = 1 and r(1) = 0 and l(1) = 0",
              perm.right_map(one) == perm.PermElem.zero()
              and perm.left_map(one) == perm.PermElem.zero()
              and (not words or perm.right_map(
                  perm.PermElem.from_word(basis_words(gens, 1)[0]))
                  == perm.PermElem.one())),
        Check("coproduct of the unit vanishes", not perm.coproduct(one)),
        Check("positionwise coproduct coincides with the free-bialgebra one",
              not coincide_bad,
              detail=f"{len(words)} basis words",
              counterexample={"cases": coincide_bad[:3]} if coincide_bad else None),
    )
    parts.append(Report(suite="perm-units", parameters={}, checks=unit_checks))

    report = merge("perm",
                   {"generators": args.generators, "max_degree": bound}, parts)
    return _print_report(report, args.format)


def _raises_undefined(thunk) -> bool:
    try:
        thunk()
    except perm.UndefinedPermProductError:
        return True
    return False


def _load_moor_document(path: str) -> documents.Document:
    text = Path(path).read_text(encoding="utf-8")
    doc = documents.parse_document(text)
    if doc.basis != "moor-word":
        raise documents.ParseError(
            f"expected a moor-word document, got {doc.basis!r}")
    return doc


def _cmd_extend(args) -> int:
    doc = _load_moor_document(args.input)
    inst = bialgebra.free_instance(symbols_of(doc.element))
    result = bialgebra.cofree_extension(inst, doc.element)
    verified = result == bialgebra.free_to_cofree(doc.element)
    out_doc = documents.moor_word_document(result)
    if args.format == "machine":
        sys.stdout.write(documents.serialize_document(out_doc))
    else:
        sys.stdout.write(f"cofree extension of the degree-1 projection:\n"
                         f"  input:  {doc.element!r}\n"
                         f"  output: {result!r}\n")
        sys.stdout.write("cross-check against the factorial isomorphism: "
                         + ("pass\n" if verified else "FAIL\n"))
    return 0 if verified else 1


def _cmd_decompose(args) -> int:
    doc = _load_moor_document(args.input)
    inst = bialgebra.free_instance(symbols_of(doc.element))
    decomposition = bialgebra.comb_decompose(inst, doc.element)
    if args.format == "machine":
        parts = []
        for coeff, lead, tail in decomposition.parts:
            parts.append({
                "coefficient": str(coeff),
                "lead": documents.document_to_dict(
                    documents.moor_word_document(lead))["terms"],
                "tail": [documents.document_to_dict(
                    documents.moor_word_document(entry))["terms"]
                    for entry in tail],
            })
        payload = {"version": 1, "kind": "comb-decomposition",
                   "verified": True, "parts": parts}
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=False) + "\n")
    else:
        sys.stdout.write(f"comb decomposition of {doc.element!r}:\n")
        for coeff, lead, tail in decomposition.parts:
            tail_text = ", ".join(repr(entry) for entry in tail)
            sys.stdout.write(f"  {coeff} * comb({lead!r}; {tail_text})\n")
        sys.stdout.write("re-evaluation through the product: pass\n")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="moorlab",
        description="Exact verification suites for Moor algebras and their duals.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "machine"), default="human",
                        help="report rendering (default: human)")
    sized = argparse.ArgumentParser(add_help=False)
    sized.add_argument("--generators", type=int, default=DEFAULTS.generators,
                       help=f"number of generators (default {DEFAULTS.generators})")
    sized.add_argument("--max-degree", type=int, default=DEFAULTS.max_degree,
                       help=f"degree bound for basis words"
                            f" (default {DEFAULTS.max_degree})")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dual-check", parents=[common],
                       help="NAP/Moor annihilator duality in arity 3")
    p.set_defaults(func=_cmd_dual_check)

    p = sub.add_parser("dims", parents=[common],
                       help="dim Moor(n) by exhaustive tree rewriting")
    p.add_argument("--max", type=int, default=DEFAULTS.dims_max,
                   help=f"largest arity to check (default {DEFAULTS.dims_max},"
                        f" cap {operad.ARITY_CAP})")
    p.set_defaults(func=_cmd_dims)

    p = sub.add_parser("axioms", parents=[common, sized],
                       help="algebra, coalgebra and compatibility axioms")
    p.set_defaults(func=_cmd_axioms)

    p = sub.add_parser("rigidity", parents=[common, sized],
                       help="rigid decomposition checks on an instance")
    p.add_argument("--relabel", type=int, default=None, metavar="SEED",
                   help="use a seeded relabeled instance instead of the free one")
    p.set_defaults(func=_cmd_rigidity)

    p = sub.add_parser("perm", parents=[common, sized],
                       help="Perm product, coproduct and compatibility checks")
    p.set_defaults(func=_cmd_perm)

    p = sub.add_parser("extend", parents=[common],
                       help="cofree extension of a moor-word element document")
    p.add_argument("--input", required=True, help="element document to read")
    p.set_defaults(func=_cmd_extend)

    p = sub.add_parser("decompose", parents=[common],
                       help="comb decomposition of a moor-word element document")
    p.add_argument("--input", required=True, help="element document to read")
    p.set_defaults(func=_cmd_decompose)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except documents.ParseError as error:
        print(f"error: {error}", file=sys.stderr)
        return 2
    except OSError as error:
        print(f"error: {error}", file=sys.stderr)
        return 2
    except ValueError as error:
        print(f"error: {error}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
