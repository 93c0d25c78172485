"""Command-line interface.

Exit status: 0 success or positive decision, 1 negative decision, 2 library
error, 64 usage error, 65 malformed input or field mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from .algebras import (
    CanonicalLabel, StructureConstants, adjoin_identity, check_semialgebra, emit_canonical_algebra,
    lie_classify, pgroup_presentation, semialgebra_from_tuple, tuple_from_semialgebra,
)
from .errors import FieldError, WildformsError
from .fields import Field, FiniteField, Q, field_from_json
from .gadgets import (
    CongruenceWitness, MatrixPair, build_T, build_T_lemma42, intertwiner_similarity, witness_from_similarity,
)
from .oracles import EnumerationBudget, brute_congruent, brute_orbit_iso, brute_similar
from .pencil import SkewPair, SkewPencilInvariants, emit_canonical_pair, pencil_invariants
from .serialize import MalformedInput, dumps, loads, matrix_from_json, matrix_to_json, tuple_from_json, tuple_to_json
from .tuples import EpsilonSignature

EXIT_OK, EXIT_NEGATIVE, EXIT_ERROR, EXIT_USAGE, EXIT_DATA = 0, 1, 2, 64, 65


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class Outcome:
    """Result of a verb: a JSON-able payload and the exit status."""

    def __init__(self, payload: Any, status: int = EXIT_OK, text: str | None = None):
        self.payload = payload
        self.status = status
        self.text = text


# -- configuration ---------------------------------------------------------------------

def _configured_field(args) -> Field | None:
    if args.field is None:
        if args.p is not None:
            raise UsageError("--p needs --field fp")
        return None
    if args.field == "q":
        return Q
    if args.p is None:
        raise UsageError("--field fp needs --p")
    modulus = None
    if args.modulus:
        modulus = [int(c) for c in args.modulus.split(",")]
    if args.k > 1 and modulus is None:
        return FiniteField.with_default_modulus(args.p, args.k)
    return FiniteField(args.p, args.k, modulus)


def _read_docs(args, count: int) -> list[Any]:
    """``count`` JSON documents from positional files, ``--in`` or stdin."""
    paths = list(args.inputs or [])
    if paths:
        if len(paths) != count:
            raise UsageError(f"expected {count} input file(s), got {len(paths)}")
        docs = []
        for path in paths:
            with open(path, encoding="utf-8") as fh:
                docs.append(loads(fh.read()))
        return docs
    if args.input and args.input != "-":
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = sys.stdin.read()
    doc = loads(text)
    if count == 1:
        return [doc]
    if isinstance(doc, list) and len(doc) == count:
        return doc
    raise MalformedInput(f"expected a JSON list of {count} documents")


def _field_of(doc: Any, configured: Field | None) -> Field:
    spec = None
    if isinstance(doc, dict):
        if "field" in doc:
            spec = doc["field"]
        elif "members" in doc and doc["members"] and isinstance(doc["members"][0], dict):
            spec = doc["members"][0].get("field")
        elif "A" in doc and isinstance(doc["A"], dict):
            spec = doc["A"].get("field")
    if spec is None:
        if configured is None:
            raise MalformedInput("no field in the input and none given by --field")
        return configured
    F = field_from_json(spec)
    if configured is not None and F != configured:
        raise FieldError(f"input is over {F!r} but --field selects {configured!r}")
    return F


def _tuple(doc, args):
    return tuple_from_json(doc, _field_of(doc, args.cfg_field))


def _pair(doc, args) -> MatrixPair:
    T = _tuple(doc, args)
    if T.arity != 2:
        raise MalformedInput(f"a pair has two members, got {T.arity}")
    return MatrixPair(T.members[0], T.members[1])


def _skew_pair(doc, args) -> SkewPair:
    P = _pair(doc, args)
    return SkewPair(P.A, P.B)


def _algebra(doc, args) -> StructureConstants:
    if not isinstance(doc, dict) or "table" not in doc:
        raise MalformedInput("structure constants need 'dim' and 'table'")
    try:
        return StructureConstants.from_json(doc, _field_of(doc, args.cfg_field))
    except (KeyError, TypeError) as exc:
        raise MalformedInput(f"bad structure constants: {exc}") from exc


def _budget(args) -> EnumerationBudget:
    return EnumerationBudget(args.budget, args.seed) if args.budget else EnumerationBudget(seed=args.seed)


# -- verbs ---------------------------------------------------------------------------------

def gadget_build(args) -> Outcome:
    P = _pair(_read_docs(args, 1)[0], args)
    if args.lemma42 is not None:
        return Outcome(tuple_to_json(build_T_lemma42(P, int(args.lemma42))))
    eps = EpsilonSignature.parse(P.field, args.eps)
    return Outcome(tuple_to_json(build_T(P, eps)))


def gadget_witness(args) -> Outcome:
    doc = _read_docs(args, 1)[0]
    S = matrix_from_json(doc.get("S", doc) if isinstance(doc, dict) else doc, _field_of(doc, args.cfg_field))
    return Outcome(matrix_to_json(witness_from_similarity(S).R))


def gadget_verify(args) -> Outcome:
    doc = _read_docs(args, 1)[0]
    if not isinstance(doc, dict) or not {"T1", "T2", "R"} <= set(doc):
        raise MalformedInput("verify needs an object with T1, T2 and R")
    T1 = _tuple(doc["T1"], args)
    T2 = tuple_from_json(doc["T2"], T1.field)
    R = matrix_from_json(doc["R"], T1.field)
    ok = CongruenceWitness(R).verifies(T1, T2)
    return Outcome({"verified": ok}, EXIT_OK if ok else EXIT_NEGATIVE)


def _witness_outcome(w, key: str, positive: str, negative: str) -> Outcome:
    if w is None:
        return Outcome({"result": negative}, EXIT_NEGATIVE)
    return Outcome({"result": positive, key: matrix_to_json(getattr(w, key))})


def pair_similar(args) -> Outcome:
    d1, d2 = _read_docs(args, 2)
    P1, P2 = _pair(d1, args), _pair(d2, args)
    return _witness_outcome(intertwiner_similarity(P1, P2), "S", "similar", "not similar")


def pencil_canon(args) -> Outcome:
    P = _skew_pair(_read_docs(args, 1)[0], args)
    inv = pencil_invariants(P)
    out = inv.to_json()
    if args.emit:
        out = {"invariants": out, "canonical": tuple_to_json(emit_canonical_pair(inv).as_tuple())}
    return Outcome(out)


def pencil_congruent(args) -> Outcome:
    d1, d2 = _read_docs(args, 2)
    P1, P2 = _skew_pair(d1, args), _skew_pair(d2, args)
    i1, i2 = pencil_invariants(P1), pencil_invariants(P2)
    ok = i1 == i2
    return Outcome({"result": "congruent" if ok else "not congruent",
                    "invariants": [i1.to_json(), i2.to_json()]}, EXIT_OK if ok else EXIT_NEGATIVE)


def pencil_emit(args) -> Outcome:
    doc = _read_docs(args, 1)[0]
    F = _field_of(doc, args.cfg_field)
    try:
        inv = SkewPencilInvariants.from_json(F, doc)
    except (KeyError, TypeError) as exc:
        raise MalformedInput(f"bad invariants: {exc}") from exc
    return Outcome(tuple_to_json(emit_canonical_pair(inv).as_tuple()))


def lie_classify_cmd(args) -> Outcome:
    return Outcome(lie_classify(_algebra(_read_docs(args, 1)[0], args)).to_json())


def lie_iso(args) -> Outcome:
    d1, d2 = _read_docs(args, 2)
    L1, L2 = _algebra(d1, args), _algebra(d2, args)
    if L1.field != L2.field:
        raise FieldError("algebras over different fields")
    a, b = lie_classify(L1), lie_classify(L2)
    ok = a == b
    return Outcome({"result": "isomorphic" if ok else "not isomorphic", "labels": [a.to_json(), b.to_json()]},
                   EXIT_OK if ok else EXIT_NEGATIVE)


def lie_emit(args) -> Outcome:
    doc = _read_docs(args, 1)[0]
    try:
        if doc.get("t") == 1:
            F = args.cfg_field or (field_from_json(doc["field"]) if "field" in doc else Q)
            label = CanonicalLabel.from_json(doc)
        else:
            F = _field_of(doc, args.cfg_field)
            label = CanonicalLabel.from_json(doc, F)
    except (KeyError, TypeError, AttributeError) as exc:
        raise MalformedInput(f"bad label: {exc}") from exc
    return Outcome(emit_canonical_algebra(label, F).to_json())


def alg_check(args) -> Outcome:
    rep = check_semialgebra(_algebra(_read_docs(args, 1)[0], args))
    return Outcome({"cube_zero": rep.cube_zero, "square_dim": rep.square_dim,
                    "commutative": rep.commutative, "anticommutative": rep.anticommutative})


def alg_adjoin1(args) -> Outcome:
    return Outcome(adjoin_identity(_algebra(_read_docs(args, 1)[0], args)).to_json())


def alg_encode(args) -> Outcome:
    return Outcome(semialgebra_from_tuple(_tuple(_read_docs(args, 1)[0], args)).to_json())


def alg_decode(args) -> Outcome:
    T, P = tuple_from_semialgebra(_algebra(_read_docs(args, 1)[0], args))
    return Outcome({"tuple": tuple_to_json(T), "basis": matrix_to_json(P)})


def pgroup_present(args) -> Outcome:
    text = pgroup_presentation(_tuple(_read_docs(args, 1)[0], args))
    return Outcome({"presentation": text}, text=text)


def oracle_similar(args) -> Outcome:
    d1, d2 = _read_docs(args, 2)
    P1, P2 = _pair(d1, args), _pair(d2, args)
    return _witness_outcome(brute_similar(P1, P2, _budget(args)), "S", "similar", "not similar")


def oracle_congruent(args) -> Outcome:
    d1, d2 = _read_docs(args, 2)
    T1 = _tuple(d1, args)
    T2 = tuple_from_json(d2, T1.field)
    return _witness_outcome(brute_congruent(T1, T2, _budget(args)), "R", "congruent", "not congruent")


def oracle_orbit_iso(args) -> Outcome:
    d1, d2 = _read_docs(args, 2)
    T1 = _tuple(d1, args)
    T2 = tuple_from_json(d2, T1.field)
    ok = brute_orbit_iso(T1, T2, _budget(args))
    return Outcome({"result": "same orbit" if ok else "different orbits"}, EXIT_OK if ok else EXIT_NEGATIVE)


def selftest(args) -> Outcome:
    from .acceptance import run_all
    results = run_all(reduced=not args.full)
    lines = [r.line() for r in results]
    ok = all(r.passed for r in results)
    payload = [{"criterion": r.number, "passed": r.passed, "detail": r.detail} for r in results]
    return Outcome(payload, EXIT_OK if ok else EXIT_NEGATIVE, text="\n".join(lines) + "\n")


# -- parser ----------------------------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    c = _Parser(add_help=False)
    g = c.add_argument_group("common options")
    g.add_argument("--field", choices=("q", "fp"), default=None, help="base field (default: taken from input)")
    g.add_argument("--p", type=int, default=None, help="characteristic for --field fp")
    g.add_argument("--k", type=int, default=1, help="extension degree for --field fp")
    g.add_argument("--modulus", default=None, help="comma-separated modulus coefficients, low to high")
    g.add_argument("--budget", type=int, default=None, help="cap on enumerated group elements")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--format", choices=("json", "text"), default="json")
    g.add_argument("--in", dest="input", default=None, help="input file (default: stdin)")
    g.add_argument("inputs", nargs="*", help="input files for two-argument verbs")
    return c


VERBS = {
    ("gadget", "build"): gadget_build,
    ("gadget", "witness"): gadget_witness,
    ("gadget", "verify"): gadget_verify,
    ("pair", "similar"): pair_similar,
    ("pencil", "canon"): pencil_canon,
    ("pencil", "congruent"): pencil_congruent,
    ("pencil", "emit"): pencil_emit,
    ("lie", "classify"): lie_classify_cmd,
    ("lie", "iso"): lie_iso,
    ("lie", "emit"): lie_emit,
    ("alg", "check"): alg_check,
    ("alg", "adjoin1"): alg_adjoin1,
    ("alg", "encode"): alg_encode,
    ("alg", "decode"): alg_decode,
    ("pgroup", "present"): pgroup_present,
    ("oracle", "similar"): oracle_similar,
    ("oracle", "congruent"): oracle_congruent,
    ("oracle", "orbit-iso"): oracle_orbit_iso,
}


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="wildforms", description="Matrix tuples, skew pencils and small nilpotent algebras.")
    groups = parser.add_subparsers(dest="group", required=True)
    subs: dict[str, Any] = {}
    for group, verb in VERBS:
        if group not in subs:
            subs[group] = groups.add_parser(group).add_subparsers(dest="verb", required=True)
        sp = subs[group].add_parser(verb, parents=[common])
        sp.set_defaults(handler=VERBS[(group, verb)])
        if (group, verb) == ("gadget", "build"):
            sp.add_argument("--eps", default="1,1,1", help="three signs, e.g. 1,-1,1")
            sp.add_argument("--lemma42", choices=("1", "-1"), default=None,
                            help="build the rank-separated triple with this sign instead")
        if (group, verb) == ("pencil", "canon"):
            sp.add_argument("--emit", action="store_true", help="also print the canonical pair")
    st = groups.add_parser("selftest", parents=[common])
    st.add_argument("--full", action="store_true", help="run at full acceptance sizes")
    st.set_defaults(handler=selftest)
    return parser


def _text(obj: Any, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        if "entries" in obj and "rows" in obj:
            return "\n".join(pad + " ".join(json.dumps(x) for x in row) for row in obj["entries"]) or pad + "(empty)"
        parts = []
        for key in sorted(obj):
            val = obj[key]
            if isinstance(val, (dict, list)) and val and not all(isinstance(v, (int, str)) for v in val):
                parts.append(f"{pad}{key}:")
                parts.append(_text(val, indent + 1))
            else:
                parts.append(f"{pad}{key}: {json.dumps(val)}")
        return "\n".join(parts)
    if isinstance(obj, list):
        parts = []
        for i, v in enumerate(obj):
            if isinstance(v, (dict, list)):
                parts.append(f"{pad}[{i}]")
                parts.append(_text(v, indent + 1))
            else:
                parts.append(pad + json.dumps(v))
        return "\n".join(parts)
    return pad + str(obj)


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        args.cfg_field = _configured_field(args)
        outcome = args.handler(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (MalformedInput, FieldError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (WildformsError, ArithmeticError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.format == "text":
        sys.stdout.write(outcome.text if outcome.text is not None else _text(outcome.payload) + "\n")
    else:
        sys.stdout.write(dumps(outcome.payload) + "\n")
    return outcome.status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
