"""JSON element documents: parsing with positions, canonical serialization.

A document carries one Element in one of three bases::

    {"version": 1, "basis": "moor-word",
     "terms": [{"coefficient": "3/2", "lead": "v", "word": ["w", "w"]}]}

    {"version": 1, "basis": "perm-elem", "unit": "1/3", "terms": [...]}

    {"version": 1, "basis": "tree-op",
     "terms": [{"coefficient": "1", "shape": "((xx)x)", "labels": [1, 2, 3]}]}

Coefficients are exact rational strings.  Duplicate terms merge on parse;
serialization sorts terms canonically and reduces coefficients, so parse and
serialize round-trip to identical bytes.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .free_algebra import MoorWord, SymWord
from .linalg import Element
from .operad import TreeOp, parse_shape, shape_string
from .perm import PermElem

BASIS_KINDS = ("moor-word", "perm-elem", "tree-op")


class ParseError(ValueError):
    """Invalid element document; carries a human-readable location."""

    def __init__(self, message: str, where: str = ""):
        self.where = where
        super().__init__(f"{message} ({where})" if where else message)


@dataclass(frozen=True)
class Document:
    """A parsed element document."""

    basis: str
    element: Element
    unit: Fraction = Fraction(0)

    def perm_elem(self) -> PermElem:
        if self.basis != "perm-elem":
            raise ParseError(f"expected a perm-elem document, got {self.basis!r}")
        return PermElem(unit=self.unit, body=self.element)


def _parse_coefficient(raw, where: str) -> Fraction:
    if isinstance(raw, bool) or not isinstance(raw, (str, int)):
        raise ParseError(f"coefficient must be a rational string, got {raw!r}", where)
    try:
        return Fraction(raw)
    except (ValueError, ZeroDivisionError) as error:
        raise ParseError(f"bad coefficient {raw!r}: {error}", where) from None


def _parse_symbol(raw, what: str, where: str) -> str:
    if not isinstance(raw, str) or not raw:
        raise ParseError(f"{what} must be a non-empty string, got {raw!r}", where)
    return raw


def _parse_word_term(term: dict, where: str):
    coeff = _parse_coefficient(term.get("coefficient"), where)
    lead = _parse_symbol(term.get("lead"), "lead", where)
    letters = term.get("word", [])
    if not isinstance(letters, list):
        raise ParseError(f"word must be a list of symbols, got {letters!r}", where)
    tail = SymWord.of(
        _parse_symbol(letter, "word letter", where) for letter in letters)
    return MoorWord(lead, tail), coeff


def _parse_treeop_term(term: dict, where: str):
    coeff = _parse_coefficient(term.get("coefficient"), where)
    shape_text = term.get("shape")
    if not isinstance(shape_text, str):
        raise ParseError(f"shape must be a string, got {shape_text!r}", where)
    try:
        shape = parse_shape(shape_text)
    except ValueError as error:
        raise ParseError(str(error), where) from None
    labels = term.get("labels")
    if not isinstance(labels, list) or not all(
            isinstance(entry, int) and not isinstance(entry, bool) for entry in labels):
        raise ParseError(f"labels must be a list of integers, got {labels!r}", where)
    try:
        op = TreeOp(shape, tuple(labels))
    except ValueError as error:
        raise ParseError(str(error), where) from None
    return op, coeff


def parse_document(text: str) -> Document:
    """Parse an element document, merging duplicate terms.

    Malformed JSON is reported with line and column; semantic problems name
    the offending term.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as error:
        raise ParseError(f"invalid JSON: {error.msg}",
                         f"line {error.lineno}, column {error.colno}") from None
    if not isinstance(data, dict):
        raise ParseError("document must be a JSON object")
    if data.get("version") != 1:
        raise ParseError(f"unsupported document version {data.get('version')!r}")
    basis = data.get("basis")
    if basis not in BASIS_KINDS:
        raise ParseError(
            f"basis must be one of {', '.join(BASIS_KINDS)}, got {basis!r}")
    terms = data.get("terms", [])
    if not isinstance(terms, list):
        raise ParseError(f"terms must be a list, got {terms!r}")

    parsed = []
    for index, term in enumerate(terms):
        where = f"term {index}"
        if not isinstance(term, dict):
            raise ParseError(f"term must be an object, got {term!r}", where)
        if basis == "tree-op":
            parsed.append(_parse_treeop_term(term, where))
        else:
            parsed.append(_parse_word_term(term, where))

    unit = Fraction(0)
    if basis == "perm-elem":
        unit = _parse_coefficient(data.get("unit", "0"), "unit")
    elif "unit" in data:
        raise ParseError("unit coefficient is only valid for perm-elem documents")
    return Document(basis=basis, element=Element(parsed), unit=unit)


def _word_term(w: MoorWord, coeff: Fraction) -> dict:
    return {"coefficient": str(coeff), "lead": w.lead, "word": list(w.tail.letters())}


def _treeop_term(op: TreeOp, coeff: Fraction) -> dict:
    return {"coefficient": str(coeff), "shape": shape_string(op.shape),
            "labels": list(op.labels)}


def document_to_dict(doc: Document) -> dict:
    data: dict = {"version": 1, "basis": doc.basis}
    if doc.basis == "perm-elem":
        data["unit"] = str(doc.unit)
    make_term = _treeop_term if doc.basis == "tree-op" else _word_term
    data["terms"] = [make_term(basis, coeff) for basis, coeff in doc.element.items()]
    return data


def serialize_document(doc: Document) -> str:
    """Canonical JSON text: sorted terms, reduced coefficients, one newline."""
    return json.dumps(document_to_dict(doc), indent=2, sort_keys=False) + "\n"


def moor_word_document(element: Element) -> Document:
    return Document(basis="moor-word", element=element)


def perm_document(value: PermElem) -> Document:
    return Document(basis="perm-elem", element=value.body, unit=value.unit)


def treeop_document(element: Element) -> Document:
    return Document(basis="tree-op", element=element)
