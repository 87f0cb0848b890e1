"""The unital free Perm algebra on the word basis, with its coproduct.

The product appends the right factor's letters to the left factor's tail:

    (v1 (x) v2 v ... v vn) |> (w1 (x) w2 v ... v wm)
        = v1 (x) v2 v ... v vn v w1 v ... v wm

extended by ``x |> 1 = x`` (so ``x |> (c*1) = c*x`` by linearity), while
``1 |> x`` stays undefined for any x with a nonzero word part.  The
coproduct removes tail letters positionwise, and compatibility holds in the
three-term form involving the lead projection and the tail-promotion
average.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .free_algebra import MoorWord, SymWord, basis_words
from .linalg import Element, tensor
from .reports import Check, Report


class UndefinedPermProductError(ValueError):
    """Raised for products of the form 1 |> x with x not a scalar."""


@dataclass(frozen=True)
class PermElem:
    """An element ``unit * 1 + body`` of the unital free Perm algebra."""

    unit: Fraction = Fraction(0)
    body: Element = Element.zero()

    @classmethod
    def zero(cls) -> "PermElem":
        return cls()

    @classmethod
    def one(cls, coeff=1) -> "PermElem":
        return cls(unit=Fraction(coeff))

    @classmethod
    def from_word(cls, w: MoorWord, coeff=1) -> "PermElem":
        return cls(body=Element.term(w, coeff))

    @classmethod
    def from_element(cls, body: Element) -> "PermElem":
        return cls(body=body)

    def __add__(self, other: "PermElem") -> "PermElem":
        return PermElem(self.unit + other.unit, self.body + other.body)

    def __sub__(self, other: "PermElem") -> "PermElem":
        return self + (-other)

    def __neg__(self) -> "PermElem":
        return PermElem(-self.unit, -self.body)

    def __rmul__(self, scalar) -> "PermElem":
        scalar = Fraction(scalar)
        return PermElem(scalar * self.unit, scalar * self.body)

    __mul__ = __rmul__

    def __bool__(self) -> bool:
        return bool(self.unit) or bool(self.body)

    def __repr__(self) -> str:
        if not self:
            return "0"
        parts = []
        if self.unit:
            parts.append(f"{self.unit}*1")
        if self.body:
            parts.append(repr(self.body))
        return " + ".join(parts)


def perm_mul(x: PermElem, y: PermElem) -> PermElem:
    """The Perm product ``x |> y``; see the module docstring for unit cases."""
    if not y.body:
        return PermElem(y.unit * x.unit, y.unit * x.body)
    if x.unit:
        raise UndefinedPermProductError("1 |> x undefined")
    terms = []
    for xw, xc in x.body.items():
        for yw, yc in y.body.items():
            merged = xw.tail.add(yw.lead).union(yw.tail)
            terms.append((MoorWord(xw.lead, merged), xc * yc))
    return PermElem(body=y.unit * x.body + Element(terms))


def left_map(x: PermElem) -> PermElem:
    """Keep only each word's lead as a degree-1 word; the unit goes to 0."""
    return PermElem(body=Element(
        [(MoorWord(w.lead), c) for w, c in x.body.items()]))


def right_map(x: PermElem) -> PermElem:
    """Average of promoting each tail letter to the lead, dropping the old lead.

    Degree-1 words go to the unit; the unit itself goes to 0.
    """
    result = PermElem.zero()
    for w, coeff in x.body.items():
        n = w.degree
        if n == 1:
            result = result + PermElem.one(coeff)
            continue
        share = Fraction(1, n - 1)
        for letter, mult in w.tail.runs:
            promoted = MoorWord(letter, w.tail.remove(letter))
            result = result + PermElem.from_word(promoted, coeff * mult * share)
    return result


def coproduct(x: PermElem) -> Element:
    """Positionwise letter-removal coproduct; lands in pair tensors of words.

    Each tail position is removed in turn, so a letter of multiplicity k
    shows up with integer coefficient k.
    """
    terms = []
    for w, coeff in x.body.items():
        letters = w.tail.letters()
        for i, letter in enumerate(letters):
            remaining = letters[:i] + letters[i + 1:]
            terms.append(
                ((MoorWord(w.lead, SymWord.of(remaining)), MoorWord(letter)), coeff))
    return Element(terms)


def check_compatibility(x: PermElem, y: PermElem) -> bool:
    """The three-term coproduct/product compatibility, checked exactly.

    Delta(x |> y) = (x_(1) |> y) (x) x_(2) + (x |> y_(1)) (x) y_(2)
                    + (x |> r(y)) (x) l(y)

    Raises for pairs where the product itself is undefined.
    """
    lhs = coproduct(perm_mul(x, y))
    rhs = Element.zero()
    for (a, b), coeff in coproduct(x).items():
        product = perm_mul(PermElem.from_word(a), y)
        rhs = rhs + coeff * tensor(product.body, Element.term(b))
    for (a, b), coeff in coproduct(y).items():
        product = perm_mul(x, PermElem.from_word(a))
        rhs = rhs + coeff * tensor(product.body, Element.term(b))
    third = perm_mul(x, right_map(y))
    if third.unit:
        raise RuntimeError(f"tail-average term has a unit part for x={x!r} y={y!r}")
    rhs = rhs + tensor(third.body, left_map(y).body)
    return lhs == rhs


def check_axioms(
    triples: Sequence[tuple[PermElem, PermElem, PermElem]],
    multiply: Callable[[PermElem, PermElem], PermElem] = perm_mul,
) -> Report:
    """Associativity and tail-exchange symmetry over the supplied triples.

    Triples whose products are undefined (unit in a left slot) are skipped
    and counted; the counts make silent vacuity visible in the report.
    """
    assoc_bad: list[str] = []
    symmetry_bad: list[str] = []
    checked = 0
    skipped = 0
    for x, y, z in triples:
        try:
            assoc_left = multiply(multiply(x, y), z)
            assoc_right = multiply(x, multiply(y, z))
            symmetry_other = multiply(x, multiply(z, y))
        except UndefinedPermProductError:
            skipped += 1
            continue
        checked += 1
        if assoc_left != assoc_right:
            assoc_bad.append(f"x={x!r} y={y!r} z={z!r}")
        if assoc_right != symmetry_other:
            symmetry_bad.append(f"x={x!r} y={y!r} z={z!r}")
    detail = f"{checked} checked, {skipped} undefined and skipped"
    checks = (
        Check("associativity (x|>y)|>z = x|>(y|>z)", not assoc_bad, detail=detail,
              counterexample={"cases": assoc_bad[:3]} if assoc_bad else None),
        Check("tail symmetry x|>(y|>z) = x|>(z|>y)", not symmetry_bad, detail=detail,
              counterexample={"cases": symmetry_bad[:3]} if symmetry_bad else None),
    )
    return Report(suite="perm-axioms",
                  parameters={"triples": len(triples)}, checks=checks)


def perm_basis(generators: Sequence[str], max_degree: int,
               include_unit: bool = True) -> list[PermElem]:
    """Unit (optionally) plus all basis words up to the degree bound."""
    out = [PermElem.one()] if include_unit else []
    for d in range(1, max_degree + 1):
        out.extend(PermElem.from_word(w) for w in basis_words(generators, d))
    return out
