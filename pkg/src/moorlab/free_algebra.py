"""The free Moor algebra on a set of generator symbols.

The carrier has basis words ``lead (x) tail`` where ``lead`` is a generator
and ``tail`` is a finite multiset of generators.  The product grafts the
right factor's lead onto the left factor's tail and kills anything whose
right factor has a nonempty tail:

    (v (x) w) < (v' (x) w')  =  v (x) (w v v')   if w' is empty, else 0.

Left combs ``((p1 < p2) < p3) < ...`` therefore exhaust the basis, which is
what the rest of the package leans on.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

from .linalg import Element
from .reports import Check, Report


@dataclass(frozen=True)
class SymWord:
    """A multiset of generator symbols, stored run-length encoded and sorted."""

    runs: tuple[tuple[str, int], ...] = ()

    @classmethod
    def of(cls, letters: Iterable[str]) -> "SymWord":
        counts: dict[str, int] = {}
        for letter in letters:
            counts[letter] = counts.get(letter, 0) + 1
        return cls(tuple(sorted(counts.items())))

    @property
    def size(self) -> int:
        return sum(mult for _, mult in self.runs)

    def letters(self) -> tuple[str, ...]:
        out: list[str] = []
        for letter, mult in self.runs:
            out.extend([letter] * mult)
        return tuple(out)

    def multiplicity(self, letter: str) -> int:
        for candidate, mult in self.runs:
            if candidate == letter:
                return mult
        return 0

    def add(self, letter: str) -> "SymWord":
        return SymWord.of(self.letters() + (letter,))

    def remove(self, letter: str) -> "SymWord":
        if not self.multiplicity(letter):
            raise ValueError(f"letter {letter!r} not present in {self}")
        out = []
        for candidate, mult in self.runs:
            if candidate == letter:
                mult -= 1
            if mult:
                out.append((candidate, mult))
        return SymWord(tuple(out))

    def union(self, other: "SymWord") -> "SymWord":
        return SymWord.of(self.letters() + other.letters())

    def sort_key(self):
        return self.letters()

    def __str__(self) -> str:
        return ",".join(self.letters()) if self.runs else "1"


EMPTY = SymWord()


@dataclass(frozen=True)
class MoorWord:
    """Basis word of the free Moor algebra: a lead generator and a tail multiset."""

    lead: str
    tail: SymWord = EMPTY

    @property
    def degree(self) -> int:
        return 1 + self.tail.size

    def sort_key(self):
        return (self.lead, self.tail.letters())

    def __str__(self) -> str:
        if not self.tail.runs:
            return self.lead
        return f"{self.lead}[{self.tail}]"


def word(lead: str, *tail_letters: str) -> Element:
    """Basis word as an Element, e.g. ``word('v', 'w', 'w')``."""
    return Element.term(MoorWord(lead, SymWord.of(tail_letters)))


def tail_factorial(tail: SymWord) -> int:
    """Product of the factorials of the tail multiplicities."""
    factor = 1
    for _, mult in tail.runs:
        factor *= math.factorial(mult)
    return factor


def degree(w: MoorWord) -> int:
    return w.degree


def symbols_of(x: Element) -> tuple[str, ...]:
    """Sorted distinct generator symbols appearing anywhere in an element."""
    seen: set[str] = set()
    for w, _ in x.items():
        seen.add(w.lead)
        seen.update(letter for letter, _ in w.tail.runs)
    return tuple(sorted(seen))


def basis_words(generators: Sequence[str], deg: int) -> list[MoorWord]:
    """All basis words of the exact degree, in canonical order."""
    if deg < 1:
        return []
    out = []
    for lead in sorted(generators):
        for combo in itertools.combinations_with_replacement(sorted(generators), deg - 1):
            out.append(MoorWord(lead, SymWord.of(combo)))
    return sorted(out, key=lambda w: w.sort_key())


def moor_mul(left: Element, right: Element) -> Element:
    """The bilinear Moor product on word Elements."""
    terms = []
    for lw, lc in left.items():
        for rw, rc in right.items():
            if rw.tail.runs:
                continue
            terms.append((MoorWord(lw.lead, lw.tail.add(rw.lead)), lc * rc))
    return Element(terms)


def comb(lead: str, tail_letters: Iterable[str]) -> Element:
    """Left comb of degree-1 words, folded through the product left to right."""
    result = word(lead)
    for letter in tail_letters:
        result = moor_mul(result, word(letter))
    return result


def evaluate_comb(multiply: Callable[[Element, Element], Element],
                  lead: Element, tail: Iterable[Element]) -> Element:
    """Left comb of arbitrary elements under a supplied multiplication."""
    result = lead
    for entry in tail:
        result = multiply(result, entry)
    return result


def universal_extend(images: Mapping[str, Element] | Callable[[str], Element],
                     multiply: Callable[[Element, Element], Element],
                     x: Element) -> Element:
    """Algebra-map extension of a generator assignment into any Moor algebra.

    Each word ``v (x) v1 v ... v vp`` goes to the left comb of the generator
    images, the tail consumed in canonical sorted order.  In a genuine Moor
    algebra right-commutativity makes the order immaterial.
    """
    if not callable(images):
        mapping = images
        images = lambda g: mapping[g]

    def extend_word(w: MoorWord) -> Element:
        return evaluate_comb(multiply, images(w.lead),
                             (images(letter) for letter in w.tail.letters()))

    return x.map_basis(extend_word)


def substitute_generators(images: Mapping[str, Element], x: Element) -> Element:
    """Multilinear letter substitution, the map induced by ``V -> V`` on words.

    Every image must be a combination of degree-1 words.  Coincides with
    ``universal_extend`` into the free algebra itself; kept separate because
    relabeled bialgebra instances call it in inner loops.
    """
    for generator, image in images.items():
        for iw, _ in image.items():
            if iw.tail.runs:
                raise ValueError(
                    f"image of {generator!r} contains {iw}, not a degree-1 word")

    def substitute_word(w: MoorWord) -> Element:
        expansions = [(MoorWord(lw.lead), lc) for lw, lc in images[w.lead].items()]
        for letter in w.tail.letters():
            grown = []
            for partial, coeff in expansions:
                for iw, ic in images[letter].items():
                    grown.append((MoorWord(partial.lead, partial.tail.add(iw.lead)),
                                  coeff * ic))
            expansions = grown
        return Element(expansions)

    return x.map_basis(substitute_word)


def check_moor_axioms(triples: Sequence[tuple[Element, Element, Element]]) -> Report:
    """Right-commutativity and left-annihilation over the supplied triples."""
    right_comm_bad: list[str] = []
    left_ann_bad: list[str] = []
    for x, y, z in triples:
        lhs = moor_mul(moor_mul(x, y), z)
        rhs = moor_mul(moor_mul(x, z), y)
        if lhs != rhs:
            right_comm_bad.append(f"x={x!r} y={y!r} z={z!r}")
        if moor_mul(x, moor_mul(y, z)):
            left_ann_bad.append(f"x={x!r} y={y!r} z={z!r}")
    checks = (
        Check(
            name="right-commutativity (x<y)<z = (x<z)<y",
            passed=not right_comm_bad,
            detail=f"{len(triples)} triples",
            counterexample={"triples": right_comm_bad[:3]} if right_comm_bad else None,
        ),
        Check(
            name="left-annihilation x<(y<z) = 0",
            passed=not left_ann_bad,
            detail=f"{len(triples)} triples",
            counterexample={"triples": left_ann_bad[:3]} if left_ann_bad else None,
        ),
    )
    return Report(suite="moor-axioms", parameters={"triples": len(triples)}, checks=checks)
