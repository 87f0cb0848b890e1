"""The cofree Moor coalgebra on the word basis, and corecursive extension.

The cooperation removes one tail letter at a time, with coefficient 1 per
*distinct* letter:

    delta(v (x) 1) = 0
    delta(v1 (x) v2^i2 v ... v vn^in)
        = sum_k (v1 (x) ... vk^(ik-1) ...) (x) (vk (x) 1).

Iterating any Moor cooperation puts the last n slots of the n-fold result
inside the symmetric tensors, which is what lets an invariant tensor be
folded back into a word and drives ``cofree_extend``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

from .free_algebra import MoorWord, SymWord, tail_factorial
from .linalg import Element, flip
from .reports import Check, Report


class NotConnectedError(RuntimeError):
    """Iterated coproducts failed to vanish below the configured cap."""


class NotSymmetricError(ValueError):
    """Input tensor is not invariant under permuting its last slots."""


@dataclass(frozen=True)
class Coalgebra:
    """A coalgebra handle: just enough structure to iterate a cooperation."""

    name: str
    coproduct: Callable[[Element], Element]


def coproduct(x: Element) -> Element:
    """The cofree cooperation; lands in pair tensors of words."""
    def split(w: MoorWord) -> Element:
        terms = []
        for letter, _ in w.tail.runs:
            left = MoorWord(w.lead, w.tail.remove(letter))
            terms.append(((left, MoorWord(letter)), 1))
        return Element(terms)
    return x.map_basis(split)


COFREE = Coalgebra(name="cofree-word-coalgebra", coproduct=coproduct)


def coact_slot(cop: Callable[[Element], Element], tensor_elem: Element,
               slot: int = 1) -> Element:
    """Apply a cooperation to one slot (1-based) of a tensor Element and splice."""
    out = Element.zero()
    for slots, coeff in tensor_elem.items():
        if not 1 <= slot <= len(slots):
            raise ValueError(f"term {slots!r} has no slot {slot}")
        split = cop(Element.term(slots[slot - 1]))
        out = out + coeff * Element(
            [(slots[: slot - 1] + pair + slots[slot:], c)
             for pair, c in split.items()])
    return out


def _coact_first(cop: Callable[[Element], Element], tensor_elem: Element) -> Element:
    return coact_slot(cop, tensor_elem, 1)


def iterate_coproduct(handle: Coalgebra, n: int, x: Element) -> Element:
    """The n-fold coproduct (cop (x) id^(n-1)) o ... o cop; n+1 tensor slots."""
    if n < 1:
        raise ValueError(f"iteration count must be >= 1, got {n}")
    result = handle.coproduct(x)
    for _ in range(n - 1):
        result = _coact_first(handle.coproduct, result)
    return result


def last_slots_invariant(handle: Coalgebra, n: int, x: Element) -> bool:
    """Whether the n-fold coproduct of x is symmetric in its last n slots."""
    iterated = iterate_coproduct(handle, n, x)
    return all(flip(iterated, i) == iterated for i in range(2, n + 1))


def check_coalgebra_axioms(handle: Coalgebra, elements: list[Element],
                           label: str = "") -> Report:
    """Both Moor coalgebra axioms over the supplied elements.

    First axiom: coacting on the second slot of the coproduct gives 0.
    Second axiom: coacting on the first slot is symmetric in slots 2 and 3.
    """
    first_bad: list[str] = []
    second_bad: list[str] = []
    for x in elements:
        once = handle.coproduct(x)
        if coact_slot(handle.coproduct, once, 2):
            first_bad.append(repr(x))
        twice = coact_slot(handle.coproduct, once, 1)
        if twice != flip(twice, 2):
            second_bad.append(repr(x))
    prefix = f"{label}: " if label else ""
    checks = (
        Check(f"{prefix}(id x cop)cop = 0", not first_bad,
              detail=f"{len(elements)} elements",
              counterexample={"cases": first_bad[:3]} if first_bad else None),
        Check(f"{prefix}(cop x id)cop is slot-2/3 symmetric", not second_bad,
              detail=f"{len(elements)} elements",
              counterexample={"cases": second_bad[:3]} if second_bad else None),
    )
    return Report(suite="coalgebra-axioms",
                  parameters={"coalgebra": handle.name}, checks=checks)


def symmetrize(x: Element, n: int) -> Element:
    """Embed words with tail size n as sums over all n! tail orderings.

    Repeated letters give repeated tuples, which accumulate as integer
    coefficients: ``v (x) a v a`` becomes ``2 (v, a, a)``.
    """
    def embed(w: MoorWord) -> Element:
        if w.tail.size != n:
            raise ValueError(f"word {w} has tail size {w.tail.size}, expected {n}")
        terms = [((w.lead,) + perm, 1)
                 for perm in itertools.permutations(w.tail.letters())]
        return Element(terms)

    return x.map_basis(embed)


def _check_symmetric(tensor_elem: Element) -> None:
    for slots, _ in tensor_elem.items():
        width = len(slots)
        break
    else:
        return
    for i in range(2, width):
        flipped = flip(tensor_elem, i)
        if flipped != tensor_elem:
            for slots, coeff in (tensor_elem - flipped).items():
                shown = " (x) ".join(str(slot) for slot in slots)
                raise NotSymmetricError(
                    f"not invariant under exchanging slots {i} and {i + 1}: "
                    f"term {shown} differs by {coeff}")


def _slot_symbol(slot) -> str:
    """A tensor slot as a bare generator symbol; degree-1 words unwrap."""
    if isinstance(slot, str):
        return slot
    if isinstance(slot, MoorWord) and not slot.tail.runs:
        return slot.lead
    raise ValueError(f"tensor slot {slot!r} is not a generator or degree-1 word")


def _fold_representatives(tensor_elem: Element, divide: bool) -> Element:
    _check_symmetric(tensor_elem)
    terms = []
    for slots, coeff in tensor_elem.items():
        symbols = tuple(_slot_symbol(slot) for slot in slots)
        w = MoorWord(symbols[0], SymWord.of(symbols[1:]))
        if symbols != (w.lead,) + w.tail.letters():
            continue  # only the sorted representative contributes
        terms.append((w, coeff / tail_factorial(w.tail) if divide else coeff))
    return Element(terms)


def desymmetrize(tensor_elem: Element) -> Element:
    """Exact inverse of :func:`symmetrize` on invariant tensors.

    The coefficient of ``v (x) m`` is the coefficient of the sorted
    representative tuple divided by the product of multiplicity factorials;
    non-invariant input is rejected with the offending transposition named.
    Slots may be generator symbols or degree-1 words, so the output of
    :func:`iterate_coproduct` on a homogeneous element can be fed in directly.
    """
    return _fold_representatives(tensor_elem, divide=True)


def _collapse_invariant(tensor_elem: Element) -> Element:
    """Fold an invariant tensor to words by reading representative coefficients.

    Unlike :func:`desymmetrize` there is no factorial division: the inverse
    taken here is of the orbit-sum embedding (each distinct arrangement once),
    which is the normalization under which corecursive extensions are
    coalgebra morphisms.
    """
    return _fold_representatives(tensor_elem, divide=False)


def cofree_extend(handle: Coalgebra,
                  f: Callable[[Element], Element],
                  x: Element,
                  cap: int = 64) -> Element:
    """Corecursive extension of ``f`` against the cofree word coalgebra.

    ``f`` must map into combinations of degree-1 words.  The result is
    ``f(x)`` plus, for each n >= 1, the word collapse of ``f`` applied
    slotwise to the n-fold coproduct of ``x``.  The loop stops when the
    iterated coproduct vanishes; hitting ``cap`` first raises
    :class:`NotConnectedError` rather than truncating.
    """
    def f_on_slot(value) -> Element:
        image = f(Element.term(value))
        for iw, _ in image.items():
            if iw.tail.runs:
                raise ValueError(f"slot map returned {iw}, not a degree-1 word")
        return image

    def map_slots(tensor_elem: Element) -> Element:
        out = Element.zero()
        for slots, coeff in tensor_elem.items():
            expanded = [((), coeff)]
            for slot in slots:
                image = f_on_slot(slot)
                expanded = [(prefix + (iw.lead,), c * ic)
                            for prefix, c in expanded
                            for iw, ic in image.items()]
            out = out + Element(expanded)
        return out

    total = f(x)
    current = handle.coproduct(x)
    n = 1
    while current:
        if n > cap:
            raise NotConnectedError(
                f"coproduct of {handle.name} did not vanish after {cap} iterations")
        total = total + _collapse_invariant(map_slots(current))
        current = _coact_first(handle.coproduct, current)
        n += 1
    return total
