"""Moor bialgebras: the free coproduct, compatibility, rigidity and decomposition.

The free bialgebra lives on the same word basis as the free algebra; its
coproduct removes one tail letter with its multiplicity as coefficient:

    Delta(v (x) 1) = 0
    Delta(v1 (x) v2^i2 v ... v vn^in)
        = sum_k ik * (v1 (x) ... vk^(ik-1) ...) (x) (vk (x) 1).

``free_to_cofree`` is the graded isomorphism that scales each word by the
product of its tail multiplicity factorials; it intertwines this coproduct
with the cofree cooperation.  Connected instances decompose rigidly: the
corecursive extension of the degree-1 projection composed with the algebra
map from the free algebra on the primitives equals exactly that isomorphism,
which is what makes comb decomposition well defined.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from . import cofree
from .cofree import Coalgebra, NotConnectedError, coact_slot
from .free_algebra import (
    Element,
    MoorWord,
    basis_words,
    evaluate_comb,
    moor_mul,
    substitute_generators,
    tail_factorial,
)
from .linalg import (
    basis_key,
    elements_matrix,
    flip,
    map_slots,
    matrix_rank,
    memoize_bilinear,
    memoize_linear,
    nullspace,
    tensor,
)
from .reports import Check, Report


def coproduct(x: Element) -> Element:
    """The free-bialgebra coproduct, multiplicity coefficients included."""
    def split(w: MoorWord) -> Element:
        terms = []
        for letter, mult in w.tail.runs:
            left = MoorWord(w.lead, w.tail.remove(letter))
            terms.append(((left, MoorWord(letter)), mult))
        return Element(terms)
    return x.map_basis(split)


def project_degree_one(x: Element) -> Element:
    """Projection onto the degree-1 slice, killing every word with a tail."""
    return Element([(w, c) for w, c in x.items() if not w.tail.runs])


def free_to_cofree(x: Element) -> Element:
    """Scale each word by the product of its tail multiplicity factorials."""
    return Element([(w, c * tail_factorial(w.tail)) for w, c in x.items()])


def cofree_to_free(x: Element) -> Element:
    """Inverse of :func:`free_to_cofree`."""
    return Element([(w, c / tail_factorial(w.tail)) for w, c in x.items()])


@dataclass(frozen=True)
class BialgebraInstance:
    """A concrete Moor bialgebra on the word basis.

    ``multiply``/``coproduct``/``project`` are total on Elements; the basis
    enumerator fixes the graded slices used by the rank checks.  The
    iteration cap bounds coproduct iteration so non-connected input errors
    out instead of looping.
    """

    name: str
    generators: tuple[str, ...]
    multiply: Callable[[Element, Element], Element]
    coproduct: Callable[[Element], Element]
    project: Callable[[Element], Element]
    basis_of_degree: Callable[[int], list[MoorWord]]
    iteration_cap: int = 64

    def coalgebra(self) -> Coalgebra:
        return Coalgebra(name=self.name, coproduct=self.coproduct)


def free_instance(generators: Sequence[str]) -> BialgebraInstance:
    gens = tuple(sorted(generators))
    return BialgebraInstance(
        name=f"free({','.join(gens)})",
        generators=gens,
        multiply=moor_mul,
        coproduct=coproduct,
        project=project_degree_one,
        basis_of_degree=lambda d: basis_words(gens, d),
    )


def unimodular_matrix(size: int, seed: int) -> list[list[int]]:
    """Seeded integer matrix with determinant +-1, built from row operations."""
    rng = random.Random(seed)
    matrix = [[1 if i == j else 0 for j in range(size)] for i in range(size)]
    for _ in range(2 * size + 4):
        op = rng.choice(("shear", "shear", "swap", "negate"))
        i = rng.randrange(size)
        if op == "shear" and size > 1:
            j = rng.choice([k for k in range(size) if k != i])
            c = rng.choice((-2, -1, 1, 2))
            matrix[i] = [a + c * b for a, b in zip(matrix[i], matrix[j])]
        elif op == "swap" and size > 1:
            j = rng.choice([k for k in range(size) if k != i])
            matrix[i], matrix[j] = matrix[j], matrix[i]
        else:
            matrix[i] = [-a for a in matrix[i]]
    return matrix


def invert_matrix(matrix: Sequence[Sequence]) -> list[list[Fraction]]:
    """Exact inverse by eliminating against the identity."""
    size = len(matrix)
    augmented = [
        [Fraction(entry) for entry in row] + [Fraction(int(i == j)) for j in range(size)]
        for i, row in enumerate(matrix)
    ]
    for col in range(size):
        pivot = next((r for r in range(col, size) if augmented[r][col]), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        augmented[col], augmented[pivot] = augmented[pivot], augmented[col]
        inv = Fraction(1, 1) / augmented[col][col]
        augmented[col] = [entry * inv for entry in augmented[col]]
        for r in range(size):
            if r != col and augmented[r][col]:
                factor = augmented[r][col]
                augmented[r] = [a - factor * b
                                for a, b in zip(augmented[r], augmented[col])]
    return [row[size:] for row in augmented]


def _generator_images(generators: Sequence[str],
                      matrix: Sequence[Sequence]) -> dict[str, Element]:
    images = {}
    for j, source in enumerate(generators):
        images[source] = Element(
            [(MoorWord(target), Fraction(matrix[i][j]))
             for i, target in enumerate(generators) if matrix[i][j]])
    return images


def relabeled_instance(generators: Sequence[str], seed: int) -> BialgebraInstance:
    """The free structure conjugated by a seeded unimodular change of letters.

    All structure maps are computed the long way round (substitute the
    inverse letters, apply the free map, substitute back), so validating the
    result exercises the substitution machinery rather than the free maps.
    """
    gens = tuple(sorted(generators))
    matrix = unimodular_matrix(len(gens), seed)
    forward = _generator_images(gens, matrix)
    backward = _generator_images(gens, invert_matrix(matrix))
    fwd = memoize_linear(lambda x: substitute_generators(forward, x))
    bwd = memoize_linear(lambda x: substitute_generators(backward, x))
    fwd_pair = memoize_linear(
        lambda t: map_slots(lambda w: fwd(Element.term(w)), t))

    def multiply(x: Element, y: Element) -> Element:
        return fwd(moor_mul(bwd(x), bwd(y)))

    def conjugated_coproduct(x: Element) -> Element:
        return fwd_pair(coproduct(bwd(x)))

    return BialgebraInstance(
        name=f"relabeled({','.join(gens)};seed={seed})",
        generators=gens,
        multiply=memoize_bilinear(multiply),
        coproduct=memoize_linear(conjugated_coproduct),
        project=project_degree_one,
        basis_of_degree=lambda d: basis_words(gens, d),
    )


def check_compatibility(x: Element, y: Element,
                        instance: BialgebraInstance | None = None) -> bool:
    """Whether Delta(x < y) = x (x) e(y) + (x_(1) < y) (x) x_(2) holds exactly."""
    mul = instance.multiply if instance else moor_mul
    cop = instance.coproduct if instance else coproduct
    project = instance.project if instance else project_degree_one
    lhs = cop(mul(x, y))
    rhs = tensor(x, project(y))
    for (a, b), coeff in cop(x).items():
        rhs = rhs + coeff * tensor(mul(Element.term(a), y), Element.term(b))
    return lhs == rhs


def validate_instance(inst: BialgebraInstance, max_degree: int = 3) -> Report:
    """Moor relations, coalgebra axioms and compatibility on graded basis words."""
    words = []
    for d in range(1, max_degree + 1):
        words.extend(inst.basis_of_degree(d))

    relation_bad: list[str] = []
    for x in words:
        for y in words:
            for z in words:
                if x.degree + y.degree + z.degree > max_degree + 2:
                    continue
                xe, ye, ze = (Element.term(w) for w in (x, y, z))
                if inst.multiply(inst.multiply(xe, ye), ze) != \
                        inst.multiply(inst.multiply(xe, ze), ye):
                    relation_bad.append(f"({x},{y},{z}) right-commutativity")
                if inst.multiply(xe, inst.multiply(ye, ze)):
                    relation_bad.append(f"({x},{y},{z}) left-annihilation")

    axiom_bad: list[str] = []
    for w in words:
        once = inst.coproduct(Element.term(w))
        if coact_slot(inst.coproduct, once, 2):
            axiom_bad.append(f"(id x Delta)Delta != 0 at {w}")
        twice = coact_slot(inst.coproduct, once, 1)
        if twice != flip(twice, 2):
            axiom_bad.append(f"(Delta x id)Delta not slot-2/3 symmetric at {w}")

    compat_bad: list[str] = []
    for x in words:
        for y in words:
            if x.degree + y.degree > max_degree + 1:
                continue
            if not check_compatibility(Element.term(x), Element.term(y), inst):
                compat_bad.append(f"({x},{y})")

    checks = (
        Check("multiplication satisfies the Moor relations", not relation_bad,
              detail=f"{len(words)} basis words",
              counterexample={"cases": relation_bad[:3]} if relation_bad else None),
        Check("coproduct satisfies the Moor coalgebra axioms", not axiom_bad,
              counterexample={"cases": axiom_bad[:3]} if axiom_bad else None),
        Check("multiplication/coproduct compatibility", not compat_bad,
              counterexample={"cases": compat_bad[:3]} if compat_bad else None),
    )
    return Report(suite="instance-validation",
                  parameters={"instance": inst.name, "max_degree": max_degree},
                  checks=checks)


def filtration_level(inst: BialgebraInstance, x: Element) -> int:
    """Least r with the r-fold coproduct of x vanishing; primitives sit at 1."""
    if not x:
        raise ValueError("the zero element has no filtration level")
    level = 1
    current = inst.coproduct(x)
    while current:
        level += 1
        if level > inst.iteration_cap:
            raise NotConnectedError(
                f"{inst.name}: not connected at cap {inst.iteration_cap}")
        current = coact_slot(inst.coproduct, current, 1)
    return level


def primitive_space(inst: BialgebraInstance, max_degree: int) -> list[Element]:
    """Canonical basis of the coproduct kernel, degree slice by degree slice."""
    result: list[Element] = []
    for d in range(1, max_degree + 1):
        slice_words = inst.basis_of_degree(d)
        if not slice_words:
            continue
        images = [inst.coproduct(Element.term(w)) for w in slice_words]
        pair_basis = sorted({b for image in images for b, _ in image.items()},
                            key=basis_key)
        rows = [[images[j].coeff(pair) for j in range(len(slice_words))]
                for pair in pair_basis]
        for vector in nullspace(rows, len(slice_words)):
            result.append(Element(
                [(w, c) for w, c in zip(slice_words, vector) if c]))
    return result


def cofree_extension(inst: BialgebraInstance, x: Element) -> Element:
    """Corecursive extension of the instance's degree-1 projection."""
    return cofree.cofree_extend(inst.coalgebra(), inst.project, x,
                                cap=inst.iteration_cap)


@dataclass(frozen=True)
class CombDecomposition:
    """An element written as combs of primitives.

    Each part is ``(coefficient, lead, tail)`` with lead and tail entries
    primitive Elements; re-evaluating all parts through the originating
    instance's multiplication reproduces the decomposed element exactly.
    """

    parts: tuple[tuple[Fraction, Element, tuple[Element, ...]], ...]

    def evaluate(self, multiply: Callable[[Element, Element], Element]) -> Element:
        total = Element.zero()
        for coeff, lead, tail in self.parts:
            total = total + coeff * evaluate_comb(multiply, lead, tail)
        return total


def comb_decompose(inst: BialgebraInstance, x: Element) -> CombDecomposition:
    """Decompose ``x`` into combs of primitives via the corecursive extension."""
    reduced = cofree_to_free(cofree_extension(inst, x))
    parts = []
    for w, coeff in reduced.items():
        lead = Element.term(MoorWord(w.lead))
        tail = tuple(Element.term(MoorWord(letter)) for letter in w.tail.letters())
        parts.append((coeff, lead, tail))
    decomposition = CombDecomposition(parts=tuple(parts))
    if decomposition.evaluate(inst.multiply) != x:
        raise RuntimeError(f"comb decomposition of {x!r} failed to re-evaluate")
    return decomposition


def _slice_rank(vectors: list[Element], ambient: list[MoorWord]) -> int:
    if not ambient:
        return 0
    return matrix_rank(elements_matrix(vectors, ambient))


def rigidity_check(inst: BialgebraInstance, max_degree: int) -> Report:
    """Full-rank and identity checks for the rigid decomposition maps.

    Verifies that the algebra map from the free algebra on the primitives
    into the instance and the corecursive extension back out are bijective
    slice by slice, and that their composite is exactly the factorial
    isomorphism.
    """
    checks: list[Check] = []

    degree_one = inst.basis_of_degree(1)
    primitives = primitive_space(inst, 1)
    checks.append(Check(
        "primitives span the degree-1 slice",
        _slice_rank(primitives, degree_one) == len(degree_one),
        detail=f"{len(primitives)} primitive basis elements"))

    def include(w: MoorWord) -> Element:
        return evaluate_comb(
            inst.multiply,
            Element.term(MoorWord(w.lead)),
            (Element.term(MoorWord(letter)) for letter in w.tail.letters()))

    identity_bad: list[dict] = []
    for d in range(1, max_degree + 1):
        slice_words = inst.basis_of_degree(d)
        into = [include(w) for w in slice_words]
        checks.append(Check(
            f"free-to-instance map has full rank in degree {d}",
            _slice_rank(into, slice_words) == len(slice_words),
            detail=f"slice dimension {len(slice_words)}"))
        out = [cofree_extension(inst, Element.term(w)) for w in slice_words]
        checks.append(Check(
            f"instance-to-cofree map has full rank in degree {d}",
            _slice_rank(out, slice_words) == len(slice_words),
            detail=f"slice dimension {len(slice_words)}"))
        for w, image in zip(slice_words, into):
            if cofree_extension(inst, image) != free_to_cofree(Element.term(w)):
                identity_bad.append({"comb": str(w)})

    total = sum(len(inst.basis_of_degree(d)) for d in range(1, max_degree + 1))
    checks.append(Check(
        "extension of the primitive projection composes to the factorial isomorphism",
        not identity_bad,
        detail=f"{total} basis combs up to degree {max_degree}",
        counterexample={"cases": identity_bad[:3]} if identity_bad else None))

    return Report(suite="rigidity",
                  parameters={"instance": inst.name, "max_degree": max_degree},
                  checks=tuple(checks))


def check_primitive_action(inst: BialgebraInstance, max_degree: int) -> Report:
    """Right action of the instance on its primitives.

    For primitive p: multiplying by anything of degree >= 2 stays inside the
    coproduct kernel, and in general Delta(p < h) collapses to p (x) e(h).
    """
    words = []
    for d in range(1, max_degree + 1):
        words.extend(inst.basis_of_degree(d))
    primitives = primitive_space(inst, 1)

    stay_primitive_bad: list[str] = []
    collapse_bad: list[str] = []
    for p in primitives:
        for h in words:
            he = Element.term(h)
            product = inst.multiply(p, he)
            if h.degree >= 2 and inst.coproduct(product):
                stay_primitive_bad.append(f"p={p!r} h={h}")
            if inst.coproduct(product) != tensor(p, inst.project(he)):
                collapse_bad.append(f"p={p!r} h={h}")

    checks = (
        Check("primitive < (degree >= 2) stays primitive", not stay_primitive_bad,
              counterexample={"cases": stay_primitive_bad[:3]}
              if stay_primitive_bad else None),
        Check("Delta(p < h) = p (x) e(h) for primitive p", not collapse_bad,
              counterexample={"cases": collapse_bad[:3]} if collapse_bad else None),
    )
    return Report(suite="primitive-action",
                  parameters={"instance": inst.name, "max_degree": max_degree},
                  checks=checks)
