import pytest
from hypothesis import given
import hypothesis.strategies as st

from moorlab import bialgebra
from moorlab.cofree import (
    COFREE,
    Coalgebra,
    NotConnectedError,
    NotSymmetricError,
    check_coalgebra_axioms,
    coact_slot,
    cofree_extend,
    coproduct,
    desymmetrize,
    iterate_coproduct,
    last_slots_invariant,
    symmetrize,
)
from moorlab.free_algebra import basis_words, substitute_generators, word
from moorlab.linalg import Element, tensor
from strategies import GENERATORS, elements, moor_words

FREE = bialgebra.free_instance(GENERATORS)
DELTA = FREE.coalgebra()


# ---------------------------------------------------------------------------
# the cooperation
# ---------------------------------------------------------------------------

def test_cooperation_kills_degree_one():
    assert coproduct(word("a")) == Element.zero()


def test_cooperation_removes_each_distinct_letter_once():
    assert coproduct(word("a", "b")) == tensor(word("a"), word("b"))
    assert coproduct(word("a", "b", "b")) == tensor(word("a", "b"), word("b"))
    assert coproduct(word("a", "b", "c")) \
        == tensor(word("a", "c"), word("b")) + tensor(word("a", "b"), word("c"))


def test_coact_slot_splices_pairs():
    pair = tensor(word("a", "b"), word("c"))
    spliced = coact_slot(coproduct, pair, 1)
    assert spliced == Element.term((
        word("a").support()[0], word("b").support()[0], word("c").support()[0]))


def test_coact_slot_out_of_range():
    with pytest.raises(ValueError):
        coact_slot(coproduct, tensor(word("a"), word("b")), 3)


def test_iterate_coproduct_requires_positive_count():
    with pytest.raises(ValueError):
        iterate_coproduct(COFREE, 0, word("a"))


def test_iterated_cooperation_peels_letters():
    result = iterate_coproduct(COFREE, 2, word("a", "b", "c"))
    a, b, c = (word(g).support()[0] for g in "abc")
    assert result == Element([((a, c, b), 1), ((a, b, c), 1)])
    assert iterate_coproduct(COFREE, 2, word("a", "b", "b")) \
        == Element.term((a, b, b))


def test_iterated_free_coproduct_carries_multiplicities():
    a, b = (word(g).support()[0] for g in "ab")
    assert iterate_coproduct(DELTA, 2, word("a", "b", "b")) \
        == Element.term((a, b, b), 2)


@pytest.mark.parametrize("handle", [COFREE, DELTA], ids=["cofree", "free"])
@given(x=elements(max_terms=3, max_tail=3))
def test_last_slots_invariance(handle, x):
    for n in (2, 3):
        assert last_slots_invariant(handle, n, x)


@pytest.mark.parametrize("handle", [COFREE, DELTA], ids=["cofree", "free"])
def test_coalgebra_axioms_on_low_degrees(handle):
    words = []
    for d in range(1, 5):
        words.extend(Element.term(w) for w in basis_words(GENERATORS, d))
    report = check_coalgebra_axioms(handle, words, label="axioms")
    assert report.passed, report.to_human()


# ---------------------------------------------------------------------------
# symmetrization
# ---------------------------------------------------------------------------

def test_symmetrize_sums_all_orderings():
    assert symmetrize(word("a", "b", "c"), 2) \
        == Element([(("a", "b", "c"), 1), (("a", "c", "b"), 1)])
    assert symmetrize(word("a", "b", "b"), 2) == Element.term(("a", "b", "b"), 2)
    assert symmetrize(word("a"), 0) == Element.term(("a",))


def test_symmetrize_checks_tail_size():
    with pytest.raises(ValueError):
        symmetrize(word("a", "b"), 2)


def test_desymmetrize_inverts_symmetrize():
    for w in (word("a"), word("a", "b"), word("a", "b", "b"),
              word("c", "a", "b", "b")):
        (basis, _), = w.items()
        assert desymmetrize(symmetrize(w, basis.tail.size)) == w


@given(st.integers(min_value=0, max_value=3).flatmap(
    lambda n: elements(max_terms=3, tail_size=n)))
def test_desymmetrize_inverts_symmetrize_on_slices(x):
    sizes = {basis.tail.size for basis, _ in x.items()}
    if not sizes:
        return
    assert desymmetrize(symmetrize(x, sizes.pop())) == x


def test_desymmetrize_accepts_degree_one_word_slots():
    assert desymmetrize(tensor(word("a"), word("b"))) == word("a", "b")


def test_desymmetrize_rejects_asymmetric_tensors():
    bad = tensor(tensor(word("a"), word("b")), word("c"))
    with pytest.raises(NotSymmetricError, match="slots 2 and 3"):
        desymmetrize(bad)


def test_desymmetrize_rejects_higher_degree_slots():
    with pytest.raises(ValueError, match="degree-1"):
        desymmetrize(tensor(word("a", "b"), word("c")))


@given(moor_words(max_tail=3))
def test_iterated_free_coproduct_is_the_symmetrization(w):
    # On a word of degree n+1 the n-fold free coproduct and the formal
    # symmetrization produce the same tensor, multiplicities included.
    n = w.tail.size
    if n == 0:
        return
    iterated = iterate_coproduct(DELTA, n, Element.term(w))
    embedded = symmetrize(Element.term(w), n)
    assert desymmetrize(iterated) == Element.term(w)
    deslotted = Element([(tuple(s.lead for s in slots), c)
                         for slots, c in iterated.items()])
    assert deslotted == embedded


# ---------------------------------------------------------------------------
# corecursive extension
# ---------------------------------------------------------------------------

def test_extension_of_projection_along_cooperation_is_identity():
    for w in (word("a"), word("a", "b"), word("a", "b", "b"),
              word("a", "b", "b", "c")):
        assert cofree_extend(COFREE, FREE.project, w) == w


def test_extension_of_projection_along_free_coproduct_is_factorial():
    assert cofree_extend(DELTA, FREE.project, word("a", "b", "c")) \
        == word("a", "b", "c")
    assert cofree_extend(DELTA, FREE.project, word("a", "b", "b")) \
        == 2 * word("a", "b", "b")
    assert cofree_extend(DELTA, FREE.project, word("a", "b", "b", "b")) \
        == 6 * word("a", "b", "b", "b")


@given(elements(max_terms=3, max_tail=3))
def test_extension_agrees_with_factorial_isomorphism(x):
    assert cofree_extend(DELTA, FREE.project, x) == bialgebra.free_to_cofree(x)


@given(elements(max_terms=3, max_tail=3))
def test_projection_of_extension_recovers_the_map(x):
    extended = cofree_extend(DELTA, FREE.project, x)
    assert FREE.project(extended) == FREE.project(x)


@given(elements(max_terms=3, max_tail=2))
def test_extension_is_a_coalgebra_morphism(x):
    swap = {"a": word("b"), "b": word("a"), "c": word("c")}
    f = lambda e: substitute_generators(swap, FREE.project(e))
    extend = lambda e: cofree_extend(DELTA, f, e)
    lhs = coproduct(extend(x))
    rhs = Element.zero()
    for (left, right), coeff in DELTA.coproduct(x).items():
        rhs = rhs + coeff * tensor(extend(Element.term(left)),
                                   extend(Element.term(right)))
    assert lhs == rhs


def test_extension_rejects_slot_maps_leaving_degree_one():
    bad = lambda e: Element([(w, c) for w, c in word("a", "b").items()]) * sum(
        c for _, c in e.items())
    with pytest.raises(ValueError, match="degree-1"):
        cofree_extend(DELTA, bad, word("a", "b"))


def test_extension_raises_when_coproduct_never_vanishes():
    runaway = Coalgebra(
        name="runaway",
        coproduct=lambda x: tensor(x, word("u")))
    with pytest.raises(NotConnectedError):
        cofree_extend(runaway, FREE.project, word("a"), cap=5)
