"""Hypothesis strategies shared across the test modules."""
from fractions import Fraction

import hypothesis.strategies as st

from moorlab.free_algebra import MoorWord, SymWord
from moorlab.linalg import Element

GENERATORS = ("a", "b", "c")

letters = st.sampled_from(GENERATORS)

coefficients = st.fractions(
    min_value=Fraction(-4), max_value=Fraction(4), max_denominator=4)

nonzero_coefficients = coefficients.filter(bool)


@st.composite
def moor_words(draw, max_tail=3, tail_size=None):
    lead = draw(letters)
    if tail_size is None:
        tail = draw(st.lists(letters, max_size=max_tail))
    else:
        tail = draw(st.lists(letters, min_size=tail_size, max_size=tail_size))
    return MoorWord(lead, SymWord.of(tail))


@st.composite
def elements(draw, max_terms=4, max_tail=3, tail_size=None):
    terms = draw(st.lists(
        st.tuples(moor_words(max_tail=max_tail, tail_size=tail_size), coefficients),
        max_size=max_terms))
    return Element(terms)
