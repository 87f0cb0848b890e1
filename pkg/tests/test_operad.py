from collections import deque

import pytest

from moorlab.free_algebra import moor_mul, word
from moorlab.linalg import Element, annihilator, same_span, span_rank
from moorlab.operad import (
    ARITY_CAP,
    LEAF,
    CalibrationError,
    TreeOp,
    calibrate_negated_shape,
    catalan,
    enumerate_shapes,
    enumerate_treeops,
    evaluate_treeop,
    from_labeled,
    generating_series_check,
    gk_pairing,
    has_dead_site,
    koszul_dual_check,
    labeled_tree,
    leaf_count,
    left_comb_shape,
    moor_dim,
    moor_normal_form,
    parse_shape,
    relation_space,
    rewrite_neighbors,
    shape_string,
)

LEFT3 = left_comb_shape(3)
RIGHT3 = (LEAF, (LEAF, LEAF))


# ---------------------------------------------------------------------------
# shapes and labeled trees
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("text", ["x", "(xx)", "((xx)x)", "(x(xx))",
                                  "((xx)(xx))"])
def test_shape_string_round_trip(text):
    assert shape_string(parse_shape(text)) == text


@pytest.mark.parametrize("text, message", [
    ("", "unexpected end"),
    ("(x", "unexpected end"),
    ("y", "bad character"),
    ("(xy)", "bad character"),
    ("(xx))", "trailing characters"),
    ("(xxx)", r"missing '\)'"),
])
def test_parse_shape_errors(text, message):
    with pytest.raises(ValueError, match=message):
        parse_shape(text)


@pytest.mark.parametrize("n", range(1, 7))
def test_shape_counts_are_catalan(n):
    shapes = enumerate_shapes(n)
    assert len(shapes) == catalan(n - 1)
    assert all(leaf_count(s) == n for s in shapes)


def test_left_comb_shape():
    assert left_comb_shape(1) == LEAF
    assert left_comb_shape(3) == ((LEAF, LEAF), LEAF)
    assert shape_string(left_comb_shape(4)) == "(((xx)x)x)"


def test_treeop_rejects_bad_labels():
    with pytest.raises(ValueError):
        TreeOp(LEFT3, (1, 2))
    with pytest.raises(ValueError):
        TreeOp(LEFT3, (1, 2, 2))
    with pytest.raises(ValueError):
        TreeOp(LEFT3, (0, 1, 2))


@pytest.mark.parametrize("n, count", [(1, 1), (2, 2), (3, 12), (4, 120)])
def test_treeop_counts(n, count):
    ops = enumerate_treeops(n)
    assert len(ops) == count
    assert ops == sorted(ops, key=lambda t: t.sort_key())


def test_enumeration_cap():
    with pytest.raises(ValueError):
        enumerate_treeops(ARITY_CAP + 1)


def test_labeled_tree_round_trip():
    for op in enumerate_treeops(4)[::7]:
        assert from_labeled(labeled_tree(op)) == op


# ---------------------------------------------------------------------------
# rewriting
# ---------------------------------------------------------------------------

def test_dead_sites():
    assert has_dead_site(RIGHT3)
    assert not has_dead_site(LEFT3)
    assert not has_dead_site(LEAF)
    assert has_dead_site((LEAF, ((LEAF, LEAF), LEAF)))


def test_normal_form_of_left_comb_sorts_the_tail():
    op = TreeOp(LEFT3, (2, 3, 1))
    assert moor_normal_form(op) == Element.term(TreeOp(LEFT3, (2, 1, 3)))
    already = TreeOp(LEFT3, (1, 2, 3))
    assert moor_normal_form(already) == Element.term(already)


def test_normal_form_kills_dead_trees():
    assert moor_normal_form(TreeOp(RIGHT3, (1, 2, 3))) == Element.zero()
    mixed = TreeOp((LEFT3, (LEAF, LEAF)), tuple(range(1, 6)))
    assert moor_normal_form(mixed) == Element.zero()


def test_rewrite_neighbors_swap_the_last_two_arguments():
    op = TreeOp(LEFT3, (1, 2, 3))
    assert rewrite_neighbors(op) == [TreeOp(LEFT3, (1, 3, 2))]
    assert rewrite_neighbors(TreeOp(RIGHT3, (1, 2, 3))) == []


def _rewrite_class(op):
    seen = {op}
    queue = deque([op])
    while queue:
        for neighbor in rewrite_neighbors(queue.popleft()):
            if neighbor not in seen:
                seen.add(neighbor)
                queue.append(neighbor)
    return seen


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_rewriting_is_confluent(n):
    # Every operation reachable by exchange moves must share one normal
    # form, and exchanges never cross between dead and live trees.
    for op in enumerate_treeops(n):
        normal = moor_normal_form(op)
        for member in _rewrite_class(op):
            assert moor_normal_form(member) == normal


def test_left_comb_classes_have_full_exchange_orbit():
    op = TreeOp(left_comb_shape(4), (1, 2, 3, 4))
    # head fixed, all 3! tail orders reachable
    assert len(_rewrite_class(op)) == 6


@pytest.mark.parametrize("n", range(1, 7))
def test_moor_dimensions(n):
    assert moor_dim(n) == n


def test_generating_series_report():
    report = generating_series_check(5)
    assert report.passed, report.to_human()


# ---------------------------------------------------------------------------
# relation spaces and the pairing
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("preset, rank, spanning_count", [
    ("nap", 3, 6),
    ("moor", 9, 12),
    ("ass", 6, 6),
])
def test_relation_space_ranks(preset, rank, spanning_count):
    space = relation_space(preset)
    assert space.rank == rank
    assert len(space.spanning) == spanning_count
    assert span_rank(list(space.spanning)) == rank


def test_relation_space_rejects_unknown_presets():
    with pytest.raises(ValueError):
        relation_space("lie")


def test_pairing_anchor_values():
    identity_comb = TreeOp(LEFT3, (1, 2, 3))
    assert gk_pairing(identity_comb, identity_comb) == 1
    right = TreeOp(RIGHT3, (1, 2, 3))
    assert gk_pairing(right, right) == -1
    swapped = TreeOp(LEFT3, (2, 1, 3))
    assert gk_pairing(swapped, swapped) == -1
    assert gk_pairing(identity_comb, swapped) == 0
    assert gk_pairing(identity_comb, right) == 0


def test_calibration_negates_the_right_comb():
    assert calibrate_negated_shape() == RIGHT3


def test_koszul_dual_check_passes():
    report = koszul_dual_check()
    assert report.passed, report.to_human()
    assert report.parameters["negated_shape"] == "(x(xx))"
    assert report.exit_code == 0


def _corrupt_sign(s, t, negated_shape):
    value = gk_pairing(s, t, negated_shape)
    if s.shape == LEFT3 and s.labels == (1, 2, 3) and s == t:
        return -value
    return value


def _corrupt_coefficient(s, t, negated_shape):
    value = gk_pairing(s, t, negated_shape)
    if s.shape == LEFT3 and s.labels == (1, 2, 3) and s == t:
        return 2 * value
    return value


@pytest.mark.parametrize("corrupted", [_corrupt_sign, _corrupt_coefficient],
                         ids=["sign", "coefficient"])
def test_corrupted_pairings_fail_the_suite(corrupted):
    with pytest.raises(CalibrationError):
        calibrate_negated_shape(corrupted)
    report = koszul_dual_check(corrupted)
    assert not report.passed
    assert report.exit_code == 1
    assert not report.checks[0].passed


@pytest.mark.parametrize("corrupted", [_corrupt_sign, _corrupt_coefficient],
                         ids=["sign", "coefficient"])
def test_corrupted_pairings_break_the_annihilator(corrupted):
    # Pin the sign placement so the corruption reaches the annihilator
    # computation instead of stopping at calibration.
    ambient = enumerate_treeops(3)
    nap = relation_space("nap")
    moor = relation_space("moor")
    pairing = lambda s, t: corrupted(s, t, RIGHT3)
    assert not same_span(annihilator(nap.spanning, ambient, pairing),
                         moor.reduced)


def test_both_sign_placements_calibrate():
    for shape in (RIGHT3, LEFT3):
        pairing = lambda s, t: gk_pairing(s, t, shape)
        ass = relation_space("ass")
        assert same_span(annihilator(ass.spanning, enumerate_treeops(3), pairing),
                         ass.reduced)


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

def test_evaluate_treeop_on_words():
    leaves = {1: word("a"), 2: word("b"), 3: word("c")}
    comb = TreeOp(LEFT3, (1, 2, 3))
    assert evaluate_treeop(comb, leaves, moor_mul) == word("a", "b", "c")
    assert evaluate_treeop(TreeOp(LEFT3, (2, 1, 3)), leaves, moor_mul) \
        == word("b", "a", "c")
    assert evaluate_treeop(TreeOp(RIGHT3, (1, 2, 3)), leaves, moor_mul) \
        == Element.zero()
