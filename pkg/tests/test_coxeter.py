import pytest
from hypothesis import given, settings, strategies as st

from braidties.coxeter import (CoxeterError, CoxeterSystem, InfiniteGroupError, UnsupportedSystemError,
                               build_system)


@pytest.mark.parametrize("label,order,npos,w0len", [
    ("A1", 2, 1, 1), ("A2", 6, 3, 3), ("A3", 24, 6, 6), ("A4", 120, 10, 10),
    ("B2", 8, 4, 4), ("B3", 48, 9, 9), ("C3", 48, 9, 9), ("D4", 192, 12, 12),
    ("G2", 12, 6, 6), ("I2(5)", 10, 5, 5), ("I2(8)", 16, 8, 8),
])
def test_orders_and_roots(label, order, npos, w0len):
    W = build_system(label)
    assert W.order() == order
    assert len(W.positive_roots()) == npos
    assert W.longest_element().length() == w0len


def test_reduced_word_counts():
    # number of reduced words of w0: A2 2, A3 16, B3 42
    for label, count in (("A2", 2), ("A3", 16), ("B3", 42)):
        W = build_system(label)
        assert len(W.all_reduced_words(W.longest_element())) == count


def test_lex_least_reduced_word():
    W = build_system("A3")
    w = W.element("s2 s1 s2 s3")
    assert W.reduced_word(w) == (0, 1, 0, 2)
    assert W.format_word(W.reduced_word(W.longest_element())) == "s1 s2 s1 s3 s2 s1"


def test_word_problem():
    W = build_system("B3")
    assert W.element("s1 s2 s1 s2") == W.element("s2 s1 s2 s1")
    assert W.element("s1 s2 s1") != W.element("s2 s1 s2")
    assert W.element("s3 s3").is_identity()


def test_conjugacy_classes():
    assert build_system("A3").conjugacy_classes_of_generators() == [(0, 1, 2)]
    assert build_system("B3").conjugacy_classes_of_generators() == [(0,), (1, 2)]
    assert build_system("C3").conjugacy_classes_of_generators() == [(0, 1), (2,)]
    assert build_system("G2").conjugacy_classes_of_generators() == [(0,), (1,)]
    assert build_system("I2(5)").conjugacy_classes_of_generators() == [(0, 1)]
    assert build_system("~C2").conjugacy_classes_of_generators() == [(0,), (1,), (2,)]


def test_odd_edge_conjugator():
    W = build_system("A3")
    w = W.odd_edge_conjugator(0, 1)
    assert W.conjugate(w, W.gens[0]) == W.gens[1] or W.conjugate(w.inverse(), W.gens[0]) == W.gens[1]


def test_conjugator_to_representative():
    W = build_system("B3")
    w, s0 = W.conjugator_to_representative(2, [0, 1])
    assert s0 == 1
    assert w * W.gens[1] * w.inverse() == W.gens[2]


def test_odd_graph_free_rank():
    # the triangle of ~A2 has one independent cycle
    assert build_system("~A2").odd_graph().free_rank(0) == 1
    assert build_system("A3").odd_graph().free_rank(1) == 0


def test_affine_lengths():
    W = build_system("~A2")
    assert not W.is_finite
    w = W.element("s1 s2 s3 s1 s2 s3")
    assert w.length() == 6
    assert (w * w.inverse()).is_identity()


def test_errors():
    with pytest.raises(UnsupportedSystemError):
        build_system("E6")
    with pytest.raises(InfiniteGroupError):
        build_system("~A2").elements()
    with pytest.raises(CoxeterError):
        build_system("Q3")
    with pytest.raises(CoxeterError):
        build_system("A2").element("s4")
    with pytest.raises(CoxeterError):
        CoxeterSystem([[1, 3], [2, 1]])


def test_custom_matrix_matches_label():
    W = build_system([[1, 4, 2], [4, 1, 3], [2, 3, 1]])
    assert W.order() == 48


def test_inversion_set_size_is_length():
    W = build_system("B3")
    for w in W.elements():
        assert len(W.inversion_set(w)) == w.length()


SYSTEMS = {label: build_system(label) for label in ("A3", "B3", "G2", "I2(5)", "~A2", "~C2")}


@st.composite
def words(draw):
    label = draw(st.sampled_from(sorted(SYSTEMS)))
    W = SYSTEMS[label]
    word = draw(st.lists(st.integers(0, W.rank - 1), max_size=12))
    return W, tuple(word)


@settings(max_examples=150, deadline=None)
@given(words(), st.data())
def test_length_properties(ws, data):
    W, word = ws
    w = W.element(word)
    red = W.reduced_word(w)
    assert len(red) == w.length() <= len(word)
    assert len(red) % 2 == len(word) % 2
    assert W.element(red) == w
    assert w.inverse().length() == w.length()
    assert (w * w.inverse()).is_identity()
    s = data.draw(st.integers(0, W.rank - 1))
    ws_ = w * W.gens[s]
    assert abs(ws_.length() - w.length()) == 1
    assert W.is_right_descent(w, s) == (ws_.length() < w.length())
    assert W.is_left_descent(w, s) == ((W.gens[s] * w).length() < w.length())


@settings(max_examples=60, deadline=None)
@given(words())
def test_reduced_words_are_all_equal(ws):
    W, word = ws
    w = W.element(word[:8])
    for red in W.all_reduced_words(w):
        assert W.element(red) == w and len(red) == w.length()
