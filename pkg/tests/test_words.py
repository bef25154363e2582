import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxspine.words import (compose, conj_gen, conjugate, conjugate_cg,
                            identity, inner, inverse, invert, is_inner,
                            make_automorphism, multiply, outer_normal_form,
                            parse_conj_gen, reduce_word, same_outer_class,
                            sigma, transposition, whitehead_move)

N = 4
letters = st.integers(min_value=1, max_value=N)
words = st.lists(letters, max_size=8).map(reduce_word)


def random_autos(draw_depth=3):
    moves = [sigma(N, j, i) for i in range(1, N + 1)
             for j in range(1, N + 1) if i != j]
    moves += [transposition(N, i, j)
              for i, j in itertools.combinations(range(1, N + 1), 2)]
    return moves


MOVES = random_autos()
autos = st.lists(st.sampled_from(MOVES), max_size=4).map(
    lambda ms: compose_all(ms))


def compose_all(ms):
    f = identity(N)
    for m in ms:
        f = compose(f, m)
    return f


@given(words)
def test_reduce_idempotent(w):
    assert reduce_word(w) == w


@given(words)
def test_involution(w):
    assert multiply(w, invert(w)) == ()
    assert invert(invert(w)) == w


@given(words, words, words)
def test_multiply_associative(a, b, c):
    assert multiply(multiply(a, b), c) == multiply(a, multiply(b, c))


def test_reduce_examples():
    assert reduce_word((1, 1)) == ()
    assert reduce_word((1, 2, 2, 1, 3)) == (3,)
    assert reduce_word((1, 2, 1)) == (1, 2, 1)


def test_conj_gen_strips_trailing_core():
    assert conj_gen(2, (1, 2)) == conj_gen(2, (1,))
    assert conj_gen(1, (1,)) == conj_gen(1, ())
    c = conj_gen(3, (1, 2))
    assert c.expand() == (1, 2, 3, 2, 1)
    assert parse_conj_gen(c.expand()) == c


@given(words, letters)
def test_conjugate_cg_matches_word_conjugation(w, core):
    c = conj_gen(core, ())
    assert conjugate_cg(c, w).expand() == conjugate((core,), w)


def test_sigma_and_transposition():
    s = sigma(N, 2, 1)
    assert s.image(2) == (1, 2, 1)
    assert s.image(1) == (1,)
    t = transposition(N, 1, 3)
    assert t.image(1) == (3,)
    assert t.image(3) == (1,)
    assert compose(t, t) == identity(N)
    assert compose(s, s) == identity(N)


@given(autos, words)
@settings(max_examples=50, deadline=None)
def test_apply_respects_composition(f, w):
    from coxspine.words import apply_word
    g = MOVES[0]
    assert apply_word(compose(f, g), w) == apply_word(f, apply_word(g, w))


@given(autos)
@settings(max_examples=40, deadline=None)
def test_inverse_roundtrip(f):
    assert compose(f, inverse(f)) == identity(N)
    assert compose(inverse(f), f) == identity(N)


def test_whitehead_move_shape():
    m = whitehead_move(N, 1, (2, 3))
    assert m.image(2) == (1, 2, 1)
    assert m.image(4) == (4,)
    with pytest.raises(ValueError):
        whitehead_move(N, 1, (1,))


@given(words)
def test_inner_detection(w):
    f = inner(N, w)
    assert is_inner(f) == w
    assert same_outer_class(f, identity(N))


@given(autos, words)
@settings(max_examples=40, deadline=None)
def test_outer_normal_form_constant_on_class(f, w):
    g = compose(inner(N, w), f)
    assert outer_normal_form(g) == outer_normal_form(f)
    assert outer_normal_form(outer_normal_form(f)) == outer_normal_form(f)


def test_make_automorphism_validates():
    with pytest.raises(ValueError):
        make_automorphism(3, (1, 1, 2), [(), (), ()])
