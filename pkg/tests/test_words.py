import random

import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy.combinatorics.free_groups import free_group

from orbitile.mcg_generators import half_twist
from orbitile.orbifold_symbol import presentation_for
from orbitile.words import (
    Automorphism, UndecidedError, Verdict, apply, automorphism, check_respects, compose, concat, conjugation,
    cyclic_reduce, equal_as_outer, free_reduce, identity, inverse, invert_images, is_trivial, peel_conjugate,
    power,
)

RANK = 3
F, *GENS = free_group("a b c")


def to_sympy(word):
    out = F.identity
    for x in word:
        out = out * (GENS[abs(x) - 1] ** (1 if x > 0 else -1))
    return out


def from_sympy(elem):
    out = []
    for sym, exp in elem.array_form:
        g = "abc".index(str(sym)) + 1
        out.extend([g if exp > 0 else -g] * abs(exp))
    return tuple(out)


letters = st.sampled_from([1, -1, 2, -2, 3, -3])
words = st.lists(letters, max_size=14).map(tuple)


@given(words)
def test_free_reduce_matches_free_group(w):
    assert free_reduce(w) == from_sympy(to_sympy(w))


@given(words, words)
def test_concat_is_the_group_product(u, v):
    assert concat(u, v) == from_sympy(to_sympy(u) * to_sympy(v))


@given(words)
def test_inverse_is_the_group_inverse(w):
    assert free_reduce(concat(w, inverse(w))) == ()
    assert inverse(free_reduce(w)) == from_sympy(to_sympy(w) ** -1)


@given(words, st.integers(-4, 4))
def test_power_matches(w, k):
    assert power(w, k) == from_sympy(to_sympy(w) ** k)


@given(words)
def test_reduction_is_confluent(w):
    rng = random.Random(hash(w))
    cur = list(w)
    # cancel adjacent inverse pairs in a random order
    while True:
        spots = [i for i in range(len(cur) - 1) if cur[i] == -cur[i + 1]]
        if not spots:
            break
        i = rng.choice(spots)
        del cur[i:i + 2]
    assert tuple(cur) == free_reduce(w)


@given(words)
def test_cyclic_reduce_is_conjugate_and_cyclically_reduced(w):
    c = cyclic_reduce(w)
    assert not c or c[0] != -c[-1]
    oracle = to_sympy(w).cyclic_reduction()
    assert len(c) == len(oracle)
    assert not c or to_sympy(c).is_cyclic_conjugate(oracle)


@given(words, words)
def test_peel_conjugate_splits_a_conjugate(u, core):
    w = free_reduce(concat(u, core, inverse(u)))
    outer, inner = peel_conjugate(w)
    assert free_reduce(concat(outer, inner, inverse(outer))) == w
    assert not inner or inner[0] != -inner[-1]


def _nielsen(draws):
    """A random automorphism of F3 built from elementary Nielsen moves."""
    imgs = [(1,), (2,), (3,)]
    for i, j, s, left in draws:
        if i == j:
            continue
        piece = imgs[j] if s else inverse(imgs[j])
        imgs[i] = concat(piece, imgs[i]) if left else concat(imgs[i], piece)
    return automorphism(imgs)


moves = st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2), st.booleans(), st.booleans()), max_size=6)


def _sympy_apply(a: Automorphism, w):
    images = [to_sympy(x) for x in a.images]
    out = F.identity
    for x in w:
        g = images[abs(x) - 1]
        out = out * (g if x > 0 else g ** -1)
    return out


@given(moves, moves, words)
def test_composition_is_functional(m1, m2, w):
    a, b = _nielsen(m1), _nielsen(m2)
    ab = compose(a, b)
    assert apply(ab, w) == apply(a, apply(b, w))
    assert to_sympy(apply(ab, w)) == _sympy_apply(a, apply(b, w))


@given(moves)
def test_stored_inverse_is_two_sided(m):
    a = _nielsen(m)
    assert compose(a, a.inverse()).images == identity(RANK).images
    assert compose(a.inverse(), a).images == identity(RANK).images


@given(moves)
def test_nielsen_inversion_recovers_inverse(m):
    a = _nielsen(m)
    inv = invert_images(a.images)
    assert all(free_reduce(apply(a, w)) == (i,) for i, w in enumerate(inv, start=1))


def test_inverse_needed_when_images_are_not_a_basis():
    with pytest.raises(ValueError):
        invert_images([(1, 1), (2,), (3,)])


def test_serialization_round_trip():
    a = automorphism([(1, 2), (2,), (3,)], name="t")
    assert Automorphism.from_json(a.to_json()) == a


def test_conjugation_is_inner():
    p = presentation_for("2224")
    c = conjugation(p.rank, (1, 2))
    assert apply(c, (3,)) == (1, 2, 3, -2, -1)
    assert equal_as_outer(c, identity(p.rank), p) is Verdict.YES


def test_conjugation_by_relator_is_trivial():
    p = presentation_for("2224")
    c = conjugation(p.rank, p.global_relator)
    assert equal_as_outer(c, identity(p.rank), p) is Verdict.YES


def test_half_twist_is_not_outer_trivial_on_five_points():
    p = presentation_for("22222")
    assert equal_as_outer(half_twist(p, 1).auto, identity(p.rank), p) is Verdict.NO


def test_self_is_outer_equal_with_empty_conjugator():
    p = presentation_for("22222")
    a = half_twist(p, 2).auto
    assert equal_as_outer(a, a, p) is Verdict.YES


def test_relators_are_trivial():
    p = presentation_for("2224")
    for r in p.relators:
        assert is_trivial(r, p) is True
    assert is_trivial((4, 4, 4, 4, 4), p) is None or is_trivial((4, 4, 4, 4, 4), p) is False


def test_check_respects_half_twist_of_equal_orders():
    p = presentation_for("2224")
    assert check_respects(half_twist(p, 1).auto, p)


def test_check_respects_rejects_order_mismatch():
    p = presentation_for("2224")
    a = automorphism([(1,), (2,), (3, 4, -3), (3,)])
    assert not check_respects(a, p)


def test_check_respects_handle_twist_on_torus():
    p = presentation_for("o")
    a = automorphism([(1,), (2, 1)])
    assert check_respects(a, p)


def test_check_respects_needs_a_realization_off_the_stellate_case():
    p = presentation_for("22x")
    # a substitution that does not fix the relator and cannot be rewritten
    a = automorphism([(1,), (2,), (3, 1)])
    with pytest.raises(UndecidedError):
        check_respects(a, p)
