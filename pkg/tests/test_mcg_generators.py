import itertools

import pytest

from orbitile import highprec
from orbitile.enumeration import shape_signature
from orbitile.mcg_generators import (
    HANDLE_KINDS, NONORIENTABLE_KINDS, McgDomainError, alphabet_automorphisms, artin_generator,
    chain_dehn_twist, evaluate_word, forget_generator, general_half_twist, generators_for, half_twist,
    handle_generator, nonorientable_generator, partition_by_order, pure_generating_set,
    semi_pure_generating_set, sphere_relation_words,
)
from orbitile.orbifold_symbol import presentation_for
from orbitile.words import (
    apply, check_respects, compose, concat, free_reduce, identity, inverse, peel_conjugate,
)


def stellate(n: int, order: int = 4):
    return presentation_for(str(order) * n)


def same(a, b) -> bool:
    return a.images == b.images


# -- transcriptions: each formula written out by hand in functional order ----------

def test_half_twist_images():
    p = stellate(4)
    s = half_twist(p, 2).auto
    assert s.images == ((1,), (2, 3, -2), (2,), (4,))
    assert s.inverse_images == ((1,), (3,), (-3, 2, 3), (4,))
    assert s.permutation == (1, 3, 2, 4)


def test_half_twist_fixes_the_global_relator():
    p = stellate(5)
    for i in range(1, 5):
        assert apply(half_twist(p, i).auto, p.global_relator) == p.global_relator


def test_half_twist_needs_equal_orders():
    with pytest.raises(McgDomainError):
        half_twist(presentation_for("2224"), 3)


def test_chain_twist_conjugates_by_the_chain_product():
    p = stellate(4)
    t = chain_dehn_twist(p, [2, 3]).auto
    assert t.images == ((1,), (2, 3, 2, -3, -2), (2, 3, 3, -3, -2), (4,)) or \
        t.images == ((1,), free_reduce((2, 3, 2, -3, -2)), free_reduce((2, 3, 3, -3, -2)), (4,))
    with pytest.raises(McgDomainError):
        chain_dehn_twist(p, [1, 3])


def test_half_twist_squares_to_the_chain_twist():
    p = stellate(5)
    for i in range(1, 5):
        s = half_twist(p, i).auto
        assert same(compose(s, s), chain_dehn_twist(p, [i, i + 1]).auto)


def test_artin_generators_are_conjugates():
    n = 6
    p = stellate(n)
    for i, j in itertools.combinations(range(1, n + 1), 2):
        a = artin_generator(p, i, j).auto
        assert a.permutation == tuple(range(1, n + 1))
        for k, img in enumerate(a.images, start=1):
            c, core = peel_conjugate(img)
            assert core == (k,)
            assert img == free_reduce(concat(c, (k,), inverse(c)))
        assert apply(a, p.global_relator) == p.global_relator


def test_adjacent_artin_generator_is_a_squared_half_twist():
    p = stellate(5)
    s = half_twist(p, 2).auto
    assert same(artin_generator(p, 2, 3).auto, compose(s, s))


def test_general_half_twist_swaps_endpoints():
    p = presentation_for("23232")
    h = general_half_twist(p, 1, 3).auto
    assert h.permutation[0] == 3 and h.permutation[2] == 1
    assert check_respects(h, p)
    with pytest.raises(McgDomainError):
        general_half_twist(p, 1, 2)


def test_nonorientable_images():
    p = presentation_for("22xx")
    A, B = 3, 4
    u = nonorientable_generator(p, "crosscap_transposition", 3).auto
    assert u.images[A - 1] == (B,) and u.images[B - 1] == (-B, -B, A, B, B)
    y = nonorientable_generator(p, "crosscap_slide", 3).auto
    assert y.images[A - 1] == (A, B, B)
    assert y.images[B - 1] == (-B, -B, -A, -B, A, B, B)
    v = nonorientable_generator(p, "two_sided_twist", 3).auto
    assert v.images[A - 1] == (A, -B, -A) and v.images[B - 1] == (A, B, B)
    q = presentation_for("2x")
    b = nonorientable_generator(q, "boundary_slide", 1).auto
    assert b.images == ((1, 2, -1, -2, -1), (1, 2))


def test_handle_images():
    p = presentation_for("o")
    assert handle_generator(p, "twist_a", 1).auto.images == ((1,), (2, 1))
    assert handle_generator(p, "twist_b", 1).auto.images == ((1, -2), (2,))
    q = presentation_for("2o")
    x = handle_generator(q, "point_push_X", 1).auto
    assert x.images == ((-2, 1, 2), (-2, -1, 2, 1, 2), (3, -2, 1, 2))


# -- relations -------------------------------------------------------------------

@pytest.mark.parametrize("n", range(3, 9))
def test_braid_relations_hold_exactly(n):
    p = stellate(n)
    s = alphabet_automorphisms(p, "sigma")
    for i, j in itertools.combinations(range(n - 1), 2):
        if j - i > 1:
            assert same(compose(s[i], s[j]), compose(s[j], s[i]))
        else:
            assert same(compose(compose(s[i], s[j]), s[i]), compose(compose(s[j], s[i]), s[j]))


@pytest.mark.parametrize("n", range(3, 9))
def test_generators_invert_exactly(n):
    p = stellate(n)
    ident = identity(p.rank)
    for g in generators_for(p) + [chain_dehn_twist(p, [1, 2, 3])]:
        assert same(compose(g.auto, g.auto.inverse()), ident)
        assert same(compose(g.auto.inverse(), g.auto), ident)


def _acts_trivially(p, letters, word) -> bool:
    """Sequential action on a generic tuple, compared by shape at 1e-6."""
    orders = [g.order for g in p.generators]
    start = highprec.generic_points(orders)
    pts = start
    # the braid word x1 ... xm is the automorphism x_m o ... o x_1, and the
    # action on tuples is a right action, so x_m acts first
    for x in reversed(word):
        a = letters[abs(x) - 1]
        pts = highprec.substitute_points((a if x > 0 else a.inverse()).images, pts, orders)
    assert highprec.stellate_residual(pts, orders) < 1e-12
    return shape_signature(pts, orders) == shape_signature(start, orders)


@pytest.mark.parametrize("n", range(3, 9))
def test_sphere_relations_act_outer_trivially(n):
    p = stellate(n)
    rel = sphere_relation_words(n)
    for name, (alphabet, word) in rel.items():
        letters = alphabet_automorphisms(p, alphabet)
        assert _acts_trivially(p, letters, word), name


@pytest.mark.parametrize("n", range(4, 7))
def test_single_sigma_is_not_outer_trivial(n):
    p = stellate(n)
    letters = alphabet_automorphisms(p, "sigma")
    assert not _acts_trivially(p, letters, (1,))
    assert not _acts_trivially(p, letters, (1, 1))


def test_full_twist_words_agree():
    n = 5
    p = stellate(n)
    rel = sphere_relation_words(n)
    sigma = evaluate_word(alphabet_automorphisms(p, "sigma"), rel["full_twist"][1], p.rank)
    pure = evaluate_word(alphabet_automorphisms(p, "pure"), rel["full_twist_pure"][1], p.rank)
    assert sigma.permutation == tuple(range(1, p.rank + 1))
    assert _acts_trivially(p, [sigma], (1,)) and _acts_trivially(p, [pure], (1,))


def test_descending_x_words_are_not_trivial_beyond_two():
    """The alternative ordering A_{1,i}..A_{i-1,i} taken downwards fails from i = 3 on."""
    n = 5
    p = stellate(n)
    letters = alphabet_automorphisms(p, "pure")
    names = [f"A_{i},{j}" for i, j in itertools.combinations(range(1, n + 1), 2)]
    idx = {name: k for k, name in enumerate(names, start=1)}
    i = 3
    word = tuple(idx[f"A_{i},{j}"] for j in range(i + 1, n + 1)) + \
        tuple(idx[f"A_{k},{i}"] for k in range(i - 1, 0, -1))
    assert not _acts_trivially(p, letters, word)


def test_crosscap_slide_and_transposition_square_to_the_boundary_twist():
    for symbol, pos in (("xx", 1), ("22xx", 3), ("2xxx", 3)):
        p = presentation_for(symbol)
        y = nonorientable_generator(p, "crosscap_slide", pos).auto
        u = nonorientable_generator(p, "crosscap_transposition", pos).auto
        t = chain_dehn_twist(p, [pos, pos + 1]).auto.inverse()
        assert same(compose(y, y), compose(u, u))
        assert same(compose(y, y), t)


@pytest.mark.parametrize("symbol", ["2xx", "22xx", "22xxx"])
def test_nonorientable_generators_respect_the_presentation(symbol):
    p = presentation_for(symbol)
    first_cross = next(k for k, f in enumerate(p.features, start=1) if f[0] == "crosscap")
    for kind in NONORIENTABLE_KINDS:
        pos = first_cross - 1 if kind == "boundary_slide" else first_cross
        g = nonorientable_generator(p, kind, pos)
        assert check_respects(g.auto, p), kind
        assert same(compose(g.auto, g.auto.inverse()), identity(p.rank))


@pytest.mark.parametrize("symbol", ["2oo", "23oo"])
def test_handle_generators_respect_the_presentation(symbol):
    p = presentation_for(symbol)
    gy = sum(1 for f in p.features if f[0] == "gyration")
    for kind in HANDLE_KINDS:
        pos = gy if kind.startswith("point_push") else gy + 1
        g = handle_generator(p, kind, pos)
        assert check_respects(g.auto, p), kind
        assert same(compose(g.auto, g.auto.inverse()), identity(p.rank))


@pytest.mark.parametrize("kind", ["point_push_X", "point_push_Y"])
def test_point_push_without_the_point_is_trivial(kind):
    p = presentation_for("3o")
    g = handle_generator(p, kind, 1).auto
    assert forget_generator(g, 1).images == ((1,), (2,))


def test_wrong_feature_kinds_are_rejected():
    p = presentation_for("22x")
    with pytest.raises(McgDomainError):
        nonorientable_generator(p, "crosscap_slide", 1)
    with pytest.raises(McgDomainError):
        handle_generator(p, "twist_a", 3)
    with pytest.raises(McgDomainError):
        nonorientable_generator(p, "bogus", 3)
    with pytest.raises(McgDomainError):
        generators_for(p)


# -- generating sets --------------------------------------------------------------

def test_partition_by_order():
    assert partition_by_order(presentation_for("2224")) == [[1, 2, 3], [4]]
    assert partition_by_order(presentation_for("3232")) == [[1, 3], [2, 4]]


@pytest.mark.parametrize("symbol", ["2224", "3232", "4444", "22222", "266", "344", "246"])
def test_generators_preserve_orders_and_respect(symbol):
    p = presentation_for(symbol)
    orders = [g.order for g in p.generators]
    for g in generators_for(p):
        perm = g.auto.permutation
        assert all(orders[perm[i] - 1] == orders[i] for i in range(p.rank))
        assert check_respects(g.auto, p)


def test_pure_set_never_permutes():
    p = presentation_for("22222")
    for g in pure_generating_set(p):
        assert g.auto.permutation == tuple(range(1, 6))
    assert len(pure_generating_set(p)) == 10


def test_semi_pure_partition_validation():
    p = presentation_for("2224")
    with pytest.raises(McgDomainError):
        semi_pure_generating_set(p, [[1, 2, 3, 4]])
    with pytest.raises(McgDomainError):
        semi_pure_generating_set(p, [[1, 2]])
    names = [g.name for g in semi_pure_generating_set(p, [[1, 3], [2], [4]])]
    assert "H_1,3" in names and "sigma_1" not in names
