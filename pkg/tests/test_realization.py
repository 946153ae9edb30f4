import json
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import STELLATE_CATALOG, disc_distance
from orbitile import hyperbolic as hyp
from orbitile.enumeration import signature_of
from orbitile.hyperbolic import GeometryError, Isometry
from orbitile.mcg_generators import half_twist
from orbitile.orbifold_symbol import euler_characteristic, parse_symbol, presentation_for
from orbitile.realization import (
    GeneratorTuple, InvalidCatalogEntry, RealizationCatalogEntry, act_on_tuple, check_translation_words,
    contains_translation_subgroup, fundamental_tile, generic_realization, index_in_frame,
    load_catalog, polygon_with_angles, realize, tile_area, triangle_group, tuple_image, verify,
)
from orbitile.words import compose


@pytest.mark.parametrize("orders", [(2, 3, 7), (2, 4, 6), (3, 3, 4), (2, 4, 5)])
@pytest.mark.parametrize("center", ["p", "q", "r"])
def test_triangle_group_angles_and_area(orders, center):
    g = triangle_group(*orders, center=center)
    s0, s1, s2 = g.reflections
    for (i, j), n in zip(((0, 1), (1, 2), (2, 0)), orders):
        rot = g.reflections[i] @ g.reflections[j]
        assert abs(abs(rot.trace) - 2 * math.cos(math.pi / n)) < 1e-9
        assert (rot ** n).is_identity(1e-8)
    for s in (s0, s1, s2):
        assert (s @ s).is_identity()
    v = g.vertices
    area = hyp.signed_triangle_area(v["p"], v["q"], v["r"])
    expected = math.pi * (1 - sum(1 / n for n in orders))
    assert abs(abs(area) - expected) < 1e-9
    assert v[center] == 0j


@pytest.mark.parametrize("orders", [(2, 3, 6), (2, 4, 4), (3, 3, 3), (2, 3, 5)])
def test_non_hyperbolic_triangles_are_rejected(orders):
    with pytest.raises(GeometryError):
        triangle_group(*orders)


def test_reduce_point_lands_in_the_base_triangle(frame):
    tri = frame.triangle
    z = 0.83 * complex(math.cos(2.1), math.sin(2.1))
    word, base = tri.reduce_point(z)
    assert all(tri.side_sign(i, base) >= -1e-12 for i in range(3))
    assert abs(tri.word_isometry(word)(base) - z) < 1e-9


def test_dodecagon_area_and_pairings(frame):
    dod = frame.dodecagon
    assert len(dod.vertices) == 12
    assert abs(dod.area() - 8 * math.pi) < 1e-6
    for k, g in enumerate(dod.side_pairings):
        assert not g.reversing
        assert isinstance(hyp.classify(g), hyp.Hyperbolic)
        # side k+6 goes onto side k with reversed orientation
        a, b = dod.vertices[k], dod.vertices[(k + 1) % 12]
        c, d = dod.vertices[k + 6], dod.vertices[(k + 7) % 12]
        assert abs(g(c) - b) < 1e-9 and abs(g(d) - a) < 1e-9
        assert frame.in_translation_subgroup(g)


def test_dodecagon_pairings_alternate_two_lengths(frame):
    dod = frame.dodecagon
    lengths = []
    for k, g in enumerate(dod.side_pairings):
        # the axis joins the midpoints of the paired sides
        near = hyp.geodesic_between(dod.vertices[k], dod.vertices[k + 1]).midpoint()
        far = hyp.geodesic_between(dod.vertices[k + 6], dod.vertices[(k + 7) % 12]).midpoint()
        assert abs(g(far) - near) < 1e-9
        assert abs(disc_distance(near, far) - hyp.translation_length(g)) < 1e-9
        lengths.append(round(disc_distance(near, far), 6))
    assert lengths == [4.584863, 3.525494] * 3


def test_catalog_fixed_points_lie_in_the_dodecagon(catalog, frame):
    for e in catalog.entries:
        assert all(frame.dodecagon.contains(z) for z in realize(e).fixed_points()), e.label


def test_dodecagon_reduction(frame):
    dod = frame.dodecagon
    z = 0.97 * complex(math.cos(0.4), math.sin(0.4))
    w, g = dod.reduce(z)
    assert dod.contains(w)
    assert abs(g(z) - w) < 1e-9


def test_frame_quotient_has_order_96(frame):
    assert len(frame.image_group) == 96
    for i in range(3):
        assert frame.word_perm(str(i) * 2) == tuple(range(8))


def test_catalog_ships_every_finite_row_and_three_22222(catalog):
    symbols = {e.symbol for e in catalog.entries}
    assert set(STELLATE_CATALOG) <= symbols
    assert len(catalog.labels("22222")) == 3


def test_every_catalog_entry_verifies(catalog):
    for e in catalog.entries:
        t = realize(e)
        rep = verify(t)
        assert rep.passed, (e.symbol, e.label, rep.to_json())
        for g, m in zip(t.presentation.generators, t.isometries):
            assert abs(abs(m.trace) - 2 * math.cos(math.pi / g.order)) < 1e-9


def test_tile_area_matches_euler_characteristic(catalog):
    for e in catalog.entries:
        t = realize(e)
        chi = euler_characteristic(parse_symbol(e.symbol))
        assert abs(tile_area(t) + 2 * math.pi * float(chi)) < 1e-6


def test_2224_tile_area_is_a_quarter_turn(catalog):
    assert abs(tile_area(realize(catalog.lookup("2224"))) - math.pi / 2) < 1e-9


def test_catalog_groups_contain_the_translation_subgroup(catalog, frame):
    for e in catalog.entries:
        t = realize(e)
        assert contains_translation_subgroup(t)
        assert check_translation_words(t, e.translation_words)
        assert len(tuple_image(t)) * index_in_frame(t) == 96


def test_realizations_of_22222_are_distinct(catalog):
    sigs = {signature_of(realize(catalog.lookup("22222", label))) for label in catalog.labels("22222")}
    assert len(sigs) == 3


def test_recorded_circumference(catalog):
    for e in catalog.entries:
        if e.circumference is not None:
            assert abs(realize(e).circumference() - e.circumference) < 1e-9


def test_perturbed_tuple_fails_verification(catalog):
    t = realize(catalog.lookup("2224"))
    m = t.isometries[0]
    bad = GeneratorTuple(t.presentation, (Isometry(m.a, m.b + 1e-3),) + t.isometries[1:])
    rep = verify(bad)
    assert not rep.passed
    assert 1e-4 < max(rep.order_residual, rep.relator_residual) < 1e-2


def test_identity_tuple_fails_the_order_relations():
    p = presentation_for("2224")
    t = GeneratorTuple(p, (Isometry.identity(),) * 4)
    rep = verify(t)
    assert not rep.passed
    assert not rep.inside_disc


def test_coincident_centers_are_invalid():
    e = RealizationCatalogEntry("2224", "bad", (("", "p"), ("", "p"), ("1", "p"), ("", "q")))
    with pytest.raises(InvalidCatalogEntry):
        realize(e)


def test_wrong_relation_is_invalid():
    e = RealizationCatalogEntry("2224", "bad", (("", "p"), ("1", "p"), ("21", "p"), ("", "q")))
    with pytest.raises(InvalidCatalogEntry):
        realize(e)


def test_catalog_path_from_environment(tmp_path, monkeypatch, catalog):
    path = tmp_path / "cat.json"
    path.write_text(json.dumps({"version": 1, "entries": [catalog.lookup("246").to_json()]}))
    monkeypatch.setenv("ORBITILE_CATALOG", str(path))
    loaded = load_catalog()
    assert [e.symbol for e in loaded.entries] == ["246"]


def test_action_is_a_right_action(catalog):
    t = realize(catalog.lookup("22222", "a"))
    p = t.presentation
    a, b = half_twist(p, 1).auto, half_twist(p, 3).auto
    lhs = act_on_tuple(compose(a, b), t)
    rhs = act_on_tuple(b, act_on_tuple(a, t))
    assert all(x.distance_to(y) < 1e-9 for x, y in zip(lhs.isometries, rhs.isometries))


def test_action_evaluates_images(catalog):
    t = realize(catalog.lookup("2224"))
    a = half_twist(t.presentation, 1).auto
    out = act_on_tuple(a, t)
    for w, m in zip(a.images, out.isometries):
        assert t.evaluate(w).distance_to(m) < 1e-12
    assert verify(out).passed


@pytest.mark.parametrize("symbol", ["2224", "22222", "3232", "4444", "237", "2(12)3", "22223"])
def test_generic_realization_is_valid(symbol):
    t = generic_realization(presentation_for(symbol))
    assert verify(t).passed
    chi = euler_characteristic(parse_symbol(symbol))
    assert abs(tile_area(t) + 2 * math.pi * float(chi)) < 1e-7


@given(st.lists(st.integers(2, 9), min_size=3, max_size=6))
def test_polygon_has_requested_angles(orders):
    angles = [math.pi / a for a in orders]
    if sum(angles) >= (len(angles) - 2) * math.pi:
        with pytest.raises(GeometryError):
            polygon_with_angles(angles)
        return
    pts = polygon_with_angles(angles)
    got = hyp.interior_angles(pts)
    assert all(abs(x - y) < 1e-7 for x, y in zip(got, angles))


def test_fundamental_tile_vertices_are_cone_point_lifts(catalog):
    t = realize(catalog.lookup("22222", "b"))
    tile = fundamental_tile(t)
    assert len(tile) == 2 * 5 - 2
    pts = t.fixed_points()
    for z in pts:
        assert min(disc_distance(z, v) for v in tile) < 1e-9


def test_index_from_euler_characteristic(catalog):
    for e in catalog.entries:
        chi = euler_characteristic(parse_symbol(e.symbol))
        assert index_in_frame(realize(e)) == int(-24 * chi)
