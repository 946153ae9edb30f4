import math

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import disc_distance, polar
from orbitile import highprec
from orbitile.realization import generic_realization
from orbitile.orbifold_symbol import presentation_for

points = st.builds(polar, st.floats(0, 0.9), st.floats(0, 2 * math.pi))
words = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3, 4, -4]), max_size=30).map(tuple)


def test_frame_matches_double_precision(frame):
    pf = highprec.precise_frame()
    for key, v in frame.triangle.vertices.items():
        assert abs(complex(pf.vertices[key]) - v) < 1e-14
    z = 0.31 + 0.22j
    for i, s in enumerate(frame.triangle.reflections):
        assert abs(complex(pf.reflect(i, mpmath.mpc(z))) - s(z)) < 1e-13


@given(points, st.integers(0, 2))
def test_frame_reflections_are_involutions(z, i):
    pf = highprec.precise_frame()
    w = mpmath.mpc(z)
    with mpmath.workdps(pf.dps):
        assert abs(pf.reflect(i, pf.reflect(i, w)) - w) < mpmath.mpf(10) ** -80


@given(st.text(alphabet="012", max_size=25), st.sampled_from("pqr"))
def test_descent_recovers_vertices(word, key):
    pf = highprec.precise_frame()
    z = pf.vertex_point(word, key)
    w, k = pf.descent_word(z)
    assert k == key
    with mpmath.workdps(pf.dps):
        assert abs(pf.vertex_point(w, k) - z) < mpmath.mpf(10) ** -60


def test_descent_rejects_generic_points():
    with pytest.raises(ValueError):
        highprec.precise_frame().descent_word(mpmath.mpc("0.1", "0.01"))


@given(points, points)
def test_distance_and_midpoint(p, q):
    d = float(highprec.distance(mpmath.mpc(p), mpmath.mpc(q)))
    assert abs(d - disc_distance(p, q)) < 1e-7
    m = highprec.midpoint(mpmath.mpc(p), mpmath.mpc(q))
    assert abs(float(highprec.distance(mpmath.mpc(p), m)) - d / 2) < 1e-7
    assert abs(float(highprec.distance(m, mpmath.mpc(q))) - d / 2) < 1e-7


@given(points)
def test_klein_round_trip(z):
    w = mpmath.mpc(z)
    with mpmath.workdps(highprec.FRAME_DPS):
        assert abs(highprec.from_klein(highprec.to_klein(w)) - w) < mpmath.mpf(10) ** -80


@given(points, st.integers(2, 8))
def test_rotation_inverse(p, n):
    m = highprec.rotation(p, n)
    z = mpmath.mpc("0.2", "-0.4")
    back = highprec.apply(m, highprec.apply(m, z), inverse=True)
    assert abs(back - z) < mpmath.mpf(10) ** -80


def test_stellate_relations_on_a_generic_tuple():
    t = generic_realization(presentation_for("2224"))
    pts = t.fixed_points()
    assert highprec.stellate_residual(pts, (2, 2, 2, 4)) < 1e-12
    assert highprec.stellate_residual(pts[::-1], (4, 2, 2, 2)) > 1e-3


def test_precise_stellate_relators_are_trivial():
    ps = highprec.precise_stellate((2, 2, 2, 4))
    assert ps.is_trivial((1, 2, 3, 4))
    assert ps.is_trivial((4, 4, 4, 4))
    assert not ps.is_trivial((1, 2))
    assert not ps.is_trivial((4, 4))


@given(words)
def test_conjugates_of_relators_are_trivial(u):
    ps = highprec.precise_stellate((2, 2, 2, 4))
    w = u + (1, 2, 3, 4) + tuple(-x for x in reversed(u))
    assert ps.is_trivial(w)


def test_precision_grows_with_word_length():
    ps = highprec.precise_stellate((2, 3, 7))
    assert ps.digits_for((1, 2, 3) * 400) > ps.digits_for((1, 2, 3))
    # a long nontrivial word stays far from the identity
    assert ps.residual((1, 2, 2) * 40) > 1e-3
    # while (r2 r3)^2 = r1^-2 = 1
    assert ps.is_trivial((2, 3) * 60)
