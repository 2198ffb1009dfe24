#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Steiner对称化测试
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aniso_perimeter.core.convex_body import Ellipse, Polytope, hausdorff_distance
from aniso_perimeter.core.exceptions import DimensionUnsupported
from aniso_perimeter.core.perimeter import body_perimeter, wulff_deficit
from aniso_perimeter.core.repro import random_polygon
from aniso_perimeter.core.sbv1d import SbvProfile, section_profiles
from aniso_perimeter.core.steiner import build_F_of_v, steiner_symmetrize, support_symmetry_check

TRIANGLE = [(-1.0, -1.0), (2.0, -0.5), (0.0, 1.5)]


@st.composite
def polygons(draw):
    seed = draw(st.integers(min_value=0, max_value=2 ** 31 - 1))
    return random_polygon(np.random.RandomState(seed))


def test_triangle_symmetral():
    K = Polytope(TRIANGLE)
    sym = steiner_symmetrize(K)
    expected = Polytope([(-1.0, 0.0), (0.0, -7.0 / 6.0), (2.0, 0.0), (0.0, 7.0 / 6.0)])
    assert sym.body.is_close(expected)
    assert sym.body.area() == pytest.approx(K.area())
    assert sym.section_length(0.0) == pytest.approx(7.0 / 3.0)
    assert support_symmetry_check(sym.body)
    assert not support_symmetry_check(K)


def test_symmetric_bodies_are_fixed(square, diamond_body, ellipse):
    assert steiner_symmetrize(square).body.is_close(square)
    assert steiner_symmetrize(diamond_body).body.is_close(diamond_body)
    sym = steiner_symmetrize(ellipse)
    assert sym.body is ellipse
    assert sym.section_width is None
    assert sym.section_length(0.0) == pytest.approx(2.0)
    assert sym.section_length(3.0) == 0.0


@settings(deadline=None, max_examples=40)
@given(polygons())
def test_symmetral_preserves_sections(K):
    sym = steiner_symmetrize(K)
    assert support_symmetry_check(sym.body)
    assert sym.body.area() == pytest.approx(K.area(), rel=1e-9)
    width, _ = section_profiles(sym.body)
    original, _ = section_profiles(K)
    for x in original.nodes:
        assert width.value_at(x) == pytest.approx(original.value_at(x), abs=1e-9)


def test_build_F_of_v():
    v = SbvProfile.tent(0.0, 1.0, 2.0)
    F = build_F_of_v(v)
    assert F.b.is_zero
    assert F.u_upper.value_at(0.0) == pytest.approx(1.0)


def test_higher_dimension_rejected():
    cube = Polytope([(x, y, z) for x in (-1, 1) for y in (-1, 1) for z in (-1, 1)])
    with pytest.raises(DimensionUnsupported):
        steiner_symmetrize(cube)


def test_symmetry_check_on_ellipse():
    assert support_symmetry_check(Ellipse(1.5, 0.5))


@settings(deadline=None, max_examples=30)
@given(polygons())
def test_symmetrization_is_idempotent_and_scale_covariant(K):
    sym = steiner_symmetrize(K).body
    assert hausdorff_distance(steiner_symmetrize(sym).body, sym) <= 1e-9
    scaled = steiner_symmetrize(K.scaled(2.0)).body
    assert hausdorff_distance(scaled, sym.scaled(2.0)) <= 2e-9


def test_symmetral_is_strictly_longer_for_asymmetric_body():
    K = Polytope(TRIANGLE)
    sym = steiner_symmetrize(K).body
    assert body_perimeter(K, K) == pytest.approx(7.0)
    assert body_perimeter(sym, K) == pytest.approx(10.0)
    assert body_perimeter(K, K) < body_perimeter(sym, K)
    assert wulff_deficit(sym, K) == pytest.approx(3.0)
