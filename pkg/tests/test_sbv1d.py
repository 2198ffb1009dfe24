#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
分段线性SBV剖面测试
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aniso_perimeter.core.exceptions import (
    InputFormatError,
    InvalidProfile,
    ProfileMismatch,
    SectionNotSegment,
)
from aniso_perimeter.core.sbv1d import (
    SbvProfile,
    VDistributedSet,
    barycenter_of_polygon_sections,
    classify_joint_jump,
    clamp_value,
    joint_limits,
    profiles_close,
    section_profiles,
)
from aniso_perimeter.core.repro import random_vdistributed


@st.composite
def vdistributed_sets(draw):
    seed = draw(st.integers(min_value=0, max_value=2 ** 31 - 1))
    return random_vdistributed(np.random.RandomState(seed))


def test_indicator_limits():
    f = SbvProfile.indicator(0.0, 1.0, 2.0)
    assert f.nodes == (0.0, 1.0)
    assert f.limits_at(0.0) == (0.0, 2.0)
    assert f.limits_at(1.0) == (2.0, 0.0)
    assert f.value_at(0.5) == 2.0
    assert f.value_at(0.0) == 1.0
    assert f.value_at(3.0) == 0.0
    assert f.eval_bounds(1.0) == (0.0, 2.0, 1.0)


def test_piecewise_linear_jumps_only_at_ends():
    f = SbvProfile.piecewise_linear([0.0, 1.0, 2.0], [1.0, 3.0, 1.0])
    assert f.limits_at(0.0) == (0.0, 1.0)
    assert f.limits_at(1.0) == (3.0, 3.0)
    assert f.limits_at(2.0) == (1.0, 0.0)
    assert f.slopes == (2.0, -2.0)
    assert f.support_hull() == (0.0, 2.0)
    assert SbvProfile.zero().support_hull() is None


def test_tent_slopes_and_variation():
    f = SbvProfile.tent(0.0, 1.0, 2.0)
    assert f.slopes == (2.0, -2.0)
    assert f.jumps() == ()
    assert f.total_variation() == pytest.approx(4.0)
    assert f.total_variation(((0.0, 0.5),)) == pytest.approx(1.0)


def test_jumps_and_derivative_parts():
    f = SbvProfile.from_limits([0.0, 0.5, 1.0], [0.0, 4.0, 2.0], [4.0, 2.0, 0.0])
    jumps = f.jumps()
    assert [j.location for j in jumps] == [0.0, 0.5, 1.0]
    assert [j.direction for j in jumps] == [1, -1, -1]
    assert [j.height for j in jumps] == [4.0, 2.0, 2.0]
    parts = f.derivative_parts()
    assert all(s == 0.0 for _, _, s in parts.slopes)
    assert parts.total_variation() == pytest.approx(8.0)


def test_from_limits_merges_close_nodes_and_erases_tiny_jumps():
    f = SbvProfile.from_limits([0.0, 1.0, 1.0 + 1e-14, 2.0], [0.0, 1.0, 1.0, 1.0], [1.0, 1.0, 1.0, 0.0])
    assert len(f.nodes) == 3
    g = SbvProfile.from_limits([0.0, 1.0, 2.0], [0.0, 1.0, 1.0], [1.0, 1.0 + 1e-13, 0.0])
    assert [j.location for j in g.jumps()] == [0.0, 2.0]
    assert g.limits_at(1.0)[0] == g.limits_at(1.0)[1]


def test_invariant_violations():
    with pytest.raises(InvalidProfile):
        SbvProfile((0.0, 1.0), (1.0, 0.0), (0.0, 0.0), (0.0,))
    with pytest.raises(InvalidProfile):
        SbvProfile((0.0, 1.0), (0.0, 2.0), (1.0, 0.0), (0.0,))
    with pytest.raises(InvalidProfile):
        SbvProfile.from_limits([0.0, 1.0], [0.0, -1.0], [-1.0, 0.0], nonnegative=True)
    with pytest.raises(InvalidProfile):
        SbvProfile.indicator(1.0, 0.0)
    with pytest.raises(InvalidProfile):
        SbvProfile.from_limits([0.0, float("nan")], [0.0, 1.0], [1.0, 0.0])


def test_from_dict_validates_fields():
    data = {"nodes": [0, 1], "values_left": [0, 2], "values_right": [2, 0], "slopes": [0]}
    f = SbvProfile.from_dict(data, nonnegative=True)
    assert f.to_dict()["slopes"] == [0.0]
    with pytest.raises(InputFormatError) as info:
        SbvProfile.from_dict({"nodes": [0, 1], "values_left": "x", "values_right": [0, 0]}, path="p.json")
    assert info.value.field == "values_left"
    with pytest.raises(InputFormatError) as info:
        SbvProfile.from_dict({"nodes": [0, 1], "values_left": [0, 1]}, path="p.json")
    assert info.value.field == "values_right"
    with pytest.raises(InvalidProfile):
        SbvProfile.from_dict({"nodes": [0, 1], "values_left": [0, 2], "values_right": [2, 0], "slopes": [1]})


def test_arithmetic_on_common_refinement():
    f = SbvProfile.indicator(0.0, 2.0, 1.0)
    g = SbvProfile.tent(1.0, 1.0, 1.0)
    h = f + g
    assert h.nodes == (0.0, 1.0, 2.0)
    assert h.value_at(1.0) == pytest.approx(2.0)
    assert h.value_at(0.5) == pytest.approx(1.5)
    d = h - g
    assert profiles_close(d, f.refine([1.0]))
    assert (-f).value_at(1.0) == pytest.approx(-1.0)
    assert (2 * f).value_at(1.0) == pytest.approx(2.0)


def test_dilate_and_truncate():
    f = SbvProfile.tent(0.0, 1.0, 2.0)
    d = f.dilate(2.0)
    assert d.nodes == (-2.0, 0.0, 2.0)
    assert d.value_at(0.0) == pytest.approx(4.0)
    assert d.slopes == pytest.approx((2.0, -2.0))
    t = f.truncate(1.0)
    assert t.value_at(0.0) == pytest.approx(1.0)
    assert t.value_at(-0.75) == pytest.approx(0.5)
    assert -0.5 in t.nodes and 0.5 in t.nodes
    assert clamp_value(-3.0, 1.0) == -1.0
    with pytest.raises(ValueError):
        f.truncate(-1.0)


def test_joint_jump_regions():
    v = SbvProfile.from_limits([0.0, 1.0, 2.0], [0.0, 4.0, 2.0], [4.0, 2.0, 0.0], nonnegative=True)
    only_v = classify_joint_jump(v, SbvProfile.zero(), 1.0)
    assert only_v.region == "A"
    assert only_v.nu_v == -1

    b_small = SbvProfile.from_limits([0.0, 1.0, 2.0], [0.0, 0.0, 0.5], [0.0, 0.5, 0.0])
    assert classify_joint_jump(v, b_small, 1.0).region == "B4"
    b_same = SbvProfile.from_limits([0.0, 1.0, 2.0], [0.0, 0.0, -0.5], [0.0, -0.5, 0.0])
    assert classify_joint_jump(v, b_same, 1.0).region == "B1"
    b_equal = SbvProfile.from_limits([0.0, 1.0, 2.0], [0.0, 0.0, 1.0], [0.0, 1.0, 0.0])
    assert classify_joint_jump(v, b_equal, 1.0).region == "B5"
    b_big = SbvProfile.from_limits([0.0, 1.0, 2.0], [0.0, 0.0, -3.0], [0.0, -3.0, 0.0])
    jump = classify_joint_jump(v, b_big, 1.0)
    assert jump.region == "B3"
    assert jump.u1_direction == -1 and jump.u2_direction == -1

    w = SbvProfile.indicator(0.0, 2.0, 2.0)
    assert classify_joint_jump(w, b_small, 1.0).region == "C"
    assert classify_joint_jump(w, SbvProfile.zero(), 1.0).region == "none"


def test_section_profiles_of_triangle():
    width, mid = section_profiles([(-1.0, -1.0), (2.0, -0.5), (0.0, 1.5)])
    assert width.nodes == (-1.0, 0.0, 2.0)
    assert width.value_at(0.0) == pytest.approx(1.5 + 1.0 - 1.0 / 6.0)
    assert width.value_at(-1.0) == pytest.approx(0.0)
    assert mid.value_at(0.0) == pytest.approx(0.5 * (1.5 - 1.0 + 1.0 / 6.0))


def test_barycenter_checks_profile(square):
    b = barycenter_of_polygon_sections(square, SbvProfile.indicator(-1.0, 1.0, 2.0))
    assert b.max_abs() == pytest.approx(0.0)
    with pytest.raises(ProfileMismatch):
        barycenter_of_polygon_sections(square, SbvProfile.indicator(-1.0, 1.0, 3.0))


def test_section_not_segment():
    # C形多边形右半部分的竖直截面是两条线段
    with pytest.raises(SectionNotSegment):
        section_profiles([(0, 0), (2, 0), (2, 0.5), (1, 1), (2, 1.5), (2, 2), (0, 2)])


def test_vdistributed_set_rejects_b_outside_support():
    v = SbvProfile.indicator(0.0, 1.0, 2.0)
    b = SbvProfile.indicator(0.0, 2.0, 0.5)
    with pytest.raises(ProfileMismatch):
        VDistributedSet(v, b)
    S = VDistributedSet.clipped(v, b)
    assert S.b.value_at(1.5) == 0.0
    assert S.b.value_at(0.5) == pytest.approx(0.5)


def test_vdistributed_boundaries():
    S = VDistributedSet(SbvProfile.tent(0.0, 1.0, 2.0), SbvProfile.tent(0.0, 1.0, 1.0))
    assert S.u_lower.value_at(0.0) == pytest.approx(0.0)
    assert S.u_upper.value_at(0.0) == pytest.approx(2.0)
    with pytest.raises(InvalidProfile):
        VDistributedSet(SbvProfile.indicator(0.0, 1.0, 1.0) - SbvProfile.indicator(0.0, 1.0, 2.0),
                        SbvProfile.zero())


@settings(deadline=None, max_examples=50)
@given(vdistributed_sets())
def test_joint_limits_cover_both_profiles(S):
    joint = joint_limits(S.v, S.b)
    assert set(S.v.nodes) <= set(joint.nodes)
    for i, x in enumerate(joint.nodes):
        assert (joint.v_left[i], joint.v_right[i]) == S.v.limits_at(x)
        assert min(joint.v_left[i], joint.v_right[i]) >= 0.0


@settings(deadline=None, max_examples=200)
@given(st.floats(min_value=-10.0, max_value=10.0), st.floats(min_value=-10.0, max_value=10.0),
       st.floats(min_value=0.0, max_value=10.0), st.floats(min_value=0.0, max_value=10.0))
def test_truncation_monotonicity(s1, s2, m1, m2):
    s1, s2 = min(s1, s2), max(s1, s2)
    m1, m2 = min(m1, m2), max(m1, m2)
    eps = 1e-12 * (1.0 + abs(s1) + abs(s2) + m2)
    if m1 > 0:
        assert clamp_value(s2, m1) >= clamp_value(s1, m1)
    for s in (s1, s2):
        if s >= 0:
            assert clamp_value(s, m2) >= clamp_value(s, m1)
        else:
            assert clamp_value(s, m2) <= clamp_value(s, m1)
    wide = clamp_value(s2, m2) - clamp_value(s1, m2)
    narrow = clamp_value(s2, m1) - clamp_value(s1, m1)
    assert wide >= narrow - eps
    assert clamp_value(s2, m2) - clamp_value(s2, m1) >= clamp_value(s1, m2) - clamp_value(s1, m1) - eps


@settings(deadline=None, max_examples=50)
@given(vdistributed_sets(), st.floats(min_value=0.0, max_value=2.5))
def test_truncation_commutes_with_jump_limits(S, level):
    for f in (S.v, S.b):
        t = f.truncate(level)
        for x in f.nodes:
            lower, upper, _ = f.eval_bounds(x)
            t_lower, t_upper, _ = t.eval_bounds(x)
            assert t_lower == pytest.approx(clamp_value(lower, level), abs=1e-12)
            assert t_upper == pytest.approx(clamp_value(upper, level), abs=1e-12)


@settings(deadline=None, max_examples=50)
@given(vdistributed_sets())
def test_truncations_exhaust_the_profile(S):
    for f in (S.v, S.b):
        levels = np.linspace(0.0, f.max_abs(), 6)
        variations = [f.truncate(m).total_variation() for m in levels]
        assert all(b >= a - 1e-9 for a, b in zip(variations, variations[1:]))
        jump_set = {j.location for j in f.jumps()}
        for m in levels:
            assert {j.location for j in f.truncate(m).jumps()} <= jump_set
        assert f.truncate(0.0).is_zero
        assert profiles_close(f.truncate(f.max_abs()), f)
        assert profiles_close(f.truncate(f.max_abs() + 1.0), f)
        assert variations[-1] == pytest.approx(f.total_variation())
