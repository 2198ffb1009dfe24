#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
等号条件与刚性判定测试
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aniso_perimeter.core.convex_body import Polytope
from aniso_perimeter.core.exceptions import NotASymmetral
from aniso_perimeter.core.repro import random_symmetral, random_vdistributed
from aniso_perimeter.core.rigidity import (
    CANTOR_CONDITION,
    admissible_tilt,
    Verdict,
    check_equality_membership,
    check_R1_R2,
    construct_nonrigid_witness,
    verdict,
)
from aniso_perimeter.core.sbv1d import SbvProfile, VDistributedSet

NODES = [0.0, 0.5, 1.0]


def jump_v():
    return SbvProfile.from_limits(NODES, [0.0, 4.0, 2.0], [4.0, 2.0, 0.0], nonnegative=True)


def jump_b(height):
    return SbvProfile.from_limits(NODES, [0.0, 0.0, height], [0.0, height, 0.0])


@st.composite
def symmetral_cases(draw):
    seed = draw(st.integers(min_value=0, max_value=2 ** 31 - 1))
    rng = np.random.RandomState(seed)
    return random_vdistributed(rng), random_symmetral(rng)


def test_tilt_within_diamond_cone_keeps_equality(tilted, diamond_body):
    report = check_equality_membership(tilted(30.0), diamond_body)
    assert report.all_ok
    assert report.gap == pytest.approx(0.0, abs=1e-12)


def test_steep_tilt_breaks_cone_condition(tilted, diamond_body):
    report = check_equality_membership(tilted(60.0), diamond_body)
    assert not report.condition_cone_ok
    assert report.cone_failures == [(0.0, 1.0)]
    assert report.gap == pytest.approx(2.0 * math.tan(math.radians(60.0)) - 2.0)


def test_jump_condition(square):
    ok = check_equality_membership(VDistributedSet(jump_v(), jump_b(0.5)), square)
    assert ok.condition_jump_ok and ok.all_ok
    assert ok.gap == pytest.approx(0.0, abs=1e-12)
    bad = check_equality_membership(VDistributedSet(jump_v(), jump_b(1.5)), square)
    assert not bad.condition_jump_ok
    assert bad.jump_failures == [0.5]
    assert bad.gap == pytest.approx(1.0)


def test_b_jump_on_continuous_v_breaks_equality(square):
    v = SbvProfile.indicator(0.0, 1.0, 2.0)
    report = check_equality_membership(VDistributedSet(v, jump_b(0.25)), square)
    assert not report.condition_jump_ok
    assert report.jump_failures == [0.5]
    assert report.gap == pytest.approx(0.5)


@settings(deadline=None, max_examples=60)
@given(symmetral_cases())
def test_conditions_characterise_equality(case):
    S, K = case
    report = check_equality_membership(S, K)
    assert report.gap >= -1e-9
    assert report.all_ok == (report.gap <= 1e-8)


def test_requires_symmetral():
    K = Polytope([(-1.0, -1.0), (2.0, -0.5), (0.0, 1.5)])
    with pytest.raises(NotASymmetral):
        check_equality_membership(VDistributedSet.symmetric(SbvProfile.indicator(0.0, 1.0)), K)
    with pytest.raises(NotASymmetral):
        verdict(SbvProfile.indicator(0.0, 1.0), K)


def test_rectangle_on_square_is_rigid(square):
    v = SbvProfile.indicator(0.0, 1.0, 2.0)
    r = check_R1_R2(v, square)
    assert r.r1_ok and r.r2_ok
    assert r.r2_reason == CANTOR_CONDITION
    assert construct_nonrigid_witness(v, square) is None
    report = verdict(v, square)
    assert report.verdict == Verdict.EQUIVALENT
    assert report.evaluated_on == "F[v]"
    assert report.witness is None
    assert report.condition_cone_ok


def test_rectangle_on_diamond_has_witness(diamond_body):
    v = SbvProfile.indicator(0.0, 1.0, 2.0)
    report = verdict(v, diamond_body)
    assert report.verdict == Verdict.NOT_GUARANTEED
    assert not report.r1_ok
    assert report.failing_normals == [(0.0, 1.0)]
    assert report.evaluated_on == "witness"
    witness = report.witness
    assert witness is not None
    assert witness.b.limits_at(1.0)[0] == pytest.approx(0.5)
    assert not witness.b.is_zero
    assert report.equality.all_ok
    assert report.equality.gap == pytest.approx(0.0, abs=1e-9)


def test_crystalline_tent_is_rigid(diamond_body):
    report = verdict(SbvProfile.tent(0.0, 1.0, 2.0), diamond_body)
    assert report.verdict == Verdict.EQUIVALENT
    assert report.failing_normals == []


def test_smooth_body_is_always_rigid(ellipse):
    for v in (SbvProfile.tent(0.0, 1.0, 1.0), SbvProfile.indicator(-1.0, 2.0, 0.5)):
        assert verdict(v, ellipse).verdict == Verdict.EQUIVALENT


def test_shallow_tent_on_diamond(diamond_body):
    v = SbvProfile.tent(0.0, 1.0, 1.0)
    r = check_R1_R2(v, diamond_body)
    assert not r.r1_ok
    assert r.failing_pieces == [0, 1]
    assert len(r.failing_normals) == 2
    witness = construct_nonrigid_witness(v, diamond_body)
    assert witness is not None
    assert check_equality_membership(witness, diamond_body).all_ok


def test_verdict_on_given_barycenter(square):
    report = verdict(jump_v(), square, b=jump_b(1.5))
    assert report.evaluated_on == "W[v,b]"
    assert report.verdict == Verdict.EQUIVALENT
    assert not report.condition_jump_ok
    data = report.to_dict()
    assert data["verdict"] == "Equivalent"
    assert data["witness"] is None
    assert data["jump_failures"] == [0.5]
    assert data["cantor_condition"] == CANTOR_CONDITION


def test_zero_profile_is_trivially_rigid(square):
    report = verdict(SbvProfile.zero(), square)
    assert report.verdict == Verdict.EQUIVALENT
    assert report.equality.gap == 0.0


def test_admissible_tilt_from_normal_cone(square, diamond_body, ellipse):
    assert admissible_tilt(diamond_body, 0.0) == pytest.approx(1.0)
    assert admissible_tilt(square, -1.0) == pytest.approx(0.5)
    assert admissible_tilt(ellipse, 0.0) == 0.0


def test_narrow_cone_still_yields_witness(diamond_body):
    # 法向量 (0.999, 1) 离菱形的边法向量只差 0.001
    v = SbvProfile.piecewise_linear([0.0, 1.0], [2.0, 0.002])
    assert admissible_tilt(diamond_body, v.slopes[0]) == pytest.approx(0.001, abs=1e-12)
    report = verdict(v, diamond_body)
    assert report.verdict == Verdict.NOT_GUARANTEED
    witness = report.witness
    assert witness is not None
    assert witness.b.limits_at(1.0)[0] == pytest.approx(0.0005, abs=1e-12)
    equality = check_equality_membership(witness, diamond_body)
    assert equality.all_ok
    assert equality.gap == pytest.approx(0.0, abs=1e-9)


def test_every_not_guaranteed_case_has_witness():
    rng = np.random.RandomState(0)
    flagged = 0
    for _ in range(200):
        v = random_vdistributed(rng).v
        K = random_symmetral(rng)
        report = verdict(v, K)
        if report.verdict != Verdict.NOT_GUARANTEED:
            continue
        flagged += 1
        witness = report.witness
        assert witness is not None
        assert any(abs(s) > 0.0 for s in witness.b.slopes)
        equality = check_equality_membership(witness, K)
        assert equality.all_ok
        assert abs(equality.gap) <= 1e-8
    assert flagged > 0


@pytest.mark.parametrize("scale", [0.5, 2.0])
def test_verdict_is_scale_invariant(scale, diamond_body):
    rng = np.random.RandomState(3)
    cases = [(SbvProfile.tent(0.0, 1.0, 2.0), diamond_body), (SbvProfile.indicator(0.0, 1.0, 2.0), diamond_body)]
    cases += [(random_vdistributed(rng).v, random_symmetral(rng)) for _ in range(10)]
    for v, K in cases:
        expected = verdict(v, K).verdict
        assert verdict(v.dilate(scale), K.scaled(scale)).verdict == expected
        assert verdict(v, K.scaled(scale)).verdict == expected
