#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
离散向量测度的各向异性全变差测试
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aniso_perimeter.core.aniso_measure import (
    DiscreteVectorMeasure,
    anisotropic_total_variation,
    dual_test_value,
    equality_cone_check,
    pair_with_field,
    parallelogram_defect,
    pointwise_equality_check,
    sup_partition_ladder,
    sup_partition_oracle,
    total_variation,
)
from aniso_perimeter.core.convex_body import Ellipse
from aniso_perimeter.core.exceptions import InputFormatError, InvalidMeasure
from aniso_perimeter.core.repro import random_polygon
from aniso_perimeter.utils.helpers import read_json


def sample_measure():
    return DiscreteVectorMeasure(
        atoms=[(0.25, (1.0, 0.0)), (0.75, (0.0, -2.0))],
        densities=[((1.0, 2.0), (1.0, 1.0))],
    )


@st.composite
def measures(draw):
    seed = draw(st.integers(min_value=0, max_value=2 ** 31 - 1))
    rng = np.random.RandomState(seed)
    positions = np.cumsum(rng.uniform(0.1, 1.0, 6))
    atoms = [(positions[i], rng.uniform(-2.0, 2.0, 2)) for i in (0, 2, 4)]
    densities = [((positions[i], positions[i] + 0.05), rng.uniform(-2.0, 2.0, 2)) for i in (1, 3)]
    return DiscreteVectorMeasure(atoms, densities), random_polygon(rng)


def test_total_variations(square):
    mu = sample_measure()
    assert total_variation(mu) == pytest.approx(3.0 + math.sqrt(2.0))
    assert anisotropic_total_variation(mu, square) == pytest.approx(5.0)
    assert anisotropic_total_variation(mu, square, ((0.0, 0.5),)) == pytest.approx(1.0)
    assert anisotropic_total_variation(mu, square, ((1.5, 3.0),)) == pytest.approx(1.0)


def test_euclidean_ball_gives_euclidean_variation():
    mu = sample_measure()
    assert anisotropic_total_variation(mu, Ellipse(1.0, 1.0)) == pytest.approx(total_variation(mu))


def test_partition_ladder_separates_components(square):
    ladder = sup_partition_ladder(sample_measure(), square)
    assert ladder.separated_at is not None
    assert ladder.value == pytest.approx(5.0)
    assert all(b >= a - 1e-12 for a, b in zip(ladder.values, ladder.values[1:]))


def test_dual_test_field_attains_variation(square):
    result = dual_test_value(sample_measure(), square)
    assert result.value == pytest.approx(5.0)
    for _, z in result.atom_fields + result.density_fields:
        assert square.gauge(z) <= 1.0 + 1e-12


def test_pairing_with_constant_field(square):
    mu = sample_measure()
    assert pair_with_field(mu, lambda x: (1.0, 1.0)) == pytest.approx(1.0 - 2.0 + 2.0)
    assert pair_with_field(mu, lambda x: (1.0, 1.0)) <= anisotropic_total_variation(mu, square)


@settings(deadline=None, max_examples=40)
@given(measures())
def test_three_characterisations_agree(pair):
    mu, K = pair
    exact = anisotropic_total_variation(mu, K)
    assert sup_partition_oracle(mu, K) == pytest.approx(exact, rel=1e-9, abs=1e-12)
    assert dual_test_value(mu, K).value == pytest.approx(exact, rel=1e-9, abs=1e-12)


@settings(deadline=None, max_examples=40)
@given(measures(), measures())
def test_parallelogram_inequality_holds(first, second):
    mu, K = first
    nu, _ = second
    report = parallelogram_defect(mu, nu, K)
    assert report.holds
    assert report.triangle_lhs <= report.triangle_rhs + 1e-9
    assert report.reverse_lhs >= report.reverse_rhs - 1e-9


def test_parallelogram_equality_matches_cone_check(square):
    mu = DiscreteVectorMeasure(atoms=[(0.0, (1.0, 1.0))], densities=[((1.0, 2.0), (2.0, -1.0))])
    nu = DiscreteVectorMeasure(atoms=[(0.0, (0.5, 0.0))], densities=[((1.0, 2.0), (0.5, 0.5))])
    report = parallelogram_defect(mu, nu, square)
    assert report.equality
    assert pointwise_equality_check(mu, nu, square)

    crossing = DiscreteVectorMeasure(atoms=[(0.0, (2.0, 0.0))])
    report = parallelogram_defect(mu, crossing, square)
    assert not report.equality
    assert not pointwise_equality_check(mu, crossing, square)


def test_equality_cone_check(square):
    assert equality_cone_check((1.0, 1.0), (0.0, 0.0), square)
    assert equality_cone_check((1.0, 1.0), (0.5, 0.0), square)
    assert not equality_cone_check((1.0, 1.0), (2.0, 0.0), square)


def test_arithmetic_merges_atoms_and_densities():
    mu = sample_measure()
    nu = DiscreteVectorMeasure(atoms=[(0.25, (0.0, 1.0))], densities=[((1.5, 2.5), (1.0, 0.0))])
    total = mu + nu
    assert len(total.atoms) == 2
    np.testing.assert_allclose(total.mass(0.0, 0.5, False), [1.0, 1.0])
    np.testing.assert_allclose(total.mass(1.0, 2.5, True), [2.0, 1.0])
    diff = mu - mu
    assert total_variation(diff) == pytest.approx(0.0)


def test_invalid_measures():
    with pytest.raises(InvalidMeasure):
        DiscreteVectorMeasure(atoms=[(0.0, (1.0, 0.0)), (0.0, (0.0, 1.0))])
    with pytest.raises(InvalidMeasure):
        DiscreteVectorMeasure(densities=[((0.0, 1.0), (1.0, 0.0)), ((0.5, 2.0), (1.0, 0.0))])
    with pytest.raises(InvalidMeasure):
        DiscreteVectorMeasure(atoms=[(0.0, (1.0, 0.0, 0.0))], densities=[((1.0, 2.0), (1.0, 0.0))])
    with pytest.raises(InputFormatError):
        DiscreteVectorMeasure.from_dict({"atoms": [{"vector": [1, 0]}]})


def test_measure_file_round_trip(data_path, square):
    mu = DiscreteVectorMeasure.from_dict(read_json(data_path("measure.json")))
    assert anisotropic_total_variation(mu, square) == pytest.approx(5.0)
    assert mu.to_dict()["densities"][0]["interval"] == [1.0, 2.0]


def test_partition_ladder_isolates_atom_on_density_end(diamond_body):
    mu = DiscreteVectorMeasure(atoms=[(0.0, (1.0, 0.0))], densities=[((0.0, 1.0), (0.0, 1.0))])
    ladder = sup_partition_ladder(mu, diamond_body)
    assert ladder.values == pytest.approx((1.0, 2.0))
    assert ladder.separated_at == 1
    assert ladder.value == pytest.approx(2.0)
    assert ladder.value == pytest.approx(anisotropic_total_variation(mu, diamond_body))


def vertex_cone_pair(K, j, rng, outside):
    """顶点 v_j 的法锥由相邻两条边的法向量张成；outside 时 h − g = −n0 落到锥外"""
    n0, n1 = K.facet_normals[j - 1], K.facet_normals[j]
    alpha, beta = rng.uniform(0.2, 2.0, 2)
    h = alpha * n0 + beta * n1
    if outside:
        return h, (alpha + 1.0) * n0 + beta * n1
    s1, s2 = rng.uniform(-0.9, 0.9, 2)
    return h, s1 * alpha * n0 + s2 * beta * n1


def test_constructed_cone_corpus():
    rng = np.random.RandomState(0)
    for case in range(100):
        K = random_polygon(rng)
        bad = (case // 2) % 3 if case % 2 else None
        pairs = [vertex_cone_pair(K, rng.randint(len(K.vertices)), rng, bad == i) for i in range(3)]
        mu = DiscreteVectorMeasure(atoms=[(0.0, pairs[0][0]), (1.0, pairs[1][0])],
                                   densities=[((2.0, 3.0), pairs[2][0])])
        nu = DiscreteVectorMeasure(atoms=[(0.0, pairs[0][1]), (1.0, pairs[1][1])],
                                   densities=[((2.0, 3.0), pairs[2][1])])
        report = parallelogram_defect(mu, nu, K)
        assert report.holds
        if bad is None:
            assert report.equality
            assert pointwise_equality_check(mu, nu, K)
        else:
            normal = pairs[bad][1] - pairs[bad][0]
            width = K.support(normal) + K.support(-normal)
            assert not report.equality
            assert not pointwise_equality_check(mu, nu, K)
            assert report.rhs - report.lhs == pytest.approx(width, rel=1e-9)
