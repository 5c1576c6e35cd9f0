import math

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from tvws_interference.errors import GeometryError
from tvws_interference.geometry import (
    RegionSpec,
    admissible_half_angle,
    contains,
    lens_area,
    lune,
    satisfies_truncation,
    truncation_radius,
)


def test_full_disk_without_protection():
    g = lune(RegionSpec(r_max=3.0))
    assert g.theta1 == math.pi
    assert g.area == pytest.approx(9 * math.pi)


def test_intersecting_example():
    g = lune(RegionSpec(r_max=2.0, r_p=1.0, r_dec=2.0))
    assert g.chord_x == pytest.approx(1.75)
    assert g.theta1 == pytest.approx(math.pi - math.acos(0.875), rel=1e-14)
    assert g.cap_angle == pytest.approx(math.acos(0.875), rel=1e-14)


def test_fully_protected_network_is_empty():
    g = lune(RegionSpec(r_max=1.0, r_p=5.0, r_dec=1.0))
    assert g.area == 0.0 and g.theta1 == 0.0


def test_disjoint_protection_disk_removes_nothing():
    g = lune(RegionSpec(r_max=1.0, r_p=0.5, r_dec=3.0))
    assert g.area == pytest.approx(math.pi)


def test_truncation_radius_alpha4():
    assert truncation_radius(4.0, 0.01) == pytest.approx(10.0)
    assert satisfies_truncation(10.0, 4.0, 0.01)
    assert not satisfies_truncation(9.99, 4.0, 0.01)


@pytest.mark.parametrize("kwargs", [dict(r_max=0.0), dict(r_max=1.0, r_p=-1.0), dict(r_max=1.0, epsilon=1.5)])
def test_invalid_regions(kwargs):
    with pytest.raises(GeometryError):
        RegionSpec(**kwargs)


def test_truncation_needs_alpha_above_two():
    with pytest.raises(GeometryError):
        truncation_radius(2.0, 0.1)


def test_acceptance_rate_matches_area():
    region = RegionSpec(r_max=2.0, r_p=1.2, r_dec=1.5)
    rng = np.random.default_rng(5)
    n = 100_000
    r = region.r_max * np.sqrt(rng.random(n))
    phi = 2 * np.pi * rng.random(n)
    pts = np.column_stack((r * np.cos(phi), r * np.sin(phi)))
    frac = lune(region).area / (math.pi * region.r_max ** 2)
    hit = contains(pts, region).mean()
    assert abs(hit - frac) <= 3 * math.sqrt(frac * (1 - frac) / n)


def test_contains_scalar():
    region = RegionSpec(r_max=2.0, r_p=1.0, r_dec=1.5)
    assert contains((-1.0, 0.0), region) is True
    assert contains((1.5, 0.0), region) is False


@given(st.floats(0.5, 10.0), st.floats(0.05, 10.0), st.floats(0.01, 15.0))
def test_area_identity(r_max, r_p, d):
    assume(abs(r_max - r_p) < d < r_max + r_p)
    g = lune(RegionSpec(r_max, r_p, d))
    assert g.area + lens_area(r_max, r_p, d) == pytest.approx(math.pi * r_max ** 2, rel=1e-12)
    assert 0.0 <= g.theta1 <= math.pi


@given(st.floats(0.5, 10.0), st.floats(0.01, 5.0), st.floats(0.0, 15.0))
def test_area_bounded_and_monotone_in_rp(r_max, r_p, d):
    a1 = lune(RegionSpec(r_max, r_p, d)).area
    a2 = lune(RegionSpec(r_max, r_p * 1.5, d)).area
    assert 0.0 <= a2 <= a1 * (1 + 1e-12)
    assert a1 <= math.pi * r_max ** 2 * (1 + 1e-12)


@given(st.floats(0.5, 5.0), st.floats(0.2, 3.0), st.floats(0.3, 5.0), st.floats(0.01, 0.99))
def test_half_angle_matches_membership(r_max, r_p, d, frac):
    region = RegionSpec(r_max, r_p, d)
    r = frac * r_max
    half = float(admissible_half_angle(r, region))
    # just inside the admissible arc, measured from the negative u-axis
    for phi in (0.0, 0.999 * half):
        p = (-r * math.cos(phi), r * math.sin(phi))
        if half > 1e-6:
            assert contains(p, region)
    if half < math.pi - 1e-6:
        phi = half + 0.001 * (math.pi - half)
        assert not contains((-r * math.cos(phi), r * math.sin(phi)), region)
