import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from tvws_interference import analytic, ltinv, specfun
from tvws_interference.analytic import FadingSpec, InterferenceModel, StableLaw
from tvws_interference.errors import DomainError, GeometryError, PointMassError, PoleError
from tvws_interference.geometry import RegionSpec


def test_levy_density_example():
    law = StableLaw(2.0, 0.5)
    assert analytic.pdf(law, 1.0) == pytest.approx(math.exp(-1.0) / math.sqrt(math.pi), rel=1e-14)


@pytest.mark.parametrize("eta", [1 / 3, 0.5, 2 / 3])
@pytest.mark.parametrize("r", [0.1, 1.0, 10.0])
def test_closed_forms_against_inversion(eta, r):
    law = StableLaw(1.0, eta)
    assert analytic.pdf(law, r) == pytest.approx(ltinv.stable_density(1.0, eta, r), rel=1e-7)


def test_generic_exponent_uses_inversion():
    law = StableLaw.from_alpha(1.0, 5.0)
    f = analytic.pdf(law, np.array([0.5, 2.0, 1e4]))
    assert np.all(f > 0)
    assert f[0] == pytest.approx(ltinv.stable_density(1.0, 0.4, 0.5), rel=1e-9)


def test_point_mass_has_no_density():
    with pytest.raises(PointMassError):
        analytic.pdf(StableLaw(1.0, 1.0), 1.0)


def test_point_mass_cdf_and_mean():
    law = StableLaw(1.5, 1.0)
    assert analytic.cdf(law, 1.4) == 0.0 and analytic.cdf(law, 1.5) == 1.0
    assert analytic.truncated_mean(law, 2.0) == 1.5
    assert analytic.truncated_mean(law, 1.0) == 0.0


def test_k_worked_example():
    model = InterferenceModel(4.0, 0.1, RegionSpec(10.0, 0.5, 0.0))
    assert analytic.compute_k(model).K == pytest.approx(0.1565826376281574, rel=1e-13)
    assert analytic.k_by_quadrature(model) == pytest.approx(0.1565826376281574, rel=1e-10)


def test_printed_convention_is_two_pi_larger():
    model = InterferenceModel(4.0, 0.05, RegionSpec(10.0))
    ratio = analytic.compute_k(model, "paper").K / analytic.compute_k(model).K
    assert ratio == pytest.approx(2 * math.pi, rel=1e-14)


def test_full_disk_approaches_infinite_network():
    model = InterferenceModel(4.0, 0.05, RegionSpec(60.0))
    k_inf = -math.log(analytic.laplace_transform_infinite(model, 1.0))
    assert analytic.compute_k(model).K == pytest.approx(k_inf, rel=1e-12)


def test_infinite_network_pole_at_alpha2():
    with pytest.raises(PoleError):
        analytic.laplace_transform_infinite(InterferenceModel(2.0, 0.1, RegionSpec(5.0, 0.5)), 1.0)


def test_empty_radial_range_rejected():
    with pytest.raises(GeometryError):
        analytic.compute_k(InterferenceModel(4.0, 0.05, RegionSpec(3.4, 70.0)))


def test_truncation_rule_enforced():
    with pytest.raises(GeometryError):
        InterferenceModel(4.0, 0.05, RegionSpec(5.0, epsilon=0.01))


def test_fading_moment():
    assert FadingSpec().eta_moment(0.5) == pytest.approx(math.sqrt(math.pi) / 2)
    assert FadingSpec("none", 4.0).eta_moment(0.5) == pytest.approx(2.0)
    with pytest.raises(DomainError):
        FadingSpec("nakagami")


def test_implied_density_angle_inverts_k():
    model = InterferenceModel(3.0, 0.07, RegionSpec(3.4))
    k = analytic.compute_k(model).K
    assert analytic.implied_density_angle(k, 3.0, 3.4) == pytest.approx(0.07 * math.pi, rel=1e-13)


def test_levy_cdf_closed_form():
    law = StableLaw(1.0, 0.5)
    assert analytic.cdf(law, 2.0) == pytest.approx(specfun.erfc(1 / (2 * math.sqrt(2.0))), rel=1e-14)


@pytest.mark.parametrize("eta", [1 / 3, 0.5, 2 / 3, 0.4])
def test_cdf_branches_meet(eta):
    law = StableLaw(1.0, eta)
    r = analytic._tail_start(law)
    below = analytic._log_quad(lambda x: analytic._pdf_scalar(1.0, eta, x, ltinv.InversionConfig()), analytic._left_cutoff(law), r)
    assert below == pytest.approx(1.0 - analytic.ccdf_series(law, r), abs=1e-10)


@pytest.mark.parametrize("eta", [1 / 3, 0.5, 2 / 3])
def test_median(eta):
    law = StableLaw(0.7, eta)
    assert analytic.cdf(law, analytic.median(law)) == pytest.approx(0.5, abs=1e-10)


def test_truncated_mean_levy_grows_with_cap():
    law = StableLaw(1.0, 0.5)
    means = [analytic.truncated_mean(law, r) for r in (10.0, 100.0, 1000.0)]
    assert means == pytest.approx([1.33, 5.16, 17.35], abs=0.01)
    # infinite mean: sqrt growth in the cap
    assert means[2] / means[1] == pytest.approx(math.sqrt(10), rel=0.1)


def test_printed_alpha4_branch_coincides_at_unit_k():
    r = np.array([0.1, 1.0, 10.0])
    law = StableLaw(1.0, 0.5)
    assert np.allclose(analytic.pdf_paper(4, 1.0, r), analytic.pdf(law, r), rtol=1e-13)


def test_printed_alpha3_mean_has_no_root_at_large_cap():
    out = analytic.truncated_mean_paper(3, 0.5598, 10.0)
    assert math.isnan(out["value"]) and "reciprocal" in out["note"]


def test_levy_entropy_matches_functional():
    for K in (0.5, 1.0, 2.0):
        assert -analytic.uncertainty(StableLaw(K, 0.5)) == pytest.approx(analytic.levy_entropy(K), rel=1e-10)


def test_solve_uncertainty_both_signs():
    k_lit = analytic.solve_uncertainty(2.62, 0.5, "literal")
    k_ent = analytic.solve_uncertainty(2.62, 0.5, "entropy")
    assert analytic.uncertainty(StableLaw(k_lit, 0.5)) == pytest.approx(2.62, rel=1e-9)
    assert -analytic.uncertainty(StableLaw(k_ent, 0.5)) == pytest.approx(2.62, rel=1e-9)


def test_airy_asymptotic_crossover():
    x = analytic.airy_crossover(0.05)
    assert 1.0 < x < 2.0
    assert abs(analytic.airy_asymptotic(x) / specfun.airy_ai(x) - 1) == pytest.approx(0.05, abs=1e-9)


@given(st.floats(0.05, 5.0), st.sampled_from([1 / 3, 0.5, 2 / 3]), st.floats(0.01, 50.0), st.floats(1.01, 10.0))
def test_cdf_monotone(K, eta, r, factor):
    law = StableLaw(K, eta)
    a, b = analytic.cdf(law, r), analytic.cdf(law, r * factor)
    assert 0.0 <= a <= b + 1e-12 <= 1.0 + 1e-12


@given(st.floats(0.05, 5.0), st.sampled_from([1 / 3, 0.5, 2 / 3]), st.floats(0.05, 50.0), st.floats(0.2, 5.0))
def test_density_scaling(K, eta, r, c):
    # c I has scale constant K c^eta
    f = analytic.pdf(StableLaw(K, eta), r)
    g = analytic.pdf(StableLaw(K * c ** eta, eta), c * r)
    assert g * c == pytest.approx(f, rel=1e-8, abs=1e-300)


@given(st.floats(2.5, 8.0), st.floats(0.0, 3.0), st.floats(3.5, 60.0))
def test_k_closed_form_vs_quadrature(alpha, r_p, r_max):
    model = InterferenceModel(alpha, 0.1, RegionSpec(r_max, r_p, 0.0))
    assert analytic.compute_k(model).K == pytest.approx(analytic.k_by_quadrature(model), rel=1e-10)


@given(st.floats(0.1, 3.0), st.floats(0.0, 20.0))
def test_laplace_transform_bounds(K, s):
    v = analytic.laplace_transform(StableLaw(K, 0.5), s)
    assert 0.0 <= v <= 1.0
