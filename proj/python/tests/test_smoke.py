import math

import pytest

import cmcfol


@pytest.fixture(scope="module")
def profile():
    return cmcfol.RadialProfile.build(cmcfol.ProfileParams())


def test_closed_form_values():
    phi, _, _ = cmcfol.phi_closed_form(0.3, 3, 1.0, 0.5)
    assert phi == pytest.approx(0.682287030173558722, abs=1e-14)
    assert cmcfol.h_closed_form(0.3, 3, 1.0, 0.5) == pytest.approx(
        0.668502032817651531, abs=1e-14
    )


def test_profile_flat_beyond_r2(profile):
    phi, dphi, _ = profile.phi(0.9)
    assert phi == pytest.approx(profile.plateau)
    assert dphi == 0.0
    assert profile.cylinder_H(profile.r1) == pytest.approx(1.0, abs=1e-9)


def test_length_law(profile):
    assert cmcfol.arc_length(profile, 1.0, 0.3, 0.45) == pytest.approx(
        math.log(4.0), abs=1e-9
    )


def test_first_integral_conserved(profile):
    t = cmcfol.integrate(profile, 1.3, 0.4, 0.0, 0.2, 5.0)
    assert t["max_J_drift"] < 1e-8
    assert len(t["s"]) == len(t["J"])


def test_volume_prescription(profile):
    lam = cmcfol.choose_lambda(10.0, profile)
    assert lam == pytest.approx(10.0 / (2 * math.pi * 1.3), rel=1e-12)
    comp = cmcfol.EnlargedReebComponent.build(cmcfol.ProfileParams(), lam)
    assert comp.cylinder_volume(0.8) == pytest.approx(10.0, rel=1e-12)


def test_suites_pass(profile):
    for report in (
        cmcfol.profile_suite(profile),
        cmcfol.turb_suite(cmcfol.TurbModelSurface(0.05, 1, 0.7)),
    ):
        assert report and all("provenance" in c for c in report)


def test_torus_summary():
    s = cmcfol.torus_summary(Nx=512, Ny=32)
    assert s["max_kappa_error"] < 5e-2
    assert s["max_det_error"] < 1e-9
    assert s["f_integral"] == 0.0


def test_errors_map_to_python(profile):
    with pytest.raises(ValueError):
        cmcfol.RadialProfile.build(cmcfol.ProfileParams(r0=0.6))
    with pytest.raises(RuntimeError):
        cmcfol.torus_summary(Nx=64, Ny=8, margin=10.0)
