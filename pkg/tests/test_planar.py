import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sgon import io
from sgon import planar as pl
from sgon.errors import (
    CertificateInvalid,
    NotReduced,
    NotUpperHalfPlane,
    TooFewTermsForPrecision,
    UnsupportedFieldTower,
)
from sgon.exact_arith import QuadNum
from sgon.verify import random_cm_tau, random_generic_tau, random_vr_tau

F = Fraction


def tau(name):
    return io.load_tau_fixture(name)


def j_oracle(t, dps=40):
    # mpmath's Klein invariant is normalized so that J(i) = 1
    with mpmath.workdps(dps):
        return 1728 * mpmath.kleinj(t.to_mpc(dps))


taus = st.builds(
    lambda a, b, D, qa, qb: pl.Tau.of((a, qa), (b, qb), D),
    st.fractions(-20, 20, max_denominator=30),
    st.fractions(F(1, 20), 5, max_denominator=30),
    st.sampled_from([2, 3, 5, 7]),
    st.fractions(-3, 3, max_denominator=10),
    st.fractions(0, 1, max_denominator=10),
)


def test_tau_construction_rules():
    assert pl.Tau.of((0, 0), (1, 0)).D == 1
    with pytest.raises(NotUpperHalfPlane):
        pl.Tau.of((0, 0), (0, 0))
    with pytest.raises(NotUpperHalfPlane):
        pl.Tau.of((0, 0), (1, -1), 2)  # 1 - sqrt2 < 0
    with pytest.raises(UnsupportedFieldTower):
        pl.Tau(QuadNum(0, 1, 2), QuadNum(0, 1, 3))
    t = tau("tau_sqrt2_half")
    assert pl.Tau.from_json(t.to_json()) == t


def test_reduction_examples():
    r = pl.reduce_to_fundamental(tau("tau_five_halves"))
    assert r.tau == pl.Tau.of((F(1, 2), 0), (1, 0))
    assert r.transform == ((1, -2), (0, 1))
    r = pl.reduce_to_fundamental(pl.Tau.of((0, 0), (F(1, 2), 0)))
    assert r.tau == pl.Tau.of((0, 0), (2, 0))
    # the left half of the arc is folded onto the right half
    r = pl.reduce_to_fundamental(tau("tau_rho"))
    assert r.tau == pl.Tau(QuadNum(F(1, 2), 0, 3), QuadNum(0, F(1, 2), 3))
    assert pl.is_reduced(r.tau)
    assert not pl.is_reduced(pl.Tau.of((F(-1, 2), 0), (1, 0)))


@settings(max_examples=300, deadline=None)
@given(taus)
def test_reduction_properties(t):
    r = pl.reduce_to_fundamental(t)
    assert pl.is_reduced(r.tau)
    (a, b), (c, d) = r.transform
    assert a * d - b * c == 1
    assert pl.mobius(r.transform, t) == r.tau
    again = pl.reduce_to_fundamental(r.tau)
    assert again.tau == r.tau and again.steps == 0


def test_region_examples():
    assert pl.region_classify(tau("tau_i")).segments == ("ImaginaryAxis", "UnitArc")
    assert pl.region_classify(tau("tau_2i")).segment == "ImaginaryAxis"
    assert pl.region_classify(tau("tau_half_plus_i")).segment == "LeftEdge"
    rho = pl.reduce_to_fundamental(tau("tau_rho")).tau
    assert pl.region_classify(rho).segments == ("LeftEdge", "UnitArc")
    c = pl.region_classify(tau("tau_third_2i"))
    assert c.segment == "Interior" and not c.j_real
    with pytest.raises(NotReduced):
        pl.region_classify(tau("tau_five_halves"))


def test_vr_golden_values():
    c = pl.vr_decide(tau("tau_half_plus_i"))
    assert c.kind == "RationalA" and c.denominator == 2
    assert pl.isogeny_degree(tau("tau_half_plus_i")).delta == 2

    t = tau("tau_sqrt2_half")
    c = pl.vr_decide(t)
    assert c.kind == "IrrationalA"
    assert c.t == QuadNum(1, 1, 2)
    assert c.delta == 2
    iso = pl.isogeny_degree(t, c)
    assert iso.delta == 2 and iso.constructive_index == 2 and iso.match

    c = pl.vr_decide(tau("tau_sqrt2_plus_i"))
    assert c.kind == "NotVR" and c.discriminant == 12


def test_vr_quadratic_hand_example():
    # a = sqrt2/2, b^2 = 1/2 + 0 sqrt2: (1/2) u^2 + 0 u - (1/2)(1/4 * 2 + 1/2) = 0
    A, B, C = pl.vr_quadratic(tau("tau_sqrt2_half"))
    assert (A, B, C) == (F(1, 2), 0, F(-1, 2))


@pytest.mark.parametrize("D", [2, 3, 5, 7])
def test_random_vr_certificates(D):
    rng = random.Random(D)
    done = 0
    while done < 40:
        t = random_vr_tau(rng, D)
        if t.a.is_rational():
            continue  # the generator occasionally lands on rational a
        done += 1
        c = pl.vr_decide(t)
        assert c.kind == "IrrationalA"
        pl.check_certificate(t, c)
        assert c.delta.denominator == 1 and c.delta > 0
        iso = pl.isogeny_degree(t, c)
        assert iso.match and iso.delta == c.delta


def test_bad_certificate_rejected():
    t = tau("tau_sqrt2_half")
    c = pl.vr_decide(t)
    forged = pl.VRCertificate("IrrationalA", r=c.r + 1, t=c.t, v=c.v, w=c.w, beta=c.beta,
                              delta=c.delta, discriminant=c.discriminant, other_t=c.other_t)
    with pytest.raises(CertificateInvalid):
        pl.check_certificate(t, forged)
    with pytest.raises(CertificateInvalid):
        pl.check_certificate(t, pl.vr_decide(tau("tau_sqrt2_plus_i")))


def test_geodesic_examples():
    g = pl.geodesic_classify(tau("tau_half_plus_i"))
    assert g.shape == "Vertical" and g.closed_at_infinity
    g = pl.geodesic_classify(tau("tau_sqrt2_half"))
    # |tau|^2 = 1, so the geodesic is the unit circle with feet at -1 and 1
    assert (g.p, g.q) == (0, -1) and g.endpoints == (-1, 1)
    g = pl.geodesic_classify(tau("tau_sqrt2_plus_i"))
    assert g.shape == "Semicircle" and not g.closed_at_infinity


@settings(max_examples=200, deadline=None)
@given(taus)
def test_geodesic_passes_through_tau(t):
    g = pl.geodesic_classify(t)
    if g.shape == "Vertical":
        assert g.x == t.a
    else:
        assert t.norm2() - t.a * g.p + g.q == 0
    assert g.closed_at_infinity == pl.vr_decide(t).is_vr


def test_cm_examples():
    r = pl.cm_analyze(tau("tau_sqrt2_i"))
    assert r.is_cm and len(r.samples) == 5 and all(ok for _, _, ok in r.samples)
    r = pl.cm_analyze(tau("tau_sqrt2_half"))
    assert not r.is_cm and r.reciprocal_ok
    t1, t2 = r.t_pair
    assert t1 * t2 == -1
    assert not pl.cm_analyze(tau("tau_sqrt2_plus_i")).is_cm


def test_random_cm_and_non_cm():
    rng = random.Random(99)
    for D in (2, 3, 5, 7):
        for _ in range(10):
            r = pl.cm_analyze(random_cm_tau(rng, D))
            assert r.is_cm and all(ok for _, _, ok in r.samples)
            t = random_vr_tau(rng, D)
            r = pl.cm_analyze(t)
            if not r.is_cm and not t.a.is_rational():
                assert r.reciprocal_ok is True
        g = random_generic_tau(rng, D)
        assert pl.cm_analyze(g).t_pair is None or pl.vr_decide(g).is_vr


def test_j_coefficient_table():
    assert list(pl.J_COEFFS) == pl.j_coefficients_from_eisenstein(len(pl.J_COEFFS))
    assert pl.J_COEFFS[:3] == (196884, 21493760, 864299970)


def test_j_special_values():
    ji = pl.j_invariant(tau("tau_i"), 10)
    assert abs(ji.value - 1728) < 1e-9
    jr = pl.j_invariant(tau("tau_rho"), 20)
    assert abs(jr.value) < 1e-9
    j2 = pl.j_invariant(tau("tau_2i"), 10)
    assert abs(j2.value - 287496) < 1e-6
    with pytest.raises(TooFewTermsForPrecision):
        pl.j_invariant(tau("tau_rho"), 10)


@pytest.mark.parametrize("name", ["tau_i", "tau_2i", "tau_third_2i", "tau_half_plus_i", "tau_sqrt2_half",
                                  "tau_sqrt2_sqrt2", "tau_five_halves"])
def test_j_matches_independent_evaluation(name):
    t = tau(name)
    jv = pl.j_invariant(t, 20, 30)
    ref = j_oracle(t)
    assert abs(jv.value - ref) <= max(jv.error_bound * 10, mpmath.mpf(10) ** -20) * max(1, abs(ref))


@settings(max_examples=50, deadline=None)
@given(taus)
def test_j_is_modular_invariant(t):
    red = pl.reduce_to_fundamental(t).tau
    if red.b.p < F(9, 10):
        return
    j1 = pl.j_invariant(t, 20, 30).value
    j2 = pl.j_invariant(red, 20, 30).value
    assert abs(j1 - j2) < 1e-6 * max(1, abs(j2))


def test_j_term_limits():
    with pytest.raises(TooFewTermsForPrecision):
        pl.j_invariant(tau("tau_i"), 0)
    with pytest.raises(TooFewTermsForPrecision):
        pl.j_invariant(tau("tau_i"), 21)
    with pytest.raises(TooFewTermsForPrecision):
        pl.j_invariant(tau("tau_i"), 2)
