import json
from fractions import Fraction

import pytest

from qpw.errors import SpecializationViolatesSideConditions, UnknownIdentity
from qpw.identities import (
    FAIL,
    KNOWN_FALSE,
    PASS,
    REGISTRY,
    Specialization,
    catalog,
    lookup,
    parse_monomial,
    perturb,
    verify,
    verify_andsim_by_interpolation,
    verify_extvar,
    verify_record,
)
from qpw.series import Monomial

CATALOG_IDS = [
    "qbin", "heine", "bailey_10phi9", "bailey_2psi2", "ramanujan_1psi1", "gf_repre", "extvar", "ext",
    "agarwal_me", "agarwal_2phi1", "andsim", "mt1_mainn", "mt1_fgf", "congmod4", "congmod4_b", "congmod4_c",
    "S_identity", "A_bilateral", "A_even", "A_odd_mod4", "alladi", "fine_3226", "clausen", "eq44", "conj_mod4",
    "barspt_rep", "barspt2_rep", "barsptomega_rep", "bailey_specialized", "lem1_oddsum", "cor_4", "cor_40",
    "s22_mod3", "fine_3231", "M1_mod3", "fine_3239", "phi_dissect9", "sigma_mod2", "mod5_lemma",
    "equ_A5B5", "equ_dis5", "equ_recip", "equ_eisen1", "sq1", "sq2", "equ_phi_prod", "equ_two_squares",
    "thm3_T_poly", "thm3_Tw_poly", "remark_k_param", "ady1_fix", "y_series",
]


def test_catalog_ids_resolve():
    for id_ in CATALOG_IDS:
        assert lookup(id_).id == id_
    with pytest.raises(UnknownIdentity):
        lookup("no_such_identity")


def test_catalog_metadata():
    meta = catalog()
    assert {m["id"] for m in meta} == set(REGISTRY)
    assert all(not m["known_false"] for m in meta)
    full = catalog(include_known_false=True)
    assert {m["id"] for m in full if m["known_false"]} == set(KNOWN_FALSE)
    assert all(m["title"] and m["title"] != m["id"] for m in full)


@pytest.mark.parametrize("id_,prec", [("mt1_mainn", 80), ("S_identity", 80), ("qbin", 60),
                                      ("barsptomega_rep", 60), ("A_odd_mod4", 60)])
def test_spot_anchors(id_, prec):
    assert verify(id_, prec).status == PASS


def test_qbin_with_given_and_trivial_parameters():
    spec = Specialization({"a": Monomial(1, 3), "z": Monomial(1, 2)})
    assert verify("qbin", 60, spec).passed
    zero = verify_record(lookup("qbin"), 30, params={"z": Monomial(0, 0)})
    assert zero.passed


def test_verification_is_deterministic():
    a = verify("cor_4", 40).to_dict()
    b = verify("cor_4", 40).to_dict()
    a.pop("elapsed_ms"), b.pop("elapsed_ms")
    assert a == b


@pytest.mark.parametrize("id_", ["congmod4", "fine_3226", "sq1", "equ_rAB"])
def test_pass_is_monotone_in_precision(id_):
    for prec in (10, 25, 40):
        assert verify(id_, prec).passed


@pytest.mark.parametrize("id_,x", [("mt1_mainn", 7), ("fine_3231", 12), ("sq2", Fraction(5))])
def test_perturbed_identity_fails_at_the_bump(id_, x):
    bad = perturb(lookup(id_), x)
    r = verify_record(bad, 40)
    assert r.status == FAIL
    assert r.first_fail_exponent == x


def test_modular_perturbation_by_the_modulus_still_passes():
    # adding 4 q^5 to a mod-4 claim does not change it
    assert verify_record(perturb(lookup("congmod4"), 5, delta=4), 40).passed
    assert not verify_record(perturb(lookup("congmod4"), 5, delta=2), 40).passed


@pytest.mark.parametrize("id_", sorted(KNOWN_FALSE))
def test_known_false_records_fail_with_location(id_):
    r = verify(id_)
    assert r.status == FAIL
    assert r.first_fail_exponent is not None


def test_ady1_location():
    assert verify("ady1_original").first_fail_exponent == 2
    assert verify("ady1_fix").passed


def test_side_condition_violation():
    spec = Specialization({"beta": Monomial(1, -2)})
    with pytest.raises(SpecializationViolatesSideConditions):
        verify("extvar", 20, spec)


def test_short_precision_rejected():
    with pytest.raises(ValueError):
        verify("qbin", 1)


def test_parse_monomial():
    assert parse_monomial("2") == Monomial(2, 0)
    assert parse_monomial("-1/2*q^3") == Monomial(Fraction(-1, 2), 3)
    assert parse_monomial("q") == Monomial(1, 1)
    assert parse_monomial("-q^-2") == Monomial(-1, -2)
    assert parse_monomial("q^(1/5)") == Monomial(1, 1, 5)
    with pytest.raises(ValueError):
        parse_monomial("x^2")


def test_report_json_round_trip():
    r = verify_record(perturb(lookup("sq1"), Fraction(3)), 30)
    d = json.loads(json.dumps(r.to_dict()))
    assert d["status"] == FAIL
    assert Fraction(d["first_fail_exponent"]) == 3
    assert set(d) >= {"id", "prec", "status", "first_fail_exponent", "lhs_coeff", "rhs_coeff",
                      "trials", "seed", "elapsed_ms"}
    assert "lhs=" in r.line()


def test_seeded_random_specializations_small():
    r = verify_extvar(trials=2, prec=20, seed=3)
    assert r.passed and r.trials == 2 and r.seed == 3


def test_andsim_by_interpolation():
    assert verify_andsim_by_interpolation(m_max=4, prec=20).passed
