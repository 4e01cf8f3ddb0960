import json

import pytest

from qpw import congruences
from qpw.congruences import (
    CANDIDATE,
    FAIL,
    PASS,
    CongruenceClaim,
    check,
    check_hecke_mod4,
    check_parity_characterization,
    is_square_or_twice_square,
    mine,
    stated_claims,
    table,
    y_oddness_evidence,
)


def test_overpartition_4n3_to_200():
    assert check(CongruenceClaim("pbar_omega", 4, 3, 4, 200)).verdict == PASS


def test_smallest_parts_10n6_to_100():
    assert check(CongruenceClaim("sptbar_omega", 10, 6, 5, 100)).verdict == PASS


def test_residue_one_mod_3_fails_early():
    c = check(CongruenceClaim("sptbar_omega", 3, 1, 3, 100))
    assert c.verdict == FAIL
    assert c.counterexample is not None and c.counterexample < 5
    assert table("sptbar_omega", 10)[3 * c.counterexample + 1] % 3 != 0


def test_stated_claims_hold_to_300():
    claims = congruences.check_all(stated_claims(300))
    assert len(claims) == len(congruences.STATED_CLAIMS)
    assert all(c.verdict == PASS for c in claims)
    assert all(c.bound <= 300 for c in claims)


def test_sources_agree_to_40():
    for sid in congruences.ENUMERATION:
        assert table(sid, 40, "series")[1:41] == table(sid, 40, "enumeration")[1:41]
    a = check(CongruenceClaim("sptbar", 3, 0, 3, 13), "enumeration")
    assert a.verdict == PASS


def test_parity_examples():
    assert is_square_or_twice_square(1)
    assert not is_square_or_twice_square(3)
    assert is_square_or_twice_square(8)
    for n, odd in ((1, True), (3, False), (8, True)):
        for s in ("sptbar", "sptbar_omega"):
            assert (table(s, 10)[n] % 2 == 1) == odd
    assert check_parity_characterization(200).verdict == PASS


def test_hecke_mod4_small():
    assert check_hecke_mod4(30).verdict == PASS


def test_mining_finds_the_stated_progressions():
    found = {c.key() for c in mine("pbar_omega", 8, [2, 3, 4, 5], 300)}
    assert {(4, 3, 4), (8, 6, 4)} <= found
    assert all(c.verdict == CANDIDATE for c in mine("pbar_omega", 4, [4], 300))
    assert mine("pbar_omega", 4, [], 300) == []


def test_y_evidence():
    rep = y_oddness_evidence(100)
    assert rep.verdict == PASS
    assert "not a proof" in rep.detail
    assert rep.data["odd_coefficients"][3] == -1


def test_invalid_claims():
    for args in ((0, 0, 3), (3, 3, 3), (3, -1, 3), (3, 0, 1)):
        with pytest.raises(ValueError):
            CongruenceClaim("pbar_omega", *args, 10)
    with pytest.raises(KeyError):
        CongruenceClaim("nope", 2, 0, 2, 10)
    with pytest.raises(ValueError):
        table("pbar", 10, "abacus")


def test_json_round_trip():
    claims = congruences.check_all(stated_claims(60, "sptbar2"))
    data = json.loads(congruences.dumps(claims))
    assert [d["verdict"] for d in data] == [PASS, PASS, PASS]
    assert {"sequence_id", "A", "B", "M", "n_max", "verdict", "counterexample"} == set(data[0])
