import json
from pathlib import Path

import pytest

gqtk = pytest.importorskip("gqtk")

FIXTURES = Path(__file__).resolve().parents[2] / "fixtures"


def test_fixture_names_and_aliases():
    assert gqtk.fixture_names() == ["etale", "non-etale"]
    assert gqtk.fixture("8.2")["name"] == "non-etale"
    with pytest.raises(gqtk.InputError):
        gqtk.fixture("nope")


def test_fixtures_command_passes():
    report = gqtk.fixtures()
    assert report["exit_code"] == gqtk.EXIT_PASS
    assert all(c["pass"] for c in report["checks"])


def test_build_gq_from_dict_and_path():
    from_dict = gqtk.build_gq(gqtk.fixture("etale"))
    from_path = gqtk.build_gq(FIXTURES / "etale.json")
    assert from_dict["quantale"]["elements"] == 17
    assert from_dict["quantale"]["inverse_quantal_frame"] is True
    assert from_path["quantale"] == from_dict["quantale"]


def test_non_etale_facts():
    q = gqtk.build_gq(gqtk.fixture("non-etale"))["quantale"]
    assert q["elements"] == 23
    assert q["distributive"] is False
    assert q["topological_base"] is False


def test_roundtrip_certificates():
    report = gqtk.roundtrip(gqtk.fixture("non-etale"))
    assert report["exit_code"] == gqtk.EXIT_PASS
    assert report["roundtrip"]["quantale_iso"] is True
    assert report["roundtrip"]["groupoid_iso"] is True


def test_exit_codes():
    assert gqtk.check({"points": ["a"]}, "space")["exit_code"] == gqtk.EXIT_INPUT_ERROR
    assert gqtk.check({"points": ["a", "b"], "opens": [["a"]]}, "space")["exit_code"] == gqtk.EXIT_CHECK_FAILURE
    assert gqtk.build_gq(gqtk.fixture("etale"), budget=4)["exit_code"] == gqtk.EXIT_BUDGET
    assert gqtk.search(6)["exit_code"] == gqtk.EXIT_INPUT_ERROR


def test_search_counts():
    report = gqtk.search(4)
    assert report["table"]["models_by_size"] == {"1": 1, "2": 1, "3": 3, "4": 17}


def test_space_object():
    s = gqtk.Space(gqtk.fixture("etale")["space"])
    assert s.is_sober() and s.is_t0() and not s.is_t1()
    assert len(s.prime_opens()) == 3
    indiscrete = gqtk.Space({"points": ["a", "b"], "opens": [[], ["a", "b"]]})
    assert not indiscrete.is_sober()
    assert not indiscrete.is_union_of_locally_closed(0b01, verify_oracles=True)
    with pytest.raises(gqtk.ValidationError):
        gqtk.Space({"points": ["a", "b"], "opens": [["a"]]})


def test_quantale_object():
    chain = gqtk.Quantale({"n": 2, "leq": [[0, 1]], "product": [[0, 0], [0, 1]], "involution": [0, 1], "unit": 1})
    assert len(chain) == 2
    assert all(v["holds"] for v in chain.check_axioms(verify_oracles=True).values())
    assert chain.check_sg()["holds"]
    assert chain.partial_units() == [0, 1]
    assert chain.isomorphic(gqtk.Quantale(chain.to_json())) == [0, 1]

    broken = json.loads(chain.to_json())
    broken["product"][1][1] = 0
    failed = gqtk.Quantale(broken).check_axioms()
    assert not failed["U"]["holds"] and failed["U"]["witness"]
