"""分析工作流：经由 core.call_api 组合 toric/* 模块。"""

import json
from pathlib import Path

import pytest

import core

DATA_DIR = Path(__file__).resolve().parents[4] / "data"
EXAMPLE1 = {"n": 3, "c": 6, "rows": [[1, 0, 1], [0, 1, 1], [4, 4, 2]]}
FAMILY_332 = {"n": 3, "f": 3, "g": 2}


@pytest.fixture(scope="module", autouse=True)
def _modules():
    core.get_service_manager().load_project_modules()


def _workflow(path: str, payload: dict):
    return core.call_api(f"toric/analysis/{path}", payload, namespace="workflow")


class TestFamilyReport:
    def test_example_report(self):
        report = _workflow("family_report", FAMILY_332)
        assert report["config"] == EXAMPLE1
        assert report["system"]["equations"] == [
            "y1^6 - x1*x3",
            "y2^6 - x2*x3",
            "y3^2 - x1*x2*y1^2*y2^2",
            "y3^3 - x1^2*x2^2*x3",
        ]
        assert report["witness"]["equation"] == "y1^2*y2^2*y3 - x1*x2*x3"
        assert report["identities"]["all_hold"]
        assert report["omission_minimality"]["all_glued"]
        assert report["support_chain"] is False
        assert report["frobenius"] == 1
        assert report["proposition2"] is None

    def test_with_non_complete_intersection_check(self):
        report = _workflow("family_report", {**FAMILY_332, "proposition2": True})
        assert report["proposition2"]["e"] == 2
        assert report["proposition2"]["count_exceeds_n"]

    def test_invalid_family(self):
        with pytest.raises(core.InvalidInputError) as exc:
            _workflow("family_report", {"n": 3, "f": 4, "g": 2})
        assert exc.value.error_code == "INVALID_FAMILY"


class TestGlueReport:
    def test_shorthand_is_expanded(self):
        report = _workflow("glue_report", {"config": FAMILY_332, "p": 2})
        assert report["found"]
        assert report["family"] == FAMILY_332
        assert report["config"] == EXAMPLE1
        assert report["equations"] == ["y1^6 - x1*x3", "y2^6 - x2*x3", "y3^2 - x1*x2*y1^2*y2^2"]

    def test_explicit_configuration_is_recognized(self):
        report = _workflow("glue_report", {"config": EXAMPLE1, "p": 3})
        assert report["family"] == FAMILY_332
        assert report["equations"][-1] == "y3^3 - x1^2*x2^2*x3"

    def test_plain_gluing_fails(self):
        report = _workflow("glue_report", {"config": EXAMPLE1, "p": 0})
        assert not report["found"]
        assert report["tree"] is None
        assert report["binomials"] == []


class TestMarkovReport:
    def test_example(self):
        report = _workflow("markov_report", {"config": EXAMPLE1})
        assert report["count"] == 6
        assert report["complete_up_to_bound"]
        assert report["gradings"] == [12, 12, 14, 14, 16, 20]

    def test_lemma1_configuration(self):
        config = json.loads((DATA_DIR / "configs" / "lemma1_n3.json").read_text(encoding="utf-8"))
        report = _workflow("markov_report", {"config": config})
        assert report["family"] is None
        assert report["count"] == 2


class TestVerifyReport:
    def test_family_system_matches_markov_basis(self):
        report = _workflow("verify_report", {"config": FAMILY_332, "primes": [5, 7]})
        assert report["verified"]
        assert report["system_a"] == {"source": "theorem4(p=2, q=3)", "count": 4}
        assert report["system_b"]["count"] == 6
        assert [r["field_prime"] for r in report["reports"]] == [5, 7]
        assert report["parametrization"]["passed"]
        assert report["integer_lift"]["passed"]

    def test_dropped_system_is_not_verified(self):
        against = json.loads((DATA_DIR / "systems" / "example1_dropped.json").read_text(encoding="utf-8"))
        report = _workflow("verify_report", {"config": EXAMPLE1, "primes": [5], "system": against})
        assert not report["verified"]
        assert report["system_a"]["source"] == "file"
        assert report["reports"][0]["witnesses"]

    def test_free_configuration_needs_a_system(self):
        with pytest.raises(core.InvalidInputError) as exc:
            _workflow("verify_report", {"config": {"n": 3, "c": 2, "rows": []}})
        assert exc.value.error_code == "NO_SYSTEM"

    def test_empty_prime_list_is_not_verified(self):
        against = json.loads((DATA_DIR / "systems" / "example1_dropped.json").read_text(encoding="utf-8"))
        with pytest.raises(core.InvalidInputError) as exc:
            _workflow("verify_report", {"config": EXAMPLE1, "primes": [], "system": against})
        assert exc.value.error_code == "NO_PRIMES"
