import json

import pytest

import thinlie.harness as harness
from thinlie.analysis import FAKE, GENUINE_FINITE, GENUINE_INFINITE
from thinlie.harness import (
    EXPERIMENTS,
    exp_determinism,
    exp_ldies,
    exp_adjoint_identities,
    exp_chain_structure,
    exp_second_diamond,
    exp_superfluity,
    exp_theorem41,
    load_grid,
    run_all,
    run_experiment,
    theorem41_pattern,
)


class TestPattern:
    def test_q3_positions(self):
        pat = theorem41_pattern(3, 1, 1, 23)
        assert pat[3] == (1, FAKE, None)
        assert pat[5] == (2, GENUINE_INFINITE, None)
        assert pat[9] == (2, GENUINE_FINITE, 1)
        assert pat[15] == (2, GENUINE_FINITE, 2)
        assert pat[21] == (1, FAKE, None)
        assert pat[4][1] == "chain"

    def test_q9_positions(self):
        pat = theorem41_pattern(3, 2, 1, 34)
        assert pat[9] == (1, FAKE, None)
        assert pat[17] == (2, GENUINE_INFINITE, None)
        assert pat[33] == (2, GENUINE_FINITE, 1)


class TestTheorem41Experiment:
    def test_small_q3(self):
        res = exp_theorem41(3, 1, 1, 14)
        assert res.verdict
        assert all(c["ok"] for c in res.checks)

    def test_rejects_small_range(self):
        with pytest.raises(ValueError, match="at least"):
            exp_theorem41(3, 1, 1, 10)

    def test_detects_damage(self, monkeypatch):
        # dropping the final type relator must break the expected pattern
        import thinlie.presentations as presentations

        original = presentations.build_theorem41

        def sabotaged(p, n, s):
            pres = original(p, n, s)
            return presentations.Presentation(
                pres.field, pres.relators[:-1], pres.provenance, dict(pres.params)
            )

        monkeypatch.setattr(harness, "build_theorem41", sabotaged)
        res = exp_theorem41(3, 1, 1, 14)
        assert not res.verdict
        assert res.evidence["mismatches"]


class TestLdiesRouting:
    def test_odd_a_checks_identity(self):
        res = exp_ldies(5, 1, 3, 16)
        assert res.verdict
        assert any("[v_3 x x] = 0" in c["what"] for c in res.checks)

    def test_even_a_collapse(self):
        res = exp_ldies(5, 1, 4, 28)
        assert res.verdict
        assert any("degree 23 is zero" in c["what"] for c in res.checks)
        assert res.evidence["observed_collapse"] == 23

    def test_a_cong_one_collapse(self):
        res = exp_ldies(3, 1, 7, 26)
        assert res.verdict
        assert any("degree 22 is zero" in c["what"] for c in res.checks)

    def test_power_control_survives(self):
        res = exp_ldies(3, 1, 4, 32)
        assert res.verdict
        whats = [c["what"] for c in res.checks]
        assert any("no zero component" in w for w in whats)
        assert any("[v_7 x x] != 0" in w for w in whats)

    def test_insufficient_range_rejected(self):
        with pytest.raises(ValueError, match="max_degree too small"):
            exp_ldies(5, 1, 4, 20)


class TestAdjointIdentities:
    def test_q5(self):
        res = exp_adjoint_identities(5, 1, 1, 28)
        assert res.verdict
        ks = {c["what"].split(":")[0] for c in res.checks}
        assert {"k=2", "k=3", "k=4", "k=5"} <= ks

    def test_q3_includes_finite_type_correction(self):
        res = exp_adjoint_identities(3, 1, 1, 14)
        assert res.verdict
        # k = 4 sits at the type-1 diamond, exercising mu^-1 = 1
        assert any(c["what"].startswith("k=4") for c in res.checks)

    def test_q3_skips_q_gt_3_extras(self):
        res = exp_adjoint_identities(3, 1, 1, 14)
        assert not any("x^(q-4)" in c["what"] for c in res.checks)

    def test_too_small_range(self):
        with pytest.raises(ValueError):
            exp_adjoint_identities(5, 1, 1, 9)


def test_chains_experiment():
    res = exp_chain_structure(5, 1, 1, 30)
    assert res.verdict
    assert res.evidence["genuine_diamonds"] == [9, 13, 17, 21, 25]


def test_second_diamond_experiment():
    for p, n, max_degree, expected in ((3, 1, 14, 5), (5, 1, 28, 9), (3, 2, 36, 17)):
        res = exp_second_diamond(p, n, 1, max_degree)
        assert res.verdict
        assert res.evidence["second_diamond"] == expected


def test_superfluity_experiment():
    res = exp_superfluity(3, 1, 4, 16)
    assert res.verdict
    assert res.evidence["dims_without"] == res.evidence["dims_with"]


def test_determinism_experiment():
    res = exp_determinism(3, 1, 1, 14)
    assert res.verdict


class TestResultPlumbing:
    def test_runtime_excluded_by_default(self):
        res = exp_second_diamond(3, 1, 1, 14)
        payload = res.to_jsonable()
        assert "runtime_seconds" not in payload
        assert "runtime_seconds" in res.to_jsonable(include_runtime=True)
        assert res.runtime > 0

    def test_text_rendering(self):
        res = exp_second_diamond(3, 1, 1, 14)
        text = res.to_text()
        assert text.startswith("[PASS] second-diamond")
        assert "ok" in text

    def test_json_serializable(self):
        res = exp_ldies(5, 1, 3, 16)
        json.dumps(res.to_jsonable(), sort_keys=True)


class TestGrid:
    def test_loads(self):
        grid = load_grid()
        assert len(grid) >= 14
        assert all(entry["experiment"] in EXPERIMENTS for entry in grid)

    def test_unknown_experiment(self):
        with pytest.raises(ValueError, match="unknown experiment"):
            run_experiment("nonsense", p=3)

    def test_run_all_small(self):
        grid = [
            {"experiment": "second-diamond",
             "params": {"p": 3, "n": 1, "s": 1, "max_degree": 14}},
            {"experiment": "ldies",
             "params": {"p": 5, "n": 1, "a": 3, "max_degree": 16}},
        ]
        results = run_all(grid)
        assert [r.verdict for r in results] == [True, True]
