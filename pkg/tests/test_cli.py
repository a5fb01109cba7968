"""Command-line front end: exit codes and report documents."""

import json

import pytest

from app.main import cli

Z1 = {"family": "z_d", "params": {"d": 1}}
Z2 = {"family": "z_d", "params": {"d": 2}}
CYCLIC12 = {
    "family": "finite_perm",
    "params": {"size": 12},
    "generators": [{"name": "g", "table": [(i + 1) % 12 for i in range(12)]}],
}
TWO_TRIANGLES = {
    "family": "finite_perm",
    "params": {"size": 6},
    "generators": [{"name": "g", "table": [1, 2, 0, 4, 5, 3]}],
}


def _run(cli_runner, *args):
    result = cli_runner.invoke(cli, list(args), catch_exceptions=False)
    return result.exit_code, result.stdout


def _run_json(cli_runner, *args):
    code, out = _run(cli_runner, *args)
    return code, json.loads(out)


class TestOrbitCommands:
    """Test orbit and locfin commands."""

    def test_orbit(self, cli_runner, spec_file):
        """Test the orbit command."""
        code, doc = _run_json(cli_runner, "orbit", "--spec", spec_file(CYCLIC12), "--base", "0")
        assert code == 0
        assert doc["status"] == "Finite"
        assert doc["size"] == 12
        assert doc["eccentricity"] == 6

    def test_orbit_text_output(self, cli_runner, spec_file):
        """Test text output."""
        code, out = _run(cli_runner, "orbit", "--spec", spec_file(Z1), "--max-depth", "2", "--text")
        assert code == 0
        assert 'status: "Truncated"' in out.splitlines()
        assert "size: 5" in out.splitlines()

    def test_locfin_finite_universe(self, cli_runner, spec_file):
        """Test locfin over a finite universe."""
        code, doc = _run_json(cli_runner, "locfin", "--spec", spec_file(TWO_TRIANGLES))
        assert code == 0
        assert doc["all_finite"] is True
        assert len(doc["results"]) == 6

    def test_locfin_unknown(self, cli_runner, spec_file):
        """Test an unknown locfin verdict."""
        code, doc = _run_json(cli_runner, "locfin", "--spec", spec_file(Z1), "--base", "[0]", "--budget", "100")
        assert code == 1
        assert doc["results"][0]["status"] == "Unknown"

    def test_locfin_subgroup(self, cli_runner, spec_file):
        """Test locfin on a subgroup."""
        code, doc = _run_json(
            cli_runner, "locfin", "--spec", spec_file(CYCLIC12), "--base", "0", "--subgroup", '[["g", "g", "g"]]'
        )
        assert code == 0
        assert doc["results"][0]["size"] == 4


class TestRayPipeline:
    """find-ray, certify-ray, verify and extend chained through files."""

    def test_find_certify_verify(self, cli_runner, spec_file, tmp_path):
        """Test the ray pipeline end to end."""
        spec = spec_file(Z2)
        code, out = _run(cli_runner, "find-ray", "--spec", spec, "--base", "[0, 0]", "--length", "20")
        assert code == 0
        ray_path = tmp_path / "ray.json"
        ray_path.write_text(out)
        assert json.loads(out)["certified_simple"] is True

        code, out = _run(cli_runner, "certify-ray", "--spec", spec, "--ray", str(ray_path))
        assert code == 0
        cert_path = tmp_path / "cert.json"
        cert_path.write_text(out)

        code, doc = _run_json(cli_runner, "verify", "--spec", spec, "--cert", str(cert_path))
        assert code == 0
        assert doc["verdict"] == "Pass"
        assert doc["depth"] == 20

        code, out = _run(cli_runner, "extend", "--spec", spec, "--cert", str(cert_path))
        assert code == 0
        ext_path = tmp_path / "ext.json"
        ext_path.write_text(out)
        code, doc = _run_json(
            cli_runner, "verify", "--spec", spec, "--cert", str(ext_path), "--window-radius", "20"
        )
        assert code == 0
        assert doc["kind"] == "extended"
        assert doc["missing_points"] == [[1, 0]]

    def test_finite_orbit_has_no_ray(self, cli_runner, spec_file):
        """Test find-ray on a finite orbit."""
        code, doc = _run_json(cli_runner, "find-ray", "--spec", spec_file(CYCLIC12), "--base", "0", "--length", "100")
        assert code == 1
        assert doc["error"] == "orbit_is_finite"
        assert doc["diameter"] == 6

    def test_classify(self, cli_runner, spec_file):
        """Test the classify command."""
        code, doc = _run_json(cli_runner, "classify", "--spec", spec_file(CYCLIC12), "--length", "100")
        assert code == 0
        assert doc["outcome"] == "finite"
        assert doc["diameter"] == 6

    def test_find_ray_is_deterministic(self, cli_runner, spec_file):
        """Test seeded find-ray output."""
        spec = spec_file({"family": "free_group_self", "params": {"rank": 2}})
        first = _run(cli_runner, "find-ray", "--spec", spec, "--length", "15", "--seed", "4")
        second = _run(cli_runner, "find-ray", "--spec", spec, "--length", "15", "--seed", "4")
        assert first == second


class TestFiniteCommands:
    """Test finite-set commands."""

    def test_match_found(self, cli_runner, spec_file):
        """Test a successful match."""
        code, doc = _run_json(
            cli_runner, "match", "--spec", spec_file(Z1), "--source", "[[0], [1]]", "--target", "[[0], [2]]",
            "--max-word-len", "2",
        )
        assert code == 0
        assert doc["found"] is True
        assert doc["certificate"]["kind"] == "finite"

    def test_match_not_found(self, cli_runner, spec_file):
        """Test a failed match."""
        code, doc = _run_json(
            cli_runner, "match", "--spec", spec_file(Z1), "--source", "[[0], [1]]", "--target", "[[4], [5]]",
            "--max-word-len", "2",
        )
        assert code == 1
        assert doc["hall_violation"]["deficiency"] == 2

    def test_match_budget_exhausted(self, cli_runner, spec_file):
        """Test match with an exhausted budget."""
        code, doc = _run_json(
            cli_runner, "match", "--spec", spec_file(Z2), "--source", "[[0, 0]]", "--target", "[[30, 0]]",
            "--max-word-len", "30", "--budget", "50",
        )
        assert code == 2
        assert doc["error"] == "budget_exceeded"

    def test_brute_pieces(self, cli_runner, spec_file):
        """Test the brute-pieces command."""
        code, doc = _run_json(
            cli_runner, "brute-pieces", "--spec", spec_file(Z1), "--source", "[[0], [1]]", "--target", "[[0], [2]]",
            "--max-word-len", "1", "--max-pieces", "1",
        )
        assert code == 1
        assert doc["found"] is False

    def test_extend_transitive(self, cli_runner, spec_file):
        """Test the extend-transitive command."""
        code, doc = _run_json(cli_runner, "extend-transitive", "--spec", spec_file(TWO_TRIANGLES))
        assert code == 0
        assert [g["name"] for g in doc["generators"]] == ["g", "swap_0_3"]


class TestWitnessCommands:
    """Test window and profile commands."""

    def test_roe_witness_natural_shift(self, cli_runner, spec_file):
        """Test roe-witness on the natural shift."""
        code, doc = _run_json(cli_runner, "roe-witness", "--spec", spec_file(Z1), "--window-radius", "50")
        assert code == 0
        assert doc["identities_exact"] is True
        assert doc["safe_set"] == [[n] for n in range(50)]
        assert doc["image_set"] == [[n] for n in range(1, 51)]
        assert doc["gap"]["flagged"] is True
        assert doc["isometry"]["role"] == "partial_isometry"

    def test_embed_profile_word(self, cli_runner, spec_file):
        """Test embed-profile with a word."""
        code, doc = _run_json(
            cli_runner, "embed-profile", "--spec", spec_file({"family": "free_group_self", "params": {"rank": 2}}),
            "--word", '["a"]', "--radius", "4",
        )
        assert code == 0
        assert doc["forward"] == list(range(9))

    def test_embed_profile_collision(self, cli_runner, spec_file):
        """Test embed-profile collisions."""
        code, doc = _run_json(
            cli_runner, "embed-profile", "--spec", spec_file(CYCLIC12), "--word", "g", "--radius", "6", "--base", "0"
        )
        assert code == 1
        assert doc["injective"] is False


class TestErrors:
    """Exit code 2 with an error document."""

    def test_malformed_spec(self, cli_runner, tmp_path):
        """Test malformed JSON input."""
        path = tmp_path / "spec.json"
        path.write_text("{not json")
        code, doc = _run_json(cli_runner, "orbit", "--spec", str(path))
        assert code == 2
        assert doc["error"] == "parse_error"

    def test_invalid_field(self, cli_runner, spec_file):
        """Test invalid spec fields."""
        bad = {"family": "finite_perm", "params": {"size": 3}, "generators": [{"name": "g", "table": "abc"}]}
        code, doc = _run_json(cli_runner, "orbit", "--spec", spec_file(bad))
        assert code == 2
        assert doc["field"] == "generators.0.table"

    def test_unknown_family(self, cli_runner, spec_file):
        """Test unknown families."""
        code, doc = _run_json(cli_runner, "orbit", "--spec", spec_file({"family": "heisenberg"}))
        assert code == 2
        assert doc["error"] == "invalid_spec"

    def test_invalid_budget_option(self, cli_runner, spec_file):
        """Test invalid budget flags."""
        code, doc = _run_json(cli_runner, "orbit", "--spec", spec_file(Z1), "--budget", "0")
        assert code == 2
        assert doc["field"] == "budget"


@pytest.mark.slow
def test_selftest_without_sweep(cli_runner):
    code, doc = _run_json(cli_runner, "selftest", "--no-sweep")
    assert code == 0
    assert doc["passed"] is True
    assert {check["name"] for check in doc["checks"]} >= {"natural_shift", "ray_round_trip"}
