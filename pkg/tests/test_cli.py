import json
import subprocess
import sys

import pytest

from geotits import cli
from geotits.cli import Scene, SceneError, HypothesesError, run_command


def scene_path(name):
    return str(cli.corpus_dir() / f"{name}.json")


def load(name):
    return Scene(json.loads((cli.corpus_dir() / f"{name}.json").read_text()))


def test_scene_validation_errors():
    with pytest.raises(SceneError, match="duplicates"):
        Scene({"geometry": "E", "n": 2, "hyperplanes": [["0", "1", "0"], ["0", "2", "0"]]})
    with pytest.raises(SceneError, match="zero functional"):
        Scene({"geometry": "E", "n": 2, "hyperplanes": [["0", "0", "0"]]})
    with pytest.raises(SceneError, match="strings"):
        Scene({"geometry": "E", "n": 2, "hyperplanes": [["0", 0.5, "1"]]})
    with pytest.raises(SceneError, match="unit ball"):
        Scene({"geometry": "H", "n": 2, "hyperplanes": [["0", "1", "0"]],
               "points": [["1", "0"]]})
    with pytest.raises(SceneError, match="geometry"):
        Scene({"geometry": "X", "n": 2})
    with pytest.raises(SceneError, match="does not meet"):
        Scene({"geometry": "H", "n": 2, "hyperplanes": [["3", "1", "0"]]})


def test_triangle_verify():
    scene = load("e2_triangle")
    checks, overall = run_command("verify", "solomon-tits", scene)
    assert overall == "PASS"
    assert checks[0]["bounded_regions"] == 1 and checks[0]["apartment_iso"]


def test_two_cube_homology():
    scene = load("h3_two_cubes")
    checks, overall = run_command("homology", "st", scene)
    assert overall == "PASS"
    block = checks[0]
    assert block["reduced_homology"] == {
        "2": {"betti": 1, "torsion": []},
        "3": {"betti": 1, "torsion": []},
    }
    assert block["wedge_verdict"] is False


def test_hypotheses_exits():
    scene = load("s2_one_plane")
    with pytest.raises(HypothesesError):
        run_command("verify", "solomon-tits", scene)
    adm = load("s2_coordinate")
    with pytest.raises(HypothesesError):
        run_command("verify", "suspension", adm)


def test_cli_exit_codes(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"geometry": "E", "n": 2,
                               "hyperplanes": [["0", "1", "0"], ["0", "2", "0"]]}))
    assert cli.main(["validate", str(bad)]) == cli.EXIT_INVALID_SCENE
    assert cli.main(["validate", scene_path("e2_triangle")]) == cli.EXIT_PASS
    assert cli.main(["verify", "suspension", scene_path("s2_coordinate")]) == cli.EXIT_HYPOTHESES
    assert cli.main(["verify", "solomon-tits", scene_path("e2_triangle")]) == cli.EXIT_PASS


def test_report_deterministic(tmp_path, capsys):
    out1 = tmp_path / "r1.json"
    out2 = tmp_path / "r2.json"
    cli.main(["--json", str(out1), "verify", "duality", scene_path("s2_coordinate")])
    cli.main(["--json", str(out2), "verify", "duality", scene_path("s2_coordinate")])
    capsys.readouterr()
    assert out1.read_bytes() == out2.read_bytes()


def test_arrangement_seeded(tmp_path, capsys):
    code = cli.main(["--seed", "7", "arrangement", scene_path("e2_four_lines")])
    captured = capsys.readouterr()
    assert code == cli.EXIT_PASS
    rep = json.loads(captured.out)
    block = rep["checks"][0]
    assert block["partition_failures"] == 0
    assert block["region_basis_size"] == 3


def test_groups_commands(capsys):
    assert cli.main(["groups", "pt", scene_path("e2_triangle")]) == cli.EXIT_PASS
    rep = json.loads(capsys.readouterr().out)
    assert rep["checks"][0]["free_rank"] == 1
    assert cli.main(["groups", "ls", scene_path("e2_points_four")]) == cli.EXIT_PASS
    rep = json.loads(capsys.readouterr().out)
    assert rep["checks"][0]["free_rank"] == 3


def test_resolution_command(capsys):
    assert cli.main(["resolution", scene_path("e2_four_lines")]) == cli.EXIT_PASS
    rep = json.loads(capsys.readouterr().out)
    block = rep["checks"][0]
    assert block["h1_rank"] == 3 and block["basis_size"] == 3


def test_scene_digest_stable():
    s1 = load("e2_triangle")
    s2 = load("e2_triangle")
    assert s1.digest == s2.digest


def test_console_script_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "geotits.cli", "validate", scene_path("s0_base")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    rep = json.loads(proc.stdout)
    assert rep["overall"] == "PASS"


def test_scope_mismatches_exit_hypotheses(tmp_path):
    whole_sphere = tmp_path / "whole.json"
    whole_sphere.write_text(json.dumps({"geometry": "S", "n": 2, "hyperplanes": []}))
    assert cli.main(["verify", "duality", scene_path("e2_triangle")]) == cli.EXIT_HYPOTHESES
    assert cli.main(["verify", "suspension", str(whole_sphere)]) == cli.EXIT_HYPOTHESES
    assert cli.main(["closure", str(whole_sphere)]) == cli.EXIT_PASS
