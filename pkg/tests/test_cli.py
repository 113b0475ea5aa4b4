import json

import pytest

from equimon.cli.commands import EXIT_INPUT_ERROR, EXIT_OK, main
from equimon.core.corpus import z2_six_point_set


@pytest.fixture
def run(tmp_path, capsys):
    """以空配置目录运行命令行，返回 (退出码, stdout, stderr)"""
    def _run(*argv):
        code = main(["--config", str(tmp_path / "config"), *argv])
        out, err = capsys.readouterr()
        return code, out, err
    return _run


@pytest.fixture
def six_point_file(write_instance, six_point_instance):
    return write_instance(six_point_instance, "six.json")


@pytest.fixture
def trivial3_file(write_instance):
    return write_instance({
        "group": {"degree": 1, "generators": []},
        "action": {"coset_spaces": [[], [], []]},
    }, "trivial3.json")


@pytest.fixture
def regular_s3_file(write_instance):
    return write_instance({
        "group": {"degree": 3, "generators": [[1, 0, 2], [1, 2, 0]]},
        "action": {"coset_spaces": [[]]},
    }, "regular_s3.json")


def test_analyze_six_points(run, six_point_file):
    code, out, _ = run("analyze", six_point_file)
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["counts"] == {
        "endomorphisms": "144",
        "automorphisms": "16",
        "fixing_collapsings": "10",
        "collapsing_types": "3",
    }
    assert report["instance"]["group_order"] == 2
    assert report["instance"]["n_orbits"] == 4
    assert [b["alpha"] for b in report["boxes"]] == [2, 2]
    assert [b["normalizer_index"] for b in report["boxes"]] == [2, 1]
    assert [b["options"] for b in report["boxes"]] == ["6", "2"]
    assert report["types"] == {"u_union_total": "3", "kappa": "0"}


def test_analyze_trivial_group(run, trivial3_file):
    code, out, _ = run("analyze", trivial3_file)
    assert code == EXIT_OK
    assert json.loads(out)["counts"] == {
        "endomorphisms": "27",
        "automorphisms": "6",
        "fixing_collapsings": "6",
        "collapsing_types": "1",
    }


def test_analyze_is_byte_stable(run, six_point_file):
    first = run("analyze", six_point_file)
    second = run("analyze", six_point_file)
    assert first == second


def test_analyze_text_format(run, six_point_file):
    code, out, _ = run("analyze", six_point_file, "--format", "text")
    assert code == EXIT_OK
    assert "144" in out
    assert "α=2" in out


def test_malformed_generator(run, write_instance):
    path = write_instance({
        "group": {"degree": 3, "generators": [[0, 0, 1]]},
        "action": {"generator_images": [[0, 1, 2]]},
    })
    code, out, err = run("analyze", path)
    assert code == EXIT_INPUT_ERROR
    assert out == ""
    assert "not a permutation" in err
    assert "group.generators[0]" in err


def test_generator_image_that_is_not_an_array(run, write_instance):
    path = write_instance({
        "group": {"degree": 2, "generators": [[1, 0]]},
        "action": {"generator_images": [5]},
    })
    code, out, err = run("analyze", path)
    assert code == EXIT_INPUT_ERROR
    assert out == ""
    assert "action.generator_images[0]" in err


def test_inconsistent_action(run, write_instance):
    path = write_instance({
        "group": {"degree": 2, "generators": [[1, 0]]},
        "action": {"generator_images": [[1, 2, 0]]},
    })
    code, _, err = run("analyze", path)
    assert code == EXIT_INPUT_ERROR
    assert "inconsistent action" in err


def test_missing_file(run, tmp_path):
    code, _, err = run("analyze", str(tmp_path / "missing.json"))
    assert code == EXIT_INPUT_ERROR
    assert "missing.json" in err


def test_subgroup_cap_from_environment(run, regular_s3_file, monkeypatch):
    monkeypatch.setenv("EQUIMON_MAX_GROUP_ORDER", "4")
    code, _, err = run("analyze", regular_s3_file)
    assert code == EXIT_INPUT_ERROR
    assert "subgroup enumeration refused" in err


def test_verify_six_points(run, six_point_file):
    code, out, _ = run("verify", six_point_file)
    assert code == EXIT_OK
    checks = {c["name"]: c["status"] for c in json.loads(out)["verification"]}
    assert checks["end"] == checks["aut"] == checks["closure"] == "pass"


def test_verify_regular_s3(run, regular_s3_file):
    code, out, _ = run("verify", regular_s3_file)
    assert code == EXIT_OK
    counts = json.loads(out)["counts"]
    assert counts["endomorphisms"] == counts["automorphisms"] == "6"


def test_verify_with_small_cap_still_succeeds(run, six_point_file):
    code, out, _ = run("verify", six_point_file, "--cap", "10", "--skip-closure")
    assert code == EXIT_OK
    checks = {c["name"]: c["status"] for c in json.loads(out)["verification"]}
    assert checks["aut"] == "skipped"
    assert checks["closure"] == "skipped"


def test_poset_six_points(run, six_point_file):
    code, out, _ = run("poset", six_point_file)
    assert code == EXIT_OK
    assert out.startswith("digraph")
    assert out.count("[label=") == 2
    assert out.count("->") == 1
    assert "c0 -> c1;" in out
    assert "|H|=1, α=2, [N:H]=2" in out


def test_poset_trivial_and_regular(run, trivial3_file, regular_s3_file):
    for path in (trivial3_file, regular_s3_file):
        code, out, _ = run("poset", path)
        assert code == EXIT_OK
        assert out.count("[label=") == 1
        assert "->" not in out


def test_enumerate(run, six_point_file):
    code, out, _ = run("enumerate", six_point_file, "--what", "collapsings")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["count"] == "10"
    assert [2, 3, 2, 3, 4, 5] in payload["maps"]

    code, out, _ = run("enumerate", six_point_file, "--what", "end", "--limit", "5")
    payload = json.loads(out)
    assert payload["count"] == "144"
    assert len(payload["maps"]) == 5

    code, out, _ = run("enumerate", six_point_file, "--what", "aut")
    assert json.loads(out)["count"] == "16"


def test_output_file(run, six_point_file, tmp_path):
    target = tmp_path / "out" / "report.json"
    code, out, _ = run("analyze", six_point_file, "--output", str(target))
    assert code == EXIT_OK
    assert out == ""
    assert json.loads(target.read_text(encoding="utf-8"))["counts"]["endomorphisms"] == "144"


def test_coset_instance_round_trip(run, write_instance):
    instance = z2_six_point_set().to_instance_file()
    first = write_instance(instance.to_dict(), "first.json")
    _, out_first, _ = run("analyze", first)
    reparsed = type(instance).from_json(instance.to_json())
    second = write_instance(reparsed.to_dict(), "second.json")
    _, out_second, _ = run("analyze", second)
    a, b = json.loads(out_first), json.loads(out_second)
    a["instance"].pop("name")
    b["instance"].pop("name")
    assert a == b
    assert a["counts"]["endomorphisms"] == "144"


def test_corpus_command(run):
    code, out, _ = run("corpus", "--count", "3", "--seed", "1", "--max-end", "500")
    assert code == EXIT_OK
    summary = json.loads(out)
    assert len(summary) == 3
    assert all(entry["passed"] for entry in summary)
