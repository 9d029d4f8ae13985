from __future__ import annotations

import dataclasses

import pytest

from faultseed.engines import generate_grammar_mutants
from faultseed.external import ExternalConfig, execute_external
from faultseed.harness import INVALID, KILLED, SURVIVED
from faultseed.minilang import parse


@pytest.fixture
def project(tmp_path):
    work = tmp_path / "proj"
    work.mkdir()
    (work / "target.txt").write_text("alpha beta\n")
    return work


def _mutants(texts):
    base = generate_grammar_mutants(parse("fn f(a){return a;}"))[0]
    return [dataclasses.replace(base, id=f"x{i}", patched_source=t) for i, t in enumerate(texts)]


def test_tests_are_greps_over_the_target(project):
    # test "alpha" passes when the word is present in the mutated file
    config = ExternalConfig("grep -qw {test_id} target.txt")
    mutants = _mutants(["alpha beta\n", "alpha\n", "gamma\n"])
    matrix = execute_external(project, "target.txt", mutants, ["alpha", "beta"], config, workers=2)
    assert matrix["x0"].status == SURVIVED
    assert matrix["x1"].status == KILLED and matrix["x1"].failing_tests == {"beta"}
    assert matrix["x2"].failing_tests == {"alpha", "beta"}
    assert (project / "target.txt").read_text() == "alpha beta\n"


def test_build_failure_is_invalid(project):
    config = ExternalConfig("true {test_id}", build_cmd="grep -q ok target.txt")
    matrix = execute_external(project, "target.txt", _mutants(["ok\n", "bad\n"]), ["t"], config)
    assert matrix["x0"].status == SURVIVED
    assert matrix["x1"].status == INVALID


def test_timeout_counts_as_failure(project):
    config = ExternalConfig("sleep 5; true {test_id}", timeout_seconds=0.2)
    matrix = execute_external(project, "target.txt", _mutants(["x\n"]), ["slow"], config)
    assert matrix["x0"].failing_tests == {"slow"}


def test_config_validation(project):
    with pytest.raises(ValueError):
        ExternalConfig("make test")
    with pytest.raises(ValueError):
        ExternalConfig("run {test_id}", timeout_seconds=0)
    assert ExternalConfig.from_dict({"test_cmd_template": "run {test_id}"}).timeout_seconds == 60.0
    with pytest.raises(FileNotFoundError):
        execute_external(project, "missing.txt", [], ["t"], ExternalConfig("true {test_id}"))
