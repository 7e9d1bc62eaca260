"""Integration tests for the command-line surface."""

import pytest
from click.testing import CliRunner

from src.cli import cli
from src.formalgeo import load_field
from src.minimodel import load_map
from src.models import CohomologySlot, KoszulReport
from src.yamlio import load_yaml

UNSIGNED_LEIBNIZ = """\
name: lie1bi_unsigned
generators:
  - {name: delta, arity: [2, 1], degree: 0, outputs: sign}
  - {name: bracket, arity: [1, 2], degree: 1, inputs: trivial}
relations:
  - name: jacobi
    slot: [1, 3]
    terms:
      - coeff: 1
        tree: "bracket(out:[1], in:[bracket(out:[*], in:[1, 2]), 3])"
        symmetrize: {inputs: trivial}
  - name: cojacobi
    slot: [3, 1]
    terms:
      - coeff: 1
        tree: "delta(out:[delta(out:[1, 2], in:[*]), 3], in:[1])"
        symmetrize: {outputs: sign}
  - name: leibniz
    slot: [2, 2]
    terms:
      - coeff: 1
        tree: "delta(out:[1, 2], in:[bracket(out:[*], in:[1, 2])])"
      - coeff: -1
        tree: "bracket(out:[1], in:[delta(out:[*, 2], in:[1]), 2])"
        symmetrize: {inputs: trivial}
"""


def run(runner: CliRunner, *args: str):
    return runner.invoke(cli, list(args), obj={})


@pytest.mark.integration
class TestPresentationCommands:
    """Test presentation-level commands."""

    def test_presentations(self, runner):
        result = run(runner, "presentations")
        assert result.exit_code == 0
        assert "lie1bi" in result.stdout.split()

    def test_free_dim(self, runner):
        result = run(runner, "--format", "structured", "free-dim", "lie", "--slot", "1,3")
        assert result.exit_code == 0
        lines = result.stdout.splitlines()
        assert lines[0] == "# dioperad-engine report v1"
        assert "slot.dim = 2" in lines
        assert "slot.ideal_dim = 1" in lines

    def test_free_dim_cross_check(self, runner):
        result = run(runner, "--format", "structured", "free-dim", "lie1bi", "--slot", "2,2", "--cross-check")
        assert result.exit_code == 0
        lines = result.stdout.splitlines()
        assert "tree_shapes = 5" in lines
        assert "slot.free_dim = 5" in lines

    def test_free_dim_without_cross_check(self, runner):
        result = run(runner, "--format", "structured", "free-dim", "lie", "--slot", "1,3")
        assert "tree_shapes = none" in result.stdout.splitlines()

    def test_free_dim_text(self, runner):
        result = run(runner, "free-dim", "com", "--slot", "1,3")
        assert result.exit_code == 0
        assert result.stdout.startswith("free-dim: PASS")

    def test_bad_slot(self, runner):
        result = run(runner, "free-dim", "lie", "--slot", "1-3")
        assert result.exit_code == 2

    def test_vertex_cap_too_small(self, runner):
        result = run(runner, "free-dim", "lie", "--slot", "1,4", "--max-vertices", "2")
        assert result.exit_code == 3

    def test_unknown_presentation(self, runner):
        result = run(runner, "free-dim", "nothing", "--slot", "1,2")
        assert result.exit_code == 2

    def test_dual_to_stdout(self, runner):
        result = run(runner, "dual", "lie1bi")
        assert result.exit_code == 0
        assert "lie1bi!" in result.stdout

    def test_dual_to_file(self, runner, tmp_path):
        target = tmp_path / "dual.yaml"
        result = run(runner, "--output", str(target), "dual", "lie")
        assert result.exit_code == 0
        assert load_yaml(target)["name"] == "lie!"


@pytest.mark.integration
class TestKoszulCommands:
    """Test the Koszulness and resolution commands."""

    def test_koszul(self, runner):
        result = run(runner, "--format", "structured", "koszul", "lie", "--window", "4")
        assert result.exit_code == 0
        assert "verdict = koszul-in-window" in result.stdout.splitlines()

    def test_koszul_failure_exits_one(self, runner, mocker):
        failing = CohomologySlot(
            m=2,
            n=3,
            chain_dims={0: 33, 1: 9, 2: 0},
            ranks={0: 0, 1: 9, 2: 0},
            cohomology={0: 24, 1: 1, 2: 0},
            expected_h0=24,
            euler_characteristic=23,
            d_squared_zero=True,
        )
        report = KoszulReport(presentation="lie", dual="lie!", window=5, slots=[failing])
        compute = mocker.patch("src.cli.main.koszulness_report", return_value=report)
        result = run(runner, "--format", "structured", "koszul", "lie", "--window", "5")
        assert compute.call_args.args[1] == 5
        assert result.exit_code == 1
        lines = result.stdout.splitlines()
        assert "verdict = not-koszul-in-window" in lines
        assert "slots.2,3.passed = false" in lines
        assert "slots.2,3.cohomology.1 = 1" in lines

    def test_koszul_criterion_mismatch_exits_one(self, runner, write_file):
        path = write_file("lie1bi_unsigned.yaml", UNSIGNED_LEIBNIZ)
        result = run(runner, "--format", "structured", "koszul", str(path), "--window", "4")
        assert result.exit_code == 1
        lines = result.stdout.splitlines()
        assert "criterion_holds = false" in lines
        assert "passed = false" in lines

    def test_koszul_window_too_small(self, runner):
        assert run(runner, "koszul", "lie", "--window", "2").exit_code == 2

    def test_koszul_window_over_cap(self, runner):
        assert run(runner, "koszul", "lie", "--window", "9").exit_code == 2

    def test_resolution(self, runner):
        result = run(runner, "--format", "structured", "resolution-d2", "lie1bi", "--window", "5")
        assert result.exit_code == 0
        assert "passed = true" in result.stdout.splitlines()

    def test_unknown_resolution(self, runner):
        assert run(runner, "resolution-d2", "gerstenhaber").exit_code == 2


@pytest.mark.integration
class TestStructureCommands:
    """Test Maurer-Cartan, decomposition and morphism commands."""

    @pytest.mark.parametrize(
        "name, code",
        [("lie_coalgebra", 0), ("broken_coalgebra", 1), ("lie_bialgebra", 0), ("zero", 0)],
    )
    def test_mc_check(self, runner, examples_dir, name, code):
        result = run(runner, "mc-check", str(examples_dir / f"{name}.tensors.yaml"))
        assert result.exit_code == code

    def test_mc_check_axioms(self, runner, examples_dir):
        result = run(
            runner, "--format", "structured", "mc-check", str(examples_dir / "broken_coalgebra.tensors.yaml"), "--axioms"
        )
        assert result.exit_code == 1
        assert "checks.co_jacobi = false" in result.stdout.splitlines()

    def test_mc_check_model_mismatch(self, runner, examples_dir):
        result = run(runner, "mc-check", str(examples_dir / "lie_coalgebra.tensors.yaml"), "--model", "liebi")
        assert result.exit_code == 2

    def test_malformed_tensors(self, runner, write_file):
        path = write_file("bad.tensors.yaml", "kind: tensors\nmodel: lie1bi\nbasis:\n  - {name: e1}\ncoefficients:\n  nope: 1\n")
        result = run(runner, "mc-check", str(path))
        assert result.exit_code == 2
        assert "bad.tensors.yaml" in result.output

    def test_structured_report_is_deterministic(self, runner, examples_dir):
        path = str(examples_dir / "broken_coalgebra.tensors.yaml")
        first = run(runner, "--format", "structured", "mc-check", path)
        second = run(runner, "--format", "structured", "mc-check", path)
        assert first.stdout == second.stdout

    def test_report_to_file(self, runner, examples_dir, tmp_path):
        target = tmp_path / "mc.txt"
        result = run(
            runner, "--format", "structured", "--output", str(target), "mc-check", str(examples_dir / "lie_coalgebra.tensors.yaml")
        )
        assert result.exit_code == 0
        assert "is_solution = true" in target.read_text(encoding="utf-8").splitlines()

    def test_decompose_and_emit(self, runner, examples_dir, tmp_path):
        result = run(runner, "decompose", str(examples_dir / "split.field.yaml"), "--emit", str(tmp_path))
        assert result.exit_code == 0
        minimal = load_field(tmp_path / "minimal.field.yaml")
        assert minimal.coords.names() == ["z1", "z2", "xi1", "xi2"]
        assert len(minimal) == 1
        f_map = load_map(tmp_path / "f.map.yaml")
        assert f_map.codomain.names() == ["t1", "t2", "t3", "t4", "psi1", "psi2", "psi3", "psi4"]

    def test_decompose_tensor_file(self, runner, examples_dir):
        result = run(runner, "decompose", str(examples_dir / "lie_coalgebra.tensors.yaml"))
        assert result.exit_code == 0

    def test_decompose_rejects_non_solution(self, runner, examples_dir):
        result = run(runner, "decompose", str(examples_dir / "broken_coalgebra.tensors.yaml"))
        assert result.exit_code == 2

    def test_decompose_rejects_even_model(self, runner, examples_dir):
        result = run(runner, "decompose", str(examples_dir / "lie_bialgebra.tensors.yaml"))
        assert result.exit_code == 2

    def test_morphism_check(self, runner, examples_dir):
        pair = str(examples_dir / "pair.field.yaml")
        result = run(runner, "morphism-check", str(examples_dir / "identity.map.yaml"), pair, pair)
        assert result.exit_code == 0

    def test_morphism_check_wrong_coordinates(self, runner, examples_dir):
        result = run(
            runner,
            "morphism-check",
            str(examples_dir / "identity.map.yaml"),
            str(examples_dir / "split.field.yaml"),
            str(examples_dir / "pair.field.yaml"),
        )
        assert result.exit_code == 2

    def test_missing_file(self, runner, tmp_path):
        assert run(runner, "mc-check", str(tmp_path / "absent.yaml")).exit_code == 2
