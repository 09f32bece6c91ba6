import pytest

from commands.census_commands import cmd_census, cmd_props
from commands.circuit_commands import cmd_simulate, cmd_synth, cmd_verify
from commands.common import EXIT_MALFORMED, EXIT_NEGATIVE, EXIT_NOT_IN_CLASS, EXIT_OK, EXIT_USAGE
from commands.gate_commands import cmd_classify, cmd_member
from revgen import main
from services.circuit import load_circuit
from services.gate_core import fredkin_gate, identity_gate, not_gate
from tests.conftest import CANONICAL_FILES, gate_path


# --- classify / member ---

@pytest.mark.parametrize("name, expected", sorted(CANONICAL_FILES.items()))
def test_classify_canonical_generators(name, expected):
    result = cmd_classify([gate_path(name)])
    assert result.ok and result.report == expected


LOOSE_CHANGES = {"NOTNOT": "NOT", "MOD2": "FREDKIN+NOT", "T4+NOTNOT": "T4+NOT", "T6+NOTNOT": "T6+NOT"}


@pytest.mark.parametrize("name, strict", sorted(CANONICAL_FILES.items()))
def test_loose_classification_of_canonical_generators(name, strict):
    assert cmd_classify([gate_path(name)], loose=True).report == LOOSE_CHANGES.get(strict, strict)


def test_classify_gate_sets():
    assert cmd_classify([gate_path("fredkin.rgt"), gate_path("notnot.rgt")]).report == "MOD2"
    assert cmd_classify([gate_path("notnot.rgt")], loose=True).report == "NOT"
    verbose = cmd_classify([gate_path("cnot.rgt"), gate_path("not.rgt")], verbose=True).report
    assert verbose.splitlines()[-1] == "CNOT"
    assert verbose.splitlines()[1].endswith("not.rgt: NOT")


def test_member_answers():
    assert cmd_member(gate_path("fredkin.rgt"), [gate_path("toffoli.rgt")]).report == "YES"
    result = cmd_member(gate_path("cnot.rgt"), [gate_path("fredkin.rgt")])
    assert result.exit_code == EXIT_NEGATIVE
    assert result.report.startswith("NO") and "conservative" in result.report


def test_loose_member():
    assert cmd_member(gate_path("not.rgt"), [gate_path("notnot.rgt")]).exit_code == EXIT_NEGATIVE
    assert cmd_member(gate_path("not.rgt"), [gate_path("notnot.rgt")], loose=True).ok


def test_malformed_and_missing_files(tmp_path):
    bad = tmp_path / "bad.rgt"
    bad.write_text("bits 1\n0 -> 0\n1 -> 0\n")
    assert cmd_classify([str(bad)]).exit_code == EXIT_MALFORMED
    missing = cmd_classify([str(tmp_path / "missing.rgt")])
    assert missing.exit_code == EXIT_MALFORMED and missing.report.startswith("error:")


# --- synth / verify / simulate ---

def test_synth_writes_a_verified_circuit(tmp_path):
    out = str(tmp_path / "fredkin.rgc")
    result = cmd_synth(gate_path("fredkin.rgt"), "ALL", out)
    assert result.ok and "ceiling 3" in result.report
    assert cmd_verify(out, gate_path("fredkin.rgt")).ok
    assert load_circuit(out).gate_names() <= {"TOFFOLI"}


def test_synth_outside_the_class(tmp_path):
    result = cmd_synth(gate_path("toffoli.rgt"), "FREDKIN", str(tmp_path / "x.rgc"))
    assert result.exit_code == EXIT_NOT_IN_CLASS


def test_synth_rejects_unknown_class(tmp_path):
    assert cmd_synth(gate_path("fredkin.rgt"), "CLIFFORD", str(tmp_path / "x.rgc")).exit_code == EXIT_USAGE


def test_synth_budget_is_enforced(tmp_path):
    result = cmd_synth(gate_path("fredkin.rgt"), "ALL", str(tmp_path / "x.rgc"), budget=0)
    assert result.exit_code == EXIT_USAGE


def test_verify_reports_a_mismatch(write_gate):
    result = cmd_verify(gate_path("ccswap.rgc"), write_gate(identity_gate(4)))
    assert result.exit_code == EXIT_NEGATIVE
    assert "implements target: no" in result.report
    assert cmd_verify(gate_path("ccswap.rgc"), write_gate(fredkin_gate())).exit_code == EXIT_MALFORMED


def test_verify_checks_the_target_width(tmp_path, write_gate):
    out = str(tmp_path / "not.rgc")
    assert cmd_synth(gate_path("not.rgt"), "NOT", out).ok
    assert cmd_verify(out, write_gate(not_gate())).ok
    result = cmd_verify(out, gate_path("swap.rgt"))
    assert result.exit_code == EXIT_MALFORMED


def test_simulate_ccswap():
    assert cmd_simulate(gate_path("ccswap.rgc"), "11100").report == "11010"
    assert cmd_simulate(gate_path("ccswap.rgc"), "1110").report == "1101"
    assert cmd_simulate(gate_path("ccswap.rgc"), "11x").exit_code == EXIT_MALFORMED
    assert cmd_simulate(gate_path("ccswap.rgc"), "111").exit_code == EXIT_MALFORMED


# --- census / props ---

def test_census_formula_table():
    report = cmd_census(1).report
    assert "NOT" in report and "TRIVIAL" in report


def test_census_compare_at_three_bits():
    result = cmd_census(3, "compare")
    assert result.ok
    assert "formula and brute-force counts agree" in result.report
    assert "all 21 rows match the reference census" in result.report


def test_census_compare_beyond_brute_force():
    assert "all 21 rows match" in cmd_census(6, "compare").report


def test_census_bad_arguments():
    assert cmd_census(0).exit_code == EXIT_USAGE
    assert cmd_census(3, "guess").exit_code == EXIT_USAGE
    assert cmd_census(4, "brute").exit_code == EXIT_USAGE


def test_props():
    result = cmd_props(2, only=["gcd-agreement"])
    assert result.ok and result.report.endswith("1/1 suites passed")
    assert cmd_props(5).exit_code == EXIT_USAGE


# --- entry point ---

def test_main_prints_the_report(capsys):
    code = main(["classify", gate_path("fredkin.rgt"), gate_path("not.rgt")])
    assert code == EXIT_OK
    assert capsys.readouterr().out.strip() == "FREDKIN+NOT"


def test_main_flags_follow_the_subcommand(capsys):
    assert main(["classify", "--loose", gate_path("fredkin_notnot.rgt")]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "FREDKIN+NOT"
    assert main(["simulate", gate_path("ccswap.rgc"), "11100"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "11010"


def test_main_exit_codes(tmp_path):
    assert main(["synth", gate_path("toffoli.rgt"), "FREDKIN", str(tmp_path / "x.rgc")]) == EXIT_NOT_IN_CLASS
    assert main(["member", gate_path("cnot.rgt"), gate_path("fredkin.rgt")]) == EXIT_NEGATIVE
    with pytest.raises(SystemExit) as info:
        main([])
    assert info.value.code == 2
