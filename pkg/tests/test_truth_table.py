import pytest

from services.errors import MalformedInput
from services.gate_core import Gate, cnot_gate, fredkin_gate, not_gate
from services.truth_table import format_truth_table, load_truth_table, parse_truth_table
from tests.conftest import CANONICAL_FILES, gate_path


def test_arrow_form_with_comments():
    text = "# NOT\nbits 1\n0 -> 1  # flipped\n1 -> 0\n"
    assert parse_truth_table(text) == not_gate()


def test_rows_may_come_in_any_order():
    text = "bits 2\n11 -> 10\n00 -> 00\n10 -> 11\n01 -> 01\n"
    assert parse_truth_table(text) == cnot_gate()


def test_perm_form():
    assert parse_truth_table("perm 2: 0 1 3 2") == cnot_gate()
    assert parse_truth_table("perm 3: 0 1 2 3 4 6 5 7") == fredkin_gate()


def test_canonical_writer_output():
    assert format_truth_table(not_gate()) == "bits 1\n0 -> 1\n1 -> 0\n"
    G = Gate(2, (3, 0, 1, 2))
    assert parse_truth_table(format_truth_table(G)) == G


def test_shipped_tables_parse():
    for name in CANONICAL_FILES:
        G = load_truth_table(gate_path(name))
        assert parse_truth_table(format_truth_table(G)) == G


@pytest.mark.parametrize("text, line", [
    ("bits 2\n00 -> 01\n01 -> 0\n", 3),
    ("00 -> 01\n", 1),
    ("bits two\n", 1),
    ("bits 1\n0 => 1\n", 2),
    ("perm 2: 0 1 2\n", 1),
    ("perm 1: 0 x\n", 1),
    ("bits 1\nperm 1: 1 0\n", 2),
])
def test_malformed_tables_report_the_line(text, line):
    with pytest.raises(MalformedInput) as info:
        parse_truth_table(text)
    assert info.value.line == line


def test_gate_errors_become_malformed_input():
    with pytest.raises(MalformedInput):
        parse_truth_table("bits 1\n0 -> 0\n1 -> 0\n")
    with pytest.raises(MalformedInput):
        parse_truth_table("# nothing here\n")
