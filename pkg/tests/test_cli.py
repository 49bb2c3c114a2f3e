"""Formatting, serialization round-trips, grids, and entry-point wiring."""

import json
import math

import pytest
from hypothesis import given, settings as hsettings, strategies as st

from neumannint.cli import (
    MATCHING_DIGITS_CAP,
    ReportRow,
    RunReport,
    bracket_format,
    cmd_sweep,
    cmd_table,
    main,
    matching_digits,
    parse_axis,
    print_table,
)
from neumannint.refdata import load_table
from neumannint.series import ExpansionSettings


# ---------------------------------------------------------------------------
# formatting
# ---------------------------------------------------------------------------

def test_bracket_format():
    assert bracket_format(9.72733864877071e-4) == "9.72733864877071[-04]"
    assert bracket_format(-1.5e20) == "-1.50000000000000[+20]"
    assert bracket_format(2.0) == "2.00000000000000[+00]"
    assert bracket_format(0.0) == "0"
    assert bracket_format(math.inf) == "inf"
    assert bracket_format(math.nan) == "nan"


def test_matching_digits():
    assert matching_digits(1.0, 1.0) == MATCHING_DIGITS_CAP
    assert matching_digits(0.0, 0.0) == MATCHING_DIGITS_CAP
    assert matching_digits(1.0 + 1e-13, 1.0) == pytest.approx(13.0, abs=0.05)
    assert matching_digits(5.0, 0.0) == 0.0
    assert matching_digits(math.nan, 1.0) == 0.0
    assert matching_digits(-3.0, 1.0) == 0.0  # clamped at zero, never negative


# ---------------------------------------------------------------------------
# axis parsing
# ---------------------------------------------------------------------------

def test_parse_axis_forms():
    assert parse_axis("26..30..2", int) == [26, 28, 30]
    assert parse_axis("3..5", int) == [3, 4, 5]
    assert parse_axis("5..4", int) == []
    assert parse_axis("1,2,3", int) == [1, 2, 3]
    assert parse_axis("7", int) == [7]
    assert parse_axis("1.0,5.0") == [1.0, 5.0]
    assert parse_axis("0.5..2.0..0.5") == pytest.approx([0.5, 1.0, 1.5, 2.0])
    assert parse_axis("1,,2", int) == [1, 2]


def test_parse_axis_rejects_bad_specs():
    with pytest.raises(ValueError):
        parse_axis("1..5..0", int)
    with pytest.raises(ValueError):
        parse_axis("1..2..3..4", int)
    with pytest.raises(ValueError):
        parse_axis("a..b", int)


@hsettings(max_examples=30, deadline=None)
@given(
    a=st.integers(min_value=-50, max_value=50),
    n=st.integers(min_value=0, max_value=20),
    step=st.integers(min_value=1, max_value=5),
)
def test_parse_axis_int_ranges_are_inclusive(a, n, step):
    b = a + n
    got = parse_axis(f"{a}..{b}..{step}", int)
    assert got == list(range(a, b + 1, step))


# ---------------------------------------------------------------------------
# report round trips
# ---------------------------------------------------------------------------

@pytest.fixture(scope="module")
def small_report():
    return cmd_sweep({"mu": [26, 27], "alpha": [1.0]})


def test_csv_round_trip(small_report):
    assert RunReport.from_csv(small_report.to_csv()) == small_report


def test_json_round_trip(small_report):
    assert RunReport.from_json(small_report.to_json()) == small_report


def test_round_trip_keeps_nan_and_none():
    row = ReportRow(
        params={"quantity": "W", "mu": 30},
        value=math.nan,
        oracle_value=None,
        matching_digits=None,
        terms_used=12,
        converged=False,
        wall_time=0.25,
    )
    rep = RunReport(command="sweep", rows=[row])
    assert RunReport.from_csv(rep.to_csv()) == rep


def test_csv_shape(small_report):
    lines = small_report.to_csv().splitlines()
    assert lines[0] == "# neumannint sweep"
    header = lines[1].split(",")
    assert header[-6:] == [
        "value", "oracle_value", "matching_digits", "terms_used", "converged",
        "wall_time",
    ]
    assert len(lines) == 2 + len(small_report.rows)
    # '.' decimal separator / e-notation floats
    assert "e-" in lines[2] or "." in lines[2]


def test_serialize_rejects_unknown_format(small_report):
    with pytest.raises(ValueError):
        small_report.serialize("xml")


def test_sweep_determinism():
    grid = {"mu": [26, 28], "alpha": [1.0, 5.0]}
    a = cmd_sweep(grid)
    b = cmd_sweep(grid)

    def data(rep):
        return [
            (r.params, r.value, r.oracle_value, r.matching_digits,
             r.terms_used, r.converged)
            for r in rep.rows
        ]

    assert data(a) == data(b)


# ---------------------------------------------------------------------------
# sweep grids
# ---------------------------------------------------------------------------

def test_sweep_row_order_is_grid_order():
    rep = cmd_sweep({"mu": [26, 27], "alpha": [1.0, 2.0]})
    seen = [(r.params["mu"], r.params["alpha"]) for r in rep.rows]
    assert seen == [(26, 1.0), (26, 2.0), (27, 1.0), (27, 2.0)]


def test_sweep_w_quantity():
    rep = cmd_sweep({"mu": [26], "alpha1": [1.0], "alpha2": [2.0]})
    assert len(rep.rows) == 1
    row = rep.rows[0]
    assert row.params["quantity"] == "W"
    assert row.converged and math.isfinite(row.value)


def test_sweep_low_mu_uses_quadrature_path():
    rep = cmd_sweep({"mu": [5], "alpha": [1.0]})
    row = rep.rows[0]
    assert row.converged and row.terms_used == 0
    assert math.isfinite(row.value) and row.value > 0


def test_sweep_divergence_is_data():
    rep = cmd_sweep({"mu": [30], "alpha": [30.0]})
    row = rep.rows[0]
    assert not row.converged  # recorded, not raised


def test_empty_grid_is_an_empty_report():
    rep = cmd_sweep({"mu": [], "alpha": [1.0]})
    assert rep.rows == []
    assert RunReport.from_csv(rep.to_csv()) == rep


# ---------------------------------------------------------------------------
# table command
# ---------------------------------------------------------------------------

def test_cmd_table_1_matches_reference(capsys):
    report, code = cmd_table(1)
    assert code == 0
    assert len(report.rows) == 16
    by_mu = {(r.params["alpha"], r.params["mu"]): r for r in report.rows}
    for ref in load_table(1):
        row = by_mu[(float(ref.alpha), ref.mu)]
        assert row.converged == (not ref.expect_divergent)
    print_table(report, 1)
    shown = capsys.readouterr().out
    assert shown.count("divergent (expected)") == 2
    assert "UNEXPECTED" not in shown and "DEVIATES" not in shown


def test_cmd_table_flags_deviations_via_exit_code():
    # a sloppy tolerance converges to the wrong digits; the command must
    # notice the mismatch against the embedded references
    _, code = cmd_table(1, ExpansionSettings(rel_tol=1e-6))
    assert code == 1


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def test_main_sweep_stdout(capsys):
    assert main(["sweep", "--mu", "26..27", "--alpha", "1.0"]) == 0
    out = capsys.readouterr().out
    rep = RunReport.from_csv(out)
    assert len(rep.rows) == 2


def test_main_sweep_json_to_file(tmp_path, capsys):
    out = tmp_path / "rep.json"
    code = main([
        "sweep", "--mu", "26", "--alpha", "1.0", "--format", "json",
        "--out", str(out),
    ])
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["command"] == "sweep"
    assert len(payload["rows"]) == 1
    assert "wrote 1 rows" in capsys.readouterr().err


def test_main_out_env_dir(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("NEUMANNINT_OUT", str(tmp_path))
    assert main(["sweep", "--mu", "26", "--alpha", "1.0", "--out", "rep.csv"]) == 0
    assert (tmp_path / "rep.csv").exists()
    capsys.readouterr()


def test_main_absolute_out_ignores_env(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("NEUMANNINT_OUT", str(tmp_path / "elsewhere"))
    target = tmp_path / "abs.csv"
    assert main(["sweep", "--mu", "26", "--alpha", "1.0", "--out", str(target)]) == 0
    assert target.exists()
    capsys.readouterr()


def test_main_unwritable_out(tmp_path, capsys):
    bad = tmp_path / "missing-dir" / "x.csv"
    assert main(["sweep", "--mu", "26", "--alpha", "1.0", "--out", str(bad)]) == 1
    assert "cannot write" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [
        ["sweep", "--mu", "26"],                                  # no alpha axis
        ["sweep", "--mu", "26", "--alpha", "1", "--alpha1", "1"],  # both kinds
        ["sweep", "--mu", "26", "--alpha1", "1.0"],               # half a W grid
        ["sweep", "--mu", "1..5..0", "--alpha", "1"],             # bad step
        ["bench", "--reps", "0"],
        ["table", "4"],
        ["--tol", "2", "table", "1"],
        ["--max-terms", "1", "table", "1"],
    ],
)
def test_main_argument_errors(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_main_bench(capsys):
    assert main(["bench", "--reps", "1"]) == 0
    out = capsys.readouterr().out
    assert "16 values x 1 reps" in out
    assert "mean" in out and "stddev" in out
