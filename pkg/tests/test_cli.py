import csv
import json

import pytest

from wavemodel import ParseError, load_edges, load_matrix_csv, load_points_csv
from wavemodel.cli import main


def run(tmp_path, *argv, out_name="out.json"):
    out = tmp_path / out_name
    code = main([*argv, "--out", str(out)])
    data = json.loads(out.read_text()) if out.exists() else None
    return code, data


# ---------------------------------------------------------------------------
# Parsers


def test_load_points_csv(tmp_path):
    p = tmp_path / "pts.csv"
    p.write_text("0,0\n3,4\n\n1,1\n")
    coords, labels = load_points_csv(str(p))
    assert coords == [[0.0, 0.0], [3.0, 4.0], [1.0, 1.0]]
    assert labels is None


def test_load_points_csv_labels(tmp_path):
    p = tmp_path / "pts.csv"
    p.write_text("a,0,0\nb,1,0\n")
    coords, labels = load_points_csv(str(p))
    assert labels == ["a", "b"]
    assert coords == [[0.0, 0.0], [1.0, 0.0]]


def test_load_points_csv_error_position(tmp_path):
    p = tmp_path / "pts.csv"
    p.write_text("0,0\n1,oops\n")
    with pytest.raises(ParseError) as ei:
        load_points_csv(str(p))
    assert ei.value.row == 2 and ei.value.col == 2


def test_load_edges(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("# comment\n0 1 1\n1 2 3/2\n")
    edges = load_edges(str(p))
    assert edges[1][2] == 1.5


def test_load_edges_errors(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("0 1\n")
    with pytest.raises(ParseError):
        load_edges(str(p))
    p.write_text("x 1 2\n")
    with pytest.raises(ParseError):
        load_edges(str(p))


def test_load_matrix_not_square(tmp_path):
    p = tmp_path / "m.csv"
    p.write_text("0,1\n1,0,2\n")
    with pytest.raises(ParseError) as ei:
        load_matrix_csv(str(p))
    assert ei.value.row == 2


# ---------------------------------------------------------------------------
# validate


def test_validate_segment(tmp_path):
    code, data = run(tmp_path, "validate", "--backend", "segment",
                     "--samples", "11")
    assert code == 0
    assert data["valid"] and data["n"] == 11
    assert data["min_positive_distance"] == "1/10"


def test_validate_bad_matrix_exit_1(tmp_path):
    m = tmp_path / "m.csv"
    m.write_text("0,1\n2,0\n")
    code, data = run(tmp_path, "validate", "--backend", "matrix",
                     "--input", str(m))
    assert code == 1
    assert data["valid"] is False and data["witness"] == [0, 1]


def test_validate_unparsable_input_exit_2(tmp_path):
    m = tmp_path / "m.csv"
    m.write_text("0,x\nx,0\n")
    assert main(["validate", "--backend", "matrix", "--input", str(m)]) == 2


def test_validate_missing_file_exit_2(tmp_path):
    assert main(["validate", "--backend", "matrix",
                 "--input", str(tmp_path / "absent.csv")]) == 2


def test_missing_required_option_exit_3():
    assert main(["validate", "--backend", "discrete"]) == 3


# ---------------------------------------------------------------------------
# conditions


def test_conditions_discrete(tmp_path):
    code, data = run(tmp_path, "conditions", "--backend", "discrete", "--n", "4")
    assert code == 0
    assert data["condition1"]["holds"]
    assert data["max_defect"] == "1"
    # the defect equals the minimum spacing, so the sample-tolerance rule
    # cannot tell it apart from discretization error
    assert data["verdict"] == "holds within sample tolerance"


def test_conditions_fails_verdict(tmp_path):
    g = tmp_path / "g.txt"
    # defect(0, 2) = 1 far exceeds twice the minimum spacing 1/100
    g.write_text("0 1 1\n1 2 1\n0 3 1/100\n")
    code, data = run(tmp_path, "conditions", "--backend", "graph",
                     "--input", str(g))
    assert code == 0
    assert data["verdict"] == "fails"


def test_conditions_segment_within_tolerance(tmp_path):
    code, data = run(tmp_path, "conditions", "--backend", "segment",
                     "--samples", "21")
    assert code == 0
    assert data["verdict"] == "holds within sample tolerance"


def test_conditions_csv_matrix(tmp_path):
    out = tmp_path / "d.csv"
    code = main(["conditions", "--backend", "discrete", "--n", "3",
                 "--format", "csv", "--out", str(out)])
    assert code == 0
    rows = list(csv.reader(out.read_text().splitlines()))
    assert len(rows) == 3 and rows[0][1] == "1"


# ---------------------------------------------------------------------------
# tau / isometry


def test_tau_segment(tmp_path):
    code, data = run(tmp_path, "tau", "--backend", "segment", "--samples", "11")
    assert code == 0
    assert data["tau"][0][10] == "1"  # tau = d at the extreme pair
    assert data["tau_brackets"][0][10][0] != data["tau_brackets"][0][10][1]
    assert data["atom_count"] == 11


def test_isometry_segment_report(tmp_path):
    code, data = run(tmp_path, "isometry", "--backend", "segment",
                     "--samples", "21")
    assert code == 0
    assert "tau_brackets" not in data
    assert data["warnings"] == []
    # deviation bounded by one sample spacing
    from fractions import Fraction
    assert Fraction(data["max_abs_tau_minus_d"]) <= Fraction(1, 20)


def test_isometry_discrete_reports_cause(tmp_path):
    code, data = run(tmp_path, "isometry", "--backend", "discrete", "--n", "5")
    assert code == 0
    assert data["homothety_c"] == "2"
    assert "discrepancy_cause" in data


def test_tau_coarse_grid_refused(tmp_path):
    code = main(["tau", "--backend", "segment", "--samples", "11",
                 "--grid", "1/2,3,8,geometric"])
    assert code == 3


def test_bad_grid_spec_exit_3():
    assert main(["tau", "--backend", "discrete", "--n", "3",
                 "--grid", "1,2,3"]) == 3
    assert main(["tau", "--backend", "discrete", "--n", "3",
                 "--grid", "1,2,x,linear"]) == 3


def test_tau_graph_from_file(tmp_path):
    g = tmp_path / "g.txt"
    g.write_text("0 1 1\n1 2 1\n")
    code, data = run(tmp_path, "tau", "--backend", "graph", "--input", str(g))
    assert code == 0
    assert data["tau"][0][1] == "2" and data["tau"][0][2] == "2"


def test_tau_points_from_file(tmp_path):
    p = tmp_path / "pts.csv"
    p.write_text("0,0\n0,1\n1,0\n1,1\n")
    code, data = run(tmp_path, "tau", "--backend", "points", "--input", str(p))
    assert code == 0
    assert data["n"] == 4


# ---------------------------------------------------------------------------
# demos


def test_segment_demo_writes_artifacts(tmp_path, capsys):
    outdir = tmp_path / "demo"
    code = main(["segment-demo", "--x", "3/10", "--out", str(outdir)])
    assert code == 0
    funcs = json.loads((outdir / "four_functions.json").read_text())
    assert [f["name"] for f in funcs] == [
        "ball_lower", "atom_from_left", "atom_from_right", "ball_upper"]
    report = json.loads((outdir / "chain_report.json").read_text())
    assert report["all_pass"] is True
    rows = list(csv.reader((outdir / "traces.csv").read_text().splitlines()))
    assert rows[0] == ["t", "function", "set"]
    assert len(rows) == 1 + 4 * len(report["probes"])


def test_segment_demo_midpoint_note(tmp_path, capsys):
    code = main(["segment-demo", "--x", "1/2", "--out", str(tmp_path / "d")])
    assert code == 0
    assert "merge" in capsys.readouterr().out


def test_segment_demo_bad_x_exit_3(tmp_path):
    assert main(["segment-demo", "--x", "2", "--out", str(tmp_path / "d")]) == 3
    assert main(["segment-demo", "--x", "oops", "--out", str(tmp_path / "d")]) == 3


def test_nucleus_demo_left_window(tmp_path):
    code, data = run(tmp_path, "nucleus-demo", "--net", "left-window",
                     "--x", "1/2")
    assert code == 0
    assert data["nucleus"] == "[1/2, 1/2]"
    assert all(r["lower_ok"] and r["upper_ok"] for r in data["sandwich"])


def test_nucleus_demo_shrinking_ball(tmp_path):
    code, data = run(tmp_path, "nucleus-demo", "--net", "shrinking-ball",
                     "--backend", "segment", "--samples", "11", "--center", "5")
    assert code == 0
    assert data["nucleus"] == [5]
    assert all(r["lower_ok"] and r["upper_ok"] for r in data["sandwich"])


def test_nucleus_demo_center_out_of_range(tmp_path):
    assert main(["nucleus-demo", "--net", "shrinking-ball", "--backend",
                 "segment", "--samples", "11", "--center", "99"]) == 3
