"""End-to-end checks of the rcx command line: exit codes, pinned
summaries, byte-stable files, and diagnostics that name the bad input."""

import json

import pytest

from rcx import fileio
from rcx.cli import main, run
from rcx.families import PointSet


def doc_bytes(path):
    with open(path, "rb") as fh:
        return fh.read()


@pytest.fixture
def cube2_files(tmp_path):
    pts = tmp_path / "cube_pts.json"
    poly = tmp_path / "cube2.json"
    assert run(["gen", "cube", "2", "-o", str(pts)]).exit_code == 0
    assert run(["relax", "build", "cube", "2", "-o", str(poly)]).exit_code == 0
    return str(poly), str(pts)


class TestGen:
    def test_writes_parseable_pointset(self, tmp_path):
        out = tmp_path / "even3.json"
        res = run(["gen", "even", "3", "-o", str(out)])
        assert res.exit_code == 0
        assert res.report_path == str(out)
        X = fileio.parse_pointset(fileio.read_doc(str(out)))
        assert X.dim == 3 and len(X.points) == 4

    def test_round_trip_is_byte_identical(self, tmp_path):
        out = tmp_path / "stsp4.json"
        run(["gen", "stsp", "4", "-o", str(out)])
        raw = doc_bytes(out)
        X = fileio.parse_pointset(json.loads(raw))
        assert fileio.dumps(fileio.pointset_doc(X)).encode() == raw

    def test_same_invocation_same_bytes(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        run(["gen", "perm", "3", "-o", str(a)])
        run(["gen", "perm", "3", "-o", str(b)])
        assert doc_bytes(a) == doc_bytes(b)

    def test_tuple_parameter(self, tmp_path):
        out = tmp_path / "tj.json"
        res = run(["gen", "tjoins", "4", "1,2", "-o", str(out)])
        assert res.exit_code == 0
        X = fileio.parse_pointset(fileio.read_doc(str(out)))
        assert X.dim == 6 and len(X.points) == 8

    def test_oversized_family_is_a_usage_error(self, tmp_path):
        res = run(["gen", "stsp", "99", "-o", str(tmp_path / "no.json")])
        assert res.exit_code == 2
        assert "cap" in res.summary
        assert not (tmp_path / "no.json").exists()

    def test_unknown_family(self, tmp_path):
        res = run(["gen", "mystery", "3", "-o", str(tmp_path / "no.json")])
        assert res.exit_code == 2
        assert "mystery" in res.summary

    def test_non_integer_parameter(self, tmp_path):
        res = run(["gen", "cube", "two", "-o", str(tmp_path / "no.json")])
        assert res.exit_code == 2
        assert "'two'" in res.summary

    def test_explicit_cap_flag(self, tmp_path):
        res = run(["gen", "cube", "4", "--max-candidates", "3",
                   "-o", str(tmp_path / "no.json")])
        assert res.exit_code == 2


class TestHidingCommands:
    def test_build_all_constructions(self, tmp_path):
        cases = [
            (["tsp", "2"], 2, 30),
            (["tsp", "2", "--undirected"], 2, 15),
            (["arb", "2"], 2, 30),
            (["diff", "2"], 4, 4),
            (["perm", "4"], 6, 4),
            (["parity", "3"], 4, 3),
            (["tjoin", "4", "1,2"], 1, 6),
            (["tjoin", "4", "1,2", "--part", "2"], 1, 6),
        ]
        for args, npts, dim in cases:
            out = tmp_path / ("h_" + "_".join(args).replace("--", "") + ".json")
            res = run(["hiding", "build", *args, "-o", str(out)])
            assert res.exit_code == 0, res
            H = fileio.parse_pointset(fileio.read_doc(str(out)))
            assert (len(H.points), H.dim) == (npts, dim), args

    def test_verify_valid_certificate(self, tmp_path):
        fig = tmp_path / "fig1.json"
        tri = tmp_path / "simplex2.json"
        fileio.write_doc(str(fig), fileio.pointset_doc(
            PointSet(2, [(1, 1), (-1, 1), (1, -1)])))
        run(["gen", "simplex", "2", "-o", str(tri)])
        rep = tmp_path / "cert.json"
        res = run(["hiding", "verify", str(fig), str(tri), "--report", str(rep)])
        assert res.exit_code == 0
        assert res.summary == "valid hiding set, bound 3"
        doc = fileio.read_doc(str(rep))
        assert doc["status"] == "valid" and doc["bound"] == 3
        assert "failure" not in doc["witnesses"]

    def test_verify_invalid_names_the_failure(self, tmp_path):
        bad = tmp_path / "bad.json"
        tri = tmp_path / "simplex2.json"
        fileio.write_doc(str(bad), fileio.pointset_doc(
            PointSet(2, [(0, 0), (5, 5)])))
        run(["gen", "simplex", "2", "-o", str(tri)])
        rep = tmp_path / "cert.json"
        res = run(["hiding", "verify", str(bad), str(tri), "--report", str(rep)])
        assert res.exit_code == 1
        assert "inside_hull" in res.summary
        doc = fileio.read_doc(str(rep))
        assert doc["status"] == "invalid"
        assert doc["witnesses"]["failure"][0] == "inside_hull"
        assert "bound" not in doc

    def test_max_in_box(self, tmp_path):
        tri = tmp_path / "simplex2.json"
        run(["gen", "simplex", "2", "-o", str(tri)])
        rep = tmp_path / "max.json"
        res = run(["hiding", "max", str(tri), "--box=-3:3,-3:3",
                   "--report", str(rep)])
        assert res.exit_code == 0
        doc = fileio.read_doc(str(rep))
        assert doc["bound"] == 3
        assert [-1, 1] in doc["witnesses"]["points"]

    def test_max_respects_lattice_cap(self, tmp_path):
        tri = tmp_path / "simplex2.json"
        run(["gen", "simplex", "2", "-o", str(tri)])
        res = run(["hiding", "max", str(tri), "--box=-9:9,-9:9",
                   "--max-lattice", "10"])
        assert res.exit_code == 2

    def test_malformed_box(self, tmp_path):
        tri = tmp_path / "simplex2.json"
        run(["gen", "simplex", "2", "-o", str(tri)])
        res = run(["hiding", "max", str(tri), "--box", "1:2:3,0:1"])
        assert res.exit_code == 2
        assert "1:2:3" in res.summary


class TestRelaxCommands:
    def test_verify_cube_summary_is_pinned(self, cube2_files):
        poly, pts = cube2_files
        res = run(["relax", "verify", poly, pts])
        assert res.exit_code == 0
        assert res.summary == "verified, 4 lattice points"

    def test_verify_failure_is_exit_one(self, tmp_path, cube2_files):
        poly, _ = cube2_files
        tri = tmp_path / "simplex2.json"
        run(["gen", "simplex", "2", "-o", str(tri)])
        rep = tmp_path / "out.json"
        res = run(["relax", "verify", poly, str(tri), "--report", str(rep)])
        assert res.exit_code == 1
        assert "extra_lattice_point" in res.summary
        doc = fileio.read_doc(str(rep))
        assert doc["status"] == "failed"
        assert doc["witnesses"]["reason"] == ["extra_lattice_point", [1, 1]]

    def test_verify_report_bytes_are_deterministic(self, tmp_path, cube2_files):
        poly, pts = cube2_files
        a, b = tmp_path / "ra.json", tmp_path / "rb.json"
        run(["relax", "verify", poly, pts, "--report", str(a)])
        run(["relax", "verify", poly, pts, "--report", str(b)])
        assert doc_bytes(a) == doc_bytes(b)

    def test_build_round_trip(self, tmp_path):
        out = tmp_path / "sub4.json"
        res = run(["relax", "build", "subtour", "4", "-o", str(out)])
        assert res.exit_code == 0
        raw = doc_bytes(out)
        P = fileio.parse_polyhedron(json.loads(raw))
        assert fileio.dumps(fileio.polyhedron_doc(P)).encode() == raw
        assert P.dim == 6

    def test_build_directed_subtour(self, tmp_path):
        out = tmp_path / "dsub3.json"
        res = run(["relax", "build", "subtour", "3", "--directed", "-o", str(out)])
        assert res.exit_code == 0
        P = fileio.parse_polyhedron(fileio.read_doc(str(out)))
        assert P.dim == 6

    def test_irredundant_rado(self, tmp_path):
        out = tmp_path / "rado3.json"
        run(["relax", "build", "rado", "3", "-o", str(out)])
        rep = tmp_path / "irr.json"
        res = run(["relax", "irredundant", str(out), "--report", str(rep)])
        assert res.exit_code == 0
        assert res.summary.startswith("6 irredundant")
        doc = fileio.read_doc(str(rep))
        assert doc["bound"] == 6 and len(doc["witnesses"]["redundant_rows"]) == 3

    def test_unknown_builder(self, tmp_path):
        res = run(["relax", "build", "moat", "3", "-o", str(tmp_path / "x.json")])
        assert res.exit_code == 2
        assert "moat" in res.summary

    def test_verify_with_lattice_cap(self, cube2_files):
        poly, pts = cube2_files
        res = run(["relax", "verify", poly, pts, "--max-lattice", "2"])
        assert res.exit_code == 2


class TestIndexAndRationalize:
    def test_index_even3(self, tmp_path):
        src = tmp_path / "even3.json"
        run(["gen", "even", "3", "-o", str(src)])
        rep = tmp_path / "idx.json"
        res = run(["index", str(src), "--report", str(rep)])
        assert res.exit_code == 0
        assert res.summary == "index 4"
        doc = fileio.read_doc(str(rep))
        assert doc["bound"] == 4 and len(doc["witnesses"]["rows"]) == 4
        for row in doc["witnesses"]["rows"]:
            fileio.parse_row(row, "row")

    def test_index_dimension_limit(self, tmp_path):
        src = tmp_path / "even5.json"
        run(["gen", "even", "5", "-o", str(src)])
        res = run(["index", str(src)])
        assert res.exit_code == 2
        res = run(["index", str(src), "--limit", "5", "--max-subsets", "20"])
        assert res.exit_code == 0
        assert res.summary == "index 16"

    def test_index_subset_budget(self, tmp_path):
        src = tmp_path / "even4.json"
        run(["gen", "even", "4", "-o", str(src)])
        res = run(["index", str(src), "--max-subsets", "4"])
        assert res.exit_code == 2
        assert "budget" in res.summary

    def test_rationalize_separable(self, tmp_path):
        src = tmp_path / "s3.json"
        run(["gen", "simplex", "3", "-o", str(src)])
        rep = tmp_path / "rat.json"
        res = run(["rationalize", str(src), "--report", str(rep)])
        assert res.exit_code == 0
        doc = fileio.read_doc(str(rep))
        assert doc["status"] == "separable"
        h = fileio.parse_row(doc["witnesses"]["row"], "row")
        assert len(h.a) == 3

    def test_rationalize_parity_fails(self, tmp_path):
        src = tmp_path / "even2.json"
        run(["gen", "even", "2", "-o", str(src)])
        rep = tmp_path / "rat.json"
        res = run(["rationalize", str(src), "--report", str(rep)])
        assert res.exit_code == 1
        assert res.summary == "not separable by a single row"
        assert fileio.read_doc(str(rep))["status"] == "not_separable"


class TestReportCommand:
    def test_diff_report(self, tmp_path):
        rep = tmp_path / "rep.json"
        res = run(["report", "diff", "2", "2", "-o", str(rep)])
        assert res.exit_code == 0
        assert res.summary == "diff: floor 4 (certified), ceiling 9 (certified)"
        doc = fileio.read_doc(str(rep))
        assert doc["lower_bound"] == 4 and doc["upper_bound"] == 9
        assert doc["lower_certified"] and doc["upper_certified"]

    def test_box_search_flag(self, tmp_path):
        rep = tmp_path / "rep.json"
        res = run(["report", "even", "3", "--box=-1:2,-1:2,-1:2",
                   "-o", str(rep)])
        assert res.exit_code == 0
        doc = fileio.read_doc(str(rep))
        assert doc["lower_bound"] == 4
        assert any("box search" in n for n in doc["notes"])

    def test_report_bytes_are_deterministic(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        run(["report", "perm", "4", "-o", str(a)])
        run(["report", "perm", "4", "-o", str(b)])
        assert doc_bytes(a) == doc_bytes(b)

    def test_unknown_family(self):
        res = run(["report", "zonotope", "3"])
        assert res.exit_code == 2
        assert "zonotope" in res.summary


class TestDiagnostics:
    def test_missing_file(self):
        res = run(["index", "/nonexistent/nope.json"])
        assert res.exit_code == 2

    def test_malformed_json(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        res = run(["index", str(bad)])
        assert res.exit_code == 2
        assert "bad.json" in res.summary

    def test_wrong_field_type_is_named(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"dim": "three", "points": []}))
        res = run(["index", str(bad)])
        assert res.exit_code == 2
        assert "dim" in res.summary

    def test_pointset_fed_to_polyhedron_parser(self, tmp_path):
        pts = tmp_path / "pts.json"
        run(["gen", "cube", "2", "-o", str(pts)])
        res = run(["relax", "irredundant", str(pts)])
        assert res.exit_code == 2
        assert "constraints" in res.summary

    def test_no_arguments_is_usage_error(self):
        assert run([]).exit_code == 2

    def test_help_exits_zero(self):
        assert run(["--help"]).exit_code == 0

    def test_main_prints_summary(self, tmp_path, capsys):
        out = tmp_path / "c.json"
        code = main(["gen", "cube", "2", "-o", str(out)])
        assert code == 0
        assert "4 points" in capsys.readouterr().out

    def test_main_errors_go_to_stderr(self, tmp_path, capsys):
        code = main(["gen", "stsp", "99", "-o", str(tmp_path / "x.json")])
        assert code == 2
        captured = capsys.readouterr()
        assert "cap" in captured.err and captured.out == ""
