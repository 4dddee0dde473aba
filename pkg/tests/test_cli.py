"""Command-line behaviour: golden outputs, exit codes, file round trips."""

import json

import pytest

from signedtrop.cli import main
from signedtrop.linalg import parse_matrix


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestFarkasVerb:
    def test_kernel_golden(self, capsys):
        code, out, _ = run(capsys, "farkas", "-A", "3 ~3")
        assert code == 0
        payload = json.loads(out)
        assert payload["kind"] == "kernel"
        assert payload["vector"] == ["0", "0"]

    def test_byte_stable(self, capsys):
        _, first, _ = run(capsys, "farkas", "-A", "3 ~1 ~4; 3 ~0 ~2")
        _, second, _ = run(capsys, "farkas", "-A", "3 ~1 ~4; 3 ~0 ~2")
        assert first == second


class TestMemberVerb:
    def test_box_member(self, capsys):
        code, out, _ = run(capsys, "member", "-A", "~2 2; ~1 1", "-b", "0 ~0")
        assert code == 0
        assert json.loads(out)["member"] is True

    def test_non_member_exit_one(self, capsys):
        code, out, _ = run(capsys, "member", "-A", "~2 2; ~1 1", "-b", "3 0")
        assert code == 1
        payload = json.loads(out)
        assert payload["member"] is False
        assert "separator" in payload

    def test_dimension_error_exit_two(self, capsys):
        code, _, err = run(capsys, "member", "-A", "~2 2; ~1 1", "-b", "0")
        assert code == 2
        assert "error" in err


class TestEliminateVerb:
    def test_strict_golden(self, capsys):
        code, out, _ = run(
            capsys, "eliminate", "--strict", "--row", "1", "-A", "3 ~1 ~4; 3 ~0 ~2"
        )
        assert code == 0
        assert out == "0 0\n"

    def test_strict_row_out_of_range(self, capsys):
        code, _, err = run(
            capsys, "eliminate", "--strict", "--row", "5", "-A", "3 ~1 ~4; 3 ~0 ~2"
        )
        assert code == 2

    def test_nonstrict(self, capsys):
        system = "_ ~0 1 ~0 >=; _ 0 ~1 0 >=; ~0 0 0 _ >=; 0 ~0 ~0 _ >=; _ 0 _ _ >=; _ _ 0 _ >="
        code, out, _ = run(capsys, "eliminate", "--var", "1", "-H", system)
        assert code == 0
        assert "*1 *0 >=" in out

    def test_balanced_input_rejected(self, capsys):
        code, _, err = run(capsys, "eliminate", "--var", "1", "-H", "_ *1 0 >=")
        assert code == 2


class TestFeasVerb:
    def test_report_fields(self, capsys):
        code, out, _ = run(capsys, "feas", "-A", "3 ~3")
        assert code == 0
        payload = json.loads(out)
        assert payload["kernel_nonempty"] is True
        assert payload["separator_nonempty"] is False

    def test_experimental_teq_infeasible(self, capsys):
        code, out, _ = run(
            capsys,
            "feas",
            "--teq",
            "-A",
            "0 0; ~0 0; 0 ~0; ~0 ~0",
            "-b",
            "~0 ~0 ~0 ~0",
        )
        assert code == 1
        payload = json.loads(out)
        assert payload["feasible"] is False
        assert "experimental" in payload["mode"]

    def test_experimental_teq_feasible(self, capsys):
        code, out, _ = run(capsys, "feas", "--teq", "-A", "0; ~0", "-b", "1 1")
        assert code == 0
        assert json.loads(out)["feasible"] is True


class TestHullAndSegment:
    def test_hull_json(self, capsys):
        code, out, _ = run(capsys, "hull", "-A", "3 ~1 ~4; 3 ~0 ~2")
        assert code == 0
        cells = json.loads(out)["cells"]
        assert sorted(cells.keys()) == ["++", "+-", "-+", "--"]
        assert ["3", "3"] in cells["++"]

    def test_segment_json(self, capsys):
        code, out, _ = run(capsys, "segment", "-p", "0 0", "-q", "~-2 ~-2")
        assert code == 0
        pieces = json.loads(out)["pieces"]
        assert pieces[0]["vertex"] == ["0", "0"]
        assert any("box" in p for p in pieces)

    def test_hull_with_figure(self, capsys, tmp_path):
        target = tmp_path / "cells.svg"
        code, out, _ = run(
            capsys, "hull", "-A", "3 ~1 ~4; 3 ~0 ~2", "--figure", str(target)
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["figure"] == str(target)
        assert target.read_text().startswith("<?xml")


class TestConversionVerbs:
    def test_vrep2hrep_then_back(self, capsys):
        code, out, _ = run(capsys, "vrep2hrep", "-A", "~0 1")
        assert code == 0
        system = out.strip().replace("\n", "; ")
        code2, out2, _ = run(capsys, "hrep2vrep", "-H", system)
        assert code2 == 0
        cols = {tuple(c) for c in zip(*[r.split() for r in out2.strip().split("\n")])}
        assert cols == {("~0",), ("1",)}

    def test_hrep2vrep_unbounded_is_input_error(self, capsys):
        code, _, err = run(capsys, "hrep2vrep", "-H", "0 _ _ >=")
        assert code == 2
        assert "grid" in err


class TestLiftcheckVerb:
    def test_ok(self, capsys):
        code, out, _ = run(
            capsys, "liftcheck", "-A", "~2 2; ~1 1", "-x", "0 0", "-b", "~2 1"
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["ok"] is True
        assert len(payload["lift"]) == 2

    def test_tampered(self, capsys):
        code, out, _ = run(
            capsys, "liftcheck", "-A", "~2 2; ~1 1", "-x", "0 0", "-b", "3 1"
        )
        assert code == 1
        assert json.loads(out)["ok"] is False


class TestPlotVerb:
    def test_svg_file_written(self, capsys, tmp_path):
        target = tmp_path / "hull.svg"
        code, out, _ = run(capsys, "plot", "-A", "3 ~1 ~4; 3 ~0 ~2", "-o", str(target))
        assert code == 0
        blob = target.read_text()
        assert blob.startswith("<?xml")
        assert "svg" in blob[:400]
        assert json.loads(out)["figure"] == str(target)

    def test_png_file_written(self, capsys, tmp_path):
        target = tmp_path / "hull.png"
        code, _, _ = run(capsys, "plot", "-A", "0 ~-2; 0 ~-2", "-o", str(target))
        assert code == 0
        assert target.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"

    def test_dimension_guard(self, capsys):
        code, _, err = run(capsys, "plot", "-A", "1; 2; 3")
        assert code == 2


class TestFileInput:
    def test_matrix_from_file(self, capsys, tmp_path):
        f = tmp_path / "m.txt"
        f.write_text("3 ~3\n")
        code, out, _ = run(capsys, "farkas", "-A", f"@{f}")
        assert code == 0
        assert json.loads(out)["kind"] == "kernel"

    def test_parse_print_round_trip_corpus(self):
        for text in ["3 ~1 ~4; 3 ~0 ~2", "~2 2; ~1 1", "0 ~-2; 0 ~-2", "*1 _; 1/2 ~3"]:
            m = parse_matrix(text)
            assert parse_matrix(str(m)) == m
