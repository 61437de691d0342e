import io

import pytest

from equigrid.cli import run
from equigrid.grid import is_zero_discrepancy, read_matrix


def invoke(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


class TestDecide:
    def test_feasible(self):
        code, text = invoke("decide", "4", "4", "2", "2")
        lines = text.splitlines()
        assert code == 0
        assert lines[0] == "feasible constructed"
        assert "g=2" in lines and "h=2" in lines and "target_x2=60" in lines

    def test_infeasible_parity(self):
        code, text = invoke("decide", "6", "6", "3", "3")
        assert code == 2
        assert text.splitlines()[0] == "infeasible parity"

    def test_bad_region(self):
        code, _ = invoke("decide", "2", "2", "3", "1")
        assert code == 1

    def test_missing_args(self):
        code, _ = invoke("decide", "2", "2")
        assert code == 1


class TestConstructVerify:
    def test_round_trip(self, tmp_path):
        path = tmp_path / "board.txt"
        code, _ = invoke("construct", "4", "4", "2", "2", "-o", str(path))
        assert code == 0
        board = read_matrix(path.read_text())
        assert is_zero_discrepancy(board, 2, 2)
        code, text = invoke("verify", str(path), "2", "2")
        assert code == 0
        assert "spread=0" in text.splitlines()
        assert "target_x2=60" in text.splitlines()

    def test_construct_stdout(self):
        code, text = invoke("construct", "2", "4", "2", "2")
        assert code == 0
        assert text.startswith("2 4\n")

    def test_construct_infeasible(self):
        code, _ = invoke("construct", "3", "3", "2", "2")
        assert code == 2

    def test_verify_nonzero(self, tmp_path):
        path = tmp_path / "rm.txt"
        path.write_text("3 3\n0 1 2\n3 4 5\n6 7 8\n")
        code, text = invoke("verify", str(path), "2", "2")
        assert code == 2
        assert "spread=16" in text.splitlines()

    def test_verify_missing_file(self, tmp_path):
        code, _ = invoke("verify", str(tmp_path / "nope.txt"), "2", "2")
        assert code == 1

    def test_verify_bad_matrix(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("2 2\n0 x\n2 3\n")
        code, _ = invoke("verify", str(path), "2", "2")
        assert code == 1


class TestOracle:
    def test_feasible_with_witness(self):
        code, text = invoke("oracle", "2", "2", "2", "2")
        lines = text.splitlines()
        assert code == 0
        assert lines[0].startswith("# budget=")
        assert "status=feasible" in lines
        assert "2 2" in lines  # witness matrix header

    def test_infeasible(self):
        code, text = invoke("oracle", "3", "3", "2", "2")
        assert code == 2
        assert "status=infeasible" in text.splitlines()

    def test_count(self):
        code, text = invoke("oracle", "2", "4", "2", "2", "--count")
        assert code == 0
        assert "count=96" in text.splitlines()

    def test_budget_echoed(self):
        _, text = invoke("oracle", "2", "2", "2", "2", "--budget", "1234")
        assert text.splitlines()[0] == "# budget=1234"


class TestAnneal:
    def test_deterministic_output(self, tmp_path):
        a = tmp_path / "a.txt"
        b = tmp_path / "b.txt"
        args = ("anneal", "3", "3", "2", "2", "--seed", "7", "--iters", "2000")
        code1, text1 = invoke(*args, "-o", str(a))
        code2, text2 = invoke(*args, "-o", str(b))
        assert code1 == code2 == 0
        assert text1 == text2
        assert a.read_bytes() == b.read_bytes()

    def test_header_and_fields(self):
        code, text = invoke(
            "anneal", "3", "3", "2", "2", "--seed", "1", "--iters", "100",
            "--objective", "max",
        )
        lines = text.splitlines()
        assert code == 0
        assert lines[0] == "# seed=1 iters=100 restarts=1 objective=max"
        assert any(line.startswith("best_objective=") for line in lines)
        assert any(line.startswith("accepted=") for line in lines)
        assert "evaluations=100" in lines

    def test_requires_seed(self):
        code, _ = invoke("anneal", "3", "3", "2", "2", "--iters", "10")
        assert code == 1


class TestDither:
    def test_pipeline(self, tmp_path):
        matrix = tmp_path / "m.txt"
        invoke("construct", "4", "4", "2", "2", "-o", str(matrix))
        pgm = tmp_path / "in.pgm"
        pgm.write_bytes(b"P2\n8 8\n255\n" + b"127 " * 64)
        out = tmp_path / "out.pbm"
        code, _ = invoke(
            "dither", "-m", str(matrix), "-i", str(pgm), "-o", str(out)
        )
        assert code == 0
        data = out.read_bytes()
        assert data.startswith(b"P4\n8 8\n")

    def test_ascii_mode(self, tmp_path):
        matrix = tmp_path / "m.txt"
        invoke("construct", "2", "2", "2", "2", "-o", str(matrix))
        pgm = tmp_path / "in.pgm"
        pgm.write_bytes(b"P2\n2 2\n255\n0 0 0 0\n")
        out = tmp_path / "out.pbm"
        code, _ = invoke(
            "dither", "-m", str(matrix), "-i", str(pgm), "-o", str(out), "--ascii"
        )
        assert code == 0
        assert out.read_bytes() == b"P1\n2 2\n11\n11\n"

    def test_missing_input(self, tmp_path):
        matrix = tmp_path / "m.txt"
        invoke("construct", "2", "2", "2", "2", "-o", str(matrix))
        code, _ = invoke(
            "dither", "-m", str(matrix), "-i", str(tmp_path / "nope.pgm"),
            "-o", str(tmp_path / "out.pbm"),
        )
        assert code == 1


class TestSurvey:
    def test_small_survey(self):
        code, text = invoke("survey", "--max-mn", "4")
        lines = text.splitlines()
        assert code == 0
        assert lines[0] == "# max_mn=4 check_oracle=False"
        assert "2 2 2 2 2 2 true constructed" in lines
        assert "2 2 1 1 1 1 false capacity_row" in lines

    def test_with_oracle_check(self):
        code, text = invoke("survey", "--max-mn", "6", "--check-oracle")
        assert code == 0
        assert "DISAGREE" not in text

    def test_unknown_command(self):
        code, _ = invoke("frobnicate")
        assert code == 1
