import pytest

from hnnmem.cli import main
from hnnmem.words import parse_word

from test_specfile import OPEN_CASE, TWO_LAYER


@pytest.fixture()
def open_spec(tmp_path):
    path = tmp_path / "open.spec"
    path.write_text(OPEN_CASE)
    return str(path)


@pytest.fixture()
def two_layer_spec(tmp_path):
    path = tmp_path / "two.spec"
    path.write_text(TWO_LAYER)
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestReduce:
    def test_free(self, capsys):
        code, out, _ = run(capsys, "reduce", "--word", "a b b' c")
        assert code == 0 and out.strip() == "a c"

    def test_hnn(self, capsys, open_spec):
        code, out, _ = run(capsys, "reduce", "--spec", open_spec, "--word", "t' g0_m1 t")
        assert code == 0 and out.strip() == "g0_0"


class TestEqual:
    def test_equal(self, capsys, two_layer_spec):
        code, out, _ = run(
            capsys, "equal", "--spec", two_layer_spec,
            "--left", "b t' t' a t' a", "--right", "t' a b t' t' a",
        )
        assert code == 0 and out.strip() == "equal"

    def test_not_equal(self, capsys, two_layer_spec):
        code, out, _ = run(capsys, "equal", "--spec", two_layer_spec, "--left", "a", "--right", "b")
        assert code == 0 and out.strip() == "not-equal"


class TestMrf:
    def test_lines_reparse(self, capsys, open_spec):
        code, out, _ = run(capsys, "mrf", "--spec", open_spec, "--word", "g1_0 t'")
        assert code == 0
        lines = out.strip().splitlines()
        assert len(lines) == 2
        for line in lines:
            parse_word(line)


class TestMember:
    def test_yes_with_witness(self, capsys, open_spec):
        code, out, _ = run(capsys, "member", "--spec", open_spec, "--word", "g0_m1 t g1_0'")
        assert code == 0
        verdict, witness = out.strip().split(" ", 1)
        assert verdict == "yes"
        parse_word(witness)

    def test_no_with_exit_status(self, capsys, open_spec):
        code, out, _ = run(
            capsys, "member", "--spec", open_spec, "--word", "g0_m1'", "--exit-status"
        )
        assert code == 1 and out.strip() == "no"

    def test_uq_flag_overrides(self, capsys, open_spec):
        code, out, _ = run(
            capsys, "member", "--spec", open_spec, "--uq", "1", "--word", "1"
        )
        assert code == 0 and out.strip().startswith("yes")


class TestRho:
    def test_image_line(self, capsys):
        code, out, _ = run(capsys, "rho", "--t", "t", "--word", "y t' x t t y t' x")
        assert code == 0
        assert out.splitlines()[0] == "image: y[0] x[1] y[-1] x[0]"
        assert "bounds: y -1 0" in out


class TestPipeline:
    def test_dump_round_trips_into_member(self, capsys, tmp_path):
        code, out, _ = run(capsys, "pipeline", "--w", "b t' a", "--dump")
        assert code == 0
        spec_path = tmp_path / "dumped.spec"
        spec_path.write_text(out)
        code2, out2, _ = run(capsys, "member", "--spec", str(spec_path), "--word", "g0_0 t g0_0")
        assert code2 == 0 and out2.startswith("yes")

    def test_dump_gamma_lines(self, capsys):
        _, out, _ = run(capsys, "pipeline", "--w", "b t' a", "--dump")
        gammas = {l.split(":", 1)[1].strip() for l in out.splitlines() if l.startswith("# gamma:")}
        assert gammas == {"b[0]", "b[0] a[1]", "b[-1]", "b[-1] a[0]"}


class TestPrefixMember:
    def test_yes(self, capsys):
        code, out, _ = run(capsys, "prefix-member", "--w", "b t' a", "--query", "b")
        assert code == 0 and out.strip() == "yes"

    def test_no(self, capsys):
        code, out, _ = run(capsys, "prefix-member", "--w", "b t' a", "--query", "a")
        assert code == 0 and out.strip() == "no"

    def test_no_exit_status(self, capsys):
        code, _, _ = run(
            capsys, "prefix-member", "--w", "b t' a", "--query", "a", "--exit-status"
        )
        assert code == 1


class TestValidateAndErrors:
    def test_validate_ok(self, capsys, open_spec):
        code, out, _ = run(capsys, "validate", "--spec", open_spec)
        assert code == 0 and out.strip() == "ok"

    def test_malformed_file_exits_2(self, capsys, tmp_path):
        path = tmp_path / "bad.spec"
        path.write_text("letters: a B\n")
        code, _, err = run(capsys, "validate", "--spec", str(path))
        assert code == 2 and "line 1" in err

    def test_bad_word_exits_2(self, capsys):
        code, _, err = run(capsys, "reduce", "--word", "A")
        assert code == 2 and "error" in err


class TestOracle:
    def test_benois(self, capsys):
        code, out, _ = run(capsys, "oracle", "benois", "--gens", "a b ; b'", "--word", "a")
        assert code == 0 and out.strip() == "yes"

    def test_bfs(self, capsys, open_spec):
        code, out, _ = run(
            capsys, "oracle", "bfs", "--spec", open_spec,
            "--gens", "g0_0 ; t ; t'", "--word", "t", "--max-len", "1",
        )
        assert code == 0 and out.strip() == "yes"

    def test_bfs_unknown(self, capsys, open_spec):
        code, out, _ = run(
            capsys, "oracle", "bfs", "--spec", open_spec,
            "--gens", "g1_0 ; t ; t'", "--word", "g0_0", "--max-len", "3", "--exit-status",
        )
        assert code == 1 and out.strip() == "unknown"
