import io
import json
import math

import pytest

from flowmag.cli import main
from flowmag.fixtures import plastic
from flowmag.graph import erdos_renyi, load_digraph

from oracles import cover_walks


def run(*argv):
    out = io.StringIO()
    code = main([str(a) for a in argv], out=out)
    return code, out.getvalue()


@pytest.fixture
def loopy(tmp_path):
    p = tmp_path / "loopy.edges"
    p.write_text("a a\na b\nb c\nc a\n")
    return p


@pytest.fixture
def garbage(tmp_path):
    p = tmp_path / "bad.edges"
    p.write_text("a b c\n")
    return p


def test_unknown_subcommand_and_missing_args():
    assert run("frobnicate")[0] == 2
    assert run()[0] == 2
    assert run("gen-er", "--n", 5, "--q", 0.5)[0] == 2


class TestValidateFlow:
    def test_ok(self, fixtures_dir):
        code, out = run("validate-flow", fixtures_dir / "flow4.edges")
        assert code == 0
        assert json.loads(out)["entry"] == ["0", "1"]

    def test_not_a_flow_graph(self, fixtures_dir, capsys):
        code, out = run("validate-flow", fixtures_dir / "3cycle.edges")
        assert code == 1 and out == ""
        assert "no source/target" in capsys.readouterr().err

    def test_io_errors(self, garbage, tmp_path):
        assert run("validate-flow", garbage)[0] == 2
        assert run("validate-flow", tmp_path / "missing.edges")[0] == 2


class TestEntropy:
    def test_plastic(self, fixtures_dir):
        code, out = run("entropy", fixtures_dir / "plastic.edges")
        data = json.loads(out)
        assert code == 0
        assert data["rho"] == pytest.approx(1.3247179572, abs=1e-9)
        assert data["h"] == pytest.approx(0.28119, abs=1e-4)
        assert data["charpoly"] == [-1, -1, 0, 1]
        assert data["zeta_denominator"] == [1, 0, -1, -1]

    def test_dot_and_neg_inf(self, tmp_path):
        p = tmp_path / "e.dot"
        p.write_text("digraph { a -> b }")
        data = json.loads(run("entropy", p)[1])
        assert data["h"] == "-inf" and data["zeta_denominator"] == [1]

    def test_cap(self, fixtures_dir):
        data = json.loads(run("entropy", fixtures_dir / "plastic.edges", "--exact-cap", 2)[1])
        assert data["charpoly"] is None

    def test_parse_error(self, garbage):
        assert run("entropy", garbage)[0] == 2
        assert run("entropy", garbage, "--input-format", "dot")[0] == 2


class TestCompose:
    def test_series(self, fixtures_dir):
        f = fixtures_dir / "flow4.edges"
        code, out = run("compose", f, f)
        assert code == 0
        D = load_digraph(out.encode())
        assert D.n == 6 and len(D.edges) == 7

    def test_parallel(self, fixtures_dir):
        f = fixtures_dir / "flow4.edges"
        code, out = run("compose", "--parallel", f, f)
        assert code == 0 and load_digraph(out.encode()).n == 8

    def test_invalid_factor(self, fixtures_dir, tmp_path):
        assert run("compose", fixtures_dir / "flow4.edges", fixtures_dir / "3cycle.edges")[0] == 1
        e = tmp_path / "e.edges"
        e.write_text("x y\n")
        assert run("compose", "--parallel", e, e)[0] == 1


class TestFlowMagnitude:
    def test_ok(self, fixtures_dir):
        code, out = run("flow-magnitude", fixtures_dir / "flow4.edges")
        data = json.loads(out)
        assert code == 0
        assert len(data["edges"]) == 4 and data["Z"][0][0] == "-inf"
        assert data["magnitude"] != "undefined"

    def test_unit_entropy(self, fixtures_dir):
        data = json.loads(run("flow-magnitude", fixtures_dir / "flow4.edges", "--unit-entropy")[1])
        assert data["Z"][0][0] == 0.0

    def test_not_flow(self, fixtures_dir):
        assert run("flow-magnitude", fixtures_dir / "plastic.edges")[0] == 1


class TestCoverBall:
    def test_counts(self, fixtures_dir):
        code, out = run("cover-ball", fixtures_dir / "plastic.edges", "--base", 1, "--radius", 3, "--t", 100)
        data = json.loads(out)
        assert code == 0
        assert data["cumulative_counts"] == [1, 2, 4, 6]
        assert data["counts"] == [1, 1, 2, 2]
        assert data["magnitude"] == pytest.approx(6.0)

    def test_sequence_csv(self, fixtures_dir):
        code, out = run("cover-ball", fixtures_dir / "plastic.edges", "--base", 1, "--radius", 2,
                        "--sequence", 200, "--output", "csv")
        lines = out.splitlines()
        assert code == 0 and lines[0] == "L,s_L" and len(lines) == 201
        assert abs(float(lines[-1].split(",")[1]) - 0.28119) < 0.02

    def test_reverse(self, fixtures_dir):
        data = json.loads(run("cover-ball", fixtures_dir / "plastic.edges", "--base", 1,
                              "--radius", 3, "--reverse")[1])
        reversed_edges = {(v, u) for u, v in plastic().edges}
        expected = [len(cover_walks(reversed_edges, 0, L)) for L in range(4)]
        assert data["direction"] == "reverse" and data["cumulative_counts"] == expected == [1, 3, 5, 8]

    def test_errors(self, fixtures_dir, loopy):
        plastic = fixtures_dir / "plastic.edges"
        assert run("cover-ball", plastic, "--base", "9", "--radius", 2)[0] == 1
        assert run("cover-ball", loopy, "--base", "a", "--radius", 2)[0] == 1
        assert run("cover-ball", loopy, "--base", "a", "--radius", 2, "--strip-loops")[0] == 0
        assert run("cover-ball", fixtures_dir / "flow4.edges", "--base", "0", "--radius", 2,
                   "--sequence", 5)[0] == 1
        assert run("cover-ball", plastic, "--base", "1", "--radius", 2, "--output", "csv")[0] == 2
        assert run("cover-ball", plastic, "--base", "1", "--radius", -1)[0] == 2


class TestMetricMagnitude:
    def test_table(self, tmp_path):
        p = tmp_path / "e.edges"
        p.write_text("a b\n")
        code, out = run("metric-magnitude", p, "--t", "0.1,1,10")
        lines = out.splitlines()
        assert code == 0 and lines[0] == "t,magnitude,method,residual"
        for line, t in zip(lines[1:], (0.1, 1, 10)):
            assert float(line.split(",")[1]) == pytest.approx(2 - math.exp(-t), abs=1e-10)

    def test_weights(self, fixtures_dir):
        code, out = run("metric-magnitude", fixtures_dir / "plastic.edges", "--t", "0,1", "--weights")
        lines = out.splitlines()
        assert code == 0 and lines[0].startswith("t,vertex,w,v") and len(lines) == 7

    def test_bad_scales(self, fixtures_dir):
        assert run("metric-magnitude", fixtures_dir / "plastic.edges", "--t", "-1")[0] == 2
        assert run("metric-magnitude", fixtures_dir / "plastic.edges", "--t", "x")[0] == 2


class TestFeatures:
    def test_csv(self, fixtures_dir):
        code, out = run("features", fixtures_dir / "flare_sample.json", "--largest-component")
        lines = out.splitlines()
        assert code == 0 and lines[0].startswith("vertex,in-degree,out-degree")
        assert "logmag-ball*-L3" in lines[0]

    def test_schema_error(self, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text('[{"name": "a", "imports": ["zz"]}]')
        assert run("features", p)[0] == 2


class TestCorrelate:
    def test_run(self, tmp_path):
        cfg = tmp_path / "exp.toml"
        cfg.write_text('n = 30\nN = 3\nseed = 5\n')
        long_csv = tmp_path / "long.csv"
        code, out = run("correlate", "--config", cfg, "--long-csv", long_csv, "--threads", 2)
        data = json.loads(out)
        assert code == 0
        assert data["config"]["seed"] == 5 and "threads" not in data["config"]
        assert long_csv.read_text().splitlines()[0] == "trial,feature,coefficient"
        code, out2 = run("correlate", "--config", cfg, "--threads", 1)
        assert out2 == out

    def test_flare_relative_source(self, fixtures_dir, tmp_path):
        cfg = tmp_path / "exp.json"
        cfg.write_text(json.dumps({"source": str(fixtures_dir / "flare_sample.json"), "N": 2, "seed": 1}))
        assert run("correlate", "--config", cfg)[0] == 0

    @pytest.mark.parametrize("body, code", [
        ('n = 30\nN = 2\n', 2),                 # seed must be explicit
        ('seed = 1\ncolour = "red"\n', 2),      # unknown key
        ('seed = 1\np_remove = 1.5\n', 1),      # out of range
        ('seed = 1\nN = 0\n', 1),
        ('seed = 1\nsource = "nope.edges"\n', 2),
        ('seed = [1\n', 2),
    ])
    def test_config_errors(self, tmp_path, body, code):
        cfg = tmp_path / "exp.toml"
        cfg.write_text(body)
        assert run("correlate", "--config", cfg)[0] == code


class TestGenEr:
    def test_round_trip(self):
        code, out = run("gen-er", "--n", 25, "--q", 0.2, "--seed", 42)
        assert code == 0
        D = load_digraph(out.encode())
        assert D.edges == erdos_renyi(25, 0.2, 42).edges and D.n == 25

    def test_bad_probability(self):
        assert run("gen-er", "--n", 5, "--q", 2, "--seed", 1)[0] == 2
