"""CLI surface: commands, schemas, exit codes, determinism."""

import hashlib
import json
import math

import pytest

from gausslab import cli


def run(argv):
    return cli.main(argv)


def file_hash(path):
    return hashlib.sha256(path.read_bytes()).hexdigest()


class TestVerifyCommand:
    def test_reduction_passes(self, capsys):
        assert run(["verify", "reduction"]) == 0
        out = capsys.readouterr().out
        assert "0 violations" in out

    def test_unknown_suite_rejected(self):
        assert run(["verify", "bogus"]) == 2

    def test_fault_injection_fails(self, monkeypatch, capsys):
        from gausslab import verify as verify_mod

        real = verify_mod.class_counts

        def corrupted(q, by_mod4=False):
            counts = dict(real(q, by_mod4=by_mod4))
            key = next(iter(counts))
            counts[key] += 1  # off by one
            return counts

        monkeypatch.setattr(verify_mod, "class_counts", corrupted)
        assert run(["verify", "class_counts"]) == 1
        assert "violations" in capsys.readouterr().out


class TestFigureCommand:
    def test_small_fig1(self, tmp_path, capsys):
        out = tmp_path / "out"
        code = run(["figure", "fig1", "--trunc", "150", "--samples", "2000",
                    "--out-dir", str(out)])
        assert code == 0
        samples = (out / "fig1_samples.csv").read_text().splitlines()
        header_idx = next(i for i, l in enumerate(samples) if not l.startswith("#"))
        assert samples[header_idx] == "p,sigma,re,im"
        rows = samples[header_idx + 1:]
        assert len(rows) == 2136
        summary = json.loads((out / "fig1_summary.json").read_text())
        assert summary["total_samples"] == 2136
        assert summary["mean_bin_count"] == pytest.approx(53.4)
        assert summary["q"] == 5012
        assert (out / "fig1_hist_re.csv").exists()
        assert (out / "fig1_hist_im.csv").exists()
        assert (out / "fig1_limit.csv").exists()

    def test_fig3_limit_is_single_column(self, tmp_path):
        out = tmp_path / "out"
        assert run(["figure", "fig3", "--trunc", "101", "--samples", "1500",
                    "--out-dir", str(out)]) == 0
        lines = (out / "fig3_limit.csv").read_text().splitlines()
        header_idx = next(i for i, l in enumerate(lines) if not l.startswith("#"))
        assert lines[header_idx] == "im"
        summary = json.loads((out / "fig3_summary.json").read_text())
        assert summary["total_samples"] == 2376
        assert summary["variant"] == "G_minus"

    def test_histogram_counts_sum_to_total(self, tmp_path):
        out = tmp_path / "out"
        run(["figure", "fig2", "--trunc", "100", "--samples", "1000",
             "--out-dir", str(out)])
        lines = (out / "fig2_hist_re.csv").read_text().splitlines()
        rows = [l for l in lines if not l.startswith("#") and not l.startswith("bin_lo")]
        assert sum(int(r.split(",")[2]) for r in rows) == 3336

    def test_determinism(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        argv = ["figure", "fig1", "--trunc", "120", "--samples", "1000", "--seed", "3"]
        assert run(argv + ["--out-dir", str(a)]) == 0
        assert run(argv + ["--out-dir", str(b)]) == 0
        for name in ("fig1_samples.csv", "fig1_limit.csv", "fig1_hist_re.csv",
                     "fig1_hist_im.csv", "fig1_summary.json"):
            assert file_hash(a / name) == file_hash(b / name), name


class TestMomentsCommand:
    def test_constant_odd_q(self, capsys):
        assert run(["moments", "--q", "15", "--weight", "const", "--k-list", "0,2"]) == 0
        out = capsys.readouterr().out.splitlines()
        assert out[0] == "q,k,empirical,limit,gap"
        for line in out[1:]:
            q, k, emp, lim, gap = line.split(",")
            assert float(emp) == pytest.approx(1.0, abs=1e-9)
            assert float(gap) == pytest.approx(0.0, abs=1e-9)

    def test_range_to_file(self, tmp_path):
        path = tmp_path / "m.csv"
        assert run(["moments", "--q-range", "13..17", "--k-list", "2",
                    "--out", str(path)]) == 0
        rows = [l for l in path.read_text().splitlines()
                if not l.startswith("#") and not l.startswith("q,")]
        assert len(rows) == 5

    def test_requires_exactly_one_q(self):
        assert run(["moments"]) == 2
        assert run(["moments", "--q", "5", "--q-range", "3..9"]) == 2

    def test_bad_weight_spec(self):
        assert run(["moments", "--q", "15", "--weight", "nope"]) == 2
        assert run(["moments", "--q", "15", "--weight", "interval:0.9,0.1"]) == 2


class TestExpsumCommand:
    def test_kloosterman_row(self, capsys):
        assert run(["expsum", "--kind", "kloosterman", "--m", "1", "--n", "1",
                    "--q", "5"]) == 0
        out = capsys.readouterr().out.splitlines()
        assert out[0] == "q,m,n,re,im,abs,weil_bound,ratio"
        cols = out[1].split(",")
        assert float(cols[5]) == pytest.approx(0.3819660112501051, abs=1e-9)

    def test_salie_even_modulus_exit_2(self, capsys):
        assert run(["expsum", "--kind", "salie", "--m", "0", "--n", "0", "--q", "4"]) == 2
        assert "odd" in capsys.readouterr().err

    def test_sweep_skips_inapplicable(self, tmp_path):
        path = tmp_path / "s.csv"
        assert run(["expsum", "--kind", "twisted", "--m", "1", "--n", "1",
                    "--sweep-q", "4..20", "--out", str(path)]) == 0
        rows = [l for l in path.read_text().splitlines()
                if not l.startswith("#") and not l.startswith("q,")]
        assert [int(r.split(",")[0]) for r in rows] == [4, 8, 12, 16, 20]


class TestEquidistCommand:
    def test_prime_101(self, capsys):
        assert run(["equidist", "--q", "101", "--t", "all", "--m", "1", "--n", "1"]) == 0
        out = capsys.readouterr().out
        max_line = [l for l in out.splitlines() if l.startswith("max")][0]
        assert float(max_line.split("=")[1]) <= 2 * math.sqrt(101) / 100

    def test_random_t_deterministic(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        argv = ["equidist", "--q", "997", "--t", "random:20", "--m", "1", "--n", "2",
                "--seed", "4"]
        assert run(argv + ["--out", str(a)]) == 0
        assert run(argv + ["--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_bad_t(self):
        assert run(["equidist", "--q", "11", "--t", "sometimes", "--m", "1", "--n", "0"]) == 2


class TestWeightParsing:
    def test_fourier_csv(self, tmp_path, capsys):
        path = tmp_path / "w.csv"
        path.write_text("k,re,im\n0,1.0,0.0\n1,0.5,-0.5\n")
        assert run(["moments", "--q", "13", "--weight", f"fourier:{path}",
                    "--k-list", "0"]) == 0

    def test_missing_fourier_file(self):
        assert run(["moments", "--q", "13", "--weight", "fourier:/nonexistent.csv"]) == 2


class TestOutputFormats:
    def test_json_format(self, tmp_path):
        path = tmp_path / "m.json"
        assert run(["moments", "--q", "15", "--k-list", "2", "--format", "json",
                    "--out", str(path)]) == 0
        obj = json.loads(path.read_text())
        assert obj["rows"][0]["empirical"] == pytest.approx(1.0)
        assert obj["command"] == "moments"

    def test_csv_metadata_header(self, tmp_path):
        path = tmp_path / "e.csv"
        assert run(["expsum", "--kind", "kloosterman", "--m", "1", "--n", "1",
                    "--q", "5", "--out", str(path)]) == 0
        lines = path.read_text().splitlines()
        assert lines[0].startswith("# command=expsum")
        assert any(l.startswith("# kind=kloosterman") for l in lines)
