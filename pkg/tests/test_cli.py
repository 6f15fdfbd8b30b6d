"""CLI tests driven through main(argv) with temporary files."""
import json

import pytest

from certdel.cli import (EXIT_ERROR, EXIT_INFEASIBLE, EXIT_OK, EXIT_REJECTED,
                         main)

PARAMS = {"n": 128, "m": 512, "s": 384, "k": 128, "tau": 32, "mu": 192,
          "delta": 0.05}
MICRO = {"n": 1, "m": 4, "s": 2, "k": 2, "tau": 1, "mu": 1, "delta": 0.05}


@pytest.fixture
def workdir(tmp_path):
    (tmp_path / "params.json").write_text(json.dumps(PARAMS))
    (tmp_path / "msg.bin").write_bytes(bytes(range(16)))
    return tmp_path


def run(*argv):
    return main([str(a) for a in argv])


class TestLifecycle:
    def test_round_trip(self, workdir, capsys):
        key = workdir / "key.json"
        ct = workdir / "ct.bin"
        out = workdir / "out.json"
        assert run("keygen", "--params", workdir / "params.json",
                   "--seed", 1, "--out", key) == EXIT_OK
        assert run("encrypt", "--key", key, "--in", workdir / "msg.bin",
                   "--out", ct) == EXIT_OK
        assert run("decrypt", "--key", key, "--in", ct, "--seed", 2,
                   "--out", out) == EXIT_OK
        doc = json.loads(out.read_text())
        assert doc["flag"] == 1
        assert bytes.fromhex(doc["plaintext_hex"]) == bytes(range(16))

    def test_delete_verify(self, workdir, capsys):
        key = workdir / "key.json"
        ct = workdir / "ct.bin"
        cert = workdir / "cert.bin"
        run("keygen", "--params", workdir / "params.json", "--seed", 1,
            "--out", key)
        run("encrypt", "--key", key, "--in", workdir / "msg.bin", "--out", ct)
        assert run("delete", "--in", ct, "--seed", 3, "--out", cert) == EXIT_OK
        assert run("verify", "--key", key, "--in", cert) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["ok"] == 1

    def test_decrypt_with_wrong_key_rejected(self, workdir, capsys):
        key1 = workdir / "key1.json"
        key2 = workdir / "key2.json"
        ct = workdir / "ct.bin"
        run("keygen", "--params", workdir / "params.json", "--seed", 1,
            "--out", key1)
        run("keygen", "--params", workdir / "params.json", "--seed", 99,
            "--out", key2)
        run("encrypt", "--key", key1, "--in", workdir / "msg.bin",
            "--out", ct)
        code = run("decrypt", "--key", key2, "--in", ct, "--seed", 4)
        assert code == EXIT_REJECTED
        assert json.loads(capsys.readouterr().out)["flag"] == 0

    def test_inline_params(self, workdir):
        key = workdir / "key.json"
        assert run("keygen", "--params", json.dumps(MICRO), "--seed", 5,
                   "--out", key) == EXIT_OK

    def test_wrong_message_size_errors(self, workdir, capsys):
        key = workdir / "key.json"
        short = workdir / "short.bin"
        short.write_bytes(b"\x00")
        run("keygen", "--params", workdir / "params.json", "--seed", 1,
            "--out", key)
        assert run("encrypt", "--key", key, "--in", short,
                   "--out", workdir / "ct.bin") == EXIT_ERROR

    def test_truncated_ciphertext_errors(self, workdir, capsys):
        key = workdir / "key.json"
        ct = workdir / "ct.bin"
        run("keygen", "--params", workdir / "params.json", "--seed", 1,
            "--out", key)
        run("encrypt", "--key", key, "--in", workdir / "msg.bin", "--out", ct)
        ct.write_bytes(ct.read_bytes()[:10])
        assert run("decrypt", "--key", key, "--in", ct,
                   "--seed", 2) == EXIT_ERROR


class TestParamsCommand:
    def test_eval(self, workdir, capsys):
        assert run("params", "eval", "--params",
                   workdir / "params.json") == EXIT_OK
        doc = json.loads(capsys.readouterr().out)
        assert set(doc) >= {"eta", "g", "epsilon", "nu_star", "params"}

    def test_plan_meets_target(self, workdir, capsys):
        assert run("params", "plan", "--n", 64, "--delta", 0.02,
                   "--target-eta", 2.0 ** -16) == EXIT_OK
        doc = json.loads(capsys.readouterr().out)
        assert doc["eta"] <= 2.0 ** -16

    def test_plan_infeasible(self, workdir, capsys):
        assert run("params", "plan", "--n", 128, "--delta", 0.49,
                   "--target-eta", 2.0 ** -64) == EXIT_INFEASIBLE

    def test_plan_requires_flags(self, workdir):
        with pytest.raises(SystemExit):
            run("params", "plan")


class TestSimulate:
    def test_honest_no_violation(self, workdir, capsys):
        out = workdir / "report.json"
        assert run("simulate", "--params", json.dumps(MICRO),
                   "--strategy", "honest", "--trials", 300, "--seed", 11,
                   "--out", out) == EXIT_OK
        doc = json.loads(out.read_text())
        assert doc["reports"][0]["violation"] is False

    def test_identical_seed_byte_identical(self, workdir):
        out1 = workdir / "r1.json"
        out2 = workdir / "r2.json"
        for out in (out1, out2):
            run("simulate", "--params", json.dumps(MICRO),
                "--strategy", "honest", "--strategy", "partial:f=0.4",
                "--trials", 200, "--seed", 12, "--out", out)
        assert out1.read_bytes() == out2.read_bytes()

    def test_report_dir_renders_figures(self, workdir):
        rep = workdir / "figs"
        run("simulate", "--params", json.dumps(MICRO),
            "--strategy", "honest", "--trials", 100, "--seed", 13,
            "--out", workdir / "r.json", "--report-dir", rep)
        assert (rep / "gap.csv").exists()
        png = (rep / "gap.png").read_bytes()
        assert png[:8] == b"\x89PNG\r\n\x1a\n"
        header = (rep / "gap.csv").read_text().splitlines()[0]
        assert header.startswith("strategy,")


class TestOracle:
    def instance(self, tmp_path, adversary):
        doc = {"params": {"n": 1, "m": 3, "s": 2, "k": 1, "tau": 1, "mu": 1,
                          "delta": 0.4},
               "adversary": adversary}
        path = tmp_path / "instance.json"
        path.write_text(json.dumps(doc))
        return path

    def test_epr_honest(self, workdir, capsys):
        path = self.instance(workdir, "epr-honest")
        assert run("oracle", "--in", path) == EXIT_OK
        doc = json.loads(capsys.readouterr().out)
        assert doc["p_success"] == pytest.approx(1.0, abs=1e-10)

    def test_report_dir(self, workdir, capsys):
        path = self.instance(workdir, "product-zero")
        rep = workdir / "ofigs"
        assert run("oracle", "--in", path, "--out", workdir / "o.json",
                   "--report-dir", rep) == EXIT_OK
        assert (rep / "oracle.csv").exists() and (rep / "oracle.png").exists()

    def test_unknown_adversary(self, workdir, capsys):
        path = self.instance(workdir, "nonsense")
        assert run("oracle", "--in", path) == EXIT_ERROR
