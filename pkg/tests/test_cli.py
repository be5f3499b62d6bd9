import json

import pytest

from rankbench.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_keygen_encrypt_decrypt_roundtrip(tmp_path, capsys):
    pub, sec, ct = (str(tmp_path / f) for f in ("pub.json", "sec.json", "ct.json"))
    code, _, _ = run_cli(capsys, "keygen", "--q", "2", "--m", "12", "--n", "12",
                         "--k", "8", "--lambda", "2", "--seed", "7",
                         "--pub", pub, "--sec", sec)
    assert code == 0
    msg = "0x1,0x2f,0x300,0x4,0x5,0x6,0x7,0x8"
    code, _, _ = run_cli(capsys, "encrypt", "--pub", pub, "--msg", msg,
                         "--seed", "3", "--out", ct)
    assert code == 0
    code, out, _ = run_cli(capsys, "--json", "decrypt", "--sec", sec, "--ct", ct)
    assert code == 0
    assert json.loads(out)["msg"] == msg.split(",")


def test_artifacts_byte_identical(tmp_path, capsys):
    args = ["keygen", "--q", "2", "--m", "12", "--n", "12", "--k", "8",
            "--lambda", "2", "--seed", "11"]
    a_pub, a_sec = str(tmp_path / "a_pub.json"), str(tmp_path / "a_sec.json")
    b_pub, b_sec = str(tmp_path / "b_pub.json"), str(tmp_path / "b_sec.json")
    assert run_cli(capsys, *args, "--pub", a_pub, "--sec", a_sec)[0] == 0
    assert run_cli(capsys, *args, "--pub", b_pub, "--sec", b_sec)[0] == 0
    assert open(a_pub, "rb").read() == open(b_pub, "rb").read()
    assert open(a_sec, "rb").read() == open(b_sec, "rb").read()
    # encrypt twice with the same seed
    c1, c2 = str(tmp_path / "c1.json"), str(tmp_path / "c2.json")
    m = ",".join(["0x1"] * 8)
    run_cli(capsys, "encrypt", "--pub", a_pub, "--msg", m, "--seed", "4", "--out", c1)
    run_cli(capsys, "encrypt", "--pub", a_pub, "--msg", m, "--seed", "4", "--out", c2)
    assert open(c1, "rb").read() == open(c2, "rb").read()


def test_attack_verify_flow(tmp_path, capsys):
    pub, sec, rec = (str(tmp_path / f) for f in ("p.json", "s.json", "r.json"))
    run_cli(capsys, "keygen", "--q", "2", "--m", "12", "--n", "12", "--k", "8",
            "--lambda", "2", "--seed", "7", "--pub", pub, "--sec", sec)
    code, out, _ = run_cli(capsys, "--json", "attack", "--pub", pub,
                           "--lambda", "2", "--out", rec)
    assert code == 0
    assert json.loads(out)["success"] is True
    rec_doc = json.load(open(rec))
    assert set(rec_doc) == {"gammas", "g_vecs", "verified"}
    assert rec_doc["verified"] is True
    code, out, _ = run_cli(capsys, "--json", "verify", "--pub", pub,
                           "--recovered", rec)
    assert code == 0 and json.loads(out)["verified"] is True
    # tampered key must fail verification with exit 1
    rec_doc["gammas"][0] = "0x3"
    json.dump(rec_doc, open(rec, "w"))
    code, out, _ = run_cli(capsys, "--json", "verify", "--pub", pub,
                           "--recovered", rec)
    assert code == 1 and json.loads(out)["verified"] is False


def test_attack_lambda3_blind_through_files(tmp_path, capsys):
    # codimension-5 parameters where the blind sweep terminates quickly
    pub, sec, rec = (str(tmp_path / f) for f in ("p.json", "s.json", "r.json"))
    run_cli(capsys, "keygen", "--q", "2", "--m", "19", "--n", "19", "--k", "14",
            "--lambda", "3", "--seed", "3", "--pub", pub, "--sec", sec)
    code, out, _ = run_cli(capsys, "--json", "attack", "--pub", pub,
                           "--lambda", "3", "--out", rec)
    assert code == 0
    doc = json.loads(out)
    assert doc["success"] is True
    code, out, _ = run_cli(capsys, "--json", "verify", "--pub", pub,
                           "--recovered", rec)
    assert code == 0 and json.loads(out)["verified"] is True


def test_attack_failure_exit_code(tmp_path, capsys):
    pub, sec = str(tmp_path / "p.json"), str(tmp_path / "s.json")
    run_cli(capsys, "keygen", "--q", "2", "--m", "13", "--n", "13", "--k", "10",
            "--lambda", "3", "--seed", "1", "--pub", pub, "--sec", sec)
    code, _, err = run_cli(capsys, "attack", "--pub", pub, "--lambda", "3",
                           "--out", str(tmp_path / "r.json"))
    assert code == 1
    assert "attack failed" in err


def test_distinguish_json_and_figure(tmp_path, capsys):
    pub, sec = str(tmp_path / "p.json"), str(tmp_path / "s.json")
    run_cli(capsys, "keygen", "--q", "2", "--m", "13", "--n", "13", "--k", "10",
            "--lambda", "3", "--seed", "2", "--pub", pub, "--sec", sec)
    fig = str(tmp_path / "dist.png")
    code, out, _ = run_cli(capsys, "--json", "distinguish", "--pub", pub,
                           "--lambda", "3", "--baseline-trials", "3",
                           "--seed", "9", "--profile", "--fig", fig)
    assert code == 0
    doc = json.loads(out)
    assert doc["bound"] == 12 and doc["observed_dim"] <= 12
    assert len(doc["baseline_dims"]) == 3
    assert doc["profile"] == [6, 3] and doc["profile_expected"] == [6, 3]
    assert (tmp_path / "dist.png").exists()
    assert (tmp_path / "dist_profile.png").exists()


def test_distinguish_baseline_requires_seed(tmp_path, capsys):
    pub, sec = str(tmp_path / "p.json"), str(tmp_path / "s.json")
    run_cli(capsys, "keygen", "--q", "2", "--m", "12", "--n", "12", "--k", "8",
            "--lambda", "2", "--seed", "1", "--pub", pub, "--sec", sec)
    code, _, err = run_cli(capsys, "distinguish", "--pub", pub, "--lambda", "2",
                           "--baseline-trials", "2")
    assert code == 2


def test_identities_command(capsys):
    code, out, _ = run_cli(capsys, "identities", "--q", "2")
    assert code == 0
    lines = [l for l in out.splitlines() if l]
    assert all(l.startswith("PASS") for l in lines)
    assert len(lines) == 10


def test_bench_csv_and_figure(tmp_path, capsys):
    csv = str(tmp_path / "b.csv")
    fig = str(tmp_path / "b.png")
    code, _, _ = run_cli(capsys, "bench", "--suite", "identities",
                         "--csv", csv, "--fig", fig)
    assert code == 0
    lines = open(csv).read().splitlines()
    assert lines[0] == "suite,params,phase,millis"
    assert len(lines) >= 3
    assert (tmp_path / "b.png").exists()


def test_missing_file_is_operational_error(tmp_path, capsys):
    code, _, err = run_cli(capsys, "decrypt", "--sec", str(tmp_path / "nope.json"),
                           "--ct", str(tmp_path / "nope2.json"))
    assert code == 1 and "error" in err


def test_usage_error_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["keygen", "--q", "2"])
    assert exc.value.code == 2


def test_wrong_format_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"format": "other/v9"}')
    code, _, err = run_cli(capsys, "distinguish", "--pub", str(bad), "--lambda", "2")
    assert code == 1 and "format" in err
