import subprocess
import sys

import pytest

from proofmesh.cli import main
from proofmesh.qap import EXAMPLE_CIRCUIT


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_demo(capsys):
    code, out, _ = run(capsys, "demo")
    assert code == 0 and out.splitlines()[-1] == "VERIFIED"
    assert "a [3, 9]" in out and "c [9, 27]" in out


def test_demo_deterministic(capsys):
    a = run(capsys, "demo", "--field", "test17", "--seed", "7")
    b = run(capsys, "demo", "--field", "test17", "--seed", "7")
    assert a[0] == 0 and a[1] == b[1]


def test_demo_seed_from_env(capsys, monkeypatch):
    monkeypatch.setenv("PROOFMESH_SEED", "7")
    a = run(capsys, "demo")
    b = run(capsys, "demo", "--seed", "7")
    assert a[1] == b[1]


@pytest.mark.parametrize("how,code", [("wire:4", 1), ("wire:3", 1), ("h:0", 1), ("server:2", 1), ("crash:1", 4)])
def test_demo_tamper(capsys, how, code):
    c, out, err = run(capsys, "demo", "--tamper", how)
    assert c == code
    if code == 1:
        assert "proof failed self-verification" in err


def test_demo_bad_tamper(capsys):
    assert run(capsys, "demo", "--tamper", "nonsense")[0] == 2
    assert run(capsys, "demo", "--tamper", "server:9")[0] == 2


@pytest.fixture
def files(tmp_path):
    (tmp_path / "c.circ").write_text(EXAMPLE_CIRCUIT)
    (tmp_path / "in.txt").write_text("1\n2\n3\n")
    return tmp_path


def test_setup_prove_verify(capsys, files):
    d = str(files)
    assert run(capsys, "setup", f"{d}/c.circ", "--ek", f"{d}/ek", "--vk", f"{d}/vk", "--seed", "5")[0] == 0
    assert run(capsys, "prove", f"{d}/c.circ", f"{d}/in.txt", "--ek", f"{d}/ek", "--proof", f"{d}/p0",
               "--public", f"{d}/pub", "--seed", "5")[0] == 0
    code, out, _ = run(capsys, "prove", f"{d}/c.circ", f"{d}/in.txt", "--ek", f"{d}/ek", "--vk", f"{d}/vk",
                       "--proof", f"{d}/p1", "--public", f"{d}/pub", "--seed", "5", "--distributed",
                       "--k", "2", "--t", "1")
    assert code == 0 and out.split() == [f"{d}/p1", f"{d}/pub"]
    assert (files / "p0").read_bytes() == (files / "p1").read_bytes()
    assert (files / "pub").read_text() == "1\n27\n"
    code, out, _ = run(capsys, "verify", "--vk", f"{d}/vk", "--proof", f"{d}/p1", "--public", f"{d}/pub")
    assert code == 0 and out.strip() == "ACCEPT"
    (files / "bad").write_text("1\n28\n")
    code, out, _ = run(capsys, "verify", "--vk", f"{d}/vk", "--proof", f"{d}/p1", "--public", f"{d}/bad")
    assert code == 1 and out.strip() == "REJECT"
    (files / "short").write_text("1\n")
    assert run(capsys, "verify", "--vk", f"{d}/vk", "--proof", f"{d}/p1", "--public", f"{d}/short")[0] == 2


def test_input_errors(capsys, files):
    d = str(files)
    code, _, err = run(capsys, "verify", "--vk", f"{d}/missing.bin")
    assert code == 2 and "missing.bin" in err
    (files / "broken.circ").write_text("inputs 1\nmul a w1 zz\n")
    code, _, err = run(capsys, "setup", f"{d}/broken.circ", "--ek", f"{d}/e", "--vk", f"{d}/v")
    assert code == 2 and "line 2" in err
    run(capsys, "setup", f"{d}/c.circ", "--ek", f"{d}/ek", "--vk", f"{d}/vk")
    (files / "two.txt").write_text("1\n2\n")
    assert run(capsys, "prove", f"{d}/c.circ", f"{d}/two.txt", "--ek", f"{d}/ek")[0] == 2
    (files / "vk").write_bytes(b"garbage")
    assert run(capsys, "verify", "--vk", f"{d}/vk", "--proof", f"{d}/ek")[0] == 2


def test_prove_wire_tamper_fails_self_check(capsys, files):
    d = str(files)
    (files / "sq.circ").write_text("inputs 2\npublic 2\nmul m w1 w1\nreturn m\n")
    run(capsys, "setup", f"{d}/sq.circ", "--ek", f"{d}/ek", "--vk", f"{d}/vk")
    (files / "i.txt").write_text("3\n4\n")
    code, _, err = run(capsys, "prove", f"{d}/sq.circ", f"{d}/i.txt", "--ek", f"{d}/ek", "--vk", f"{d}/vk",
                       "--proof", f"{d}/p", "--public", f"{d}/pub", "--tamper", "wire:3")
    assert code == 1 and "self-verification" in err


def test_unsatisfiable_exit_code(capsys, monkeypatch):
    from proofmesh import cli, snark

    def boom(*a, **k):
        raise snark.UnsatisfiableWitness("gate 0")
    monkeypatch.setattr(cli, "polynomial_division_centralized", boom)
    code, _, err = run(capsys, "demo", "--no-distributed")
    assert code == 3 and "witness does not satisfy circuit" in err


def test_bench(capsys):
    code, out, _ = run(capsys, "bench", "--n", "4", "--k", "1", "--t", "0")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "n,K,T,party,mul_count,add_count"
    assert [l.split(",")[3] for l in lines[1:]] == ["prover", "server1"]
    assert run(capsys, "bench", "--n", "8", "--k", "3")[0] == 2
    assert run(capsys, "bench", "--n", "12", "--k", "2")[0] == 2


def test_bench_server_counts_fall_with_k(capsys):
    code, out, _ = run(capsys, "bench", "--n", "1024", "--k", "2,4", "--t", "1", "--protocol", "coset_ifft")
    rows = [l.split(",") for l in out.splitlines()[1:]]
    srv = {int(r[1]): max(int(x[4]) for x in rows if x[1] == r[1] and x[3].startswith("server")) for r in rows}
    assert srv[4] < srv[2]


def test_privacy_audit(capsys):
    code, out, _ = run(capsys, "privacy-audit", "--secrets", "2")
    assert code == 0 and out.startswith("PRIVATE")
    code, out, _ = run(capsys, "privacy-audit", "--break-sharing")
    assert code == 1 and out.startswith("LEAKS")
    code, _, err = run(capsys, "privacy-audit", "--n", "4")
    assert code == 5 and "requires" in err


def test_entry_point():
    out = subprocess.run([sys.executable, "-m", "proofmesh.cli", "demo", "-q"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.splitlines()[-1] == "VERIFIED"
