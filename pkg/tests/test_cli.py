import re
import subprocess
import sys

from simpdist.cli import main

JOB = """\
complex C3
simplex 0 1
simplex 1 2
simplex 0 2
map id : C3 -> C3 identity
map const0 : C3 -> C3 constant 0
validate C3
simpdist id const0 --b 0 --c 2
product C3 C3 --as P
sc C3 --b 0 --c 2
simpdist pr1 pr2 --b 0 --c 2
contiguity id const0 --max-c 3
"""


def _run(tmp_path, text, *flags, name="job.txt"):
    job = tmp_path / name
    job.write_text(text)
    return main([str(job), *flags])


def _blocks(out):
    return re.split(r"^=== query \d+ ===$", out, flags=re.M)[1:]


def test_report_blocks_and_certificates(tmp_path, capsys):
    certs = tmp_path / "certs"
    code = _run(tmp_path, JOB, "--cert-out", str(certs), "--with-oracle")
    out = capsys.readouterr().out
    assert code == 0
    blocks = _blocks(out)
    assert len(blocks) == 6
    assert "value: Finite(1)" in blocks[1]
    assert "oracle: Finite(1) (agrees)" in blocks[1]
    sc_value = re.search(r"value: (\S+)", blocks[3]).group(1)
    direct = re.search(r"value: (\S+)", blocks[4]).group(1)
    assert sc_value == direct == "Finite(2)"
    assert "value: inf" in blocks[5]
    assert (certs / "query2.cert").exists()

    verify = "".join(f"verify-cert {p.name}\n" for p in sorted(certs.iterdir()))
    code = _run(certs, verify, name="verify.txt")
    out = capsys.readouterr().out
    assert code == 0
    assert out.count("accepted") == 3


def test_rejected_certificate(tmp_path, capsys):
    certs = tmp_path / "certs"
    _run(tmp_path, JOB, "--cert-out", str(certs))
    capsys.readouterr()
    cert = certs / "query2.cert"
    cert.write_text(cert.read_text().replace("value Finite(1)", "value Finite(0)"))
    code = _run(certs, "verify-cert query2.cert\n", name="verify.txt")
    assert code == 1
    assert "rejected" in capsys.readouterr().out


def test_empty_job(tmp_path, capsys):
    assert _run(tmp_path, "# nothing to do\n") == 0
    assert capsys.readouterr().out == ""


def test_budget_gives_exit_2(tmp_path, capsys):
    code = _run(tmp_path, JOB.replace("--b 0 --c 2\nproduct", "--b 2 --c 2\nproduct"), "--max-simplices", "5")
    assert code == 2
    assert "unknown(budget=" in capsys.readouterr().out


def test_parse_error_exit_1(tmp_path, capsys):
    code = _run(tmp_path, JOB + "simpdist id nope --b 0 --c 1\n")
    assert code == 1
    assert "line 13" in capsys.readouterr().err


def test_non_simplicial_map_reported(tmp_path, capsys):
    text = JOB + "map bad : C3 -> P\n0 -> 1\n1 -> 3\n2 -> 3\ncheck-map bad\n"
    assert _run(tmp_path, text) == 0
    assert "simplicial: no" in capsys.readouterr().out


def test_probe(tmp_path, capsys):
    text = JOB.split("validate")[0] + "simpdist id const0 --b 0 --c 0 --probe 1 3\n"
    assert _run(tmp_path, text) == 0
    out = capsys.readouterr().out
    assert "stable at horizon" in out and "not certified" in out


def test_deterministic_output(tmp_path):
    job = tmp_path / "job.txt"
    job.write_text(JOB)
    runs = [
        subprocess.run(
            [sys.executable, "-m", "simpdist.cli", str(job)], capture_output=True, text=True
        ).stdout
        for _ in range(2)
    ]
    assert runs[0] == runs[1] and runs[0]
