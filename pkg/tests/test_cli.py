import io

import pytest

from cablekill import cli

TREFOIL = "gens a b\nrel a^2 b^-3\n"


def run(*argv):
    out = io.StringIO()
    code = cli.run(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture
def trefoil(tmp_path):
    path = tmp_path / "trefoil.pres"
    path.write_text(TREFOIL)
    return str(path)


def test_nf():
    code, out = run("nf", "--m", "1", "--n", "3", "t x1 t^-1")
    assert code == 0 and out.strip() == "x2 ; t^0"
    code, out = run("nf", "--m", "2", "--n", "3", "x1^2", "x3", ";", "t^3")
    assert code == 0 and out.strip() == "x1^2 x3 ; t^3"


def test_claim1_inline():
    code, out = run("claim1", "--m", "1", "--n", "2", "--l", "2")
    assert code == 0
    assert out.startswith("cable 1 2\nkiller 2\ntarget x1 x2\n")
    assert out.rstrip().endswith("certificate accepted")


def test_certificate_roundtrip_and_tamper(tmp_path):
    cert = tmp_path / "c.txt"
    code, _ = run("claim1", "--m", "2", "--n", "5", "--l", "3", "--emit-cert", str(cert))
    assert code == 0
    assert run("claim1", "--check-cert", str(cert))[0] == 0
    text = cert.read_text().splitlines()
    text[1] = "killer 4"
    cert.write_text("\n".join(text) + "\n")
    code, out = run("claim1", "--check-cert", str(cert))
    assert code == 1 and "certificate rejected: residual" in out
    cert.write_text("cable 2 5\nkiller 3\n")
    assert run("claim1", "--check-cert", str(cert))[0] == 2


def test_quotient(trefoil, tmp_path):
    code, out = run("quotient", "--pres", trefoil, "--kill", "a^-1 b^2")
    assert code == 0 and out.splitlines()[0] == "index 1"
    code, out = run("quotient", "--pres", trefoil, "--kill", "b")
    assert code == 1 and out.splitlines()[0] == "index 2"
    code, out = run("quotient", "--pres", trefoil, "--max-cosets", "50")
    assert code == 3 and out.splitlines()[0] == "overflow 50"
    log = tmp_path / "tc.log"
    code, _ = run("quotient", "--pres", trefoil, "--kill", "a^-1 b^2", "--transcript", str(log),
                  "--strategy", "hlt")
    lines = log.read_text().splitlines()
    assert code == 0 and lines[-1] == "index 1" and lines[0].startswith("def 1 ")


def test_h1(trefoil):
    code, out = run("h1", "--pres", trefoil)
    assert code == 0 and out.splitlines() == ["betti 1", "torsion none", "H1 = Z"]


def test_make_pres_then_h1(tmp_path):
    target = tmp_path / "cable.pres"
    code, _ = run("make-pres", "--spec", "cable(3,2; torus(2,3))", "-o", str(target))
    assert code == 0
    text = target.read_text()
    assert text.startswith("# cable(3,2; torus(2,3)) d=0\ngens x1 x2 t c.a c.b\n")
    assert run("h1", "--pres", str(target))[1].splitlines()[-1] == "H1 = Z"
    code, out = run("quotient", "--pres", str(target), "--kill", "x1^2 x2^-1")
    assert code == 0 and out.startswith("index 1")
    code, out = run("make-pres", "--spec", "torus(2,5)", "-o", "-")
    assert code == 0 and "rel a^2 b^-5" in out


def test_killers():
    code, out = run("killers", "--spec", "torus(2,3)", "--m", "3", "--n", "2", "--l-range", "1..2")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 3
    assert lines[1].startswith("killer l=1 x1 -> certified")
    assert lines[2].startswith("killer l=2 x1^2 x2^-1 -> certified")


def test_inequiv():
    code, out = run("inequiv", "--m", "2", "--n", "3", "--k", "2", "--l", "3")
    assert code == 0
    assert out.splitlines()[-1].startswith("verdict certified-inequivalent")
    code, out = run("inequiv", "--m", "2", "--n", "3", "--k", "2", "--l", "2")
    assert code == 0 and "verdict equivalent-candidate" in out


@pytest.mark.parametrize("argv", [
    [],
    ["bogus"],
    ["nf", "--m", "2", "--n", "4", "x1"],
    ["nf", "--m", "1", "--n", "2", "y1"],
    ["claim1", "--m", "1", "--n", "2"],
    ["claim1", "--m", "1", "--n", "2", "--l", "0"],
    ["quotient", "--pres", "/nonexistent/file"],
    ["quotient", "--pres", "/dev/null"],
    ["make-pres", "--spec", "torus(2,4)", "-o", "-"],
    ["killers", "--spec", "torus(2,3)", "--m", "3", "--n", "2", "--l-range", "3..1"],
    ["inequiv", "--m", "1", "--n", "2", "--k", "0", "--l", "1"],
    ["h1", "--pres", "/nonexistent"],
    ["suite", "other"],
])
def test_usage_errors(argv):
    assert run(*argv)[0] == 2


def test_bad_kill_word(trefoil):
    assert run("quotient", "--pres", trefoil, "--kill", "c")[0] == 2
    assert run("quotient", "--pres", trefoil, "--max-cosets", "0")[0] == 2


def test_suite_deterministic():
    code1, out1 = run("suite", "acceptance")
    code2, out2 = run("suite", "acceptance")
    table1, _, timings = out1.partition("--\n")
    assert table1 == out2.partition("--\n")[0]
    rows = [line for line in table1.splitlines() if line.startswith("[")]
    assert len(rows) == 11
    assert code1 == code2 == (0 if all(r.startswith("[PASS]") for r in rows) else 1)
    assert all(line.startswith("timing ") for line in timings.splitlines())
