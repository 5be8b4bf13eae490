from __future__ import annotations

import json
import subprocess
import sys

import pytest

from quintic_witness.certificate import (
    CERTIFICATE_KEYS,
    CHECK_KEYS,
    canonical_dumps,
    validate_certificate,
)
from quintic_witness.cli import main

C0 = "# standard nodal cubic\n0\n0\ns*t^2 - s^3\nt^3 - s^2*t\ns^3\n"
LINE = "s\n-s\nt\n-t\n0\n"
FERMAT = "z0^5 + z1^5 + z2^5 + z3^5 + z4^5\n"


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, text in {"c0": C0, "line": LINE, "fermat": FERMAT, "sing": "z0^3*z1^2\n",
                       "bad": "z0^2 + z1\n", "twisted": "0\n0\n(s+t)\n"}.items():
        p = tmp_path / f"{name}.txt"
        p.write_text(text)
        paths[name] = str(p)
    c0b = tmp_path / "c0b.txt"
    # c0 composed with (s, t) -> (2s + t, s + 3t)
    from quintic_witness.curves import standard_nodal_cubic

    c = standard_nodal_cubic().compose(2, 1, 1, 3)
    c0b.write_text("\n".join(c.to_strings()) + "\n")
    paths["c0b"] = str(c0b)
    return paths


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_implicitize(capsys, files):
    code, out, _ = run(capsys, "implicitize", "--curve", files["c0"])
    assert code == 0 and out.strip() == "z2^3 + z2^2*z4 - z3^2*z4"
    code, out, _ = run(capsys, "implicitize", "--curve", files["c0b"])
    assert code == 0 and out.strip() == "z2^3 + z2^2*z4 - z3^2*z4"
    code, _, err = run(capsys, "implicitize", "--curve", files["line"])
    assert code == 2 and "not a plane cubic" in err


def test_smooth(capsys, files):
    code, out, _ = run(capsys, "smooth", "--quintic", files["fermat"])
    assert code == 0 and json.loads(out)["conclusion_over_Q"] == "smooth"
    code, out, _ = run(capsys, "smooth", "--quintic", files["sing"], "--prime", "7", "32003")
    assert code == 1 and json.loads(out)["conclusion_over_Q"] == "undetermined"
    code, _, err = run(capsys, "smooth", "--quintic", files["bad"])
    assert code == 2 and "degrees 2 and 1" in err
    code, _, err = run(capsys, "smooth", "--quintic", files["fermat"], "--prime", "9")
    assert code == 2


def test_analyze(capsys, files, tmp_path):
    out_path = tmp_path / "report.json"
    code, _, _ = run(capsys, "analyze", "--curve", files["line"], "--quintic", files["fermat"],
                     "--report", str(out_path))
    rep = json.loads(out_path.read_text())
    assert code == 0 and rep["h0"] == rep["h1"] == 2 and rep["rank_phi"] == 4
    code, out, err = run(capsys, "analyze", "--curve", files["c0"], "--quintic", files["fermat"])
    assert code == 1 and "incidence violated" in err and "s^" in err
    code, _, _ = run(capsys, "analyze", "--curve", files["twisted"], "--quintic", files["fermat"])
    assert code == 2
    code, _, _ = run(capsys, "analyze", "--curve", files["c0"], "--quintic", str(tmp_path / "missing"))
    assert code == 2


def test_certify_bad_prime(capsys):
    code, _, err = run(capsys, "certify", "--prime", "6")
    assert code == 2 and "not a prime" in err


def test_bad_flags_exit_2():
    proc = subprocess.run([sys.executable, "-m", "quintic_witness", "certify", "--seed", "x"],
                          capture_output=True, text=True)
    assert proc.returncode == 2
    proc = subprocess.run([sys.executable, "-m", "quintic_witness"], capture_output=True, text=True)
    assert proc.returncode == 2


def test_qw_seed_env(monkeypatch, capsys):
    monkeypatch.setenv("QW_SEED", "abc")
    code, _, err = run(capsys, "certify")
    assert code == 2 and "QW_SEED" in err


def test_canonical_json():
    assert canonical_dumps({"b": 1, "a": [True, None]}) == '{\n  "a": [\n    true,\n    null\n  ],\n  "b": 1\n}\n'
    with pytest.raises(TypeError):
        canonical_dumps({"x": 0.5})


def test_certificate_shape(flagship_certificate):
    cert = flagship_certificate
    assert set(cert) == set(CERTIFICATE_KEYS)
    assert set(cert["checks"]) == set(CHECK_KEYS)
    assert validate_certificate(cert) == []


def test_validator_catches_tampering(flagship_certificate):
    cert = json.loads(canonical_dumps(flagship_certificate))
    cert["checks"]["h1"] = 7
    assert any("h1" in p for p in validate_certificate(cert))
    cert = json.loads(canonical_dumps(flagship_certificate))
    cert["overall_pass"] = not cert["overall_pass"]
    assert any("overall_pass" in p for p in validate_certificate(cert))
    cert = json.loads(canonical_dumps(flagship_certificate))
    cert["f0"] = cert["f0"].replace("7*z0^5", "8*z0^5", 1)
    assert any("f0" in p for p in validate_certificate(cert))
    cert = json.loads(canonical_dumps(flagship_certificate))
    del cert["attempts"]
    assert validate_certificate(cert)


def test_validate_mode(capsys, tmp_path, flagship_certificate):
    path = tmp_path / "cert.json"
    path.write_text(canonical_dumps(flagship_certificate))
    code, out, err = run(capsys, "certify", "--validate", str(path))
    assert "consistent" in out
    assert code == (0 if flagship_certificate["overall_pass"] else 1)
    path.write_text("{not json")
    code, _, _ = run(capsys, "certify", "--validate", str(path))
    assert code == 2
