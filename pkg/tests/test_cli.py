import json

import pytest

from src import main as cli
from src.errors import InvariantViolation
from src.report_signing import generate_key_pair


def _run(tmp_path, name, *argv):
    out = tmp_path / f"{name}.json"
    code = cli.main([*argv, "--quiet", "--out", str(out)])
    report = json.loads(out.read_text(encoding="utf-8")) if out.exists() else None
    return code, report


def test_suites_lists_every_suite(capsys):
    assert cli.main(["suites"]) == 0
    names = {row["name"] for row in json.loads(capsys.readouterr().out)}
    assert {"lemma2.3", "prop3.6", "thm4.7", "slodowy"} <= names


def test_build_report(tmp_path):
    code, report = _run(tmp_path, "build", "build", "--builtin", "sl2", "--q", "5")
    assert code == 0
    assert report["reportVersion"] == 1
    assert report["result"]["groupOrder"] == 120
    assert report["ok"] is True


def test_build_needs_q(tmp_path):
    code, report = _run(tmp_path, "build", "build", "--builtin", "sl2")
    assert code == 1
    assert report is None


def test_unknown_builtin_is_rejected_by_the_parser():
    with pytest.raises(SystemExit):
        cli.main(["orbits", "--builtin", "so5", "--q", "5"])


def test_nilpotent_orbits(tmp_path):
    code, report = _run(tmp_path, "orbits", "orbits", "--builtin", "sl2", "--q", "3", "--nilpotent")
    assert code == 0
    assert sorted(row["size"] for row in report["result"]["orbits"]) == [1, 4, 4]
    assert sorted(tuple(row["jordanType"]) for row in report["result"]["orbits"]) == [(1, 1), (2,), (2,)]


def test_algebra_files_round_trip(tmp_path):
    a, g = tmp_path / "a.json", tmp_path / "g.json"
    code, _ = _run(tmp_path, "build", "build", "--builtin", "gl2-z2", "--q", "5",
                   "--algebra-out", str(a), "--group-out", str(g))
    assert code == 0
    code, report = _run(tmp_path, "orbits", "orbits", "--algebra", str(a), "--group", str(g),
                        "--degree", "1", "--nilpotent")
    assert code == 0
    assert report["result"]["count"] == 3


def test_verify_passes(tmp_path):
    code, report = _run(tmp_path, "verify", "verify", "lemma2.3", "--builtin", "sl2", "--q", "3")
    assert code == 0
    assert report["suites"][0]["ok"] is True


def test_verify_failure_exit_code(tmp_path, monkeypatch):
    from src.suites import lemma2_3

    def broken(ctx):
        raise InvariantViolation("forced", {"orbit": 7})

    monkeypatch.setattr(lemma2_3, "run", broken)
    code, report = _run(tmp_path, "verify", "verify", "lemma2.3", "--builtin", "sl2", "--q", "3")
    assert code == 2
    assert report["ok"] is False
    assert report["suites"][0]["witness"] == {"orbit": 7}


def test_unknown_suite(tmp_path):
    code, _ = _run(tmp_path, "verify", "verify", "lemma9.9", "--builtin", "sl2", "--q", "3")
    assert code == 1


@pytest.mark.parametrize("suite", ["prop3.6", "lemma3.9"])
def test_reports_do_not_depend_on_threads(tmp_path, suite):
    args = ("verify", suite, "--builtin", "sl2", "--q", "3")
    one, _ = _run(tmp_path, "one", *args, "--threads", "1")
    eight, _ = _run(tmp_path, "eight", *args, "--threads", "8")
    assert one == eight == 0
    assert (tmp_path / "one.json").read_bytes() == (tmp_path / "eight.json").read_bytes()


def test_wavefront_chi(tmp_path):
    code, report = _run(tmp_path, "wf", "wavefront", "--builtin", "sl2", "--q", "3", "--orbit", "0")
    assert code == 0
    assert report["result"]["agrees"] is True
    assert [row["representative"] for row in report["result"]["wavefront"]] == [0]


def test_wavefront_gamma_needs_nilpotent_point(tmp_path):
    # index 3 decodes to (0, 1, 0), dual to a multiple of h
    code, _ = _run(tmp_path, "wf", "wavefront", "--builtin", "sl2", "--q", "3", "--function", "gamma", "--orbit", "3")
    assert code == 1


def test_gggr_and_cone(tmp_path):
    code, report = _run(tmp_path, "gggr", "gggr", "--builtin", "sl2", "--q", "3")
    assert code == 0
    assert len(report["result"]["orbits"]) == 3
    code, report = _run(tmp_path, "cone", "cone", "--builtin", "sl2", "--q", "3", "--orbit", "0")
    assert code == 0
    assert [row["representative"] for row in report["result"]["cone"]] == [0]


def test_nmap(tmp_path):
    code, report = _run(tmp_path, "nmap", "nmap", "--builtin", "gl2", "--q", "3", "--limit", "3")
    assert code == 0
    assert len(report["result"]["orbits"]) == 3


def test_signed_report_checks(tmp_path, monkeypatch):
    priv, pub = generate_key_pair()
    monkeypatch.setenv("REPORT_ED25519_PRIVATE_B64", priv)
    code, report = _run(tmp_path, "build", "build", "--builtin", "sl2", "--q", "3")
    assert code == 0
    assert report["signature"]["alg"] == "ed25519"
    path = tmp_path / "build.json"
    assert cli.main(["check-report", str(path), "--public-key", pub]) == 0

    report["result"]["groupOrder"] = 1
    path.write_text(json.dumps(report), encoding="utf-8")
    assert cli.main(["check-report", str(path), "--public-key", pub]) == 1


def test_check_report_needs_a_key(tmp_path, monkeypatch):
    monkeypatch.delenv("REPORT_ED25519_PUBLIC_B64", raising=False)
    path = tmp_path / "r.json"
    path.write_text("{}", encoding="utf-8")
    assert cli.main(["check-report", str(path)]) == 1
