import json

import pytest

from hopftwist.cli import main
from hopftwist.lie import builtin, invariant_skew2
from hopftwist.scalars import format_rational
from hopftwist.twist import gauge_twist
from hopftwist.uea import UEA


@pytest.fixture()
def files(tmp_path):
    U = UEA(builtin("heisenberg:1"), 4)
    X = invariant_skew2(U.lie)[0]                       # e∧c
    F = U.from_bivector(X).shift(1).exp()
    gauged = gauge_twist((U.gen(0) * U.gen(1)).shift(1).exp(), F)
    bad = F + (U.gen(0) * U.gen(0)).tensor(U.gen(1)).shift(1)

    def put(name, data):
        p = tmp_path / name
        p.write_text(json.dumps(data))
        return str(p)

    mat = [[format_rational(v) for v in r] for r in X]
    return {
        "F": put("F.json", gauged.to_json()),
        "bad": put("bad.json", bad.to_json()),
        "R": put("R.json", F.to_json()),
        "X": put("X.json", mat),
        "Y": put("Y.json", [[format_rational(v) for v in r] for r in invariant_skew2(U.lie)[1]]),
        "badlie": put("badlie.json", {"dim": 3, "brackets": [[0, 1, [[2, "1"]]], [0, 2, [[0, "1"]]]]}),
        "garbage": put("garbage.json", "{not json"),
        "e_wedge_c": mat,
    }


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_corrupted_twist_exits_one(capsys, files):
    code, out, _ = run(capsys, "verify-twist", "--twist", files["bad"])
    assert code == 1
    assert "2-cocycle violation at h-degree 1" in out


def test_normalize_reports_e_wedge_c(capsys, files):
    code, out, _ = run(capsys, "normalize-twist", "--twist", files["F"], "--h-order", "4",
                       "--output", "json")
    assert code == 0
    rep = json.loads(out)
    assert rep["result"]["X"]["h^1"] == files["e_wedge_c"]
    assert rep["checks"]["gauge_certificate"] is True
    assert rep["result"]["invariant"] is False


def test_normalize_rejects_jordanian(capsys, tmp_path):
    from hopftwist.samples import jordanian_twist
    U = UEA(builtin("affine2"), 3)
    p = tmp_path / "J.json"
    p.write_text(json.dumps(jordanian_twist(U, [1, 0], [0, 1]).to_json()))
    code, out, _ = run(capsys, "normalize-twist", "--algebra", "affine2", "--h-order", "3",
                       "--twist", str(p))
    assert code == 1
    assert "not gauge equivalent to an invariant twist" in out


def test_heisenberg_demo(capsys):
    code, out, _ = run(capsys, "heisenberg-demo", "--m", "1")
    assert code == 0
    assert "[l_e,l_f]" in out and "(1/3)c³" in out
    assert "Δ(l_e)" in out and "e ⊗ c" in out


@pytest.mark.parametrize("argv", [
    ["group-law", "--x", "X", "--y", "Y"],
    ["three-vector", "--x", "X", "--y", "Y"],
    ["add-supports", "--x", "X", "--y", "Y"],
    ["support", "--x", "X"],
    ["cybe-check", "--x", "X"],
    ["classical-limit", "--twist", "F"],
    ["triangular", "--rmatrix", "R"],
    ["drinfeld", "--rmatrix", "R"],
    ["associator", "--x", "X", "--y", "Y", "--z", "X"],
    ["validate-lie", "--algebra", "sl2"],
    ["crossed-product", "--samples", "2"],
])
def test_commands_succeed(capsys, files, argv):
    argv = [files.get(a, a) if not a.startswith("-") else a for a in argv]
    code, out, _ = run(capsys, *argv, "--output", "json")
    assert code == 0, out
    assert json.loads(out)["status"] == "ok"


def test_json_reports_are_byte_identical(capsys, files):
    _, first, _ = run(capsys, "crossed-product", "--samples", "2", "--seed", "3", "--output", "json")
    _, second, _ = run(capsys, "crossed-product", "--samples", "2", "--seed", "3", "--output", "json")
    assert first == second


@pytest.mark.parametrize("argv,code", [
    (["validate-lie", "--algebra", "badlie"], 1),
    (["triangular", "--rmatrix", "F"], 1),
    (["verify-twist", "--twist", "garbage"], 2),
    (["verify-twist", "--twist", "/no/such/file"], 2),
    (["verify-twist"], 2),
    (["verify-twist", "--algebra", "nonsense:3", "--twist", "F"], 2),
    (["support", "--x", "bad"], 2),
    (["no-such-command"], 2),
    (["verify-twist", "--h-order", "0", "--twist", "F"], 2),
])
def test_exit_codes(capsys, files, argv, code):
    argv = [files.get(a, a) for a in argv]
    assert run(capsys, *argv)[0] == code


def test_selftest_subset(capsys):
    code, out, _ = run(capsys, "selftest", "--only", "1", "2", "4")
    assert code == 0
    assert out.count("PASS") == 3
