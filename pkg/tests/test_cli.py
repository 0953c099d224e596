import io
import json
import subprocess
import sys

import pytest

from phishuffle.cli import main
from phishuffle.ncpoly import TensorPoly
from phishuffle.scalars import Scalar
from phishuffle.textio import doc_to_poly, parse_poly, parse_scalar, parse_tensor
from phishuffle.words import parse_word


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


GOLDEN = [
    (("mul", "--law", "qstuffle", "y1", "y1"), "q*y2 + 2*y1.y1\n"),
    (("mul", "--law", "shuffle", "y1", "y2"), "y2.y1 + y1.y2\n"),
    (("basis", "pi", "--law", "qstuffle", "y2"), "PI y2 = y2 - (q/2)*y1.y1\n"),
    (("basis", "sigma", "y1.y1"), "SIGMA y1.y1 = (q/2)*y2 + y1.y1\n"),
    (("factorize", "--law", "qstuffle", "--weight", "3"), "OK: product equals diagonal (weight<=3)\n"),
    (("lyndon", "--alphabet", "y1,y2", "--weight", "3"), "y2\ny2.y1\ny1\n"),
    (("pi1", "y1.y2"), "-(1/2)*y2.y1 + (1/2)*y1.y2\n"),
    (("pi1", "y1.y1", "--side", "adjoint"), "-(q/2)*y2\n"),
    (("pin", "y1.y1", "--n", "2"), "y1.y1\n"),
    (("antipode", "y1.y1"), "q*y2 + y1.y1\n"),
    (("coproduct", "y2"), "[1|y2] + q*[y1|y1] + [y2|1]\n"),
    (("reconstruct", "y1=2", "--weight", "2"), "1 + 2*y1 + 2*y1.y1\n"),
    (("coords", "1 + 2*y1 + 2*y1.y1", "--weight", "2"), "COORD y1 = 2\nCOORD y2 = 0\n"),
    (("gram", "--weight", "3"), "OK: Gram matrix is the identity (weight<=3; dims 1:1, 2:2, 3:4)\n"),
    (("mul", "y1", "y1", "--q", "3"), "3*y2 + 2*y1.y1\n"),
]


@pytest.mark.parametrize("argv, expected", GOLDEN, ids=[" ".join(a) for a, _ in GOLDEN])
def test_golden(argv, expected):
    code, out, err = run(*argv)
    assert (code, out, err) == (0, expected, "")


def _values(text):
    """Every polynomial or tensor printed by a text-mode run."""
    vals = []
    for line in text.splitlines():
        if line.startswith(("OK", "FAIL")):
            continue
        if " = " in line:
            line = line.split(" = ", 1)[1]
        if line.startswith(("PI", "SIGMA", "COORD")):
            continue
        vals.append(line)
    return vals


@pytest.mark.parametrize("argv", [a for a, _ in GOLDEN], ids=[" ".join(a) for a, _ in GOLDEN])
def test_output_parses_back(argv):
    _, out, _ = run(*argv)
    for text in _values(out):
        if "|" in text:
            assert str(parse_tensor(text)) == text
        elif argv[0] == "lyndon":
            assert parse_word(text)
        elif argv[0] == "coords":
            assert str(parse_scalar(text)) == text
        else:
            assert str(parse_poly(text)) == text


def _machine_value(doc):
    res = doc["result"]
    if "order" in res:
        terms = {}
        for t in res["terms"]:
            key = tuple(tuple(parse_word(x)[0] for x in w) for w in t["words"])
            terms[key] = parse_scalar(t["num"]) / parse_scalar(t["den"])
        return TensorPoly(terms, res["order"])
    return doc_to_poly(res)


@pytest.mark.parametrize("argv", [
    ("mul", "y1", "y2.y1"), ("pi1", "y3"), ("antipode", "y1.y2"), ("coproduct", "y1.y2"),
    ("pin", "y2.y1", "--n", "1"), ("reconstruct", "y1=1/2", "y2.y1=3", "--weight", "4"),
    ("mul", "y1", "y1", "--q", "-1/2"),
])
def test_machine_matches_text(argv):
    _, text, _ = run(*argv)
    code, out, _ = run(*argv, "--machine")
    assert code == 0
    value = _machine_value(json.loads(out))
    parsed = parse_tensor(text.strip()) if isinstance(value, TensorPoly) else parse_poly(text.strip())
    assert value == parsed


def test_machine_basis_and_coords():
    _, out, _ = run("basis", "pi", "--weight", "2", "--machine")
    entries = json.loads(out)["entries"]
    assert [e["word"] for e in entries] == [["y1"], ["y2"], ["y1", "y1"]]
    assert doc_to_poly(entries[1]) == parse_poly("y2 - (q/2)*y1.y1")
    _, out, _ = run("coords", "1 + 2*y1 + 2*y1.y1", "--weight", "2", "--machine")
    coords = json.loads(out)["coords"]
    assert [(c["word"], c["num"], c["den"]) for c in coords] == [(["y1"], "2", "1"), (["y2"], "0", "1")]
    _, out, _ = run("gram", "--machine")
    assert json.loads(out)["ok"] is True
    _, out, _ = run("lyndon", "--weight", "2", "--machine")
    assert json.loads(out)["lyndon"] == [["y2"], ["y1"]]


def test_table_dump():
    code, out, _ = run("basis", "sigma", "--weight", "2")
    assert code == 0
    assert out == "SIGMA y1 = y1\nSIGMA y2 = y2\nSIGMA y1.y1 = (q/2)*y2 + y1.y1\n"


def test_specialize_after_computing():
    _, sym, _ = run("basis", "sigma", "--weight", "3")
    _, num, _ = run("basis", "sigma", "--weight", "3", "--q", "2/3")
    for a, b in zip(sym.splitlines(), num.splitlines()):
        head_a, pa = a.split(" = ")
        head_b, pb = b.split(" = ")
        assert head_a == head_b
        assert parse_poly(pa).specialize(Scalar(2) / 3) == parse_poly(pb)


def test_law_analyze():
    code, out, _ = run("law", "analyze", "--law", "qstuffle")
    assert code == 0
    assert "associative: true\ncommutative: true\ndualizable: true\nmoderate: true\n" in out
    code, out, _ = run("law", "analyze", "--law", "qinfiltration", "--machine")
    doc = json.loads(out)
    assert code == 0 and doc["moderate"] is False
    assert any("not nilpotent" in n for n in doc["notes"])


def test_law_file(tmp_path):
    path = tmp_path / "law.json"
    path.write_text(json.dumps({"name": "half", "variant": "weight_additive",
                                "builtin": "qstuffle", "q": "1/2"}))
    assert run("mul", "--law-file", str(path), "y1", "y1")[:2] == (0, "(1/2)*y2 + 2*y1.y1\n")
    table = tmp_path / "table.json"
    table.write_text(json.dumps({
        "name": "nil", "variant": "finite_table",
        "alphabet": [{"letter": "y1", "weight": 1}, {"letter": "y2", "weight": 2}],
        "entries": [{"a": "y1", "b": "y1", "value": "y2"}]}))
    assert run("mul", "--law-file", str(table), "y1", "y1")[:2] == (0, "y2 + 2*y1.y1\n")
    code, _, err = run("mul", "--law-file", str(tmp_path / "missing.json"), "y1", "y1")
    assert code == 2 and err.startswith("error: cannot read law file")


def test_verification_failure_exit_code(tmp_path):
    # not weight graded under the declared weights: factorize cannot run, gram compares per component
    table = tmp_path / "table.json"
    table.write_text(json.dumps({
        "name": "nil", "variant": "finite_table",
        "alphabet": [{"letter": "y1", "weight": 1}, {"letter": "y2", "weight": 1}],
        "entries": [{"a": "y1", "b": "y1", "value": "y2"}]}))
    code, out, err = run("factorize", "--law-file", str(table), "--weight", "2")
    assert code == 2 and "weight-graded" in err


@pytest.mark.parametrize("argv, fragment", [
    (("mul", "--law", "nosuch", "y1", "y1"), "unknown law"),
    (("mul", "y1 +", "y1"), "error:"),
    (("pi1", "y1", "--law", "qinfiltration"), "pi1 requires moderate law"),
    (("coords", "1 + y1", "--weight", "3"), "not group-like"),
    (("reconstruct", "y1.y1=1", "--weight", "2"), "not a Lyndon word"),
    (("basis", "pi"), "give a word or --weight"),
])
def test_errors_exit_2(argv, fragment):
    code, out, err = run(*argv)
    assert code == 2 and out == ""
    assert err.startswith("error:") and fragment in err


def test_usage_errors():
    assert run()[0] == 2
    assert run("gram", "--weight", "0")[0] == 2
    assert run("mul", "y1", "y1", "extra")[0] == 2


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "phishuffle.cli", "mul", "y1", "y1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "q*y2 + 2*y1.y1\n"
