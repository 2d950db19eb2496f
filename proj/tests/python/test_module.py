import json
import os
from fractions import Fraction
from pathlib import Path

import jsonschema
import numpy as np
import pytest

import mahlerlab

LEHMER = [1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]
SCHEMA = Path(os.environ.get("MAHLERLAB_SCHEMA", Path(__file__).resolve().parents[2] / "schemas" / "report.schema.json"))


def numpy_measure(coeffs):
    roots = np.roots(coeffs[::-1])
    return abs(coeffs[-1]) * float(np.prod(np.maximum(1.0, np.abs(roots))))


def test_measure_and_roots():
    m = mahlerlab.mahler_measure(LEHMER)
    assert m.value == pytest.approx(1.176280818259918, rel=1e-14)
    assert m.lower <= m.value <= m.upper
    assert m.method == mahlerlab.MeasureMethod.RootProduct
    g = mahlerlab.mahler_graeffe(LEHMER, k=24)
    assert abs(g.value - m.value) <= g.error_bound + 1e-12

    rs = mahlerlab.roots(LEHMER, precision=256)
    assert len(rs) == 10
    assert sorted(abs(z) for z in rs)[-1] == pytest.approx(1.176280818259918, rel=1e-14)
    assert np.prod([max(1.0, abs(z)) for z in rs]) == pytest.approx(numpy_measure(LEHMER), rel=1e-12)

    # Multiplicities are expanded.
    assert len(mahlerlab.roots([1, -2, 1])) == 2


def test_big_and_rational_coefficients():
    big = [10**30, 1, 1]
    assert mahlerlab.mahler_measure(big).value == pytest.approx(1e30, rel=1e-12)
    half = mahlerlab.mahler_measure([Fraction(-1, 2), 0, 1])
    assert half.value == pytest.approx(1.0, rel=1e-15)
    n = mahlerlab.norms([Fraction(1, 2), -3, 2])
    assert n["height"] == 3 and n["length"] == Fraction(11, 2)
    with pytest.raises(TypeError):
        mahlerlab.mahler_measure([1.5, 1])
    with pytest.raises(ValueError):
        mahlerlab.mahler_measure(LEHMER, precision=16)


def test_cyclotomic_and_classification():
    assert mahlerlab.cyclotomic(5) == [1, 1, 1, 1, 1]
    assert mahlerlab.cyclotomic(6) == [1, -1, 1]
    assert mahlerlab.cyclotomic_factor([1, 1, 1, 1, 1]) == 5
    assert mahlerlab.cyclotomic_factor(LEHMER) is None
    v = mahlerlab.classify_etheta(LEHMER, 1.3)
    assert v["member"] is True and v["failures"] == []
    assert v["irreducibility"] == "Irreducible"
    assert mahlerlab.classify_etheta([1, 1, 1, 1, 1])["member"] is False


def test_verify_and_search():
    out = mahlerlab.verify(LEHMER)
    assert out["bounds"]
    assert all(b["verdict"] != "Violated" for b in out["bounds"])
    recs = mahlerlab.search(max_degree=10, height=1, theta=1.18, jobs=2)
    assert len(recs) == 1
    assert recs[0]["coefficients"] == LEHMER and recs[0]["rank"] == 1
    assert mahlerlab.search(max_degree=2) == []
    with pytest.raises(mahlerlab.SearchSizeError):
        mahlerlab.search(max_degree=40, height=5)


def test_constants():
    k = mahlerlab.constants()
    assert k["theta0"] ** 3 - k["theta0"] - 1 == pytest.approx(0, abs=1e-14)
    assert k["A"] == pytest.approx(0.655, abs=5e-4)
    assert k["B"] == pytest.approx(0.984, abs=5e-4)
    assert k["c"] * np.log(k["c"]) == pytest.approx(1 + k["c"], rel=1e-14)


def test_corpus_and_report_schema():
    text = "P_L: 1 1 0 -1 -1 -1 -1 -1 0 1 1\nphi5: 1 1 1 1 1\nsmyth: -1 -1 0 1\n"
    assert mahlerlab.parse_corpus(text)[2] == ("smyth", [-1, -1, 0, 1])
    assert mahlerlab.parse_corpus("1 0 -1 -1", descending=True)[0][1] == [-1, -1, 0, 1]
    with pytest.raises(mahlerlab.CorpusParseError, match="line 1, column 3"):
        mahlerlab.parse_corpus("1 x\n")

    schema = json.loads(SCHEMA.read_text())
    for bounds in (False, True):
        report = mahlerlab.analyze(text, bounds=bounds)
        jsonschema.validate(report, schema)
        assert [p["id"] for p in report["polynomials"]] == ["P_L", "phi5", "smyth"]
    assert report["polynomials"][2]["measure"]["value"] == pytest.approx(numpy_measure([-1, -1, 0, 1]), rel=1e-12)
    jsonschema.validate(mahlerlab.analyze(""), schema)
