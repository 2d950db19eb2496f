import json
import os
import random
import re
import subprocess
from pathlib import Path

import numpy as np
import pytest

CLI = os.environ.get("MAHLERLAB_CLI", str(Path(__file__).resolve().parents[2] / "build" / "mahlerlab"))
DATA = Path(__file__).resolve().parents[1] / "data"
LEHMER = [1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]


def run(*args, env=None):
    full_env = dict(os.environ)
    full_env.pop("MAHLERLAB_PRECISION", None)
    full_env.update(env or {})
    return subprocess.run([CLI, *map(str, args)], capture_output=True, text=True, env=full_env, timeout=600)


def numpy_measure(coeffs):
    roots = np.roots(coeffs[::-1])
    return abs(coeffs[-1]) * float(np.prod(np.maximum(1.0, np.abs(roots))))


def test_analyze_lehmer():
    r = run("analyze", DATA / "lehmer.txt", "--precision", 256)
    assert r.returncode == 0, r.stderr
    p = json.loads(r.stdout)["polynomials"][0]
    assert p["measure"]["value"] == pytest.approx(numpy_measure(LEHMER), rel=1e-12)
    assert p["measure"]["value"] == pytest.approx(1.176280818259918, rel=1e-14)
    assert p["measure_graeffe"]["method"] == "graeffe"
    assert p["roots"]["count"] == 10
    assert p["flags"]["self_reciprocal"] is True
    assert p["etheta"]["member"] is True


def test_analyze_empty_and_bad(tmp_path):
    empty = tmp_path / "empty.txt"
    empty.write_text("# nothing\n")
    r = run("analyze", empty)
    assert r.returncode == 0
    assert json.loads(r.stdout) == {"polynomials": []}

    bad = tmp_path / "bad.txt"
    bad.write_text("1 1\n1 q 1\n")
    r = run("analyze", bad)
    assert r.returncode == 1
    assert "line 2, column 3" in r.stderr

    assert run("analyze", tmp_path / "missing.txt").returncode == 1


def test_analyze_csv_and_descending(tmp_path):
    f = tmp_path / "c.txt"
    f.write_text("smyth: 1 0 -1 -1\n")
    r = run("analyze", f, "--descending", "--format", "csv")
    assert r.returncode == 0, r.stderr
    header, row = r.stdout.strip().splitlines()
    assert header.startswith("id,degree,measure,")
    cells = row.split(",")
    assert cells[0] == "smyth" and cells[1] == "3"
    assert float(cells[2]) == pytest.approx(numpy_measure([-1, -1, 0, 1]), rel=1e-12)


def test_flag_validation(tmp_path):
    f = DATA / "lehmer.txt"
    assert run("analyze", f, "--precision", 32).returncode == 1
    assert run("analyze", f, "--precision", 5000).returncode == 1
    assert run("analyze", f, "--theta", 1).returncode == 1
    assert run("analyze", f, "--theta", 1.4).returncode == 1
    assert run("analyze", f, "--format", "xml").returncode == 1
    assert run("analyze", f, env={"MAHLERLAB_PRECISION": "nope"}).returncode == 1
    r = run("analyze", f, env={"MAHLERLAB_PRECISION": "512"})
    assert json.loads(r.stdout)["polynomials"][0]["measure"]["precision_bits"] >= 512
    r = run("analyze", f, "--precision", 96, env={"MAHLERLAB_PRECISION": "512"})
    assert json.loads(r.stdout)["polynomials"][0]["measure"]["precision_bits"] < 512
    assert run("bogus").returncode == 1


def test_verify_lehmer_and_phi5(tmp_path):
    f = tmp_path / "v.txt"
    f.write_text("P_L: 1 1 0 -1 -1 -1 -1 -1 0 1 1\nphi5: 1 1 1 1 1\n")
    r = run("verify", f)
    assert r.returncode == 0, r.stderr
    polys = json.loads(r.stdout)["polynomials"]
    verdicts = [b["verdict"] for p in polys for b in p["bounds"]]
    assert "Violated" not in verdicts
    phi5 = [b for b in polys[1]["bounds"] if b["theoremId"].startswith("liouville")]
    assert phi5 and all(b["verdict"] == "NotApplicable" for b in phi5)


def test_verify_random_corpus_parallel(tmp_path):
    rng = random.Random(20261016)
    lines = []
    for i in range(500):
        d = rng.randint(1, 12)
        c = [rng.randint(-5, 5) for _ in range(d + 1)]
        if c[-1] == 0:
            c[-1] = 1
        if i % 2:
            c = [c[min(j, d - j)] for j in range(d + 1)]
            if c[-1] == 0:
                c[0] = c[-1] = 1
        lines.append(f"r{i}: " + " ".join(map(str, c)))
    f = tmp_path / "random.txt"
    f.write_text("\n".join(lines) + "\n")
    a = run("verify", f, "--jobs", 8, "--format", "csv")
    assert a.returncode == 0, a.stderr
    assert ",Violated" not in a.stdout
    b = run("verify", f, "--jobs", 1, "--format", "csv")
    assert a.stdout == b.stdout


def test_search_table_and_json(tmp_path):
    r = run("search", "--degree", 10, "--height", 1, "--theta", 1.3)
    assert r.returncode == 0, r.stderr
    first = r.stdout.splitlines()[1].split()
    assert first[:2] == ["1", "10"]
    assert float(first[2]) == pytest.approx(1.176280818259918, rel=1e-14)
    assert [int(x) for x in first[3:]] == LEHMER

    out = tmp_path / "s.json"
    r = run("search", "--degree", 10, "--theta", 1.18, "--out", out)
    assert r.returncode == 0
    recs = json.loads(out.read_text())["records"]
    assert len(recs) == 1
    assert recs[0]["coefficients"] == LEHMER

    r = run("search", "--degree", 2, "--format", "json")
    assert json.loads(r.stdout) == {"records": []}

    r = run("search", "--degree", 40, "--height", 5)
    assert r.returncode == 1 and "cap" in r.stderr


def test_search_jobs_deterministic():
    a = run("search", "--degree", 12, "--theta", 1.3, "--jobs", 1, "--format", "csv")
    b = run("search", "--degree", 12, "--theta", 1.3, "--jobs", 7, "--format", "csv")
    assert a.returncode == 0 and a.stdout == b.stdout


def test_constants():
    r = run("constants", "--format", "csv")
    assert r.returncode == 0
    rows = {line.split(",")[0]: line.split(",") for line in r.stdout.strip().splitlines()[1:]}
    theta0 = float(rows["theta0"][1])
    assert theta0 == pytest.approx(max(z.real for z in np.roots([1, 0, -1, -1]) if abs(z.imag) < 1e-12), rel=1e-14)
    assert float(rows["A"][1]) == pytest.approx(0.655, abs=5e-4)
    assert float(rows["B"][1]) == pytest.approx(0.984, abs=5e-4)
    assert float(rows["golden"][1]) == pytest.approx((1 + 5**0.5) / 2, rel=1e-15)
    text = run("constants").stdout
    assert "1.324717" in text and "0.655" in text and "0.984" in text


def test_plot_golden(tmp_path):
    out = tmp_path / "p.svg"
    assert run("plot", DATA / "lehmer.txt", "--out", out).returncode == 0
    svg = out.read_text()
    assert svg == (DATA / "lehmer.svg").read_text()
    assert run("plot", DATA / "lehmer.txt").stdout == svg

    # Dot positions against numpy roots.
    roots = np.roots(LEHMER[::-1])
    scale = 320 / (1.1 * max(1.0, np.abs(roots).max()))
    dots = sorted((float(x), float(y)) for x, y in re.findall(r'cx="([-0-9.]+)" cy="([-0-9.]+)" r="1.5"', svg))
    expect = sorted((320 + z.real * scale, 320 - z.imag * scale) for z in roots)
    assert len(dots) == 10
    for (x, y), (ex, ey) in zip(dots, expect):
        assert abs(x - ex) < 2e-3 and abs(y - ey) < 2e-3

    r = run("plot", DATA / "lehmer.txt", "--no-unit-circle", "--width", 200, "--height", 100)
    assert "unit-circle" not in r.stdout and 'width="200" height="100"' in r.stdout
