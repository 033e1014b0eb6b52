from __future__ import annotations

import json
import subprocess
import sys

from tropfold.cli import dominant_coweights, main
from tropfold.tropeval import get_chart


def _run(args, capsys):
    code = main(args)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_enumerate_single(capsys):
    code, rep = _run(["enumerate", "--rank", "2", "--lambda", "1,1", "--lambda", "1,1", "--lambda", "1,1"], capsys)
    assert code == 0
    assert rep["schema"] == "tropfold.report/1"
    assert rep["results"][0]["count"] == rep["results"][0]["oracle"] == 2


def test_enumerate_grid_is_deterministic(tmp_path, capsys):
    args = ["enumerate", "--type", "A", "--rank", "1", "--form", "adjoint", "--n", "3", "--grid-max", "3"]
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    assert main(args + ["--out", str(out1)]) == 0
    assert main(args + ["--out", str(out2)]) == 0
    assert out1.read_text() == out2.read_text()
    rep = json.loads(out1.read_text())
    assert rep["summary"] == {"cases": 64, "mismatches": 0}


def test_twining_and_saturate(capsys):
    code, rep = _run(["twining", "--rank", "2", "--grid-max", "2"], capsys)
    assert code == 0 and rep["summary"]["mismatches"] == 0 and rep["folded_group"] == "C1"
    code, rep = _run(["saturate", "--rank", "2", "--sigma", "--grid-max", "1"], capsys)
    assert code == 0 and rep["c_sigma"] == 4
    code, rep = _run(["saturate", "--type", "B", "--rank", "2", "--grid-max", "1", "--factor", "2", "--n-max", "2"], capsys)
    assert code == 0 and "not a proof" in rep["note"]


def test_error_exit_code(capsys):
    assert main(["enumerate", "--rank", "2", "--lambda", "1,1"]) == 1
    assert main(["enumerate", "--type", "B", "--rank", "2", "--grid-max", "1"]) == 1
    assert main(["twining", "--rank", "2", "--lambda", "2,1", "--lambda", "1,1", "--lambda", "1,1"]) == 1


def test_mismatch_exit_code(monkeypatch, capsys):
    import tropfold.cli as cli

    monkeypatch.setattr(cli, "invariant_dim", lambda datum, lams: 99)
    assert main(["enumerate", "--rank", "2", "--lambda", "1,1", "--lambda", "1,1", "--lambda", "1,1"]) == 2


def test_gl_grid_has_central_part():
    cws = dominant_coweights(get_chart("GL", 3, 3), 1)
    assert (0, 0, 0) in cws and (1, 1, 1) in cws and (0, -1, -1) in cws
    assert all(a >= b >= c for a, b, c in cws)


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "tropfold", "enumerate", "--type", "GL", "--rank", "3",
         "--lambda", "1,0,0", "--lambda", "1,0,0", "--lambda", "0,-1,-1"],
        capture_output=True, text=True,
    )
    assert res.returncode == 0
    assert json.loads(res.stdout)["results"][0]["count"] == 1
