"""Builds the extension, imports it and checks a few known answers.

Run from the repository root: python3 python/smoke_test.py
"""

import importlib.util
import json
import os
import pathlib
import shutil
import subprocess
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load():
    subprocess.run(["cargo", "build", "-p", "paramregex-py"], cwd=ROOT, check=True)
    lib = ROOT / "target" / "debug" / "libparamregex_py.so"
    tmp = pathlib.Path(tempfile.mkdtemp())
    dest = tmp / "paramregex.so"
    shutil.copy(lib, dest)
    spec = importlib.util.spec_from_file_location("paramregex", dest)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod


def main():
    pr = load()
    s = pr.Solver("01")

    e = pr.Expr("$x*$y", "01")
    assert sorted(e.variables()) == ["x", "y"]
    assert pr.Expr(str(e)) == e

    r = s.membership("$x*$y", "110", "box")
    assert isinstance(r.answer, bool)
    d = s.membership("$x*$y", "110", "diamond")
    assert d.answer and d.valuation is not None

    ne = s.nonemptiness("$x", "box")
    assert ne.answer is False
    ne = s.nonemptiness("(0|1)*$x(0|1)*", "box")
    assert ne.answer and ne.witness is not None
    assert json.loads(ne.to_json())["answer"] is True

    u = s.universality("(0|1)*", "box")
    assert u.answer
    c = s.containment("$x", "0*", "diamond", {"x": "0|00"})
    assert c.answer

    assert s.membership_box_fixed_word("$x 1", "01") is False
    ok, nu = s.membership_diamond_fixed_word("$x 1", "01")
    assert ok and nu == {"x": "0"}

    dot = s.build_nfa("$x", "box", "dot")
    assert dot.startswith("digraph")

    fam = pr.family("box-doubleexp", 1)
    pairs = pr.fooling_pairs("box", 1)
    verified, bound, violation = s.verify_fooling_set(pairs, fam, "box")
    assert verified and bound == len(pairs) and violation is None

    combined, wide = pr.combine(["$x 0", "0 $x"], "01")
    assert isinstance(combined, str) and set("01") <= set(wide)

    try:
        s.nonemptiness("$x(", "box")
    except ValueError:
        pass
    else:
        raise AssertionError("syntax error not raised")

    try:
        pr.Solver("01", max_valuations=1).membership("$x$y", "0", "box")
    except RuntimeError:
        pass
    else:
        raise AssertionError("cap not enforced")

    print("python smoke test passed")


if __name__ == "__main__":
    main()
