"""Smoke test for the Python bindings.

Build and install first:

    pip install maturin
    maturin build --release -m crates/py/Cargo.toml -o dist
    pip install dist/singhodge-*.whl
"""

import json

import singhodge_py as sh


def main():
    assert sh.normalize("x^3 + y^4") == sh.normalize("y^4+x^3")

    assert sorted(map(tuple, sh.newton_vertices("y^4 + x*y + x^3"))) == [(0, 4), (1, 1), (3, 0)]
    assert sorted(map(tuple, sh.newton_vertices("y^4 + x^2*y^2 + x^3"))) == [(0, 4), (3, 0)]
    assert sh.pi_f("y^4 + x*y + x^3") == 1
    assert sh.pi_f("x^2 + y^2 + z^2") == 0
    assert sh.flat_witness("y^4 + x^3") == ([4, 3], 12)
    assert sh.flat_witness("y^4 + x*y + x^3") is None
    assert sh.quasi_homogeneous("x^2 + y^2 + z^2") == ([1, 1, 1], 2)

    report = sh.analyze("x^2 + y^3 + z^7 + x*y*z")
    assert report["pi_f"] == 1
    assert report["partial_jordan"]["unipotent"]["2"] == 1
    assert report["purity"]["pure"] is False

    nc = sh.analyze("x^2*y + x*y^3")
    assert nc["convenient"] is False

    data = json.dumps({"n": 3, "blocks": [{"eigenvalue": "1/2", "size": 3, "count": 1}]})
    assert sh.milnor_weight_table(data, "1/2") == {0: 1, 1: 0, 2: 1, 3: 0, 4: 1}
    jr = sh.jordan(data)
    assert jr["n0"] == 0 and jr["purity"]["pure"] is True

    bad = json.dumps({"n": 3, "blocks": [{"eigenvalue": "0/1", "size": 3, "count": 1}]})
    try:
        sh.jordan(bad)
    except ValueError as e:
        assert "exceeds the bound" in str(e)
    else:
        raise AssertionError("oversized block accepted")

    try:
        sh.analyze("x^ + y")
    except ValueError:
        pass
    else:
        raise AssertionError("bad polynomial accepted")

    summary = sh.verify(seed=3, iters=20)
    assert summary["pipeline_ok"] == 20 and not summary["counterexamples"]

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
