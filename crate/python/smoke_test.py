"""Smoke test for the Python bindings; runs under pytest or as a script."""

import json

import gradinv_py as g

DIM1 = {
    "case": "dim1",
    "orders": [2, 2],
    "mu": {"values": {"[0,0]": 1, "[0,1]": 1, "[1,0]": 1, "[1,1]": -1}},
    "eta": {"values": {"[0,0]": 1, "[0,1]": 1, "[1,0]": 1, "[1,1]": -1}},
}


def test_classify():
    assert json.loads(g.classify(json.dumps(DIM1))) == {"family": "1-a", "item": "1", "m": 1, "n": 2}


def test_profiles_and_round_trip():
    assert json.loads(g.profile("1-a-1", n=8))["signature"] == 8
    assert json.loads(g.profile("2-f-2-0", profile=[2, 3]))["signature"] == 2
    assert g.round_trip("1-b-1", n=4) == "(1-b-1) n=4"
    assert len(g.labels(8)) >= 40


def test_arf_and_verify():
    assert g.arf([1, 1, 1, -1]) == 1
    assert g.arf([1, -1]) is None
    report = json.loads(g.verify("census", 0))
    assert report["mismatches"] == []


def test_errors_and_cli():
    try:
        g.profile("9-z-1", n=2)
    except ValueError as e:
        assert json.loads(str(e))["error"] == "InvalidLabel"
    else:
        raise AssertionError("bad label accepted")
    code, out, _ = g.run(["represent", "1-c-1", "--n", "2"])
    assert code == 0 and json.loads(out)["profile"]["kind"] == "second"
    code, _, _ = g.run(["no-such-command"])
    assert code == 2


if __name__ == "__main__":
    for name, f in list(globals().items()):
        if name.startswith("test_"):
            f()
            print("ok", name)
