"""Smoke test for the l2lab Python extension.

Build and install it first:

    pip install --no-build-isolation ./crates/python
"""

import json
import os
import pathlib
import sys

import l2lab

ROOT = pathlib.Path(__file__).resolve().parent.parent
SCHEMA = ROOT / "crates" / "core" / "schema" / "report.schema.json"


def validator():
    try:
        import jsonschema
    except ImportError:
        return None
    return jsonschema.Draft202012Validator(json.loads(SCHEMA.read_text()))


def main():
    check = validator()

    def report(text):
        r = json.loads(text)
        if check is not None:
            check.validate(r)
        assert r["status"] == "OK", r["checks"]
        return r

    assert l2lab.canonical_polynomial("X^4-2") == "X^4 - 2"

    r = report(l2lab.classify_polynomial("X^4 - 2"))
    assert (r["case"], r["observed_count"], r["length"]) == ("(8d)", 3, 2)
    assert r["witnesses"]["t"] == 2

    r = report(l2lab.classify_polynomial("X^4 - 10*X^2 + 1"))
    assert r["observed_count"] == 5 and r["witnesses"]["t"] == 3

    doc = (ROOT / "algebras" / "three-copies.json").read_text()
    r = report(l2lab.classify_algebra(doc))
    assert (r["case"], r["observed_count"]) == ("(7)", 5)

    dot = l2lab.lattice_dot_algebra(doc)
    assert dot.startswith("digraph lattice {") and dot.count(" -> ") == 6

    for bad in ["X^^2", "X^2 - 1.5"]:
        try:
            l2lab.classify_polynomial(bad)
        except ValueError:
            pass
        else:
            raise AssertionError(f"{bad!r} was accepted")

    os.environ["L2LAB_CAP"] = "3"
    try:
        l2lab.classify_algebra(doc)
    except l2lab.CapExceeded:
        pass
    else:
        raise AssertionError("cap of 3 candidates was not enforced")
    finally:
        del os.environ["L2LAB_CAP"]
    print("smoke test passed" + ("" if check else " (schema not checked: jsonschema missing)"))
    return 0


if __name__ == "__main__":
    sys.exit(main())
