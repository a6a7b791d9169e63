"""Smoke test for the compiled `tightclose` module.

Build first:  pip install --no-build-isolation ./crates/py
Run:          python3 python/smoke_test.py   (or pytest python/)
"""
import json
from math import comb

import tightclose as tc


def test_cubic():
    r = tc.DiagonalRing(3, 7)
    # length of R/(I^n)* is 3*C(n+1,2) - n
    assert r.lengths(1, 6) == [3 * comb(n + 1, 2) - n for n in range(1, 7)]
    assert r.hilbert_coefficients() == [3, 1, 0]
    assert r.tight_reduction_number() == 1
    assert not r.is_f_rational()
    assert r.is_tight_member("x^2", 1)
    assert not r.is_tight_member("x", 1)
    assert json.loads(r.verify_closed_form(2))["disagreements"] == 0


def test_quadric_and_quartic():
    assert tc.DiagonalRing(2, 5).is_f_rational()
    assert tc.DiagonalRing(4, 5).hilbert_coefficients() == [4, 3, 1]


def test_bad_characteristic():
    try:
        tc.DiagonalRing(3, 3)
    except ValueError as e:
        assert "divides" in str(e)
    else:
        raise AssertionError("p = 3 should be rejected for N = 3")


def test_face_ring():
    octa = tc.SimplicialComplex.parse(open_fixture("octahedron.txt"))
    assert octa.h_vector() == [1, 3, 3, 1]
    assert octa.euler_characteristic() == 2 and not octa.is_eulerian()
    ring = tc.FaceRing(octa)
    for n in range(4):
        assert ring.length_mod_maximal_power(n) == octa.length_via_h(n)
    assert ring.ed_star_by_fit(1) == 1
    assert json.loads(ring.eulerian_equivalences())["consistent"]
    path = tc.SimplicialComplex(3, [[1, 2], [2, 3]])
    assert path.is_eulerian() and path.h_vector()[-1] == 0


def test_functions():
    assert tc.groebner_basis(["x^3+y^3+z^3", "x*y"]) == ["y^4 + y*z^3", "x^3 + y^3 + z^3", "x*y"]
    assert tc.binomial(-1, 2) == 1 and tc.binomial(3, -1) == 0
    ns = list(range(1, 8))
    e, _ = tc.fit_hilbert_coefficients([3 * comb(n + 1, 2) - n for n in ns], ns, 2)
    assert e == [3, 1, 0]


def open_fixture(name):
    from pathlib import Path

    return (Path(__file__).resolve().parent.parent / "fixtures" / name).read_text()


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_"):
            fn()
            print(f"ok  {name}")
