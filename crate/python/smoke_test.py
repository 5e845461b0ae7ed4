"""Smoke test for the treewass extension module."""

import json
import pathlib
from fractions import Fraction

import treewass

FIXTURE = pathlib.Path(__file__).resolve().parent.parent / "crates" / "core" / "fixtures" / "figure1.json"


def main():
    text = FIXTURE.read_text()
    assert treewass.w1(text) == "12"
    assert treewass.w1_lp(text) == "12"
    assert json.loads(treewass.duality(text)) == {"primal": "12", "dual": "12", "certificate": True}

    assert treewass.asym("ball", 2, 3) == ("4/3", "1", False)
    a, b, exact = treewass.asym("sphere", 2, 3)
    assert (Fraction(a), Fraction(b), exact) == (Fraction(4, 3), Fraction(5, 3), True)

    seq = [Fraction(x) for x in treewass.exact_sequence("sphere", 2, 3, 10)]
    assert all(seq[n] == Fraction(4, 3) * n + Fraction(5, 3) for n in range(2, 11))

    g = treewass.return_probabilities("1/5", 3, 4)
    assert [Fraction(x) * 5**n for n, x in enumerate(g)] == [1, 1, 5, 13, 53]

    assert treewass.w1_radial("srw:alpha=1/2,n=3", 3, 2) == "107/32"
    assert treewass.inequalities_hold("9/10", 6, 10)

    try:
        treewass.w1("{")
    except ValueError:
        pass
    else:
        raise AssertionError("malformed instance accepted")
    print("smoke test passed")


if __name__ == "__main__":
    main()
