#!/usr/bin/env python3
"""Render decision boundaries of a few two-dimensional classifiers to SVG.

Writes boundary_running.svg (the two-point running example) and
boundary_bounded.svg (three positive regions enclosing a bounded negative
cell) into the current directory.
"""

import sys
from fractions import Fraction as F

from tropfan.dual import decision_boundary, render_svg
from tropfan.fan import dataset
from tropfan.tropical import TropicalRationalParams, signomial


def main() -> int:
    window = (F(-3), F(3), F(-3), F(3))

    running = TropicalRationalParams(
        signomial([(0, (-1, 1)), (0, (0, 0))]),
        signomial([(-1, ("3/2", "1/2")), (-2, (0, 2))]),
    )
    svg = render_svg(running, dataset([(0, 0), (1, 0)]), window)
    with open("boundary_running.svg", "w", encoding="utf-8") as fh:
        fh.write(svg)
    print("boundary_running.svg:", [(e.i, e.j) for e in decision_boundary(running)])

    bounded = TropicalRationalParams(
        signomial([(0, (1, 0)), (0, (0, 1)), (0, (-1, -1))]),
        signomial([(1, (0, 0))]),
    )
    svg = render_svg(bounded, None, window)
    with open("boundary_bounded.svg", "w", encoding="utf-8") as fh:
        fh.write(svg)
    print("boundary_bounded.svg:", [(e.i, e.j) for e in decision_boundary(bounded)])
    return 0


if __name__ == "__main__":
    sys.exit(main())
