"""Symmetry tests on cusp circle packings, synthetic and committed.

Builds the two textbook lattice packings (hexagonal and square), runs the
free rotational symmetry tests on them, and then repeats the analysis on
a committed census diagram where an order-6 axis centered on another
cusp's horoball rules out hidden symmetries of the filled manifolds.
"""

import json
import math
import os

from tetsym import CuspDiagram
from tetsym.cuspgeom import (
    find_bad_order6_axes,
    free_rot_strong,
    free_rot_weak,
    full_packing_rotation_test,
)

FIXTURES = os.path.join(os.path.dirname(__file__), os.pardir, "fixtures")

HEX_M = complex(0.5, math.sqrt(3.0) / 2.0)


def lattice_packing(m, blocks=3):
    """A blocks x blocks patch of the unit lattice packing spanned by m, 1."""
    big = float(blocks) * m
    area = abs((big.conjugate() * float(blocks)).imag)
    return CuspDiagram.from_json({
        "manifold": "synthetic",
        "cusp_at_infinity": 0,
        "num_cusps": 1,
        "meridian": [big.real, big.imag],
        "longitude": [float(blocks), 0.0],
        "cusp_volume": area / 2.0,
        "export_cutoff": 0.05,
        "horoballs": [
            {"center": [(a * m + b).real, (a * m + b).imag],
             "diameter": 1.0, "cusp": 0}
            for a in range(blocks) for b in range(blocks)
        ],
    })


def describe(label, diag):
    print(label)
    print("  free_rot_strong: %s" % free_rot_strong(diag))
    print("  free_rot_weak:   %s" % free_rot_weak(diag))


def main():
    hexagonal = lattice_packing(HEX_M)
    square = lattice_packing(1j)
    describe("hexagonal lattice packing", hexagonal)
    centroid = (1.0 + HEX_M) / 3.0
    print("  order-6 about a ball center:  %s"
          % full_packing_rotation_test(hexagonal, 0j, 6))
    print("  order-3 about a triangle centroid: %s"
          % full_packing_rotation_test(hexagonal, centroid, 3))
    describe("square lattice packing", square)

    with open(os.path.join(FIXTURES, "manifest.json")) as f:
        manifest = json.load(f)
    (rec,) = [m for m in manifest["manifolds"]
              if m["name"] == "otet08_00002"]
    rel = rec["triangulations"][0]["diagrams"]["0"]
    with open(os.path.join(FIXTURES, rel)) as f:
        diag = CuspDiagram.from_json(json.load(f))
    describe("otet08_00002 cusp 0", diag)
    axes = find_bad_order6_axes(diag)
    print("  bad order-6 axes: %d" % len(axes))
    for center, cusp in axes:
        print("    at (%.4f, %.4f) on a cusp-%d horoball"
              % (center.real, center.imag, cusp))


if __name__ == "__main__":
    main()
