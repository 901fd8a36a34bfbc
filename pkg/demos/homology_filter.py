"""Filter the committed manifolds by integral homology.

A census manifold is a link complement in an integral homology sphere iff
its first homology is free of rank equal to the cusp count.  This reads
every committed homology presentation, runs the Smith normal form, and
prints the verdicts.
"""

import json
import os

from tetsym import IntMatrix, is_homology_link, smith_normal_form

FIXTURES = os.path.join(os.path.dirname(__file__), os.pardir, "fixtures")


def main():
    with open(os.path.join(FIXTURES, "manifest.json")) as f:
        manifest = json.load(f)
    for rec in manifest["manifolds"]:
        with open(os.path.join(FIXTURES, rec["homology_matrix"])) as f:
            matrix = IntMatrix.from_json(json.load(f))
        summary, _, _ = smith_normal_form(matrix)
        torsion = [d for d in summary.divisors if d not in (0, 1)]
        print("%-14s rank %d, torsion %s, homology link: %s"
              % (rec["name"], summary.rank, torsion or "none",
                 is_homology_link(summary, rec["num_cusps"])))


if __name__ == "__main__":
    main()
