"""Walk through the covering-space search for one committed manifold.

Loads the default triangulation of otet04_00001 from fixtures/, converts
it to an orbifold destination sequence, and enumerates covers onto the
built-in two-cusped reference orbifolds, reporting which manifold cusp
sits over the rigid cusp for each cover found.
"""

import json
import os

from tetsym import (
    cusp_seqs,
    covers,
    cusp_covers,
    des_seq,
    manifold_cusp_classes,
    mfd_cusp_index,
    parse_gluing_table,
    validate,
)
from tetsym.constants import DSEQ_236_2222, DSEQ_O4, RIGID_CUSP_236

FIXTURES = os.path.join(os.path.dirname(__file__), os.pardir, "fixtures")


def load_triangulation(name, tri=0):
    with open(os.path.join(FIXTURES, "manifest.json")) as f:
        manifest = json.load(f)
    (rec,) = [m for m in manifest["manifolds"] if m["name"] == name]
    rel = rec["triangulations"][tri]["gluing_table"]
    with open(os.path.join(FIXTURES, rel)) as f:
        return parse_gluing_table(f.read())


def report_covers(tri, down, rigid_class, label):
    seq, pieces = des_seq(tri)
    print("destination sequence: %d tetrahedra, valid=%s"
          % (seq.n, validate(seq).ok))
    mc = manifold_cusp_classes(tri)
    up_cusps = cusp_seqs(seq)
    down_cusps = cusp_seqs(down)
    found = covers(seq, down)
    print("covers onto %s: %d" % (label, len(found)))
    for k, cover in enumerate(found):
        rigid_hits = [up for up, dn in cusp_covers(cover, up_cusps, down_cusps)
                      if tuple(dn) == tuple(rigid_class)]
        cusps = sorted({mfd_cusp_index(h, pieces, mc) for h in rigid_hits})
        print("  cover %d: manifold cusp(s) %s over the rigid cusp"
              % (k, cusps))


def main():
    tri = load_triangulation("otet04_00001")
    print("otet04_00001: %d tetrahedra, %d cusps"
          % (tri.r, manifold_cusp_classes(tri).num_cusps))
    rigid_o4 = (3,)
    report_covers(tri, DSEQ_O4, rigid_o4, DSEQ_O4.name)

    tri = load_triangulation("otet20_00049")
    print()
    print("otet20_00049: %d tetrahedra, %d cusps"
          % (tri.r, manifold_cusp_classes(tri).num_cusps))
    report_covers(tri, DSEQ_236_2222, RIGID_CUSP_236, DSEQ_236_2222.name)


if __name__ == "__main__":
    main()
