"""
Ideal tetrahedral triangulations and their barycentric orbifold sequences.

A triangulation is a face-gluing table: for tetrahedron i and face j (faces
are indexed by their opposite vertex) a pair (i', sigma) where sigma is the
vertex permutation of the gluing and sigma(j) = j' is the glued face of i'.

A manifold triangulated into regular ideal tetrahedra covers H^3/PGL_2(O_3),
and the barycentric subdivision realises the covering combinatorially: every
tetrahedron splits into 24 pieces (i, j, k, l) -- the flag with ideal vertex
k, edge (k, l) and face j -- and each copy of the fundamental domain Delta is
a pair of pieces glued across a face of the triangulation.  des_seq() builds
the resulting destination sequence on 12r tetrahedra.
"""

from dataclasses import dataclass

from .orbtri import DestinationSequence


def _perm_sign(p):
    sign = 1
    p = list(p)
    for a in range(4):
        for b in range(a + 1, 4):
            if p[a] > p[b]:
                sign = -sign
    return sign


def _perm_inverse(p):
    inv = [0, 0, 0, 0]
    for a in range(4):
        inv[p[a]] = a
    return tuple(inv)


@dataclass(frozen=True)
class TetTriangulation:
    """Validated, connected, orientable ideal triangulation."""

    r: int
    gluings: tuple  # gluings[i][j] = (target, perm-4-tuple)
    name: str = ""

    @classmethod
    def from_json(cls, data):
        r = int(data["tets"])
        raw = data["gluings"]
        if len(raw) != r:
            raise ValueError("gluing table has %d rows, expected %d" % (len(raw), r))
        gluings = []
        for i, row in enumerate(raw):
            if len(row) != 4:
                raise ValueError("tetrahedron %d has %d faces" % (i, len(row)))
            faces = []
            for j, (target, perm) in enumerate(row):
                perm = tuple(int(x) for x in perm)
                if sorted(perm) != [0, 1, 2, 3]:
                    raise ValueError("bad permutation %s at (%d, %d)" % (perm, i, j))
                if not 0 <= int(target) < r:
                    raise ValueError("target %s out of range at (%d, %d)" % (target, i, j))
                faces.append((int(target), perm))
            gluings.append(tuple(faces))
        tri = cls(r=r, gluings=tuple(gluings), name=data.get("name", ""))
        tri.validate()
        return tri

    def to_json(self):
        return {
            "name": self.name,
            "tets": self.r,
            "gluings": [[[t, list(p)] for (t, p) in row] for row in self.gluings],
        }

    def validate(self):
        """Involution, connectivity and orientability; raises on failure."""
        for i in range(self.r):
            for j in range(4):
                target, perm = self.gluings[i][j]
                j2 = perm[j]
                back_target, back_perm = self.gluings[target][j2]
                if back_target != i or back_perm != _perm_inverse(perm):
                    raise ValueError(
                        "gluing of face (%d, %d) is not inverted by (%d, %d)"
                        % (i, j, target, j2)
                    )
                if target == i and j2 == j:
                    raise ValueError("face (%d, %d) glued to itself" % (i, j))
        seen = {0}
        queue = [0]
        while queue:
            i = queue.pop()
            for j in range(4):
                t = self.gluings[i][j][0]
                if t not in seen:
                    seen.add(t)
                    queue.append(t)
        if len(seen) != self.r:
            raise ValueError("gluing graph is not connected")
        self.orientation_signs()

    def orientation_signs(self):
        """Consistent tetrahedron signs; raises if non-orientable.

        A face gluing between coherently oriented tetrahedra reverses the
        boundary orientation, so eps(i) * eps(i') = -sign(sigma).
        """
        eps = [0] * self.r
        eps[0] = 1
        queue = [0]
        while queue:
            i = queue.pop()
            for j in range(4):
                target, perm = self.gluings[i][j]
                want = -eps[i] * _perm_sign(perm)
                if eps[target] == 0:
                    eps[target] = want
                    queue.append(target)
                elif eps[target] != want:
                    raise ValueError("triangulation is not orientable")
        return tuple(eps)


def parse_gluing_table(text):
    """Parse and validate a gluing-table JSON document."""
    import json

    return TetTriangulation.from_json(json.loads(text))


@dataclass(frozen=True)
class ManifoldCuspClasses:
    """Partition of the ideal vertices (i, k) into cusps, labels by min rep."""

    classes: tuple  # classes[label] = sorted tuple of (i, k)

    def label_of(self, ik):
        for label, c in enumerate(self.classes):
            if ik in c:
                return label
        raise KeyError(ik)

    @property
    def num_cusps(self):
        return len(self.classes)


def manifold_cusp_classes(tri):
    """Orbits of ideal vertices under all face gluings (k != j only)."""
    verts = [(i, k) for i in range(tri.r) for k in range(4)]
    index = {v: t for t, v in enumerate(verts)}
    parent = list(range(len(verts)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(tri.r):
        for j in range(4):
            target, perm = tri.gluings[i][j]
            for k in range(4):
                if k == j:
                    continue
                ra = find(index[(i, k)])
                rb = find(index[(target, perm[k])])
                if ra != rb:
                    parent[rb] = ra
    groups = {}
    for v, t in index.items():
        groups.setdefault(find(t), []).append(v)
    classes = sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])
    return ManifoldCuspClasses(tuple(tuple(g) for g in classes))


def _piece_partner(tri, piece):
    """The piece glued to (i, j, k, l) across face j of the triangulation."""
    i, j, k, l = piece
    target, perm = tri.gluings[i][j]
    return (target, perm[j], perm[k], perm[l])


def _piece_parity(eps, piece):
    """Orientation of the barycentric flag inside its tetrahedron."""
    i, j, k, l = piece
    h = 6 - j - k - l
    return eps[i] * _perm_sign((k, l, h, j))


def des_seq(tri):
    """Destination sequence of the barycentric orbifold triangulation.

    Returns (seq, pieces) where pieces[s] is the pair of barycentric pieces
    forming orbifold tetrahedron s.  Neighbour rules, with h = 6 - j - k - l:

      v face:  swap k and l in both pieces;
      e face:  replace l by h in both pieces;
      f0 face: replace j by h in the negative-parity piece;
      f1 face: replace j by h in the positive-parity piece.

    Labelling is breadth first, visiting the v, f0, f1 and e neighbours of
    tetrahedron 0, 1, ... in order, reseeding at the lexicographically
    smallest unlabelled piece when a component of the search runs dry.
    """
    eps = tri.orientation_signs()

    def pair_of(piece):
        partner = _piece_partner(tri, piece)
        return min(piece, partner), max(piece, partner)

    def signed(pair):
        """(negative-parity piece, positive-parity piece) of an orbifold tet."""
        a, b = pair
        pa = _piece_parity(eps, a)
        pb = _piece_parity(eps, b)
        if pa == pb:
            raise RuntimeError("pieces of a pair must have opposite parity")
        return (a, b) if pa < 0 else (b, a)

    def neighbour(pair, slot):
        (i, j, k, l), _ = pair
        if slot == 0:  # v
            return pair_of((i, j, l, k))
        if slot == 3:  # e
            return pair_of((i, j, k, 6 - j - k - l))
        neg, pos = signed(pair)
        i, j, k, l = neg if slot == 1 else pos
        return pair_of((i, 6 - j - k - l, k, l))

    all_pieces = sorted(
        (i, j, k, l)
        for i in range(tri.r)
        for k in range(4)
        for l in range(4)
        for j in range(4)
        if len({j, k, l}) == 3
    )

    label = {}
    order = []

    def ensure(pair):
        if pair not in label:
            label[pair] = len(order)
            order.append(pair)
        return label[pair]

    ensure(pair_of(all_pieces[0]))
    entries = []
    s = 0
    while s < len(order):
        pair = order[s]
        for slot in (0, 1, 2, 3):
            ensure(neighbour(pair, slot))
        s += 1
        if s == len(order):
            for piece in all_pieces:
                if pair_of(piece) not in label:
                    ensure(pair_of(piece))
                    break
    # Entries are emitted after labelling settles so that the sequence
    # reflects final labels.
    for pair in order:
        for slot in (0, 1, 2, 3):
            entries.append(label[neighbour(pair, slot)])

    if len(order) != 12 * tri.r:
        raise RuntimeError(
            "expected %d orbifold tetrahedra, built %d" % (12 * tri.r, len(order))
        )
    seq = DestinationSequence.from_list(entries, name=tri.name or "des_seq")
    return seq, tuple(order)


def cusp_info(tri, pieces):
    """For each orbifold tetrahedron its two (tetrahedron, ideal vertex) hits."""
    out = []
    for s, (a, b) in enumerate(pieces):
        out.append((s, (a[0], a[2]), (b[0], b[2])))
    return out


def mfd_cusp_index(orbifold_class, pieces, mc):
    """Manifold cusp label of an orbifold cusp class.

    Every tetrahedron of the orbifold class must report ideal-vertex
    incidences inside one manifold cusp class; anything else means the
    barycentric construction went wrong.
    """
    labels = set()
    for s in orbifold_class:
        a, b = pieces[s]
        labels.add(mc.label_of((a[0], a[2])))
        labels.add(mc.label_of((b[0], b[2])))
    if len(labels) != 1:
        raise RuntimeError(
            "orbifold cusp class straddles manifold cusps %s" % sorted(labels)
        )
    return labels.pop()
