"""
Orbifold destination sequences.

A destination sequence encodes a triangulation of an orbifold commensurable
with H^3/PGL_2(O_3) into copies of the fundamental tetrahedron Delta, which
has one ideal vertex v and three finite vertices f0, f1 and e.  For each
tetrahedron i the sequence records the indices of the tetrahedra glued to
its four faces:

    entries[4*i + 0] = v(i)     (v face glued to the v face of v(i))
    entries[4*i + 1] = f0(i)    (f0 face glued to the f1 face of f0(i))
    entries[4*i + 2] = f1(i)    (f1 face glued to the f0 face of f1(i))
    entries[4*i + 3] = e(i)     (e face glued to the e face of e(i))

Only the v face misses the ideal vertex, so cusps are the connected
components of the gluing graph restricted to the f0, f1 and e edges.
"""

from dataclasses import dataclass, field


# Face slots within a block of four entries.
V, F0, F1, E = 0, 1, 2, 3


@dataclass(frozen=True)
class DestinationSequence:
    """A length-4n destination sequence with an optional name."""

    n: int
    entries: tuple
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(x) for x in self.entries))
        if self.n <= 0:
            raise ValueError("tetrahedron count must be positive")
        if len(self.entries) != 4 * self.n:
            raise ValueError(
                "expected %d entries, got %d" % (4 * self.n, len(self.entries))
            )
        for x in self.entries:
            if not 0 <= x < self.n:
                raise ValueError("entry %d out of range [0, %d)" % (x, self.n))

    @classmethod
    def from_list(cls, entries, name=""):
        entries = list(entries)
        if len(entries) % 4 != 0:
            raise ValueError("entry count must be a multiple of 4")
        return cls(n=len(entries) // 4, entries=tuple(entries), name=name)

    @classmethod
    def from_json(cls, data):
        return cls(n=data["n"], entries=tuple(data["entries"]),
                   name=data.get("name", ""))

    def to_json(self):
        return {"name": self.name, "n": self.n, "entries": list(self.entries)}

    def target(self, i, slot):
        return self.entries[4 * i + slot]


@dataclass(frozen=True)
class CuspPartition:
    """Disjoint sorted classes of tetrahedron indices, one per cusp."""

    classes: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "classes", tuple(tuple(sorted(c)) for c in self.classes)
        )

    def class_of(self, i):
        for t, c in enumerate(self.classes):
            if i in c:
                return t
        raise KeyError(i)

    def to_json(self):
        return [list(c) for c in self.classes]


@dataclass(frozen=True)
class CoverMap:
    """phi[i] = index downstairs of the image of tetrahedron i upstairs."""

    phi: tuple

    def __post_init__(self):
        object.__setattr__(self, "phi", tuple(int(x) for x in self.phi))

    def degree(self, n_down):
        return len(self.phi) // n_down

    def to_json(self):
        return list(self.phi)


@dataclass
class ValidationReport:
    """Outcome of validate(); ok iff no violations were recorded."""

    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def add(self, family, index, message):
        self.violations.append({"family": family, "index": index,
                                "message": message})

    def to_json(self):
        return {"ok": self.ok, "violations": self.violations}


def validate(seq):
    """Check the four gluing involution/pairing families and connectivity.

    Returns a ValidationReport listing every violated constraint with the
    tetrahedron index where it fails.
    """
    report = ValidationReport()
    s = seq.entries
    for i in range(seq.n):
        if s[4 * s[4 * i + V] + V] != i:
            report.add("v-involution", i,
                       "v(v(%d)) = %d != %d" % (i, s[4 * s[4 * i + V] + V], i))
        if s[4 * s[4 * i + F0] + F1] != i:
            report.add("f-pairing", i,
                       "f1(f0(%d)) = %d != %d" % (i, s[4 * s[4 * i + F0] + F1], i))
        if s[4 * s[4 * i + F1] + F0] != i:
            report.add("f-pairing", i,
                       "f0(f1(%d)) = %d != %d" % (i, s[4 * s[4 * i + F1] + F0], i))
        if s[4 * s[4 * i + E] + E] != i:
            report.add("e-involution", i,
                       "e(e(%d)) = %d != %d" % (i, s[4 * s[4 * i + E] + E], i))
    if not _connected(seq, slots=(V, F0, F1, E)):
        report.add("connectivity", 0, "gluing graph is not connected")
    return report


def _components(seq, slots):
    """Connected components of the gluing graph restricted to some slots."""
    parent = list(range(seq.n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(seq.n):
        for k in slots:
            ra, rb = find(i), find(seq.entries[4 * i + k])
            if ra != rb:
                parent[rb] = ra
    groups = {}
    for i in range(seq.n):
        groups.setdefault(find(i), []).append(i)
    return sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])


def _connected(seq, slots):
    return len(_components(seq, slots)) == 1


def cusp_seqs(seq):
    """Cusp classes: components under the f0, f1 and e gluings only.

    The v face of the fundamental tetrahedron is the one face not touching
    the ideal vertex, so two tetrahedra share an ideal vertex class exactly
    when they are connected through non-v faces.
    """
    return CuspPartition(tuple(_components(seq, slots=(F0, F1, E))))


def covers(up, down):
    """All triangulation- and orientation-preserving covers of down by up.

    A cover is a map phi on tetrahedron indices with
    phi(S_up(4i+k)) = S_down(4 phi(i)+k) for all i, k.  Since the gluing
    graph of up is connected, phi is determined by phi(0); we try every
    candidate image, propagate, then re-verify every constraint and the
    uniformity of the fibers.  Maps are returned sorted lexicographically.
    """
    if not validate(up).ok or not validate(down).ok:
        raise ValueError("covers() requires valid destination sequences")
    if up.n % down.n != 0:
        return []
    degree = up.n // down.n
    found = []
    for root in range(down.n):
        phi = _propagate(up, down, root)
        if phi is None:
            continue
        if not _verify_cover(up, down, phi, degree):
            continue
        found.append(CoverMap(tuple(phi)))
    found = sorted(set(found), key=lambda c: c.phi)
    return found


def _propagate(up, down, root):
    """Spread phi[0] = root through the gluing graph; None on conflict."""
    phi = [-1] * up.n
    phi[0] = root
    queue = [0]
    while queue:
        i = queue.pop()
        for k in (V, F0, F1, E):
            j = up.entries[4 * i + k]
            image = down.entries[4 * phi[i] + k]
            if phi[j] == -1:
                phi[j] = image
                queue.append(j)
            elif phi[j] != image:
                return None
    return phi


def _verify_cover(up, down, phi, degree):
    for i in range(up.n):
        for k in (V, F0, F1, E):
            if phi[up.entries[4 * i + k]] != down.entries[4 * phi[i] + k]:
                return False
    fibers = [0] * down.n
    for x in phi:
        fibers[x] += 1
    return all(f == degree for f in fibers)


def automorphisms(seq):
    """Degree-1 covers of a sequence by itself."""
    return covers(seq, seq)


def cusp_covers(cover, up_cusps, down_cusps):
    """Pair each upstairs cusp class with its image class downstairs."""
    out = []
    for c in up_cusps.classes:
        images = {cover.phi[i] for i in c}
        matches = [d for d in down_cusps.classes if images <= set(d)]
        if len(matches) != 1:
            raise RuntimeError(
                "cusp image %s straddles down classes; inconsistent cover"
                % sorted(images)
            )
        out.append((c, matches[0]))
    return out
