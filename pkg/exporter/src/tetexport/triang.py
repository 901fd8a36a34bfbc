"""Combinatorics of ideal triangulations on the exporter side.

The exporter keeps its own light-weight triangulation model (a gluing
table as nested lists) so that it talks to the analysis package purely
through JSON files.  Provided here: validation, cusp classes, edge classes
with degrees, combinatorial automorphisms, and the abelianized dual-spine
presentation of first homology.
"""

from itertools import permutations

_S4 = tuple(permutations(range(4)))


def perm_sign(p):
    sign = 1
    for a in range(4):
        for b in range(a + 1, 4):
            if p[a] > p[b]:
                sign = -sign
    return sign


def perm_inverse(p):
    inv = [0, 0, 0, 0]
    for a in range(4):
        inv[p[a]] = a
    return tuple(inv)


def perm_compose(p, q):
    """(p o q)(x) = p[q[x]]."""
    return tuple(p[q[x]] for x in range(4))


def validate(table):
    n = len(table)
    for s, row in enumerate(table):
        if len(row) != 4:
            raise ValueError("simplex %d has %d facets" % (s, len(row)))
        for f, (d, perm) in enumerate(row):
            if not 0 <= d < n or sorted(perm) != [0, 1, 2, 3]:
                raise ValueError("bad gluing at (%d, %d)" % (s, f))
            d2, perm2 = table[d][perm[f]]
            if d2 != s or tuple(perm2) != perm_inverse(perm):
                raise ValueError("involution fails at (%d, %d)" % (s, f))
            if d == s and perm[f] == f:
                raise ValueError("facet (%d, %d) glued to itself" % (s, f))
    seen = {0}
    queue = [0]
    while queue:
        s = queue.pop()
        for f in range(4):
            d = table[s][f][0]
            if d not in seen:
                seen.add(d)
                queue.append(d)
    if len(seen) != n:
        raise ValueError("triangulation is not connected")


def orientation_signs(table):
    """Per-simplex signs, or None if the triangulation is non-orientable."""
    n = len(table)
    eps = [0] * n
    eps[0] = 1
    queue = [0]
    while queue:
        s = queue.pop()
        for f in range(4):
            d, perm = table[s][f]
            want = -eps[s] * perm_sign(perm)
            if eps[d] == 0:
                eps[d] = want
                queue.append(d)
            elif eps[d] != want:
                return None
    return eps


def cusp_classes(table):
    """Sorted orbits of ideal vertices (s, v) under the face gluings."""
    n = len(table)
    verts = [(s, v) for s in range(n) for v in range(4)]
    parent = {x: x for x in verts}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s in range(n):
        for f in range(4):
            d, perm = table[s][f]
            for v in range(4):
                if v == f:
                    continue
                a, b = find((s, v)), find((d, perm[v]))
                if a != b:
                    parent[b] = a
    groups = {}
    for x in verts:
        groups.setdefault(find(x), []).append(x)
    return sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])


def cusp_label(classes):
    out = {}
    for label, cl in enumerate(classes):
        for x in cl:
            out[x] = label
    return out


def edge_classes(table):
    """Orbits of (simplex, unordered vertex pair) under the gluings."""
    n = len(table)
    edges = [(s, a, b) for s in range(n) for a in range(4)
             for b in range(a + 1, 4)]
    parent = {e: e for e in edges}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def key(s, a, b):
        return (s, a, b) if a < b else (s, b, a)

    for s in range(n):
        for f in range(4):
            d, perm = table[s][f]
            for a in range(4):
                for b in range(a + 1, 4):
                    if f in (a, b):
                        continue
                    x = find(key(s, a, b))
                    y = find(key(d, perm[a], perm[b]))
                    if x != y:
                        parent[y] = x
    groups = {}
    for e in edges:
        groups.setdefault(find(e), []).append(e)
    return sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])


def edge_degrees(table):
    return [len(c) for c in edge_classes(table)]


def automorphisms(table):
    """All combinatorial self-isomorphisms as (simplex map, perm list).

    Each automorphism sends simplex s via permutation perms[s] onto
    simplex smap[s], preserving the gluing table.  Orientation-reversing
    symmetries are included.
    """
    n = len(table)
    autos = []
    for t0 in range(n):
        for p0 in _S4:
            smap = [-1] * n
            perms = [None] * n
            smap[0], perms[0] = t0, p0
            queue = [0]
            ok = True
            while queue and ok:
                s = queue.pop()
                for f in range(4):
                    d, perm = table[s][f]
                    # image of the gluing: facet perms[s][f] of smap[s]
                    di, permi = table[smap[s]][perms[s][f]]
                    want = perm_compose(permi, perm_compose(perms[s],
                                                            perm_inverse(perm)))
                    if smap[d] == -1:
                        smap[d], perms[d] = di, want
                        queue.append(d)
                    elif (smap[d], perms[d]) != (di, want):
                        ok = False
                        break
            if ok and sorted(smap) == list(range(n)):
                autos.append((smap, perms))
    return autos


def cusp_symmetry_classes(table):
    """Orbits of cusp labels under the combinatorial symmetry group."""
    classes = cusp_classes(table)
    label = cusp_label(classes)
    k = len(classes)
    parent = list(range(k))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for smap, perms in automorphisms(table):
        for s in range(len(table)):
            for v in range(4):
                a = find(label[(s, v)])
                b = find(label[(smap[s], perms[s][v])])
                if a != b:
                    parent[b] = a
    groups = {}
    for c in range(k):
        groups.setdefault(find(c), []).append(c)
    return sorted(sorted(g) for g in groups.values())


def homology_presentation(table):
    """Abelianized dual-spine presentation matrix of H_1.

    Generators: one per face class (the dual 1-cells), oriented from the
    side with the smaller (simplex, facet) key.  Relations: one per edge
    class (the dual 2-cells, a walk around the edge) plus one generator
    killed per face class in a dual spanning tree.
    """
    n = len(table)
    face_id = {}
    faces = []
    for s in range(n):
        for f in range(4):
            d, perm = table[s][f]
            key = min((s, f), (d, perm[f]))
            if key not in face_id:
                face_id[key] = len(faces)
                faces.append(key)
    if len(faces) != 2 * n:
        raise ValueError("expected %d face classes, got %d" % (2 * n, len(faces)))

    def crossing(s, f):
        """(generator index, sign) for stepping out of s through facet f."""
        d, perm = table[s][f]
        key = min((s, f), (d, perm[f]))
        return face_id[key], 1 if key == (s, f) else -1

    rows = []
    for cl in edge_classes(table):
        s, a, b = cl[0]
        row = [0] * len(faces)
        # walk around the edge: leave through one of the two facets not
        # containing it, enter the neighbour, continue through its other one
        f = min(x for x in range(4) if x not in (a, b))
        start = (s, a, b, f)
        cur = start
        while True:
            s, a, b, f = cur
            g, sign = crossing(s, f)
            row[g] += sign
            d, perm = table[s][f]
            a2, b2 = perm[a], perm[b]
            entered = perm[f]
            f2 = next(x for x in range(4) if x not in (a2, b2, entered))
            cur = (d, min(a2, b2), max(a2, b2), f2)
            if cur == start:
                break
        rows.append(row)

    # dual spanning tree of the face graph on simplices
    in_tree = set()
    seen = {0}
    queue = [0]
    while queue:
        s = queue.pop(0)
        for f in range(4):
            d, _ = table[s][f]
            if d not in seen:
                seen.add(d)
                in_tree.add(crossing(s, f)[0])
                queue.append(d)
    for g in sorted(in_tree):
        row = [0] * len(faces)
        row[g] = 1
        rows.append(row)
    # pad with zero relations so the Smith diagonal is one entry per
    # generator and free factors show up as zero divisors
    while len(rows) < len(faces):
        rows.append([0] * len(faces))
    return rows
