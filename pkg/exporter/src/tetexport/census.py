"""Enumeration of small tetrahedral triangulations.

A cusped orientable manifold triangulated by regular ideal tetrahedra is
exactly an orientable gluing table in which every edge class has degree
six: the dihedral angles then add to 2*pi around every edge and the cusp
cross-sections are built from unit equilateral triangles, so the complete
hyperbolic structure exists.  This module enumerates such triangulations
up to combinatorial isomorphism by backtracking over facet gluings with
edge-degree and orientability pruning, and provides the canonical
isomorphism signature used for deduplication.
"""

from . import isosig, triang

_S4 = triang._S4
_S4_INDEX = {p: i for i, p in enumerate(_S4)}


def _encode_with(table, start, p0):
    """Signature string for one choice of start simplex and labeling."""
    n = len(table)
    relab = {start: p0}  # old simplex -> vertex relabeling perm
    order = [start]      # old simplex in new-label order
    newlab = {start: 0}
    actions = []
    dests = []
    perms = []
    covered = set()
    i = 0
    while i < len(order):
        s = order[i]
        ps = relab[s]
        for f_new in range(4):
            f_old = triang.perm_inverse(ps)[f_new]
            if (s, f_old) in covered:
                continue
            covered.add((s, f_old))
            d, perm = table[s][f_old]
            covered.add((d, perm[f_old]))
            if d not in relab:
                # join to a fresh simplex; normalize its labels so that
                # the gluing becomes the identity on facet f_new
                relab[d] = triang.perm_compose(ps, triang.perm_inverse(perm))
                newlab[d] = len(order)
                order.append(d)
                actions.append(1)
            else:
                actions.append(2)
                dests.append(newlab[d])
                perms.append(_S4_INDEX[triang.perm_compose(
                    relab[d], triang.perm_compose(perm,
                                                  triang.perm_inverse(ps)))])
        i += 1
    chars = [isosig.SIGCHARS[n]]
    for j in range(0, len(actions), 3):
        v = 0
        for k, t in enumerate(actions[j:j + 3]):
            v |= t << (2 * k)
        chars.append(isosig.SIGCHARS[v])
    for d in dests:
        chars.append(isosig.SIGCHARS[d])
    for p in perms:
        chars.append(isosig.SIGCHARS[p])
    return "".join(chars)


def canonical_sig(table):
    """Lexicographically smallest signature over all starting labelings."""
    best = None
    for start in range(len(table)):
        for p0 in _S4:
            sig = _encode_with(table, start, p0)
            if best is None or sig < best:
                best = sig
    return best


class _Enumerator:
    """Backtracking search over orientable degree-6 facet gluings."""

    def __init__(self, n):
        self.n = n
        self.table = [[None] * 4 for _ in range(n)]
        self.eps = [0] * n
        self.eps[0] = 1
        self.used = 1
        # edge classes as union-find over (simplex, vertex pair) with the
        # accumulated number of glued facet-wedges per class
        self.parent = {}
        self.degree = {}
        self.open_wedges = {}
        for a in range(4):
            for b in range(a + 1, 4):
                e = (0, a, b)
                self.parent[e] = e
                self.degree[e] = 1
        self.trail = []
        self.found = []

    def _find(self, e):
        while self.parent[e] != e:
            e = self.parent[e]
        return e

    def _union(self, x, y):
        """Merge edge classes; returns None if a closed class misses 6."""
        rx, ry = self._find(x), self._find(y)
        if rx == ry:
            return None
        self.parent[ry] = rx
        self.degree[rx] += self.degree[ry]
        self.trail.append(("union", rx, ry, self.degree[ry]))
        return rx

    def _undo(self, mark):
        while len(self.trail) > mark:
            op = self.trail.pop()
            if op[0] == "union":
                _, rx, ry, deg = op
                self.parent[ry] = ry
                self.degree[rx] -= deg
            elif op[0] == "glue":
                _, s, f, d, g = op
                self.table[s][f] = None
                self.table[d][g] = None
            elif op[0] == "simplex":
                _, d = op
                self.used -= 1
                self.eps[d] = 0
                for a in range(4):
                    for b in range(a + 1, 4):
                        e = (d, a, b)
                        del self.parent[e]
                        del self.degree[e]

    def _glue(self, s, f, d, perm):
        """Apply one gluing; returns False (after no-op) if pruned."""
        mark = len(self.trail)
        g = perm[f]
        self.table[s][f] = (d, perm)
        self.table[d][g] = (s, triang.perm_inverse(perm))
        self.trail.append(("glue", s, f, d, g))
        pairs = [(a, b) for a in range(4) for b in range(a + 1, 4)
                 if a != f and b != f]
        for a, b in pairs:
            pa, pb = perm[a], perm[b]
            x = (s, a, b)
            y = (d, min(pa, pb), max(pa, pb))
            root = self._union(x, y)
            if root is None:
                root = self._find(x)
            deg = self.degree[root]
            if deg > 6:
                self._undo(mark)
                return False
        # a class with all wedges glued must close at exactly degree 6;
        # count open wedges lazily: a wedge (t, a, b) is open while either
        # facet of t not containing the edge is unglued
        closed = set()
        for a, b in pairs:
            for e in ((s, a, b), (d, min(perm[a], perm[b]),
                                  max(perm[a], perm[b]))):
                closed.add(self._find(e))
        for root in closed:
            deg = self.degree[root]
            if deg == 6:
                continue
            # degree < 6: fine unless no member wedge can grow further
            if deg < 6 and not self._can_grow(root):
                self._undo(mark)
                return False
        return True

    def _can_grow(self, root):
        for e in self.parent:
            if self._find(e) != root:
                continue
            t, a, b = e
            for f in range(4):
                if f != a and f != b and self.table[t][f] is None:
                    return True
        return False

    def run(self):
        self._search()
        return self.found

    def _search(self):
        slot = None
        for s in range(self.used):
            for f in range(4):
                if self.table[s][f] is None:
                    slot = (s, f)
                    break
            if slot:
                break
        if slot is None:
            if self.used == self.n:
                self.found.append([row[:] for row in self.table])
            return
        s, f = slot
        # option 1: a fresh simplex glued by the identity
        if self.used < self.n:
            d = self.used
            mark = len(self.trail)
            self.used += 1
            self.eps[d] = -self.eps[s]
            for a in range(4):
                for b in range(a + 1, 4):
                    e = (d, a, b)
                    self.parent[e] = e
                    self.degree[e] = 1
            self.trail.append(("simplex", d))
            if self._glue(s, f, d, (0, 1, 2, 3)):
                self._search()
            self._undo(mark)
        # option 2: an open facet of an existing simplex
        for d in range(self.used):
            for g in range(4):
                if self.table[d][g] is not None or (d, g) == (s, f):
                    continue
                for perm in _S4:
                    if perm[f] != g:
                        continue
                    if triang.perm_sign(perm) != -self.eps[s] * self.eps[d]:
                        continue
                    mark = len(self.trail)
                    if self._glue(s, f, d, perm):
                        self._search()
                    self._undo(mark)


def enumerate_tables(n):
    """All degree-6 orientable triangulations with n tetrahedra, up to
    isomorphism, as (canonical signature, gluing table) sorted by
    signature."""
    seen = {}
    for table in _Enumerator(n).run():
        triang.validate(table)
        if any(deg != 6 for deg in triang.edge_degrees(table)):
            raise RuntimeError("enumerator produced a bad edge class")
        sig = canonical_sig(table)
        if sig not in seen:
            seen[sig] = table
    return sorted(seen.items())
