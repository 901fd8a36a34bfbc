"""Horoball diagrams for tetrahedral manifolds by direct development.

A manifold glued from regular ideal tetrahedra develops into the standard
tiling of H^3 by regular ideal tetrahedra.  The ideal vertices of that
tiling are the points p/q of the boundary sphere with p, q Eisenstein
integers, and two vertices of a common tile always have |ps - qr| = 1.
With one cusp lift placed at infinity the tiling carries a canonical
decoration by pairwise tangent horoballs: the ball at p/q (in lowest
terms) has Euclidean diameter 1/|q|^2 and the ball at infinity is the
plane at height 1.  Everything is therefore computed in exact integer
arithmetic; floats only appear in lattice reduction and in the exported
diagrams.

Deck transformations fixing infinity form a lattice of translations by
Eisenstein integers, so tiles are enumerated modulo that lattice: each
tile is translated so that a designated vertex lands in the fundamental
parallelogram, which keeps the search to a single fundamental domain.

Actual cusp neighbourhoods are the decoration scaled per cusp class, so
equivariant maximization reduces to minimizing finitely many tangency
ratios.  The cusp at infinity is maximized first, the remaining cusps in
ascending label order.
"""

import math

import numpy as np
from scipy.spatial import cKDTree

from . import triang


class GeometryError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# Eisenstein integers a + b*omega, omega = exp(2*pi*i/3), as int pairs.

_OMEGA = complex(-0.5, math.sqrt(3.0) / 2.0)
ZETA = complex(0.5, math.sqrt(3.0) / 2.0)  # 1 + omega, a primitive 6th root

_UNITS = ((1, 0), (0, 1), (-1, -1), (-1, 0), (0, -1), (1, 1))


def _eadd(x, y):
    return (x[0] + y[0], x[1] + y[1])


def _esub(x, y):
    return (x[0] - y[0], x[1] - y[1])


def _emul(x, y):
    # omega^2 = -1 - omega
    return (x[0] * y[0] - x[1] * y[1],
            x[0] * y[1] + x[1] * y[0] - x[1] * y[1])


def _escale(x, k):
    return (k * x[0], k * x[1])


def _enorm(x):
    return x[0] * x[0] - x[0] * x[1] + x[1] * x[1]


def _econj(x):
    return (x[0] - x[1], -x[1])


def _efloat(x):
    return x[0] + x[1] * _OMEGA


def _ediv(x, y):
    """Exact quotient x / y; raises if y does not divide x."""
    n = _emul(x, _econj(y))
    d = _enorm(y)
    a, ra = divmod(n[0], d)
    b, rb = divmod(n[1], d)
    if ra or rb:
        raise GeometryError("inexact Eisenstein division")
    return (a, b)


def _egcd(x, y):
    # coordinate rounding leaves a remainder of norm <= 3/4 * norm(y),
    # so the Euclidean algorithm terminates
    while y != (0, 0):
        n = _emul(x, _econj(y))
        d = _enorm(y)
        q = (_iround(n[0], d), _iround(n[1], d))
        x, y = y, _esub(x, _emul(q, y))
    return x


def _iround(a, d):
    """round(a / d) for positive integer d, exact in integers."""
    return (2 * a + d) // (2 * d)


# ---------------------------------------------------------------------------
# Ideal vertices as normalized projective pairs (p, q).

_INF = ((1, 0), (0, 0))


def _vnorm(p, q):
    if q == (0, 0):
        if p == (0, 0):
            raise GeometryError("degenerate projective point")
        return _INF
    g = _egcd(p, q)
    return _vcanon(_ediv(p, g), _ediv(q, g))


def _vcanon(p, q):
    """Canonical associate of an already reduced pair (p, q)."""
    if q == (0, 0):
        return _INF
    # a canonical associate makes the representation unique
    u = max(_UNITS, key=lambda w: _emul(w, q))
    return (_emul(u, p), _emul(u, q))


def _is_inf(v):
    return v[1] == (0, 0)


def _vpos(v):
    """Complex position, or None for the vertex at infinity."""
    if _is_inf(v):
        return None
    return _efloat(v[0]) / _efloat(v[1])


def _vdeco(v):
    """Euclidean diameter of the canonical horoball at a finite vertex."""
    return 1.0 / _enorm(v[1])


def _vshift(v, lam):
    """Translate a vertex by the Eisenstein integer lam.

    The denominator is unchanged, so the canonical associate survives.
    """
    if _is_inf(v):
        return v
    return (_eadd(v[0], _emul(lam, v[1])), v[1])


_FACES = tuple(tuple(k for k in range(4) if k != j) for j in range(4))


def _neighbour(table, tet, verts, j, hints={}):
    """Tile across face j, as (tet, vertex 4-tuple).

    The neighbouring tile is the image of this one under the rotation by
    pi/3 about an edge of the shared face, oriented to carry the opposite
    vertex onto the face.  The rotation matrix is unimodular, so applying
    it preserves lowest terms and no gcd is needed.  The arithmetic is
    inlined and the winning rotation direction is cached per (tet, face),
    as this is the innermost loop of the development.
    """
    d, perm = table[tet][j]
    f0, f1, f2 = _FACES[j]
    (p1a, p1b), (q1a, q1b) = verts[f0]
    (p2a, p2b), (q2a, q2b) = verts[f1]
    (pca, pcb), (qca, qcb) = verts[f2]
    (poa, pob), (qoa, qob) = verts[j]
    # shared products p1*q2, p2*q1, p1*p2, q1*q2
    Aa = p1a * q2a - p1b * q2b
    Ab = p1a * q2b + p1b * q2a - p1b * q2b
    Ba = p2a * q1a - p2b * q1b
    Bb = p2a * q1b + p2b * q1a - p2b * q1b
    Pa = p1a * p2a - p1b * p2b
    Pb = p1a * p2b + p1b * p2a - p1b * p2b
    Qa = q1a * q2a - q1b * q2b
    Qb = q1a * q2b + q1b * q2a - q1b * q2b
    first = hints.get((tet, j), 0)
    for pick in (first, 1 - first):
        if pick == 0:
            # rotation by zeta = 1 + omega
            m00a, m00b = Aa - Ab - Ba, Aa - Bb
            m01a, m01b = Pb, Pb - Pa
            m10a, m10b = -Qb, Qa - Qb
            m11a, m11b = Aa - Ba + Bb, Ab - Ba
        else:
            # rotation by -omega
            m00a, m00b = Ab - Ba, Ab - Aa - Bb
            m01a, m01b = Pa - Pb, Pa
            m10a, m10b = Qb - Qa, -Qa
            m11a, m11b = Aa - Bb, Ab + Ba - Bb
        poa2 = m00a * poa - m00b * pob + m01a * qoa - m01b * qob
        pob2 = (m00a * pob + m00b * poa - m00b * pob
                + m01a * qob + m01b * qoa - m01b * qob)
        qoa2 = m10a * poa - m10b * pob + m11a * qoa - m11b * qob
        qob2 = (m10a * pob + m10b * poa - m10b * pob
                + m11a * qob + m11b * qoa - m11b * qob)
        if (poa2 * qca - pob2 * qcb == qoa2 * pca - qob2 * pcb and
                poa2 * qcb + pob2 * qca - pob2 * qcb
                == qoa2 * pcb + qob2 * pca - qob2 * pcb):
            if pick != first:
                hints[(tet, j)] = pick
            w = _vcanon(
                (m00a * pca - m00b * pcb + m01a * qca - m01b * qcb,
                 m00a * pcb + m00b * pca - m00b * pcb
                 + m01a * qcb + m01b * qca - m01b * qcb),
                (m10a * pca - m10b * pcb + m11a * qca - m11b * qcb,
                 m10a * pcb + m10b * pca - m10b * pcb
                 + m11a * qcb + m11b * qca - m11b * qcb))
            break
    else:
        raise GeometryError("tile is not regular ideal")
    nverts = [None] * 4
    for k in range(4):
        nverts[perm[k]] = w if k == j else verts[k]
    return d, tuple(nverts)


def _root_tile(table, cusp_classes_list, cusp):
    """Base tile with the chosen cusp at infinity over a unit triangle."""
    i0, k0 = cusp_classes_list[cusp][0]
    others = [k for k in range(4) if k != k0]
    verts = [None] * 4
    verts[k0] = _INF
    for slot, pos in zip(others, ((0, 0), (1, 0), (1, 1))):
        verts[slot] = _vnorm(pos, (1, 0))
    return i0, tuple(verts)


def _box_dist(z, box):
    xmin, xmax, ymin, ymax = box
    dx = max(xmin - z.real, 0.0, z.real - xmax)
    dy = max(ymin - z.imag, 0.0, z.imag - ymax)
    return math.hypot(dx, dy)


def _bfs(table, root, keep, reduce=None):
    """Flood fill over tiles; keep() filters, reduce() canonicalizes."""
    if reduce is not None:
        root = reduce(root)
    tiles = {}
    tiles[(root[0],) + root[1]] = root
    queue = [root]
    while queue:
        tile = queue.pop()
        for j in range(4):
            nt = _neighbour(table, tile[0], tile[1], j)
            if reduce is not None:
                nt = reduce(nt)
            key = (nt[0],) + nt[1]
            if key not in tiles and keep(nt):
                tiles[key] = nt
                queue.append(nt)
    return tiles


def _lattice_basis(table, cusp, classes):
    """Reduced Eisenstein basis of the translation lattice at infinity.

    Lifts of the same (tetrahedron, vertex-slot at infinity) differ by a
    deck transformation fixing infinity, which in an orientable manifold
    is a translation; top-layer anchors make the shifts exact Eisenstein
    integers.
    """
    root = _root_tile(table, classes, cusp)
    radius = 4.0

    while True:
        box = (-radius, radius, -radius, radius)

        def keep(tile):
            vs = tile[1]
            if not any(_is_inf(v) for v in vs):
                return False  # stay in the top layer
            fin = [_vpos(v) for v in vs if not _is_inf(v)]
            return _box_dist(sum(fin) / len(fin), box) < 1.0

        tiles = _bfs(table, root, keep)
        seen = {}
        shifts = []
        for tet, vs in tiles.values():
            slot = next(k for k in range(4) if _is_inf(vs[k]))
            anchor = min(k for k in range(4) if k != slot)
            p, q = vs[anchor]
            if _enorm(q) != 1:
                raise GeometryError("inconsistent development at infinity")
            exact = _emul(p, _econj(q))  # q is a unit, so 1/q = conj(q)
            key = (tet, slot)
            if key in seen:
                shifts.append(_esub(exact, seen[key]))
            else:
                seen[key] = exact
        basis = _reduce_lattice(shifts)
        if basis is not None:
            return basis
        radius *= 2.0
        if radius > 200.0:
            raise GeometryError("translation lattice not found")


def _reduce_lattice(shifts):
    """Gauss-reduced basis from integer lattice vectors, or None."""
    vecs = sorted(set(s for s in shifts if s != (0, 0)),
                  key=lambda s: _enorm(s))
    if not vecs:
        return None
    a = vecs[0]
    b = None
    fa = _efloat(a)
    for v in vecs:
        fv = _efloat(v)
        mu = round((fv * fa.conjugate()).real / abs(fa) ** 2)
        r = _esub(v, _escale(a, mu))
        if _enorm(r) > 0:
            if b is None or _enorm(r) < _enorm(b):
                b = r
    if b is None:
        return None
    # Gauss reduction over Z
    while True:
        if _enorm(a) > _enorm(b):
            a, b = b, a
        fa, fb = _efloat(a), _efloat(b)
        mu = round((fb * fa.conjugate()).real / abs(fa) ** 2)
        b2 = _esub(b, _escale(a, mu))
        if _enorm(b2) >= _enorm(b):
            break
        b = b2
    return a, b


def _coords(z, m, l):
    det = m.real * l.imag - m.imag * l.real
    a = (z.real * l.imag - z.imag * l.real) / det
    b = (m.real * z.imag - m.imag * z.real) / det
    return a, b


class Development:
    """Tiles and horoballs of one fundamental domain of a cusp."""

    def __init__(self, table, cusp, dmin):
        triang.validate(table)
        if triang.orientation_signs(table) is None:
            raise GeometryError("triangulation is not orientable")
        if any(deg != 6 for deg in triang.edge_degrees(table)):
            raise GeometryError("not a tetrahedral triangulation "
                                "(edge of degree != 6)")
        self.table = table
        self.cusp = cusp
        self.classes = triang.cusp_classes(table)
        self.labels = triang.cusp_label(self.classes)
        self.num_cusps = len(self.classes)
        self.dmin = dmin
        self.basis_int = _lattice_basis(table, cusp, self.classes)
        self.basis = tuple(_efloat(v) for v in self.basis_int)
        self._develop()

    def _domain_shift(self, v):
        """Integer lattice multiples taking a finite vertex into [0,1)^2."""
        x, y = _coords(_vpos(v), self.basis[0], self.basis[1])
        return -math.floor(x + 1e-9), -math.floor(y + 1e-9)

    def _reduce_tile(self, tile):
        tet, vs = tile
        slot = min((k for k in range(4) if not _is_inf(vs[k])),
                   key=lambda k: (_enorm(vs[k][1]), k))
        s, t = self._domain_shift(vs[slot])
        if s == 0 and t == 0:
            return tile
        lam = _eadd(_escale(self.basis_int[0], s),
                    _escale(self.basis_int[1], t))
        return tet, tuple(_vshift(v, lam) for v in vs)

    def _develop(self):
        root = _root_tile(self.table, self.classes, self.cusp)
        # every ball is harvested from a tile where it touches a ball at
        # least as large, so gating on the tile's second-largest ball
        # keeps the search finite (only finitely many tiles per domain
        # share an edge of two large balls) without losing any ball
        # above the floor
        nmax = 1.0 / (0.4 * self.dmin)  # largest denominator norm kept

        def keep(tile):
            vs = tile[1]
            norms = sorted(_enorm(v[1]) for v in vs)
            # an infinity slot contributes norm 0
            return norms[1] <= nmax if norms[0] else norms[2] <= nmax

        tiles = _bfs(self.table, root, keep, reduce=self._reduce_tile)
        verts = {}
        for tet, vs in tiles.values():
            if any(_is_inf(v) for v in vs):
                if any(_enorm(v[1]) != 1 for v in vs if not _is_inf(v)):
                    raise GeometryError("inconsistent development at infinity")
            for k in range(4):
                v = vs[k]
                if _is_inf(v) or _enorm(v[1]) > nmax:
                    continue
                s, t = self._domain_shift(v)
                if s or t:
                    v = _vshift(v, _eadd(_escale(self.basis_int[0], s),
                                         _escale(self.basis_int[1], t)))
                label = self.labels[(tet, k)]
                if v in verts:
                    if verts[v][1] != label:
                        raise GeometryError("inconsistent development")
                else:
                    verts[v] = (_vpos(v), label, _vdeco(v))
        self.vertices = sorted(verts.values(),
                               key=lambda v: (v[1], v[0].real, v[0].imag))

    def maximize(self):
        """Scale factor per cusp class; the infinity cusp goes first.

        Tangencies are scanned between balls of the fundamental domain
        and lattice translates of all balls.  Every binding pair is at
        Euclidean distance at most 1, since the cusp at infinity scales
        by at least 1 and no final diameter exceeds 1.
        """
        pos = np.array([v[0] for v in self.vertices])
        lab = np.array([v[1] for v in self.vertices])
        dia = np.array([v[2] for v in self.vertices])
        fm, fl = self.basis
        area = abs((fm.conjugate() * fl).imag)
        # |s| <= 1 + |l| / area for a translate to come within distance 1
        ns = int(math.ceil(1.0 + abs(fl) / area + 1e-9))
        nt = int(math.ceil(1.0 + abs(fm) / area + 1e-9))
        lams = [s * fm + t * fl
                for s in range(-ns, ns + 1) for t in range(-nt, nt + 1)]
        tpos = np.concatenate([pos + lam for lam in lams])
        tlab = np.tile(lab, len(lams))
        tdia = np.tile(dia, len(lams))
        tree = cKDTree(np.column_stack([tpos.real, tpos.imag]))
        pts = np.column_stack([pos.real, pos.imag])

        t = [0.0] * self.num_cusps
        order = [self.cusp] + [c for c in range(self.num_cusps)
                               if c != self.cusp]
        for c in order:
            mine = np.where(lab == c)[0]
            if len(mine) == 0:
                raise GeometryError("no lift of cusp %d in the domain" % c)
            dmax = float(dia[mine].max())
            bound = 1.0 / (t[self.cusp] * dmax) if c != self.cusp \
                else 1.0 / math.sqrt(dmax)
            # a pair (i, j) can only bind if |i - j|^2 <= bound^2 d_i d_j
            # (same class) or |i - j|^2 <= bound t_cj d_i d_j <= bound d_i
            # (earlier class, whose final diameters are at most 1)
            radii = np.sqrt(bound * dia[mine]
                            * np.maximum(bound * dmax, 1.0)) + 1e-12
            # scale factors of already maximized classes; zeros turn the
            # untreated classes into +inf ratios below
            tarr = np.zeros(self.num_cusps)
            for cj in order[:order.index(c)]:
                tarr[cj] = t[cj]
            neigh = tree.query_ball_point(pts[mine], radii)
            for i, jj in zip(mine, neigh):
                jj = np.asarray(jj, dtype=int)
                if len(jj) == 0:
                    continue
                sep2 = np.abs(pos[i] - tpos[jj]) ** 2
                ratio = sep2 / (dia[i] * tdia[jj])
                valid = sep2 > 1e-18  # drop the ball itself
                same = valid & (tlab[jj] == c)
                if same.any():
                    bound = min(bound, math.sqrt(float(ratio[same].min())))
                with np.errstate(divide="ignore"):
                    cross = ratio[valid] / tarr[tlab[jj][valid]]
                if len(cross):
                    bound = min(bound, float(cross.min()))
            t[c] = bound
        return t

    def needed_dmin(self, t, cutoff):
        return min(cutoff / (t[self.cusp] * t[c])
                   for c in range(self.num_cusps))


def cusp_diagram(table, cusp, name, export_cutoff=0.05):
    """CuspDiagram JSON for one cusp of a tetrahedral gluing table."""
    dmin = 0.03
    for _ in range(6):
        dev = Development(table, cusp, dmin)
        t = dev.maximize()
        need = dev.needed_dmin(t, export_cutoff)
        if dmin <= need * 1.05:
            break
        dmin = need * 0.8
    else:
        raise GeometryError("development cutoff failed to settle")

    m0, l0 = dev.basis
    scale = t[cusp]
    # rotate the shorter basis vector onto the positive real axis
    if abs(m0) < abs(l0):
        m0, l0 = l0, m0
    phase = l0 / abs(l0)
    m = m0 / phase * scale
    l = l0 / phase * scale
    msign = 1.0
    if m.imag < 0:
        m = -m
        msign = -1.0
    area = abs((m.conjugate() * l).imag)

    balls = {}
    for pos, label, dia in dev.vertices:
        diameter = scale * t[label] * dia
        if diameter < export_cutoff:
            continue
        a, b = _coords(pos, m0, l0)
        a *= msign
        ared = a - math.floor(a + 1e-9)
        bred = b - math.floor(b + 1e-9)
        key = (label, round(ared, 6), round(bred, 6))
        center = ared * m + bred * l
        if key in balls:
            if abs(balls[key][1] - diameter) > 1e-5:
                raise GeometryError("lattice-inconsistent horoball sizes")
        else:
            balls[key] = (center, diameter, label)

    horoballs = sorted(balls.values(),
                       key=lambda h: (h[2], h[0].real, h[0].imag))
    if not any(h[2] == cusp and h[1] > 0.999 for h in horoballs):
        raise GeometryError("no full-sized horoball of the infinity cusp")
    return {
        "manifold": name,
        "cusp_at_infinity": cusp,
        "num_cusps": dev.num_cusps,
        "meridian": [m.real, m.imag],
        "longitude": [l.real, l.imag],
        "cusp_volume": area / 2.0,
        "export_cutoff": export_cutoff,
        "horoballs": [
            {"center": [h[0].real, h[0].imag], "diameter": h[1], "cusp": h[2]}
            for h in horoballs
        ],
    }


def maximal_cusp_volume(table, cusp):
    """Volume of the maximal neighbourhood of one cusp, maximized alone."""
    dev = Development(table, cusp, 0.03)
    t = dev.maximize()
    a, b = dev.basis
    area = abs((a.conjugate() * b).imag) * t[cusp] ** 2
    return area / 2.0
