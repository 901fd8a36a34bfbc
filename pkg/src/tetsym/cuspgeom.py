"""
Horoball-packing symmetry tests on exported cusp diagrams.

A CuspDiagram is one cusp's maximal horoball packing seen from that cusp at
infinity: the translation lattice <m, l> (l real positive by convention),
the maximal cusp volume, and every horoball above the export cutoff with its
center, Euclidean diameter and owning cusp.

All tests share the same conventions: 0.005 distance tolerance in every
conditional, full-sized means diameter >= 0.9, and blockers (centers of
other cusps' horoballs) use diameter cutoff 0.1.  All arithmetic is plain
64-bit floating point.
"""

import cmath
import math
from dataclasses import dataclass, field

# Shared tolerances.  The 0.005 slack enters every distance conditional;
# the diameter tolerance for "same size" is separate and looser.
TOLERANCE = 0.005
FULLSIZE_CUTOFF = 0.9
HDIFF_CUTOFF = 0.1
DIAMETER_TOLERANCE = 0.01

_DEDUP = 1e-9  # centers closer than this are the same exported ball


@dataclass(frozen=True)
class Horoball:
    center: complex
    diameter: float
    cusp: int


@dataclass(frozen=True)
class CuspDiagram:
    manifold: str
    cusp_at_infinity: int
    num_cusps: int
    meridian: complex
    longitude: complex
    cusp_volume: float
    export_cutoff: float
    horoballs: tuple

    @classmethod
    def from_json(cls, data):
        balls = tuple(
            Horoball(center=complex(h["center"][0], h["center"][1]),
                     diameter=float(h["diameter"]), cusp=int(h["cusp"]))
            for h in data["horoballs"]
        )
        diag = cls(
            manifold=data["manifold"],
            cusp_at_infinity=int(data["cusp_at_infinity"]),
            num_cusps=int(data["num_cusps"]),
            meridian=complex(data["meridian"][0], data["meridian"][1]),
            longitude=complex(data["longitude"][0], data["longitude"][1]),
            cusp_volume=float(data["cusp_volume"]),
            export_cutoff=float(data["export_cutoff"]),
            horoballs=balls,
        )
        diag.validate()
        return diag

    def to_json(self):
        return {
            "manifold": self.manifold,
            "cusp_at_infinity": self.cusp_at_infinity,
            "num_cusps": self.num_cusps,
            "meridian": [self.meridian.real, self.meridian.imag],
            "longitude": [self.longitude.real, self.longitude.imag],
            "cusp_volume": self.cusp_volume,
            "export_cutoff": self.export_cutoff,
            "horoballs": [
                {"center": [h.center.real, h.center.imag],
                 "diameter": h.diameter, "cusp": h.cusp}
                for h in self.horoballs
            ],
        }

    def validate(self, fullsize_cutoff=FULLSIZE_CUTOFF):
        area = abs((self.meridian.conjugate() * self.longitude).imag)
        if area <= 0:
            raise ValueError("meridian and longitude are linearly dependent")
        if abs(self.longitude.imag) > 1e-12 or self.longitude.real <= 0:
            raise ValueError("longitude must be real and positive")
        if not self.horoballs:
            raise ValueError("no horoballs exported")
        for h in self.horoballs:
            if not 0 < h.diameter <= 1 + 1e-9:
                raise ValueError("horoball diameter %g out of (0, 1]" % h.diameter)
        if not any(h.cusp == self.cusp_at_infinity
                   and h.diameter >= fullsize_cutoff for h in self.horoballs):
            raise ValueError("no full-sized horoball of the infinity cusp")
        if abs(area - 2.0 * self.cusp_volume) > 1e-4 * area:
            raise ValueError(
                "parallelogram area %.8g is not twice the cusp volume %.8g"
                % (area, self.cusp_volume)
            )

    # Real coordinates of z in the (m, l) basis.
    def lattice_coords(self, z):
        a = z.imag / self.meridian.imag
        b = (z.real - a * self.meridian.real) / self.longitude.real
        return a, b

    def in_parallelogram(self, z, slack=1e-9):
        a, b = self.lattice_coords(z)
        return -slack <= a < 1 - slack and -slack <= b < 1 - slack

    def reduce(self, z):
        """Translate z by the lattice into the fundamental parallelogram."""
        a, b = self.lattice_coords(z)
        return z - math.floor(a + 1e-12) * self.meridian \
                 - math.floor(b + 1e-12) * self.longitude


class CenterSet:
    """A finite planar point set with a fast radius query."""

    def __init__(self, points, tolerance=TOLERANCE):
        pts = []
        seen = set()
        for p in points:
            key = (round(p.real / _DEDUP), round(p.imag / _DEDUP))
            if key not in seen:
                seen.add(key)
                pts.append(p)
        self.points = tuple(pts)
        self.tolerance = tolerance
        self._cell = max(tolerance, _DEDUP)
        self._grid = {}
        for p in self.points:
            key = (math.floor(p.real / self._cell), math.floor(p.imag / self._cell))
            self._grid.setdefault(key, []).append(p)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def includes(self, x, tol=None):
        """True iff some point lies within tol (default: set tolerance) of x."""
        tol = self.tolerance if tol is None else tol
        reach = int(math.ceil(tol / self._cell))
        cx = math.floor(x.real / self._cell)
        cy = math.floor(x.imag / self._cell)
        for dx in range(-reach, reach + 1):
            for dy in range(-reach, reach + 1):
                for p in self._grid.get((cx + dx, cy + dy), ()):
                    if abs(x - p) < tol:
                        return True
        return False


def include(x, centers, tol=TOLERANCE):
    """Membership up to tolerance: is x within 0.005 of the set?"""
    if isinstance(centers, CenterSet):
        return centers.includes(x, tol)
    return any(abs(x - y) < tol for y in centers)


def rotate3(p, y, direction):
    """Order-3 rotation of y about p, counter-clockwise for direction=+1."""
    return cmath.exp(direction * 2j * math.pi / 3) * (y - p) + p


def rotate(p, y, order, direction=1):
    return cmath.exp(direction * 2j * math.pi / order) * (y - p) + p


def lattice_constants(diag):
    """(theta, d, area): angle between m and l, reach bound, cell area."""
    m, l = diag.meridian, diag.longitude
    area = abs((m.conjugate() * l).imag)
    cos_theta = (m.real * l.real + m.imag * l.imag) / (abs(m) * abs(l))
    cos_theta = max(-1.0, min(1.0, cos_theta))
    theta = math.acos(cos_theta)
    if math.sin(theta) == 0:
        raise ValueError("degenerate lattice")
    d = max(abs(m), abs(l), abs(m + l), abs(m - l))
    return theta, d, area


def coverage_counts(x, diag):
    """The translation counts k_h(x), k(x), k_l(x) of the coverage bound."""
    theta, d, _ = lattice_constants(diag)
    m, l = abs(diag.meridian), abs(diag.longitude)
    # cosine straight from the dot product: acos followed by cos would turn
    # an exactly perpendicular basis into a nonzero count
    cos_theta = (diag.meridian.real * diag.longitude.real
                 + diag.meridian.imag * diag.longitude.imag) / (m * l)
    reach = (x + 1) * d + 1
    k_h = math.ceil(reach / (m * abs(math.sin(theta))))
    k = math.ceil(k_h * m * abs(cos_theta) / l)
    k_l = math.ceil(reach / l)
    return k_h, k, k_l


def full_sized_centers(diag, fullsize_cutoff=FULLSIZE_CUTOFF):
    """C_P: centers of full-sized infinity-cusp horoballs in the parallelogram."""
    pts = [h.center for h in diag.horoballs
           if h.cusp == diag.cusp_at_infinity
           and h.diameter >= fullsize_cutoff
           and diag.in_parallelogram(h.center)]
    if not pts:
        raise ValueError("no full-sized horoball center in the parallelogram")
    return CenterSet(sorted(pts, key=lambda p: (p.real, p.imag)))


def _translates(diag, base_points, k_h, k_q):
    m, l = diag.meridian, diag.longitude
    pts = []
    for p in range(-k_h, k_h + 1):
        for q in range(-k_q, k_q + 1):
            shift = p * m + q * l
            for c in base_points:
                pts.append(c + shift)
    return pts


def translated_centers(diag, x, fullsize_cutoff=FULLSIZE_CUTOFF):
    """C_P(x): the lattice translates of C_P prescribed by the coverage bound."""
    k_h, k, k_l = coverage_counts(x, diag)
    base = full_sized_centers(diag, fullsize_cutoff)
    return CenterSet(_translates(diag, base.points, k_h, k + k_l))


def hdiff_centers(diag, x=4.0 / 7.0, hdiff_cutoff=HDIFF_CUTOFF):
    """H_diff: translated centers of large non-infinity-cusp horoballs."""
    k_h, k, k_l = coverage_counts(x, diag)
    base = [h.center for h in diag.horoballs
            if h.cusp != diag.cusp_at_infinity
            and h.diameter >= hdiff_cutoff
            and diag.in_parallelogram(h.center)]
    return CenterSet(_translates(diag, base, k_h, k + k_l))


def _c0(diag, fullsize_cutoff):
    # "First" full-sized center: lexicographically smallest (Re, Im).
    return full_sized_centers(diag, fullsize_cutoff).points[0]


def _centroids(diag, c0, source, hdiff, side_bound, centroid_bound, tol):
    """Candidate rotation centers from near-equilateral pairs about c0.

    Pairs x, y from the source set at equal distance from c0 (within tol),
    subtending an angle of cos +-1/2, with side below side_bound, whose
    centroid stays within centroid_bound of c0 and off the blocker set.
    """
    pts = list(source)
    near = [x for x in pts if tol < abs(x - c0) < side_bound]
    out = []
    for a, x in enumerate(near):
        rx = abs(x - c0)
        for y in near[a + 1:]:
            if abs(rx - abs(y - c0)) >= tol:
                continue
            u, v = x - c0, y - c0
            cosang = abs(u.real * v.real + u.imag * v.imag) / (abs(u) * abs(v))
            if abs(cosang - 0.5) >= tol:
                continue
            g = (x + y + c0) / 3.0
            if abs(g - c0) >= centroid_bound:
                continue
            if hdiff.includes(g, tol):
                continue
            out.append(g)
    return CenterSet(out, tolerance=tol)


def centroid_strong(diag, tol=TOLERANCE, fullsize_cutoff=FULLSIZE_CUTOFF,
                    hdiff_cutoff=HDIFF_CUTOFF, c0=None):
    """Candidate order-3 centers for the strong (two-centroid) test."""
    _, d, _ = lattice_constants(diag)
    if c0 is None:
        c0 = _c0(diag, fullsize_cutoff)
    source = translated_centers(diag, 4.0 / 7.0, fullsize_cutoff)
    hdiff = hdiff_centers(diag, 4.0 / 7.0, hdiff_cutoff)
    side = math.sqrt(diag.cusp_volume) / 3.0 ** 0.25 + tol
    return _centroids(diag, c0, source, hdiff, side, d / 3.0 + tol, tol)


def _rotations_preserve(center, source, target, tol):
    for y in source:
        if not target.includes(rotate3(center, y, +1), tol):
            return False
        if not target.includes(rotate3(center, y, -1), tol):
            return False
    return True


def free_rot_strong(diag, tol=TOLERANCE, fullsize_cutoff=FULLSIZE_CUTOFF,
                    hdiff_cutoff=HDIFF_CUTOFF, c0=None):
    """Strong test: can two distinct near-c0 order-3 centers survive?

    Returns True when at least two pairwise non-included candidates rotate
    C_P(4/7) into the enlarged set C_P(5/3 + k_h + k + k_l); False means the
    packing cannot carry the wallpaper symmetries required for an infinite
    hidden-symmetry family over this cusp.
    """
    if c0 is None:
        c0 = _c0(diag, fullsize_cutoff)
    k_h, k, k_l = coverage_counts(4.0 / 7.0, diag)
    source = translated_centers(diag, 4.0 / 7.0, fullsize_cutoff)
    target = translated_centers(diag, 5.0 / 3.0 + k_h + k + k_l, fullsize_cutoff)
    survivors = []
    for cand in centroid_strong(diag, tol, fullsize_cutoff, hdiff_cutoff, c0):
        if include(cand, survivors, tol):
            continue
        if _rotations_preserve(cand, source, target, tol):
            survivors.append(cand)
            if len(survivors) > 1:
                return True
    return False


def free_rot_weak(diag, tol=TOLERANCE, fullsize_cutoff=FULLSIZE_CUTOFF,
                  hdiff_cutoff=HDIFF_CUTOFF, c0=None):
    """Single-centroid variant: one near-c0 order-3 center suffices."""
    _, d, _ = lattice_constants(diag)
    if c0 is None:
        c0 = _c0(diag, fullsize_cutoff)
    k_h, k, k_l = coverage_counts(1.0 / 3.0, diag)
    source = translated_centers(diag, 1.0 / 3.0, fullsize_cutoff)
    target = translated_centers(diag, 7.0 / 5.0 + k_h + k + k_l, fullsize_cutoff)
    hdiff = hdiff_centers(diag, 1.0 / 3.0, hdiff_cutoff)
    side = math.sqrt(diag.cusp_volume) / 3.0 ** 0.75 + tol
    candidates = [c0] + list(
        _centroids(diag, c0, source, hdiff, side, d / 5.0 + tol, tol)
    )
    for cand in candidates:
        if abs(cand - c0) >= d / 5.0 + (tol if cand is not c0 else 1):
            continue
        if cand is not c0 and hdiff.includes(cand, tol):
            continue
        if _rotations_preserve(cand, source, target, tol):
            return True
    return False


def full_packing_rotation_test(diag, center, order, tol=TOLERANCE,
                               diameter_tol=DIAMETER_TOLERANCE):
    """Does rotation about center by 2 pi/order preserve the whole packing?

    Every exported horoball safely above the export cutoff must map, modulo
    the translation lattice, onto an exported horoball of the same diameter.
    Cusp labels only matter up to the infinity-cusp/other split: a packing
    symmetry must keep the infinity cusp's horoballs among themselves, but
    it is allowed to permute the remaining cusps (their parabolic fixed
    points stay collectively invariant, which is all the order-6 axis
    argument needs).  Balls within the tolerance band of the cutoff are
    exempt: their images may have fallen below the export cutoff.
    """
    if order not in (3, 6):
        raise ValueError("rotation order must be 3 or 6")
    floor_diam = diag.export_cutoff / (1.0 - diameter_tol)
    by_class = {}
    for h in diag.horoballs:
        by_class.setdefault(h.cusp == diag.cusp_at_infinity, []).append(h)
    for h in diag.horoballs:
        if h.diameter < floor_diam:
            continue
        image = rotate(center, h.center, order)
        matched = False
        for other in by_class.get(h.cusp == diag.cusp_at_infinity, ()):
            if abs(other.diameter - h.diameter) >= diameter_tol:
                continue
            if _lattice_distance(diag, image - other.center) < tol:
                matched = True
                break
        if not matched:
            return False
    return True


def _lattice_distance(diag, z):
    """Distance from z to the nearest point of the lattice <m, l>."""
    a, b = diag.lattice_coords(z)
    best = None
    for da in (math.floor(a), math.floor(a) + 1):
        for db in (math.floor(b), math.floor(b) + 1):
            w = z - da * diag.meridian - db * diag.longitude
            dist = abs(w)
            if best is None or dist < best:
                best = dist
    return best


def find_bad_order6_axes(diag, tol=TOLERANCE, hdiff_cutoff=HDIFF_CUTOFF,
                         diameter_tol=DIAMETER_TOLERANCE):
    """Order-6 axes at large non-infinity horocenters in the parallelogram.

    These are exactly the configurations that rule a cusp out: the full
    packing has an order-6 rotation about the center of some other cusp's
    horoball, which is incompatible with that cusp staying unfilled.
    """
    axes = []
    for h in diag.horoballs:
        if h.cusp == diag.cusp_at_infinity:
            continue
        if h.diameter < hdiff_cutoff:
            continue
        if not diag.in_parallelogram(h.center):
            continue
        if full_packing_rotation_test(diag, h.center, 6, tol, diameter_tol):
            axes.append((h.center, h.cusp))
    return axes
