"""Integer Smith normal form and the homology-link predicate.

A cusped manifold is a homology link complement exactly when H_1 is torsion
free of rank equal to the number of cusps, which we read off the invariant
factors of a presentation matrix.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple  # row-major, python ints

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(x) for x in self.entries))
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")

    @classmethod
    def from_json(cls, data):
        return cls(rows=int(data["rows"]), cols=int(data["cols"]),
                   entries=tuple(int(x) for x in data["entries"]))

    def to_json(self):
        # Entries that overflow 64 bits are serialised as strings.
        def enc(x):
            return x if -2**63 <= x < 2**63 else str(x)

        return {"rows": self.rows, "cols": self.cols,
                "entries": [enc(x) for x in self.entries]}

    @classmethod
    def from_rows(cls, rows):
        r = len(rows)
        c = len(rows[0]) if rows else 0
        return cls(rows=r, cols=c, entries=tuple(x for row in rows for x in row))

    def at(self, i, j):
        return self.entries[i * self.cols + j]

    def to_lists(self):
        return [list(self.entries[i * self.cols:(i + 1) * self.cols])
                for i in range(self.rows)]


@dataclass(frozen=True)
class HomologySummary:
    """Invariant factors: divisibility chain of torsion, then zeros."""

    divisors: tuple

    @property
    def rank(self):
        return sum(1 for d in self.divisors if d == 0)

    def to_json(self):
        return {"divisors": list(self.divisors), "rank": self.rank}


class _Worksheet:
    """Row/column operations on A mirrored into U and V (U A V invariant)."""

    def __init__(self, matrix):
        self.a = matrix.to_lists()
        self.r, self.c = matrix.rows, matrix.cols
        self.u = [[int(i == j) for j in range(self.r)] for i in range(self.r)]
        self.v = [[int(i == j) for j in range(self.c)] for i in range(self.c)]

    def swap_rows(self, i, j):
        if i != j:
            self.a[i], self.a[j] = self.a[j], self.a[i]
            self.u[i], self.u[j] = self.u[j], self.u[i]

    def swap_cols(self, i, j):
        if i != j:
            for row in self.a:
                row[i], row[j] = row[j], row[i]
            for row in self.v:
                row[i], row[j] = row[j], row[i]

    def add_row(self, dst, src, mult):
        if mult:
            self.a[dst] = [x + mult * y for x, y in zip(self.a[dst], self.a[src])]
            self.u[dst] = [x + mult * y for x, y in zip(self.u[dst], self.u[src])]

    def add_col(self, dst, src, mult):
        if mult:
            for row in self.a:
                row[dst] += mult * row[src]
            for row in self.v:
                row[dst] += mult * row[src]

    def negate_row(self, i):
        self.a[i] = [-x for x in self.a[i]]
        self.u[i] = [-x for x in self.u[i]]

    def min_pivot(self, t):
        pivot = None
        best = None
        for i in range(t, self.r):
            for j in range(t, self.c):
                x = abs(self.a[i][j])
                if x and (best is None or x < best):
                    pivot, best = (i, j), x
        return pivot

    def diagonalise_from(self, t):
        """Clear the trailing block so a is diagonal from position t on."""
        a = self.a
        while t < min(self.r, self.c):
            pivot = self.min_pivot(t)
            if pivot is None:
                return
            self.swap_rows(t, pivot[0])
            self.swap_cols(t, pivot[1])
            if a[t][t] < 0:
                self.negate_row(t)
            for i in range(t + 1, self.r):
                self.add_row(i, t, -(a[i][t] // a[t][t]))
            for j in range(t + 1, self.c):
                self.add_col(j, t, -(a[t][j] // a[t][t]))
            if any(a[i][t] for i in range(t + 1, self.r)) \
                    or any(a[t][j] for j in range(t + 1, self.c)):
                continue  # remainders survived; redo with a smaller pivot
            t += 1


def smith_normal_form(matrix):
    """Return (summary, U, V) with U * A * V diagonal.

    U and V are unimodular; the diagonal is nonnegative with a divisibility
    chain and zeros trailing.  Pivots of minimal absolute value limit entry
    growth; all arithmetic is python-int exact.
    """
    ws = _Worksheet(matrix)
    ws.diagonalise_from(0)
    m = min(ws.r, ws.c)
    # Adjacent entries violating the chain are folded together and the block
    # re-cleared; the re-clearing replaces d_t by gcd(d_t, d_{t+1}).
    t = 0
    while t + 1 < m:
        dt, dn = ws.a[t][t], ws.a[t + 1][t + 1]
        if dt != 0 and dn % dt != 0:
            ws.add_col(t, t + 1, 1)
            ws.diagonalise_from(t)
            t = 0
        else:
            t += 1
    divisors = tuple(ws.a[i][i] for i in range(m))
    return (HomologySummary(divisors),
            IntMatrix.from_rows(ws.u), IntMatrix.from_rows(ws.v))


def is_homology_link(summary, num_cusps):
    """True iff H_1 is torsion free of rank equal to the cusp count."""
    return all(d in (0, 1) for d in summary.divisors) \
        and summary.rank == num_cusps
