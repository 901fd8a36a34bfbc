"""Decoder for Burton-style isomorphism signatures of 3-manifold
triangulations.

A signature packs, base64-style, the simplex count, a run of 2-bit facet
actions (boundary / join new simplex / join earlier simplex), and for each
"join earlier" action a destination simplex and an S4 permutation index.
Only the small form (fewer than 63 simplices) is supported, which covers
every census signature we handle.
"""

from itertools import permutations

SIGCHARS = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789+-"
_VAL = {c: i for i, c in enumerate(SIGCHARS)}

# Permutation characters index S4 in lexicographic order of image tuples.
_S4 = tuple(permutations(range(4)))


class SigError(ValueError):
    pass


def _perm_inverse(p):
    inv = [0, 0, 0, 0]
    for a in range(4):
        inv[p[a]] = a
    return tuple(inv)


class _BitStream:
    """2-bit facet-action values, three per character."""

    def __init__(self, chars):
        self.chars = chars
        self.pos = 0
        self.buf = []

    def next(self):
        if not self.buf:
            if self.pos >= len(self.chars):
                raise SigError("signature truncated in facet actions")
            v = _VAL[self.chars[self.pos]]
            self.pos += 1
            self.buf = [v & 3, (v >> 2) & 3, (v >> 4) & 3]
        return self.buf.pop(0)


def decode(sig):
    """Decode a signature to a gluing table [[(target, perm) x4] x n].

    The table uses the same convention as the gluing-table JSON schema:
    perm maps vertices of the source simplex to vertices of the target and
    perm[j] is the glued facet of the target.
    """
    sig = sig.strip()
    if not sig or any(c not in _VAL for c in sig):
        raise SigError("signature contains invalid characters")
    n = _VAL[sig[0]]
    if n >= 63:
        raise SigError("large-form signatures (>= 63 simplices) unsupported")
    if n == 0:
        raise SigError("empty triangulation")

    # The action run is delimited by facet accounting: a boundary facet
    # covers one facet, a join covers both of its sides.
    actions = _BitStream(sig[1:])
    plan = []
    facets = 0
    while facets < 4 * n:
        t = actions.next()
        plan.append(t)
        if t == 0:
            raise SigError("boundary facet in a cusped-census signature")
        elif t in (1, 2):
            facets += 2
        else:
            raise SigError("unsupported facet action 3")
    pos = 1 + actions.pos
    need = sum(1 for t in plan if t == 2)
    if len(sig) != pos + 2 * need:
        raise SigError("signature length mismatch")
    dests = [_VAL[c] for c in sig[pos:pos + need]]
    perms = [_S4[_VAL[c]] for c in sig[pos + need:]]

    joins = {}
    used = 1
    step = 0
    join_idx = 0
    for s in range(n):
        for f in range(4):
            if (s, f) in joins:
                continue
            if step >= len(plan):
                raise SigError("signature truncated in facet actions")
            t = plan[step]
            step += 1
            if t == 1:
                if used >= n:
                    raise SigError("too many new simplices")
                d = used
                used += 1
                joins[(s, f)] = (d, (0, 1, 2, 3))
                joins[(d, f)] = (s, (0, 1, 2, 3))
            else:
                d = dests[join_idx]
                perm = perms[join_idx]
                join_idx += 1
                if d >= n:
                    raise SigError("destination simplex out of range")
                back = joins.get((d, perm[f]))
                if back is not None:
                    raise SigError("facet joined twice")
                joins[(s, f)] = (d, perm)
                joins[(d, perm[f])] = (s, _perm_inverse(perm))
    if used != n or step != len(plan):
        raise SigError("signature does not describe %d simplices" % n)

    table = []
    for s in range(n):
        row = []
        for f in range(4):
            j = joins.get((s, f))
            if j is None:
                raise SigError("unglued facet (%d, %d)" % (s, f))
            row.append(j)
        table.append(row)
    _check_involution(table)
    return table


def _check_involution(table):
    for s, row in enumerate(table):
        for f, (d, perm) in enumerate(row):
            d2, perm2 = table[d][perm[f]]
            if d2 != s or perm2 != _perm_inverse(perm):
                raise SigError("gluing table fails the involution check")


def gluing_json(sig, name):
    """Gluing-table JSON document for a signature."""
    table = decode(sig)
    return {
        "name": name,
        "tets": len(table),
        "gluings": [[[d, list(p)] for d, p in row] for row in table],
    }
