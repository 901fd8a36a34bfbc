"""Built-in destination sequences of the two reference orbifolds.

Both sequences are fixed data of the classification pipeline: covers onto
O_(2,3,6),(2,2,2,2) (whose (2,3,6) cusp is rigid) certify hidden-symmetry
candidates, and O_{v0/3} is the smallest orientable two-cusped member of the
commensurability class used by the degree arguments.
"""

from .orbtri import DestinationSequence

# Two-cusped orbifold with one (2,3,6) cusp and one (2,2,2,2) cusp;
# ten tetrahedra.
DSEQ_236_2222 = DestinationSequence.from_list(
    [0, 0, 0, 1,
     2, 3, 4, 0,
     1, 5, 6, 2,
     6, 4, 1, 4,
     5, 1, 3, 3,
     4, 6, 2, 7,
     3, 2, 5, 8,
     8, 8, 9, 5,
     7, 9, 7, 6,
     9, 7, 8, 9],
    name="O_(2,3,6),(2,2,2,2)",
)

# The tetrahedra forming the (2,3,6) cusp of the sequence above.
RIGID_CUSP_236 = (0, 1, 3, 4)

# Orbifold of volume v0/3 with two cusps; four tetrahedra.
DSEQ_O4 = DestinationSequence.from_list(
    [0, 1, 1, 0,
     1, 0, 0, 2,
     3, 2, 2, 1,
     2, 3, 3, 3],
    name="O_v0/3",
)
