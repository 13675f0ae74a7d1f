"""Frozen values read off the worked example's drawings."""

# directed arcs drawn in the worked example (owner -> nearest site of a cone)
EXAMPLE_ARCS = frozenset([
    (0, 1), (0, 6), (0, 13), (1, 0), (1, 14), (1, 18), (1, 19), (2, 3), (2, 5), (2, 10), (2, 15), (3, 9),
    (3, 12), (3, 15), (4, 11), (4, 14), (4, 20), (4, 22), (5, 2), (5, 10), (5, 19), (5, 24), (6, 10),
    (6, 12), (7, 3), (7, 9), (7, 15), (7, 17), (8, 13), (8, 14), (8, 25), (8, 28), (9, 11), (9, 17),
    (10, 5), (10, 6), (10, 12), (10, 21), (11, 4), (11, 26), (11, 27), (12, 2), (12, 3), (12, 6), (13, 0),
    (13, 1), (13, 28), (14, 4), (14, 13), (14, 23), (14, 25), (15, 2), (15, 5), (15, 7), (15, 22), (16, 1),
    (16, 5), (16, 18), (16, 24), (17, 4), (17, 7), (17, 9), (17, 22), (18, 1), (18, 16), (18, 22), (18, 23),
    (19, 0), (19, 1), (19, 16), (19, 21), (20, 4), (20, 9), (20, 11), (20, 17), (21, 0), (21, 5), (21, 6),
    (21, 10), (22, 4), (22, 15), (22, 17), (22, 24), (23, 1), (23, 14), (23, 18), (23, 22), (24, 5),
    (24, 15), (24, 16), (24, 18), (25, 8), (25, 14), (25, 26), (25, 28), (26, 4), (26, 11), (26, 25),
    (26, 27), (27, 11), (27, 28), (28, 26), (28, 27),
])

# per-node cone charges (cones 0..3) printed next to each node of the worked example
H8_CHARGES = (
    "1110 1121 0211 0111 1111 1112 0110 1011 1101 0001 1111 1011 0121 1010 1112 "
    "1111 1111 1101 1111 2110 1101 0102 1110 1011 1111 1101 0111 1001 1100"
).split()
H4_CHARGES = (
    "1110 1111 0111 0111 1111 1111 0110 1011 1101 0001 1111 1011 0111 1010 1110 "
    "1111 0111 1101 1111 1110 1101 0101 1110 1010 1111 1101 0111 1001 1100"
).split()

# start-of-odd-chain anchors named in the drawing's description, as (owner, target)
START_OF_ODD = {(2, 10), (3, 15), (13, 1), (17, 4), (21, 5), (22, 24)}

# triangulation edges that are not Yao edges (dashed in the drawing)
NON_YAO = {(4, 23), (14, 26), (7, 22)}
