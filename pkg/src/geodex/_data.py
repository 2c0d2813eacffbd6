"""Embedded data: no construction ever reads from disk or the network."""

# Generator polynomial of the binary cyclic [23,12,7] Golay code,
# coefficients of x^0..x^11:  1 + x^2 + x^4 + x^5 + x^6 + x^10 + x^11.
GOLAY_POLY = (1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 1, 1)

# Wells graph on 32 vertices: a double cover of the folded 5-cube (Clebsch
# graph on 0..15) lifted along an edge signing that makes every 4-cycle
# unbalanced.  Vertex v + 16*s is copy s of Clebsch vertex v.
WELLS_EDGES = (
    (0, 1), (0, 2), (0, 4), (0, 8), (0, 15), (1, 3), (1, 5), (1, 9),
    (1, 14), (2, 6), (2, 10), (2, 13), (2, 19), (3, 7), (3, 11), (3, 12),
    (3, 18), (4, 12), (4, 21), (4, 22), (4, 27), (5, 13), (5, 20), (5, 23),
    (5, 26), (6, 7), (6, 9), (6, 20), (6, 30), (7, 8), (7, 21), (7, 31),
    (8, 25), (8, 26), (8, 28), (9, 24), (9, 27), (9, 29), (10, 11), (10, 14),
    (10, 21), (10, 24), (11, 15), (11, 20), (11, 25), (12, 13), (12, 24), (12, 30),
    (13, 25), (13, 31), (14, 22), (14, 28), (14, 31), (15, 23), (15, 29), (15, 30),
    (16, 17), (16, 18), (16, 20), (16, 24), (16, 31), (17, 19), (17, 21), (17, 25),
    (17, 30), (18, 22), (18, 26), (18, 29), (19, 23), (19, 27), (19, 28), (20, 28),
    (21, 29), (22, 23), (22, 25), (23, 24), (26, 27), (26, 30), (27, 31), (28, 29),
)
