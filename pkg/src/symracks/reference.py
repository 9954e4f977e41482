"""Reference values used by the acceptance checks and the ``--compare`` option.

Group names follow :func:`symracks.groups.make_named_group`.
"""

# (group, order, good involutions of the conjugation quandle, |Z(G)|^k(G))
CONJ_TABLE = [
    ("S3", 6, 1, 1),
    ("D4", 8, 16, 32),
    ("Q8", 8, 16, 32),
    ("D5", 10, 1, 1),
    ("Dic3", 12, 8, 64),
    ("A4", 12, 1, 1),
    ("D6", 12, 8, 64),
    ("D7", 14, 1, 1),
    ("(Z2xZ2):Z4", 16, 2160, 1048576),
    ("Z4:Z4", 16, 2160, 1048576),
    ("M16", 16, 2160, 1048576),
    ("D8", 16, 32, 128),
    ("QD16", 16, 32, 128),
    ("Dic4", 16, 32, 128),
    ("D4xZ2", 16, 2160, 1048576),
    ("Q8xZ2", 16, 2160, 1048576),
    ("(Z4xZ2):Z2", 16, 2160, 1048576),
    ("D9", 18, 1, 1),
    ("S3xZ3", 18, 64, 19683),
    ("(Z3xZ3):Z2", 18, 1, 1),
    ("Dic5", 20, 16, 256),
    ("Z5:Z4", 20, 1, 1),
    ("D10", 20, 16, 256),
    ("Z7:Z3", 21, 1, 1),
    ("D11", 22, 1, 1),
]

# (group, order, good involutions of the core quandle, |T|^(number of orbits))
CORE_TABLE = [
    ("Z3", 3, 1, 1),
    ("Z4", 4, 4, 4),
    ("Z5", 5, 1, 1),
    ("S3", 6, 1, 1),
    ("Z6", 6, 2, 4),
    ("Z7", 7, 1, 1),
    ("Z8", 8, 4, 4),
    ("Z4xZ2", 8, 36, 256),
    ("D4", 8, 16, 32),
    ("Q8", 8, 16, 16),
    ("Z9", 9, 1, 1),
    ("Z3xZ3", 9, 1, 1),
    ("D5", 10, 1, 1),
    ("Z10", 10, 2, 4),
    ("Z11", 11, 1, 1),
    ("Dic3", 12, 8, 8),
    ("Z12", 12, 4, 4),
    ("A4", 12, 1, 1),
    ("D6", 12, 8, 64),
    ("Z6xZ2", 12, 10, 256),
    ("Z13", 13, 1, 1),
    ("D7", 14, 1, 1),
    ("Z14", 14, 2, 4),
    ("Z15", 15, 1, 1),
    ("Z16", 16, 4, 4),
    ("Z4xZ4", 16, 256, 256),
    ("(Z2xZ2):Z4", 16, 576, 4096),
    ("Z4:Z4", 16, 384, 1024),
    ("Z8xZ2", 16, 36, 256),
    ("M16", 16, 16, 16),
    ("D8", 16, 32, 32),
    ("QD16", 16, 32, 32),
    ("Dic4", 16, 32, 32),
    ("Z4xZ2xZ2", 16, 5776, 16777216),
    ("D4xZ2", 16, 2160, 1048576),
    ("Q8xZ2", 16, 1296, 65536),
    ("(Z4xZ2):Z2", 16, 256, 256),
    ("Z17", 17, 1, 1),
    ("D9", 18, 1, 1),
    ("Z18", 18, 2, 4),
    ("S3xZ3", 18, 1, 1),
    ("(Z3xZ3):Z2", 18, 1, 1),
    ("Z6xZ3", 18, 2, 4),
    ("Z19", 19, 1, 1),
    ("Dic5", 20, 16, 16),
    ("Z20", 20, 4, 4),
    ("Z5:Z4", 20, 1, 1),
    ("D10", 20, 16, 256),
    ("Z10xZ2", 20, 10, 256),
    ("Z7:Z3", 21, 1, 1),
    ("Z21", 21, 1, 1),
    ("D11", 22, 1, 1),
    ("Z22", 22, 2, 4),
    ("Z23", 23, 1, 1),
]

# unique class sizes of S_n, n = 5..9
CLASS_SIZES = {
    5: [20, 30],
    6: [40, 90, 120],
    7: [70, 210, 280, 420, 504, 630, 840],
    8: [112, 420, 1120, 1260, 1344, 1680, 2520, 3360, 4032, 5040],
    9: [168, 756, 2240, 2520, 3024, 3360, 7560, 9072, 10080, 11340,
        15120, 18144, 20160, 25920, 30240, 45360],
}

# counts for orders 0..8
SYMMETRIC_CENSUS = {
    "rack": [1, 1, 4, 9, 42, 154, 1064, 6678, 73780],
    "quandle": [1, 1, 2, 5, 13, 44, 187, 937, 6459],
    "kei": [1, 1, 2, 5, 13, 42, 180, 906, 6317],
}

LEGENDRIAN_CENSUS = {
    "rack": [1, 1, 2, 6, 19, 74, 353, 2080, 16023],
    "medial_rack": [1, 1, 2, 6, 18, 68, 329, 1965, 15455],
    "quandle": [1, 1, 2, 5, 15, 54, 240, 1306, 9477],
    "medial_quandle": [1, 1, 2, 5, 14, 48, 219, 1207, 9042],
    "kei": [1, 1, 2, 5, 13, 42, 180, 906, 6317],
    "medial_kei": [1, 1, 2, 5, 12, 38, 168, 850, 6090],
}

# class size -> number of good involutions, for the nontrivial classes of SL(2,5)
SL25_GOOD_BY_CLASS_SIZE = {12: 1, 20: 1, 30: 2}
