"""Published values used by the tests: combined +-A table columns and the
cosine expansions of normalized traces, keyed by steps = 2n."""

# steps -> [C(0), C(1)+C(-1), C(2)+C(-2), ...]
HONEYCOMB_TABLE = {
    2: [3],
    4: [15],
    6: [87, 6],
    8: [543, 96],
    10: [3543, 1080, 30],
    12: [23859, 10560, 726, 24],
    14: [164769, 96096, 11130, 798, 42],
}
HONEYCOMB_TOTALS = {2: 3, 4: 15, 6: 93, 8: 639, 10: 4653, 12: 35169, 14: 272835}

SQUARE_TABLE = {
    2: [4],
    4: [28, 8],
    6: [232, 144, 24],
    8: [2156, 2016, 616, 96, 16],
    10: [21944, 26320, 11080, 3120, 840, 160, 40],
}
SQUARE_TOTALS = {2: 4, 4: 36, 6: 400, 8: 4900, 10: 63504}

# (1/q) tr = prefactor * (a0 + a1 cos(2 pi p/q) + a2 cos(4 pi p/q) + ...)
# keyed by the power of H_q (honeycomb) or H (square)
HONEYCOMB_TRACES = {
    1: (3, [1]),
    2: (3, [5]),
    3: (3, [29, 2]),
    4: (3, [181, 32]),
    5: (3, [1181, 360, 10]),
    6: (3, [7953, 3520, 242, 8]),
    7: (3, [54923, 32032, 3710, 266, 14]),
}
SQUARE_TRACES = {
    2: (4, [1]),
    4: (4, [7, 2]),
    6: (4, [58, 36, 6]),
    8: (4, [539, 504, 154, 24, 4]),
    10: (4, [5486, 6580, 2770, 780, 210, 40, 10]),
}


def combined_column(dist):
    rows = dist.combined()
    return [rows.get(a, 0) for a in range(max(rows) + 1)]


def cosine_value(prefactor, coeffs, p, q):
    import math

    return prefactor * sum(c * math.cos(2 * math.pi * a * p / q) for a, c in enumerate(coeffs))
