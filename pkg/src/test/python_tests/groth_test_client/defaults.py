# Copyright (c) Microsoft Corporation. All rights reserved.
# Licensed under the MIT License.
"""
Worked examples used as golden values across the tests.
"""

# G_1 * G_1
MULT_1_1 = {(1, 1): 1, (2,): 1, (2, 1): -1}
MULT_1_1_TEXT = "G[2] + G[1,1] - G[2,1]"

# G_{2,1} * G_3
MULT_21_3 = {
    (5, 1): 1,
    (4, 1, 1): 1,
    (4, 2): 1,
    (3, 2, 1): 1,
    (5, 1, 1): -1,
    (4, 2, 1): -2,
    (5, 2): -1,
    (5, 2, 1): 1,
}

# Summands for G_{2,1} * G_3 by lattice point: (exponents, d-factors).
PIERI_21_3_FRESH = {
    (0, 0): ((2, 1, 3), {1, 2}),
    (0, 1): ((2, 2, 2), {1, 2}),
    (0, 2): ((2, 3, 1), {1, 2}),
    (0, 3): ((2, 4, 0), {1}),
    (1, 0): ((3, 1, 2), {1, 2}),
    (1, 1): ((3, 2, 1), {1, 2}),
    (1, 2): ((3, 3, 0), {1}),
    (2, 0): ((4, 1, 1), {1, 2}),
    (2, 1): ((4, 2, 0), {1}),
    (3, 0): ((5, 1, 0), set()),
}

PIERI_21_3_GOOD = {
    (1, 1): ((3, 2, 1), {1}),
    (2, 0): ((4, 1, 1), {1, 2}),
    (2, 1): ((4, 2, 0), {1}),
    (3, 0): ((5, 1, 0), set()),
}

# G_{5,3,2,1} expansion of t^(5,3,2,1) d1 d2 d3
GOOD_5321 = {
    (5, 3, 2, 1): 1,
    (6, 3, 2, 1): -1,
    (5, 4, 2, 1): -1,
    (5, 3, 3, 1): -1,
    (6, 4, 2, 1): 1,
    (6, 3, 3, 1): 1,
    (5, 4, 3, 1): 1,
    (6, 4, 3, 1): -1,
}

# G_2(x1, x2, x3) in the Schur basis
SCHUR_2_3 = {(2,): 1, (2, 1): -1, (2, 1, 1): 1}
SCHUR_2_3_TEXT = "s[2] - s[2,1] + s[2,1,1]"

# Coproduct of G_1 as (left, right) -> coefficient
COMULT_1 = {((1,), ()): 1, ((), (1,)): 1, ((1,), (1,)): -1}
