"""Goeritz matrices of the worked obstruction cases, with knot determinants.

Two printed matrices carry typos and are entered corrected: the last row of
10_19 is made to agree with its last column, and 10_46 gains the link
e1-e6 that its block-diagonal print drops (the print has det 55).
"""

PRINTED_FORMS = {
    "-10_9": ([[-7, 1, 0, 1], [1, -2, 1, 0], [0, 1, -2, 1], [1, 0, 1, -3]], 39),
    "-10_18": ([[-5, 1, 0, 0], [1, -3, 1, 0], [0, 1, -3, 2], [0, 0, 2, -3]], 55),
    "-10_84": ([[-3, 2, 0, 0, 0], [2, -3, 1, 0, 0], [0, 1, -3, 1, 1],
                [0, 0, 1, -3, 1], [0, 0, 1, 1, -4]], 87),
    "-10_95": ([[-2, 1, 0, 0, 0], [1, -4, 2, 1, 0], [0, 2, -4, 1, 0],
                [0, 1, 1, -3, 1], [0, 0, 0, 1, -3]], 91),
    "-10_113": ([[-3, 1, 0, 0, 0], [1, -3, 1, 1, 0], [0, 1, -4, 1, 1],
                 [0, 1, 1, -3, 1], [0, 0, 1, 1, -3]], 111),
    "10_2": ([[-3, 1, 0, 0, 0, 0, 0, 1], [1, -3, 1, 0, 0, 0, 0, 0],
              [0, 1, -2, 1, 0, 0, 0, 0], [0, 0, 1, -2, 1, 0, 0, 0],
              [0, 0, 0, 1, -2, 1, 0, 0], [0, 0, 0, 0, 1, -2, 1, 0],
              [0, 0, 0, 0, 0, 1, -2, 1], [1, 0, 0, 0, 0, 0, 1, -2]], 23),
    "10_19": ([[-2, 1, 0, 0, 0, 0, 0], [1, -2, 1, 0, 0, 0, 0],
               [0, 1, -2, 1, 0, 0, 0], [0, 0, 1, -3, 1, 0, 0],
               [0, 0, 0, 1, -3, 1, 0], [0, 0, 0, 0, 1, -2, 1],
               [0, 0, 0, 0, 0, 1, -2]], 51),
    "10_36": ([[-2, 0, 0, 1], [0, -2, 1, 0], [0, 1, -3, 1], [1, 0, 1, -6]], 51),
    "10_46": ([[-2, 1, 0, 0, 0, 1, 0, 0], [1, -2, 1, 0, 0, 0, 0, 0],
               [0, 1, -2, 1, 0, 0, 0, 0], [0, 0, 1, -2, 0, 0, 0, 0],
               [0, 0, 0, 0, -2, 1, 0, 0], [1, 0, 0, 0, 1, -3, 1, 0],
               [0, 0, 0, 0, 0, 1, -2, 1], [0, 0, 0, 0, 0, 0, 1, -2]], 31),
    "10_112": ([[-3, 1, 1, 0], [1, -3, 0, 1], [1, 0, -3, 1], [0, 1, 1, -5]], 87),
    "-10_33": ([[-2, 1, 0, 0, 0], [1, -2, 1, 0, 0], [0, 1, -3, 1, 0],
                [0, 0, 1, -3, 1], [0, 0, 0, 1, -4]], 65),
    "10_33": ([[-4, 1, 0, 0, 0], [1, -3, 1, 0, 0], [0, 1, -3, 1, 0],
               [0, 0, 1, -2, 1], [0, 0, 0, 1, -2]], 65),
    "10_58": ([[-2, 1, 0, 0], [1, -5, 2, 0], [0, 2, -5, 1], [0, 0, 1, -2]], 65),
    "-10_58": ([[-4, 2, 0, 0, 1, 0], [2, -3, 1, 0, 0, 0], [0, 1, -2, 1, 0, 0],
                [0, 0, 1, -3, 1, 1], [1, 0, 0, 1, -2, 0], [0, 0, 0, 1, 0, -3]], 65),
}
