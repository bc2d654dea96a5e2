"""Published coefficient lists and weights, kept apart from the derivation.

Nothing in the derivation path imports this module; it is read only by
comparison and reporting code.  Formulas are transcribed as printed.
"""

from __future__ import annotations

from .exact import RationalFn

r = RationalFn.variable("r")
_D = 3 * r ** 2 - 11 * r + 9

BOUND = 3 * (r - 1) * (r ** 2 - 3 * r + 3) / r ** 3
K4_TURAN_DENSITY = (r ** 3 - 6 * r ** 2 + 11 * r - 6) / r ** 3


def _form(entries: dict) -> list[RationalFn]:
    return [RationalFn(entries.get(i, 0)) for i in range(11)]


PUBLISHED_Q = {
    0: [K4_TURAN_DENSITY] * 10 + [(-6 * r ** 2 + 11 * r - 6) / r ** 3],
    1: _form({0: 6 * r ** 2 - 12 * r + 6, 1: r ** 2 - 2 * r + 1, 2: 1 - r, 3: 3 - 3 * r,
              8: 2, 9: 1}),
    2: _form({3: 3, 7: 1, 6: -1, 8: -4}),
    3: _form({3: 3 * r ** 2 - 12 * r + 12, 6: r ** 2 - 6 * r + 12, 7: r ** 2 - 8 * r + 12,
              8: 4 * r ** 2 - 16 * r + 16, 9: 20 - 8 * r, 10: 24}),
}

PUBLISHED_WEIGHTS = {
    0: 3 * (2 * r - 3) ** 2 / (2 * _D),
    1: (2 * r ** 2 - 6 * r + 3) / (4 * r ** 3 * _D),
    2: (8 * r ** 2 - 28 * r + 21) / (16 * _D),
    3: (8 * r ** 2 - 12 * r + 3) / (16 * r ** 2 * _D),
}

PUBLISHED_C = {
    0: BOUND, 3: BOUND, 8: BOUND, 9: BOUND, 10: BOUND,
    1: (26 * r ** 5 - 226 * r ** 4 + 767 * r ** 3 - 1272 * r ** 2 + 1029 * r - 324)
    / (4 * r ** 3 * _D),
    2: (24 * r ** 5 - 218 * r ** 4 + 758 * r ** 3 - 1269 * r ** 2 + 1029 * r - 324)
    / (4 * r ** 3 * _D),
    4: 3 * (2 * r - 3) ** 2 * (r ** 3 - 6 * r ** 2 + 11 * r - 6)
    / (r ** 3 * (6 * r ** 2 - 22 * r + 18)),
    6: (48 * r ** 5 - 448 * r ** 4 + 1575 * r ** 3 - 2601 * r ** 2 + 2070 * r - 648)
    / (8 * r ** 3 * _D),
    7: (28 * r ** 5 - 242 * r ** 4 + 804 * r ** 3 - 1302 * r ** 2 + 1035 * r - 324)
    / (4 * r ** 3 * _D),
}
PUBLISHED_C[5] = PUBLISHED_C[4]

PUBLISHED_TIGHT_SET = (0, 3, 8, 9, 10)
