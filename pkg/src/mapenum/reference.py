"""Published reference values used by ``verify`` and the test-suite.

Tables are in the published normalization value / (j * n!) with n = 2m
vertices, m = 1, 2, ...  Rationals are stored as ``p/q`` strings.
"""
from __future__ import annotations

from fractions import Fraction

# (valence, genus, mode) -> published list
PUBLISHED_TABLES: dict[tuple[int, int, str], list[str]] = {
    (3, 0, "closed-form"): ["2", "72", "4536", "373248", "180138816/5"],
    (5, 0, "closed-form"): ["18", "54000", "345060000", "3098250000000", "33814409850000000"],
    (3, 1, "residue-faithful"): ["3/2", "135", "16524", "2291976", "1701555984/5"],
    (5, 1, "residue-faithful"): ["90", "1035000", "15746400000", "268824825000000",
                                 "4889505205800000000"],
    (3, 2, "closed-form"): ["0", "0", "2835/2", "739206", "1301676156/5", "77075478720"],
}

# Critical point of the cubic curve: xi_c^2 = 1/(108 sqrt 3), y0c = 2(2 - sqrt 3), z0c = sqrt 3.
CUBIC_CRITICAL = {
    "xi2c": lambda mp: 1 / (108 * mp.sqrt(3)),
    "y0c": lambda mp: 2 * (2 - mp.sqrt(3)),
    "z0c": lambda mp: mp.sqrt(3),
}

# Constant term of even-valence genus-two free energy.
EVEN_C2 = Fraction(1, 240)


def published(j: int, g: int, mode: str) -> list[Fraction]:
    return [Fraction(s) for s in PUBLISHED_TABLES[(j, g, mode)]]
