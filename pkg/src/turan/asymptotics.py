"""Small-h expansions of A(h) and numerical checks of their remainder order."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import pi, sqrt
from typing import Callable, Optional, Sequence

import numpy as np

from .closed_forms import theorem3_value, theorem5_value
from .errors import DegenerateFit, FamilyMismatch

THEOREM1_CONSTANT = 16.0


class Family(enum.Enum):
    TWO_OVER_Q_ODD = "two_over_q"
    THREE_OVER_Q_1MOD3 = "three_over_q_1mod3"
    THREE_OVER_Q_2MOD3 = "three_over_q_2mod3"


@dataclass(frozen=True)
class ExpansionFamily:
    family: Family
    numerator: int
    residue_modulus: int
    residue: int
    terms: tuple[tuple[int, float], ...]
    remainder_order: int

    def admits(self, q: int) -> bool:
        return q % self.residue_modulus == self.residue and q > 2 * self.numerator

    def exact(self, q: int) -> float:
        if self.numerator == 2:
            return theorem3_value(q).value
        return theorem5_value(q).value


_H4 = 16 * pi ** 3 * sqrt(3) / 2187

FAMILIES = {
    Family.TWO_OVER_Q_ODD: ExpansionFamily(
        Family.TWO_OVER_Q_ODD, 2, 2, 1,
        ((1, 1.0), (3, pi ** 2 / 16), (5, 5 * pi ** 4 / 768)), 7),
    Family.THREE_OVER_Q_1MOD3: ExpansionFamily(
        Family.THREE_OVER_Q_1MOD3, 3, 3, 1,
        ((1, 1.0), (3, 16 * pi ** 2 / 243), (4, -_H4), (5, 448 * pi ** 4 / 59049)), 6),
    Family.THREE_OVER_Q_2MOD3: ExpansionFamily(
        Family.THREE_OVER_Q_2MOD3, 3, 3, 2,
        ((1, 1.0), (3, 16 * pi ** 2 / 243), (4, _H4), (5, 448 * pi ** 4 / 59049)), 6),
}


def get_family(family) -> ExpansionFamily:
    if isinstance(family, ExpansionFamily):
        return family
    return FAMILIES[Family(family)]


def _denominator(fam: ExpansionFamily, h) -> int:
    q = Fraction(fam.numerator) / Fraction(h).limit_denominator(10 ** 9)
    if q.denominator != 1 or not fam.admits(q.numerator):
        raise FamilyMismatch(f"h = {h} is not {fam.numerator}/q with q = {fam.residue} "
                             f"mod {fam.residue_modulus}")
    return q.numerator


def expansion_value(family, h, max_power: Optional[int] = None) -> float:
    """Truncated expansion at h; ``max_power`` drops terms of higher order."""
    fam = get_family(family)
    _denominator(fam, h)
    x = float(h)
    return float(sum(c * x ** k for k, c in fam.terms if max_power is None or k <= max_power))


def remainders(family, q_list: Sequence[int],
               exact: Optional[Callable[[int], float]] = None) -> np.ndarray:
    fam = get_family(family)
    exact = fam.exact if exact is None else exact
    out = []
    for q in q_list:
        if not fam.admits(q):
            raise FamilyMismatch(f"q = {q} not in family {fam.family.value}")
        out.append(exact(q) - expansion_value(fam, Fraction(fam.numerator, q)))
    return np.array(out)


def remainder_order_fit(family, q_list: Sequence[int],
                        exact: Optional[Callable[[int], float]] = None) -> float:
    """Least-squares slope of log|A(h) - expansion(h)| against log h."""
    fam = get_family(family)
    q_list = list(q_list)
    if len(q_list) < 5:
        raise ValueError("need at least 5 denominators")
    if max(q_list) < 4 * min(q_list):
        raise ValueError("denominators must span at least a factor of 4")
    rem = np.abs(remainders(fam, q_list, exact))
    if np.any(rem < 1e-300):
        raise DegenerateFit("remainder underflow; nothing to fit")
    hs = fam.numerator / np.array(q_list, dtype=float)
    slope, _ = np.polyfit(np.log(hs), np.log(rem), 1)
    return float(slope)


@dataclass(frozen=True)
class BoundReport:
    ratios: tuple[float, ...]
    max_ratio: float
    min_excess: float
    constant: float = THEOREM1_CONSTANT

    @property
    def passed(self) -> bool:
        return self.max_ratio <= self.constant and self.min_excess >= -1e-12


def theorem1_bound_check(h_values: Sequence, a_values: Sequence[float]) -> BoundReport:
    """Ratios (A(h) - h) / h^3 against the constant 16."""
    if len(h_values) != len(a_values):
        raise ValueError("h_values and a_values differ in length")
    hs = np.array([float(h) for h in h_values])
    a = np.asarray(a_values, dtype=float)
    excess = a - hs
    ratios = excess / hs ** 3
    return BoundReport(tuple(float(r) for r in ratios), float(ratios.max(initial=-np.inf)),
                       float(excess.min(initial=np.inf)))
