# src/services/combinatorics_service.py
"""
Stirling numbers, generalized binomials, multinomials and the falling
factorial basis.

S1 is the SIGNED Stirling number of the first kind, fixed by
(log(1+t))^m = m! Σ_{l≥m} S1(l,m) t^l/l!, so S1(2,1) = −1 and
(x)_n = Σ_l S1(n,l) x^l. Many references tabulate the unsigned numbers
instead; they differ by the sign (−1)^(n−m).
"""

from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from math import factorial
from typing import Iterator, List, Sequence, Tuple

from models.exactnum import Scalar, as_rational
from models.xpoly import XPoly
from utils.exceptions import InvalidParameterException, OutOfRangeException
from utils.logger import setup_logger

logger = setup_logger("COMBINATORICS_SERVICE")

Triangle = Tuple[Tuple[int, ...], ...]


class StirlingKind(str, Enum):
    FIRST = "first"
    SECOND = "second"


@dataclass(frozen=True)
class StirlingTable:
    """Rows 0..n_max of S1 and S2; row n holds entries m = 0..n"""

    n_max: int
    s1: Triangle
    s2: Triangle

    @classmethod
    def build(cls, n_max: int) -> "StirlingTable":
        if n_max < 0:
            raise InvalidParameterException("Stirling tables need n_max >= 0")
        s1: List[Tuple[int, ...]] = [(1,)]
        s2: List[Tuple[int, ...]] = [(1,)]
        for n in range(n_max):
            prev1, prev2 = s1[-1], s2[-1]
            row1, row2 = [0] * (n + 2), [0] * (n + 2)
            for m in range(n + 2):
                left1 = prev1[m - 1] if m >= 1 else 0
                left2 = prev2[m - 1] if m >= 1 else 0
                stay1 = prev1[m] if m <= n else 0
                stay2 = prev2[m] if m <= n else 0
                row1[m] = left1 - n * stay1
                row2[m] = left2 + m * stay2
            s1.append(tuple(row1))
            s2.append(tuple(row2))
        logger.debug(f"Built Stirling tables up to n = {n_max}")
        return cls(n_max=n_max, s1=tuple(s1), s2=tuple(s2))

    def _check(self, n: int, m: int) -> None:
        if not (0 <= n <= self.n_max) or m < 0:
            raise OutOfRangeException(
                f"S(n={n}, m={m}) is outside a table built to n = {self.n_max}"
            )

    def stirling1(self, n: int, m: int) -> int:
        self._check(n, m)
        return self.s1[n][m] if m <= n else 0

    def stirling2(self, n: int, m: int) -> int:
        self._check(n, m)
        return self.s2[n][m] if m <= n else 0

    def with_entry(self, kind: StirlingKind, n: int, m: int, value: int) -> "StirlingTable":
        """Copy of the table with one entry replaced; used for fault injection"""
        self._check(n, m)
        triangle = self.s1 if kind == StirlingKind.FIRST else self.s2
        row = list(triangle[n])
        row[m] = value
        patched = triangle[:n] + (tuple(row),) + triangle[n + 1:]
        if kind == StirlingKind.FIRST:
            return replace(self, s1=patched)
        return replace(self, s2=patched)


class CombinatoricsService:
    """Table-backed combinatorial helpers, one table shared per service"""

    def __init__(self, n_max: int = 16):
        self._table = StirlingTable.build(n_max)

    def table(self, n_max: int) -> StirlingTable:
        """A table covering n_max, rebuilt larger when needed"""
        if n_max > self._table.n_max:
            self._table = StirlingTable.build(max(n_max, 2 * self._table.n_max))
        return self._table

    def stirling1(self, n: int, m: int) -> int:
        if n < 0 or m < 0 or m > n:
            raise OutOfRangeException(f"S1({n}, {m}) needs 0 <= m <= n")
        return self.table(n).stirling1(n, m)

    def stirling2(self, n: int, m: int) -> int:
        if n < 0 or m < 0 or m > n:
            raise OutOfRangeException(f"S2({n}, {m}) needs 0 <= m <= n")
        return self.table(n).stirling2(n, m)

    def falling_factorial_as_powers(self, n: int) -> XPoly:
        """(x)_n = x(x−1)…(x−n+1) = Σ_l S1(n,l) x^l"""
        table = self.table(n)
        return XPoly.from_rationals([table.stirling1(n, l) for l in range(n + 1)])

    def powers_as_falling_factorial(self, n: int) -> List[int]:
        """Coefficients c_m with x^n = Σ_m c_m (x)_m, namely S2(n,m)"""
        table = self.table(n)
        return [table.stirling2(n, m) for m in range(n + 1)]

    def falling_to_powers(self, coeffs: Sequence[Scalar]) -> XPoly:
        """Σ_m c_m (x)_m expanded in the power basis"""
        result = XPoly.zero()
        for m, c in enumerate(coeffs):
            if c:
                result = result + self.falling_factorial_as_powers(m).scale(c)
        return result


def gen_binomial(alpha: Scalar, n: int) -> Fraction:
    """C(alpha, n) = alpha(alpha−1)…(alpha−n+1)/n! for rational alpha"""
    if n < 0:
        return Fraction(0)
    alpha = as_rational(alpha)
    value = Fraction(1)
    for j in range(n):
        value *= alpha - j
    return value / factorial(n)


def multinomial(n: int, parts: Sequence[int]) -> int:
    """n!/(l1!…lk!) for parts summing to n"""
    if any(p < 0 for p in parts) or sum(parts) != n:
        raise InvalidParameterException(f"Parts {list(parts)} do not sum to {n}")
    value = factorial(n)
    for p in parts:
        value //= factorial(p)
    return value


def compositions(n: int, k: int) -> Iterator[Tuple[int, ...]]:
    """Weak compositions of n into k non-negative parts, lexicographic"""
    if k == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in compositions(n - first, k - 1):
            yield (first,) + rest


combinatorics_service = CombinatoricsService()
