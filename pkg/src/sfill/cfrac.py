"""Exact Hirzebruch-Jung continued fraction arithmetic.

A slope alpha/beta with 0 < beta < alpha and gcd(alpha, beta) = 1 has a
unique expansion

    alpha/beta = [b_1, b_2, ..., b_r] = b_1 - 1/(b_2 - 1/(... - 1/b_r))

with every b_i >= 2.  The dual expansion is the one of alpha/(alpha - beta);
applying it twice returns the original word (Riemenschneider duality).

Words with entries <= 1 are legal values of :class:`CFWord` because blow-up
calculus passes through such intermediate states; ``is_hj`` distinguishes
genuine Hirzebruch-Jung words.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


class CFDivisionByZero(ZeroDivisionError):
    """A tail of the word evaluates to zero, so the bracket is undefined."""


def validate_slope(alpha: int, beta: int) -> None:
    """Reject pairs that are not reduced slopes with 0 < beta < alpha."""
    if beta <= 0:
        raise ValueError(f"slope {alpha}/{beta}: beta must be positive")
    if beta >= alpha:
        raise ValueError(f"slope {alpha}/{beta}: need beta < alpha")
    if gcd(alpha, beta) != 1:
        raise ValueError(f"slope {alpha}/{beta}: alpha and beta must be coprime")


@dataclass(frozen=True)
class CFWord:
    entries: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(e) for e in self.entries))

    @property
    def is_hj(self) -> bool:
        return all(e >= 2 for e in self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __str__(self) -> str:
        return "[" + ",".join(str(e) for e in self.entries) + "]"


def hj_expand(alpha: int, beta: int) -> CFWord:
    """Hirzebruch-Jung expansion of alpha/beta via the ceiling recurrence.

    Each step takes b = ceil(alpha/beta) and recurses on (beta, b*beta - alpha);
    the remainder strictly decreases, and every produced entry is >= 2.
    """
    validate_slope(alpha, beta)
    entries = []
    a, b = alpha, beta
    while b > 0:
        q = -(-a // b)
        entries.append(q)
        a, b = b, q * b - a
    word = CFWord(tuple(entries))
    assert word.is_hj and eval_cf(word) == Fraction(alpha, beta)
    return word


def dual_expand(alpha: int, beta: int) -> CFWord:
    """Riemenschneider dual: the HJ word of alpha/(alpha - beta)."""
    validate_slope(alpha, beta)
    return hj_expand(alpha, alpha - beta)


def eval_cf(word: CFWord) -> Fraction:
    """Evaluate the bracket right to left, exactly.

    Raises :class:`CFDivisionByZero` when an inner tail evaluates to 0, which
    can happen for non-HJ words (zero chains do exactly that one step early).
    """
    value: Fraction | None = None
    for e in reversed(tuple(word)):
        if value is None:
            value = Fraction(e)
        elif value == 0:
            raise CFDivisionByZero(f"tail of {word} evaluates to zero")
        else:
            value = e - 1 / value
    if value is None:
        raise ValueError("cannot evaluate an empty word")
    return value
