"""Monomials as dense exponent tuples, and monomial orders.

Variables are ordered by declaration: index 0 is the largest variable.
An order is realised as a key function ``exp -> tuple`` such that a larger
key means a larger monomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import comb

Monomial = tuple


def mdeg(m) -> int:
    return sum(m)


def mdivides(a, b) -> bool:
    """True if monomial ``a`` divides ``b``."""
    return all(x <= y for x, y in zip(a, b))


def mmul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mdiv(a, b):
    return tuple(x - y for x, y in zip(a, b))


def mlcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def mgcd(a, b):
    return tuple(x if x < y else y for x, y in zip(a, b))


def coprime(a, b) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def exponents_of_degree(nvars: int, d: int) -> list:
    """All exponent vectors of total degree ``d`` (unordered)."""
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def count_monomials(nvars: int, d: int) -> int:
    return comb(nvars - 1 + d, d)


@dataclass(frozen=True)
class MonomialOrder:
    """Lex, GrevLex or a two-block elimination order.

    ``block`` is the number of leading variables in the first block of a
    ``"block"`` order (lex between blocks, grevlex inside).  ``weights``
    replaces the standard degree inside the grevlex comparisons.
    """

    kind: str = "grevlex"
    block: int = 0
    weights: tuple | None = None

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "block" and self.block < 1:
            raise ValueError("block order needs at least one leading variable")

    @classmethod
    def parse(cls, text: str) -> MonomialOrder:
        return cls(text.strip().lower())

    def __str__(self):
        if self.kind == "block":
            return f"block({self.block})"
        return self.kind

    def key_function(self, nvars: int):
        w = self.weights
        if self.kind == "lex":
            return tuple
        if self.kind == "grevlex":
            if w is None:
                def key(e):
                    return (sum(e),) + tuple(-x for x in reversed(e))
            else:
                def key(e):
                    return (sum(a * b for a, b in zip(w, e)),) + tuple(-x for x in reversed(e))
            return key
        k = self.block
        w = w or (1,) * nvars
        w1, w2 = w[:k], w[k:]

        def key(e):
            e1, e2 = e[:k], e[k:]
            return (
                (sum(a * b for a, b in zip(w1, e1)),)
                + tuple(-x for x in reversed(e1))
                + (sum(a * b for a, b in zip(w2, e2)),)
                + tuple(-x for x in reversed(e2))
            )
        return key


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


def block_order(k: int, weights=None) -> MonomialOrder:
    return MonomialOrder("block", k, tuple(weights) if weights is not None else None)
