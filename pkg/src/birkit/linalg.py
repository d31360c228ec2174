"""Exact sparse linear algebra over QQ (fraction free) and GF(p).

Rows are ``{column: value}`` dicts.  Over QQ values are integers and each
row is kept primitive; over GF(p) pivots are normalized to 1.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from .algebra.field import content


class Echelon:
    """Incrementally maintained reduced row echelon form."""

    def __init__(self, p: int = 0):
        self.p = p
        self.pivots = {}   # pivot column -> row

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _to_int(self, row):
        if self.p:
            return {c: int(v) % self.p for c, v in row.items() if int(v) % self.p}
        den = 1
        for v in row.values():
            v = Fraction(v)
            den = den * v.denominator // gcd(den, v.denominator)
        return {c: int(Fraction(v) * den) for c, v in row.items() if v}

    def reduce(self, row):
        """Reduce ``row`` against the current pivots (returns a new dict)."""
        r = self._to_int(row)
        p = self.p
        for c in [c for c in r if c in self.pivots]:
            v = r.get(c)
            if not v:
                continue
            prow = self.pivots[c]
            if p:
                for k, w in prow.items():
                    nv = (r.get(k, 0) - v * w) % p
                    if nv:
                        r[k] = nv
                    else:
                        r.pop(k, None)
            else:
                a = prow[c]
                g = gcd(a, v)
                fa, fv = a // g, v // g
                if fa != 1:
                    r = {k: fa * w for k, w in r.items()}
                for k, w in prow.items():
                    nv = r.get(k, 0) - fv * w
                    if nv:
                        r[k] = nv
                    else:
                        r.pop(k, None)
        if r and not p:
            g = content(r.values())
            if g > 1:
                r = {k: w // g for k, w in r.items()}
        return r

    def add(self, row) -> bool:
        """Insert ``row``; returns True if it increased the rank."""
        r = self.reduce(row)
        if not r:
            return False
        c = min(r)
        p = self.p
        if p:
            inv = pow(r[c], -1, p)
            r = {k: w * inv % p for k, w in r.items()}
        elif r[c] < 0:
            r = {k: -w for k, w in r.items()}
        for pc, prow in list(self.pivots.items()):
            v = prow.get(c)
            if not v:
                continue
            if p:
                new = dict(prow)
                for k, w in r.items():
                    nv = (new.get(k, 0) - v * w) % p
                    if nv:
                        new[k] = nv
                    else:
                        new.pop(k, None)
            else:
                a = r[c]
                g = gcd(a, v)
                fa, fv = a // g, v // g
                new = {k: fa * w for k, w in prow.items()}
                for k, w in r.items():
                    nv = new.get(k, 0) - fv * w
                    if nv:
                        new[k] = nv
                    else:
                        new.pop(k, None)
                cc = content(new.values())
                if new[pc] < 0:
                    cc = -cc
                new = {k: w // cc for k, w in new.items()}
            self.pivots[pc] = new
        self.pivots[c] = r
        return True

    def in_span(self, row) -> bool:
        return not self.reduce(row)


def rank(rows, p: int = 0) -> int:
    E = Echelon(p)
    for r in rows:
        E.add(r if isinstance(r, dict) else dict(enumerate(r)))
    return E.rank


def nullspace(rows, ncols: int, p: int = 0) -> list:
    """Basis of ``{v : rows . v = 0}`` as dense lists.

    Over QQ the vectors are integer-primitive; over GF(p) residues.
    """
    E = Echelon(p)
    for r in rows:
        E.add(r if isinstance(r, dict) else dict(enumerate(r)))
    pivot_cols = E.pivots
    basis = []
    for f in range(ncols):
        if f in pivot_cols:
            continue
        if p:
            v = [0] * ncols
            v[f] = 1
            for pc, row in pivot_cols.items():
                w = row.get(f)
                if w:
                    v[pc] = (-w) % p
            basis.append(v)
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for pc, row in pivot_cols.items():
            w = row.get(f)
            if w:
                v[pc] = Fraction(-w, row[pc])
        den = 1
        for x in v:
            den = lcm(den, x.denominator)
        iv = [int(x * den) for x in v]
        g = content(iv)
        basis.append([x // g for x in iv])
    return basis


def dense_rank(matrix, p: int = 0) -> int:
    return rank([{j: v for j, v in enumerate(row) if v} for row in matrix], p)
