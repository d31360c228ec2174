"""Polynomial rings k[x_0..x_n] and their exact, immutable elements."""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from math import gcd

from ..errors import RingMismatch, ZeroPolynomial
from .field import QQ, FieldSpec, content
from .monomial import GREVLEX, MonomialOrder, count_monomials, exponents_of_degree


class PolyRingCtx:
    """The ambient graded ring: field, ordered variable names, monomial order.

    The first declared variable is the largest.  All variables have degree 1.
    """

    def __init__(self, variables, field: FieldSpec = QQ, order: MonomialOrder = GREVLEX):
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"duplicate variable names in {self.variables}")
        self.field = field
        self.order = order
        self.nvars = len(self.variables)
        self.key = order.key_function(self.nvars)
        self._index = {v: i for i, v in enumerate(self.variables)}

    def _ident(self):
        return (self.field, self.variables, self.order)

    def __eq__(self, other):
        return isinstance(other, PolyRingCtx) and self._ident() == other._ident()

    def __hash__(self):
        return hash(self._ident())

    def __repr__(self):
        return f"PolyRingCtx({self.field}[{', '.join(self.variables)}], {self.order})"

    # -- construction helpers -------------------------------------------------

    def index(self, name: str) -> int:
        return self._index[name]

    def has_var(self, name: str) -> bool:
        return name in self._index

    def zero(self) -> Poly:
        return Poly(self, {})

    def one(self) -> Poly:
        return self.constant(1)

    def constant(self, c) -> Poly:
        return self.from_dict({(0,) * self.nvars: c})

    def var(self, name_or_index) -> Poly:
        i = name_or_index if isinstance(name_or_index, int) else self._index[name_or_index]
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): 1})

    def gens(self) -> list:
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exp, coeff=1) -> Poly:
        return self.from_dict({tuple(exp): coeff})

    def from_dict(self, terms: dict) -> Poly:
        """Build a polynomial from ``{exponent tuple: int | Fraction}``."""
        if self.field.p:
            p = self.field.p
            return Poly(self, {m: self.field.element(c) for m, c in terms.items()
                               if self.field.element(c) % p})
        den = 1
        for c in terms.values():
            den = den * Fraction(c).denominator // gcd(den, Fraction(c).denominator)
        raw = {m: int(Fraction(c) * den) for m, c in terms.items() if c}
        return Poly._from_raw(self, raw, Fraction(1, den))

    def __call__(self, value) -> Poly:
        if isinstance(value, Poly):
            return value.change_ring(self)
        if isinstance(value, str):
            from .parse import poly_parse
            return poly_parse(value, self)
        return self.constant(value)

    def parse(self, text: str) -> Poly:
        from .parse import poly_parse
        return poly_parse(text, self)

    def monomials_of_degree(self, d: int) -> list:
        """Exponent tuples of degree ``d``, descending in the ring order."""
        if d < 0:
            return []
        return sorted(exponents_of_degree(self.nvars, d), key=self.key, reverse=True)

    def count_monomials(self, d: int) -> int:
        return count_monomials(self.nvars, d) if d >= 0 else 0

    # -- derived rings ----------------------------------------------------------

    def with_order(self, order: MonomialOrder) -> PolyRingCtx:
        return PolyRingCtx(self.variables, self.field, order)

    def with_field(self, field: FieldSpec) -> PolyRingCtx:
        return PolyRingCtx(self.variables, field, self.order)

    def with_variables(self, variables, order: MonomialOrder | None = None) -> PolyRingCtx:
        return PolyRingCtx(variables, self.field, order or self.order)

    def fresh_names(self, prefix: str, count: int) -> list:
        names, i = [], 0
        while len(names) < count:
            cand = f"{prefix}{i}"
            if cand not in self._index:
                names.append(cand)
            i += 1
        return names


def _normalize_q(terms: dict, scale: Fraction, key):
    """Integer-primitive form with positive leading coefficient."""
    terms = {m: c for m, c in terms.items() if c}
    if not terms:
        return {}, Fraction(1)
    g = content(terms.values())
    lc = terms[max(terms, key=key)]
    if lc < 0:
        g = -g
    if g != 1:
        terms = {m: c // g for m, c in terms.items()}
    return terms, scale * g


class Poly:
    """An immutable polynomial over a :class:`PolyRingCtx`.

    Over QQ the value is ``scale * sum(c * x^m)`` where the integer
    coefficients are primitive with a positive leading coefficient, so
    projective comparisons can ignore ``scale``.  Over GF(p) coefficients are
    residues in ``[0, p)`` and ``scale`` is always 1.
    """

    def __init__(self, ring: PolyRingCtx, terms: dict, scale=1):
        self.ring = ring
        self._t = terms
        self._s = Fraction(scale) if ring.field.p == 0 else 1

    @classmethod
    def _from_raw(cls, ring: PolyRingCtx, raw: dict, scale=1) -> Poly:
        """Wrap an arbitrary ``{exp: int}`` dict, normalizing it."""
        if ring.field.p:
            p = ring.field.p
            return cls(ring, {m: c % p for m, c in raw.items() if c % p})
        t, s = _normalize_q(raw, Fraction(scale), ring.key)
        return cls(ring, t, s)

    # -- inspection -------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self):
        return bool(self._t)

    def __len__(self):
        return len(self._t)

    @cached_property
    def _sorted(self):
        return sorted(self._t, key=self.ring.key, reverse=True)

    def coeff(self, m):
        c = self._t.get(tuple(m), 0)
        return c * self._s if self.ring.field.p == 0 else c

    @property
    def terms(self) -> list:
        """``[(exponent, coefficient), ...]`` strictly descending in the ring order."""
        return [(m, self.coeff(m)) for m in self._sorted]

    def monomials(self) -> list:
        return list(self._sorted)

    def to_dict(self) -> dict:
        return {m: self.coeff(m) for m in self._t}

    def leading_term(self):
        if not self._t:
            raise ZeroPolynomial("leading term of the zero polynomial")
        m = self._sorted[0]
        return m, self.coeff(m)

    @property
    def lm(self):
        return self.leading_term()[0]

    @property
    def lc(self):
        return self.leading_term()[1]

    @property
    def degree(self) -> int:
        if not self._t:
            return -1
        return max(sum(m) for m in self._t)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._t}) <= 1

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._t)

    def variables_used(self) -> set:
        used = set()
        for m in self._t:
            used.update(i for i, e in enumerate(m) if e)
        return used

    def normalized(self) -> Poly:
        """Projective representative: scale 1 over QQ, monic over GF(p)."""
        if not self._t:
            return self
        p = self.ring.field.p
        if p == 0:
            return Poly(self.ring, self._t, 1)
        inv = pow(self._t[self._sorted[0]], -1, p)
        return Poly(self.ring, {m: c * inv % p for m, c in self._t.items()})

    # -- equality ----------------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, Poly):
            return self.ring.constant(other)
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring!r} vs {other.ring!r}")
        return other

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self._t == other._t and (
            not self._t or self._s == other._s)

    def __hash__(self):
        return hash((frozenset(self._t.items()), self._s if self._t else 0))

    # -- arithmetic ----------------------------------------------------------------

    def _combine(self, other, sign):
        other = self._check(other)
        p = self.ring.field.p
        if p:
            out = dict(self._t)
            for m, c in other._t.items():
                v = (out.get(m, 0) + sign * c) % p
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
            return Poly(self.ring, out)
        if not other._t:
            return self
        if not self._t:
            return other if sign > 0 else -other
        a, b = self._s, other._s
        fa = a.numerator * b.denominator
        fb = sign * b.numerator * a.denominator
        out = {m: fa * c for m, c in self._t.items()}
        for m, c in other._t.items():
            out[m] = out.get(m, 0) + fb * c
        return Poly._from_raw(self.ring, out, Fraction(1, a.denominator * b.denominator))

    def __add__(self, other):
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, -1)

    def __rsub__(self, other):
        return (-self)._combine(other, 1)

    def __neg__(self):
        p = self.ring.field.p
        if p:
            return Poly(self.ring, {m: (-c) % p for m, c in self._t.items()})
        return Poly(self.ring, self._t, -self._s)

    def scalar_mul(self, c) -> Poly:
        p = self.ring.field.p
        c = self.ring.field.element(c)
        if c == 0:
            return self.ring.zero()
        if p:
            return Poly(self.ring, {m: v * c % p for m, v in self._t.items()})
        return Poly(self.ring, self._t, self._s * c)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scalar_mul(other)
        other = self._check(other)
        out = {}
        for m1, c1 in self._t.items():
            for m2, c2 in other._t.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Poly._from_raw(self.ring, out, self._s * other._s)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result, base = self.ring.one(), self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mul_monomial(self, mono, c=1) -> Poly:
        t = {tuple(a + b for a, b in zip(m, mono)): v for m, v in self._t.items()}
        out = Poly(self.ring, t, self._s)
        return out if c == 1 else out.scalar_mul(c)

    # -- ring changes and substitution ---------------------------------------------

    def change_ring(self, ring: PolyRingCtx) -> Poly:
        """Re-express in ``ring`` by variable name (embedding or field change)."""
        if ring == self.ring:
            return self
        pos = []
        for i, v in enumerate(self.ring.variables):
            if ring.has_var(v):
                pos.append(ring.index(v))
            else:
                if any(m[i] for m in self._t):
                    raise RingMismatch(f"variable {v!r} not in target ring")
                pos.append(None)
        out = {}
        for m, c in self._t.items():
            e = [0] * ring.nvars
            for i, k in enumerate(m):
                if k:
                    e[pos[i]] = k
            out[tuple(e)] = self.coeff(m)
        return ring.from_dict(out)

    def compose(self, values) -> Poly:
        """Substitute ``values[i]`` (Polys over a common ring) for variable i."""
        values = list(values)
        if len(values) != self.ring.nvars:
            raise RingMismatch("substitution needs one value per variable")
        target = values[0].ring
        powers = [[target.one(), v] for v in values]

        def power(i, k):
            cache = powers[i]
            while len(cache) <= k:
                cache.append(cache[-1] * values[i])
            return cache[k]

        acc = target.zero()
        for m, c in self.terms:
            term = target.constant(c) if target.field == self.ring.field else target(self.ring.constant(c))
            for i, k in enumerate(m):
                if k:
                    term = term * power(i, k)
            acc = acc + term
        return acc

    def evaluate(self, point):
        """Numeric value at ``point`` (field elements)."""
        f = self.ring.field
        total = 0
        for m, c in self._t.items():
            v = c
            for x, k in zip(point, m):
                if k:
                    v = v * x ** k if f.p == 0 else v * pow(x, k, f.p) % f.p
            total += v
        if f.p:
            return total % f.p
        return Fraction(total) * self._s

    # -- printing ---------------------------------------------------------------------

    def __str__(self):
        if not self._t:
            return "0"
        parts = []
        for m, c in self.terms:
            mono = "*".join(
                v if k == 1 else f"{v}^{k}"
                for v, k in zip(self.ring.variables, m) if k
            )
            neg = c < 0
            a = -c if neg else c
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"Poly({self})"
