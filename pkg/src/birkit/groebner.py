"""Groebner bases and the ideal operations built on them.

Buchberger's algorithm with the Gebauer-Moeller pair criteria and sugar
(degree-by-degree) pair selection.  Over QQ every reduction is fraction
free: polynomials stay integer-primitive throughout.
"""

from __future__ import annotations

import heapq
import os
from dataclasses import dataclass
from math import gcd

from .algebra.field import content
from .algebra.monomial import GREVLEX, MonomialOrder, block_order, coprime, mdivides, mlcm
from .algebra.poly import Poly, PolyRingCtx
from .errors import HomogeneityError, ResourceLimit, RingMismatch


@dataclass(frozen=True)
class Limits:
    max_degree: int = 40
    max_pairs: int = 200_000

    @classmethod
    def from_env(cls, **overrides) -> Limits:
        kw = {}
        env = os.environ.get("BIRKIT_MAX_PAIRS")
        if env:
            kw["max_pairs"] = int(env)
        kw.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**kw)


DEFAULT_LIMITS = Limits()


# ---------------------------------------------------------------------------
# raw dict arithmetic
# ---------------------------------------------------------------------------

class _Elem:
    __slots__ = ("lm", "lc", "poly", "tail", "sugar")

    def __init__(self, lm, lc, poly, sugar):
        self.lm = lm
        self.lc = lc
        self.poly = poly
        self.tail = [(m, c) for m, c in poly.items() if m != lm]
        self.sugar = sugar


class _Arith:
    def __init__(self, ring: PolyRingCtx, grading=None):
        self.p = ring.field.p
        self.n = ring.nvars
        self._key = ring.key
        self._cache = {}
        self.grading = tuple(grading) if grading is not None else (
            ring.order.weights or (1,) * ring.nvars)

    def key(self, m):
        k = self._cache.get(m)
        if k is None:
            k = self._key(m)
            self._cache[m] = k
        return k

    def negkey(self, m):
        return tuple(-x for x in self.key(m))

    def wdeg(self, m):
        return sum(a * b for a, b in zip(self.grading, m))

    def lead(self, f):
        return max(f, key=self.key)

    def normalize(self, f):
        """Monic over GF(p); primitive with positive leading coefficient over QQ."""
        if not f:
            return f
        lm = self.lead(f)
        if self.p:
            inv = pow(f[lm], -1, self.p)
            return {m: c * inv % self.p for m, c in f.items()}
        g = content(f.values())
        if f[lm] < 0:
            g = -g
        if g == 1:
            return f
        return {m: c // g for m, c in f.items()}

    def elem(self, f, sugar=None):
        f = self.normalize(f)
        lm = self.lead(f)
        if sugar is None:
            sugar = max(self.wdeg(m) for m in f)
        return _Elem(lm, f[lm], f, sugar)

    def reduce(self, f, basis):
        """Full reduction of ``f`` (a dict) modulo ``basis`` (list of _Elem)."""
        p = self.p
        f = dict(f)
        heap = [(self.negkey(m), m) for m in f]
        heapq.heapify(heap)
        rem = {}
        steps = 0
        while heap:
            _, m = heapq.heappop(heap)
            c = f.pop(m, 0)
            if not c:
                continue
            g = None
            for e in basis:
                if all(a <= b for a, b in zip(e.lm, m)):
                    g = e
                    break
            if g is None:
                rem[m] = c
                continue
            q = tuple(a - b for a, b in zip(m, g.lm))
            if p:
                mult = c * pow(g.lc, -1, p) % p if g.lc != 1 else c
                for mt, ct in g.tail:
                    mm = tuple(a + b for a, b in zip(mt, q))
                    old = f.get(mm)
                    v = ((old or 0) - mult * ct) % p
                    if v:
                        f[mm] = v
                        if old is None:
                            heapq.heappush(heap, (self.negkey(mm), mm))
                    elif old is not None:
                        del f[mm]
            else:
                gg = gcd(g.lc, c)
                a, b = g.lc // gg, c // gg
                if a != 1:
                    for k in f:
                        f[k] *= a
                    for k in rem:
                        rem[k] *= a
                for mt, ct in g.tail:
                    mm = tuple(x + y for x, y in zip(mt, q))
                    old = f.get(mm)
                    v = (old or 0) - b * ct
                    if v:
                        f[mm] = v
                        if old is None:
                            heapq.heappush(heap, (self.negkey(mm), mm))
                    elif old is not None:
                        del f[mm]
                steps += 1
                if a != 1 and steps % 8 == 0:
                    cc = content(list(f.values()) + list(rem.values()))
                    if cc > 1:
                        f = {k: v // cc for k, v in f.items()}
                        rem = {k: v // cc for k, v in rem.items()}
        return rem

    def spoly(self, e1, e2, lcm):
        q1 = tuple(a - b for a, b in zip(lcm, e1.lm))
        q2 = tuple(a - b for a, b in zip(lcm, e2.lm))
        if self.p:
            c1, c2 = e2.lc, e1.lc
        else:
            g = gcd(e1.lc, e2.lc)
            c1, c2 = e2.lc // g, e1.lc // g
        out = {}
        for m, c in e1.tail:
            mm = tuple(a + b for a, b in zip(m, q1))
            out[mm] = out.get(mm, 0) + c1 * c
        for m, c in e2.tail:
            mm = tuple(a + b for a, b in zip(m, q2))
            out[mm] = out.get(mm, 0) - c2 * c
        if self.p:
            return {m: c % self.p for m, c in out.items() if c % self.p}
        return {m: c for m, c in out.items() if c}


def _buchberger_raw(polys, ar: _Arith, limits: Limits):
    G = []          # every element ever added
    active = []     # indices of the current (minimal) basis
    pairs = {}      # (i, j) -> lcm
    heap = []
    processed = 0

    def push_pair(i, j, lcm):
        ei, ej = G[i], G[j]
        wl = ar.wdeg(lcm)
        sugar = max(ei.sugar + wl - ar.wdeg(ei.lm), ej.sugar + wl - ar.wdeg(ej.lm))
        pairs[(i, j)] = lcm
        heapq.heappush(heap, (sugar, ar.key(lcm), i, j))

    def update(h):
        k = len(G)
        G.append(h)
        hm = h.lm
        cand = [(i, mlcm(G[i].lm, hm)) for i in active]
        # chain criterion among the new pairs
        keep = []
        for idx, (i, lcm) in enumerate(cand):
            if coprime(G[i].lm, hm):
                keep.append((i, lcm))
                continue
            redundant = False
            for jdx, (j, l2) in enumerate(cand):
                if jdx == idx:
                    continue
                if mdivides(l2, lcm) and (l2 != lcm or jdx < idx):
                    redundant = True
                    break
            if not redundant:
                keep.append((i, lcm))
        new_pairs = [(i, lcm) for i, lcm in keep if not coprime(G[i].lm, hm)]
        # old pairs made redundant by h
        for (i, j), lcm in list(pairs.items()):
            if mdivides(hm, lcm) and mlcm(G[i].lm, hm) != lcm and mlcm(G[j].lm, hm) != lcm:
                del pairs[(i, j)]
        for i, lcm in new_pairs:
            push_pair(i, k, lcm)
        active[:] = [i for i in active if not mdivides(hm, G[i].lm)]
        active.append(k)

    def basis():
        return [G[i] for i in active]

    for f in sorted(polys, key=lambda f: (max(ar.wdeg(m) for m in f), ar.key(ar.lead(f)))):
        r = ar.reduce(f, basis())
        if r:
            if all(not any(m) for m in r):
                return [{(0,) * ar.n: 1}]
            update(ar.elem(r, max(ar.wdeg(m) for m in f)))

    while heap:
        sugar, _, i, j = heapq.heappop(heap)
        lcm = pairs.pop((i, j), None)
        if lcm is None:
            continue
        processed += 1
        if processed > limits.max_pairs:
            raise ResourceLimit("max_pairs", limits.max_pairs)
        if sugar > limits.max_degree:
            raise ResourceLimit("max_degree", limits.max_degree)
        s = ar.spoly(G[i], G[j], lcm)
        if not s:
            continue
        r = ar.reduce(s, basis())
        if r:
            if all(not any(m) for m in r):
                return [{(0,) * ar.n: 1}]
            update(ar.elem(r, sugar))

    # interreduce the minimal basis
    final = basis()
    out = []
    for idx, e in enumerate(final):
        others = [o for jdx, o in enumerate(final) if jdx != idx]
        # lm(e) is irreducible by the others, so this only touches the tail
        out.append(ar.normalize(ar.reduce(e.poly, others)))
    out.sort(key=lambda f: ar.key(ar.lead(f)))
    return out


# ---------------------------------------------------------------------------
# public types
# ---------------------------------------------------------------------------

class Ideal:
    """A finitely generated ideal of a polynomial ring (zero generators dropped)."""

    def __init__(self, ring: PolyRingCtx, generators=(), homogeneous: bool | None = None):
        self.ring = ring
        gens = []
        for g in generators:
            g = ring(g) if not isinstance(g, Poly) else g
            if g.ring != ring:
                if g.ring.variables == ring.variables and g.ring.field == ring.field:
                    g = g.change_ring(ring)
                else:
                    raise RingMismatch(f"generator {g} not in {ring!r}")
            if g:
                gens.append(g)
        self.generators = tuple(gens)
        if homogeneous and not self.is_homogeneous:
            bad = next(g for g in gens if not g.is_homogeneous())
            raise HomogeneityError(f"generator {bad} is not homogeneous")
        self._gb = {}

    @property
    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.generators)) or '0'})"

    def __add__(self, other):
        if isinstance(other, Ideal):
            other = other.generators
        return Ideal(self.ring, list(self.generators) + [self.ring(g) if not isinstance(g, Poly) else g.change_ring(self.ring) for g in other])

    def gb(self, order: MonomialOrder | None = None, limits: Limits | None = None) -> GroebnerBasis:
        order = order or self.ring.order
        if order not in self._gb:
            self._gb[order] = buchberger(self, order, limits)
        return self._gb[order]

    def contains(self, f, limits=None) -> bool:
        return ideal_membership(f, self, limits)

    def is_unit(self, limits=None) -> bool:
        return self.gb(limits=limits).is_unit

    def same_ideal(self, other, limits=None) -> bool:
        return self.gb(GREVLEX, limits) == other.gb(GREVLEX, limits)

    def change_ring(self, ring) -> Ideal:
        return Ideal(ring, [g.change_ring(ring) for g in self.generators])


class GroebnerBasis:
    """A reduced Groebner basis (immutable)."""

    def __init__(self, ideal: Ideal, order: MonomialOrder, elements):
        self.ideal = ideal
        self.order = order
        self.ring = ideal.ring.with_order(order)
        self.elements = tuple(elements)
        self.leading_monomials = tuple(e.lm for e in self.elements)
        self._ar = None

    def _arith(self):
        if self._ar is None:
            self._ar = _Arith(self.ring)
            self._elems = [self._ar.elem(dict(e._t)) for e in self.elements]
        return self._ar

    def __eq__(self, other):
        return (isinstance(other, GroebnerBasis) and self.ring == other.ring
                and set(self.elements) == set(other.elements))

    def __hash__(self):
        return hash(frozenset(self.elements))

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"GroebnerBasis[{self.order}]({', '.join(map(str, self.elements))})"

    @property
    def is_unit(self) -> bool:
        return len(self.elements) == 1 and self.elements[0].is_constant()

    def reduce(self, f: Poly) -> Poly:
        return normal_form(f, self)

    def contains(self, f: Poly) -> bool:
        return normal_form(f, self).is_zero()

    def in_leading_ideal(self, m) -> bool:
        return any(mdivides(lm, m) for lm in self.leading_monomials)

    def standard_monomials(self, d: int) -> list:
        """Degree-``d`` monomials outside the leading ideal, descending in the ambient order."""
        return [m for m in self.ideal.ring.monomials_of_degree(d) if not self.in_leading_ideal(m)]


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def _raw(f: Poly, ring: PolyRingCtx):
    """Integer (QQ) or residue (GF(p)) dict of ``f`` re-expressed in ``ring``."""
    if f.ring != ring:
        if f.ring.variables == ring.variables and f.ring.field == ring.field:
            return dict(f._t)
        f = f.change_ring(ring)
    return dict(f._t)


def buchberger(I: Ideal, order: MonomialOrder | None = None, limits: Limits | None = None,
               grading=None) -> GroebnerBasis:
    """Reduced Groebner basis of ``I``; canonical for the ideal and the order."""
    order = order or I.ring.order
    limits = limits or DEFAULT_LIMITS
    ring = I.ring.with_order(order)
    ar = _Arith(ring, grading)
    raw = _buchberger_raw([_raw(g, ring) for g in I.generators], ar, limits)
    elements = [Poly(ring, f) if ring.field.p else Poly._from_raw(ring, f) for f in raw]
    return GroebnerBasis(I, order, elements)


def normal_form(f: Poly, G: GroebnerBasis) -> Poly:
    """Remainder of ``f`` on division by ``G``, returned in ``f``'s ring.

    Over QQ the remainder is exact (not just up to a scalar): the fraction-free
    reduction multiplier is divided back out.
    """
    if f.ring.variables != G.ring.variables or f.ring.field != G.ring.field:
        raise RingMismatch(f"{f.ring!r} vs {G.ring!r}")
    ar = G._arith()
    if not f:
        return f
    if ar.p:
        r = ar.reduce(dict(f._t), G._elems)
        return Poly(G.ring, r).change_ring(f.ring) if f.ring != G.ring else Poly(f.ring, r)
    # track the overall multiplier by reducing (f + marker) is awkward; instead
    # reduce with exact rational bookkeeping on the primitive part
    r, mult = _reduce_tracked(dict(f._t), G._elems, ar)
    if not r:
        return f.ring.zero()
    return Poly._from_raw(f.ring, r, f._s / mult)


def _reduce_tracked(f, basis, ar):
    """Fraction-free reduction over QQ returning ``(rem, multiplier)``.

    ``rem == multiplier * NF(f)`` exactly.
    """
    f = dict(f)
    heap = [(ar.negkey(m), m) for m in f]
    heapq.heapify(heap)
    rem = {}
    mult = 1
    while heap:
        _, m = heapq.heappop(heap)
        c = f.pop(m, 0)
        if not c:
            continue
        g = None
        for e in basis:
            if all(a <= b for a, b in zip(e.lm, m)):
                g = e
                break
        if g is None:
            rem[m] = c
            continue
        q = tuple(a - b for a, b in zip(m, g.lm))
        gg = gcd(g.lc, c)
        a, b = g.lc // gg, c // gg
        if a != 1:
            mult *= a
            for k in f:
                f[k] *= a
            for k in rem:
                rem[k] *= a
        for mt, ct in g.tail:
            mm = tuple(x + y for x, y in zip(mt, q))
            old = f.get(mm)
            v = (old or 0) - b * ct
            if v:
                f[mm] = v
                if old is None:
                    heapq.heappush(heap, (ar.negkey(mm), mm))
            elif old is not None:
                del f[mm]
        if a != 1:
            cc = gcd(content(list(f.values()) + list(rem.values())), mult)
            if cc > 1:
                f = {k: v // cc for k, v in f.items()}
                rem = {k: v // cc for k, v in rem.items()}
                mult //= cc
    return rem, mult


def divide(f: Poly, G: GroebnerBasis) -> tuple:
    """Division with explicit quotients: ``f = sum q_i g_i + r``.

    Plain field arithmetic on :class:`Poly` values; slower than
    :func:`normal_form` and meant for certificates on small inputs.
    """
    ring = G.ring
    f = f.change_ring(ring)
    field = ring.field
    quotients = [ring.zero() for _ in G.elements]
    remainder = ring.zero()
    p = f
    while p:
        m, c = p.leading_term()
        for i, g in enumerate(G.elements):
            if mdivides(g.lm, m):
                t = ring.monomial(tuple(a - b for a, b in zip(m, g.lm)), c * field.inverse(g.lc))
                quotients[i] = quotients[i] + t
                p = p - t * g
                break
        else:
            lead = ring.monomial(m, c)
            remainder = remainder + lead
            p = p - lead
    return quotients, remainder


def ideal_membership(f: Poly, I: Ideal, limits: Limits | None = None) -> bool:
    if f.ring.variables != I.ring.variables or f.ring.field != I.ring.field:
        raise RingMismatch(f"{f.ring!r} vs {I.ring!r}")
    return normal_form(f, I.gb(limits=limits)).is_zero()


def divide_exact(f: Poly, g: Poly) -> Poly:
    """Quotient ``f / g``; raises ``ValueError`` if ``g`` does not divide ``f``."""
    ring = f.ring
    q = ring.zero()
    r = f
    glm, glc = g.leading_term()
    while r:
        m, c = r.leading_term()
        if not mdivides(glm, m):
            raise ValueError(f"{g} does not divide {f}")
        mono = tuple(a - b for a, b in zip(m, glm))
        coef = c * ring.field.inverse(glc) if ring.field.p else c / glc
        t = ring.monomial(mono, coef)
        q = q + t
        r = r - t * g
    return q


def _aux_ring(ring: PolyRingCtx, names, front=True, order=None):
    variables = list(names) + list(ring.variables) if front else list(ring.variables) + list(names)
    return PolyRingCtx(variables, ring.field, order or GREVLEX)


def intersect(I: Ideal, J: Ideal, limits: Limits | None = None) -> Ideal:
    """``I ∩ J`` by eliminating ``t`` from ``t*I + (1-t)*J``."""
    ring = I.ring
    (tname,) = ring.fresh_names("t_", 1)
    aux = _aux_ring(ring, [tname], order=block_order(1))
    t = aux.var(0)
    gens = [t * g.change_ring(aux) for g in I.generators]
    gens += [(aux.one() - t) * g.change_ring(aux) for g in J.generators]
    if not gens:
        return Ideal(ring, [])
    G = buchberger(Ideal(aux, gens), aux.order, limits, grading=(0,) + (1,) * ring.nvars)
    keep = [g for g in G.elements if not any(m[0] for m in g._t)]
    return Ideal(ring.with_order(ring.order), [g.change_ring(ring) for g in keep])


def colon_ideal(I: Ideal, J: Ideal, limits: Limits | None = None) -> Ideal:
    """``I : J = {f : f*J ⊆ I}``, intersecting ``(I ∩ (g)) / g`` over generators of ``J``."""
    ring = I.ring
    result = None
    G = I.gb(limits=limits)
    for g in J.generators:
        g = g.change_ring(ring) if g.ring != ring else g
        if G.contains(g):
            continue
        inter = intersect(I, Ideal(ring, [g]), limits)
        quot = Ideal(ring, [divide_exact(h, g) for h in inter.generators])
        result = quot if result is None else intersect(result, quot, limits)
    if result is None:
        return Ideal(ring, [ring.one()])
    return result


def saturate(I: Ideal, J: Ideal, limits: Limits | None = None) -> Ideal:
    """``I : J^∞`` by iterated colon until the reduced basis stabilizes."""
    current = I
    while True:
        nxt = colon_ideal(current, J, limits)
        if nxt.gb(GREVLEX, limits) == current.gb(GREVLEX, limits):
            return Ideal(I.ring, nxt.gb(GREVLEX, limits).elements)
        current = nxt


def eliminate(I: Ideal, keep, limits: Limits | None = None, weights=None) -> Ideal:
    """Generators of ``I ∩ k[keep]`` from a block elimination basis.

    ``weights`` (one per variable of ``I.ring``) grade the computation; with
    uniform weights on ``keep`` the result's generators form a grevlex basis.
    """
    ring = I.ring
    keep = [v if isinstance(v, str) else ring.variables[v] for v in keep]
    drop = [v for v in ring.variables if v not in keep]
    if not drop:
        return Ideal(ring, I.generators)
    w = dict(zip(ring.variables, weights)) if weights is not None else {v: 1 for v in ring.variables}
    aux_vars = drop + keep
    aux_w = tuple(w[v] for v in aux_vars)
    aux = PolyRingCtx(aux_vars, ring.field, block_order(len(drop), aux_w))
    G = buchberger(Ideal(aux, [g.change_ring(aux) for g in I.generators]), aux.order, limits)
    k = len(drop)
    sub = PolyRingCtx(keep, ring.field, GREVLEX)
    gens = [g.change_ring(sub) for g in G.elements if not any(any(m[:k]) for m in g._t)]
    out = Ideal(sub, gens)
    if len({w[v] for v in keep}) == 1 and gens:
        out._gb[GREVLEX] = GroebnerBasis(out, GREVLEX, gens)
    return out


def spoly_check(G: GroebnerBasis) -> bool:
    """Buchberger criterion: every S-polynomial of ``G`` reduces to zero."""
    ar = G._arith()
    els = G._elems
    for i in range(len(els)):
        for j in range(i + 1, len(els)):
            lcm = mlcm(els[i].lm, els[j].lm)
            s = ar.spoly(els[i], els[j], lcm)
            if s and ar.reduce(s, els):
                return False
    return True


def is_reduced(G: GroebnerBasis) -> bool:
    """No term of any element lies in the leading ideal of the others."""
    lms = G.leading_monomials
    for i, g in enumerate(G.elements):
        others = [m for j, m in enumerate(lms) if j != i]
        for m in g._t:
            if any(mdivides(o, m) for o in others):
                return False
    return True
