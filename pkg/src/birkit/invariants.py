"""Invariants of R = S/p and ideal tests over R.

Hilbert data comes from the initial ideal of p.  Codimension is decided by
the initial-ideal dimension; the tau^m rank test is a second, independent
route to the same answer.  Grade >= 2 is tested by a colon computation and
analytic spread by eliminating the special-fiber relations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import comb

from .algebra.field import FieldSpec
from .algebra.monomial import GREVLEX, mdivides
from .algebra.poly import Poly, PolyRingCtx
from .errors import PreconditionViolated
from .groebner import DEFAULT_LIMITS, Ideal, Limits, colon_ideal, eliminate
from .linalg import Echelon

# ---------------------------------------------------------------------------
# monomial ideals: Hilbert series and dimension
# ---------------------------------------------------------------------------


def _minimalize(gens):
    gens = sorted(set(gens), key=sum)
    out = []
    for g in gens:
        if not any(mdivides(h, g) for h in out):
            out.append(g)
    return out


def _padd(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def _pmul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _numerator(gens):
    """Numerator K(t) with HS(S/M) = K(t) / (1-t)^n, M generated by ``gens``."""
    if not gens:
        return [1]
    if any(not any(g) for g in gens):
        return [0]
    supports = [frozenset(i for i, e in enumerate(g) if e) for g in gens]
    if all(a.isdisjoint(b) for a, b in combinations(supports, 2)):
        out = [1]
        for g in gens:
            f = [0] * (sum(g) + 1)
            f[0], f[-1] = 1, -1
            out = _pmul(out, f)
        return out
    # pivot on the variable shared by the most non-coprime generators
    counts = {}
    for s in supports:
        if len(s) > 1:
            for i in s:
                counts[i] = counts.get(i, 0) + 1
    if not counts:
        for s in supports:
            for i in s:
                counts[i] = counts.get(i, 0) + 1
    var = max(counts, key=lambda i: (counts[i], -i))
    exps = sorted(g[var] for g in gens if g[var] > 0)
    e = exps[(len(exps) - 1) // 2]
    pivot = tuple(e if i == var else 0 for i in range(len(gens[0])))
    plus = _minimalize(gens + [pivot])
    colon = _minimalize([tuple(max(0, a - b) for a, b in zip(g, pivot)) for g in gens])
    shifted = [0] * e + _numerator(colon)
    return _padd(_numerator(plus), shifted)


def hilbert_numerator(leading_monomials, nvars):
    lms = _minimalize(list(leading_monomials))
    if not lms:
        return [1]
    num = _numerator(lms)
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return num


def _divide_one_minus_t(num):
    """Synthetic division of ``num`` by (1 - t); assumes num(1) == 0."""
    q = []
    acc = 0
    for c in num[:-1]:
        acc += c
        q.append(acc)
    return q


def krull_dim_monomial(leading_monomials, nvars) -> int:
    """Largest set of variables containing the support of no leading monomial."""
    lms = _minimalize(list(leading_monomials))
    if any(not any(m) for m in lms):
        return -1
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in lms]
    for k in range(nvars, -1, -1):
        for U in combinations(range(nvars), k):
            U = frozenset(U)
            if not any(s <= U for s in supports):
                return k
    return 0


@dataclass
class HilbertData:
    numerator: list          # HS = numerator(t) / (1-t)^nvars
    h_vector: list           # HS = h_vector(t) / (1-t)^dim
    dim: int
    multiplicity: int
    nvars: int

    def hf(self, d: int) -> int:
        if d < 0:
            return 0
        n = self.nvars
        return sum(c * comb(n - 1 + d - k, n - 1) for k, c in enumerate(self.numerator) if k <= d)


def hilbert_data_monomial(leading_monomials, nvars) -> HilbertData:
    num = hilbert_numerator(leading_monomials, nvars)
    if not any(num):
        return HilbertData([0], [0], -1, 0, nvars)
    h = list(num)
    k = 0
    while sum(h) == 0:
        h = _divide_one_minus_t(h)
        k += 1
    return HilbertData(num, h, nvars - k, sum(h), nvars)


# ---------------------------------------------------------------------------
# the variety
# ---------------------------------------------------------------------------

class VarietyPresentation:
    """X = V(p) in P^n with coordinate ring R = S/p.

    Primality of ``p`` is trusted; homogeneity is enforced.
    """

    def __init__(self, ring: PolyRingCtx, generators=(), limits: Limits | None = None, name=None):
        if ring.order != GREVLEX:
            ring = ring.with_order(GREVLEX)
        self.ring = ring
        self.ideal = Ideal(ring, [g if isinstance(g, Poly) else ring(g) for g in generators],
                           homogeneous=True)
        self.limits = limits or DEFAULT_LIMITS
        self.name = name
        self._hf_cache = {}

    def __repr__(self):
        gens = ", ".join(map(str, self.ideal.generators)) or "0"
        return f"VarietyPresentation({self.ring.field}[{','.join(self.ring.variables)}]/({gens}))"

    @property
    def nvars(self) -> int:
        return self.ring.nvars

    @property
    def n(self) -> int:
        return self.ring.nvars - 1

    @cached_property
    def gb(self):
        return self.ideal.gb(GREVLEX, self.limits)

    @cached_property
    def hilbert(self) -> HilbertData:
        return hilbert_data_monomial(self.gb.leading_monomials, self.nvars)

    @property
    def r(self) -> int:
        """Krull dimension of R (dimension of X plus one)."""
        return self.hilbert.dim

    @property
    def dim_x(self) -> int:
        return self.r - 1

    @property
    def multiplicity(self) -> int:
        return self.hilbert.multiplicity

    @cached_property
    def minimal_generators(self) -> list:
        kept = []
        for g in sorted(self.ideal.generators, key=lambda f: f.degree):
            if kept and Ideal(self.ring, kept).gb(GREVLEX, self.limits).contains(g):
                continue
            kept.append(g)
        return kept

    @property
    def generator_degrees(self) -> list:
        return [g.degree for g in self.minimal_generators]

    @property
    def d0(self) -> int:
        return max(self.generator_degrees, default=0)

    def hf(self, d: int) -> int:
        """HF_R(d)."""
        v = self._hf_cache.get(d)
        if v is None:
            v = self.hilbert.hf(d)
            self._hf_cache[d] = v
        return v

    def hf_ideal(self, d: int) -> int:
        """HF_p(d) = dim_k p_d."""
        return self.ring.count_monomials(d) - self.hf(d)

    @property
    def nondegenerate(self) -> bool:
        return self.hf_ideal(1) == 0

    def over(self, field: FieldSpec) -> VarietyPresentation:
        ring = self.ring.with_field(field)
        return VarietyPresentation(ring, [g.change_ring(ring) for g in self.ideal.generators],
                                   self.limits, self.name)

    def poly(self, value) -> Poly:
        if isinstance(value, Poly):
            return value if value.ring == self.ring else value.change_ring(self.ring)
        return self.ring(value)

    def normal_form(self, f: Poly) -> Poly:
        return self.gb.reduce(self.poly(f))

    def contains(self, f: Poly) -> bool:
        return self.normal_form(f).is_zero()

    @cached_property
    def _std(self):
        return {}

    def standard_monomials(self, d: int) -> list:
        s = self._std.get(d)
        if s is None:
            s = self.gb.standard_monomials(d)
            self._std[d] = s
        return s

    def coordinates(self, f: Poly, d: int | None = None) -> dict:
        """Coefficients of NF(f) on the standard monomials of degree ``d``."""
        f = self.normal_form(f)
        if d is None:
            d = f.degree
        index = {m: i for i, m in enumerate(self.standard_monomials(d))}
        return {index[m]: c for m, c in f.to_dict().items()}

    def with_forms(self, forms) -> Ideal:
        return self.ideal + [self.poly(f) for f in forms]


def hilbert_function(V: VarietyPresentation, d: int) -> int:
    return V.hf(d)


def hilbert_data(V: VarietyPresentation) -> HilbertData:
    return V.hilbert


def krull_dim(I: Ideal, limits: Limits | None = None) -> int:
    """dim S/I from the initial ideal (grevlex)."""
    G = I.gb(GREVLEX, limits)
    return krull_dim_monomial(G.leading_monomials, I.ring.nvars)


# ---------------------------------------------------------------------------
# principal class: two routes
# ---------------------------------------------------------------------------

def principal_class_test(V: VarietyPresentation, forms) -> bool:
    """codim_R(forms) == len(forms), via dim R/(forms) == r - j."""
    forms = [V.poly(f) for f in forms]
    j = len(forms)
    if not 1 <= j <= V.r:
        raise PreconditionViolated(f"need 1 <= j <= r = {V.r}, got j = {j}")
    if any(V.contains(f) for f in forms):
        return False
    return krull_dim(V.with_forms(forms), V.limits) == V.r - j


def _common_degree(forms):
    degs = {f.degree for f in forms if f}
    if len(degs) > 1 or any(not f.is_homogeneous() for f in forms):
        raise PreconditionViolated("forms must be homogeneous of one degree")
    return degs.pop() if degs else 0


def tau_floor(V: VarietyPresentation, d: int) -> int:
    return max([d] + V.generator_degrees)


@dataclass
class TauMatrix:
    """Presentation matrix of (g_1..g_j) -> sum g_i f_i, R_{m-d}^j -> R_m.

    Rows index the standard monomials of degree m; columns come in j blocks,
    block i holding NF(u * f_i) for the standard monomials u of degree m-d.
    """

    forms: list
    m: int
    rows: list
    columns: list
    entries: list = field(repr=False)   # sparse columns: list of {row: value}

    @property
    def shape(self):
        return len(self.rows), len(self.columns)

    def dense(self):
        M = [[0] * len(self.columns) for _ in self.rows]
        for j, col in enumerate(self.entries):
            for i, v in col.items():
                M[i][j] = v
        return M

    def rank(self, p: int) -> int:
        E = Echelon(p)
        for col in self.entries:
            E.add(col)
        return E.rank


def tau_matrix(V: VarietyPresentation, forms, m: int) -> TauMatrix:
    forms = [V.poly(f) for f in forms]
    d = _common_degree(forms)
    rows = V.standard_monomials(m)
    basis = V.standard_monomials(m - d)
    cols, entries = [], []
    for i, f in enumerate(forms):
        for u in basis:
            cols.append((i, u))
            entries.append(V.coordinates(f.mul_monomial(u), m))
    return TauMatrix(forms, m, rows, cols, entries)


def tau_surjective(V: VarietyPresentation, forms, m: int) -> bool:
    """Is tau^m onto R_m?  Requires r forms and m >= max(d, generator degrees)."""
    forms = [V.poly(f) for f in forms]
    if len(forms) != V.r:
        raise PreconditionViolated(f"tau^m needs exactly r = {V.r} forms")
    d = _common_degree(forms)
    floor = tau_floor(V, d)
    if m < floor:
        raise PreconditionViolated(f"m = {m} below the floor {floor}")
    T = tau_matrix(V, forms, m)
    return T.rank(V.ring.field.p) == len(T.rows)


def tau_decide(V: VarietyPresentation, forms, sweep: int = 4):
    """Sweep m over [floor, floor + sweep]; True on surjectivity, else None (indeterminate)."""
    forms = [V.poly(f) for f in forms]
    floor = tau_floor(V, _common_degree(forms))
    for m in range(floor, floor + sweep + 1):
        if tau_surjective(V, forms, m):
            return True
    return None


# ---------------------------------------------------------------------------
# grade and analytic spread
# ---------------------------------------------------------------------------

def grade_at_least_2(V: VarietyPresentation, generators) -> bool:
    """grade(I, R) >= 2 for I generated by ``generators`` (lifts to S).

    With g the first generator outside p (a nonzerodivisor since R is a
    domain), grade(I) >= 2 iff some element of I is regular on R/(g), iff
    (g) :_R I == (g).
    """
    gens = [V.poly(f) for f in generators]
    nonzero = [f for f in gens if not V.contains(f)]
    if not nonzero:
        return False
    g = nonzero[0]
    A = V.ideal + [g]
    B = Ideal(V.ring, [f for f in nonzero[1:]])
    if not B.generators:
        return False
    Q = colon_ideal(A, B, V.limits)
    return Q.gb(GREVLEX, V.limits) == A.gb(GREVLEX, V.limits)


def fiber_ideal(V: VarietyPresentation, forms) -> Ideal:
    """Kernel of k[y_0..y_{s-1}] -> R, y_i -> f_i (the special fiber relations)."""
    forms = [V.poly(f) for f in forms]
    d = _common_degree(forms)
    if all(V.contains(f) for f in forms):
        raise PreconditionViolated("all forms lie in the defining ideal")
    ynames = V.ring.fresh_names("y", len(forms))
    aux = PolyRingCtx(list(V.ring.variables) + ynames, V.ring.field, GREVLEX)
    gens = [g.change_ring(aux) for g in V.ideal.generators]
    gens += [aux.var(y) - f.change_ring(aux) for y, f in zip(ynames, forms)]
    weights = [1] * V.nvars + [max(d, 1)] * len(forms)
    return eliminate(Ideal(aux, gens), ynames, V.limits, weights=weights)


def analytic_spread(V: VarietyPresentation, forms) -> int:
    """Krull dimension of k[f_1..f_s] (forms of one degree)."""
    K = fiber_ideal(V, forms)
    return krull_dim(K, V.limits)


def is_regular_sequence(V: VarietyPresentation, f, g) -> bool:
    """(f, g) is a regular sequence on R: f outside p, g regular on R/(f)."""
    f, g = V.poly(f), V.poly(g)
    if V.contains(f):
        return False
    A = V.ideal + [f]
    if A.gb(GREVLEX, V.limits).contains(g):
        return False
    Q = colon_ideal(A, Ideal(V.ring, [g]), V.limits)
    return Q.gb(GREVLEX, V.limits) == A.gb(GREVLEX, V.limits)
