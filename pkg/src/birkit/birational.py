"""Rational self-maps of a projective variety X = V(p).

A map is held as one representative (n+1 forms of a common degree d).
Everything that asks for "some representative" or "some inverse" is turned
into linear algebra over the standard-monomial bases of R = S/p: the
conditions g_i h_j - g_j h_i in p are linear in the coefficients of g.
"""

from __future__ import annotations

import enum
import random
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil

from .algebra.field import FieldSpec
from .algebra.monomial import LEX, block_order
from .algebra.poly import PolyRingCtx
from .errors import (HomogeneityError, InputError, NotApplicable, PreconditionViolated,
                     ZeroPolynomial)
from .groebner import Ideal, eliminate, saturate
from .invariants import (VarietyPresentation, analytic_spread, grade_at_least_2,
                         hilbert_data_monomial, krull_dim)
from .linalg import nullspace

PROBE_PRIME = 10007


class RationalMap:
    """h = (h_0 : ... : h_n) : X -> X given by one representative."""

    def __init__(self, variety: VarietyPresentation, forms, name: str | None = None):
        self.variety = variety
        self.name = name
        forms = tuple(variety.poly(f) for f in forms)
        if len(forms) != variety.nvars:
            raise InputError(f"a map of P^{variety.n} needs {variety.nvars} forms, got {len(forms)}")
        nonzero = [f for f in forms if f]
        if not nonzero:
            raise ZeroPolynomial("all forms are zero")
        for f in nonzero:
            if not f.is_homogeneous():
                raise HomogeneityError(f"form {f} is not homogeneous")
        degrees = {f.degree for f in nonzero}
        if len(degrees) > 1:
            raise HomogeneityError(f"forms have different degrees {sorted(degrees)}")
        self.forms = forms
        self.degree = degrees.pop()
        if all(variety.contains(f) for f in forms):
            raise PreconditionViolated("every form lies in the defining ideal")
        self.cache = {}

    def __repr__(self):
        label = f"{self.name}: " if self.name else ""
        return f"RationalMap({label}({' : '.join(map(str, self.forms))}))"

    def __str__(self):
        return "(" + " : ".join(map(str, self.forms)) + ")"

    @property
    def base_ideal(self) -> Ideal:
        return Ideal(self.variety.ring, self.forms)

    def after(self, other: RationalMap) -> list:
        """Forms of self o other (substitute other's forms into self)."""
        return [f.compose(other.forms) for f in self.forms]

    def _cached(self, key, fn):
        if key not in self.cache:
            self.cache[key] = fn()
        return self.cache[key]


def _cross_in_ideal(V: VarietyPresentation, a, b) -> bool:
    n = len(a)
    for i in range(n):
        for j in range(i + 1, n):
            if not V.contains(a[i] * b[j] - a[j] * b[i]):
                return False
    return True


def is_well_defined(h: RationalMap) -> bool:
    """p_i(h) in p for every generator p_i."""
    V = h.variety
    return h._cached("well_defined", lambda: all(
        V.contains(g.compose(h.forms)) for g in V.ideal.generators))


def same_map(h: RationalMap, h2: RationalMap) -> bool:
    if h.variety is not h2.variety and h.variety.ring != h2.variety.ring:
        raise PreconditionViolated("maps live on different varieties")
    return _cross_in_ideal(h.variety, h.forms, h2.forms)


def compose_maps(g: RationalMap, f: RationalMap) -> list:
    """Forms of g o f."""
    return g.after(f)


# ---------------------------------------------------------------------------
# linear systems on the standard-monomial basis
# ---------------------------------------------------------------------------

def _vector_to_forms(V, vec, basis):
    s = len(basis)
    ring = V.ring
    out = []
    for i in range(V.nvars):
        out.append(ring.from_dict({u: vec[i * s + a] for a, u in enumerate(basis) if vec[i * s + a]}))
    return tuple(out)


def representatives_of_degree(h: RationalMap, e: int) -> list:
    """Basis of the degree-e representatives of h, modulo p.

    Unknowns are the coefficients of g_0..g_n on the standard monomials of
    degree e; each cross product g_i h_j - g_j h_i contributes the
    coordinates of its normal form.  Returns tuples of forms.
    """
    if e < 1:
        raise PreconditionViolated("representative degree must be at least 1")
    V = h.variety
    d = h.degree
    basis = V.standard_monomials(e)
    s = len(basis)
    if s == 0:
        return []
    prods = [[V.coordinates(f.mul_monomial(u), e + d) if f else {} for u in basis] for f in h.forms]
    rows = defaultdict(dict)
    n1 = V.nvars
    for i in range(n1):
        for j in range(i + 1, n1):
            for a in range(s):
                for b, v in prods[j][a].items():
                    row = rows[(i, j, b)]
                    row[i * s + a] = row.get(i * s + a, 0) + v
                for b, v in prods[i][a].items():
                    row = rows[(i, j, b)]
                    row[j * s + a] = row.get(j * s + a, 0) - v
    vecs = nullspace(list(rows.values()), n1 * s, V.ring.field.p)
    return [_vector_to_forms(V, v, basis) for v in vecs]


def _random_scalar(rng: random.Random, field: FieldSpec):
    return rng.randrange(field.p) if field.p else rng.randint(-50, 50)


def _random_combination(basis, rng, field):
    ring = basis[0][0].ring
    acc = [ring.zero() for _ in basis[0]]
    for vec in basis:
        c = _random_scalar(rng, field)
        if c:
            acc = [a + f.scalar_mul(c) for a, f in zip(acc, vec)]
    return acc


# ---------------------------------------------------------------------------
# dominance and clear degree
# ---------------------------------------------------------------------------

def is_dominant(h: RationalMap) -> bool:
    """Analytic spread of the base ideal equals dim R.

    The spread is defined for any forms, so this does not insist on the map
    being well defined.
    """
    return h._cached("dominant", lambda: analytic_spread(h.variety, h.forms) == h.variety.r)


class Clear(enum.Enum):
    YES = "Yes"
    NO = "No"
    UNKNOWN = "Unknown"


@dataclass
class ClearDegreeVerdict:
    status: Clear
    degree: int
    space_dim: int | None = None
    trials: int = 0
    witness: tuple | None = None

    def to_dict(self):
        return {
            "status": self.status.value,
            "degree": self.degree,
            "space_dim": self.space_dim,
            "trials": self.trials,
            "witness": [str(f) for f in self.witness] if self.witness else None,
        }


def clear_degree_check(h: RationalMap, d: int | None = None, trials: int = 32,
                       seed: int = 0) -> ClearDegreeVerdict:
    """Look for a degree-d representative whose base ideal has grade >= 2 in R.

    The given representative is tried first (when d is its degree), then
    ``trials`` seeded random members of the representative space.  A
    one-dimensional space makes the answer certain either way.
    """
    if not is_well_defined(h):
        raise PreconditionViolated("map is not well defined on X")
    V = h.variety
    d = h.degree if d is None else d
    if d == h.degree and grade_at_least_2(V, h.forms):
        return ClearDegreeVerdict(Clear.YES, d, None, 0, h.forms)
    basis = representatives_of_degree(h, d)
    if not basis:
        return ClearDegreeVerdict(Clear.NO, d, 0, 0, None)
    if len(basis) == 1:
        ok = grade_at_least_2(V, basis[0])
        return ClearDegreeVerdict(Clear.YES if ok else Clear.NO, d, 1, 0, basis[0] if ok else None)
    rng = random.Random(seed)
    for t in range(trials):
        g = _random_combination(basis, rng, V.ring.field)
        if all(V.contains(f) for f in g):
            continue
        if grade_at_least_2(V, g):
            return ClearDegreeVerdict(Clear.YES, d, len(basis), t + 1, tuple(g))
    return ClearDegreeVerdict(Clear.UNKNOWN, d, len(basis), trials, None)


# ---------------------------------------------------------------------------
# inverse maps
# ---------------------------------------------------------------------------

@dataclass
class InverseBound:
    n: int
    m: int
    d: int
    d0: int
    delta: int
    value: int
    exact: bool          # False when the bracket had to be rounded up
    cremona_bound: int   # d^(n-1), the bound for Cremona maps of P^n

    def to_dict(self):
        return {"n": self.n, "m": self.m, "d": self.d, "d0": self.d0, "delta": self.delta,
                "value": str(self.value), "exact": self.exact, "cremona_bound": self.cremona_bound,
                "exceeds_cremona_bound": self.value > self.cremona_bound}


def inverse_degree_bound(V: VarietyPresentation, d: int) -> InverseBound:
    """2n * ceil(delta^(2(n+m+1-dim X)^2) / 2 + delta)^(2^(dim X + 2)), m = n."""
    if d < 1:
        raise PreconditionViolated("degree must be at least 1")
    if not V.nondegenerate:
        raise PreconditionViolated("variety lies in a hyperplane")
    n = m = V.n
    dim_x = V.dim_x
    delta = max(d + 1, V.d0)
    bracket = Fraction(delta ** (2 * (n + m + 1 - dim_x) ** 2), 2) + delta
    exact = bracket.denominator == 1
    value = 2 * n * ceil(bracket) ** (2 ** (dim_x + 2))
    return InverseBound(n, m, d, V.d0, delta, value, exact, d ** (n - 1))


def verify_inverse_pair(f: RationalMap, g: RationalMap) -> bool:
    """g o f and f o g are both the identity modulo p."""
    V = f.variety
    x = V.ring.gens()
    for h in (g.after(f), f.after(g)):
        if all(V.contains(c) for c in h):
            return False
        if not _cross_in_ideal(V, h, x):
            return False
    return True


def inverse_candidates(h: RationalMap, e: int) -> tuple:
    """Solution space of g(h) = identity modulo p in degree e.

    Returns (basis of solutions, image coordinates) where a solution g has
    g_i(h) x_j - g_j(h) x_i in p for all i < j.
    """
    V = h.variety
    d = h.degree
    basis = V.standard_monomials(e)
    s = len(basis)
    ring = V.ring
    images = [V.normal_form(ring.monomial(u).compose(h.forms)) for u in basis]
    gens = ring.gens()
    shifted = [[V.coordinates(gens[j] * im, e * d + 1) if im else {} for im in images]
               for j in range(V.nvars)]
    rows = defaultdict(dict)
    n1 = V.nvars
    for i in range(n1):
        for j in range(i + 1, n1):
            for a in range(s):
                for b, v in shifted[j][a].items():
                    row = rows[(i, j, b)]
                    row[i * s + a] = row.get(i * s + a, 0) + v
                for b, v in shifted[i][a].items():
                    row = rows[(i, j, b)]
                    row[j * s + a] = row.get(j * s + a, 0) - v
    vecs = nullspace(list(rows.values()), n1 * s, V.ring.field.p)
    return [_vector_to_forms(V, v, basis) for v in vecs], images


def find_inverse(h: RationalMap, degree_cap: int, seed: int = 0, tries: int = 8):
    """First degree e <= degree_cap with a verified inverse representative."""
    if not is_well_defined(h) or not is_dominant(h):
        raise PreconditionViolated("inverse search needs a well-defined dominant map")
    V = h.variety
    rng = random.Random(seed)
    for e in range(1, degree_cap + 1):
        sols, _ = inverse_candidates(h, e)
        if not sols:
            continue
        candidates = list(sols)
        if len(sols) > 1:
            candidates += [tuple(_random_combination(sols, rng, V.ring.field)) for _ in range(tries)]
        for g in candidates:
            if all(V.contains(c.compose(h.forms)) for c in g):
                continue
            try:
                inv = RationalMap(V, g, name=f"{h.name}^-1" if h.name else None)
            except (PreconditionViolated, ZeroPolynomial):
                continue
            if is_well_defined(inv) and verify_inverse_pair(h, inv):
                return inv
    return None


def graph_ideal(h: RationalMap) -> Ideal:
    """Bihomogeneous ideal of the graph closure in k[x, y].

    Eliminates t from p(x) + (y_i - t h_i(x)); with t of weight 1 and each
    y_i of weight d + 1 the generators are homogeneous.
    """
    V = h.variety
    d = h.degree
    ynames = V.ring.fresh_names("y", V.nvars)
    (tname,) = V.ring.fresh_names("t", 1)
    aux = PolyRingCtx([tname] + list(V.ring.variables) + ynames, V.ring.field, block_order(1))
    t = aux.var(tname)
    gens = [g.change_ring(aux) for g in V.ideal.generators]
    gens += [aux.var(y) - t * f.change_ring(aux) for y, f in zip(ynames, h.forms)]
    weights = [1] + [1] * V.nvars + [d + 1] * V.nvars
    return eliminate(Ideal(aux, gens), list(V.ring.variables) + ynames, V.limits, weights=weights)


# ---------------------------------------------------------------------------
# fiber probe
# ---------------------------------------------------------------------------

def _roots_mod_p(coeffs: dict, p: int) -> list:
    """Roots in F_p of a univariate polynomial {exponent: coefficient}."""
    top = max(coeffs)
    dense = [coeffs.get(k, 0) % p for k in range(top, -1, -1)]
    out = []
    for a in range(p):
        acc = 0
        for c in dense:
            acc = (acc * a + c) % p
        if not acc:
            out.append(a)
    return out


def _solve_zero_dim(polys, ring: PolyRingCtx, rng: random.Random):
    """One F_p-rational solution of an affine zero-dimensional system, or None."""
    p = ring.field.p
    G = Ideal(ring, polys).gb(LEX)
    if G.is_unit:
        return None
    n = ring.nvars
    last = [g for g in G.elements if all(not any(m[:-1]) for m in g.monomials())]
    if not last:
        return None
    uni = last[0]
    roots = _roots_mod_p({m[-1]: int(c) for m, c in uni.terms}, p)
    rng.shuffle(roots)
    if n == 1:
        return [roots[0]] if roots else None
    sub = PolyRingCtx(ring.variables[:-1], ring.field, LEX)
    for a in roots:
        values = sub.gens() + [sub.constant(a)]
        rest = [g.compose(values) for g in G.elements]
        sol = _solve_zero_dim([g for g in rest if g], sub, rng)
        if sol is not None:
            return sol + [a]
    return None


def random_point(V: VarietyPresentation, rng: random.Random, attempts: int = 20):
    """A random F_p-point of X (V over a prime field), via random linear sections."""
    ring = V.ring
    p = ring.field.p
    if not p:
        raise PreconditionViolated("random points need a prime field")
    lex = ring.with_order(LEX)
    gens = ring.gens()

    def random_linear():
        return sum((g.scalar_mul(rng.randrange(p)) for g in gens), ring.zero())

    for _ in range(attempts):
        cuts = [random_linear() for _ in range(V.dim_x)]
        chart = random_linear() - ring.one()
        polys = [g.change_ring(lex) for g in list(V.ideal.generators) + cuts + [chart]]
        sol = _solve_zero_dim(polys, lex, rng)
        if sol is not None:
            return sol
    return None


def fiber_degree(h: RationalMap, point, prime: int = PROBE_PRIME):
    """Degree of the fiber of h through ``point`` (a point of X over F_prime).

    Returns None when the point lies in the base locus or the fiber is not
    zero-dimensional.
    """
    V = h.variety.over(FieldSpec.prime(prime))
    forms = [f.change_ring(V.ring) for f in h.forms]
    q = [f.evaluate(point) for f in forms]
    if not any(q):
        return None
    n1 = len(forms)
    minors = [forms[i].scalar_mul(q[j]) - forms[j].scalar_mul(q[i])
              for i in range(n1) for j in range(i + 1, n1)]
    J = V.ideal + minors
    k = next(i for i, v in enumerate(q) if v)
    sat = saturate(J, Ideal(V.ring, [forms[k]]), V.limits)
    data = hilbert_data_monomial(sat.gb(limits=V.limits).leading_monomials, V.nvars)
    if data.dim != 1:
        return None
    return data.multiplicity


def fiber_probe(h: RationalMap, points: int = 3, prime: int = PROBE_PRIME, seed: int = 0) -> list:
    V = h.variety.over(FieldSpec.prime(prime))
    rng = random.Random(f"fiber:{seed}")
    out = []
    for _ in range(points):
        pt = random_point(V, rng)
        out.append(None if pt is None else fiber_degree(h, pt, prime))
    return out


# ---------------------------------------------------------------------------
# verdicts
# ---------------------------------------------------------------------------

class Bir(enum.Enum):
    YES = "Yes"
    NO = "No"
    INDETERMINATE = "Indeterminate"


@dataclass
class BirationalVerdict:
    status: Bir
    inverse: RationalMap | None = None
    inverse_degree: int | None = None
    reason: str | None = None
    search_cap: int | None = None
    fiber_degrees: list | None = None

    def to_dict(self):
        return {
            "status": self.status.value,
            "inverse": [str(f) for f in self.inverse.forms] if self.inverse else None,
            "inverse_degree": self.inverse_degree,
            "reason": self.reason,
            "search_cap": self.search_cap,
            "fiber_degrees": self.fiber_degrees,
        }


def default_cap(V: VarietyPresentation, d: int) -> int:
    practical = d ** (V.n - 1) + 2
    if V.nondegenerate:
        return min(practical, inverse_degree_bound(V, d).value)
    return practical


def is_birational(h: RationalMap, degree_cap: int | None = None, seed: int = 0,
                  probe_points: int = 3) -> BirationalVerdict:
    if not is_well_defined(h):
        return BirationalVerdict(Bir.NO, reason="not well defined on X")
    if not is_dominant(h):
        return BirationalVerdict(Bir.NO, reason="not dominant")
    cap = degree_cap if degree_cap is not None else default_cap(h.variety, h.degree)
    inv = find_inverse(h, cap, seed=seed)
    if inv is not None:
        return BirationalVerdict(Bir.YES, inv, inv.degree, search_cap=cap)
    degrees = fiber_probe(h, probe_points, seed=seed)
    seen = [k for k in degrees if k is not None]
    if seen and all(k >= 2 for k in seen):
        return BirationalVerdict(Bir.NO, reason=f"generic fiber degree {min(seen)}",
                                 search_cap=cap, fiber_degrees=degrees)
    return BirationalVerdict(Bir.INDETERMINATE, reason="no inverse up to the search cap",
                             search_cap=cap, fiber_degrees=degrees)


@dataclass
class MapVerdict:
    well_defined: bool
    dominant: bool | None = None
    clear_degree: ClearDegreeVerdict | None = None
    birational: BirationalVerdict | None = None
    in_bir_xd: bool = False
    diagnostics: list = field(default_factory=list)

    def to_dict(self):
        return {
            "well_defined": self.well_defined,
            "dominant": self.dominant,
            "birational": self.birational.to_dict() if self.birational else None,
            "clear_degree": self.clear_degree.to_dict() if self.clear_degree else None,
            "in_bir_xd": self.in_bir_xd,
            "diagnostics": list(self.diagnostics),
        }


def bir_xd_membership(h: RationalMap, d: int | None = None, trials: int = 32, seed: int = 0,
                      degree_cap: int | None = None) -> MapVerdict:
    """Full pipeline: well defined, dominant, birational, clear degree d."""
    d = h.degree if d is None else d
    verdict = MapVerdict(is_well_defined(h), is_dominant(h))
    if not verdict.well_defined:
        verdict.diagnostics.append("some generator of the ideal does not vanish on the forms")
    if not verdict.dominant:
        verdict.diagnostics.append(f"analytic spread below dim R = {h.variety.r}")
    if not (verdict.well_defined and verdict.dominant):
        return verdict
    verdict.birational = is_birational(h, degree_cap, seed=seed)
    verdict.clear_degree = clear_degree_check(h, d, trials, seed)
    if verdict.clear_degree.status is not Clear.YES:
        verdict.diagnostics.append(
            f"no representative of degree {d} with base ideal of grade >= 2 found")
    verdict.in_bir_xd = (verdict.birational.status is Bir.YES
                         and verdict.clear_degree.status is Clear.YES)
    return verdict


# ---------------------------------------------------------------------------
# coordinates, multiplicity check, embedding dimension
# ---------------------------------------------------------------------------

def canonical_coordinates(h: RationalMap, require_clear: bool = False) -> list:
    """NF coefficients of each form on the degree-d standard monomials,
    concatenated and scaled so the first nonzero entry is 1."""
    if not is_well_defined(h):
        raise PreconditionViolated("map is not well defined on X")
    if require_clear and clear_degree_check(h).status is not Clear.YES:
        raise PreconditionViolated("representative does not have clear degree")
    V = h.variety
    d = h.degree
    s = len(V.standard_monomials(d))
    vec = []
    for f in h.forms:
        c = V.coordinates(f, d) if f else {}
        vec.extend(c.get(a, 0) for a in range(s))
    field_ = V.ring.field
    lead = next(v for v in vec if v)
    if field_.p:
        inv = pow(int(lead), -1, field_.p)
        return [int(v) * inv % field_.p for v in vec]
    return [Fraction(v) / lead for v in vec]


@dataclass
class SuvReport:
    applicable: bool
    lhs: int | None = None
    rhs: int | None = None
    equality: bool | None = None
    r: int | None = None
    g: int | None = None
    birational: bool | None = None
    consistent: bool | None = None

    def to_dict(self):
        return dict(self.__dict__)


def suv_check(h: RationalMap, strict: bool = True, birational: bool | None = None) -> SuvReport:
    """Compare e(R) with e(R) d^(r-1) when the base locus on X is empty."""
    if not is_well_defined(h) or not is_dominant(h):
        raise PreconditionViolated("multiplicity check needs a well-defined dominant map")
    V = h.variety
    dim_base = krull_dim(V.with_forms(h.forms), V.limits)
    if dim_base > 0:
        if strict:
            raise NotApplicable("the base locus of the map meets X")
        return SuvReport(False)
    r = V.r
    g = r - max(dim_base, 0)
    lhs = V.multiplicity
    rhs = V.multiplicity * h.degree ** (r - 1)
    if birational is None:
        birational = is_birational(h).status is Bir.YES
    predicted = birational and r <= g + 1
    return SuvReport(True, lhs, rhs, lhs == rhs, r, g, birational, (lhs == rhs) == predicted)


@dataclass
class EdimBound:
    value: int
    c1: bool     # HF_p(d) == 0: the set of such maps is quasi-projective

    def to_dict(self):
        return {"value": self.value, "c1": self.c1}


def edim_bound(V: VarietyPresentation, d: int) -> EdimBound:
    if d < 1:
        raise PreconditionViolated("degree must be at least 1")
    return EdimBound(V.nvars * V.hf(d) - 1, V.hf_ideal(d) == 0)
