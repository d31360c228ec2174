"""Parameter loci of tuples of forms.

A degree-d form is f_a = sum_j a_j M_j over the monomials M_j of degree d;
tuples of forms are points of a product of affine spaces.  This module
writes down equations for "p(f_a1, ..., f_am) lies in b", the linear space
b_d, the maximal minors of the symbolic tau^m matrix, and Monte Carlo
densities of the principal-class, grade-2 and maximal-spread loci.
"""

from __future__ import annotations

import csv
import io
import random
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .algebra.field import FieldSpec
from .algebra.poly import Poly, PolyRingCtx
from .errors import InputError, PreconditionViolated, ResourceLimit
from .groebner import Ideal
from .invariants import (VarietyPresentation, analytic_spread, principal_class_test,
                         is_regular_sequence, tau_floor)

MAX_PARAMETERS = 240


# ---------------------------------------------------------------------------
# the linear space b_d
# ---------------------------------------------------------------------------

def vpz_basis(b: Ideal, d: int) -> list:
    """Basis of b_d as coefficient vectors on ``monomials_of_degree(d)``."""
    if not b.is_homogeneous:
        raise PreconditionViolated("ideal must be homogeneous")
    ring = b.ring
    G = b.gb(limits=None)
    monos = ring.monomials_of_degree(d)
    index = {m: i for i, m in enumerate(monos)}
    out = []
    for m in monos:
        if not G.in_leading_ideal(m):
            continue
        mono = ring.monomial(m)
        vec = [0] * len(monos)
        for e, c in (mono - G.reduce(mono)).terms:
            vec[index[e]] = c
        out.append(vec)
    return out


# ---------------------------------------------------------------------------
# composition templates
# ---------------------------------------------------------------------------

def parameter_names(m: int, N: int) -> list:
    return [f"a{i}_{j}" for i in range(1, m + 1) for j in range(1, N + 1)]


@dataclass
class CompositionTemplate:
    """p(z_1..z_m) together with the target ideal b and argument degree d."""

    p: Poly
    target: Ideal
    arg_degree: int

    def __post_init__(self):
        if self.p and not self.p.is_homogeneous():
            raise PreconditionViolated("template polynomial must be homogeneous")
        if self.arg_degree < 0:
            raise PreconditionViolated("argument degree must be non-negative")

    @property
    def m(self) -> int:
        return self.p.ring.nvars

    @property
    def monomials(self) -> list:
        return self.target.ring.monomials_of_degree(self.arg_degree)

    def forms_at(self, point) -> list:
        """The m forms f_a for a flat parameter vector (block i = form i)."""
        ring = self.target.ring
        monos = self.monomials
        N = len(monos)
        return [ring.from_dict({mono: point[i * N + j] for j, mono in enumerate(monos) if point[i * N + j]})
                for i in range(self.m)]

    def substitute(self, point) -> Poly:
        forms = self.forms_at(point)
        if not self.p:
            return self.target.ring.zero()
        return self.p.compose(forms)


@dataclass
class LocusEquations:
    parameter_ring: PolyRingCtx
    equations: list

    def vanish_at(self, point) -> bool:
        return all(e.evaluate(point) == 0 for e in self.equations)


def locus_equations(T: CompositionTemplate, max_parameters: int = MAX_PARAMETERS) -> LocusEquations:
    """Equations in the a_ij cutting out {p(f_a1..f_am) in b}.

    Normal form is linear over k, so each x-monomial of the expansion is
    reduced on its own and its a-coefficient carried along.
    """
    xring = T.target.ring
    monos = T.monomials
    N = len(monos)
    names = parameter_names(T.m, N)
    if len(names) > max_parameters:
        raise ResourceLimit("parameters", max_parameters)
    aring = PolyRingCtx(names, xring.field)
    if not T.p:
        return LocusEquations(aring, [])
    both = PolyRingCtx(names + list(xring.variables), xring.field)
    values = []
    for i in range(T.m):
        acc = both.zero()
        for j, mono in enumerate(monos):
            acc = acc + both.var(i * N + j) * both.monomial((0,) * len(names) + mono)
        values.append(acc)
    expanded = T.p.compose(values)
    k = len(names)
    by_x = {}
    for e, c in expanded.terms:
        by_x.setdefault(e[k:], {})[e[:k]] = c
    G = T.target.gb()
    collected = {}
    for xm, coeffs in by_x.items():
        coeff_poly = aring.from_dict(coeffs)
        for std, c in G.reduce(xring.monomial(xm)).terms:
            collected[std] = collected.get(std, aring.zero()) + coeff_poly.scalar_mul(c)
    eqs = [e for _, e in sorted(collected.items(), key=lambda kv: xring.key(kv[0]), reverse=True) if e]
    return LocusEquations(aring, eqs)


# ---------------------------------------------------------------------------
# symbolic tau^m
# ---------------------------------------------------------------------------

def _minors(rows, ncols, k):
    """All k x k minors of a matrix of Polys using the first k rows.

    Expansion along rows with memoisation on column subsets (bitmasks).
    """
    layer = {0: None}
    for r in range(k):
        nxt = {}
        row = rows[r]
        for mask, val in layer.items():
            for c in range(ncols):
                if mask >> c & 1:
                    continue
                entry = row[c]
                if not entry:
                    continue
                # sign: number of chosen columns greater than c
                higher = bin(mask >> (c + 1)).count("1")
                term = entry if val is None else val * entry
                if higher % 2:
                    term = -term
                new = mask | (1 << c)
                nxt[new] = term if new not in nxt else nxt[new] + term
        layer = {m: v for m, v in nxt.items() if v}
        if not layer:
            return []
    return [v for _, v in sorted(layer.items())]


def tau_minor_ideal(V: VarietyPresentation, d: int, m: int,
                    max_parameters: int = MAX_PARAMETERS, max_columns: int = 24) -> Ideal:
    """Ideal of maximal minors of tau^m for r generic forms of degree d."""
    if m < tau_floor(V, d):
        raise PreconditionViolated(f"m = {m} below the floor {tau_floor(V, d)}")
    r = V.r
    ring = V.ring
    monos = ring.monomials_of_degree(d)
    N = len(monos)
    names = parameter_names(r, N)
    if len(names) > max_parameters:
        raise ResourceLimit("parameters", max_parameters)
    aring = PolyRingCtx(names, ring.field)
    rows_basis = V.standard_monomials(m)
    cols_basis = V.standard_monomials(m - d)
    ncols = r * len(cols_basis)
    if ncols > max_columns:
        raise ResourceLimit("tau columns", max_columns)
    nrows = len(rows_basis)
    matrix = [[aring.zero() for _ in range(ncols)] for _ in range(nrows)]
    for i in range(r):
        for a, u in enumerate(cols_basis):
            col = i * len(cols_basis) + a
            for j, mono in enumerate(monos):
                coords = V.coordinates(ring.monomial(tuple(x + y for x, y in zip(u, mono))), m)
                for b, c in coords.items():
                    matrix[b][col] = matrix[b][col] + aring.var(i * N + j).scalar_mul(c)
    if nrows > ncols:
        return Ideal(aring, [])
    return Ideal(aring, _minors(matrix, ncols, nrows))


# ---------------------------------------------------------------------------
# Monte Carlo densities
# ---------------------------------------------------------------------------

_LOCUS = re.compile(r"^(C|G|N)_?(\d+)$")


@dataclass(frozen=True)
class Locus:
    kind: str      # "C", "G" or "N"
    count: int

    @classmethod
    def parse(cls, text: str) -> Locus:
        m = _LOCUS.match(text.strip().upper())
        if not m:
            raise InputError(f"unknown locus {text!r}; expected C<j>, G2 or N<count>")
        kind, count = m.group(1), int(m.group(2))
        if kind == "G" and count != 2:
            raise InputError("only G2 is supported")
        if count < 1:
            raise InputError("locus needs at least one form")
        return cls(kind, count)

    def __str__(self):
        return f"{self.kind}{self.count}"


@dataclass
class DensityReport:
    locus: str
    prime: int
    trials: int
    hits: int
    seed: int

    FIELDS = ("locus", "prime", "trials", "hits", "seed")

    @property
    def fraction(self) -> float:
        return self.hits / self.trials

    def to_dict(self):
        return {k: getattr(self, k) for k in self.FIELDS} | {"fraction": self.fraction}

    def to_csv(self, header: bool = True) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if header:
            w.writerow(self.FIELDS)
        w.writerow([getattr(self, k) for k in self.FIELDS])
        return buf.getvalue()


def _classify(V: VarietyPresentation, locus: Locus, forms) -> bool:
    if locus.kind == "C":
        if not 1 <= locus.count <= V.r:
            raise PreconditionViolated(f"C_j needs 1 <= j <= r = {V.r}")
        return principal_class_test(V, forms)
    if locus.kind == "G":
        return is_regular_sequence(V, forms[0], forms[1])
    if all(V.contains(f) for f in forms):
        return False
    return analytic_spread(V, forms) == V.r


def _trial_forms(V, monos, count, seed, i):
    rng = random.Random(f"{seed}:{i}")
    p = V.ring.field.p
    ring = V.ring
    return [ring.from_dict({mono: rng.randrange(p) for mono in monos}) for _ in range(count)]


def _run_trials(V, locus, d, seed, indices):
    monos = V.ring.monomials_of_degree(d)
    return sum(_classify(V, locus, _trial_forms(V, monos, locus.count, seed, i)) for i in indices)


def _worker(payload):
    variables, gens, p, locus, d, seed, indices = payload
    ring = PolyRingCtx(variables, FieldSpec.prime(p))
    V = VarietyPresentation(ring, gens)
    return _run_trials(V, locus, d, seed, indices)


def sample_locus(V: VarietyPresentation, locus, d: int, trials: int, prime: int,
                 seed: int = 0, jobs: int = 1) -> DensityReport:
    """Fraction of uniformly random form tuples over F_prime that lie in ``locus``.

    Trial i draws from ``Random(f"{seed}:{i}")`` so the count does not depend
    on ``jobs``.
    """
    if isinstance(locus, str):
        locus = Locus.parse(locus)
    if trials < 1:
        raise PreconditionViolated("trials must be at least 1")
    if d < 1:
        raise PreconditionViolated("degree must be at least 1")
    Vp = V.over(FieldSpec.prime(prime))
    if jobs <= 1 or trials < 2 * jobs:
        hits = _run_trials(Vp, locus, d, seed, range(trials))
    else:
        gens = [str(g) for g in Vp.ideal.generators]
        chunks = [range(k, trials, jobs) for k in range(jobs)]
        payloads = [(list(Vp.ring.variables), gens, prime, locus, d, seed, c) for c in chunks]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            hits = sum(pool.map(_worker, payloads))
    return DensityReport(str(locus), prime, trials, hits, seed)
