import random

import pytest

from birkit.algebra import FieldSpec, PolyRingCtx
from birkit.errors import InputError, PreconditionViolated, ResourceLimit
from birkit.groebner import Ideal
from birkit.invariants import VarietyPresentation, tau_surjective
from birkit.locus import (CompositionTemplate, DensityReport, Locus, locus_equations,
                          parameter_names, sample_locus, tau_minor_ideal, vpz_basis)

Q = PolyRingCtx("xyz")
F101 = PolyRingCtx("xyz", FieldSpec.prime(101))
CONIC = ["y^2 - x*z"]


def test_vpz_examples():
    b = Ideal(Q, CONIC)
    basis = vpz_basis(b, 2)
    assert len(basis) == 1
    monos = Q.monomials_of_degree(2)
    f = Q.from_dict({m: c for m, c in zip(monos, basis[0]) if c})
    assert f.normalized() == Q("y^2 - x*z").normalized()
    assert vpz_basis(b, 1) == []
    assert len(vpz_basis(b, 3)) == 3


@pytest.mark.parametrize("gens", [CONIC, ["y^3 - x^2*z"], ["x*y", "y*z", "x*z"], []])
def test_vpz_size_is_hilbert_function_of_ideal(gens):
    V = VarietyPresentation(Q, gens)
    for d in range(6):
        assert len(vpz_basis(V.ideal, d)) == V.hf_ideal(d)


def test_parameter_names():
    assert parameter_names(2, 2) == ["a1_1", "a1_2", "a2_1", "a2_2"]


def test_locus_equations_example():
    T = CompositionTemplate(PolyRingCtx(["z1"])("z1"), Ideal(Q, CONIC), 2)
    L = locus_equations(T)
    assert {str(e) for e in L.equations} == {"a1_1", "a1_2", "a1_3 + a1_4", "a1_5", "a1_6"}


def test_locus_equations_zero_template():
    T = CompositionTemplate(PolyRingCtx(["z1"]).zero(), Ideal(Q, CONIC), 2)
    assert locus_equations(T).equations == []


def test_locus_equations_parameter_cap():
    T = CompositionTemplate(PolyRingCtx(["z1", "z2"])("z1*z2"), Ideal(Q, CONIC), 3)
    with pytest.raises(ResourceLimit):
        locus_equations(T, max_parameters=10)


def _in_locus_points(rng, n):
    """Degree-1 triples (f1, f2, f3) with f1^2 - f2*f3 in the conic ideal."""
    pts = []
    for _ in range(n):
        a = rng.randrange(1, 101)
        b = rng.randrange(1, 101)
        if rng.random() < 0.5:
            f1, f2, f3 = F101("y").scalar_mul(a), F101("x").scalar_mul(b), F101("z").scalar_mul(a * a * pow(b, -1, 101))
        else:
            ell = F101.from_dict({m: rng.randrange(101) for m in F101.monomials_of_degree(1)})
            f1, f2, f3 = ell.scalar_mul(a), ell.scalar_mul(b), ell.scalar_mul(a * a * pow(b, -1, 101))
        pts.append([f.coeff(m) for f in (f1, f2, f3) for m in F101.monomials_of_degree(1)])
    return pts


def test_locus_equations_match_direct_membership():
    b = Ideal(F101, CONIC)
    G = b.gb()
    rng = random.Random(31)
    # quadratic template, linear forms
    T = CompositionTemplate(PolyRingCtx(["z1", "z2", "z3"], FieldSpec.prime(101))("z1^2 - z2*z3"), b, 1)
    L = locus_equations(T)
    pts = _in_locus_points(rng, 150) + [[rng.randrange(101) for _ in range(9)] for _ in range(150)]
    hits = 0
    for pt in pts:
        direct = G.contains(T.substitute(pt))
        assert L.vanish_at(pt) == direct
        hits += direct
    assert 150 <= hits < len(pts)
    # linear template, quadratic forms: perturb members of b_2 by random noise
    T = CompositionTemplate(PolyRingCtx(["z1"], FieldSpec.prime(101))("z1"), b, 2)
    L = locus_equations(T)
    gen = [F101("y^2 - x*z").coeff(m) for m in F101.monomials_of_degree(2)]
    pts = []
    for _ in range(250):
        c = rng.randrange(101)
        pt = [c * g % 101 for g in gen]
        if rng.random() < 0.5:
            pt[rng.randrange(6)] = (pt[rng.randrange(6)] + rng.randrange(1, 101)) % 101
        pts.append(pt)
    for pt in pts:
        assert L.vanish_at(pt) == G.contains(T.substitute(pt))


def test_tau_minor_ideal_examples():
    P1 = VarietyPresentation(PolyRingCtx("xy"), [])
    I = tau_minor_ideal(P1, 1, 1)
    assert len(I.generators) == 1
    g = I.generators[0]
    assert g in (I.ring("a1_1*a2_2 - a1_2*a2_1"), I.ring("a1_2*a2_1 - a1_1*a2_2"))
    with pytest.raises(PreconditionViolated):
        tau_minor_ideal(VarietyPresentation(Q, CONIC), 1, 1)


def test_tau_minors_agree_with_rank_at_points():
    V = VarietyPresentation(F101, CONIC)
    I = tau_minor_ideal(V, 1, 2)
    assert len(I.generators) == 6
    rng = random.Random(8)
    monos = F101.monomials_of_degree(1)
    seen = set()
    for k in range(120):
        if k % 3 == 0:
            # a tuple through the point (1:0:0) of the conic: not surjective
            pt = [0] + [rng.randrange(101) for _ in range(2)] + [0] + [rng.randrange(101) for _ in range(2)]
        else:
            pt = [rng.randrange(101) for _ in range(6)]
        forms = [F101.from_dict({m: pt[i * 3 + j] for j, m in enumerate(monos) if pt[i * 3 + j]})
                 for i in range(2)]
        if any(not f for f in forms):
            continue
        vanish = all(g.evaluate(pt) == 0 for g in I.generators)
        surj = tau_surjective(V, forms, 2)
        assert surj == (not vanish)
        seen.add(surj)
    assert seen == {True, False}


def test_locus_parse():
    assert str(Locus.parse("C2")) == "C2"
    assert Locus.parse("n3") == Locus("N", 3)
    for bad in ("G3", "X2", "C0", ""):
        with pytest.raises(InputError):
            Locus.parse(bad)


def test_sample_examples():
    P2 = VarietyPresentation(Q, [])
    rep = sample_locus(P2, "C2", 1, 200, 101, seed=1)
    assert rep.fraction >= 0.95
    rep = sample_locus(VarietyPresentation(Q, CONIC), "G2", 2, 100, 101, seed=2)
    assert rep.fraction >= 0.9


def test_sample_reproducible_and_parallel_invariant():
    V = VarietyPresentation(Q, CONIC)
    a = sample_locus(V, "N3", 1, 40, 101, seed=5)
    b = sample_locus(V, "N3", 1, 40, 101, seed=5)
    c = sample_locus(V, "N3", 1, 40, 101, seed=5, jobs=2)
    assert a == b == c


def test_sample_preconditions():
    V = VarietyPresentation(Q, CONIC)
    with pytest.raises(PreconditionViolated):
        sample_locus(V, "C2", 1, 0, 101)
    with pytest.raises(PreconditionViolated):
        sample_locus(V, "C3", 1, 5, 101)


def test_density_report_csv():
    rep = DensityReport("C2", 101, 10, 9, 0)
    assert rep.to_csv() == "locus,prime,trials,hits,seed\nC2,101,10,9,0\n"
    assert rep.to_csv(header=False) == "C2,101,10,9,0\n"
    assert rep.to_dict()["fraction"] == 0.9
