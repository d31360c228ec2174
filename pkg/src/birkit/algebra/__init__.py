from .field import QQ, FieldSpec, is_prime
from .monomial import GREVLEX, LEX, Monomial, MonomialOrder, block_order
from .parse import poly_parse
from .poly import Poly, PolyRingCtx


def poly_arith(op: str, a: Poly, b):
    """Dispatch ``add``/``sub``/``mul``/``scalar_mul`` on polynomials."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "scalar_mul":
        return a.scalar_mul(b)
    raise ValueError(f"unknown operation {op!r}")


def leading_term(f: Poly):
    return f.leading_term()


def monomials_of_degree(ring: PolyRingCtx, d: int) -> list:
    return ring.monomials_of_degree(d)


__all__ = [
    "QQ", "FieldSpec", "is_prime", "GREVLEX", "LEX", "Monomial", "MonomialOrder",
    "block_order", "poly_parse", "Poly", "PolyRingCtx", "poly_arith", "leading_term",
    "monomials_of_degree",
]
