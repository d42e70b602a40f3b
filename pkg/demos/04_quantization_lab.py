"""The one-variable quantization lab.

Weyl symmetrization sends zeta^a xi^b to the average of all ways of
interleaving a copies of w with b copies of d/dw.  Pulling operator
composition back through this map yields the circle product on
C[zeta, xi]; its graded components alternate in sign, its supertrace is
the constant term, and the pairing Q(xi^p, zeta^q) = 2^-p p! on the
diagonal drops out of the computation.
"""

from twistedops.moyal import (
    GENERATORS, PolyZX, circle, c_component, dequantize, lambda_op,
    pairing, poisson, supertrace, symmetrize,
)
from twistedops.ring import Scalar
from fractions import Fraction

zeta, xi = PolyZX.zeta(), PolyZX.xi()

print("symmetrize(zeta*xi) =", symmetrize(PolyZX.monomial(1, 1)))
print("dequantize(w d)     =", dequantize(symmetrize(PolyZX.monomial(1, 1)) - symmetrize(PolyZX.one()).scale(Scalar(Fraction(1, 2)))))

print("xi o zeta - zeta o xi =", circle(xi, zeta) - circle(zeta, xi))
print("zeta o xi             =", circle(zeta, xi))

print("\npairing on the diagonal:")
for p in range(7):
    print(f"  Q(xi^{p}, zeta^{p}) = {pairing(PolyZX.xi(p), PolyZX.zeta(p))}")

print("\ngraded components of (zeta xi) o (zeta xi):")
phi = PolyZX.monomial(1, 1)
for p in range(3):
    print(f"  C_{p} =", c_component(phi, phi, p))

print("\nthe quadratic generators act by multiplication + half-bracket + a"
      "\nsecond-order lowering operator, exactly:")
psi = PolyZX.monomial(2, 1)
for tag, gen in GENERATORS.items():
    lhs = circle(gen, psi)
    rhs = gen * psi + poisson(gen, psi).scale(Scalar(Fraction(1, 2))) + lambda_op(tag, psi)
    print(f"  {tag:7s} {lhs == rhs}")

print("\nabelian collapse: zeta^2 o zeta^3 =", circle(PolyZX.zeta(2), PolyZX.zeta(3)))
print("supertrace of 1:", supertrace(PolyZX.one()))
