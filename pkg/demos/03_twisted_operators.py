"""The twisted operator families and the critical twist values.

For each algebra there is a family of second-order operators pi^y
depending on a formal twist parameter L.  Three things happen at the
two special values 1/2 -+ 1/(4m):

  * the double commutator [pi^y, [pi^y, w]] vanishes (it equals a
    quadratic in L times w tr(y q^-1)^2, and the quadratic's roots are
    exactly those values);
  * the polynomial module generated by 1 and w becomes stable;
  * conjugation by w exchanges the two critical families.
"""

from fractions import Fraction

from twistedops import rep, verify
from twistedops.jordan import from_selector
from twistedops.ring import SuperFn
from twistedops.weyl import DiffOp, diffop_str

J = from_selector("full:1")
print("one-coordinate picture (full:1):")
print("  pi^+ =", diffop_str(rep.pi_plus(J, J.basis_element(0))))
print("  pi^- =", diffop_str(rep.pi_minus(J, J.basis_element(0))))
K, dim = rep.k_span(J)
print("  [pi^+, pi^-] =", diffop_str(K[0]), " (span dimension", dim, ")")

print()
for selector in ("full:1", "sym:2", "full:2", "spin:3", "spin:4", "spin:5"):
    J = from_selector(selector)
    quad = verify.double_commutator_quadratic(J)
    lo, hi = quad.quadratic_roots()
    lam0, lam0p = rep.critical_pair(J)
    print(f"{selector:7s}  m={str(J.m):4s}  quadratic {str(quad):28s} roots {lo}, {hi}"
          f"   closed form {Fraction(lam0)}, {Fraction(lam0p)}")

print()
J = from_selector("sym:2")
lam0, lam0p = rep.critical_pair(J)
y = J.basis_element(0)
upper = rep.pi_minus(J, y, lam0p)
lower = rep.pi_minus(J, y, lam0)
print("conjugation by w on sym:2 maps the upper family to the lower:",
      upper.conjugate_by_w() == lower)

w = SuperFn.w(J.ring)
at0 = rep.pi_minus(J, y, lam0)
atg = rep.pi_minus(J, y, Fraction(5, 7))
print("pi(w) at the critical twist:", diffop_str(DiffOp.mult(J, at0.apply(w))) if not at0.apply(w).is_zero() else "0")
out = atg.apply(w)
print("pi(w) at a generic twist has denominator exponent:", out.od.k)
