"""Twisted operator families attached to a Jordan algebra.

For a generator x on the multiplication side (``p+``) the operator is
multiplication by the linear form tr(x o q); for a generator y on the
derivative side (``p-``) it is the second-order operator

    pi^y = - sum_ij tr({b^i, y, b^j} o q) d_i d_j  -  2 m L d^y

with the twist parameter L kept formal (a LambdaPoly).  On the opposite
patch the same generators act by vector fields: -d^x for x on the plus
side, and for y the quadratic field whose value at p is {p, y, p} plus
the function 2 m L tr(y o p).  The algebraic Fourier transform carries
one family onto the other, which the test suite checks exactly.

The remaining symmetry directions are not written down from a formula:
they are generated as commutators [pi^x, pi^y] and their span is
extracted by exact linear algebra at a specialized rational twist.
"""

from __future__ import annotations

from fractions import Fraction

from .jordan import JElem, JordanAlgebra, PrimitiveIdempotentError  # noqa: F401 (guard error re-export)
from .ring import LAMBDA, LambdaPoly, Scalar, SuperFn, ZPoly, ZERO
from .weyl import DiffOp, PolyOpPlus

# default rational twist used for span/rank computations; any value off
# the critical set works, this one is documented and overridable
GENERIC_TWIST = Fraction(5, 7)


class GGenerator:
    """A symmetry generator: a side tag ('plus' | 'minus') and an element."""

    __slots__ = ("side", "element")

    def __init__(self, side: str, element: JElem):
        if side not in ("plus", "minus"):
            raise ValueError("side must be 'plus' or 'minus'")
        object.__setattr__(self, "side", side)
        object.__setattr__(self, "element", element)

    def __setattr__(self, name, value):  # pragma: no cover
        raise AttributeError("GGenerator is immutable")


def generator_from_selector(J: JordanAlgebra, selector: str) -> GGenerator:
    """Parse ``p+:i``, ``p-:j`` (1-based basis index) or ``idem``."""
    if selector == "idem":
        return GGenerator("minus", J.idempotent_elem())
    side, _, idx = selector.partition(":")
    if side not in ("p+", "p-") or not idx:
        raise ValueError(f"bad generator selector {selector!r}")
    i = int(idx) - 1
    if not 0 <= i < J.n:
        raise ValueError(f"basis index out of range in {selector!r}")
    elem = J.basis_element(i)
    return GGenerator("plus" if side == "p+" else "minus", elem)


# ---------------------------------------------------------------------------
# The operators on the z-side
# ---------------------------------------------------------------------------

def pi_plus(J: JordanAlgebra, x: JElem) -> DiffOp:
    """Multiplication by the linear form q -> tr(x o q); twist-free."""
    form = J.linear_form(x)
    return DiffOp.mult(J, SuperFn.from_zpoly(J.ring, form))


def critical_pair(J: JordanAlgebra) -> tuple[Fraction, Fraction]:
    """The two distinguished twists 1/2 -+ 1/(4m)."""
    shift = Fraction(1, 4) / J.m
    return (Fraction(1, 2) - shift, Fraction(1, 2) + shift)


def pi_minus(J: JordanAlgebra, y: JElem, lam: LambdaPoly | Fraction | None = None) -> DiffOp:
    """Second-order operator for a generator on the derivative side.

    ``lam`` defaults to the formal parameter; pass a Fraction or a
    LambdaPoly to specialize.
    """
    if lam is None:
        lam = LAMBDA
    elif isinstance(lam, Fraction):
        lam = LambdaPoly.from_rational(lam)
    n = J.n
    terms: dict[tuple, SuperFn] = {}
    duals = [J.dual_basis_element(i) for i in range(n)]
    for i in range(n):
        for j in range(i, n):
            trip = J.triple(duals[i], y, duals[j])
            form = J.linear_form(trip)
            if form.is_zero():
                continue
            factor = Scalar(-1) if i == j else Scalar(-2)
            idx = tuple(
                (2 if k == i else 0) if i == j else (1 if k in (i, j) else 0)
                for k in range(n)
            )
            coeff = SuperFn.from_zpoly(J.ring, form.scale(factor))
            terms[idx] = terms.get(idx, SuperFn.zero(J.ring)) + coeff
    scale = lam.scale(Scalar(-2 * J.m))
    for i, yi in enumerate(y.coords):
        if yi.is_zero():
            continue
        idx = tuple(1 if k == i else 0 for k in range(n))
        lin = SuperFn.const(J.ring, scale.scale(yi))
        terms[idx] = terms.get(idx, SuperFn.zero(J.ring)) + lin
    return DiffOp(J, {k: v for k, v in terms.items() if not v.is_zero()})


def pi_operator(J: JordanAlgebra, gen: GGenerator, lam=None) -> DiffOp:
    if gen.side == "plus":
        return pi_plus(J, gen.element)
    return pi_minus(J, gen.element, lam)


# ---------------------------------------------------------------------------
# The vector fields on the u-side
# ---------------------------------------------------------------------------

def eta_plus(J: JordanAlgebra, x: JElem) -> PolyOpPlus:
    """The constant field -d^x."""
    n = J.n
    terms = {}
    for i, xi in enumerate(x.coords):
        if xi.is_zero():
            continue
        idx = tuple(1 if k == i else 0 for k in range(n))
        terms[idx] = ZPoly.const(n, -xi)
    return PolyOpPlus(J, terms)


def eta_minus(J: JordanAlgebra, y: JElem, lam: LambdaPoly | Fraction | None = None) -> PolyOpPlus:
    """Quadratic field p -> {p, y, p} plus the function 2 m L tr(y o p)."""
    if lam is None:
        lam = LAMBDA
    elif isinstance(lam, Fraction):
        lam = LambdaPoly.from_rational(lam)
    n = J.n
    terms: dict[tuple, ZPoly] = {}
    for i in range(n):
        bi = J.basis_element(i)
        for j in range(i, n):
            trip = J.triple(bi, y, J.basis_element(j))
            mono = tuple(
                (2 if k == i else 0) if i == j else (1 if k in (i, j) else 0)
                for k in range(n)
            )
            mult = 1 if i == j else 2
            for k, c in enumerate(trip.coords):
                if c.is_zero():
                    continue
                idx = tuple(1 if t == k else 0 for t in range(n))
                add = ZPoly.monomial(n, mono, c * Scalar(mult))
                terms[idx] = terms.get(idx, ZPoly.zero(n)) + add
    # the order-zero part: 2 m L tr(y o p) = 2 m L sum_i (G y)_i u_i
    zero_idx = (0,) * n
    fn = ZPoly.zero(n)
    two_m = lam.scale(Scalar(2 * J.m))
    for i in range(n):
        g = ZERO
        for j, yj in enumerate(y.coords):
            if J.gram[i][j] and not yj.is_zero():
                g = g + yj * Scalar(J.gram[i][j])
        if not g.is_zero():
            fn = fn + ZPoly.monomial(n, tuple(1 if t == i else 0 for t in range(n)), two_m.scale(g))
    if not fn.is_zero():
        terms[zero_idx] = terms.get(zero_idx, ZPoly.zero(n)) + fn
    return PolyOpPlus(J, {k: v for k, v in terms.items() if not v.is_zero()})


def eta_operator(J: JordanAlgebra, gen: GGenerator, lam=None) -> PolyOpPlus:
    if gen.side == "plus":
        return eta_plus(J, gen.element)
    return eta_minus(J, gen.element, lam)


# ---------------------------------------------------------------------------
# Generated symmetry span at a specialized twist
# ---------------------------------------------------------------------------

def _op_vector(op: DiffOp, columns: dict) -> dict:
    """Flatten an operator into rational coordinates for rank computations.

    Coefficients must be polynomial and twist-free (specialize first).
    ``columns`` assigns stable integer ids to (multi-index, z-monomial,
    part) triples across calls.
    """
    vec = {}
    for beta, c in op.terms.items():
        for part_tag, loc in (("ev", c.ev), ("od", c.od)):
            if loc.k != 0:
                raise ValueError("span computation expects polynomial coefficients")
            for mono, lp in loc.num.terms.items():
                s = lp.constant_value()
                key = (beta, mono, part_tag)
                col = columns.setdefault(key, len(columns))
                vec[col] = s
    return vec


class SpanBasis:
    """Exact row-reduced span of operator coefficient vectors."""

    def __init__(self):
        self.columns: dict = {}
        self.rows: list[dict] = []   # reduced rows, pivot -> 1
        self.pivots: list[int] = []
        self.members: list[DiffOp] = []

    def _reduce(self, vec: dict) -> dict:
        for pivot, row in zip(self.pivots, self.rows):
            c = vec.get(pivot)
            if c is None or c.is_zero():
                continue
            for col, val in row.items():
                acc = vec.get(col, ZERO) - c * val
                if acc.is_zero():
                    vec.pop(col, None)
                else:
                    vec[col] = acc
        return {k: v for k, v in vec.items() if not v.is_zero()}

    def contains(self, op: DiffOp) -> bool:
        return not self._reduce(_op_vector(op, self.columns))

    def add(self, op: DiffOp) -> bool:
        """Insert op; returns True when it enlarged the span."""
        vec = self._reduce(_op_vector(op, self.columns))
        if not vec:
            return False
        pivot = min(vec)
        inv = vec[pivot].inv()
        row = {k: v * inv for k, v in vec.items()}
        self.rows.append(row)
        self.pivots.append(pivot)
        self.members.append(op)
        return True

    @property
    def dimension(self) -> int:
        return len(self.rows)


def k_span(J: JordanAlgebra, lam_value: Fraction = GENERIC_TWIST) -> tuple[list[DiffOp], int]:
    """Basis and dimension of span{[pi^{b_i}, pi^{b_j}]} at a rational twist."""
    basis = SpanBasis()
    minus_ops = [pi_minus(J, J.basis_element(j), lam_value) for j in range(J.n)]
    plus_ops = [pi_plus(J, J.basis_element(i)) for i in range(J.n)]
    for i in range(J.n):
        for j in range(J.n):
            basis.add(plus_ops[i].commutator(minus_ops[j]))
    return basis.members, basis.dimension


def expected_k_dimension(J: JordanAlgebra) -> int:
    """Dimension of the symmetry block fixed by the grading element.

    sym:r -> r^2, full:r -> 2 r^2 - 1, spin:p -> 1 + p(p-1)/2.
    """
    if J.kind == "sym":
        return J.r * J.r
    if J.kind == "full":
        return 2 * J.r * J.r - 1
    if J.kind == "spin":
        p = J.n
        return 1 + p * (p - 1) // 2
    raise ValueError(f"unknown kind {J.kind!r}")


# ---------------------------------------------------------------------------
# The polynomial module generated by 1 and w
# ---------------------------------------------------------------------------

class HElem:
    """A function in the module: both parts polynomial (no F-denominators)."""

    __slots__ = ("fn",)

    def __init__(self, fn: SuperFn):
        if not fn.is_polynomial():
            raise ValueError("not a module element: denominator present")
        object.__setattr__(self, "fn", fn)

    def __setattr__(self, name, value):  # pragma: no cover
        raise AttributeError("HElem is immutable")


def h_membership(f: SuperFn) -> bool:
    """True when f lies in the polynomial module (even and odd parts)."""
    return f.is_polynomial()


def act_on_H(A: DiffOp, h: HElem | SuperFn) -> tuple[SuperFn, bool]:
    """Apply A and report whether the image stays in the module."""
    fn = h.fn if isinstance(h, HElem) else h
    out = A.apply(fn)
    return out, h_membership(out)


# ---------------------------------------------------------------------------
# Distinguished vectors built from the norm derivative operator
# ---------------------------------------------------------------------------

def norm_derivative_op(J: JordanAlgebra) -> DiffOp:
    """The constant-coefficient operator obtained from F by replacing the
    i-th coordinate with the derivative along the i-th dual basis vector."""
    n = J.n
    out = DiffOp.zero(J)
    duals = [DiffOp.directional(J, J.dual_basis_element(i)) for i in range(n)]
    for mono, c in J.normF.terms.items():
        piece = DiffOp.identity(J)
        for i, e in enumerate(mono):
            for _ in range(e):
                piece = piece.compose(duals[i])
        out = out + piece.scale(c)
    return out


def semi_invariant_w_dF(J: JordanAlgebra) -> DiffOp:
    """w . (norm derivative operator): annihilated by every [pi^y, .]
    at the lower critical twist."""
    return DiffOp.mult_w(J).compose(norm_derivative_op(J))


def semi_invariant_dF_w(J: JordanAlgebra) -> DiffOp:
    """(norm derivative operator) . w: the mirror vector at the upper twist."""
    return norm_derivative_op(J).compose(DiffOp.mult_w(J))


def require_primitive_idempotent(J: JordanAlgebra, y: JElem) -> None:
    """Guard used by the idempotent-specific operator identities."""
    J.check_primitive_idempotent(y)  # raises PrimitiveIdempotentError

