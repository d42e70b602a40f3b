"""Twisted operator families, symmetry span, module action."""

from fractions import Fraction

import pytest

from twistedops import rep
from twistedops.jordan import JElem, PrimitiveIdempotentError, from_selector
from twistedops.ring import LAMBDA, LocFn, Scalar, SuperFn, ZPoly, ONE, ZERO
from twistedops.weyl import DiffOp, PolyOpPlus, fourier


def sc(x):
    return Scalar(Fraction(x))


def mono_fn(J, mono, coeff=ONE, odd=False, k=0):
    ctx = J.ring
    frac = LocFn(ctx, ZPoly.monomial(ctx.n, mono, coeff), k)
    if odd:
        return SuperFn.from_locfn(LocFn.zero(ctx), frac)
    return SuperFn.from_locfn(frac)


# ---------------------------------------------------------------------------
# Generator selectors
# ---------------------------------------------------------------------------

def test_generator_selectors(full2):
    g = rep.generator_from_selector(full2, "p+:1")
    assert g.side == "plus" and g.element == full2.basis_element(0)
    g = rep.generator_from_selector(full2, "p-:4")
    assert g.side == "minus" and g.element == full2.basis_element(3)
    g = rep.generator_from_selector(full2, "idem")
    assert g.side == "minus" and g.element == full2.idempotent_elem()
    with pytest.raises(ValueError):
        rep.generator_from_selector(full2, "p+:9")
    with pytest.raises(ValueError):
        rep.generator_from_selector(full2, "k:1")


# ---------------------------------------------------------------------------
# The multiplication side
# ---------------------------------------------------------------------------

def test_pi_plus_rank_one(full1):
    op = rep.pi_plus(full1, full1.basis_element(0))
    assert op == DiffOp.mult(full1, mono_fn(full1, (1,)))
    zero = rep.pi_plus(full1, full1.zero_elem())
    assert zero.is_zero()


def test_pi_plus_full2_offdiagonal(full2):
    # tr(E12 o q) = z21, the coordinate paired by the trace form
    op = rep.pi_plus(full2, full2.basis_element(1))
    assert op == DiffOp.mult(full2, mono_fn(full2, (0, 0, 1, 0)))


# ---------------------------------------------------------------------------
# The derivative side
# ---------------------------------------------------------------------------

def test_pi_minus_rank_one(full1):
    op = rep.pi_minus(full1, full1.basis_element(0))
    want = DiffOp(full1, {
        (2,): mono_fn(full1, (1,), sc(-1)),
        (1,): mono_fn(full1, (0,), LAMBDA.scale(sc(-2))),
    })
    assert op == want


def test_pi_minus_kills_constants(sym2, spin4):
    for J in (sym2, spin4):
        for i in range(J.n):
            op = rep.pi_minus(J, J.basis_element(i))
            assert op.apply(SuperFn.one(J.ring)).is_zero()


def spin_product(a, b):
    # test-local closed form of the spin product, independent of the tables
    alpha, u = a[0], a[1:]
    beta, v = b[0], b[1:]
    dot = sum((x * y for x, y in zip(u, v)), Fraction(0))
    return (alpha * beta + dot,) + tuple(alpha * y + beta * x for x, y in zip(u, v))


def spin_triple(a, b, c):
    ab_c = spin_product(spin_product(a, b), c)
    a_bc = spin_product(a, spin_product(b, c))
    ac_b = spin_product(spin_product(a, c), b)
    return tuple(x + y - z for x, y, z in zip(ab_c, a_bc, ac_b))


def test_pi_minus_spin4_against_expansion_oracle(spin4):
    # brute-force expansion over basis pairs with a test-local spin model
    J = spin4
    n = J.n
    y = (Fraction(1, 2), Fraction(1, 2), Fraction(0), Fraction(0))
    op = rep.pi_minus(J, J.idempotent_elem())
    basis = [tuple(Fraction(int(t == i)) for t in range(n)) for i in range(n)]
    # trace form is 2*(Minkowski-free dot); dual basis vectors are b_i / 2
    dual = [tuple(x / 2 for x in b) for b in basis]

    def spin_trace(x):
        return 2 * x[0]

    expected = {}
    for i in range(n):
        for j in range(n):
            trip = spin_triple(dual[i], y, dual[j])
            for k in range(n):
                coeff = spin_trace(spin_product(trip, basis[k]))
                if coeff:
                    beta = tuple((1 if t == i else 0) + (1 if t == j else 0) for t in range(n))
                    key = (beta, k)
                    expected[key] = expected.get(key, Fraction(0)) - coeff
    want = DiffOp.zero(J)
    for (beta, k), c in expected.items():
        if c:
            mono = tuple(1 if t == k else 0 for t in range(n))
            want = want + DiffOp(J, {beta: mono_fn(J, mono, Scalar(c))})
    lam_part = DiffOp.zero(J)
    for i, yi in enumerate(y):
        if yi:
            beta = tuple(1 if t == i else 0 for t in range(n))
            lam_part = lam_part + DiffOp(J, {beta: mono_fn(J, (0,) * n, LAMBDA.scale(Scalar(-2 * J.m * yi)))})
    assert op == want + lam_part


# ---------------------------------------------------------------------------
# The vector fields on the opposite patch
# ---------------------------------------------------------------------------

def test_eta_rank_one(full1):
    eta_p = rep.eta_plus(full1, full1.basis_element(0))
    assert eta_p == PolyOpPlus(full1, {(1,): ZPoly.const(1, sc(-1))})
    eta_m = rep.eta_minus(full1, full1.basis_element(0))
    want = PolyOpPlus(full1, {
        (1,): ZPoly.monomial(1, (2,)),
        (0,): ZPoly.monomial(1, (1,), LAMBDA.scale(sc(2))),
    })
    assert eta_m == want


def test_eta_minus_vector_part_at_unit(sym2, spin3):
    # the quadratic field evaluated at the unit returns the generator itself
    for J in (sym2, spin3):
        e = [Scalar(c) for c in J.unit]
        for i in range(J.n):
            y = J.basis_element(i)
            op = rep.eta_minus(J, y)
            value = []
            for k in range(J.n):
                beta = tuple(1 if t == k else 0 for t in range(J.n))
                coeff = op.terms.get(beta, ZPoly.zero(J.n))
                # drop the twist-linear function part (order-zero term)
                value.append(coeff.evaluate(e, lam=ZERO))
            assert JElem(tuple(value)) == y


@pytest.mark.parametrize("selector", ["full:1", "full:2", "sym:2", "spin:3", "spin:4", "spin:5"])
def test_fourier_consistency(selector):
    J = from_selector(selector)
    for i in range(J.n):
        x = J.basis_element(i)
        assert fourier(rep.eta_plus(J, x).scale(sc(-1))) == rep.pi_plus(J, x)
        assert fourier(rep.eta_minus(J, x).scale(sc(-1))) == rep.pi_minus(J, x)


# ---------------------------------------------------------------------------
# Abelian wings and the generated span
# ---------------------------------------------------------------------------

def test_wings_abelian(sym2):
    plus = [rep.pi_plus(sym2, sym2.basis_element(i)) for i in range(3)]
    minus = [rep.pi_minus(sym2, sym2.basis_element(i)) for i in range(3)]
    for i in range(3):
        for j in range(3):
            assert plus[i].commutator(plus[j]).is_zero()
            assert minus[i].commutator(minus[j]).is_zero()


def test_k_span_rank_one(full1):
    ops, dim = rep.k_span(full1)
    assert dim == 1
    # the single commutator is 2 z d + 2 * twist
    twist = rep.GENERIC_TWIST
    want = DiffOp(full1, {
        (1,): mono_fn(full1, (1,), sc(2)),
        (0,): mono_fn(full1, (0,), Scalar(2 * twist)),
    })
    assert ops[0] == want


@pytest.mark.parametrize("selector,expected", [
    ("sym:2", 4),
    ("full:2", 7),
    ("spin:3", 4),
    ("spin:4", 7),
    ("spin:5", 11),
])
def test_k_span_dimensions(selector, expected):
    J = from_selector(selector)
    ops, dim = rep.k_span(J)
    assert dim == expected == rep.expected_k_dimension(J)


def test_bracket_closure(spin3):
    lam = rep.GENERIC_TWIST
    ops, _ = rep.k_span(spin3, lam)
    plus = [rep.pi_plus(spin3, spin3.basis_element(i)) for i in range(3)]
    minus = [rep.pi_minus(spin3, spin3.basis_element(i), lam) for i in range(3)]
    plus_span = rep.SpanBasis()
    minus_span = rep.SpanBasis()
    k_basis = rep.SpanBasis()
    for op in plus:
        plus_span.add(op)
    for op in minus:
        minus_span.add(op)
    for op in ops:
        k_basis.add(op)
    for K in ops:
        for i in range(3):
            assert plus_span.contains(K.commutator(plus[i]))
            assert minus_span.contains(K.commutator(minus[i]))
        for K2 in ops:
            assert k_basis.contains(K.commutator(K2))


# ---------------------------------------------------------------------------
# The polynomial module
# ---------------------------------------------------------------------------

def test_module_membership(full2):
    ctx = full2.ring
    w = SuperFn.w(ctx)
    z1 = SuperFn.from_zpoly(ctx, ZPoly.coord(4, 0))
    assert rep.h_membership(w * z1)
    assert not rep.h_membership(SuperFn.w_inv(ctx))
    with pytest.raises(ValueError):
        rep.HElem(SuperFn.w_inv(ctx))


def test_critical_twist_annihilates_lowest_vectors(sym2, spin4):
    for J in (sym2, spin4):
        lam0, _ = rep.critical_pair(J)
        w = SuperFn.w(J.ring)
        for i in range(J.n):
            op = rep.pi_minus(J, J.basis_element(i), lam0)
            assert op.apply(SuperFn.one(J.ring)).is_zero()
            assert op.apply(w).is_zero()


def test_module_stability_and_criticality_witness(full2):
    lam0, _ = rep.critical_pair(full2)
    ctx = full2.ring
    w = SuperFn.w(ctx)
    z1 = SuperFn.from_zpoly(ctx, ZPoly.coord(4, 0))
    for i in range(4):
        at0 = rep.pi_minus(full2, full2.basis_element(i), lam0)
        out, inside = rep.act_on_H(at0, w * z1)
        assert inside
    # at a generic twist the image acquires denominators
    atg = rep.pi_minus(full2, full2.basis_element(0), rep.GENERIC_TWIST)
    out, inside = rep.act_on_H(atg, w * z1)
    assert not inside
    assert out.od.k >= 1


def test_multiplication_by_w_preserves_module(full2):
    ctx = full2.ring
    W = DiffOp.mult_w(full2)
    z1 = SuperFn.from_zpoly(ctx, ZPoly.coord(4, 0))
    out, inside = rep.act_on_H(W, z1)
    assert inside
    assert out == SuperFn.w(ctx) * z1


# ---------------------------------------------------------------------------
# Distinguished vectors from the norm-derivative operator
# ---------------------------------------------------------------------------

def test_norm_derivative_op_rank_one(full1):
    assert rep.norm_derivative_op(full1) == DiffOp.partial(full1, 0)
    T = rep.semi_invariant_w_dF(full1)
    assert T == DiffOp(full1, {(1,): mono_fn(full1, (0,), odd=True)})


@pytest.mark.parametrize("selector", ["full:1", "sym:2", "spin:3"])
def test_semi_invariants_annihilated(selector):
    J = from_selector(selector)
    lam0, lam0p = rep.critical_pair(J)
    T = rep.semi_invariant_w_dF(J)
    Tp = rep.semi_invariant_dF_w(J)
    for i in range(J.n):
        y = J.basis_element(i)
        assert rep.pi_minus(J, y, lam0).commutator(T).is_zero()
        assert rep.pi_minus(J, y, lam0p).commutator(Tp).is_zero()


def test_idempotent_guard_used(full2):
    with pytest.raises(PrimitiveIdempotentError):
        rep.require_primitive_idempotent(full2, full2.unit_elem())
