"""Algebra families: structure data, products, norm calculus."""

import random
from fractions import Fraction

import pytest
import sympy

from twistedops.jordan import (
    JElem,
    NotInvertibleError,
    PrimitiveIdempotentError,
    derivative_identities,
    from_selector,
    make_sym,
    point_identities,
    random_point,
    validate_structure,
    verify_jordan_calculus,
)
from twistedops.ring import LocFn, Scalar, ZPoly, ONE, ZERO


def sc(x):
    return Scalar(Fraction(x))


def elem(*values):
    return JElem.from_rationals(values)


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------

def test_sym_sizes():
    J1 = make_sym(1)
    assert (J1.n, J1.r, J1.m) == (1, 1, Fraction(1))
    assert J1.normF == ZPoly.coord(1, 0)
    J2 = make_sym(2)
    assert (J2.n, J2.r, J2.m) == (3, 2, Fraction(3, 2))
    z1, z2, z3 = (ZPoly.coord(3, i) for i in range(3))
    assert J2.normF == z1 * z2 - z3 * z3
    e = J2.unit_elem()
    assert J2.trace(e) == Scalar(2)


def test_full_sizes(full1, full2):
    assert (full1.n, full1.r, full1.m) == (1, 1, Fraction(1))
    assert full1.normF == ZPoly.coord(1, 0)
    z = [ZPoly.coord(4, i) for i in range(4)]
    assert full2.normF == z[0] * z[3] - z[1] * z[2]
    # dual basis of E12 (index 1) is E21 (index 2)
    dual = full2.dual_basis_element(1)
    assert dual == full2.basis_element(2)


def test_spin_sizes(spin3):
    assert (spin3.n, spin3.r, spin3.m) == (3, 2, Fraction(3, 2))
    z = [ZPoly.coord(3, i) for i in range(3)]
    assert spin3.normF == z[0] * z[0] - z[1] * z[1] - z[2] * z[2]
    # q o adj(q) = F e at q = (2, 1, 0)
    q = elem(2, 1, 0)
    adj = spin3.adjugate_at(q)
    prod = spin3.product(q, adj)
    assert prod == elem(3, 0, 0)
    # canonical primitive idempotent
    y = spin3.idempotent_elem()
    assert spin3.product(y, y) == y
    assert spin3.trace(y) == ONE


def test_selector_parsing():
    assert from_selector("sym:2").selector == "sym:2"
    assert from_selector("spin:4").selector == "spin:4"
    with pytest.raises(ValueError):
        from_selector("weird:2")
    with pytest.raises(ValueError):
        from_selector("full")


# ---------------------------------------------------------------------------
# Products
# ---------------------------------------------------------------------------

def test_unit_acts_trivially(sym2):
    rng = random.Random(7)
    e = sym2.unit_elem()
    for _ in range(10):
        x = random_point(sym2, rng, invertible=False)
        assert sym2.product(e, x) == x


def test_full2_elementary_product(full2):
    # E11 o E12 = (1/2) E12
    e11, e12 = full2.basis_element(0), full2.basis_element(1)
    assert full2.product(e11, e12) == JElem((ZERO, sc("1/2"), ZERO, ZERO))


def test_spin_vector_square(spin3):
    v = spin3.basis_element(1)
    assert spin3.product(v, v) == elem(1, 0, 0)


def test_triple_idempotent(full2, spin3):
    for J in (full2, spin3):
        y = J.idempotent_elem()
        assert J.triple(y, y, y) == y


def test_triple_orthogonal_projection(full2):
    # {E11, E22, E11} = 0, matching the rank-one projection formula
    e11, e22 = full2.basis_element(0), full2.basis_element(3)
    assert full2.triple(e11, e22, e11).is_zero()
    assert full2.trace_form(e11, e22) == ZERO


def test_triple_with_inverse(full2, spin4):
    rng = random.Random(3)
    for J in (full2, spin4):
        for _ in range(8):
            b = random_point(J, rng)
            a = random_point(J, rng, invertible=False)
            assert J.triple(a, b, J.inverse_at(b)) == a


# ---------------------------------------------------------------------------
# Adjugate and inverse
# ---------------------------------------------------------------------------

def test_full2_classical_adjugate(full2):
    # q = [[1, 2], [3, 4]] in row-major coordinates
    q = elem(1, 2, 3, 4)
    assert full2.norm_at(q) == sc(-2)
    assert full2.adjugate_at(q) == elem(4, -2, -3, 1)
    inv = full2.inverse_at(q)
    assert inv == elem(-2, 1, Fraction(3, 2), Fraction(-1, 2))
    assert full2.product(q, inv) == full2.unit_elem()


def test_spin_adjugate(spin4):
    q = elem(5, 1, 2, 3)
    assert spin4.adjugate_at(q) == elem(5, -1, -2, -3)


def test_unit_self_inverse(sym2):
    e = sym2.unit_elem()
    assert sym2.inverse_at(e) == e


def test_singular_point_raises(full2):
    with pytest.raises(NotInvertibleError):
        full2.inverse_at(elem(1, 0, 0, 0))


def test_adjugate_matches_sympy(full2, sym2):
    # independent oracle: sympy's Matrix adjugate/determinant
    zz = sympy.symbols("a b c d")
    M = sympy.Matrix([[zz[0], zz[1]], [zz[2], zz[3]]])
    adj = M.adjugate()
    det = M.det()
    rng = random.Random(11)
    for _ in range(5):
        vals = {s: Fraction(rng.randint(-5, 5)) for s in zz}
        q = elem(*(vals[s] for s in zz))
        assert full2.norm_at(q) == Scalar(Fraction(sympy.Rational(det.subs(vals))))
        got = full2.adjugate_at(q)
        want = [Fraction(sympy.Rational(adj[i, j].subs(vals))) for i in range(2) for j in range(2)]
        assert got == elem(*want)
    Ms = sympy.Matrix([[zz[0], zz[2]], [zz[2], zz[1]]])
    dets = Ms.det()
    for _ in range(5):
        vals = {s: Fraction(rng.randint(-5, 5)) for s in zz[:3]}
        q = elem(*(vals[s] for s in zz[:3]))
        assert sym2.norm_at(q) == Scalar(Fraction(sympy.Rational(dets.subs(vals))))


# ---------------------------------------------------------------------------
# The localized trace function
# ---------------------------------------------------------------------------

def test_tr_v_qinv_full2(full2):
    got = full2.tr_v_qinv(full2.basis_element(0))
    assert got == LocFn(full2.ring, ZPoly.coord(4, 3), 1)


def test_tr_v_qinv_unit_at_unit(sym2):
    f = sym2.tr_v_qinv(sym2.unit_elem())
    e = [Scalar(c) for c in sym2.unit]
    assert f.evaluate(e) == Scalar(sym2.r)


def test_tr_v_qinv_rank_one(full1):
    assert full1.tr_v_qinv(full1.basis_element(0)) == LocFn(full1.ring, ZPoly.one(1), 1)


# ---------------------------------------------------------------------------
# Structure and identity suites
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("selector", ["full:1", "full:2", "sym:1", "sym:2", "spin:3", "spin:4", "spin:5"])
def test_structure_valid(selector):
    J = from_selector(selector)
    results = validate_structure(J)
    assert all(c.ok for c in results), [c.name for c in results if not c.ok]


@pytest.mark.parametrize("selector", ["full:2", "sym:2", "spin:3", "spin:4", "spin:5"])
def test_derivative_identities_symbolic(selector):
    J = from_selector(selector)
    results = derivative_identities(J, mode="symbolic")
    assert [c.name for c in results] == [
        "norm-derivative", "sqrt-derivative", "inverse-derivative", "sqrt-second-derivative",
    ]
    assert all(c.ok for c in results), [c.witness for c in results if not c.ok]


def test_derivative_identities_points_full3():
    J = from_selector("full:3")
    results = derivative_identities(J, mode="points", rng=random.Random(5), count=20)
    assert all(c.ok for c in results)


def test_point_identities(sym2, spin5):
    for J in (sym2, spin5):
        results = point_identities(J, random.Random(1), count=20)
        assert all(c.ok for c in results), [c.name for c in results if not c.ok]


def test_full_suite_wrapper(spin3):
    results = verify_jordan_calculus(spin3, mode="symbolic", rng=random.Random(0))
    assert all(c.ok for c in results)
    assert len(results) >= 10


# ---------------------------------------------------------------------------
# Negative control: corrupt one structure constant
# ---------------------------------------------------------------------------

def corrupt_structure(J, delta=Fraction(1, 3)):
    import dataclasses
    prod = [[[c for c in cell] for cell in row] for row in J.prod]
    prod[0][J.n - 1][0] += delta
    prod[J.n - 1][0][0] += delta  # keep the product commutative
    return dataclasses.replace(J, prod=tuple(tuple(tuple(c) for c in row) for row in prod))


def test_corrupt_structure_detected(sym2):
    bad = corrupt_structure(sym2)
    results = validate_structure(bad)
    failed = [c for c in results if not c.ok]
    assert failed, "corruption went unnoticed"
    assert all(c.witness for c in failed)


def test_primitive_idempotent_guard(full2):
    with pytest.raises(PrimitiveIdempotentError):
        full2.check_primitive_idempotent(full2.unit_elem())  # trace is 2, not 1
    with pytest.raises(PrimitiveIdempotentError):
        full2.check_primitive_idempotent(full2.basis_element(1))  # not idempotent
