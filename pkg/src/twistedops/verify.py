"""The identity suite: each structural claim as an exact operator equation.

Every check here is exact: a check passes iff the residual operator or
polynomial is identically zero (in particular, identically in the formal
twist parameter).  Random points are used only inside the Jordan-algebra
point identities where full symbolic expansion would be wasteful.

The central computation takes the canonical primitive idempotent y,
forms the double commutator of the twisted operator of y with the
multiplication operator w, and checks that it collapses to

    - m^2 (L - l0) (L - l0')  *  w tr(y o q^{-1})^2

where l0, l0' are the two critical twists 1/2 -+ 1/(4m).  The roots of
the extracted quadratic are then compared against that closed form.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import jordan as _jordan
from . import rep
from .jordan import JordanAlgebra, PrimitiveIdempotentError
from .report import CheckResult, Report, timed_check
from .ring import (
    IUNIT,
    LAMBDA,
    LambdaPoly,
    LocFn,
    ONE,
    RingError,
    Scalar,
    SuperFn,
    ZPoly,
)
from .weyl import DiffOp, diffop_str
from .rep import GENERIC_TWIST


class VerifyError(RingError):
    """Base class for structural failures raised by the identity suite."""


class ResidualOrderError(VerifyError):
    """The double commutator failed to collapse to order zero."""


class DivisionError(VerifyError):
    """The functional factor did not divide the residual exactly."""


HALF = Scalar(Fraction(1, 2))


# ---------------------------------------------------------------------------
# Individual checks
# ---------------------------------------------------------------------------

def w_bracket_sides(J: JordanAlgebra, i: int) -> tuple[DiffOp, DiffOp]:
    """Both sides of [pi^y, w] = -w d^y - 2m(L - l0) (d^y w) for y = b_i."""
    lam0, _ = rep.critical_pair(J)
    y = J.basis_element(i)
    W = DiffOp.mult_w(J)
    lhs = rep.pi_minus(J, y).commutator(W)
    dy = DiffOp.directional(J, y)
    first = W.compose(dy).scale(Scalar(-1))
    cof = J.tr_v_qinv(y).scale(HALF)  # (d^y w)/w
    dyw = DiffOp.mult(J, SuperFn.from_locfn(LocFn.zero(J.ring), cof))
    shift = LAMBDA - LambdaPoly.from_rational(lam0)
    second = dyw.scale(shift.scale(Scalar(-2 * J.m)))
    return lhs, first + second


def check_w_bracket(J: JordanAlgebra) -> CheckResult:
    """Exact first-bracket identity, for every basis direction."""
    def body():
        for i in range(J.n):
            lhs, rhs = w_bracket_sides(J, i)
            if lhs != rhs:
                return False, f"residual at y=b{i+1}: {diffop_str(lhs - rhs)}"
        return True, None
    return timed_check("w-bracket", body)


def check_idempotent_bracket(J: JordanAlgebra, y=None) -> CheckResult:
    """[pi^y, d^y] = (d^y)^2 at the canonical primitive idempotent."""
    y = y if y is not None else J.idempotent_elem()
    J.check_primitive_idempotent(y)

    def body():
        dy = DiffOp.directional(J, y)
        lhs = rep.pi_minus(J, y).commutator(dy)
        rhs = dy.compose(dy)
        if lhs != rhs:
            return False, f"residual: {diffop_str(lhs - rhs)}"
        return True, None
    return timed_check("idempotent-bracket", body)


def double_commutator_quadratic(J: JordanAlgebra, y=None) -> LambdaPoly:
    """Collapse [pi^y, [pi^y, w]] and divide out w tr(y o q^{-1})^2.

    Raises ResidualOrderError when derivative terms survive and
    DivisionError when the functional factor does not divide exactly.
    Returns the quadratic in the twist parameter.
    """
    y = y if y is not None else J.idempotent_elem()
    J.check_primitive_idempotent(y)
    p = rep.pi_minus(J, y)
    W = DiffOp.mult_w(J)
    D = p.commutator(p.commutator(W))

    vector_part = {beta: c for beta, c in D.terms.items() if sum(beta) >= 1}
    if vector_part:
        raise ResidualOrderError(
            "derivative terms survive: "
            + diffop_str(DiffOp(J, vector_part))
        )
    coeff = D.terms.get((0,) * J.n)
    factor = J.tr_v_qinv(y)
    sfac = factor * factor  # cofactor of w on the right side
    if coeff is None:
        return LambdaPoly()
    if not coeff.ev.is_zero():
        raise ResidualOrderError("even part survives in the double commutator")
    od = coeff.od
    if od.k != sfac.k:
        raise DivisionError(
            f"denominator exponents differ: {od.k} vs {sfac.k}")
    # split the numerator by powers of the twist parameter and divide each
    by_power: dict[int, dict] = {}
    for mono, lp in od.num.terms.items():
        for k, sc in enumerate(lp.coeffs):
            if not sc.is_zero():
                by_power.setdefault(k, {})[mono] = LambdaPoly.const(sc)
    coeffs = [Scalar(0)] * (max(by_power, default=-1) + 1)
    for k, terms in by_power.items():
        comp = ZPoly(J.n, terms)
        q = comp.exact_div(sfac.num)
        if q is None:
            raise DivisionError(f"L^{k} component not divisible by the factor")
        mono_zero = (0,) * J.n
        if set(q.terms) - {mono_zero}:
            raise DivisionError(f"L^{k} quotient is not constant: {q!r}")
        coeffs[k] = q.terms.get(mono_zero, LambdaPoly()).constant_value()
    return LambdaPoly(coeffs)


def check_double_commutator(J: JordanAlgebra) -> tuple[CheckResult, LambdaPoly | None]:
    """Full structure of the double commutator, plus the extracted quadratic."""
    quad_holder: list[LambdaPoly] = []

    def body():
        lam0, lam0p = rep.critical_pair(J)
        try:
            quad = double_commutator_quadratic(J)
        except VerifyError as exc:
            return False, str(exc)
        quad_holder.append(quad)
        m2 = Scalar(J.m * J.m)
        expect = LambdaPoly((
            -m2 * Scalar(lam0) * Scalar(lam0p),
            m2 * Scalar(lam0 + lam0p),
            -m2,
        ))
        if quad != expect:
            return False, f"quadratic {quad} differs from -m^2(L-l0)(L-l0')"
        return True, None

    result = timed_check("double-commutator", body)
    return result, (quad_holder[0] if quad_holder else None)


def critical_values(J: JordanAlgebra) -> tuple[Scalar, Scalar]:
    """The two twists extracted from the double commutator quadratic.

    They must agree with 1/2 -+ 1/(4m); a mismatch raises VerifyError.
    """
    quad = double_commutator_quadratic(J)
    roots = quad.quadratic_roots()
    lam0, lam0p = rep.critical_pair(J)
    expect = (Scalar(lam0), Scalar(lam0p))
    if roots != expect:
        raise VerifyError(f"extracted {tuple(map(str, roots))}, closed form {tuple(map(str, expect))}")
    return roots


def check_critical(J: JordanAlgebra) -> CheckResult:
    def body():
        try:
            roots = critical_values(J)
        except (VerifyError, RingError) as exc:
            return False, str(exc)
        return True, f"{roots[0]}, {roots[1]}"
    res = timed_check("critical-values", body)
    return res


def check_w_conjugation(J: JordanAlgebra) -> CheckResult:
    """Conjugation by w carries the upper-twist family to the lower one."""
    def body():
        lam0, lam0p = rep.critical_pair(J)
        for i in range(J.n):
            x = J.basis_element(i)
            mult = rep.pi_plus(J, x)
            if mult.conjugate_by_w() != mult:
                return False, f"multiplication operator moved at x=b{i+1}"
            upper = rep.pi_minus(J, x, lam0p)
            lower = rep.pi_minus(J, x, lam0)
            got = upper.conjugate_by_w()
            if got != lower:
                return False, f"residual at y=b{i+1}: {diffop_str(got - lower)}"
        return True, None
    return timed_check("w-conjugation", body)


def check_delta_antimap(J: JordanAlgebra) -> CheckResult:
    """The anti-automorphism with z -> -z, w -> i^r w sends the twisted
    family at L to minus the family at 1 - L; composed with conjugation
    by w it fixes the critical family up to sign."""
    def body():
        one_minus = LambdaPoly((ONE, -ONE))  # 1 - L
        for i in range(J.n):
            x = J.basis_element(i)
            for op in (rep.pi_plus(J, x), rep.pi_minus(J, x)):
                lhs = op.delta_map()
                rhs = (-op).subst_lambda(one_minus)
                if lhs != rhs:
                    return False, f"residual at b{i+1}: {diffop_str(lhs - rhs)}"
        # beta = conjugation-by-w after the antimap, at the lower twist
        lam0, _ = rep.critical_pair(J)
        for i in range(J.n):
            for op in (rep.pi_plus(J, J.basis_element(i)),
                       rep.pi_minus(J, J.basis_element(i), lam0)):
                b = op.delta_map().conjugate_by_w()
                if b != -op:
                    return False, f"beta does not negate the critical family at b{i+1}"
        W = DiffOp.mult_w(J)
        bw = W.delta_map().conjugate_by_w()
        iw = IUNIT ** J.r
        if bw != W.scale(iw):
            return False, "beta(w) != i^r w"
        bbw = bw.delta_map().conjugate_by_w()
        if bbw != W.scale(Scalar(-1) ** J.r):
            return False, "beta^2(w) != (-1)^r w"
        return True, None
    return timed_check("delta-antimap", body)


def check_fourier(J: JordanAlgebra) -> CheckResult:
    """fourier(-eta^x) = pi^x for every basis generator, at formal twist."""
    from .weyl import fourier

    def body():
        for i in range(J.n):
            x = J.basis_element(i)
            lhs = fourier(rep.eta_plus(J, x).scale(Scalar(-1)))
            if lhs != rep.pi_plus(J, x):
                return False, f"plus side differs at b{i+1}"
            lhs = fourier(rep.eta_minus(J, x).scale(Scalar(-1)))
            rhs = rep.pi_minus(J, x)
            if lhs != rhs:
                return False, f"minus side residual at b{i+1}: {diffop_str(lhs - rhs)}"
        return True, None
    return timed_check("fourier-consistency", body)


def check_closure(J: JordanAlgebra, lam_value: Fraction = GENERIC_TWIST) -> CheckResult:
    """Bracket closure of the generated symmetry at a rational twist."""
    def body():
        plus = [rep.pi_plus(J, J.basis_element(i)) for i in range(J.n)]
        minus = [rep.pi_minus(J, J.basis_element(i), lam_value) for i in range(J.n)]
        minus_formal = [rep.pi_minus(J, J.basis_element(i)) for i in range(J.n)]
        # the two wings are abelian (exact, formal twist)
        for i in range(J.n):
            for j in range(i + 1, J.n):
                if not plus[i].commutator(plus[j]).is_zero():
                    return False, f"[b{i+1}+, b{j+1}+] != 0"
                if not minus_formal[i].commutator(minus_formal[j]).is_zero():
                    return False, f"[b{i+1}-, b{j+1}-] != 0"
        ops, dim = rep.k_span(J, lam_value)
        want = rep.expected_k_dimension(J)
        if dim != want:
            return False, f"span dimension {dim}, expected {want}"
        plus_span = rep.SpanBasis()
        for op in plus:
            plus_span.add(op)
        minus_span = rep.SpanBasis()
        for op in minus:
            minus_span.add(op)
        k_basis = rep.SpanBasis()
        for op in ops:
            k_basis.add(op)
        for K in ops:
            for i in range(J.n):
                if not plus_span.contains(K.commutator(plus[i])):
                    return False, f"[K, b{i+1}+] leaves the plus wing"
                if not minus_span.contains(K.commutator(minus[i])):
                    return False, f"[K, b{i+1}-] leaves the minus wing"
            for K2 in ops:
                if not k_basis.contains(K.commutator(K2)):
                    return False, "[K, K'] leaves the generated span"
        return True, f"dimension {dim}"
    return timed_check("closure", body)


def check_h_module(J: JordanAlgebra, max_degree: int = 3,
                   generic: Fraction = GENERIC_TWIST) -> CheckResult:
    """Stability of the polynomial module at the lower critical twist.

    Also witnesses criticality: at a generic twist the same action
    produces denominators.
    """
    def body():
        lam0, _ = rep.critical_pair(J)
        ctx = J.ring
        w = SuperFn.w(ctx)
        one = SuperFn.one(ctx)
        for i in range(J.n):
            y = J.basis_element(i)
            at0 = rep.pi_minus(J, y, lam0)
            if not at0.apply(one).is_zero():
                return False, f"pi(1) != 0 at y=b{i+1}"
            if not at0.apply(w).is_zero():
                return False, f"pi(w) != 0 at y=b{i+1}"
        # monomials of degree <= max_degree
        monos = [(0,) * J.n]
        frontier = list(monos)
        for _ in range(max_degree):
            nxt = []
            for m in frontier:
                for i in range(J.n):
                    mm = m[:i] + (m[i] + 1,) + m[i + 1:]
                    nxt.append(mm)
            frontier = sorted(set(nxt))
            monos.extend(frontier)
        for i in range(J.n):
            at0 = rep.pi_minus(J, J.basis_element(i), lam0)
            for mono in monos:
                h = w * SuperFn.from_zpoly(ctx, ZPoly.monomial(J.n, mono))
                out, inside = rep.act_on_H(at0, h)
                if not inside:
                    return False, f"image leaves the module at y=b{i+1}, P=z^{mono}"
        # criticality witness at a generic twist
        witnessed = False
        for i in range(J.n):
            atg = rep.pi_minus(J, J.basis_element(i), generic)
            for mono in ((0,) * J.n, tuple(1 if k == 0 else 0 for k in range(J.n))):
                h = w * SuperFn.from_zpoly(ctx, ZPoly.monomial(J.n, mono))
                _, inside = rep.act_on_H(atg, h)
                if not inside:
                    witnessed = True
                    break
            if witnessed:
                break
        if not witnessed:
            return False, f"no denominator appeared at generic twist {generic}"
        return True, None
    return timed_check("module-stability", body)


def check_lowest_weight(J: JordanAlgebra) -> CheckResult:
    """The vectors w.(norm-derivative op) and (norm-derivative op).w are
    annihilated by every minus-side commutator at their critical twists."""
    def body():
        lam0, lam0p = rep.critical_pair(J)
        T = rep.semi_invariant_w_dF(J)
        Tp = rep.semi_invariant_dF_w(J)
        for i in range(J.n):
            y = J.basis_element(i)
            c = rep.pi_minus(J, y, lam0).commutator(T)
            if not c.is_zero():
                return False, f"[pi^y, w dF] != 0 at y=b{i+1}: {diffop_str(c)}"
            c = rep.pi_minus(J, y, lam0p).commutator(Tp)
            if not c.is_zero():
                return False, f"[pi^y, dF w] != 0 at y=b{i+1}"
        return True, None
    return timed_check("lowest-weight", body)


def check_jordan_calculus(J: JordanAlgebra, mode: str | None = None,
                          seed: int = 0, count: int = 20) -> list[CheckResult]:
    """Structure + point identities + derivative identities.

    ``mode=None`` selects symbolic derivatives for small algebras and
    point evaluation for the largest ones.
    """
    if mode is None:
        mode = "points" if J.n > 6 else "symbolic"
    rng = random.Random(seed)
    return _jordan.verify_jordan_calculus(J, mode=mode, rng=rng, count=count)


# ---------------------------------------------------------------------------
# Suite runner
# ---------------------------------------------------------------------------

SUITE_ALIASES = {
    "jordan": "jordan",
    "jordan-calculus": "jordan",
    "brackets": "brackets",
    "lemmas": "brackets",
    "critical": "critical",
    "innw": "innw",
    "delta": "delta",
    "ft": "ft",
    "fourier": "ft",
    "closure": "closure",
    "h": "hmodule",
    "hmodule": "hmodule",
    "lowest": "lowest",
    "lowest-weight": "lowest",
}

SUITE_ORDER = ("jordan", "brackets", "critical", "innw", "delta", "ft",
               "closure", "hmodule", "lowest")


def _suite_selection(selection: str) -> list[str]:
    if selection in ("all", ""):
        return list(SUITE_ORDER)
    picked = []
    for raw in selection.split(","):
        name = raw.strip().lower()
        if name == "all":
            return list(SUITE_ORDER)
        if name not in SUITE_ALIASES:
            raise ValueError(f"unknown suite {name!r}")
        canon = SUITE_ALIASES[name]
        if canon not in picked:
            picked.append(canon)
    return [s for s in SUITE_ORDER if s in picked]


def _run_block(J: JordanAlgebra, block: str, seed: int,
               lam_value: Fraction) -> list[CheckResult]:
    if block == "jordan":
        return check_jordan_calculus(J, seed=seed)
    if block == "brackets":
        results = [check_w_bracket(J)]
        try:
            results.append(check_idempotent_bracket(J))
        except PrimitiveIdempotentError as exc:  # pragma: no cover - guard
            results.append(CheckResult("idempotent-bracket", "fail", str(exc)))
        results.append(check_double_commutator(J)[0])
        return results
    if block == "critical":
        return [check_critical(J)]
    if block == "innw":
        return [check_w_conjugation(J)]
    if block == "delta":
        return [check_delta_antimap(J)]
    if block == "ft":
        return [check_fourier(J)]
    if block == "closure":
        return [check_closure(J, lam_value)]
    if block == "hmodule":
        return [check_h_module(J, generic=lam_value)]
    if block == "lowest":
        return [check_lowest_weight(J)]
    raise ValueError(f"unknown block {block!r}")


def run_suite(J: JordanAlgebra, selection: str = "all", seed: int = 0,
              lam_value: Fraction = GENERIC_TWIST, parallel: bool = False) -> Report:
    """Run the selected checks and aggregate them in a fixed order."""
    blocks = _suite_selection(selection)
    if parallel and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=min(4, len(blocks))) as pool:
            futures = [pool.submit(_run_block, J, b, seed, lam_value) for b in blocks]
            chunks = [f.result() for f in futures]
    else:
        chunks = [_run_block(J, b, seed, lam_value) for b in blocks]
    checks: list[CheckResult] = []
    for chunk in chunks:
        checks.extend(chunk)
    return Report(algebra=J.selector, suite=selection or "all", checks=tuple(checks))
