"""Conformal modules: the module axiom checker, adjoint and semidirect
constructions, and the dual/coadjoint admissibility conditions.

A representation is a graded free Q[d]-module with a twist beta (a
parity-preserving matrix over Q[d]) and, per algebra generator e_i, an
action matrix rho(e_i) with entries in (l1, d): column j is the image of
module generator j.  The two sesquilinearity rules

    rho(d a)_l = -l rho(a)_l,      rho(a)_l d = (d + l) rho(a)_l

hold structurally through the same extension rules as the bracket: the
action of a general element substitutes d -> -l in its coefficients, and
composition shifts the inner matrix's d by the outer variable.
"""

from __future__ import annotations

import time
from typing import Mapping, Sequence

from .algebra import (
    AlgebraError,
    Superalgebra,
    Vector,
    mat_apply_plain,
)
from .exactmath import D, L1, L2, Matrix, Poly, fresh_names, mat_mul, poly
from .reporting import Report, item_from_parts


class Representation:
    def __init__(
        self,
        algebra: Superalgebra,
        module_basis: Sequence,  # (name, parity) pairs
        beta: Matrix,
        rho: Mapping,  # {algebra index: matrix}; missing -> zero action
    ):
        self.algebra = algebra
        self.module_names = tuple(n for n, _ in module_basis)
        self.module_parities = tuple(int(p) for _, p in module_basis)
        m = len(self.module_names)
        if len(set(self.module_names)) != m:
            raise AlgebraError("module basis names must be unique")
        if len(beta) != m or any(len(row) != m for row in beta):
            raise AlgebraError("beta must be square over the module basis")
        self.beta = [[poly(x) for x in row] for row in beta]
        allowed_beta = {D} | algebra.scalar_params
        for i in range(m):
            for j in range(m):
                e = self.beta[i][j]
                if e.is_zero:
                    continue
                if not e.variables() <= allowed_beta:
                    raise AlgebraError(f"beta[{i}][{j}] uses disallowed variables")
                if self.module_parities[i] != self.module_parities[j]:
                    raise AlgebraError("beta is not parity-preserving")
        self._rho = {}
        allowed_rho = {D, L1} | algebra.scalar_params
        for i, mat in rho.items():
            if not (0 <= i < algebra.dim):
                raise AlgebraError(f"rho key {i} out of range")
            if len(mat) != m or any(len(row) != m for row in mat):
                raise AlgebraError(f"rho[{algebra.names[i]}] has wrong shape")
            mat = [[poly(x) for x in row] for row in mat]
            for r in range(m):
                for c in range(m):
                    e = mat[r][c]
                    if e.is_zero:
                        continue
                    if not e.variables() <= allowed_rho:
                        raise AlgebraError(
                            f"rho[{algebra.names[i]}][{r}][{c}] uses disallowed variables"
                        )
                    want = (self.module_parities[c] + algebra.parities[i]) % 2
                    if self.module_parities[r] != want:
                        raise AlgebraError(
                            f"rho[{algebra.names[i]}] violates the module grading "
                            f"at ({self.module_names[r]}, {self.module_names[c]})"
                        )
            self._rho[i] = mat
        self._zero = [[Poly.zero()] * m for _ in range(m)]

    @property
    def module_dim(self) -> int:
        return len(self.module_names)

    def rho_matrix(self, i: int) -> Matrix:
        return self._rho.get(i, self._zero)

    def module_label(self, r: int, c: int) -> str:
        return f"{self.module_names[r]}<-{self.module_names[c]}"

    def beta_apply(self, v: Vector) -> Vector:
        return mat_apply_plain(self.beta, v)

    # -- action of general (lambda-polynomial) arguments ---------------------

    def action_matrix(self, value: Vector, at: Poly) -> Matrix:
        """Matrix of rho(value) evaluated at the lambda value `at`.

        Coefficients of `value` obey the antilinearity rule (their d becomes
        minus the operator variable).
        """
        avoid = value.variables() | at.variables() | {D, L1}
        for mat in self._rho.values():
            for row in mat:
                for e in row:
                    avoid |= e.variables()
        (s,) = fresh_names(1, avoid)
        s_poly = Poly.var(s)
        m = self.module_dim
        out = [[Poly.zero()] * m for _ in range(m)]
        for k, c in value.coeffs.items():
            factor = c.substitute({D: -s_poly})
            if factor.is_zero or k not in self._rho:
                continue
            mat = self._rho[k]
            for r in range(m):
                for c2 in range(m):
                    e = mat[r][c2]
                    if not e.is_zero:
                        out[r][c2] = out[r][c2] + factor * e.substitute({L1: s_poly})
        return [[e.substitute({s: at}) for e in row] for row in out]

    def apply(self, value: Vector, at: Poly, target: Vector) -> Vector:
        """rho(value)_at (target), with the conformal composition shift.

        The d's inside target's coefficients are shifted by the operator
        variable before the action matrix multiplies in.
        """
        avoid = (
            value.variables() | at.variables() | target.variables() | {D, L1}
        )
        for mat in self._rho.values():
            for row in mat:
                for e in row:
                    avoid |= e.variables()
        (s,) = fresh_names(1, avoid)
        s_poly = Poly.var(s)
        mat = self.action_matrix(value, s_poly)
        out: dict = {}
        for j, c in target.coeffs.items():
            shifted = c.substitute({D: Poly.var(D) + s_poly})
            if shifted.is_zero:
                continue
            for r in range(self.module_dim):
                e = mat[r][j]
                if e.is_zero:
                    continue
                piece = e * shifted
                got = out.get(r)
                out[r] = piece if got is None else got + piece
        return Vector(out).subst({s: at})


def compose_actions(outer: Matrix, inner: Matrix, shift: Poly) -> Matrix:
    """outer . inner with the inner matrix's d shifted by the outer variable."""
    shifted = [[e.substitute({D: Poly.var(D) + shift}) for e in row] for row in inner]
    return mat_mul(outer, shifted)


# ---------------------------------------------------------------------------
# The module axiom
# ---------------------------------------------------------------------------


def check_representation(A: Superalgebra, R: Representation, strict: bool = False) -> Report:
    """The twisted module axiom on all ordered basis pairs:

        rho([ei _l1 ej])_(l1+l2) . beta
            = rho(alpha(ei))_l1 rho(ej)_l2
              - delta (-1)^{|i||j|} rho(alpha(ej))_l2 rho(ei)_l1.

    With strict=True the untwisted super-commutator identity
    [rho(ei)_l1, rho(ej)_l2] = rho([ei _l1 ej])_(l1+l2) is checked as well.
    """
    start = time.perf_counter()
    items = []
    l1, l2 = Poly.var(L1), Poly.var(L2)
    lsum = l1 + l2
    for i in range(A.dim):
        rho_i = [[e for e in row] for row in R.rho_matrix(i)]
        for j in range(A.dim):
            sign = A.delta * (-1) ** (A.parities[i] * A.parities[j])
            bracket_action = R.action_matrix(A.bracket_pair(i, j), lsum)
            beta_shifted = [
                [e.substitute({D: Poly.var(D) + lsum}) for e in row] for row in R.beta
            ]
            lhs = mat_mul(bracket_action, beta_shifted)
            rho_j_at_l2 = [
                [e.substitute({L1: l2}) for e in row] for row in R.rho_matrix(j)
            ]
            rhs1 = compose_actions(R.action_matrix(A.alpha_element(i), l1), rho_j_at_l2, l1)
            rhs2 = compose_actions(R.action_matrix(A.alpha_element(j), l2), rho_i, l2)
            parts: dict = {}
            for r in range(R.module_dim):
                for c in range(R.module_dim):
                    addends = [lhs[r][c], -rhs1[r][c], rhs2[r][c] * sign]
                    if any(not p.is_zero for p in addends):
                        parts[R.module_label(r, c)] = addends
            items.append(
                item_from_parts("representation_axiom", A.pair_label(i, j), parts)
            )
            if strict:
                koszul = (-1) ** (A.parities[i] * A.parities[j])
                c1 = compose_actions(
                    [[e for e in row] for row in R.rho_matrix(i)], rho_j_at_l2, l1
                )
                c2 = compose_actions(rho_j_at_l2, R.rho_matrix(i), l2)
                parts2: dict = {}
                for r in range(R.module_dim):
                    for c in range(R.module_dim):
                        addends = [
                            c1[r][c],
                            -(c2[r][c] * koszul),
                            -bracket_action[r][c],
                        ]
                        if any(not p.is_zero for p in addends):
                            parts2[R.module_label(r, c)] = addends
                items.append(
                    item_from_parts(
                        "representation_axiom_strict", A.pair_label(i, j), parts2
                    )
                )
    report = Report(
        subject=f"representation over {A.name}",
        items=items,
        elapsed=time.perf_counter() - start,
    )
    report.meta["strict"] = strict
    return report


def adjoint_rep(A: Superalgebra) -> Representation:
    """The adjoint module: the algebra acting on itself by delta * bracket."""
    n = A.dim
    rho = {}
    for i in range(n):
        mat = [[Poly.zero()] * n for _ in range(n)]
        nonzero = False
        for j in range(n):
            value = A.bracket_pair(i, j)
            for k, c in value.coeffs.items():
                mat[k][j] = c * A.delta
                nonzero = True
        if nonzero:
            rho[i] = mat
    return Representation(
        A,
        module_basis=list(zip(A.names, A.parities)),
        beta=[row[:] for row in A.alpha],
        rho=rho,
    )


# ---------------------------------------------------------------------------
# Semidirect sum
# ---------------------------------------------------------------------------


class ConstructionError(ValueError):
    pass


def semidirect_sum(A: Superalgebra, R: Representation):
    """Algebra structure on A + M: module pairs bracket to zero, and
    [e_i _l m_j] = delta * rho(e_i)_l (m_j); the missing orientation follows
    from skew completion.  The representation axiom is required up front and
    the full checker suite runs on the result.
    """
    from .algebra import run_suite

    rep_report = check_representation(A, R)
    if not rep_report.ok:
        raise ConstructionError(
            "semidirect sum rejected: the module axiom fails for the input "
            f"representation ({len(rep_report.failures())} failing pairs)"
        )
    n = A.dim
    taken = set(A.names)
    module_names = []
    for nm in R.module_names:
        label = nm if nm not in taken else f"{nm}_m"
        while label in taken:
            label += "_m"
        taken.add(label)
        module_names.append(label)
    basis = list(zip(A.names, A.parities)) + list(
        zip(module_names, R.module_parities)
    )
    alpha = [
        [
            A.alpha[i][j] if i < n and j < n else Poly.zero()
            for j in range(n + R.module_dim)
        ]
        for i in range(n)
    ]
    for r in range(R.module_dim):
        alpha.append(
            [Poly.zero()] * n + [R.beta[r][c] for c in range(R.module_dim)]
        )
    brackets = dict(A.brackets)
    for i in range(n):
        mat = R.rho_matrix(i)
        for j in range(R.module_dim):
            coeffs = {
                n + r: mat[r][j] * A.delta
                for r in range(R.module_dim)
                if not mat[r][j].is_zero
            }
            if coeffs:
                brackets[(i, n + j)] = Vector(coeffs)
    S = Superalgebra(
        delta=A.delta,
        basis=basis,
        alpha=alpha,
        brackets=brackets,
        scalar_params=A.scalar_params,
        name=f"semidirect({A.name})",
    )
    report = run_suite(S)
    report.meta["representation_axiom"] = rep_report.ok
    return S, report


# ---------------------------------------------------------------------------
# Dual-module admissibility (the dual is not constructed)
# ---------------------------------------------------------------------------


def check_dual_condition(A: Superalgebra, R: Representation) -> Report:
    """The exact criterion for the dual module data to form a representation:

        beta . rho([ei _l1 ej])_(l1+l2)
            = (-1)^{|i||j|} rho(ei)_l1 rho(alpha(ej))_l2
              - delta rho(ej)_l2 rho(alpha(ei))_l1
    """
    start = time.perf_counter()
    items = []
    l1, l2 = Poly.var(L1), Poly.var(L2)
    lsum = l1 + l2
    for i in range(A.dim):
        for j in range(A.dim):
            koszul = (-1) ** (A.parities[i] * A.parities[j])
            lhs = mat_mul(R.beta, R.action_matrix(A.bracket_pair(i, j), lsum))
            c1 = compose_actions(
                R.action_matrix(Vector.basis(i), l1),
                R.action_matrix(A.alpha_element(j), l2),
                l1,
            )
            c2 = compose_actions(
                R.action_matrix(Vector.basis(j), l2),
                R.action_matrix(A.alpha_element(i), l1),
                l2,
            )
            parts: dict = {}
            for r in range(R.module_dim):
                for c in range(R.module_dim):
                    addends = [
                        lhs[r][c],
                        -(c1[r][c] * koszul),
                        c2[r][c] * A.delta,
                    ]
                    if any(not p.is_zero for p in addends):
                        parts[R.module_label(r, c)] = addends
            items.append(item_from_parts("dual_condition", A.pair_label(i, j), parts))
    return Report(
        subject=f"dual condition over {A.name}",
        items=items,
        elapsed=time.perf_counter() - start,
    )


def check_coadjoint_condition(A: Superalgebra) -> Report:
    """Dual-module criterion specialized to the adjoint representation."""
    report = check_dual_condition(A, adjoint_rep(A))
    report.subject = f"coadjoint condition over {A.name}"
    for i, item in enumerate(report.items):
        report.items[i] = type(item)(
            check="coadjoint_condition", location=item.location, parts=item.parts
        )
    return report
