"""Twisted derivations: the k-fold-twist Leibniz rule, inner derivations,
commutators of derivations, and an exact bounded-degree solver for the
derivation space.

A candidate is a conformal operator family (matrix in (operator variable,
d)) together with the twist exponent k.  The Leibniz checker uses l1 for
the operator and the first free lambda name for the bracket; commutator
candidates keep their first variable as a passive parameter and use l2 as
the operator variable.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    AlgebraError,
    ConformalEndo,
    Superalgebra,
    Vector,
    bracket_left,
    bracket_nested_left,
    endo_apply,
    extend_bracket,
    validate_endo,
)
from .exactmath import (
    D,
    L1,
    L2,
    Matrix,
    Poly,
    fresh_names,
    kernel_of,
    mat_mul,
    mat_subst,
    mat_sub,
)
from .reporting import Report, item_from_parts

LAMBDA_POOL = ("l1", "l2", "l3", "l4", "l5")


@dataclass(frozen=True)
class DerivationCandidate:
    endo: ConformalEndo
    k: int = 0

    @property
    def parity(self) -> int:
        return self.endo.parity

    @property
    def var(self) -> str:
        return self.endo.var

    def entries(self) -> Matrix:
        return self.endo.matrix()


def _entry_variables(entries: Matrix) -> set:
    out: set = set()
    for row in entries:
        for e in row:
            out |= e.variables()
    return out


def _alpha_commutator_entries(A: Superalgebra, entries: Matrix, var: str) -> Matrix:
    lam = Poly.var(var)
    lhs = mat_mul(entries, mat_subst(A.alpha, {D: Poly.var(D) + lam}))
    rhs = mat_mul(A.alpha, entries)
    return mat_sub(lhs, rhs)


def _leibniz_parts(
    A: Superalgebra,
    entries: Matrix,
    var: str,
    parity: int,
    k: int,
    i: int,
    j: int,
    bracket_var: str,
) -> list:
    """Signed addends of the k-twisted Leibniz residual at the pair (i, j):

        D_var([ei _mu ej]) - delta^k [D_var(ei) _(var+mu) alpha^k(ej)]
                           - delta^k (-1)^{|ei||D|} [alpha^k(ei) _mu D_var(ej)]
    """
    mu = Poly.var(bracket_var)
    lam = Poly.var(var)
    sign_k = A.delta ** (k % 2)
    lhs = endo_apply(
        entries, var, extend_bracket(A, Vector.basis(i), Vector.basis(j), bracket_var), lam
    )
    col_i = Vector({r: entries[r][i] for r in range(A.dim)})
    t1 = bracket_nested_left(A, col_i, lam + mu, A.alpha_element(j, power=k))
    col_j = Vector({r: entries[r][j] for r in range(A.dim)})
    t2 = bracket_left(A, A.alpha_element(i, power=k), col_j, bracket_var)
    sign2 = sign_k * (-1) ** (A.parities[i] * parity)
    return [lhs, t1.scale(-sign_k), t2.scale(-sign2)]


def _pick_bracket_var(entries_vars: set, op_var: str) -> str:
    for name in LAMBDA_POOL:
        if name != op_var and name not in entries_vars:
            return name
    return fresh_names(1, entries_vars | {op_var}, prefix="l9")[0]


def check_alpha_k_derivation(A: Superalgebra, cand: DerivationCandidate) -> Report:
    """The twist-commutation and k-twisted Leibniz conditions on all pairs."""
    start = time.perf_counter()
    entries = cand.entries()
    validate_endo(A, cand.endo, extra_vars=LAMBDA_POOL)
    items = []
    comm = _alpha_commutator_entries(A, entries, cand.var)
    parts: dict = {}
    for i in range(A.dim):
        for j in range(A.dim):
            if not comm[i][j].is_zero:
                parts[f"{A.names[i]}<-{A.names[j]}"] = [comm[i][j]]
    items.append(item_from_parts("alpha_commutes", "operator matrix", parts))

    bracket_var = _pick_bracket_var(_entry_variables(entries), cand.var)
    for i in range(A.dim):
        for j in range(A.dim):
            addends = _leibniz_parts(
                A, entries, cand.var, cand.parity, cand.k, i, j, bracket_var
            )
            parts = {}
            for vec in addends:
                for t, c in vec.coeffs.items():
                    parts.setdefault(A.names[t], []).append(c)
            items.append(
                item_from_parts("alpha_k_derivation", A.pair_label(i, j), parts)
            )
    report = Report(
        subject=f"derivation candidate (k={cand.k}) over {A.name}",
        items=items,
        elapsed=time.perf_counter() - start,
    )
    report.meta["k"] = cand.k
    report.meta["bracket_var"] = bracket_var
    return report


# ---------------------------------------------------------------------------
# Inner derivations
# ---------------------------------------------------------------------------


def inner_derivation(A: Superalgebra, a: Vector, k: int = 0):
    """The derivation b -> delta [a _l alpha^(k+1)(b)] attached to a
    twist-fixed element a; returns (candidate with exponent k+1, report)."""
    if A.delta == -1 and k % 2 == 1:
        raise AlgebraError("inner derivations need delta^k = 1")
    if A.alpha_apply(a) != a:
        raise AlgebraError("inner derivations require alpha(a) = a")
    parities = {A.parities[i] for i in a.coeffs}
    if len(parities) > 1:
        raise AlgebraError("the element must be parity-homogeneous")
    parity = parities.pop() if parities else 0
    n = A.dim
    entries = [[Poly.zero()] * n for _ in range(n)]
    for j in range(n):
        image = extend_bracket(A, a, A.alpha_element(j, power=k + 1), L1).scale(A.delta)
        for r, c in image.coeffs.items():
            entries[r][j] = c
    cand = DerivationCandidate(
        endo=ConformalEndo.from_rows(entries, parity=parity, var=L1), k=k + 1
    )
    return cand, check_alpha_k_derivation(A, cand)


# ---------------------------------------------------------------------------
# Commutator of derivations
# ---------------------------------------------------------------------------


def commutator(A: Superalgebra, Dc: DerivationCandidate, Dc2: DerivationCandidate):
    """[D _l1 D']_l2 (a) = D_l1(D'_(l2-l1) a) - (-1)^{|D||D'|} D'_(l2-l1)(D_l1 a).

    The result keeps l1 as a passive parameter and uses l2 as its operator
    variable; its exponent is k + s and it is re-checked on return.
    """
    if Dc.var != L1 or Dc2.var != L1:
        raise AlgebraError("commutator expects candidates with operator variable l1")
    m1 = Dc.entries()
    m2 = Dc2.entries()
    if len(m1) != A.dim or len(m2) != A.dim:
        raise AlgebraError("dimension mismatch")
    diff = Poly.var(L2) - Poly.var(L1)
    m2_at = mat_subst(m2, {L1: diff})
    first = mat_mul(m1, mat_subst(m2_at, {D: Poly.var(D) + Poly.var(L1)}))
    second = mat_mul(m2_at, mat_subst(m1, {D: Poly.var(D) + diff}))
    sign = (-1) ** (Dc.parity * Dc2.parity)
    entries = mat_sub(first, [[e * sign for e in row] for row in second])
    cand = DerivationCandidate(
        endo=ConformalEndo.from_rows(
            entries, parity=(Dc.parity + Dc2.parity) % 2, var=L2
        ),
        k=Dc.k + Dc2.k,
    )
    return cand, check_alpha_k_derivation(A, cand)


# ---------------------------------------------------------------------------
# Bounded-degree derivation space: exact solver + enumeration oracle
# ---------------------------------------------------------------------------


def _ansatz_slots(A: Superalgebra, parity: int, bounds) -> list:
    lmax, dmax = bounds
    slots = []
    for i in range(A.dim):
        for j in range(A.dim):
            if A.parities[i] != (A.parities[j] + parity) % 2:
                continue
            for la in range(lmax + 1):
                for db in range(dmax + 1):
                    slots.append((i, j, la, db))
    return slots


def _entries_from_coeffs(A: Superalgebra, slots, coeffs) -> Matrix:
    entries = [[Poly.zero()] * A.dim for _ in range(A.dim)]
    for (i, j, la, db), c in zip(slots, coeffs):
        if isinstance(c, Poly):
            term = c
        else:
            term = Poly.const(c)
        if term.is_zero:
            continue
        mono = Poly.const(1)
        if la:
            mono = mono * Poly.var(L1, la)
        if db:
            mono = mono * Poly.var(D, db)
        entries[i][j] = entries[i][j] + term * mono
    return entries


def _residual_polys(A: Superalgebra, entries: Matrix, parity: int, k: int) -> list:
    """Residual polynomials at fixed positions (stable across candidates)."""
    out = []
    comm = _alpha_commutator_entries(A, entries, L1)
    for row in comm:
        out.extend(row)
    bracket_var = _pick_bracket_var(_entry_variables(entries), L1)
    for i in range(A.dim):
        for j in range(A.dim):
            total = Vector.zero()
            for vec in _leibniz_parts(A, entries, L1, parity, k, i, j, bracket_var):
                total = total + vec
            for t in range(A.dim):
                out.append(total.get(t))
    return out


def solve_derivation_space(
    A: Superalgebra, k: int, parity: int, bounds=(2, 2)
) -> list:
    """Basis of the space of k-twisted derivations with entry degrees bounded
    by (lambda degree, d degree).  Assembled once with symbolic unknown
    coefficients and solved exactly; every returned candidate re-passes the
    checker."""
    slots = _ansatz_slots(A, parity, bounds)
    if not slots:
        return []
    avoid = {D, *LAMBDA_POOL, *A.scalar_params}
    unknowns = fresh_names(len(slots), avoid, prefix="c")
    symbolic = _entries_from_coeffs(A, slots, [Poly.var(u) for u in unknowns])
    residuals = _residual_polys(A, symbolic, parity, k)
    kernel = kernel_of(residuals, unknowns)
    out = []
    for vec in kernel:
        entries = _entries_from_coeffs(A, slots, vec)
        cand = DerivationCandidate(
            endo=ConformalEndo.from_rows(entries, parity=parity, var=L1), k=k
        )
        report = check_alpha_k_derivation(A, cand)
        if not report.ok:
            raise AssertionError(
                "solver returned a candidate failing the checker; "
                "system assembly is inconsistent"
            )
        out.append(cand)
    return out


def derivation_space_dimension_oracle(
    A: Superalgebra, k: int, parity: int, bounds=(2, 2)
) -> int:
    """Independent route to the same dimension: enumerate the unit monomial
    candidates of the ansatz, expand the Leibniz rule directly for each, and
    take the nullity of the stacked residual-coefficient matrix."""
    slots = _ansatz_slots(A, parity, bounds)
    if not slots:
        return 0
    columns = []
    row_index: dict = {}
    for q, slot in enumerate(slots):
        coeffs = [Fraction(0)] * len(slots)
        coeffs[q] = Fraction(1)
        entries = _entries_from_coeffs(A, slots, coeffs)
        column: dict = {}
        for pos, p in enumerate(_residual_polys(A, entries, parity, k)):
            for mono, c in p.terms.items():
                key = (pos, mono)
                if key not in row_index:
                    row_index[key] = len(row_index)
                column[row_index[key]] = column.get(row_index[key], Fraction(0)) + c
        columns.append(column)
    rows = len(row_index)
    if rows == 0:
        return len(slots)
    matrix = [[Fraction(0)] * len(slots) for _ in range(rows)]
    for q, column in enumerate(columns):
        for r, c in column.items():
            matrix[r][q] = c
    from .exactmath import solve_linear

    _, kernel = solve_linear(matrix, [Fraction(0)] * rows)
    return len(kernel)
