"""Core representation of a finitely generated twisted Lie conformal superalgebra.

The algebra is a free Q[d]-module on a finite Z2-graded basis, with

  * a global Jordan sign delta (+1: Lie-type, -1: Jordan-type),
  * an even twist endomorphism alpha (a parity-preserving matrix over Q[d],
    acting Q[d]-linearly, so alpha commutes with d structurally),
  * a lambda-bracket given by structure constants: for a stored pair (i, j),
    sc(i, j) is a vector of polynomials in {d, l1} (plus declared scalar
    parameters) over the basis.

Brackets of general elements reduce to brackets of generators through the
two sesquilinearity rules

    [d a _l b] = -l [a _l b],      [a _l d b] = (d + l) [a _l b],

and pairs missing from the table are completed on demand by the graded skew
rule  [a _l b] = -delta (-1)^{|a||b|} [b _{-l-d} a].  Axiom checking on basis
tuples therefore suffices; see the README for the reduction lemma.

The single composition rule used everywhere ("conformal composition") is:
applying an operator family F_s to a vector whose coefficients contain d
shifts those d's by s before F's own entries are multiplied in.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .exactmath import (
    D,
    L1,
    L2,
    Matrix,
    Poly,
    fresh_names,
    mat_det,
    mat_identity,
    mat_inverse_unit,
    poly,
)
from .reporting import Report, item_from_parts

LAMBDA_NAMES = ("l1", "l2", "l3")


# ---------------------------------------------------------------------------
# Vectors over the basis
# ---------------------------------------------------------------------------


class Vector:
    """A vector of polynomial coefficients over basis indices.

    Used in two roles: a plain element (coefficients in d and scalar
    parameters only) and a lambda-bracket value (coefficients also involving
    lambda variables, recorded in ``lambda_vars``).
    """

    __slots__ = ("coeffs", "lambda_vars")

    def __init__(self, coeffs: Mapping[int, Poly] | None = None, lambda_vars=()):
        self.coeffs = {}
        if coeffs:
            for i, c in coeffs.items():
                c = poly(c)
                if not c.is_zero:
                    self.coeffs[i] = c
        self.lambda_vars = tuple(lambda_vars)

    @staticmethod
    def zero(lambda_vars=()) -> "Vector":
        return Vector({}, lambda_vars)

    @staticmethod
    def basis(i: int) -> "Vector":
        return Vector({i: Poly.const(1)})

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def items(self):
        return sorted(self.coeffs.items())

    def get(self, i: int) -> Poly:
        return self.coeffs.get(i, Poly.zero())

    def __add__(self, other: "Vector") -> "Vector":
        out = dict(self.coeffs)
        for i, c in other.coeffs.items():
            s = out.get(i)
            out[i] = c if s is None else s + c
        lv = self.lambda_vars if self.lambda_vars else other.lambda_vars
        return Vector(out, lv)

    def __sub__(self, other: "Vector") -> "Vector":
        return self + (-other)

    def __neg__(self) -> "Vector":
        return Vector({i: -c for i, c in self.coeffs.items()}, self.lambda_vars)

    def scale(self, factor) -> "Vector":
        factor = poly(factor)
        return Vector(
            {i: c * factor for i, c in self.coeffs.items()}, self.lambda_vars
        )

    def subst(self, assignments) -> "Vector":
        return Vector(
            {i: c.substitute(assignments) for i, c in self.coeffs.items()},
            self.lambda_vars,
        )

    def with_lambda_vars(self, lambda_vars) -> "Vector":
        return Vector(self.coeffs, lambda_vars)

    def variables(self) -> set:
        out = set()
        for c in self.coeffs.values():
            out |= c.variables()
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Vector) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted((i, hash(c)) for i, c in self.coeffs.items())))

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"({c})*e{i}" for i, c in self.items())


Element = Vector
LambdaValue = Vector


def format_vector(A: "Superalgebra", v: Vector) -> str:
    if v.is_zero:
        return "0"
    return " + ".join(f"({c})*{A.names[i]}" for i, c in v.items())


# ---------------------------------------------------------------------------
# The algebra
# ---------------------------------------------------------------------------


class AlgebraError(ValueError):
    pass


class Superalgebra:
    """delta sign, graded basis, twist matrix, lambda-bracket structure constants."""

    def __init__(
        self,
        delta: int,
        basis: Sequence,  # sequence of (name, parity)
        alpha: Matrix,
        brackets: Mapping,  # {(i, j): Vector in l1}
        scalar_params=(),
        name: str = "algebra",
    ):
        if delta not in (1, -1):
            raise AlgebraError(f"delta must be +1 or -1, got {delta}")
        self.delta = delta
        self.names = tuple(n for n, _ in basis)
        self.parities = tuple(int(p) for _, p in basis)
        self.scalar_params = frozenset(scalar_params)
        self.name = name
        n = len(self.names)
        if len(set(self.names)) != n:
            raise AlgebraError("basis names must be unique")
        for nm in self.names:
            if not nm or "|" in nm:
                raise AlgebraError(f"invalid basis name {nm!r}")
        for p in self.parities:
            if p not in (0, 1):
                raise AlgebraError("parities must be 0 or 1")

        if len(alpha) != n or any(len(row) != n for row in alpha):
            raise AlgebraError("alpha must be a square matrix over the basis")
        self.alpha = [[poly(x) for x in row] for row in alpha]
        allowed_alpha = {D} | self.scalar_params
        for i in range(n):
            for j in range(n):
                entry = self.alpha[i][j]
                if entry.is_zero:
                    continue
                if not entry.variables() <= allowed_alpha:
                    raise AlgebraError(
                        f"alpha[{i}][{j}] uses variables outside {sorted(allowed_alpha)}"
                    )
                if self.parities[i] != self.parities[j]:
                    raise AlgebraError(
                        f"alpha is not parity-preserving at ({self.names[i]}, {self.names[j]})"
                    )

        self.brackets = {}
        allowed_sc = {D, L1} | self.scalar_params
        for (i, j), value in brackets.items():
            if not (0 <= i < n and 0 <= j < n):
                raise AlgebraError(f"bracket key ({i}, {j}) out of range")
            if not isinstance(value, Vector):
                value = Vector(value)
            for k, c in value.coeffs.items():
                if not (0 <= k < n):
                    raise AlgebraError(f"bracket ({i},{j}) targets index {k} out of range")
                if not c.variables() <= allowed_sc:
                    raise AlgebraError(
                        f"bracket ({self.names[i]},{self.names[j]}) coefficient uses "
                        f"variables outside {sorted(allowed_sc)}"
                    )
                if self.parities[k] != (self.parities[i] + self.parities[j]) % 2:
                    raise AlgebraError(
                        f"grading violation: [{self.names[i]}, {self.names[j]}] "
                        f"targets {self.names[k]} of wrong parity"
                    )
            self.brackets[(i, j)] = value.with_lambda_vars((L1,))

        self._pair_cache: dict = {}
        self._alpha_pow: dict = {0: mat_identity(n), 1: self.alpha}

    # -- basic accessors ----------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.names)

    def parity(self, i: int) -> int:
        return self.parities[i]

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise AlgebraError(f"unknown basis name {name!r}") from None

    def basis_element(self, i: int) -> Vector:
        return Vector.basis(i)

    def pair_label(self, i: int, j: int) -> str:
        return f"({self.names[i]}, {self.names[j]})"

    # -- twist --------------------------------------------------------------

    def alpha_matrix(self, power: int = 1) -> Matrix:
        if power not in self._alpha_pow:
            if power > 1:
                prev = self.alpha_matrix(power - 1)
                self._alpha_pow[power] = [
                    [
                        sum(
                            (prev[i][k] * self.alpha[k][j] for k in range(self.dim)),
                            Poly.zero(),
                        )
                        for j in range(self.dim)
                    ]
                    for i in range(self.dim)
                ]
            else:
                inv = self.alpha_inverse()
                prev = self.alpha_matrix(power + 1)
                self._alpha_pow[power] = [
                    [
                        sum(
                            (prev[i][k] * inv[k][j] for k in range(self.dim)),
                            Poly.zero(),
                        )
                        for j in range(self.dim)
                    ]
                    for i in range(self.dim)
                ]
        return self._alpha_pow[power]

    def alpha_inverse(self) -> Matrix:
        if "inv" not in self._pair_cache:
            try:
                self._pair_cache["inv"] = mat_inverse_unit(self.alpha)
            except ValueError as exc:
                raise AlgebraError(
                    f"twist is not invertible over Q[d] ({exc}); "
                    "a regular algebra is required here"
                ) from exc
        return self._pair_cache["inv"]

    def alpha_apply(self, v: Vector, power: int = 1) -> Vector:
        """Apply the twist (Q[d]-linearly, no shifts) to a vector."""
        return mat_apply_plain(self.alpha_matrix(power), v)

    def alpha_element(self, i: int, power: int = 1) -> Vector:
        return self.alpha_apply(Vector.basis(i), power)

    # -- structure constants --------------------------------------------------

    def stored_pairs(self):
        return sorted(self.brackets)

    def bracket_pair(self, i: int, j: int) -> Vector:
        """sc(i, j), completing missing orientations by graded skew symmetry."""
        got = self._pair_cache.get((i, j))
        if got is not None:
            return got
        if (i, j) in self.brackets:
            value = self.brackets[(i, j)]
        elif (j, i) in self.brackets:
            mirror = self.brackets[(j, i)]
            sign = -self.delta * (-1) ** (self.parities[i] * self.parities[j])
            value = mirror.subst({L1: Poly.var(L1, coeff=-1) - Poly.var(D)}).scale(sign)
            value = value.with_lambda_vars((L1,))
        else:
            value = Vector.zero((L1,))
        self._pair_cache[(i, j)] = value
        return value

    # expansion entry point shared with the associative-product variant
    def pair_value(self, i: int, j: int) -> Vector:
        return self.bracket_pair(i, j)

    def fresh_vars(self, count: int, extra_avoid=()) -> list:
        avoid = {D, *LAMBDA_NAMES, *self.scalar_params, *extra_avoid}
        return fresh_names(count, avoid)


def mat_apply_plain(matrix: Matrix, v: Vector) -> Vector:
    """Apply a Q[d]-linear matrix to a vector (no variable shifts)."""
    out: dict = {}
    for j, c in v.coeffs.items():
        for i in range(len(matrix)):
            entry = matrix[i][j]
            if entry.is_zero:
                continue
            piece = entry * c
            s = out.get(i)
            out[i] = piece if s is None else s + piece
    return Vector(out, v.lambda_vars)


# ---------------------------------------------------------------------------
# Bracket expansion
# ---------------------------------------------------------------------------


def extend_bracket(A: Superalgebra, x: Vector, y: Vector, lam: str = L1) -> Vector:
    """[x _lam y] for elements x, y via sesquilinearity.

    x = sum f_i(d) e_i, y = sum g_j(d) e_j gives
    sum f_i(-lam) g_j(d + lam) sc(i, j).
    """
    if lam == D or lam in A.scalar_params:
        raise AlgebraError(f"{lam!r} cannot be used as a bracket variable")
    for v in (x, y):
        bad = v.variables() - ({D} | A.scalar_params)
        if bad:
            raise AlgebraError(f"element coefficients contain {sorted(bad)}")
    lam_poly = Poly.var(lam)
    out = Vector.zero((lam,))
    for i, f in x.coeffs.items():
        f_at = f.substitute({D: -lam_poly})
        if f_at.is_zero:
            continue
        for j, g in y.coeffs.items():
            base = A.pair_value(i, j)
            if base.is_zero:
                continue
            g_at = g.substitute({D: Poly.var(D) + lam_poly})
            if lam != L1:
                base = base.subst({L1: lam_poly})
            out = out + base.scale(f_at * g_at)
    return out.with_lambda_vars((lam,))


def bracket_left(A: Superalgebra, x: Vector, inner: Vector, lam: str) -> Vector:
    """[x _lam inner] where inner is a lambda-polynomial value.

    Coefficients of inner have their d shifted by lam (conformal composition);
    x must be a plain element.
    """
    out = Vector.zero(tuple(dict.fromkeys((*inner.lambda_vars, lam))))
    lam_poly = Poly.var(lam)
    for m, c in inner.coeffs.items():
        shifted = c.substitute({D: Poly.var(D) + lam_poly})
        if shifted.is_zero:
            continue
        out = out + extend_bracket(A, x, Vector.basis(m), lam).scale(shifted)
    return out


def bracket_nested_left(
    A: Superalgebra, inner: Vector, outer_value: Poly, c: Vector
) -> Vector:
    """[inner _nu c] with the left slot a lambda-polynomial, then nu := outer_value.

    For inner = sum P_k(l, d) e_k the left sesquilinearity rule turns the
    coefficient d's into -nu:  sum P_k(l, -nu) [e_k _nu c].
    """
    clash = (outer_value.variables() & c.variables()) - ({D} | A.scalar_params)
    if clash:
        raise AlgebraError(
            f"outer variable(s) {sorted(clash)} already appear in the right argument"
        )
    (nu,) = A.fresh_vars(1, inner.variables() | outer_value.variables() | c.variables())
    nu_poly = Poly.var(nu)
    out = Vector.zero(inner.lambda_vars)
    for k, p in inner.coeffs.items():
        factor = p.substitute({D: -nu_poly})
        if factor.is_zero:
            continue
        out = out + extend_bracket(A, Vector.basis(k), c, nu).scale(factor)
    return out.subst({nu: outer_value})


def endo_apply(entries: Matrix, var: str, value: Vector, at: Poly) -> Vector:
    """Apply a conformal operator family F (matrix in (var, d)) at var := at.

    Conformal composition: the d's inside value's coefficients are shifted by
    the operator variable before F's entries multiply in, then the operator
    variable is substituted by `at`.  With at = -l1 - d this realizes the
    skew-side evaluation F_{-l-d}.
    """
    avoid = value.variables() | at.variables() | {var, D}
    for row in entries:
        for e in row:
            avoid |= e.variables()
    (s,) = fresh_names(1, avoid)
    s_poly = Poly.var(s)
    out: dict = {}
    for j, c in value.coeffs.items():
        shifted = c.substitute({D: Poly.var(D) + s_poly})
        if shifted.is_zero:
            continue
        for i in range(len(entries)):
            entry = entries[i][j]
            if entry.is_zero:
                continue
            piece = entry.substitute({var: s_poly}) * shifted
            got = out.get(i)
            out[i] = piece if got is None else got + piece
    return Vector(out).subst({s: at})


# ---------------------------------------------------------------------------
# Conformal endomorphisms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConformalEndo:
    """A parity-homogeneous operator family: matrix of polynomials in (var, d).

    Column j holds the image of basis vector j.  The conformal rule
    F_l(d m) = (d + l) F_l(m) is realized structurally by endo_apply.
    """

    entries: tuple  # tuple of tuples of Poly
    parity: int = 0
    var: str = L1

    @staticmethod
    def from_rows(rows, parity: int = 0, var: str = L1) -> "ConformalEndo":
        return ConformalEndo(
            entries=tuple(tuple(poly(x) for x in row) for row in rows),
            parity=parity,
            var=var,
        )

    @property
    def dim(self) -> int:
        return len(self.entries)

    def matrix(self) -> Matrix:
        return [list(row) for row in self.entries]

    def apply(self, value: Vector, at: Poly) -> Vector:
        return endo_apply(self.matrix(), self.var, value, at)

    def coefficient_matrix(self, n: int) -> Matrix:
        """n-th member of the coefficient sequence: n! times the var^n slice."""
        fact = 1
        for k in range(2, n + 1):
            fact *= k
        return [
            [e.coefficient_of(self.var, n) * Fraction(fact) for e in row]
            for row in self.entries
        ]


def validate_endo(A: Superalgebra, endo: ConformalEndo, extra_vars=()) -> None:
    n = A.dim
    if endo.dim != n or any(len(row) != n for row in endo.entries):
        raise AlgebraError("operator matrix size does not match the basis")
    allowed = {D, endo.var} | A.scalar_params | set(extra_vars)
    for i in range(n):
        for j in range(n):
            e = endo.entries[i][j]
            if e.is_zero:
                continue
            if not e.variables() <= allowed:
                raise AlgebraError(
                    f"operator entry ({i},{j}) uses variables outside {sorted(allowed)}"
                )
            if A.parities[i] != (A.parities[j] + endo.parity) % 2:
                raise AlgebraError(
                    f"operator is not parity-homogeneous at ({A.names[i]}, {A.names[j]})"
                )


def endo_commutes_with_alpha(A: Superalgebra, endo: ConformalEndo) -> bool:
    """F_l(alpha(v)) == alpha(F_l(v)) for all v, as a matrix identity."""
    lam = Poly.var(endo.var)
    for j in range(A.dim):
        lhs = endo.apply(A.alpha_element(j), lam)
        rhs = A.alpha_apply(endo.apply(Vector.basis(j), lam))
        if lhs != rhs:
            return False
    return True


# ---------------------------------------------------------------------------
# Axiom checkers
# ---------------------------------------------------------------------------


def _parts_from_vectors(A: Superalgebra, vectors) -> dict:
    """{target name: [addend polys]} from a list of Vectors to be summed."""
    parts: dict = {}
    for vec in vectors:
        for k, c in vec.coeffs.items():
            parts.setdefault(A.names[k], []).append(c)
    return parts


def check_grading(A: Superalgebra) -> Report:
    """Structural grading: re-asserts bracket targets and twist block structure."""
    start = time.perf_counter()
    items = []
    for (i, j), value in sorted(A.brackets.items()):
        bad: dict = {}
        for k, c in value.coeffs.items():
            if A.parities[k] != (A.parities[i] + A.parities[j]) % 2:
                bad.setdefault(A.names[k], []).append(c)
        items.append(item_from_parts("grading", A.pair_label(i, j), bad))
    bad_alpha: dict = {}
    for i in range(A.dim):
        for j in range(A.dim):
            if not A.alpha[i][j].is_zero and A.parities[i] != A.parities[j]:
                bad_alpha.setdefault(f"{A.names[i]}<-{A.names[j]}", []).append(
                    A.alpha[i][j]
                )
    items.append(item_from_parts("grading", "twist parity blocks", bad_alpha))
    return Report(subject=A.name, items=items, elapsed=time.perf_counter() - start)


def check_skew_symmetry(A: Superalgebra) -> Report:
    """sc(i,j) + delta (-1)^{|i||j|} sc(j,i)|_{l1 -> -l1-d} == 0 where both stored."""
    start = time.perf_counter()
    items = []
    flip = {L1: Poly.var(L1, coeff=-1) - Poly.var(D)}
    for i, j in A.stored_pairs():
        if (j, i) not in A.brackets:
            continue
        if i > j:
            continue  # (j, i) side emitted once from the sorted orientation
        sign = A.delta * (-1) ** (A.parities[i] * A.parities[j])
        mirrored = A.brackets[(j, i)].subst(flip).scale(sign)
        parts = _parts_from_vectors(A, [A.brackets[(i, j)], mirrored])
        items.append(item_from_parts("skew_symmetry", A.pair_label(i, j), parts))
    count = len(items)
    if not items:
        # every pair is skew-completed on demand; record the vacuous pass
        items.append(item_from_parts("skew_symmetry", "all pairs skew-completed", {}))
    report = Report(subject=A.name, items=items, elapsed=time.perf_counter() - start)
    report.meta["skew_pairs_checked"] = count
    return report


def hom_jacobi_parts(A: Superalgebra, i: int, j: int, k: int) -> dict:
    """Addends of [alpha(ei)_l1 [ej_l2 ek]] - delta[[ei_l1 ej]_{l1+l2} alpha(ek)]
    - delta(-1)^{|i||j|}[alpha(ej)_l2 [ei_l1 ek]] per target generator."""
    lhs = bracket_left(A, A.alpha_element(i), extend_bracket(A, Vector.basis(j), Vector.basis(k), L2), L1)
    t1 = bracket_nested_left(
        A,
        extend_bracket(A, Vector.basis(i), Vector.basis(j), L1),
        Poly.var(L1) + Poly.var(L2),
        A.alpha_element(k),
    )
    t2 = bracket_left(A, A.alpha_element(j), extend_bracket(A, Vector.basis(i), Vector.basis(k), L1), L2)
    sign = A.delta * (-1) ** (A.parities[i] * A.parities[j])
    return _parts_from_vectors(A, [lhs, t1.scale(-A.delta), t2.scale(-sign)])


def check_hom_jacobi(A: Superalgebra) -> Report:
    """The twisted graded Jacobi identity on all basis triples."""
    start = time.perf_counter()
    items = []
    n = A.dim
    for i in range(n):
        for j in range(n):
            for k in range(n):
                parts = hom_jacobi_parts(A, i, j, k)
                loc = f"({A.names[i]}, {A.names[j]}, {A.names[k]})"
                items.append(item_from_parts("hom_jacobi", loc, parts))
    return Report(subject=A.name, items=items, elapsed=time.perf_counter() - start)


def check_multiplicative(A: Superalgebra) -> Report:
    """alpha([ei_l ej]) == [alpha(ei)_l alpha(ej)] on all ordered pairs."""
    start = time.perf_counter()
    items = []
    n = A.dim
    for i in range(n):
        for j in range(n):
            lhs = A.alpha_apply(A.bracket_pair(i, j))
            rhs = extend_bracket(A, A.alpha_element(i), A.alpha_element(j), L1)
            parts = _parts_from_vectors(A, [lhs, -rhs])
            items.append(item_from_parts("multiplicative", A.pair_label(i, j), parts))
    return Report(subject=A.name, items=items, elapsed=time.perf_counter() - start)


def check_regular(A: Superalgebra) -> Report:
    """The twist is invertible over Q[d] iff det(alpha) is a nonzero rational.

    Residual convention: the nonconstant part of the determinant when it is
    not constant, or the sentinel 1 when the determinant vanishes.
    """
    start = time.perf_counter()
    det = mat_det(A.alpha)
    if det.is_zero:
        parts = {"det(alpha) = 0": [Poly.const(1)]}
    elif not det.is_constant:
        parts = {"nonconstant det(alpha)": [det - Poly.const(det.terms.get((), 0))]}
    else:
        parts = {}
    item = item_from_parts("regular", "det(alpha)", parts)
    report = Report(
        subject=A.name, items=[item], elapsed=time.perf_counter() - start
    )
    report.meta["det_alpha"] = str(det)
    return report


DEFAULT_CHECKS = ("grading", "skew_symmetry", "hom_jacobi", "multiplicative", "regular")

_CHECKERS = {
    "grading": check_grading,
    "skew_symmetry": check_skew_symmetry,
    "hom_jacobi": check_hom_jacobi,
    "multiplicative": check_multiplicative,
    "regular": check_regular,
}


def run_suite(A: Superalgebra, checks=None) -> Report:
    """Run the selected axiom checkers (all five by default) and merge reports."""
    start = time.perf_counter()
    report = Report(subject=A.name)
    for check in checks or DEFAULT_CHECKS:
        if check not in _CHECKERS:
            raise AlgebraError(f"unknown check {check!r}")
        report.extend(_CHECKERS[check](A))
    report.elapsed = time.perf_counter() - start
    return report
