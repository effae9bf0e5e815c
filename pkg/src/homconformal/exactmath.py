"""Exact sparse multivariate polynomial arithmetic over the rationals.

A polynomial is a dictionary mapping monomials to rational coefficients
(``fractions.Fraction``), so every identity check in this package is exact
and decidable: a polynomial is zero iff its term map is empty.

  monomial = tuple of (variable, exponent) pairs, sorted by variable name,
             every exponent >= 1
  Poly     = {monomial: Fraction}, no zero coefficients stored

Variables are plain strings.  The conventional names used throughout the
package are ``d`` (the translation generator, written ∂ in the math), the
lambda variables ``l1``/``l2``/``l3``, and the formal deformation parameter
``t``.  Generated names (solver unknowns, internal slot variables) are
produced by :func:`fresh_names`.

This module also carries the exact matrix utilities (matrices are plain
lists of lists of Poly) and the exact rational linear solver that backs the
derivation-space and cochain-spanning computations.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Rational = Fraction
Var = str

D = "d"
L1 = "l1"
L2 = "l2"
L3 = "l3"
T = "t"

Monomial = tuple  # tuple[tuple[str, int], ...]


class MissingVariableError(KeyError):
    """A point passed to eval_at does not assign every variable."""


class InconsistentSystemError(ValueError):
    """A linear system has no solution."""


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    # merge of two sorted (var, exp) tuples
    if not m1:
        return m2
    if not m2:
        return m1
    out = []
    i = j = 0
    n1, n2 = len(m1), len(m2)
    while i < n1 and j < n2:
        v1, e1 = m1[i]
        v2, e2 = m2[j]
        if v1 == v2:
            out.append((v1, e1 + e2))
            i += 1
            j += 1
        elif v1 < v2:
            out.append(m1[i])
            i += 1
        else:
            out.append(m2[j])
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return tuple(out)


class Poly:
    """Immutable exact multivariate polynomial over Q."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None):
        if terms:
            self.terms = {m: c for m, c in terms.items() if c != 0}
        else:
            self.terms = {}
        self._hash = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "Poly":
        return _ZERO

    @staticmethod
    def const(value) -> "Poly":
        c = Fraction(value)
        if c == 0:
            return _ZERO
        return Poly({(): c})

    @staticmethod
    def var(name: str, exp: int = 1, coeff=1) -> "Poly":
        c = Fraction(coeff)
        if c == 0:
            return _ZERO
        if exp == 0:
            return Poly.const(c)
        if exp < 0:
            raise ValueError(f"negative exponent {exp} for {name}")
        return Poly({((name, exp),): c})

    # -- basic queries -----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return all(m == () for m in self.terms)

    def constant_value(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if not self.is_constant:
            raise ValueError(f"not a constant: {self}")
        return self.terms[()]

    def variables(self) -> frozenset:
        return frozenset(v for m in self.terms for v, _ in m)

    def degree(self, var: str | None = None) -> int:
        """Degree in one variable, or total degree if var is None; zero poly -> 0."""
        if not self.terms:
            return 0
        if var is None:
            return max(sum(e for _, e in m) for m in self.terms)
        best = 0
        for m in self.terms:
            for v, e in m:
                if v == var and e > best:
                    best = e
        return best

    def coefficient_of(self, var: str, exp: int) -> "Poly":
        """The coefficient of var**exp, as a polynomial in the remaining variables."""
        out = {}
        for m, c in self.terms.items():
            got = 0
            rest = []
            for v, e in m:
                if v == var:
                    got = e
                else:
                    rest.append((v, e))
            if got == exp:
                out[tuple(rest)] = out.get(tuple(rest), Fraction(0)) + c
        return Poly(out)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other) -> "Poly":
        other = _coerce(other)
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s == 0:
                    del out[m]
                else:
                    out[m] = s
        p = Poly.__new__(Poly)
        p.terms = out
        p._hash = None
        return p

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        p = Poly.__new__(Poly)
        p.terms = {m: -c for m, c in self.terms.items()}
        p._hash = None
        return p

    def __sub__(self, other) -> "Poly":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "Poly":
        return _coerce(other) + (-self)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if c == 0:
                return _ZERO
            p = Poly.__new__(Poly)
            p.terms = {m: k * c for m, k in self.terms.items()}
            p._hash = None
            return p
        other = _coerce(other)
        if not self.terms or not other.terms:
            return _ZERO
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                s = out.get(m)
                if s is None:
                    out[m] = c1 * c2
                else:
                    s = s + c1 * c2
                    if s == 0:
                        del out[m]
                    else:
                        out[m] = s
        p = Poly.__new__(Poly)
        p.terms = out
        p._hash = None
        return p

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(sorted(self.terms.items())))
        return self._hash

    # -- substitution and evaluation ----------------------------------------

    def substitute(self, assignments: Mapping[str, "Poly"]) -> "Poly":
        """Simultaneous substitution of polynomials for variables.

        Plain commutative-ring substitution: occurrences of ``d`` inside an
        assignment target merge with pre-existing ``d`` exponents.
        """
        if not assignments or not self.terms:
            return self
        hit = False
        for m in self.terms:
            for v, _ in m:
                if v in assignments:
                    hit = True
                    break
            if hit:
                break
        if not hit:
            return self
        power_cache: dict = {}

        def target_power(v: str, e: int) -> Poly:
            key = (v, e)
            got = power_cache.get(key)
            if got is None:
                got = assignments[v] ** e
                power_cache[key] = got
            return got

        total = _ZERO
        for m, c in self.terms.items():
            factor = Poly.const(c)
            for v, e in m:
                if v in assignments:
                    factor = factor * target_power(v, e)
                else:
                    factor = factor * Poly.var(v, e)
            total = total + factor
        return total

    def rename(self, mapping: Mapping[str, str]) -> "Poly":
        """Rename variables (must be a simultaneous, collision-safe rename)."""
        return self.substitute({old: Poly.var(new) for old, new in mapping.items()})

    def eval_at(self, point: Mapping[str, Fraction]) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            term = c
            for v, e in m:
                if v not in point:
                    raise MissingVariableError(v)
                term *= Fraction(point[v]) ** e
            total += term
        return total

    # -- display ------------------------------------------------------------

    def sorted_terms(self) -> list:
        return sorted(self.terms.items())

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        chunks = []
        for m, c in self.sorted_terms():
            mono = "*".join(f"{v}^{e}" if e > 1 else v for v, e in m)
            if not mono:
                body = str(c)
            elif c == 1:
                body = mono
            elif c == -1:
                body = f"-{mono}"
            else:
                body = f"{c}*{mono}"
            if chunks and not body.startswith("-"):
                chunks.append(f"+ {body}")
            elif chunks:
                chunks.append(f"- {body[1:]}")
            else:
                chunks.append(body)
        return " ".join(chunks)

    def __repr__(self) -> str:
        return f"Poly({self})"


_ZERO = Poly()


def _coerce(value) -> Poly:
    if isinstance(value, Poly):
        return value
    if isinstance(value, (int, Fraction)):
        return Poly.const(value)
    raise TypeError(f"cannot coerce {value!r} to Poly")


def poly(value) -> Poly:
    """Coerce an int/Fraction/Poly to Poly."""
    return _coerce(value)


def fresh_names(count: int, avoid: Iterable[str], prefix: str = "w") -> list:
    """Generate `count` variable names with the given prefix not in `avoid`."""
    avoid = set(avoid)
    out = []
    i = 0
    while len(out) < count:
        name = f"{prefix}{i}"
        if name not in avoid:
            out.append(name)
        i += 1
    return out


# ---------------------------------------------------------------------------
# Matrices over Poly (plain lists of lists; row index = target basis slot)
# ---------------------------------------------------------------------------

Matrix = list  # list[list[Poly]]


def mat_from_rows(rows: Sequence[Sequence]) -> Matrix:
    return [[_coerce(x) for x in row] for row in rows]


def mat_identity(n: int) -> Matrix:
    return [[Poly.const(1) if i == j else _ZERO for j in range(n)] for i in range(n)]


def mat_zero(n: int, m: int | None = None) -> Matrix:
    m = n if m is None else m
    return [[_ZERO] * m for _ in range(n)]


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    """Plain matrix product over the commutative polynomial ring."""
    n = len(a)
    k = len(b)
    m = len(b[0]) if k else 0
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = _ZERO
            for s in range(k):
                e = a[i][s]
                f = b[s][j]
                if e.terms and f.terms:
                    acc = acc + e * f
            row.append(acc)
        out.append(row)
    return out


def mat_pow(a: Matrix, n: int) -> Matrix:
    if n < 0:
        raise ValueError("use mat_inverse for negative powers")
    result = mat_identity(len(a))
    for _ in range(n):
        result = mat_mul(result, a)
    return result


def mat_subst(a: Matrix, assignments: Mapping[str, Poly]) -> Matrix:
    return [[x.substitute(assignments) for x in row] for row in a]


def mat_eq(a: Matrix, b: Matrix) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def mat_block_diag(a: Matrix, b: Matrix) -> Matrix:
    n, m = len(a), len(b)
    out = mat_zero(n + m)
    for i in range(n):
        for j in range(n):
            out[i][j] = a[i][j]
    for i in range(m):
        for j in range(m):
            out[n + i][n + j] = b[i][j]
    return out


def mat_det(a: Matrix) -> Poly:
    """Exact determinant by cofactor expansion (matrices here are small)."""
    n = len(a)
    if n == 0:
        return Poly.const(1)
    if n == 1:
        return a[0][0]
    total = _ZERO
    for j in range(n):
        if not a[0][j].terms:
            continue
        minor = [[a[i][k] for k in range(n) if k != j] for i in range(1, n)]
        piece = a[0][j] * mat_det(minor)
        total = total + (piece if j % 2 == 0 else -piece)
    return total


def mat_inverse_unit(a: Matrix) -> Matrix:
    """Inverse of a Poly matrix whose determinant is a nonzero rational constant."""
    n = len(a)
    det = mat_det(a)
    if not det.is_constant or det.is_zero:
        raise ValueError(f"matrix is not invertible over Q[d]: det = {det}")
    inv_det = Fraction(1) / det.constant_value()
    if n == 0:
        return []
    out = mat_zero(n)
    for i in range(n):
        for j in range(n):
            minor = [
                [a[r][c] for c in range(n) if c != i] for r in range(n) if r != j
            ]
            cof = mat_det(minor)
            out[i][j] = cof * inv_det if (i + j) % 2 == 0 else -(cof * inv_det)
    return out


# ---------------------------------------------------------------------------
# Exact linear algebra over Q
# ---------------------------------------------------------------------------


def _normalize_kernel_vector(vec: list) -> list:
    """Scale to a primitive integer vector with positive leading entry."""
    denom = 1
    for x in vec:
        denom = denom * x.denominator // _gcd(denom, x.denominator)
    ints = [int(x * denom) for x in vec]
    g = 0
    for x in ints:
        g = _gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
    for x in ints:
        if x != 0:
            if x < 0:
                ints = [-y for y in ints]
            break
    return [Fraction(x) for x in ints]


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def solve_linear(matrix: Sequence[Sequence], rhs: Sequence):
    """Exact solve of matrix @ x = rhs over Q.

    Returns (particular, kernel_basis).  Kernel vectors are primitive integer
    vectors (positive leading entry), one per free column, in column order.
    Raises InconsistentSystemError when no solution exists.
    """
    rows = [[Fraction(x) for x in row] for row in matrix]
    b = [Fraction(x) for x in rhs]
    if len(rows) != len(b):
        raise ValueError("matrix/rhs size mismatch")
    m = len(rows)
    n = len(rows[0]) if m else 0
    aug = [rows[i] + [b[i]] for i in range(m)]

    pivot_cols = []
    r = 0
    for c in range(n):
        pivot = None
        for i in range(r, m):
            if aug[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivot_cols.append(c)
        r += 1
        if r == m:
            break

    for i in range(r, m):
        if aug[i][n] != 0:
            raise InconsistentSystemError(f"row {i} reduces to 0 = {aug[i][n]}")

    particular = [Fraction(0)] * n
    for i, c in enumerate(pivot_cols):
        particular[c] = aug[i][n]

    pivot_set = set(pivot_cols)
    free_cols = [c for c in range(n) if c not in pivot_set]
    kernel = []
    for fc in free_cols:
        vec = [Fraction(0)] * n
        vec[fc] = Fraction(1)
        for i, c in enumerate(pivot_cols):
            vec[c] = -aug[i][fc]
        kernel.append(_normalize_kernel_vector(vec))
    return particular, kernel


def linear_rows(polys: Sequence[Poly], unknowns: Sequence[str]):
    """Flatten polynomials that are degree <= 1 in `unknowns` into linear rows.

    Each input polynomial contributes one row per monomial in the remaining
    (ambient) variables.  Returns (matrix, rhs) for the system matrix@x = rhs,
    i.e. poly == 0 for all inputs iff x solves the system.
    """
    index = {u: i for i, u in enumerate(unknowns)}
    matrix = []
    rhs = []
    for p in polys:
        rows: dict = {}
        for m, c in p.terms.items():
            hits = [(v, e) for v, e in m if v in index]
            ambient = tuple((v, e) for v, e in m if v not in index)
            row = rows.setdefault(ambient, [Fraction(0)] * (len(unknowns) + 1))
            if not hits:
                row[-1] -= c
            elif len(hits) == 1 and hits[0][1] == 1:
                row[index[hits[0][0]]] += c
            else:
                raise ValueError(f"polynomial is not linear in the unknowns: {p}")
        for ambient in sorted(rows):
            row = rows[ambient]
            matrix.append(row[:-1])
            rhs.append(row[-1])
    return matrix, rhs


def kernel_of(polys: Sequence[Poly], unknowns: Sequence[str]):
    """Basis of the solution space of the homogeneous system polys == 0."""
    matrix, rhs = linear_rows(polys, unknowns)
    if any(x != 0 for x in rhs):
        raise ValueError("system is not homogeneous")
    if not matrix:
        _, kernel = solve_linear([[Fraction(0)] * len(unknowns)], [Fraction(0)])
        return kernel
    _, kernel = solve_linear(matrix, rhs)
    return kernel
