"""Cochains and the low-degree differentials.

An n-cochain (n <= 3) maps basis n-tuples to module-valued polynomials in
the slot variables l1..ln and d.  Three conditions define the class:

  * conformal antilinearity -- structural: consuming an argument whose
    coefficient contains d turns that d into minus the slot variable;
  * graded skew symmetry under adjacent argument swaps (with the slot
    variables travelling along) -- enforced by storing values on sorted
    index tuples only and materializing everything else with the sign;
  * twist compatibility gamma o alpha = beta o gamma -- checked at build
    time (differential outputs skip the re-check for speed; the test suite
    validates them separately).

The n-th differential's single-action terms carry rho(alpha^n(u_i)); its
bracket-argument terms carry alpha on the spectator argument and evaluate
the consumed bracket at the sum of its two slot variables.  The variant
printed with mixed twist powers (alpha on u1 only) is available as
schedule="printed" for comparison; "uniform" is the default and is the
variant under which d2 o d1 vanishes (see README, Conventions).
"""

from __future__ import annotations

import itertools
import time
from typing import Mapping, Sequence

from .algebra import (
    AlgebraError,
    Superalgebra,
    Vector,
    extend_bracket,
    mat_apply_plain,
)
from .exactmath import D, L1, L2, L3, Poly, fresh_names, kernel_of
from .representation import Representation
from .reporting import Report, item_from_parts

SLOT_VARS = (L1, L2, L3)

SCHEDULES = {
    "uniform": {1: (1, 1), 2: (2, 2, 2)},
    "printed": {1: (1, 1), 2: (1, 2, 2)},
}


def _materialize_raw(delta, parities, values: Mapping, arity: int, tup):
    """Value at an arbitrary tuple from sorted-tuple storage.

    Bubble sort carries the slot variable of each argument along with it and
    multiplies by -delta(-1)^{|a||b|} per adjacent swap; the stored value's
    canonical slots are then renamed to the travelled variables.
    """
    pairs = [(idx, SLOT_VARS[pos]) for pos, idx in enumerate(tup)]
    sign = 1
    changed = True
    while changed:
        changed = False
        for p in range(len(pairs) - 1):
            if pairs[p][0] > pairs[p + 1][0]:
                a, b = pairs[p][0], pairs[p + 1][0]
                sign *= -delta * (-1) ** (parities[a] * parities[b])
                pairs[p], pairs[p + 1] = pairs[p + 1], pairs[p]
                changed = True
    stored = values.get(tuple(idx for idx, _ in pairs))
    if stored is None or stored.is_zero:
        return Vector.zero(SLOT_VARS[:arity])
    rename = {
        SLOT_VARS[pos]: Poly.var(var)
        for pos, (_, var) in enumerate(pairs)
        if SLOT_VARS[pos] != var
    }
    out = stored.subst(rename) if rename else stored
    return out if sign == 1 else out.scale(sign)


class Cochain:
    """Module-valued n-cochain stored on sorted basis tuples."""

    def __init__(self, algebra: Superalgebra, rep: Representation, arity: int,
                 parity: int, values: Mapping):
        self.algebra = algebra
        self.rep = rep
        self.arity = arity
        self.parity = parity
        self.values = {
            tup: v for tup, v in values.items() if not v.is_zero
        }
        self._cache: dict = {}

    @staticmethod
    def build(
        algebra: Superalgebra,
        rep: Representation,
        arity: int,
        parity: int,
        values: Mapping,
        validate: bool = True,
    ) -> "Cochain":
        if arity not in (0, 1, 2, 3):
            raise AlgebraError("arity must be 0..3")
        if parity not in (0, 1):
            raise AlgebraError("parity must be 0 or 1")
        gamma = Cochain(algebra, rep, arity, parity, values)
        gamma._validate_structure()
        if validate:
            gamma._validate_axioms()
        return gamma

    def _validate_structure(self) -> None:
        A, R = self.algebra, self.rep
        allowed = {D, *SLOT_VARS[: self.arity]} | A.scalar_params
        for tup, value in self.values.items():
            if len(tup) != self.arity:
                raise AlgebraError(f"tuple {tup} has wrong length")
            if any(not (0 <= i < A.dim) for i in tup):
                raise AlgebraError(f"tuple {tup} out of range")
            if tuple(sorted(tup)) != tup:
                raise AlgebraError(f"values must be stored on sorted tuples, got {tup}")
            want = (sum(A.parities[i] for i in tup) + self.parity) % 2
            for r, c in value.coeffs.items():
                if not (0 <= r < R.module_dim):
                    raise AlgebraError(f"target {r} out of module range")
                if not c.variables() <= allowed:
                    raise AlgebraError(
                        f"value at {tup} uses variables outside {sorted(allowed)}"
                    )
                if R.module_parities[r] != want:
                    raise AlgebraError(
                        f"value at {tup} violates the grading at {R.module_names[r]}"
                    )

    def _validate_axioms(self) -> None:
        A = self.algebra
        delta = A.delta
        # repeated arguments: the stored value must be consistent with the
        # sign rule applied to the equal adjacent pair
        for tup, value in self.values.items():
            for pos in range(len(tup) - 1):
                if tup[pos] != tup[pos + 1]:
                    continue
                sign = -delta * (-1) ** A.parities[tup[pos]]
                swap = {
                    SLOT_VARS[pos]: Poly.var(SLOT_VARS[pos + 1]),
                    SLOT_VARS[pos + 1]: Poly.var(SLOT_VARS[pos]),
                }
                if value != value.subst(swap).scale(sign):
                    raise AlgebraError(
                        f"value at {tup} is inconsistent with the swap sign rule"
                    )
        # twist compatibility on every sorted tuple
        bad = twist_compat_failures(self)
        if bad:
            raise AlgebraError(
                f"cochain is not twist-compatible at {bad[0]}"
            )

    def materialize(self, tup) -> Vector:
        got = self._cache.get(tup)
        if got is None:
            got = _materialize_raw(
                self.algebra.delta, self.algebra.parities, self.values, self.arity, tup
            )
            self._cache[tup] = got
        return got

    @property
    def is_zero(self) -> bool:
        return all(v.is_zero for v in self.values.values())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Cochain)
            and self.arity == other.arity
            and self.parity == other.parity
            and self.values == other.values
        )

    def scale(self, factor) -> "Cochain":
        return Cochain(
            self.algebra,
            self.rep,
            self.arity,
            self.parity,
            {tup: v.scale(factor) for tup, v in self.values.items()},
        )

    def __add__(self, other: "Cochain") -> "Cochain":
        if (self.arity, self.parity) != (other.arity, other.parity):
            raise AlgebraError("cochain arity/parity mismatch")
        values = dict(self.values)
        for tup, v in other.values.items():
            values[tup] = values[tup] + v if tup in values else v
        return Cochain(self.algebra, self.rep, self.arity, self.parity, values)

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + other.scale(-1)


def zero_cochain(A, R, arity: int, parity: int = 0) -> Cochain:
    return Cochain(A, R, arity, parity, {})


def twist_compat_failures(gamma: Cochain) -> list:
    """Sorted tuples where gamma(alpha x ... x alpha) != beta(gamma(...))."""
    A, R = gamma.algebra, gamma.rep
    n = gamma.arity
    bad = []
    for tup in itertools.combinations_with_replacement(range(A.dim), n):
        lhs = Vector.zero()
        for combo in itertools.product(range(A.dim), repeat=n):
            factor = Poly.const(1)
            for pos, (m, i) in enumerate(zip(combo, tup)):
                entry = A.alpha[m][i]
                if entry.is_zero:
                    factor = Poly.zero()
                    break
                factor = factor * entry.substitute(
                    {D: Poly.var(SLOT_VARS[pos], coeff=-1)}
                )
            if factor.is_zero:
                continue
            lhs = lhs + gamma.materialize(combo).scale(factor)
        rhs = mat_apply_plain(R.beta, gamma.materialize(tup))
        if lhs != rhs:
            bad.append(tuple(A.names[i] for i in tup))
    return bad


def cochain_apply(gamma: Cochain, args: Sequence, slot_values: Sequence) -> Vector:
    """gamma evaluated on lambda-polynomial arguments at given slot values.

    Each argument is a Vector over the algebra basis; antilinearity converts
    the d inside its coefficients into minus the slot variable, and the slot
    variables are substituted by `slot_values` at the end (so a slot value
    of -d - l1 refers to the ambient d of the result).
    """
    n = gamma.arity
    if len(args) != n or len(slot_values) != n:
        raise AlgebraError("argument/slot count mismatch")
    avoid = set(SLOT_VARS) | {D} | set(gamma.algebra.scalar_params)
    for arg in args:
        avoid |= arg.variables()
    for sv in slot_values:
        avoid |= sv.variables()
    for value in gamma.values.values():
        avoid |= value.variables()
    slots = fresh_names(n, avoid)
    rename = {SLOT_VARS[pos]: Poly.var(slots[pos]) for pos in range(n)}
    out = Vector.zero()
    for combo in itertools.product(*[sorted(arg.coeffs.items()) for arg in args]):
        factor = Poly.const(1)
        for pos, (_, coeff) in enumerate(combo):
            factor = factor * coeff.substitute({D: Poly.var(slots[pos], coeff=-1)})
            if factor.is_zero:
                break
        if factor.is_zero:
            continue
        base = gamma.materialize(tuple(idx for idx, _ in combo))
        if base.is_zero:
            continue
        out = out + base.subst(rename).scale(factor)
    return out.subst({slots[pos]: slot_values[pos] for pos in range(n)})


# ---------------------------------------------------------------------------
# Differentials
# ---------------------------------------------------------------------------


def d0(A: Superalgebra, R: Representation, gamma: Cochain) -> Cochain:
    """(d m)_l (e_i) = rho(e_i)_l (m) for a 0-cochain m."""
    if gamma.arity != 0:
        raise AlgebraError("d0 expects a 0-cochain")
    m = gamma.materialize(())
    values = {}
    for i in range(A.dim):
        value = R.apply(Vector.basis(i), Poly.var(L1), m)
        if not value.is_zero:
            values[(i,)] = value
    return Cochain.build(A, R, 1, gamma.parity, values, validate=False)


def _d1_terms(A, R, gamma: Cochain, i: int, j: int, power: int = 1) -> list:
    g = gamma.parity
    pa, pb = A.parities[i], A.parities[j]
    l1, l2 = Poly.var(L1), Poly.var(L2)
    gj = gamma.materialize((j,)).subst({L1: l2})
    t1 = R.apply(A.alpha_element(i, power=power), l1, gj).scale(
        (-1) ** (g * pa)
    )
    gi = gamma.materialize((i,))
    t2 = R.apply(A.alpha_element(j, power=power), l2, gi).scale(
        -A.delta * (-1) ** ((g + pa) * pb)
    )
    t3 = cochain_apply(
        gamma, [extend_bracket(A, Vector.basis(i), Vector.basis(j), L1)], [l1 + l2]
    ).scale(-A.delta)
    return [t1, t2, t3]


def d1(A: Superalgebra, R: Representation, gamma: Cochain, schedule: str = "uniform") -> Cochain:
    if gamma.arity != 1:
        raise AlgebraError("d1 expects a 1-cochain")
    power = SCHEDULES[schedule][1][0]
    values = {}
    for i in range(A.dim):
        for j in range(i, A.dim):
            total = Vector.zero()
            for term in _d1_terms(A, R, gamma, i, j, power):
                total = total + term
            if not total.is_zero:
                values[(i, j)] = total
    return Cochain.build(A, R, 2, gamma.parity, values, validate=False)


def _d2_terms(A, R, psi: Cochain, i: int, j: int, k: int, powers) -> list:
    g = psi.parity
    pa, pb, pc = A.parities[i], A.parities[j], A.parities[k]
    l1, l2, l3 = Poly.var(L1), Poly.var(L2), Poly.var(L3)
    p1, p2, p3 = powers

    t1 = R.apply(
        A.alpha_element(i, power=p1),
        l1,
        psi.materialize((j, k)).subst({L1: l2, L2: l3}),
    ).scale((-1) ** (g * pa))
    t2 = R.apply(
        A.alpha_element(j, power=p2),
        l2,
        psi.materialize((i, k)).subst({L2: l3}),
    ).scale(-A.delta * (-1) ** ((g + pa) * pb))
    t3 = R.apply(
        A.alpha_element(k, power=p3),
        l3,
        psi.materialize((i, j)),
    ).scale((-1) ** ((g + pa + pb) * pc))
    t4 = cochain_apply(
        psi,
        [extend_bracket(A, Vector.basis(i), Vector.basis(j), L1), A.alpha_element(k)],
        [l1 + l2, l3],
    ).scale(-1)
    t5 = cochain_apply(
        psi,
        [extend_bracket(A, Vector.basis(i), Vector.basis(k), L1), A.alpha_element(j)],
        [l1 + l3, l2],
    ).scale(A.delta * (-1) ** ((pa + pb) * pc + pa * pc))
    t6 = cochain_apply(
        psi,
        [extend_bracket(A, Vector.basis(j), Vector.basis(k), L2), A.alpha_element(i)],
        [l2 + l3, l1],
    ).scale(-((-1) ** (pa * pb + (pa + pb) * pc + pb * pc)))
    return [t1, t2, t3, t4, t5, t6]


def d2(A: Superalgebra, R: Representation, psi: Cochain, schedule: str = "uniform") -> Cochain:
    if psi.arity != 2:
        raise AlgebraError("d2 expects a 2-cochain")
    powers = SCHEDULES[schedule][2]
    values = {}
    for tup in itertools.combinations_with_replacement(range(A.dim), 3):
        total = Vector.zero()
        for term in _d2_terms(A, R, psi, *tup, powers):
            total = total + term
        if not total.is_zero:
            values[tup] = total
    return Cochain.build(A, R, 3, psi.parity, values, validate=False)


# ---------------------------------------------------------------------------
# Coefficient twist: the algebra acting on itself through a power of alpha
# ---------------------------------------------------------------------------


class CoefficientTwist:
    """Action rho(a)_l b = delta [alpha^s(a)_l b] on the algebra itself.

    Negative s requires a regular algebra (the inverse twist is computed
    exactly).
    """

    def __init__(self, algebra: Superalgebra, s: int):
        self.algebra = algebra
        self.s = int(s)
        if self.s < 0:
            algebra.alpha_inverse()  # raises unless the twist is invertible
        self._rep = None

    def representation(self) -> Representation:
        if self._rep is None:
            A = self.algebra
            n = A.dim
            rho = {}
            for i in range(n):
                mat = [[Poly.zero()] * n for _ in range(n)]
                nonzero = False
                twisted = A.alpha_element(i, power=self.s)
                for j in range(n):
                    image = extend_bracket(A, twisted, Vector.basis(j), L1).scale(A.delta)
                    for r, c in image.coeffs.items():
                        mat[r][j] = c
                        nonzero = True
                if nonzero:
                    rho[i] = mat
            self._rep = Representation(
                A,
                module_basis=list(zip(A.names, A.parities)),
                beta=[row[:] for row in A.alpha],
                rho=rho,
            )
        return self._rep


def d_s(A: Superalgebra, twist: CoefficientTwist, n: int, gamma: Cochain,
        schedule: str = "uniform") -> Cochain:
    """The twisted-coefficient differentials (n = 1 or 2)."""
    if twist.algebra is not A:
        raise AlgebraError("twist belongs to a different algebra")
    R = twist.representation()
    rebased = Cochain(A, R, gamma.arity, gamma.parity, gamma.values)
    if n == 1:
        return d1(A, R, rebased, schedule)
    if n == 2:
        return d2(A, R, rebased, schedule)
    raise AlgebraError("d_s is defined for n in {1, 2}")


# ---------------------------------------------------------------------------
# Cocycle test and the composite-differential verification
# ---------------------------------------------------------------------------


def _vector_parts(R: Representation, vectors) -> dict:
    parts: dict = {}
    for vec in vectors:
        for r, c in vec.coeffs.items():
            parts.setdefault(R.module_names[r], []).append(c)
    return parts


def is_two_cocycle(A: Superalgebra, psi: Cochain, schedule: str = "uniform") -> Report:
    """d_{-1} psi == 0, reported per basis triple with the six addends kept."""
    start = time.perf_counter()
    if psi.arity != 2:
        raise AlgebraError("the cocycle test expects a 2-cochain")
    twist = CoefficientTwist(A, -1)
    R = twist.representation()
    rebased = Cochain(A, R, psi.arity, psi.parity, psi.values)
    powers = SCHEDULES[schedule][2]
    items = []
    for tup in itertools.combinations_with_replacement(range(A.dim), 3):
        terms = _d2_terms(A, R, rebased, *tup, powers)
        loc = "(" + ", ".join(A.names[i] for i in tup) + ")"
        items.append(item_from_parts("two_cocycle", loc, _vector_parts(R, terms)))
    report = Report(
        subject=f"cocycle test over {A.name}",
        items=items,
        elapsed=time.perf_counter() - start,
    )
    report.meta["schedule"] = schedule
    return report


def verify_d2d1_zero(A: Superalgebra, coefficients, gamma: Cochain,
                     schedule: str = "uniform") -> Report:
    """Compute d2(d1(gamma)) and assert the zero 3-cochain, symbolically."""
    start = time.perf_counter()
    if isinstance(coefficients, CoefficientTwist):
        R = coefficients.representation()
    else:
        R = coefficients
    rebased = Cochain(A, R, gamma.arity, gamma.parity, gamma.values)
    step = d1(A, R, rebased, schedule)
    powers = SCHEDULES[schedule][2]
    items = []
    for tup in itertools.combinations_with_replacement(range(A.dim), 3):
        terms = _d2_terms(A, R, step, *tup, powers)
        loc = "(" + ", ".join(A.names[i] for i in tup) + ")"
        items.append(item_from_parts("d2d1_zero", loc, _vector_parts(R, terms)))
    report = Report(
        subject=f"composite differential over {A.name}",
        items=items,
        elapsed=time.perf_counter() - start,
    )
    report.meta["schedule"] = schedule
    return report


# ---------------------------------------------------------------------------
# Spanning sets of twist-compatible cochains at bounded degree
# ---------------------------------------------------------------------------


def spanning_one_cochains(A: Superalgebra, R: Representation, parity: int,
                          lmax: int = 2, dmax: int = 2) -> list:
    """Kernel basis of the twist-compatibility constraint on the space of
    1-cochains with entry degrees bounded by (lmax in l1, dmax in d)."""
    slots = []
    for i in range(A.dim):
        want = (A.parities[i] + parity) % 2
        for r in range(R.module_dim):
            if R.module_parities[r] != want:
                continue
            for la in range(lmax + 1):
                for db in range(dmax + 1):
                    slots.append((i, r, la, db))
    if not slots:
        return []
    avoid = {D, *SLOT_VARS, *A.scalar_params}
    unknowns = fresh_names(len(slots), avoid, prefix="c")

    def symbolic_values(coeffs):
        values: dict = {}
        for (i, r, la, db), c in zip(slots, coeffs):
            term = c if isinstance(c, Poly) else Poly.const(c)
            if term.is_zero:
                continue
            if la:
                term = term * Poly.var(L1, la)
            if db:
                term = term * Poly.var(D, db)
            vec = values.setdefault((i,), {})
            vec[r] = vec.get(r, Poly.zero()) + term
        return {tup: Vector(coeffs) for tup, coeffs in values.items()}

    values = symbolic_values([Poly.var(u) for u in unknowns])
    residuals = []
    minus_l1 = Poly.var(L1, coeff=-1)
    for i in range(A.dim):
        lhs = Vector.zero()
        for m in range(A.dim):
            entry = A.alpha[m][i]
            if entry.is_zero:
                continue
            base = values.get((m,))
            if base is None:
                continue
            lhs = lhs + base.scale(entry.substitute({D: minus_l1}))
        rhs = mat_apply_plain(R.beta, values.get((i,), Vector.zero()))
        residuals.extend((lhs - rhs).coeffs.values())
    kernel = kernel_of(residuals, unknowns)
    out = []
    for vec in kernel:
        out.append(Cochain.build(A, R, 1, parity, symbolic_values(vec)))
    return out


def spanning_two_cochains(A: Superalgebra, R: Representation, parity: int,
                          lmax: int = 1, dmax: int = 1) -> list:
    """Kernel basis of the swap-consistency + twist-compatibility constraints
    on bounded-degree 2-cochains (degrees lmax in each slot variable, dmax in d)."""
    slots = []
    for i in range(A.dim):
        for j in range(i, A.dim):
            want = (A.parities[i] + A.parities[j] + parity) % 2
            for r in range(R.module_dim):
                if R.module_parities[r] != want:
                    continue
                for la in range(lmax + 1):
                    for lb in range(lmax + 1):
                        for db in range(dmax + 1):
                            slots.append((i, j, r, la, lb, db))
    if not slots:
        return []
    avoid = {D, *SLOT_VARS, *A.scalar_params}
    unknowns = fresh_names(len(slots), avoid, prefix="c")

    def symbolic_values(coeffs):
        values: dict = {}
        for (i, j, r, la, lb, db), c in zip(slots, coeffs):
            term = c if isinstance(c, Poly) else Poly.const(c)
            if term.is_zero:
                continue
            if la:
                term = term * Poly.var(L1, la)
            if lb:
                term = term * Poly.var(L2, lb)
            if db:
                term = term * Poly.var(D, db)
            vec = values.setdefault((i, j), {})
            vec[r] = vec.get(r, Poly.zero()) + term
        return {tup: Vector(coeffs) for tup, coeffs in values.items()}

    values = symbolic_values([Poly.var(u) for u in unknowns])
    residuals = []
    swap = {L1: Poly.var(L2), L2: Poly.var(L1)}
    for i in range(A.dim):
        diag = values.get((i, i))
        if diag is not None:
            sign = A.delta * (-1) ** A.parities[i]
            residuals.extend((diag + diag.subst(swap).scale(sign)).coeffs.values())
    minus = {0: Poly.var(L1, coeff=-1), 1: Poly.var(L2, coeff=-1)}
    for i in range(A.dim):
        for j in range(i, A.dim):
            lhs = Vector.zero()
            for m1 in range(A.dim):
                e1 = A.alpha[m1][i]
                if e1.is_zero:
                    continue
                f1 = e1.substitute({D: minus[0]})
                for m2 in range(A.dim):
                    e2 = A.alpha[m2][j]
                    if e2.is_zero:
                        continue
                    base = _materialize_raw(A.delta, A.parities, values, 2, (m1, m2))
                    if base.is_zero:
                        continue
                    lhs = lhs + base.scale(f1 * e2.substitute({D: minus[1]}))
            rhs = mat_apply_plain(R.beta, values.get((i, j), Vector.zero()))
            residuals.extend((lhs - rhs).coeffs.values())
    kernel = kernel_of(residuals, unknowns)
    out = []
    for vec in kernel:
        out.append(Cochain.build(A, R, 2, parity, symbolic_values(vec)))
    return out
