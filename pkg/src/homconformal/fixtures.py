"""Shipped example algebras used by the tests, demos, and data files.

The two workhorse fixtures:

  * super_heisenberg(delta): three generators, an even central z and two
    odd generators o1, o2 with [o1 _l o2] = delta z; the twist fixes z up
    to the sign delta and swaps the odd pair.  Every double bracket
    vanishes, which makes it a convenient exact testbed.
  * borel_superalgebra(): the 1|1-dimensional solvable superalgebra with
    even x, odd y, [x, y] = y; its current algebra carries the constant
    lambda-bracket.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import ConformalEndo, Superalgebra, Vector
from .constructions import HomAssocConformal, JordanLieSuperalgebra, current_algebra
from .exactmath import Poly

ONE = Poly.const(1)
ZERO = Poly.zero()


def super_heisenberg(delta: int = 1, store_both: bool = False) -> Superalgebra:
    """Central even z; odd o1, o2 with [o1 _l o2] = delta z; twist swaps o1, o2."""
    brackets = {(1, 2): Vector({0: Poly.const(delta)})}
    if store_both:
        # the skew-completed orientation, stored explicitly: [o2 _l o1] = z
        brackets[(2, 1)] = Vector({0: ONE})
    return Superalgebra(
        delta=delta,
        basis=[("z", 0), ("o1", 1), ("o2", 1)],
        alpha=[
            [Poly.const(delta), ZERO, ZERO],
            [ZERO, ZERO, ONE],
            [ZERO, ONE, ZERO],
        ],
        brackets=brackets,
        name=f"super_heisenberg(delta={delta:+d})",
    )


def super_heisenberg_graded(delta: int, parities) -> Superalgebra:
    """The same structure constants under an arbitrary parity assignment
    (used to show the shipped grading is the only one passing the suite)."""
    return Superalgebra(
        delta=delta,
        basis=[("z", parities[0]), ("o1", parities[1]), ("o2", parities[2])],
        alpha=[
            [Poly.const(delta), ZERO, ZERO],
            [ZERO, ZERO, ONE],
            [ZERO, ONE, ZERO],
        ],
        brackets={(1, 2): Vector({0: Poly.const(delta)})},
        name=f"super_heisenberg(delta={delta:+d}, parities={tuple(parities)})",
    )


def borel_superalgebra(delta: int = 1, twist_scale=1) -> JordanLieSuperalgebra:
    """Even x, odd y, [x, y] = y (both orientations stored); twist diag(1, c)."""
    return JordanLieSuperalgebra(
        delta=delta,
        basis=[("x", 0), ("y", 1)],
        alpha=[[1, 0], [0, twist_scale]],
        brackets={
            (0, 1): {1: Fraction(1)},
            (1, 0): {1: Fraction(-delta)},
        },
        name=f"borel(c={twist_scale})" if twist_scale != 1 else "borel",
    )


def cur_borel(delta: int = 1, twist_scale=1) -> Superalgebra:
    A, _ = current_algebra(borel_superalgebra(delta, twist_scale))
    return A


def abelian_superalgebra(n: int = 1, delta: int = 1, parity: int = 0) -> Superalgebra:
    return Superalgebra(
        delta=delta,
        basis=[(f"a{i}", parity) for i in range(1, n + 1)],
        alpha=[[ONE if i == j else ZERO for j in range(n)] for i in range(n)],
        brackets={},
        name=f"abelian({n})",
    )


def zero_dim_algebra(delta: int = 1) -> Superalgebra:
    return Superalgebra(delta=delta, basis=[], alpha=[], brackets={}, name="zero_dim")


# -- finite-dimensional fixtures for the current-algebra functoriality tests --


def heisenberg_finite(delta: int = 1) -> JordanLieSuperalgebra:
    return JordanLieSuperalgebra(
        delta=delta,
        basis=[("z", 0), ("o1", 1), ("o2", 1)],
        alpha=[[delta, 0, 0], [0, 0, 1], [0, 1, 0]],
        brackets={(1, 2): {0: Fraction(delta)}},
        name=f"heisenberg_finite(delta={delta:+d})",
    )


def abelian_finite(n: int = 2) -> JordanLieSuperalgebra:
    return JordanLieSuperalgebra(
        delta=1,
        basis=[(f"a{i}", 0) for i in range(1, n + 1)],
        alpha=[[1 if i == j else 0 for j in range(n)] for i in range(n)],
        brackets={},
        name=f"abelian_finite({n})",
    )


def cross_product_finite() -> JordanLieSuperalgebra:
    return JordanLieSuperalgebra(
        delta=1,
        basis=[("x", 0), ("y", 0), ("z", 0)],
        alpha=[[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        brackets={
            (0, 1): {2: Fraction(1)},
            (1, 2): {0: Fraction(1)},
            (2, 0): {1: Fraction(1)},
        },
        name="cross_product",
    )


def broken_jacobi_finite() -> JordanLieSuperalgebra:
    """Cross product with [z, x] = y + z: the (x, y, z) Jacobi instance fails."""
    return JordanLieSuperalgebra(
        delta=1,
        basis=[("x", 0), ("y", 0), ("z", 0)],
        alpha=[[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        brackets={
            (0, 1): {2: Fraction(1)},
            (1, 2): {0: Fraction(1)},
            (2, 0): {1: Fraction(1), 2: Fraction(1)},
        },
        name="broken_jacobi",
    )


def broken_skew_finite() -> JordanLieSuperalgebra:
    """[x, y] = y stored alongside [y, x] = +y: skew consistency fails."""
    return JordanLieSuperalgebra(
        delta=1,
        basis=[("x", 0), ("y", 0)],
        alpha=[[1, 0], [0, 1]],
        brackets={(0, 1): {1: Fraction(1)}, (1, 0): {1: Fraction(1)}},
        name="broken_skew",
    )


def rotated_cross_current() -> Superalgebra:
    """Composition twist of the cross-product current algebra by the 90-degree
    rotation automorphism (x -> y, y -> -x, z fixed): a multiplicative regular
    algebra whose twist satisfies alpha^2 != alpha and whose adjoint action is
    rich enough to separate the two twist-power schedules of the second
    differential."""
    from .constructions import yau_twist

    base, _ = current_algebra(cross_product_finite())
    rot = [
        [ZERO, Poly.const(-1), ZERO],
        [ONE, ZERO, ZERO],
        [ZERO, ZERO, ONE],
    ]
    twisted, _ = yau_twist(base, rot)
    return twisted


# -- associative lambda-product fixtures --------------------------------------


def upper_triangular_assoc() -> HomAssocConformal:
    """2x2 upper-triangular matrix units E11, E12, E22: associative, and the
    commutator bracket is a nonabelian current-type algebra."""
    return HomAssocConformal(
        delta=1,
        basis=[("E11", 0), ("E12", 0), ("E22", 0)],
        alpha=[[ONE, ZERO, ZERO], [ZERO, ONE, ZERO], [ZERO, ZERO, ONE]],
        products={
            (0, 0): Vector({0: ONE}),
            (0, 1): Vector({1: ONE}),
            (1, 2): Vector({1: ONE}),
            (2, 2): Vector({2: ONE}),
        },
        name="upper_triangular",
    )


def dual_numbers_assoc() -> HomAssocConformal:
    """Commutative associative: unit u and nilpotent n (n^2 = 0)."""
    return HomAssocConformal(
        delta=1,
        basis=[("u", 0), ("n", 0)],
        alpha=[[ONE, ZERO], [ZERO, ONE]],
        products={
            (0, 0): Vector({0: ONE}),
            (0, 1): Vector({1: ONE}),
            (1, 0): Vector({1: ONE}),
        },
        name="dual_numbers",
    )


def one_sided_assoc() -> HomAssocConformal:
    """u_l v = v and nothing else: fails associativity at (u, u, v)."""
    return HomAssocConformal(
        delta=1,
        basis=[("u", 0), ("v", 0)],
        alpha=[[ONE, ZERO], [ZERO, ONE]],
        products={(0, 1): Vector({1: ONE})},
        name="one_sided",
    )


def skew_only_assoc() -> HomAssocConformal:
    """Fails associativity AND its commutator bracket fails the twisted
    Jacobi identity (the commutator is still skew, as always)."""
    return HomAssocConformal(
        delta=1,
        basis=[("u", 0), ("v", 0)],
        alpha=[[ONE, ZERO], [ZERO, ONE]],
        products={
            (0, 0): Vector({1: Poly.var("l1", coeff=-1)}),
            (0, 1): Vector({0: ONE, 1: ONE}),
            (1, 1): Vector({1: ONE}),
        },
        name="skew_only",
    )


def random_assoc_instances(seed: int, count: int = 20):
    """Seeded small random lambda-product tables (grading-respecting, random
    sign and parities).  No associativity is imposed: these exercise the
    claim that the commutator bracket is skew regardless."""
    import random

    from .exactmath import D as DVAR
    from .exactmath import L1 as LVAR

    rng = random.Random(seed)
    out = []
    for case in range(count):
        dim = rng.choice((2, 3))
        parities = [rng.choice((0, 1)) for _ in range(dim)]
        delta = rng.choice((1, -1))
        products = {}
        for i in range(dim):
            for j in range(dim):
                coeffs = {}
                for k in range(dim):
                    if parities[k] != (parities[i] + parities[j]) % 2:
                        continue
                    c = rng.randint(-2, 2)
                    if not c:
                        continue
                    p = Poly.const(c) * Poly.var(LVAR, rng.randint(0, 1))
                    if rng.random() < 0.5:
                        p = p * Poly.var(DVAR, rng.randint(0, 1))
                    coeffs[k] = p
                if coeffs:
                    products[(i, j)] = Vector(coeffs)
        alpha = [
            [ONE if i == j else ZERO for j in range(dim)] for i in range(dim)
        ]
        out.append(
            HomAssocConformal(
                delta,
                [(f"g{i}", parities[i]) for i in range(dim)],
                alpha,
                products,
                name=f"random_assoc_{case}",
            )
        )
    return out


# -- operators on the fixtures -------------------------------------------------


def scaling_operator(A: Superalgebra, c) -> ConformalEndo:
    n = A.dim
    return ConformalEndo.from_rows(
        [[Poly.const(c) if i == j else ZERO for j in range(n)] for i in range(n)]
    )


def twist_as_operator(A: Superalgebra) -> ConformalEndo:
    return ConformalEndo.from_rows([row[:] for row in A.alpha])


def central_scaling_operator(A: Superalgebra) -> ConformalEndo:
    """z -> z, o1, o2 -> 0 on the super-Heisenberg fixture: fails the
    Leibniz rule at (o1, o2) with residual +-z."""
    n = A.dim
    rows = [[ZERO] * n for _ in range(n)]
    rows[0][0] = ONE
    return ConformalEndo.from_rows(rows)
