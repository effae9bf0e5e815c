import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homconformal.exactmath import (
    D,
    InconsistentSystemError,
    L1,
    L2,
    MissingVariableError,
    Poly,
    kernel_of,
    linear_rows,
    mat_det,
    mat_inverse_unit,
    mat_mul,
    solve_linear,
)

d = Poly.var(D)
l1 = Poly.var(L1)
l2 = Poly.var(L2)


def rationals():
    return st.fractions(
        min_value=Fraction(-8), max_value=Fraction(8), max_denominator=6
    )


@st.composite
def polys(draw, variables=(D, L1, L2, "t"), max_terms=5, max_exp=3):
    n = draw(st.integers(0, max_terms))
    p = Poly.zero()
    for _ in range(n):
        coeff = draw(rationals())
        term = Poly.const(coeff)
        for v in variables:
            term = term * Poly.var(v, draw(st.integers(0, max_exp)))
        p = p + term
    return p


# -- arithmetic -----------------------------------------------------------


def test_addition_cancels():
    assert (l1 + d) + (-l1) == d


def test_product_of_variables():
    assert l1 * d == Poly.var(L1) * Poly.var(D)
    assert (l1 * d).degree(L1) == 1


def test_zero_annihilates():
    p = (l1 - l1) * (d ** 3 + Poly.const(Fraction(5, 2)))
    assert p.is_zero


def test_power():
    assert (l1 + d) ** 2 == l1 * l1 + 2 * l1 * d + d * d
    assert (l1 + d) ** 0 == Poly.const(1)


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), polys())
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)


# -- substitution ---------------------------------------------------------


def test_substitute_binomial():
    mu = Poly.var(L2)
    value = (mu * mu).substitute({L2: -l1 - d})
    assert value == l1 ** 2 + 2 * l1 * d + d ** 2


def test_substitute_empty_is_identity():
    p = l1 + d
    assert p.substitute({}) == p


def test_substitute_merges_d():
    value = (Poly.var(L2) * d).substitute({L2: -l1 - d})
    assert value == -(l1 * d) - d ** 2


def test_substitute_simultaneous_swap():
    p = l1 + 2 * l2
    assert p.substitute({L1: l2, L2: l1}) == l2 + 2 * l1


@settings(max_examples=40, deadline=None)
@given(polys(max_terms=3, max_exp=2), polys(variables=(D, L2), max_terms=2, max_exp=2),
       polys(variables=(D,), max_terms=2, max_exp=2))
def test_substitute_composition(p, q, r):
    # (p o {l1 -> q}) o {l2 -> r}  ==  p o {l1 -> q o {l2 -> r}, l2 -> r}
    lhs = p.substitute({L1: q}).substitute({L2: r})
    rhs = p.substitute({L1: q.substitute({L2: r}), L2: r})
    assert lhs == rhs


# -- evaluation -----------------------------------------------------------


def test_eval_basic():
    assert (l1 * d).eval_at({L1: Fraction(2), D: Fraction(3)}) == 6
    assert Poly.zero().eval_at({}) == 0


def test_eval_missing_variable():
    with pytest.raises(MissingVariableError):
        (l1 * d).eval_at({L1: Fraction(1)})


def test_eval_chosen_root():
    p = l1 ** 2 - d
    assert p.eval_at({L1: Fraction(1, 2), D: Fraction(1, 4)}) == 0


@settings(max_examples=40, deadline=None)
@given(polys(max_terms=4, max_exp=2), polys(max_terms=4, max_exp=2))
def test_eval_is_ring_homomorphism(p, q):
    point = {v: Fraction(3, 2) for v in (p * q).variables() | p.variables() | q.variables()}
    assert (p * q).eval_at(point) == p.eval_at(point) * q.eval_at(point)
    assert (p + q).eval_at(point) == p.eval_at(point) + q.eval_at(point)


def test_structural_zero_matches_random_evaluation():
    # a polynomial is zero iff its term map is empty; on >= 10^4 random
    # cases the structural verdict agrees with evaluation search
    rng = random.Random(20260810)
    variables = (D, L1, L2)
    for case in range(10_000):
        p = Poly.zero()
        for _ in range(rng.randint(0, 4)):
            term = Poly.const(Fraction(rng.randint(-5, 5), rng.randint(1, 4)))
            for v in variables:
                term = term * Poly.var(v, rng.randint(0, 2))
            p = p + term
        if case % 3 == 0:
            p = p - p  # force a structurally canceled zero
        structurally_zero = p.is_zero
        found_nonzero = False
        tries = max(p.degree(), 1) + 1
        for _ in range(tries):
            point = {
                v: Fraction(rng.randint(-50, 50), rng.randint(1, 9))
                for v in variables
            }
            if p.eval_at(point) != 0:
                found_nonzero = True
                break
        assert structurally_zero == (not found_nonzero)


# -- linear solving -------------------------------------------------------


def test_kernel_of_rank_one_system():
    particular, kernel = solve_linear(
        [[Fraction(1), Fraction(1)], [Fraction(0), Fraction(0)]],
        [Fraction(0), Fraction(0)],
    )
    assert particular == [Fraction(0), Fraction(0)]
    assert kernel == [[Fraction(1), Fraction(-1)]]


def test_identity_solve():
    particular, kernel = solve_linear(
        [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]],
        [Fraction(2), Fraction(-3)],
    )
    assert particular == [Fraction(2), Fraction(-3)]
    assert kernel == []


def test_inconsistent_system():
    with pytest.raises(InconsistentSystemError):
        solve_linear([[Fraction(1)], [Fraction(1)]], [Fraction(1), Fraction(2)])


@settings(max_examples=40, deadline=None)
@given(
    st.lists(
        st.lists(rationals(), min_size=3, max_size=3), min_size=2, max_size=4
    )
)
def test_kernel_vectors_satisfy_system_exactly(rows):
    _, kernel = solve_linear(rows, [Fraction(0)] * len(rows))
    for vec in kernel:
        for row in rows:
            assert sum(a * x for a, x in zip(row, vec)) == 0
        lead = next(x for x in vec if x != 0)
        assert lead > 0
        assert all(x.denominator == 1 for x in vec)


def test_linear_rows_and_kernel_of():
    c0, c1 = "c0", "c1"
    # (c0 - c1) * l1 + (c0 + c1 - 2): rows over the ambient monomials
    p = (Poly.var(c0) - Poly.var(c1)) * l1 + Poly.var(c0) + Poly.var(c1) - Poly.const(2)
    matrix, rhs = linear_rows([p], [c0, c1])
    assert sorted(zip(matrix, rhs)) == sorted(
        [([Fraction(1), Fraction(1)], Fraction(2)),
         ([Fraction(1), Fraction(-1)], Fraction(0))]
    )
    hom = (Poly.var(c0) - Poly.var(c1)) * l1
    assert kernel_of([hom], [c0, c1]) == [[Fraction(1), Fraction(1)]]


def test_linear_rows_rejects_quadratic():
    with pytest.raises(ValueError):
        linear_rows([Poly.var("c0") * Poly.var("c0")], ["c0"])


# -- polynomial matrices --------------------------------------------------


def test_det_and_inverse_unit():
    m = [[Poly.const(1), d], [Poly.zero(), Poly.const(-1)]]
    assert mat_det(m) == Poly.const(-1)
    inv = mat_inverse_unit(m)
    assert mat_mul(m, inv) == [
        [Poly.const(1), Poly.zero()],
        [Poly.zero(), Poly.const(1)],
    ]


def test_inverse_rejects_nonunit_det():
    with pytest.raises(ValueError):
        mat_inverse_unit([[d]])
