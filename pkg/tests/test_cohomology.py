import pytest

from homconformal import (
    AlgebraError,
    Cochain,
    CoefficientTwist,
    Vector,
    adjoint_rep,
    cochain_apply,
    d0,
    d1,
    d2,
    d_s,
    evaluation_agrees,
    is_two_cocycle,
    spanning_one_cochains,
    spanning_two_cochains,
    verify_d2d1_zero,
    zero_cochain,
)
from homconformal.cohomology import twist_compat_failures
from homconformal.exactmath import D, L1, L2, L3, Poly
from homconformal.fixtures import (
    cur_borel,
    rotated_cross_current,
    super_heisenberg,
)

ONE = Poly.const(1)
l1, l2, l3 = Poly.var(L1), Poly.var(L2), Poly.var(L3)


def central_one_cochain(A, R):
    """z -> z, odd generators -> 0 (twist-compatible, even)."""
    return Cochain.build(A, R, 1, 0, {(0,): Vector({0: ONE})})


def central_pair_cochain(A, R):
    """psi(o1, o2) = z, all other pairs zero (even, twist-compatible)."""
    return Cochain.build(A, R, 2, 0, {(1, 2): Vector({0: ONE})})


# -- cochain storage and materialization ---------------------------------------


def test_materialize_swaps_sign_and_slots(sh_plus, sh_plus_adj):
    # structure-only build: the value is deliberately not twist-compatible
    psi = Cochain.build(
        sh_plus, sh_plus_adj, 2, 0, {(1, 2): Vector({0: l1 + 2 * l2})},
        validate=False,
    )
    flipped = psi.materialize((2, 1))
    # odd-odd swap: sign -delta(-1)^{1*1} = +1, slots exchanged
    assert flipped == Vector({0: l2 + 2 * l1})


def test_materialize_missing_tuple_is_zero(sh_plus, sh_plus_adj):
    psi = central_pair_cochain(sh_plus, sh_plus_adj)
    assert psi.materialize((0, 1)).is_zero


def test_diagonal_consistency_enforced(sh_plus, sh_plus_adj):
    # for an odd generator o1 (delta=1), psi(o1, o1) must be symmetric under
    # the slot swap; l1 - l2 violates it, l1 + l2 satisfies it
    with pytest.raises(AlgebraError, match="swap sign"):
        Cochain.build(
            sh_plus, sh_plus_adj, 2, 0, {(1, 1): Vector({0: l1 - l2})}
        )
    symmetric = Vector({0: l1 + l2})
    ok = Cochain.build(
        sh_plus,
        sh_plus_adj,
        2,
        0,
        # both diagonal values needed for compatibility with the o1/o2 swap
        {(1, 1): symmetric, (2, 2): symmetric},
    )
    assert ok.materialize((1, 1)) == symmetric


def test_twist_compatibility_enforced(sh_plus, sh_plus_adj):
    # gamma(o1) = o1 alone is not compatible with the twist that swaps o1, o2
    with pytest.raises(AlgebraError, match="twist"):
        Cochain.build(sh_plus, sh_plus_adj, 1, 0, {(1,): Vector({1: ONE})})
    # pairing o1 -> o1 with o2 -> o2 is compatible
    gamma = Cochain.build(
        sh_plus,
        sh_plus_adj,
        1,
        0,
        {(1,): Vector({1: ONE}), (2,): Vector({2: ONE})},
    )
    assert not twist_compat_failures(gamma)


def test_cochain_grading_enforced(sh_plus, sh_plus_adj):
    with pytest.raises(AlgebraError, match="grading"):
        Cochain.build(sh_plus, sh_plus_adj, 1, 0, {(0,): Vector({1: ONE})})


def test_cochain_apply_antilinearity(sh_plus, sh_plus_adj):
    gamma = central_one_cochain(sh_plus, sh_plus_adj)
    # argument d*z at slot value l1: the coefficient d becomes -l1
    arg = Vector({0: Poly.var(D)})
    out = cochain_apply(gamma, [arg], [l1])
    assert out == Vector({0: -l1})


# -- differentials --------------------------------------------------------------


def test_d0_of_zero(curb, curb_adj):
    m = zero_cochain(curb, curb_adj, 0, 0)
    assert d0(curb, curb_adj, m).is_zero


def test_d0_of_central_element_vanishes(sh_plus, sh_plus_adj):
    m = Cochain.build(sh_plus, sh_plus_adj, 0, 0, {(): Vector({0: ONE})})
    assert d0(sh_plus, sh_plus_adj, m).is_zero


def test_d0_of_odd_generator(curb, curb_adj):
    m = Cochain.build(curb, curb_adj, 0, 1, {(): Vector({1: ONE})})
    g = d0(curb, curb_adj, m)
    # (d0 y)(x) = delta [x _l y] = y
    assert g.materialize((0,)) == Vector({1: ONE})
    assert g.materialize((1,)).is_zero


def test_d1_of_zero(sh_plus, sh_plus_adj):
    assert d1(sh_plus, sh_plus_adj, zero_cochain(sh_plus, sh_plus_adj, 1, 0)).is_zero


def test_d1_of_central_cochain(sh_plus, sh_plus_adj):
    gamma = central_one_cochain(sh_plus, sh_plus_adj)
    out = d1(sh_plus, sh_plus_adj, gamma)
    # action terms vanish; the bracket term gives -delta * gamma(z) = -z
    assert out.materialize((1, 2)) == Vector({0: Poly.const(-1)})
    assert out.materialize((0, 1)).is_zero


def test_d2_of_zero(sh_plus, sh_plus_adj):
    assert d2(sh_plus, sh_plus_adj, zero_cochain(sh_plus, sh_plus_adj, 2, 0)).is_zero


def test_d2_of_d1_is_zero_cochain(sh_plus, sh_plus_adj):
    gamma = central_one_cochain(sh_plus, sh_plus_adj)
    assert d2(sh_plus, sh_plus_adj, d1(sh_plus, sh_plus_adj, gamma)).is_zero


def test_differential_outputs_are_valid_cochains(curb, curb_adj):
    for parity in (0, 1):
        for gamma in spanning_one_cochains(curb, curb_adj, parity, lmax=1, dmax=1):
            step = d1(curb, curb_adj, gamma)
            # rebuild with full validation: swap consistency + twist compat
            Cochain.build(curb, curb_adj, 2, parity, step.values, validate=True)
            assert not twist_compat_failures(step)


def test_d1_then_materialized_skew_matches_direct_computation(curb, curb_adj):
    from homconformal.cohomology import _d1_terms

    for gamma in spanning_one_cochains(curb, curb_adj, 0, lmax=1, dmax=1):
        step = d1(curb, curb_adj, gamma)
        for i in range(curb.dim):
            for j in range(curb.dim):
                direct = Vector.zero()
                for term in _d1_terms(curb, curb_adj, gamma, i, j):
                    direct = direct + term
                assert step.materialize((i, j)) == direct


def test_zero_cochains_must_be_twist_fixed(sh_plus, sh_plus_adj):
    # a 0-cochain is an element fixed by the module twist; o1 alone is moved
    with pytest.raises(AlgebraError, match="twist"):
        Cochain.build(sh_plus, sh_plus_adj, 0, 1, {(): Vector({1: ONE})})


def test_d1_after_d0_vanishes_on_fixtures(sh_plus, sh_plus_adj, curb, curb_adj):
    fixed = {
        id(sh_plus): [
            (0, Vector({0: ONE})),          # the central generator (beta-fixed)
            (1, Vector({1: ONE, 2: ONE})),  # o1 + o2, swapped into itself
        ],
        id(curb): [(A_parity, Vector({i: ONE})) for i, A_parity in enumerate(curb.parities)],
    }
    for A, R in ((sh_plus, sh_plus_adj), (curb, curb_adj)):
        for parity, element in fixed[id(A)]:
            m = Cochain.build(A, R, 0, parity, {(): element})
            assert d1(A, R, d0(A, R, m)).is_zero


# -- twisted-coefficient differentials -------------------------------------------


def test_twist_power_zero_matches_adjoint(sh_plus, sh_plus_adj):
    twist = CoefficientTwist(sh_plus, 0)
    R = twist.representation()
    for i in range(sh_plus.dim):
        assert R.rho_matrix(i) == sh_plus_adj.rho_matrix(i)
    gamma = central_one_cochain(sh_plus, sh_plus_adj)
    assert d_s(sh_plus, twist, 1, gamma).values == d1(
        sh_plus, sh_plus_adj, gamma
    ).values


def test_negative_twist_power_uses_exact_inverse(sh_plus):
    # the fixture twist is an involution, so alpha^{-1} = alpha
    assert sh_plus.alpha_matrix(-1) == sh_plus.alpha
    twist = CoefficientTwist(sh_plus, -1)
    R = twist.representation()
    # rho(o1) columns: delta [alpha^{-1}(o1) _l .] = delta [o2 _l .]
    assert R.rho_matrix(1)[0][1] == ONE  # delta*[o2 _l o1] = z for delta=+1


def test_negative_twist_power_requires_regular():
    from homconformal import Superalgebra

    A = Superalgebra(
        1,
        [("x", 0)],
        [[Poly.var(D)]],
        {},
    )
    with pytest.raises(AlgebraError, match="regular|invertible"):
        CoefficientTwist(A, -1)


def test_ds_on_one_cochain_is_cocycle(sh_plus, sh_plus_adj):
    gamma = central_one_cochain(sh_plus, sh_plus_adj)
    psi = d_s(sh_plus, CoefficientTwist(sh_plus, -1), 1, gamma)
    rebased = Cochain(sh_plus, sh_plus_adj, 2, 0, psi.values)
    report = is_two_cocycle(sh_plus, rebased)
    assert report.ok


# -- cocycle test ----------------------------------------------------------------


def test_zero_is_cocycle(sh_plus, sh_plus_adj):
    assert is_two_cocycle(sh_plus, zero_cochain(sh_plus, sh_plus_adj, 2, 0)).ok


def test_central_pair_cochain_is_cocycle(sh_plus, sh_plus_adj):
    psi = central_pair_cochain(sh_plus, sh_plus_adj)
    report = is_two_cocycle(sh_plus, psi)
    assert report.ok
    assert evaluation_agrees(report, seed=20260810)


# -- the composite differential ---------------------------------------------------


@pytest.mark.parametrize("delta", [1, -1])
def test_d2d1_zero_on_main_fixture(delta):
    A = super_heisenberg(delta)
    R = adjoint_rep(A)
    for parity in (0, 1):
        for gamma in spanning_one_cochains(A, R, parity, lmax=2, dmax=2):
            report = verify_d2d1_zero(A, R, gamma)
            assert report.ok
            assert report.meta["schedule"] == "uniform"


def test_d2d1_zero_on_current_algebra(curb, curb_adj):
    for parity in (0, 1):
        for gamma in spanning_one_cochains(curb, curb_adj, parity, lmax=2, dmax=2):
            assert verify_d2d1_zero(curb, curb_adj, gamma).ok


def test_schedules_disagree_and_uniform_wins(rotated):
    """With a twist whose square differs from itself and a faithful adjoint
    action, the printed mixed twist powers break the composite differential
    while the uniform schedule cancels exactly."""
    R = adjoint_rep(rotated)
    gammas = spanning_one_cochains(rotated, R, 0, lmax=1, dmax=1)
    assert gammas
    printed_failures = 0
    for gamma in gammas:
        assert verify_d2d1_zero(rotated, R, gamma, schedule="uniform").ok
        if not verify_d2d1_zero(rotated, R, gamma, schedule="printed").ok:
            printed_failures += 1
    assert printed_failures > 0


def test_d2d1_with_twisted_coefficients(sh_plus):
    twist = CoefficientTwist(sh_plus, -1)
    R = twist.representation()
    for gamma in spanning_one_cochains(sh_plus, R, 0, lmax=1, dmax=1):
        assert verify_d2d1_zero(sh_plus, twist, gamma).ok


def test_spanning_sets_are_nonempty_and_compatible(sh_plus, sh_plus_adj):
    gammas = spanning_one_cochains(sh_plus, sh_plus_adj, 0, lmax=1, dmax=1)
    assert len(gammas) == 12
    for gamma in gammas:
        assert not twist_compat_failures(gamma)
    psis = spanning_two_cochains(sh_plus, sh_plus_adj, 0, lmax=1, dmax=0)
    assert len(psis) == 15
    for psi in psis:
        assert not twist_compat_failures(psi)
