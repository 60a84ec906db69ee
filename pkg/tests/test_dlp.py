import math
import random

import pytest

from genjac.dlp import (
    DlpInstance,
    NoSolutionError,
    brute_force_dlp,
    bsgs,
    make_random_instance,
    pohlig_hellman,
    reduce_prime_subgroup,
    solve_extension_dlp,
    solve_instance,
)
from genjac.groups import CurveGroup, CyclicGroup, ExtElement, element_order
from genjac.numbertheory import Factorization


@pytest.fixture(scope="module")
def base_jac(toy):
    return toy.jacobian()


@pytest.fixture(scope="module")
def pinned_generator(toy, base_jac):
    """Point (0,0) with unit 7u: order 30 = 2 * 3 * 5, fiber part 15.

    The prime 2 leaf projects to the curve while 3 and 5 pull back to the
    units, so one instance exercises both reduction branches.
    """
    P = toy.curve.parse_point("0;0")
    u = toy.ext_curve.field([0, 7])
    g = ExtElement(P, u)
    assert element_order(base_jac, g, toy.jacobian_order()) == 30
    return g


def test_brute_force_and_bsgs_agree_cyclic(rng):
    G = CyclicGroup(360)
    for _ in range(40):
        g = rng.randrange(1, 360)
        order = 360 // math.gcd(g, 360)
        x = rng.randrange(order)
        t = G.scalar_mul(x, g)
        assert brute_force_dlp(G, g, t, order).exponent == x
        assert bsgs(G, g, t, order).exponent == x


def test_smallest_exponent_tie_break():
    # generator 4 has order 3 in Z/12; with the over-multiple order 12
    # both solvers still give the smallest representative
    G = CyclicGroup(12)
    assert bsgs(G, 4, 8, 12).exponent == 2
    assert brute_force_dlp(G, 4, 8, 12).exponent == 2


def test_identity_generator():
    G = CyclicGroup(12)
    assert bsgs(G, 0, 0, 1).exponent == 0
    assert brute_force_dlp(G, 0, 0, 3).exponent == 0
    with pytest.raises(NoSolutionError):
        bsgs(G, 0, 5, 3)


def test_solver_bounds():
    G = CyclicGroup(12)
    with pytest.raises(ValueError):
        bsgs(G, 1, 5, (1 << 40) + 1)
    with pytest.raises(ValueError):
        brute_force_dlp(G, 1, 5, 10**6 + 1)
    with pytest.raises(ValueError):
        bsgs(G, 1, 5, 0)


def test_no_solution_outside_subgroup():
    G = CyclicGroup(12)
    # <4> = {0, 4, 8}; 6 is not in it
    with pytest.raises(NoSolutionError):
        bsgs(G, 4, 6, 3)
    with pytest.raises(NoSolutionError):
        brute_force_dlp(G, 4, 6, 3)
    with pytest.raises(NoSolutionError):
        pohlig_hellman(G, 4, 6, Factorization.from_int(3))


def test_pohlig_hellman_cyclic(rng):
    G = CyclicGroup(7200)
    order = Factorization.from_int(7200)
    for _ in range(25):
        x = rng.randrange(7200)
        t = G.scalar_mul(x, 1)
        sol = pohlig_hellman(G, 1, t, order)
        assert sol.exponent == x
        assert sol.order == 7200
    methods = sol.methods()
    assert "crt" in methods
    assert any(m.startswith("pohlig-hellman-prime(2,") for m in methods)


def test_pohlig_hellman_requires_order_multiple():
    G = CyclicGroup(12)
    with pytest.raises(ValueError):
        pohlig_hellman(G, 1, 5, Factorization.from_int(8))


def test_pohlig_hellman_on_curve(toy, rng):
    EG = CurveGroup(toy.curve)
    gen = toy.curve.parse_point("7;3")
    assert element_order(EG, gen, toy.curve_order) == 12
    for _ in range(20):
        x = rng.randrange(12)
        t = EG.scalar_mul(x, gen)
        sol = pohlig_hellman(EG, gen, t, Factorization.from_int(12))
        assert sol.exponent == x


def test_extension_attack_pinned_generator(toy, base_jac, pinned_generator, rng):
    order = Factorization.from_int(30)
    for _ in range(15):
        secret = rng.randrange(30)
        target = base_jac.scalar_mul(secret, pinned_generator)
        sol = solve_extension_dlp(base_jac, pinned_generator, target, order)
        assert sol.exponent == secret
        assert sol.order == 30
    methods = set(sol.methods())
    assert "projected-to-A" in methods
    assert "pulled-back-to-B" in methods


def test_attack_transcript_shape(base_jac, pinned_generator):
    target = base_jac.scalar_mul(17, pinned_generator)
    sol = solve_extension_dlp(base_jac, pinned_generator, target,
                              Factorization.from_int(30))
    assert sol.exponent == 17
    steps = sol.steps
    # every leaf search is preceded by a reduction into a factor group
    for i, step in enumerate(steps):
        if step.method == "bsgs":
            assert steps[i - 1].method in ("projected-to-A", "pulled-back-to-B")
    assert steps[-1].method == "crt"


def test_attack_never_searches_extension(base_jac, pinned_generator):
    # the only allowed tags: reductions, factor-group searches, bookkeeping
    target = base_jac.scalar_mul(23, pinned_generator)
    sol = solve_extension_dlp(base_jac, pinned_generator, target,
                              Factorization.from_int(30))
    allowed_exact = {"projected-to-A", "pulled-back-to-B", "bsgs", "crt"}
    for step in sol.steps:
        assert step.method in allowed_exact or step.method.startswith(
            "pohlig-hellman-prime("
        )


def test_attack_agrees_with_brute_force(toy, base_jac, rng):
    order_multiple = toy.jacobian_order()
    for _ in range(10):
        gen = ExtElement(toy.curve.random_point(rng), toy.units().sample(rng))
        n = element_order(base_jac, gen, order_multiple)
        secret = rng.randrange(n)
        target = base_jac.scalar_mul(secret, gen)
        fast = solve_extension_dlp(base_jac, gen, target, Factorization.from_int(n))
        slow = brute_force_dlp(base_jac, gen, target, n)
        assert fast.exponent == slow.exponent == secret


def test_fiber_only_generator(toy, base_jac):
    u = toy.ext_curve.field([0, 1])  # order 4 unit: u^2 = -1
    gen = base_jac.embed(u)
    n = element_order(base_jac, gen, toy.jacobian_order())
    assert n == 4
    target = base_jac.scalar_mul(3, gen)
    sol = solve_extension_dlp(base_jac, gen, target, Factorization.from_int(4))
    assert sol.exponent == 3
    assert "projected-to-A" not in sol.methods()
    assert "pulled-back-to-B" in sol.methods()


def test_no_solution_in_extension(toy, base_jac, pinned_generator):
    # curve part outside the subgroup spanned by the generator
    Q = toy.curve.parse_point("9;1")
    bad = ExtElement(Q, toy.ext_curve.field([0, 7]))
    with pytest.raises(NoSolutionError):
        solve_extension_dlp(base_jac, pinned_generator, bad,
                            Factorization.from_int(30))


def test_no_solution_fiber_mismatch(toy, base_jac):
    # generator inside the fiber, target outside it
    K = toy.ext_curve.field
    gen = base_jac.embed(K([0, 1]))
    bad = ExtElement(toy.curve.parse_point("9;1"), K([0, 1]))
    with pytest.raises(NoSolutionError):
        solve_extension_dlp(base_jac, gen, bad, Factorization.from_int(4))


def test_no_false_positive_on_corrupted_target(toy, base_jac, pinned_generator):
    # a target whose curve part solves but whose unit part is wrong must
    # be rejected, not silently mis-solved
    good = base_jac.scalar_mul(7, pinned_generator)
    K = toy.ext_curve.field
    corrupted = ExtElement(good.a_part, good.b_part * K([3, 5]))
    order = Factorization.from_int(30)
    with pytest.raises(NoSolutionError):
        solve_extension_dlp(base_jac, pinned_generator, corrupted, order)


def test_reduce_prime_subgroup_requires_extension():
    with pytest.raises(TypeError):
        reduce_prime_subgroup(CyclicGroup(5), 1, 2, 5)


def test_solve_instance_dispatch(toy, base_jac, pinned_generator, rng):
    inst, secret = make_random_instance(
        base_jac, pinned_generator, Factorization.from_int(30), rng
    )
    assert solve_instance(inst).exponent == secret

    G = CyclicGroup(100)
    inst2, secret2 = make_random_instance(G, 3, Factorization.from_int(100), rng)
    assert solve_instance(inst2).exponent == secret2 % 100


def test_make_random_instance_fields(toy, base_jac, pinned_generator, rng):
    order = Factorization.from_int(30)
    inst, secret = make_random_instance(base_jac, pinned_generator, order, rng)
    assert isinstance(inst, DlpInstance)
    assert inst.group is base_jac
    assert inst.order is order
    assert inst.target == base_jac.scalar_mul(secret, pinned_generator)
