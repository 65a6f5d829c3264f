"""PBW rewriting engine: normal forms, named elements, (anti)automorphisms."""

import random
from fractions import Fraction

import pytest

from dunklalg.cherednik import (
    CherednikContext,
    ContextMismatch,
    OddRank,
    PBWElement,
    WrongRootSystem,
    adjoint,
    angular_hamiltonian,
    angular_momentum,
    angular_momentum_ij,
    commutator,
    d_gen,
    e_generator,
    euler_xd,
    exchange_antiauto,
    gamma_pm,
    group,
    hamiltonian_H,
    m_squared,
    multiply,
    one,
    pfaffian_sum,
    rho,
    s_elem,
    s_sum,
    scalar,
    x_gen,
    x_squared,
    zero,
)
from dunklalg.coxeter import build_root_system
from dunklalg.exactmath import CoeffPoly


def ctx_a(n):
    return CherednikContext(build_root_system("A", n))


def ctx_b(n):
    return CherednikContext(build_root_system("B", n))


def rand_element(ctx, rng, nterms=3, maxexp=2):
    grp = ctx.rs.group()
    p = zero(ctx)
    for _ in range(rng.randint(1, nterms)):
        a = tuple(rng.randint(0, maxexp) for _ in range(ctx.n))
        b = tuple(rng.randint(0, maxexp) for _ in range(ctx.n))
        w = grp[rng.randrange(len(grp))]
        c = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
        p = p + PBWElement(ctx, {(a, w, b): CoeffPoly.const(c, ctx.nsym)}) if c else p
    return p


def test_d_times_x_single():
    ctx = ctx_a(2)
    got = d_gen(ctx, 0) * x_gen(ctx, 0)
    expected = x_gen(ctx, 0) * d_gen(ctx, 0) + s_elem(ctx, 0, 0)
    assert got == expected
    assert got.canonical_str() == "x1*D1 + 1 + g*s(12)"


def test_d_times_x_product():
    ctx = ctx_a(2)
    x1x2 = x_gen(ctx, 0) * x_gen(ctx, 1)
    got = d_gen(ctx, 0) * x1x2
    expected = x1x2 * d_gen(ctx, 0) + x_gen(ctx, 1)
    assert got == expected


def test_group_pushes_right():
    ctx = ctx_a(2)
    s12 = group(ctx, ctx.rs.reflection(0))
    assert s12 * x_gen(ctx, 0) == x_gen(ctx, 1) * s12


def test_xx_and_dd_commute():
    ctx = ctx_a(3)
    assert commutator(x_gen(ctx, 0), x_gen(ctx, 1)).is_zero()
    assert commutator(d_gen(ctx, 0), d_gen(ctx, 1)).is_zero()


def M(ctx, i, j):
    return angular_momentum_ij(ctx, i, j)


def S(ctx, i, j):
    return s_elem(ctx, i, j)


def test_son_relation_all_distinct():
    ctx = ctx_a(4)
    lhs = commutator(M(ctx, 0, 1), M(ctx, 2, 3))
    rhs = (M(ctx, 0, 3) * S(ctx, 1, 2) + M(ctx, 1, 2) * S(ctx, 0, 3)
           - M(ctx, 0, 2) * S(ctx, 3, 1) - M(ctx, 1, 3) * S(ctx, 0, 2))
    assert lhs == rhs


def test_son_relation_shared_index():
    ctx = ctx_a(3)
    # k = j case: [M_ij, M_jl]
    i, j, l = 0, 1, 2
    lhs = commutator(M(ctx, i, j), M(ctx, j, l))
    rhs = (M(ctx, i, l) * S(ctx, j, j) + M(ctx, j, j) * S(ctx, i, l)
           - M(ctx, i, j) * S(ctx, l, j) - M(ctx, j, l) * S(ctx, i, j))
    assert lhs == rhs


def test_angular_momentum_antisymmetry_bilinearity():
    ctx = ctx_a(3)
    assert angular_momentum(ctx, (1, 0, 0), (1, 0, 0)).is_zero()
    assert angular_momentum(ctx, (1, 0, 0), (0, 1, 0)) == x_gen(ctx, 0) * d_gen(ctx, 1) - x_gen(ctx, 1) * d_gen(ctx, 0)
    xi = (1, 2, 0)
    eta = (0, -1, 3)
    assert angular_momentum(ctx, xi, eta) == -angular_momentum(ctx, eta, xi)


def test_angular_momentum_equivariance():
    ctx = ctx_b(2)
    for w in ctx.rs.group():
        lhs = group(ctx, w) * M(ctx, 0, 1)
        rhs = angular_momentum(ctx, w.apply((Fraction(1), Fraction(0))),
                               w.apply((Fraction(0), Fraction(1)))) * group(ctx, w)
        assert lhs == rhs


def test_e_generator_difference_is_m():
    ctx = ctx_a(3)
    assert e_generator(ctx, 0, 1) - e_generator(ctx, 1, 0) == M(ctx, 0, 1)


def test_e_generator_cartan_commutator():
    ctx = ctx_a(2)
    lhs = commutator(e_generator(ctx, 0, 0), e_generator(ctx, 1, 1))
    rhs = (e_generator(ctx, 0, 0) - e_generator(ctx, 1, 1)) * S(ctx, 0, 1)
    assert lhs == rhs


def test_e_generator_adjoint():
    ctx = ctx_a(3)
    assert adjoint(e_generator(ctx, 0, 1)) == e_generator(ctx, 1, 0)


def test_hamiltonian_rank_one():
    ctx = ctx_a(1)
    assert hamiltonian_H(ctx) == (d_gen(ctx, 0) * d_gen(ctx, 0)).scaled(Fraction(-1, 2))


def test_rho_small():
    ctx = ctx_a(2)
    g = CoeffPoly.symbol(0, 1)
    expected = e_generator(ctx, 0, 0) + e_generator(ctx, 1, 1) + group(ctx, ctx.rs.reflection(0)).scaled(g)
    assert rho(ctx) == expected
    assert commutator(rho(ctx), e_generator(ctx, 0, 1)).is_zero()


def test_rho_is_confined_hamiltonian():
    # rho = H + x^2/2 - N/2 must hold identically in the engine
    for n in (2, 3):
        ctx = ctx_a(n)
        expected = hamiltonian_H(ctx) + x_squared(ctx).scaled(Fraction(1, 2)) - scalar(ctx, Fraction(n, 2))
        assert rho(ctx) == expected


def test_gamma_pm_values():
    ctx2 = ctx_a(2)
    g = CoeffPoly.symbol(0, 1)
    assert gamma_pm(ctx2, 1) == g * g * Fraction(1, 2)
    assert gamma_pm(ctx2, -1) == g * g * Fraction(1, 2)
    ctx3 = ctx_a(3)
    assert gamma_pm(ctx3, 1) == (g * g * 9 + g * 3) * Fraction(1, 2)
    with pytest.raises(WrongRootSystem):
        gamma_pm(ctx_b(2), 1)


def test_gamma_pm_matches_restricted_angular_constant():
    # gamma_pm = sigma (sigma - N + 2) / 2 with sigma = -+ g N(N-1)/2
    for n in (2, 3, 4, 5):
        ctx = ctx_a(n)
        g = CoeffPoly.symbol(0, 1)
        for sign in (1, -1):
            sigma = g * Fraction(-sign * n * (n - 1), 2)
            assert gamma_pm(ctx, sign) == (sigma * sigma - sigma * (n - 2)) * Fraction(1, 2)


def test_adjoint_fixes_engine_relations():
    ctx = ctx_a(3)
    assert adjoint(M(ctx, 0, 1)) == -M(ctx, 0, 1)
    s12 = group(ctx, ctx.rs.reflection(0))
    assert adjoint(s12) == s12
    assert adjoint(s_sum(ctx)) == s_sum(ctx)


def test_adjoint_involution_and_antimultiplicative():
    rng = random.Random(41)
    ctx = ctx_a(3)
    for _ in range(8):
        p = rand_element(ctx, rng)
        q = rand_element(ctx, rng)
        assert adjoint(adjoint(p)) == p
        assert adjoint(p * q) == adjoint(q) * adjoint(p)


def test_exchange_on_mixed_word():
    ctx = ctx_a(2)
    got = exchange_antiauto(x_gen(ctx, 0) * d_gen(ctx, 1))
    assert got == x_gen(ctx, 1) * d_gen(ctx, 0)


def test_exchange_involution_and_antimultiplicative():
    rng = random.Random(43)
    ctx = ctx_a(3)
    for _ in range(8):
        p = rand_element(ctx, rng)
        q = rand_element(ctx, rng)
        assert exchange_antiauto(exchange_antiauto(p)) == p
        assert exchange_antiauto(p * q) == exchange_antiauto(q) * exchange_antiauto(p)


def test_exchange_sends_h_to_x_squared():
    ctx = ctx_a(3)
    assert exchange_antiauto(hamiltonian_H(ctx)) == x_squared(ctx).scaled(Fraction(-1, 2))
    assert exchange_antiauto(M(ctx, 0, 1)) == -M(ctx, 0, 1)


def test_centrality_h_and_x2():
    for n in (3,):
        ctx = ctx_a(n)
        for i in range(n):
            for j in range(i + 1, n):
                assert commutator(hamiltonian_H(ctx), M(ctx, i, j)).is_zero()
                assert commutator(x_squared(ctx), M(ctx, i, j)).is_zero()


def test_angular_hamiltonian_central_small():
    ctx = ctx_a(3)
    homega = angular_hamiltonian(ctx)
    for i in range(3):
        for j in range(i + 1, 3):
            assert commutator(homega, M(ctx, i, j)).is_zero()
    for w in ctx.rs.reflections():
        assert commutator(homega, group(ctx, w)).is_zero()


def test_m2_decomposition_identity():
    # M^2 = x^2 D^2 - (x.D)^2 + (2S - N + 2)(x.D)
    for ctx in (ctx_a(2), ctx_a(3), ctx_b(2)):
        d2 = hamiltonian_H(ctx).scaled(-2)
        xd = euler_xd(ctx)
        scoef = s_sum(ctx).scaled(2) - scalar(ctx, ctx.n - 2)
        rhs = x_squared(ctx) * d2 - xd * xd + scoef * xd
        assert m_squared(ctx) == rhs


def test_pfaffian_rank_two_single_factor():
    ctx = ctx_a(2)
    assert pfaffian_sum(ctx) == M(ctx, 0, 1).scaled(2)


def test_pfaffian_vanishes_rank_four():
    ctx = ctx_a(4)
    assert pfaffian_sum(ctx).is_zero()


def test_pfaffian_negative_control():
    # flipping one factor's sign must break the cancellation
    ctx = ctx_a(4)
    acc = zero(ctx)
    from itertools import permutations
    from dunklalg.cherednik import _perm_sign
    for perm in permutations(range(4)):
        sign = _perm_sign(perm)
        prod = one(ctx)
        for k in range(0, 4, 2):
            m = M(ctx, perm[k], perm[k + 1])
            if k == 0 and perm[0] == 0 and perm[1] == 1:
                m = -m
            prod = prod * m
        acc = acc + prod.scaled(sign)
    assert not acc.is_zero()


def test_odd_rank_rejected():
    with pytest.raises(OddRank):
        pfaffian_sum(ctx_a(3))


def test_degree_and_leading():
    ctx = ctx_a(3)
    assert commutator(x_gen(ctx, 0), x_gen(ctx, 1)).is_zero()
    assert M(ctx, 0, 1).filtration_degree() == 2
    lead = commutator(M(ctx, 0, 1), M(ctx, 1, 2)).leading_part()
    assert lead.filtration_degree() == 2
    assert any(not w.is_identity() for (_, w, _) in lead.terms)


def test_associativity_of_normal_form():
    rng = random.Random(47)
    ctx = ctx_a(3)
    for _ in range(6):
        p = rand_element(ctx, rng, nterms=2, maxexp=1)
        q = rand_element(ctx, rng, nterms=2, maxexp=1)
        r = rand_element(ctx, rng, nterms=2, maxexp=1)
        assert (p * q) * r == p * (q * r)


def test_context_mismatch():
    p = x_gen(ctx_a(2), 0)
    q = x_gen(ctx_a(2), 0)
    with pytest.raises(ContextMismatch):
        multiply(p, q)


def a_plus(ctx, i):
    return x_gen(ctx, i) - d_gen(ctx, i)


def a_minus(ctx, i):
    return x_gen(ctx, i) + d_gen(ctx, i)


def test_creation_annihilation_relations():
    ctx = ctx_a(3)
    for i in range(3):
        for j in range(3):
            # with the sqrt(2)/2 normalization cleared, a factor 1/2 remains
            assert commutator(a_minus(ctx, i), a_plus(ctx, j)).scaled(Fraction(1, 2)) == S(ctx, i, j)
            assert commutator(a_minus(ctx, i), a_minus(ctx, j)).is_zero()
            assert commutator(a_plus(ctx, i), a_plus(ctx, j)).is_zero()


def test_permutation_creation_commutators():
    ctx = ctx_a(3)
    for ap in (a_plus, a_minus):
        for i in range(3):
            for j in range(3):
                if i == j:
                    continue
                assert S(ctx, i, j) * ap(ctx, i) == ap(ctx, j) * S(ctx, i, j)
                k = next(k for k in range(3) if k not in (i, j))
                assert commutator(S(ctx, i, j), ap(ctx, k)).is_zero()
                # [S_jj, a_i] = [S_ij, a_j] = (a_i - a_j) S_ij
                lhs1 = commutator(S(ctx, j, j), ap(ctx, i))
                lhs2 = commutator(S(ctx, i, j), ap(ctx, j))
                rhs = (ap(ctx, i) - ap(ctx, j)) * S(ctx, i, j)
                assert lhs1 == rhs and lhs2 == rhs


def test_diagonal_permutation_creation_commutator():
    ctx = ctx_a(3)
    for ap in (a_plus, a_minus):
        for j in range(3):
            lhs = commutator(S(ctx, j, j), ap(ctx, j))
            rhs = zero(ctx)
            for k in range(3):
                if k != j:
                    rhs = rhs + (ap(ctx, j) - ap(ctx, k)) * S(ctx, k, j)
            assert lhs == rhs


def test_concurrent_multiplication_shares_caches():
    # the rewriting memo is read-mostly; parallel products must agree
    import threading

    ctx = ctx_a(3)
    expected = commutator(M(ctx, 0, 1), M(ctx, 1, 2))
    results = [None] * 8
    def work(slot):
        results[slot] = commutator(M(ctx, 0, 1), M(ctx, 1, 2))
    threads = [threading.Thread(target=work, args=(k,)) for k in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(r == expected for r in results)


def test_canonical_str_deterministic():
    ctx = ctx_a(2)
    p = d_gen(ctx, 0) * x_gen(ctx, 0)
    assert p.canonical_str() == (d_gen(ctx, 0) * x_gen(ctx, 0)).canonical_str()
    assert zero(ctx).canonical_str() == "0"
