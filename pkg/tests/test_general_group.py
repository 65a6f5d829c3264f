"""General (non-signed-permutation) rational orthogonal groups.

A B2 system rotated by the rational rotation [[3/5, -4/5], [4/5, 3/5]] has
the same abstract reflection group but none of its elements are signed
permutations, so every general-matrix code path (monomial substitution,
word conjugation, localized actions) gets exercised for real.
"""

from fractions import Fraction

import pytest

from dunklalg.cherednik import CherednikContext
from dunklalg.coxeter import InvalidRootSystem, build_root_system, load_root_system, s_pair, MultiplicityMap
from dunklalg import suites


ROT = ((Fraction(3, 5), Fraction(4, 5)), (Fraction(-4, 5), Fraction(3, 5)))  # columns


def _rotate(vec):
    return tuple(ROT[0][k] * vec[0] + ROT[1][k] * vec[1] for k in range(2))


def rotated_b2():
    base = build_root_system("B", 2)
    roots = [_rotate(r) for r in base.positive_roots]
    return load_root_system({
        "rank": 2,
        "roots": [[str(c) for c in r] for r in roots],
        "orbits": [o + 1 for o in base.orbit_of],
        "label": "B2-rotated",
    })


def test_rotated_group_structure():
    rs = rotated_b2()
    assert rs.order() == 8
    assert any(w.perm is None for w in rs.group())


def test_group_cap_enforced():
    rs = rotated_b2()
    rs.group_cap = 3
    rs._group = None
    with pytest.raises(InvalidRootSystem):
        rs.group()


def test_scaled_roots_give_same_pairing():
    # the (alpha, alpha) denominators make the pairing scale-invariant
    plain = load_root_system({"rank": 2, "roots": [["1", "-1"]], "orbits": [1]})
    scaled = load_root_system({"rank": 2, "roots": [["3", "-3"]], "orbits": [1]})
    g1 = MultiplicityMap.symbolic(plain)
    g2 = MultiplicityMap.symbolic(scaled)
    e1, e2 = (Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))
    a = s_pair(e1, e2, plain, g1)
    b = s_pair(e1, e2, scaled, g2)
    assert list(a.terms.values()) == list(b.terms.values())
    assert [w.cols for w in a.terms] == [w.cols for w in b.terms]


def test_rotated_b2_relations_hold():
    ctx = CherednikContext(rotated_b2())
    for res in (suites.check_commutation(ctx, "amcoxcom"),
                suites.check_crossing(ctx, "amcoxcross"),
                suites.check_com_mw(ctx),
                suites.check_m2_decomposition(ctx),
                suites.check_centrality_so(ctx)):
        assert res.passed, (res.name, res.failures[:1])


def test_pfaffian_vanishes_beyond_type_a():
    from dunklalg.cherednik import CherednikContext, pfaffian_sum

    ctx = CherednikContext(build_root_system("D", 4))
    assert pfaffian_sum(ctx).is_zero()


def test_rotated_b2_straightening_soundness():
    # word conjugation through general (non-signed) tails
    import random

    from dunklalg.cherednik import angular_hamiltonian
    from dunklalg.subalgebra import get_subalgebra, h_omega_subelement, random_subelement

    ctx = CherednikContext(rotated_b2())
    alg = get_subalgebra(ctx, "so")
    assert h_omega_subelement(alg).embed() == angular_hamiltonian(ctx)
    rng = random.Random(113)
    for _ in range(8):
        e = random_subelement(alg, rng, max_degree=3)
        nf = e.normal_form()
        assert nf.is_supported_on_basis()
        assert nf.embed() == e.embed()
