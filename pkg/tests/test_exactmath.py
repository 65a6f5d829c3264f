"""Substrate tests: ring axioms, exact division, fraction-free linear algebra."""

import random
from fractions import Fraction

import pytest

from dunklalg.exactmath import (
    CoeffPoly,
    FracFreeSolver,
    LocPoly,
    NotDivisible,
    XPoly,
    coeff_gcd,
    grevlex_key,
    matrix_apply,
    nullspace,
    parse_rational,
    poly_divide_exact,
    rank_at_specialization,
    sparse_nullspace,
)


def rand_coeffpoly(rng, nsym=1, deg=3):
    terms = {}
    for _ in range(rng.randint(0, 4)):
        e = tuple(rng.randint(0, deg) for _ in range(nsym))
        terms[e] = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    return CoeffPoly(nsym, {e: c for e, c in terms.items() if c})


def rand_xpoly(rng, nvars=2, nsym=1, deg=3):
    terms = {}
    for _ in range(rng.randint(0, 5)):
        e = tuple(rng.randint(0, deg) for _ in range(nvars))
        c = rand_coeffpoly(rng, nsym, 2)
        if not c.is_zero():
            terms[e] = c
    return XPoly(nvars, nsym, terms)


def test_parse_rational():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational("-2") == Fraction(-2)


def test_grevlex_order():
    # x1 > x2 > x3 among degree-1 monomials, degree dominates
    assert grevlex_key((1, 0, 0)) > grevlex_key((0, 1, 0)) > grevlex_key((0, 0, 1))
    assert grevlex_key((0, 0, 2)) > grevlex_key((1, 0, 0))


def test_coeffpoly_ring_axioms():
    rng = random.Random(11)
    for _ in range(60):
        a, b, c = (rand_coeffpoly(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert a * CoeffPoly.one(1) == a
        assert (a + CoeffPoly.zero(1)) == a


def test_coeffpoly_divexact_roundtrip():
    rng = random.Random(5)
    done = 0
    while done < 40:
        a = rand_coeffpoly(rng)
        b = rand_coeffpoly(rng)
        if b.is_zero():
            continue
        assert (a * b).divexact(b) == a
        done += 1


def test_coeffpoly_divexact_rejects():
    g = CoeffPoly.symbol(0, 1)
    with pytest.raises(NotDivisible):
        (g + 1).divexact(g * g)


def test_coeff_gcd_univariate():
    g = CoeffPoly.symbol(0, 1)
    a = (g + 1) * (g - 2)
    b = (g + 1) * g
    assert coeff_gcd(a, b) == (g + 1)


def test_xpoly_ring_axioms():
    rng = random.Random(7)
    for _ in range(40):
        a, b, c = (rand_xpoly(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        if not a.is_zero() and not b.is_zero():
            assert (a * b).degree() == a.degree() + b.degree()


def x(i, n=2, k=1):
    return XPoly.variable(i, n, k)


def test_poly_divide_exact_difference_of_squares():
    p = x(0) * x(0) - x(1) * x(1)
    q = x(0) - x(1)
    assert poly_divide_exact(p, q) == x(0) + x(1)


def test_poly_divide_exact_zero_dividend():
    q = x(0) - x(1)
    assert poly_divide_exact(XPoly.zero(2, 1), q).is_zero()


def test_poly_divide_exact_reflection_difference():
    # (1 - s12)(x1^2 x2) = x1^2 x2 - x1 x2^2 = x1 x2 (x1 - x2)
    p = XPoly.monomial((2, 1), 2, 1) - XPoly.monomial((1, 2), 2, 1)
    q = x(0) - x(1)
    assert poly_divide_exact(p, q) == XPoly.monomial((1, 1), 2, 1)


def test_poly_divide_exact_random_roundtrip():
    rng = random.Random(3)
    done = 0
    while done < 30:
        p = rand_xpoly(rng)
        q = rand_xpoly(rng)
        if q.is_zero():
            continue
        assert poly_divide_exact(p * q, q) == p
        done += 1


def test_poly_divide_exact_raises():
    with pytest.raises(NotDivisible):
        poly_divide_exact(x(0) + XPoly.one(2, 1), x(1))


def test_nullspace_identity():
    one = CoeffPoly.one(1)
    zero = CoeffPoly.zero(1)
    assert nullspace([[one, zero], [zero, one]]) == []


def test_nullspace_symmetric_row():
    g = CoeffPoly.symbol(0, 1)
    basis = nullspace([[g, -g]])
    assert len(basis) == 1
    assert basis[0] == [CoeffPoly.one(1), CoeffPoly.one(1)]


def test_nullspace_substitution_annihilates():
    rng = random.Random(19)
    for _ in range(10):
        rows = [[rand_coeffpoly(rng) for _ in range(4)] for _ in range(3)]
        basis = nullspace(rows)
        for vec in basis:
            assert all(p.is_zero() for p in matrix_apply(rows, vec))


def test_generic_rank_certificate():
    # rank over Q(g) >= rank at any specialization; agreement at three points
    rng = random.Random(23)
    for _ in range(8):
        rows = [[rand_coeffpoly(rng) for _ in range(3)] for _ in range(4)]
        symbolic = FracFreeSolver(rows).rank()
        specials = []
        for _ in range(3):
            vals = [Fraction(rng.randint(2, 40), rng.randint(1, 7))]
            specials.append(rank_at_specialization(rows, vals))
        assert all(s <= symbolic for s in specials)
        assert max(specials) == symbolic


def _ad_m12_matrix_scalar_collapse():
    """ad_{M12} on span{M12, M13, M23} at N=3 with group parts collapsed to
    scalars (s -> 1), giving a 3x3 matrix over Q[g]."""
    g = CoeffPoly.symbol(0, 1)
    one = CoeffPoly.one(1)
    zero = CoeffPoly.zero(1)
    s_diag = one + 2 * g            # S_ii at N=3; the off-diagonal collapse is -g
    # commutation rule, scalar-collapsed, columns indexed by input M12, M13, M23
    col0 = [zero, zero, zero]
    col1 = [g, -g, -s_diag]         # [M12, M13] = g M12 - g M13 - (1+2g) M23
    col2 = [g, s_diag, g]           # [M12, M23] = g M12 + (1+2g) M13 + g M23
    rows = [[col0[r], col1[r], col2[r]] for r in range(3)]
    return rows


def test_nullspace_dimension_matches_numeric_oracle():
    rows = _ad_m12_matrix_scalar_collapse()
    symbolic_rank = FracFreeSolver(rows).rank()
    rng = random.Random(29)
    for _ in range(3):
        vals = [Fraction(rng.randint(2, 50), rng.randint(1, 9))]
        assert rank_at_specialization(rows, vals) == symbolic_rank
    basis = nullspace(rows)
    assert len(basis) == 3 - symbolic_rank
    for vec in basis:
        assert all(p.is_zero() for p in matrix_apply(rows, vec))


def test_rank_invariant_under_permutations():
    rng = random.Random(37)
    for _ in range(6):
        rows = [[rand_coeffpoly(rng) for _ in range(4)] for _ in range(4)]
        base = FracFreeSolver(rows).rank()
        rperm = rng.sample(range(4), 4)
        cperm = rng.sample(range(4), 4)
        shuffled = [[rows[i][j] for j in cperm] for i in rperm]
        assert FracFreeSolver(shuffled).rank() == base


def test_sparse_nullspace_pruning():
    g = CoeffPoly.symbol(0, 1)
    one = CoeffPoly.one(1)
    rows = [
        {0: g},                 # forces col 0 to zero
        {1: one, 2: -one},      # col1 = col2
    ]
    basis, forced = sparse_nullspace(rows, 4, 1)
    assert forced == [0]
    assert len(basis) == 2     # (0,1,1,0) and the unconstrained col 3
    for vec in basis:
        assert vec[0].is_zero()


ROOTS_A2 = (
    (Fraction(1), Fraction(-1), Fraction(0)),
    (Fraction(1), Fraction(0), Fraction(-1)),
    (Fraction(0), Fraction(1), Fraction(-1)),
)


def loc(p, den=None):
    return LocPoly(ROOTS_A2, p, den)


def test_locpoly_reflection_negates_own_root():
    one = XPoly.one(3, 1)
    f = loc(one, {0: 1})        # 1/(x1-x2)
    # s12 as signed permutation data
    class S:
        cols = ((Fraction(0), Fraction(1), Fraction(0)),
                (Fraction(1), Fraction(0), Fraction(0)),
                (Fraction(0), Fraction(0), Fraction(1)))
        perm = (1, 0, 2)
        signs = (Fraction(1), Fraction(1), Fraction(1))
    from dunklalg.exactmath import locpoly_apply_reflection
    g = locpoly_apply_reflection(f, S)
    assert g == loc(-one, {0: 1})
    # x1 -> x2
    fx = loc(XPoly.variable(0, 3, 1))
    assert locpoly_apply_reflection(fx, S) == loc(XPoly.variable(1, 3, 1))
    # x1/(x1-x3) -> x2/(x2-x3)
    fq = loc(XPoly.variable(0, 3, 1), {1: 1})
    gq = locpoly_apply_reflection(fq, S)
    assert gq == loc(XPoly.variable(1, 3, 1), {2: 1})


def test_locpoly_arithmetic_closed_and_reduces():
    one = XPoly.one(3, 1)
    x1 = XPoly.variable(0, 3, 1)
    x2 = XPoly.variable(1, 3, 1)
    f = loc(x1 - x2, {0: 1})    # (x1-x2)/(x1-x2) reduces to 1
    assert f == loc(one)
    a = loc(one, {0: 1})
    b = loc(one, {1: 1})
    s = a + b
    # (x1-x3) + (x1-x2) over the common denominator
    assert s.den == {0: 1, 1: 1}
    prod = a * loc(x1 - x2)
    assert prod == loc(one)


def test_locpoly_derivative_quotient_rule():
    one = XPoly.one(3, 1)
    f = loc(one, {0: 1})        # 1/(x1-x2)
    df = f.derivative(0)
    assert df == loc(-one, {0: 2})
    # product rule spot check: d/dx1 [x1/(x1-x2)] = -x2/(x1-x2)^2
    x1 = XPoly.variable(0, 3, 1)
    x2 = XPoly.variable(1, 3, 1)
    h = loc(x1, {0: 1})
    assert h.derivative(0) == loc(-x2, {0: 2})
