"""The angular-momenta subalgebras: bases, straightening, flatness, centre.

Words in the quadratic generators (antisymmetric M_ij for the so family,
E_ij for the gl family) times a group tail are reduced to the canonical
basis:

  so basis words: factor list sorted by (i, then j), arc diagram without
  crossing semicircles (i_s < i_s' < j_s implies j_s' <= j_s);
  gl basis words: both index sequences weakly increasing.

Straightening is plain diagram rewriting. It terminates because every
rewrite strictly decreases a well-founded measure: commutation swaps fix
the factor multiset and only cost corrections of lower degree, while an
uncrossing move replaces a crossing pair of arcs by a nested pair (same
arc-length sum, strictly fewer crossings; a crossing arc pair never gains
crossings against a third arc when uncrossed) plus a disjoint pair
(strictly smaller arc-length sum) plus lower-degree corrections. The
measure (degree, arc-length sum, crossing count) therefore decreases at
every recursion through the memo table, and the same wire-uncrossing
argument bounds the gl move by the count of incomparable factor pairs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Sequence

from .cherednik import (
    CherednikContext,
    PBWElement,
    angular_momentum_ij,
    e_generator,
    group,
    one,
    zero,
)
from .coxeter import GroupElement, invariant_sum_S
from .exactmath import (
    CoeffPoly,
    sparse_nullspace,
    sparse_rank_numeric,
    sparse_rank_symbolic,
)
from .reporting import CheckResult

Pair = tuple[int, int]


class DegreeBound(ValueError):
    """Input word exceeds the configured straightening degree bound."""


@dataclass(frozen=True)
class SubWord:
    """Ordered product of generator powers followed by a group tail."""

    factors: tuple[tuple[int, int, int], ...]   # (i, j, power)
    tail: GroupElement

    def degree(self) -> int:
        return sum(p for (_, _, p) in self.factors)

    def pairs(self) -> tuple[Pair, ...]:
        out = []
        for (i, j, p) in self.factors:
            out.extend([(i, j)] * p)
        return tuple(out)

    def sort_key(self):
        tailkey = self.tail.image_key()
        if not isinstance(tailkey[0], int):
            tailkey = tuple(v for col in self.tail.cols for v in col)
        return (-self.degree(), self.factors, tailkey)

    def render(self, family: str) -> str:
        sym = "M" if family == "so" else "E"
        parts = []
        for (i, j, p) in self.factors:
            base = "%s[%d,%d]" % (sym, i + 1, j + 1)
            parts.append(base if p == 1 else base + "^%d" % p)
        if not self.tail.is_identity():
            parts.append(self.tail.render())
        return "*".join(parts) if parts else "1"


def word_from_pairs(pairs: Sequence[Pair], tail: GroupElement) -> SubWord:
    factors: list[tuple[int, int, int]] = []
    for (i, j) in pairs:
        if factors and factors[-1][0] == i and factors[-1][1] == j:
            factors[-1] = (i, j, factors[-1][2] + 1)
        else:
            factors.append((i, j, 1))
    return SubWord(tuple(factors), tail)


@dataclass(frozen=True)
class ArcDiagram:
    """Multiset of arcs (i, j), i < j, drawn as semicircles over 1..N."""

    arcs: tuple[Pair, ...]

    @staticmethod
    def of(word: SubWord) -> ArcDiagram:
        return ArcDiagram(tuple(sorted(word.pairs())))

    def crossing_count(self) -> int:
        n = 0
        arcs = self.arcs
        for s in range(len(arcs)):
            for t in range(s + 1, len(arcs)):
                if _arcs_cross(arcs[s], arcs[t]):
                    n += 1
        return n

    def is_noncrossing(self) -> bool:
        return self.crossing_count() == 0

    def arc_length_sum(self) -> int:
        return sum(j - i for (i, j) in self.arcs)


def _arcs_cross(u: Pair, v: Pair) -> bool:
    (a, b), (c, d) = u, v
    return (a < c < b < d) or (c < a < d < b)


def _chain_sorted(pairs: Sequence[Pair]) -> bool:
    js = [j for (_, j) in sorted(pairs)]
    return all(js[k] <= js[k + 1] for k in range(len(js) - 1))


# ---------------------------------------------------------------------------
# Basis enumeration (plus the deliberately separate combinatorial counters)
# ---------------------------------------------------------------------------

def enumerate_basis_so(n: int, d: int, tail: GroupElement | None = None,
                       ctx: CherednikContext | None = None) -> list[SubWord]:
    """Ordered non-crossing monomials of total degree exactly d."""
    if tail is None:
        if ctx is None:
            raise ValueError("need a tail or a context for the identity")
        tail = ctx.e
    gens = [(i, j) for i in range(n) for j in range(i + 1, n)]
    out = []
    for combo in combinations_with_replacement(gens, d):
        if ArcDiagram(combo).is_noncrossing():
            out.append(word_from_pairs(combo, tail))
    return out


def enumerate_basis_gl(n: int, d: int, tail: GroupElement | None = None,
                       ctx: CherednikContext | None = None) -> list[SubWord]:
    """Words with both index sequences weakly increasing, total degree d."""
    if tail is None:
        if ctx is None:
            raise ValueError("need a tail or a context for the identity")
        tail = ctx.e
    gens = [(i, j) for i in range(n) for j in range(n)]
    out = []
    for combo in combinations_with_replacement(sorted(gens), d):
        if _chain_sorted(combo):
            out.append(word_from_pairs(tuple(sorted(combo)), tail))
    return out


def count_noncrossing_multisets(n: int, d: int) -> int:
    """Independent brute-force counter for the so basis (kept separate)."""
    gens = [(i, j) for i in range(n) for j in range(i + 1, n)]
    total = 0
    for combo in combinations_with_replacement(gens, d):
        ok = True
        for s in range(len(combo)):
            for t in range(len(combo)):
                a, b = combo[s]
                c, e = combo[t]
                if a < c < b and e > b:
                    ok = False
        if ok:
            total += 1
    return total


def count_chain_multisets(n: int, d: int) -> int:
    """Independent counter for the gl basis: multisets of index pairs that
    are pairwise comparable in the product order."""
    gens = [(i, j) for i in range(n) for j in range(n)]
    total = 0
    for combo in combinations_with_replacement(gens, d):
        ok = True
        for s in range(len(combo)):
            for t in range(s + 1, len(combo)):
                (a, b), (c, e) = combo[s], combo[t]
                if (a - c) * (b - e) < 0:
                    ok = False
        if ok:
            total += 1
    return total


# ---------------------------------------------------------------------------
# The straightening engine
# ---------------------------------------------------------------------------

class SubAlgebra:
    """Rewriting context for one family over one Cherednik context."""

    def __init__(self, ctx: CherednikContext, family: str, max_degree: int = 12):
        if family not in ("so", "gl"):
            raise ValueError("family must be 'so' or 'gl'")
        self.ctx = ctx
        self.family = family
        self.max_degree = max_degree
        self._memo: dict[tuple[Pair, ...], dict[tuple[tuple[Pair, ...], GroupElement], CoeffPoly]] = {}
        self._embed_cache: dict[SubWord, PBWElement] = {}

    # -- generator-level data --------------------------------------------------

    def generator(self, i: int, j: int) -> PBWElement:
        if self.family == "so":
            return angular_momentum_ij(self.ctx, i, j)
        return e_generator(self.ctx, i, j)

    def norm_pair(self, i: int, j: int) -> tuple[int, Pair] | None:
        """so generators are antisymmetric; gl generators are free."""
        if self.family == "gl":
            return (1, (i, j))
        if i == j:
            return None
        if i < j:
            return (1, (i, j))
        return (-1, (j, i))

    def conj_pairs(self, w: GroupElement, pairs: Sequence[Pair]):
        """w (word) w^{-1} as a combination of words: [(pairs, coeff), ...]."""
        if w.is_identity() or not pairs:
            return [(tuple(pairs), self.ctx.one)]
        if w.perm is not None:
            sign = Fraction(1)
            out = []
            for (i, j) in pairs:
                ii, jj = w.perm[i], w.perm[j]
                sign *= w.signs[i] * w.signs[j]
                norm = self.norm_pair(ii, jj)
                if norm is None:
                    return []
                s2, pair = norm
                sign *= s2
                out.append(pair)
            return [(tuple(out), self.ctx.one * sign)]
        results = [((), self.ctx.one)]
        for (i, j) in pairs:
            expansion = self._conj_general(w, i, j)
            new = []
            for (acc, c0) in results:
                for (pair, c1) in expansion:
                    new.append((acc + (pair,), c0 * c1))
            results = new
        return results

    def _conj_general(self, w: GroupElement, i: int, j: int):
        xi = w.cols[i]
        eta = w.cols[j]
        n = self.ctx.n
        out = []
        if self.family == "so":
            for k in range(n):
                for l in range(k + 1, n):
                    c = xi[k] * eta[l] - xi[l] * eta[k]
                    if c:
                        out.append(((k, l), self.ctx.one * c))
        else:
            for k in range(n):
                for l in range(n):
                    c = xi[k] * eta[l]
                    if c:
                        out.append(((k, l), self.ctx.one * c))
        return out

    def s_terms(self, i: int, j: int):
        return self.ctx.s_terms(i, j)

    # -- relation right-hand sides ---------------------------------------------

    def _swap_corrections(self, u: Pair, v: Pair):
        """[gen_u, gen_v] as [(sign, left_s or None, pair, right_s or None)]."""
        (i, j), (k, l) = u, v
        if self.family == "so":
            return [(1, None, (i, l), (j, k)), (1, None, (j, k), (i, l)),
                    (-1, None, (i, k), (l, j)), (-1, None, (j, l), (i, k))]
        # gl commutation: [E_ij, E_kl] = E_il S_jk - S_il E_kj + S_kl E_ij - E_ij S_kl
        return [(1, None, (i, l), (j, k)), (-1, (i, l), (k, j), None),
                (1, (k, l), (i, j), None), (-1, None, (i, j), (k, l))]

    def _uncross_so(self, u: Pair, v: Pair):
        """Resolve an adjacent crossing product via the cyclic relation:
        M_ij M_kl = -M_jk M_il - M_ki M_jl + M_ij S_kl + M_jk S_il + M_ki S_jl."""
        (i, j), (k, l) = u, v
        tops = []
        for sgn, p1, p2 in ((-1, (j, k), (i, l)), (-1, (k, i), (j, l))):
            n1 = self.norm_pair(*p1)
            n2 = self.norm_pair(*p2)
            if n1 is None or n2 is None:
                continue
            s1, a = n1
            s2, b = n2
            tops.append((sgn * s1 * s2, a, b))
        corr = [(1, None, (i, j), (k, l)), (1, None, (j, k), (i, l)),
                (1, None, (k, i), (j, l))]
        return tops, corr

    def _uncross_gl(self, u: Pair, v: Pair):
        """E_ij E_kl -> E_il E_kj + E_il S_kj - E_ij S_kl (i < k, j > l)."""
        (i, j), (k, l) = u, v
        tops = [((i, l), (k, j))]
        corr = [(1, None, (i, l), (k, j)), (-1, None, (i, j), (k, l))]
        return tops, corr

    # -- the rewriting loop ------------------------------------------------------

    def _is_basis(self, pairs: tuple[Pair, ...]) -> bool:
        if any(pairs[r] > pairs[r + 1] for r in range(len(pairs) - 1)):
            return False
        if self.family == "so":
            return ArcDiagram(pairs).is_noncrossing()
        return _chain_sorted(pairs)

    def _emit_corrections(self, acc, prefix, corrections, suffix, coeff):
        """Insert first-order relation terms, pushing group factors right.

        Each correction (sign, left_pair, mid_pair, right_pair) contributes
        words  prefix . gen(mid') . w . suffix  with w ranging over the group
        terms of the named S pairing; w is conjugated through the suffix and
        becomes part of the tail.
        """
        for (sign, left, mid, right) in corrections:
            if left is not None:
                for (w, kappa) in self.s_terms(*left):
                    norm = self._conj_one(w, mid)
                    if norm is None:
                        continue
                    for (mid2, cmid) in norm:
                        self._push_word(acc, prefix + (mid2,), w, suffix,
                                        coeff * kappa * cmid * sign)
            else:
                normed = self.norm_pair(*mid)
                if normed is None:
                    continue
                s2, mid2 = normed
                for (w, kappa) in self.s_terms(*right):
                    self._push_word(acc, prefix + (mid2,), w, suffix,
                                    coeff * kappa * (sign * s2))

    def _conj_one(self, w: GroupElement, pair: Pair):
        """Conjugate a single generator: w gen_pair w^{-1}."""
        if w.perm is not None:
            ii, jj = w.perm[pair[0]], w.perm[pair[1]]
            sign = w.signs[pair[0]] * w.signs[pair[1]]
            norm = self.norm_pair(ii, jj)
            if norm is None:
                return None
            s2, p2 = norm
            return [(p2, self.ctx.one * (sign * s2))]
        return self._conj_general(w, *pair)

    def _push_word(self, acc, prefix, w, suffix, coeff):
        """Record prefix . w . suffix as words with the group moved right."""
        if coeff.is_zero():
            return
        for (suf2, csuf) in self.conj_pairs(w, suffix):
            acc.append((prefix + suf2, w, coeff * csuf))

    def _straighten(self, pairs: tuple[Pair, ...]):
        cached = self._memo.get(pairs)
        if cached is not None:
            return cached
        out: dict[tuple[tuple[Pair, ...], GroupElement], CoeffPoly] = {}
        if self._is_basis(pairs):
            out[(pairs, self.ctx.e)] = self.ctx.one
            self._memo[pairs] = out
            return out

        word = list(pairs)
        pending: list[tuple[tuple[Pair, ...], GroupElement, CoeffPoly]] = []

        # phase 1: bubble sort by commutation, collecting lower-degree terms
        changed = True
        while changed:
            changed = False
            for r in range(len(word) - 1):
                if word[r] > word[r + 1]:
                    u, v = word[r], word[r + 1]
                    word[r], word[r + 1] = v, u
                    self._emit_corrections(pending, tuple(word[:r]),
                                           self._swap_corrections(u, v),
                                           tuple(word[r + 2:]), self.ctx.one)
                    changed = True
                    break

        tops: list[tuple[tuple[Pair, ...], CoeffPoly]] = []
        if self.family == "so":
            cross = self._first_crossing(word)
            if cross is None:
                tops.append((tuple(word), self.ctx.one))
            else:
                p, q = cross
                # bring the partners adjacent, then apply the uncross move
                for t in range(q - 1, p, -1):
                    u, v = word[t], word[t + 1]
                    word[t], word[t + 1] = v, u
                    self._emit_corrections(pending, tuple(word[:t]),
                                           self._swap_corrections(u, v),
                                           tuple(word[t + 2:]), self.ctx.one)
                u, v = word[p], word[p + 1]
                top_pairs, corr = self._uncross_so(u, v)
                for (sgn, a, b) in top_pairs:
                    tops.append((tuple(word[:p]) + (a, b) + tuple(word[p + 2:]),
                                 self.ctx.one * sgn))
                self._emit_corrections(pending, tuple(word[:p]), corr,
                                       tuple(word[p + 2:]), self.ctx.one)
        else:
            r = self._first_descend(word)
            if r is None:
                tops.append((tuple(word), self.ctx.one))
            else:
                u, v = word[r], word[r + 1]
                top_pairs, corr = self._uncross_gl(u, v)
                for (a, b) in top_pairs:
                    tops.append((tuple(word[:r]) + (a, b) + tuple(word[r + 2:]), self.ctx.one))
                self._emit_corrections(pending, tuple(word[:r]), corr,
                                       tuple(word[r + 2:]), self.ctx.one)

        for (top, c) in tops:
            if self._is_basis(top):
                self._acc(out, top, self.ctx.e, c)
            else:
                for (bp, tail), c2 in self._straighten(top).items():
                    self._acc(out, bp, tail, c * c2)
        for (pw, w, c) in pending:
            for (bp, tail), c2 in self._straighten(pw).items():
                self._acc(out, bp, tail * w, c * c2)
        out = {k: v for k, v in out.items() if not v.is_zero()}
        self._memo[pairs] = out
        return out

    @staticmethod
    def _first_crossing(word: Sequence[Pair]) -> tuple[int, int] | None:
        for p in range(len(word)):
            for q in range(p + 1, len(word)):
                if _arcs_cross(word[p], word[q]):
                    return (p, q)
        return None

    @staticmethod
    def _first_descend(word: Sequence[Pair]) -> int | None:
        for r in range(len(word) - 1):
            (i, j), (k, l) = word[r], word[r + 1]
            if i < k and j > l:
                return r
        return None

    def _acc(self, out, pairs, tail, coeff):
        tail = self.ctx.rs.element(tail.cols)
        key = (pairs, tail)
        prev = out.get(key)
        v = coeff if prev is None else prev + coeff
        if v.is_zero():
            out.pop(key, None)
        else:
            out[key] = v

    # -- public word/element operations -----------------------------------------

    def normal_form_word(self, word: SubWord):
        if word.degree() > self.max_degree:
            raise DegreeBound("word degree %d exceeds bound %d" % (word.degree(), self.max_degree))
        base = self._straighten(word.pairs())
        out = {}
        for (bp, tail), c in base.items():
            key = (bp, self.ctx.rs.element((tail * word.tail).cols))
            prev = out.get(key)
            v = c if prev is None else prev + c
            if v.is_zero():
                out.pop(key, None)
            else:
                out[key] = v
        return out

    def embed_word(self, word: SubWord) -> PBWElement:
        cached = self._embed_cache.get(word)
        if cached is None:
            acc = one(self.ctx)
            for (i, j, p) in word.factors:
                g = self.generator(i, j)
                for _ in range(p):
                    acc = acc * g
            if not word.tail.is_identity():
                acc = acc * group(self.ctx, word.tail)
            cached = acc
            self._embed_cache[word] = cached
        return cached


class SubElement:
    """CoeffPoly-linear combination of SubWords."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: SubAlgebra, terms: dict[SubWord, CoeffPoly] | None = None):
        self.alg = alg
        self.terms = terms if terms is not None else {}

    @staticmethod
    def zero(alg: SubAlgebra) -> SubElement:
        return SubElement(alg)

    @staticmethod
    def of(alg: SubAlgebra, word: SubWord, coeff=None) -> SubElement:
        c = coeff if coeff is not None else alg.ctx.one
        if not isinstance(c, CoeffPoly):
            c = alg.ctx.one * c
        if c.is_zero():
            return SubElement(alg)
        return SubElement(alg, {word: c})

    def _check(self, other: SubElement) -> None:
        if self.alg is not other.alg:
            raise ValueError("mixed subalgebra contexts")

    def __add__(self, other: SubElement) -> SubElement:
        self._check(other)
        out = dict(self.terms)
        for word, c in other.terms.items():
            prev = out.get(word)
            v = c if prev is None else prev + c
            if v.is_zero():
                out.pop(word, None)
            else:
                out[word] = v
        return SubElement(self.alg, out)

    def __neg__(self) -> SubElement:
        return SubElement(self.alg, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: SubElement) -> SubElement:
        return self + (-other)

    def scaled(self, c) -> SubElement:
        if not isinstance(c, CoeffPoly):
            c = self.alg.ctx.one * c
        if c.is_zero():
            return SubElement(self.alg)
        return SubElement(self.alg, {w: v * c for w, v in self.terms.items()})

    def __mul__(self, other: SubElement) -> SubElement:
        """Product followed by straightening to the basis."""
        self._check(other)
        alg = self.alg
        acc = SubElement(alg)
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                c12 = c1 * c2
                for (p2, cc) in alg.conj_pairs(w1.tail, w2.pairs()):
                    combined = SubWord(word_from_pairs(w1.pairs() + p2, alg.ctx.e).factors,
                                       alg.ctx.rs.element((w1.tail * w2.tail).cols))
                    nf = alg.normal_form_word(combined)
                    for (bp, tail), c3 in nf.items():
                        acc = acc + SubElement.of(alg, word_from_pairs(bp, tail), c12 * cc * c3)
        return acc

    def normal_form(self) -> SubElement:
        acc = SubElement(self.alg)
        for word, c in self.terms.items():
            for (bp, tail), c2 in self.alg.normal_form_word(word).items():
                acc = acc + SubElement.of(self.alg, word_from_pairs(bp, tail), c * c2)
        return acc

    def embed(self) -> PBWElement:
        acc = zero(self.alg.ctx)
        for word, c in self.terms.items():
            acc = acc + self.alg.embed_word(word).scaled(c)
        return acc

    def is_supported_on_basis(self) -> bool:
        return all(self.alg._is_basis(w.pairs()) for w in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, SubElement):
            return NotImplemented
        return self.alg is other.alg and self.terms == other.terms

    __hash__ = None

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for word in sorted(self.terms, key=SubWord.sort_key):
            c = self.terms[word].render_atom(self.alg.ctx.rs.symbols)
            body = word.render(self.alg.family)
            if body == "1":
                parts.append(c)
            elif c == "1":
                parts.append(body)
            elif c == "-1":
                parts.append("-" + body)
            else:
                parts.append(c + "*" + body)
        text = parts[0]
        for p in parts[1:]:
            text += " - " + p[1:] if p.startswith("-") else " + " + p
        return text

    def __repr__(self) -> str:
        return "SubElement(%s)" % self.render()


# ---------------------------------------------------------------------------
# Module-level operations
# ---------------------------------------------------------------------------

def get_subalgebra(ctx: CherednikContext, family: str) -> SubAlgebra:
    key = ("subalg", family)
    alg = ctx._named.get(key)
    if alg is None:
        alg = SubAlgebra(ctx, family)
        ctx._named[key] = alg
    return alg


def embed(item, alg: SubAlgebra | None = None) -> PBWElement:
    if isinstance(item, SubElement):
        return item.embed()
    if alg is None:
        raise ValueError("need a SubAlgebra to embed a bare word")
    return alg.embed_word(item)


def normal_form_so(e: SubElement) -> SubElement:
    if e.alg.family != "so":
        raise ValueError("element is not in the so family")
    return e.normal_form()


def normal_form_gl(e: SubElement) -> SubElement:
    if e.alg.family != "gl":
        raise ValueError("element is not in the gl family")
    return e.normal_form()


def h_omega_subelement(alg: SubAlgebra) -> SubElement:
    """H_Omega written directly over basis words (so family)."""
    ctx = alg.ctx
    acc = SubElement(alg)
    half = Fraction(-1, 2)
    for i in range(ctx.n):
        for j in range(i + 1, ctx.n):
            acc = acc + SubElement.of(alg, SubWord(((i, j, 2),), ctx.e), ctx.one * half)
    ga = invariant_sum_S(ctx.rs, ctx.gmap)
    shifted = ga * ga - ga.scaled(ctx.n - 2)
    for w, c in shifted.terms.items():
        acc = acc + SubElement.of(alg, SubWord((), w), c * Fraction(1, 2))
    return acc


def rho_subelement(alg: SubAlgebra) -> SubElement:
    """rho = sum_i E_ii - S over basis words (gl family)."""
    ctx = alg.ctx
    acc = SubElement(alg)
    for i in range(ctx.n):
        acc = acc + SubElement.of(alg, SubWord(((i, i, 1),), ctx.e), ctx.one)
    ga = invariant_sum_S(ctx.rs, ctx.gmap)
    for w, c in ga.terms.items():
        acc = acc + SubElement.of(alg, SubWord((), w), -c)
    return acc


def random_subelement(alg: SubAlgebra, rng: random.Random, max_degree: int = 3,
                      nwords: int = 3) -> SubElement:
    ctx = alg.ctx
    n = ctx.n
    grp = ctx.rs.group()
    acc = SubElement(alg)
    for _ in range(rng.randint(1, nwords)):
        deg = rng.randint(0, max_degree)
        pairs = []
        for _ in range(deg):
            if alg.family == "so":
                i = rng.randrange(n - 1)
                j = rng.randrange(i + 1, n)
            else:
                i = rng.randrange(n)
                j = rng.randrange(n)
            pairs.append((i, j))
        tail = grp[rng.randrange(len(grp))]
        c = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
        if c:
            acc = acc + SubElement.of(alg, word_from_pairs(tuple(pairs), tail), ctx.one * c)
    return acc


# ---------------------------------------------------------------------------
# PBW flatness and the centre
# ---------------------------------------------------------------------------

def _coefficient_rows(alg: SubAlgebra, words: Sequence[SubWord]):
    """Sparse PBW coefficient vectors of the embedded words."""
    col_of: dict = {}
    rows = []
    for word in words:
        p = alg.embed_word(word)
        row = {}
        for key, c in p.terms.items():
            idx = col_of.setdefault(key, len(col_of))
            row[idx] = c
        rows.append(row)
    return rows, col_of


def pbw_rank_check(family: str, ctx: CherednikContext, d: int,
                   specializations: int = 3, seed: int = 12345) -> tuple[CheckResult, dict]:
    """Embedded basis words of each degree <= d must stay linearly
    independent over Q(g); counts are cross-checked combinatorially."""
    alg = get_subalgebra(ctx, family)
    enum = enumerate_basis_so if family == "so" else enumerate_basis_gl
    counter = count_noncrossing_multisets if family == "so" else count_chain_multisets
    result = CheckResult("pbw-flatness-%s" % family)
    details = {"per_degree": []}
    rng = random.Random(seed)
    words: list[SubWord] = []
    for deg in range(d + 1):
        batch = enum(ctx.n, deg, ctx.e)
        expected = counter(ctx.n, deg)
        words.extend(batch)
        rows, _ = _coefficient_rows(alg, words)
        sym_rank = sparse_rank_symbolic(rows)
        num_ranks = []
        for _ in range(specializations):
            vals = [Fraction(rng.randint(2, 60), rng.randint(1, 7)) for _ in range(max(ctx.nsym, 1))]
            num_ranks.append(sparse_rank_numeric(rows, vals[:ctx.nsym]))
        entry = {"degree": deg, "count": len(batch), "combinatorial": expected,
                 "cumulative": len(words), "rank": sym_rank, "numeric_ranks": num_ranks}
        details["per_degree"].append(entry)
        result.instances += 1
        if len(batch) != expected:
            result.record("degree %d count %d != combinatorial %d" % (deg, len(batch), expected))
        if sym_rank != len(words):
            result.record("degree <= %d rank %d != word count %d" % (deg, sym_rank, len(words)))
        if any(r != sym_rank for r in num_ranks):
            result.record("degree <= %d specialized rank disagrees: %s vs %d"
                          % (deg, num_ranks, sym_rank))
    return result, details


def centralizer(family: str, ctx: CherednikContext, d: int) -> tuple[list[SubElement], dict]:
    """Basis of {B : [B, generators] = 0} over basis words of degree <= d
    with arbitrary group tails; solved exactly over Q(g)."""
    alg = get_subalgebra(ctx, family)
    enum = enumerate_basis_so if family == "so" else enumerate_basis_gl
    grp = ctx.rs.group()
    unknowns: list[SubWord] = []
    for deg in range(d + 1):
        for word in enum(ctx.n, deg, ctx.e):
            for tail in grp:
                unknowns.append(SubWord(word.factors, tail))
    if family == "so":
        constraints = [angular_momentum_ij(ctx, i, j)
                       for i in range(ctx.n) for j in range(i + 1, ctx.n)]
    else:
        constraints = [e_generator(ctx, k, l) for k in range(ctx.n) for l in range(ctx.n)]
    constraints += [group(ctx, s) for s in ctx.rs.reflections()]
    rows_by_key: dict = {}
    for u_idx, word in enumerate(unknowns):
        p = alg.embed_word(word)
        for c_idx, gen in enumerate(constraints):
            com = p * gen - gen * p
            for key, coeff in com.terms.items():
                rows_by_key.setdefault((c_idx, key), {})[u_idx] = coeff
    basis_vectors, _ = sparse_nullspace(list(rows_by_key.values()), len(unknowns), ctx.nsym)
    solutions = []
    for vec in basis_vectors:
        acc = SubElement(alg)
        for idx, c in enumerate(vec):
            if not c.is_zero():
                acc = acc + SubElement.of(alg, unknowns[idx], c)
        solutions.append(acc)
    return solutions, {"unknowns": unknowns, "vectors": basis_vectors}


def element_coordinates(e: SubElement, unknowns: Sequence[SubWord]) -> list[CoeffPoly] | None:
    """Coordinates of a basis-supported element in the unknown list."""
    index = {w: i for i, w in enumerate(unknowns)}
    out = [e.alg.ctx.one * 0 for _ in unknowns]
    for word, c in e.terms.items():
        idx = index.get(word)
        if idx is None:
            return None
        out[idx] = c
    return out


def in_span(vectors: Sequence[Sequence[CoeffPoly]], candidate: Sequence[CoeffPoly]) -> bool:
    rows = [{i: c for i, c in enumerate(v) if not c.is_zero()} for v in vectors]
    base_rank = sparse_rank_symbolic(rows)
    rows.append({i: c for i, c in enumerate(candidate) if not c.is_zero()})
    return sparse_rank_symbolic(rows) == base_rank


def verify_relation_suite(family: str, ctx: CherednikContext) -> list[CheckResult]:
    """Exhaustive relation checks for one family; see the suites module."""
    from . import suites
    if family == "so":
        return suites.relations_so(ctx)
    if family == "gl":
        return suites.relations_gl(ctx)
    if family == "coxeter":
        return suites.coxeter_general(ctx)
    raise ValueError("unknown family %r" % family)
