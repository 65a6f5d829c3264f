"""Root systems, reflection-group elements, and group-algebra pairings.

A RootSystem fixes a rational realization of the positive roots together
with the orbit structure that labels the coupling symbols. GroupElements
are rational orthogonal matrices, interned per root system; signed
permutations (all of types A, B, D) get a fast action path.

The module also builds the group-algebra pairing S_{xi,eta} and the
invariant sum S, which drive every deformed commutation relation upstream.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .exactmath import CoeffPoly, format_rational, parse_rational

Vector = tuple[Fraction, ...]


class UnsupportedRank(ValueError):
    """Requested family/rank combination has no standard realization."""


class InvalidRootSystem(ValueError):
    """A user-supplied root configuration violates a root-system axiom."""


def _dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def _as_vector(v: Iterable) -> Vector:
    return tuple(Fraction(x) for x in v)


class GroupElement:
    """Orthogonal group element, stored by the images of the basis vectors.

    ``cols[j]`` is the image of e_j. The canonical key (and hash) is the
    image tuple. ``perm``/``signs`` are set when the element is a signed
    permutation, enabling monomial-to-monomial actions.
    """

    __slots__ = ("cols", "perm", "signs", "_hash", "_inv", "_mul")

    def __init__(self, cols: tuple[Vector, ...]):
        self.cols = cols
        perm: list[int] = []
        signs: list[Fraction] = []
        ok = True
        for col in cols:
            nz = [(k, v) for k, v in enumerate(col) if v]
            if len(nz) == 1 and abs(nz[0][1]) == 1:
                perm.append(nz[0][0])
                signs.append(nz[0][1])
            else:
                ok = False
                break
        self.perm = tuple(perm) if ok else None
        self.signs = tuple(signs) if ok else None
        self._hash = hash(cols)
        self._inv = None
        self._mul = {}

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.cols == other.cols

    @property
    def n(self) -> int:
        return len(self.cols)

    def is_identity(self) -> bool:
        if self.perm is None:
            return False
        return self.perm == tuple(range(self.n)) and all(s == 1 for s in self.signs)

    def apply(self, vec: Sequence[Fraction]) -> Vector:
        """Image of a vector: w(v) = sum_j v_j w(e_j)."""
        if self.perm is not None:
            out = [Fraction(0)] * self.n
            for j, v in enumerate(vec):
                if v:
                    out[self.perm[j]] += self.signs[j] * v
            return tuple(out)
        return tuple(sum((self.cols[j][k] * vec[j] for j in range(self.n)), Fraction(0))
                     for k in range(self.n))

    def __mul__(self, other: GroupElement) -> GroupElement:
        """Composition: (self*other)(v) = self(other(v))."""
        cached = self._mul.get(other)
        if cached is not None:
            return cached
        if self.perm is not None and other.perm is not None:
            cols = []
            for j in range(self.n):
                k = other.perm[j]
                img = [Fraction(0)] * self.n
                img[self.perm[k]] = other.signs[j] * self.signs[k]
                cols.append(tuple(img))
        else:
            cols = [self.apply(other.cols[j]) for j in range(self.n)]
        result = GroupElement(tuple(cols))
        self._mul[other] = result
        return result

    def inverse(self) -> GroupElement:
        if self._inv is None:
            # orthogonal, so the inverse is the transpose
            rows = tuple(tuple(self.cols[j][k] for j in range(self.n)) for k in range(self.n))
            self._inv = GroupElement(rows)
            self._inv._inv = self
        return self._inv

    def image_key(self) -> tuple:
        """Compact serialization key: signed indices for signed permutations."""
        if self.perm is not None:
            return tuple(int(self.signs[j]) * (self.perm[j] + 1) for j in range(self.n))
        return self.cols

    def render(self) -> str:
        if self.perm is not None:
            return "w(%s)" % ",".join(str(k) for k in self.image_key())
        cols = ";".join(",".join(format_rational(v) for v in col) for col in self.cols)
        return "w{%s}" % cols

    def __repr__(self) -> str:
        return self.render()


class RootSystem:
    """Positive roots with orbit labels and the generated reflection group."""

    def __init__(self, rank: int, positive_roots: Sequence[Vector], orbit_of: Sequence[int],
                 label: str = "custom", symbols: Sequence[str] | None = None,
                 group_cap: int = 10000):
        self.rank = rank
        self.positive_roots = tuple(_as_vector(r) for r in positive_roots)
        self.orbit_of = tuple(orbit_of)
        self.label = label
        self.norbits = (max(orbit_of) + 1) if orbit_of else 0
        if symbols is None:
            symbols = ("g",) if self.norbits <= 1 else tuple("g%d" % (i + 1) for i in range(self.norbits))
        self.symbols = tuple(symbols)
        self.group_cap = group_cap
        self._interned: dict[tuple[Vector, ...], GroupElement] = {}
        self._root_index: dict[Vector, tuple[int, int]] = {}
        for i, r in enumerate(self.positive_roots):
            self._root_index[r] = (i, 1)
            self._root_index[tuple(-c for c in r)] = (i, -1)
        self._group: tuple[GroupElement, ...] | None = None
        self._reflections: tuple[GroupElement, ...] | None = None
        self.identity = self.element(tuple(
            tuple(Fraction(1) if i == j else Fraction(0) for i in range(rank))
            for j in range(rank)))
        self._validate()

    # -- construction helpers ------------------------------------------------

    def element(self, cols: tuple[Vector, ...]) -> GroupElement:
        w = self._interned.get(cols)
        if w is None:
            w = GroupElement(cols)
            self._interned[cols] = w
        return w

    def reflection(self, root_index: int) -> GroupElement:
        alpha = self.positive_roots[root_index]
        aa = _dot(alpha, alpha)
        cols = []
        for j in range(self.rank):
            e = [Fraction(1) if k == j else Fraction(0) for k in range(self.rank)]
            factor = 2 * alpha[j] / aa
            col = tuple(e[k] - factor * alpha[k] for k in range(self.rank))
            cols.append(col)
        return self.element(tuple(cols))

    def reflections(self) -> tuple[GroupElement, ...]:
        if self._reflections is None:
            self._reflections = tuple(self.reflection(i) for i in range(len(self.positive_roots)))
        return self._reflections

    def find_root(self, vec: Sequence[Fraction]) -> tuple[int, int] | None:
        return self._root_index.get(tuple(vec))

    def group(self) -> tuple[GroupElement, ...]:
        """Enumerate W by breadth-first closure over the reflections."""
        if self._group is None:
            gens = self.reflections()
            seen = {self.identity.cols: self.identity}
            frontier = [self.identity]
            while frontier:
                new = []
                for w in frontier:
                    for s in gens:
                        nxt = w * s
                        if nxt.cols not in seen:
                            nxt = self.element(nxt.cols)
                            seen[nxt.cols] = nxt
                            new.append(nxt)
                            if len(seen) > self.group_cap:
                                raise InvalidRootSystem(
                                    "group enumeration exceeded the cap of %d" % self.group_cap)
                frontier = new
            self._group = tuple(seen.values())
        return self._group

    def order(self) -> int:
        return len(self.group())

    # -- validation -----------------------------------------------------------

    def _validate(self) -> None:
        n = self.rank
        seen: set[Vector] = set()
        for alpha in self.positive_roots:
            if len(alpha) != n:
                raise InvalidRootSystem("root has wrong length")
            if _dot(alpha, alpha) == 0:
                raise InvalidRootSystem("root with (alpha, alpha) = 0")
            if alpha in seen:
                raise InvalidRootSystem("duplicate root")
            neg = tuple(-c for c in alpha)
            if neg in seen:
                raise InvalidRootSystem("both alpha and -alpha stored")
            seen.add(alpha)
        if len(self.orbit_of) != len(self.positive_roots):
            raise InvalidRootSystem("orbit labels do not match the root list")
        for i in range(len(self.positive_roots)):
            s = self.reflection(i)
            for j, beta in enumerate(self.positive_roots):
                image = s.apply(beta)
                hit = self.find_root(image)
                if hit is None:
                    raise InvalidRootSystem(
                        "root set not closed under reflections: s_%d(root %d) is not a root" % (i, j))
                if self.orbit_of[hit[0]] != self.orbit_of[j]:
                    raise InvalidRootSystem(
                        "orbit labels are not W-invariant: roots %d and %d" % (j, hit[0]))

    def __repr__(self) -> str:
        return "RootSystem(%s, rank=%d, %d positive roots)" % (self.label, self.rank, len(self.positive_roots))


def build_root_system(family: str, n: int, group_cap: int = 10000) -> RootSystem:
    """Standard rational realizations: A(n-1) in R^n, B(n), D(n)."""
    family = family.upper()
    e = lambda i: tuple(Fraction(1) if k == i else Fraction(0) for k in range(n))

    def diff(i, j):
        return tuple(a - b for a, b in zip(e(i), e(j)))

    def plus(i, j):
        return tuple(a + b for a, b in zip(e(i), e(j)))

    if family == "A":
        if n < 1:
            raise UnsupportedRank("type A needs n >= 1")
        roots = [diff(i, j) for i in range(n) for j in range(i + 1, n)]
        orbits = [0] * len(roots)
        return RootSystem(n, roots, orbits, label="A%d" % (n - 1), group_cap=group_cap)
    if family == "B":
        if n < 1:
            raise UnsupportedRank("type B needs n >= 1")
        roots = [diff(i, j) for i in range(n) for j in range(i + 1, n)]
        roots += [plus(i, j) for i in range(n) for j in range(i + 1, n)]
        orbits = [0] * len(roots)
        roots += [e(i) for i in range(n)]
        orbits += [1] * n
        return RootSystem(n, roots, orbits, label="B%d" % n, group_cap=group_cap)
    if family == "D":
        if n < 2:
            raise UnsupportedRank("type D needs n >= 2")
        roots = [diff(i, j) for i in range(n) for j in range(i + 1, n)]
        roots += [plus(i, j) for i in range(n) for j in range(i + 1, n)]
        orbits = [0] * len(roots)
        return RootSystem(n, roots, orbits, label="D%d" % n, group_cap=group_cap)
    raise UnsupportedRank("unknown family %r" % family)


def load_root_system(config: dict, group_cap: int = 10000) -> RootSystem:
    """Validate and build a root system from a configuration mapping.

    Expected fields: rank, roots (lists of rationals, "p/q" strings allowed),
    orbits (1-based orbit index per root), optional symbols, optional label.
    """
    try:
        rank = int(config["rank"])
        roots = [tuple(parse_rational(str(v)) for v in row) for row in config["roots"]]
        orbits_raw = [int(o) for o in config["orbits"]]
    except (KeyError, ValueError) as exc:
        raise InvalidRootSystem("malformed config: %s" % exc) from None
    if orbits_raw and min(orbits_raw) == 1:
        orbits = [o - 1 for o in orbits_raw]
    else:
        orbits = orbits_raw
    symbols = config.get("symbols")
    label = config.get("label", "custom")
    return RootSystem(rank, roots, orbits, label=label, symbols=symbols, group_cap=group_cap)


def load_root_system_file(path: str, group_cap: int = 10000) -> RootSystem:
    with open(path, "r", encoding="utf-8") as fh:
        return load_root_system(json.load(fh), group_cap=group_cap)


def root_system_config(rs: RootSystem) -> dict:
    """Serialize a root system to the JSON-compatible config mapping."""
    return {
        "rank": rs.rank,
        "roots": [[format_rational(v) for v in root] for root in rs.positive_roots],
        "orbits": [o + 1 for o in rs.orbit_of],
        "symbols": list(rs.symbols),
        "label": rs.label,
    }


@dataclass(frozen=True)
class MultiplicityMap:
    """Coupling values per root orbit: formal symbols or rational numbers."""

    values: tuple[CoeffPoly, ...]
    nsym: int

    @staticmethod
    def symbolic(rs: RootSystem) -> MultiplicityMap:
        k = rs.norbits
        return MultiplicityMap(tuple(CoeffPoly.symbol(i, k) for i in range(k)), k)

    @staticmethod
    def numeric(rs: RootSystem, rationals: Sequence) -> MultiplicityMap:
        vals = [Fraction(v) for v in rationals]
        if len(vals) != rs.norbits:
            raise ValueError("expected %d coupling values, got %d" % (rs.norbits, len(vals)))
        return MultiplicityMap(tuple(CoeffPoly.const(v, 0) for v in vals), 0)

    def of_orbit(self, orbit: int) -> CoeffPoly:
        return self.values[orbit]

    def of_root(self, rs: RootSystem, root_index: int) -> CoeffPoly:
        return self.values[rs.orbit_of[root_index]]


class GroupAlgebraElement:
    """Finite CoeffPoly-linear combination of group elements."""

    __slots__ = ("rs", "nsym", "terms")

    def __init__(self, rs: RootSystem, nsym: int,
                 terms: dict[GroupElement, CoeffPoly] | None = None):
        self.rs = rs
        self.nsym = nsym
        self.terms = terms if terms is not None else {}

    @staticmethod
    def zero(rs: RootSystem, nsym: int) -> GroupAlgebraElement:
        return GroupAlgebraElement(rs, nsym)

    @staticmethod
    def unit(rs: RootSystem, nsym: int) -> GroupAlgebraElement:
        return GroupAlgebraElement(rs, nsym, {rs.identity: CoeffPoly.one(nsym)})

    @staticmethod
    def of(rs: RootSystem, w: GroupElement, coeff: CoeffPoly) -> GroupAlgebraElement:
        if coeff.is_zero():
            return GroupAlgebraElement(rs, coeff.nsym)
        return GroupAlgebraElement(rs, coeff.nsym, {w: coeff})

    def _check(self, other: GroupAlgebraElement) -> None:
        if self.rs is not other.rs or self.nsym != other.nsym:
            raise ValueError("mixed group-algebra contexts")

    def __add__(self, other: GroupAlgebraElement) -> GroupAlgebraElement:
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            v = out.get(w)
            v = c if v is None else v + c
            if v.is_zero():
                out.pop(w, None)
            else:
                out[w] = v
        return GroupAlgebraElement(self.rs, self.nsym, out)

    def __neg__(self) -> GroupAlgebraElement:
        return GroupAlgebraElement(self.rs, self.nsym, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: GroupAlgebraElement) -> GroupAlgebraElement:
        return self + (-other)

    def __mul__(self, other) -> GroupAlgebraElement:
        if isinstance(other, GroupAlgebraElement):
            self._check(other)
            out: dict[GroupElement, CoeffPoly] = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    w = self.rs.element((w1 * w2).cols)
                    v = c1 * c2
                    prev = out.get(w)
                    v = v if prev is None else prev + v
                    if v.is_zero():
                        out.pop(w, None)
                    else:
                        out[w] = v
            return GroupAlgebraElement(self.rs, self.nsym, out)
        return self.scaled(other)

    __rmul__ = __mul__

    def scaled(self, c) -> GroupAlgebraElement:
        if not isinstance(c, CoeffPoly):
            c = CoeffPoly.const(c, self.nsym)
        if c.is_zero():
            return GroupAlgebraElement(self.rs, self.nsym)
        return GroupAlgebraElement(self.rs, self.nsym, {w: v * c for w, v in self.terms.items()})

    def conjugate(self, w: GroupElement) -> GroupAlgebraElement:
        """w * self * w^{-1}."""
        winv = w.inverse()
        out = {}
        for u, c in self.terms.items():
            out[self.rs.element((w * u * winv).cols)] = c
        return GroupAlgebraElement(self.rs, self.nsym, out)

    def commutes_with(self, w: GroupElement) -> bool:
        return self.conjugate(w).terms == self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self.rs is other.rs and self.terms == other.terms

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def render(self) -> str:
        if not self.terms:
            return "0"
        keys = sorted(self.terms, key=lambda w: w.image_key())
        parts = []
        for w in keys:
            c = self.terms[w].render_atom(self.rs.symbols)
            tag = "1" if w.is_identity() else w.render()
            if tag == "1":
                parts.append(c)
            elif c == "1":
                parts.append(tag)
            elif c == "-1":
                parts.append("-" + tag)
            else:
                parts.append(c + "*" + tag)
        text = parts[0]
        for p in parts[1:]:
            text += " - " + p[1:] if p.startswith("-") else " + " + p
        return text

    def __repr__(self) -> str:
        return "GroupAlgebraElement(%s)" % self.render()


def ga_multiply(a: GroupAlgebraElement, b: GroupAlgebraElement) -> GroupAlgebraElement:
    return a * b


def s_pair(xi: Sequence, eta: Sequence, rs: RootSystem, g: MultiplicityMap) -> GroupAlgebraElement:
    """The group-algebra pairing replacing the Euclidean metric:

        S_{xi,eta} = (xi, eta) + sum_{alpha > 0} 2 g_alpha (alpha, xi)(alpha, eta)
                                                 / (alpha, alpha) * s_alpha
    """
    xi = _as_vector(xi)
    eta = _as_vector(eta)
    nsym = g.nsym
    terms: dict[GroupElement, CoeffPoly] = {}
    c0 = CoeffPoly.const(_dot(xi, eta), nsym)
    if not c0.is_zero():
        terms[rs.identity] = c0
    for i, alpha in enumerate(rs.positive_roots):
        axi = _dot(alpha, xi)
        if not axi:
            continue
        aeta = _dot(alpha, eta)
        if not aeta:
            continue
        coeff = g.of_root(rs, i) * (2 * axi * aeta / _dot(alpha, alpha))
        s = rs.reflection(i)
        prev = terms.get(s)
        v = coeff if prev is None else prev + coeff
        if v.is_zero():
            terms.pop(s, None)
        else:
            terms[s] = v
    return GroupAlgebraElement(rs, nsym, terms)


def invariant_sum_S(rs: RootSystem, g: MultiplicityMap) -> GroupAlgebraElement:
    """S = -sum_{alpha > 0} g_alpha s_alpha, central in the group algebra."""
    terms: dict[GroupElement, CoeffPoly] = {}
    for i in range(len(rs.positive_roots)):
        s = rs.reflection(i)
        coeff = -g.of_root(rs, i)
        prev = terms.get(s)
        v = coeff if prev is None else prev + coeff
        if v.is_zero():
            terms.pop(s, None)
        else:
            terms[s] = v
    return GroupAlgebraElement(rs, g.nsym, terms)
