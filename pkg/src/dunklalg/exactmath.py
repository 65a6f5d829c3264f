"""Exact arithmetic substrate.

Provides the scalar ring Q[g1..gk] of coupling polynomials (CoeffPoly),
polynomials in the coordinates with such coefficients (XPoly), polynomials
localized at products of root linear forms (LocPoly), and fraction-free
linear algebra over the coupling ring (FracFreeSolver).

All values are immutable after construction and every operation is a pure
function, so they are safe to share across threads.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

Rat = Fraction

_F0 = Fraction(0)
_F1 = Fraction(1)


class NotDivisible(ArithmeticError):
    """An exact polynomial division left a remainder."""


def parse_rational(text: str) -> Fraction:
    """Parse "p" or "p/q" into a Fraction."""
    return Fraction(text.strip())


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return "%d/%d" % (value.numerator, value.denominator)


def grevlex_key(exp: tuple[int, ...]) -> tuple:
    """Sort key for graded reverse-lexicographic order (larger key = larger)."""
    return (sum(exp), tuple(-e for e in reversed(exp)))


def _rat_content(coeffs: Iterable[Fraction]) -> Fraction:
    num = 0
    den = 1
    for c in coeffs:
        num = math.gcd(num, c.numerator)
        den = den * c.denominator // math.gcd(den, c.denominator)
    if num == 0:
        return _F1
    return Fraction(num, den)


# ---------------------------------------------------------------------------
# CoeffPoly: the scalar ring Q[g1..gk]
# ---------------------------------------------------------------------------

class CoeffPoly:
    """Polynomial in the coupling symbols with rational coefficients.

    ``terms`` maps exponent tuples of length ``nsym`` to nonzero Fractions.
    The zero polynomial has an empty term map.
    """

    __slots__ = ("nsym", "terms")

    def __init__(self, nsym: int, terms: dict[tuple[int, ...], Fraction] | None = None):
        self.nsym = nsym
        self.terms = terms if terms is not None else {}

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(nsym: int) -> CoeffPoly:
        return CoeffPoly(nsym)

    @staticmethod
    def const(value, nsym: int) -> CoeffPoly:
        v = Fraction(value)
        if v == 0:
            return CoeffPoly(nsym)
        return CoeffPoly(nsym, {(0,) * nsym: v})

    @staticmethod
    def one(nsym: int) -> CoeffPoly:
        return CoeffPoly.const(1, nsym)

    @staticmethod
    def symbol(index: int, nsym: int) -> CoeffPoly:
        exp = tuple(1 if i == index else 0 for i in range(nsym))
        return CoeffPoly(nsym, {exp: _F1})

    def _coerce(self, other) -> CoeffPoly:
        if isinstance(other, CoeffPoly):
            if other.nsym != self.nsym:
                raise ValueError("mixed coupling contexts: %d vs %d symbols" % (self.nsym, other.nsym))
            return other
        return CoeffPoly.const(other, self.nsym)

    # -- ring operations ----------------------------------------------------

    def __add__(self, other) -> CoeffPoly:
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, _F0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return CoeffPoly(self.nsym, out)

    __radd__ = __add__

    def __neg__(self) -> CoeffPoly:
        return CoeffPoly(self.nsym, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> CoeffPoly:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> CoeffPoly:
        return self._coerce(other) - self

    def __mul__(self, other) -> CoeffPoly:
        if not isinstance(other, CoeffPoly):
            v = Fraction(other)
            if v == 0:
                return CoeffPoly(self.nsym)
            return CoeffPoly(self.nsym, {e: c * v for e, c in self.terms.items()})
        other = self._coerce(other)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                key = tuple(x + y for x, y in zip(e1, e2))
                v = out.get(key, _F0) + c1 * c2
                if v:
                    out[key] = v
                else:
                    del out[key]
        return CoeffPoly(self.nsym, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> CoeffPoly:
        if n < 0:
            raise ValueError("negative power")
        out = CoeffPoly.one(self.nsym)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CoeffPoly.const(other, self.nsym)
        if not isinstance(other, CoeffPoly):
            return NotImplemented
        return self.nsym == other.nsym and self.terms == other.terms

    __hash__ = None  # mutable payload; use key() when a hashable id is needed

    def key(self) -> tuple:
        return (self.nsym, tuple(sorted(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def leading(self) -> tuple[tuple[int, ...], Fraction]:
        e = max(self.terms, key=grevlex_key)
        return e, self.terms[e]

    # -- exact division and gcd --------------------------------------------

    def divexact(self, q: CoeffPoly) -> CoeffPoly:
        """Divide by q, raising NotDivisible unless the division is exact."""
        q = self._coerce(q)
        if q.is_zero():
            raise ZeroDivisionError("division by zero CoeffPoly")
        if self.is_zero():
            return CoeffPoly(self.nsym)
        qe, qc = q.leading()
        rem = dict(self.terms)
        out: dict[tuple[int, ...], Fraction] = {}
        while rem:
            re = max(rem, key=grevlex_key)
            m = tuple(a - b for a, b in zip(re, qe))
            if any(e < 0 for e in m):
                raise NotDivisible("coupling polynomial division is not exact")
            c = rem[re] / qc
            out[m] = out.get(m, _F0) + c
            for e2, c2 in q.terms.items():
                key = tuple(a + b for a, b in zip(m, e2))
                v = rem.get(key, _F0) - c * c2
                if v:
                    rem[key] = v
                else:
                    rem.pop(key, None)
        return CoeffPoly(self.nsym, {e: c for e, c in out.items() if c})

    def content(self) -> Fraction:
        """Positive rational content (gcd of the coefficients)."""
        return _rat_content(self.terms.values())

    def monomial_content(self) -> tuple[int, ...]:
        if not self.terms:
            return (0,) * self.nsym
        mins = [min(e[i] for e in self.terms) for i in range(self.nsym)]
        return tuple(mins)

    def primitive(self) -> CoeffPoly:
        """Divide out the rational content; leading coefficient > 0."""
        if self.is_zero():
            return self
        c = self.content()
        _, lc = self.leading()
        if lc < 0:
            c = -c
        return CoeffPoly(self.nsym, {e: v / c for e, v in self.terms.items()})

    def substitute(self, values: Sequence[Fraction]) -> Fraction:
        """Evaluate at rational values of the coupling symbols."""
        total = _F0
        for e, c in self.terms.items():
            v = c
            for i, p in enumerate(e):
                if p:
                    v *= values[i] ** p
            total += v
        return total

    def eval_float(self, values: Sequence[float]) -> float:
        total = 0.0
        for e, c in self.terms.items():
            v = c.numerator / c.denominator
            for i, p in enumerate(e):
                if p:
                    v *= values[i] ** p
            total += v
        return total

    # -- rendering ----------------------------------------------------------

    def render(self, names: Sequence[str]) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=grevlex_key, reverse=True):
            c = self.terms[e]
            factors = []
            for i, p in enumerate(e):
                if p == 1:
                    factors.append(names[i])
                elif p > 1:
                    factors.append("%s^%d" % (names[i], p))
            if not factors:
                parts.append(format_rational(c))
            elif c == 1:
                parts.append("*".join(factors))
            elif c == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append(format_rational(c) + "*" + "*".join(factors))
        text = parts[0]
        for p in parts[1:]:
            text += " - " + p[1:] if p.startswith("-") else " + " + p
        return text

    def render_atom(self, names: Sequence[str]) -> str:
        """Render for use as a multiplicative prefix (parenthesized if a sum)."""
        s = self.render(names)
        if len(self.terms) > 1:
            return "(" + s + ")"
        return s

    def __repr__(self) -> str:
        return "CoeffPoly(%s)" % self.render(tuple("g%d" % (i + 1) for i in range(self.nsym)))


def coeff_gcd(a: CoeffPoly, b: CoeffPoly) -> CoeffPoly:
    """A useful common divisor of a and b.

    For a univariate coupling ring this is the true polynomial gcd; with
    several symbols it falls back to the rational/monomial content, which is
    all the solver needs for normalization.
    """
    if a.is_zero():
        return b.primitive()
    if b.is_zero():
        return a.primitive()
    if a.nsym <= 1:
        return _gcd_univariate(a, b)
    m = tuple(min(x, y) for x, y in zip(a.monomial_content(), b.monomial_content()))
    c = math.gcd(a.content().numerator, b.content().numerator)
    return CoeffPoly(a.nsym, {m: Fraction(max(c, 1))})


def _dense(p: CoeffPoly) -> list[Fraction]:
    d = p.degree()
    out = [_F0] * (d + 1)
    for e, c in p.terms.items():
        out[e[0] if e else 0] = c
    return out


def _gcd_univariate(a: CoeffPoly, b: CoeffPoly) -> CoeffPoly:
    fa, fb = _dense(a), _dense(b)
    while fb and any(fb):
        while fa and fa[-1] == 0:
            fa.pop()
        while fb and fb[-1] == 0:
            fb.pop()
        if len(fa) < len(fb):
            fa, fb = fb, fa
            continue
        lead = fb[-1]
        shift = len(fa) - len(fb)
        factor = fa[-1] / lead
        for i, c in enumerate(fb):
            fa[i + shift] -= factor * c
        fa.pop()
    nsym = a.nsym
    poly = CoeffPoly(nsym, {(i,) * nsym if nsym else (): c for i, c in enumerate(fa) if c})
    if poly.is_zero():
        return CoeffPoly.one(nsym)
    return poly.primitive()


# ---------------------------------------------------------------------------
# XPoly: polynomials in the coordinates
# ---------------------------------------------------------------------------

class XPoly:
    """Polynomial in x1..xN with CoeffPoly coefficients.

    ``terms`` maps exponent tuples of length ``nvars`` to nonzero CoeffPoly.
    """

    __slots__ = ("nvars", "nsym", "terms")

    def __init__(self, nvars: int, nsym: int, terms: dict[tuple[int, ...], CoeffPoly] | None = None):
        self.nvars = nvars
        self.nsym = nsym
        self.terms = terms if terms is not None else {}

    @staticmethod
    def zero(nvars: int, nsym: int) -> XPoly:
        return XPoly(nvars, nsym)

    @staticmethod
    def const(value, nvars: int, nsym: int) -> XPoly:
        c = value if isinstance(value, CoeffPoly) else CoeffPoly.const(value, nsym)
        if c.is_zero():
            return XPoly(nvars, nsym)
        return XPoly(nvars, nsym, {(0,) * nvars: c})

    @staticmethod
    def one(nvars: int, nsym: int) -> XPoly:
        return XPoly.const(1, nvars, nsym)

    @staticmethod
    def monomial(exp: Sequence[int], nvars: int, nsym: int, coeff=1) -> XPoly:
        c = coeff if isinstance(coeff, CoeffPoly) else CoeffPoly.const(coeff, nsym)
        if c.is_zero():
            return XPoly(nvars, nsym)
        return XPoly(nvars, nsym, {tuple(exp): c})

    @staticmethod
    def variable(i: int, nvars: int, nsym: int) -> XPoly:
        exp = tuple(1 if j == i else 0 for j in range(nvars))
        return XPoly.monomial(exp, nvars, nsym)

    @staticmethod
    def linear_form(vec: Sequence[Fraction], nsym: int) -> XPoly:
        n = len(vec)
        terms = {}
        for i, v in enumerate(vec):
            if v:
                exp = tuple(1 if j == i else 0 for j in range(n))
                terms[exp] = CoeffPoly.const(v, nsym)
        return XPoly(n, nsym, terms)

    def _check(self, other: XPoly) -> None:
        if self.nvars != other.nvars or self.nsym != other.nsym:
            raise ValueError("mixed polynomial contexts")

    def __add__(self, other: XPoly) -> XPoly:
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            v = c if v is None else v + c
            if v.is_zero():
                out.pop(e, None)
            else:
                out[e] = v
        return XPoly(self.nvars, self.nsym, out)

    def __neg__(self) -> XPoly:
        return XPoly(self.nvars, self.nsym, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: XPoly) -> XPoly:
        return self + (-other)

    def __mul__(self, other) -> XPoly:
        if isinstance(other, XPoly):
            self._check(other)
            out: dict[tuple[int, ...], CoeffPoly] = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    key = tuple(a + b for a, b in zip(e1, e2))
                    v = c1 * c2
                    prev = out.get(key)
                    v = v if prev is None else prev + v
                    if v.is_zero():
                        out.pop(key, None)
                    else:
                        out[key] = v
            return XPoly(self.nvars, self.nsym, out)
        return self.scaled(other)

    __rmul__ = __mul__

    def scaled(self, c) -> XPoly:
        if not isinstance(c, CoeffPoly):
            c = CoeffPoly.const(c, self.nsym)
        if c.is_zero():
            return XPoly(self.nvars, self.nsym)
        return XPoly(self.nvars, self.nsym, {e: v * c for e, v in self.terms.items()})

    def __pow__(self, n: int) -> XPoly:
        out = XPoly.one(self.nvars, self.nsym)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, XPoly):
            return NotImplemented
        return (self.nvars, self.nsym) == (other.nvars, other.nsym) and self.terms == other.terms

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def derivative(self, i: int) -> XPoly:
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                key = tuple(p - 1 if j == i else p for j, p in enumerate(e))
                v = c * e[i]
                prev = out.get(key)
                v = v if prev is None else prev + v
                if not v.is_zero():
                    out[key] = v
                else:
                    out.pop(key, None)
        return XPoly(self.nvars, self.nsym, out)

    def derivative_dir(self, vec: Sequence[Fraction]) -> XPoly:
        out = XPoly.zero(self.nvars, self.nsym)
        for i, v in enumerate(vec):
            if v:
                out = out + self.derivative(i).scaled(v)
        return out

    def substitute_linear(self, images: Sequence[XPoly]) -> XPoly:
        """Substitute x_i -> images[i] (used for general group actions)."""
        out = XPoly.zero(self.nvars, self.nsym)
        cache: dict[tuple[int, int], XPoly] = {}
        for e, c in self.terms.items():
            term = XPoly.const(c, self.nvars, self.nsym)
            for i, p in enumerate(e):
                if p:
                    key = (i, p)
                    powed = cache.get(key)
                    if powed is None:
                        powed = images[i] ** p
                        cache[key] = powed
                    term = term * powed
            out = out + term
        return out

    def apply_signed(self, perm: Sequence[int], signs: Sequence[Fraction]) -> XPoly:
        """Fast path for signed-permutation actions: x_i -> signs[i]*x_perm[i]."""
        out = {}
        for e, c in self.terms.items():
            new = [0] * self.nvars
            sign = _F1
            for i, p in enumerate(e):
                if p:
                    new[perm[i]] = p
                    if signs[i] != 1 and p % 2:
                        sign = -sign
            key = tuple(new)
            v = c if sign == 1 else c * sign
            prev = out.get(key)
            v = v if prev is None else prev + v
            if v.is_zero():
                out.pop(key, None)
            else:
                out[key] = v
        return XPoly(self.nvars, self.nsym, out)

    def try_divide(self, q: XPoly) -> XPoly | None:
        """Exact quotient self/q, or None when q does not divide exactly."""
        self._check(q)
        if q.is_zero():
            raise ZeroDivisionError("division by zero XPoly")
        if self.is_zero():
            return XPoly.zero(self.nvars, self.nsym)
        qe = max(q.terms, key=grevlex_key)
        qc = q.terms[qe]
        rem = dict(self.terms)
        out: dict[tuple[int, ...], CoeffPoly] = {}
        while rem:
            re = max(rem, key=grevlex_key)
            m = tuple(a - b for a, b in zip(re, qe))
            if any(p < 0 for p in m):
                return None
            try:
                c = rem[re].divexact(qc)
            except NotDivisible:
                return None
            out[m] = out.get(m, CoeffPoly.zero(self.nsym)) + c
            for e2, c2 in q.terms.items():
                key = tuple(a + b for a, b in zip(m, e2))
                v = rem.get(key, CoeffPoly.zero(self.nsym)) - c * c2
                if v.is_zero():
                    rem.pop(key, None)
                else:
                    rem[key] = v
        return XPoly(self.nvars, self.nsym, {e: c for e, c in out.items() if not c.is_zero()})

    def render(self, symbol_names: Sequence[str], var: str = "x") -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=grevlex_key, reverse=True):
            factors = []
            for i, p in enumerate(e):
                if p == 1:
                    factors.append("%s%d" % (var, i + 1))
                elif p > 1:
                    factors.append("%s%d^%d" % (var, i + 1, p))
            c = self.terms[e]
            cs = c.render_atom(symbol_names)
            if not factors:
                parts.append(cs)
            elif cs == "1":
                parts.append("*".join(factors))
            elif cs == "-1":
                parts.append("-" + "*".join(factors))
            else:
                parts.append(cs + "*" + "*".join(factors))
        text = parts[0]
        for p in parts[1:]:
            text += " - " + p[1:] if p.startswith("-") else " + " + p
        return text

    def __repr__(self) -> str:
        return "XPoly(%s)" % self.render(tuple("g%d" % (i + 1) for i in range(self.nsym)))


def poly_divide_exact(p: XPoly, q: XPoly) -> XPoly:
    """Exact division in the polynomial ring; NotDivisible on any remainder."""
    r = p.try_divide(q)
    if r is None:
        raise NotDivisible("polynomial division is not exact")
    return r


# ---------------------------------------------------------------------------
# LocPoly: polynomials divided by products of root linear forms
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _root_lookup(roots: tuple[tuple[Fraction, ...], ...]) -> dict[tuple[Fraction, ...], tuple[int, int]]:
    table: dict[tuple[Fraction, ...], tuple[int, int]] = {}
    for i, r in enumerate(roots):
        table[r] = (i, 1)
        table[tuple(-c for c in r)] = (i, -1)
    return table


class LocPoly:
    """XPoly divided by a product of powers of the root linear forms (alpha, x).

    ``den`` maps a positive-root index to the power of (alpha, x) in the
    denominator. The stored form is canonical: the numerator is not divisible
    by any root form appearing in the denominator.
    """

    __slots__ = ("roots", "num", "den")

    def __init__(self, roots: tuple[tuple[Fraction, ...], ...], num: XPoly,
                 den: dict[int, int] | None = None, reduce: bool = True):
        self.roots = roots
        self.num = num
        self.den = dict(den) if den else {}
        if reduce:
            self._reduce()

    def _form(self, idx: int) -> XPoly:
        return XPoly.linear_form(self.roots[idx], self.num.nsym)

    def _reduce(self) -> None:
        if self.num.is_zero():
            self.den = {}
            return
        for idx in list(self.den):
            while self.den.get(idx, 0) > 0:
                q = self.num.try_divide(self._form(idx))
                if q is None:
                    break
                self.num = q
                self.den[idx] -= 1
            if self.den.get(idx, 0) == 0:
                self.den.pop(idx, None)

    @staticmethod
    def from_poly(p: XPoly, roots) -> LocPoly:
        return LocPoly(tuple(roots), p, None, reduce=False)

    def _check(self, other: LocPoly) -> None:
        if self.roots != other.roots:
            raise ValueError("mixed localization contexts")

    def __add__(self, other: LocPoly) -> LocPoly:
        self._check(other)
        den = dict(self.den)
        for idx, m in other.den.items():
            den[idx] = max(den.get(idx, 0), m)
        left = self.num
        for idx, m in den.items():
            extra = m - self.den.get(idx, 0)
            for _ in range(extra):
                left = left * self._form(idx)
        right = other.num
        for idx, m in den.items():
            extra = m - other.den.get(idx, 0)
            for _ in range(extra):
                right = right * self._form(idx)
        return LocPoly(self.roots, left + right, den)

    def __neg__(self) -> LocPoly:
        return LocPoly(self.roots, -self.num, self.den, reduce=False)

    def __sub__(self, other: LocPoly) -> LocPoly:
        return self + (-other)

    def __mul__(self, other) -> LocPoly:
        if isinstance(other, LocPoly):
            self._check(other)
            den = dict(self.den)
            for idx, m in other.den.items():
                den[idx] = den.get(idx, 0) + m
            return LocPoly(self.roots, self.num * other.num, den)
        return LocPoly(self.roots, self.num * other, self.den, reduce=False)

    __rmul__ = __mul__

    def scaled(self, c) -> LocPoly:
        return LocPoly(self.roots, self.num.scaled(c), self.den, reduce=False)

    def over_form(self, idx: int, power: int = 1) -> LocPoly:
        """Divide by (alpha_idx, x)^power."""
        den = dict(self.den)
        den[idx] = den.get(idx, 0) + power
        return LocPoly(self.roots, self.num, den)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, LocPoly):
            return NotImplemented
        return self.roots == other.roots and self.num == other.num and self.den == other.den

    __hash__ = None

    def derivative(self, i: int) -> LocPoly:
        nsym = self.num.nsym
        base = self.num.derivative(i)
        if not self.den:
            return LocPoly(self.roots, base, None, reduce=False)
        forms = {idx: self._form(idx) for idx in self.den}
        total = base
        for idx in self.den:
            total = total * forms[idx]
        for idx, m in self.den.items():
            part = self.num.scaled(CoeffPoly.const(-m * self.roots[idx][i], nsym))
            for jdx in self.den:
                if jdx != idx:
                    part = part * forms[jdx]
            total = total + part
        den = {idx: m + 1 for idx, m in self.den.items()}
        return LocPoly(self.roots, total, den)

    def apply_linear(self, cols: Sequence[Sequence[Fraction]],
                     perm: Sequence[int] | None = None,
                     signs: Sequence[Fraction] | None = None) -> LocPoly:
        """Apply a group element (f -> f o w^{-1}); cols[j] is the image of e_j."""
        if perm is not None:
            num = self.num.apply_signed(perm, signs)
        else:
            images = [XPoly.linear_form(c, self.num.nsym) for c in cols]
            num = self.num.substitute_linear(images)
        lookup = _root_lookup(self.roots)
        den: dict[int, int] = {}
        for idx, m in self.den.items():
            image = tuple(sum(cols[j][k] * self.roots[idx][j] for j in range(len(cols)))
                          for k in range(len(cols)))
            hit = lookup.get(image)
            if hit is None:
                raise ValueError("group element does not preserve the root set")
            jdx, sign = hit
            den[jdx] = den.get(jdx, 0) + m
            if sign < 0 and m % 2:
                num = -num
        return LocPoly(self.roots, num, den, reduce=False)

    def render(self, symbol_names: Sequence[str]) -> str:
        num = self.num.render(symbol_names)
        if not self.den:
            return num
        parts = []
        for idx in sorted(self.den):
            form = XPoly.linear_form(self.roots[idx], self.num.nsym).render(symbol_names)
            m = self.den[idx]
            parts.append("(%s)" % form if m == 1 else "(%s)^%d" % (form, m))
        return "(%s) / %s" % (num, "*".join(parts))

    def __repr__(self) -> str:
        return "LocPoly(%s)" % self.render(tuple("g%d" % (i + 1) for i in range(self.num.nsym)))


def locpoly_apply_reflection(f: LocPoly, s) -> LocPoly:
    """Act by a group element on a localized polynomial."""
    return f.apply_linear(s.cols, s.perm, s.signs)


# ---------------------------------------------------------------------------
# Fraction-free linear algebra over CoeffPoly
# ---------------------------------------------------------------------------

class _RF:
    """Internal rational function num/den over CoeffPoly, gcd-normalized."""

    __slots__ = ("num", "den")

    def __init__(self, num: CoeffPoly, den: CoeffPoly | None = None, normalize: bool = True):
        if den is None:
            den = CoeffPoly.one(num.nsym)
        if normalize and not num.is_zero():
            g = coeff_gcd(num, den)
            if g.degree() > 0 or g.content() != 1 or any(g.monomial_content()):
                num = num.divexact(g)
                den = den.divexact(g)
        if num.is_zero():
            den = CoeffPoly.one(num.nsym)
        self.num = num
        self.den = den

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other: _RF) -> _RF:
        return _RF(self.num * other.den + other.num * self.den, self.den * other.den)

    def __mul__(self, other: _RF) -> _RF:
        return _RF(self.num * other.num, self.den * other.den)

    def __neg__(self) -> _RF:
        return _RF(-self.num, self.den, normalize=False)

    def __truediv__(self, other: _RF) -> _RF:
        if other.is_zero():
            raise ZeroDivisionError
        return _RF(self.num * other.den, self.den * other.num)


def _pivot_weight(p: CoeffPoly) -> tuple[int, int]:
    return (p.degree(), len(p.terms))


class FracFreeSolver:
    """Fraction-free (Bareiss) elimination over the coupling ring.

    Reports exact rank over the fraction field Q(g1..gk) and a basis of the
    right nullspace with entries cleared back to CoeffPoly.
    """

    def __init__(self, rows: Sequence[Sequence[CoeffPoly]]):
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        for r in self.rows:
            if len(r) != self.ncols:
                raise ValueError("ragged matrix")
        self._echelon: list[list[CoeffPoly]] | None = None
        self._pivcols: list[int] | None = None

    def _eliminate(self) -> tuple[list[list[CoeffPoly]], list[int]]:
        if self._echelon is not None:
            return self._echelon, self._pivcols
        m = [row[:] for row in self.rows]
        nsym = m[0][0].nsym if m else 0
        piv_cols: list[int] = []
        prev = CoeffPoly.one(nsym) if m else None
        r = 0
        for c in range(self.ncols):
            if r >= len(m):
                break
            best = None
            for i in range(r, len(m)):
                if not m[i][c].is_zero():
                    w = _pivot_weight(m[i][c])
                    if best is None or w < best[0]:
                        best = (w, i)
            if best is None:
                continue
            i = best[1]
            m[r], m[i] = m[i], m[r]
            piv = m[r][c]
            for k in range(r + 1, len(m)):
                if m[k][c].is_zero():
                    factor = None
                else:
                    factor = m[k][c]
                for j in range(c, self.ncols):
                    v = piv * m[k][j]
                    if factor is not None and not m[r][j].is_zero():
                        v = v - factor * m[r][j]
                    m[k][j] = v.divexact(prev)
            prev = piv
            piv_cols.append(c)
            r += 1
        self._echelon = m[:r] if m else []
        self._pivcols = piv_cols
        return self._echelon, piv_cols

    def rank(self) -> int:
        _, piv = self._eliminate()
        return len(piv)

    def nullspace(self) -> list[list[CoeffPoly]]:
        ech, piv = self._eliminate()
        nsym = self.rows[0][0].nsym if self.rows else 0
        free = [c for c in range(self.ncols) if c not in piv]
        basis = []
        one = CoeffPoly.one(nsym)
        zero = CoeffPoly.zero(nsym)
        for f in free:
            vec = [_RF(zero, normalize=False) for _ in range(self.ncols)]
            vec[f] = _RF(one, normalize=False)
            for k in range(len(piv) - 1, -1, -1):
                c = piv[k]
                acc = _RF(zero, normalize=False)
                for j in range(c + 1, self.ncols):
                    if not ech[k][j].is_zero() and not vec[j].is_zero():
                        acc = acc + _RF(ech[k][j], normalize=False) * vec[j]
                vec[c] = -(acc / _RF(ech[k][c], normalize=False))
            basis.append(_clear_denominators(vec))
        return basis


def _clear_denominators(vec: list[_RF]) -> list[CoeffPoly]:
    nsym = vec[0].num.nsym
    common = CoeffPoly.one(nsym)
    for rf in vec:
        if rf.is_zero():
            continue
        g = coeff_gcd(common, rf.den)
        common = common * rf.den.divexact(g)
    out = []
    for rf in vec:
        if rf.is_zero():
            out.append(CoeffPoly.zero(nsym))
        else:
            out.append(rf.num * common.divexact(rf.den))
    content: CoeffPoly | None = None
    for p in out:
        if not p.is_zero():
            content = p if content is None else coeff_gcd(content, p)
            if isinstance(content, CoeffPoly) and content == CoeffPoly.one(nsym):
                break
    if content is not None and not (content == CoeffPoly.one(nsym)):
        content = content.primitive() if content.degree() > 0 else content
        try:
            out = [p.divexact(content) if not p.is_zero() else p for p in out]
        except NotDivisible:
            pass
    c = _rat_content(c for p in out for c in p.terms.values())
    lead = next((p for p in out if not p.is_zero()), None)
    if lead is not None and lead.leading()[1] < 0:
        c = -c
    if c != 1:
        out = [p * (1 / c) for p in out]
    return out


def nullspace(solver: FracFreeSolver | Sequence[Sequence[CoeffPoly]]) -> list[list[CoeffPoly]]:
    """Right nullspace basis over Q(g), entries cleared to CoeffPoly."""
    if not isinstance(solver, FracFreeSolver):
        solver = FracFreeSolver(solver)
    return solver.nullspace()


def sparse_nullspace(rows: list[dict[int, CoeffPoly]], ncols: int, nsym: int
                     ) -> tuple[list[list[CoeffPoly]], list[int]]:
    """Nullspace of a sparse row collection.

    Rows whose support shrinks to a single column force that variable to
    zero; this pruning loop usually collapses most of the matrix before the
    dense elimination runs. Returns (basis, forced_zero_columns).
    """
    work = []
    seen = set()
    for row in rows:
        items = tuple(sorted((c, p.key()) for c, p in row.items() if not p.is_zero()))
        if items and items not in seen:
            seen.add(items)
            work.append({c: p for c, p in row.items() if not p.is_zero()})
    forced: set[int] = set()
    changed = True
    while changed:
        changed = False
        remaining = []
        for row in work:
            for c in forced:
                row.pop(c, None)
            if len(row) == 1:
                forced.add(next(iter(row)))
                changed = True
            elif row:
                remaining.append(row)
        work = remaining
    live = sorted({c for row in work for c in row})
    col_of = {c: i for i, c in enumerate(live)}
    zero = CoeffPoly.zero(nsym)

    def _solve(candidate_rows: list[dict[int, CoeffPoly]]):
        dense = []
        for row in candidate_rows:
            r = [zero] * len(live)
            for c, p in row.items():
                r[col_of[c]] = p
            dense.append(r)
        if not dense:
            return [[CoeffPoly.one(nsym) if i == j else zero for j in range(len(live))]
                    for i in range(len(live))]
        return FracFreeSolver(dense).nullspace()

    # a float specialization picks a small candidate row basis; the result is
    # then verified exactly against every row, so the heuristic cannot lie.
    # Sorting by simplicity first keeps the exact elimination low-degree.
    work.sort(key=lambda row: (max(p.degree() for p in row.values()),
                               len(row),
                               sum(len(p.terms) for p in row.values())))
    chosen_idx = _select_rows_float(work, nsym)
    chosen = [work[i] for i in chosen_idx]
    remaining = [work[i] for i in range(len(work)) if i not in chosen_idx]
    core = None
    for _ in range(6):
        core = _solve(chosen)
        violated = []
        for row in remaining:
            for vec in core:
                acc = CoeffPoly.zero(nsym)
                for c, p in row.items():
                    v = vec[col_of[c]]
                    if not v.is_zero():
                        acc = acc + p * v
                if not acc.is_zero():
                    violated.append(row)
                    break
        if not violated:
            break
        chosen.extend(violated)
        remaining = [r for r in remaining if id(r) not in {id(v) for v in violated}]
    else:
        chosen = work
        core = _solve(chosen)

    basis = []
    for vec in core:
        full = [zero] * ncols
        for i, c in enumerate(live):
            full[c] = vec[i]
        basis.append(full)
    free_unconstrained = [c for c in range(ncols) if c not in forced and c not in col_of]
    for c in free_unconstrained:
        full = [zero] * ncols
        full[c] = CoeffPoly.one(nsym)
        basis.append(full)
    return basis, sorted(forced)


def _select_rows_float(work: list[dict[int, CoeffPoly]], nsym: int) -> set[int]:
    """Indices of a heuristic row basis via float Gaussian elimination."""
    values = [0.6180339887498949 + 0.31 * k for k in range(nsym)]
    pivots: dict[int, dict[int, float]] = {}
    chosen: set[int] = set()
    for idx, row in enumerate(work):
        r = {c: p.eval_float(values) for c, p in row.items()}
        scale = max(abs(v) for v in r.values()) if r else 0.0
        if scale == 0.0:
            continue
        r = {c: v / scale for c, v in r.items() if abs(v / scale) > 1e-12}
        while r:
            c = min(r)
            pr = pivots.get(c)
            if pr is None:
                pivots[c] = r
                chosen.add(idx)
                break
            f = r[c] / pr[c]
            merged = dict(r)
            for k, v in pr.items():
                t = merged.get(k, 0.0) - f * v
                if abs(t) > 1e-9:
                    merged[k] = t
                else:
                    merged.pop(k, None)
            r = merged
    return chosen


def _normalize_sparse_row(row: dict[int, CoeffPoly]) -> dict[int, CoeffPoly]:
    row = {c: p for c, p in row.items() if not p.is_zero()}
    if not row:
        return row
    c = _rat_content(v for p in row.values() for v in p.terms.values())
    if c != 1:
        inv = 1 / c
        row = {k: p * inv for k, p in row.items()}
    g: CoeffPoly | None = None
    for p in row.values():
        g = p if g is None else coeff_gcd(g, p)
        if g.degree() <= 0:
            g = None
            break
    if g is not None and g.degree() > 0:
        row = {k: p.divexact(g) for k, p in row.items()}
    return row


def _sparse_echelon(rows: Iterable[dict[int, CoeffPoly]]) -> dict[int, dict[int, CoeffPoly]]:
    """Fraction-free sparse elimination; returns pivot_column -> pivot row."""
    pivots: dict[int, dict[int, CoeffPoly]] = {}
    for row in rows:
        row = _normalize_sparse_row(dict(row))
        while row:
            c = min(row)
            pr = pivots.get(c)
            if pr is None:
                pivots[c] = row
                break
            f1, f2 = pr[c], row[c]
            new = {k: f1 * v for k, v in row.items()}
            for k, v in pr.items():
                prev = new.get(k)
                t = f2 * v
                t = -t if prev is None else prev - t
                if t.is_zero():
                    new.pop(k, None)
                else:
                    new[k] = t
            row = _normalize_sparse_row(new)
    return pivots


def sparse_rank_symbolic(rows: Iterable[dict[int, CoeffPoly]]) -> int:
    """Rank over Q(g1..gk) by sparse cross-multiplication elimination."""
    return len(_sparse_echelon(rows))


def sparse_rank_numeric(rows: Iterable[dict[int, CoeffPoly]], values: Sequence[Fraction]) -> int:
    """Rank after a rational specialization; independent Fraction arithmetic."""
    pivots: dict[int, dict[int, Fraction]] = {}
    for row in rows:
        num = {c: p.substitute(values) for c, p in row.items()}
        num = {c: v for c, v in num.items() if v}
        while num:
            c = min(num)
            pr = pivots.get(c)
            if pr is None:
                pivots[c] = num
                break
            f = num[c] / pr[c]
            new = dict(num)
            for k, v in pr.items():
                t = new.get(k, _F0) - f * v
                if t:
                    new[k] = t
                else:
                    new.pop(k, None)
            num = new
    return len(pivots)


def matrix_apply(rows: Sequence[Sequence[CoeffPoly]], vec: Sequence[CoeffPoly]) -> list[CoeffPoly]:
    out = []
    for row in rows:
        nsym = vec[0].nsym
        acc = CoeffPoly.zero(nsym)
        for a, b in zip(row, vec):
            if not a.is_zero() and not b.is_zero():
                acc = acc + a * b
        out.append(acc)
    return out


def rank_at_specialization(rows: Sequence[Sequence[CoeffPoly]], values: Sequence[Fraction]) -> int:
    """Numeric rank after substituting rationals for the coupling symbols.

    Plain Gaussian elimination over Fraction; deliberately independent of the
    Bareiss path so the two can certify each other.
    """
    m = [[p.substitute(values) for p in row] for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    rank = 0
    for c in range(ncols):
        pivot = None
        for i in range(rank, nrows):
            if m[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        pv = m[rank][c]
        for i in range(rank + 1, nrows):
            if m[i][c] != 0:
                f = m[i][c] / pv
                for j in range(c, ncols):
                    m[i][j] -= f * m[rank][j]
        rank += 1
        if rank == nrows:
            break
    return rank
