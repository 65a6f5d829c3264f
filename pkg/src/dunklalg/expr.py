"""Expression language for operator words.

Grammar (whitespace insignificant):

    expr    := term (("+" | "-") term)*
    term    := factor ("*" factor)*
    factor  := "-" factor | power
    power   := atom ("^" INT)?
    atom    := RATIONAL | coupling | "N"
             | "x[" i "]" | "D[" i "]" | "M[" i "," j "]" | "E[" i "," j "]"
             | "s[" i "]" | "s[" i "," j "]" | "S[" i "," j "]" | "Ssum"
             | "H" | "HOmega" | "Msq" | "rho" | w-literal
             | "(" expr ")" | "[" expr "," expr "]" | "{" expr "," expr "}"

Rationals are INT or INT/INT; "[ , ]" is a commutator and "{ , }" an
anticommutator; group elements are entered by their basis-image tuple,
e.g. w"2,-1,3". Indices are 1-based in the surface syntax.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .cherednik import (
    CherednikContext,
    angular_hamiltonian,
    angular_momentum_ij,
    commutator,
    anticommutator,
    d_gen,
    e_generator,
    group,
    hamiltonian_H,
    m_squared,
    rho,
    s_elem,
    s_sum,
    scalar,
    x_gen,
)
from .exactmath import CoeffPoly
from .subalgebra import SubElement, SubWord, get_subalgebra, h_omega_subelement, rho_subelement, word_from_pairs


class ExprSyntaxError(ValueError):
    """Parse failure with position information."""

    def __init__(self, message: str, line: int, column: int, expected: str = ""):
        self.line = line
        self.column = column
        self.expected = expected
        detail = "line %d, column %d: %s" % (line, column, message)
        if expected:
            detail += " (expected %s)" % expected
        super().__init__(detail)


class EvalError(ValueError):
    """Expression is syntactically fine but not evaluable in this mode."""


# -- AST ---------------------------------------------------------------------

@dataclass(frozen=True)
class Node:
    pass


@dataclass(frozen=True)
class Add(Node):
    left: Node
    right: Node


@dataclass(frozen=True)
class Sub(Node):
    left: Node
    right: Node


@dataclass(frozen=True)
class Mul(Node):
    left: Node
    right: Node


@dataclass(frozen=True)
class Pow(Node):
    base: Node
    exponent: int


@dataclass(frozen=True)
class Neg(Node):
    operand: Node


@dataclass(frozen=True)
class Com(Node):
    left: Node
    right: Node


@dataclass(frozen=True)
class Anti(Node):
    left: Node
    right: Node


@dataclass(frozen=True)
class RatLit(Node):
    value: Fraction


@dataclass(frozen=True)
class Coupling(Node):
    name: str


@dataclass(frozen=True)
class RankN(Node):
    pass


@dataclass(frozen=True)
class Atom(Node):
    kind: str                      # x, D, M, E, s, S
    indices: tuple[int, ...]       # 1-based


@dataclass(frozen=True)
class Named(Node):
    name: str                      # Ssum, H, HOmega, Msq, rho


@dataclass(frozen=True)
class GroupW(Node):
    images: tuple[int, ...]        # signed 1-based images


_TOKEN_RE = re.compile(r"""
    (?P<num>\d+)
  | (?P<name>[A-Za-z][A-Za-z0-9]*)
  | (?P<string>"[^"]*")
  | (?P<op>[-+*^/,\[\]{}()])
  | (?P<ws>\s+)
""", re.VERBOSE)


def _tokenize(text: str):
    tokens = []
    pos = 0
    line = 1
    col = 1
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ExprSyntaxError("unexpected character %r" % text[pos], line, col)
        kind = m.lastgroup
        value = m.group()
        if kind != "ws":
            tokens.append((kind, value, line, col))
        for ch in value:
            if ch == "\n":
                line += 1
                col = 1
            else:
                col += 1
        pos = m.end()
    tokens.append(("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, value: str):
        kind, val, line, col = self.peek()
        if val != value:
            raise ExprSyntaxError("found %r" % (val or "end of input"), line, col, repr(value))
        return self.advance()

    def parse(self) -> Node:
        node = self.expr()
        kind, val, line, col = self.peek()
        if kind != "eof":
            raise ExprSyntaxError("trailing input %r" % val, line, col, "end of input")
        return node

    def expr(self) -> Node:
        node = self.term()
        while True:
            kind, val, _, _ = self.peek()
            if val == "+":
                self.advance()
                node = Add(node, self.term())
            elif val == "-":
                self.advance()
                node = Sub(node, self.term())
            else:
                return node

    def term(self) -> Node:
        node = self.factor()
        while self.peek()[1] == "*":
            self.advance()
            node = Mul(node, self.factor())
        return node

    def factor(self) -> Node:
        if self.peek()[1] == "-":
            self.advance()
            return Neg(self.factor())
        return self.power()

    def power(self) -> Node:
        node = self.atom()
        if self.peek()[1] == "^":
            self.advance()
            kind, val, line, col = self.advance()
            if kind != "num":
                raise ExprSyntaxError("found %r" % val, line, col, "an integer exponent")
            return Pow(node, int(val))
        return node

    def _indices(self, count_options=(1, 2)) -> tuple[int, ...]:
        self.expect("[")
        out = []
        while True:
            kind, val, line, col = self.advance()
            if kind != "num":
                raise ExprSyntaxError("found %r" % val, line, col, "an index")
            out.append(int(val))
            kind, val, line, col = self.peek()
            if val == ",":
                self.advance()
                continue
            break
        self.expect("]")
        if len(out) not in count_options:
            _, _, line, col = self.peek()
            raise ExprSyntaxError("wrong number of indices %r" % (tuple(out),), line, col)
        return tuple(out)

    def atom(self) -> Node:
        kind, val, line, col = self.peek()
        if kind == "num":
            self.advance()
            num = int(val)
            if self.peek()[1] == "/":
                self.advance()
                kind2, val2, line2, col2 = self.advance()
                if kind2 != "num":
                    raise ExprSyntaxError("found %r" % val2, line2, col2, "a denominator")
                return RatLit(Fraction(num, int(val2)))
            return RatLit(Fraction(num))
        if val == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        if val == "[":
            self.advance()
            left = self.expr()
            self.expect(",")
            right = self.expr()
            self.expect("]")
            return Com(left, right)
        if val == "{":
            self.advance()
            left = self.expr()
            self.expect(",")
            right = self.expr()
            self.expect("}")
            return Anti(left, right)
        if kind == "name":
            self.advance()
            if val in ("x", "D"):
                return Atom(val, self._indices((1,)))
            if val in ("M", "E", "S"):
                return Atom(val, self._indices((2,)))
            if val == "s":
                return Atom(val, self._indices((1, 2)))
            if val == "w":
                kind2, val2, line2, col2 = self.advance()
                if kind2 != "string":
                    raise ExprSyntaxError("found %r" % val2, line2, col2, 'a quoted image tuple')
                try:
                    images = tuple(int(v) for v in val2.strip('"').split(","))
                except ValueError:
                    raise ExprSyntaxError("bad image tuple %s" % val2, line2, col2) from None
                return GroupW(images)
            if val in ("Ssum", "H", "HOmega", "Msq", "rho"):
                return Named(val)
            if val == "N":
                return RankN()
            if re.fullmatch(r"g\d*", val):
                return Coupling(val)
            raise ExprSyntaxError("unknown name %r" % val, line, col)
        raise ExprSyntaxError("found %r" % (val or "end of input"), line, col, "an atom")


def parse_expression(text: str) -> Node:
    return _Parser(text).parse()


# -- printing (round-trips through parse_expression) --------------------------

_PREC = {"add": 1, "mul": 2, "neg": 3, "pow": 4, "atom": 5}


def _print(node: Node) -> tuple[str, int]:
    if isinstance(node, Add):
        ls, _ = _wrap(node.left, _PREC["add"])
        rs, _ = _wrap(node.right, _PREC["add"] + 1)
        return "%s + %s" % (ls, rs), _PREC["add"]
    if isinstance(node, Sub):
        ls, _ = _wrap(node.left, _PREC["add"])
        rs, _ = _wrap(node.right, _PREC["add"] + 1)
        return "%s - %s" % (ls, rs), _PREC["add"]
    if isinstance(node, Mul):
        ls, _ = _wrap(node.left, _PREC["mul"])
        rs, _ = _wrap(node.right, _PREC["mul"] + 1)
        return "%s*%s" % (ls, rs), _PREC["mul"]
    if isinstance(node, Neg):
        s, _ = _wrap(node.operand, _PREC["neg"])
        return "-%s" % s, _PREC["neg"]
    if isinstance(node, Pow):
        s, _ = _wrap(node.base, _PREC["pow"] + 1)
        return "%s^%d" % (s, node.exponent), _PREC["pow"]
    if isinstance(node, Com):
        return "[%s, %s]" % (_print(node.left)[0], _print(node.right)[0]), _PREC["atom"]
    if isinstance(node, Anti):
        return "{%s, %s}" % (_print(node.left)[0], _print(node.right)[0]), _PREC["atom"]
    if isinstance(node, RatLit):
        v = node.value
        if v.denominator == 1:
            return str(v.numerator), _PREC["atom"] if v >= 0 else _PREC["neg"]
        return "%d/%d" % (v.numerator, v.denominator), _PREC["atom"]
    if isinstance(node, Coupling):
        return node.name, _PREC["atom"]
    if isinstance(node, RankN):
        return "N", _PREC["atom"]
    if isinstance(node, Atom):
        return "%s[%s]" % (node.kind, ",".join(str(i) for i in node.indices)), _PREC["atom"]
    if isinstance(node, Named):
        return node.name, _PREC["atom"]
    if isinstance(node, GroupW):
        return 'w"%s"' % ",".join(str(i) for i in node.images), _PREC["atom"]
    raise TypeError("unknown node %r" % (node,))


def _wrap(node: Node, min_prec: int) -> tuple[str, int]:
    s, prec = _print(node)
    if prec < min_prec:
        return "(" + s + ")", _PREC["atom"]
    return s, _PREC["atom"]


def print_expression(node: Node) -> str:
    return _print(node)[0]


# -- evaluation ----------------------------------------------------------------

def _group_from_images(ctx: CherednikContext, images: tuple[int, ...]):
    n = ctx.n
    if len(images) != n:
        raise EvalError("image tuple has %d entries, rank is %d" % (len(images), n))
    cols = []
    for v in images:
        k = abs(v) - 1
        if not 0 <= k < n:
            raise EvalError("image index %d out of range" % v)
        cols.append(tuple(Fraction(1 if v > 0 else -1) if t == k else Fraction(0)
                          for t in range(n)))
    w = ctx.rs.element(tuple(cols))
    allroots = set(ctx.rs.positive_roots) | {tuple(-c for c in r) for r in ctx.rs.positive_roots}
    if {w.apply(r) for r in allroots} != allroots:
        raise EvalError("group element does not preserve the root system")
    return w


def _check_index(ctx: CherednikContext, i: int) -> int:
    if not 1 <= i <= ctx.n:
        raise EvalError("index %d out of range 1..%d" % (i, ctx.n))
    return i - 1


def _reflection_by_root(ctx: CherednikContext, k: int):
    if not 1 <= k <= len(ctx.rs.positive_roots):
        raise EvalError("root index %d out of range 1..%d" % (k, len(ctx.rs.positive_roots)))
    return ctx.rs.reflection(k - 1)


def _transposition(ctx: CherednikContext, i: int, j: int):
    n = ctx.n
    vec = tuple(Fraction(1 if t == i else (-1 if t == j else 0)) for t in range(n))
    hit = ctx.rs.find_root(vec)
    if hit is None:
        raise EvalError("s[i,j] needs the root e_i - e_j; use s[k] or w\"...\" here")
    return ctx.rs.reflection(hit[0])


class PBWEvaluator:
    """Evaluate an AST in the full rewriting algebra."""

    def __init__(self, ctx: CherednikContext):
        self.ctx = ctx

    def scalar(self, c) -> "PBWElement":
        return scalar(self.ctx, c)

    def eval(self, node: Node):
        ctx = self.ctx
        if isinstance(node, Add):
            return self.eval(node.left) + self.eval(node.right)
        if isinstance(node, Sub):
            return self.eval(node.left) - self.eval(node.right)
        if isinstance(node, Mul):
            return self.eval(node.left) * self.eval(node.right)
        if isinstance(node, Neg):
            return -self.eval(node.operand)
        if isinstance(node, Pow):
            return self.eval(node.base) ** node.exponent
        if isinstance(node, Com):
            return commutator(self.eval(node.left), self.eval(node.right))
        if isinstance(node, Anti):
            return anticommutator(self.eval(node.left), self.eval(node.right))
        if isinstance(node, RatLit):
            return self.scalar(node.value)
        if isinstance(node, Coupling):
            return self.scalar(self._coupling(node.name))
        if isinstance(node, RankN):
            return self.scalar(ctx.n)
        if isinstance(node, GroupW):
            return group(ctx, _group_from_images(ctx, node.images))
        if isinstance(node, Named):
            return self._named(node.name)
        if isinstance(node, Atom):
            return self._atom(node)
        raise TypeError("unknown node %r" % (node,))

    def _coupling(self, name: str) -> CoeffPoly:
        ctx = self.ctx
        symbols = ctx.rs.symbols
        if name not in symbols:
            raise EvalError("unknown coupling %r; this system has %s" % (name, list(symbols)))
        return ctx.gmap.of_orbit(symbols.index(name))

    def _named(self, name: str):
        ctx = self.ctx
        if name == "Ssum":
            return s_sum(ctx)
        if name == "H":
            return hamiltonian_H(ctx)
        if name == "HOmega":
            return angular_hamiltonian(ctx)
        if name == "Msq":
            return m_squared(ctx)
        if name == "rho":
            return rho(ctx)
        raise EvalError("unknown named element %r" % name)

    def _atom(self, node: Atom):
        ctx = self.ctx
        if node.kind == "x":
            return x_gen(ctx, _check_index(ctx, node.indices[0]))
        if node.kind == "D":
            return d_gen(ctx, _check_index(ctx, node.indices[0]))
        if node.kind == "M":
            i, j = (_check_index(ctx, v) for v in node.indices)
            return angular_momentum_ij(ctx, i, j)
        if node.kind == "E":
            i, j = (_check_index(ctx, v) for v in node.indices)
            return e_generator(ctx, i, j)
        if node.kind == "S":
            i, j = (_check_index(ctx, v) for v in node.indices)
            return s_elem(ctx, i, j)
        if node.kind == "s":
            if len(node.indices) == 1:
                return group(ctx, _reflection_by_root(ctx, node.indices[0]))
            i, j = (_check_index(ctx, v) for v in node.indices)
            return group(ctx, _transposition(ctx, i, j))
        raise EvalError("atom %s is not available" % node.kind)


class SubEvaluator:
    """Evaluate an AST inside the so or gl subalgebra (basis-normal output)."""

    def __init__(self, ctx: CherednikContext, family: str):
        self.ctx = ctx
        self.family = family
        self.alg = get_subalgebra(ctx, family)

    def scalar(self, c) -> SubElement:
        if not isinstance(c, CoeffPoly):
            c = self.ctx.one * c
        return SubElement.of(self.alg, SubWord((), self.ctx.e), c)

    def _group_word(self, w) -> SubElement:
        return SubElement.of(self.alg, SubWord((), w), self.ctx.one)

    def eval(self, node: Node) -> SubElement:
        ctx = self.ctx
        if isinstance(node, Add):
            return self.eval(node.left) + self.eval(node.right)
        if isinstance(node, Sub):
            return self.eval(node.left) - self.eval(node.right)
        if isinstance(node, Mul):
            return self.eval(node.left) * self.eval(node.right)
        if isinstance(node, Neg):
            return -self.eval(node.operand)
        if isinstance(node, Pow):
            out = self.scalar(1)
            for _ in range(node.exponent):
                out = out * self.eval(node.base)
            return out
        if isinstance(node, Com):
            a, b = self.eval(node.left), self.eval(node.right)
            return a * b - b * a
        if isinstance(node, Anti):
            a, b = self.eval(node.left), self.eval(node.right)
            return a * b + b * a
        if isinstance(node, RatLit):
            return self.scalar(node.value)
        if isinstance(node, Coupling):
            return self.scalar(PBWEvaluator(ctx)._coupling(node.name))
        if isinstance(node, RankN):
            return self.scalar(ctx.n)
        if isinstance(node, GroupW):
            return self._group_word(_group_from_images(ctx, node.images))
        if isinstance(node, Named):
            if node.name == "Ssum":
                from .coxeter import invariant_sum_S
                ga = invariant_sum_S(ctx.rs, ctx.gmap)
                acc = SubElement(self.alg)
                for w, c in ga.terms.items():
                    acc = acc + SubElement.of(self.alg, SubWord((), w), c)
                return acc
            if node.name == "HOmega" and self.family == "so":
                return h_omega_subelement(self.alg)
            if node.name == "Msq" and self.family == "so":
                acc = SubElement(self.alg)
                for i in range(ctx.n):
                    for j in range(i + 1, ctx.n):
                        acc = acc + SubElement.of(self.alg, SubWord(((i, j, 2),), ctx.e))
                return acc
            if node.name == "rho" and self.family == "gl":
                return rho_subelement(self.alg)
            raise EvalError("%s is not an element of the %s subalgebra" % (node.name, self.family))
        if isinstance(node, Atom):
            if node.kind == "M" and self.family == "so":
                i, j = (_check_index(ctx, v) for v in node.indices)
                if i == j:
                    return SubElement(self.alg)
                if i < j:
                    return SubElement.of(self.alg, word_from_pairs(((i, j),), ctx.e))
                return -SubElement.of(self.alg, word_from_pairs(((j, i),), ctx.e))
            if node.kind == "E" and self.family == "gl":
                i, j = (_check_index(ctx, v) for v in node.indices)
                return SubElement.of(self.alg, word_from_pairs(((i, j),), ctx.e))
            if node.kind == "M" and self.family == "gl":
                i, j = (_check_index(ctx, v) for v in node.indices)
                return (SubElement.of(self.alg, word_from_pairs(((i, j),), ctx.e))
                        - SubElement.of(self.alg, word_from_pairs(((j, i),), ctx.e)))
            if node.kind == "S":
                i, j = (_check_index(ctx, v) for v in node.indices)
                acc = SubElement(self.alg)
                for w, c in ctx.s_terms(i, j):
                    acc = acc + SubElement.of(self.alg, SubWord((), w), c)
                return acc
            if node.kind == "s":
                if len(node.indices) == 1:
                    return self._group_word(_reflection_by_root(ctx, node.indices[0]))
                i, j = (_check_index(ctx, v) for v in node.indices)
                return self._group_word(_transposition(ctx, i, j))
            raise EvalError("atom %s is not available in the %s subalgebra"
                            % (node.kind, self.family))
        raise TypeError("unknown node %r" % (node,))


def evaluate(text_or_ast, ctx: CherednikContext, mode: str = "cherednik"):
    node = parse_expression(text_or_ast) if isinstance(text_or_ast, str) else text_or_ast
    if mode == "cherednik":
        return PBWEvaluator(ctx).eval(node)
    if mode in ("so", "gl"):
        return SubEvaluator(ctx, mode).eval(node).normal_form()
    raise ValueError("unknown mode %r" % mode)
