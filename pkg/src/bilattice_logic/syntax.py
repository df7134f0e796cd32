"""Formula/term syntax shared by the identity checker and the two logics.

Grammar (whitespace ignored)::

    imp   := disj ('>' imp)?               right-assoc, lowest precedence
    disj  := conj (('|' | '+') conj)*      left-assoc
    conj  := unary (('&' | '*') unary)*    left-assoc
    unary := ('~' | '-') unary | atom
    atom  := VAR | '(' imp ')'

`~` is negation, `-` conflation, `&`/`|` the truth lattice, `*`/`+` the
knowledge lattice and `>` the weak implication.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import ClassVar, Iterator

VAR_RE = re.compile(r"[a-z][a-z0-9_]*")


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class Formula:
    """Base class of all AST nodes."""

    __slots__ = ()

    def __and__(self, other):
        return And(self, other)

    def __or__(self, other):
        return Or(self, other)

    def __invert__(self):
        return Not(self)

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True, slots=True)
class Var(Formula):
    name: str

    def __post_init__(self):
        if not self.name:
            raise ValueError("empty variable name")


@dataclass(frozen=True, slots=True)
class Not(Formula):
    arg: Formula
    op: ClassVar[str] = "neg"


@dataclass(frozen=True, slots=True)
class Conf(Formula):
    arg: Formula
    op: ClassVar[str] = "conf"


@dataclass(frozen=True, slots=True)
class And(Formula):
    left: Formula
    right: Formula
    op: ClassVar[str] = "and"


@dataclass(frozen=True, slots=True)
class Or(Formula):
    left: Formula
    right: Formula
    op: ClassVar[str] = "or"


@dataclass(frozen=True, slots=True)
class KAnd(Formula):
    left: Formula
    right: Formula
    op: ClassVar[str] = "kand"


@dataclass(frozen=True, slots=True)
class KOr(Formula):
    left: Formula
    right: Formula
    op: ClassVar[str] = "kor"


@dataclass(frozen=True, slots=True)
class Imp(Formula):
    left: Formula
    right: Formula
    op: ClassVar[str] = "imp"


UNARY = (Not, Conf)
BINARY = (And, Or, KAnd, KOr, Imp)
BINARY_BY_OP = {cls.op: cls for cls in BINARY}
UNARY_BY_OP = {cls.op: cls for cls in UNARY}

_SYMBOL = {"and": "&", "or": "|", "kand": "*", "kor": "+", "imp": ">", "neg": "~", "conf": "-"}
_PREC = {"imp": 0, "or": 1, "kor": 1, "and": 2, "kand": 2}
_BIN_TOKENS = {"&": And, "*": KAnd, "|": Or, "+": KOr}


@dataclass(frozen=True)
class Equation:
    lhs: Formula
    rhs: Formula

    def __str__(self):
        return f"{to_text(self.lhs)} = {to_text(self.rhs)}"


# derived connectives, expanded syntactically

def arrow(p: Formula, q: Formula) -> Formula:
    """Strong implication (p > q) & (~q > ~p)."""
    return And(Imp(p, q), Imp(Not(q), Not(p)))


def biarrow(p: Formula, q: Formula) -> Formula:
    return And(arrow(p, q), arrow(q, p))


def equiv(p: Formula, q: Formula) -> Formula:
    """Weak equivalence (p > q) & (q > p)."""
    return And(Imp(p, q), Imp(q, p))


def fusion(p: Formula, q: Formula) -> Formula:
    return Not(arrow(p, Not(q)))


def top_of(x: Formula) -> Formula:
    """The term (x > x) + ~(x > x), constant in every implicative bilattice."""
    return KOr(Imp(x, x), Not(Imp(x, x)))


# traversal helpers

def subformulas(phi: Formula) -> Iterator[Formula]:
    yield phi
    if isinstance(phi, UNARY):
        yield from subformulas(phi.arg)
    elif isinstance(phi, BINARY):
        yield from subformulas(phi.left)
        yield from subformulas(phi.right)


def variables(*formulas: Formula) -> list[str]:
    """Variable names in order of first occurrence."""
    seen: dict[str, None] = {}
    for phi in formulas:
        for sub in subformulas(phi):
            if isinstance(sub, Var):
                seen.setdefault(sub.name)
    return list(seen)


def size(phi: Formula) -> int:
    return sum(1 for _ in subformulas(phi))


def depth(phi: Formula) -> int:
    if isinstance(phi, UNARY):
        return 1 + depth(phi.arg)
    if isinstance(phi, BINARY):
        return 1 + max(depth(phi.left), depth(phi.right))
    return 0


def operations_used(*formulas: Formula) -> set[str]:
    return {sub.op for phi in formulas for sub in subformulas(phi) if not isinstance(sub, Var)}


def substitute(phi: Formula, sub: dict[str, Formula]) -> Formula:
    if isinstance(phi, Var):
        return sub.get(phi.name, phi)
    if isinstance(phi, UNARY):
        return type(phi)(substitute(phi.arg, sub))
    return type(phi)(substitute(phi.left, sub), substitute(phi.right, sub))


def match(pattern: Formula, phi: Formula, sub: dict[str, Formula] | None = None):
    """First-order matching of a schema against a formula.

    Pattern variables bind whole formulas. Returns the extended substitution
    or None when there is no match.
    """
    sub = {} if sub is None else dict(sub)
    stack = [(pattern, phi)]
    while stack:
        pat, f = stack.pop()
        if isinstance(pat, Var):
            bound = sub.get(pat.name)
            if bound is None:
                sub[pat.name] = f
            elif bound != f:
                return None
        elif type(pat) is not type(f):
            return None
        elif isinstance(pat, UNARY):
            stack.append((pat.arg, f.arg))
        else:
            stack.append((pat.left, f.left))
            stack.append((pat.right, f.right))
    return sub


# printing

def _prec(phi: Formula) -> int:
    if isinstance(phi, BINARY):
        return _PREC[phi.op]
    return 3


def to_text(phi: Formula) -> str:
    if isinstance(phi, Var):
        return phi.name
    if isinstance(phi, UNARY):
        inner = to_text(phi.arg)
        if _prec(phi.arg) < 3:
            inner = f"({inner})"
        return _SYMBOL[phi.op] + inner
    p = _PREC[phi.op]
    left, right = to_text(phi.left), to_text(phi.right)
    if phi.op == "imp":
        # right-associative
        if _prec(phi.left) <= p:
            left = f"({left})"
        if _prec(phi.right) < p:
            right = f"({right})"
    else:
        if _prec(phi.left) < p:
            left = f"({left})"
        if _prec(phi.right) <= p:
            right = f"({right})"
    return f"{left} {_SYMBOL[phi.op]} {right}"


# parsing

_TOKEN_RE = re.compile(r"\s*(?:([a-z][a-z0-9_]*)|(\|-)|([~\-&|*+>(),=]))")


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", start)
        tok = m.group(1) or m.group(2) or m.group(3)
        tokens.append((tok, m.start(m.lastindex)))
        pos = m.end()
    tokens.append(("", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def pos(self) -> int:
        return self.tokens[self.i][1]

    def take(self) -> str:
        tok = self.tokens[self.i][0]
        self.i += 1
        return tok

    def expect(self, tok: str):
        if self.peek() != tok:
            found = self.peek() or "end of input"
            raise ParseError(f"expected {tok!r}, found {found!r}", self.pos())
        self.take()

    def imp(self) -> Formula:
        left = self.disj()
        if self.peek() == ">":
            self.take()
            return Imp(left, self.imp())
        return left

    def disj(self) -> Formula:
        left = self.conj()
        while self.peek() in ("|", "+"):
            cls = _BIN_TOKENS[self.take()]
            left = cls(left, self.conj())
        return left

    def conj(self) -> Formula:
        left = self.unary()
        while self.peek() in ("&", "*"):
            cls = _BIN_TOKENS[self.take()]
            left = cls(left, self.unary())
        return left

    def unary(self) -> Formula:
        tok = self.peek()
        if tok == "~":
            self.take()
            return Not(self.unary())
        if tok == "-":
            self.take()
            return Conf(self.unary())
        return self.atom()

    def atom(self) -> Formula:
        tok = self.peek()
        if tok == "(":
            self.take()
            inner = self.imp()
            self.expect(")")
            return inner
        if tok and VAR_RE.fullmatch(tok):
            self.take()
            return Var(tok)
        found = tok or "end of input"
        raise ParseError(f"expected a formula, found {found!r}", self.pos())

    def formula_list(self, stop: tuple[str, ...]) -> list[Formula]:
        items: list[Formula] = []
        if self.peek() in stop:
            return items
        items.append(self.imp())
        while self.peek() == ",":
            self.take()
            items.append(self.imp())
        return items

    def finish(self):
        if self.peek() != "":
            raise ParseError(f"unexpected {self.peek()!r}", self.pos())


def parse(text: str) -> Formula:
    p = _Parser(text)
    phi = p.imp()
    p.finish()
    return phi


def parse_equation(text: str) -> Equation:
    p = _Parser(text)
    lhs = p.imp()
    p.expect("=")
    rhs = p.imp()
    p.finish()
    return Equation(lhs, rhs)


def parse_sequent_text(text: str) -> tuple[list[Formula], list[Formula]]:
    """Split "a, b |- c, d" into its two formula lists (either may be empty)."""
    p = _Parser(text)
    left = p.formula_list(("|-",))
    p.expect("|-")
    right = p.formula_list(("",))
    p.finish()
    return left, right


def enumerate_formulas(max_size: int, names=("p", "q", "r"), unary=(Not,),
                       binary=(And, Or, KAnd, KOr)) -> list[list[Formula]]:
    """All formulas by exact size: result[s] lists the formulas with s nodes."""
    by_size: list[list[Formula]] = [[] for _ in range(max_size + 1)]
    if max_size >= 1:
        by_size[1] = [Var(n) for n in names]
    for s in range(2, max_size + 1):
        out = by_size[s]
        for cls in unary:
            out.extend(cls(a) for a in by_size[s - 1])
        for ls in range(1, s - 1):
            rs = s - 1 - ls
            for cls in binary:
                for a in by_size[ls]:
                    out.extend(cls(a, b) for b in by_size[rs])
    return by_size


def random_formula(rng, max_size: int, names=("p", "q", "r"), unary=(Not,),
                   binary=(And, Or, KAnd, KOr)) -> Formula:
    """A random formula with at most max_size nodes."""
    if max_size <= 1:
        return Var(rng.choice(names))
    roll = rng.random()
    if roll < 0.25:
        return Var(rng.choice(names))
    if roll < 0.45 or max_size < 3:
        return rng.choice(unary)(random_formula(rng, max_size - 1, names, unary, binary))
    left_budget = rng.randint(1, max_size - 2)
    cls = rng.choice(binary)
    return cls(random_formula(rng, left_budget, names, unary, binary),
               random_formula(rng, max_size - 1 - left_budget, names, unary, binary))


def random_term(rng, max_depth: int, names=("x", "y", "z"), unary=(Not,),
                binary=(And, Or, KAnd, KOr, Imp)) -> Formula:
    if max_depth == 0 or rng.random() < 0.3:
        return Var(rng.choice(names))
    if rng.random() < 0.2:
        return rng.choice(unary)(random_term(rng, max_depth - 1, names, unary, binary))
    cls = rng.choice(binary)
    return cls(random_term(rng, max_depth - 1, names, unary, binary),
               random_term(rng, max_depth - 1, names, unary, binary))
