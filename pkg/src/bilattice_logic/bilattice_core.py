"""Pre-bilattices, bilattices and their conflation/implication expansions.

Elements are plain indices shared by the truth lattice (`tlat`, ops and/or)
and the knowledge lattice (`klat`, ops kand/kor). Operation tables are
exposed under the names used by the syntax module: and, or, kand, kor,
neg, conf, imp.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .lattice_core import (ClassicalImplicativeLattice, FiniteLattice, InvolutiveLattice,
                           chain, classical_implicative, is_distributive,
                           lattice_from_covers, lattice_from_json, lattice_from_order)
from .syntax import (BINARY, UNARY, Equation, Formula, Var, operations_used, parse_equation,
                     variables)

MAX_IDENTITY_VARS = 4


class AxiomViolation(ValueError):
    def __init__(self, axiom: str, detail: str = ""):
        super().__init__(f"{axiom} fails" + (f": {detail}" if detail else ""))
        self.axiom = axiom


class SignatureMismatch(ValueError):
    pass


class TooManyVariables(ValueError):
    pass


@dataclass(frozen=True, eq=False, kw_only=True)
class PreBilattice:
    tlat: FiniteLattice
    klat: FiniteLattice
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.tlat.n != self.klat.n:
            raise ValueError("truth and knowledge lattices need the same carrier")

    @property
    def n(self) -> int:
        return self.tlat.n

    def operations(self) -> dict[str, tuple]:
        return {"and": self.tlat.meet, "or": self.tlat.join,
                "kand": self.klat.meet, "kor": self.klat.join}

    @cached_property
    def tables(self) -> dict[str, np.ndarray]:
        return {name: np.array(t, dtype=np.int64) for name, t in self.operations().items()}

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels else str(a)

    def element(self, name) -> int:
        """Look an element up by label (a few ASCII aliases accepted)."""
        if isinstance(name, int):
            return name
        aliases = {"bot": "⊥", "top": "⊤", "bottom": "⊥"}
        name = aliases.get(name, name)
        if self.labels and name in self.labels:
            return self.labels.index(name)
        return int(name)

    # truth constants
    @property
    def f(self) -> int:
        return self.tlat.bottom

    @property
    def t(self) -> int:
        return self.tlat.top

    @property
    def kbot(self) -> int:
        return self.klat.bottom

    @property
    def ktop(self) -> int:
        return self.klat.top

    def to_json(self) -> dict:
        out = {"pre": {"tlat": self.tlat.to_json(), "klat": self.klat.to_json()}}
        if self.labels:
            out["labels"] = list(self.labels)
        return out


@dataclass(frozen=True, eq=False, kw_only=True)
class Bilattice(PreBilattice):
    neg: tuple[int, ...]

    def operations(self):
        return {**super().operations(), "neg": self.neg}

    @property
    def pre(self) -> PreBilattice:
        return PreBilattice(tlat=self.tlat, klat=self.klat, labels=self.labels)

    def to_json(self):
        return {**super().to_json(), "neg": list(self.neg)}


@dataclass(frozen=True, eq=False, kw_only=True)
class ConflatedBilattice(Bilattice):
    conf: tuple[int, ...]

    def operations(self):
        return {**super().operations(), "conf": self.conf}

    @property
    def commutative(self) -> bool:
        return all(self.neg[self.conf[a]] == self.conf[self.neg[a]] for a in range(self.n))

    def to_json(self):
        return {**super().to_json(), "conf": list(self.conf)}


@dataclass(frozen=True, eq=False, kw_only=True)
class ImplicativeBilattice(Bilattice):
    imp: tuple[tuple[int, ...], ...]

    def operations(self):
        return {**super().operations(), "imp": self.imp}

    @property
    def bilattice(self) -> Bilattice:
        return Bilattice(tlat=self.tlat, klat=self.klat, labels=self.labels, neg=self.neg)

    @cached_property
    def top_constant(self) -> int:
        """Value of (a > a) + ~(a > a); raises if it depends on a."""
        values = {self.klat.join[self.imp[a][a]][self.neg[self.imp[a][a]]] for a in range(self.n)}
        if len(values) != 1:
            raise AxiomViolation("top(x) constant", f"values {sorted(values)}")
        return values.pop()

    def to_json(self):
        return {**super().to_json(), "imp": [list(r) for r in self.imp]}


def operations_of(A) -> dict[str, tuple]:
    """Operation tables of any supported algebra (lattices use and/or/neg/imp)."""
    if isinstance(A, PreBilattice):
        return A.operations()
    if isinstance(A, FiniteLattice):
        return {"and": A.meet, "or": A.join}
    if isinstance(A, InvolutiveLattice):
        return {"and": A.base.meet, "or": A.base.join, "neg": A.inv}
    if isinstance(A, ClassicalImplicativeLattice):
        return {"and": A.base.meet, "or": A.base.join, "imp": A.relcomp}
    raise TypeError(f"not an algebra: {type(A).__name__}")


def size_of(A) -> int:
    return A.n


# construction

def _pair_labels(n1: int, n2: int) -> tuple[str, ...]:
    return tuple(f"<{a},{b}>" for a in range(n1) for b in range(n2))


def product_pre(l1: FiniteLattice, l2: FiniteLattice, labels=None) -> PreBilattice:
    """Pairs <a1,a2>, index a1 * l2.n + a2.

    Truth order: a1 <= b1 and b2 <= a2. Knowledge order: coordinatewise.
    """
    pairs = [(a, b) for a in range(l1.n) for b in range(l2.n)]
    n = len(pairs)
    tleq = [[l1.leq[a1][b1] and l2.leq[b2][a2] for (b1, b2) in pairs] for (a1, a2) in pairs]
    kleq = [[l1.leq[a1][b1] and l2.leq[a2][b2] for (b1, b2) in pairs] for (a1, a2) in pairs]
    return PreBilattice(tlat=lattice_from_order(n, tleq), klat=lattice_from_order(n, kleq),
                        labels=tuple(labels) if labels else _pair_labels(l1.n, l2.n))


def product_bilattice(L: FiniteLattice, labels=None) -> Bilattice:
    pre = product_pre(L, L, labels)
    neg = tuple(b * L.n + a for a in range(L.n) for b in range(L.n))
    return Bilattice(tlat=pre.tlat, klat=pre.klat, labels=pre.labels, neg=neg)


def product_conflated(L: InvolutiveLattice, labels=None) -> ConflatedBilattice:
    """Conflation -<a,b> = <b',a'>."""
    base = product_bilattice(L.base, labels)
    m, inv = L.base.n, L.inv
    conf = tuple(inv[b] * m + inv[a] for a in range(m) for b in range(m))
    return ConflatedBilattice(tlat=base.tlat, klat=base.klat, labels=base.labels,
                              neg=base.neg, conf=conf)


def product_implicative(L: ClassicalImplicativeLattice, labels=None) -> ImplicativeBilattice:
    """<a1,a2> > <b1,b2> = <a1\\b1, a1 meet b2>."""
    base = product_bilattice(L.base, labels)
    m = L.base.n
    rc, meet = L.relcomp, L.base.meet
    pairs = [(a, b) for a in range(m) for b in range(m)]
    imp = tuple(tuple(rc[a1][b1] * m + meet[a1][b2] for (b1, b2) in pairs) for (a1, a2) in pairs)
    return ImplicativeBilattice(tlat=base.tlat, klat=base.klat, labels=base.labels,
                                neg=base.neg, imp=imp)


def make_bilattice(pre: PreBilattice, neg) -> Bilattice:
    B = Bilattice(tlat=pre.tlat, klat=pre.klat, labels=pre.labels, neg=tuple(int(x) for x in neg))
    failures = negation_failures(B)
    if failures:
        raise AxiomViolation(failures[0])
    return B


def make_conflated(B: Bilattice, conf) -> ConflatedBilattice:
    C = ConflatedBilattice(tlat=B.tlat, klat=B.klat, labels=B.labels, neg=B.neg,
                           conf=tuple(int(x) for x in conf))
    failures = conflation_failures(C)
    if failures:
        raise AxiomViolation(failures[0])
    return C


def make_implicative(B: Bilattice, imp, check: bool = True) -> ImplicativeBilattice:
    I = ImplicativeBilattice(tlat=B.tlat, klat=B.klat, labels=B.labels, neg=B.neg,
                             imp=tuple(tuple(int(x) for x in row) for row in imp))
    if check:
        failures = implicative_failures(I)
        if failures:
            raise AxiomViolation(failures[0])
    return I


# axiom checks

def negation_failures(B: Bilattice) -> list[str]:
    n, neg, T, K = B.n, B.neg, B.tlat.leq, B.klat.leq
    out = []
    pairs = list(itertools.product(range(n), repeat=2))
    if any(T[a][b] and not T[neg[b]][neg[a]] for a, b in pairs):
        out.append("neg1")
    if any(K[a][b] and not K[neg[a]][neg[b]] for a, b in pairs):
        out.append("neg2")
    if any(neg[neg[a]] != a for a in range(n)):
        out.append("neg3")
    return out


def conflation_failures(C: ConflatedBilattice) -> list[str]:
    n, conf, T, K = C.n, C.conf, C.tlat.leq, C.klat.leq
    out = []
    pairs = list(itertools.product(range(n), repeat=2))
    if any(K[a][b] and not K[conf[b]][conf[a]] for a, b in pairs):
        out.append("con1")
    if any(T[a][b] and not T[conf[a]][conf[b]] for a, b in pairs):
        out.append("con2")
    if any(conf[conf[a]] != a for a in range(n)):
        out.append("con3")
    return out


def _leq_array(L: FiniteLattice) -> np.ndarray:
    return np.array(L.leq, dtype=bool)


def is_interlaced(B: PreBilattice) -> bool:
    """Each of the four operations is monotone for both orders."""
    T, K = _leq_array(B.tlat), _leq_array(B.klat)
    tab = B.tables
    # x <= y implies x o z <= y o z, over all (x, y, z)
    for order, ops in ((T, ("kand", "kor")), (K, ("and", "or"))):
        xs, ys = np.nonzero(order)
        for op in ops:
            left = tab[op][xs]          # rows x o z, shape (pairs, n)
            right = tab[op][ys]
            if not order[left, right].all():
                return False
    return True


DISTRIBUTIVE_OPS = ("and", "or", "kand", "kor")


def is_distributive_pb(B: PreBilattice) -> bool:
    """All twelve laws x o (y * z) = (x o y) * (x o z) for distinct o, *."""
    tab = B.tables
    x, y, z = np.indices((B.n,) * 3)
    for o in DISTRIBUTIVE_OPS:
        for s in DISTRIBUTIVE_OPS:
            if o == s:
                continue
            if not np.array_equal(tab[o][x, tab[s][y, z]], tab[s][tab[o][x, y], tab[o][x, z]]):
                return False
    return True


IMPLICATIVE_AXIOMS = {
    "IB1": ["(x > x) > y = y"],
    "IB2": ["x > (y > z) = (x & y) > z", "(x & y) > z = (x * y) > z"],
    "IB3": ["((x > y) > x) > x = x > x"],
    "IB4": ["(x | y) > z = (x > z) & (y > z)", "(x > z) & (y > z) = (x + y) > z"],
    "IB5": ["x & ((x > y) > (x * y)) = x"],
    "IB6": ["~(x > y) > z = (x & ~y) > z"],
}

# Residuated De Morgan lattice axioms; `top` is a constant, not a variable.
RDM_AXIOMS = {
    "RD0": ["top = ~top"],
    "RD1": ["top > x = x"],
    "RD2": ["x > (y > z) = (x & y) > z"],
    "RD3": ["top & (((x > y) > x) > x) = top"],
    "RD4": ["(x | y) > z = (x > z) & (y > z)"],
    "RD5": ["x & (((x > y) & (~y > ~x)) > y) = x"],
    "RD6": ["~(x > y) > z = (x & ~y) > z"],
}

EDPC_TERM = "({x} > {y}) > (({y} > {x}) > ((~{x} > ~{y}) > ((~{y} > ~{x}) > {z})))"


def edpc_term(x: str, y: str, z: str) -> str:
    return EDPC_TERM.format(x=x, y=y, z=z)


I_ALGEBRA_AXIOMS = {
    "I1": ["(x > x) > y = y"],
    "I2": ["x > (y > z) = (x > y) > (x > z)", "(x > y) > (x > z) = y > (x > z)"],
    "I3": ["((x > y) > x) > x = x > x"],
    "I4": ["x > (~y > z) = ~(x > y) > z"],
    "I5": ["~~x = x"],
    "I6": [f"{edpc_term('x', 'y', 'x')} = {edpc_term('x', 'y', 'y')}"],
}


def _axiom_failures(A, axioms: dict[str, list[str]], constants=None) -> list[str]:
    out = []
    for name, eqs in axioms.items():
        if not all(check_identity(A, parse_equation(e), constants) for e in eqs):
            out.append(name)
    return out


def implicative_failures(B: ImplicativeBilattice) -> list[str]:
    """Names of the failing implicative axioms, bilattice axioms first."""
    out = negation_failures(B)
    if not is_interlaced(B):
        # not an axiom of its own, but every implicative bilattice is interlaced
        out.append("interlaced")
    return out + _axiom_failures(B, IMPLICATIVE_AXIOMS)


def rdm_failures(B: ImplicativeBilattice) -> list[str]:
    """RD0-RD6 on the {and, or, imp, neg, top} reduct, plus the De Morgan base."""
    out = []
    if not is_distributive(B.tlat):
        out.append("DeMorgan")
    return out + _axiom_failures(B, RDM_AXIOMS, {"top": B.top_constant})


def i_algebra_failures(A) -> list[str]:
    return _axiom_failures(A, I_ALGEBRA_AXIOMS)


def kleene_conflated(C: ConflatedBilattice) -> bool:
    return check_identity(C, parse_equation("(x & ~-x) & (y | ~-y) = x & ~-x"))


def classical_conflated(C: ConflatedBilattice) -> bool:
    return check_identity(C, parse_equation("x & (y | ~-y) = x"))


# identity checking

def evaluate(phi: Formula, tables: dict, env: dict):
    """Evaluate a term with numpy tables; env values may be ints or arrays."""
    if isinstance(phi, Var):
        return env[phi.name]
    if isinstance(phi, UNARY):
        return tables[phi.op][evaluate(phi.arg, tables, env)]
    if isinstance(phi, BINARY):
        return tables[phi.op][evaluate(phi.left, tables, env), evaluate(phi.right, tables, env)]
    raise TypeError(phi)


def np_tables(A) -> dict[str, np.ndarray]:
    if isinstance(A, PreBilattice):
        return A.tables
    return {k: np.array(v, dtype=np.int64) for k, v in operations_of(A).items()}


def check_identity(A, eq: Equation | str, constants: dict | None = None) -> bool:
    """True iff the equation holds under every assignment of elements to variables."""
    if isinstance(eq, str):
        eq = parse_equation(eq)
    tables = np_tables(A)
    missing = operations_used(eq.lhs, eq.rhs) - set(tables)
    if missing:
        raise SignatureMismatch(f"operations {sorted(missing)} not in the algebra")
    constants = dict(constants or {})
    names = [v for v in variables(eq.lhs, eq.rhs) if v not in constants]
    if len(names) > MAX_IDENTITY_VARS:
        raise TooManyVariables(f"{len(names)} variables, at most {MAX_IDENTITY_VARS}")
    env = dict(constants)
    if names:
        grids = np.indices((A.n,) * len(names)).reshape(len(names), -1)
        env.update(zip(names, grids))
    lhs = evaluate(eq.lhs, tables, env)
    rhs = evaluate(eq.rhs, tables, env)
    return bool(np.all(np.asarray(lhs) == np.asarray(rhs)))


def identity_counterexample(A, eq: Equation | str, constants=None) -> dict | None:
    """First failing assignment, or None."""
    if isinstance(eq, str):
        eq = parse_equation(eq)
    tables = np_tables(A)
    constants = dict(constants or {})
    names = [v for v in variables(eq.lhs, eq.rhs) if v not in constants]
    for values in itertools.product(range(A.n), repeat=len(names)):
        env = {**constants, **dict(zip(names, values))}
        if evaluate(eq.lhs, tables, env) != evaluate(eq.rhs, tables, env):
            return dict(zip(names, values))
    return None


# definability of the orders in implicative bilattices

def is_designated_unit(B: ImplicativeBilattice, a: int) -> bool:
    """E(a): a = a > a."""
    return B.imp[a][a] == a


def t_order_from_imp(B: ImplicativeBilattice) -> list[list[bool]]:
    n, imp, neg, kand = B.n, B.imp, B.neg, B.klat.meet
    return [[is_designated_unit(B, kand[imp[a][b]][imp[neg[b]][neg[a]]]) for b in range(n)]
            for a in range(n)]


def k_order_from_imp(B: ImplicativeBilattice) -> list[list[bool]]:
    n, imp, neg, meet = B.n, B.imp, B.neg, B.tlat.meet
    return [[is_designated_unit(B, meet[imp[a][b]][imp[neg[a]][neg[b]]]) for b in range(n)]
            for a in range(n)]


# named algebras

FOUR_LABELS = ("⊥", "f", "t", "⊤")
NINE_LABELS = ("⊥", "a", "f", "b", "c", "d", "t", "e", "⊤")


def four() -> Bilattice:
    return product_bilattice(chain(2), FOUR_LABELS)


def four_imp() -> ImplicativeBilattice:
    return product_implicative(classical_implicative(chain(2)), FOUR_LABELS)


def nine() -> Bilattice:
    """3 (.) 3; labels follow the Hasse figure, <x,y> with x,y in {0,1,2}."""
    return product_bilattice(chain(3), NINE_LABELS)


def five() -> Bilattice:
    labels = ("⊥", "a", "f", "t", "⊤")
    bot, a, f, t, top = range(5)
    klat = lattice_from_covers(5, [(bot, a), (a, f), (a, t), (f, top), (t, top)])
    tlat = lattice_from_covers(5, [(f, bot), (f, a), (f, top), (bot, t), (a, t), (top, t)])
    neg = (bot, a, t, f, top)
    return make_bilattice(PreBilattice(tlat=tlat, klat=klat, labels=labels), neg)


def seven() -> Bilattice:
    labels = ("⊥", "a", "b", "c", "f", "t", "⊤")
    bot, a, b, c, f, t, top = range(7)
    klat = lattice_from_covers(7, [(bot, a), (bot, b), (a, c), (b, c), (c, f), (c, t),
                                   (f, top), (t, top)])
    tlat = lattice_from_covers(7, [(f, a), (a, bot), (a, c), (bot, b), (c, b), (b, t),
                                   (f, top), (top, t)])
    neg = (bot, b, a, c, t, f, top)
    return make_bilattice(PreBilattice(tlat=tlat, klat=klat, labels=labels), neg)


NAMED = {"FOUR": four, "FOUR_IMP": four_imp, "FIVE": five, "SEVEN": seven, "NINE": nine}


def named_algebra(name: str):
    try:
        return NAMED[name.upper()]()
    except KeyError:
        raise KeyError(f"unknown algebra {name!r}; choose from {sorted(NAMED)}") from None


# JSON

def algebra_from_json(data: dict):
    """Most specific class the data describes (validated)."""
    pre_data = data["pre"]
    labels = data.get("labels")
    pre = PreBilattice(tlat=lattice_from_json(pre_data["tlat"]),
                       klat=lattice_from_json(pre_data["klat"]),
                       labels=tuple(labels) if labels else None)
    if "neg" not in data:
        return pre
    B = make_bilattice(pre, data["neg"])
    if "imp" in data and "conf" in data:
        raise ValueError("algebras with both conflation and implication are not supported")
    if "imp" in data:
        return make_implicative(B, data["imp"], check=False)
    if "conf" in data:
        return make_conflated(B, data["conf"])
    return B
