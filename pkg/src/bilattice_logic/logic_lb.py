"""The logic LB over {and, or, kand, kor, neg}: four-valued consequence,
clause normal forms, a Hilbert proof checker and a Gentzen prover."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .bilattice_core import four
from .filters_congruences import CarrierTooLarge, MatrixModel
from .syntax import (And, Equation, Formula, KAnd, KOr, Not, Or, Var, match, operations_used,
                     parse, parse_sequent_text, to_text, variables)

MAX_VARS = 12
MATRIX_MAX_VARS = 6
MATRIX_MAX_CARRIER = 16
LB_OPS = frozenset({"neg", "and", "or", "kand", "kor"})

FOUR = four()
TR = frozenset({FOUR.element("t"), FOUR.element("⊤")})


class TooManyVariables(ValueError):
    pass


class BadStep(ValueError):
    def __init__(self, index: int, reason: str):
        super().__init__(f"step {index}: {reason}")
        self.index = index
        self.reason = reason


class DepthExceeded(RuntimeError):
    pass


def check_language(*formulas: Formula, allowed=LB_OPS):
    extra = operations_used(*formulas) - allowed
    if extra:
        raise ValueError(f"connectives {sorted(extra)} are not in this language")


# semantics

def eval_four(phi: Formula, h: dict, algebra=FOUR) -> int:
    """Value of phi under h (variable -> element index or label)."""
    env = {k: algebra.element(v) for k, v in h.items()}
    ops = algebra.operations()

    def go(f):
        if isinstance(f, Var):
            return env[f.name]
        if isinstance(f, Not):
            return ops["neg"][go(f.arg)]
        return ops[f.op][go(f.left)][go(f.right)]

    return go(phi)


def value_arrays(formulas, names: list[str], algebra, fixed: dict | None = None):
    """Values of each formula over all assignments of `names` (numpy, C order)."""
    tables = dict(algebra.tables)
    tables.update({k: np.array(v, dtype=np.int64) for k, v in algebra.operations().items()
                   if k not in tables})
    env = dict(fixed or {})
    if names:
        grid = np.indices((algebra.n,) * len(names)).reshape(len(names), -1)
        env.update(zip(names, grid))
    cache: dict[Formula, np.ndarray] = {}

    def go(f):
        got = cache.get(f)
        if got is not None:
            return got
        if isinstance(f, Var):
            out = env[f.name]
        elif not hasattr(f, "left"):
            out = tables[f.op][go(f.arg)]
        else:
            out = tables[f.op][go(f.left), go(f.right)]
        cache[f] = out
        return out

    return [np.broadcast_to(go(f), (algebra.n ** len(names),)) for f in formulas]


def _designated_mask(algebra, designated) -> np.ndarray:
    mask = np.zeros(algebra.n, dtype=bool)
    mask[list(designated)] = True
    return mask


def _consequence(gamma, phi, algebra, designated, max_vars, chunk_vars=8) -> bool:
    gamma = list(gamma)
    names = variables(*gamma, phi)
    if len(names) > max_vars:
        raise TooManyVariables(f"{len(names)} variables, at most {max_vars}")
    dmask = _designated_mask(algebra, designated)
    outer, inner = names[:max(0, len(names) - chunk_vars)], names[max(0, len(names) - chunk_vars):]
    for values in itertools.product(range(algebra.n), repeat=len(outer)):
        fixed = dict(zip(outer, values))
        arrays = value_arrays(gamma + [phi], inner, algebra, fixed)
        ok = np.ones(arrays[-1].shape, dtype=bool)
        for arr in arrays[:-1]:
            ok &= dmask[arr]
        if np.any(ok & ~dmask[arrays[-1]]):
            return False
    return True


def consequence_lb(gamma, phi: Formula) -> bool:
    """Gamma |= phi in the matrix <FOUR, Tr>, by brute force."""
    gamma = list(gamma)
    check_language(*gamma, phi)
    return _consequence(gamma, phi, FOUR, TR, MAX_VARS)


def consequence_matrix(M: MatrixModel, gamma, phi: Formula) -> bool:
    """Gamma |= phi in an arbitrary matrix (small carriers only)."""
    if M.algebra.n > MATRIX_MAX_CARRIER:
        raise CarrierTooLarge(f"{M.algebra.n} elements, at most {MATRIX_MAX_CARRIER}")
    gamma = list(gamma)
    designated = [a for a in range(M.n) if M.contains(a)]
    return _consequence(gamma, phi, M.algebra, designated, MATRIX_MAX_VARS)


# normal forms
#
# A literal is (name, positive); a clause is a frozenset of literals read as
# their disjunction; a normal form is a frozenset of clauses read as their
# conjunction.

Literal = tuple[str, bool]
Clause = frozenset
NormalForm = frozenset


def _disjoin(a: NormalForm, b: NormalForm) -> NormalForm:
    return frozenset(c | d for c in a for d in b)


@lru_cache(maxsize=None)
def normal_form(phi: Formula) -> NormalForm:
    if isinstance(phi, Var):
        return frozenset({frozenset({(phi.name, True)})})
    if isinstance(phi, (And, KAnd)):
        return normal_form(phi.left) | normal_form(phi.right)
    if isinstance(phi, (Or, KOr)):
        return _disjoin(normal_form(phi.left), normal_form(phi.right))
    if isinstance(phi, Not):
        return _negated_normal_form(phi.arg)
    raise ValueError(f"connective {type(phi).__name__} is not in this language")


def _negated_normal_form(phi: Formula) -> NormalForm:
    if isinstance(phi, Var):
        return frozenset({frozenset({(phi.name, False)})})
    if isinstance(phi, Not):
        return normal_form(phi.arg)
    left, right = normal_form(Not(phi.left)), normal_form(Not(phi.right))
    # negation swaps the truth lattice and keeps the knowledge lattice
    if isinstance(phi, (And, KOr)):
        return _disjoin(left, right)
    if isinstance(phi, (Or, KAnd)):
        return left | right
    raise ValueError(f"connective {type(phi).__name__} is not in this language")


def nf_to_formula(nf: NormalForm) -> Formula:
    """The normal form as an and-conjunction of or-clauses (canonical order)."""
    def lit(l):
        return Var(l[0]) if l[1] else Not(Var(l[0]))

    clauses = []
    for c in sorted(nf, key=lambda c: sorted(c)):
        lits = [lit(l) for l in sorted(c)]
        clauses.append(_fold(Or, lits))
    return _fold(And, clauses)


def _fold(cls, items):
    out = items[0]
    for x in items[1:]:
        out = cls(out, x)
    return out


def nf_text(nf: NormalForm) -> str:
    return to_text(nf_to_formula(nf))


def decide_nf(gamma, phi: Formula) -> bool:
    """Each clause of nf(phi) must contain (as literal set) a clause of nf(Gamma)."""
    premise_clauses = set()
    for g in gamma:
        premise_clauses |= normal_form(g)
    if not premise_clauses:
        return False
    return all(any(g <= c for g in premise_clauses) for c in normal_form(phi))


# Hilbert calculus

def _rule(*parts: str):
    *premises, conclusion = [parse(p) for p in parts]
    return tuple(premises), conclusion


HILBERT_RULES = {
    "R1": _rule("p & q", "p"),
    "R2": _rule("p & q", "q"),
    "R3": _rule("p", "q", "p & q"),
    "R4": _rule("p", "p | q"),
    "R5": _rule("p | q", "q | p"),
    "R6": _rule("p | p", "p"),
    "R7": _rule("p | (q | r)", "(p | q) | r"),
    "R8": _rule("p | (q & r)", "(p | q) & (p | r)"),
    "R9": _rule("(p | q) & (p | r)", "p | (q & r)"),
    "R10": _rule("p | r", "~~p | r"),
    "R11": _rule("~~p | r", "p | r"),
    "R12": _rule("~(p | q) | r", "(~p & ~q) | r"),
    "R13": _rule("(~p & ~q) | r", "~(p | q) | r"),
    "R14": _rule("~(p & q) | r", "(~p | ~q) | r"),
    "R15": _rule("(~p | ~q) | r", "~(p & q) | r"),
    "R16": _rule("(p * q) | r", "(p & q) | r"),
    "R17": _rule("(p & q) | r", "(p * q) | r"),
    "R18": _rule("(p + q) | r", "(p | q) | r"),
    "R19": _rule("(p | q) | r", "(p + q) | r"),
    "R20": _rule("(~p * ~q) | r", "~(p * q) | r"),
    "R21": _rule("~(p * q) | r", "(~p * ~q) | r"),
    "R22": _rule("(~p + ~q) | r", "~(p + q) | r"),
    "R23": _rule("~(p + q) | r", "(~p + ~q) | r"),
}


@dataclass(frozen=True)
class Step:
    """One line of a Hilbert derivation: rule is "premise" or a rule name."""
    formula: Formula
    rule: str = "premise"
    refs: tuple[int, ...] = ()


def rule_instance_matches(name: str, premises, conclusion, rules=HILBERT_RULES) -> bool:
    pats, concl = rules[name]
    if len(pats) != len(premises):
        return False
    sub: dict | None = {}
    for pat, f in zip(pats, premises):
        sub = match(pat, f, sub)
        if sub is None:
            return False
    return match(concl, conclusion, sub) is not None


def check_hilbert_lb(steps, gamma, phi: Formula) -> bool:
    """Validate a derivation of phi from gamma; raises BadStep on the first bad line."""
    gamma = set(gamma)
    if not steps:
        raise BadStep(0, "empty derivation")
    for i, step in enumerate(steps):
        if step.rule == "premise":
            if step.formula not in gamma:
                raise BadStep(i, "not a premise")
            continue
        if step.rule not in HILBERT_RULES:
            raise BadStep(i, f"unknown rule {step.rule}")
        if any(not 0 <= r < i for r in step.refs):
            raise BadStep(i, "reference to a later or missing step")
        premises = [steps[r].formula for r in step.refs]
        if not rule_instance_matches(step.rule, premises, step.formula):
            raise BadStep(i, f"not an instance of {step.rule}")
    if steps[-1].formula != phi:
        raise BadStep(len(steps) - 1, "last step is not the goal")
    return True


def plus_steps(steps: list[Step], source: int, rule: str, target: Formula) -> list[Step]:
    """Derived single-premise rule phi / psi from rule (phi | r) / (psi | r).

    Appends: phi | psi (R4), psi | psi (rule), psi (R6).
    """
    phi = steps[source].formula
    k = len(steps)
    return steps + [Step(Or(phi, target), "R4", (source,)),
                    Step(Or(target, target), rule, (k,)),
                    Step(target, "R6", (k + 1,))]


# sequents

@dataclass(frozen=True)
class Sequent:
    left: frozenset
    right: frozenset

    def __post_init__(self):
        if not self.left or not self.right:
            raise ValueError("both sides of a sequent must be nonempty")

    def __str__(self):
        return f"{_side(self.left)} |- {_side(self.right)}"


def _side(fs) -> str:
    return ", ".join(sorted(to_text(f) for f in fs))


def sequent(left, right) -> Sequent:
    return Sequent(frozenset(left), frozenset(right))


def parse_sequent(text: str) -> Sequent:
    left, right = parse_sequent_text(text)
    return sequent(left, right)


def big_and(fs) -> Formula:
    return _fold(And, sorted(fs, key=to_text))


def big_or(fs) -> Formula:
    return _fold(Or, sorted(fs, key=to_text))


def sequent_valid(s: Sequent) -> bool:
    """FOUR-validity: the conjunction of the left entails the disjunction of the right."""
    return consequence_lb([big_and(s.left)], big_or(s.right))


# Gentzen calculus
#
# A logical rule is keyed by the principal formula's connective and side.
# Its premises keep the side formulas and add the principal's components,
# either all in one premise ("join") or one per premise ("split").

_L, _R = "left", "right"


def _components(f: Formula):
    """(connective key, components) for a principal formula, or None for literals."""
    if isinstance(f, Not):
        g = f.arg
        if isinstance(g, Var):
            return None
        if isinstance(g, Not):
            return "negneg", (g.arg,)
        return "neg" + g.op, (Not(g.left), Not(g.right))
    if isinstance(f, Var):
        return None
    return f.op, (f.left, f.right)


# (connective key, side) -> rule name
GENTZEN_RULES = {
    ("and", _L): "and-left", ("and", _R): "and-right",
    ("negand", _L): "negand-left", ("negand", _R): "negand-right",
    ("or", _L): "or-left", ("or", _R): "or-right",
    ("negor", _L): "negor-left", ("negor", _R): "negor-right",
    ("kand", _L): "kand-left", ("kand", _R): "kand-right",
    ("negkand", _L): "negkand-left", ("negkand", _R): "negkand-right",
    ("kor", _L): "kor-left", ("kor", _R): "kor-right",
    ("negkor", _L): "negkor-left", ("negkor", _R): "negkor-right",
    ("negneg", _L): "negneg-left", ("negneg", _R): "negneg-right",
}

# how each rule splits: "join" = one premise with both components,
# "split" = two premises with one component each
_SHAPE = {
    "and-left": "join", "and-right": "split",
    "negand-left": "split", "negand-right": "join",
    "or-left": "split", "or-right": "join",
    "negor-left": "join", "negor-right": "split",
    "kand-left": "join", "kand-right": "split",
    "negkand-left": "join", "negkand-right": "split",
    "kor-left": "split", "kor-right": "join",
    "negkor-left": "split", "negkor-right": "join",
    "negneg-left": "join", "negneg-right": "join",
}
RULE_NAMES = tuple(_SHAPE) + ("cut",)


def rule_premises(s: Sequent, principal: Formula, side: str,
                  keep_principal: bool = False) -> tuple[str, list[Sequent]] | None:
    """Backward application: premises of the rule whose conclusion is s."""
    comp = _components(principal)
    if comp is None:
        return None
    key, parts = comp
    name = GENTZEN_RULES[(key, side)]
    ctx = s.left if side == _L else s.right
    if not keep_principal:
        ctx = ctx - {principal}
    groups = [parts] if _SHAPE[name] == "join" else [(p,) for p in parts]
    out = []
    for g in groups:
        new = ctx | set(g)
        out.append(Sequent(new, s.right) if side == _L else Sequent(s.left, new))
    return name, out


def is_axiom(s: Sequent) -> bool:
    return bool(s.left & s.right)


@dataclass(frozen=True)
class GStep:
    """A derivation line: rule is "Ax", "cut" or a logical rule name."""
    sequent: Sequent
    rule: str
    refs: tuple[int, ...] = ()


def _rule_matches(name: str, concl: Sequent, prems: list[Sequent]) -> bool:
    if name == "cut":
        # Gamma |- Delta, phi  and  Gamma, phi |- Delta  give  Gamma |- Delta
        if len(prems) != 2:
            return False
        a, b = prems
        return any(a.left == concl.left and a.right == concl.right | {phi}
                   and b.left == concl.left | {phi} and b.right == concl.right
                   for phi in a.right)
    side = _L if name.endswith("-left") else _R
    cands = concl.left if side == _L else concl.right
    for principal in cands:
        for keep in (False, True):
            got = rule_premises(concl, principal, side, keep)
            if got and got[0] == name and sorted(got[1], key=str) == sorted(prems, key=str):
                return True
    return False


def check_gentzen(steps, goal: Sequent) -> bool:
    if not steps:
        raise BadStep(0, "empty derivation")
    for i, st in enumerate(steps):
        if st.rule == "Ax":
            if not is_axiom(st.sequent):
                raise BadStep(i, "not an axiom")
            continue
        if st.rule not in RULE_NAMES:
            raise BadStep(i, f"unknown rule {st.rule}")
        if any(not 0 <= r < i for r in st.refs):
            raise BadStep(i, "reference to a later or missing step")
        if not _rule_matches(st.rule, st.sequent, [steps[r].sequent for r in st.refs]):
            raise BadStep(i, f"not an instance of {st.rule}")
    if steps[-1].sequent != goal:
        raise BadStep(len(steps) - 1, "last step is not the goal")
    return True


def _pick(s: Sequent):
    """Next principal formula: right before left, non-branching first."""
    best = None
    for side, fs in ((_R, s.right), (_L, s.left)):
        for f in sorted(fs, key=to_text):
            comp = _components(f)
            if comp is None:
                continue
            name = GENTZEN_RULES[(comp[0], side)]
            rank = (0 if _SHAPE[name] == "join" else 1, 0 if side == _R else 1)
            if best is None or rank < best[0]:
                best = (rank, f, side)
    return None if best is None else (best[1], best[2])


def prove_gentzen(s: Sequent, depth_limit: int = 20) -> list[GStep] | None:
    """Backward cut-free search. Returns a derivation, None if the sequent is
    unprovable, or raises DepthExceeded if the limit cuts the search short."""
    steps: list[GStep] = []
    memo: dict[Sequent, int | None] = {}
    hit_limit = False

    def go(seq: Sequent, depth: int, path: frozenset) -> int | None:
        nonlocal hit_limit
        if seq in memo:
            return memo[seq]
        if is_axiom(seq):
            steps.append(GStep(seq, "Ax"))
            memo[seq] = len(steps) - 1
            return memo[seq]
        if seq in path:
            return None
        choice = _pick(seq)
        if choice is None:
            memo[seq] = None
            return None
        if depth >= depth_limit:
            hit_limit = True
            return None
        name, prems = rule_premises(seq, *choice)
        refs = []
        for p in prems:
            r = go(p, depth + 1, path | {seq})
            if r is None:
                # every rule here is invertible, so one failed premise settles it
                if not hit_limit:
                    memo[seq] = None
                return None
            refs.append(r)
        steps.append(GStep(seq, name, tuple(refs)))
        memo[seq] = len(steps) - 1
        return memo[seq]

    root = go(s, 0, frozenset())
    if root is None:
        if hit_limit:
            raise DepthExceeded(f"no proof within depth {depth_limit}")
        return None
    return _prune(steps, root)


def _prune(steps: list[GStep], root: int) -> list[GStep]:
    """Keep only the steps reachable from root, renumbered in order."""
    keep = set()
    stack = [root]
    while stack:
        i = stack.pop()
        if i not in keep:
            keep.add(i)
            stack.extend(steps[i].refs)
    order = sorted(keep)
    new = {old: k for k, old in enumerate(order)}
    return [GStep(steps[i].sequent, steps[i].rule, tuple(new[r] for r in steps[i].refs))
            for i in order]


def proof_tree_text(steps: list[GStep]) -> str:
    lines: list[str] = []

    def show(i, indent):
        st = steps[i]
        lines.append(f"{'  ' * indent}{st.sequent}   [{st.rule}]")
        for r in st.refs:
            show(r, indent + 1)

    show(len(steps) - 1, 0)
    return "\n".join(lines)


def proof_json(steps: list[GStep]) -> list[dict]:
    return [{"left": sorted(map(to_text, st.sequent.left)),
             "right": sorted(map(to_text, st.sequent.right)),
             "rule": st.rule, "refs": list(st.refs)} for st in steps]


def proof_from_json(data) -> list[GStep]:
    return [GStep(sequent([parse(x) for x in d["left"]], [parse(x) for x in d["right"]]),
                  d["rule"], tuple(d.get("refs", ()))) for d in data]


# algebraizability of the sequent calculus

def tau_gentzen(s: Sequent) -> Equation:
    g, d = big_and(s.left), big_or(s.right)
    return Equation(And(g, KAnd(g, d)), g)


def rho_gentzen(eq: Equation) -> list[Sequent]:
    phi, psi = eq.lhs, eq.rhs
    return [sequent([phi], [psi]), sequent([Not(phi)], [Not(psi)]),
            sequent([psi], [phi]), sequent([Not(psi)], [Not(phi)])]


# Tarski-style properties, tested as mutual derivability of generator sets

def equivalent_sets(a, b) -> bool:
    """C(a) = C(b) for finite sets of formulas."""
    return all(consequence_lb(a, y) for y in b) and all(consequence_lb(b, x) for x in a)


def tarski_properties(gamma, phi: Formula, psi: Formula, probes) -> dict[str, bool]:
    """Check the closure equalities on one instance; `probes` are the
    formulas used to compare closures that are not finitely given."""
    gamma = list(gamma)

    def closure(premises):
        return frozenset(x for x in probes if consequence_lb(premises, x))

    both = closure(gamma + [phi]) & closure(gamma + [psi])
    return {
        "PC": equivalent_sets([And(phi, psi)], [phi, psi])
        and equivalent_sets([KAnd(phi, psi)], [phi, psi]),
        "PDI": closure(gamma + [Or(phi, psi)]) == both == closure(gamma + [KOr(phi, psi)]),
        "PDN": equivalent_sets([phi], [Not(Not(phi))]),
        "PDM": all(equivalent_sets([x], [y]) for x, y in (
            (Not(And(phi, psi)), Or(Not(phi), Not(psi))),
            (Not(Or(phi, psi)), And(Not(phi), Not(psi))),
            (Not(KAnd(phi, psi)), KAnd(Not(phi), Not(psi))),
            (Not(KOr(phi, psi)), KOr(Not(phi), Not(psi))))),
    }
