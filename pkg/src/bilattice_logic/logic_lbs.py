"""The logic LB with implication: FOUR-with-implication semantics, the
Hilbert calculus with modus ponens, the deduction transformation and the
translations to and from equations."""
from __future__ import annotations

from dataclasses import dataclass

from .bilattice_core import (AxiomViolation, Bilattice, check_identity, four_imp,
                             implicative_failures, make_implicative)
from .filters_congruences import (MatrixModel, NotPrimeBifilter, is_deductive_filter,
                                  is_prime_bifilter, to_mask)
from .logic_lb import MAX_VARS, BadStep, _consequence, check_language, eval_four
from .syntax import Equation, Formula, Imp, Not, biarrow, equiv, match, parse, to_text

LBS_OPS = frozenset({"neg", "and", "or", "kand", "kor", "imp"})

FOUR_IMP = four_imp()
TR = frozenset({FOUR_IMP.element("t"), FOUR_IMP.element("⊤")})


class InvalidInput(ValueError):
    pass


def eval_four_imp(phi: Formula, h: dict) -> int:
    return eval_four(phi, h, FOUR_IMP)


def consequence_lbs(gamma, phi: Formula) -> bool:
    """Gamma |= phi in <FOUR with implication, Tr>."""
    gamma = list(gamma)
    check_language(*gamma, phi, allowed=LBS_OPS)
    return _consequence(gamma, phi, FOUR_IMP, TR, MAX_VARS)


# axiom schemata; equivalence axioms are stored expanded

def _equiv(a: str, b: str) -> Formula:
    return equiv(parse(a), parse(b))


AXIOMS: dict[str, tuple[Formula, ...]] = {
    "imp1": (parse("p > (q > p)"),),
    "imp2": (parse("(p > (q > r)) > ((p > q) > (p > r))"),),
    "imp3": (parse("((p > q) > p) > p"),),
    "and-imp": (parse("(p & q) > p"), parse("(p & q) > q")),
    "imp-and": (parse("p > (q > (p & q))"),),
    "kand-imp": (parse("(p * q) > p"), parse("(p * q) > q")),
    "imp-kand": (parse("p > (q > (p * q))"),),
    "imp-or": (parse("p > (p | q)"), parse("q > (p | q)")),
    "or-imp": (parse("(p > r) > ((q > r) > ((p | q) > r))"),),
    "imp-kor": (parse("p > (p + q)"), parse("q > (p + q)")),
    "kor-imp": (parse("(p > r) > ((q > r) > ((p + q) > r))"),),
    "neg-and": (_equiv("~(p & q)", "~p | ~q"),),
    "neg-or": (_equiv("~(p | q)", "~p & ~q"),),
    "neg-kand": (_equiv("~(p * q)", "~p * ~q"),),
    "neg-kor": (_equiv("~(p + q)", "~p + ~q"),),
    "neg-imp": (_equiv("~(p > q)", "p & ~q"),),
    "negneg": (_equiv("p", "~~p"),),
}


def axiom_name_of(phi: Formula) -> str | None:
    for name, pats in AXIOMS.items():
        if any(match(p, phi) is not None for p in pats):
            return name
    return None


@dataclass(frozen=True)
class ImpStep:
    """A derivation line. kind is "premise", "axiom" (with the schema name)
    or "mp" with refs (i, j) where step j is step i > formula."""
    formula: Formula
    kind: str = "premise"
    axiom: str | None = None
    refs: tuple[int, ...] = ()

    def to_json(self) -> dict:
        out = {"formula": to_text(self.formula), "kind": self.kind}
        if self.axiom:
            out["axiom"] = self.axiom
        if self.refs:
            out["refs"] = list(self.refs)
        return out


def premise(phi) -> ImpStep:
    return ImpStep(phi)


def axiom(name: str, phi) -> ImpStep:
    return ImpStep(phi, "axiom", name)


def mp(i: int, j: int, phi) -> ImpStep:
    return ImpStep(phi, "mp", None, (i, j))


def steps_from_json(data) -> list[ImpStep]:
    return [ImpStep(parse(d["formula"]), d.get("kind", "premise"), d.get("axiom"),
                    tuple(d.get("refs", ()))) for d in data]


def check_hilbert_lbs(steps, gamma, phi: Formula) -> bool:
    gamma = set(gamma)
    if not steps:
        raise BadStep(0, "empty derivation")
    for k, st in enumerate(steps):
        if st.kind == "premise":
            if st.formula not in gamma:
                raise BadStep(k, "not a premise")
        elif st.kind == "axiom":
            pats = AXIOMS.get(st.axiom)
            if pats is None:
                raise BadStep(k, f"unknown axiom {st.axiom}")
            if all(match(p, st.formula) is None for p in pats):
                raise BadStep(k, f"not an instance of {st.axiom}")
        elif st.kind == "mp":
            if len(st.refs) != 2 or any(not 0 <= r < k for r in st.refs):
                raise BadStep(k, "modus ponens needs two earlier steps")
            i, j = st.refs
            if steps[j].formula != Imp(steps[i].formula, st.formula):
                raise BadStep(k, f"step {j} is not step {i} > this formula")
        else:
            raise BadStep(k, f"unknown step kind {st.kind}")
    if steps[-1].formula != phi:
        raise BadStep(len(steps) - 1, "last step is not the goal")
    return True


def identity_proof(phi: Formula) -> list[ImpStep]:
    """Five lines proving phi > phi."""
    pp = Imp(phi, phi)
    a = Imp(phi, Imp(pp, phi))
    return [
        axiom("imp1", a),
        axiom("imp2", Imp(a, Imp(Imp(phi, pp), pp))),
        mp(0, 1, Imp(Imp(phi, pp), pp)),
        axiom("imp1", Imp(phi, pp)),
        mp(3, 2, pp),
    ]


def ddt_forward(gamma, phi: Formula, psi: Formula, steps) -> list[ImpStep]:
    """Turn a derivation of psi from gamma + {phi} into one of phi > psi from gamma."""
    gamma = set(gamma)
    try:
        check_hilbert_lbs(steps, gamma | {phi}, psi)
    except BadStep as e:
        raise InvalidInput(f"input derivation is invalid: {e}") from e
    out: list[ImpStep] = []
    where: dict[int, int] = {}  # input step -> output step proving phi > it
    for k, st in enumerate(steps):
        chi = st.formula
        if st.kind == "mp":
            i, j = st.refs
            minor, major = where[i], where[j]
            # (phi > (chi_i > chi)) > ((phi > chi_i) > (phi > chi))
            tail = Imp(Imp(phi, steps[i].formula), Imp(phi, chi))
            base = len(out)
            out.append(axiom("imp2", Imp(out[major].formula, tail)))
            out.append(mp(major, base, tail))
            out.append(mp(minor, base + 1, Imp(phi, chi)))
        elif chi == phi:
            base = len(out)
            for s in identity_proof(phi):
                out.append(ImpStep(s.formula, s.kind, s.axiom, tuple(r + base for r in s.refs)))
        else:
            base = len(out)
            out.append(st if st.kind == "axiom" else premise(chi))
            out.append(axiom("imp1", Imp(chi, Imp(phi, chi))))
            out.append(mp(base, base + 1, Imp(phi, chi)))
        where[k] = len(out) - 1
    # trim to what the last line needs
    return _prune(out, where[len(steps) - 1])


def _prune(steps: list[ImpStep], root: int) -> list[ImpStep]:
    keep, stack = set(), [root]
    while stack:
        i = stack.pop()
        if i not in keep:
            keep.add(i)
            stack.extend(steps[i].refs)
    order = sorted(keep)
    new = {old: k for k, old in enumerate(order)}
    return [ImpStep(steps[i].formula, steps[i].kind, steps[i].axiom,
                    tuple(new[r] for r in steps[i].refs)) for i in order]


# algebraizability

def tau_lbs(phi: Formula) -> Equation:
    return Equation(phi, Imp(phi, phi))


def rho_lbs(eq: Equation, style: str = "biarrow") -> list[Formula]:
    """Equivalence formulas for an equation: one biarrow, or four implications."""
    p, q = eq.lhs, eq.rhs
    if style == "biarrow":
        return [biarrow(p, q)]
    if style == "four":
        return [Imp(p, q), Imp(q, p), Imp(Not(p), Not(q)), Imp(Not(q), Not(p))]
    raise ValueError(f"unknown style {style!r}")


def equation_holds_four_imp(eq: Equation) -> bool:
    return check_identity(FOUR_IMP, eq)


# implication on a matrix

def imp_on_matrix(M: MatrixModel):
    """a > b = t if a is undesignated, else b. Returns (algebra, failures)
    where failures lists the implicative axioms the result violates."""
    B: Bilattice = M.algebra
    if not hasattr(B, "neg"):
        raise InvalidInput("the matrix algebra needs a negation")
    t = B.tlat.top
    if not is_prime_bifilter(B, M.designated):
        raise NotPrimeBifilter("designated set is not a prime bifilter")
    imp = [[b if M.contains(a) else t for b in range(B.n)] for a in range(B.n)]
    base = Bilattice(tlat=B.tlat, klat=B.klat, labels=B.labels, neg=B.neg)
    algebra = make_implicative(base, imp, check=False)
    try:
        failures = implicative_failures(algebra)
    except AxiomViolation as e:
        failures = [f"error: {e}"]
    return algebra, failures


def check_deductive_filter(A, F) -> bool:
    mask = F if isinstance(F, int) else to_mask(A.element(x) if isinstance(x, str) else x for x in F)
    return is_deductive_filter(A, mask)


def fusion_value(A, a: int, b: int) -> int:
    """a * b = ~(a -> ~b) computed in A."""
    neg, imp, m = A.neg, A.imp, A.tlat.meet

    def arrow(x, y):
        return m[imp[x][y]][imp[neg[y]][neg[x]]]

    return neg[arrow(a, neg[b])]


def arrow_value(A, a: int, b: int) -> int:
    return A.tlat.meet[A.imp[a][b]][A.imp[A.neg[b]][A.neg[a]]]
