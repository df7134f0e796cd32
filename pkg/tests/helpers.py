"""Shared fixtures and small utilities for the test suite."""
from bilattice_logic.bilattice_core import product_implicative
from bilattice_logic.lattice_core import boolean_lattice, classical_implicative
from bilattice_logic.logic_lb import TR, eval_four

# row/column order used when writing FOUR tables by hand
TABLE_ORDER = ("f", "⊥", "⊤", "t")


def table_rows(A, table, order=TABLE_ORDER):
    idx = [A.element(x) for x in order]
    return [" ".join(A.label(table[a][b]) for b in idx) for a in idx]


def boolean_implicative(k: int):
    """The implicative bilattice built on the 2^k Boolean lattice."""
    return product_implicative(classical_implicative(boolean_lattice(k)))


# Gentzen rules as (name, conclusion, premises), written out independently of the prover;
# g and d stand for side contexts

GENTZEN_TABLE = [
    ("and-left", "g, p & q |- d", ["g, p, q |- d"]),
    ("and-right", "g |- d, p & q", ["g |- d, p", "g |- d, q"]),
    ("negand-left", "g, ~(p & q) |- d", ["g, ~p |- d", "g, ~q |- d"]),
    ("negand-right", "g |- d, ~(p & q)", ["g |- d, ~p, ~q"]),
    ("or-left", "g, p | q |- d", ["g, p |- d", "g, q |- d"]),
    ("or-right", "g |- d, p | q", ["g |- d, p, q"]),
    ("negor-left", "g, ~(p | q) |- d", ["g, ~p, ~q |- d"]),
    ("negor-right", "g |- d, ~(p | q)", ["g |- d, ~p", "g |- d, ~q"]),
    ("kand-left", "g, p * q |- d", ["g, p, q |- d"]),
    ("kand-right", "g |- d, p * q", ["g |- d, p", "g |- d, q"]),
    ("negkand-left", "g, ~(p * q) |- d", ["g, ~p, ~q |- d"]),
    ("negkand-right", "g |- d, ~(p * q)", ["g |- d, ~p", "g |- d, ~q"]),
    ("kor-left", "g, p + q |- d", ["g, p |- d", "g, q |- d"]),
    ("kor-right", "g |- d, p + q", ["g |- d, p, q"]),
    ("negkor-left", "g, ~(p + q) |- d", ["g, ~p |- d", "g, ~q |- d"]),
    ("negkor-right", "g |- d, ~(p + q)", ["g |- d, ~p, ~q"]),
    ("negneg-left", "g, ~~p |- d", ["g, p |- d"]),
    ("negneg-right", "g |- d, ~~p", ["g |- d, p"]),
]
CUT = ("cut", "g |- d", ["g |- d, p", "g, p |- d"])


def sequent_holds_at(s, h) -> bool:
    """Some left formula undesignated or some right formula designated under h."""
    return (any(eval_four(x, h) not in TR for x in s.left)
            or any(eval_four(x, h) in TR for x in s.right))
