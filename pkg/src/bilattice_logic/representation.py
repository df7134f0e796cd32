"""Decompositions of interlaced pre-bilattices and their expansions into
products of lattices, with explicit isomorphisms checked exhaustively."""
from __future__ import annotations

from dataclasses import dataclass

from .bilattice_core import (AxiomViolation, Bilattice, ConflatedBilattice, ImplicativeBilattice,
                             PreBilattice, implicative_failures, is_interlaced, product_bilattice,
                             product_conflated, product_implicative, product_pre)
from .filters_congruences import Congruence, NotInterlaced, is_homomorphism
from .lattice_core import (FiniteLattice, check_involution, classical_implicative,
                           lattice_from_order)


class NotCommutative(ValueError):
    pass


class DecompositionError(AssertionError):
    pass


@dataclass(frozen=True)
class Decomposition:
    factors: tuple
    target: object           # the product algebra the source is mapped onto
    iso: tuple[int, ...]     # source element -> target element
    inverse: tuple[int, ...]  # target element -> source element

    def to_json(self) -> dict:
        return {"factors": [f.to_json() for f in self.factors],
                "iso": list(self.iso), "inverse": list(self.inverse)}


def _require_interlaced(B):
    if not is_interlaced(B):
        raise NotInterlaced("decomposition needs an interlaced pre-bilattice")


def sim1(B: PreBilattice) -> Congruence:
    """a ~1 b iff a | b = a * b."""
    _require_interlaced(B)
    j, km = B.tlat.join, B.klat.meet
    return Congruence.from_relation(B.n, lambda a, b: j[a][b] == km[a][b])


def sim2(B: PreBilattice) -> Congruence:
    """a ~2 b iff a & b = a * b."""
    _require_interlaced(B)
    m, km = B.tlat.meet, B.klat.meet
    return Congruence.from_relation(B.n, lambda a, b: m[a][b] == km[a][b])


def factor_witness(B: PreBilattice, a: int, b: int) -> int:
    """c = (a & (a + b)) * (b | (a + b)), which has a ~1 c ~2 b."""
    m, j, km, kj = B.tlat.meet, B.tlat.join, B.klat.meet, B.klat.join
    s = kj[a][b]
    return km[m[a][s]][j[b][s]]


def quotient_lattice(L: FiniteLattice, theta: Congruence) -> tuple[FiniteLattice, list[int]]:
    """L / theta with classes numbered by their least element; also the
    projection as a list."""
    reps = sorted(set(theta.classes))
    index = {r: i for i, r in enumerate(reps)}
    proj = [index[c] for c in theta.classes]
    k = len(reps)
    leq = [[theta.classes[L.meet[x][y]] == theta.classes[x] for y in reps] for x in reps]
    return lattice_from_order(k, leq), proj


def sublattice(L: FiniteLattice, elems: list[int]) -> FiniteLattice:
    return lattice_from_order(len(elems), [[L.leq[a][b] for b in elems] for a in elems])


def _finish(source, target, iso: list[int], ops, factors, inverse=None) -> Decomposition:
    if sorted(iso) != list(range(target.n)):
        raise DecompositionError("map is not a bijection")
    if not is_homomorphism(source, target, iso, ops):
        raise DecompositionError("map is not a homomorphism")
    inv = [0] * target.n
    for a, b in enumerate(iso):
        inv[b] = a
    if inverse is not None and list(inverse) != inv:
        raise DecompositionError("explicit inverse disagrees with the map")
    return Decomposition(tuple(factors), target, tuple(iso), tuple(inv))


PRE_OPS = ("and", "or", "kand", "kor")


def decompose_pre(B: PreBilattice) -> Decomposition:
    """B ~ (B/~1) (.) (B/~2), both factors read off the knowledge lattice."""
    s1, s2 = sim1(B), sim2(B)
    f1, p1 = quotient_lattice(B.klat, s1)
    f2, p2 = quotient_lattice(B.klat, s2)
    target = product_pre(f1, f2)
    iso = [p1[a] * f2.n + p2[a] for a in range(B.n)]
    return _finish(B, target, iso, PRE_OPS, (f1, f2))


def reg(B: Bilattice, a: int) -> int:
    """(a | (a * ~a)) + ~(a | (a * ~a))."""
    neg, j, km, kj = B.neg, B.tlat.join, B.klat.meet, B.klat.join
    x = j[a][km[a][neg[a]]]
    return kj[x][neg[x]]


def regular_set(B: Bilattice) -> list[int]:
    return [a for a in range(B.n) if B.neg[a] == a]


BIL_OPS = PRE_OPS + ("neg",)


def _regular_factor(B: Bilattice):
    _require_interlaced(B)
    regs = regular_set(B)
    L = sublattice(B.klat, regs)
    index = {a: i for i, a in enumerate(regs)}
    iso = [index[reg(B, a)] * L.n + index[reg(B, B.neg[a])] for a in range(B.n)]
    m, j, km, kj = B.tlat.meet, B.tlat.join, B.klat.meet, B.klat.join
    inverse = [kj[km[a][j[a][b]]][km[b][m[a][b]]] for a in regs for b in regs]
    return regs, L, index, iso, inverse


def decompose_bilattice(B: Bilattice, method: str = "reg") -> Decomposition:
    """B ~ L (.) L with L the regular elements under the knowledge order.

    method "reg" uses a -> <reg(a), reg(~a)> and checks the explicit inverse;
    method "sim1" uses a -> <[a]1, [~a]1> with L = B/~1.
    """
    if method == "sim1":
        s1 = sim1(B)
        L, proj = quotient_lattice(B.klat, s1)
        iso = [proj[a] * L.n + proj[B.neg[a]] for a in range(B.n)]
        return _finish(B, product_bilattice(L), iso, BIL_OPS, (L,))
    regs, L, index, iso, inverse = _regular_factor(B)
    return _finish(B, product_bilattice(L), iso, BIL_OPS, (L,), inverse)


def decompose_conflated(B: ConflatedBilattice) -> Decomposition:
    _require_interlaced(B)
    if not B.commutative:
        raise NotCommutative("conflation does not commute with negation")
    regs, L, index, iso, inverse = _regular_factor(B)
    if any(B.conf[a] not in index for a in regs):
        raise DecompositionError("regular elements not closed under conflation")
    inv = check_involution(L, [index[B.conf[a]] for a in regs])
    return _finish(B, product_conflated(inv), iso, BIL_OPS + ("conf",), (inv,), inverse)


def decompose_implicative(B: ImplicativeBilattice) -> Decomposition:
    """Factor: regular elements with a\\b = reg(a > b)."""
    failures = implicative_failures(B)
    if failures:
        raise AxiomViolation(failures[0])
    regs, L, index, iso, inverse = _regular_factor(B)
    relcomp = [[index[reg(B, B.imp[a][b])] for b in regs] for a in regs]
    C = classical_implicative(L, relcomp)
    return _finish(B, product_implicative(C), iso, BIL_OPS + ("imp",), (C,), inverse)


def negative_cone_factor(B: ImplicativeBilattice):
    """The elements a <=t top, ordered by truth, with a\\b = (a > (a & b)) & top."""
    top = B.top_constant
    cone = [a for a in range(B.n) if B.tlat.leq[a][top]]
    index = {a: i for i, a in enumerate(cone)}
    L = sublattice(B.tlat, cone)
    m = B.tlat.meet
    relcomp = [[index[m[B.imp[a][m[a][b]]][top]] for b in cone] for a in cone]
    return classical_implicative(L, relcomp), cone
