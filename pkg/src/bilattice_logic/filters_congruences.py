"""Bifilters, congruences, Leibniz congruences and related matrix checks.

Subsets are bitmasks over the carrier; congruences are class vectors whose
entries are the least element of each class.
"""
from __future__ import annotations

from dataclasses import dataclass

from .bilattice_core import (ImplicativeBilattice, PreBilattice, SignatureMismatch,
                             four, is_distributive_pb, is_interlaced, operations_of)
from .lattice_core import MAX_ELEMENTS, FiniteLattice

MAX_CARRIER = MAX_ELEMENTS


class CarrierTooLarge(ValueError):
    pass


class NotInterlaced(ValueError):
    pass


class NotPrimeBifilter(ValueError):
    pass


class NotDistributive(ValueError):
    pass


def members(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def to_mask(elements) -> int:
    out = 0
    for a in elements:
        out |= 1 << a
    return out


def _check_size(A):
    if A.n > MAX_CARRIER:
        raise CarrierTooLarge(f"{A.n} elements, at most {MAX_CARRIER}")


# congruences

@dataclass(frozen=True)
class Congruence:
    classes: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.classes)

    def related(self, a: int, b: int) -> bool:
        return self.classes[a] == self.classes[b]

    def blocks(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for a, c in enumerate(self.classes):
            out.setdefault(c, []).append(a)
        return list(out.values())

    @property
    def is_identity(self) -> bool:
        return all(c == a for a, c in enumerate(self.classes))

    @property
    def is_total(self) -> bool:
        return all(c == 0 for c in self.classes)

    def leq(self, other: "Congruence") -> bool:
        return all(other.classes[a] == other.classes[c] for a, c in enumerate(self.classes))

    def meet(self, other: "Congruence") -> "Congruence":
        keys = list(zip(self.classes, other.classes))
        return Congruence(tuple(keys.index(k) for k in keys))

    def join(self, other: "Congruence") -> "Congruence":
        """Equivalence join; in any algebra this is also the congruence join."""
        uf = _UnionFind(self.n)
        for a in range(self.n):
            uf.union(a, self.classes[a])
            uf.union(a, other.classes[a])
        return uf.congruence()

    @classmethod
    def identity(cls, n: int) -> "Congruence":
        return cls(tuple(range(n)))

    @classmethod
    def total(cls, n: int) -> "Congruence":
        return cls((0,) * n)

    @classmethod
    def from_relation(cls, n: int, related) -> "Congruence":
        uf = _UnionFind(n)
        for a in range(n):
            for b in range(a + 1, n):
                if related(a, b):
                    uf.union(a, b)
        return uf.congruence()

    def to_json(self) -> list[list[int]]:
        return self.blocks()


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra < rb:
            self.parent[rb] = ra
        else:
            self.parent[ra] = rb
        return True

    def congruence(self) -> Congruence:
        return Congruence(tuple(self.find(a) for a in range(len(self.parent))))


def _saturate(A, uf: _UnionFind):
    """Merge classes until the partition is compatible with every operation."""
    ops = operations_of(A)
    n = A.n
    changed = True
    while changed:
        changed = False
        for a in range(n):
            r = uf.find(a)
            if r == a:
                continue
            for table in ops.values():
                if isinstance(table[0], int):
                    if uf.union(table[a], table[r]):
                        changed = True
                    continue
                for c in range(n):
                    if uf.union(table[a][c], table[r][c]):
                        changed = True
                    if uf.union(table[c][a], table[c][r]):
                        changed = True


def is_congruence(A, theta: Congruence) -> bool:
    ops = operations_of(A)
    cls = theta.classes
    for table in ops.values():
        if isinstance(table[0], int):
            if any(cls[table[a]] != cls[table[cls[a]]] for a in range(A.n)):
                return False
            continue
        for a in range(A.n):
            for b in range(A.n):
                if cls[table[a][b]] != cls[table[cls[a]][cls[b]]]:
                    return False
    return True


def principal_congruence(A, a: int, b: int) -> Congruence:
    """Least congruence identifying a and b."""
    _check_size(A)
    uf = _UnionFind(A.n)
    uf.union(a, b)
    _saturate(A, uf)
    return uf.congruence()


def generated_congruence(A, pairs) -> Congruence:
    _check_size(A)
    uf = _UnionFind(A.n)
    for a, b in pairs:
        uf.union(a, b)
    _saturate(A, uf)
    return uf.congruence()


def enumerate_congruences(A) -> list[Congruence]:
    """Con(A), as joins of principal congruences; sorted by class vector."""
    _check_size(A)
    n = A.n
    principals = {principal_congruence(A, a, b) for a in range(n) for b in range(a + 1, n)}
    found = {Congruence.identity(n)}
    frontier = list(found)
    while frontier:
        nxt = []
        for theta in frontier:
            for p in principals:
                j = theta.join(p)
                if j not in found:
                    found.add(j)
                    nxt.append(j)
        frontier = nxt
    return sorted(found, key=lambda c: c.classes)


def is_subdirectly_irreducible(A) -> bool:
    """Con(A) minus the identity has a least element (trivial algebras excluded)."""
    nontrivial = [c for c in enumerate_congruences(A) if not c.is_identity]
    if not nontrivial:
        return False
    monolith = nontrivial[0]
    for c in nontrivial[1:]:
        monolith = monolith.meet(c)
    return not monolith.is_identity


# bifilters

_KINDS = {
    # (truth side, knowledge side): "up" means filter, "down" means ideal
    "FF": ("up", "up"),
    "II": ("down", "down"),
    "FI": ("up", "down"),
    "IF": ("down", "up"),
}


def _require_interlaced(B):
    if not is_interlaced(B):
        raise NotInterlaced("operation needs an interlaced pre-bilattice")


def _closure_steps(B: PreBilattice, kind: str):
    tdir, kdir = _KINDS[kind]
    tl, kl = B.tlat, B.klat
    tcl = tl.meet if tdir == "up" else tl.join
    kcl = kl.meet if kdir == "up" else kl.join
    tle = tl.leq if tdir == "up" else [list(col) for col in zip(*tl.leq)]
    kle = kl.leq if kdir == "up" else [list(col) for col in zip(*kl.leq)]
    return tcl, kcl, tle, kle


def ff_closure(B: PreBilattice, X, kind: str = "FF") -> int:
    """Least bifilter (or biideal / mixed variant) containing X, as a bitmask.

    kind "FF" closes under filters of both orders; "II", "FI", "IF" swap
    one or both orders for ideals. The empty set generates the empty set.
    """
    _require_interlaced(B)
    elems = set(members(X) if isinstance(X, int) else X)
    if not elems:
        return 0
    tcl, kcl, tle, kle = _closure_steps(B, kind)
    n = B.n
    changed = True
    while changed:
        changed = False
        cur = sorted(elems)
        for a in cur:
            for b in range(n):
                if b not in elems and (tle[a][b] or kle[a][b]):
                    elems.add(b)
                    changed = True
            for b in cur:
                for c in (tcl[a][b], kcl[a][b]):
                    if c not in elems:
                        elems.add(c)
                        changed = True
    return to_mask(elems)


def is_bifilter(B: PreBilattice, mask: int, kind: str = "FF") -> bool:
    if mask == 0:
        return False
    tcl, kcl, tle, kle = _closure_steps(B, kind)
    elems = members(mask)
    for a in elems:
        for b in range(B.n):
            if (tle[a][b] or kle[a][b]) and not mask >> b & 1:
                return False
        for b in elems:
            if not (mask >> tcl[a][b] & 1 and mask >> kcl[a][b] & 1):
                return False
    return True


def enumerate_bifilters(B: PreBilattice, kind: str = "FF") -> list[int]:
    """All nonempty bifilters, sorted by bitmask.

    Every nonempty bifilter of a finite algebra is the principal truth filter
    of its meet, so candidates are the principal filters that pass the check.
    """
    _require_interlaced(B)
    _check_size(B)
    tdir = _KINDS[kind][0]
    out = set()
    for a in range(B.n):
        if tdir == "up":
            mask = to_mask(b for b in range(B.n) if B.tlat.leq[a][b])
        else:
            mask = to_mask(b for b in range(B.n) if B.tlat.leq[b][a])
        if is_bifilter(B, mask, kind):
            out.add(mask)
    return sorted(out)


def is_prime_bifilter(B: PreBilattice, mask: int) -> bool:
    """Proper bifilter splitting both joins."""
    full = (1 << B.n) - 1
    if mask == full or not is_bifilter(B, mask):
        return False
    for a in range(B.n):
        for b in range(B.n):
            for table in (B.tlat.join, B.klat.join):
                if mask >> table[a][b] & 1 and not (mask >> a & 1 or mask >> b & 1):
                    return False
    return True


def enumerate_prime_bifilters(B: PreBilattice) -> list[int]:
    return [m for m in enumerate_bifilters(B) if is_prime_bifilter(B, m)]


def lattice_filters(L: FiniteLattice) -> list[int]:
    """Nonempty filters of a finite lattice (all principal), sorted."""
    return sorted(L.up_masks)


def is_prime_filter(L: FiniteLattice, mask: int) -> bool:
    if mask == (1 << L.n) - 1 or mask == 0:
        return False
    for a in range(L.n):
        for b in range(L.n):
            if mask >> L.join[a][b] & 1 and not (mask >> a & 1 or mask >> b & 1):
                return False
    return True


# matrices

@dataclass(frozen=True)
class MatrixModel:
    algebra: object
    designated: int

    @property
    def n(self) -> int:
        return self.algebra.n

    def contains(self, a: int) -> bool:
        return bool(self.designated >> a & 1)


def is_compatible(theta: Congruence, mask: int) -> bool:
    """The designated set is a union of classes."""
    return all((mask >> a & 1) == (mask >> c & 1) for a, c in enumerate(theta.classes))


def leibniz_congruence(M: MatrixModel) -> Congruence:
    """Largest congruence compatible with the designated set."""
    _check_size(M.algebra)
    out = Congruence.identity(M.n)
    for theta in enumerate_congruences(M.algebra):
        if is_compatible(theta, M.designated):
            out = out.join(theta)
    return out


def leibniz_lb_characterization(M: MatrixModel, join: str = "or") -> Congruence:
    """<a,b> related iff a and b (and their negations) have the same
    join-complements into the designated set."""
    B = M.algebra
    table = B.operations()[join]
    neg = B.neg

    def profile(a):
        return tuple(M.contains(table[a][c]) for c in range(B.n))

    keys = [(profile(a), profile(neg[a])) for a in range(B.n)]
    return Congruence.from_relation(B.n, lambda a, b: keys[a] == keys[b])


def is_reduced(M: MatrixModel) -> bool:
    return leibniz_congruence(M).is_identity


def is_reduced_lb_model(M: MatrixModel) -> bool:
    """Separation condition on a distributive bilattice; cross-checked
    against the Leibniz congruence being the identity."""
    B = M.algebra
    if not is_distributive_pb(B):
        raise NotDistributive("reduced-model condition needs a distributive bilattice")
    join, neg, tle = B.tlat.join, B.neg, B.tlat.leq
    separated = True
    for a in range(B.n):
        for b in range(B.n):
            if a == b or not tle[a][b]:
                continue
            if not any((not M.contains(join[a][c]) and M.contains(join[b][c]))
                       or (M.contains(join[neg[a]][c]) and not M.contains(join[neg[b]][c]))
                       for c in range(B.n)):
                separated = False
                break
        if not separated:
            break
    direct = is_reduced(M)
    if separated != direct:
        raise AssertionError("separation condition and Leibniz congruence disagree")
    return separated


def pi_f(M: MatrixModel) -> list[int]:
    """The canonical map onto FOUR determined by a prime bifilter.

    a goes to top, t, f or bottom according to membership of a and ~a.
    Verified to be a surjective homomorphism reflecting the designated set.
    """
    B = M.algebra
    if not is_prime_bifilter(B, M.designated):
        raise NotPrimeBifilter("designated set is not a prime bifilter")
    F4 = four()
    bot, f, t, top = (F4.element(x) for x in ("⊥", "f", "t", "⊤"))
    out = []
    for a in range(B.n):
        pos, neg = M.contains(a), M.contains(B.neg[a])
        out.append(top if pos and neg else t if pos else f if neg else bot)
    if not is_homomorphism(B, F4, out) or set(out) != set(range(4)):
        raise AssertionError("canonical map is not an epimorphism")
    tr = to_mask([t, top])
    if any(M.contains(a) != bool(tr >> out[a] & 1) for a in range(B.n)):
        raise AssertionError("designated set is not the preimage of Tr")
    return out


def is_homomorphism(A, B, h, ops=None) -> bool:
    oa, ob = operations_of(A), operations_of(B)
    names = ops or [k for k in oa if k in ob]
    for name in names:
        ta, tb = oa[name], ob[name]
        if isinstance(ta[0], int):
            if any(h[ta[a]] != tb[h[a]] for a in range(A.n)):
                return False
        else:
            for a in range(A.n):
                for b in range(A.n):
                    if h[ta[a][b]] != tb[h[a]][h[b]]:
                        return False
    return True


# implicative bilattices

def deductive_filter_predicates(B: ImplicativeBilattice, mask: int) -> dict[str, bool]:
    """Four filter notions that coincide on implicative bilattices."""
    top = B.top_constant
    above_top = to_mask(a for a in range(B.n) if B.tlat.leq[top][a])
    t_filter = mask != 0 and all(
        mask >> B.tlat.meet[a][b] & 1 for a in members(mask) for b in members(mask)) and all(
        mask >> b & 1 for a in members(mask) for b in range(B.n) if B.tlat.leq[a][b])
    k_filter = mask != 0 and all(
        mask >> B.klat.meet[a][b] & 1 for a in members(mask) for b in members(mask)) and all(
        mask >> b & 1 for a in members(mask) for b in range(B.n) if B.klat.leq[a][b])
    return {
        "bifilter": is_bifilter(B, mask),
        "deductive": is_deductive_filter(B, mask),
        "t_filter_with_top": t_filter and bool(mask >> top & 1),
        "k_filter_with_designated": k_filter and mask & above_top == above_top,
    }


def is_deductive_filter(B: ImplicativeBilattice, mask: int) -> bool:
    """Contains every a >=t top and is closed under modus ponens."""
    top = B.top_constant
    for a in range(B.n):
        if B.tlat.leq[top][a] and not mask >> a & 1:
            return False
    for a in members(mask):
        for b in range(B.n):
            if mask >> B.imp[a][b] & 1 and not mask >> b & 1:
                return False
    return True


def edpc_principal(A, a: int, b: int, c: int, d: int) -> tuple[bool, bool]:
    """(<c,d> in Cg(a,b), p(a,b,c) == p(a,b,d)) with p the EDPC term."""
    ops = operations_of(A)
    if "imp" not in ops or "neg" not in ops:
        raise SignatureMismatch("needs implication and negation")
    theta = principal_congruence(A, a, b)
    return theta.related(c, d), edpc_value(A, a, b, c) == edpc_value(A, a, b, d)


def edpc_value(A, x: int, y: int, z: int) -> int:
    ops = operations_of(A)
    imp, neg = ops["imp"], ops["neg"]
    inner = imp[imp[neg[y]][neg[x]]][z]
    inner = imp[imp[neg[x]][neg[y]]][inner]
    inner = imp[imp[y][x]][inner]
    return imp[imp[x][y]][inner]


def malcev_value(B: ImplicativeBilattice, x: int, y: int, z: int) -> int:
    """((x -> y) > z) & ((z -> y) > x) & (x | z), with -> the strong implication."""
    imp, neg, meet, join = B.imp, B.neg, B.tlat.meet, B.tlat.join

    def arrow(a, b):
        return meet[imp[a][b]][imp[neg[b]][neg[a]]]

    return meet[meet[imp[arrow(x, y)][z]][imp[arrow(z, y)][x]]][join[x][z]]


def congruences_of_reduct(B: PreBilattice, which: str) -> list[Congruence]:
    """Con of the truth ("t") or knowledge ("k") lattice reduct."""
    return enumerate_congruences(B.tlat if which == "t" else B.klat)


def prime_extension_exists(B: PreBilattice, filt: int, ideal: int) -> bool:
    """Some prime bifilter contains filt and misses ideal."""
    return any(m & filt == filt and m & ideal == 0 for m in enumerate_prime_bifilters(B))

