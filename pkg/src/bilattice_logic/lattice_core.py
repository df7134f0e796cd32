"""Finite lattices given by their order relation, plus the enriched classes
(involution, relative complement) used as decomposition targets."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

MAX_ELEMENTS = 64


class LatticeError(ValueError):
    pass


class NotAPoset(LatticeError):
    pass


class NotALattice(LatticeError):
    def __init__(self, pair):
        super().__init__(f"pair {pair} has no infimum or no supremum")
        self.pair = pair


class NoComplement(LatticeError):
    def __init__(self, a, b):
        super().__init__(f"no relative complement for ({a}, {b})")
        self.pair = (a, b)


class NoTop(LatticeError):
    pass


class NotInvolutive(LatticeError):
    pass


class NotAntitone(LatticeError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteLattice:
    """A lattice on {0..n-1}. Build with `lattice_from_order`."""

    n: int
    leq: tuple[tuple[bool, ...], ...]
    meet: tuple[tuple[int, ...], ...] = field(repr=False)
    join: tuple[tuple[int, ...], ...] = field(repr=False)

    def __eq__(self, other):
        return isinstance(other, FiniteLattice) and self.leq == other.leq

    def __hash__(self):
        return hash(self.leq)

    def le(self, a: int, b: int) -> bool:
        return self.leq[a][b]

    def lt(self, a: int, b: int) -> bool:
        return a != b and self.leq[a][b]

    @cached_property
    def top(self) -> int:
        return next(a for a in range(self.n) if all(self.leq[b][a] for b in range(self.n)))

    @cached_property
    def bottom(self) -> int:
        return next(a for a in range(self.n) if all(self.leq[a][b] for b in range(self.n)))

    @cached_property
    def up_masks(self) -> tuple[int, ...]:
        """Bitmask of the principal filter of each element."""
        return tuple(sum(1 << b for b in range(self.n) if self.leq[a][b]) for a in range(self.n))

    @cached_property
    def heights(self) -> tuple[int, ...]:
        h = [0] * self.n
        for a in sorted(range(self.n), key=lambda x: sum(self.leq[y][x] for y in range(self.n))):
            below = [b for b in range(self.n) if self.lt(b, a)]
            h[a] = 1 + max((h[b] for b in below), default=-1)
        return tuple(h)

    def covers(self) -> list[tuple[int, int]]:
        """Pairs (a, b) with a covered by b."""
        out = []
        for a in range(self.n):
            for b in range(self.n):
                if self.lt(a, b) and not any(self.lt(a, c) and self.lt(c, b) for c in range(self.n)):
                    out.append((a, b))
        return out

    def dual(self) -> "FiniteLattice":
        return lattice_from_order(self.n, [[self.leq[b][a] for b in range(self.n)] for a in range(self.n)])

    def to_json(self) -> dict:
        return {"n": self.n, "leq": [list(row) for row in self.leq]}


def lattice_from_order(n: int, leq) -> FiniteLattice:
    """Validate a partial order and derive its meet and join tables."""
    if not 1 <= n <= MAX_ELEMENTS:
        raise NotAPoset(f"element count {n} outside 1..{MAX_ELEMENTS}")
    rel = tuple(tuple(bool(leq[a][b]) for b in range(n)) for a in range(n))
    if len(leq) != n or any(len(row) != n for row in leq):
        raise NotAPoset("order relation is not n x n")
    for a in range(n):
        if not rel[a][a]:
            raise NotAPoset(f"not reflexive at {a}")
        for b in range(n):
            if a != b and rel[a][b] and rel[b][a]:
                raise NotAPoset(f"not antisymmetric at ({a}, {b})")
    for a, b, c in itertools.product(range(n), repeat=3):
        if rel[a][b] and rel[b][c] and not rel[a][c]:
            raise NotAPoset(f"not transitive at ({a}, {b}, {c})")

    def bound(a, b, lower):
        if lower:
            cands = [c for c in range(n) if rel[c][a] and rel[c][b]]
            best = [c for c in cands if all(rel[d][c] for d in cands)]
        else:
            cands = [c for c in range(n) if rel[a][c] and rel[b][c]]
            best = [c for c in cands if all(rel[c][d] for d in cands)]
        if not best:
            raise NotALattice((a, b))
        return best[0]

    meet = [[0] * n for _ in range(n)]
    join = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            meet[a][b] = meet[b][a] = bound(a, b, True)
            join[a][b] = join[b][a] = bound(a, b, False)
    return FiniteLattice(n, rel, tuple(map(tuple, meet)), tuple(map(tuple, join)))


def lattice_from_covers(n: int, covers) -> FiniteLattice:
    """Build from a list of cover pairs (a below b) by reflexive-transitive closure."""
    rel = [[a == b for b in range(n)] for a in range(n)]
    for a, b in covers:
        rel[a][b] = True
    for k in range(n):
        for a in range(n):
            if rel[a][k]:
                for b in range(n):
                    if rel[k][b]:
                        rel[a][b] = True
    return lattice_from_order(n, rel)


def lattice_from_json(data: dict) -> FiniteLattice:
    return lattice_from_order(int(data["n"]), data["leq"])


def chain(n: int) -> FiniteLattice:
    return lattice_from_order(n, [[a <= b for b in range(n)] for a in range(n)])


def boolean_lattice(k: int) -> FiniteLattice:
    """Subsets of a k-set, elements are bitmasks."""
    n = 1 << k
    return lattice_from_order(n, [[a & b == a for b in range(n)] for a in range(n)])


def diamond(atoms: int) -> FiniteLattice:
    """0 < atoms < 1; diamond(2) is the square, diamond(3) is M3."""
    n = atoms + 2
    top = n - 1
    return lattice_from_covers(n, [(0, i) for i in range(1, top)] + [(i, top) for i in range(1, top)])


def pentagon() -> FiniteLattice:
    return lattice_from_covers(5, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)])


def product_lattice(l1: FiniteLattice, l2: FiniteLattice) -> FiniteLattice:
    """Coordinatewise order; pair (a, b) gets index a * l2.n + b."""
    n = l1.n * l2.n
    pairs = [(a, b) for a in range(l1.n) for b in range(l2.n)]
    return lattice_from_order(n, [[l1.leq[a1][b1] and l2.leq[a2][b2] for (b1, b2) in pairs]
                                  for (a1, a2) in pairs])


def is_distributive(L: FiniteLattice) -> bool:
    m, j = L.meet, L.join
    r = range(L.n)
    for x, y, z in itertools.product(r, r, r):
        if m[x][j[y][z]] != j[m[x][y]][m[x][z]]:
            return False
        if j[x][m[y][z]] != m[j[x][y]][j[x][z]]:
            return False
    return True


def _relative_complements(L: FiniteLattice, a: int, b: int) -> list[int]:
    target = L.meet[a][b]
    return [c for c in range(L.n) if L.meet[a][c] == target and L.join[a][c] == L.top]


def is_relatively_complemented(L: FiniteLattice) -> bool:
    """True iff every a has a complement relative to every interval [a meet b, 1]."""
    return all(_relative_complements(L, a, b) for a in range(L.n) for b in range(L.n))


def relative_complement(L: FiniteLattice, a: int, b: int) -> int:
    """The c with a meet c = a meet b and a join c = 1 (written a\\b)."""
    found = _relative_complements(L, a, b)
    if not found:
        raise NoComplement(a, b)
    return found[0]


def is_dual_disjunctive(L: FiniteLattice) -> bool:
    """For all a < b some c has a join c below top while b join c is top."""
    if L.n < 1:
        raise NoTop("empty carrier")
    top = L.top
    for a in range(L.n):
        for b in range(L.n):
            if L.lt(a, b) and not any(L.join[a][c] != top and L.join[b][c] == top
                                      for c in range(L.n)):
                return False
    return True


@dataclass(frozen=True, eq=False)
class InvolutiveLattice:
    base: FiniteLattice
    inv: tuple[int, ...]
    tags: frozenset[str] = frozenset()

    @property
    def n(self) -> int:
        return self.base.n

    def to_json(self) -> dict:
        return {**self.base.to_json(), "inv": list(self.inv)}


def check_involution(L: FiniteLattice, inv) -> InvolutiveLattice:
    """Validate an order-reversing involution and classify it.

    Tags: "DeMorgan" (distributive base), "Kleene", "Boolean".
    """
    inv = tuple(int(x) for x in inv)
    if len(inv) != L.n or any(not 0 <= x < L.n for x in inv):
        raise NotInvolutive("table is not a map on the carrier")
    for a in range(L.n):
        if inv[inv[a]] != a:
            raise NotInvolutive(f"inv(inv({a})) != {a}")
    for a in range(L.n):
        for b in range(L.n):
            if L.leq[a][b] and not L.leq[inv[b]][inv[a]]:
                raise NotAntitone(f"{a} <= {b} but inv({b}) not <= inv({a})")
    tags = set()
    m, j = L.meet, L.join
    r = range(L.n)
    if is_distributive(L):
        tags.add("DeMorgan")
        if all(m[m[x][inv[x]]][j[y][inv[y]]] == m[x][inv[x]] for x in r for y in r):
            tags.add("Kleene")
        if all(m[x][j[y][inv[y]]] == x for x in r for y in r):
            tags.add("Boolean")
    return InvolutiveLattice(L, inv, frozenset(tags))


@dataclass(frozen=True, eq=False)
class ClassicalImplicativeLattice:
    base: FiniteLattice
    relcomp: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return self.base.n

    def to_json(self) -> dict:
        return {**self.base.to_json(), "relcomp": [list(r) for r in self.relcomp]}


def classical_implicative(L: FiniteLattice, relcomp=None) -> ClassicalImplicativeLattice:
    """Attach (or compute and check) the relative complement table a\\b."""
    if not is_distributive(L):
        raise LatticeError("classical implicative lattices are distributive")
    if relcomp is None:
        relcomp = [[relative_complement(L, a, b) for b in range(L.n)] for a in range(L.n)]
    table = tuple(tuple(int(x) for x in row) for row in relcomp)
    for a in range(L.n):
        for b in range(L.n):
            c = table[a][b]
            if L.meet[a][c] != L.meet[a][b] or L.join[a][c] != L.top:
                raise NoComplement(a, b)
    return ClassicalImplicativeLattice(L, table)


def _signature(L: FiniteLattice, a: int):
    indeg = sum(L.leq[b][a] for b in range(L.n))
    outdeg = sum(L.leq[a][b] for b in range(L.n))
    return (indeg, outdeg, L.heights[a])


def lattice_iso(l1: FiniteLattice, l2: FiniteLattice) -> list[int] | None:
    """An order isomorphism l1 -> l2 as an index list, or None.

    Backtracking over elements of l1, candidates restricted to equal
    (in-degree, out-degree, height) signature; lowest index first.
    """
    if l1.n != l2.n:
        return None
    n = l1.n
    sig1 = [_signature(l1, a) for a in range(n)]
    sig2 = [_signature(l2, a) for a in range(n)]
    if sorted(sig1) != sorted(sig2):
        return None
    order = sorted(range(n), key=lambda a: (sig1[a][2], a))
    cands = {a: [b for b in range(n) if sig2[b] == sig1[a]] for a in range(n)}
    image = [-1] * n
    used = [False] * n

    def extend(k: int) -> bool:
        if k == n:
            return True
        a = order[k]
        for b in cands[a]:
            if used[b]:
                continue
            ok = True
            for prev in order[:k]:
                pb = image[prev]
                if l1.leq[a][prev] != l2.leq[b][pb] or l1.leq[prev][a] != l2.leq[pb][b]:
                    ok = False
                    break
            if ok:
                image[a] = b
                used[b] = True
                if extend(k + 1):
                    return True
                used[b] = False
        image[a] = -1
        return False

    return list(image) if extend(0) else None


def enumerate_lattices(n: int) -> list[FiniteLattice]:
    """All lattices with n elements, one per isomorphism class.

    Bottom is 0 and top is n-1; the middle elements range over naturally
    labelled orders (a < b only if a < b as integers).
    """
    if n == 1:
        return [chain(1)]
    if n == 2:
        return [chain(2)]
    middle = list(range(1, n - 1))
    pairs = list(itertools.combinations(middle, 2))
    found: list[FiniteLattice] = []
    buckets: dict[tuple, list[FiniteLattice]] = {}
    for bits in range(1 << len(pairs)):
        rel = [[a == b or a == 0 or b == n - 1 for b in range(n)] for a in range(n)]
        for i, (a, b) in enumerate(pairs):
            if bits >> i & 1:
                rel[a][b] = True
        if any(rel[a][b] and rel[b][c] and not rel[a][c]
               for a, b in pairs for c in range(b + 1, n - 1)):
            continue
        try:
            L = lattice_from_order(n, rel)
        except LatticeError:
            continue
        key = tuple(sorted(_signature(L, a) for a in range(n)))
        bucket = buckets.setdefault(key, [])
        if any(lattice_iso(L, other) is not None for other in bucket):
            continue
        bucket.append(L)
        found.append(L)
    return found
