import pytest
from hypothesis import given, settings, strategies as st

from bilattice_logic.lattice_core import (LatticeError, NoComplement, NotALattice, NotAntitone,
                                          NotAPoset, NotInvolutive, boolean_lattice, chain,
                                          check_involution, classical_implicative, diamond,
                                          enumerate_lattices, is_distributive, is_dual_disjunctive,
                                          is_relatively_complemented, lattice_from_covers,
                                          lattice_from_json, lattice_from_order, lattice_iso,
                                          pentagon, product_lattice)


def test_chain_tables():
    L = chain(3)
    assert L.meet[1][2] == 1 and L.join[0][1] == 1
    assert (L.bottom, L.top) == (0, 2)


def test_rejects_non_poset_and_non_lattice():
    with pytest.raises(NotAPoset):
        lattice_from_order(2, [[1, 1], [1, 1]])
    # two incomparable maximal elements
    with pytest.raises(NotALattice) as e:
        lattice_from_covers(3, [(0, 1), (0, 2)])
    assert e.value.pair == (1, 2)


def test_classic_non_distributive():
    assert not is_distributive(diamond(3))
    assert not is_distributive(pentagon())
    assert is_distributive(boolean_lattice(3))


def test_product_and_iso():
    sq = product_lattice(chain(2), chain(2))
    assert lattice_iso(sq, boolean_lattice(2)) is not None
    assert lattice_iso(chain(4), boolean_lattice(2)) is None
    assert lattice_iso(pentagon(), pentagon().dual()) is not None


def test_json_roundtrip():
    L = pentagon()
    assert lattice_from_json(L.to_json()) == L


# number of lattices up to isomorphism, known values for n = 1..7
@pytest.mark.parametrize("n,count", [(1, 1), (2, 1), (3, 1), (4, 2), (5, 5), (6, 15), (7, 53)])
def test_enumerate_lattices_counts(n, count):
    lats = enumerate_lattices(n)
    assert len(lats) == count
    for i, a in enumerate(lats):
        for b in lats[i + 1:]:
            assert lattice_iso(a, b) is None


def test_involutions():
    inv = check_involution(chain(3), [2, 1, 0])
    assert "Kleene" in inv.tags and "Boolean" not in inv.tags
    inv = check_involution(boolean_lattice(2), [3, 2, 1, 0])
    assert "Boolean" in inv.tags
    with pytest.raises(NotInvolutive):
        check_involution(chain(3), [1, 2, 0])
    with pytest.raises(NotAntitone):
        check_involution(chain(3), [0, 1, 2])


def test_relative_complement_on_booleans():
    C = classical_implicative(boolean_lattice(2))
    # in a Boolean lattice a\b = complement(a) join b
    for a in range(4):
        for b in range(4):
            assert C.relcomp[a][b] == (3 ^ a) | b
    with pytest.raises(NoComplement):
        classical_implicative(chain(3))
    with pytest.raises(LatticeError):
        classical_implicative(diamond(3))


def test_finite_classical_implicative_are_boolean():
    # among distributive lattices up to 8 elements: relatively complemented
    # iff dual disjunctive iff Boolean
    booleans = [boolean_lattice(k) for k in range(4)]
    for n in range(1, 9):
        for L in enumerate_lattices(n):
            if not is_distributive(L):
                continue
            is_bool = any(lattice_iso(L, B) is not None for B in booleans)
            assert is_relatively_complemented(L) == is_bool
            assert is_dual_disjunctive(L) == is_bool


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4))
def test_product_of_chains_laws(m, n):
    L = product_lattice(chain(m), chain(n))
    assert is_distributive(L)
    r = range(L.n)
    assert all(L.meet[a][L.join[a][b]] == a for a in r for b in r)
