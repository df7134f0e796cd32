import itertools

import pytest

from bilattice_logic.bilattice_core import (five, four, four_imp, nine, product_bilattice,
                                            product_pre, seven)
from bilattice_logic.filters_congruences import (Congruence, MatrixModel,
                                                 NotDistributive, NotInterlaced, NotPrimeBifilter,
                                                 congruences_of_reduct, deductive_filter_predicates,
                                                 edpc_principal, enumerate_bifilters,
                                                 enumerate_congruences, enumerate_prime_bifilters,
                                                 ff_closure, generated_congruence, is_bifilter,
                                                 is_congruence, is_reduced, is_reduced_lb_model,
                                                 is_subdirectly_irreducible, leibniz_congruence,
                                                 leibniz_lb_characterization, malcev_value, members,
                                                 pi_f, prime_extension_exists, principal_congruence,
                                                 to_mask)
from bilattice_logic.lattice_core import NotAPoset, boolean_lattice, chain, diamond, product_lattice
from helpers import boolean_implicative


def labels(A, mask):
    return {A.label(a) for a in members(mask)}


def test_congruence_lattice_basics():
    F = four()
    cons = enumerate_congruences(F)
    assert len(cons) == 2
    assert is_subdirectly_irreducible(F)
    assert is_subdirectly_irreducible(four_imp())
    # without negation FOUR is a product of two-element lattices
    assert not is_subdirectly_irreducible(product_pre(chain(2), chain(2)))


def test_principal_congruence_and_join():
    L = chain(4)
    theta = principal_congruence(L, 1, 2)
    assert theta.blocks() == [[0], [1, 2], [3]]
    both = theta.join(principal_congruence(L, 2, 3))
    assert both.blocks() == [[0], [1, 2, 3]]
    assert both == generated_congruence(L, [(1, 2), (2, 3)])
    assert theta.meet(both) == theta and theta.leq(both)
    assert is_congruence(L, both)
    assert not is_congruence(diamond(3), Congruence.from_relation(5, lambda a, b: {a, b} <= {1, 2}))


def test_congruence_join_is_transitive_closure():
    # in the 8-element Boolean lattice the join of two atoms' congruences is their generated one
    B = boolean_lattice(3)
    a = principal_congruence(B, 0, 1)
    b = principal_congruence(B, 0, 2)
    assert a.join(b) == generated_congruence(B, [(0, 1), (0, 2)])


def test_bifilters_of_four():
    F = four()
    assert [labels(F, m) for m in enumerate_bifilters(F)] == [{"t", "⊤"}, {"⊥", "f", "t", "⊤"}]
    assert [labels(F, m) for m in enumerate_prime_bifilters(F)] == [{"t", "⊤"}]
    assert ff_closure(F, []) == 0
    assert labels(F, ff_closure(F, [F.element("⊤")])) == {"t", "⊤"}
    assert labels(F, ff_closure(F, [F.element("⊥")])) == {"⊥", "f", "t", "⊤"}
    assert not is_bifilter(F, to_mask([F.element("t")]))


def test_bifilters_need_interlacing():
    with pytest.raises(NotInterlaced):
        enumerate_bifilters(seven())


def test_nine_leibniz_not_monotone():
    N = nine()
    f1 = ff_closure(N, [N.element("⊤")])
    f2 = ff_closure(N, [N.element("b")])
    assert f1 & f2 == f1 and f1 != f2
    t, e = N.element("t"), N.element("e")
    om1 = leibniz_congruence(MatrixModel(N, f1))
    om2 = leibniz_congruence(MatrixModel(N, f2))
    assert om1.related(t, e) and not om2.related(t, e)
    assert not is_reduced(MatrixModel(N, f1))


def test_leibniz_characterisations_agree():
    for B in (four(), nine(), product_bilattice(boolean_lattice(2))):
        for m in enumerate_bifilters(B):
            M = MatrixModel(B, m)
            om = leibniz_congruence(M)
            assert leibniz_lb_characterization(M, "or") == om
            assert leibniz_lb_characterization(M, "kor") == om
            assert is_reduced_lb_model(M) == (om.is_identity)


def test_reduced_model_needs_distributivity():
    with pytest.raises(NotDistributive):
        is_reduced_lb_model(MatrixModel(five(), 0))


def test_canonical_map_to_four():
    for B in (four(), nine(), product_bilattice(boolean_lattice(2))):
        for m in enumerate_prime_bifilters(B):
            h = pi_f(MatrixModel(B, m))
            assert len(h) == B.n
    with pytest.raises(NotPrimeBifilter):
        pi_f(MatrixModel(four(), 0b1111))


def test_prime_extension():
    N = nine()
    top, bot = N.element("⊤"), N.element("⊥")
    assert prime_extension_exists(N, to_mask([top]), to_mask([bot]))
    assert not prime_extension_exists(N, to_mask([top]), to_mask([top]))


def test_reduct_congruences():
    B = product_pre(chain(2), chain(3))
    assert len(congruences_of_reduct(B, "t")) == len(enumerate_congruences(product_lattice(chain(2), chain(3))))


def test_deductive_filters_match_bifilters():
    for A in (four_imp(), boolean_implicative(2)):
        for mask in range(1, 1 << A.n):
            preds = deductive_filter_predicates(A, mask)
            assert len(set(preds.values())) == 1, (mask, preds)


def test_edpc_and_malcev_on_four_imp():
    A = four_imp()
    r = range(A.n)
    for a, b, c, d in itertools.product(r, r, r, r):
        in_cg, same = edpc_principal(A, a, b, c, d)
        assert in_cg == same
    for a, b in itertools.product(r, r):
        assert malcev_value(A, a, a, b) == b
        assert malcev_value(A, a, b, b) == a


def test_carrier_cap():
    # 81 elements exceeds the shared 64-element cap before any enumeration starts
    with pytest.raises(NotAPoset):
        product_bilattice(product_lattice(chain(3), chain(3)))
