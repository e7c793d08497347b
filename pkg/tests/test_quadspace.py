from fractions import Fraction

import pytest
from hypothesis import given, settings

from fuselift.abgroup import FinAbGroup, all_subgroups, subgroup_generate, trivial_subgroup, whole_group
from fuselift.errors import NotQuadraticError
from fuselift.exactnum import QZ
from fuselift.quadspace import cyclic_space, is_nondegenerate, is_totally_isotropic, make_quadratic_space, perp, radical
from strategies import lattice_data


def qvals(S):
    return [str(S.q(x)) for x in S.elements]


def test_z4_form():
    S = cyclic_space(4, 8)
    assert qvals(S) == ["0", "1/8", "1/2", "1/8"]
    G = S.group
    for r in range(4):
        for s in range(4):
            assert S.b(G(r), G(s)) == QZ(r * s, 4)


def test_trivial_space():
    S = make_quadratic_space(FinAbGroup(()), {FinAbGroup(()).zero: QZ(0)})
    assert is_nondegenerate(S)


def test_non_homogeneous_map_is_rejected():
    G = FinAbGroup((2,))
    with pytest.raises(NotQuadraticError, match="not quadratic"):
        make_quadratic_space(G, {G(0): QZ(0), G(1): QZ(1, 3)})


def test_non_biadditive_map_is_rejected():
    # q(n x) = n^2 q(x) holds on Z3 x Z3 but b fails to be additive
    G = FinAbGroup((3, 3))
    q = {x: QZ(0) for x in G.elements()}
    q[G(1, 1)] = q[G(2, 2)] = QZ(1, 3)
    with pytest.raises(NotQuadraticError, match="not quadratic"):
        make_quadratic_space(G, q)


def test_missing_value_is_an_error():
    G = FinAbGroup((2,))
    with pytest.raises(ValueError):
        make_quadratic_space(G, {G(0): QZ(0)})


def test_radical_examples():
    assert radical(cyclic_space(4, 8)).order == 1
    G = FinAbGroup((2, 2))
    zero = make_quadratic_space(G, lambda x: QZ(0))
    assert radical(zero) == whole_group(G)
    assert radical(cyclic_space(6, 12)).order == 1


def test_isotropy_examples():
    S4 = cyclic_space(4, 8)
    assert not is_totally_isotropic(S4, subgroup_generate(S4.group, [S4.group(2)]))
    assert is_totally_isotropic(S4, trivial_subgroup(S4.group))
    S8 = cyclic_space(8, 16)
    assert is_totally_isotropic(S8, subgroup_generate(S8.group, [S8.group(4)]))


def test_perp_examples():
    S4 = cyclic_space(4, 8)
    assert [x.coords for x in perp(S4, subgroup_generate(S4.group, [S4.group(2)]))] == [(0,), (2,)]
    S6 = cyclic_space(6, 12)
    G6 = S6.group
    assert [x.coords for x in perp(S6, subgroup_generate(G6, [G6(2)]))] == [(0,), (3,)]
    assert perp(S6, whole_group(G6)).order == 1


@settings(max_examples=40, deadline=None)
@given(lattice_data)
def test_cyclic_form_laws(lat):
    S = lat.space
    G = S.group
    den = 4 * lat.k * lat.m
    for x in S.elements:
        r = x.coords[0] if x.coords else 0
        assert S.q(x).value == Fraction(r * r, den) % 1
        assert S.b(x, x) == 2 * S.q(x)
    assert is_nondegenerate(S)
    for H in all_subgroups(G):
        P = perp(S, H)
        assert G.order == H.order * P.order
        assert perp(S, P) == H
    for H1 in all_subgroups(G):
        for H2 in all_subgroups(G):
            if H1 <= H2:
                assert perp(S, H2) <= perp(S, H1)


def test_product_form_is_nondegenerate():
    G = FinAbGroup((4, 4))
    S = make_quadratic_space(G, lambda x: QZ(x.coords[0] ** 2 + x.coords[1] ** 2, 8))
    assert is_nondegenerate(S)
    assert S.b(G(1, 0), G(0, 1)) == 0
