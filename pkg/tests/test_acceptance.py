"""Acceptance criteria A1-A9, each at its stated tolerance.

Every check is exact; the time limits are wall-clock budgets for the stated workload.
"""

import time
from fractions import Fraction
from itertools import product

import pytest

from fuselift.abgroup import all_subgroups
from fuselift.catalog import deform, lattice_rank1, parafermion_problem, parafermion_sl2, sl2_inverse_problem
from fuselift.exactnum import QZ
from fuselift.extension import build_U_ring, orbit_correspondence, validate_extension
from fuselift.fusion import ring_isomorphic, ring_validate, simple_currents
from fuselift.inverse import derive, forward_problem
from fuselift.quadspace import perp
from bundled import bundled_extension_files, load
from oracles import brute_sectors


def chi_map(chi):
    return {b: v.value for b, v in zip(chi.domain.elements, chi.values)}


def test_A1_counting_formula():
    start = time.perf_counter()
    for k in range(1, 7):
        IP = sl2_inverse_problem(k)
        der = derive(IP)
        assert len(der.ring) == k * (k + 1) // 2
        U = build_U_ring(forward_problem(IP, der))
        assert len(U) == k + 1
    assert time.perf_counter() - start < 10


@pytest.mark.parametrize("name", bundled_extension_files())
def test_A2_twisted_count_uniformity(name):
    P = load(name)
    T = P.table
    base = len(T.untwisted)
    assert base == Fraction(P.C.order * len(P.W), P.D.order**2)
    for chi in T.characters:
        assert len(T.per_character[chi]) == base
        assert len(brute_sectors(P, chi_map(chi))) == base


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_A3_round_trip(k):
    start = time.perf_counter()
    IP = sl2_inverse_problem(k)
    der = derive(IP)
    rebuilt = build_U_ring(forward_problem(IP, der))
    iso = ring_isomorphic(rebuilt, IP.U, match_weights=True)
    assert iso is not None
    assert sorted(iso.values()) == sorted(IP.U.labels)
    for a, b, c in product(rebuilt.labels, repeat=3):
        assert rebuilt.N(a, b, c) == IP.U.N(iso[a], iso[b], iso[c])
    for a in rebuilt.labels:
        assert rebuilt.weight[a] == IP.U.weight[iso[a]]
    assert time.perf_counter() - start < 30


def test_A4_ising_identification():
    R = parafermion_sl2(2)
    assert len(R) == 3
    one = R.unit
    (eps,) = [a for a in simple_currents(R).labels if a != one]
    (sigma,) = [a for a in R.labels if a not in (one, eps)]
    assert dict(R.fuse(sigma, sigma)) == {one: 1, eps: 1}
    assert dict(R.fuse(eps, eps)) == {one: 1}
    assert dict(R.fuse(eps, sigma)) == {sigma: 1}
    assert {R.weight[one], R.weight[eps], R.weight[sigma]} == {QZ(0), QZ(1, 2), QZ(1, 16)}
    assert (R.weight[eps], R.weight[sigma]) == (QZ(1, 2), QZ(1, 16))


def test_A5_quadratic_space_laws():
    start = time.perf_counter()
    orders = sorted({2 * k * m for k in range(1, 25) for m in range(1, 25) if 2 * k * m <= 48})
    for n in orders:
        S = lattice_rank1(n // 2, 1).space
        assert S == lattice_rank1(1, n // 2).space
        G = S.group
        els = G.elements()
        for x in els:
            assert S.q(x).value == Fraction(x.coords[0] ** 2, 2 * n) % 1
            for j in range(G.exponent + 1):
                assert S.q(j * x) == (j * j) * S.q(x)
        for x, y, z in product(els, repeat=3):
            assert S.b(x + y, z) == S.b(x, z) + S.b(y, z)
        for x, y in product(els, repeat=2):
            assert S.b(x, y) == S.b(y, x)
        for D in all_subgroups(G):
            assert G.order == D.order * perp(S, D).order
    assert time.perf_counter() - start < 10


def _w_coordinates(P):
    orb = P.orbits
    return [(i, b) for i in range(len(orb)) for b in P.D]


def _w_label(P, i, b):
    return P.act(b, P.orbits.reps[i])


@pytest.mark.parametrize("name", ["trivial.ext.json", "k1.ext.json", "k2.ext.json", "k3.ext.json", "k4.ext.json"])
def test_A6_shift_identities(name):
    P = load(name)
    W, U, T = P.W, P.U, P.table
    D, Dp = list(P.D), list(P.Dperp)
    coords = _w_coordinates(P)
    for (i1, b1), (i2, b2), (i3, b3) in product(coords, repeat=3):
        for d1, d2, d3 in product(D, repeat=3):
            lhs = W.N(_w_label(P, i1, b1 + d1), _w_label(P, i2, b2 + d2), _w_label(P, i3, b3 + d3))
            rhs = W.N(_w_label(P, i1, b1), _w_label(P, i2, b2), _w_label(P, i3, b3 - d1 - d2 + d3))
            assert lhs == rhs
    secs = T.untwisted
    for s1, s2, s3 in product(secs, repeat=3):
        for g1, g2, g3 in product(Dp, repeat=3):
            lhs = U.N(T.sector(s1.i, s1.alpha + g1).name, T.sector(s2.i, s2.alpha + g2).name, T.sector(s3.i, s3.alpha + g3).name)
            rhs = U.N(s1.name, s2.name, T.sector(s3.i, s3.alpha - g1 - g2 + g3).name)
            assert lhs == rhs


def _catalog_instances():
    out = []
    for k in range(1, 9):
        for s in range(4):
            if (1 + s * k) * (k + 1) <= 40:
                out.append((k, s))
    return out


def test_A7_built_rings_validate():
    start = time.perf_counter()
    sizes = []
    for k, s in _catalog_instances():
        U = build_U_ring(deform(parafermion_problem(k), s))
        assert len(U) <= 40
        report = ring_validate(U)
        assert report.ok, str(report)
        sizes.append(len(U))
    for name in bundled_extension_files():
        U = load(name).U
        if len(U) <= 40:
            assert ring_validate(U).ok
    assert max(sizes) == 40
    assert time.perf_counter() - start < 60


def test_A8_deformation():
    P = parafermion_problem(2)
    P1 = deform(P, 1)
    assert len(P1.table.untwisted) == Fraction(12 * 3, 4) == 9
    for s in range(4):
        Q = deform(P, s)
        for beta in Q.D:
            assert (Q.W.weight[Q.grading[beta]] + Q.V.q(beta)).is_zero()
        validate_extension(Q.W, Q.V, Q.D, Q.grading)


@pytest.mark.parametrize("name", bundled_extension_files())
def test_A9_orbit_duality(name):
    P = load(name)
    oc = orbit_correspondence(P)
    for o in oc.U_orbits:
        assert oc.psi[oc.phi[o]] == o
        assert Fraction(len(o), len(oc.phi[o])) == Fraction(P.Dperp.order, P.D.order)
    for o in oc.W_orbits:
        assert oc.phi[oc.psi[o]] == o
    assert sorted(map(sorted, oc.phi.values())) == sorted(map(sorted, oc.W_orbits))
