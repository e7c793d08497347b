"""Recover the fusion ring of the commutant W from R(U), (C, q_V), D and branching charges.

Each D^perp-orbit of Irr(U) (under M -> U^gamma x M) yields one D-orbit of
Irr(W): if the representative M^{i,0} decomposes as
sum_{delta in lambda_i + D} X^{i,delta} (x) V^delta, the W-labels of the orbit
are X^{i,delta} with delta taken modulo the stabilizer of M^{i,0}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .abgroup import GroupElement, Subgroup
from .errors import DomainError
from .extension import ExtensionProblem, build_U_ring, validate_extension
from .fusion import FusionRing, SimpleCurrentGrading, ring_isomorphic, ring_validate
from .quadspace import QuadraticSpace, is_nondegenerate, perp


@dataclass(frozen=True, eq=False)
class InverseProblem:
    U: FusionRing
    V: QuadraticSpace
    D: Subgroup
    gradingU: Mapping[GroupElement, str]
    branching: Mapping[str, GroupElement]


def derived_name(i: int, delta: GroupElement) -> str:
    return f"X(i{i}," + ",".join(map(str, delta.coords)) + ")"


@dataclass
class Derivation:
    ring: FusionRing
    Dperp: Subgroup
    orbits: list[tuple[str, ...]]
    reps: list[str]
    lam: list[GroupElement]
    stabs: list[Subgroup]
    labels: dict[str, tuple[int, GroupElement]]

    def grading(self, D: Subgroup) -> dict[GroupElement, str]:
        """beta -> X^{0,beta}, the D-graded simple currents of the derived ring."""
        return {b: derived_name(0, self.stabs[0].canonical(b)) for b in D}


def _orbits(U: FusionRing, Dp: Subgroup, gradingU: Mapping[GroupElement, str]):
    order = [U.unit] + [a for a in U.labels if a != U.unit]
    seen, orbits = set(), []
    for a in order:
        if a in seen:
            continue
        o = tuple(sorted({U.act(gradingU[g], a) for g in Dp}, key=U.index.__getitem__))
        seen.update(o)
        orbits.append(o)
    return orbits


def derive(IP: InverseProblem) -> Derivation:
    U, V, D = IP.U, IP.V, IP.D
    C = V.group
    if D.owner != C:
        raise DomainError(f"D is not a subgroup of {C}")
    if not is_nondegenerate(V):
        raise DomainError("the quadratic form on C is degenerate")
    Dp = perp(V, D)
    problems = SimpleCurrentGrading(U, Dp, dict(IP.gradingU)).problems()
    if problems:
        raise DomainError("gradingU is not a D^perp-graded set of simple currents: " + "; ".join(problems))
    fam = dict(IP.gradingU)

    branching = {}
    for a, c in IP.branching.items():
        if a not in U.index:
            raise DomainError(f"branching names unknown U-label {a!r}")
        if c.owner != C:
            raise DomainError(f"branching charge for {a} is not an element of {C}")
        branching[a] = c
    if U.unit in branching and branching[U.unit] not in D:
        raise DomainError(f"branching charge of the unit must lie in D, got {branching[U.unit]}")
    branching[U.unit] = C.zero
    for a, c in branching.items():
        for g in Dp:
            b = U.act(fam[g], a)
            if b in branching and branching[b] - c - g not in D:
                raise DomainError(
                    f"branching inconsistent with D^perp-orbit structure: U^{g} x {a} = {b} "
                    f"but lambda({b}) - lambda({a}) - {g} = {branching[b] - c - g} is not in D"
                )

    orbits = _orbits(U, Dp, fam)
    reps, lam, stabs = [], [], []
    labels: dict[str, tuple[int, GroupElement]] = {}
    for i, o in enumerate(orbits):
        given = [a for a in o if a in branching]
        if not given:
            raise DomainError(f"no branching charge supplied for the orbit {list(o)}")
        rep = U.unit if i == 0 else given[0]
        stab = Subgroup(C, tuple(g for g in Dp if U.act(fam[g], rep) == rep))
        if not stab <= D:
            raise DomainError(f"stabilizer {stab} of {rep} is not contained in D; U-data inconsistent with (C, D)")
        reps.append(rep)
        lam.append(branching[rep])
        stabs.append(stab)
        for delta in sorted({stab.canonical(branching[rep] + b) for b in D}):
            labels[derived_name(i, delta)] = (i, delta)

    expected = Fraction(D.order**2 * len(U), C.order)
    if len(labels) != expected:
        raise DomainError(f"derived {len(labels)} labels, expected |D|^2 |Irr(U)| / |C| = {expected}")

    names = list(labels)
    weight = {x: U.weight[reps[i]] - V.q(d) for x, (i, d) in labels.items()}
    N = {}
    for x1, (i1, d1) in labels.items():
        for x2, (i2, d2) in labels.items():
            for x3, (i3, d3) in labels.items():
                g = d1 + d2 - d3
                if g in Dp:
                    n = U.N(reps[i1], reps[i2], U.act(fam[g], reps[i3]))
                    if n:
                        N[(x1, x2, x3)] = n
    unit = derived_name(0, C.zero)
    dual = {}
    for x in names:
        cands = [y for y in names if N.get((x, y, unit), 0) == 1]
        if len(cands) != 1:
            raise DomainError(f"branching data inconsistent: cannot infer the dual of {x} ({cands})")
        dual[x] = cands[0]
    ring = FusionRing(names, unit, dual, weight, N)
    report = ring_validate(ring)
    if not report.ok:
        raise DomainError(f"branching data inconsistent: derived ring fails validation: {report.violations[0]}")
    return Derivation(ring, Dp, orbits, reps, lam, stabs, labels)


def derive_commutant_ring(IP: InverseProblem) -> FusionRing:
    return derive(IP).ring


def forward_problem(IP: InverseProblem, derivation: Derivation | None = None) -> ExtensionProblem:
    """The extension problem (W, V, D, beta -> X^{0,beta}) built on the derived ring."""
    der = derivation or derive(IP)
    return validate_extension(der.ring, IP.V, IP.D, der.grading(IP.D))


@dataclass
class RoundTripReport:
    ok: bool
    derived: FusionRing | None = None
    rebuilt: FusionRing | None = None
    bijection: dict[str, str] | None = None
    messages: list[str] = field(default_factory=list)

    def __str__(self) -> str:
        head = "round trip: isomorphism found" if self.ok else "round trip FAILED"
        return "\n".join([head] + self.messages)


def round_trip(IP: InverseProblem) -> RoundTripReport:
    """Derive W, re-extend it and look for a weight-preserving isomorphism onto the original U."""
    try:
        der = derive(IP)
        P = forward_problem(IP, der)
        rebuilt = build_U_ring(P)
    except Exception as exc:  # failures are report entries
        return RoundTripReport(False, messages=[f"{type(exc).__name__}: {exc}"])
    iso = ring_isomorphic(rebuilt, IP.U, match_weights=True)
    rep = RoundTripReport(iso is not None, der.ring, rebuilt, iso)
    if iso is None:
        rep.messages.append("no weight-preserving isomorphism between the rebuilt and the original ring")
        return rep
    for a in rebuilt.labels:
        for b in rebuilt.labels:
            for c in rebuilt.labels:
                if rebuilt.N(a, b, c) != IP.U.N(iso[a], iso[b], iso[c]):
                    rep.ok = False
                    rep.messages.append(f"N({a},{b},{c}) differs under the bijection")
    return rep
