"""Simple current extensions U = sum_{beta in D} W^beta (x) V^beta.

Given the fusion ring of W, a non-degenerate quadratic space (C, q_V)
standing for the pointed ring of V, a subgroup D of C and a D-graded family
of simple currents of W, this module classifies the sectors U^{i,alpha}
(untwisted and twisted), computes the fusion ring of U and exposes the
correspondence between D-orbits of Irr(W) and D^perp-orbits of Irr(U).

Notation used throughout: ``i`` indexes D-orbits of W-labels, orbit 0 being
the orbit of the unit; ``W^{i,beta} = W^beta x W^{i,0}``; a sector ``(i, alpha)``
decomposes as ``sum_beta W^{i,beta} (x) V^{alpha+beta}``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

from .abgroup import Character, GroupElement, Subgroup, characters
from .errors import DomainError, ExtensionError, InconsistencyError
from .exactnum import QZ
from .fusion import FusionRing, SimpleCurrentGrading, ring_validate, simple_currents
from .quadspace import QuadraticSpace, is_nondegenerate, perp


@dataclass(frozen=True, eq=False)
class ExtensionProblem:
    W: FusionRing
    V: QuadraticSpace
    D: Subgroup
    grading: Mapping[GroupElement, str]
    Dperp: Subgroup

    @property
    def C(self):
        return self.V.group

    def act(self, beta: GroupElement, x: str) -> str:
        """W^beta x X."""
        return self.W.act(self.grading[beta], x)

    def bW(self, beta: GroupElement, x: str) -> QZ:
        """b_W(W^beta, X) from weights mod Z."""
        w = self.W.weight
        return w[self.act(beta, x)] - w[self.grading[beta]] - w[x]

    @cached_property
    def orbits(self) -> OrbitData:
        return orbit_decomposition(self)

    @cached_property
    def xi(self) -> dict[tuple[int, GroupElement], Character]:
        orb = self.orbits
        return {(i, a): xi_character(self, orb, i, a) for i in range(len(orb.reps)) for a in self.C.elements()}

    @cached_property
    def table(self) -> SectorTable:
        return sector_table(self)

    @cached_property
    def U(self) -> FusionRing:
        return build_U_ring(self)


def validate_extension(
    W: FusionRing, V: QuadraticSpace, D: Subgroup, grading: Mapping[GroupElement, str]
) -> ExtensionProblem:
    if D.owner != V.group:
        raise DomainError(f"D is not a subgroup of {V.group}")
    if not is_nondegenerate(V):
        raise ExtensionError("the quadratic form on C is degenerate; all V-modules being simple currents forces a non-degenerate form")
    problems = SimpleCurrentGrading(W, D, dict(grading)).problems()
    if problems:
        raise ExtensionError("grading is not a D-graded set of simple currents: " + "; ".join(problems))
    for beta in D:
        total = W.weight[grading[beta]] + V.q(beta)
        if not total.is_zero():
            kind = (
                "half-integral weight: D-graded sums of this kind carry either an algebra or a superalgebra "
                "structure, and this one would be a superalgebra"
                if (2 * total).is_zero()
                else "non-integral weight"
            )
            raise ExtensionError(
                f"superalgebra or invalid extension: weight({grading[beta]}) + q({beta}) = {total} ({kind})"
            )
    return ExtensionProblem(W, V, D, dict(grading), perp(V, D))


@dataclass
class OrbitData:
    orbits: list[tuple[str, ...]]
    reps: list[str]
    stabs: list[Subgroup]
    coord: dict[str, tuple[int, GroupElement]]

    def __len__(self) -> int:
        return len(self.reps)


def orbit_decomposition(P: ExtensionProblem) -> OrbitData:
    """D-orbits of W-labels under X -> W^beta x X.

    Orbit 0 is the orbit of the unit; the others follow in ring label order of
    their first member, which is also the representative W^{i,0}.
    """
    W, D = P.W, P.D
    order = [W.unit] + [a for a in W.labels if a != W.unit]
    seen: set[str] = set()
    orbits, reps, stabs, coord = [], [], [], {}
    for rep in order:
        if rep in seen:
            continue
        i = len(reps)
        stab = Subgroup(D.owner, tuple(b for b in D if P.act(b, rep) == rep))
        if not stab <= P.Dperp:
            raise InconsistencyError(f"stabilizer {stab} of {rep} is not contained in D^perp {P.Dperp}")
        members = []
        for b in D:
            x = P.act(b, rep)
            cb = stab.canonical(b)
            if x in coord:
                if coord[x] != (i, cb):
                    raise InconsistencyError(f"{x} reached twice with different coordinates")
                continue
            coord[x] = (i, cb)
            members.append((cb, x))
        seen.update(x for _, x in members)
        orbits.append(tuple(x for _, x in sorted(members)))
        reps.append(rep)
        stabs.append(stab)
    return OrbitData(orbits, reps, stabs, coord)


def xi_character(P: ExtensionProblem, orbits: OrbitData, i: int, alpha: GroupElement) -> Character:
    """beta -> b_W(W^beta, W^{i,0}) + b_V(beta, alpha); additivity is checked on construction."""
    rep = orbits.reps[i]
    return Character.from_map(P.D, lambda b: P.bW(b, rep) + P.V.b(b, alpha))


def eta_character(P: ExtensionProblem, alpha: GroupElement) -> Character:
    """beta -> b_V(beta, alpha)."""
    return Character.from_map(P.D, lambda b: P.V.b(b, alpha))


class Sector:
    """The sector U^{i,alpha}; identity is the pair (i, canonical alpha)."""

    __slots__ = ("i", "alpha", "chi", "decomposition", "weight")

    def __init__(self, i: int, alpha: GroupElement, chi: Character, decomposition, weight: QZ):
        self.i = i
        self.alpha = alpha
        self.chi = chi
        self.decomposition: tuple[tuple[str, GroupElement], ...] = tuple(decomposition)
        self.weight = weight

    @property
    def name(self) -> str:
        return sector_name(self.i, self.alpha)

    @property
    def untwisted(self) -> bool:
        return self.chi.is_trivial()

    @property
    def key(self) -> tuple[int, tuple[int, ...]]:
        return (self.i, self.alpha.coords)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Sector):
            return NotImplemented
        return self.i == other.i and self.alpha == other.alpha

    def __hash__(self) -> int:
        return hash(self.key)

    def __lt__(self, other: Sector) -> bool:
        return self.key < other.key

    def __repr__(self) -> str:
        return f"Sector{self.name}"


def sector_name(i: int, alpha: GroupElement) -> str:
    return f"(i{i}," + ",".join(map(str, alpha.coords)) + ")" if alpha.coords else f"(i{i})"


def parse_sector_name(text: str) -> tuple[int, tuple[int, ...]]:
    t = text.strip().replace(" ", "")
    if not (t.startswith("(i") and t.endswith(")")):
        raise DomainError(f"sector names look like '(i<index>,<alpha coords>)', got {text!r}")
    parts = t[2:-1].split(",")
    try:
        return int(parts[0]), tuple(int(p) for p in parts[1:])
    except ValueError as exc:
        raise DomainError(f"malformed sector name {text!r}") from exc


@dataclass
class SectorTable:
    problem: ExtensionProblem
    characters: list[Character]
    per_character: dict[Character, list[Sector]]
    charge_cosets: dict[tuple[int, Character], frozenset[GroupElement]]
    _index: dict[tuple[int, GroupElement], Sector] = field(default_factory=dict, repr=False)

    @property
    def untwisted(self) -> list[Sector]:
        return self.per_character[self.characters[0]]

    def sector(self, i: int, alpha: GroupElement) -> Sector:
        """The sector (i, alpha), alpha taken modulo D_i."""
        return self._index[(i, self.problem.orbits.stabs[i].canonical(alpha))]

    def by_name(self, name: str) -> Sector:
        i, coords = parse_sector_name(name)
        C = self.problem.C
        if not 0 <= i < len(self.problem.orbits) or len(coords) != C.rank:
            raise DomainError(f"no sector named {name!r}")
        alpha = C(*coords)
        s = self.sector(i, alpha)
        if s.alpha != alpha:
            raise DomainError(f"{name} is not canonical; did you mean {s.name}?")
        return s

    def all_sectors(self) -> list[Sector]:
        return [s for chi in self.characters for s in self.per_character[chi]]

    def C_set(self, i: int, chi: Character) -> frozenset[GroupElement]:
        return self.charge_cosets[(i, chi)]


def sector_table(P: ExtensionProblem) -> SectorTable:
    """Classify the sectors for every character of D.

    For each character chi and orbit i, C(i, chi) = {alpha : xi_{i,alpha} = chi}
    must be a coset of D^perp; the chi-sectors are its classes modulo D_i.
    """
    orb, C, D, Dp = P.orbits, P.C, P.D, P.Dperp
    chars = characters(D)
    if not chars[0].is_trivial():
        raise InconsistencyError("character enumeration must start with the trivial character")
    expected = Fraction(C.order * len(P.W), D.order**2)
    per: dict[Character, list[Sector]] = {}
    cosets: dict[tuple[int, Character], frozenset[GroupElement]] = {}
    index: dict[tuple[int, GroupElement], Sector] = {}
    by_char: dict[tuple[int, Character], list[GroupElement]] = {}
    for i in range(len(orb)):
        for a in C.elements():
            by_char.setdefault((i, P.xi[(i, a)]), []).append(a)
    for chi in chars:
        sectors = []
        for i in range(len(orb)):
            cs = by_char.get((i, chi), [])
            if len(cs) != Dp.order or any(a - cs[0] not in Dp for a in cs):
                raise InconsistencyError(f"C(i{i}, {chi}) = {cs} is not a coset of D^perp")
            cosets[(i, chi)] = frozenset(cs)
            for a in sorted({orb.stabs[i].canonical(a) for a in cs}):
                s = _make_sector(P, i, a, chi)
                sectors.append(s)
                index[(i, a)] = s
        if len(sectors) != expected:
            raise InconsistencyError(f"{len(sectors)} sectors for character {chi}, expected {expected}")
        per[chi] = sectors
    if cosets[(0, chars[0])] != frozenset(Dp):
        raise InconsistencyError("C(0, 1) differs from D^perp")
    return SectorTable(P, chars, per, cosets, index)


def _make_sector(P: ExtensionProblem, i: int, alpha: GroupElement, chi: Character) -> Sector:
    rep = P.orbits.reps[i]
    dec = [(P.act(b, rep), alpha + b) for b in P.D]
    weight = P.W.weight[rep] + P.V.q(alpha)
    if chi.is_trivial():
        for x, c in dec:
            if P.W.weight[x] + P.V.q(c) != weight:
                raise InconsistencyError(f"untwisted sector {sector_name(i, alpha)} has non-constant weight mod Z")
    return Sector(i, alpha, chi, dec, weight)


@dataclass
class FusionSupport:
    """The index sets P, Q and the bijection psi between them for one product."""

    P: frozenset[tuple[int, GroupElement]]
    Q: frozenset[tuple[int, GroupElement]]
    psi: dict[tuple[int, GroupElement], tuple[int, GroupElement]]

    def psi_inv(self) -> dict[tuple[int, GroupElement], tuple[int, GroupElement]]:
        return {v: k for k, v in self.psi.items()}


def fusion_support(P: ExtensionProblem, S1: Sector, S2: Sector) -> FusionSupport:
    """Supports of the W- and U-side expansions for beta_1 = beta_2 = 0."""
    tab, orb = P.table, P.orbits
    s = S1.alpha + S2.alpha
    I = range(len(orb))
    Pset = frozenset((i, b) for i in I for b in P.D if s - b in tab.C_set(i, tab.characters[0]))
    Qset = frozenset((i, a) for i in I for a in P.C.elements() if a in tab.C_set(i, tab.characters[0]) and s - a in P.D)
    psi = {(i, b): (i, s - b) for i, b in Pset}
    sup = FusionSupport(Pset, Qset, psi)
    if set(psi.values()) != Qset or len(psi) != len(Pset):
        raise InconsistencyError("psi is not a bijection P -> Q")
    inv = sup.psi_inv()
    if any(inv[psi[x]] != x for x in Pset):
        raise InconsistencyError("psi_inv o psi != id")
    for (i, b) in Pset:
        for (j, c) in Pset:
            same_W = i == j and b - c in orb.stabs[i]
            a1, a2 = psi[(i, b)][1], psi[(j, c)][1]
            same_U = i == j and a1 - a2 in orb.stabs[i]
            if same_W != same_U:
                raise InconsistencyError("psi does not match ~ with ~~")
    return sup


def fuse_U(P: ExtensionProblem, S1: Sector, S2: Sector) -> list[tuple[Sector, int]]:
    """Product of two untwisted sectors, read off from W^{i1,0} x W^{i2,0}."""
    if not (S1.untwisted and S2.untwisted):
        raise DomainError("fusion is only defined between untwisted sectors")
    orb, tab = P.orbits, P.table
    sup = fusion_support(P, S1, S2)
    out: Counter = Counter()
    for z, n in P.W.fuse(orb.reps[S1.i], orb.reps[S2.i]):
        i3, b3 = orb.coord[z]
        a3 = S1.alpha + S2.alpha - b3
        if (i3, b3) not in sup.P or not P.xi[(i3, a3)].is_trivial():
            raise InconsistencyError(f"{z} in {orb.reps[S1.i]} x {orb.reps[S2.i]} gives twisted output (i{i3}, {a3})")
        out[tab.sector(i3, a3)] += n
    return sorted(out.items())


def fuse_U_via_Q(P: ExtensionProblem, S1: Sector, S2: Sector) -> list[tuple[Sector, int]]:
    """The same product expanded over Q modulo ~~, as a cross-check of :func:`fuse_U`."""
    orb, tab = P.orbits, P.table
    sup = fusion_support(P, S1, S2)
    r1, r2 = orb.reps[S1.i], orb.reps[S2.i]
    out = {}
    for i3, a3 in sup.Q:
        s = tab.sector(i3, a3)
        if s in out:
            continue
        b = S1.alpha + S2.alpha - a3
        n = P.W.N(r1, r2, P.act(b, orb.reps[i3]))
        if n:
            out[s] = n
    return sorted(out.items())


def build_U_ring(P: ExtensionProblem) -> FusionRing:
    """The fusion ring on untwisted sectors; labels are sector names."""
    secs = P.table.untwisted
    unit = P.table.sector(0, P.C.zero)
    N = {}
    for s1 in secs:
        for s2 in secs:
            for s3, n in fuse_U(P, s1, s2):
                N[(s1.name, s2.name, s3.name)] = n
    labels = [s.name for s in secs]
    dual = {}
    for a in labels:
        cands = [b for b in labels if N.get((a, b, unit.name), 0) == 1]
        if len(cands) != 1:
            raise InconsistencyError(f"cannot infer the dual of {a}: candidates {cands}")
        dual[a] = cands[0]
    return FusionRing(labels, unit.name, dual, {s.name: s.weight for s in secs}, N)


@dataclass
class SimpleCurrentsU:
    sectors: list[Sector]
    family: dict[GroupElement, Sector]


def simple_currents_U(P: ExtensionProblem) -> SimpleCurrentsU:
    """SC(U) from the simple currents of W, and the D^perp-graded family U^gamma = (0, gamma)."""
    orb, tab, U = P.orbits, P.table, P.U
    I_sc = [i for i, r in enumerate(orb.reps) if P.W.is_simple_current(r)]
    for i in I_sc:
        if orb.stabs[i].order != 1:
            raise InconsistencyError(f"simple-current orbit i{i} has a nontrivial stabilizer")
    sc = [s for s in tab.untwisted if s.i in I_sc]
    n_sc_W = sum(1 for a in P.W.labels if P.W.is_simple_current(a))
    if len(sc) != Fraction(P.C.order * n_sc_W, P.D.order**2):
        raise InconsistencyError("|SC(U)| != |C| |SC(W)| / |D|^2")
    direct = set(simple_currents(U).labels)
    if direct != {s.name for s in sc}:
        raise InconsistencyError(f"simple currents of the built ring {sorted(direct)} disagree with {[s.name for s in sc]}")
    family = {g: tab.sector(0, g) for g in P.Dperp}
    for g, ug in family.items():
        for s in tab.untwisted:
            want = tab.sector(s.i, s.alpha + g)
            if U.fuse(ug.name, s.name) != ((want.name, 1),):
                raise InconsistencyError(f"U^{g} x {s.name} != {want.name}")
    return SimpleCurrentsU(sc, family)


U_FROM_W = "U_from_W"
W_FROM_U = "W_from_U"


def containing_sector(P: ExtensionProblem, x: str, alpha: GroupElement) -> Sector:
    """The untwisted sector containing X (x) V^alpha."""
    if x not in P.orbits.coord:
        raise DomainError(f"unknown W-label {x!r}")
    i, b = P.orbits.coord[x]
    a = alpha - b
    if not P.xi[(i, a)].is_trivial():
        raise DomainError(f"{x} (x) V^{alpha} lies in a twisted sector; charge not in C(i{i}, 1) + {b}")
    return P.table.sector(i, a)


def fusion_rules2_query(P: ExtensionProblem, direction: str, triple: Sequence[tuple[str, GroupElement]]) -> int:
    """Fusion rules of one side from the other, for X^p (x) V^{alpha_p} inside M^p.

    ``U_from_W`` returns N_U(M1, M2, M3); ``W_from_U`` returns N_W(X1, X2, X3).
    """
    (x1, a1), (x2, a2), (x3, a3) = triple
    m1, m2, m3 = (containing_sector(P, x, a) for x, a in triple)
    g = a1 + a2 - a3
    if direction == U_FROM_W:
        return P.W.N(x1, x2, P.act(g, x3)) if g in P.D else 0
    if direction == W_FROM_U:
        if g not in P.Dperp:
            return 0
        ug = P.table.sector(0, g).name
        return P.U.N(m1.name, m2.name, P.U.act(ug, m3.name))
    raise DomainError(f"direction must be {U_FROM_W!r} or {W_FROM_U!r}")


@dataclass
class OrbitCorrespondence:
    U_orbits: list[frozenset[str]]
    W_orbits: list[frozenset[str]]
    phi: dict[frozenset[str], frozenset[str]]
    psi: dict[frozenset[str], frozenset[str]]
    U_stabs: dict[frozenset[str], Subgroup]
    W_stabs: dict[frozenset[str], Subgroup]


def orbit_correspondence(P: ExtensionProblem) -> OrbitCorrespondence:
    """Phi: D^perp-orbits of Irr(U) -> D-orbits of Irr(W), and its inverse Psi."""
    U, tab, orb = P.U, P.table, P.orbits
    Dp, D = P.Dperp, P.D
    fam = {g: tab.sector(0, g).name for g in Dp}
    by_name = {s.name: s for s in tab.untwisted}
    U_orbits, seen = [], set()
    for s in tab.untwisted:
        if s.name in seen:
            continue
        o = frozenset(U.act(fam[g], s.name) for g in Dp)
        seen |= o
        U_orbits.append(o)
    W_orbits = [frozenset(o) for o in orb.orbits]

    phi = {}
    for o in U_orbits:
        contents = {frozenset(x for x, _ in by_name[m].decomposition) for m in o}
        if len(contents) != 1:
            raise InconsistencyError(f"members of U-orbit {sorted(o)} have different W-constituents")
        phi[o] = contents.pop()

    psi = {}
    for o in W_orbits:
        images = set()
        for x in sorted(o):
            lam = [c for c in P.C.elements() if all((P.bW(b, x) + P.V.b(b, c)).is_zero() for b in D)]
            if not lam or len(lam) != Dp.order or any(c - lam[0] not in Dp for c in lam):
                raise InconsistencyError(f"solutions lambda for {x} do not form a D^perp coset: {lam}")
            images.add(frozenset(containing_sector(P, x, c).name for c in lam))
        if len(images) != 1:
            raise InconsistencyError(f"Psi depends on the choice of member of {sorted(o)}")
        psi[o] = images.pop()

    ratio = Fraction(Dp.order, D.order)
    U_stabs, W_stabs = {}, {}
    for o in U_orbits:
        if psi.get(phi[o]) != o:
            raise InconsistencyError("Psi o Phi != id")
        if Fraction(len(o), len(phi[o])) != ratio:
            raise InconsistencyError(f"|O|/|Phi(O)| != |D^perp|/|D| for {sorted(o)}")
        m = min(o)
        U_stabs[o] = Subgroup(P.C, tuple(g for g in Dp if U.act(fam[g], m) == m))
    for o in W_orbits:
        if phi.get(psi[o]) != o:
            raise InconsistencyError("Phi o Psi != id")
        x = min(o)
        W_stabs[o] = Subgroup(P.C, tuple(b for b in D if P.act(b, x) == x))
    for o in U_orbits:
        if U_stabs[o] != W_stabs[phi[o]]:
            raise InconsistencyError(f"stabilizers differ: {U_stabs[o]} vs {W_stabs[phi[o]]}")
    return OrbitCorrespondence(U_orbits, W_orbits, phi, psi, U_stabs, W_stabs)


def twisted_bijection(P: ExtensionProblem, alpha: GroupElement) -> dict[Sector, Sector]:
    """Theta_alpha: U^{i,a} -> U^{i,a+alpha}, landing in the eta_alpha-twisted sectors."""
    tab = P.table
    chi = eta_character(P, alpha)
    out = {s: tab.sector(s.i, s.alpha + alpha) for s in tab.untwisted}
    if set(out.values()) != set(tab.per_character[chi]) or len(set(out.values())) != len(out):
        raise InconsistencyError(f"Theta_{alpha} is not a bijection onto the {chi}-twisted sectors")
    return out


def check_problem(P: ExtensionProblem) -> list[str]:
    """Run every structural identity available for a problem; return failures."""
    failures = []
    try:
        P.table
        if not ring_validate(P.U).ok:
            failures.append("built U-ring fails validation")
        simple_currents_U(P)
        orbit_correspondence(P)
    except InconsistencyError as exc:
        failures.append(str(exc))
    return failures
