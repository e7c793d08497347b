"""Fusion rings: labels, nonnegative structure constants, unit, duals and weights mod Z."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import prod
from typing import Iterable, Mapping, Sequence

from .abgroup import FinAbGroup, GroupElement, Subgroup
from .errors import DomainError
from .exactnum import QZ, ZERO

Triple = tuple[str, str, str]


class FusionRing:
    """Structure constants are stored sparsely: ``N[(a, b, c)]`` for nonzero entries only."""

    def __init__(
        self,
        labels: Sequence[str],
        unit: str,
        dual: Mapping[str, str],
        weight: Mapping[str, QZ],
        N: Mapping[Triple, int],
        true_weight: Mapping[str, Fraction] | None = None,
    ):
        self.labels = tuple(labels)
        if len(set(self.labels)) != len(self.labels):
            raise DomainError("labels must be distinct")
        self.index = {a: k for k, a in enumerate(self.labels)}
        if unit not in self.index:
            raise DomainError(f"unit {unit!r} is not a label")
        self.unit = unit
        for a in self.labels:
            if a not in dual or dual[a] not in self.index:
                raise DomainError(f"dual of {a!r} missing or unknown")
            if a not in weight:
                raise DomainError(f"weight of {a!r} missing")
        self.dual = {a: dual[a] for a in self.labels}
        self.weight = {a: QZ.of(weight[a]) for a in self.labels}
        self.true_weight = dict(true_weight) if true_weight else None
        self._N: dict[Triple, int] = {}
        for (a, b, c), n in N.items():
            for x in (a, b, c):
                if x not in self.index:
                    raise DomainError(f"unknown label {x!r} in structure constants")
            if n < 0:
                raise DomainError(f"negative multiplicity N({a},{b},{c}) = {n}")
            if n:
                self._N[(a, b, c)] = int(n)
        self._products: dict[tuple[str, str], tuple[tuple[str, int], ...]] = {}
        rows: dict[tuple[str, str], list[tuple[str, int]]] = {}
        for (a, b, c), n in self._N.items():
            rows.setdefault((a, b), []).append((c, n))
        for key, row in rows.items():
            self._products[key] = tuple(sorted(row, key=lambda t: self.index[t[0]]))

    def __len__(self) -> int:
        return len(self.labels)

    def N(self, a: str, b: str, c: str) -> int:
        return self._N.get((a, b, c), 0)

    def fuse(self, a: str, b: str) -> tuple[tuple[str, int], ...]:
        """Nonzero ``(c, N(a, b, c))`` in label order."""
        for x in (a, b):
            if x not in self.index:
                raise DomainError(f"unknown label {x!r}")
        return self._products.get((a, b), ())

    def entries(self) -> list[tuple[str, str, str, int]]:
        ix = self.index
        return sorted(((a, b, c, n) for (a, b, c), n in self._N.items()), key=lambda t: (ix[t[0]], ix[t[1]], ix[t[2]]))

    def act(self, a: str, x: str) -> str:
        """The single output of ``a x x``; raises unless it is irreducible."""
        out = self.fuse(a, x)
        if len(out) != 1 or out[0][1] != 1:
            raise DomainError(f"{a} x {x} is not irreducible: {out}")
        return out[0][0]

    def is_simple_current(self, a: str) -> bool:
        return all(sum(n for _, n in self.fuse(a, y)) == 1 for y in self.labels)

    def relabel(self, mapping: Mapping[str, str]) -> FusionRing:
        m = dict(mapping)
        return FusionRing(
            [m[a] for a in self.labels],
            m[self.unit],
            {m[a]: m[b] for a, b in self.dual.items()},
            {m[a]: w for a, w in self.weight.items()},
            {(m[a], m[b], m[c]): n for (a, b, c), n in self._N.items()},
            {m[a]: w for a, w in self.true_weight.items()} if self.true_weight else None,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FusionRing):
            return NotImplemented
        return (
            self.labels == other.labels
            and self.unit == other.unit
            and self.dual == other.dual
            and self.weight == other.weight
            and self._N == other._N
        )

    def __repr__(self) -> str:
        return f"FusionRing({len(self)} labels, unit={self.unit!r})"

    def describe(self) -> str:
        lines = []
        for a in self.labels:
            for b in self.labels:
                out = self.fuse(a, b)
                rhs = " + ".join(c if n == 1 else f"{n}{c}" for c, n in out) or "0"
                lines.append(f"{a} x {b} = {rhs}")
        return "\n".join(lines)


@dataclass
class Violation:
    identity: str
    witness: tuple

    def __str__(self) -> str:
        return f"{self.identity} fails at {self.witness}"


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, identity: str, *witness) -> None:
        self.violations.append(Violation(identity, witness))

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "all identities hold"
        return "\n".join(map(str, self.violations))


def ring_validate(R: FusionRing) -> ValidationReport:
    """Exhaustively check unit, commutativity, associativity, duality and weight(unit) = 0."""
    rep = ValidationReport()
    L, u = R.labels, R.unit
    if not R.weight[u].is_zero():
        rep.add("weight(unit) = 0", u)
    for x in L:
        for z in L:
            if R.N(u, x, z) != (x == z):
                rep.add("N(unit, X, Z) = [Z = X]", x, z)
    for x in L:
        for y in L:
            for z in L:
                if R.N(x, y, z) != R.N(y, x, z):
                    rep.add("N(X,Y,Z) = N(Y,X,Z)", x, y, z)
    for x in L:
        if R.dual[R.dual[x]] != x:
            rep.add("dual(dual(X)) = X", x)
        for y in L:
            if R.N(x, y, u) != (y == R.dual[x]):
                rep.add("N(X, Y, unit) = [Y = dual(X)]", x, y)
    for x in L:
        for y in L:
            left: Counter = Counter()
            for e, n in R.fuse(x, y):
                for z in L:
                    for f, m in R.fuse(e, z):
                        left[(z, f)] += n * m
            right: Counter = Counter()
            for z in L:
                for e, n in R.fuse(y, z):
                    for f, m in R.fuse(x, e):
                        right[(z, f)] += n * m
            if left != right:
                for key in sorted(set(left) | set(right), key=lambda t: (R.index[t[0]], R.index[t[1]])):
                    if left[key] != right[key]:
                        rep.add("(X Y) Z = X (Y Z)", x, y, *key)
    return rep


@dataclass
class SimpleCurrents:
    labels: tuple[str, ...]
    invariants: tuple[int, ...] | None
    iso: dict[GroupElement, str] | None


def simple_currents(R: FusionRing) -> SimpleCurrents:
    """Simple currents of R and, when they close under fusion, their group structure.

    The group is returned as invariant factors n1 | n2 | ... together with an
    isomorphism Z_{n1} x ... -> labels.
    """
    sc = tuple(a for a in R.labels if R.is_simple_current(a))
    scs = set(sc)
    if not all(R.act(a, b) in scs for a in sc for b in sc):
        return SimpleCurrents(sc, None, None)
    mul = {(a, b): R.act(a, b) for a in sc for b in sc}

    def power(a: str, n: int) -> str:
        x = R.unit
        for _ in range(n):
            x = mul[(a, x)]
        return x

    order = {}
    for a in sc:
        n, x = 1, a
        while x != R.unit:
            x, n = mul[(a, x)], n + 1
        order[a] = n
    inv = _invariant_factors(order, len(sc))
    G = FinAbGroup(inv)
    iso = _find_isomorphism(G, sc, order, mul, R.unit, power)
    return SimpleCurrents(sc, inv, iso)


def _invariant_factors(order: Mapping[str, int], size: int) -> tuple[int, ...]:
    # |G[p^k]| = p^(sum_i min(k, e_i)) determines the p-primary exponents e_i.
    primes = [p for p in range(2, size + 1) if size % p == 0 and all(p % d for d in range(2, p))]
    per_prime: dict[int, list[int]] = {}
    for p in primes:
        exps: list[int] = []
        k, prev = 1, 1
        while True:
            cnt = sum(1 for n in order.values() if (p**k) % n == 0)
            if cnt == prev:
                break
            r = 0
            while p**r < cnt // prev:
                r += 1
            exps.append(r)
            prev, k = cnt, k + 1
        # exps[k-1] = #{i : e_i >= k}
        es = [sum(1 for d in exps if d >= j) for j in range(1, (max(exps) if exps else 0) + 1)]
        per_prime[p] = sorted(es, reverse=True)
    r = max((len(v) for v in per_prime.values()), default=0)
    factors = [prod(p ** v[j] for p, v in per_prime.items() if j < len(v)) for j in range(r)]
    return tuple(sorted(factors))


def _find_isomorphism(G, sc, order, mul, unit, power) -> dict[GroupElement, str]:
    inv = G.invariants
    n = len(sc)

    def search(chosen: list[str]) -> list[str] | None:
        if len(chosen) == len(inv):
            return chosen
        for g in sc:
            if order[g] != inv[len(chosen)]:
                continue
            trial = chosen + [g]
            if _image_size(trial, inv, mul, unit, power) == prod(inv[: len(trial)]):
                found = search(trial)
                if found:
                    return found
        return None

    gens = search([]) or []
    iso = {}
    for x in G.elements():
        y = unit
        for c, g in zip(x.coords, gens):
            y = mul[(power(g, c), y)]
        iso[x] = y
    assert len(set(iso.values())) == n
    return iso


def _image_size(gens, inv, mul, unit, power) -> int:
    image = set()
    for coords in product(*(range(m) for m in inv[: len(gens)])):
        y = unit
        for c, g in zip(coords, gens):
            y = mul[(power(g, c), y)]
        image.add(y)
    return len(image)


def tensor_ring(R1: FusionRing, R2: FusionRing, sep: str = "*") -> FusionRing:
    """Product ring; the label of (a, b) is ``a + sep + b``."""

    def lab(a: str, b: str) -> str:
        return f"{a}{sep}{b}"

    labels = [lab(a, b) for a in R1.labels for b in R2.labels]
    dual = {lab(a, b): lab(R1.dual[a], R2.dual[b]) for a in R1.labels for b in R2.labels}
    weight = {lab(a, b): R1.weight[a] + R2.weight[b] for a in R1.labels for b in R2.labels}
    N = {}
    for (a1, b1, c1), n1 in R1._N.items():
        for (a2, b2, c2), n2 in R2._N.items():
            N[(lab(a1, a2), lab(b1, b2), lab(c1, c2))] = n1 * n2
    tw = None
    if R1.true_weight and R2.true_weight:
        tw = {lab(a, b): R1.true_weight[a] + R2.true_weight[b] for a in R1.labels for b in R2.labels}
    return FusionRing(labels, lab(R1.unit, R2.unit), dual, weight, N, tw)


def group_ring(G: FinAbGroup, weight: Mapping[GroupElement, QZ] | None = None, prefix: str = "g") -> FusionRing:
    """The pointed ring on G; labels are ``prefix`` followed by coordinates."""

    def lab(x: GroupElement) -> str:
        return prefix + str(x)

    elems = G.elements()
    w = {lab(x): (weight[x] if weight else ZERO) for x in elems}
    N = {(lab(x), lab(y), lab(x + y)): 1 for x in elems for y in elems}
    return FusionRing([lab(x) for x in elems], lab(G.zero), {lab(x): lab(-x) for x in elems}, w, N)


def trivial_ring(label: str = "1") -> FusionRing:
    return FusionRing([label], label, {label: label}, {label: ZERO}, {(label, label, label): 1})


@dataclass
class SimpleCurrentGrading:
    """A D-graded family of simple currents beta -> label."""

    ring: FusionRing
    group: Subgroup
    assign: dict[GroupElement, str]

    def problems(self) -> list[str]:
        R, D, f = self.ring, self.group, self.assign
        out = []
        if set(f) != set(D.elements):
            out.append("grading must assign exactly one label to each element of the group")
            return out
        for beta, a in f.items():
            if a not in R.index:
                out.append(f"{a!r} is not a label")
        if out:
            return out
        if f[D.owner.zero] != R.unit:
            out.append(f"grading sends 0 to {f[D.owner.zero]!r}, not the unit {R.unit!r}")
        if len(set(f.values())) != len(f):
            out.append("grading is not injective")
        for beta, a in f.items():
            if not R.is_simple_current(a):
                out.append(f"{a} (grade {beta}) is not a simple current")
        for b1 in D:
            for b2 in D:
                want = ((f[b1 + b2], 1),)
                if R.fuse(f[b1], f[b2]) != want:
                    out.append(f"{f[b1]} x {f[b2]} != {f[b1 + b2]} (grades {b1}, {b2})")
        return out


def ring_isomorphic(R1: FusionRing, R2: FusionRing, match_weights: bool = True) -> dict[str, str] | None:
    """A label bijection R1 -> R2 preserving unit, duals, N (and weights), or None.

    Backtracking over labels, pruned by per-label signatures.
    """
    if len(R1) != len(R2):
        return None

    def signature(R: FusionRing, a: str) -> tuple:
        rows = sorted(sum(n for _, n in R.fuse(a, y)) for y in R.labels)
        return (
            a == R.unit,
            R.dual[a] == a,
            R.weight[a] if match_weights else None,
            tuple(rows),
            R.N(a, a, a),
            sum(n for _, n in R.fuse(a, R.dual[a])),
        )

    sig1 = {a: signature(R1, a) for a in R1.labels}
    sig2 = {a: signature(R2, a) for a in R2.labels}
    if sorted(map(repr, sig1.values())) != sorted(map(repr, sig2.values())):
        return None
    order = sorted(R1.labels, key=lambda a: (sum(1 for b in R1.labels if sig1[b] == sig1[a]), R1.index[a]))
    mapping: dict[str, str] = {}
    used: set[str] = set()

    def consistent(a: str) -> bool:
        fa = mapping[a]
        if R1.dual[a] in mapping and mapping[R1.dual[a]] != R2.dual[fa]:
            return False
        for b in mapping:
            for c in mapping:
                fb, fc = mapping[b], mapping[c]
                if R1.N(a, b, c) != R2.N(fa, fb, fc):
                    return False
                if R1.N(b, a, c) != R2.N(fb, fa, fc) or R1.N(b, c, a) != R2.N(fb, fc, fa):
                    return False
        return True

    def search(k: int) -> bool:
        if k == len(order):
            return True
        a = order[k]
        for b in R2.labels:
            if b in used or sig2[b] != sig1[a]:
                continue
            mapping[a] = b
            used.add(b)
            if consistent(a) and search(k + 1):
                return True
            del mapping[a]
            used.discard(b)
        return False

    return dict(mapping) if search(0) else None


def labels_of(pairs: Iterable[tuple[str, int]]) -> list[str]:
    return [a for a, _ in pairs]
