"""Finite abelian groups Z_{n1} x ... x Z_{nr}, their subgroups, cosets and characters.

Everything is enumerated explicitly; groups in scope have at most a few
thousand elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd, lcm, prod
from typing import Callable, Iterable, Iterator, Sequence

from .errors import DomainError, InconsistencyError
from .exactnum import QZ, ZERO


@dataclass(frozen=True)
class FinAbGroup:
    invariants: tuple[int, ...]

    def __post_init__(self):
        inv = tuple(int(n) for n in self.invariants)
        if any(n < 2 for n in inv):
            raise DomainError(f"cyclic factors must have order >= 2, got {list(inv)}")
        object.__setattr__(self, "invariants", inv)

    @property
    def order(self) -> int:
        return prod(self.invariants)

    @property
    def exponent(self) -> int:
        return lcm(*self.invariants) if self.invariants else 1

    @property
    def rank(self) -> int:
        return len(self.invariants)

    @property
    def zero(self) -> GroupElement:
        return GroupElement(self, (0,) * self.rank)

    def __call__(self, *coords: int) -> GroupElement:
        if len(coords) == 1 and isinstance(coords[0], (tuple, list)):
            coords = tuple(coords[0])
        if len(coords) != self.rank:
            raise DomainError(f"{self.name} needs {self.rank} coordinates, got {list(coords)}")
        return GroupElement(self, coords)

    def elements(self) -> list[GroupElement]:
        """All elements in lexicographic order of coordinates."""
        return [GroupElement(self, c) for c in product(*(range(n) for n in self.invariants))]

    def __iter__(self) -> Iterator[GroupElement]:
        return iter(self.elements())

    def __len__(self) -> int:
        return self.order

    @property
    def name(self) -> str:
        return "x".join(f"Z{n}" for n in self.invariants) or "Z1"

    def __str__(self) -> str:
        return self.name


def group_from_invariants(ns: Sequence[int]) -> FinAbGroup:
    return FinAbGroup(tuple(ns))


class GroupElement:
    __slots__ = ("owner", "coords")

    def __init__(self, owner: FinAbGroup, coords: Sequence[int]):
        self.owner = owner
        self.coords = tuple(int(c) % n for c, n in zip(coords, owner.invariants))
        if len(self.coords) != owner.rank:
            raise DomainError(f"{owner.name} needs {owner.rank} coordinates")

    @classmethod
    def _reduced(cls, owner: FinAbGroup, coords: tuple[int, ...]) -> GroupElement:
        # coords already reduced; skips validation on the arithmetic fast path
        x = object.__new__(cls)
        x.owner = owner
        x.coords = coords
        return x

    def _check(self, other: GroupElement) -> None:
        if not isinstance(other, GroupElement) or (other.owner is not self.owner and other.owner != self.owner):
            raise DomainError(f"cannot combine elements of {self.owner} and {getattr(other, 'owner', other)}")

    def __add__(self, other: GroupElement) -> GroupElement:
        self._check(other)
        inv = self.owner.invariants
        return self._reduced(self.owner, tuple((a + b) % n for a, b, n in zip(self.coords, other.coords, inv)))

    def __sub__(self, other: GroupElement) -> GroupElement:
        self._check(other)
        inv = self.owner.invariants
        return self._reduced(self.owner, tuple((a - b) % n for a, b, n in zip(self.coords, other.coords, inv)))

    def __neg__(self) -> GroupElement:
        return self._reduced(self.owner, tuple(-a % n for a, n in zip(self.coords, self.owner.invariants)))

    def __rmul__(self, n: int) -> GroupElement:
        if not isinstance(n, int):
            return NotImplemented
        return self._reduced(self.owner, tuple(n * a % m for a, m in zip(self.coords, self.owner.invariants)))

    __mul__ = __rmul__

    def is_zero(self) -> bool:
        return not any(self.coords)

    def order(self) -> int:
        return lcm(*(n // gcd(c, n) for c, n in zip(self.coords, self.owner.invariants))) if self.coords else 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.coords == other.coords and (self.owner is other.owner or self.owner == other.owner)

    def __hash__(self) -> int:
        return hash(self.coords)

    def __lt__(self, other: GroupElement) -> bool:
        self._check(other)
        return self.coords < other.coords

    def __str__(self) -> str:
        if len(self.coords) == 1:
            return str(self.coords[0])
        return "(" + ",".join(map(str, self.coords)) + ")" if self.coords else "0"

    def __repr__(self) -> str:
        return f"{self.owner.name}[{','.join(map(str, self.coords))}]"


@dataclass(frozen=True, eq=False)
class Subgroup:
    owner: FinAbGroup
    elements: tuple[GroupElement, ...]

    def __post_init__(self):
        object.__setattr__(self, "_set", frozenset(self.elements))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[GroupElement]:
        return iter(self.elements)

    def __contains__(self, x: GroupElement) -> bool:
        return x in self._set

    def __le__(self, other: Subgroup) -> bool:
        return self.owner == other.owner and self._set <= other._set

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.owner == other.owner and self._set == other._set

    def __hash__(self) -> int:
        return hash(self._set)

    def canonical(self, x: GroupElement) -> GroupElement:
        """Lexicographically minimal element of the coset ``x + self``."""
        return min(x + h for h in self.elements)

    def __str__(self) -> str:
        return "{" + ", ".join(map(str, self.elements)) + "}"

    def __repr__(self) -> str:
        return f"Subgroup({self.owner.name}, {self})"


def whole_group(G: FinAbGroup) -> Subgroup:
    return Subgroup(G, tuple(G.elements()))


def trivial_subgroup(G: FinAbGroup) -> Subgroup:
    return Subgroup(G, (G.zero,))


def subgroup_generate(G: FinAbGroup, gens: Iterable[GroupElement]) -> Subgroup:
    gens = list(gens)
    for g in gens:
        if not isinstance(g, GroupElement) or g.owner != G:
            raise DomainError(f"generator {g!r} is not an element of {G}")
    found = {G.zero}
    frontier = [G.zero]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x + g
                if y not in found:
                    found.add(y)
                    nxt.append(y)
        frontier = nxt
    return Subgroup(G, tuple(sorted(found)))


def make_subgroup(G: FinAbGroup, elements: Iterable[GroupElement]) -> Subgroup:
    """Wrap an explicit element set, checking closure."""
    elems = set(elements)
    if any(e.owner != G for e in elems):
        raise DomainError("element from a different group")
    if G.zero not in elems or any(a - b not in elems for a in elems for b in elems):
        raise DomainError("element set is not a subgroup")
    return Subgroup(G, tuple(sorted(elems)))


@dataclass(frozen=True)
class Coset:
    rep: GroupElement
    elements: tuple[GroupElement, ...]

    def __contains__(self, x: GroupElement) -> bool:
        return x in self.elements


def cosets(G: FinAbGroup, H: Subgroup) -> list[Coset]:
    if H.owner != G:
        raise DomainError(f"{H!r} is not a subgroup of {G}")
    seen: set[GroupElement] = set()
    out = []
    for x in G.elements():
        if x in seen:
            continue
        members = tuple(sorted(x + h for h in H))
        seen.update(members)
        out.append(Coset(members[0], members))
    return out


def orthogonal_complement(
    G: FinAbGroup, b: Callable[[GroupElement, GroupElement], QZ], H: Subgroup
) -> Subgroup:
    if H.owner != G:
        raise DomainError(f"{H!r} is not a subgroup of {G}")
    return Subgroup(G, tuple(a for a in G.elements() if all(b(a, h).is_zero() for h in H)))


def all_subgroups(G: FinAbGroup) -> list[Subgroup]:
    """Every subgroup of G, obtained by closing the cyclic subgroups under joins."""
    cyclic: dict[Subgroup, GroupElement] = {}
    for g in G.elements():
        cyclic.setdefault(subgroup_generate(G, [g]), g)
    subs = set(cyclic)
    frontier = list(subs)
    while frontier:
        nxt = []
        for H in frontier:
            for g in cyclic.values():
                if g in H:
                    continue
                J = Subgroup(G, tuple(sorted({h + n * g for h in H for n in range(g.order())})))
                if J not in subs:
                    subs.add(J)
                    nxt.append(J)
        frontier = nxt
    return sorted(subs, key=lambda S: (S.order, [e.coords for e in S.elements]))


class Character:
    """A homomorphism from a subgroup to Q/Z, stored as its values on ``domain.elements``."""

    __slots__ = ("domain", "values")

    def __init__(self, domain: Subgroup, values: Sequence[QZ], check: bool = True):
        self.domain = domain
        self.values = tuple(values)
        if len(self.values) != len(domain.elements):
            raise DomainError("character needs one value per domain element")
        if check:
            bad = self.additivity_failure()
            if bad is not None:
                raise InconsistencyError(f"map is not additive at {bad}")

    @classmethod
    def from_map(cls, domain: Subgroup, f: Callable[[GroupElement], QZ], check: bool = True) -> Character:
        return cls(domain, [f(x) for x in domain.elements], check=check)

    def __call__(self, x: GroupElement) -> QZ:
        return self.values[self.domain.elements.index(x)]

    def additivity_failure(self) -> tuple[GroupElement, GroupElement] | None:
        table = dict(zip(self.domain.elements, self.values))
        for x in self.domain.elements:
            for y in self.domain.elements:
                if table[x + y] != table[x] + table[y]:
                    return (x, y)
        return None

    def is_trivial(self) -> bool:
        return all(v.is_zero() for v in self.values)

    def __add__(self, other: Character) -> Character:
        return Character(self.domain, [a + b for a, b in zip(self.values, other.values)], check=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Character):
            return NotImplemented
        return self.domain == other.domain and self.values == other.values

    def __hash__(self) -> int:
        return hash(self.values)

    def sort_key(self) -> tuple:
        return tuple(v.value for v in self.values)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.values)) + ")"

    def __repr__(self) -> str:
        return f"Character{self}"


def characters(H: Subgroup) -> list[Character]:
    """All characters of H, trivial first, then in lexicographic order of values.

    Every character of a subgroup extends to the ambient group, so restricting
    the characters x -> sum a_i x_i / n_i of G enumerates them all.
    """
    G = H.owner
    found = set()
    for a in G.elements():
        vals = [sum((QZ(ai * xi, n) for ai, xi, n in zip(a.coords, x.coords, G.invariants)), ZERO) for x in H]
        found.add(Character(H, vals, check=False))
    return sorted(found, key=Character.sort_key)
