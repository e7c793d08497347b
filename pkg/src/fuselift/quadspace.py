"""Finite quadratic spaces (C, q) over Q/Z and their polarization b."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Callable, Mapping

from .abgroup import FinAbGroup, GroupElement, Subgroup, orthogonal_complement
from .errors import DomainError, NotQuadraticError
from .exactnum import QZ


class QuadraticSpace:
    """A finite abelian group with a quadratic form ``q`` and ``b(x, y) = q(x+y) - q(x) - q(y)``.

    Values are held as integers modulo a common denominator ``L``; ``q`` and
    ``b`` hand back :class:`QZ`.
    """

    def __init__(self, group: FinAbGroup, q: Mapping[GroupElement, QZ]):
        self.group = group
        self.elements = group.elements()
        self.index = {x.coords: k for k, x in enumerate(self.elements)}
        self.L = lcm(*(v.den for v in q.values())) if q else 1
        self._q = [q[x].num * (self.L // q[x].den) for x in self.elements]
        n = len(self.elements)
        self._add = [[self.index[(x + y).coords] for y in self.elements] for x in self.elements]
        L, qi, add = self.L, self._q, self._add
        self._b = [[(qi[add[i][j]] - qi[i] - qi[j]) % L for j in range(n)] for i in range(n)]
        self._values = [QZ(v, L) for v in range(L)]

    def _pos(self, x: GroupElement) -> int:
        if x.owner is not self.group and x.owner != self.group:
            raise DomainError(f"{x!r} is not an element of {self.group}")
        return self.index[x.coords]

    def q(self, x: GroupElement) -> QZ:
        return self._values[self._q[self._pos(x)]]

    def b(self, x: GroupElement, y: GroupElement) -> QZ:
        return self._values[self._b[self._pos(x)][self._pos(y)]]

    def __call__(self, x: GroupElement) -> QZ:
        return self.q(x)

    @property
    def q_values(self) -> list[QZ]:
        """q on the elements in lexicographic order."""
        return [self.q(x) for x in self.elements]

    def as_mapping(self) -> dict[GroupElement, QZ]:
        return dict(zip(self.elements, self.q_values))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QuadraticSpace):
            return NotImplemented
        return self.group == other.group and self.q_values == other.q_values

    def __repr__(self) -> str:
        return f"QuadraticSpace({self.group.name}, q={[str(v) for v in self.q_values]})"


def make_quadratic_space(
    G: FinAbGroup, q: Mapping[GroupElement, QZ] | Callable[[GroupElement], QZ | Fraction]
) -> QuadraticSpace:
    """Validate ``q`` and build the space.

    Homogeneity q(n x) = n^2 q(x) is checked for n = 0..exponent(G), which
    covers all of Z by periodicity. Bi-additivity of b in the first slot is
    checked against the standard generators, which extends to all of G by
    induction; symmetry holds by construction.
    """
    if callable(q) and not isinstance(q, Mapping):
        values = {x: QZ.of(q(x)) for x in G.elements()}
    else:
        values = {}
        for x in G.elements():
            if x not in q:
                raise DomainError(f"q is not defined on {x}")
            values[x] = QZ.of(q[x])
    S = QuadraticSpace(G, values)
    L, qi, add, bt, idx = S.L, S._q, S._add, S._b, S.index
    for x in S.elements:
        i = idx[x.coords]
        for n in range(G.exponent + 1):
            j = idx[(n * x).coords]
            if (qi[j] - n * n * qi[i]) % L:
                raise NotQuadraticError(f"not quadratic: q({n}*{x}) = {S.q(n * x)} but {n}^2 q({x}) = {n * n * S.q(x)}")
    gens = [G(*(1 if k == r else 0 for k in range(G.rank))) for r in range(G.rank)]
    for g in gens:
        gi = idx[g.coords]
        for i in range(len(S.elements)):
            xg = add[i][gi]
            for j in range(len(S.elements)):
                if (bt[xg][j] - bt[i][j] - bt[gi][j]) % L:
                    x, z = S.elements[i], S.elements[j]
                    raise NotQuadraticError(f"not quadratic: b({x}+{g}, {z}) != b({x}, {z}) + b({g}, {z})")
    return S


def cyclic_space(n: int, denominator: int) -> QuadraticSpace:
    """Z_n with q(r) = r^2 / denominator."""
    G = FinAbGroup((n,)) if n > 1 else FinAbGroup(())
    return make_quadratic_space(G, lambda x: QZ(x.coords[0] ** 2 if x.coords else 0, denominator))


def radical(S: QuadraticSpace) -> Subgroup:
    n = len(S.elements)
    return Subgroup(S.group, tuple(x for i, x in enumerate(S.elements) if not any(S._b[i][j] for j in range(n))))


def is_nondegenerate(S: QuadraticSpace) -> bool:
    return radical(S).order == 1


def is_totally_isotropic(S: QuadraticSpace, H: Subgroup) -> bool:
    _check_sub(S, H)
    return all(S.q(h).is_zero() for h in H)


def perp(S: QuadraticSpace, H: Subgroup) -> Subgroup:
    _check_sub(S, H)
    return orthogonal_complement(S.group, S.b, H)


def _check_sub(S: QuadraticSpace, H: Subgroup) -> None:
    if H.owner != S.group:
        raise DomainError(f"{H!r} is not a subgroup of {S.group}")
