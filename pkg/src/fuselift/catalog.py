"""Model generators: rank-one lattice data, affine sl2 at level k, parafermions, deformations."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .abgroup import subgroup_generate
from .errors import DomainError
from .exactnum import QZ
from .extension import ExtensionProblem, validate_extension
from .fusion import FusionRing
from .inverse import InverseProblem, derive, derive_commutant_ring, forward_problem
from .quadspace import QuadraticSpace, cyclic_space


@dataclass(frozen=True, eq=False)
class LatticeDatum:
    """Discriminant form of the rank-one lattice Z g with <g, g> = 2km: Z_{2km}, q(r) = r^2/(4km)."""

    k: int
    m: int
    space: QuadraticSpace

    @property
    def D(self):
        """The order-k subgroup generated by 2m."""
        C = self.space.group
        return subgroup_generate(C, [C(2 * self.m)])


def lattice_rank1(k: int, m: int) -> LatticeDatum:
    if k < 1 or m < 1:
        raise DomainError(f"k and m must be positive, got k={k}, m={m}")
    return LatticeDatum(k, m, cyclic_space(2 * k * m, 4 * k * m))


def affine_sl2(k: int) -> FusionRing:
    """Level-k affine sl2: labels L0..Lk, h_a = a(a+2)/(4(k+2)), truncated Clebsch-Gordan fusion."""
    if k < 1:
        raise DomainError(f"level must be positive, got {k}")
    labels = [f"L{a}" for a in range(k + 1)]
    N = {}
    for a in range(k + 1):
        for b in range(k + 1):
            for c in range(abs(a - b), min(a + b, 2 * k - a - b) + 1, 2):
                N[(f"L{a}", f"L{b}", f"L{c}")] = 1
    h = {f"L{a}": Fraction(a * (a + 2), 4 * (k + 2)) for a in range(k + 1)}
    return FusionRing(labels, "L0", {x: x for x in labels}, {x: QZ.of(v) for x, v in h.items()}, N, h)


def sl2_inverse_problem(k: int) -> InverseProblem:
    """U = affine sl2 level k over the lattice datum (k, 1); branching charge of La is a."""
    U = affine_sl2(k)
    lat = lattice_rank1(k, 1)
    C = lat.space.group
    return InverseProblem(
        U,
        lat.space,
        lat.D,
        {C(0): "L0", C(k): f"L{k}"},
        {f"L{a}": C(a) for a in range(k + 1)},
    )


def parafermion_sl2(k: int) -> FusionRing:
    """The fusion ring of K(sl2, k), derived as the commutant in affine sl2."""
    return derive_commutant_ring(sl2_inverse_problem(k))


def parafermion_problem(k: int) -> ExtensionProblem:
    """The forward problem W = K(sl2, k), V = lattice datum (k, 1), D of order k."""
    IP = sl2_inverse_problem(k)
    return forward_problem(IP, derive(IP))


def _lattice_parameters(P: ExtensionProblem) -> tuple[int, int]:
    C = P.C
    k = P.D.order
    if C.rank != 1 or C.order % (2 * k):
        raise DomainError(f"V-space must be cyclic of order 2km with k = |D| = {k}, got {C}")
    m = C.order // (2 * k)
    if P.V != lattice_rank1(k, m).space:
        raise DomainError(f"V-space is not the rank-one lattice datum q(r) = r^2/{4 * k * m}")
    if P.D != lattice_rank1(k, m).D:
        raise DomainError(f"D must be the subgroup generated by {2 * m}")
    return k, m


def deform(P: ExtensionProblem, s: int) -> ExtensionProblem:
    """Replace the lattice datum (k, m) by (k, m + sk), keeping W and the Z_k-grading.

    The grading moves along the isomorphism c*2m -> c*2(m+sk) of the two order-k subgroups.
    """
    k, m = _lattice_parameters(P)
    m2 = m + s * k
    if m2 <= 0:
        raise DomainError(f"m + sk must be positive, got {m2}")
    new = lattice_rank1(k, m2)
    C2 = new.space.group
    grading = {}
    for beta, x in P.grading.items():
        c = beta.coords[0] // (2 * m)
        grading[C2(2 * m2 * c)] = x
    return validate_extension(P.W, new.space, new.D, grading)


def by_name(name: str):
    """Resolve ``sl2@k``, ``lattice@k,m``, ``parafermion@k``, ``ext@k`` or ``inv@k``."""
    kind, _, arg = name.partition("@")
    try:
        nums = [int(t) for t in arg.split(",")] if arg else []
    except ValueError as exc:
        raise DomainError(f"bad catalog arguments in {name!r}") from exc
    table = {
        "sl2": (affine_sl2, 1),
        "lattice": (lambda k, m: lattice_rank1(k, m).space, 2),
        "parafermion": (parafermion_sl2, 1),
        "ext": (parafermion_problem, 1),
        "inv": (sl2_inverse_problem, 1),
    }
    if kind not in table or len(nums) != table[kind][1]:
        raise DomainError(f"unknown catalog entry {name!r}; known: sl2@k, lattice@k,m, parafermion@k, ext@k, inv@k")
    return table[kind][0](*nums)
