"""Independent brute-force references used by the tests.

None of these go through the orbit/character machinery of the library; they
work directly with labels, charges and Fractions.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import product

from fuselift.exactnum import QZ
from fuselift.fusion import FusionRing


def frac_mod1(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


def hand_ising() -> FusionRing:
    """Ising written out by hand: 1, e, s with s x s = 1 + e."""
    N = {}
    for a in "1es":
        N[("1", a, a)] = N[(a, "1", a)] = 1
    N[("e", "e", "1")] = 1
    N[("e", "s", "s")] = N[("s", "e", "s")] = 1
    N[("s", "s", "1")] = N[("s", "s", "e")] = 1
    w = {"1": QZ(0, 1), "e": QZ(1, 2), "s": QZ(1, 16)}
    return FusionRing(["1", "e", "s"], "1", {a: a for a in "1es"}, w, N)


def sl2_chebyshev(k: int) -> dict[tuple[int, int], Counter]:
    """Level-k sl2 fusion from L1 x La = L(a-1) + L(a+1), truncated by L(k+1) = 0.

    Each La is a polynomial in x = L1; products are multiplied as polynomials
    and re-expanded in the La basis.
    """
    polys = [[Fraction(1)], [Fraction(0), Fraction(1)]]
    for a in range(2, k + 2):
        prev, cur = polys[a - 2], polys[a - 1]
        nxt = [Fraction(0)] + cur
        nxt = [c - (prev[j] if j < len(prev) else 0) for j, c in enumerate(nxt)]
        polys.append(nxt)

    def mul(p, q):
        out = [Fraction(0)] * (len(p) + len(q) - 1)
        for i, a in enumerate(p):
            for j, b in enumerate(q):
                out[i + j] += a * b
        return out

    def expand(p):
        # L_{k+1} = 0 and L_{k+1+j} = -L_{k+1-j-2}: reduce via the ideal
        # generated by L_{k+1}, then read off coefficients from the top degree.
        p = list(p)
        top = polys[k + 1]
        while len(p) > k + 1:
            c = p[-1]
            shift = len(p) - len(top)
            for j, t in enumerate(top):
                p[j + shift] -= c * t
            while p and p[-1] == 0:
                p.pop()
        coeffs = Counter()
        for deg in range(len(p) - 1, -1, -1):
            c = p[deg]
            if c:
                coeffs[deg] += c
                for j, t in enumerate(polys[deg]):
                    p[j] -= c * t
        assert not any(p)
        return coeffs

    return {(a, b): expand(mul(polys[a], polys[b])) for a in range(k + 1) for b in range(k + 1)}


def parafermion_direct(k: int) -> FusionRing:
    """K(sl2, k) from the coset fields (l, m): l + m even, m mod 2k, (l, m) ~ (k - l, m + k).

    Fusion (l1,m1) x (l2,m2) = sum_l N_sl2(l1,l2,l) (l, m1+m2).
    Weight l(l+2)/(4(k+2)) - m^2/(4k) mod 1.
    """
    fields = {}
    for l in range(k + 1):
        for m in range(2 * k):
            if (l + m) % 2 == 0:
                key = min((l, m), (k - l, (m + k) % (2 * k)))
                fields.setdefault(key, None)
    labels = [f"P{l}_{m}" for l, m in sorted(fields)]
    canon = {}
    for l in range(k + 1):
        for m in range(2 * k):
            if (l + m) % 2 == 0:
                lm = min((l, m), (k - l, (m + k) % (2 * k)))
                canon[(l, m)] = f"P{lm[0]}_{lm[1]}"
    cg = sl2_chebyshev(k)
    N = Counter()
    for (l1, m1), (l2, m2) in product(sorted(fields), repeat=2):
        for l, n in cg[(l1, l2)].items():
            N[(canon[(l1, m1)], canon[(l2, m2)], canon[(l, (m1 + m2) % (2 * k))])] = int(n)
    weight = {}
    for (l, m), name in canon.items():
        h = Fraction(l * (l + 2), 4 * (k + 2)) - Fraction(m * m, 4 * k)
        weight.setdefault(name, frac_mod1(h))
    dual = {canon[(l, m)]: canon[(l, (-m) % (2 * k))] for (l, m) in canon}
    return FusionRing(labels, canon[(0, 0)], dual, {a: QZ.of(w) for a, w in weight.items()}, dict(N))


def bw(W: FusionRing, a: str, x: str) -> Fraction:
    """Monodromy exponent h(a x x) - h(a) - h(x) for a simple current a."""
    (y, _), = W.fuse(a, x)
    return (W.weight[y] - W.weight[a] - W.weight[x]).value


def brute_sectors(P, chi=None) -> list[frozenset[tuple[str, tuple[int, ...]]]]:
    """Sectors as D-orbits of pairs (x, c) whose monodromy with every W^b (x) V^b equals chi(b).

    ``chi`` maps D-elements to Fractions mod 1; ``None`` means the trivial character.
    """
    W, V, D = P.W, P.V, P.D
    chi = chi or {b: Fraction(0) for b in D}
    good = set()
    for x in W.labels:
        for c in V.group.elements():
            if all(frac_mod1(bw(W, P.grading[b], x) + V.b(b, c).value - chi[b]) == 0 for b in D):
                good.add((x, c.coords))
    orbits, seen = [], set()
    for x, c in sorted(good):
        if (x, c) in seen:
            continue
        o = frozenset((W.act(P.grading[b], x), (V.group(*c) + b).coords) for b in D)
        assert o <= good
        seen |= o
        orbits.append(o)
    return orbits


def sector_pairs(S) -> frozenset[tuple[str, tuple[int, ...]]]:
    return frozenset((x, c.coords) for x, c in S.decomposition)


def induced_fusion(P, S1, S2, S3) -> int:
    """N_U(S1, S2, S3) as dim Hom over W (x) V from one constituent of S1 and of S2 into S3."""
    (x1, c1), (x2, c2) = S1.decomposition[0], S2.decomposition[0]
    target = c1 + c2
    return sum(P.W.N(x1, x2, x3) for x3, c3 in S3.decomposition if c3 == target)
