"""Partitions, symmetric-group structure, and symmetric-function counting.

Partitions are plain tuples of weakly decreasing positive ints (the empty
tuple is the partition of 0); they key every coefficient table in the
package.  Reverse-lexicographic order, which refines dominance, is the
canonical enumeration order, matching the row order of the degree-4
coefficient tables used elsewhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator

Partition = tuple[int, ...]


class UnequalWeightError(ValueError):
    """Dominance comparison of partitions with different weights."""


def partition(parts: Iterable[int]) -> Partition:
    """Canonicalise to a sorted tuple, dropping zero parts."""
    p = tuple(sorted((int(x) for x in parts if int(x) != 0), reverse=True))
    if any(x < 0 for x in p):
        raise ValueError(f"negative part in {p}")
    return p


def weight(lam: Partition) -> int:
    return sum(lam)


def length(lam: Partition) -> int:
    return len(lam)


def format_partition(lam: Partition) -> str:
    return ",".join(str(x) for x in lam) if lam else "0"


def parse_partition(s: str) -> Partition:
    s = s.strip()
    if s in ("0", "", "()"):
        return ()
    return partition(int(tok) for tok in s.split(","))


@lru_cache(maxsize=None)
def partitions_of(k: int) -> tuple[Partition, ...]:
    """All partitions of k in reverse-lexicographic (dominance-refining) order."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k > 40:
        raise ValueError("partitions_of capped at k <= 40")

    def gen(rem: int, largest: int) -> Iterator[tuple[int, ...]]:
        if rem == 0:
            yield ()
            return
        for first in range(min(rem, largest), 0, -1):
            for rest in gen(rem - first, first):
                yield (first,) + rest

    return tuple(gen(k, k))


def dominance_leq(mu: Partition, lam: Partition) -> bool:
    """mu <= lam in dominance order: partial sums of mu never exceed lam's."""
    if sum(mu) != sum(lam):
        raise UnequalWeightError(f"|{mu}| != |{lam}|")
    acc_m = acc_l = 0
    for i in range(max(len(mu), len(lam))):
        acc_m += mu[i] if i < len(mu) else 0
        acc_l += lam[i] if i < len(lam) else 0
        if acc_m > acc_l:
            return False
    return True


def zee(lam: Partition) -> int:
    """Centraliser order z_lambda = prod_i i^{a_i} a_i! (a_i = #parts equal to i)."""
    counts: dict[int, int] = {}
    for p in lam:
        counts[p] = counts.get(p, 0) + 1
    out = 1
    for i, a in counts.items():
        out *= i**a * math.factorial(a)
    return out


def monomial_principal(lam: Partition, n: int) -> Fraction:
    """m_lambda(1^n): the number of distinct monomials of type lambda; 0 if n < l."""
    l = len(lam)
    if n < l:
        return Fraction(0)
    counts: dict[int, int] = {}
    for p in lam:
        counts[p] = counts.get(p, 0) + 1
    denom = math.factorial(n - l)
    for a in counts.values():
        denom *= math.factorial(a)
    return Fraction(math.factorial(n), denom)


# ---------------------------------------------------------------------------
# permutations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Permutation:
    """Permutation of {1..k} stored as the image tuple (images[i-1] = sigma(i))."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(self.images)}: {self.images}")

    @classmethod
    def identity(cls, k: int) -> "Permutation":
        return cls(tuple(range(1, k + 1)))

    @classmethod
    def from_cycles(cls, k: int, *cycles: tuple[int, ...]) -> "Permutation":
        img = list(range(1, k + 1))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + (cyc[0],)):
                img[a - 1] = b
        return cls(tuple(img))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        # (self * other)(i) = self(other(i))
        return Permutation(tuple(self.images[j - 1] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Permutation(tuple(inv))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * len(self.images)
        out = []
        for start in range(1, len(self.images) + 1):
            if seen[start - 1]:
                continue
            cyc = [start]
            seen[start - 1] = True
            j = self(start)
            while j != start:
                cyc.append(j)
                seen[j - 1] = True
                j = self(j)
            out.append(tuple(cyc))
        return out


def cycle_type(perm: Permutation) -> Partition:
    return partition(len(c) for c in perm.cycles())


def coset_type(perm: Permutation) -> Partition:
    """Coset type of sigma in S_2k: half the component sizes of the graph G(sigma).

    G(sigma) has vertices 1..2k and edges {2i-1, 2i} plus {sigma(2i-1), sigma(2i)}.
    """
    deg = perm.degree
    if deg % 2 != 0:
        raise ValueError("coset_type needs a permutation of even degree")
    parent = list(range(deg + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    for i in range(1, deg // 2 + 1):
        union(2 * i - 1, 2 * i)
        union(perm(2 * i - 1), perm(2 * i))
    sizes: dict[int, int] = {}
    for v in range(1, deg + 1):
        r = find(v)
        sizes[r] = sizes.get(r, 0) + 1
    return partition(s // 2 for s in sizes.values())


# ---------------------------------------------------------------------------
# pair partitions and the hyperoctahedral group
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PairPartition:
    """k disjoint pairs covering {1..2k}, in canonical order.

    Canonical form: pairs sorted by first element, each pair increasing, and
    the first elements increasing (so sigma(1)=1 < sigma(3) < ...).
    """

    pairs: tuple[tuple[int, int], ...]

    @property
    def k(self) -> int:
        return len(self.pairs)

    def permutation(self) -> Permutation:
        images = []
        for a, b in self.pairs:
            images.extend((a, b))
        return Permutation(tuple(images))


@lru_cache(maxsize=None)
def pair_partitions(k: int) -> tuple[PairPartition, ...]:
    """All (2k-1)!! pair partitions of {1..2k}."""
    if k > 8:
        raise ValueError("pair_partitions capped at k <= 8")

    def gen(avail: tuple[int, ...]):
        if not avail:
            yield ()
            return
        a = avail[0]
        for idx in range(1, len(avail)):
            b = avail[idx]
            rest = avail[1:idx] + avail[idx + 1 :]
            for tail in gen(rest):
                yield ((a, b),) + tail

    return tuple(PairPartition(p) for p in gen(tuple(range(1, 2 * k + 1))))


@lru_cache(maxsize=None)
def hyperoctahedral(k: int) -> tuple[Permutation, ...]:
    """The subgroup H_k < S_2k of order 2^k k!, by closure of its generators."""
    if k > 5:
        raise ValueError("hyperoctahedral capped at k <= 5")
    deg = 2 * k
    gens = [Permutation.from_cycles(deg, (2 * i - 1, 2 * i)) for i in range(1, k + 1)]
    gens += [
        Permutation.from_cycles(deg, (2 * i - 1, 2 * j - 1), (2 * i, 2 * j))
        for i in range(1, k + 1)
        for j in range(i + 1, k + 1)
    ]
    group = {Permutation.identity(deg)}
    frontier = list(group)
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = g * s
                if h not in group:
                    group.add(h)
                    nxt.append(h)
        frontier = nxt
    assert len(group) == 2**k * math.factorial(k)
    return tuple(sorted(group, key=lambda p: p.images))


# ---------------------------------------------------------------------------
# irreducible characters of S_k (Murnaghan-Nakayama on beta-numbers)
# ---------------------------------------------------------------------------


def _beta_numbers(lam: Partition, m: int) -> tuple[int, ...]:
    padded = lam + (0,) * (m - len(lam))
    return tuple(padded[i] + (m - 1 - i) for i in range(m))


def _partition_from_betas(betas: Iterable[int]) -> Partition:
    bs = sorted(betas, reverse=True)
    m = len(bs)
    return partition(bs[i] - (m - 1 - i) for i in range(m))


@lru_cache(maxsize=None)
def character(lam: Partition, mu: Partition) -> int:
    """chi^lambda(mu) for partitions of the same k (Murnaghan-Nakayama)."""
    if sum(lam) != sum(mu):
        raise UnequalWeightError(f"|{lam}| != |{mu}|")
    if sum(lam) > 12:
        raise ValueError("character capped at k <= 12")
    if not lam:
        return 1
    r = mu[0]
    rest = mu[1:]
    m = len(lam)
    betas = _beta_numbers(lam, m)
    beta_set = set(betas)
    total = 0
    for b in betas:
        nb = b - r
        if nb < 0 or nb in beta_set:
            continue
        height = sum(1 for c in betas if nb < c < b)
        sub = _partition_from_betas([c for c in betas if c != b] + [nb])
        total += (-1) ** height * character(sub, rest)
    return total


@dataclass(frozen=True)
class CharacterTable:
    """Full character table of S_k: values[(lam, mu)] = chi^lambda(mu)."""

    k: int
    values: dict

    @classmethod
    def build(cls, k: int) -> "CharacterTable":
        parts = partitions_of(k)
        vals = {(lam, mu): character(lam, mu) for lam in parts for mu in parts}
        return cls(k, vals)

    def chi(self, lam: Partition, mu: Partition) -> int:
        return self.values[(lam, mu)]

    def check_row_orthogonality(self) -> bool:
        parts = partitions_of(self.k)
        fact = math.factorial(self.k)
        for lam in parts:
            for lam2 in parts:
                s = sum(
                    Fraction(fact, zee(mu)) * self.chi(lam, mu) * self.chi(lam2, mu)
                    for mu in parts
                )
                if s != (fact if lam == lam2 else 0):
                    return False
        return True
