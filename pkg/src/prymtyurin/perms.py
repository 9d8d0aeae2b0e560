"""Exact permutations of labeled sheets and their action on k-subsets.

Conventions used across the package:

- sheet labels are 1-based in every public interface
- a permutation is stored in one-line notation: ``images[x-1]`` is the
  image of the label ``x``
- k-subsets of ``{1..d}`` are written as sorted tuples and ordered
  colexicographically; ranks are 0-based

Everything here is plain integer arithmetic, no floating point anywhere.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb


@dataclass(frozen=True)
class Permutation:
    """A bijection of ``{1..degree}`` in one-line notation.

    >>> p = Permutation((2, 1, 3))
    >>> p(1), p(2), p(3)
    (2, 1, 3)
    """

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"not a bijection of 1..{len(self.images)}: {self.images!r}")

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(tuple(range(1, degree + 1)))

    @classmethod
    def from_cycles(cls, degree: int, cycles: tuple[tuple[int, ...], ...]) -> "Permutation":
        """Build a permutation from disjoint cycles (labels not mentioned are fixed).

        >>> Permutation.from_cycles(4, ((1, 2), (3, 4))).images
        (2, 1, 4, 3)
        """
        images = list(range(1, degree + 1))
        seen: set[int] = set()
        for cyc in cycles:
            for x in cyc:
                if not 1 <= x <= degree:
                    raise ValueError(f"cycle entry {x} outside 1..{degree}")
                if x in seen:
                    raise ValueError(f"label {x} appears in two cycles")
                seen.add(x)
            for i, x in enumerate(cyc):
                images[x - 1] = cyc[(i + 1) % len(cyc)]
        return cls(tuple(images))

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for x, y in enumerate(self.images, start=1):
            inv[y - 1] = x
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(y == x for x, y in enumerate(self.images, start=1))

    def apply_to_set(self, subset: tuple[int, ...]) -> tuple[int, ...]:
        """Image of a set of labels, returned sorted."""
        return tuple(sorted(self.images[x - 1] for x in subset))


def compose(a: Permutation, b: Permutation) -> Permutation:
    """The composition a after b: ``compose(a, b)(x) == a(b(x))``.

    >>> a = Permutation((2, 3, 1))
    >>> b = Permutation((2, 1, 3))
    >>> compose(a, b).images
    (3, 2, 1)
    """
    if a.degree != b.degree:
        raise ValueError(f"degree mismatch: {a.degree} vs {b.degree}")
    return Permutation(tuple(a.images[y - 1] for y in b.images))


def cycles(p: Permutation) -> tuple[tuple[int, ...], ...]:
    """Disjoint cycles of p including fixed points, each starting at its
    smallest label, listed in order of smallest label."""
    seen: set[int] = set()
    out = []
    for start in range(1, p.degree + 1):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        x = p(start)
        while x != start:
            cyc.append(x)
            seen.add(x)
            x = p(x)
        out.append(tuple(cyc))
    return tuple(out)


def cycle_type(p: Permutation) -> tuple[int, ...]:
    """Cycle lengths of p in weakly decreasing order; parts sum to the degree.

    >>> cycle_type(Permutation.from_cycles(4, ((1, 2), (3, 4))))
    (2, 2)
    >>> cycle_type(Permutation.identity(6))
    (1, 1, 1, 1, 1, 1)
    """
    return tuple(sorted((len(c) for c in cycles(p)), reverse=True))


def transposition(degree: int, i: int, j: int) -> Permutation:
    if i == j:
        raise ValueError("a transposition needs two distinct labels")
    return Permutation.from_cycles(degree, ((i, j),))


# --- colexicographic k-subsets ---------------------------------------------
#
# For a sorted subset s_1 < s_2 < ... < s_k of {1..d} the colex rank is
#   sum over positions i of comb(s_i - 1, i)
# which enumerates subsets ordered by their largest element, then the next
# largest, and so on.  The rank never depends on d, but d bounds the range.


def subset_rank(subset: tuple[int, ...], universe: int) -> int:
    """0-based colex rank of a sorted k-subset of {1..universe}.

    >>> [subset_rank(s, 4) for s in ((1, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 4))]
    [0, 1, 2, 3, 4, 5]
    """
    prev = 0
    for i, x in enumerate(subset, start=1):
        if not prev < x <= universe:
            raise ValueError(f"not a sorted subset of 1..{universe}: {subset!r}")
        prev = x
    return sum(comb(x - 1, i) for i, x in enumerate(subset, start=1))


def subset_unrank(rank: int, universe: int, k: int) -> tuple[int, ...]:
    """Inverse of subset_rank: the k-subset of {1..universe} with the given rank."""
    if not 0 <= rank < comb(universe, k):
        raise ValueError(f"rank {rank} outside 0..{comb(universe, k) - 1}")
    out = []
    r = rank
    for i in range(k, 0, -1):
        # largest c with comb(c, i) <= r; the element is c + 1
        c = i - 1
        while comb(c + 1, i) <= r:
            c += 1
        out.append(c + 1)
        r -= comb(c, i)
    return tuple(reversed(out))


def all_subsets(universe: int, k: int) -> list[tuple[int, ...]]:
    """All k-subsets of {1..universe} in colex order."""
    subs = [tuple(s) for s in itertools.combinations(range(1, universe + 1), k)]
    subs.sort(key=lambda s: subset_rank(s, universe))
    return subs


def induced_subset_action(p: Permutation, k: int) -> Permutation:
    """The permutation induced by p on the colex-ranked k-subsets of its domain.

    This is a group homomorphism: the induced action of a composition is the
    composition of the induced actions, and the identity induces the identity.

    >>> cycle_type(induced_subset_action(Permutation.from_cycles(4, ((1, 2),)), 2))
    (2, 2, 1, 1)
    """
    if not 0 <= k <= p.degree:
        raise ValueError(f"subset size {k} outside 0..{p.degree}")
    d = p.degree
    images = [0] * comb(d, k)
    for s in itertools.combinations(range(1, d + 1), k):
        images[subset_rank(s, d)] = subset_rank(p.apply_to_set(s), d) + 1
    return Permutation(tuple(images))


def orbits(generators: tuple[Permutation, ...], degree: int | None = None) -> tuple[tuple[int, ...], ...]:
    """Orbits of {1..degree} under the group generated by the given permutations,
    each orbit sorted, orbits ordered by smallest element.

    Computed by breadth-first closure under the generators; the group itself is
    never enumerated.  With no generators the degree is required and every
    label is its own orbit.
    """
    if degree is None:
        if not generators:
            raise ValueError("degree required when no generators are given")
        degree = generators[0].degree
    for g in generators:
        if g.degree != degree:
            raise ValueError(f"generator degree {g.degree} != {degree}")
    seen: set[int] = set()
    out = []
    for start in range(1, degree + 1):
        if start in seen:
            continue
        orbit = {start}
        frontier = [start]
        while frontier:
            x = frontier.pop()
            for g in generators:
                y = g(x)
                if y not in orbit:
                    orbit.add(y)
                    frontier.append(y)
        seen |= orbit
        out.append(tuple(sorted(orbit)))
    return tuple(out)


def is_transitive(generators: tuple[Permutation, ...], degree: int | None = None) -> bool:
    return len(orbits(generators, degree)) == 1
