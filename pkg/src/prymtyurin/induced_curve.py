"""The curve induced on n-subsets of a covering's fibers, and its special fibers.

A degree n+2 covering f of the line induces a covering h of degree
comb(n+2, 2) whose generic fiber consists of the n-subsets of the fiber of f.
Over a branch point of f some of those subsets collide, and the package keeps
two bookkeeping models for the collided fiber side by side:

- merged model ("paper"): points of the special fiber are classes of subsets
  with the same multiset of identification blocks, the ramification index of
  a class is its size;
- orbit model ("monodromy"): points are the orbits of the permutation induced
  on subsets by the local monodromy, the index is the orbit length.

Both are honest conventions; they can disagree on ramification (a merged
class may split into several orbits), so genus and fixed-point counts are
computed per model and reported side by side, never mixed.

For the grid construction (degree 9 over the line, fibers a 3x3 grid of
two-point divisors) the local monodromies are involutions whose cycles match
the divisor coincidence pattern exactly, so the two models agree fiber by
fiber and the same classes serve both.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

from .covering import riemann_hurwitz_genus
from .perms import Permutation, all_subsets, cycles, induced_subset_action, is_transitive

MERGED = "paper"
ORBIT = "monodromy"
MODELS = (MERGED, ORBIT)


@dataclass(frozen=True)
class FiberClass:
    """One point of a special fiber: the subsets (or grid cells) glued into it.

    members are sorted tuples of 1-based labels; block_multiset is the sorted
    tuple of block ids hit by a member, with multiplicity (merged subset model
    only, None otherwise).  The ramification index of the class is its size.
    """

    members: tuple[tuple[int, ...], ...]
    block_multiset: tuple[int, ...] | None = None

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class SpecialFiber:
    """A special fiber of the induced covering under one model."""

    model: str
    classes: tuple[FiberClass, ...]

    @property
    def w_contribution(self) -> int:
        return sum(c.size - 1 for c in self.classes)

    def class_sizes(self) -> tuple[int, ...]:
        return tuple(sorted((c.size for c in self.classes), reverse=True))


def blocks_from_parts(parts: tuple[int, ...], degree: int) -> tuple[tuple[int, ...], ...]:
    """Canonical identification blocks for a ramification profile.

    Branch points are anonymous, so only the partition shape matters; labels
    are assigned consecutively: (2, 2, 1) on 5 sheets becomes
    ((1, 2), (3, 4), (5,)).
    """
    if sum(parts) != degree:
        raise ValueError(f"profile {parts!r} does not sum to {degree}")
    blocks = []
    next_label = 1
    for p in sorted(parts, reverse=True):
        blocks.append(tuple(range(next_label, next_label + p)))
        next_label += p
    return tuple(blocks)


def _validate_blocks(blocks, degree: int) -> tuple[tuple[int, ...], ...]:
    flat = sorted(x for b in blocks for x in b)
    if flat != list(range(1, degree + 1)):
        raise ValueError(f"blocks {blocks!r} are not a partition of 1..{degree}")
    return tuple(tuple(sorted(b)) for b in blocks)


def merged_fiber(n: int, blocks, degree: int | None = None) -> SpecialFiber:
    """Merged-model special fiber for the subset construction.

    Two n-subsets land on the same point of the induced curve exactly when
    they hit the same identification blocks with the same multiplicities.
    Classes are ordered by their colex-smallest member.
    """
    degree = n + 2 if degree is None else degree
    blocks = _validate_blocks(blocks, degree)
    block_of = {x: i for i, b in enumerate(blocks) for x in b}
    grouped: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for s in all_subsets(degree, n):
        key = tuple(sorted(block_of[x] for x in s))
        grouped.setdefault(key, []).append(s)
    classes = [
        FiberClass(members=tuple(sorted(members)), block_multiset=key)
        for key, members in grouped.items()
    ]
    classes.sort(key=lambda c: c.members[0])
    return SpecialFiber(model=MERGED, classes=tuple(classes))


def partition_monodromy(blocks, degree: int) -> Permutation:
    """The canonical local monodromy with the given cycle partition: each
    block becomes one cycle on its sorted labels.

    Any other permutation with the same cycle partition is conjugate to this
    one by a block-preserving relabeling, so the induced orbit structure
    depends only on the partition.
    """
    blocks = _validate_blocks(blocks, degree)
    return Permutation.from_cycles(degree, tuple(b for b in blocks if len(b) > 1))


def orbit_fiber(n: int, blocks, degree: int | None = None) -> SpecialFiber:
    """Orbit-model special fiber: points are cycles of the induced local
    monodromy on n-subsets, ordered by their colex-smallest member."""
    degree = n + 2 if degree is None else degree
    monodromy = partition_monodromy(blocks, degree)
    induced = induced_subset_action(monodromy, n)
    subsets = all_subsets(degree, n)
    classes = []
    for cyc in cycles(induced):
        members = tuple(sorted(subsets[r - 1] for r in cyc))
        classes.append(FiberClass(members=members, block_multiset=None))
    classes.sort(key=lambda c: c.members[0])
    return SpecialFiber(model=ORBIT, classes=tuple(classes))


def subset_fiber(n: int, blocks, model: str) -> SpecialFiber:
    if model == MERGED:
        return merged_fiber(n, blocks)
    if model == ORBIT:
        return orbit_fiber(n, blocks)
    raise ValueError(f"unknown fiber model {model!r}")


def induced_degree(n: int) -> int:
    return comb(n + 2, 2)


def simple_fiber_w(n: int) -> int:
    """w-contribution of the induced fiber over a simple branch point.

    One transposition of sheets glues the n-subsets in C(n, n-1) = n pairs,
    identically in both models.
    """
    return n


def induced_w(n: int, simple_extra: int, special_blocks, model: str) -> int:
    """Total ramification of the induced covering."""
    w = simple_extra * simple_fiber_w(n)
    for blocks in special_blocks:
        w += subset_fiber(n, blocks, model).w_contribution
    return w


def curve_genus(n: int, upstairs_genus: int, special_parts, model: str) -> int:
    """Genus of the induced curve from Riemann-Hurwitz, per model.

    special_parts lists the ramification profiles of the base covering's
    special fibers; the remaining branch points needed to reach the given
    genus upstairs are simple.  Raises GenusValidationError when the model's
    ramification count is inconsistent with an actual curve.
    """
    from .covering import CoveringData, simple_budget

    cov = CoveringData(degree=n + 2, base_genus=0, special_fibers=tuple(tuple(p) for p in special_parts))
    extra = simple_budget(cov, upstairs_genus)
    blocks = [blocks_from_parts(p, n + 2) for p in cov.special_fibers]
    w = induced_w(n, extra, blocks, model)
    return riemann_hurwitz_genus(induced_degree(n), 0, w)


# --- grid fibers ------------------------------------------------------------


def grid_cells(m: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(1, m + 1) for j in range(1, m + 1)]


def grid_row_merge_fiber(m: int, row_blocks) -> SpecialFiber:
    """Grid special fiber where rows are glued by the given partition
    (columns stay distinct): cell (i, j) is identified with (i', j) when i, i'
    share a block.  This is simultaneously the merged classes and the orbits
    of the local monodromy acting on rows."""
    row_blocks = _validate_blocks(row_blocks, m)
    row_of = {x: bi for bi, b in enumerate(row_blocks) for x in b}
    grouped: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for i, j in grid_cells(m):
        grouped.setdefault((row_of[i], j), []).append((i, j))
    classes = [FiberClass(members=tuple(ms)) for ms in grouped.values()]
    classes.sort(key=lambda c: c.members[0])
    return SpecialFiber(model=MERGED, classes=tuple(classes))


def grid_pairing_fiber(m: int, shift: int = 0) -> SpecialFiber:
    """Grid special fiber where the two sides of the grid coincide through
    the matching i -> i + shift (mod m): cell (i, j) is glued with
    (j - shift, i + shift).  Cells on the matched diagonal are unramified.

    The gluing is its own inverse, so again merged classes and monodromy
    orbits are the same partition, for every shift.
    """
    if m < 1:
        raise ValueError("grid size must be positive")
    tau = lambda i: (i - 1 + shift) % m + 1
    tau_inv = lambda i: (i - 1 - shift) % m + 1
    seen: set[tuple[int, int]] = set()
    classes = []
    for cell in grid_cells(m):
        if cell in seen:
            continue
        partner = (tau_inv(cell[1]), tau(cell[0]))
        members = tuple(sorted({cell, partner}))
        seen.update(members)
        classes.append(FiberClass(members=members))
    classes.sort(key=lambda c: c.members[0])
    return SpecialFiber(model=MERGED, classes=tuple(classes))


def grid_cell_rank(m: int, cell: tuple[int, int]) -> int:
    """1-based row-major rank of a grid cell, matching grid_cells order."""
    i, j = cell
    return (i - 1) * m + j


def grid_row_monodromy(m: int, row_blocks) -> Permutation:
    """Local monodromy of a row-merge fiber as a permutation of the cells:
    the row coordinate moves by the block cycles, columns stay put."""
    sigma = partition_monodromy(row_blocks, m)
    images = [0] * (m * m)
    for i, j in grid_cells(m):
        images[grid_cell_rank(m, (i, j)) - 1] = grid_cell_rank(m, (sigma(i), j))
    return Permutation(images=tuple(images))


def grid_pairing_monodromy(m: int, shift: int = 0) -> Permutation:
    """Local monodromy of a pairing fiber: the involution whose orbits are
    exactly the classes of grid_pairing_fiber(m, shift)."""
    tau = lambda i: (i - 1 + shift) % m + 1
    tau_inv = lambda i: (i - 1 - shift) % m + 1
    images = [0] * (m * m)
    for i, j in grid_cells(m):
        images[grid_cell_rank(m, (i, j)) - 1] = grid_cell_rank(m, (tau_inv(j), tau(i)))
    return Permutation(images=tuple(images))


def with_model(fiber: SpecialFiber, model: str) -> SpecialFiber:
    """Retag a fiber whose classes are shared between the two models."""
    if model not in MODELS:
        raise ValueError(f"unknown fiber model {model!r}")
    return SpecialFiber(model=model, classes=fiber.classes)


# --- irreducibility proxy ---------------------------------------------------


def irreducibility_check(generators: tuple[Permutation, ...], k: int) -> bool:
    """Transitivity of the induced action on k-subsets.

    This is the combinatorial content of irreducibility of the induced curve:
    the monodromy image must not split the subset fiber.  It is a proxy, not
    a proof of irreducibility of any particular curve.
    """
    if not generators:
        return False
    induced = tuple(induced_subset_action(g, k) for g in generators)
    return is_transitive(induced, comb(generators[0].degree, k))
