"""Fixed points of a correspondence on special fibers, and nesting certificates.

On a special fiber the points of the induced curve are classes of generic
fiber points (see induced_curve).  The correspondence descends to classes by
picking a representative, listing its image points and projecting them to
classes.  That projection must not depend on the representative; the
constructor checks every representative and refuses the fiber otherwise.

A class Q is a fixed point when Q appears in its own image D(Q); the
multiplicity of the appearance is the local intersection number with the
diagonal.  The criterion needs, for 2n fixed points in total, an ordering
p_1, ..., p_n of n distinct fixed points with

    p_1, ..., p_i  in  D(p_i)   and   mult(p_i in D(p_i)) = 1   for each i.

Since images stay inside the fiber of the base point, such a chain lives in a
single special fiber; the search backtracks over orderings fiber by fiber and
returns the first chain in class order, which makes certificates
deterministic.  Certificates carry enough raw data to be re-verified by
check_certificate, which recomputes every multiplicity from scratch.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .correspondence import FiberCorrespondence, Matrix
from .induced_curve import FiberClass, SpecialFiber


@dataclass(frozen=True)
class ClassAction:
    """The correspondence on one special fiber, as a matrix over classes.

    action[q][r] is the multiplicity of class r in the image of class q.
    Every row sums to the bidegree: images have constant total degree.
    """

    fiber: SpecialFiber
    action: Matrix
    bidegree: int

    def self_multiplicity(self, q: int) -> int:
        return self.action[q][q]

    def fixed_class_indices(self) -> tuple[int, ...]:
        return tuple(q for q in range(len(self.action)) if self.action[q][q] > 0)


def class_action(corr: FiberCorrespondence, fiber: SpecialFiber, point_rank) -> ClassAction:
    """Descend a generic-fiber correspondence to the classes of a special fiber.

    point_rank maps a member descriptor (subset tuple or grid cell) to its row
    index in corr.matrix.  Every representative of every class is checked to
    produce the same class multiset; a discrepancy means the identification
    is not compatible with the correspondence and raises ValueError.
    """
    which: dict[tuple[int, ...], int] = {}
    for ci, cls in enumerate(fiber.classes):
        for member in cls.members:
            if member in which:
                raise ValueError(f"member {member} appears in two classes")
            which[member] = ci
    covered = sum(len(c.members) for c in fiber.classes)
    if covered != corr.size:
        raise ValueError(f"classes cover {covered} points, matrix has {corr.size}")

    n_classes = len(fiber.classes)
    rows = []
    for ci, cls in enumerate(fiber.classes):
        projected: Counter | None = None
        for member in cls.members:
            row = corr.matrix[point_rank(member)]
            counts: Counter = Counter()
            for descriptor, cj in which.items():
                mult = row[point_rank(descriptor)]
                if mult:
                    counts[cj] += mult
            if projected is None:
                projected = counts
            elif projected != counts:
                raise ValueError(
                    f"class action depends on the representative in class {ci}: "
                    f"{dict(projected)} vs {dict(counts)} at {member}"
                )
        rows.append(tuple(projected.get(cj, 0) for cj in range(n_classes)))
    act = ClassAction(fiber=fiber, action=tuple(rows), bidegree=corr.bidegree)
    for ci, row in enumerate(act.action):
        if sum(row) != corr.bidegree:
            raise ValueError(f"row {ci} of the class action sums to {sum(row)}, not {corr.bidegree}")
    return act


def subset_point_rank(n: int):
    from .perms import subset_rank

    return lambda member: subset_rank(member, n + 2)


def grid_point_rank(m: int):
    return lambda cell: (cell[0] - 1) * m + (cell[1] - 1)


def special_fiber_action(kind: str, parameter: int, identification, model: str) -> ClassAction:
    """One-call construction of the class action on a special fiber.

    kind "subset": identification is the block partition of the sheet labels.
    kind "grid": identification is {"rows": partition} for a fiber gluing
    rows, or {"pairing_shift": s} for a fiber gluing the two grid directions
    through the shift matching; for the grid both models share one partition.
    """
    from .correspondence import build_grid_matrix, build_subset_matrix
    from .induced_curve import (
        grid_pairing_fiber,
        grid_row_merge_fiber,
        subset_fiber,
        with_model,
    )

    if kind == "subset":
        corr = build_subset_matrix(parameter)
        fiber = subset_fiber(parameter, identification, model)
        return class_action(corr, fiber, subset_point_rank(parameter))
    if kind == "grid":
        corr = build_grid_matrix(parameter)
        if "rows" in identification:
            fiber = grid_row_merge_fiber(parameter, identification["rows"])
        elif "pairing_shift" in identification:
            fiber = grid_pairing_fiber(parameter, identification["pairing_shift"])
        else:
            raise ValueError(f"grid identification needs 'rows' or 'pairing_shift': {identification!r}")
        return class_action(corr, with_model(fiber, model), grid_point_rank(parameter))
    raise ValueError(f"unknown correspondence kind {kind!r}")


@dataclass(frozen=True)
class FixedClass:
    fiber_index: int
    class_index: int
    multiplicity: int
    members: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class FixedPointReport:
    """All fixed classes over all special fibers, with the actions as evidence."""

    fixed: tuple[FixedClass, ...]
    actions: tuple[ClassAction, ...]

    @property
    def delta_dot_d(self) -> int:
        return sum(f.multiplicity for f in self.fixed)

    @property
    def is_even(self) -> bool:
        return self.delta_dot_d % 2 == 0

    @property
    def half(self) -> int | None:
        return self.delta_dot_d // 2 if self.is_even else None


def fixed_point_scan(actions) -> FixedPointReport:
    actions = tuple(actions)
    fixed = []
    for fi, act in enumerate(actions):
        for ci in act.fixed_class_indices():
            fixed.append(
                FixedClass(
                    fiber_index=fi,
                    class_index=ci,
                    multiplicity=act.self_multiplicity(ci),
                    members=act.fiber.classes[ci].members,
                )
            )
    return FixedPointReport(fixed=tuple(fixed), actions=actions)


@dataclass(frozen=True)
class NestingCertificate:
    """A chain p_1..p_n witnessing the nesting condition on one fiber.

    memberships[i][j] is the multiplicity of p_{j+1} in D(p_{i+1}) for j <= i;
    the last entry of each row is the self multiplicity, always 1.
    """

    fiber_index: int
    chain: tuple[int, ...]
    chain_members: tuple[tuple[tuple[int, ...], ...], ...]
    memberships: tuple[tuple[int, ...], ...]

    @property
    def length(self) -> int:
        return len(self.chain)


@dataclass(frozen=True)
class NestingFailure:
    reason: str
    fibers_searched: int
    orderings_tried: int


def nesting_search(report: FixedPointReport, bidegree: int):
    """Find the lexicographically first nesting chain of length delta/2.

    Returns a NestingCertificate, or a NestingFailure when the hypotheses on
    the fixed-point count already fail or no ordering works on any fiber.
    An empty chain (no fixed points at all) certifies trivially.
    """
    if not report.is_even:
        return NestingFailure(
            reason=f"fixed-point count {report.delta_dot_d} is odd",
            fibers_searched=0,
            orderings_tried=0,
        )
    n = report.half
    if n > bidegree:
        return NestingFailure(
            reason=f"chain length {n} exceeds the bidegree {bidegree}",
            fibers_searched=0,
            orderings_tried=0,
        )
    if n == 0:
        return NestingCertificate(fiber_index=-1, chain=(), chain_members=(), memberships=())

    tried = 0
    searched = 0
    for fi, act in enumerate(report.actions):
        # chain members must share a fiber: every D(p_i) lies in the fiber of p_i
        candidates = [q for q in act.fixed_class_indices() if act.self_multiplicity(q) == 1]
        if len(candidates) < n:
            continue
        searched += 1
        chain: list[int] = []

        def extend() -> bool:
            nonlocal tried
            if len(chain) == n:
                return True
            for q in candidates:
                if q in chain:
                    continue
                tried += 1
                row = act.action[q]
                if all(row[p] >= 1 for p in chain):
                    chain.append(q)
                    if extend():
                        return True
                    chain.pop()
            return False

        if extend():
            memberships = tuple(
                tuple(act.action[qi][qj] for qj in chain[: i + 1])
                for i, qi in enumerate(chain)
            )
            return NestingCertificate(
                fiber_index=fi,
                chain=tuple(chain),
                chain_members=tuple(act.fiber.classes[q].members for q in chain),
                memberships=memberships,
            )
    return NestingFailure(
        reason=f"no ordering of {n} fixed points nests on any special fiber",
        fibers_searched=searched,
        orderings_tried=tried,
    )


# --- independent certificate checking ---------------------------------------
#
# check_certificate recomputes every claimed multiplicity from the raw fiber
# data with its own set arithmetic: it never consults the matrix module or
# the ClassAction that produced the certificate.


def _subset_image(member: tuple[int, ...], n: int, degree: int):
    import itertools

    here = set(member)
    for other in itertools.combinations(range(1, degree + 1), n):
        if len(here & set(other)) == n - 2:
            yield other


def _grid_image(member: tuple[int, ...], m: int):
    i, j = member
    for k in range(1, m + 1):
        if k != j:
            yield (i, k)
        if k != i:
            yield (k, j)


def check_certificate(cert: NestingCertificate, fiber: SpecialFiber, kind: str, parameter: int) -> bool:
    """Re-verify a nesting certificate from the fiber classes alone.

    kind is "subset" (parameter n, labels 1..n+2) or "grid" (parameter m).
    Every membership multiplicity is recomputed from every representative by
    direct enumeration of image points.
    """
    if cert.length == 0:
        return True
    if len(set(cert.chain)) != cert.length:
        return False
    which: dict[tuple[int, ...], int] = {}
    for ci, cls in enumerate(fiber.classes):
        for member in cls.members:
            which[member] = ci

    def image_of(member):
        if kind == "subset":
            return _subset_image(member, parameter, parameter + 2)
        if kind == "grid":
            return _grid_image(member, parameter)
        raise ValueError(f"unknown correspondence kind {kind!r}")

    for i, qi in enumerate(cert.chain):
        if cert.chain_members[i] != fiber.classes[qi].members:
            return False
        expected = dict(zip(cert.chain[: i + 1], cert.memberships[i]))
        for member in fiber.classes[qi].members:
            counts: Counter = Counter()
            for img in image_of(member):
                if img not in which:
                    return False  # image escapes the declared classes
                counts[which[img]] += 1
            for qj, mult in expected.items():
                if counts.get(qj, 0) != mult:
                    return False
        # the self multiplicity must be exactly 1 and every listed point present
        if cert.memberships[i][i] != 1:
            return False
        if any(m < 1 for m in cert.memberships[i]):
            return False
    return True
