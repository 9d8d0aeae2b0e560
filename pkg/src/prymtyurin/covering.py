"""Branched-covering bookkeeping.

A covering of curves is recorded by its degree, the genus of the base, the
ramification profiles of its special fibers, and a count of additional simple
branch points.  A profile is the partition of the degree given by the
ramification indices over one branch point; its contribution to the total
ramification degree is sum(part - 1).

The genus upstairs is pinned down by Riemann-Hurwitz:

    2*g - 2 = degree * (2*base_genus - 2) + w

Scenarios that make g fractional or negative are rejected loudly; they are
never rounded or clamped.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class GenusValidationError(ValueError):
    """The covering data does not admit an integral, non-negative genus."""


def normalize_profile(parts) -> tuple[int, ...]:
    """Sort a ramification profile into weakly decreasing order and validate it."""
    prof = tuple(sorted((int(p) for p in parts), reverse=True))
    if not prof or any(p < 1 for p in prof):
        raise ValueError(f"profile parts must be positive integers: {parts!r}")
    if prof[0] < 2:
        raise ValueError(f"an unbranched profile {parts!r} must be omitted, not listed")
    return prof


def profile_contribution(parts) -> int:
    return sum(p - 1 for p in parts)


@dataclass(frozen=True)
class CoveringData:
    """A covering described by branch data only; branch points are anonymous.

    special_fibers holds one ramification profile per branch point that is not
    a plain simple one; simple_extra counts further branch points with profile
    (2, 1, ..., 1).
    """

    degree: int
    base_genus: int
    special_fibers: tuple[tuple[int, ...], ...] = field(default=())
    simple_extra: int = 0

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError(f"degree must be at least 1, got {self.degree}")
        if self.base_genus < 0:
            raise ValueError(f"base genus must be non-negative, got {self.base_genus}")
        if self.simple_extra < 0:
            raise ValueError(f"simple branch point count must be non-negative, got {self.simple_extra}")
        if self.simple_extra > 0 and self.degree < 2:
            raise ValueError("a degree-1 covering cannot have simple branch points")
        fibers = tuple(normalize_profile(f) for f in self.special_fibers)
        for prof in fibers:
            if sum(prof) != self.degree:
                raise ValueError(f"profile {prof} does not sum to the degree {self.degree}")
        object.__setattr__(self, "special_fibers", fibers)


def ramification_degree(cov: CoveringData) -> int:
    """Total ramification w, counting each simple branch point as 1."""
    return sum(profile_contribution(f) for f in cov.special_fibers) + cov.simple_extra


def riemann_hurwitz_genus(degree: int, base_genus: int, w: int) -> int:
    """Genus upstairs from 2g - 2 = degree*(2*base_genus - 2) + w.

    Raises GenusValidationError when the parity does not work out or the genus
    would be negative.
    """
    if degree < 1 or base_genus < 0 or w < 0:
        raise ValueError(f"bad covering data: degree={degree} base_genus={base_genus} w={w}")
    rhs = degree * (2 * base_genus - 2) + w
    if rhs % 2 != 0:
        raise GenusValidationError(
            f"ramification parity failure: degree*(2*{base_genus}-2) + {w} = {rhs} is odd"
        )
    g = rhs // 2 + 1
    if g < 0:
        raise GenusValidationError(
            f"negative genus {g} from degree={degree}, base_genus={base_genus}, w={w}"
        )
    return g


def upstairs_genus(cov: CoveringData) -> int:
    return riemann_hurwitz_genus(cov.degree, cov.base_genus, ramification_degree(cov))


def simple_budget(cov: CoveringData, target_upstairs_genus: int) -> int:
    """How many extra simple branch points make the genus upstairs hit the target.

    The count returned replaces cov.simple_extra.  Raises GenusValidationError
    when no non-negative count works (wrong parity or target too small).
    """
    if target_upstairs_genus < 0:
        raise ValueError(f"target genus must be non-negative, got {target_upstairs_genus}")
    w_special = sum(profile_contribution(f) for f in cov.special_fibers)
    # w_needed is even for every integral target, so the budget is a plain difference
    w_needed = 2 * target_upstairs_genus - 2 - cov.degree * (2 * cov.base_genus - 2)
    extra = w_needed - w_special
    if extra < 0:
        raise GenusValidationError(
            f"special fibers already force w = {w_special} > {w_needed} needed for genus {target_upstairs_genus}"
        )
    return extra
