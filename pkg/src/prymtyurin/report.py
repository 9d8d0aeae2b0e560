"""End-to-end verdict assembly.

Runs a scenario through the whole pipeline -- covering bookkeeping, induced
curve genus, quadratic identity and exponent, fixed classes, nesting
certificate, dimension and auxiliary line-bundle degree -- under one or both
fiber models, and packages everything into a report that serializes to
canonical JSON or an aligned text table.

All arithmetic is exact.  The dimension is a Fraction; a non-integral value
is reported as an inconsistency diagnostic, never rounded.  Verdicts only
ever claim the combinatorial hypotheses: the analytic ones (primitivity of
the correspondence class, smoothness of the curve) are marked unchecked.
"""

from __future__ import annotations

import dataclasses
import json
from fractions import Fraction

from .correspondence import (
    ExponentExtractionError,
    FiberCorrespondence,
    QuadraticIdentity,
    build_grid_matrix,
    build_subset_matrix,
    discover_identity,
    exponent_from_identity,
)
from .covering import (
    CoveringData,
    GenusValidationError,
    ramification_degree,
    riemann_hurwitz_genus,
    simple_budget,
    upstairs_genus,
)
from .fixed_points import (
    FixedPointReport,
    NestingCertificate,
    check_certificate,
    class_action,
    fixed_point_scan,
    grid_point_rank,
    nesting_search,
    subset_point_rank,
)
from .induced_curve import (
    MERGED,
    ORBIT,
    SpecialFiber,
    blocks_from_parts,
    grid_pairing_fiber,
    grid_pairing_monodromy,
    grid_row_merge_fiber,
    grid_row_monodromy,
    induced_degree,
    induced_w,
    irreducibility_check,
    partition_monodromy,
    subset_fiber,
    with_model,
)
from .perms import Permutation, is_transitive, transposition
from .scenario import BOTH, GRID, SUBSET, Scenario, scenario_to_dict

UNCHECKED = "unchecked"
SYNTHESIZED = "synthesized"
EXPLICIT = "explicit"

# the grid family's fixed fiber layout: two fibers merging rows {1,2} of the
# grid, then one pairing fiber per branch point of the double covering,
# cycling through the three diagonal shifts
GRID_ROW_BLOCKS = ((1, 2), (3,))


class DimensionError(ValueError):
    """The dimension formula was fed inconsistent inputs."""


def prym_dimension(genus: int, bidegree: int, fixed_count: int, exponent: int) -> Fraction:
    """(genus - bidegree + fixed_count/2) / exponent, exact.

    fixed_count is the full weighted number of fixed points, the quantity
    whose half enters the formula.  Integrality of the result is the
    caller's diagnostic; this function only rejects outright nonsense.
    """
    if exponent < 2:
        raise DimensionError(f"exponent must be >= 2, got {exponent}")
    if genus < 0 or bidegree < 0 or fixed_count < 0:
        raise DimensionError("genus, bidegree and fixed count must all be non-negative")
    dim = Fraction(2 * (genus - bidegree) + fixed_count, 2 * exponent)
    if dim < 0:
        raise DimensionError(f"dimension came out negative: {dim}")
    return dim


def epsilon_degree(genus: int, fixed_count: int) -> int:
    """Degree of the auxiliary line bundle: genus + fixed_count/2 - 1."""
    if fixed_count < 0 or fixed_count % 2 != 0:
        raise ValueError(f"fixed-point count must be even and non-negative, got {fixed_count}")
    if genus < 0:
        raise ValueError(f"genus must be non-negative, got {genus}")
    return genus + fixed_count // 2 - 1


@dataclasses.dataclass(frozen=True)
class Hypotheses:
    quadratic_ok: bool
    fixed_even: bool
    n_le_d: bool
    nesting_ok: bool
    irreducible: bool
    primitivity: str = UNCHECKED
    smoothness: str = UNCHECKED

    @property
    def combinatorial_ok(self) -> bool:
        return all(
            (self.quadratic_ok, self.fixed_even, self.n_le_d, self.nesting_ok, self.irreducible)
        )


@dataclasses.dataclass(frozen=True)
class ModelReport:
    """Everything a single fiber model says about the scenario.

    error is set when the model's own arithmetic is inconsistent (genus
    validation, negative dimension); fields computed before the failure are
    kept for diagnosis, the rest stay None.
    """

    model: str
    covering: CoveringData
    induced_deg: int
    fibers: tuple[SpecialFiber, ...]
    total_ramification: int
    fixed: FixedPointReport
    simple_fibers_fixed_free: bool | None
    error: str | None = None
    genus: int | None = None
    nesting: object | None = None
    certificate_checked: bool = False
    dim_p: Fraction | None = None
    dim_integral: bool | None = None
    epsilon_deg: int | None = None
    hypotheses: Hypotheses | None = None
    verified: bool = False


@dataclasses.dataclass(frozen=True)
class PrymReport:
    scenario: Scenario
    size: int
    bidegree: int
    identity: QuadraticIdentity | None
    identity_verified: bool
    q: int | None
    exponent_note: str
    irreducible: bool
    irreducibility_basis: str
    models: tuple[ModelReport, ...]
    notes: tuple[str, ...]

    def model_report(self, model: str) -> ModelReport | None:
        for rep in self.models:
            if rep.model == model:
                return rep
        return None

    @property
    def keyed_verdict(self) -> bool:
        """The verdict the exit code follows: the merged-class model when it
        was evaluated, otherwise the single model requested."""
        keyed = self.model_report(MERGED)
        if keyed is None:
            keyed = self.models[0]
        return keyed.verified


def models_for(choice: str) -> tuple[str, ...]:
    return (MERGED, ORBIT) if choice == BOTH else (choice,)


def assemble(scenario: Scenario) -> PrymReport:
    """Run the full pipeline for every requested fiber model."""
    if scenario.kind == SUBSET:
        corr = build_subset_matrix(scenario.parameter)
    else:
        corr = build_grid_matrix(scenario.parameter)

    ident = discover_identity(corr)
    q = None
    if ident is None:
        note = "no quadratic identity exists for this correspondence"
    else:
        try:
            res = exponent_from_identity(ident)
            q, note = res.q, res.derivation
        except ExponentExtractionError as exc:
            note = str(exc)

    irreducible, basis = _irreducibility(scenario)

    build = _subset_model if scenario.kind == SUBSET else _grid_model
    models = tuple(
        build(scenario, corr, model, q, irreducible)
        for model in models_for(scenario.model)
    )

    report = PrymReport(
        scenario=scenario,
        size=corr.size,
        bidegree=corr.bidegree,
        identity=ident,
        identity_verified=ident is not None,
        q=q,
        exponent_note=note,
        irreducible=irreducible,
        irreducibility_basis=basis,
        models=models,
        notes=(),
    )
    return dataclasses.replace(report, notes=_notes(report))


def _subset_covering(scenario: Scenario) -> CoveringData:
    degree = scenario.parameter + 2
    bare = CoveringData(
        degree=degree,
        base_genus=0,
        special_fibers=scenario.special_fibers,
        simple_extra=0,
    )
    # feasibility was already validated when the scenario was built
    extra = simple_budget(bare, scenario.upstairs_genus)
    return dataclasses.replace(bare, simple_extra=extra)


def _grid_covering(scenario: Scenario) -> CoveringData:
    # the hyperelliptic double covering: one simple branch point per pairing fiber
    return CoveringData(
        degree=2,
        base_genus=0,
        special_fibers=(),
        simple_extra=2 * scenario.upstairs_genus + 2,
    )


def grid_fiber_layout(genus: int) -> tuple[SpecialFiber, ...]:
    """The grid scenario's special fibers over the base line: two row-merge
    fibers, then 2*genus + 2 pairing fibers cycling the diagonal shift."""
    rows = grid_row_merge_fiber(3, GRID_ROW_BLOCKS)
    pairings = tuple(grid_pairing_fiber(3, k % 3) for k in range(2 * genus + 2))
    return (rows, rows) + pairings


def _irreducibility(scenario: Scenario) -> tuple[bool, str]:
    if scenario.kind == GRID:
        gens = tuple(grid_pairing_monodromy(3, s) for s in (0, 1, 2))
        gens += (grid_row_monodromy(3, GRID_ROW_BLOCKS),)
        return is_transitive(gens, 9), SYNTHESIZED
    n = scenario.parameter
    degree = n + 2
    if scenario.monodromy is not None:
        gens = tuple(Permutation(images=g) for g in scenario.monodromy)
        return irreducibility_check(gens, n), EXPLICIT
    # representative choice: the declared special-fiber monodromies plus the
    # derived number of simple branch points as adjacent transpositions
    cov = _subset_covering(scenario)
    gens = [
        partition_monodromy(blocks_from_parts(p, degree), degree)
        for p in scenario.special_fibers
    ]
    for k in range(cov.simple_extra):
        i = 1 + k % (degree - 1)
        gens.append(transposition(degree, i, i + 1))
    return irreducibility_check(tuple(gens), n), SYNTHESIZED


def _finish_model(
    scenario: Scenario,
    partial: ModelReport,
    q: int | None,
    bidegree: int,
    irreducible: bool,
    genus_error: str | None,
) -> ModelReport:
    """Shared tail of the per-model pipeline, from fixed points onward."""
    scan = partial.fixed
    even = scan.is_even
    half = scan.half
    n_le_d = bool(even and half <= bidegree)

    nesting = nesting_search(scan, bidegree)
    certified = isinstance(nesting, NestingCertificate)
    checked = False
    if certified:
        if nesting.length == 0:
            checked = True
        else:
            checked = check_certificate(
                nesting,
                partial.fibers[nesting.fiber_index],
                scenario.kind,
                scenario.parameter,
            )

    hyp = Hypotheses(
        quadratic_ok=q is not None,
        fixed_even=even,
        n_le_d=n_le_d,
        nesting_ok=certified and checked,
        irreducible=irreducible,
    )

    if genus_error is not None:
        return dataclasses.replace(
            partial,
            error=genus_error,
            nesting=nesting,
            certificate_checked=checked,
            hypotheses=hyp,
            verified=False,
        )

    genus = partial.genus
    error = None
    dim = integral = eps = None
    if q is not None and even:
        eps = epsilon_degree(genus, scan.delta_dot_d)
        try:
            dim = prym_dimension(genus, bidegree, scan.delta_dot_d, q)
            integral = dim.denominator == 1
        except DimensionError as exc:
            error = f"{scenario.kind} scenario, {partial.model} model: {exc}"

    verified = (
        error is None
        and hyp.combinatorial_ok
        and integral is True
        and partial.simple_fibers_fixed_free is not False
    )
    return dataclasses.replace(
        partial,
        error=error,
        nesting=nesting,
        certificate_checked=checked,
        dim_p=dim,
        dim_integral=integral,
        epsilon_deg=eps,
        hypotheses=hyp,
        verified=verified,
    )


def _subset_model(
    scenario: Scenario,
    corr: FiberCorrespondence,
    model: str,
    q: int | None,
    irreducible: bool,
) -> ModelReport:
    n = scenario.parameter
    degree = n + 2
    cov = _subset_covering(scenario)
    blocks = [blocks_from_parts(p, degree) for p in scenario.special_fibers]
    fibers = tuple(subset_fiber(n, b, model) for b in blocks)
    w_induced = induced_w(n, cov.simple_extra, blocks, model)

    rank = subset_point_rank(n)
    actions = tuple(class_action(corr, f, rank) for f in fibers)
    scan = fixed_point_scan(actions)

    # the fixed-point count only scans declared special fibers, so check on a
    # representative that a simple branch point contributes no fixed class
    simple_blocks = blocks_from_parts((2,) + (1,) * n, degree)
    simple_action = class_action(corr, subset_fiber(n, simple_blocks, model), rank)
    simple_free = simple_action.fixed_class_indices() == ()

    genus = genus_error = None
    try:
        genus = riemann_hurwitz_genus(induced_degree(n), 0, w_induced)
    except GenusValidationError as exc:
        genus_error = (
            f"subset scenario n={n}, source genus {scenario.upstairs_genus},"
            f" {model} model: {exc}"
        )

    partial = ModelReport(
        model=model,
        covering=cov,
        induced_deg=induced_degree(n),
        fibers=fibers,
        total_ramification=w_induced,
        fixed=scan,
        simple_fibers_fixed_free=simple_free,
        genus=genus,
    )
    return _finish_model(scenario, partial, q, corr.bidegree, irreducible, genus_error)


def _grid_model(
    scenario: Scenario,
    corr: FiberCorrespondence,
    model: str,
    q: int | None,
    irreducible: bool,
) -> ModelReport:
    g = scenario.upstairs_genus
    cov = _grid_covering(scenario)
    fibers = tuple(with_model(f, model) for f in grid_fiber_layout(g))
    w_induced = sum(f.w_contribution for f in fibers)

    rank = grid_point_rank(3)
    actions = tuple(class_action(corr, f, rank) for f in fibers)
    scan = fixed_point_scan(actions)

    genus = genus_error = None
    try:
        genus = riemann_hurwitz_genus(9, 0, w_induced)
    except GenusValidationError as exc:
        genus_error = f"grid scenario, genus {g}, {model} model: {exc}"

    partial = ModelReport(
        model=model,
        covering=cov,
        induced_deg=9,
        fibers=fibers,
        total_ramification=w_induced,
        fixed=scan,
        # the layout declares every ramified fiber, so there is nothing to spot-check
        simple_fibers_fixed_free=None,
        genus=genus,
    )
    return _finish_model(scenario, partial, q, corr.bidegree, irreducible, genus_error)


# --- notes -------------------------------------------------------------------


def _notes(report: PrymReport) -> tuple[str, ...]:
    notes: list[str] = []
    scen = report.scenario

    if report.irreducibility_basis == SYNTHESIZED:
        notes.append(
            "irreducibility was tested against a synthesized representative"
            " choice of local monodromies, not data supplied by the scenario"
        )

    for rep in report.models:
        if rep.error is not None:
            notes.append(f"{rep.model} model: {rep.error}")
        if rep.dim_integral is False:
            notes.append(
                f"inconsistency ({rep.model} model): dim P = {rep.dim_p} is not an"
                " integer, so the declared data cannot all be correct"
            )
        if rep.dim_p == 0:
            notes.append(
                f"degenerate ({rep.model} model): dim P = 0, the target abelian"
                " variety is a point"
            )
        if rep.simple_fibers_fixed_free is False:
            notes.append(
                f"{rep.model} model: a simple branch fiber carries a fixed class,"
                " so the fixed-point count over the declared special fibers is"
                " incomplete"
            )

    dims = {rep.model: rep.dim_p for rep in report.models if rep.dim_p is not None}
    if len(dims) == 2:
        vals = sorted(dims.items())
        if vals[0][1] == vals[1][1]:
            notes.append(f"both fiber models give dim P = {vals[0][1]}")
        else:
            notes.append(
                "fiber models disagree on dim P: "
                + ", ".join(f"{m} gives {v}" for m, v in vals)
            )

    if scen.kind == GRID:
        g = scen.upstairs_genus
        branch_points = 2 * g + 4
        notes.append(
            f"informational: the {branch_points} branch locations on the base"
            f" line move in a ({branch_points} - 3)-dimensional family once the"
            f" line's automorphisms are normalized away, i.e. dimension {2 * g + 1}"
        )

    if scen.kind == SUBSET and scen.parameter == 4 and report.q is not None:
        rep = report.model_report(MERGED)
        if rep is not None and rep.genus is not None and rep.error is None:
            alt = rep.genus + 2
            alt_dim = Fraction(
                2 * (alt - report.bidegree) + rep.fixed.delta_dot_d, 2 * report.q
            )
            notes.append(
                f"genus cross-check (merged model): the declared fiber data force"
                f" genus {rep.genus} with dim P = {rep.dim_p}; the nearby value"
                f" {alt}, which would follow from counting one extra simple branch"
                f" point, gives dim P = {alt_dim} and is not consistent"
            )

    return tuple(notes)


# --- serialization -----------------------------------------------------------


def rational_json(x) -> int | str:
    f = Fraction(x)
    return int(f) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def covering_to_dict(cov: CoveringData) -> dict:
    return {
        "degree": cov.degree,
        "base_genus": cov.base_genus,
        "special_fibers": [list(p) for p in cov.special_fibers],
        "upstairs_genus": upstairs_genus(cov),
        "simple_extra": cov.simple_extra,
        "ramification": ramification_degree(cov),
    }


def fiber_to_dict(fiber: SpecialFiber) -> dict:
    return {
        "model": fiber.model,
        "w": fiber.w_contribution,
        "classes": [
            {
                "members": [list(m) for m in cls.members],
                "block_multiset": None
                if cls.block_multiset is None
                else list(cls.block_multiset),
                "index": cls.size,
            }
            for cls in fiber.classes
        ],
    }


def nesting_to_dict(nesting) -> dict | None:
    if nesting is None:
        return None
    if isinstance(nesting, NestingCertificate):
        return {
            "certified": True,
            "fiber": nesting.fiber_index,
            "chain": list(nesting.chain),
            "chain_members": [[list(m) for m in ms] for ms in nesting.chain_members],
            "multiplicities": [list(row) for row in nesting.memberships],
        }
    return {
        "certified": False,
        "reason": nesting.reason,
        "fibers_searched": nesting.fibers_searched,
        "orderings_tried": nesting.orderings_tried,
    }


def model_to_dict(rep: ModelReport) -> dict:
    out: dict = {
        "model": rep.model,
        "covering": covering_to_dict(rep.covering),
        "induced": {
            "degree": rep.induced_deg,
            "ramification": rep.total_ramification,
            "genus": rep.genus,
        },
        "special_fibers": [fiber_to_dict(f) for f in rep.fibers],
        "fixed_points": [
            {
                "fiber": fc.fiber_index,
                "class": fc.class_index,
                "multiplicity": fc.multiplicity,
                "members": [list(m) for m in fc.members],
            }
            for fc in rep.fixed.fixed
        ],
        "delta_dot_d": rep.fixed.delta_dot_d,
        "simple_fibers_fixed_free": rep.simple_fibers_fixed_free,
        "nesting": nesting_to_dict(rep.nesting),
        "certificate_checked": rep.certificate_checked,
        "dim_p": None if rep.dim_p is None else rational_json(rep.dim_p),
        "dim_p_integral": rep.dim_integral,
        "epsilon_degree": rep.epsilon_deg,
        "hypotheses": None
        if rep.hypotheses is None
        else dataclasses.asdict(rep.hypotheses),
        "combinatorial_verified": rep.verified,
    }
    if rep.error is not None:
        out["error"] = rep.error
    return out


def report_to_dict(report: PrymReport) -> dict:
    ident = report.identity
    return {
        "scenario": scenario_to_dict(report.scenario),
        "correspondence": {
            "size": report.size,
            "bidegree": report.bidegree,
            "identity": None
            if ident is None
            else {
                "form": "D^2 = a*I + b*D + c*U",
                "a": rational_json(ident.a),
                "b": rational_json(ident.b),
                "c": rational_json(ident.c),
            },
            "identity_verified": report.identity_verified,
            "exponent": report.q,
            "exponent_derivation": report.exponent_note,
        },
        "irreducibility": {
            "transitive": report.irreducible,
            "basis": report.irreducibility_basis,
        },
        "models": {rep.model: model_to_dict(rep) for rep in report.models},
        "notes": list(report.notes),
        "verdict": {
            rep.model: "verified" if rep.verified else "failed"
            for rep in report.models
        },
    }


def canonical_json(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True)


def report_to_json(report: PrymReport) -> str:
    return canonical_json(report_to_dict(report))


# --- text rendering ----------------------------------------------------------


def _row(label: str, value) -> str:
    return f"{label:<22}{value}"


def _yesno(flag: bool) -> str:
    return "yes" if flag else "no"


def render_table(report: PrymReport) -> str:
    scen = report.scenario
    lines = ["== correspondence =="]
    if scen.kind == SUBSET:
        kind = f"subset exchange, n = {scen.parameter}, source genus {scen.upstairs_genus}"
    else:
        kind = f"3x3 grid over a genus {scen.upstairs_genus} hyperelliptic curve"
    lines.append(_row("scenario", kind))
    lines.append(_row("fiber size", report.size))
    lines.append(_row("bidegree d", report.bidegree))
    if report.identity is None:
        lines.append(_row("identity", "none found"))
    else:
        a, b, c = (rational_json(x) for x in report.identity.coefficients())
        verified = "verified entrywise" if report.identity_verified else "NOT verified"
        lines.append(_row("identity", f"D^2 = ({a})*I + ({b})*D + ({c})*U   [{verified}]"))
    lines.append(_row("exponent q", report.q if report.q is not None else "none"))
    lines.append(
        _row(
            "irreducible",
            f"{_yesno(report.irreducible)} ({report.irreducibility_basis} generators)",
        )
    )

    for rep in report.models:
        lines.append("")
        lines.append(f"== model: {rep.model} ==")
        if rep.error is not None:
            lines.append(_row("error", rep.error))
        cov = rep.covering
        fiber_desc = ", ".join("(" + ",".join(map(str, p)) + ")" for p in cov.special_fibers)
        lines.append(
            _row(
                "input covering",
                f"degree {cov.degree} over genus {cov.base_genus},"
                f" special fibers [{fiber_desc}], {cov.simple_extra} simple points",
            )
        )
        lines.append(
            _row(
                "induced covering",
                f"degree {rep.induced_deg}, ramification w = {rep.total_ramification}",
            )
        )
        lines.append(_row("curve genus", rep.genus if rep.genus is not None else "-"))
        half = rep.fixed.half
        lines.append(
            _row(
                "fixed points",
                f"Delta.D = {rep.fixed.delta_dot_d}"
                + (f" (half = {half})" if half is not None else " (odd!)"),
            )
        )
        nest = rep.nesting
        if isinstance(nest, NestingCertificate):
            if nest.length == 0:
                lines.append(_row("nesting", "trivial (no fixed points required)"))
            else:
                chain = ", ".join(str(i) for i in nest.chain)
                checked = "re-checked" if rep.certificate_checked else "NOT re-checked"
                lines.append(
                    _row("nesting", f"certified in fiber {nest.fiber_index}, chain [{chain}] ({checked})")
                )
        elif nest is not None:
            lines.append(_row("nesting", f"failed: {nest.reason}"))
        if rep.dim_p is not None:
            integral = "integral" if rep.dim_integral else "NOT AN INTEGER"
            lines.append(_row("dim P", f"{rational_json(rep.dim_p)}   [{integral}]"))
        if rep.epsilon_deg is not None:
            lines.append(_row("epsilon degree", rep.epsilon_deg))
        hyp = rep.hypotheses
        if hyp is not None:
            lines.append(
                _row(
                    "hypotheses",
                    f"quadratic {_yesno(hyp.quadratic_ok)} | fixed even {_yesno(hyp.fixed_even)}"
                    f" | n<=d {_yesno(hyp.n_le_d)} | nesting {_yesno(hyp.nesting_ok)}"
                    f" | irreducible {_yesno(hyp.irreducible)}"
                    f" | primitivity {hyp.primitivity} | smoothness {hyp.smoothness}",
                )
            )
        if rep.verified:
            verdict = (
                "combinatorial hypotheses verified; analytic hypotheses"
                " (primitivity, smoothness) assumed, not checked"
            )
        else:
            verdict = "combinatorial hypotheses NOT verified"
        lines.append(_row("verdict", verdict))

    if report.notes:
        lines.append("")
        lines.append("== notes ==")
        for note in report.notes:
            lines.append(f"- {note}")
    return "\n".join(lines) + "\n"
