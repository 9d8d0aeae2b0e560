import json
from fractions import Fraction

import pytest

from prymtyurin.fixed_points import NestingCertificate, NestingFailure
from prymtyurin.induced_curve import MERGED, ORBIT
from prymtyurin.report import (
    DimensionError,
    assemble,
    canonical_json,
    epsilon_degree,
    grid_fiber_layout,
    prym_dimension,
    rational_json,
    render_table,
    report_to_dict,
    report_to_json,
)
from prymtyurin.scenario import grid_scenario, subset_scenario


def test_prym_dimension_worked_cases():
    for g in range(2, 13):
        assert prym_dimension(3 * g - 2, 4, 6, 3) == g - 1
    for gx in range(0, 11):
        assert prym_dimension(2 * gx, 1, 2, 2) == gx
        assert prym_dimension(3 * gx + 2, 3, 2, 3) == gx
        assert prym_dimension(4 * gx + 3, 6, 6, 4) == gx


def test_prym_dimension_flags_non_integral():
    dim = prym_dimension(4 * 2 + 5, 6, 6, 4)
    assert dim == Fraction(5, 2)
    assert dim.denominator != 1


def test_prym_dimension_errors():
    with pytest.raises(DimensionError, match="exponent"):
        prym_dimension(5, 1, 2, 1)
    with pytest.raises(DimensionError, match="non-negative"):
        prym_dimension(-1, 1, 2, 2)
    with pytest.raises(DimensionError, match="negative"):
        prym_dimension(0, 5, 0, 2)


def test_epsilon_degree():
    for g in range(0, 8):
        assert epsilon_degree(g, 0) == g - 1
    for g in range(2, 10):
        assert epsilon_degree(3 * g - 2, 6) == 3 * g
    for gx in range(0, 10):
        assert epsilon_degree(2 * gx, 2) == 2 * gx
    with pytest.raises(ValueError, match="even"):
        epsilon_degree(4, 3)
    with pytest.raises(ValueError, match="genus"):
        epsilon_degree(-1, 2)


def test_hyperelliptic_report():
    rep = assemble(grid_scenario(3))
    assert rep.q == 3
    assert rep.bidegree == 4
    assert rep.size == 9
    assert (rep.identity.a, rep.identity.b, rep.identity.c) == (2, -1, 2)
    for m in rep.models:
        assert m.total_ramification == 30
        assert m.genus == 7
        assert m.fixed.delta_dot_d == 6
        assert m.dim_p == 2
        assert m.epsilon_deg == 9
        assert m.verified
        assert isinstance(m.nesting, NestingCertificate)
        assert m.certificate_checked
    assert rep.keyed_verdict


def test_grid_layout_counts():
    fibers = grid_fiber_layout(4)
    assert len(fibers) == 2 + 10
    assert all(f.w_contribution == 3 for f in fibers)


def test_subset_families_per_model():
    for gx in range(0, 6):
        rep = assemble(subset_scenario(2, gx))
        merged = rep.model_report(MERGED)
        orbit = rep.model_report(ORBIT)
        assert merged.genus == 2 * gx
        assert merged.fixed.delta_dot_d == 2
        assert merged.dim_p == gx
        assert merged.epsilon_deg == 2 * gx
        assert merged.verified
        if gx == 0:
            assert orbit.error is not None and "negative genus" in orbit.error
            assert orbit.genus is None
        else:
            assert orbit.genus == 2 * gx - 1
            assert orbit.fixed.delta_dot_d == 4
            assert not orbit.hypotheses.n_le_d
            assert not orbit.verified

    for gx in range(0, 6):
        rep = assemble(subset_scenario(3, gx))
        merged = rep.model_report(MERGED)
        orbit = rep.model_report(ORBIT)
        assert merged.genus == 3 * gx + 2
        assert merged.dim_p == gx
        assert merged.verified
        assert orbit.genus == 3 * gx + 1
        assert orbit.fixed.delta_dot_d == 4
        assert orbit.hypotheses.n_le_d
        assert isinstance(orbit.nesting, NestingFailure)
        assert not orbit.verified

    for gx in range(0, 6):
        rep = assemble(subset_scenario(4, gx))
        merged = rep.model_report(MERGED)
        orbit = rep.model_report(ORBIT)
        assert merged.genus == 4 * gx + 3
        assert merged.fixed.delta_dot_d == 6
        assert merged.dim_p == gx
        assert merged.verified
        assert orbit.genus == 4 * gx
        assert orbit.fixed.delta_dot_d == 12
        assert isinstance(orbit.nesting, NestingFailure)
        assert not orbit.verified


def test_exponent_times_dim_identity():
    scenarios = [subset_scenario(n, gx) for n in (2, 3, 4) for gx in range(0, 5)]
    scenarios += [grid_scenario(g) for g in range(2, 7)]
    for scen in scenarios:
        rep = assemble(scen)
        for m in rep.models:
            if m.dim_p is None:
                continue
            assert rep.q * m.dim_p == Fraction(
                2 * (m.genus - rep.bidegree) + m.fixed.delta_dot_d, 2
            )


def test_n4_genus_crosscheck_note():
    rep = assemble(subset_scenario(4, 2))
    note = next(n for n in rep.notes if "cross-check" in n)
    assert "genus 11" in note
    assert "13" in note and "5/2" in note and "not consistent" in note


def test_degenerate_dim_zero():
    rep = assemble(subset_scenario(3, 0))
    merged = rep.model_report(MERGED)
    assert merged.genus == 2
    assert merged.dim_p == 0
    assert merged.verified
    assert any("degenerate" in n for n in rep.notes)


def test_all_simple_scenario():
    for n, gx in ((2, 1), (3, 1), (4, 2)):
        rep = assemble(subset_scenario(n, gx, special_fibers=[]))
        for m in rep.models:
            assert m.genus == n * gx + n * (n - 1) // 2
            assert m.fixed.delta_dot_d == 0
            assert isinstance(m.nesting, NestingCertificate)
            assert m.nesting.length == 0
            assert m.dim_p == gx
            assert m.verified


def test_explicit_monodromy_controls_irreducibility():
    intransitive = subset_scenario(2, 1, monodromy=[[2, 1, 3, 4]])
    rep = assemble(intransitive)
    assert rep.irreducibility_basis == "explicit"
    assert not rep.irreducible
    merged = rep.model_report(MERGED)
    assert not merged.hypotheses.irreducible
    assert not merged.verified

    transitive = subset_scenario(
        2, 1, monodromy=[[2, 1, 3, 4], [2, 3, 4, 1]]
    )
    rep = assemble(transitive)
    assert rep.irreducible
    assert rep.model_report(MERGED).verified
    assert not any("synthesized" in n for n in rep.notes)


def test_keyed_verdict_follows_model_choice():
    assert assemble(subset_scenario(2, 1, model="both")).keyed_verdict
    assert assemble(subset_scenario(2, 1, model="paper")).keyed_verdict
    assert not assemble(subset_scenario(2, 1, model="monodromy")).keyed_verdict
    assert not assemble(subset_scenario(2, 0, model="monodromy")).keyed_verdict


def test_unchecked_analytic_hypotheses_everywhere():
    for scen in (subset_scenario(3, 1), grid_scenario(2)):
        for m in assemble(scen).models:
            assert m.hypotheses.primitivity == "unchecked"
            assert m.hypotheses.smoothness == "unchecked"


def test_rational_json():
    assert rational_json(Fraction(4, 2)) == 2
    assert rational_json(5) == 5
    assert rational_json(Fraction(5, 2)) == "5/2"
    assert rational_json(Fraction(-7, 3)) == "-7/3"


def test_report_serialization_round_trip():
    for scen in (subset_scenario(3, 1), subset_scenario(2, 0), grid_scenario(2)):
        rep = assemble(scen)
        text = report_to_json(rep)
        assert canonical_json(json.loads(text)) == text
        data = json.loads(text)
        assert data["correspondence"]["exponent"] == rep.q
        assert set(data["models"]) == {m.model for m in rep.models}
        for m in rep.models:
            entry = data["models"][m.model]
            hyp = entry["hypotheses"]
            assert set(hyp) == {
                "quadratic_ok", "fixed_even", "n_le_d", "nesting_ok",
                "irreducible", "primitivity", "smoothness",
            }
            if m.error is not None:
                assert entry["error"] == m.error


def test_report_json_has_no_floats():
    def walk(node):
        assert not isinstance(node, float)
        if isinstance(node, dict):
            for v in node.values():
                walk(v)
        elif isinstance(node, list):
            for v in node:
                walk(v)

    walk(report_to_dict(assemble(subset_scenario(4, 1))))


def test_fiber_serialization_shape():
    data = report_to_dict(assemble(subset_scenario(3, 1, model="paper")))
    fiber = data["models"]["paper"]["special_fibers"][0]
    assert fiber["w"] == 5
    big = next(c for c in fiber["classes"] if c["index"] == 4)
    assert big["members"] == [[1, 3, 5], [1, 4, 5], [2, 3, 5], [2, 4, 5]]
    assert big["block_multiset"] is not None
    assert sum(c["index"] for c in fiber["classes"]) == 10
    firsts = [c["members"][0] for c in fiber["classes"]]
    assert firsts == sorted(firsts)  # classes ordered by first member


def test_render_table_mentions_verdict_split():
    text = render_table(assemble(subset_scenario(3, 1)))
    assert "combinatorial hypotheses verified" in text
    assert "analytic hypotheses" in text
    assert "primitivity unchecked" in text
    text = render_table(assemble(subset_scenario(2, 0)))
    assert "error" in text
