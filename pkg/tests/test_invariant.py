import json

import pytest

from kellipse.curve import expected_degree
from kellipse.errors import NonGenericError, ResourceGuardError
from kellipse.invariant import (
    REPORT_SCHEMA_VERSION,
    build_report,
    dual_degree_closed_form,
    dual_degree_plucker,
    genus_closed_form,
    genus_noether,
)
from kellipse.lmi import EllipseConfig, random_generic_config
from kellipse.singular import SingularPoint, circular_multiplicity, expected_affine_count


def test_closed_form_tables():
    assert [genus_closed_form(k) for k in range(1, 7)] == [0, 0, 3, 6, 25, 55]
    assert [dual_degree_closed_form(k) for k in range(3, 7)] == [16, 28, 96, 184]


@pytest.mark.parametrize("k", [3, 4, 5, 6, 7, 8])
def test_closed_forms_agree_with_count_identities(k):
    # Noether with the predicted census reproduces the genus closed form
    d = expected_degree(k)
    m = circular_multiplicity(k)
    delta = expected_affine_count(k) + 2 * (m * (m - 1) // 2)
    g = (d - 1) * (d - 2) // 2 - delta
    assert g == genus_closed_form(k)
    assert 2 * (g + d - 1) - 2 * (m - m // 2) == dual_degree_closed_form(k)


def test_noether_negative_raises():
    node = SingularPoint((0j, 0j, 1 + 0j), 2, 2, 1, "node", "t")
    with pytest.raises(NonGenericError):
        genus_noether(3, [node, node])
    assert genus_noether(3, [node]) == 0
    assert dual_degree_plucker(0, 3, [node]) == 4


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_report_matches(k):
    rep = build_report(random_generic_config(k, 4))
    assert rep.all_match, rep.issues
    assert rep.genus_census == genus_closed_form(k)
    if k >= 3:
        assert rep.dual_degree_census == dual_degree_closed_form(k)


def test_report_json_round_trip():
    rep = build_report(EllipseConfig(((0, 0), (1, 0), (0, 1)), 3), include_polynomial=True)
    data = json.loads(json.dumps(rep.to_json()))
    assert data["schema_version"] == REPORT_SCHEMA_VERSION
    assert data["all_match"] and data["affine_nodes"] == 6
    assert "points" not in data["partitions"][0]
    assert "points" in rep.to_json(include_points=True)["partitions"][0]
    assert data["polynomial"].count("x") > 0


def test_report_flags_coincident_foci():
    rep = build_report(EllipseConfig(((0, 0), (0, 0), (1, 1)), 5))
    assert not rep.all_match
    assert not rep.matches["affine_nodes"]
    assert any("coincident" in s for s in rep.notes)


def test_collinear_foci_only_noted():
    # collinearity is excluded from random presets, yet these counts all come out generic
    rep = build_report(EllipseConfig(((0, 0), (1, 0), (2, 0)), 5))
    assert rep.all_match
    assert rep.notes == ["input: collinear foci (0, 0), (1, 0), (2, 0)"]


def test_report_resource_guard():
    with pytest.raises(ResourceGuardError):
        build_report(random_generic_config(5, 1), max_k=4)
