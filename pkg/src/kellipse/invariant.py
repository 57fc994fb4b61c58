"""Genus and dual-curve degree, from the singularity census and from closed forms."""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass, field
from typing import Sequence

from .curve import CurvePoly, degree_check, ellipse_polynomial, expected_degree
from .errors import KEllipseError, NonGenericError
from .lmi import EllipseConfig
from .singular import Census, SingularPoint, build_census, circular_multiplicity, expected_affine_count

__all__ = [
    "CurveReport",
    "REPORT_SCHEMA_VERSION",
    "genus_noether",
    "genus_closed_form",
    "dual_degree_plucker",
    "dual_degree_closed_form",
    "build_report",
]

REPORT_SCHEMA_VERSION = 1


def genus_noether(d: int, census: Sequence[SingularPoint]) -> int:
    """``C(d-1, 2) - sum(delta_P)``; raises NonGenericError if negative."""
    g = math.comb(d - 1, 2) - sum(p.delta for p in census)
    if g < 0:
        raise NonGenericError(f"negative genus {g}: census incomplete or curve reducible")
    return g


def genus_closed_form(k: int) -> int:
    """Genus of a generic k-ellipse (0 for k <= 2)."""
    if k < 1:
        raise ValueError("k must be positive")
    if k <= 2:
        return 0
    g = (k - 2) * 2 ** (k - 2) + 1
    if k % 2 == 0:
        g -= math.comb(k - 1, k // 2)
    return g


def dual_degree_plucker(g: int, d: int, census: Sequence[SingularPoint]) -> int:
    """``2(g + d - 1) - sum(m_P - r_P)``; nodes contribute nothing."""
    return 2 * (g + d - 1) - sum(p.multiplicity - p.branches for p in census)


def dual_degree_closed_form(k: int) -> int:
    """Dual degree of a generic k-ellipse: ``(k+1) 2^(k-1)``, minus ``2 C(k, k/2)`` for even k."""
    if k < 1:
        raise ValueError("k must be positive")
    dd = (k + 1) * 2 ** (k - 1)
    if k % 2 == 0:
        dd -= 2 * math.comb(k, k // 2)
    return dd


@dataclass
class CurveReport:
    """Everything the pipeline establishes about one configuration.

    ``None`` marks a quantity that could not be computed; the reason is in
    ``issues``. ``notes`` holds observations that do not affect any check.
    ``all_match`` is true only when every comparison succeeded.
    """

    k: int
    config: dict
    degree: int | None = None
    degree_expected: int = 0
    affine_nodes: int | None = None
    affine_nodes_expected: int | None = None
    circular_points: list[dict] = field(default_factory=list)
    circular_multiplicity_expected: int = 0
    infinity: dict | None = None
    partitions: list[dict] = field(default_factory=list)
    delta_total: int | None = None
    genus_census: int | None = None
    genus_closed_form: int = 0
    dual_degree_census: int | None = None
    dual_degree_closed_form: int = 0
    matches: dict = field(default_factory=dict)
    issues: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    polynomial: str | None = None
    timing: dict = field(default_factory=dict)
    schema_version: int = REPORT_SCHEMA_VERSION

    @property
    def all_match(self) -> bool:
        return bool(self.matches) and all(self.matches.values()) and not self.issues

    def to_json(self, include_points: bool = False) -> dict:
        out = asdict(self)
        out["all_match"] = self.all_match
        if not include_points:
            for part in out["partitions"]:
                part.pop("points", None)
        return out


def build_report(
    cfg: EllipseConfig,
    tol: float = 1e-7,
    max_k: int = 6,
    workers: int | None = None,
    include_polynomial: bool = False,
    census_out: list | None = None,
) -> CurveReport:
    """Run the whole pipeline on ``cfg`` and compare every count with its closed form.

    Errors from individual stages are recorded in ``issues``; only the
    resource guard (``k > max_k``) propagates, since then nothing can be
    computed. ``census_out``, if given, receives the :class:`Census`.
    """
    k = cfg.k
    rep = CurveReport(
        k=k,
        config=cfg.to_json(),
        degree_expected=expected_degree(k),
        genus_closed_form=genus_closed_form(k),
        dual_degree_closed_form=dual_degree_closed_form(k),
        circular_multiplicity_expected=circular_multiplicity(k) if k >= 3 else 0,
        affine_nodes_expected=expected_affine_count(k) if k >= 3 else 0,
    )
    # input warnings only; mismatches below are what decide non-genericity
    rep.notes.extend(f"input: {s}" for s in cfg.genericity_issues())
    t0 = time.perf_counter()
    cp: CurvePoly = ellipse_polynomial(cfg, max_k=max_k, workers=workers)
    rep.timing["polynomial_s"] = round(time.perf_counter() - t0, 3)
    rep.degree = cp.degree
    if include_polynomial:
        rep.polynomial = cp.affine.to_text()
    dc = degree_check(cp)
    rep.matches["degree"] = dc.matches
    if not dc.matches:
        rep.issues.append(dc.note)

    t0 = time.perf_counter()
    try:
        census: Census = build_census(cp, tol=tol, workers=workers)
    except KEllipseError as exc:
        rep.issues.append(f"census: {exc}")
        rep.timing["census_s"] = round(time.perf_counter() - t0, 3)
        return rep
    rep.timing["census_s"] = round(time.perf_counter() - t0, 3)
    if census_out is not None:
        census_out.append(census)
    rep.issues.extend(census.issues)
    rep.infinity = census.infinity.to_json() if census.infinity else None
    rep.circular_points = [c.to_json() for c in census.circular]
    rep.partitions = [p.to_json() for p in census.partitions]
    rep.affine_nodes = len(census.affine)
    if k >= 3:
        rep.matches["affine_nodes"] = rep.affine_nodes == rep.affine_nodes_expected
        mult_ok = len(census.circular) == 2 and all(
            c.point.multiplicity == rep.circular_multiplicity_expected for c in census.circular
        )
        rep.matches["circular_points"] = mult_ok
        if census.infinity is not None:
            rep.matches["infinity_line"] = census.infinity.matches_prediction
            if census.infinity.power != rep.circular_multiplicity_expected:
                # informational: the exact factorization already matched the predicted
                # product, one of whose quadratics is then a multiple of x^2+y^2
                rep.notes.append(
                    f"line at infinity: (x^2+y^2) appears to power {census.infinity.power}, "
                    f"multiplicity at the circular points is {rep.circular_multiplicity_expected}"
                )
    rep.delta_total = sum(p.delta for p in census.points)
    try:
        rep.genus_census = genus_noether(cp.degree, census.points)
    except NonGenericError as exc:
        rep.issues.append(str(exc))
        return rep
    rep.dual_degree_census = dual_degree_plucker(rep.genus_census, cp.degree, census.points)
    rep.matches["genus"] = rep.genus_census == rep.genus_closed_form
    rep.matches["dual_degree"] = rep.dual_degree_census == rep.dual_degree_closed_form
    return rep
