"""Length-dominance regions, critical lengths, and strip reports.

For a reference surface Y0, the dominance region collects the marked
once-holed tori X with l(X, w) >= l(Y0, w) for every nontrivial class w.
Only finitely many classes can be checked, so verdicts are truncated at
a word length N and say so: "in_up_to_N" never claims full membership,
while "out" is certified by an explicit violating class.  The witness of
an out verdict is the violating class of smallest geodesic length on Y0
(ties broken by word length, then letter order); with that reading,
probing a base point downward in l exits with witness u and probing
downward in l' exits with witness uvUV, the two coordinate constraints.

Critical lengths bound which slit tori map holomorphically into Y0 in a
handle-preserving way.  Which of them is computable depends on the input
chart: hyperbolic data gives lambda_a = l(Y0)/pi (and lambda_inf, which
coincides with it), conformal data gives lambda_c = the class-a extremal
length of Y0.  Each produces a horizontal strip of admissible tau.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .charts import (
    FNChartPoint,
    Strip,
    SurfaceDescriptor,
    strip_of,
    validate_descriptor,
)
from .fuchsian import (
    _rank_key,
    enumerate_classes,
    fn_to_rep,
    geodesic_length,
)

__all__ = [
    "ChainReport",
    "CornerReport",
    "CriticalLengths",
    "CriticalValue",
    "ProbeResult",
    "ResourceLimitError",
    "ScanGrid",
    "ScanRow",
    "SigmaVerdict",
    "StripReport",
    "UnsupportedSurfaceError",
    "corner_certificate",
    "critical_lengths",
    "handle_cover",
    "lambda_chain_check",
    "scan_sigma_slice",
    "sigma_membership",
    "strip_report",
]

MARGIN_TOL = 1e-9

COMMUTATOR = "uvUV"

SCAN_PLANES = {
    "l-lp": ("l", "lp"),
    "l-theta": ("l", "theta"),
    "lp-theta": ("lp", "theta"),
}

#: scan cells times checked classes beyond this raise ResourceLimitError.
SCAN_CELL_CAP = 20_000_000


class ResourceLimitError(ValueError):
    """A scan or enumeration request exceeds the configured budget."""


class UnsupportedSurfaceError(ValueError):
    """The requested construction is not computable for this input."""


@lru_cache(maxsize=64)
def _class_lengths(l: float, lp: float, theta: float, max_len: int):
    rep = fn_to_rep(FNChartPoint(l, lp, theta))
    return {w: geodesic_length(rep, w) for w in enumerate_classes(max_len)}


@dataclass(frozen=True)
class SigmaVerdict:
    """Truncated dominance verdict for one pair (X, Y0)."""

    status: str  # "in_up_to_N" or "out"
    max_word_len: int
    witness: str | None
    min_margin: float
    margins: tuple[tuple[str, float], ...]
    note: str | None = None


def sigma_membership(
    X: FNChartPoint, Y0: FNChartPoint, max_len: int, tol: float = MARGIN_TOL
) -> SigmaVerdict:
    """Compare the length spectra of X and Y0 over classes up to max_len.

    X is out as soon as some margin l(X, w) - l(Y0, w) drops below -tol;
    the witness is then the geodesically shortest violating class on Y0.
    Otherwise the verdict is in_up_to_N, a statement about the checked
    classes only.
    """
    if max_len < 2:
        raise ValueError("max_len must be at least 2")
    lx = _class_lengths(X.l, X.lp, X.theta, max_len)
    ly = _class_lengths(Y0.l, Y0.lp, Y0.theta, max_len)
    margins = tuple((w, lx[w] - ly[w]) for w in lx)
    violators = [w for w, m in margins if m < -tol]
    witness = None
    if violators:
        witness = min(violators, key=lambda w: (ly[w], len(w), _rank_key(w)))
    note = None
    if max_len < 4:
        note = "boundary (commutator) class has length 4 and was not checked"
    return SigmaVerdict(
        status="out" if violators else "in_up_to_N",
        max_word_len=max_len,
        witness=witness,
        min_margin=min(m for _, m in margins),
        margins=margins,
        note=note,
    )


class ProbeResult(NamedTuple):
    coordinate: str
    delta: float
    status: str
    witness: str | None
    verdict: SigmaVerdict


@dataclass(frozen=True)
class CornerReport:
    """Probe evidence that the region boundary has a corner at Y0."""

    base: FNChartPoint
    eps: float
    active_constraints: tuple[str, str]
    probes: tuple[ProbeResult, ...]
    independent: bool


def corner_certificate(
    Y0: FNChartPoint, eps: float, max_len: int = 4, tol: float = MARGIN_TOL
) -> CornerReport:
    """Probe Y0 by +/-eps along l and lp and certify the two constraints.

    Decreasing l must exit the region with witness u, decreasing lp with
    witness uvUV.  The independence flag checks that each probe moves
    exactly its own coordinate's margin (by -eps) while the other active
    margin stays at zero: the active constraints are then the coordinate
    projections themselves, with independent gradients.

    Once-punctured base points (lp = 0) are rejected: there the boundary
    class degenerates and this certificate says nothing.
    """
    if Y0.lp == 0.0:
        raise UnsupportedSurfaceError(
            "corner certificate needs lp > 0: at lp = 0 the boundary class "
            "is parabolic and the boundary behavior is not certified here"
        )
    if max_len < 4:
        raise ValueError("max_len must be at least 4 to include the commutator")
    if not 0.0 < eps < min(Y0.l, Y0.lp) / 2.0:
        raise ValueError("eps must be positive and small next to (l, lp)")

    def probed(coordinate: str, delta: float) -> FNChartPoint:
        if coordinate == "l":
            return FNChartPoint(Y0.l + delta, Y0.lp, Y0.theta)
        return FNChartPoint(Y0.l, Y0.lp + delta, Y0.theta)

    probes = []
    for coordinate in ("l", "lp"):
        for delta in (-eps, eps):
            verdict = sigma_membership(probed(coordinate, delta), Y0, max_len, tol)
            probes.append(
                ProbeResult(coordinate, delta, verdict.status, verdict.witness, verdict)
            )

    def margin(verdict: SigmaVerdict, word: str) -> float:
        return dict(verdict.margins)[word]

    down_l = probes[0].verdict
    down_lp = probes[2].verdict
    slack = max(tol, 1e-6 * eps)
    independent = (
        abs(margin(down_l, "u") + eps) <= slack
        and abs(margin(down_l, COMMUTATOR)) <= slack
        and abs(margin(down_lp, COMMUTATOR) + eps) <= slack
        and abs(margin(down_lp, "u")) <= slack
    )
    return CornerReport(
        base=Y0,
        eps=eps,
        active_constraints=("u", COMMUTATOR),
        probes=tuple(probes),
        independent=independent,
    )


@dataclass(frozen=True)
class CriticalValue:
    value: float | None
    reason: str | None = None

    @property
    def available(self) -> bool:
        return self.value is not None


@dataclass(frozen=True)
class CriticalLengths:
    """Critical extremal lengths of a reference surface, per chart."""

    lambda_a: CriticalValue
    lambda_c: CriticalValue
    lambda_inf: CriticalValue
    chart_note: str


def critical_lengths(desc: SurfaceDescriptor) -> CriticalLengths:
    """Compute whichever critical lengths the input chart determines.

    Hyperbolic charts give lambda_a = l/pi and lambda_inf = lambda_a.
    Conformal charts give lambda_c, the class-a extremal length: 1/Im tau
    for slit tori and both torus fixtures, the first coordinate for
    Lambda-chart input.  A marked torus has every geodesic length zero,
    so lambda_a = lambda_inf = 0 there.
    """
    desc = validate_descriptor(desc).descriptor
    no_hyperbolic = CriticalValue(
        None, "needs the hyperbolic a-length, which this chart does not carry"
    )
    no_conformal = CriticalValue(
        None, "needs the class-a extremal length, which this chart does not carry"
    )
    if desc.chart == "fn":
        la = CriticalValue(desc.l / math.pi)
        return CriticalLengths(
            lambda_a=la,
            lambda_c=no_conformal,
            lambda_inf=la,
            chart_note="hyperbolic chart: lambda_a = l/pi, and lambda_inf = lambda_a",
        )
    if desc.chart == "slit":
        return CriticalLengths(
            lambda_a=no_hyperbolic,
            lambda_c=CriticalValue(1.0 / desc.tau.imag),
            lambda_inf=no_hyperbolic,
            chart_note="slit chart: the class-a extremal length is 1/Im tau "
            "for every slit length",
        )
    if desc.chart == "lambda":
        return CriticalLengths(
            lambda_a=no_hyperbolic,
            lambda_c=CriticalValue(desc.x.x1),
            lambda_inf=no_hyperbolic,
            chart_note="extremal-length chart: lambda_c is the first coordinate",
        )
    if desc.chart == "torus":
        zero = CriticalValue(0.0)
        return CriticalLengths(
            lambda_a=zero,
            lambda_c=CriticalValue(1.0 / desc.tau.imag),
            lambda_inf=zero,
            chart_note="marked torus: geodesic lengths are zero by convention, "
            "so every slit torus dominates it",
        )
    if desc.chart == "twice_punctured":
        return CriticalLengths(
            lambda_a=CriticalValue(
                None, "the hyperbolic a-length of the fixture is not computed here"
            ),
            lambda_c=CriticalValue(1.0 / desc.tau.imag),
            lambda_inf=CriticalValue(
                None, "the hyperbolic a-length of the fixture is not computed here"
            ),
            chart_note="twice-punctured fixture: the class-a extremal length "
            "is 1/Im tau",
        )
    raise UnsupportedSurfaceError(f"no critical lengths for chart {desc.chart!r}")


@dataclass(frozen=True)
class StripReport:
    quantity: str  # "lambda_a", "lambda_c" or "lambda_inf"
    value: float
    strip: Strip
    note: str
    meeting_tau: complex | None = None


def strip_report(desc: SurfaceDescriptor) -> list[StripReport]:
    """Horizontal strips of admissible tau for each available quantity.

    Every strip {0 < Im tau < 1/lambda} collects the heights at which
    slit tori can map into Y0; what happens on the ceiling line depends
    on the quantity.  For lambda_a the line is strictly excluded.  For
    lambda_c the line is met at exactly one point when Y0 is itself a
    once-holed torus or torus (the surface or its slit subsets embed in
    themselves); the bent-mark fixture is the example where the line is
    not met at all.
    """
    desc = validate_descriptor(desc).descriptor
    crit = critical_lengths(desc)
    reports = []
    if crit.lambda_a.available:
        la = crit.lambda_a.value
        note = (
            "every height admits embeddings: the strip is the whole half plane"
            if la == 0.0
            else "heights at or above the ceiling admit no embedding at any "
            "slit length; the line Im tau = 1/lambda_a is excluded"
        )
        reports.append(StripReport("lambda_a", la, strip_of(la), note))
    if crit.lambda_c.available:
        lc = crit.lambda_c.value
        if desc.chart in ("slit", "torus"):
            meeting, note = desc.tau, (
                "the ceiling line Im tau = 1/lambda_c is met exactly once, "
                "at tau itself"
            )
        elif desc.chart == "twice_punctured" and desc.mark == "straight":
            meeting, note = desc.tau, (
                "the ceiling line is met exactly at tau: the slit [0, 1/2] "
                "covers both punctures, so that slit torus sits inside the fixture"
            )
        elif desc.chart == "twice_punctured":
            meeting, note = None, (
                "the ceiling line is not met: the bent b-mark admits no "
                "embedding at the critical height"
            )
        else:
            meeting, note = None, "the ceiling line is met at exactly one point"
        reports.append(StripReport("lambda_c", lc, strip_of(lc), note, meeting))
    if crit.lambda_inf.available:
        li = crit.lambda_inf.value
        reports.append(
            StripReport(
                "lambda_inf",
                li,
                strip_of(li),
                "heights below the ceiling are attained by all sufficiently "
                "long slits; the line itself is not",
            )
        )
    if not reports:
        raise UnsupportedSurfaceError("no critical length is available for this chart")
    return reports


def handle_cover(desc: SurfaceDescriptor) -> SurfaceDescriptor:
    """Handle cover of the reference surface.

    Marked tori and marked once-holed tori are their own handle cover,
    so every chart input is returned unchanged.  For the twice-punctured
    fixture the cover is a marked once-holed torus, but pinning down its
    chart coordinates needs the covering uniformization, which is out of
    scope, so that input is refused.
    """
    report = validate_descriptor(desc)
    if report.descriptor.chart == "twice_punctured":
        raise UnsupportedSurfaceError(
            "the handle cover of the twice-punctured fixture is a marked "
            "once-holed torus, but computing its chart coordinates requires "
            "the covering uniformization, which this toolkit does not build"
        )
    return report.descriptor


class ScanRow(NamedTuple):
    coord1: float
    coord2: float
    status: str
    witness: str
    min_margin: float


@dataclass(frozen=True)
class ScanGrid:
    """Row-major dominance scan of a coordinate plane through Y0."""

    plane: str
    coords1: tuple[float, ...]
    coords2: tuple[float, ...]
    max_word_len: int
    rows: tuple[ScanRow, ...]


def _scan_cell(args) -> tuple[str, str, float]:
    x, y0, max_len, tol = args
    verdict = sigma_membership(x, y0, max_len, tol)
    return verdict.status, verdict.witness or "", verdict.min_margin


def scan_sigma_slice(
    Y0: FNChartPoint,
    plane: str,
    ranges,
    max_len: int = 6,
    tol: float = MARGIN_TOL,
    workers: int = 1,
    cell_cap: int = SCAN_CELL_CAP,
) -> ScanGrid:
    """Dominance scan over a two-coordinate slice, third coordinate fixed.

    ranges is a pair of (lo, hi, count) triples for the plane's two
    coordinates.  Cells are evaluated independently (optionally in a
    process pool) and reported in row-major order, so the output is
    deterministic for a given configuration.
    """
    if plane not in SCAN_PLANES:
        raise ValueError(f"plane must be one of {sorted(SCAN_PLANES)}")
    names = SCAN_PLANES[plane]
    (lo1, hi1, n1), (lo2, hi2, n2) = ranges
    if n1 < 1 or n2 < 1:
        raise ValueError("grid counts must be at least 1")
    classes = len(enumerate_classes(max_len))
    if n1 * n2 * classes > cell_cap:
        raise ResourceLimitError(
            f"{n1}x{n2} cells over {classes} classes exceeds the cap {cell_cap}"
        )
    coords1 = tuple(float(v) for v in np.linspace(lo1, hi1, n1))
    coords2 = tuple(float(v) for v in np.linspace(lo2, hi2, n2))

    def point(c1: float, c2: float) -> FNChartPoint:
        fields = {"l": Y0.l, "lp": Y0.lp, "theta": Y0.theta}
        fields[names[0]] = c1
        fields[names[1]] = c2
        if not fields["l"] > 0.0 or fields["lp"] < 0.0:
            raise ValueError("scan ranges leave the chart domain")
        return FNChartPoint(**fields)

    cells = [(point(c1, c2), Y0, max_len, tol) for c1 in coords1 for c2 in coords2]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_scan_cell, cells, chunksize=64))
    else:
        results = [_scan_cell(cell) for cell in cells]
    rows = tuple(
        ScanRow(c1, c2, status, witness, margin)
        for (c1, c2), (status, witness, margin) in zip(
            ((c1, c2) for c1 in coords1 for c2 in coords2), results
        )
    )
    return ScanGrid(
        plane=plane, coords1=coords1, coords2=coords2, max_word_len=max_len, rows=rows
    )


@dataclass(frozen=True)
class ChainReport:
    """Consistency of l(Y0) against an annulus modulus bound."""

    l: float
    modulus: float
    lambda_a: float
    annulus_extremal_length: float
    consistent: bool


def lambda_chain_check(Y0: FNChartPoint, modulus: float) -> ChainReport:
    """Check the strict chain l(Y0) < pi/m against a given modulus.

    Equality is reported as inconsistent: the chain of inequalities
    linking lambda_a to an annulus of modulus m is strict.
    """
    if not modulus > 0.0:
        raise ValueError("modulus must be positive")
    if not Y0.l > 0.0:
        raise ValueError("l must be positive")
    return ChainReport(
        l=Y0.l,
        modulus=modulus,
        lambda_a=Y0.l / math.pi,
        annulus_extremal_length=1.0 / modulus,
        consistent=Y0.l < math.pi / modulus,
    )
