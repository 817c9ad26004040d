"""Correlation and trajectory statistics for indicator comparisons.

Pearson measures how linearly two indicator series are related, Spearman how
monotonically (ties receive average ranks). Undefined unit scores are dropped
pairwise, not listwise, and each reported pair carries the number of items
that survived so the reduction stays visible.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .corpus import Publication
from .errors import ValidationError
from .indicators import UnitScore

_INDICATOR_PAIRS = (
    ("cpp_fcsm", "mncs1"),
    ("cpp_fcsm", "mncs2"),
    ("mncs1", "mncs2"),
)


def average_ranks(values: Sequence[float]) -> np.ndarray:
    """1-based ranks; tied values share the mean of the ranks they span."""
    a = np.asarray(values, dtype=float)
    order = np.argsort(a, kind="stable")
    ranks = np.empty(len(a), dtype=float)
    i = 0
    while i < len(a):
        j = i
        while j + 1 < len(a) and a[order[j + 1]] == a[order[i]]:
            j += 1
        ranks[order[i : j + 1]] = (i + j) / 2 + 1
        i = j + 1
    return ranks


def pearson(x: Sequence[float], y: Sequence[float]) -> float | None:
    """Sample Pearson correlation; None when either vector is constant."""
    if len(x) != len(y):
        raise ValidationError(f"length mismatch: {len(x)} vs {len(y)}")
    if len(x) < 2:
        raise ValidationError("need at least two observations")
    ax = np.asarray(x, dtype=float)
    ay = np.asarray(y, dtype=float)
    if np.all(ax == ax[0]) or np.all(ay == ay[0]):
        return None
    dx = ax - ax.mean()
    dy = ay - ay.mean()
    denom = float(np.sqrt(float(dx @ dx) * float(dy @ dy)))
    if denom == 0:
        return None
    r = float(dx @ dy) / denom
    return max(-1.0, min(1.0, r))


def spearman(x: Sequence[float], y: Sequence[float]) -> float | None:
    """Pearson correlation of the average-rank transforms."""
    if len(x) != len(y):
        raise ValidationError(f"length mismatch: {len(x)} vs {len(y)}")
    if len(x) < 2:
        raise ValidationError("need at least two observations")
    return pearson(average_ranks(x), average_ranks(y))


@dataclass(frozen=True)
class PairCorrelation:
    label_x: str
    label_y: str
    pearson: float | None
    spearman: float | None
    n: int


@dataclass(frozen=True)
class CorrelationReport:
    pairs: tuple[PairCorrelation, ...]


def correlate_indicators(scores: Sequence[UnitScore], min_pubs: int = 0) -> CorrelationReport:
    """Pearson/Spearman for the three indicator pairs across units.

    Units with fewer than ``min_pubs`` publications are ignored (a sensitivity
    filter; the default keeps everything). For each pair only units with both
    values defined enter; a pair with fewer than two such units is reported
    with undefined correlations.
    """
    if len(scores) < 2:
        raise ValidationError("need at least two units to correlate")
    eligible = sorted(
        (s for s in scores if s.n_total >= min_pubs), key=lambda s: s.unit_id
    )
    pairs = []
    for label_x, label_y in _INDICATOR_PAIRS:
        xs: list[float] = []
        ys: list[float] = []
        for score in eligible:
            vx = getattr(score, label_x)
            vy = getattr(score, label_y)
            if vx is not None and vy is not None:
                xs.append(vx)
                ys.append(vy)
        if len(xs) < 2:
            pairs.append(PairCorrelation(label_x, label_y, None, None, len(xs)))
        else:
            pairs.append(PairCorrelation(
                label_x, label_y, pearson(xs, ys), spearman(xs, ys), len(xs)
            ))
    return CorrelationReport(pairs=tuple(pairs))


@dataclass(frozen=True)
class AgeCorrelationMatrix:
    """Pearson correlations between cumulative counts at pairs of years.

    ``entries[i][j]`` correlates the counts by the end of ``years[i]`` with
    those by the end of ``years[j]``. The diagonal is conceptually 1 and is
    stored (and exported) as blank; entries are None where a year's counts
    are constant across publications.
    """

    years: tuple[int, ...]
    entries: tuple[tuple[float | None, ...], ...]


def _shared_year_domain(pubs: Sequence[Publication]) -> list[int]:
    if not pubs:
        raise ValidationError("no publications given")
    first = pubs[0]
    for pub in pubs:
        if pub.citations_by_year is None:
            raise ValidationError(f"publication {pub.id}: missing citations_by_year")
        if pub.pub_year != first.pub_year:
            raise ValidationError("publications must share the same publication year")
    years = sorted(first.citations_by_year)  # type: ignore[arg-type]
    for pub in pubs:
        if sorted(pub.citations_by_year) != years:  # type: ignore[arg-type]
            raise ValidationError("publications must cover the same year range")
    return years


def age_correlation_matrix(pubs: Sequence[Publication]) -> AgeCorrelationMatrix:
    """Cross-year citation-count correlations for same-year publications."""
    ordered = sorted(pubs, key=lambda p: p.id)
    years = _shared_year_domain(ordered)
    data = np.array(
        [[pub.citations_by_year[y] for y in years] for pub in ordered], dtype=float
    )
    n = len(years)
    entries: list[list[float | None]] = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            r = pearson(data[:, i], data[:, j])
            entries[i][j] = r
            entries[j][i] = r
    return AgeCorrelationMatrix(
        years=tuple(years), entries=tuple(tuple(row) for row in entries)
    )


@dataclass(frozen=True)
class Trajectory:
    """Mean cumulative citation counts per year for one (field, year) cohort."""

    field_id: str
    pub_year: int
    n_pubs: int
    means: tuple[tuple[int, float], ...]


def trajectory(pubs: Sequence[Publication], field_id: str, pub_year: int) -> Trajectory:
    """Average citation trajectory of the publications in one field-year."""
    matched = sorted(
        (p for p in pubs if field_id in p.field_ids and p.pub_year == pub_year),
        key=lambda p: p.id,
    )
    if not matched:
        raise ValidationError(f"no publications in field '{field_id}', year {pub_year}")
    years = _shared_year_domain(matched)
    means = []
    for year in years:
        total = 0
        for pub in matched:
            total += pub.citations_by_year[year]  # type: ignore[index]
        means.append((year, total / len(matched)))
    return Trajectory(
        field_id=field_id, pub_year=pub_year, n_pubs=len(matched), means=tuple(means)
    )


def write_correlation_report(report: CorrelationReport, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["label_x", "label_y", "pearson", "spearman", "n"])
        for pair in report.pairs:
            writer.writerow([
                pair.label_x,
                pair.label_y,
                "NA" if pair.pearson is None else f"{pair.pearson:.6f}",
                "NA" if pair.spearman is None else f"{pair.spearman:.6f}",
                pair.n,
            ])


def write_age_matrix(matrix: AgeCorrelationMatrix, path: str | Path) -> None:
    """CSV with year labels on the first row and column and a blank diagonal."""
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow([""] + [str(y) for y in matrix.years])
        for i, year in enumerate(matrix.years):
            row: list[str] = [str(year)]
            for j in range(len(matrix.years)):
                if i == j:
                    row.append("")
                else:
                    value = matrix.entries[i][j]
                    row.append("NA" if value is None else f"{value:.2f}")
            writer.writerow(row)


def write_trajectory(traj: Trajectory, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["year", "mean_citations"])
        for year, mean in traj.means:
            writer.writerow([year, f"{mean:.4f}"])
