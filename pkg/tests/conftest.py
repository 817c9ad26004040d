"""Shared fixtures: the golden 15-publication research group and corpus builders."""
from __future__ import annotations

import pytest

from citnorm.corpus import Corpus, Publication
from citnorm.indicators import ScoredPublication

# A real research group of 15 publications with hand-checked indicator values:
# (pub_year, citations, expected citations, published normalized score).
# Expected citations are printed to 2 decimals, so recomputed ratios must land
# inside the interval implied by that rounding.
GOLDEN_GROUP_ROWS = [
    (1994, 6, 6.97, 0.86),
    (1994, 3, 6.97, 0.43),
    (1995, 0, 7.39, 0.00),
    (1995, 2, 2.54, 0.79),
    (1995, 5, 7.39, 0.68),
    (1997, 21, 3.57, 5.89),
    (1997, 1, 4.42, 0.23),
    (1998, 6, 2.48, 2.42),
    (1998, 6, 2.48, 2.42),
    (1998, 3, 2.17, 1.38),
    (1999, 16, 1.52, 10.55),
    (1999, 13, 1.52, 8.57),
    (1999, 5, 0.45, 11.03),
    (1999, 1, 1.09, 0.91),
    (2000, 0, 0.21, 0.00),
]
GOLDEN_CENSUS = 2000
GOLDEN_FIRST = 1991


def golden_group_scored() -> list[ScoredPublication]:
    return [
        ScoredPublication(id=f"p{i:02d}", pub_year=year, c=c, e=e)
        for i, (year, c, e, _score) in enumerate(GOLDEN_GROUP_ROWS)
    ]


@pytest.fixture
def golden_scored() -> list[ScoredPublication]:
    return golden_group_scored()


def make_pub(
    pid: str,
    field: str = "f1",
    year: int = 2005,
    citations: int = 0,
    units: tuple[str, ...] = ("u1",),
    by_year: dict[int, int] | None = None,
    fields: tuple[str, ...] | None = None,
) -> Publication:
    return Publication(
        id=pid,
        unit_ids=units,
        field_ids=fields if fields is not None else (field,),
        pub_year=year,
        doc_type="article",
        citations_total=citations,
        citations_by_year=by_year,
    )


def make_corpus(pubs, census_year: int = 2010, first_year: int = 2000) -> Corpus:
    return Corpus(tuple(pubs), census_year=census_year, first_year=first_year)
