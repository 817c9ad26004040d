"""Immutable publication corpus plus JSON Lines ingestion and validation.

A corpus is the universe of scored documents. Each publication carries the
subject fields it belongs to, the units (research groups, institutions,
countries, journals) it is credited to, and cumulative citation counts at a
census date. Citation counts are taken as pre-cleaned input; no self-citation
filtering, deduplication, or document-type normalization happens here.

Multi-field and multi-unit membership is whole counting: a publication
contributes fully to every field and unit it lists.

Publication file format (JSON Lines, UTF-8, one object per line):

    id                 string, unique, non-empty
    unit_ids           array of strings, possibly empty
    field_ids          array of strings, non-empty
    pub_year           integer calendar year
    doc_type           string label, carried but never used for normalization
    citations_total    non-negative integer, cumulative at the census date
    citations_by_year  optional object mapping year-string -> cumulative count

Unknown keys are rejected with an error naming the key. Publications are kept
in ascending id order everywhere, so downstream floating-point summations are
bit-reproducible.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator

from .errors import ValidationError

_REQUIRED_KEYS = ("id", "unit_ids", "field_ids", "pub_year", "doc_type", "citations_total")
_OPTIONAL_KEYS = ("citations_by_year",)
_ALL_KEYS = frozenset(_REQUIRED_KEYS) | frozenset(_OPTIONAL_KEYS)


@dataclass(frozen=True)
class Publication:
    """One scored document.

    ``citations_by_year``, when present, maps calendar year to the cumulative
    citation count by the end of that year. It must be non-decreasing; the
    corpus additionally checks that it covers every year from ``pub_year`` to
    the census year and ends at ``citations_total``.
    """

    id: str
    unit_ids: tuple[str, ...]
    field_ids: tuple[str, ...]
    pub_year: int
    doc_type: str
    citations_total: int
    citations_by_year: dict[int, int] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "unit_ids", tuple(self.unit_ids))
        object.__setattr__(self, "field_ids", tuple(self.field_ids))
        if not isinstance(self.id, str) or not self.id:
            raise ValidationError("publication id must be a non-empty string")
        if not self.field_ids:
            raise ValidationError(f"publication {self.id}: field_ids must be non-empty")
        for fid in self.field_ids:
            if not isinstance(fid, str) or not fid:
                raise ValidationError(f"publication {self.id}: empty field id")
        for uid in self.unit_ids:
            if not isinstance(uid, str) or not uid:
                raise ValidationError(f"publication {self.id}: empty unit id")
        if not isinstance(self.pub_year, int):
            raise ValidationError(f"publication {self.id}: pub_year must be an integer")
        if not isinstance(self.citations_total, int) or self.citations_total < 0:
            raise ValidationError(f"publication {self.id}: negative citation count")
        if self.citations_by_year is not None:
            counts = {int(y): int(c) for y, c in self.citations_by_year.items()}
            object.__setattr__(self, "citations_by_year", counts)
            previous = None
            for year in sorted(counts):
                count = counts[year]
                if count < 0:
                    raise ValidationError(f"publication {self.id}: negative citation count")
                if previous is not None and count < previous:
                    raise ValidationError(
                        f"publication {self.id}: non-monotone citations_by_year at {year}"
                    )
                previous = count


@dataclass(frozen=True)
class Unit:
    """A scored entity (group, institution, country, journal...)."""

    id: str
    label: str
    pub_count: int


@dataclass(frozen=True)
class Corpus:
    """Validated, immutable set of publications in canonical (id) order.

    Citations are counted until the end of ``census_year``; every publication
    year must fall inside [first_year, census_year]. Safe for concurrent
    read access once constructed.
    """

    publications: tuple[Publication, ...]
    census_year: int
    first_year: int

    def __post_init__(self) -> None:
        ordered = tuple(sorted(self.publications, key=lambda p: p.id))
        object.__setattr__(self, "publications", ordered)
        if self.first_year > self.census_year:
            raise ValidationError(
                f"first_year {self.first_year} is after census_year {self.census_year}"
            )
        seen: set[str] = set()
        for pub in ordered:
            if pub.id in seen:
                raise ValidationError(f"duplicate id {pub.id}")
            seen.add(pub.id)
            self._check_publication(pub)

    def _check_publication(self, pub: Publication) -> None:
        if not (self.first_year <= pub.pub_year <= self.census_year):
            raise ValidationError(
                f"publication {pub.id}: pub_year {pub.pub_year} outside "
                f"[{self.first_year}, {self.census_year}]"
            )
        if pub.citations_by_year is not None:
            expected_years = list(range(pub.pub_year, self.census_year + 1))
            if sorted(pub.citations_by_year) != expected_years:
                raise ValidationError(
                    f"publication {pub.id}: citations_by_year must cover every year "
                    f"from {pub.pub_year} to {self.census_year} with no gaps"
                )
            if pub.citations_by_year[self.census_year] != pub.citations_total:
                raise ValidationError(
                    f"publication {pub.id}: citations_by_year at census year "
                    f"{self.census_year} does not equal citations_total"
                )

    def __len__(self) -> int:
        return len(self.publications)

    def __iter__(self) -> Iterator[Publication]:
        return iter(self.publications)

    def unit_ids(self) -> list[str]:
        """All unit ids occurring in the corpus, ascending."""
        ids = {uid for pub in self.publications for uid in pub.unit_ids}
        return sorted(ids)

    def units(self) -> list[Unit]:
        """Derived unit records with publication tallies, ascending by id."""
        counts: dict[str, int] = {}
        for pub in self.publications:
            for uid in pub.unit_ids:
                counts[uid] = counts.get(uid, 0) + 1
        return [Unit(id=uid, label=uid, pub_count=counts[uid]) for uid in sorted(counts)]


def select_unit(corpus: Corpus, unit_id: str) -> list[Publication]:
    """Publications credited to ``unit_id``, ascending by id (possibly empty)."""
    return [pub for pub in corpus.publications if unit_id in pub.unit_ids]


def _publication_from_obj(obj: dict, line_no: int) -> Publication:
    if not isinstance(obj, dict):
        raise ValidationError(f"line {line_no}: expected a JSON object")
    for key in obj:
        if key not in _ALL_KEYS:
            raise ValidationError(f"line {line_no}: unknown key '{key}'")
    for key in _REQUIRED_KEYS:
        if key not in obj:
            raise ValidationError(f"line {line_no}: missing key '{key}'")

    counts_obj = obj.get("citations_by_year")
    counts: dict[int, int] | None = None
    if counts_obj is not None:
        if not isinstance(counts_obj, dict):
            raise ValidationError(f"line {line_no}: citations_by_year must be an object")
        counts = {}
        for year_str, value in counts_obj.items():
            try:
                year = int(year_str)
            except (TypeError, ValueError):
                raise ValidationError(
                    f"line {line_no}: citations_by_year key '{year_str}' is not a year"
                ) from None
            if not isinstance(value, int):
                raise ValidationError(
                    f"line {line_no}: citations_by_year value for {year} must be an integer"
                )
            counts[year] = value

    if not isinstance(obj["pub_year"], int):
        raise ValidationError(f"line {line_no}: pub_year must be an integer")
    if not isinstance(obj["citations_total"], int):
        raise ValidationError(f"line {line_no}: citations_total must be an integer")
    if not isinstance(obj["unit_ids"], list) or not isinstance(obj["field_ids"], list):
        raise ValidationError(f"line {line_no}: unit_ids and field_ids must be arrays")
    if not isinstance(obj["doc_type"], str):
        raise ValidationError(f"line {line_no}: doc_type must be a string")

    try:
        return Publication(
            id=obj["id"],
            unit_ids=tuple(obj["unit_ids"]),
            field_ids=tuple(obj["field_ids"]),
            pub_year=obj["pub_year"],
            doc_type=obj["doc_type"],
            citations_total=obj["citations_total"],
            citations_by_year=counts,
        )
    except ValidationError as exc:
        raise ValidationError(f"line {line_no}: {exc}") from None


def parse_corpus(path: str | Path, census_year: int, first_year: int | None = None) -> Corpus:
    """Parse a JSON Lines publication file into a validated :class:`Corpus`.

    ``first_year`` bounds admissible publication years from below; when omitted
    it defaults to the earliest year present in the file. Errors report the
    offending line number.
    """
    publications: list[Publication] = []
    seen_lines: dict[str, int] = {}
    with open(path, "r", encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValidationError(f"line {line_no}: malformed JSON: {exc.msg}") from None
            pub = _publication_from_obj(obj, line_no)
            if pub.id in seen_lines:
                raise ValidationError(f"line {line_no}: duplicate id {pub.id}")
            seen_lines[pub.id] = line_no
            if pub.pub_year > census_year or (first_year is not None and pub.pub_year < first_year):
                low = first_year if first_year is not None else "-"
                raise ValidationError(
                    f"line {line_no}: pub_year {pub.pub_year} outside [{low}, {census_year}]"
                )
            publications.append(pub)
    if first_year is None:
        first_year = min((p.pub_year for p in publications), default=census_year)
    return Corpus(tuple(publications), census_year=census_year, first_year=first_year)


def infer_census_year(path: str | Path) -> int:
    """Best-effort census year: the largest year any publication carries.

    Looks at pub_year and citations_by_year keys only; malformed lines are
    left for :func:`parse_corpus` to report precisely.
    """
    latest: int | None = None
    with open(path, "r", encoding="utf-8") as handle:
        for line in handle:
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError:
                continue
            if not isinstance(obj, dict):
                continue
            years = []
            if isinstance(obj.get("pub_year"), int):
                years.append(obj["pub_year"])
            counts = obj.get("citations_by_year")
            if isinstance(counts, dict):
                for key in counts:
                    try:
                        years.append(int(key))
                    except (TypeError, ValueError):
                        pass
            for year in years:
                if latest is None or year > latest:
                    latest = year
    if latest is None:
        raise ValidationError(f"cannot infer a census year from {path}")
    return latest


def publication_to_obj(pub: Publication) -> dict:
    """JSON-ready dict for one publication, with a stable key order."""
    obj: dict = {
        "id": pub.id,
        "unit_ids": list(pub.unit_ids),
        "field_ids": list(pub.field_ids),
        "pub_year": pub.pub_year,
        "doc_type": pub.doc_type,
        "citations_total": pub.citations_total,
    }
    if pub.citations_by_year is not None:
        obj["citations_by_year"] = {
            str(year): pub.citations_by_year[year] for year in sorted(pub.citations_by_year)
        }
    return obj


def corpus_to_jsonl(corpus: Corpus) -> str:
    """Serialize a corpus back to JSON Lines text, in canonical order."""
    lines = [json.dumps(publication_to_obj(pub), separators=(",", ":")) for pub in corpus]
    return "".join(line + "\n" for line in lines)


def write_corpus(corpus: Corpus, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(corpus_to_jsonl(corpus))
