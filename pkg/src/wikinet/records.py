"""Article data types shared by the backends, the cache and the pipeline."""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum


def parse_timestamp(raw: str) -> datetime:
    """Parse an RFC 3339 timestamp into an aware UTC datetime."""
    text = raw.strip()
    if text.endswith(("Z", "z")):
        text = text[:-1] + "+00:00"
    dt = datetime.fromisoformat(text)
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return dt.astimezone(timezone.utc)


def format_timestamp(dt: datetime) -> str:
    return dt.astimezone(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


class AssessmentQuality(Enum):
    UNRATED = "Unrated"
    LIST = "List"
    STUB = "Stub"
    START = "Start"
    C = "C"
    B = "B"
    GA = "GA"
    A = "A"
    FL = "FL"
    FA = "FA"


class AssessmentImportance(Enum):
    UNRATED = "Unrated"
    LOW = "Low"
    MID = "Mid"
    HIGH = "High"
    TOP = "Top"


@dataclass(frozen=True)
class AssessmentRating:
    """WikiProject quality and importance classes; Unrated is distinct from
    the lowest rated class."""

    quality: AssessmentQuality = AssessmentQuality.UNRATED
    importance: AssessmentImportance = AssessmentImportance.UNRATED

    @classmethod
    def from_strings(cls, quality: str | None, importance: str | None) -> "AssessmentRating":
        by_name_q = {m.value.lower(): m for m in AssessmentQuality}
        by_name_i = {m.value.lower(): m for m in AssessmentImportance}
        q = by_name_q.get((quality or "Unrated").strip().lower(), AssessmentQuality.UNRATED)
        i = by_name_i.get((importance or "Unrated").strip().lower(), AssessmentImportance.UNRATED)
        return cls(q, i)


@dataclass(frozen=True)
class RevisionStamp:
    rev_id: int
    timestamp: datetime
    size_bytes: int = 0

    def __post_init__(self):
        if self.rev_id <= 0:
            raise ValueError(f"rev_id must be positive: {self.rev_id}")
        if self.size_bytes < 0:
            raise ValueError(f"size_bytes must be non-negative: {self.size_bytes}")


def check_revision_order(revisions) -> None:
    """Revision ids must be strictly increasing with timestamp."""
    for prev, cur in zip(revisions, revisions[1:]):
        if cur.rev_id <= prev.rev_id or cur.timestamp < prev.timestamp:
            raise ValueError(
                f"revision order violated: {prev.rev_id}@{prev.timestamp} "
                f"before {cur.rev_id}@{cur.timestamp}"
            )


@dataclass(frozen=True)
class ArticleRecord:
    """One article at one revision: link data plus the revision history known
    up to that point."""

    title: str
    page_id: int
    as_of: datetime
    outlinks: tuple[str, ...]
    extlinks: tuple[str, ...]
    assessment: AssessmentRating = field(default_factory=AssessmentRating)
    revisions: tuple[RevisionStamp, ...] = ()

    def __post_init__(self):
        if self.page_id <= 0:
            raise ValueError(f"page_id must be positive: {self.page_id}")
        if len(set(self.outlinks)) != len(self.outlinks):
            raise ValueError(f"duplicate outlinks on {self.title!r}")
        if self.title in self.outlinks:
            raise ValueError(f"{self.title!r} links to itself")
        check_revision_order(self.revisions)
        for rev in self.revisions:
            if rev.timestamp > self.as_of:
                raise ValueError(
                    f"revision {rev.rev_id} of {self.title!r} is newer than as_of"
                )


@dataclass(frozen=True)
class PageInfo:
    title: str
    page_id: int
    assessment: AssessmentRating


@dataclass(frozen=True)
class TimeWindow:
    """Half-open interval [start, end); adjacent windows compose without overlap."""

    start: datetime
    end: datetime

    def __post_init__(self):
        if self.start >= self.end:
            raise ValueError("window start must precede end")

    def contains(self, ts: datetime) -> bool:
        return self.start <= ts < self.end
