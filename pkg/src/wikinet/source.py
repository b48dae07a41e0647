"""Article acquisition: fixture corpus backend, live HTTP API backend, and the
cached high-level fetch operations built on top of them.

Both backends expose the same five primitives (search, page_info, revisions,
revision_text, backlink_count) and must return identical results for the same
corpus; the fixture backend is the authoritative test substrate.
"""

from __future__ import annotations

import json
import threading
import time
from datetime import datetime, timezone
from pathlib import Path

import requests

from .errors import ArticleNotFound, BackendUnavailable, EmptyQuery, NoRevisionBefore
from .records import (
    AssessmentImportance,
    AssessmentQuality,
    AssessmentRating,
    ArticleRecord,
    PageInfo,
    RevisionStamp,
    TimeWindow,
    check_revision_order,
    format_timestamp,
    parse_timestamp,
)
from .store import CacheEntry, Store
from .wikitext import extract_links, normalize_title

DEFAULT_RATE_LIMIT = 5.0  # requests per second against the live API
DEFAULT_USER_AGENT = "wikinet/0.1 (semantic network builder)"

_QUALITY_ORDER = {m: i for i, m in enumerate(AssessmentQuality)}
_IMPORTANCE_ORDER = {m: i for i, m in enumerate(AssessmentImportance)}


class RateLimiter:
    """Serializes request admission to at most ``rate`` per second.

    Clock and sleep are injectable so the ceiling can be verified with a
    counting mock clock.
    """

    def __init__(self, rate: float, clock=time.monotonic, sleep=time.sleep):
        self._interval = 1.0 / rate if rate > 0 else 0.0
        self._clock = clock
        self._sleep = sleep
        self._lock = threading.Lock()
        self._next_free = 0.0

    def acquire(self) -> None:
        if self._interval == 0.0:
            return
        with self._lock:
            now = self._clock()
            wait = self._next_free - now
            self._next_free = max(now, self._next_free) + self._interval
        if wait > 0:
            self._sleep(wait)


def rank_search_results(term: str, corpus: dict[str, str]) -> list[str]:
    """Deterministic relevance order over a title -> latest-wikitext corpus:
    exact title match, then title substring, then body substring;
    lexicographic within each tier."""
    needle = term.strip().lower()
    tiers: list[tuple[int, str]] = []
    for title, body in corpus.items():
        lowered = title.lower()
        if lowered == needle:
            tiers.append((0, title))
        elif needle in lowered:
            tiers.append((1, title))
        elif needle in body.lower():
            tiers.append((2, title))
    return [title for _, title in sorted(tiers)]


class FixtureBackend:
    """Serves articles from an on-disk corpus directory (one JSON document per
    article: title, page_id, assessment, revisions with wikitext)."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        if not self.root.is_dir():
            raise BackendUnavailable(f"fixture corpus not found: {self.root}")
        self.request_count = 0
        self._articles: dict[str, dict] = {}
        for path in sorted(self.root.glob("*.json")):
            with open(path, "r", encoding="utf-8") as fh:
                doc = json.load(fh)
            title = normalize_title(doc["title"])
            revisions = sorted(doc["revisions"], key=lambda r: r["rev_id"])
            stamps = tuple(
                RevisionStamp(
                    rev_id=r["rev_id"],
                    timestamp=parse_timestamp(r["timestamp"]),
                    size_bytes=len(r["wikitext"].encode("utf-8")),
                )
                for r in revisions
            )
            check_revision_order(stamps)
            self._articles[title] = {
                "page_id": doc["page_id"],
                "assessment": AssessmentRating.from_strings(
                    doc.get("assessment", {}).get("quality"),
                    doc.get("assessment", {}).get("importance"),
                ),
                "stamps": stamps,
                "text_by_rev": {r["rev_id"]: r["wikitext"] for r in revisions},
            }
        if not self._articles:
            raise BackendUnavailable(f"fixture corpus is empty: {self.root}")
        self._backlinks: dict[str, int] | None = None

    def _doc(self, title: str) -> dict:
        try:
            return self._articles[title]
        except KeyError:
            raise ArticleNotFound(title) from None

    def search(self, term: str, limit: int) -> list[str]:
        self.request_count += 1
        corpus = {
            title: doc["text_by_rev"][doc["stamps"][-1].rev_id]
            for title, doc in self._articles.items()
        }
        return rank_search_results(term, corpus)[:limit]

    def page_info(self, title: str) -> PageInfo:
        self.request_count += 1
        doc = self._doc(title)
        return PageInfo(title=title, page_id=doc["page_id"], assessment=doc["assessment"])

    def page_infos(self, titles: list[str]) -> dict[str, PageInfo]:
        self.request_count += 1
        return {t: PageInfo(t, self._articles[t]["page_id"], self._articles[t]["assessment"])
                for t in titles if t in self._articles}

    def revisions(self, title: str) -> tuple[RevisionStamp, ...]:
        self.request_count += 1
        return self._doc(title)["stamps"]

    def revision_text(self, title: str, rev_id: int) -> str:
        self.request_count += 1
        doc = self._doc(title)
        try:
            return doc["text_by_rev"][rev_id]
        except KeyError:
            raise ArticleNotFound(f"{title} revision {rev_id}") from None

    def backlink_count(self, title: str) -> int:
        self.request_count += 1
        self._doc(title)
        if self._backlinks is None:
            # Full corpus scan over latest-revision outlinks.
            counts: dict[str, int] = {t: 0 for t in self._articles}
            for src, doc in self._articles.items():
                text = doc["text_by_rev"][doc["stamps"][-1].rev_id]
                for target in set(extract_links(text).internal):
                    if target in counts and target != src:
                        counts[target] += 1
            self._backlinks = counts
        return self._backlinks[title]

    def titles(self) -> list[str]:
        return sorted(self._articles)


class MediaWikiBackend:
    """Live HTTP API client: rate limited, batched where the API allows, with
    exponential backoff on throttling and server errors."""

    def __init__(
        self,
        api_url: str,
        rate_limit: float = DEFAULT_RATE_LIMIT,
        session: requests.Session | None = None,
        user_agent: str = DEFAULT_USER_AGENT,
        max_retries: int = 4,
        timeout: float = 30.0,
        clock=time.monotonic,
        sleep=time.sleep,
    ):
        self.api_url = api_url
        self.request_count = 0
        self._session = session or requests.Session()
        self._session.headers["User-Agent"] = user_agent
        self._limiter = RateLimiter(rate_limit, clock=clock, sleep=sleep)
        self._max_retries = max_retries
        self._timeout = timeout
        self._sleep = sleep

    def _get(self, params: dict) -> dict:
        query = {"action": "query", "format": "json", "formatversion": "2", **params}
        last_error: Exception | None = None
        for attempt in range(self._max_retries):
            self._limiter.acquire()
            self.request_count += 1
            try:
                response = self._session.get(self.api_url, params=query, timeout=self._timeout)
            except requests.RequestException as exc:
                last_error = exc
                self._sleep(2**attempt)
                continue
            if response.status_code == 200:
                return response.json()
            if response.status_code == 429 or response.status_code >= 500:
                last_error = BackendUnavailable(f"HTTP {response.status_code} from {self.api_url}")
                self._sleep(2**attempt)
                continue
            raise BackendUnavailable(f"HTTP {response.status_code} from {self.api_url}")
        raise BackendUnavailable(f"backend unreachable after {self._max_retries} attempts: {last_error}")

    def search(self, term: str, limit: int) -> list[str]:
        data = self._get({"list": "search", "srsearch": term, "srlimit": str(limit), "srprop": ""})
        return [normalize_title(hit["title"]) for hit in data["query"]["search"]]

    def page_info(self, title: str) -> PageInfo:
        infos = self.page_infos([title])
        if title not in infos:
            raise ArticleNotFound(title)
        return infos[title]

    def page_infos(self, titles: list[str]) -> dict[str, PageInfo]:
        out: dict[str, PageInfo] = {}
        for start in range(0, len(titles), 50):
            batch = titles[start : start + 50]
            data = self._get({"titles": "|".join(batch), "prop": "pageassessments"})
            for page in data["query"]["pages"]:
                if page.get("missing"):
                    continue
                title = normalize_title(page["title"])
                out[title] = PageInfo(
                    title=title,
                    page_id=page["pageid"],
                    assessment=_aggregate_assessments(page.get("pageassessments", {})),
                )
        return out

    def revisions(self, title: str) -> tuple[RevisionStamp, ...]:
        stamps: list[RevisionStamp] = []
        params = {
            "titles": title,
            "prop": "revisions",
            "rvprop": "ids|timestamp|size",
            "rvlimit": "500",
            "rvdir": "newer",
        }
        while True:
            data = self._get(params)
            page = data["query"]["pages"][0]
            if page.get("missing"):
                raise ArticleNotFound(title)
            for rev in page.get("revisions", []):
                stamps.append(
                    RevisionStamp(rev["revid"], parse_timestamp(rev["timestamp"]), rev.get("size", 0))
                )
            if "continue" not in data:
                break
            params = {**params, "rvcontinue": data["continue"]["rvcontinue"]}
        check_revision_order(stamps)
        return tuple(stamps)

    def revision_text(self, title: str, rev_id: int) -> str:
        data = self._get(
            {"revids": str(rev_id), "prop": "revisions", "rvprop": "ids|content", "rvslots": "main"}
        )
        pages = data["query"].get("pages", [])
        if not pages or pages[0].get("missing"):
            raise ArticleNotFound(f"{title} revision {rev_id}")
        return pages[0]["revisions"][0]["slots"]["main"]["content"]

    def backlink_count(self, title: str) -> int:
        count = 0
        params = {"list": "backlinks", "bltitle": title, "bllimit": "500", "blnamespace": "0"}
        while True:
            data = self._get(params)
            count += len(data["query"]["backlinks"])
            if "continue" not in data:
                break
            params = {**params, "blcontinue": data["continue"]["blcontinue"]}
        return count


def _aggregate_assessments(assessments: dict) -> AssessmentRating:
    """Best class and importance over all projects that rated the page."""
    best = AssessmentRating()
    for entry in assessments.values():
        candidate = AssessmentRating.from_strings(entry.get("class"), entry.get("importance"))
        best = AssessmentRating(
            quality=max(best.quality, candidate.quality, key=_QUALITY_ORDER.get),
            importance=max(best.importance, candidate.importance, key=_IMPORTANCE_ORDER.get),
        )
    return best


class Source:
    """Cached article operations over a backend.

    Page metadata and revision indexes are memoized per process; revision text
    flows through the persistent store when one is attached, so repeated
    fetches issue no new backend requests and runs can be replayed offline.
    """

    def __init__(self, backend, store: Store | None = None):
        self.backend = backend
        self.store = store
        self._meta: dict[str, tuple[PageInfo, tuple[RevisionStamp, ...]]] = {}
        self._records: dict[tuple[str, int], ArticleRecord] = {}
        self._backlinks: dict[str, int] = {}
        self._lock = threading.Lock()

    def search_seeds(self, term: str, limit: int) -> list[str]:
        if not term.strip():
            raise EmptyQuery("search term is empty")
        if limit < 1:
            raise ValueError("limit must be positive")
        return [normalize_title(t) for t in self.backend.search(term.strip(), limit)]

    def _meta_for(self, title: str) -> tuple[PageInfo, tuple[RevisionStamp, ...]]:
        with self._lock:
            if title in self._meta:
                return self._meta[title]
        if self.store is not None:
            cached = self.store.get_meta(title)
            if cached is not None:
                with self._lock:
                    self._meta[title] = cached
                return cached
        info = self.backend.page_info(title)
        revisions = self.backend.revisions(title)
        if self.store is not None:
            self.store.put_meta(info, revisions)
        with self._lock:
            self._meta[title] = (info, revisions)
        return info, revisions

    def prefetch(self, titles: list[str]) -> None:
        """Warm page metadata for many titles with batched backend queries."""
        missing = [t for t in titles if t not in self._meta]
        if not missing or not hasattr(self.backend, "page_infos"):
            return
        infos = self.backend.page_infos(missing)
        for title, info in infos.items():
            if title in self._meta:
                continue
            revisions = self.backend.revisions(title)
            if self.store is not None:
                self.store.put_meta(info, revisions)
            with self._lock:
                self._meta[title] = (info, revisions)

    def _revision_wikitext(self, info: PageInfo, stamp: RevisionStamp) -> str:
        if self.store is not None:
            entry = self.store.get_revision(info.title, stamp.rev_id)
            if entry is not None:
                return entry.payload["wikitext"]
        text = self.backend.revision_text(info.title, stamp.rev_id)
        if self.store is not None:
            self.store.put(
                CacheEntry(
                    title=info.title,
                    rev_id=stamp.rev_id,
                    payload={
                        "title": info.title,
                        "page_id": info.page_id,
                        "rev_id": stamp.rev_id,
                        "timestamp": format_timestamp(stamp.timestamp),
                        "wikitext": text,
                    },
                    fetched_at=datetime.now(timezone.utc),
                )
            )
        return text

    def fetch_article(self, title: str, as_of: datetime | None = None) -> ArticleRecord:
        title = normalize_title(title)
        info, revisions = self._meta_for(title)
        if as_of is None:
            stamp = revisions[-1]
        else:
            older = [r for r in revisions if r.timestamp <= as_of]
            if not older:
                raise NoRevisionBefore(title, as_of)
            stamp = older[-1]
        key = (title, stamp.rev_id)
        with self._lock:
            if key in self._records:
                return self._records[key]
        text = self._revision_wikitext(info, stamp)
        links = extract_links(text)
        outlinks = tuple(t for t in links.internal if t != title)
        record = ArticleRecord(
            title=title,
            page_id=info.page_id,
            as_of=stamp.timestamp,
            outlinks=outlinks,
            extlinks=links.external,
            assessment=info.assessment,
            revisions=tuple(r for r in revisions if r.timestamp <= stamp.timestamp),
        )
        with self._lock:
            self._records[key] = record
        return record

    def fetch_backlink_count(self, title: str) -> int:
        title = normalize_title(title)
        with self._lock:
            if title in self._backlinks:
                return self._backlinks[title]
        count = self.backend.backlink_count(title)
        with self._lock:
            self._backlinks[title] = count
        return count

    def fetch_revision_count(self, title: str, window: TimeWindow) -> int:
        title = normalize_title(title)
        _, revisions = self._meta_for(title)
        return sum(1 for r in revisions if window.contains(r.timestamp))
