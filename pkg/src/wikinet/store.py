"""Append-only on-disk cache of fetched article data.

Layout: one directory per article title (percent-encoded), holding
``meta.json`` (page id, assessment, revision index) and one ``r<rev_id>.json``
per cached revision text. Every file wraps its payload with a checksum;
revisions are immutable on the wiki, so entries are never invalidated.
A warmed store can be exported as a portable fixture corpus for offline runs.
"""

from __future__ import annotations

import hashlib
import json
import os
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterator
from urllib.parse import quote, unquote

from .errors import CorruptStore
from .records import (
    AssessmentRating,
    PageInfo,
    RevisionStamp,
    format_timestamp,
    parse_timestamp,
)


@dataclass(frozen=True)
class CacheEntry:
    """One cached revision of one article."""

    title: str
    rev_id: int
    payload: dict
    fetched_at: datetime


def _checksum(payload: dict) -> str:
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=True)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def _write_durable(path: Path, document: dict) -> None:
    tmp = path.with_suffix(".tmp")
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(document, fh, sort_keys=True)
        fh.flush()
        os.fsync(fh.fileno())
    os.replace(tmp, path)


def _read_checked(path: Path) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        document = json.load(fh)
    if _checksum(document["payload"]) != document.get("checksum"):
        raise CorruptStore(f"checksum mismatch in {path}")
    return document


class Store:
    """Durable cache with read-your-writes semantics within a process.

    Writes acknowledge only after the entry is flushed to disk; a write to an
    existing key with a different payload is rejected (entries are immutable).
    """

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._write_lock = threading.Lock()

    def _title_dir(self, title: str) -> Path:
        return self.root / quote(title, safe="")

    def _entry_path(self, title: str, rev_id: int) -> Path:
        return self._title_dir(title) / f"r{rev_id}.json"

    # -- revision entries ----------------------------------------------------

    def put(self, entry: CacheEntry) -> None:
        path = self._entry_path(entry.title, entry.rev_id)
        document = {
            "checksum": _checksum(entry.payload),
            "fetched_at": format_timestamp(entry.fetched_at),
            "payload": entry.payload,
        }
        with self._write_lock:
            if path.exists():
                existing = _read_checked(path)
                if existing["checksum"] != document["checksum"]:
                    raise ValueError(
                        f"conflicting rewrite of immutable entry ({entry.title!r}, {entry.rev_id})"
                    )
                return
            path.parent.mkdir(parents=True, exist_ok=True)
            _write_durable(path, document)

    def get_revision(self, title: str, rev_id: int) -> CacheEntry | None:
        path = self._entry_path(title, rev_id)
        if not path.exists():
            return None
        document = _read_checked(path)
        return CacheEntry(
            title=title,
            rev_id=rev_id,
            payload=document["payload"],
            fetched_at=parse_timestamp(document["fetched_at"]),
        )

    def get(self, title: str, as_of: datetime | None = None) -> CacheEntry | None:
        """Newest cached entry whose revision timestamp is <= as_of, or None.

        Looks only at what is stored; callers that know the full revision
        index should resolve the exact revision id and use get_revision.
        """
        directory = self._title_dir(title)
        if not directory.is_dir():
            return None
        best: CacheEntry | None = None
        best_ts = None
        for path in directory.glob("r*.json"):
            rev_id = int(path.stem[1:])
            entry = self.get_revision(title, rev_id)
            ts = parse_timestamp(entry.payload["timestamp"])
            if as_of is not None and ts > as_of:
                continue
            if best is None or (ts, rev_id) > (best_ts, best.rev_id):
                best, best_ts = entry, ts
        return best

    # -- article metadata ------------------------------------------------------

    def put_meta(self, info: PageInfo, revisions: tuple[RevisionStamp, ...]) -> None:
        payload = {
            "title": info.title,
            "page_id": info.page_id,
            "assessment": {
                "quality": info.assessment.quality.value,
                "importance": info.assessment.importance.value,
            },
            "revisions": [
                {
                    "rev_id": r.rev_id,
                    "timestamp": format_timestamp(r.timestamp),
                    "size_bytes": r.size_bytes,
                }
                for r in revisions
            ],
        }
        document = {
            "checksum": _checksum(payload),
            "fetched_at": format_timestamp(datetime.now(timezone.utc)),
            "payload": payload,
        }
        with self._write_lock:
            path = self._title_dir(info.title) / "meta.json"
            path.parent.mkdir(parents=True, exist_ok=True)
            _write_durable(path, document)

    def get_meta(self, title: str) -> tuple[PageInfo, tuple[RevisionStamp, ...]] | None:
        path = self._title_dir(title) / "meta.json"
        if not path.exists():
            return None
        payload = _read_checked(path)["payload"]
        info = PageInfo(
            title=payload["title"],
            page_id=payload["page_id"],
            assessment=AssessmentRating.from_strings(
                payload["assessment"]["quality"], payload["assessment"]["importance"]
            ),
        )
        revisions = tuple(
            RevisionStamp(r["rev_id"], parse_timestamp(r["timestamp"]), r["size_bytes"])
            for r in payload["revisions"]
        )
        return info, revisions

    def titles(self) -> Iterator[str]:
        for path in sorted(self.root.iterdir()):
            if path.is_dir():
                yield unquote(path.name)

    # -- corpus interchange ---------------------------------------------------

    def export_corpus(self, out_dir: str | Path) -> int:
        """Write cached articles as a portable fixture corpus; returns the
        number of articles exported. Only revisions with cached text appear."""
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        exported = 0
        for title in self.titles():
            meta = self.get_meta(title)
            if meta is None:
                continue
            info, revisions = meta
            revision_docs = []
            for stamp in revisions:
                entry = self.get_revision(title, stamp.rev_id)
                if entry is None:
                    continue
                revision_docs.append(
                    {
                        "rev_id": stamp.rev_id,
                        "timestamp": format_timestamp(stamp.timestamp),
                        "wikitext": entry.payload["wikitext"],
                    }
                )
            if not revision_docs:
                continue
            doc = {
                "title": info.title,
                "page_id": info.page_id,
                "assessment": {
                    "quality": info.assessment.quality.value,
                    "importance": info.assessment.importance.value,
                },
                "revisions": revision_docs,
            }
            with open(out / f"{quote(title, safe='')}.json", "w", encoding="utf-8") as fh:
                json.dump(doc, fh, indent=2, sort_keys=True)
                fh.write("\n")
            exported += 1
        return exported

    def import_corpus(self, corpus_dir: str | Path) -> int:
        """Warm the cache from a fixture corpus directory; returns the number
        of articles imported."""
        count = 0
        for path in sorted(Path(corpus_dir).glob("*.json")):
            with open(path, "r", encoding="utf-8") as fh:
                doc = json.load(fh)
            info = PageInfo(
                title=doc["title"],
                page_id=doc["page_id"],
                assessment=AssessmentRating.from_strings(
                    doc.get("assessment", {}).get("quality"),
                    doc.get("assessment", {}).get("importance"),
                ),
            )
            stamps = []
            now = datetime.now(timezone.utc)
            for rev in doc["revisions"]:
                ts = parse_timestamp(rev["timestamp"])
                size = len(rev["wikitext"].encode("utf-8"))
                stamps.append(RevisionStamp(rev["rev_id"], ts, size))
                self.put(
                    CacheEntry(
                        title=info.title,
                        rev_id=rev["rev_id"],
                        payload={
                            "title": info.title,
                            "page_id": info.page_id,
                            "rev_id": rev["rev_id"],
                            "timestamp": format_timestamp(ts),
                            "wikitext": rev["wikitext"],
                        },
                        fetched_at=now,
                    )
                )
            self.put_meta(info, tuple(stamps))
            count += 1
        return count
