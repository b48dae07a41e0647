import json
import threading
from datetime import datetime, timezone

import pytest

from wikinet.errors import CorruptStore
from wikinet.records import AssessmentRating, PageInfo, RevisionStamp
from wikinet.source import FixtureBackend, Source
from wikinet.store import CacheEntry, Store


def utc(*args):
    return datetime(*args, tzinfo=timezone.utc)


def entry(title="Alpha", rev_id=1, ts="2011-01-10T10:00:00Z", text="body"):
    return CacheEntry(
        title=title,
        rev_id=rev_id,
        payload={
            "title": title,
            "page_id": 1,
            "rev_id": rev_id,
            "timestamp": ts,
            "wikitext": text,
        },
        fetched_at=utc(2011, 8, 1),
    )


class TestPutGet:
    def test_round_trip(self, tmp_path):
        store = Store(tmp_path)
        store.put(entry())
        got = store.get_revision("Alpha", 1)
        assert got.payload == entry().payload

    def test_get_before_any_entry_misses(self, tmp_path):
        store = Store(tmp_path)
        store.put(entry(ts="2011-05-01T00:00:00Z"))
        assert store.get("Alpha", as_of=utc(2011, 1, 1)) is None

    def test_get_newest_at_or_before(self, tmp_path):
        store = Store(tmp_path)
        store.put(entry(rev_id=1, ts="2011-01-01T00:00:00Z", text="one"))
        store.put(entry(rev_id=2, ts="2011-06-01T00:00:00Z", text="two"))
        got = store.get("Alpha", as_of=utc(2011, 3, 1))
        assert got.rev_id == 1
        assert store.get("Alpha").rev_id == 2

    def test_idempotent_identical_put(self, tmp_path):
        store = Store(tmp_path)
        store.put(entry())
        store.put(entry())  # same payload: fine

    def test_conflicting_rewrite_rejected(self, tmp_path):
        store = Store(tmp_path)
        store.put(entry(text="one"))
        with pytest.raises(ValueError):
            store.put(entry(text="two"))

    def test_survives_restart(self, tmp_path):
        Store(tmp_path).put(entry())
        assert Store(tmp_path).get_revision("Alpha", 1) is not None

    def test_checksum_mismatch_raises(self, tmp_path):
        store = Store(tmp_path)
        store.put(entry())
        path = next((tmp_path / "Alpha").glob("r*.json"))
        doc = json.loads(path.read_text("utf-8"))
        doc["payload"]["wikitext"] = "tampered"
        path.write_text(json.dumps(doc), "utf-8")
        with pytest.raises(CorruptStore):
            store.get_revision("Alpha", 1)

    def test_concurrent_puts_distinct_keys(self, tmp_path):
        store = Store(tmp_path)
        errors = []

        def put_one(i):
            try:
                store.put(entry(title=f"T{i}", rev_id=i + 1))
            except Exception as exc:  # pragma: no cover
                errors.append(exc)

        threads = [threading.Thread(target=put_one, args=(i,)) for i in range(16)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert not errors
        for i in range(16):
            assert store.get_revision(f"T{i}", i + 1) is not None


class TestMeta:
    def test_meta_round_trip(self, tmp_path):
        store = Store(tmp_path)
        info = PageInfo("Alpha", 7, AssessmentRating.from_strings("B", "High"))
        stamps = (RevisionStamp(1, utc(2011, 1, 1), 10), RevisionStamp(2, utc(2011, 2, 1), 20))
        store.put_meta(info, stamps)
        got_info, got_stamps = store.get_meta("Alpha")
        assert got_info == info
        assert got_stamps == stamps


class TestSourceIntegration:
    def test_store_backed_source_reads_offline(self, tmp_path, abortion_corpus):
        store = Store(tmp_path / "cache")
        warm = Source(FixtureBackend(abortion_corpus), store=store)
        first = warm.fetch_article("Abortion")
        # A fresh Source over the same store must answer from disk alone.
        cold_backend = FixtureBackend(abortion_corpus)
        cold = Source(cold_backend, store=store)
        assert cold.fetch_article("Abortion") == first
        assert cold_backend.request_count == 0

    def test_export_import_corpus_round_trip(self, tmp_path, abortion_corpus):
        store = Store(tmp_path / "cache")
        source = Source(FixtureBackend(abortion_corpus), store=store)
        record = source.fetch_article("Abortion")
        exported_dir = tmp_path / "corpus"
        assert store.export_corpus(exported_dir) == 1
        # The exported corpus is loadable and holds the cached revision.
        reloaded = Source(FixtureBackend(exported_dir))
        assert reloaded.fetch_article("Abortion", as_of=record.as_of).outlinks == record.outlinks

    def test_import_corpus_warms_cache(self, tmp_path, abortion_corpus):
        store = Store(tmp_path / "cache")
        assert store.import_corpus(abortion_corpus) == 8
        offline_backend = FixtureBackend(abortion_corpus)
        source = Source(offline_backend, store=store)
        rec = source.fetch_article("Pregnancy")
        assert rec.outlinks == ("Fetus", "Miscarriage")
        assert offline_backend.request_count == 0
