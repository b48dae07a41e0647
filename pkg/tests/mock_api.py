"""A local HTTP stand-in for the live wiki API, serving a fixture corpus with
the same response shapes the real endpoint uses. Lets the live-backend client
be exercised offline and compared against the fixture backend."""

from __future__ import annotations

import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, urlsplit

from wikinet.records import format_timestamp
from wikinet.source import FixtureBackend, rank_search_results
from wikinet.wikitext import extract_links

PAGE_SIZE = 2  # tiny pages force the client through its pagination paths


class _Corpus:
    def __init__(self, corpus_dir):
        self.backend = FixtureBackend(corpus_dir)
        self._latest_text = {
            title: self.backend.revision_text(title, self.backend.revisions(title)[-1].rev_id)
            for title in self.backend.titles()
        }
        self._rev_index = {}
        for title in self.backend.titles():
            for stamp in self.backend.revisions(title):
                self._rev_index[stamp.rev_id] = title

    def search(self, term: str, limit: int) -> list[str]:
        return rank_search_results(term, self._latest_text)[:limit]

    def backlink_sources(self, target: str) -> list[str]:
        return sorted(
            src
            for src, text in self._latest_text.items()
            if src != target and target in extract_links(text).internal
        )

    def title_for_rev(self, rev_id: int) -> str | None:
        return self._rev_index.get(rev_id)


def _make_handler(corpus: _Corpus):
    class Handler(BaseHTTPRequestHandler):
        def log_message(self, *args):  # keep test output clean
            pass

        def _reply(self, payload: dict):
            body = json.dumps(payload).encode("utf-8")
            self.send_response(200)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)

        def do_GET(self):
            params = {k: v[0] for k, v in parse_qs(urlsplit(self.path).query).items()}
            if params.get("list") == "search":
                titles = corpus.search(params["srsearch"], int(params.get("srlimit", 10)))
                self._reply({"query": {"search": [{"title": t} for t in titles]}})
            elif params.get("list") == "backlinks":
                self._reply(self._backlinks(params))
            elif "revids" in params:
                self._reply(self._revision_content(params))
            elif params.get("prop") == "pageassessments":
                self._reply(self._page_infos(params))
            elif params.get("prop") == "revisions":
                self._reply(self._revisions(params))
            else:
                self._reply({"query": {}})

        def _page_infos(self, params):
            pages = []
            for raw in params["titles"].split("|"):
                try:
                    info = corpus.backend.page_info(raw)
                except Exception:
                    pages.append({"title": raw, "missing": True})
                    continue
                pages.append(
                    {
                        "pageid": info.page_id,
                        "title": info.title,
                        "pageassessments": {
                            "General": {
                                "class": info.assessment.quality.value,
                                "importance": info.assessment.importance.value,
                            }
                        },
                    }
                )
            return {"query": {"pages": pages}}

        def _revisions(self, params):
            title = params["titles"]
            try:
                stamps = corpus.backend.revisions(title)
            except Exception:
                return {"query": {"pages": [{"title": title, "missing": True}]}}
            offset = int(params.get("rvcontinue", 0))
            window = stamps[offset : offset + PAGE_SIZE]
            payload = {
                "query": {
                    "pages": [
                        {
                            "title": title,
                            "revisions": [
                                {
                                    "revid": s.rev_id,
                                    "timestamp": format_timestamp(s.timestamp),
                                    "size": s.size_bytes,
                                }
                                for s in window
                            ],
                        }
                    ]
                }
            }
            if offset + PAGE_SIZE < len(stamps):
                payload["continue"] = {"rvcontinue": str(offset + PAGE_SIZE)}
            return payload

        def _revision_content(self, params):
            rev_id = int(params["revids"])
            title = corpus.title_for_rev(rev_id)
            if title is None:
                return {"query": {"pages": []}}
            text = corpus.backend.revision_text(title, rev_id)
            return {
                "query": {
                    "pages": [
                        {
                            "title": title,
                            "revisions": [{"revid": rev_id, "slots": {"main": {"content": text}}}],
                        }
                    ]
                }
            }

        def _backlinks(self, params):
            sources = corpus.backlink_sources(params["bltitle"])
            offset = int(params.get("blcontinue", 0))
            window = sources[offset : offset + PAGE_SIZE]
            payload = {"query": {"backlinks": [{"title": t} for t in window]}}
            if offset + PAGE_SIZE < len(sources):
                payload["continue"] = {"blcontinue": str(offset + PAGE_SIZE)}
            return payload

    return Handler


class MockApiServer:
    """Context manager running the mock endpoint on a free local port."""

    def __init__(self, corpus_dir):
        self._server = ThreadingHTTPServer(("127.0.0.1", 0), _make_handler(_Corpus(corpus_dir)))
        self._thread = threading.Thread(target=self._server.serve_forever, daemon=True)

    @property
    def api_url(self) -> str:
        host, port = self._server.server_address
        return f"http://{host}:{port}/w/api.php"

    def __enter__(self) -> "MockApiServer":
        self._thread.start()
        return self

    def __exit__(self, *exc):
        self._server.shutdown()
        self._server.server_close()
