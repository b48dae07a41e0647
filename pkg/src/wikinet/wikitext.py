"""Link extraction from raw wikitext.

Pulls internal article links and external URLs out of stored revision text so
link networks can be rebuilt for any revision without a full markup engine.
Templates are not expanded: links that only exist after transclusion are
invisible, but links written literally inside template arguments are found.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from urllib.parse import urlsplit, urlunsplit

from .errors import EmptyTitle, NotAUrl

# Namespaces whose link targets are not articles.
EXCLUDED_NAMESPACES = frozenset(
    {"file", "image", "category", "wikipedia", "template", "help", "portal"}
)

# Interwiki / language prefixes such as "fr:" or "zh-min-nan:".
_LANGUAGE_PREFIX = re.compile(r"^[a-z]{2,3}(?:-[a-z0-9]+)*$")

_COMMENT = re.compile(r"<!--.*?-->", re.DOTALL)
_NOWIKI = re.compile(r"<nowiki>.*?</nowiki>", re.DOTALL | re.IGNORECASE)

# [[Target]], [[Target|label]], [[Target#anchor|label]]. Targets never span
# lines; labels may (image captions).
_WIKILINK = re.compile(r"\[\[([^\[\]|#\n]*)(?:#[^\[\]|]*)?(?:\|[^\[\]]*)?\]\]")

# Matches URLs in both bracketed external links and bare text; brackets,
# whitespace and wiki markup terminate the match.
_URL = re.compile(r"https?://[^\s<>\[\]\"{}|]+", re.IGNORECASE)

# Trailing punctuation is not part of a bare URL.
_TRAILING_PUNCT = ").,;:!?"


@dataclass(frozen=True)
class LinkExtraction:
    """Internal link targets and external URLs of one revision, in first-occurrence order."""

    internal: tuple[str, ...]
    external: tuple[str, ...]


def normalize_title(raw: str) -> str:
    """Canonical article title: fragment stripped, underscores to spaces,
    whitespace collapsed, first character uppercased. Idempotent."""
    text = raw.split("#", 1)[0]
    text = re.sub(r"\s+", " ", text.replace("_", " ")).strip()
    if not text:
        raise EmptyTitle(f"empty title: {raw!r}")
    return text[0].upper() + text[1:]


def normalize_url(raw: str) -> str:
    """Canonical URL: lowercased scheme/host, default port and fragment
    removed, bare trailing slash removed. Idempotent."""
    try:
        parts = urlsplit(raw.strip())
    except ValueError as exc:
        raise NotAUrl(f"not a URL: {raw!r}") from exc
    scheme = parts.scheme.lower()
    if scheme not in ("http", "https") or not parts.hostname:
        raise NotAUrl(f"not an http(s) URL: {raw!r}")
    host = parts.hostname.lower()
    port = parts.port
    default = 80 if scheme == "http" else 443
    netloc = host if port is None or port == default else f"{host}:{port}"
    path = "" if parts.path == "/" else parts.path
    return urlunsplit((scheme, netloc, path, parts.query, ""))


def _strip_invisible(wikitext: str) -> str:
    text = _COMMENT.sub(" ", wikitext)
    return _NOWIKI.sub(" ", text)


def _is_article_target(target: str) -> bool:
    if ":" not in target:
        return True
    prefix = target.split(":", 1)[0].strip().lower()
    if prefix in EXCLUDED_NAMESPACES:
        return False
    if _LANGUAGE_PREFIX.fullmatch(prefix):
        return False
    return True


def extract_internal_links(wikitext: str) -> list[str]:
    """Canonical targets of ``[[...]]`` links, deduplicated, in first-occurrence
    order. Excluded-namespace and interwiki targets are dropped; malformed
    markup is skipped, never fatal."""
    seen: set[str] = set()
    out: list[str] = []
    for match in _WIKILINK.finditer(_strip_invisible(wikitext)):
        target = match.group(1).strip().lstrip(":").strip()
        if not target or not _is_article_target(target):
            continue
        try:
            title = normalize_title(target)
        except EmptyTitle:
            continue
        if title not in seen:
            seen.add(title)
            out.append(title)
    return out


def extract_external_urls(wikitext: str) -> list[str]:
    """Normalized http(s) URLs from bracketed external links and bare text
    (ref spans included), deduplicated, in first-occurrence order."""
    seen: set[str] = set()
    out: list[str] = []
    for match in _URL.finditer(_strip_invisible(wikitext)):
        raw = match.group(0).rstrip(_TRAILING_PUNCT)
        try:
            url = normalize_url(raw)
        except NotAUrl:
            continue
        if url not in seen:
            seen.add(url)
            out.append(url)
    return out


def extract_links(wikitext: str) -> LinkExtraction:
    return LinkExtraction(
        internal=tuple(extract_internal_links(wikitext)),
        external=tuple(extract_external_urls(wikitext)),
    )
