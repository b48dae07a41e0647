"""Search quality measurement with normalized discounted cumulative gain.

Items are judged 0 (not relevant), 1 (relevant) or 2 (highly relevant). The
gain of a result list at cutoff k is the discounted reward sum divided by the
normalizer a perfectly ordered list would achieve, so a perfect ordering
scores exactly 1.0.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from .errors import InvalidLabel, NoRelevantItems
from .wikitext import normalize_title, normalize_url

HIGH_RELEVANCE = 2
RELEVANT = 1
NOT_RELEVANT = 0


def canonical_item_key(raw: str) -> str:
    """Judged items are article titles or URLs; canonicalize accordingly."""
    if raw.strip().lower().startswith(("http://", "https://")):
        return normalize_url(raw)
    return normalize_title(raw)


def reward(label: int) -> int:
    """Reward of a search hit: the relevance label itself."""
    if label not in (0, 1, 2):
        raise InvalidLabel(label)
    return label


@dataclass(frozen=True)
class EvalConfig:
    k: int
    log_base: float = 2.0

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.log_base <= 1:
            raise ValueError("log base must be > 1")


class JudgmentSet:
    """Relevance labels for one query, keyed by canonical item key."""

    def __init__(self, query: str, labels: Mapping[str, int]):
        self.query = query
        self.labels: dict[str, int] = {}
        for key, label in labels.items():
            self.labels[canonical_item_key(key)] = reward(label)

    @property
    def n_high(self) -> int:
        return sum(1 for v in self.labels.values() if v == HIGH_RELEVANCE)

    @property
    def n_relevant(self) -> int:
        return sum(1 for v in self.labels.values() if v == RELEVANT)

    def label_of(self, key: str) -> int:
        return self.labels.get(key, NOT_RELEVANT)


class RankedResult:
    """An ordered result list; positions are 1-based, keys unique."""

    def __init__(self, items: Sequence[str]):
        if not items:
            raise ValueError("ranked result must be non-empty")
        keys = [canonical_item_key(i) for i in items]
        if len(set(keys)) != len(keys):
            raise ValueError("ranked result contains duplicate items")
        self.items: tuple[str, ...] = tuple(keys)


def ideal_profile(n_high: int, n_relevant: int, k: int) -> list[int]:
    """Label sequence of a perfectly ordered result list, truncated at k:
    all the highly relevant items first, then the relevant ones, then zeros."""
    profile = [HIGH_RELEVANCE] * n_high + [RELEVANT] * n_relevant
    profile = profile[:k]
    return profile + [NOT_RELEVANT] * (k - len(profile))


def _discounted_gain(labels: Sequence[int], k: int, log_base: float) -> float:
    total = 0.0
    for position, label in enumerate(labels[:k], start=1):
        total += (2 ** reward(label) - 1) / math.log(1 + position, log_base)
    return total


def normalizer(n_high: int, n_relevant: int, k: int, log_base: float = 2.0) -> float:
    """Discounted gain of the ideal ordering; undefined without relevant items."""
    if n_high == 0 and n_relevant == 0:
        raise NoRelevantItems("judgment set has no relevant items")
    return _discounted_gain(ideal_profile(n_high, n_relevant, k), k, log_base)


def ndcg_at_k(result: RankedResult, judgments: JudgmentSet, cfg: EvalConfig) -> float:
    """Normalized discounted cumulative gain at cutoff k, in [0, 1].

    Positions past the end of the result list contribute nothing; unjudged
    items count as not relevant.
    """
    norm = normalizer(judgments.n_high, judgments.n_relevant, cfg.k, cfg.log_base)
    labels = [judgments.label_of(item) for item in result.items]
    return _discounted_gain(labels, cfg.k, cfg.log_base) / norm


def compare_variants(
    variants: Mapping[str, RankedResult], judgments: JudgmentSet, cfg: EvalConfig
) -> list[tuple[str, float]]:
    """One nDCG@k score per ranking variant, best first; name order breaks ties."""
    rows = [(name, ndcg_at_k(result, judgments, cfg)) for name, result in variants.items()]
    rows.sort(key=lambda row: (-row[1], row[0]))
    return rows


def render_table(rows: Sequence[tuple[str, float]], cfg: EvalConfig) -> str:
    """Aligned text table of variant scores."""
    width = max([len("variant")] + [len(name) for name, _ in rows])
    header = f"{'variant'.ljust(width)}  nDCG@{cfg.k}"
    lines = [header, "-" * len(header)]
    for name, score in rows:
        lines.append(f"{name.ljust(width)}  {score:.4f}")
    return "\n".join(lines) + "\n"


def load_judgments(path: str | Path) -> dict[str, JudgmentSet]:
    """Load judgment records (query, item, rating) from a JSON-lines file,
    grouped into one JudgmentSet per query."""
    grouped: dict[str, dict[str, int]] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            record = json.loads(line)
            grouped.setdefault(record["query"], {})[record["item"]] = int(record["rating"])
    return {query: JudgmentSet(query, labels) for query, labels in grouped.items()}
