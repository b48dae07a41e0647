"""Exception types shared across the package."""


class WikinetError(Exception):
    """Base class for all package errors."""


class InvalidConfig(WikinetError):
    """A run configuration failed validation before any work started."""


class EmptyQuery(InvalidConfig):
    """A search term was empty after trimming."""


class EmptyTitle(WikinetError):
    """A raw title was empty after trimming."""


class NotAUrl(WikinetError):
    """A string could not be parsed as an http(s) URL."""


class BackendUnavailable(WikinetError):
    """The article backend could not be reached or is misconfigured."""


class ArticleNotFound(WikinetError):
    def __init__(self, title: str):
        super().__init__(f"article not found: {title!r}")
        self.title = title


class NoRevisionBefore(WikinetError):
    """The article has no revision at or before the requested timestamp."""

    def __init__(self, title: str, as_of):
        super().__init__(f"{title!r} has no revision at or before {as_of.isoformat()}")
        self.title = title
        self.as_of = as_of


class DuplicateTitle(WikinetError):
    def __init__(self, title: str):
        super().__init__(f"duplicate article title: {title!r}")
        self.title = title


class SeedNotInGraph(WikinetError):
    def __init__(self, title: str):
        super().__init__(f"seed is not an article node of the graph: {title!r}")
        self.title = title


class SeedNotFound(WikinetError):
    def __init__(self, title: str):
        super().__init__(f"seed article not found: {title!r}")
        self.title = title


class SeedMismatch(WikinetError):
    """Two snapshots with different seed sets cannot be diffed."""


class InvalidLabel(WikinetError):
    def __init__(self, label):
        super().__init__(f"relevance label must be 0, 1 or 2, got {label!r}")
        self.label = label


class NoRelevantItems(WikinetError):
    """A judgment set has no relevant items, so nDCG is undefined."""


class CorruptStore(WikinetError):
    """A cache entry failed its checksum on read."""


class SnapshotBuildError(WikinetError):
    """A snapshot in a series failed to build; carries the failing timestamp."""

    def __init__(self, at, cause: Exception):
        super().__init__(f"snapshot at {at.isoformat()} failed: {cause}")
        self.at = at
        self.cause = cause


class DegenerateLayerWarning(UserWarning):
    """A score layer was constant across nodes and normalized to all zeros."""
