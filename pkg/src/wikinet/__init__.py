"""wikinet: ranked semantic networks from encyclopedia link data."""

__version__ = "0.1.0"
