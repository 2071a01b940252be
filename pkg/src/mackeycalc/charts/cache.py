"""On-disk cache of computed chart rows.

Rows are keyed by the SHA-256 of the coefficient functor's canonical document,
the row index y and the column range, so a changed functor never hits a stale row.
A configurable share of cache hits is recomputed and compared by the chart driver.
"""

import hashlib
import json
import random
from pathlib import Path

from mackeycalc.bredon.chart import ChartCell
from mackeycalc.common import get_logger
from mackeycalc.common.config import get_settings

log = get_logger(__name__)

ROW_FORMAT = "mackeycalc.chart-row/1"


class ChartCache:
    """JSON files under one directory, one per (coefficient, y, columns)."""

    def __init__(
        self,
        directory: Path | str | None = None,
        verify_fraction: float | None = None,
        seed: int | None = None,
    ) -> None:
        settings = get_settings()
        self.directory = Path(directory) if directory is not None else settings.cache_path
        self.verify_fraction = settings.cache_verify_fraction if verify_fraction is None else verify_fraction
        if not 0.0 <= self.verify_fraction <= 1.0:
            raise ValueError(f"verify_fraction must lie in [0, 1], got {self.verify_fraction}")
        self._rng = random.Random(seed)

    def _key(self, digest: str, y: int, xs: list[int]) -> str:
        text = f"{digest}:{y}:{','.join(str(x) for x in xs)}"
        return hashlib.sha256(text.encode()).hexdigest()

    def path_for(self, digest: str, y: int, xs: list[int]) -> Path:
        return self.directory / f"{self._key(digest, y, xs)}.json"

    def load_row(self, digest: str, y: int, xs: list[int]) -> list[ChartCell] | None:
        path = self.path_for(digest, y, xs)
        if not path.exists():
            return None
        try:
            doc = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as e:
            log.warning("chart_cache_unreadable", path=str(path), error=str(e))
            return None
        if doc.get("format") != ROW_FORMAT or doc.get("coefficient_sha256") != digest:
            log.warning("chart_cache_foreign_entry", path=str(path))
            return None
        row = [ChartCell.from_document(c) for c in doc["cells"]]
        if [c.x for c in row] != xs or any(c.y != y for c in row):
            log.warning("chart_cache_shape_mismatch", path=str(path), y=y)
            return None
        log.debug("chart_cache_hit", y=y, path=str(path))
        return row

    def store_row(self, digest: str, y: int, row: list[ChartCell]) -> Path:
        xs = [c.x for c in row]
        path = self.path_for(digest, y, xs)
        self.directory.mkdir(parents=True, exist_ok=True)
        doc = {
            "format": ROW_FORMAT,
            "coefficient_sha256": digest,
            "y": y,
            "cells": [c.to_document() for c in row],
        }
        # Write then rename so a concurrent reader never sees half a file
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(doc, sort_keys=True))
        tmp.replace(path)
        log.debug("chart_cache_stored", y=y, path=str(path))
        return path

    def should_verify(self) -> bool:
        """Decide whether the next cache hit is recomputed."""
        return self._rng.random() < self.verify_fraction

    def clear(self) -> int:
        """Delete every cached row; returns how many files were removed."""
        if not self.directory.exists():
            return 0
        removed = 0
        for path in self.directory.glob("*.json"):
            path.unlink()
            removed += 1
        log.info("chart_cache_cleared", directory=str(self.directory), removed=removed)
        return removed
