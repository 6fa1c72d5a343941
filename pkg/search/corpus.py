"""
JSONL corpus of classified pairs.

Usage:
    with CorpusWriter(Path("__dev__/corpus.jsonl")) as writer:
        writer.append(record)

    for line_no, record in read_corpus(path):
        mismatches = reclassify(record)
"""

import logging
from collections.abc import Iterator
from datetime import datetime

try:
    from datetime import UTC
except ImportError:  # Python < 3.11; datetime.UTC is an alias of timezone.utc
    from datetime import timezone

    UTC = timezone.utc
from pathlib import Path
from types import TracebackType
from typing import TextIO

from pydantic import BaseModel, ValidationError

from lattice_core.exceptions import CorpusError
from lattice_core.schema import MatrixModel

from .classify import PairReport, classify_pair

logger = logging.getLogger(__name__)


class CorpusRecord(BaseModel):
    """
    One corpus line.

    Attributes:
        a, b: The pair
        report: PairReport flags (without the matrices)
        seed: Campaign seed
        attempt: Attempt index that produced the pair
        strategy: Sampler strategy name
        recorded_at: ISO8601 UTC timestamp
        violations: Goals or invariants this pair violated
    """

    a: MatrixModel
    b: MatrixModel
    report: dict[str, bool | int | None]
    seed: int
    attempt: int
    strategy: str
    recorded_at: str
    violations: list[str] = []

    @classmethod
    def from_report(
        cls,
        report: PairReport,
        seed: int,
        attempt: int,
        strategy: str,
        violations: list[str],
    ) -> "CorpusRecord":
        return cls(
            a=report.a,
            b=report.b,
            report=report.flags(),  # type: ignore[arg-type]
            seed=seed,
            attempt=attempt,
            strategy=strategy,
            recorded_at=datetime.now(UTC).isoformat(),
            violations=violations,
        )


class CorpusWriter:
    """Single appender for a corpus file; parent directories are created."""

    def __init__(self, path: Path):
        self.path = path
        self._stream: TextIO | None = None
        self.written = 0

    def __enter__(self) -> "CorpusWriter":
        try:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            self._stream = self.path.open("a", encoding="utf-8")
        except OSError as e:
            raise CorpusError(f"Cannot open corpus {self.path}: {e}", {"path": str(self.path)}) from e
        logger.info("Appending corpus records to %s", self.path)
        return self

    def __exit__(
        self,
        exc_type: type[BaseException] | None,
        exc: BaseException | None,
        tb: TracebackType | None,
    ) -> None:
        if self._stream is not None:
            self._stream.close()
            self._stream = None

    def append(self, record: CorpusRecord) -> None:
        if self._stream is None:
            raise CorpusError("CorpusWriter used outside its context")
        try:
            self._stream.write(record.model_dump_json() + "\n")
            self._stream.flush()
        except OSError as e:
            raise CorpusError(f"Failed to write corpus {self.path}: {e}", {"path": str(self.path)}) from e
        self.written += 1


def read_corpus(path: Path) -> Iterator[tuple[int, CorpusRecord]]:
    """Yield (line number, record); blank lines are skipped."""
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as e:
        raise CorpusError(f"Cannot read corpus {path}: {e}", {"path": str(path)}) from e
    for line_no, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            yield line_no, CorpusRecord.model_validate_json(line)
        except ValidationError as e:
            raise CorpusError(
                f"Malformed corpus line {line_no} in {path}", {"line": line_no, "detail": str(e)}
            ) from e


def reclassify(record: CorpusRecord) -> dict[str, tuple[object, object]]:
    """Re-run classify_pair; returns {flag: (stored, recomputed)} for every mismatch."""
    fresh = classify_pair(record.a.to_matrix(), record.b.to_matrix()).flags()
    return {
        key: (record.report.get(key), value)
        for key, value in fresh.items()
        if record.report.get(key) != value
    }
