import csv
import json
import logging
from datetime import datetime
from pathlib import Path
from typing import Any, Iterable, List, Optional, Sequence, Union

import numpy as np
from tenacity import RetryError, retry, retry_if_exception_type, stop_after_attempt, wait_exponential

from src.utils.errors import OutputError

# Setup logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

_io_retry = retry(
    wait=wait_exponential(multiplier=1, min=2, max=10),
    stop=stop_after_attempt(3),
    retry=retry_if_exception_type(OSError),
)


class ResultWriter:
    """Writes CSV tables, JSON reports and raw binary dumps under an output directory."""

    def __init__(self, output_dir: PathLike = "output"):
        self.output_dir = Path(output_dir)

    def resolve(self, path: Optional[PathLike], stem: str, suffix: str) -> Path:
        """
        Resolve a target path; without one, build a timestamped name in the output directory.

        Args:
            path: Explicit path, absolute or relative to the working directory
            stem: Base name used for generated file names
            suffix: File extension including the dot

        Returns:
            Path to write to
        """
        if path is not None:
            return Path(path)
        timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        return self.output_dir / f"{stem}_{timestamp}{suffix}"

    def write_csv(self, header: Sequence[str], rows: Iterable[Sequence[Any]], path: PathLike) -> Path:
        """Write rows as RFC-4180 CSV with a header line."""
        materialized = [list(row) for row in rows]
        return self._guarded(self._write_csv, Path(path), list(header), materialized)

    def write_json(self, payload: Any, path: PathLike) -> Path:
        """Write a JSON document (indent=2)."""
        return self._guarded(self._write_json, Path(path), payload)

    def write_binary_pairs(self, pairs: np.ndarray, path: PathLike) -> Path:
        """Write (det_rho, det_pt) pairs as little-endian float64, row-major."""
        array = np.ascontiguousarray(pairs, dtype="<f8")
        return self._guarded(self._write_binary, Path(path), array)

    def _guarded(self, writer, path: Path, *args) -> Path:
        try:
            writer(path, *args)
        except RetryError as e:
            cause = e.last_attempt.exception()
            logger.error(f"Failed to write {path}: {cause}")
            raise OutputError(f"could not write {path}: {cause}") from cause
        logger.info(f"Wrote {path}")
        return path

    @staticmethod
    def _prepare(path: Path):
        path.parent.mkdir(parents=True, exist_ok=True)

    @_io_retry
    def _write_csv(self, path: Path, header: List[str], rows: List[List[Any]]):
        self._prepare(path)
        with open(path, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(header)
            writer.writerows(rows)

    @_io_retry
    def _write_json(self, path: Path, payload: Any):
        self._prepare(path)
        with open(path, "w", encoding="utf-8") as f:
            json.dump(payload, f, indent=2)

    @_io_retry
    def _write_binary(self, path: Path, array: np.ndarray):
        self._prepare(path)
        array.tofile(str(path))


def read_binary_pairs(path: PathLike) -> np.ndarray:
    """Read a pair dump back as an (N, 2) float64 array."""
    return np.fromfile(str(path), dtype="<f8").reshape(-1, 2)
