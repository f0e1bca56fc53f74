"""Side-information matrix W and its file formats.

Values are drawn row by row (see ``synth.generator.gen_sideinfo``). Row ``u``
owns a random stream keyed by ``(seed, u)`` whose ``v``-th uniform decides
``W[u, v]`` for ``v < u``. A value therefore depends on its position in the
row prefix ``0 .. u-1`` rather than on an independent ``(seed, u, v)`` key.
Appending vertices leaves every existing entry unchanged.
"""

import csv
import json
import logging
from pathlib import Path
from typing import Sequence, Union

import numpy as np

logger = logging.getLogger(__name__)

BIN_FORMAT = "lower-triangle-u8"


class SideInfoMatrix:
    """
    Symmetric n x n similarity matrix with entries on a fixed support grid.

    Entries are stored as grid indices (one byte each); ``values`` maps them
    to the support. The diagonal is unused and holds index 0.

    ``reads`` counts how many entries membership computations have read.
    Oracle queries are the only cost the algorithms are charged for; the
    counter is reported alongside for interest.
    """

    def __init__(self, support: Sequence[float], indices: np.ndarray):
        support = np.asarray(support, dtype=float).reshape(-1)
        indices = np.asarray(indices)
        if support.size == 0 or support.size > 256:
            raise ValueError(f"Support grid must have 1..256 points, got {support.size}")
        if np.any(np.diff(support) <= 0):
            raise ValueError("Support grid must be strictly increasing")
        if indices.ndim != 2 or indices.shape[0] != indices.shape[1]:
            raise ValueError(f"Side information must be a square matrix, got shape {indices.shape}")
        if indices.size and (indices.min() < 0 or indices.max() >= support.size):
            raise ValueError("Side information entries must index the support grid")
        indices = indices.astype(np.uint8)
        np.fill_diagonal(indices, 0)
        if not np.array_equal(indices, indices.T):
            raise ValueError("Side information matrix must be symmetric")
        indices.setflags(write=False)
        support.setflags(write=False)
        self._support = support
        self._indices = indices
        self._values = support[indices]
        self._values.setflags(write=False)
        self.reads = 0

    @property
    def n(self) -> int:
        return int(self._indices.shape[0])

    @property
    def support(self) -> np.ndarray:
        return self._support

    @property
    def q(self) -> int:
        return int(self._support.size)

    @property
    def indices(self) -> np.ndarray:
        """Read-only matrix of grid indices."""
        return self._indices

    @property
    def values(self) -> np.ndarray:
        """Read-only matrix of similarity values."""
        return self._values

    def value(self, u: int, v: int) -> float:
        if u == v:
            raise ValueError(f"Side information is undefined on the diagonal (vertex {u})")
        return float(self._values[u, v])

    def count_reads(self, entries: int) -> None:
        self.reads += int(entries)

    @classmethod
    def from_values(cls, support: Sequence[float], values: np.ndarray) -> "SideInfoMatrix":
        """
        Build from a matrix of similarity values on ``support``.

        Raises:
            ValueError: If an off-diagonal value is not a grid point
        """
        support = np.asarray(support, dtype=float)
        values = np.asarray(values, dtype=float)
        idx = np.searchsorted(support, values)
        idx = np.clip(idx, 0, support.size - 1)
        off = ~np.eye(values.shape[0], dtype=bool)
        if not np.allclose(support[idx][off], values[off]):
            raise ValueError("Side information values must lie on the support grid")
        return cls(support, np.where(off, idx, 0))

    def to_bytes(self) -> bytes:
        """JSON header line followed by the row-major lower triangle of grid indices."""
        header = {"n": self.n, "support": self._support.tolist(), "format": BIN_FORMAT}
        rows, cols = np.tril_indices(self.n, k=-1)
        return (json.dumps(header) + "\n").encode("utf-8") + self._indices[rows, cols].tobytes()

    @classmethod
    def from_bytes(cls, data: bytes) -> "SideInfoMatrix":
        """
        Raises:
            ValueError: If the header or the payload length is invalid
        """
        head, sep, payload = data.partition(b"\n")
        if not sep:
            raise ValueError("Side information file has no header line")
        try:
            header = json.loads(head.decode("utf-8"))
            n = int(header["n"])
            support = header["support"]
        except (KeyError, ValueError, UnicodeDecodeError) as e:
            raise ValueError(f"Invalid side information header: {e}") from e
        if header.get("format", BIN_FORMAT) != BIN_FORMAT:
            raise ValueError(f"Unsupported side information format '{header['format']}'")
        expected = n * (n - 1) // 2
        if len(payload) != expected:
            raise ValueError(
                f"Side information payload has {len(payload)} bytes, expected {expected} for n={n}"
            )
        indices = np.zeros((n, n), dtype=np.uint8)
        rows, cols = np.tril_indices(n, k=-1)
        tri = np.frombuffer(payload, dtype=np.uint8)
        indices[rows, cols] = tri
        indices[cols, rows] = tri
        return cls(support, indices)

    def save(self, path: Union[str, Path]) -> None:
        Path(path).write_bytes(self.to_bytes())
        logger.info("Wrote side information for n=%d to %s", self.n, path)

    @classmethod
    def load(cls, path: Union[str, Path]) -> "SideInfoMatrix":
        return cls.from_bytes(Path(path).read_bytes())

    def save_csv(self, path: Union[str, Path]) -> None:
        """Write the value matrix as CSV, diagonal left empty, for inspection."""
        with open(path, "w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle)
            for u in range(self.n):
                writer.writerow(
                    "" if u == v else f"{self._values[u, v]:g}" for v in range(self.n)
                )

    def __repr__(self) -> str:
        return f"SideInfoMatrix(n={self.n}, q={self.q})"
