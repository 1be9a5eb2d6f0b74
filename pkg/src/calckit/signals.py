"""Time-stamped sample records and their CSV serialization.

A SampledSignal is the package-wide carrier for anything sampled over time:
IMU traces, integrated odometry, ODE solutions, and step responses. The CSV
contract is shared repo-wide: header ``t,y0[,y1,...]`` (or caller-supplied
channel names), one row per sample, decimal point ``.``, UTF-8, no thousands
separators.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, DomainError


@dataclass(frozen=True)
class SampledSignal:
    """Strictly increasing timestamps ``t`` paired with samples ``y`` (N x d)."""

    t: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        t = np.atleast_1d(np.asarray(self.t, dtype=float))
        y = np.asarray(self.y, dtype=float)
        if y.ndim == 1:
            y = y[:, None]
        if y.ndim != 2:
            raise DimensionError("samples must be a 1-D or 2-D array")
        if t.ndim != 1 or len(t) != y.shape[0]:
            raise DimensionError(
                f"timestamp count {len(t)} does not match sample count {y.shape[0]}"
            )
        if len(t) < 2:
            raise DomainError("a sampled signal needs at least 2 samples")
        if not np.all(np.isfinite(t)) or not np.all(np.isfinite(y)):
            raise DomainError("timestamps and samples must be finite")
        if np.any(np.diff(t) <= 0):
            raise DomainError("timestamps must be strictly increasing")
        t = t.copy()
        y = y.copy()
        t.setflags(write=False)
        y.setflags(write=False)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "y", y)

    @property
    def dim(self) -> int:
        return self.y.shape[1]

    def __len__(self) -> int:
        return len(self.t)

    def channel(self, i: int) -> np.ndarray:
        """One channel as a flat array; raises DimensionError on a bad index."""
        if not 0 <= i < self.dim:
            raise DimensionError(f"channel {i} out of range for dimension {self.dim}")
        return self.y[:, i]


def write_csv(sig: SampledSignal, path, headers=None) -> None:
    """Write ``t,y0[,y1,...]`` rows. Floats use repr for exact round-trips."""
    if headers is None:
        headers = [f"y{i}" for i in range(sig.dim)]
    if len(headers) != sig.dim:
        raise DimensionError("one header per channel required")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("t," + ",".join(headers) + "\n")
        for k in range(len(sig)):
            row = [repr(float(sig.t[k]))] + [repr(float(v)) for v in sig.y[k]]
            fh.write(",".join(row) + "\n")


def read_csv(path, expected_headers=None) -> SampledSignal:
    """Read the shared CSV format back into a SampledSignal.

    Malformed content raises DomainError naming the offending line number
    (1-based, header included). If ``expected_headers`` is given the header
    row must match ``t,<expected...>`` exactly.
    """
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise DomainError(f"{path}: line 1: empty file")
    header = lines[0].split(",")
    if header[0] != "t" or len(header) < 2:
        raise DomainError(f"{path}: line 1: header must start with 't,' and name channels")
    if expected_headers is not None and header[1:] != list(expected_headers):
        raise DomainError(
            f"{path}: line 1: expected header t,{','.join(expected_headers)}"
            f" but found {lines[0]}"
        )
    width = len(header)
    ts, ys = [], []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != width:
            raise DomainError(f"{path}: line {lineno}: expected {width} fields, got {len(parts)}")
        try:
            vals = [float(p) for p in parts]
        except ValueError:
            raise DomainError(f"{path}: line {lineno}: non-numeric field") from None
        ts.append(vals[0])
        ys.append(vals[1:])
    try:
        return SampledSignal(np.array(ts), np.array(ys))
    except (DomainError, DimensionError) as exc:
        raise DomainError(f"{path}: {exc}") from None
