"""Dead reckoning from accelerometer records, with an optional two-gain
velocity/bias correction.

Velocity comes from running trapezoid integration of acceleration, position
from integrating the velocity estimate. The correction consumes external
velocity measurements (motion capture and the like): at each measurement,
snapped to the nearest trace sample, the innovation e = v_meas - v_hat feeds
a Luenberger-style update

    v_hat <- v_hat + l1 * e        b_hat <- b_hat - l2 * e

applied per axis; between events the accelerometer bias estimate b_hat is
subtracted before integrating. The measurement source, its rate, and the
two-gain form are design choices of this package, not dictated by the data.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, DomainError
from .signals import SampledSignal

# An ImuTrace is a SampledSignal whose channels are acceleration axes
# (1 to 3 of them, fixed across the record).
ImuTrace = SampledSignal

AXIS_NAMES = ("x", "y", "z")


def _check_trace(trace: SampledSignal) -> int:
    if trace.dim not in (1, 2, 3):
        raise DimensionError(f"IMU trace must have 1..3 axes, got {trace.dim}")
    return trace.dim


@dataclass(frozen=True)
class VelMeasurement:
    t: float
    v: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "v", np.atleast_1d(np.asarray(self.v, dtype=float)))


@dataclass(frozen=True)
class FilterGains:
    """l1 corrects velocity (dimensionless per event), l2 leaks the
    innovation into the bias estimate (1/s per event)."""

    l1: float
    l2: float

    def __post_init__(self):
        if not 0.0 <= self.l1 <= 2.0:
            raise DomainError(f"l1 must lie in [0, 2], got {self.l1}")
        if self.l2 < 0.0:
            raise DomainError(f"l2 must be nonnegative, got {self.l2}")


@dataclass(frozen=True)
class Odometry:
    v: SampledSignal
    p: SampledSignal


@dataclass(frozen=True)
class BiasOdometry:
    v: SampledSignal
    p: SampledSignal
    bias_history: SampledSignal
    final_bias: np.ndarray


def dead_reckon(trace: ImuTrace, v0, p0) -> Odometry:
    """Integrate acceleration twice: v = v0 + int a, p = p0 + int v."""
    d = _check_trace(trace)
    v0 = np.atleast_1d(np.asarray(v0, dtype=float))
    p0 = np.atleast_1d(np.asarray(p0, dtype=float))
    if len(v0) != d or len(p0) != d:
        raise DimensionError(f"v0/p0 must have dimension {d}")
    dt = np.diff(trace.t)
    a = trace.y
    v = np.empty_like(a)
    v[0] = v0
    v[1:] = v0 + np.cumsum(0.5 * (a[:-1] + a[1:]) * dt[:, None], axis=0)
    p = np.empty_like(a)
    p[0] = p0
    p[1:] = p0 + np.cumsum(0.5 * (v[:-1] + v[1:]) * dt[:, None], axis=0)
    return Odometry(SampledSignal(trace.t, v), SampledSignal(trace.t, p))


def bias_corrected_odometry(trace: ImuTrace, measurements, gains: FilterGains,
                            v0, p0, b0) -> BiasOdometry:
    """Dead reckoning with bias-compensated acceleration and measurement
    corrections at the nearest trace samples.

    Measurements must be sorted by time and lie inside the trace span.
    """
    d = _check_trace(trace)
    v0 = np.atleast_1d(np.asarray(v0, dtype=float))
    p0 = np.atleast_1d(np.asarray(p0, dtype=float))
    b0 = np.atleast_1d(np.asarray(b0, dtype=float))
    if not len(v0) == len(p0) == len(b0) == d:
        raise DimensionError(f"v0/p0/b0 must have dimension {d}")

    events: dict[int, list[np.ndarray]] = {}
    last_t = -np.inf
    for m in measurements:
        if m.t < last_t:
            raise DomainError("measurements must be sorted by time")
        last_t = m.t
        if m.t < trace.t[0] or m.t > trace.t[-1]:
            raise DomainError(f"measurement at t = {m.t} lies outside the trace span")
        if len(m.v) != d:
            raise DimensionError(f"measurement dimension {len(m.v)} != trace dimension {d}")
        k = int(np.argmin(np.abs(trace.t - m.t)))   # snap to nearest sample
        events.setdefault(k, []).append(m.v)

    n = len(trace)
    a = trace.y
    v = np.empty((n, d))
    p = np.empty((n, d))
    bias = np.empty((n, d))
    v_hat, p_hat, b_hat = v0.copy(), p0.copy(), b0.copy()
    for k in range(n):
        for v_meas in events.get(k, ()):
            innovation = v_meas - v_hat
            v_hat = v_hat + gains.l1 * innovation
            b_hat = b_hat - gains.l2 * innovation
        v[k], p[k], bias[k] = v_hat, p_hat, b_hat
        if k + 1 < n:
            dt = trace.t[k + 1] - trace.t[k]
            v_next = v_hat + 0.5 * ((a[k] - b_hat) + (a[k + 1] - b_hat)) * dt
            p_hat = p_hat + 0.5 * (v_hat + v_next) * dt
            v_hat = v_next
    return BiasOdometry(SampledSignal(trace.t, v), SampledSignal(trace.t, p),
                        SampledSignal(trace.t, bias), bias[-1].copy())


@dataclass(frozen=True)
class AccelProfile:
    """Ground-truth acceleration profile for the synthetic trace generator."""

    kind: str                 # rest | constant | sinusoid
    alpha: float = 0.0        # constant acceleration level
    amplitude: float = 0.0    # sinusoid amplitude
    omega: float = 0.0        # sinusoid angular rate

    @classmethod
    def rest(cls) -> "AccelProfile":
        return cls("rest")

    @classmethod
    def constant(cls, alpha: float) -> "AccelProfile":
        return cls("constant", alpha=alpha)

    @classmethod
    def sinusoid(cls, amplitude: float, omega: float) -> "AccelProfile":
        if omega <= 0:
            raise DomainError("sinusoid rate must be positive")
        return cls("sinusoid", amplitude=amplitude, omega=omega)

    def truth(self, t: np.ndarray):
        """Analytic (a, v, p) starting from rest at the origin."""
        if self.kind == "rest":
            zero = np.zeros_like(t)
            return zero, zero.copy(), zero.copy()
        if self.kind == "constant":
            a = np.full_like(t, self.alpha)
            return a, self.alpha * t, 0.5 * self.alpha * t ** 2
        if self.kind == "sinusoid":
            amp, om = self.amplitude, self.omega
            a = amp * np.sin(om * t)
            v = amp / om * (1.0 - np.cos(om * t))
            p = amp / om * t - amp / om ** 2 * np.sin(om * t)
            return a, v, p
        raise DomainError(f"unknown profile kind {self.kind!r}")


@dataclass(frozen=True)
class SyntheticTrace:
    trace: ImuTrace
    truth_v: SampledSignal
    truth_p: SampledSignal


def synth_imu(profile: AccelProfile, bias, noise_std: float, dt: float, T: float,
              seed: int = 0) -> SyntheticTrace:
    """Deterministic synthetic IMU record: measured a = true a + bias + noise.

    The same profile drives every axis; truth signals are integrated
    analytically. Identical seeds reproduce bit-identical traces.
    """
    if dt <= 0:
        raise DomainError("dt must be positive")
    if T < dt:
        raise DomainError("record length must cover at least one step")
    bias = np.atleast_1d(np.asarray(bias, dtype=float))
    d = len(bias)
    if d not in (1, 2, 3):
        raise DimensionError("bias dimension fixes the axis count and must be 1..3")
    n = int(round(T / dt))
    t = dt * np.arange(n + 1)
    a_true, v_true, p_true = profile.truth(t)
    rng = np.random.default_rng(seed)
    noise = rng.standard_normal((n + 1, d)) * noise_std if noise_std > 0 else np.zeros((n + 1, d))
    measured = a_true[:, None] + bias[None, :] + noise
    return SyntheticTrace(
        SampledSignal(t, measured),
        SampledSignal(t, np.tile(v_true[:, None], (1, d))),
        SampledSignal(t, np.tile(p_true[:, None], (1, d))),
    )


def _axis_headers(prefix: str, d: int) -> list[str]:
    return [prefix + AXIS_NAMES[i] for i in range(d)]


def read_imu_csv(path) -> ImuTrace:
    """Read a trace with header ``t,ax[,ay[,az]]``."""
    from .signals import read_csv

    sig = read_csv(path)
    d = sig.dim
    if d not in (1, 2, 3):
        raise DomainError(f"{path}: IMU trace must have 1..3 axes")
    expected = _axis_headers("a", d)
    return read_csv(path, expected_headers=expected)


def read_measurements_csv(path) -> list[VelMeasurement]:
    """Read measurements with header ``t,vx[,vy[,vz]]``."""
    from .signals import read_csv

    sig = read_csv(path)
    d = sig.dim
    if d not in (1, 2, 3):
        raise DomainError(f"{path}: measurements must have 1..3 axes")
    sig = read_csv(path, expected_headers=_axis_headers("v", d))
    return [VelMeasurement(float(sig.t[k]), sig.y[k].copy()) for k in range(len(sig))]


def write_imu_csv(trace: ImuTrace, path) -> None:
    from .signals import write_csv

    write_csv(trace, path, headers=_axis_headers("a", _check_trace(trace)))


def write_measurements_csv(measurements, path) -> None:
    """Measurements CSV requires >= 2 rows, matching the signal contract."""
    from .signals import write_csv

    ts = np.array([m.t for m in measurements])
    vs = np.array([m.v for m in measurements])
    write_csv(SampledSignal(ts, vs), path, headers=_axis_headers("v", vs.shape[1]))


def write_odometry_csv(result, path) -> None:
    """Write ``t,vx,..,px,..[,bx,..]`` for Odometry or BiasOdometry records."""
    d = result.v.dim
    columns = [result.v.y, result.p.y]
    headers = _axis_headers("v", d) + _axis_headers("p", d)
    if isinstance(result, BiasOdometry):
        columns.append(result.bias_history.y)
        headers += _axis_headers("b", d)
    from .signals import write_csv

    write_csv(SampledSignal(result.v.t, np.hstack(columns)), path, headers=headers)
