"""Closed-form performance model for the FDDI timed-token ring.

Under heavy load the ring's usable bandwidth and worst-case token wait are
simple functions of three quantities: the number of active MACs, the target
token rotation time (TTRT), and the ring latency (one idle token
circulation). This module implements those formulas, the frame-quantized
refinement for asynchronous overflow, and the standard's legality rules for
choosing a TTRT. Everything here is pure arithmetic; there is no simulation.

Durations cross the API in milliseconds. Internally they are converted to
microseconds so that the microsecond-scale station delay never mixes units
with millisecond-scale TTRT values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

# Medium and MAC constants (100 Mbps line rate).
PROPAGATION_US_PER_KM = 5.085
STATION_DELAY_US = 1.0
LINE_RATE_MBPS = 100.0
TOKEN_TIME_MS = 0.00088  # 11-byte token, preamble included
MAX_FRAME_BYTES = 4500
MAX_FRAME_TIME_MS = 0.360
MAX_RING_LATENCY_MS = 1.773  # maximum-size ring per the standard
MAX_MAC_COUNT = 1000

# TTRT legality window. T_MAX_COUNTER_MS is the alternate cap used by
# stations that derive the timer from the symbol clock with a 22-bit counter.
T_MIN_MS = 4.0
T_MAX_MS = 165.0
T_MAX_COUNTER_MS = 167.77216

_MS_TO_US = 1000.0

# Relative snap width when quantizing the holding budget into whole frames:
# ratios within this distance of an integer are treated as exact, so budgets
# that are a whole number of frames do not pick up a spurious extra frame
# from float rounding.
_FRAME_SNAP_REL = 1e-9


class RingSaturatedError(ValueError):
    """TTRT does not exceed the ring latency: the token never arrives with
    budget to spend and the configuration has no usable capacity."""


@dataclass(frozen=True)
class RingParameters:
    """Inputs of the heavy-load model.

    n_active counts MACs that are transmitting or waiting to transmit;
    frame_time_ms is only needed by the overflow model.
    """

    n_active: int
    ttrt_ms: float
    ring_latency_ms: float
    frame_time_ms: float | None = None

    def __post_init__(self) -> None:
        if self.n_active < 1:
            raise ValueError(f"n_active must be >= 1, got {self.n_active}")
        if self.ttrt_ms <= 0:
            raise ValueError(f"ttrt_ms must be > 0, got {self.ttrt_ms}")
        if self.ring_latency_ms < 0:
            raise ValueError(f"ring_latency_ms must be >= 0, got {self.ring_latency_ms}")
        if self.frame_time_ms is not None and self.frame_time_ms <= 0:
            raise ValueError(f"frame_time_ms must be > 0, got {self.frame_time_ms}")


@dataclass(frozen=True)
class PhysicalRing:
    """Physical description of a ring: fiber length plus repeating MACs.

    mac_count is the number of MACs in the logical ring (a dual-attachment
    station may contribute two).
    """

    fiber_km: float
    mac_count: int
    propagation_us_per_km: float = PROPAGATION_US_PER_KM
    station_delay_us: float = STATION_DELAY_US

    def __post_init__(self) -> None:
        if self.fiber_km < 0:
            raise ValueError(f"fiber_km must be >= 0, got {self.fiber_km}")
        if not 0 <= self.mac_count <= MAX_MAC_COUNT:
            raise ValueError(
                f"mac_count must be in [0, {MAX_MAC_COUNT}], got {self.mac_count}"
            )
        if self.propagation_us_per_km <= 0 or self.station_delay_us <= 0:
            raise ValueError("delay constants must be > 0")


@dataclass(frozen=True)
class AnalyticalResult:
    """Heavy-load prediction: usable-bandwidth fraction and the worst-case
    wait for a usable token. frames_per_opportunity is set only by the
    overflow model."""

    efficiency: float
    max_access_delay_ms: float
    frames_per_opportunity: int | None = None


def ring_latency(ring: PhysicalRing) -> float:
    """Idle-token circulation time in ms: fiber propagation plus the summed
    per-MAC repeat delays."""
    us = ring.fiber_km * ring.propagation_us_per_km + ring.mac_count * ring.station_delay_us
    return us / _MS_TO_US


def _usable_budget_us(p: RingParameters) -> float:
    """Per-rotation transmission budget in us; raises when latency eats it."""
    t_us = p.ttrt_ms * _MS_TO_US
    d_us = p.ring_latency_ms * _MS_TO_US
    if t_us <= d_us:
        raise RingSaturatedError(
            f"TTRT {p.ttrt_ms} ms does not exceed ring latency {p.ring_latency_ms} ms"
        )
    return t_us - d_us


def efficiency(p: RingParameters) -> float:
    """Usable bandwidth as a fraction of the line rate under heavy load.

    Raises RingSaturatedError when ttrt <= ring_latency; a clamped zero
    would hide an unusable configuration from parameter sweeps.
    """
    budget_us = _usable_budget_us(p)
    t_us = p.ttrt_ms * _MS_TO_US
    d_us = p.ring_latency_ms * _MS_TO_US
    return p.n_active * budget_us / (p.n_active * t_us + d_us)


def max_access_delay(p: RingParameters) -> float:
    """Worst-case wait for a usable token in ms. With a single active
    station this is twice the ring latency: every alternate token it
    receives is unusable."""
    t_us = p.ttrt_ms * _MS_TO_US
    d_us = p.ring_latency_ms * _MS_TO_US
    return ((p.n_active - 1) * t_us + 2.0 * d_us) / _MS_TO_US


def basic_model(p: RingParameters) -> AnalyticalResult:
    """Efficiency and max access delay with the holding budget treated as
    exactly spendable (no frame quantization)."""
    return AnalyticalResult(efficiency(p), max_access_delay(p))


def single_station_efficiency(ttrt_ms: float, ring_latency_ms: float) -> float:
    """Efficiency with one active station: (T - D)/(T + D)."""
    return efficiency(RingParameters(1, ttrt_ms, ring_latency_ms))


def asymptotic_efficiency(ttrt_ms: float, ring_latency_ms: float) -> float:
    """Efficiency limit for many active stations: 1 - D/T.

    Handy for back-of-the-envelope checks; every finite station count falls
    below this value when the ring latency is nonzero.
    """
    if ttrt_ms <= 0:
        raise ValueError(f"ttrt_ms must be > 0, got {ttrt_ms}")
    if ring_latency_ms < 0:
        raise ValueError(f"ring_latency_ms must be >= 0, got {ring_latency_ms}")
    return 1.0 - ring_latency_ms / ttrt_ms


def frames_per_opportunity(p: RingParameters) -> int:
    """Whole frames a saturated station sends per usable token: the holding
    budget rounded up to the next frame boundary."""
    if p.frame_time_ms is None:
        raise ValueError("frame_time_ms is required")
    budget_us = _usable_budget_us(p)
    frame_us = p.frame_time_ms * _MS_TO_US
    ratio = budget_us / frame_us
    nearest = round(ratio)
    if nearest >= 1 and abs(ratio - nearest) <= _FRAME_SNAP_REL * nearest:
        return int(nearest)
    return max(1, math.ceil(ratio))


def overflow_model(p: RingParameters) -> AnalyticalResult:
    """Heavy-load prediction with asynchronous overflow: the frame in
    progress when the holding budget expires is completed, so each
    opportunity carries k whole frames where k*F is the budget rounded up
    to a frame boundary.

    When k*F lands exactly on the budget this reduces to basic_model.
    """
    k = frames_per_opportunity(p)
    d_us = p.ring_latency_ms * _MS_TO_US
    kf_us = k * p.frame_time_ms * _MS_TO_US
    n = p.n_active
    eff = n * kf_us / (n * (kf_us + d_us) + d_us)
    delay_us = (n - 1) * (kf_us + d_us) + 2.0 * d_us
    return AnalyticalResult(eff, delay_us / _MS_TO_US, k)


@dataclass(frozen=True)
class TtrtValidation:
    """Outcome of checking a requested TTRT against the standard's rules.

    Violations are data, not exceptions: a sweep probing illegal values
    needs to see which rule failed row by row. Rule numbering:

      rule 2 - TTRT must cover ring latency + token time + one maximum-size
               frame + the synchronous allocation;
      rule 3 - TTRT must not be below T_min (4 ms);
      rule 4 - TTRT must not exceed T_max (165 ms by default).

    advisory_ttrt_ms carries the rule-1 guideline when a service-interval
    requirement was supplied: request half the required interval, because a
    rotation may take up to twice the target.
    """

    requested_ttrt_ms: float
    ring_latency_ms: float
    sync_allocation_ms: float
    max_frame_time_ms: float
    t_max_ms: float
    min_legal_ttrt_ms: float
    violated_rules: tuple[int, ...]
    messages: tuple[str, ...] = field(default=())
    advisory_ttrt_ms: float | None = None

    @property
    def ok(self) -> bool:
        return not self.violated_rules


def validate_ttrt(
    requested_ttrt_ms: float,
    ring: PhysicalRing | float,
    sync_allocation_ms: float = 0.0,
    max_frame_time_ms: float = MAX_FRAME_TIME_MS,
    *,
    service_interval_ms: float | None = None,
    t_max_ms: float = T_MAX_MS,
    token_time_ms: float = TOKEN_TIME_MS,
) -> TtrtValidation:
    """Check a requested TTRT against rules 2-4 and report the rule-1
    advisory.

    `ring` is either a PhysicalRing or a precomputed ring latency in ms
    (pass MAX_RING_LATENCY_MS to evaluate against the largest legal ring).
    """
    latency_ms = ring_latency(ring) if isinstance(ring, PhysicalRing) else float(ring)
    for name, value in (
        ("requested_ttrt_ms", requested_ttrt_ms),
        ("ring latency", latency_ms),
        ("sync_allocation_ms", sync_allocation_ms),
        ("max_frame_time_ms", max_frame_time_ms),
    ):
        if value < 0:
            raise ValueError(f"{name} must be >= 0, got {value}")
    if not T_MAX_MS <= t_max_ms <= T_MAX_COUNTER_MS:
        raise ValueError(
            f"t_max_ms must lie in [{T_MAX_MS}, {T_MAX_COUNTER_MS}], got {t_max_ms}"
        )

    floor_us = (latency_ms + token_time_ms + max_frame_time_ms + sync_allocation_ms) * _MS_TO_US
    min_legal_ms = floor_us / _MS_TO_US

    violations: list[int] = []
    messages: list[str] = []
    if requested_ttrt_ms < min_legal_ms:
        violations.append(2)
        messages.append(
            f"rule 2: TTRT {requested_ttrt_ms:g} ms leaves no room for one "
            f"maximum-size frame; minimum is {min_legal_ms:.6g} ms"
        )
    if requested_ttrt_ms < T_MIN_MS:
        violations.append(3)
        messages.append(
            f"rule 3: TTRT {requested_ttrt_ms:g} ms is below T_min = {T_MIN_MS:g} ms"
        )
    if requested_ttrt_ms > t_max_ms:
        violations.append(4)
        messages.append(
            f"rule 4: TTRT {requested_ttrt_ms:g} ms exceeds T_max = {t_max_ms:g} ms"
        )

    advisory = None
    if service_interval_ms is not None:
        if service_interval_ms <= 0:
            raise ValueError(f"service_interval_ms must be > 0, got {service_interval_ms}")
        advisory = service_interval_ms / 2.0
        if requested_ttrt_ms > advisory:
            messages.append(
                f"rule 1 advisory: a {service_interval_ms:g} ms service interval "
                f"calls for requesting TTRT = {advisory:g} ms"
            )

    return TtrtValidation(
        requested_ttrt_ms=requested_ttrt_ms,
        ring_latency_ms=latency_ms,
        sync_allocation_ms=sync_allocation_ms,
        max_frame_time_ms=max_frame_time_ms,
        t_max_ms=t_max_ms,
        min_legal_ttrt_ms=min_legal_ms,
        violated_rules=tuple(violations),
        messages=tuple(messages),
        advisory_ttrt_ms=advisory,
    )


def frame_time_ms(frame_bytes: int) -> float:
    """On-wire time of a frame at the 100 Mbps line rate."""
    if frame_bytes <= 0:
        raise ValueError(f"frame_bytes must be > 0, got {frame_bytes}")
    return frame_bytes * 8 / (LINE_RATE_MBPS * 1000.0)
