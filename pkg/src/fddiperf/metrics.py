"""Aggregation of raw simulator samples into the reported metrics.

Three metrics matter: throughput/efficiency (bits completed per second of
measured interval over the 100 Mbps line rate), response time (frame
arrival to end of its transmission), and access delay (wanting the token
to capturing a usable one). The first 10% of simulated time is treated as
warm-up: it absorbs the zeroed rotation clocks and empty queues at t=0.
Frames count toward response statistics only if they arrive after the
boundary; access episodes count only if they open after it; completed bits
are attributed to their completion instant, so the throughput window is
exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import analytical
from .analytical import LINE_RATE_MBPS, RingParameters
from .simcore import NS_PER_MS, RunResult

WARMUP_FRACTION = 0.10

_BOUND_SLACK_NS = 1  # integer-nanosecond comparisons need no real slack


@dataclass(frozen=True)
class SampleStats:
    """Exact statistics over retained samples; percentile by nearest rank."""

    mean_ms: float
    max_ms: float
    count: int
    p95_ms: float | None = None


def _stats(delays_ns: list[int], with_p95: bool) -> SampleStats | None:
    if not delays_ns:
        return None
    count = len(delays_ns)
    mean = sum(delays_ns) / count / NS_PER_MS
    peak = max(delays_ns) / NS_PER_MS
    p95 = None
    if with_p95:
        ranked = sorted(delays_ns)
        p95 = ranked[max(0, math.ceil(0.95 * count) - 1)] / NS_PER_MS
    return SampleStats(mean_ms=mean, max_ms=peak, count=count, p95_ms=p95)


@dataclass(frozen=True)
class MetricsReport:
    """Per-run summary. Statistics are None (absent) when no samples were
    retained, never a misleading zero."""

    throughput_mbps: float
    efficiency: float
    response_time: SampleStats | None
    access_delay: SampleStats | None
    offered_load_mbps: float | None
    measured_interval_ms: float
    warmup_ms: float
    warmup_frames_discarded: int
    warmup_access_discarded: int
    station_throughput_mbps: tuple[float, ...]
    completed_frames: int
    max_rotation_ms: float
    trt_bound_ok: bool
    access_bound_ms: float | None = None
    access_bound_exceeded: bool = False
    seed: int = 0


def access_delay_bound_ms(
    result: RunResult, n_active: int, max_frame_bytes: int
) -> float | None:
    """Worst-case access delay for the run's ring, from the overflow model
    with the effective idle rotation (latency plus per-hop token times)
    standing in for the ring latency. None when that rotation already
    swallows the TTRT."""
    cfg = result.config
    d_eff_ms = cfg.ring_latency_ms + cfg.n_stations * cfg.token_time_us / 1000.0
    if max_frame_bytes <= 0 or n_active < 1:
        return None
    try:
        res = analytical.overflow_model(
            RingParameters(
                n_active=n_active,
                ttrt_ms=cfg.ttrt_ms,
                ring_latency_ms=d_eff_ms,
                frame_time_ms=analytical.frame_time_ms(max_frame_bytes),
            )
        )
    except analytical.RingSaturatedError:
        return None
    return res.max_access_delay_ms


def summarize(
    result: RunResult,
    *,
    offered_load_mbps: float | None = None,
    n_active: int | None = None,
    max_frame_bytes: int | None = None,
) -> MetricsReport:
    """Turn one run's samples into a MetricsReport.

    Pass n_active and max_frame_bytes to have the analytical access-delay
    bound computed and checked against the run's samples.
    """
    b = result.boundary
    interval_ns = result.duration_ns - b.at_ns
    if interval_ns <= 0:
        raise ValueError("measured interval is empty")

    window_bits = result.completed_bits - b.completed_bits
    throughput = window_bits / interval_ns * 1000.0  # bits/ns -> Mbps
    station_tp = tuple(
        (result.station_bits[i] - b.station_bits[i]) / interval_ns * 1000.0
        for i in range(len(result.station_bits))
    )

    responses = [c - a for a, c in result.response_samples if a >= b.at_ns]
    accesses = [cap - start for start, cap in result.access_samples if start >= b.at_ns]

    bound_ms = None
    exceeded = False
    if n_active is not None and max_frame_bytes is not None:
        bound_ms = access_delay_bound_ms(result, n_active, max_frame_bytes)
        if bound_ms is not None and accesses:
            bound_ns = int(round(bound_ms * NS_PER_MS)) + _BOUND_SLACK_NS
            exceeded = max(accesses) > bound_ns

    ttrt_ns = int(round(result.config.ttrt_ms * NS_PER_MS))
    return MetricsReport(
        throughput_mbps=throughput,
        efficiency=throughput / LINE_RATE_MBPS,
        response_time=_stats(responses, with_p95=True),
        access_delay=_stats(accesses, with_p95=False),
        offered_load_mbps=offered_load_mbps,
        measured_interval_ms=interval_ns / NS_PER_MS,
        warmup_ms=b.at_ns / NS_PER_MS,
        warmup_frames_discarded=len(result.response_samples) - len(responses),
        warmup_access_discarded=len(result.access_samples) - len(accesses),
        station_throughput_mbps=station_tp,
        completed_frames=result.completed_frames,
        max_rotation_ms=result.max_rotation_ms,
        trt_bound_ok=result.max_rotation_ns < 2 * ttrt_ns,
        access_bound_ms=bound_ms,
        access_bound_exceeded=exceeded,
        seed=result.seed,
    )
