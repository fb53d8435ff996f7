"""Discrete-event simulator of the timed-token ring MAC.

A single token circulates a fixed ring of stations. On each token arrival a
station updates its rotation clock (time since the token last arrived),
computes its holding budget as TTRT minus that rotation time, transmits
queued frames back to back while the budget lasts, and forwards the token.
With asynchronous overflow enabled (the default) the frame in progress when
the budget expires is completed; with it disabled, a frame is started only
if it fits in the remaining budget.

Time is integer nanoseconds throughout, so runs are bit-for-bit
reproducible across platforms and the busy/overhead/idle time accounting
closes exactly. At 100 Mbps one byte is exactly 80 ns on the wire.

Stations without an attached traffic source can never transmit; the event
loop therefore folds their repeat delays into a single hop to the next
sourced station. The timing is arithmetically identical to visiting every
station, only the event count shrinks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from collections import deque
from heapq import heappush, heappop

from .analytical import PROPAGATION_US_PER_KM, STATION_DELAY_US, T_MAX_COUNTER_MS, T_MIN_MS
from .workload import SaturatedFeed

NS_PER_US = 1_000
NS_PER_MS = 1_000_000
NS_PER_BYTE = 80  # 8 bits at 100 Mbps

# Event kinds, dispatched in (timestamp, sequence) order.
TOKEN_ARRIVAL = 0
TRANSMISSION_COMPLETE = 1
FRAME_ARRIVAL = 2
MEASUREMENT_BOUNDARY = 3


class SimulationError(RuntimeError):
    """Internal inconsistency: the modeled protocol cannot reach this state."""


class InvariantViolation(SimulationError):
    """A protocol invariant (token conservation, rotation bound, exact time
    accounting) failed during a run."""


@dataclass(frozen=True)
class StationConfig:
    """Per-station placeholder in ring order; the protocol itself is
    parameterized ring-wide."""

    label: str = ""


@dataclass(frozen=True)
class RingConfig:
    """Ring layout and MAC parameters.

    segment_delays_us[i] is the propagation delay of the hop leaving
    station i (the last entry wraps back to station 0). token_time_us is
    charged at every hop; set it to 0 to compare against the closed-form
    model, which ignores token transmission time. allow_any_ttrt bypasses
    the T_min/T_max legality check for sweeps that probe the region near
    the ring latency.
    """

    stations: tuple[StationConfig, ...]
    segment_delays_us: tuple[float, ...]
    ttrt_ms: float
    station_delay_us: float = STATION_DELAY_US
    token_time_us: float = 0.88
    async_overflow: bool = True
    allow_any_ttrt: bool = False
    release_after_stripping: bool = False

    def __post_init__(self) -> None:
        n = len(self.stations)
        if n < 1:
            raise ValueError("a ring needs at least one station")
        if len(self.segment_delays_us) != n:
            raise ValueError(
                f"{n} stations need {n} segment delays, got {len(self.segment_delays_us)}"
            )
        if any(d < 0 for d in self.segment_delays_us):
            raise ValueError("segment delays must be >= 0")
        if self.station_delay_us < 0 or self.token_time_us < 0:
            raise ValueError("station_delay_us and token_time_us must be >= 0")
        if self.ttrt_ms <= 0:
            raise ValueError(f"ttrt_ms must be > 0, got {self.ttrt_ms}")
        if not self.allow_any_ttrt and not T_MIN_MS <= self.ttrt_ms <= T_MAX_COUNTER_MS:
            raise ValueError(
                f"ttrt_ms {self.ttrt_ms} outside [{T_MIN_MS}, {T_MAX_COUNTER_MS}]; "
                "set allow_any_ttrt=True to probe illegal values"
            )

    @classmethod
    def uniform(
        cls,
        n_stations: int,
        fiber_km: float,
        ttrt_ms: float,
        *,
        propagation_us_per_km: float = PROPAGATION_US_PER_KM,
        station_delay_us: float = STATION_DELAY_US,
        token_time_us: float = 0.88,
        async_overflow: bool = True,
        allow_any_ttrt: bool = False,
        release_after_stripping: bool = False,
    ) -> "RingConfig":
        """Evenly spaced stations on the given fiber length.

        The split is done in whole nanoseconds with the remainder spread
        over the first segments, so the total propagation delay is exact.
        """
        if n_stations < 1:
            raise ValueError("n_stations must be >= 1")
        if fiber_km < 0:
            raise ValueError("fiber_km must be >= 0")
        total_ns = int(round(fiber_km * propagation_us_per_km * NS_PER_US))
        base, extra = divmod(total_ns, n_stations)
        seg_us = tuple(
            (base + (1 if i < extra else 0)) / NS_PER_US for i in range(n_stations)
        )
        return cls(
            stations=tuple(StationConfig() for _ in range(n_stations)),
            segment_delays_us=seg_us,
            ttrt_ms=ttrt_ms,
            station_delay_us=station_delay_us,
            token_time_us=token_time_us,
            async_overflow=async_overflow,
            allow_any_ttrt=allow_any_ttrt,
            release_after_stripping=release_after_stripping,
        )

    @property
    def n_stations(self) -> int:
        return len(self.stations)

    @property
    def ring_latency_ms(self) -> float:
        """Propagation plus summed repeat delays (token time excluded)."""
        us = sum(self.segment_delays_us) + self.n_stations * self.station_delay_us
        return us / 1000.0


@dataclass(frozen=True)
class RunSnapshot:
    """Cumulative counters at the measurement boundary."""

    at_ns: int
    completed_bits: int
    busy_ns: int
    station_bits: tuple[int, ...]


@dataclass
class RunResult:
    """Raw samples and exact time accounting from one run.

    completed bits are attributed to the completion instant; busy/overhead/
    idle nanoseconds partition the simulated time exactly. Access-delay
    samples are (episode start, token capture) pairs; one episode opens per
    empty-to-nonempty queue transition or token release with work left, and
    closes at the next usable capture.
    """

    config: RingConfig
    duration_ns: int
    seed: int
    completed_bits: int
    completed_frames: int
    station_bits: tuple[int, ...]
    response_samples: list[tuple[int, int]]
    access_samples: list[tuple[int, int]]
    rotation_count: int
    max_rotation_ns: int
    trt_violations: int
    trt_bound_enforced: bool
    busy_ns: int
    overhead_ns: int
    idle_ns: int
    boundary: RunSnapshot
    sourced_stations: tuple[int, ...] = field(default=())

    @property
    def max_rotation_ms(self) -> float:
        return self.max_rotation_ns / NS_PER_MS


def _ns_from_us(us: float) -> int:
    return int(round(us * NS_PER_US))


def _ns_from_ms(ms: float) -> int:
    return int(round(ms * NS_PER_MS))


def run(
    config: RingConfig,
    workload=None,
    duration_ms: float = 1000.0,
    seed: int = 0,
    warmup_fraction: float = 0.10,
) -> RunResult:
    """Simulate from t=0 (token injected at station 0, all rotation clocks
    zeroed) to t=duration. Deterministic given (config, workload, seed).

    The rotation-time bound (every rotation < 2 x TTRT) is enforced as a
    hard error whenever the configured TTRT covers the effective ring
    latency plus one maximum-size frame of the attached workload; outside
    that regime violations are only counted.
    """
    n = config.n_stations
    sd_ns = _ns_from_us(config.station_delay_us)
    tt_ns = _ns_from_us(config.token_time_us)
    seg_ns = [_ns_from_us(u) for u in config.segment_delays_us]
    ttrt_ns = _ns_from_ms(config.ttrt_ms)
    duration_ns = _ns_from_ms(duration_ms)
    if duration_ns <= 0:
        raise ValueError(f"duration_ms must be > 0, got {duration_ms}")
    if not 0.0 <= warmup_fraction < 1.0:
        raise ValueError(f"warmup_fraction must be in [0, 1), got {warmup_fraction}")
    overflow = config.async_overflow
    strip_ns = 0
    d_ns = sum(seg_ns) + n * sd_ns
    if config.release_after_stripping:
        strip_ns = d_ns
    hop_ns = [sd_ns + tt_ns + s for s in seg_ns]

    sources = list(workload.bind(n, seed)) if workload is not None else [None] * n
    if len(sources) != n:
        raise ValueError(f"workload bound {len(sources)} stations, ring has {n}")
    sat_bytes = [0] * n
    gens: list[object | None] = [None] * n
    for i, src in enumerate(sources):
        if src is None:
            continue
        if isinstance(src, SaturatedFeed):
            sat_bytes[i] = src.frame_bytes
        else:
            gens[i] = src
    sourced = [i for i in range(n) if sources[i] is not None]
    stops = sourced if sourced else [0]
    has_sat = any(sat_bytes)

    # Fold hops through sourceless stations into one leap per stop.
    next_stop: dict[int, int] = {}
    leap_ns: dict[int, int] = {}
    for idx, st in enumerate(stops):
        nxt = stops[(idx + 1) % len(stops)]
        total = 0
        j = st
        while True:
            total += hop_ns[j]
            j = (j + 1) % n
            if j == nxt:
                break
        next_stop[st] = nxt
        leap_ns[st] = total

    max_frame_ns = (workload.max_frame_bytes if workload is not None else 0) * NS_PER_BYTE
    trt_enforced = ttrt_ns >= d_ns + n * tt_ns + tt_ns + max_frame_ns

    heap: list[tuple[int, int, int, int, object]] = []
    seq = 0

    # Token injection: it appears at station 0 and repeats through
    # sourceless stations until the first stop.
    if 0 in next_stop:
        heappush(heap, (0, seq, TOKEN_ARRIVAL, 0, None))
    else:
        t0, j = 0, 0
        while sources[j] is None:
            t0 += hop_ns[j]
            j += 1
        heappush(heap, (t0, seq, TOKEN_ARRIVAL, j, None))
    seq += 1

    mark_ns = int(duration_ns * warmup_fraction)
    if mark_ns >= duration_ns:
        raise ValueError("warm-up must end before the run does")
    boundary: RunSnapshot | None = None
    if mark_ns > 0:
        heappush(heap, (mark_ns, seq, MEASUREMENT_BOUNDARY, -1, None))
        seq += 1

    for i in range(n):
        g = gens[i]
        if g is None:
            continue
        first = g.next_burst(0)
        if first is not None:
            at_ns, sizes = first
            heappush(heap, (at_ns, seq, FRAME_ARRIVAL, i, sizes))
            seq += 1

    last_arrival = [0] * n
    queues: list[deque] = [deque() for _ in range(n)]
    want_since = [-1] * n
    for i in range(n):
        if sat_bytes[i]:
            want_since[i] = 0  # saturated stations want the token from t=0
    nonempty = 0

    completed_bits = 0
    completed_frames = 0
    station_bits = [0] * n
    response_samples: list[tuple[int, int]] = []
    access_samples: list[tuple[int, int]] = []
    rotation_count = 0
    max_rotation = 0
    trt_violations = 0

    busy_total = 0
    idle_total = 0
    overhead_total = 0
    holding = -1
    hold_start = 0
    hold_tht = 0
    cur_arrival = 0
    cur_size = 0
    cur_synthetic = False
    seg_start = 0
    seg_idle = nonempty == 0 and not has_sat

    while heap and heap[0][0] <= duration_ns:
        t, _, kind, st, payload = heappop(heap)

        if kind == TOKEN_ARRIVAL:
            trt = t - last_arrival[st]
            last_arrival[st] = t
            rotation_count += 1
            if trt > max_rotation:
                max_rotation = trt
            if trt >= 2 * ttrt_ns:
                trt_violations += 1
                if trt_enforced:
                    raise InvariantViolation(
                        f"rotation of {trt} ns at station {st} reached twice the "
                        f"TTRT ({ttrt_ns} ns) despite a rule-2-compliant setup"
                    )
            sb = sat_bytes[st]
            q = queues[st]
            usable = False
            tht = 0
            if sb or q:
                tht = ttrt_ns - trt
                if tht > 0:
                    first_ns = (sb if sb else q[0][1]) * NS_PER_BYTE
                    usable = overflow or first_ns <= tht
            if usable:
                ws = want_since[st]
                access_samples.append((ws if ws >= 0 else t, t))
                want_since[st] = -1
                dt = t - seg_start
                if seg_idle:
                    idle_total += dt
                else:
                    overhead_total += dt
                holding = st
                hold_start = t
                hold_tht = tht
                if sb:
                    cur_arrival, cur_size, cur_synthetic = t, sb, True
                else:
                    cur_arrival, cur_size = q.popleft()
                    cur_synthetic = False
                    if not q:
                        nonempty -= 1
                heappush(
                    heap,
                    (t + cur_size * NS_PER_BYTE, seq, TRANSMISSION_COMPLETE, st, None),
                )
                seq += 1
            else:
                heappush(heap, (t + leap_ns[st], seq, TOKEN_ARRIVAL, next_stop[st], None))
                seq += 1

        elif kind == TRANSMISSION_COMPLETE:
            if holding != st:
                raise InvariantViolation(
                    f"transmission completed at station {st} while station "
                    f"{holding} holds the token"
                )
            completed_bits += cur_size * 8
            station_bits[st] += cur_size * 8
            completed_frames += 1
            if not cur_synthetic:
                response_samples.append((cur_arrival, t))
            sb = sat_bytes[st]
            q = queues[st]
            elapsed = t - hold_start
            next_size = sb if sb else (q[0][1] if q else 0)
            cont = False
            if next_size:
                if overflow:
                    cont = elapsed < hold_tht
                else:
                    cont = elapsed + next_size * NS_PER_BYTE <= hold_tht
            if cont:
                if sb:
                    cur_arrival, cur_size, cur_synthetic = t, sb, True
                else:
                    cur_arrival, cur_size = q.popleft()
                    cur_synthetic = False
                    if not q:
                        nonempty -= 1
                heappush(
                    heap,
                    (t + cur_size * NS_PER_BYTE, seq, TRANSMISSION_COMPLETE, st, None),
                )
                seq += 1
            else:
                busy_total += t - hold_start
                holding = -1
                if sb or q:
                    want_since[st] = t
                seg_start = t
                seg_idle = nonempty == 0 and not has_sat
                heappush(
                    heap,
                    (t + strip_ns + leap_ns[st], seq, TOKEN_ARRIVAL, next_stop[st], None),
                )
                seq += 1

        elif kind == FRAME_ARRIVAL:
            q = queues[st]
            was_empty = not q
            for size in payload:
                q.append((t, size))
            if was_empty and payload:
                nonempty += 1
                if holding != st and want_since[st] < 0:
                    want_since[st] = t
                if holding == -1 and seg_idle:
                    idle_total += t - seg_start
                    seg_start = t
                    seg_idle = False
            nb = gens[st].next_burst(t)
            if nb is not None:
                at_ns, sizes = nb
                heappush(heap, (at_ns, seq, FRAME_ARRIVAL, st, sizes))
                seq += 1

        else:  # MEASUREMENT_BOUNDARY
            busy_now = busy_total + (t - hold_start if holding >= 0 else 0)
            boundary = RunSnapshot(t, completed_bits, busy_now, tuple(station_bits))

    if not heap:
        raise SimulationError(
            "event queue drained before the end of the run: the token was lost"
        )

    if holding >= 0:
        busy_total += duration_ns - hold_start
    else:
        dt = duration_ns - seg_start
        if seg_idle:
            idle_total += dt
        else:
            overhead_total += dt

    if busy_total + idle_total + overhead_total != duration_ns:
        raise InvariantViolation(
            f"time accounting leaked: busy {busy_total} + idle {idle_total} + "
            f"overhead {overhead_total} != duration {duration_ns}"
        )

    if boundary is None:
        boundary = RunSnapshot(0, 0, 0, tuple(0 for _ in range(n)))

    return RunResult(
        config=config,
        duration_ns=duration_ns,
        seed=seed,
        completed_bits=completed_bits,
        completed_frames=completed_frames,
        station_bits=tuple(station_bits),
        response_samples=response_samples,
        access_samples=access_samples,
        rotation_count=rotation_count,
        max_rotation_ns=max_rotation,
        trt_violations=trt_violations,
        trt_bound_enforced=trt_enforced,
        busy_ns=busy_total,
        overhead_ns=overhead_total,
        idle_ns=idle_total,
        boundary=boundary,
        sourced_stations=tuple(stops),
    )
