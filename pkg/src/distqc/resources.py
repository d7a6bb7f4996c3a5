"""Operational cost of purified pairs and total computation overhead.

The expected cost K of delivering one purified pair to a teleported gate
follows from the all-or-nothing restart policy: every postselection failure
discards the whole protocol state, so K equals the cost of one full attempt
divided by the attempt's net success probability.  A Monte Carlo simulator of
the restart process serves as an independent cross-check, and an optimistic
per-round retry model is available for comparison (a failed round physically
destroys the pumped state, so that model is a lower bound only).

The default cost model counts consumed base pairs, i.e. the quantum
communication per gate; local gate and measurement counting can be switched
on through :class:`CostModel`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .pauli import ChannelParams, NoiseParams, depolarizing_noise
from .purify import (
    OpsTally,
    PumpSchedule,
    SuccessProbabilityError,
    double_pump_ops,
    pump_double,
    pump_single,
    round_success_chain,
    single_pump_ops,
)

#: physical two-qubit gates consumed by one logical pi/8 gate at one third of
#: the topological threshold, read from the overhead scaling of the
#: measurement-based topological scheme (Raussendorf, Harrington and Goyal,
#: New J. Phys. 9, 199 (2007), Fig. 11) for a 3e11-gate computation
T_PER_PI8_AT_THIRD_THRESHOLD = 2e10

#: teleported-gate local cost on top of the purified pair it consumes
TTG_TWOQ_GATES = 2
TTG_MEASUREMENTS = 2


@dataclass(frozen=True)
class CostModel:
    """What the attempt cost counts and how failures are retried.

    restart "protocol" is the all-or-nothing policy (any failure restarts the
    whole attempt, whose full cost is provisioned up front); "round" retries
    only the failed round and is an optimistic lower bound, excluded from the
    headline numbers.
    """

    count_base_pairs: bool = True
    count_local_ops: bool = False
    weight_base_pair: float = 1.0
    weight_gate: float = 1.0
    weight_measurement: float = 1.0
    restart: str = "protocol"

    def __post_init__(self):
        if self.restart not in ("protocol", "round"):
            raise ValueError(f"unknown restart policy {self.restart!r}")
        for name in ("weight_base_pair", "weight_gate", "weight_measurement"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")
        if not (self.count_base_pairs or self.count_local_ops):
            raise ValueError("cost model counts nothing")

    def attempt_cost(self, tally: OpsTally, include_gate_ops: bool = True) -> float:
        cost = 0.0
        if self.count_base_pairs:
            cost += self.weight_base_pair * tally.base_pairs
        if self.count_local_ops:
            gates = tally.twoq_gates + (TTG_TWOQ_GATES if include_gate_ops else 0)
            meas = tally.measurements + (TTG_MEASUREMENTS if include_gate_ops else 0)
            cost += self.weight_gate * gates + self.weight_measurement * meas
        return cost


@dataclass(frozen=True)
class OverheadReport:
    K: float
    T: float
    Omega: float
    R: float


@dataclass(frozen=True)
class ShorCount:
    toffoli: float
    pi8: float


def _attempt_tally(schedule: PumpSchedule) -> OpsTally:
    if schedule.scheme == "double":
        return double_pump_ops(*schedule.counts)
    return single_pump_ops(*schedule.counts)


def _net_success(schedule: PumpSchedule, channel: ChannelParams, noise: NoiseParams) -> float:
    if schedule.scheme == "double":
        n1, m1, m2 = schedule.counts
        probs = pump_double(channel, schedule, noise).success_probs
        return probs["r_lv1"] * probs["p_lv1"] ** m2 * probs["r_lv2"]
    n1, n2 = schedule.counts
    probs = pump_single(channel, schedule, noise).success_probs
    return probs["p_lv1"] ** (1 + n2) * probs["p_lv2"]


def expected_cost(
    schedule: PumpSchedule,
    channel: ChannelParams,
    noise: NoiseParams,
    model: CostModel | None = None,
) -> float:
    """Expected cost K of one delivered purified pair, teleported-gate
    operations included when local operations are counted."""
    model = model or CostModel()
    tally = _attempt_tally(schedule)
    if model.restart == "round":
        return _expected_cost_round_retry(schedule, channel, noise, model)
    p_net = _net_success(schedule, channel, noise)
    if p_net <= 0.0:
        raise SuccessProbabilityError("net success probability underflowed to 0")
    return model.attempt_cost(tally) / p_net


def _round_costs(schedule: PumpSchedule) -> list[OpsTally]:
    """Marginal cost of each postselected round, in protocol order."""
    if schedule.scheme == "double":
        n1, m1, m2 = schedule.counts
        d1 = OpsTally(2, 4, 4)
        anc = OpsTally(1, 2, 2)
        d2 = OpsTally(1, 4, 4)
        return [d1] * m1 + ([anc] * n1 + [d2]) * m2
    n1, n2 = schedule.counts
    s = OpsTally(1, 2, 2)
    return [s] * n1 + ([s] * n1 + [s]) * n2


def _expected_cost_round_retry(schedule, channel, noise, model) -> float:
    chain = round_success_chain(channel, schedule, noise)
    costs = _round_costs(schedule)
    assert len(chain) == len(costs)
    # fixed setup cost: the initial pairs of the target and ancilla chains
    tally = _attempt_tally(schedule)
    fixed_pairs = tally.base_pairs - sum(c.base_pairs for c in costs)
    total = model.attempt_cost(OpsTally(fixed_pairs, 0, 0))
    for s, c in zip(chain, costs):
        total += model.attempt_cost(c, include_gate_ops=False) / s
    if model.count_local_ops:
        total += model.weight_gate * TTG_TWOQ_GATES + model.weight_measurement * TTG_MEASUREMENTS
    return total


def simulate_expected_cost(
    schedule: PumpSchedule,
    channel: ChannelParams,
    noise: NoiseParams,
    model: CostModel | None = None,
    trials: int = 10**6,
    seed: int = 0,
) -> float:
    """Monte Carlo estimate of K under the all-or-nothing restart policy.

    Each attempt draws one Bernoulli outcome per postselected round (with the
    conditional round success probabilities of the evolving protocol) and is
    restarted on any failure; every started attempt pays the full attempt
    cost.  Averages the realised cost over ``trials`` delivered pairs.
    """
    model = model or CostModel()
    if model.restart != "protocol":
        raise ValueError("the Monte Carlo oracle simulates the all-or-nothing policy")
    chain = np.array(round_success_chain(channel, schedule, noise))
    cost = model.attempt_cost(_attempt_tally(schedule))
    rng = np.random.default_rng(seed)
    alive = trials
    attempts = 0
    while alive:
        passed = (rng.random((alive, chain.size)) < chain).all(axis=1)
        attempts += alive
        alive -= int(passed.sum())
    return cost * attempts / trials


def contour_expected_cost(
    schedule: PumpSchedule,
    levels,
    F_grid,
    model: CostModel | None = None,
    rel_tol: float = 1e-4,
    p_max: float = 0.05,
) -> list[list[tuple[float, float]]]:
    """Loci of fixed expected cost in the (F, p_g = p_M) plane.

    K grows with the local error rate, so each grid point is bisected in p;
    points where the level is not crossed in (0, p_max] are omitted.
    """
    model = model or CostModel()
    curves = []

    def k_of(F, p):
        try:
            return expected_cost(schedule, ChannelParams(F), depolarizing_noise(p, p), model)
        except SuccessProbabilityError:
            return math.inf

    for level in levels:
        if level <= 0:
            raise ValueError(f"contour level must be positive, got {level}")
        pts = []
        for F in F_grid:
            if k_of(F, 0.0) >= level:
                continue
            lo, hi, p = 0.0, None, 1e-5
            while p <= p_max:
                if k_of(F, p) >= level:
                    hi = p
                    break
                lo = p
                p *= 2.0
            if hi is None:
                continue
            while hi - lo > rel_tol * hi:
                mid = 0.5 * (lo + hi)
                if k_of(F, mid) < level:
                    lo = mid
                else:
                    hi = mid
            pts.append((float(F), 0.5 * (lo + hi)))
        curves.append(pts)
    return curves


def shor_gate_count(n_bits: int) -> ShorCount:
    """Gate counts for factoring an n-bit number: 40 n^3 Toffoli gates, each
    built from seven pi/8 gates plus Clifford overhead, 300 n^3 pi/8 gates
    in total."""
    if n_bits < 2:
        raise ValueError(f"n_bits must be at least 2, got {n_bits}")
    n3 = float(n_bits) ** 3
    return ShorCount(toffoli=40.0 * n3, pi8=300.0 * n3)


def total_overhead(K: float, T_per_gate: float, Omega: float) -> OverheadReport:
    """Total operational overhead R = K * T with T = T_per_gate * Omega."""
    if K <= 0 or T_per_gate <= 0 or Omega <= 0:
        raise ValueError("K, T_per_gate and Omega must be positive")
    T = T_per_gate * Omega
    return OverheadReport(K=K, T=T, Omega=Omega, R=K * T)
