"""Entanglement purification with single and double selection, plus pumping.

A purification round couples a kept pair to one or two ancilla pairs with
bilateral CNOTs and postselects on bilateral parity measurements:

* single selection: one ancilla, Z-parity check (accepted label classes
  {I, Z}), which filters bit-flip components of the kept pair;
* double selection: a second ancilla verifies the first through an X-parity
  check (accepted classes {I, X}), catching the operational errors that single
  selection leaves behind.  The kept pair exits each double-selection round in
  the Hadamard-rotated frame, so repeated rounds alternate which error type is
  being filtered.

Each bilateral gate consists of two physical two-qubit gates (one per side),
each followed by an independent draw from the gate error table.  Errors on the
far side fold onto the stored label through the X<->Z swap induced by the
reference pair state.  Each bilateral parity measurement consists of two
physical measurements flipping independently with probability p_M.

Entanglement pumping iterates these rounds with freshly generated channel
pairs as ancillae.  The unnormalised label vector accumulates the joint
success probability of all rounds; the net success probability is its total
mass and the output fidelity the renormalised vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .pauli import (
    CNOT_CONTROL_TABLE,
    CNOT_TARGET_TABLE,
    HAD_TABLE,
    MUL_TABLE,
    X_COMPONENT,
    Z_COMPONENT,
    ChannelParams,
    NoiseParams,
    as_fidelity_vector,
    cnot_propagate,
    hadamard_propagate,
    label_mul,
)

# Accepted label classes for the two bilateral parity checks.
Z_CHECK_ACCEPT = np.array([1, 0, 0, 1], dtype=bool)  # {I, Z}
X_CHECK_ACCEPT = np.array([1, 1, 0, 0], dtype=bool)  # {I, X}

_H = HAD_TABLE


class SuccessProbabilityError(RuntimeError):
    """Raised when a postselection success probability underflows to zero."""


@dataclass(frozen=True)
class PumpSchedule:
    """Repetition counts for entanglement pumping.

    scheme "single" uses counts (n1, n2): n1 level-1 rounds checking bit
    flips, then n2 Hadamard-twisted level-2 rounds checking phase flips.
    scheme "double" uses counts (n1, m1, m2): m1 level-1 double-selection
    rounds on the target, n1 single-selection rounds producing the level-2
    ancilla, and m2 level-2 double-selection rounds.
    """

    scheme: str
    counts: tuple[int, ...]

    def __post_init__(self):
        if self.scheme not in ("single", "double"):
            raise ValueError(f"unknown pump scheme {self.scheme!r}")
        want = 2 if self.scheme == "single" else 3
        if len(self.counts) != want:
            raise ValueError(
                f"{self.scheme} schedule needs {want} counts, got {self.counts}"
            )
        if any(c < 0 or int(c) != c for c in self.counts):
            raise ValueError(f"repetition counts must be non-negative integers: {self.counts}")
        object.__setattr__(self, "counts", tuple(int(c) for c in self.counts))

    @classmethod
    def single(cls, n1: int, n2: int) -> "PumpSchedule":
        return cls("single", (n1, n2))

    @classmethod
    def double(cls, n1: int, m1: int, m2: int) -> "PumpSchedule":
        return cls("double", (n1, m1, m2))

    @classmethod
    def parse(cls, text: str) -> "PumpSchedule":
        """Parse 'n1,n2' as a single schedule or 'n1,m1,m2' as a double one."""
        parts = [int(p) for p in text.split(",")]
        if len(parts) == 2:
            return cls.single(*parts)
        if len(parts) == 3:
            return cls.double(*parts)
        raise ValueError(f"schedule must have 2 or 3 comma-separated counts: {text!r}")


@dataclass(frozen=True)
class OpsTally:
    """Operation counts for one full protocol attempt."""

    base_pairs: int
    twoq_gates: int
    measurements: int


@dataclass(frozen=True)
class PumpResult:
    f_out: np.ndarray
    success_probs: dict[str, float]
    attempt_cost: OpsTally


def _meas_weights(p_M: float) -> tuple[float, float]:
    # Two independent per-qubit flips; the parity survives iff both or neither flip.
    keep = (1.0 - p_M) ** 2 + p_M**2
    flip = 2.0 * p_M * (1.0 - p_M)
    return keep, flip


def _pair_leg_noise(noise: NoiseParams) -> np.ndarray:
    """Joint distribution of the net labels a bilateral CNOT adds to its pairs.

    Combines the two per-side gate error draws; far-side errors fold through
    the X<->Z swap.
    """
    p = noise.p_table
    idx = np.arange(4)
    uA, vA, uB, vB = np.ix_(idx, idx, idx, idx)
    w = p[uA, vA] * p[uB, vB]
    n1 = MUL_TABLE[uA, _H[uB]]
    n2 = MUL_TABLE[vA, _H[vB]]
    n1, n2, w = np.broadcast_arrays(n1, n2, w)
    joint = np.zeros((4, 4))
    np.add.at(joint, (n1.ravel(), n2.ravel()), w.ravel())
    return joint


def _bilateral_cnot_map(noise: NoiseParams) -> np.ndarray:
    """T[i, j, a, b]: probability the (control, target) pair labels (i, j)
    become (a, b) under a noisy bilateral CNOT."""
    leg = _pair_leg_noise(noise)
    T = np.zeros((4, 4, 4, 4))
    for i in range(4):
        for j in range(4):
            a0, b0 = cnot_propagate(i, j)
            # noise label n maps the conjugated label a0 to a = a0*n, so the
            # branch reaching (a, b) carries weight leg[a0*a, b0*b]
            T[i, j] = leg[np.ix_(MUL_TABLE[a0], MUL_TABLE[b0])]
    return T


@lru_cache(maxsize=64)
def _cached_maps(p_table_bytes: bytes, p_M: float):
    p_table = np.frombuffer(p_table_bytes).reshape(4, 4)
    noise = NoiseParams(p_table=p_table.copy(), p_M=p_M)
    T = _bilateral_cnot_map(noise)
    S = _single_tensor_from_map(T, p_M)
    D = _double_tensor_from_map(T, p_M)
    for arr in (T, S, D):  # shared cached instances
        arr.setflags(write=False)
    return T, S, D


def _maps(noise: NoiseParams):
    return _cached_maps(noise.p_table.tobytes(), noise.p_M)


def _single_tensor_from_map(T: np.ndarray, p_M: float) -> np.ndarray:
    keep, flip = _meas_weights(p_M)
    w_z = np.where(Z_CHECK_ACCEPT, keep, flip)
    return np.einsum("ijkb,b->ijk", T, w_z)


def _double_tensor_from_map(T: np.ndarray, p_M: float) -> np.ndarray:
    keep, flip = _meas_weights(p_M)
    w_z = np.where(Z_CHECK_ACCEPT, keep, flip)
    w_x = np.where(X_CHECK_ACCEPT, keep, flip)
    # gate 1: target pair (i) controls ancilla 1 (j); gate 2: ancilla 2 (k)
    # controls ancilla 1; ancilla 1 gets the Z check, ancilla 2 the X check.
    D0 = np.einsum("ijab,kbdc,c,d->ijka", T, T, w_z, w_x)
    return D0[:, :, :, _H]  # trailing bilateral Hadamard on the kept pair


def single_selection_tensor(noise: NoiseParams) -> np.ndarray:
    """S[i, j, k]: unnormalised transition probabilities of one
    single-selection round for (kept, ancilla) input labels (i, j)."""
    return _maps(noise)[1]


def double_selection_tensor(noise: NoiseParams) -> np.ndarray:
    """D[i, j, k, l]: unnormalised transition probabilities of one
    double-selection round for (kept, ancilla1, ancilla2) labels (i, j, k)."""
    return _maps(noise)[2]


def _hadamard_twisted(S: np.ndarray) -> np.ndarray:
    # Conjugate all three slots: the round checks phase flips instead.
    return S[np.ix_(_H, _H, _H)]


def _finalize(unnorm: np.ndarray, what: str) -> tuple[np.ndarray, float]:
    p = float(unnorm.sum())
    if p <= 0.0:
        raise SuccessProbabilityError(f"{what}: success probability underflowed to 0")
    return unnorm / p, p


def single_selection(
    target, ancilla, noise: NoiseParams
) -> tuple[np.ndarray, float]:
    """One single-selection round; returns the renormalised kept-pair vector
    and the round's success probability."""
    f1 = as_fidelity_vector(target)
    f2 = as_fidelity_vector(ancilla)
    S = single_selection_tensor(noise)
    return _finalize(np.einsum("ijk,i,j->k", S, f1, f2), "single selection")


def double_selection(
    target, ancilla1, ancilla2, noise: NoiseParams
) -> tuple[np.ndarray, float]:
    """One double-selection round; ancilla1 takes the Z-parity check and
    ancilla2 the X-parity check.  The kept pair exits Hadamard-rotated."""
    f1 = as_fidelity_vector(target)
    f2 = as_fidelity_vector(ancilla1)
    f3 = as_fidelity_vector(ancilla2)
    D = double_selection_tensor(noise)
    return _finalize(np.einsum("ijkl,i,j,k->l", D, f1, f2, f3), "double selection")


def _chain(tensor3, start, ancilla, rounds, what):
    """Apply an unnormalised two-input round `rounds` times with a fixed
    ancilla vector; returns the final unnormalised vector and the per-round
    conditional success probabilities."""
    f = start.copy()
    conditionals = []
    for _ in range(rounds):
        before = f.sum()
        f = np.einsum("ijk,i,j->k", tensor3, f, ancilla)
        after = f.sum()
        if after <= 0.0:
            raise SuccessProbabilityError(f"{what}: success probability underflowed to 0")
        conditionals.append(float(after / before))
    return f, conditionals


def single_pump_ops(n1: int, n2: int) -> OpsTally:
    """Nominal operation counts of one full single-pumping attempt.

    Every level-2 round consumes a freshly pumped level-1 pair (1 + n1 base
    pairs, n1 rounds) plus the running target chain.
    """
    pairs = (1 + n1) * (1 + n2)
    rounds = n1 + n2 * (n1 + 1)
    return OpsTally(base_pairs=pairs, twoq_gates=2 * rounds, measurements=2 * rounds)


def double_pump_ops(n1: int, m1: int, m2: int) -> OpsTally:
    """Nominal operation counts of one full double-pumping attempt."""
    pairs = 1 + 2 * m1 + m2 * (n1 + 2)
    gates = 4 * m1 + m2 * (2 * n1 + 4)
    return OpsTally(base_pairs=pairs, twoq_gates=gates, measurements=gates)


def pump_single(channel: ChannelParams, schedule: PumpSchedule, noise: NoiseParams) -> PumpResult:
    """Two-level entanglement pumping with single selection.

    Level 1 repeatedly purifies a fresh pair against fresh channel pairs;
    level 2 purifies the level-1 output against level-1 pumped ancillae with
    Hadamard-twisted checks so phase flips are filtered.
    """
    if schedule.scheme != "single":
        raise ValueError("pump_single requires a single-selection schedule")
    n1, n2 = schedule.counts
    f_ini = channel.f_ini
    S = single_selection_tensor(noise)

    lv1, cond1 = _chain(S, f_ini, f_ini, n1, "level-1 single pumping")
    f_lv1, p_lv1 = _finalize(lv1, "level-1 single pumping") if n1 else (f_ini, 1.0)

    S2 = _hadamard_twisted(S)
    lv2, _ = _chain(S2, f_lv1, f_lv1, n2, "level-2 single pumping")
    f_lv2, p_lv2 = _finalize(lv2, "level-2 single pumping") if n2 else (f_lv1, 1.0)

    return PumpResult(
        f_out=f_lv2,
        success_probs={"p_lv1": p_lv1, "p_lv2": p_lv2},
        attempt_cost=single_pump_ops(n1, n2),
    )


def pump_double(channel: ChannelParams, schedule: PumpSchedule, noise: NoiseParams) -> PumpResult:
    """Two-level entanglement pumping with double selection.

    (i) m1 level-1 double-selection rounds purify the target with two fresh
    pairs per round; (ii) n1 single-selection rounds build the level-2
    ancilla; (iii) m2 level-2 double-selection rounds purify the target with
    that ancilla plus one fresh pair per round.

    The level-2 ancilla enters in the complementary (Hadamard-rotated) basis,
    like the ancilla slot of the level-2 single-pumping map: single selection
    filtered its bit-flip component, and the rotation moves that clean
    component onto the phase-flip slot the level-2 rounds are sensitive to.
    """
    if schedule.scheme != "double":
        raise ValueError("pump_double requires a double-selection schedule")
    n1, m1, m2 = schedule.counts
    f_ini = channel.f_ini
    _, S, D = _maps(noise)

    t = f_ini.copy()
    for _ in range(m1):
        t = np.einsum("ijkl,i,j,k->l", D, t, f_ini, f_ini)
        if t.sum() <= 0.0:
            raise SuccessProbabilityError("level-1 double pumping: success probability underflowed to 0")
    f_t1, r_lv1 = _finalize(t, "level-1 double pumping") if m1 else (f_ini, 1.0)

    lv1, _ = _chain(S, f_ini, f_ini, n1, "level-1 single pumping")
    f_lv1, p_lv1 = _finalize(lv1, "level-1 single pumping") if n1 else (f_ini, 1.0)

    ancilla = f_lv1[_H]
    g = f_t1.copy()
    for _ in range(m2):
        g = np.einsum("ijkl,i,j,k->l", D, g, ancilla, f_ini)
        if g.sum() <= 0.0:
            raise SuccessProbabilityError("level-2 double pumping: success probability underflowed to 0")
    f_out, r_lv2 = _finalize(g, "level-2 double pumping") if m2 else (f_t1, 1.0)

    return PumpResult(
        f_out=f_out,
        success_probs={"r_lv1": r_lv1, "p_lv1": p_lv1, "r_lv2": r_lv2},
        attempt_cost=double_pump_ops(n1, m1, m2),
    )


def round_success_chain(
    channel: ChannelParams, schedule: PumpSchedule, noise: NoiseParams
) -> list[float]:
    """Conditional per-round success probabilities of one full attempt, in
    protocol order.  Their product is the attempt's net success probability."""
    f_ini = channel.f_ini
    if schedule.scheme == "single":
        n1, n2 = schedule.counts
        S = single_selection_tensor(noise)
        lv1, cond1 = _chain(S, f_ini, f_ini, n1, "level-1 single pumping")
        f_lv1 = lv1 / lv1.sum() if n1 else f_ini
        S2 = _hadamard_twisted(S)
        probs = list(cond1)
        # each level-2 round first rebuilds its level-1 ancilla
        f = f_lv1.copy()
        for _ in range(n2):
            probs.extend(cond1)
            f, c = _chain(S2, f, f_lv1, 1, "level-2 single pumping")
            f = f / f.sum()
            probs.extend(c)
        return probs
    n1, m1, m2 = schedule.counts
    _, S, D = _maps(noise)
    probs = []
    t = f_ini.copy()
    for _ in range(m1):
        before = t.sum()
        t = np.einsum("ijkl,i,j,k->l", D, t, f_ini, f_ini)
        probs.append(float(t.sum() / before))
    t = t / t.sum()
    lv1, cond1 = _chain(S, f_ini, f_ini, n1, "level-1 single pumping")
    f_lv1 = lv1 / lv1.sum() if n1 else f_ini
    ancilla = f_lv1[_H]
    for _ in range(m2):
        probs.extend(cond1)
        t = np.einsum("ijkl,i,j,k->l", D, t, ancilla, f_ini)
        probs.append(float(t.sum()))
        t = t / t.sum()
    return probs


# ---------------------------------------------------------------------------
# Exhaustive enumeration oracles
# ---------------------------------------------------------------------------
#
# These rebuild the round maps by brute force: every joint input label, every
# per-side gate error draw and every measurement flip pattern is enumerated
# and postselected explicitly.  They share only the label primitives with the
# tensor path above.


def enumerate_single_map(noise: NoiseParams) -> np.ndarray:
    """Single-selection transition probabilities by exhaustive enumeration."""
    p = noise.p_table
    p_M = noise.p_M
    flip_w = (1.0 - p_M, p_M)
    S = np.zeros((4, 4, 4))
    for i in range(4):
        for j in range(4):
            a0, b0 = cnot_propagate(i, j)
            for uA in range(4):
                for vA in range(4):
                    wA = p[uA, vA]
                    for uB in range(4):
                        for vB in range(4):
                            w = wA * p[uB, vB]
                            a = label_mul(label_mul(a0, uA), hadamard_propagate(uB))
                            b = label_mul(label_mul(b0, vA), hadamard_propagate(vB))
                            odd = X_COMPONENT[b]
                            for fA in (0, 1):
                                for fB in (0, 1):
                                    if odd ^ fA ^ fB:
                                        continue  # observed parity odd: rejected
                                    S[i, j, a] += w * flip_w[fA] * flip_w[fB]
    return S


def enumerate_double_map(noise: NoiseParams) -> np.ndarray:
    """Double-selection transition probabilities by exhaustive enumeration.

    Vectorised over the two gates' error draws; input labels and measurement
    flip patterns are enumerated explicitly.
    """
    p = noise.p_table
    p_M = noise.p_M
    flip_w = np.array([1.0 - p_M, p_M])
    idx = np.arange(4)
    uA, vA, uB, vB = np.ix_(idx, idx, idx, idx)
    draw_w = (p[uA, vA] * p[uB, vB]).ravel()
    # net labels each gate adds to its control and target pair, one entry per
    # joint draw (uA, vA, uB, vB)
    full = (4, 4, 4, 4)
    add_c = np.broadcast_to(MUL_TABLE[uA, _H[uB]], full).ravel()
    add_t = np.broadcast_to(MUL_TABLE[vA, _H[vB]], full).ravel()

    D = np.zeros((4, 4, 4, 4))
    for i in range(4):
        for j in range(4):
            a0, b0 = cnot_propagate(i, j)
            a1 = MUL_TABLE[a0, add_c]  # kept-pair label after gate 1, (draws1,)
            b1 = MUL_TABLE[b0, add_t]
            for k in range(4):
                k1 = CNOT_CONTROL_TABLE[k, b1]  # ancilla 2 after ideal gate 2
                b2 = CNOT_TARGET_TABLE[k, b1]
                # broadcast gate-2 draws against gate-1 draws
                k2 = MUL_TABLE[k1[:, None], add_c[None, :]]
                b3 = MUL_TABLE[b2[:, None], add_t[None, :]]
                w = draw_w[:, None] * draw_w[None, :]
                odd_z = X_COMPONENT[b3].astype(bool)  # ancilla 1, Z check
                odd_x = Z_COMPONENT[k2].astype(bool)  # ancilla 2, X check
                out = _H[a1]
                for f1 in (0, 1):
                    for f2 in (0, 1):
                        # observed Z-check parity even iff true parity equals the flip parity
                        ok_z = odd_z == bool(f1 ^ f2)
                        w12 = flip_w[f1] * flip_w[f2]
                        for f3 in (0, 1):
                            for f4 in (0, 1):
                                ok = ok_z & (odd_x == bool(f3 ^ f4))
                                ww = w12 * flip_w[f3] * flip_w[f4]
                                masked = np.where(ok, w, 0.0).sum(axis=1)
                                for lab in range(4):
                                    D[i, j, k, lab] += ww * masked[out == lab].sum()
    return D


def sample_single_selection(
    target, ancilla, noise: NoiseParams, n_samples: int, rng: np.random.Generator
) -> tuple[np.ndarray, float]:
    """Monte Carlo single-selection round: sampled labels, draws and flips.

    Returns the postselected output label frequencies and the fraction of
    accepted samples.
    """
    f1 = as_fidelity_vector(target)
    f2 = as_fidelity_vector(ancilla)
    p_flat = noise.p_table.ravel()
    i = rng.choice(4, size=n_samples, p=f1)
    j = rng.choice(4, size=n_samples, p=f2)
    a0 = CNOT_CONTROL_TABLE[i, j]
    b0 = CNOT_TARGET_TABLE[i, j]
    dA = rng.choice(16, size=n_samples, p=p_flat)
    dB = rng.choice(16, size=n_samples, p=p_flat)
    a = MUL_TABLE[MUL_TABLE[a0, dA // 4], _H[dB // 4]]
    b = MUL_TABLE[MUL_TABLE[b0, dA % 4], _H[dB % 4]]
    flips = rng.random((n_samples, 2)) < noise.p_M
    observed_odd = X_COMPONENT[b].astype(bool) ^ flips[:, 0] ^ flips[:, 1]
    kept = a[~observed_odd]
    if kept.size == 0:
        raise SuccessProbabilityError("Monte Carlo single selection: no samples accepted")
    counts = np.bincount(kept, minlength=4).astype(float)
    return counts / kept.size, kept.size / n_samples


def sample_double_selection(
    target, ancilla1, ancilla2, noise: NoiseParams, n_samples: int, rng: np.random.Generator
) -> tuple[np.ndarray, float]:
    """Monte Carlo double-selection round, same conventions as above."""
    f1 = as_fidelity_vector(target)
    f2 = as_fidelity_vector(ancilla1)
    f3 = as_fidelity_vector(ancilla2)
    p_flat = noise.p_table.ravel()
    i = rng.choice(4, size=n_samples, p=f1)
    j = rng.choice(4, size=n_samples, p=f2)
    k = rng.choice(4, size=n_samples, p=f3)
    a0 = CNOT_CONTROL_TABLE[i, j]
    b0 = CNOT_TARGET_TABLE[i, j]
    d1A = rng.choice(16, size=n_samples, p=p_flat)
    d1B = rng.choice(16, size=n_samples, p=p_flat)
    a1 = MUL_TABLE[MUL_TABLE[a0, d1A // 4], _H[d1B // 4]]
    b1 = MUL_TABLE[MUL_TABLE[b0, d1A % 4], _H[d1B % 4]]
    k1 = CNOT_CONTROL_TABLE[k, b1]
    b2 = CNOT_TARGET_TABLE[k, b1]
    d2A = rng.choice(16, size=n_samples, p=p_flat)
    d2B = rng.choice(16, size=n_samples, p=p_flat)
    k2 = MUL_TABLE[MUL_TABLE[k1, d2A // 4], _H[d2B // 4]]
    b3 = MUL_TABLE[MUL_TABLE[b2, d2A % 4], _H[d2B % 4]]
    flips = rng.random((n_samples, 4)) < noise.p_M
    odd_z = X_COMPONENT[b3].astype(bool) ^ flips[:, 0] ^ flips[:, 1]
    odd_x = Z_COMPONENT[k2].astype(bool) ^ flips[:, 2] ^ flips[:, 3]
    accept = ~(odd_z | odd_x)
    kept = _H[a1[accept]]
    if kept.size == 0:
        raise SuccessProbabilityError("Monte Carlo double selection: no samples accepted")
    counts = np.bincount(kept, minlength=4).astype(float)
    return counts / kept.size, kept.size / n_samples
