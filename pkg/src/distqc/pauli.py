"""Pauli label algebra and local noise models.

Every entangled pair in this package is tracked by a single Pauli label on a
fixed half of the pair; physical errors hitting the other half are folded onto
the stored label.  All maps are diagonal in this label basis, so a pair's
state is always a length-4 probability vector over (I, X, Y, Z) and no density
matrix is ever materialised.

Label indices are fixed to I=0, X=1, Y=2, Z=3 throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

I, X, Y, Z = 0, 1, 2, 3
LABELS = (I, X, Y, Z)
LABEL_NAMES = "IXYZ"

ATOL = 1e-12

# label -> symplectic bits; Y carries both an x and a z bit
_X_BIT = (0, 1, 1, 0)
_Z_BIT = (0, 0, 1, 1)
_FROM_BITS = ((0, 3), (1, 2))  # indexed [x][z]


def _check_label(a: int) -> None:
    if a not in LABELS:
        raise ValueError(f"invalid Pauli label {a!r}; expected 0..3")


def label_mul(a: int, b: int) -> int:
    """Product of two Pauli labels with phases discarded."""
    _check_label(a)
    _check_label(b)
    return _FROM_BITS[_X_BIT[a] ^ _X_BIT[b]][_Z_BIT[a] ^ _Z_BIT[b]]


def cnot_propagate(control: int, target: int) -> tuple[int, int]:
    """Conjugate a label pair through an ideal CNOT, signs dropped.

    X on the control copies onto the target, Z on the target copies onto the
    control; the remaining components stay put.
    """
    _check_label(control)
    _check_label(target)
    xc, zc = _X_BIT[control], _Z_BIT[control]
    xt, zt = _X_BIT[target], _Z_BIT[target]
    return _FROM_BITS[xc][zc ^ zt], _FROM_BITS[xt ^ xc][zt]


def hadamard_propagate(a: int) -> int:
    """Conjugate a label through a (bilateral) Hadamard: X and Z swap."""
    _check_label(a)
    return (I, Z, Y, X)[a]


# Integer lookup tables for vectorised code paths.
MUL_TABLE = np.array([[label_mul(a, b) for b in LABELS] for a in LABELS], dtype=np.int64)
HAD_TABLE = np.array([hadamard_propagate(a) for a in LABELS], dtype=np.int64)
CNOT_CONTROL_TABLE = np.array(
    [[cnot_propagate(c, t)[0] for t in LABELS] for c in LABELS], dtype=np.int64
)
CNOT_TARGET_TABLE = np.array(
    [[cnot_propagate(c, t)[1] for t in LABELS] for c in LABELS], dtype=np.int64
)
X_COMPONENT = np.array(_X_BIT, dtype=np.int64)  # 1 for X, Y
Z_COMPONENT = np.array(_Z_BIT, dtype=np.int64)  # 1 for Y, Z


def as_fidelity_vector(values) -> np.ndarray:
    """Validate and return a length-4 probability vector over error labels."""
    f = np.asarray(values, dtype=float)
    if f.shape != (4,):
        raise ValueError(f"fidelity vector must have 4 entries, got shape {f.shape}")
    if np.any(f < -ATOL) or np.any(f > 1 + ATOL):
        raise ValueError(f"fidelity vector entries outside [0, 1]: {f}")
    if abs(f.sum() - 1.0) > ATOL:
        raise ValueError(f"fidelity vector must sum to 1, got {f.sum()!r}")
    return f


@dataclass(frozen=True)
class ChannelParams:
    """Noisy channel of fidelity F sharing pairs with the standard error mix.

    The raw pair carries no error with probability F and each of X, Y, Z with
    probability (1 - F)/3.
    """

    F: float

    def __post_init__(self):
        if not 0.25 < self.F <= 1.0:
            raise ValueError(f"channel fidelity must lie in (1/4, 1], got {self.F}")

    @property
    def f_ini(self) -> np.ndarray:
        e = (1.0 - self.F) / 3.0
        return np.array([self.F, e, e, e])


@dataclass(frozen=True)
class NoiseParams:
    """Local operation noise: two-qubit gate table, measurement and prep errors.

    p_table[i][j] is the probability that a two-qubit gate is followed by the
    error sigma_i (x) sigma_j on its two qubits; p_table[0][0] = 1 - p_g.
    p_M and p_P are per-qubit measurement and preparation flip probabilities.
    eta is the memory error rate per waiting step.
    """

    p_table: np.ndarray
    p_M: float
    p_P: float = 0.0
    eta: float = 0.0
    l_wait: int = 0

    def __post_init__(self):
        table = np.asarray(self.p_table, dtype=float)
        if table.shape != (4, 4):
            raise ValueError(f"p_table must be 4x4, got shape {table.shape}")
        if np.any(table < -ATOL):
            raise ValueError("p_table entries must be non-negative")
        if abs(table.sum() - 1.0) > ATOL:
            raise ValueError(f"p_table must sum to 1, got {table.sum()!r}")
        object.__setattr__(self, "p_table", table)
        for name in ("p_M", "p_P"):
            v = getattr(self, name)
            if not 0.0 <= v < 1.0:
                raise ValueError(f"{name} must lie in [0, 1), got {v}")
        if self.eta < 0.0:
            raise ValueError(f"eta must be non-negative, got {self.eta}")
        if self.l_wait < 0:
            raise ValueError(f"l_wait must be non-negative, got {self.l_wait}")

    @property
    def p_g(self) -> float:
        """Total two-qubit gate error probability."""
        return float(self.p_table.sum() - self.p_table[0, 0])

    def cache_key(self) -> tuple:
        return (self.p_table.tobytes(), self.p_M)


def depolarizing_noise(p_g: float, p_M: float, convention: str = "uniform") -> NoiseParams:
    """Build NoiseParams with the 15 non-identity gate errors sharing p_g.

    Only the uniform convention (each entry p_g/15) is defined.
    """
    if not 0.0 <= p_g < 1.0:
        raise ValueError(f"p_g must lie in [0, 1), got {p_g}")
    if not 0.0 <= p_M < 1.0:
        raise ValueError(f"p_M must lie in [0, 1), got {p_M}")
    if convention != "uniform":
        raise ValueError(f"unknown noise convention {convention!r}")
    table = np.full((4, 4), p_g / 15.0)
    table[0, 0] = 1.0 - p_g
    return NoiseParams(p_table=table, p_M=p_M)


def effective_pg(p_g: float, eta: float, l_wait: int) -> float:
    """Fold memory error over l_wait waiting steps into the gate error rate."""
    if p_g < 0 or eta < 0 or l_wait < 0:
        raise ValueError("p_g, eta and l_wait must be non-negative")
    total = p_g + eta * l_wait
    if total >= 1.0:
        raise ValueError(f"effective error probability {total} reaches 1")
    return total
