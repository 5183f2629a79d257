"""Single-qubit Kraus channels applied independently to both qubits."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .linalg import I2, PAULI_X, PAULI_Y, PAULI_Z, dag, kron2, require_finite
from .states import validate_density

COMPLETENESS_TOL = 1e-12


class ChannelKind(enum.Enum):
    BIT_FLIP = "bitflip"
    PHASE_FLIP = "phaseflip"
    BIT_PHASE_FLIP = "bitphaseflip"
    AMPLITUDE_DAMPING = "amplitudedamping"
    PHASE_DAMPING = "phasedamping"
    DEPOLARIZING = "depolarizing"

    @property
    def is_flip(self) -> bool:
        """Flip channels take a probability p in [0, 1]; damping ones take lt >= 0."""
        return self in (
            ChannelKind.BIT_FLIP,
            ChannelKind.PHASE_FLIP,
            ChannelKind.BIT_PHASE_FLIP,
        )


FLIP_KINDS = tuple(k for k in ChannelKind if k.is_flip)
DAMPING_KINDS = tuple(k for k in ChannelKind if not k.is_flip)


def check_strength(kind: ChannelKind, strength) -> np.ndarray:
    s = np.asarray(strength, dtype=float)
    if not np.all(np.isfinite(s)):
        raise ValueError(f"{kind.value}: strength must be finite")
    if kind.is_flip:
        if np.any(s < 0) or np.any(s > 1):
            raise ValueError(f"{kind.value}: p must lie in [0, 1], got {strength}")
    elif np.any(s < 0):
        raise ValueError(f"{kind.value}: damping exponent must be >= 0, got {strength}")
    return s


def kraus_operators(kind: ChannelKind, strength) -> np.ndarray:
    """Kraus operators for one qubit, shape (..., n_ops, 2, 2).

    Flip channels use {sqrt(p) I, sqrt(1-p) P} with P the matching Pauli;
    damping channels use the exponent lt through eta = exp(-lt).
    """
    s = check_strength(kind, strength)
    shape = s.shape

    def stack(mats):
        out = np.zeros(shape + (len(mats), 2, 2), dtype=complex)
        for i, m in enumerate(mats):
            out[..., i, :, :] = m
        return out

    if kind.is_flip:
        pauli = {
            ChannelKind.BIT_FLIP: PAULI_X,
            ChannelKind.PHASE_FLIP: PAULI_Z,
            ChannelKind.BIT_PHASE_FLIP: PAULI_Y,
        }[kind]
        keep = np.sqrt(s)[..., None, None] * I2
        flip = np.sqrt(1.0 - s)[..., None, None] * pauli
        return stack([keep, flip])

    eta = np.exp(-s)
    root_eta = np.sqrt(eta)
    root_loss = np.sqrt(1.0 - eta)
    if kind is ChannelKind.AMPLITUDE_DAMPING:
        e1 = np.zeros(shape + (2, 2), dtype=complex)
        e1[..., 0, 0] = 1.0
        e1[..., 1, 1] = root_eta
        e2 = np.zeros(shape + (2, 2), dtype=complex)
        e2[..., 0, 1] = root_loss
        return stack([e1, e2])
    if kind is ChannelKind.PHASE_DAMPING:
        e1 = root_eta[..., None, None] * I2
        e2 = np.zeros(shape + (2, 2), dtype=complex)
        e2[..., 0, 0] = root_loss
        e3 = np.zeros(shape + (2, 2), dtype=complex)
        e3[..., 1, 1] = root_loss
        return stack([e1, e2, e3])
    if kind is ChannelKind.DEPOLARIZING:
        r = np.sqrt((1.0 - eta) / 3.0)[..., None, None]
        return stack([
            root_eta[..., None, None] * I2,
            r * PAULI_X,
            r * PAULI_Y,
            r * PAULI_Z,
        ])
    raise ValueError(f"unhandled channel kind {kind}")  # pragma: no cover


@dataclass(frozen=True)
class KrausChannel:
    """A single-qubit channel: kind, strength, and its Kraus operators."""

    kind: ChannelKind
    strength: float
    operators: np.ndarray = field(repr=False)

    def __post_init__(self):
        dev = check_completeness(self.operators)
        if dev > COMPLETENESS_TOL:
            raise ValueError(
                f"{self.kind.value}: Kraus completeness off by {dev:.3e}"
            )


def kraus_set(kind: ChannelKind, strength: float) -> KrausChannel:
    """Build the channel for a scalar strength, with completeness enforced."""
    ops = kraus_operators(kind, float(strength))
    return KrausChannel(kind=kind, strength=float(strength), operators=ops)


def check_completeness(operators: np.ndarray) -> float:
    """Max entrywise deviation of sum_i E_i^dag E_i from the identity."""
    ops = require_finite(np.asarray(operators, dtype=complex), "Kraus operators")
    total = np.einsum("...kji,...kjl->...il", ops.conj(), ops)
    return float(np.max(np.abs(total - I2)))


def product_kraus(operators: np.ndarray) -> np.ndarray:
    """All two-qubit operators E_i (x) E_j, shape (..., n^2, 4, 4)."""
    ops = np.asarray(operators, dtype=complex)
    n = ops.shape[-3]
    pairs = kron2(ops[..., :, None, :, :], ops[..., None, :, :, :])
    return pairs.reshape(*pairs.shape[:-4], n * n, 4, 4)


def apply_product(rho: np.ndarray, operators: np.ndarray) -> np.ndarray:
    """Evolve rho under the two-qubit product channel sum_ij (Ei x Ej) rho (Ei x Ej)^dag.

    Broadcasts: rho (..., 4, 4) against operators (..., n, 2, 2).
    """
    rho = np.asarray(rho, dtype=complex)
    pairs = product_kraus(operators)
    return np.einsum("...kij,...jl,...kml->...im", pairs, rho, pairs.conj())


def apply_product_channel(rho: np.ndarray, channel: KrausChannel) -> np.ndarray:
    """Validated single-state evolution under ``channel`` on both qubits."""
    rho = validate_density(rho)
    out = apply_product(rho, channel.operators)
    return validate_density(out)
