"""Closed-form eigenvalue spectra of rho_dp * spin_flip(rho_dp) and their verification.

The closed forms are transcribed literally from the reference expressions,
without algebraic simplification, and are treated as claims under test: the
numerical pipeline (product channel -> Wootters spectrum) is the ground truth
and every disagreement is reported, never patched.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import ChannelKind, apply_product, kraus_operators
from .concurrence import wootters_spectrum
from .states import mems

# Square-root arguments driven negative by rounding are clamped at 0 down to
# this guard; anything below it is a genuine formula-domain violation.
SQRT_GUARD = 1e-8
# Default elementwise tolerance when comparing closed-form vs numeric spectra.
COMPARE_TOL = 1e-8


class FormulaDomainError(ValueError):
    """A closed-form square-root argument or eigenvalue fell below the -1e-8 guard."""

    def __init__(self, kind: ChannelKind, gamma: float, strength: float, arg: float):
        super().__init__(
            f"{kind.value}: sqrt argument or eigenvalue {arg:.3e} < -{SQRT_GUARD} "
            f"at gamma={gamma}, strength={strength}"
        )
        self.kind = kind
        self.gamma = gamma
        self.strength = strength
        self.arg = arg


@dataclass(frozen=True)
class DiscrepancyRecord:
    """One grid cell where closed form and numeric spectra disagree.

    ``closed_form`` is None when the formula could not be evaluated there
    (negative square-root argument); ``max_abs_error`` is +inf in that case.
    """

    kind: ChannelKind
    gamma: float
    strength: float
    max_abs_error: float
    closed_form: tuple[float, float, float, float] | None
    numeric: tuple[float, float, float, float]


def _raw_lambdas(kind: ChannelKind, gamma, strength):
    """Literal formula evaluation.

    Returns (lambdas (..., 4), badness (...)) where badness is the most
    negative square-root argument or eigenvalue produced per cell; anything
    below -SQRT_GUARD marks the cell unevaluable.
    """
    g = np.asarray(gamma, dtype=float)
    s = np.asarray(strength, dtype=float)
    g, s = np.broadcast_arrays(g, s)
    ok = np.zeros(g.shape)  # most negative sqrt argument encountered, per cell

    def guarded_sqrt(arg):
        nonlocal ok
        ok = np.minimum(ok, arg)
        return np.sqrt(np.clip(arg, 0.0, None))

    if kind is ChannelKind.BIT_FLIP:
        p = s
        l1 = (3 * g + 2 * (3 * g - 1) * (p - 1) * p - 2) ** 2 / 36
        l2 = (3 * g + 2 * (3 * g + 1) * (p - 1) * p + 2) ** 2 / 36
        root = guarded_sqrt(g**2 * (p - 2) * (p - 1) ** 3 * p**3 * (p + 1))
        poly = p * (p * (p**2 + 9 * g**2 * (p - 1) ** 2 - 2 * p - 1) + 2)
        l3 = (poly - 6 * root) / 9
        l4 = (poly + 6 * root) / 9
    elif kind is ChannelKind.PHASE_FLIP:
        p = s
        zero = np.zeros_like(p)
        l1, l2 = zero, zero
        l3 = (2 - 3 * g * (1 - 2 * p) ** 2) ** 2 / 36
        l4 = (3 * g * (1 - 2 * p) ** 2 + 2) ** 2 / 36
    elif kind is ChannelKind.BIT_PHASE_FLIP:
        p = s
        l1 = (3 * g + 6 * (g - 1) * (p - 1) * p - 2) ** 2 / 36
        l2 = (3 * g + 6 * (g + 1) * (p - 1) * p + 2) ** 2 / 36
        root = guarded_sqrt(g**2 * (p - 1) ** 3 * p**3 * (9 * (p - 1) * p + 2))
        poly = (p - 1) * p * (9 * (g**2 + 1) * (p - 1) * p + 2)
        l3 = (poly - 6 * root) / 9
        l4 = (poly + 6 * root) / 9
    elif kind is ChannelKind.AMPLITUDE_DAMPING:
        lt = s
        l1 = np.exp(-4 * lt) * (np.exp(lt) - 1) * (2 * np.exp(lt) - 1) / 9
        l2 = l1
        head = np.exp(8 * lt) * (
            3 * np.exp(lt) * ((3 * g**2 + 4) * np.exp(lt) - 4) + 4
        )
        root = guarded_sqrt(
            g**2 * np.exp(19 * lt) * (2 * np.sinh(lt) + 4 * np.cosh(lt) - 3)
        )
        l3 = np.exp(-12 * lt) * (head - 12 * root) / 36
        l4 = np.exp(-12 * lt) * (head + 12 * root) / 36
    elif kind is ChannelKind.PHASE_DAMPING:
        lt = s
        zero = np.zeros_like(lt)
        l1, l2 = zero, zero
        l3 = np.exp(-4 * lt) * (2 * np.exp(2 * lt) - 3 * g) ** 2 / 36
        l4 = np.exp(-4 * lt) * (3 * g + 2 * np.exp(2 * lt)) ** 2 / 36
    elif kind is ChannelKind.DEPOLARIZING:
        lt = s
        l1 = (
            4 / 81 * g**2 * np.exp(-4 * lt)
            * (-5 * np.exp(lt) + np.exp(2 * lt) + 4) ** 2
        )
        l2 = l1
        l3 = (
            np.exp(-2 * lt)
            * (
                (45 * g - 6) * np.sinh(lt)
                + (10 - 75 * g) * np.cosh(lt)
                + 48 * g + 8
            ) ** 2
            / 2916
        )
        l4 = (
            np.exp(-4 * lt)
            * (np.exp(lt) * ((15 * g + 2) * np.exp(lt) - 48 * g + 8) + 60 * g + 8) ** 2
            / 2916
        )
    else:  # pragma: no cover
        raise ValueError(f"unhandled channel kind {kind}")

    lam = np.stack(np.broadcast_arrays(l1, l2, l3, l4), axis=-1)
    return lam, np.minimum(ok, np.min(lam, axis=-1))


def closed_form_spectrum(kind: ChannelKind, gamma, strength) -> np.ndarray:
    """The four closed-form eigenvalues, clamped to >= 0, shape (..., 4).

    Raises
    ------
    FormulaDomainError
        When a square-root argument falls below -1e-8 (as the bit-phase-flip
        expressions do for p(1-p) < 2/9 at any gamma > 0).
    """
    g = np.asarray(gamma, dtype=float)
    if np.any(g < 0) or np.any(g > 1):
        raise ValueError(f"gamma must lie in [0, 1], got {gamma}")
    lam, badness = _raw_lambdas(kind, gamma, strength)
    if np.any(badness < -SQRT_GUARD):
        flat = int(np.argmin(badness))
        gg, ss = np.broadcast_arrays(
            np.asarray(gamma, dtype=float), np.asarray(strength, dtype=float)
        )
        raise FormulaDomainError(
            kind,
            float(gg.ravel()[flat]),
            float(ss.ravel()[flat]),
            float(badness.ravel()[flat]),
        )
    return np.clip(lam, 0.0, None)


def concurrence_from_spectrum(lambdas) -> np.ndarray:
    """max{0, sqrt(l_(1)) - sqrt(l_(2)) - sqrt(l_(3)) - sqrt(l_(4))}, roots descending."""
    lam = np.asarray(lambdas, dtype=float)
    roots = np.sort(np.sqrt(np.clip(lam, 0.0, None)), axis=-1)[..., ::-1]
    c = np.maximum(0.0, roots[..., 0] - roots[..., 1:].sum(axis=-1))
    return c if c.shape else float(c)


def numeric_spectrum(kind: ChannelKind, gamma, strength) -> np.ndarray:
    """Ground-truth spectrum from the product-channel pipeline, descending (..., 4)."""
    g = np.asarray(gamma, dtype=float)
    s = np.asarray(strength, dtype=float)
    g, s = np.broadcast_arrays(g, s)
    rho = apply_product(mems(g), kraus_operators(kind, s))
    return wootters_spectrum(rho)


def compare_spectrum(
    kind: ChannelKind, gamma: float, strength: float, tol: float = COMPARE_TOL
) -> DiscrepancyRecord | None:
    """Compare both spectra as sorted multisets; a record iff they differ beyond tol."""
    closed = np.sort(closed_form_spectrum(kind, gamma, strength))
    numeric = np.sort(numeric_spectrum(kind, gamma, strength))
    dev = float(np.max(np.abs(closed - numeric)))
    if dev <= tol:
        return None
    return DiscrepancyRecord(
        kind=kind,
        gamma=float(gamma),
        strength=float(strength),
        max_abs_error=dev,
        closed_form=tuple(float(x) for x in closed),
        numeric=tuple(float(x) for x in numeric),
    )


def scan_grid(
    kind: ChannelKind,
    gammas: np.ndarray,
    strengths: np.ndarray,
    tol: float = COMPARE_TOL,
) -> list[DiscrepancyRecord]:
    """Full-grid comparison, ordered by (gamma, strength).

    Cells where the closed form cannot be evaluated are reported with
    ``max_abs_error = inf`` so the discrepancy report stays complete instead
    of aborting the scan.
    """
    gam = np.asarray(gammas, dtype=float)[:, None]
    st = np.asarray(strengths, dtype=float)[None, :]
    gg, ss = np.broadcast_arrays(gam, st)

    lam, badness = _raw_lambdas(kind, gg, ss)
    bad = badness < -SQRT_GUARD
    closed = np.sort(np.clip(lam, 0.0, None), axis=-1)
    numeric = np.sort(numeric_spectrum(kind, gg, ss), axis=-1)
    dev = np.max(np.abs(closed - numeric), axis=-1)

    records: list[DiscrepancyRecord] = []
    hits = np.argwhere(bad | (dev > tol))
    for i, j in hits:
        if bad[i, j]:
            records.append(
                DiscrepancyRecord(
                    kind=kind,
                    gamma=float(gg[i, j]),
                    strength=float(ss[i, j]),
                    max_abs_error=float("inf"),
                    closed_form=None,
                    numeric=tuple(float(x) for x in numeric[i, j]),
                )
            )
        else:
            records.append(
                DiscrepancyRecord(
                    kind=kind,
                    gamma=float(gg[i, j]),
                    strength=float(ss[i, j]),
                    max_abs_error=float(dev[i, j]),
                    closed_form=tuple(float(x) for x in closed[i, j]),
                    numeric=tuple(float(x) for x in numeric[i, j]),
                )
            )
    return records
