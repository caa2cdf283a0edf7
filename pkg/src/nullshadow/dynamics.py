"""Quantum-jump unraveling of spontaneous emission for one atom.

Between emissions the atom is conditioned on the *absence* of a photon
click.  That null result is itself information: the unnormalized no-jump
branch is

    (a0 * exp(-i e0 t),  a1 * exp(-i e1 t) * exp(-gamma t / 2))

and renormalizing it drains the excited population continuously even
though nothing was emitted.  Its squared norm is the survival
probability

    S(t) = (1 - p1) + p1 * exp(-gamma t),        p1 = |a1|^2,

which is also the exact waiting-time law used for jump sampling: the
first-emission time is drawn by inverting S in closed form, so no time
step enters the sampler.  A jump resets the state to the ground level
instantly and nothing can re-excite it afterwards.

Randomness enters only through explicit uniform variates passed by the
caller; there is no hidden generator state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import GROUND, AtomParams, QubitState, free_evolve, normalize


@dataclass(frozen=True)
class TrajectoryRecord:
    """Fate of one atom over a finite horizon.

    ``jump_time`` is present iff the atom emitted within the horizon;
    ``blackened`` mirrors that (the detector above the atom fired).
    ``final_state`` is the ground state after a jump, otherwise the
    no-jump conditioned state at the horizon.
    """

    jump_time: float | None
    final_state: QubitState
    blackened: bool


def no_jump_evolve(state: QubitState, params: AtomParams, t: float) -> QubitState:
    """Condition on no emission up to time t and renormalize.

    The resulting excited population is
    ``p1 e^(-gamma t) / ((1 - p1) + p1 e^(-gamma t))``; for a pure
    excited state the damping cancels in the normalization, so the
    direction survives arbitrarily long waits (until an actual jump).
    """
    if t < 0.0:
        raise ValueError(f"time must be nonnegative, got {t}")
    if abs(state.a0) == 0.0:
        # Damping rescales the single excited amplitude only; the
        # normalized state is plain phase evolution.  Doing it this way
        # also dodges underflow of exp(-gamma t / 2) at huge gamma t.
        return free_evolve(state, params, t)
    drift = free_evolve(state, params, t)
    return normalize(QubitState(drift.a0, drift.a1 * math.exp(-0.5 * params.gamma * t)))


def jump_hazard(state: QubitState, params: AtomParams) -> float:
    """Instantaneous emission rate gamma * |a1|^2."""
    return params.gamma * state.excited_population


def no_jump_survival(p1: float, gamma: float, t: float) -> float:
    """Probability that an atom with excited weight p1 has not emitted by t.

    S(t) = (1 - p1) + p1 * exp(-gamma t): the ground component never
    radiates, so S saturates at 1 - p1 instead of vanishing.
    """
    if not 0.0 <= p1 <= 1.0:
        raise ValueError(f"excited probability must be in [0, 1], got {p1}")
    if t < 0.0:
        raise ValueError(f"time must be nonnegative, got {t}")
    return (1.0 - p1) + p1 * math.exp(-gamma * t)


def sample_jump_time(state: QubitState, params: AtomParams, u: float) -> float | None:
    """Exact first-emission time by inverse-transform sampling.

    With p1 = |a1|^2 the emission-time CDF is p1 * (1 - exp(-gamma t)),
    so a uniform u >= p1 lands in the never-emits mass (returns None)
    and u < p1 maps to t* = -ln(1 - u / p1) / gamma.  For gamma = 0
    there is no decay channel and the result is always None.
    """
    if not 0.0 <= u < 1.0:
        raise ValueError(f"uniform variate must be in [0, 1), got {u}")
    p1 = state.excited_population
    if params.gamma == 0.0 or u >= p1:
        return None
    return -math.log1p(-u / p1) / params.gamma


def run_trajectory(
    state: QubitState, params: AtomParams, horizon: float, u: float
) -> TrajectoryRecord:
    """Evolve one atom to the horizon, jumping at most once."""
    if horizon <= 0.0:
        raise ValueError(f"horizon must be positive, got {horizon}")
    t_jump = sample_jump_time(state, params, u)
    if t_jump is not None and t_jump <= horizon:
        return TrajectoryRecord(jump_time=t_jump, final_state=GROUND, blackened=True)
    return TrajectoryRecord(
        jump_time=None,
        final_state=no_jump_evolve(state, params, horizon),
        blackened=False,
    )


def conditional_excited_prob(p1: float, gamma: float, t: float) -> float:
    """Excited population after waiting time t with no emission seen.

    Bayes on the null result: p1 e^(-gamma t) / ((1-p1) + p1 e^(-gamma t)).
    Decreases monotonically to 0 whenever p1 < 1; a certainty (p1 = 1)
    stays a certainty, since only an actual jump can change it.
    """
    if not 0.0 <= p1 <= 1.0:
        raise ValueError(f"excited probability must be in [0, 1], got {p1}")
    if t < 0.0:
        raise ValueError(f"time must be nonnegative, got {t}")
    if p1 == 1.0:
        return 1.0
    decayed = p1 * math.exp(-gamma * t)
    return decayed / ((1.0 - p1) + decayed)
