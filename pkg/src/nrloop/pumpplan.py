"""Parametric-drive bookkeeping for a three-wave-mixing implementation.

Given three mode frequencies, computes the pump frequencies that activate
the loop's interactions, the spurious sum/difference processes those pumps
must stay clear of, the minimum detuning margin, the rotating-wave-validity
ratio, and the pump amplitudes and loop-phase relation for target coupling
strengths.  Frequencies are plain reals; the CLI documents GHz as the
convention but no unit system is enforced.
"""

import math
from dataclasses import dataclass

from .errors import FrequencyCollisionError

__all__ = [
    "FrequencyPlan",
    "PumpAmplitudes",
    "RwaCheck",
    "plan_frequencies",
    "rwa_check",
    "pump_amplitudes",
]


@dataclass(frozen=True)
class FrequencyPlan:
    """Pump assignment nu_1 = w2 + w3, nu_2 = w3 - w1, nu_3 = w1 + w2 plus
    the spurious difference {w2 - w1, w3 - w2} and sum
    {w1 + w3, 2 w1, 2 w2, 2 w3} processes.  ``min_margin`` is the smallest
    distance from any pump to any spurious frequency or mode frequency."""

    mode_freqs: tuple
    pump_freqs: tuple
    spurious_diff: tuple
    spurious_sum: tuple
    min_margin: float


@dataclass(frozen=True)
class RwaCheck:
    """Rotating-wave validity: ``worst_ratio`` is min_margin / max coupling;
    the approximation is accepted when the ratio reaches the threshold."""

    ok: bool
    worst_ratio: float
    threshold: float


@dataclass(frozen=True)
class PumpAmplitudes:
    """Pump amplitudes realizing target couplings through a three-wave
    element of strength ``c123``: each g_jk = 3 c123 |alpha|, with
    ``amplitudes`` ordered (|alpha_3|, |alpha_2|, |alpha_1|) to match
    ``target_g`` = (g12, g13, g23).  ``loop_phase`` is the gauge-invariant
    combination phi_p3 + phi_p2 - phi_p1 of the pump phases; the individual
    mode phases are absorbed as gauge choices."""

    c123: float
    target_g: tuple
    amplitudes: tuple
    pump_phases: tuple
    loop_phase: float


def plan_frequencies(mode_freqs):
    """Frequency plan for given mode frequencies (w1, w2, w3).

    Requires 0 < w1 < w3 (so the beam-splitter pump frequency is positive)
    and pairwise-distinct modes.  Raises
    :class:`nrloop.errors.FrequencyCollisionError` when any pump lands
    exactly on a spurious or mode frequency (zero margin).
    """
    w1, w2, w3 = (float(f) for f in mode_freqs)
    if not 0.0 < w1 < w3:
        raise ValueError("mode frequencies must satisfy 0 < w1 < w3")
    if len({w1, w2, w3}) != 3:
        raise ValueError("mode frequencies must be pairwise distinct")

    pumps = (w2 + w3, w3 - w1, w1 + w2)
    spurious_diff = (w2 - w1, w3 - w2)
    spurious_sum = (w1 + w3, 2.0 * w1, 2.0 * w2, 2.0 * w3)

    avoid = (
        [("difference process", f) for f in spurious_diff]
        + [("sum process", f) for f in spurious_sum]
        + [(f"mode {i + 1}", f) for i, f in enumerate((w1, w2, w3))]
    )
    min_margin = math.inf
    collisions = []
    for i, nu in enumerate(pumps):
        for label, f in avoid:
            gap = abs(nu - f)
            if gap < min_margin:
                min_margin = gap
            if gap == 0.0:
                collisions.append((f"pump {i + 1}", label, f))
    if collisions:
        raise FrequencyCollisionError(collisions)

    return FrequencyPlan(
        mode_freqs=(w1, w2, w3),
        pump_freqs=pumps,
        spurious_diff=spurious_diff,
        spurious_sum=spurious_sum,
        min_margin=min_margin,
    )


def rwa_check(plan, couplings, ratio_threshold=100.0):
    """Check that the plan's margin dominates the couplings.

    ``worst_ratio`` = min_margin / max(g); the heuristic acceptance threshold
    defaults to 100 but is a parameter, not a hard truth.  Vanishing
    couplings pass trivially with an infinite ratio.
    """
    g_max = max(abs(float(g)) for g in couplings)
    if g_max == 0.0:
        return RwaCheck(ok=True, worst_ratio=math.inf, threshold=ratio_threshold)
    ratio = plan.min_margin / g_max
    return RwaCheck(ok=ratio >= ratio_threshold, worst_ratio=ratio, threshold=ratio_threshold)


def pump_amplitudes(c123, target_g, pump_phases=(0.0, 0.0, 0.0)):
    """Pump amplitudes for target couplings (g12, g13, g23).

    g12 is pumped through mode 3, g13 through mode 2, and g23 through mode
    1, so the returned amplitudes are (|alpha_3|, |alpha_2|, |alpha_1|) =
    target_g / (3 c123).
    """
    c123 = float(c123)
    if c123 <= 0.0:
        raise ValueError("three-wave coupling c123 must be positive")
    g12, g13, g23 = (float(g) for g in target_g)
    if min(g12, g13, g23) < 0.0:
        raise ValueError("target couplings must be non-negative")
    p1, p2, p3 = (float(v) for v in pump_phases)
    return PumpAmplitudes(
        c123=c123,
        target_g=(g12, g13, g23),
        amplitudes=(g12 / (3.0 * c123), g13 / (3.0 * c123), g23 / (3.0 * c123)),
        pump_phases=(p1, p2, p3),
        loop_phase=p3 + p2 - p1,
    )
