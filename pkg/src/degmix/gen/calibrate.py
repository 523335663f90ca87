"""Average-degree calibration of the free kernel scale.

The models fix edge probabilities only up to a global constant; a short
binary search on that constant pins the realized average degree.  Each
iteration generates one full instance (seeded per iteration, so the search
is deterministic) and the search stops after ``max_iters`` generations or
once the realized average degree is within ``rel_tol`` of the target.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import ParameterError
from .params import ModelParams

__all__ = ["CalibrationResult", "calibrate_avg_degree"]


@dataclass
class CalibrationResult:
    scale: float
    realized_avg_degree: float
    iterations: int
    converged: bool
    history: list = field(default_factory=list)  # (scale, avg degree) per iteration


def _iteration_seed(seed: int, iteration: int) -> int:
    from ..rng import PHASE_CALIBRATION
    ss = np.random.SeedSequence(entropy=int(seed) & (2**64 - 1),
                                spawn_key=(PHASE_CALIBRATION, iteration))
    return int(ss.generate_state(1)[0])


def calibrate_avg_degree(params: ModelParams, generator=None, max_iters: int = 8,
                         rel_tol: float = 0.05, initial_scale: float = 1.0
                         ) -> CalibrationResult:
    """Binary search for the kernel scale hitting ``params.target_avg_degree``.

    ``generator`` is called as ``generator(params_with_seed, scale)`` and must
    return a Graph; by default the model's fast sampler is used.  Returns the
    last evaluated scale (flagged unconverged when the tolerance was not met).
    """
    target = params.target_avg_degree
    if target is None or target <= 0:
        raise ParameterError("target_avg_degree must be > 0")
    if params.n > 1 and target >= params.n - 1:
        raise ParameterError(f"target degree {target} unattainable for n={params.n}")
    if generator is None:
        from . import generate
        generator = lambda p, c: generate(p, scale=c)  # noqa: E731

    history = []

    def realized(c: float, iteration: int) -> float:
        g = generator(params.with_seed(_iteration_seed(params.seed, iteration)), c)
        avg = g.average_degree() if g.n else 0.0
        history.append((c, avg))
        return avg

    scale = float(initial_scale)
    avg = realized(scale, 1)
    if abs(avg - target) <= rel_tol * target:
        return CalibrationResult(scale, avg, 1, True, history)

    ratio = target / max(avg, 2.0 / max(params.n, 2))
    lo, hi = scale * ratio, 4.0 * scale * ratio
    for iteration in range(2, max_iters + 1):
        scale = math.sqrt(lo * hi)
        avg = realized(scale, iteration)
        if abs(avg - target) <= rel_tol * target:
            return CalibrationResult(scale, avg, iteration, True, history)
        if avg < target:
            lo = scale
            if hi / lo < 1.3:   # bracket no longer straddles; expand upward
                hi *= 4.0
        else:
            hi = scale
            if hi / lo < 1.3:
                lo /= 4.0
    return CalibrationResult(scale, avg, max_iters, False, history)
