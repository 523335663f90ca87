"""Generative models: Chung-Lu, RGG, GIRG, and their tunable extensions."""
from __future__ import annotations

from ..errors import ParameterError
from .calibrate import CalibrationResult, calibrate_avg_degree
from .chunglu import generate_chung_lu_fast
from .girg import generate_tgirg_fast
from .kernels import connection_probability, kernel_weight_term, torus_distance
from .naive import generate_naive
from .params import MODELS, ModelParams
from .rgg import generate_rgg
from .weights import (pareto_quantile, sample_positions, sample_weights,
                      supergraph_weights)

__all__ = [
    "MODELS", "ModelParams", "CalibrationResult", "calibrate_avg_degree",
    "connection_probability", "kernel_weight_term", "torus_distance",
    "generate", "generate_naive", "generate_rgg", "generate_chung_lu_fast",
    "generate_tgirg_fast", "pareto_quantile", "sample_weights",
    "sample_positions", "supergraph_weights",
]


def generate(params: ModelParams, scale: float | None = None, *, rng=None,
             return_latents=False, workers: int | None = None):
    """Sample one instance of ``params.model`` with the fast sampler.

    ``scale`` is the calibrated kernel constant (see
    :func:`calibrate_avg_degree`); rgg ignores it.  ``workers`` is accepted
    for API symmetry: the vectorized samplers are schedule-invariant, so the
    result never depends on it.
    """
    params.validate(strict_sigma=False)
    if workers is not None and workers < 1:
        raise ParameterError("workers must be >= 1")
    if params.model == "rgg":
        from ..rng import PHASE_POSITIONS, stream
        r = params.resolved_rgg_radius()
        pos_rng = rng if rng is not None else stream(params.seed, PHASE_POSITIONS)
        return generate_rgg(params.n, params.dim, r, rng=pos_rng,
                            return_latents=return_latents)
    if scale is None:
        raise ParameterError("scale required (run calibrate_avg_degree first)")
    if params.model in ("chung_lu", "tunable_chung_lu"):
        return generate_chung_lu_fast(params, scale, rng=rng,
                                      return_latents=return_latents)
    return generate_tgirg_fast(params, scale, rng=rng,
                               return_latents=return_latents)
