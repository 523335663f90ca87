"""Model parameterization and validation."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace

from ..errors import ParameterError

__all__ = ["ModelParams", "MODELS", "GEOMETRIC_MODELS", "WEIGHTED_MODELS"]

MODELS = ("chung_lu", "tunable_chung_lu", "rgg", "girg", "tgirg")
GEOMETRIC_MODELS = ("rgg", "girg", "tgirg")
WEIGHTED_MODELS = ("chung_lu", "tunable_chung_lu", "girg", "tgirg")
CLASSICAL_MODELS = ("chung_lu", "girg")  # sigma pinned to 1

# O(n^2) pair trials above this size take minutes; the cell sampler does not.
NAIVE_VERTEX_CAP = 20_000


@dataclass(frozen=True)
class ModelParams:
    """Full parameterization of one generative model.

    ``alpha`` is the long-range exponent (``math.inf`` for the threshold
    regime); ``temperature`` is the equivalent ``1/alpha`` convenience view.
    Exactly one of ``rgg_radius`` (rgg) / ``target_avg_degree`` governs
    density; rgg accepts either and derives the radius from the target.
    """

    model: str
    n: int
    tau: float | None = None
    sigma: float | None = None
    alpha: float = math.inf
    dim: int = 1
    target_avg_degree: float | None = None
    rgg_radius: float | None = None
    seed: int = 0

    @property
    def temperature(self) -> float:
        return 0.0 if math.isinf(self.alpha) else 1.0 / self.alpha

    @property
    def is_geometric(self) -> bool:
        return self.model in GEOMETRIC_MODELS

    @property
    def effective_sigma(self) -> float:
        if self.model in CLASSICAL_MODELS:
            return 1.0
        return 1.0 if self.sigma is None else float(self.sigma)

    @staticmethod
    def from_temperature(temperature: float, **kwargs) -> "ModelParams":
        if not 0.0 <= temperature < 1.0:
            raise ParameterError(f"temperature must be in [0, 1), got {temperature}")
        alpha = math.inf if temperature == 0.0 else 1.0 / temperature
        return ModelParams(alpha=alpha, **kwargs)

    def validate(self, strict_sigma: bool = True) -> "ModelParams":
        """Check admissibility, returning self for chaining.

        With ``strict_sigma`` (the default, used by the CLI) the power-law
        condition ``sigma < tau - 1`` is an error; without it, only a
        warning, since the kernels stay well-defined and the samplers exact,
        merely losing the power-law degree guarantee.
        """
        if self.model not in MODELS:
            raise ParameterError(f"unknown model {self.model!r}")
        if self.n < 0:
            raise ParameterError("n must be >= 0")
        if self.model in WEIGHTED_MODELS:
            if self.tau is None or self.tau <= 2:
                raise ParameterError(f"tau must be > 2, got {self.tau}")
            if self.target_avg_degree is None or self.target_avg_degree <= 0:
                raise ParameterError("target_avg_degree must be > 0")
            if self.n > 1 and self.target_avg_degree >= self.n - 1:
                raise ParameterError("target_avg_degree must be < n - 1")
            if self.rgg_radius is not None:
                raise ParameterError("rgg_radius only applies to the rgg model")
            sig = self.effective_sigma
            if self.model in CLASSICAL_MODELS and self.sigma not in (None, 1, 1.0):
                raise ParameterError(f"{self.model} has sigma fixed to 1")
            if sig < 0:
                raise ParameterError("sigma must be >= 0")
            if sig >= self.tau - 1:
                msg = (f"sigma={sig} >= tau-1={self.tau - 1}: the degree "
                       "distribution will not follow a power law")
                if strict_sigma:
                    raise ParameterError(msg)
                warnings.warn(msg, stacklevel=2)
        if self.model == "rgg":
            if (self.rgg_radius is None) == (self.target_avg_degree is None):
                raise ParameterError(
                    "rgg needs exactly one of rgg_radius / target_avg_degree")
            if self.rgg_radius is not None and not 0 < self.rgg_radius <= 0.5:
                raise ParameterError(f"rgg_radius must be in (0, 1/2], got {self.rgg_radius}")
        if self.is_geometric:
            if self.dim < 1:
                raise ParameterError("dim must be >= 1")
            if not (self.alpha > 1):
                raise ParameterError(f"alpha must be > 1 (or inf), got {self.alpha}")
        return self

    def resolved_rgg_radius(self) -> float:
        """Radius for rgg: given directly or from (n-1)(2r)^d = target degree."""
        if self.rgg_radius is not None:
            return float(self.rgg_radius)
        if self.n < 2:
            raise ParameterError("need n >= 2 to derive a radius from a degree target")
        r = (self.target_avg_degree / (self.n - 1)) ** (1.0 / self.dim) / 2.0
        if r > 0.5:
            raise ParameterError("degree target requires radius above the torus diameter")
        return r

    def with_seed(self, seed: int) -> "ModelParams":
        return replace(self, seed=int(seed))
