"""Closed-form predictions and the Monte Carlo oracles validating them.

Predictors return regime labels and exponents only; the hidden constants
are order-of-magnitude free parameters, fitted once by least squares when a
prediction is compared against simulation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import stats

from .errors import ParameterError
from .gen.kernels import connection_probability
from .gen.params import ModelParams
from .gen.rgg import generate_rgg
from .gen.weights import sample_weights
from .rng import as_generator

__all__ = [
    "predicted_edge_endpoint_tail", "predicted_conditional_weight_density",
    "predicted_joint_weight_density", "predicted_pearson_scaling",
    "rgg_expected_intersection_fraction", "monte_carlo_intersection_fraction",
    "rgg_conditional_degree_check", "monte_carlo_expected_degree",
    "loglog_slope",
]


@dataclass(frozen=True)
class TailPrediction:
    regime: str
    exponent: float


def predicted_edge_endpoint_tail(w: float, tau: float, n: int) -> TailPrediction:
    """Density shape of a random edge endpoint's weight, up to a constant.

    w^(1-tau) below the cutoff at n, then n * w^(-tau); independent of the
    tuning exponent sigma.
    """
    if w < 1 or tau <= 2:
        raise ParameterError("need w >= 1 and tau > 2")
    if w <= n:
        return TailPrediction("sub_cutoff", 1.0 - tau)
    return TailPrediction("above_cutoff", -tau)


@dataclass(frozen=True)
class ConditionalDensityPrediction:
    regime: str            # 'sub_cutoff' | 'mid' | 'heavy_partner'
    w_exponent: float      # effective exponent on w in the regime
    boost_exponent: float  # exponent of the (w min w_u) factor


def predicted_conditional_weight_density(w: float, w_u: float, tau: float,
                                         sigma: float, n: int
                                         ) -> ConditionalDensityPrediction:
    """Density shape of a neighbor's weight given the partner weight w_u.

    Regimes partition the (w, w_u) quadrant:
      (i)  (w min w_u)^sigma (w max w_u) <= n:  w^(1-tau) (w min w_u)^(sigma-1)
      (ii) w_u <= n < that product:             w^(-tau) n / w_u
      (iii) w_u > n:                            w^(-tau)
    """
    if w < 1 or w_u < 1:
        raise ParameterError("weights must be >= 1")
    if sigma < 0 or sigma >= tau - 1:
        raise ParameterError("sigma must lie in [0, tau - 1)")
    if w_u > n:
        return ConditionalDensityPrediction("heavy_partner", -tau, 0.0)
    if min(w, w_u) ** sigma * max(w, w_u) <= n:
        boost = sigma - 1.0
        w_exp = (1.0 - tau) + (boost if w <= w_u else 0.0)
        return ConditionalDensityPrediction("sub_cutoff", w_exp, boost)
    return ConditionalDensityPrediction("mid", -tau, 0.0)


@dataclass(frozen=True)
class JointDensityPrediction:
    regime: str
    value: float  # unnormalized density at (w_u, w_v)


def predicted_joint_weight_density(w_u: float, w_v: float, tau: float,
                                   sigma: float, n: int) -> JointDensityPrediction:
    """Joint density shape of the two endpoint weights of a random edge."""
    if w_u < 1 or w_v < 1:
        raise ParameterError("weights must be >= 1")
    lo, hi = min(w_u, w_v), max(w_u, w_v)
    if lo ** sigma * hi <= n:
        return JointDensityPrediction("sub_cutoff",
                                      lo ** (sigma - tau) * hi ** (1.0 - tau))
    return JointDensityPrediction("above_cutoff", n * (w_u * w_v) ** (-tau))


@dataclass(frozen=True)
class PearsonScaling:
    sign: int
    exponent: float
    in_hypothesis: bool


def predicted_pearson_scaling(n: int, tau: float) -> PearsonScaling:
    """Pearson coefficient scale -n^(-(tau-2)/(tau-1)), valid for 2<tau<7/3."""
    exponent = -(tau - 2.0) / (tau - 1.0)
    return PearsonScaling(sign=-1, exponent=exponent,
                          in_hypothesis=2.0 < tau < 7.0 / 3.0)


def rgg_expected_intersection_fraction(d: int) -> float:
    """Expected shared fraction of two connected vertices' influence boxes."""
    if d < 1:
        raise ParameterError("d must be >= 1")
    return 0.75 ** d


def monte_carlo_intersection_fraction(d: int, samples: int, rng=None):
    """Monte Carlo estimate of the expected box-intersection fraction.

    A connected neighbor's per-coordinate offset is uniform within the
    threshold radius; each coordinate then shares fraction 1 - |offset|/(2r)
    of the box side, and the volume fraction is the product.  The ratio is
    scale free, so the radius drops out.  Returns (estimate, stderr).
    """
    if samples < 1000:
        raise ParameterError("use at least 1000 samples")
    rng = as_generator(rng)
    rel_offsets = rng.random((samples, d))  # |offset| / r, uniform on [0,1)
    fractions = (1.0 - rel_offsets / 2.0).prod(axis=1)
    return float(fractions.mean()), float(fractions.std(ddof=1) / math.sqrt(samples))


@dataclass(frozen=True)
class RggDegreeReport:
    ks: np.ndarray
    mean_neighbor_degree: np.ndarray
    sample_sizes: np.ndarray
    predicted: np.ndarray
    slope: float
    slope_p_one_sided: float
    slope_positive: bool
    mean_at_k: float
    predicted_at_k: float
    at_k_within_3se: bool
    inconclusive: bool


def rgg_conditional_degree_check(n: int, d: int, r: float, k: int,
                                 replicates: int, rng=None,
                                 k_range=(3, 25)) -> RggDegreeReport:
    """Simulate RGGs and test the conditional neighbor-degree law.

    For vertices u of degree k, the mean degree of a random neighbor should
    be 1 + (k-1)(3/4)^d + (n-1-k)(2r)^d (1-(3/4)^d), and in particular
    increase in k.  Checks the regression slope over ``k_range`` and the
    prediction at the requested ``k`` within 3 standard errors.
    """
    rng = as_generator(rng)
    lo, hi = k_range
    sums = np.zeros(hi - lo + 1)
    sqs = np.zeros(hi - lo + 1)
    cnt = np.zeros(hi - lo + 1, dtype=np.int64)
    for _ in range(replicates):
        g = generate_rgg(n, d, r, rng=rng)
        if g.m == 0:
            continue
        deg = g.degrees
        # per-vertex mean neighbor degree == random-neighbor sampling in expectation
        nbr_sum = np.zeros(n)
        np.add.at(nbr_sum, g.edges[:, 0], deg[g.edges[:, 1]])
        np.add.at(nbr_sum, g.edges[:, 1], deg[g.edges[:, 0]])
        with np.errstate(invalid="ignore"):
            mean_nbr = nbr_sum / deg
        sel = (deg >= lo) & (deg <= hi)
        idx = deg[sel] - lo
        np.add.at(sums, idx, mean_nbr[sel])
        np.add.at(sqs, idx, mean_nbr[sel] ** 2)
        np.add.at(cnt, idx, 1)
    ks = np.arange(lo, hi + 1)
    have = cnt >= 10
    if have.sum() < 5 or not (lo <= k <= hi) or cnt[k - lo] < 10:
        return RggDegreeReport(ks, np.full(len(ks), np.nan), cnt,
                               np.full(len(ks), np.nan), np.nan, np.nan,
                               False, np.nan, np.nan, False, True)
    mean = np.where(cnt > 0, sums / np.maximum(cnt, 1), np.nan)
    share = rgg_expected_intersection_fraction(d)
    vol = (2.0 * r) ** d
    predicted = 1.0 + (ks - 1) * share + (n - 1 - ks) * vol * (1.0 - share)
    fit = stats.linregress(ks[have], mean[have])
    slope_positive = fit.slope > 0
    p_one_sided = fit.pvalue / 2.0 if slope_positive else 1.0 - fit.pvalue / 2.0
    se = np.sqrt(np.maximum(sqs / np.maximum(cnt, 1) - mean ** 2, 0)
                 / np.maximum(cnt, 1))
    at = k - lo
    within = abs(mean[at] - predicted[at]) <= 3.0 * max(se[at], 1e-12)
    return RggDegreeReport(ks=ks, mean_neighbor_degree=mean, sample_sizes=cnt,
                           predicted=predicted, slope=float(fit.slope),
                           slope_p_one_sided=float(p_one_sided),
                           slope_positive=bool(slope_positive),
                           mean_at_k=float(mean[at]),
                           predicted_at_k=float(predicted[at]),
                           at_k_within_3se=bool(within), inconclusive=False)


def monte_carlo_expected_degree(params: ModelParams, w: float, samples: int,
                                rng=None, scale: float = 1.0) -> float:
    """Expected degree of a planted weight-w vertex, by simulation.

    Draws partner weights (and positions for geometric models) and averages
    edge indicators, scaled by n - 1.
    """
    if w < 1:
        raise ParameterError("w must be >= 1")
    rng = as_generator(rng)
    partners = sample_weights(samples, params.tau, rng)
    total = params.n * (params.tau - 1.0) / (params.tau - 2.0)  # n * E[w]
    if params.is_geometric:
        diff = np.abs(rng.random((samples, params.dim))
                      - rng.random((samples, params.dim)))
        dist = np.minimum(diff, 1.0 - diff).max(axis=1)
    else:
        dist = None
    p = connection_probability(w, partners, dist, params, scale, total)
    hits = rng.random(samples) < p
    return float(hits.mean() * (params.n - 1))


def loglog_slope(x, y, fit_range=None):
    """Least-squares slope of (ln x, ln y); returns (slope, stderr).

    Points with y <= 0 are dropped; ``fit_range`` restricts x to
    [lo, hi].  Requires at least 5 surviving points.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    keep = (y > 0) & (x > 0)
    if fit_range is not None:
        keep &= (x >= fit_range[0]) & (x <= fit_range[1])
    if keep.sum() < 5:
        raise ParameterError("need at least 5 positive points in range")
    lx = np.log(x[keep])
    ly = np.log(y[keep])
    fit = stats.linregress(lx, ly)
    return float(fit.slope), float(fit.stderr)
