"""Exact sampling from generalized Gaussian densities.

A draw factorizes as x = r * u with u uniform on the unit sphere and r from
the radial law implied by the polar reduction dx = r^{n-1} dr du. Writing
a = n/alpha, the radial law has three branches:

    q > 1:  t = gamma (q-1) r^alpha  ~  Beta(a, 1/(q-1) + 1)
    q = 1:  gamma r^alpha            ~  Gamma(a)
    q < 1:  t = gamma (1-q) r^alpha  ~  BetaPrime(a, 1/(1-q) - a)

These laws were validated against direct quadrature of the radial density
(Kolmogorov-Smirnov distance well below 3/sqrt(count)) before being frozen
here. Radii come from the inverse regularized incomplete Beta/Gamma functions,
which are accurate to ~1e-12, so sampling is exact up to floating point and
fully reproducible: identical (params, count, seed) give identical batches.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import special as _special

from .errors import DomainError
from .qgaussian import BRANCH_TOL, QGaussianParams

__all__ = [
    "RNG_ALGORITHM",
    "SampleBatch",
    "sample",
    "empirical_moment",
    "radial_cdf",
    "radial_quantile",
    "radial_tail_mass",
]

# pinned generator; batches are reproducible across platforms for a fixed seed
RNG_ALGORITHM = "PCG64"


@dataclass(frozen=True, eq=False)
class SampleBatch:
    """A reproducible batch of draws, points shaped (count, n)."""

    params_echo: QGaussianParams
    seed: int
    points: np.ndarray
    count: int
    rng_algorithm: str = RNG_ALGORITHM


def _law_parameters(params: QGaussianParams):
    a = params.n / params.alpha
    if abs(params.q - 1.0) < BRANCH_TOL:
        return "gamma", a, None
    if params.q > 1.0:
        return "beta", a, 1.0 / (params.q - 1.0) + 1.0
    return "betaprime", a, 1.0 / (1.0 - params.q) - a


def radial_quantile(params: QGaussianParams, u):
    """Radius below which a fraction u of the mass lies (vectorized in u)."""
    u = np.asarray(u, dtype=float)
    if np.any((u < 0) | (u > 1)):
        raise DomainError("quantile level must lie in [0, 1]")
    law, a, b = _law_parameters(params)
    alpha, gamma, q = params.alpha, params.gamma, params.q
    if law == "gamma":
        t = _special.gammaincinv(a, u)
        r = (t / gamma) ** (1.0 / alpha)
    elif law == "beta":
        t = _special.betaincinv(a, b, u)
        r = (t / (gamma * (q - 1.0))) ** (1.0 / alpha)
    else:
        x = _special.betaincinv(a, b, u)
        t = x / (1.0 - x)
        r = (t / (gamma * (1.0 - q))) ** (1.0 / alpha)
    return r if r.ndim else float(r)


def radial_cdf(params: QGaussianParams, r):
    """Probability that a draw has radius at most r (vectorized in r)."""
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise DomainError("radius must be nonnegative")
    law, a, b = _law_parameters(params)
    alpha, gamma, q = params.alpha, params.gamma, params.q
    if law == "gamma":
        out = _special.gammainc(a, gamma * r**alpha)
    elif law == "beta":
        t = np.minimum(gamma * (q - 1.0) * r**alpha, 1.0)
        out = _special.betainc(a, b, t)
    else:
        t = gamma * (1.0 - q) * r**alpha
        out = _special.betainc(a, b, t / (1.0 + t))
    return out if out.ndim else float(out)


def radial_tail_mass(params: QGaussianParams, r: float) -> float:
    """Mass beyond radius r, computed stably even when it is tiny."""
    if r < 0:
        raise DomainError("radius must be nonnegative")
    law, a, b = _law_parameters(params)
    alpha, gamma, q = params.alpha, params.gamma, params.q
    if law == "gamma":
        return float(_special.gammaincc(a, gamma * r**alpha))
    if law == "beta":
        t = min(gamma * (q - 1.0) * r**alpha, 1.0)
        # complement identity keeps precision when the tail is tiny
        return float(_special.betainc(b, a, 1.0 - t))
    t = gamma * (1.0 - q) * r**alpha
    return float(_special.betainc(b, a, 1.0 / (1.0 + t)))


def sample(params: QGaussianParams, count: int, seed: int) -> SampleBatch:
    """Draw an exact, reproducible batch of points from the density.

    The stream order is fixed: first ``count`` uniforms for the radii, then
    ``count * n`` standard normals for the directions.
    """
    if int(count) != count or count < 1:
        raise DomainError(f"count must be a positive integer, got {count!r}")
    count = int(count)
    try:
        rng = np.random.Generator(np.random.PCG64(seed))
    except (ValueError, TypeError) as exc:
        raise DomainError(f"invalid seed {seed!r}: {exc}") from exc
    radii = radial_quantile(params, rng.random(count))
    direction = rng.standard_normal((count, params.n))
    norms = np.linalg.norm(direction, axis=1)
    degenerate = norms == 0.0
    if np.any(degenerate):
        direction[degenerate, 0] = 1.0
        norms[degenerate] = 1.0
    points = np.asarray(radii)[:, None] * (direction / norms[:, None])
    return SampleBatch(
        params_echo=params,
        seed=int(seed),
        points=np.ascontiguousarray(points),
        count=count,
    )


def empirical_moment(batch: SampleBatch, alpha: float) -> tuple[float, float]:
    """Monte Carlo estimate of m_alpha = E|x|^alpha and its standard error."""
    if alpha <= 0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    if batch.count < 1 or batch.points.shape[0] != batch.count:
        raise DomainError("batch is empty or inconsistent")
    values = np.linalg.norm(batch.points, axis=1) ** alpha
    estimate = float(np.mean(values))
    if batch.count == 1:
        return estimate, 0.0
    std_error = float(np.std(values, ddof=1) / math.sqrt(batch.count))
    return estimate, std_error
