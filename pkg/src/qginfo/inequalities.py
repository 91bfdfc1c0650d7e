"""Sharp information inequalities for radially symmetric densities.

Four comparisons are implemented, each reported as lhs/rhs with the convention
that the inequality states lhs >= rhs, equality exactly on generalized
Gaussians:

    fisher-moment-entropy:  I^{1/beta} m^{1/alpha}          >= (n/q) M_q[f]
    moment-entropy:         m^{1/alpha} / N^{1/n}           >= same at the extremal density
    stam:                   N * I^{n/(beta lam)}            >= same at the extremal density
    cramer-rao:             I^{1/(beta lam)} m^{1/alpha}    >= same at the extremal density

with lam = n(q-1) + 1. The right sides of the last three are evaluated on the
closed-form gamma = 1 family member; all four products are scale invariant, so
that choice is immaterial. The Cramer-Rao ratio factorizes exactly as
(moment-entropy ratio) * (Stam ratio)^{1/n}, which check_cramer_rao verifies
internally on every call; at n = 1 this is the literal term-by-term product of
the other two comparisons.

Measurement routing: a density tagged as a family member with matching
(alpha, q) is measured by closed forms; anything else goes through quadrature.
"""

import math
from dataclasses import dataclass
from typing import Mapping

from .errors import DomainError
from .measures import (
    CLOSED_FORM,
    QUADRATURE,
    RadialDensity,
    quad_Mq,
    quad_fisher,
    quad_moment,
    quad_shannon,
)
from .qgaussian import (
    BRANCH_TOL,
    QGaussianParams,
    closed_Mq,
    closed_fisher,
    closed_moment_alpha,
    entropy_power,
)

__all__ = [
    "INEQUALITY_NAMES",
    "InequalityReport",
    "check_fisher_moment_entropy",
    "check_moment_entropy",
    "check_stam",
    "check_cramer_rao",
    "check_all",
]

INEQUALITY_NAMES = ("fisher-moment-entropy", "moment-entropy", "stam", "cramer-rao")

DEFAULT_REL_TOL = 1e-6
DEFAULT_EQ_TOL = 1e-5


@dataclass(frozen=True)
class InequalityReport:
    """Outcome of one inequality evaluation on one density.

    ``passes`` means ratio >= 1 - rel_tol; ``equality`` means |deficit| <=
    eq_tol; ``params_echo`` is (n, alpha, beta, q, lam); ``gamma`` is set when
    the density is a tagged family member.
    """

    name: str
    lhs: float
    rhs: float
    ratio: float
    deficit: float
    passes: bool
    equality: bool
    params_echo: tuple
    density_descriptor: str
    tolerances: tuple
    method_tags: Mapping[str, str]
    gamma: float | None = None

    def as_dict(self) -> dict:
        n, alpha, beta, q, lam = self.params_echo
        params = {"n": n, "alpha": alpha, "beta": beta, "q": q, "lambda": lam}
        if self.gamma is not None:
            params["gamma"] = self.gamma
        return {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "ratio": self.ratio,
            "deficit": self.deficit,
            "passes": self.passes,
            "equality": self.equality,
            "params": params,
            "density": self.density_descriptor,
            "tolerances": {"rel_tol": self.tolerances[0], "eq_tol": self.tolerances[1]},
            "method_tags": dict(self.method_tags),
        }


class _MeasureBackend:
    """Lazily computes exactly the measures a check needs, closed or quadrature."""

    def __init__(self, f: RadialDensity, alpha: float, q: float, rel_tol: float):
        self.f = f
        self.alpha = alpha
        self.q = q
        self.rel_tol = rel_tol
        fam = f.family
        self.params = None
        if (
            isinstance(fam, QGaussianParams)
            and math.isclose(fam.alpha, alpha, rel_tol=1e-12)
            and math.isclose(fam.q, q, rel_tol=1e-12, abs_tol=1e-15)
        ):
            self.params = fam
        self.tag = CLOSED_FORM if self.params is not None else QUADRATURE
        self._cache: dict = {}

    @property
    def gamma(self) -> float | None:
        return self.params.gamma if self.params is not None else None

    def _get(self, key, closed, quad):
        if key not in self._cache:
            self._cache[key] = closed() if self.params is not None else quad()
        return self._cache[key]

    def Mq(self) -> float:
        return self._get(
            "Mq",
            lambda: closed_Mq(self.params),
            lambda: quad_Mq(self.f, self.q, rel_tol=self.rel_tol),
        )

    def Nq(self) -> float:
        def quad() -> float:
            if abs(self.q - 1.0) < BRANCH_TOL:
                return math.exp(quad_shannon(self.f, rel_tol=self.rel_tol))
            return self.Mq() ** (1.0 / (1.0 - self.q))

        return self._get("Nq", lambda: entropy_power(self.params), quad)

    def m_alpha(self) -> float:
        return self._get(
            "m_alpha",
            lambda: closed_moment_alpha(self.params),
            lambda: quad_moment(self.f, self.alpha, rel_tol=self.rel_tol),
        )

    def I_bq(self) -> float:
        beta = self.alpha / (self.alpha - 1.0)
        return self._get(
            "I_bq",
            lambda: closed_fisher(self.params),
            lambda: quad_fisher(self.f, beta, self.q, rel_tol=self.rel_tol),
        )


def _require(condition: bool, message: str):
    if not condition:
        raise DomainError(message)


def _beta_of(alpha: float, name: str) -> float:
    _require(
        alpha > 1,
        f"{name} requires alpha > 1 so the conjugate exponent beta is finite, got alpha = {alpha:g}",
    )
    return alpha / (alpha - 1.0)


def _mq_bound(n: int, alpha: float, q: float, name: str):
    bound = n / (n + alpha)
    _require(q > bound, f"{name} requires q > n/(n+alpha) = {bound:g}, got q = {q:g}")


def _stam_bounds(n: int, alpha: float, q: float, name: str):
    lo_dim = (n - 1) / n
    lo_mq = n / (n + alpha)
    if lo_dim >= lo_mq:
        _require(q > lo_dim, f"{name} requires q > (n-1)/n = {lo_dim:g}, got q = {q:g}")
    else:
        _require(q > lo_mq, f"{name} requires q > n/(n+alpha) = {lo_mq:g}, got q = {q:g}")


def _report(name, lhs, rhs, backend, lam, rel_tol, eq_tol, used) -> InequalityReport:
    ratio = lhs / rhs
    deficit = ratio - 1.0
    beta = backend.alpha / (backend.alpha - 1.0) if backend.alpha > 1 else math.inf
    return InequalityReport(
        name=name,
        lhs=float(lhs),
        rhs=float(rhs),
        ratio=float(ratio),
        deficit=float(deficit),
        passes=bool(ratio >= 1.0 - rel_tol),
        equality=bool(abs(deficit) <= eq_tol),
        params_echo=(backend.f.dim, backend.alpha, beta, backend.q, lam),
        density_descriptor=backend.f.descriptor,
        tolerances=(rel_tol, eq_tol),
        method_tags={key: backend.tag for key in used},
        gamma=backend.gamma,
    )


def check_fisher_moment_entropy(
    f: RadialDensity,
    alpha: float,
    q: float,
    *,
    rel_tol: float = DEFAULT_REL_TOL,
    eq_tol: float = DEFAULT_EQ_TOL,
) -> InequalityReport:
    """I^{1/beta} m^{1/alpha} >= (n/q) M_q, both sides on the given density.

    Assumes the boundary decay r^n f_r(r)^q -> 0, which is the caller's
    obligation; it holds for every density this package constructs.
    """
    n = f.dim
    beta = _beta_of(alpha, "fisher-moment-entropy")
    _require(q > 0, f"fisher-moment-entropy requires q > 0, got q = {q:g}")
    _mq_bound(n, alpha, q, "fisher-moment-entropy")
    backend = _MeasureBackend(f, alpha, q, rel_tol=1e-8)
    lhs = backend.I_bq() ** (1.0 / beta) * backend.m_alpha() ** (1.0 / alpha)
    rhs = (n / q) * backend.Mq()
    lam = n * (q - 1.0) + 1.0
    return _report(
        "fisher-moment-entropy", lhs, rhs, backend, lam, rel_tol, eq_tol,
        used=("I_bq", "m_alpha", "Mq"),
    )


def check_moment_entropy(
    f: RadialDensity,
    alpha: float,
    q: float,
    *,
    rel_tol: float = DEFAULT_REL_TOL,
    eq_tol: float = DEFAULT_EQ_TOL,
) -> InequalityReport:
    """m^{1/alpha}/N^{1/n} on the density >= the same on the extremal member."""
    n = f.dim
    _require(alpha > 0, f"moment-entropy requires alpha > 0, got alpha = {alpha:g}")
    _mq_bound(n, alpha, q, "moment-entropy")
    backend = _MeasureBackend(f, alpha, q, rel_tol=1e-8)
    extremal = QGaussianParams(n=n, alpha=alpha, q=q, gamma=1.0)
    lhs = backend.m_alpha() ** (1.0 / alpha) / backend.Nq() ** (1.0 / n)
    rhs = closed_moment_alpha(extremal) ** (1.0 / alpha) / entropy_power(extremal) ** (1.0 / n)
    lam = n * (q - 1.0) + 1.0
    return _report(
        "moment-entropy", lhs, rhs, backend, lam, rel_tol, eq_tol,
        used=("m_alpha", "Nq"),
    )


def check_stam(
    f: RadialDensity,
    alpha: float,
    q: float,
    *,
    rel_tol: float = DEFAULT_REL_TOL,
    eq_tol: float = DEFAULT_EQ_TOL,
) -> InequalityReport:
    """N * I^{n/(beta lam)} on the density >= the same on the extremal member."""
    n = f.dim
    beta = _beta_of(alpha, "stam")
    _stam_bounds(n, alpha, q, "stam")
    backend = _MeasureBackend(f, alpha, q, rel_tol=1e-8)
    extremal = QGaussianParams(n=n, alpha=alpha, q=q, gamma=1.0)
    lam = n * (q - 1.0) + 1.0
    expo = n / (beta * lam)
    lhs = backend.Nq() * backend.I_bq() ** expo
    rhs = entropy_power(extremal) * closed_fisher(extremal) ** expo
    return _report("stam", lhs, rhs, backend, lam, rel_tol, eq_tol, used=("Nq", "I_bq"))


def check_cramer_rao(
    f: RadialDensity,
    alpha: float,
    q: float,
    *,
    rel_tol: float = DEFAULT_REL_TOL,
    eq_tol: float = DEFAULT_EQ_TOL,
) -> InequalityReport:
    """I^{1/(beta lam)} m^{1/alpha} on the density >= the same on the extremal member.

    Every call also recomputes the ratio as (moment-entropy ratio) times the
    n-th root of the (Stam ratio) from the same measure values and insists the
    two agree to 1e-9; the factorization is the proof structure of the bound.
    """
    n = f.dim
    beta = _beta_of(alpha, "cramer-rao")
    _stam_bounds(n, alpha, q, "cramer-rao")
    backend = _MeasureBackend(f, alpha, q, rel_tol=1e-8)
    extremal = QGaussianParams(n=n, alpha=alpha, q=q, gamma=1.0)
    lam = n * (q - 1.0) + 1.0
    expo = 1.0 / (beta * lam)
    I_f, m_f, N_f = backend.I_bq(), backend.m_alpha(), backend.Nq()
    I_g = closed_fisher(extremal)
    m_g = closed_moment_alpha(extremal)
    N_g = entropy_power(extremal)
    lhs = I_f**expo * m_f ** (1.0 / alpha)
    rhs = I_g**expo * m_g ** (1.0 / alpha)
    ratio = lhs / rhs
    me_ratio = (m_f ** (1.0 / alpha) / N_f ** (1.0 / n)) / (m_g ** (1.0 / alpha) / N_g ** (1.0 / n))
    stam_ratio = (N_f * I_f ** (n * expo)) / (N_g * I_g ** (n * expo))
    recomposed = me_ratio * stam_ratio ** (1.0 / n)
    if abs(recomposed - ratio) > 1e-9 * abs(ratio):
        raise ArithmeticError(
            "cramer-rao factorization check failed: "
            f"ratio {ratio!r} vs moment-entropy * stam^(1/n) {recomposed!r}"
        )
    return _report(
        "cramer-rao", lhs, rhs, backend, lam, rel_tol, eq_tol,
        used=("I_bq", "m_alpha", "Nq"),
    )


_CHECKS = {
    "fisher-moment-entropy": check_fisher_moment_entropy,
    "moment-entropy": check_moment_entropy,
    "stam": check_stam,
    "cramer-rao": check_cramer_rao,
}


def check_all(
    f: RadialDensity,
    alpha: float,
    q: float,
    *,
    rel_tol: float = DEFAULT_REL_TOL,
    eq_tol: float = DEFAULT_EQ_TOL,
    names=INEQUALITY_NAMES,
) -> list[InequalityReport]:
    """Run the named checks in order; preconditions propagate as DomainError."""
    return [_CHECKS[name](f, alpha, q, rel_tol=rel_tol, eq_tol=eq_tol) for name in names]
