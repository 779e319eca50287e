"""Area-growth Liouville criteria and the sigma differential inequality.

The engine rests on one scalar comparison: a nonconstant supersolution of
the homogeneous inequality forces

    (p-1)/(gamma-(p-1)) * sigma(R)^(-e)  >=  C * int_R^r area(dB_t)^(-e) dt,

with e = (gamma-(p-1))/(p-1) and sigma(R) the gradient energy of a ball.
If the right side grows past the (finite, R-only) left side as r -> inf,
no nonconstant supersolution can exist. Divergence of the area integral
is therefore the Liouville criterion; in Euclidean space, where
area(dB_t) grows like t^(dim-1), it reduces to the closed-form threshold

    gamma <= gamma* = dim (p-1)/(dim-1),

and that reduction is kept structural here: the Euclidean classifier and
the analytic area test share one predicate, so the phase diagrams agree
identically, float ties included.

Above the threshold the classifier produces explicit nonconstant
witnesses (entire power profiles for gamma > p, scaled bumps for
gamma < p); at gamma = p the known construction is logarithmic and is
not fabricated here, so the verdict carries a witness-unavailable note.

The comparison constant is normalization-dependent; this module fixes
C = (c_H/nu)^(gamma/(gamma-(p-1))) * (gamma-(p-1))/(p-1), one admissible
outcome of the Holder/Young step, and everything downstream treats rhs
as proportional to C rather than relying on its absolute size.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from .errors import DomainExceeded, PreconditionViolation
from .params import ProblemParams, liouville_threshold
from .radial import (
    BumpProfile,
    PLaplacian,
    RadialProfile,
    ResidualReport,
    bump_profile_scale,
    nonconstant_entire_profile,
    residual_scan,
)

__all__ = [
    "AreaProfile",
    "EuclideanArea",
    "PowerArea",
    "ExponentialArea",
    "SampledArea",
    "IntegralVerdict",
    "Verdict",
    "Mechanism",
    "LiouvilleVerdict",
    "SigmaBoundReport",
    "power_area_diverges",
    "area_condition_test",
    "sigma_lower_bound",
    "find_contradiction_radius",
    "liouville_classify_euclidean",
    "liouville_classify_manifold",
    "verify_euclidean_witness",
]


def _unit_ball_volume(dim: int) -> float:
    return math.pi ** (dim / 2.0) / math.gamma(dim / 2.0 + 1.0)


# ---------------------------------------------------------------------------
# Area profiles
# ---------------------------------------------------------------------------


class AreaProfile:
    """Growth law t -> area(dB_t), split as coefficient * shape(t).

    The split lets closed-form integrals factor the constant out of the
    comparison integral, which is what the reference identities pin down.
    """

    coefficient: float

    def area(self, t):
        raise NotImplementedError


@dataclass(frozen=True)
class EuclideanArea(AreaProfile):
    """area(dB_t) = dim * omega_dim * t^(dim-1)."""

    dim: int

    def __post_init__(self):
        if self.dim < 2 or self.dim != int(self.dim):
            raise PreconditionViolation(f"dim must be an integer >= 2, got {self.dim}")

    @property
    def coefficient(self) -> float:
        return self.dim * _unit_ball_volume(self.dim)

    @property
    def shape_power(self) -> float:
        return float(self.dim - 1)

    def area(self, t):
        return self.coefficient * np.asarray(t, dtype=float) ** self.shape_power


@dataclass(frozen=True)
class PowerArea(AreaProfile):
    """area(dB_t) = amplitude * t^beta."""

    amplitude: float
    beta: float

    def __post_init__(self):
        if not self.amplitude > 0:
            raise PreconditionViolation("area amplitude must be positive")

    @property
    def coefficient(self) -> float:
        return self.amplitude

    @property
    def shape_power(self) -> float:
        return self.beta

    def area(self, t):
        return self.amplitude * np.asarray(t, dtype=float) ** self.beta


@dataclass(frozen=True)
class ExponentialArea(AreaProfile):
    """area(dB_t) = amplitude * exp(kappa t), the hyperbolic model growth."""

    amplitude: float
    kappa: float

    def __post_init__(self):
        if not self.amplitude > 0:
            raise PreconditionViolation("area amplitude must be positive")

    @property
    def coefficient(self) -> float:
        return self.amplitude

    def area(self, t):
        return self.amplitude * np.exp(self.kappa * np.asarray(t, dtype=float))


@dataclass(eq=False)
class SampledArea(AreaProfile):
    """Tabulated area data; decisions from it are heuristic at best."""

    grid: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        self.grid = np.asarray(self.grid, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.grid.ndim != 1 or self.grid.size < 2:
            raise PreconditionViolation("sampled area needs at least 2 nodes")
        if self.values.shape != self.grid.shape:
            raise PreconditionViolation("grid and values must have equal length")
        if not np.all(np.diff(self.grid) > 0):
            raise PreconditionViolation("sampled area grid must be strictly increasing")
        if not np.all(self.values > 0):
            raise PreconditionViolation("area values must be strictly positive")

    @property
    def coefficient(self) -> float:
        return 1.0

    def area(self, t):
        t = np.asarray(t, dtype=float)
        if np.any(t > self.grid[-1] * (1.0 + 1e-12)) or np.any(t < self.grid[0]):
            raise DomainExceeded("sampled area queried outside its grid")
        return np.interp(t, self.grid, self.values)


# ---------------------------------------------------------------------------
# Verdict vocabulary
# ---------------------------------------------------------------------------


class IntegralVerdict(Enum):
    DIVERGENT = "DIVERGENT"
    CONVERGENT = "CONVERGENT"
    INCONCLUSIVE = "INCONCLUSIVE"


class Verdict(Enum):
    LIOUVILLE = "LIOUVILLE"
    NO_LIOUVILLE = "NO_LIOUVILLE"
    INCONCLUSIVE = "INCONCLUSIVE"


class Mechanism(Enum):
    CLOSED_FORM_THRESHOLD = "CLOSED_FORM_THRESHOLD"
    AREA_INTEGRAL_DIVERGES = "AREA_INTEGRAL_DIVERGES"
    COUNTEREXAMPLE_WITNESS = "COUNTEREXAMPLE_WITNESS"
    AREA_INTEGRAL_CONVERGES = "AREA_INTEGRAL_CONVERGES"


@dataclass(eq=False)
class LiouvilleVerdict:
    verdict: Verdict
    mechanism: Optional[Mechanism]
    dim: Optional[int]
    p: float
    gamma: float
    gamma_star: Optional[float]
    c_h: float = 1.0
    witness: Optional[RadialProfile] = None
    witness_note: Optional[str] = None


# ---------------------------------------------------------------------------
# Area integral test
# ---------------------------------------------------------------------------


def _comparison_exponent(p: float, gamma: float) -> float:
    if not p > 1:
        raise PreconditionViolation(f"p must exceed 1, got {p}")
    if not gamma > p - 1:
        raise PreconditionViolation(f"gamma must exceed p - 1 = {p - 1}, got {gamma}")
    return (gamma - (p - 1)) / (p - 1)


def power_area_diverges(beta: float, p: float, gamma: float) -> bool:
    """Whether int^inf (t^beta)^(-e) dt diverges, e = (gamma-(p-1))/(p-1).

    The borderline beta*e = 1 is the logarithmic case and counts as
    divergent. This single predicate backs both the analytic area test
    and the Euclidean threshold classification, which keeps the two
    phase diagrams identical by construction.
    """
    _comparison_exponent(p, gamma)
    return beta * (gamma - (p - 1)) <= (p - 1)


def area_condition_test(
    profile: AreaProfile,
    p: float,
    gamma: float,
    t_start: float = 1.0,
    mode: str = "analytic",
    max_doublings: int = 256,
) -> IntegralVerdict:
    """Decide int_{t_start}^inf area(dB_t)^(-e) dt = +inf or < inf.

    Analytic mode is exact for the closed-form families and refuses to
    guess for sampled data. Numeric mode integrates over doubling
    segments: three consecutive increments below 1e-12 of the running
    total mean convergence, increment ratios pinned at 1 (>= 0.999) mean
    divergence, anything else is inconclusive.
    """
    e = _comparison_exponent(p, gamma)
    if not t_start > 0:
        raise PreconditionViolation("t_start must be positive")
    if mode == "analytic":
        if isinstance(profile, (EuclideanArea, PowerArea)):
            beta = profile.shape_power
            return (
                IntegralVerdict.DIVERGENT
                if power_area_diverges(beta, p, gamma)
                else IntegralVerdict.CONVERGENT
            )
        if isinstance(profile, ExponentialArea):
            return (
                IntegralVerdict.CONVERGENT
                if profile.kappa > 0
                else IntegralVerdict.DIVERGENT
            )
        return IntegralVerdict.INCONCLUSIVE
    if mode != "numeric":
        raise PreconditionViolation(f"mode must be 'analytic' or 'numeric', got {mode!r}")

    def integrand(t):
        return float(profile.area(t)) ** (-e)

    total = 0.0
    increments = []
    T = t_start
    for _ in range(max_doublings):
        upper = 2.0 * T
        if isinstance(profile, SampledArea) and upper > profile.grid[-1]:
            return IntegralVerdict.INCONCLUSIVE
        with warnings.catch_warnings():
            # Late doublings integrate over [T, 2T] with T ~ 1e70; quad's
            # roundoff complaint there is expected and harmless for a
            # heuristic probe that only compares segment ratios.
            warnings.simplefilter("ignore", IntegrationWarning)
            seg, _ = quad(integrand, T, upper, limit=200)
        total += seg
        increments.append(seg)
        if len(increments) >= 3 and total > 0:
            last3 = increments[-3:]
            if all(s <= 1e-12 * total for s in last3):
                return IntegralVerdict.CONVERGENT
            ratios = [
                last3[i + 1] / last3[i] for i in range(2) if last3[i] > 0
            ]
            if len(ratios) == 2 and all(rho >= 0.999 for rho in ratios):
                return IntegralVerdict.DIVERGENT
        T = upper
    return IntegralVerdict.INCONCLUSIVE


# ---------------------------------------------------------------------------
# Sigma lower bound
# ---------------------------------------------------------------------------


@dataclass(eq=False)
class SigmaBoundReport:
    R: float
    r: float
    sigma_R: float
    lhs: float
    rhs: float
    constant_C: float
    comparison_integral: float
    coefficient: float
    exponent_e: float
    weight: str
    contradiction: bool

    @property
    def area_integral(self) -> float:
        """int_R^r area(dB_t)^(-e) dt, constants included, C excluded."""
        return self.coefficient**-self.exponent_e * self.comparison_integral


def _power_integral(x: float, R: float, r: float) -> float:
    """int_R^r t^(-x) dt, stable through the logarithmic point x = 1."""
    if r == R:
        return 0.0
    one_minus = 1.0 - x
    log_ratio = math.log(r / R)
    if one_minus == 0.0:
        return log_ratio
    return R**one_minus * math.expm1(one_minus * log_ratio) / one_minus


def sigma_lower_bound(
    sigma_R: float,
    params: ProblemParams,
    profile: AreaProfile,
    R: float,
    r: float,
    weight: str = "none",
) -> SigmaBoundReport:
    """Both sides of the comparison sigma(R)^(-e)/e >= C int_R^r area^(-e).

    ``weight`` tags the exponentially weighted variant of the energy (the
    e^(-u) multiplier trick for nonnegative supersolutions); the weighted
    chain produces the identical comparison integral, so the numbers here
    do not change, only the report's provenance field.
    """
    if not sigma_R > 0:
        raise PreconditionViolation("sigma_R must be positive (nonconstant hypothesis)")
    if not 0 < R <= r:
        raise PreconditionViolation(f"need 0 < R <= r, got R={R}, r={r}")
    if weight not in ("none", "exp"):
        raise PreconditionViolation(f"weight must be 'none' or 'exp', got {weight!r}")
    e = _comparison_exponent(params.p, params.gamma)
    lhs = sigma_R**-e / e

    if isinstance(profile, (EuclideanArea, PowerArea)):
        comparison = _power_integral(profile.shape_power * e, R, r)
    elif isinstance(profile, ExponentialArea):
        ke = profile.kappa * e
        if ke == 0.0:
            comparison = r - R
        else:
            comparison = (math.exp(-ke * R) - math.exp(-ke * r)) / ke
    else:
        if r > profile.grid[-1] * (1.0 + 1e-12):
            raise DomainExceeded("comparison integral extends beyond the sampled area")
        comparison, _ = (
            quad(lambda t: float(profile.area(t)) ** (-e), R, r, limit=200)
            if r > R
            else (0.0, 0.0)
        )

    c_h, nu = params.c_h, params.nu
    constant_C = (c_h / nu) ** (params.gamma / (params.gamma - (params.p - 1))) * e
    rhs = constant_C * profile.coefficient**-e * comparison
    return SigmaBoundReport(
        R=R,
        r=r,
        sigma_R=sigma_R,
        lhs=lhs,
        rhs=rhs,
        constant_C=constant_C,
        comparison_integral=comparison,
        coefficient=profile.coefficient,
        exponent_e=e,
        weight=weight,
        contradiction=bool(rhs > lhs),
    )


def find_contradiction_radius(
    sigma_R: float,
    params: ProblemParams,
    profile: AreaProfile,
    R: float,
    max_doublings: int = 200,
) -> Optional[SigmaBoundReport]:
    """Double r from 2R until rhs overtakes lhs; None if it never does.

    A None return on a divergent-area profile just means the doubling
    budget ran out; on a convergent one it is the expected outcome.
    """
    r = 2.0 * R
    for _ in range(max_doublings):
        report = sigma_lower_bound(sigma_R, params, profile, R, r)
        if report.contradiction:
            return report
        r *= 2.0
    return None


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------

_DEFAULT_BUMP_GRID = (0.05, 10.0, 300)
_DEFAULT_ENTIRE_GRID = (0.1, 5.0, 200)


def liouville_classify_euclidean(
    dim: int,
    p: float,
    gamma: float,
    c_h: float = 1.0,
    witness_grid=None,
) -> LiouvilleVerdict:
    """Closed-form classification on R^dim with explicit witnesses.

    LIOUVILLE iff gamma <= gamma* = dim(p-1)/(dim-1) (threshold included);
    otherwise a nonconstant witness is attached: the entire power profile
    for gamma > p, a scaled bump for gamma < p, and a witness-unavailable
    note for gamma = p, whose known construction is logarithmic.
    """
    gamma_star = liouville_threshold(dim, p)
    if not gamma > p - 1:
        raise PreconditionViolation(f"gamma must exceed p - 1 = {p - 1}, got {gamma}")
    if not c_h > 0:
        raise PreconditionViolation(f"c_h must be positive, got {c_h}")
    if power_area_diverges(dim - 1, p, gamma):
        return LiouvilleVerdict(
            verdict=Verdict.LIOUVILLE,
            mechanism=Mechanism.CLOSED_FORM_THRESHOLD,
            dim=dim,
            p=p,
            gamma=gamma,
            gamma_star=gamma_star,
            c_h=c_h,
        )
    if gamma == p:
        return LiouvilleVerdict(
            verdict=Verdict.NO_LIOUVILLE,
            mechanism=Mechanism.COUNTEREXAMPLE_WITNESS,
            dim=dim,
            p=p,
            gamma=gamma,
            gamma_star=gamma_star,
            c_h=c_h,
            witness=None,
            witness_note="WITNESS_UNAVAILABLE",
        )
    if gamma > p:
        witness: RadialProfile = nonconstant_entire_profile(dim, p, gamma, c_h)
    else:
        if witness_grid is None:
            witness_grid = np.linspace(*_DEFAULT_BUMP_GRID)
        c, _ = bump_profile_scale(dim, p, gamma, c_h, witness_grid)
        witness = BumpProfile(c=c, delta=(p - gamma) / (gamma - (p - 1)))
    return LiouvilleVerdict(
        verdict=Verdict.NO_LIOUVILLE,
        mechanism=Mechanism.COUNTEREXAMPLE_WITNESS,
        dim=dim,
        p=p,
        gamma=gamma,
        gamma_star=gamma_star,
        c_h=c_h,
        witness=witness,
    )


def liouville_classify_manifold(
    profile: AreaProfile,
    p: float,
    gamma: float,
    t_start: float = 1.0,
    mode: str = "analytic",
) -> LiouvilleVerdict:
    """Verdict from area growth alone.

    Divergent comparison integral forces constancy. A convergent one
    proves nothing in general and stays INCONCLUSIVE, except on the
    Euclidean profile where the explicit witnesses settle the question.
    """
    test = area_condition_test(profile, p, gamma, t_start=t_start, mode=mode)
    euclidean = isinstance(profile, EuclideanArea)
    dim = profile.dim if euclidean else None
    gamma_star = liouville_threshold(dim, p) if euclidean and 1 < p < dim else None
    if test is IntegralVerdict.DIVERGENT:
        return LiouvilleVerdict(
            verdict=Verdict.LIOUVILLE,
            mechanism=Mechanism.AREA_INTEGRAL_DIVERGES,
            dim=dim,
            p=p,
            gamma=gamma,
            gamma_star=gamma_star,
        )
    if test is IntegralVerdict.CONVERGENT:
        if euclidean and 1 < p < profile.dim:
            return liouville_classify_euclidean(profile.dim, p, gamma)
        return LiouvilleVerdict(
            verdict=Verdict.INCONCLUSIVE,
            mechanism=Mechanism.AREA_INTEGRAL_CONVERGES,
            dim=dim,
            p=p,
            gamma=gamma,
            gamma_star=gamma_star,
        )
    return LiouvilleVerdict(
        verdict=Verdict.INCONCLUSIVE,
        mechanism=None,
        dim=dim,
        p=p,
        gamma=gamma,
        gamma_star=gamma_star,
    )


def verify_euclidean_witness(
    verdict: LiouvilleVerdict,
    grid=None,
) -> tuple:
    """Residual-check a NO_LIOUVILLE witness. Returns (report, ok).

    Bump witnesses are strict supersolutions: one-sided scan, tol 0.
    Entire power witnesses solve the equation with the gradient term on
    the other side of the equality; the divergence part is odd under
    negation, so the scan runs on the negated profile and ok requires
    two-sided cancellation below 1e-8.
    """
    if verdict.witness is None:
        raise PreconditionViolation("verdict carries no witness profile")
    kind = PLaplacian(verdict.p)
    scan_params = ProblemParams(
        dim=verdict.dim, p=verdict.p, gamma=verdict.gamma, lam=0.0, c_h=verdict.c_h
    )
    if isinstance(verdict.witness, BumpProfile):
        if grid is None:
            grid = np.linspace(*_DEFAULT_BUMP_GRID)
        report = residual_scan(kind, verdict.witness, scan_params, None, grid, tol=0.0)
        return report, bool(report.passed)
    if grid is None:
        grid = np.linspace(*_DEFAULT_ENTIRE_GRID)
    report = residual_scan(
        kind, verdict.witness.negated(), scan_params, None, grid, tol=1e-8
    )
    ok = bool(report.passed and report.max_abs_residual <= 1e-8)
    return report, ok
