"""Price-dispersion statics and dynamics.

The one-period recursion, its steady-state derivatives, the linearization
used by the canonical system, and the stochastic-expectation versions of
the derivative formulas.  Wage dispersion follows the same recursion with
(alpha_w, theta_w) in place of (alpha, theta).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, TYPE_CHECKING

from calvobench.model_core import DomainError, ModelParams
from calvobench.steady_state import delta_nss

if TYPE_CHECKING:
    from calvobench.phillips import MomentSet


@dataclass(frozen=True)
class DispersionState:
    delta: float
    pi: float

    def __post_init__(self):
        if self.delta < 1.0:
            raise DomainError("delta", f"price dispersion {self.delta} < 1")


def step_raw(alpha: float, theta: float, delta_prev: float, pi_t: float) -> float:
    """One step of the dispersion recursion for arbitrary (alpha, theta)."""
    g = 1.0 + pi_t
    bracket = 1.0 - alpha * g ** (theta - 1.0)
    if bracket <= 0.0:
        raise DomainError(
            "pi", f"alpha(1+pi)^(theta-1) >= 1 at pi={pi_t}; recursion undefined"
        )
    reset = bracket ** (theta / (theta - 1.0)) / (1.0 - alpha) ** (1.0 / (theta - 1.0))
    return reset + alpha * g**theta * delta_prev


def step(p: ModelParams, delta_prev: float, pi_t: float) -> float:
    """Next-period dispersion given current inflation; result stays >= 1."""
    return step_raw(p.alpha, p.theta, delta_prev, pi_t)


def d_delta_dpi_nss(p: ModelParams, pi: float) -> float:
    """Exact first derivative of steady-state dispersion in trend inflation.

    Zero at zero inflation with sign equal to sign(pi).  Obtained by
    differentiating the closed form, so it matches finite differences of
    compute_nss().delta on any admissible grid.
    """
    a, th = p.alpha, p.theta
    g = 1.0 + pi
    d = delta_nss(p, pi)
    rel_reset = ((1.0 - a * g ** (th - 1.0)) / (1.0 - a)) ** (1.0 / (th - 1.0))
    return a * th * g ** (th - 2.0) / (1.0 - a * g**th) * (g * d - rel_reset)


def d2_delta_dpi2_nss(p: ModelParams, pi: float) -> float:
    """Curvature of the dispersion schedule, alpha*theta*(1+pi)^(theta-2)
    * Delta / (1-alpha(1+pi)^(theta-1))^(1/(theta-1)); positive for pi >= 0.

    At pi=0 this equals the coefficient on squared inflation in the Taylor
    expansion of the recursion, alpha*theta/(1-alpha)^(1/(theta-1)).
    """
    a, th = p.alpha, p.theta
    g = 1.0 + pi
    d = delta_nss(p, pi)
    return a * th * g ** (th - 2.0) * d / (1.0 - a * g ** (th - 1.0)) ** (
        1.0 / (th - 1.0)
    )


def taylor_c0(p: ModelParams) -> float:
    """Coefficient scaling the squared-inflation expansion of dispersion."""
    return p.alpha * p.theta / (1.0 - p.alpha) ** (1.0 / (p.theta - 1.0))


def linearization_coeffs(p: ModelParams, pi_bar: float) -> tuple[float, float]:
    """(slope scale, persistence) of the linearized dispersion recursion.

    At zero trend inflation the first-order inflation term vanishes, so
    the returned scale is the second-order coefficient and the recursion
    is Delta_hat_t = alpha * Delta_hat_{t-1}.  Away from zero the slope is
    the first-order coefficient on current inflation and the persistence
    is alpha*(1+pi_bar)^theta.
    """
    a, th = p.alpha, p.theta
    g = 1.0 + pi_bar
    persistence = a * g**th
    if pi_bar == 0.0:
        return taylor_c0(p), persistence
    d = delta_nss(p, pi_bar)
    one_m = (1.0 - a) ** (1.0 / (th - 1.0))
    slope = (
        a
        * th
        * g ** (th - 2.0)
        / (d * one_m)
        * (g * d * one_m - (1.0 - a * g ** (th - 1.0)) ** (1.0 / (th - 1.0)))
    )
    return slope, persistence


def delta_stochastic(p: ModelParams, m: "MomentSet") -> float:
    """Ergodic dispersion E(1-alpha(1+pi)^(theta-1))^(theta/(theta-1))
    / ((1-alpha)^(1/(theta-1)) (1-alpha E(1+pi)^theta))."""
    a, th = p.alpha, p.theta
    return m.m_disp_pow / ((1.0 - a) ** (1.0 / (th - 1.0)) * (1.0 - a * m.m_theta))


def d_delta_dpi_stochastic(p: ModelParams, m: "MomentSet") -> float:
    """First derivative of ergodic dispersion, moments supplied externally."""
    a, th = p.alpha, p.theta
    lead = a * th / (1.0 - a) ** (1.0 / (th - 1.0))
    return lead * (
        m.m_theta_1 * m.m_disp_pow / (1.0 - a * m.m_theta) ** 2
        - m.m_joint_disp / (1.0 - a * m.m_theta)
    )


Expectation = Callable[[Callable[[float], float]], float]


def d2_delta_dpi2_stochastic(p: ModelParams, expect: Expectation) -> float:
    """Second derivative of ergodic dispersion under an expectation operator.

    `expect` applies the ergodic measure to a scalar function of inflation;
    pass lambda f: f(pi_bar) for the degenerate case.  Needs moments beyond
    the MomentSet fields (powers theta-3 and 2(theta-2)), hence the
    callable interface.
    """
    a, th = p.alpha, p.theta
    one_m = (1.0 - a) ** (1.0 / (th - 1.0))
    e_th = expect(lambda x: (1.0 + x) ** th)
    e_th1 = expect(lambda x: (1.0 + x) ** (th - 1.0))
    e_th2 = expect(lambda x: (1.0 + x) ** (th - 2.0))
    e_pow = expect(lambda x: (1.0 - a * (1.0 + x) ** (th - 1.0)) ** (th / (th - 1.0)))
    e_j2 = expect(
        lambda x: (1.0 - a * (1.0 + x) ** (th - 1.0)) ** (1.0 / (th - 1.0))
        * (1.0 + x) ** (th - 2.0)
    )
    e_j3 = expect(
        lambda x: (1.0 - a * (1.0 + x) ** (th - 1.0)) ** (1.0 / (th - 1.0))
        * (1.0 + x) ** (th - 3.0)
    )
    e_mix = expect(
        lambda x: (1.0 + x) ** (2.0 * (th - 2.0))
        / (1.0 - a * (1.0 + x) ** (th - 1.0)) ** ((th - 2.0) / (th - 1.0))
    )
    den = 1.0 - a * e_th
    return (
        a * th * (th - 1.0) / one_m * e_th2 * e_pow / den**2
        - a**2 * th**2 / one_m * e_th1 * e_j2 / den**2
        + 2.0 * a**2 * th**2 / one_m * e_th1**2 * e_pow / den**3
        - a * th * (th - 2.0) / one_m * e_j3 / den
        + a**2 * th / one_m * e_mix / den
        - a**2 * th**2 / one_m * e_th1 * e_j2 / den**2
    )


def stationary_point(
    p: ModelParams,
    moment_family: Callable[[float], "MomentSet"] | None = None,
    lo: float = -0.5,
    hi: float = 0.0,
    tol: float = 1e-10,
) -> float:
    """Locate the trend inflation at which dispersion is stationary.

    Bisection on the first derivative over [lo, hi].  With the degenerate
    (non-stochastic) family the stationary point sits at zero inflation;
    stochastic families push it strictly negative.
    """
    if moment_family is None:
        deriv = lambda x: d_delta_dpi_nss(p, x)  # noqa: E731
    else:
        deriv = lambda x: d_delta_dpi_stochastic(p, moment_family(x))  # noqa: E731
    flo, fhi = deriv(lo), deriv(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0.0:
        raise ValueError(f"no sign change of d_delta/d_pi on [{lo}, {hi}]")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fm = deriv(mid)
        if fm == 0.0:
            return mid
        if fm * flo < 0.0:
            hi = mid
        else:
            lo, flo = mid, fm
    return 0.5 * (lo + hi)


def iterate_to_fixed_point(
    p: ModelParams, pi: float, delta0: float = 1.0, tol: float = 1e-12, max_iter: int = 200000
) -> float:
    """Iterate the recursion at constant inflation until it settles."""
    d = delta0
    for _ in range(max_iter):
        nxt = step(p, d, pi)
        if abs(nxt - d) < tol:
            return nxt
        d = nxt
    raise RuntimeError(f"dispersion iteration did not settle at pi={pi}")
