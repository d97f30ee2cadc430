"""Closed-form non-stochastic steady state at any admissible trend inflation.

Labor is derived by inverting the marginal-cost relation and imposing
market clearing (mc*A^(1-sigma)*Delta^sigma = L^(sigma+eta)) rather than
transcribing the long displayed exponent form; both agree at zero trend
inflation and the inversion is exact by construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from calvobench.model_core import DomainError, ModelParams, ValidatedParams, validate


@dataclass(frozen=True)
class SteadyState:
    mc: float
    w: float
    delta: float
    y: float
    l: float
    profit_rate: float
    u: float
    welfare: float  # +inf at beta = 1

    @property
    def finite_welfare(self) -> bool:
        return math.isfinite(self.welfare)


def mc_nss(p: ModelParams, pi: float | None = None) -> float:
    """Real marginal cost: ((theta-1)/theta) times two trend-inflation ratios."""
    pi = p.pi_bar if pi is None else pi
    g = 1.0 + pi
    a, b, th = p.alpha, p.beta, p.theta
    return (
        (th - 1.0)
        / th
        * (1.0 - a * b * g**th)
        / (1.0 - a * b * g ** (th - 1.0))
        * ((1.0 - a) / (1.0 - a * g ** (th - 1.0))) ** (1.0 / (th - 1.0))
    )


def delta_nss(p: ModelParams, pi: float | None = None) -> float:
    """Steady-state price dispersion; equals 1 iff trend inflation is zero.

    Defined only below the dispersion pole alpha*(1+pi)^theta = 1, where
    the recursion stops contracting; tighter than the price-level bound.
    """
    pi = p.pi_bar if pi is None else pi
    g = 1.0 + pi
    a, th = p.alpha, p.theta
    if a * g**th >= 1.0:
        raise DomainError(
            "pi_bar",
            f"alpha*(1+pi)^theta >= 1 at pi={pi}; dispersion recursion diverges",
        )
    num = (1.0 - a * g ** (th - 1.0)) ** (th / (th - 1.0))
    den = (1.0 - a) ** (1.0 / (th - 1.0)) * (1.0 - a * g**th)
    return num / den


def compute_nss(p: ValidatedParams) -> SteadyState:
    """Evaluate the full steady state; welfare is +inf when beta = 1."""
    p = validate(p)
    mc = mc_nss(p)
    delta = delta_nss(p)
    w = mc * p.A_bar
    # labor from w = L^eta * C^sigma with C = A*L/Delta
    l = (mc * p.A_bar ** (1.0 - p.sigma) * delta**p.sigma) ** (
        1.0 / (p.sigma + p.eta)
    )
    y = p.A_bar * l / delta
    profit_rate = 1.0 - mc
    if p.sigma == 1.0:
        cu = math.log(y)
    else:
        cu = (y ** (1.0 - p.sigma) - 1.0) / (1.0 - p.sigma)
    u = cu - l ** (1.0 + p.eta) / (1.0 + p.eta)
    welfare = u / (1.0 - p.beta) if p.beta < 1.0 else math.inf
    return SteadyState(
        mc=mc, w=w, delta=delta, y=y, l=l, profit_rate=profit_rate, u=u, welfare=welfare
    )


def profit_by_age(p: ModelParams, ss: SteadyState, a: int) -> float:
    """Profit of a firm whose price is a periods old.

    ((1+pi)^-a - mc) * (1+pi)^(-a*theta) * y; strictly decreasing in age
    under positive trend inflation.
    """
    if a < 0:
        raise ValueError("price age must be non-negative")
    g = 1.0 + p.pi_bar
    return (g ** (-a) - ss.mc) * g ** (-a * p.theta) * ss.y


_MAX_AGE_SCAN = 10_000


def negative_profit_cutoff(p: ModelParams, ss: SteadyState) -> int | None:
    """Smallest age at which profit turns negative; None when it never does.

    Under deflation or zero trend inflation with mc < 1 all vintages stay
    profitable.  The linear scan is capped; beyond the cap an analytic
    log-based fallback locates the root of (1+pi)^-a = mc.
    """
    if p.pi_bar <= 0.0:
        return None if ss.mc < 1.0 else 0
    g = 1.0 + p.pi_bar
    # profit_by_age(a) < 0  iff  (1+pi)^-a < mc  iff  a > -ln(mc)/ln(1+pi)
    for a in range(_MAX_AGE_SCAN + 1):
        if profit_by_age(p, ss, a) < 0.0:
            return a
    analytic = -math.log(ss.mc) / math.log(g)
    return int(math.floor(analytic)) + 1


def balanced_growth_admissible(sigma: float, tol: float = 1e-12) -> bool:
    """De-trended output is independent of the technology level iff sigma=1."""
    if sigma <= 0.0:
        raise ValueError("sigma must be positive")
    return abs(sigma - 1.0) <= tol
