"""Comparison pricing models: Lucas, Rotemberg and Taylor contracts.

The Lucas slope solves a signal-extraction fixed point; the Rotemberg
slope is a closed form whose price-adjustment cost can be chosen to mimic
the singular Calvo slope; Taylor contracts give a symmetric lag/lead
Phillips curve whose marginal-cost weights sum to zero exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from calvobench.model_core import DomainError, ModelParams
from calvobench.phillips import singular_slopes


class NonConvergence(ArithmeticError):
    pass


@dataclass(frozen=True)
class LucasParams:
    eta: float
    theta: float
    v_z: float
    v_m: float

    def __post_init__(self):
        if self.eta <= 0.0:
            raise DomainError("eta", "must be positive")
        if self.theta < 1.0:
            raise DomainError("theta", "must be >= 1 (theta=1 is the classic limit)")
        if self.v_z <= 0.0 or self.v_m < 0.0:
            raise DomainError("v_z/v_m", "variances must be positive (v_m may be 0)")


def _lucas_rhs(lp: LucasParams, b: float) -> float:
    num = (1.0 + b) ** 2 * lp.v_z
    den = num + (lp.theta + b) ** 2 * lp.v_m
    return num / (lp.eta * den)


def lucas_slope(lp: LucasParams, tol: float = 1e-12, max_iter: int = 10_000) -> float:
    """Fixed point b of the signal-extraction slope equation, in (0, 1/eta].

    Damped iteration (weight 0.5) with a bisection fallback; at theta=1
    the equation is constant and equals v_z/(eta*(v_z+v_m)).
    """
    b = 0.5 / lp.eta
    for _ in range(max_iter):
        nxt = 0.5 * b + 0.5 * _lucas_rhs(lp, b)
        if abs(nxt - b) < tol:
            return nxt
        b = nxt
    # bisection fallback on g(b) = rhs(b) - b over [0, 1/eta]
    lo, hi = 0.0, 1.0 / lp.eta
    glo = _lucas_rhs(lp, lo) - lo
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        gm = _lucas_rhs(lp, mid) - mid
        if abs(gm) < tol:
            return mid
        if gm * glo > 0:
            lo, glo = mid, gm
        else:
            hi = mid
    raise NonConvergence("lucas slope iteration and bisection both failed")


def lucas_responses(lp: LucasParams, b: float) -> tuple[float, float, float]:
    """(anticipated price response, surprise price response, surprise output
    response) to money: (1, 1/(1+b), b/(1+b)).  Anticipated money never
    moves output."""
    return 1.0, 1.0 / (1.0 + b), b / (1.0 + b)


def rotemberg_slope(p: ModelParams, c_p: float) -> float:
    """(sigma+eta)(theta-1)/c_p."""
    if c_p <= 0.0:
        raise DomainError("c_p", "price-adjustment cost must be positive")
    return (p.sigma + p.eta) * (p.theta - 1.0) / c_p


def rotemberg_cp_equivalent(p: ModelParams) -> float:
    """Adjustment cost equating the Rotemberg and singular Calvo slopes:
    alpha(theta-1)/((1-alpha)(1-alpha*beta)).  Finite at beta=1."""
    return p.alpha * (p.theta - 1.0) / ((1.0 - p.alpha) * (1.0 - p.alpha * p.beta))


@dataclass(frozen=True)
class EquivalenceResult:
    equivalent: bool
    vm_over_vz: float | None
    lucas_b: float | None


def observational_equivalence(
    p: ModelParams, c_p: float, tol: float = 1e-10, max_iter: int = 500
) -> EquivalenceResult:
    """Can a Lucas economy mimic the Rotemberg/singular-Calvo slope?

    Needs slope steeper than the labor-supply bound (omega_tilde > eta);
    then the variance ratio V_m/V_z = ((omega-eta)/eta)*(1+b)^2/(theta+b)^2
    with b solved jointly against the Lucas fixed point (the solution has
    b = 1/omega_tilde).
    """
    omega = rotemberg_slope(p, c_p)
    if not omega > p.eta:
        return EquivalenceResult(equivalent=False, vm_over_vz=None, lucas_b=None)
    ratio = 1.0
    b = 1.0 / omega
    for _ in range(max_iter):
        b = lucas_slope(LucasParams(eta=p.eta, theta=p.theta, v_z=1.0, v_m=ratio))
        nxt = (omega - p.eta) / p.eta * (1.0 + b) ** 2 / (p.theta + b) ** 2
        if abs(nxt - ratio) < tol:
            return EquivalenceResult(equivalent=True, vm_over_vz=nxt, lucas_b=b)
        ratio = nxt
    raise NonConvergence("joint (b, V_m/V_z) iteration failed")


@dataclass(frozen=True)
class TaylorCurve:
    """Phillips curve of M-period staggered contracts.

    Inflation enters with weight 1/M on each of lags and leads 1..M-1;
    marginal cost enters at offsets -M..M-1 (offset k multiplies mc_{t+k})
    with weight +1/M for k >= 0 and -1/M for k < 0, summing to zero.
    """

    M: int
    lag_coeffs: tuple[float, ...]
    lead_coeffs: tuple[float, ...]
    mc_offsets: tuple[int, ...]
    mc_coeffs: tuple[float, ...]

    def mc_sum_exact(self) -> Fraction:
        total = Fraction(0)
        for c in self._mc_fractions():
            total += c
        return total

    def _mc_fractions(self) -> tuple[Fraction, ...]:
        return tuple(
            Fraction(1, self.M) if k >= 0 else Fraction(-1, self.M)
            for k in self.mc_offsets
        )


def taylor_phillips(M: int) -> TaylorCurve:
    """Build the M-period contract curve; M >= 2.

    Exact rationals are used internally so the zero-sum identity on the
    marginal-cost weights is exact, not a rounding accident.
    """
    if M < 2:
        raise DomainError("M", "contract length must be at least 2")
    w = Fraction(1, M)
    lag = tuple(float(w) for _ in range(1, M))
    lead = tuple(float(w) for _ in range(1, M))
    offsets = tuple(range(-M, M))
    mc = tuple(float(w) if k >= 0 else float(-w) for k in offsets)
    return TaylorCurve(M=M, lag_coeffs=lag, lead_coeffs=lead, mc_offsets=offsets, mc_coeffs=mc)


def compare_slopes(p: ModelParams, c_p: float = 50.0) -> dict[str, float]:
    """Side-by-side slope summary used by the CLI `compare` subcommand."""
    kappa, omega = singular_slopes(p)
    lp = LucasParams(eta=p.eta, theta=max(p.theta, 1.0), v_z=1.0, v_m=1.0)
    b = lucas_slope(lp)
    from calvobench.phillips import limit_coeffs, trend_coeffs

    if p.sigma == 1.0 and p.beta == 1.0 and p.pi_bar == 0.0:
        cs = limit_coeffs(p)
    else:
        cs = trend_coeffs(p)
    return {
        "singular_calvo_mc_slope": kappa,
        "singular_calvo_gap_slope": omega,
        "corrected_calvo_lag": cs.b0 / cs.b,
        "corrected_calvo_lead": cs.b3 / cs.b,
        "corrected_calvo_gap": cs.b1 / cs.b,
        "rotemberg_slope": rotemberg_slope(p, c_p),
        "lucas_inverse_slope": 1.0 / b,
        "taylor_lag_weight_m2": 0.5,
    }
