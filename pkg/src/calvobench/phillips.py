"""Coefficient families of the linearized model.

Three entry points produce the same canonical-form coefficient sets at
three levels of generality:

* limit_coeffs   -- closed forms at sigma=1, beta->1, zero trend inflation
* trend_coeffs   -- arbitrary beta <= 1 and admissible trend inflation
* general_coeffs -- arbitrary ergodic moments (stochastic equilibrium)

The general and trend families are produced by eliminating the two
price-setting recursions, the reset-price link, the lagged Euler and the
lagged dispersion relation from the linearized system.  The elimination
is carried out numerically (a 7-relation linear system with a
one-dimensional left null space), which keeps every structural ingredient
individually testable and reduces exactly to the closed-form limit family
at (pi_bar=0, sigma=1, beta=1).
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from calvobench.model_core import (
    DomainError,
    ModelParams,
    SingularPolicy,
    validate,
)
from calvobench.steady_state import compute_nss


class MomentDivergence(ArithmeticError):
    """A geometric moment sum fails to converge (alpha*beta*E(1+pi)^k >= 1)."""


class NotAvailable(NotImplementedError):
    """Requested object is only defined in the ZINSS limit regime."""


@dataclass(frozen=True)
class MomentSet:
    """Ergodic expectation functionals and companion point values.

    The m_* fields are expectations under the ergodic measure; the Euler
    moments are normalized by the point value psi*u'(Y).  Point values
    close the formulas (they enter only through ratios that the recursions
    pin down).
    """

    m_theta: float        # E (1+pi)^theta
    m_theta_1: float      # E (1+pi)^(theta-1)
    m_theta_2: float      # E (1+pi)^(theta-2)
    m_euler_1: float      # E psi u'(Y)/(1+pi)   / (psi u'(Y) at the point)
    m_euler_2: float      # E psi u'(Y)/(1+pi)^2 / (psi u'(Y) at the point)
    m_joint_disp: float   # E (1+pi)^(theta-2) (1-alpha(1+pi)^(theta-1))^(1/(theta-1))
    m_disp_pow: float     # E (1-alpha(1+pi)^(theta-1))^(theta/(theta-1))
    pi: float
    y: float
    delta: float
    psi: float = 1.0
    A: float = 1.0

    def check(self, p: ModelParams) -> None:
        for name in (
            "m_theta",
            "m_theta_1",
            "m_theta_2",
            "m_euler_1",
            "m_euler_2",
            "m_joint_disp",
            "m_disp_pow",
        ):
            if getattr(self, name) <= 0.0:
                raise DomainError(name, "moments must be positive")
        if p.alpha * p.beta * self.m_theta >= 1.0:
            raise MomentDivergence(
                f"alpha*beta*E(1+pi)^theta = {p.alpha * p.beta * self.m_theta} >= 1"
            )
        if p.alpha * p.beta * self.m_theta_1 >= 1.0:
            raise MomentDivergence(
                f"alpha*beta*E(1+pi)^(theta-1) = "
                f"{p.alpha * p.beta * self.m_theta_1} >= 1"
            )

    @classmethod
    def degenerate(cls, p: ModelParams, pi_bar: float | None = None) -> "MomentSet":
        """Moments of a point mass at trend inflation (non-stochastic case)."""
        pi = p.pi_bar if pi_bar is None else pi_bar
        g = 1.0 + pi
        a, th = p.alpha, p.theta
        ptmp = p if pi == p.pi_bar else validate(replace(p, pi_bar=pi))
        ss = compute_nss(ptmp)
        return cls(
            m_theta=g**th,
            m_theta_1=g ** (th - 1.0),
            m_theta_2=g ** (th - 2.0),
            m_euler_1=1.0 / g,
            m_euler_2=1.0 / g**2,
            m_joint_disp=g ** (th - 2.0) * (1.0 - a * g ** (th - 1.0)) ** (1.0 / (th - 1.0)),
            m_disp_pow=(1.0 - a * g ** (th - 1.0)) ** (th / (th - 1.0)),
            pi=pi,
            y=ss.y,
            delta=ss.delta,
            psi=1.0,
            A=p.A_bar,
        )


@dataclass(frozen=True)
class CoefficientSet:
    """Raw numerators and denominators of the canonical three-equation form.

    pi_t  = (b0*pi_{t-1} + b1*y_t + b2*D_t + b3*E_t pi_{t+1} + b4*(psi_t-psi_{t-1})) / b
    y_t   = (c0*pi_{t-1} + c1*pi_t + c2*D_t + c3*E_t y_{t+1}) / c
    D_t   = (d0*pi_{t-1} + d1*pi_t + d2*y_t + d3*E_t D_{t+1}) / d

    b4 is only defined in the ZINSS limit regime and is None elsewhere.
    """

    b: float
    b0: float
    b1: float
    b2: float
    b3: float
    c: float
    c0: float
    c1: float
    c2: float
    c3: float
    d: float
    d0: float
    d1: float
    d2: float
    d3: float
    b4: float | None = None

    def coeff(self, name: str) -> float:
        """Normalized coefficient, e.g. coeff('b0') = b0/b."""
        fam = name[0]
        num = getattr(self, name)
        if num is None:
            raise NotAvailable(f"{name} is only defined in the limit regime")
        return num / getattr(self, fam)

    def b_normalized(self) -> tuple[float, float, float, float, float]:
        if self.b4 is None:
            raise NotAvailable("b4 is only defined in the limit regime")
        return (
            self.b0 / self.b,
            self.b1 / self.b,
            self.b2 / self.b,
            self.b3 / self.b,
            self.b4 / self.b,
        )

    def c_normalized(self) -> tuple[float, float, float, float]:
        return (self.c0 / self.c, self.c1 / self.c, self.c2 / self.c, self.c3 / self.c)

    def d_normalized(self) -> tuple[float, float, float, float]:
        return (self.d0 / self.d, self.d1 / self.d, self.d2 / self.d, self.d3 / self.d)


@dataclass(frozen=True)
class SurfaceCoefficients:
    """Residual-surface coefficients pi_t = g0 pi_{t-1} + g1 y^e_t + g2 D_t.

    Raw numerators over a common denominator g; api_bracket_negative flags
    the policy term changing sign (a_pi above beta(1+beta)) and g_positive
    reports whether the denominator kept its sign.
    """

    g: float
    g0: float
    g1: float
    g2: float
    api_bracket_negative: bool
    g_positive: bool

    def normalized(self) -> tuple[float, float, float]:
        return (self.g0 / self.g, self.g1 / self.g, self.g2 / self.g)


def singular_slopes(p: ModelParams) -> tuple[float, float]:
    """(kappa, omega): marginal-cost and output-gap slopes of the
    forward-looking Phillips curve obtained by cross-equation cancellation."""
    kappa = (1.0 - p.alpha) * (1.0 - p.alpha * p.beta) / p.alpha
    return kappa, (p.sigma + p.eta) * kappa


def ge_impulse(p: ModelParams) -> float:
    """Cost-channel general-equilibrium term (1-alpha)^2(1+eta)/(alpha(1+a_y))."""
    return (1.0 - p.alpha) ** 2 * (1.0 + p.eta) / (p.alpha * (1.0 + p.a_y))


def _require_limit_regime(p: ModelParams) -> None:
    if p.sigma != 1.0 or p.beta != 1.0:
        raise DomainError(
            "sigma" if p.sigma != 1.0 else "beta",
            "limit coefficients need sigma=1 and beta=1; "
            "use trend_coeffs or general_coeffs elsewhere",
        )


def limit_coeffs(p: ModelParams) -> CoefficientSet:
    """Closed-form coefficient set at sigma=1, beta->1, zero trend inflation."""
    p = validate(p)
    _require_limit_regime(p)
    if 1.0 + p.a_y == 0.0:
        raise SingularPolicy("1 + a_y = 0")
    a, eta, api, ay = p.alpha, p.eta, p.a_pi, p.a_y
    G = ge_impulse(p)
    b = 1.0 + a + G
    b0 = 1.0 + api * G
    b1 = (1.0 - a) ** 2 * (1.0 + eta) * (a * (1.0 + ay) - 1.0) / (a * (1.0 + ay))
    b2 = -eta * (1.0 - a) ** 3 * (1.0 + a) / a**2
    b3 = a
    b4 = G
    c = 1.0 + (1.0 - a) ** 2 / a**2 * (1.0 + eta) / (1.0 + ay) ** 2 * (
        a * (1.0 + ay) - 1.0
    )
    c0 = -b0 / (a * (1.0 + ay))
    c1 = (1.0 + a * (1.0 - api) + (1.0 - a) ** 2 / a * (1.0 + eta) / (1.0 + ay)) / (
        a * (1.0 + ay)
    )
    c2 = eta * (1.0 - a) ** 3 * (1.0 + a) / (a**3 * (1.0 + ay))
    c3 = 1.0 / (1.0 + ay)
    return CoefficientSet(
        b=b, b0=b0, b1=b1, b2=b2, b3=b3, b4=b4,
        c=c, c0=c0, c1=c1, c2=c2, c3=c3,
        d=a, d0=0.0, d1=0.0, d2=0.0, d3=1.0,
    )


def _eliminate(p: ModelParams, m: MomentSet) -> CoefficientSet:
    """Reduce the linearized structural system to the canonical form.

    Structural ingredients (hats are deviations; pi-hats in levels, the
    rest in logs):

      aleph_t = k_al*(eta*D_t + (1+eta)*y_t) + theta*a*b*E[th-1]*pi_{t+1}
                + a*b*E[th]*aleph_{t+1}
      beth_t  = (1-sigma)*k_be*y_t + (theta-1)*a*b*E[th-2]*pi_{t+1}
                + a*b*E[th-1]*beth_{t+1}
      aleph_t - beth_t = h * pi_t            (reset-price link)
      y_{t-1}  from the lagged Euler with the policy rule
      D_{t-1}  from the lagged dispersion recursion

    with k_al = 1 - a*b*E[th], k_be = 1 - a*b*E[th-1] and
    h = alpha(1+pi)^(theta-2)/(1-alpha(1+pi)^(theta-1)).
    """
    a, be, th, eta, sig = p.alpha, p.beta, p.theta, p.eta, p.sigma
    api, ay = p.a_pi, p.a_y
    Eth, Eth1, Eth2 = m.m_theta, m.m_theta_1, m.m_theta_2
    E1, E2 = m.m_euler_1, m.m_euler_2
    gpi = 1.0 + m.pi

    k_al = 1.0 - a * be * Eth
    k_be = 1.0 - a * be * Eth1
    if k_al <= 0.0 or k_be <= 0.0:
        raise MomentDivergence("alpha*beta*E(1+pi)^k >= 1; recursions diverge")
    h = a * gpi ** (th - 2.0) / (1.0 - a * gpi ** (th - 1.0))
    if abs(sig + be * ay * E1) < 1e-14:
        raise SingularPolicy("sigma + beta*a_y*m_euler_1 = 0")

    # unknown order: (N_{t-1}, B_{t-1}, N_t, B_t, N_{t+1}, B_{t+1})
    # observable order: (pi_{t-1}, pi_t, pi_{t+1}, y_{t-1}, y_t, D_{t-1}, D_t)
    M = np.zeros((7, 6))
    R = np.zeros((7, 7))
    # N_t - a*b*E[th]*N_{t+1} = eta*k_al*D_t + (1+eta)*k_al*y_t + th*a*b*E[th-1]*pi_{t+1}
    M[0, 2], M[0, 4] = 1.0, -a * be * Eth
    R[0, 6], R[0, 4], R[0, 2] = eta * k_al, (1.0 + eta) * k_al, th * a * be * Eth1
    # B_t - a*b*E[th-1]*B_{t+1} = (1-sig)*k_be*y_t + (th-1)*a*b*E[th-2]*pi_{t+1}
    M[1, 3], M[1, 5] = 1.0, -a * be * Eth1
    R[1, 4], R[1, 2] = (1.0 - sig) * k_be, (th - 1.0) * a * be * Eth2
    # lagged recursions (expectational errors dropped: slope terms only)
    M[2, 0], M[2, 2] = 1.0, -a * be * Eth
    R[2, 5], R[2, 3], R[2, 1] = eta * k_al, (1.0 + eta) * k_al, th * a * be * Eth1
    M[3, 1], M[3, 3] = 1.0, -a * be * Eth1
    R[3, 3], R[3, 1] = (1.0 - sig) * k_be, (th - 1.0) * a * be * Eth2
    # reset-price links at t, t+1, t-1
    M[4, 2], M[4, 3] = 1.0, -1.0
    R[4, 1] = h
    M[5, 4], M[5, 5] = 1.0, -1.0
    R[5, 2] = h
    M[6, 0], M[6, 1] = 1.0, -1.0
    R[6, 0] = h

    # Left null vector of M gives the one relation among the observables.
    # At exactly degenerate moments (E[th] = E[th-1], i.e. ZINSS) M drops
    # rank -- the cross-equation cancellation that bifurcation.scan flags --
    # so use the generic branch's closed-form null vector, whose continuous
    # limit selects the hybrid (lag-bearing) Phillips curve.
    x = a * be * Eth
    y = a * be * Eth1
    null = np.array([y, -x, -1.0, 1.0, -(x + y), x * y, 1.0])
    resid = null @ M
    if np.max(np.abs(resid)) > 1e-12 * max(1.0, x, y):
        raise ArithmeticError("elimination null vector failed to annihilate the block")
    v = null @ R  # coefficients on the 7 observables, relation v . obs = 0
    if abs(v[0]) < 1e-14:
        raise ArithmeticError("degenerate elimination: no lagged-inflation term")
    v = v / v[0]  # paper normalization: unit pre-substitution pi_{t-1} weight

    # lagged Euler: y_{t-1} = s_y*y_t + s_pm*pi_{t-1} + s_p0*pi_t
    den_e = sig + be * ay * E1
    s_y = sig / den_e
    s_pm = -api * be * E1 / den_e
    s_p0 = (E2 / E1) / den_e
    # lagged dispersion: D_{t-1} = t_D*D_t + t_p0*pi_t
    one_m = (1.0 - a) ** (1.0 / (th - 1.0))
    t_D = 1.0 / (a * Eth)
    t_p0 = -th * (one_m * m.delta * Eth1 - m.m_joint_disp) / (one_m * m.delta * Eth)

    co_pm1 = float(v[0] + v[3] * s_pm)
    co_p0 = float(v[1] + v[3] * s_p0 + v[5] * t_p0)
    co_p1 = float(v[2])
    co_y0 = float(v[4] + v[3] * s_y)
    co_D0 = float(v[6] + v[5] * t_D)

    b = -co_p0
    b0, b1, b2, b3 = co_pm1, co_y0, co_D0, co_p1

    # Euler block, normalized so c3 = 1/(1+a_y) in the limit regime
    scale = sig * (1.0 + ay)
    c = (sig + be * ay * E1 + (E2 / E1) * (b1 / b3)) / scale
    c3 = sig / scale
    c1 = ((E2 / E1) * (b / b3) - be * api * E1) / scale
    c0 = -(E2 / E1) * (b0 / b3) / scale
    c2 = -(E2 / E1) * (b2 / b3) / scale

    # dispersion block from the forward recursion plus the Phillips curve
    dp0 = a * th * (Eth1 - m.m_joint_disp / (one_m * m.delta))
    d = a * Eth - dp0 * (b2 / b3)
    d0 = dp0 * (b0 / b3)
    d1 = -dp0 * (b / b3)
    d2 = dp0 * (b1 / b3)

    return CoefficientSet(
        b=b, b0=b0, b1=b1, b2=b2, b3=b3, b4=None,
        c=c, c0=c0, c1=c1, c2=c2, c3=c3,
        d=d, d0=d0, d1=d1, d2=d2, d3=1.0,
    )


def trend_coeffs(p: ModelParams) -> CoefficientSet:
    """Coefficient families under trend inflation in the small-noise limit.

    Degenerate-moment specialization of the general elimination; at
    pi_bar=0, sigma=1, beta=1 it coincides with limit_coeffs exactly.
    """
    p = validate(p)
    if abs(p.sigma + p.beta * p.a_y) < 1e-14:
        raise SingularPolicy("sigma + beta*a_y = 0")
    cs = _eliminate(p, MomentSet.degenerate(p))
    if p.sigma == 1.0 and p.beta == 1.0 and p.pi_bar == 0.0:
        cs = replace(cs, b4=ge_impulse(p))
    return cs


def general_coeffs(p: ModelParams, m: MomentSet) -> CoefficientSet:
    """Full stochastic-moment coefficient families.

    With a degenerate MomentSet this reproduces trend_coeffs; the error
    numerator b4 has no closed form away from the limit regime and is
    left unset (accessing it raises NotAvailable).
    """
    p = validate(p)
    if p.beta >= 1.0:
        raise DomainError("beta", "general coefficients need beta < 1")
    m.check(p)
    return _eliminate(p, m)


def _trend_b_family_printed(p: ModelParams) -> tuple[float, float, float, float, float]:
    """The trend-inflation b-family exactly as printed in the source.

    Kept for documentation tests: away from (pi_bar=0, sigma=1, beta=1)
    these displays disagree with the eigenvalues of the underlying
    nonlinear system, while _eliminate matches them; both coincide at the
    limit point.
    """
    a, be, th, eta, sig = p.alpha, p.beta, p.theta, p.eta, p.sigma
    api, ay = p.a_pi, p.a_y
    pi = p.pi_bar
    g = 1.0 + pi
    z1 = a * g ** (th - 1.0)
    s = (sig + eta) / (sig + be * ay)
    b = be * (
        a * g ** (th - 1.0) * (2.0 + pi)
        + (1.0 - a) ** (1.0 / (th - 1.0)) * (1.0 - z1) ** ((th - 2.0) / (th - 1.0)) / g ** (th - 2.0)
        + (1.0 - z1) / (a * g ** (th - 2.0)) * (1.0 - a * be * g**th) * s
    ) - eta * th * pi * (1.0 - a) ** (1.0 / (th - 1.0)) / (1.0 - z1) ** (2.0 / (th - 1.0))
    b0 = 1.0 + api * (1.0 - z1) / (a * g ** (th - 2.0)) * (1.0 - a * be * g**th) * s
    b1 = (
        (1.0 - z1)
        / g ** (th - 2.0)
        * (1.0 - a * be * g**th)
        * (sig + eta)
        * (be * (1.0 - a * pi * g ** (th - 1.0)) - 1.0 / (a * (sig + be * ay)))
    )
    b2 = -eta * g * (1.0 - z1) / a**2 * (1.0 - a * be * g**th) * (be - a**2 * g ** (th - 1.0))
    b3 = a * be**2 * (
        a * g ** (2.0 * th - 1.0)
        + (1.0 - z1) ** (th / (th - 1.0)) / ((1.0 - a) ** (1.0 / (th - 1.0)) * g ** (th - 2.0))
    )
    return b, b0, b1, b2, b3


def surface_coeffs(p: ModelParams) -> SurfaceCoefficients:
    """Coefficients of the singular (wall-crossing) residual surface."""
    p = validate(p)
    if abs(p.sigma + p.beta * p.a_y) < 1e-14:
        raise SingularPolicy("sigma + beta*a_y = 0")
    a, be, eta, sig = p.alpha, p.beta, p.eta, p.sigma
    api, ay = p.a_pi, p.a_y
    if sig == 1.0 and be == 1.0:
        G = ge_impulse(p)
        g = 1.0 + a + (2.0 - api) * G
        g0 = -(1.0 + a + G)
        g1 = G
        g2 = eta * (1.0 - a) ** 3 * (1.0 + a) / a**2
    else:
        kbar = (1.0 - a) * (1.0 - a * be) / a
        s = (sig + eta) / (sig + be * ay)
        g = be**2 * (1.0 + a) - (1.0 - be) + (be * (1.0 + be) - api) * kbar * s
        g0 = -be * (1.0 + a + kbar * s)
        g1 = kbar * s
        g2 = eta * (1.0 - a) * (1.0 - a * be) / a**2 * (be - a**2 * (1.0 - be))
    return SurfaceCoefficients(
        g=g,
        g0=g0,
        g1=g1,
        g2=g2,
        api_bracket_negative=(be * (1.0 + be) - api) <= 0.0,
        g_positive=g > 0.0,
    )


def cutoff_lag(p: ModelParams) -> float:
    """Largest attainable lagged-inflation coefficient, 1 - alpha/b.

    Equals the normalized b0 evaluated at a_pi = 1 (the blow-up point).
    """
    p = validate(p)
    _require_limit_regime(p)
    b = 1.0 + p.alpha + ge_impulse(p)
    return 1.0 - p.alpha / b


def demand_response_identity(p: ModelParams, f0: float, h0: float) -> float:
    """Residual of (1 + b4)*f0 + b4*h0 - b4 linking impact responses of
    inflation (f0) and output (h0) to the demand shock."""
    p = validate(p)
    _require_limit_regime(p)
    b4 = ge_impulse(p)
    return (1.0 + b4) * f0 + b4 * h0 - b4
