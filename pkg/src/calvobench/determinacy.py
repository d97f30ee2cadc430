"""Characteristic polynomials, root classification and existence criteria.

The small-noise system eliminating dispersion is a cubic in the
coefficient ratios; the full system is a quartic.  Existence of a unique
stable solution requires the roots outside the unit circle to match the
number of jump variables.  With the benchmark Calvo families the cubic
factors as (lambda - 1/alpha) times a quadratic and the quartic adds the
root alpha, so the existence cutoff sits at a_pi = 1: below it the
economy has a unique solution, above it none at all (the reverse of the
Rotemberg/Taylor-principle arrangement).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Literal, Sequence

import numpy as np

from calvobench.model_core import ModelParams, validate
from calvobench.phillips import (
    CoefficientSet,
    limit_coeffs,
    singular_slopes,
    trend_coeffs,
)


class DegenerateSystem(ArithmeticError):
    """A forward coefficient vanishes; the expectational system loses order."""


class NonConvergence(ArithmeticError):
    pass


class NoFlip(ValueError):
    """Bisection bracket shows the same classification at both ends."""


Classification = Literal[
    "exists_unique",
    "nonexistence_explosive",
    "nonexistence_indeterminate",
    "boundary",
]


@dataclass(frozen=True)
class CharPoly:
    """Monic characteristic polynomial, coefficients highest degree first."""

    coefficients: tuple[float, ...]

    def __post_init__(self):
        c = self.coefficients
        if len(c) < 3 or len(c) > 5:
            raise ValueError("degree must be 2, 3 or 4")
        if c[0] != 1.0:
            raise ValueError("polynomial must be monic")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, lam: complex) -> complex:
        acc = 0.0 + 0.0j
        for c in self.coefficients:
            acc = acc * lam + c
        return acc

    def derivative(self, lam: complex) -> complex:
        n = self.degree
        acc = 0.0 + 0.0j
        for k, c in enumerate(self.coefficients[:-1]):
            acc = acc * lam + (n - k) * c
        return acc


@dataclass(frozen=True)
class DeterminacyReport:
    roots: tuple[complex, ...]
    n_inside: int
    n_on: int
    n_outside: int
    n_jumps: int
    n_states: int
    classification: Classification


def _ratios(cs: CoefficientSet) -> dict[str, float]:
    if cs.b3 == 0.0 or cs.c3 == 0.0:
        raise DegenerateSystem("b3 or c3 is zero")
    return {
        "B": cs.b / cs.b3,
        "B0": cs.b0 / cs.b3,
        "B1": cs.b1 / cs.b3,
        "B2": cs.b2 / cs.b3,
        "C": cs.c / cs.c3,
        "C0": cs.c0 / cs.c3,
        "C1": cs.c1 / cs.c3,
        "C2": cs.c2 / cs.c3,
    }


def char_poly_sqrt_eps(cs: CoefficientSet) -> CharPoly:
    """Cubic of the small-noise system over (pi_t, y_t, pi_{t-1})."""
    r = _ratios(cs)
    return CharPoly(
        (
            1.0,
            -(r["B"] + r["C"]),
            r["B0"] + r["B"] * r["C"] - r["B1"] * r["C1"],
            -(r["B1"] * r["C0"] + r["B0"] * r["C"]),
        )
    )


def char_poly_full(cs: CoefficientSet) -> CharPoly:
    """Quartic of the full system over (pi_t, y_t, Delta_t, pi_{t-1}).

    General form including the dispersion numerators; with the ZINSS-limit
    families (d0=d1=d2=0) it collapses to the displayed limit quartic and
    factors into (lambda-alpha)(lambda-1/alpha) times the cubic's quadratic.
    """
    r = _ratios(cs)
    if cs.d3 == 0.0:
        raise DegenerateSystem("d3 is zero")
    D = cs.d / cs.d3
    D0 = cs.d0 / cs.d3
    D1 = cs.d1 / cs.d3
    D2 = cs.d2 / cs.d3
    B, B0, B1, B2 = r["B"], r["B0"], r["B1"], r["B2"]
    C, C0, C1, C2 = r["C"], r["C0"], r["C1"], r["C2"]
    a3 = -(B + C + D)
    a2 = B * C + (B + C) * D - C2 * D2 - B1 * C1 - B2 * D1 + B0
    a1 = (
        B * C2 * D2
        - B * C * D
        + B1 * C1 * D
        + B1 * C2 * D1
        - B1 * C0
        + B2 * C1 * D2
        + B2 * C * D1
        - B2 * D0
        - B0 * C
        - B0 * D
    )
    a0 = B1 * C2 * D0 + B1 * C0 * D + B2 * C * D0 + B2 * C0 * D2 + B0 * C * D - B0 * C2 * D2
    return CharPoly((1.0, a3, a2, a1, a0))


def find_roots(poly: CharPoly) -> tuple[complex, ...]:
    """All roots via the companion matrix, one Newton polish step each,
    sorted by modulus.  Residuals are checked against the coefficient scale."""
    coeffs = np.asarray(poly.coefficients, dtype=float)
    roots = np.roots(coeffs)
    polished = []
    for r in roots:
        fr = poly(complex(r))
        dfr = poly.derivative(complex(r))
        if dfr != 0:
            step = fr / dfr
            if abs(step) < 0.5:
                r = r - step
        polished.append(complex(r))
    scale = max(abs(c) for c in poly.coefficients)
    for r in polished:
        if abs(poly(r)) > 1e-9 * scale:
            raise NonConvergence(f"root {r} has residual {abs(poly(r)):.3e}")
    return tuple(sorted(polished, key=abs))


def classify(
    roots: Sequence[complex],
    n_jumps: int,
    n_states: int,
    tol: float = 1e-8,
) -> DeterminacyReport:
    """Count roots against the unit circle and classify existence.

    Roots within tol of the circle are 'on' and force the boundary
    verdict; a unique stable solution needs exactly n_jumps roots outside.
    Too few roots outside means the expectational system is
    under-determined (indeterminate, read as nonexistence); too many means
    every candidate path explodes.
    """
    if n_jumps < 0 or n_states < 0 or n_jumps + n_states != len(roots):
        raise ValueError("jump/state counts must be non-negative and sum to degree")
    n_inside = sum(1 for r in roots if abs(r) < 1.0 - tol)
    n_on = sum(1 for r in roots if 1.0 - tol <= abs(r) <= 1.0 + tol)
    n_outside = len(roots) - n_inside - n_on
    if n_on > 0:
        cls: Classification = "boundary"
    elif n_outside == n_jumps:
        cls = "exists_unique"
    elif n_outside > n_jumps:
        cls = "nonexistence_explosive"
    else:
        cls = "nonexistence_indeterminate"
    return DeterminacyReport(
        roots=tuple(roots),
        n_inside=n_inside,
        n_on=n_on,
        n_outside=n_outside,
        n_jumps=n_jumps,
        n_states=n_states,
        classification=cls,
    )


def _coeffs_for(p: ModelParams) -> CoefficientSet:
    if p.sigma == 1.0 and p.beta == 1.0 and p.pi_bar == 0.0:
        return limit_coeffs(p)
    return trend_coeffs(p)


def classify_params(
    p: ModelParams, variant: str = "sqrt_eps", tol: float = 1e-8
) -> DeterminacyReport:
    """Classification of the named variant at a parameter point."""
    cs = _coeffs_for(p)
    if variant == "sqrt_eps":
        poly = char_poly_sqrt_eps(cs)
        return classify(find_roots(poly), n_jumps=2, n_states=1, tol=tol)
    if variant == "full":
        poly = char_poly_full(cs)
        return classify(find_roots(poly), n_jumps=2, n_states=2, tol=tol)
    raise ValueError(f"unknown variant {variant!r}")


def existence_boundary(
    p: ModelParams,
    lo: float = 0.0,
    hi: float = 3.0,
    tol: float = 1e-8,
    variant: str = "sqrt_eps",
) -> float:
    """Bisect on a_pi for the exists <-> nonexistence flip.

    Returns 1.0 (to tol) for every admissible calibration: the existence
    cutoff is the policy reaction crossing unity.
    """
    p = validate(p)

    def exists(api: float) -> bool:
        rpt = classify_params(replace(p, a_pi=api), variant=variant)
        return rpt.classification == "exists_unique"

    elo, ehi = exists(lo), exists(hi)
    if elo == ehi:
        raise NoFlip(f"classification identical at a_pi={lo} and {hi}")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if exists(mid) == elo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def q_conditions(p: ModelParams) -> tuple[float, float]:
    """(q0, q1) of the inverse-eigenvalue quadratic x^2 + q0 x + q1 of the
    singular (purely forward) system."""
    _, omega = singular_slopes(p)
    den = p.sigma + p.a_y + omega * p.a_pi
    q0 = -(omega + (1.0 + p.beta) * p.sigma + p.beta * p.a_y) / den
    q1 = p.beta * p.sigma / den
    return q0, q1


def singular_determinacy(p: ModelParams) -> bool:
    """Unique stable solution of the singular system: a_pi + (1-beta)a_y/slope > 1.

    The slope is the output-gap slope of the forward Phillips curve.  At
    beta=1 the condition collapses to the familiar a_pi > 1.
    """
    p = validate(p)
    _, omega = singular_slopes(p)
    return p.a_pi + (1.0 - p.beta) * p.a_y / omega > 1.0


def singular_determinacy_q(p: ModelParams) -> bool:
    """Oracle route: both inverse eigenvalues inside the unit circle,
    |q0| < 1 + q1 and |q1| < 1."""
    q0, q1 = q_conditions(p)
    return abs(q0) < 1.0 + q1 and abs(q1) < 1.0


def rotemberg_exists(p: ModelParams) -> bool:
    """Rotemberg recursive equilibrium exists iff a_pi > 1 (strict)."""
    return p.a_pi > 1.0


def rouche_diagnostics(poly: CharPoly, k: int) -> bool:
    """Coefficient-dominance test on the unit circle.

    True when |coefficients[k]| strictly exceeds the sum of all other
    coefficient magnitudes, which forces exactly degree-k roots strictly
    inside the unit circle.  Sound but far from complete.
    """
    c = poly.coefficients
    if not 0 <= k <= poly.degree:
        raise ValueError("k out of range")
    others = sum(abs(v) for j, v in enumerate(c) if j != k)
    return abs(c[k]) > others


def complex_root_threshold(p: ModelParams) -> float:
    """Policy reaction above which the factored quadratic's roots go complex:
    1 + (a_y + (1-alpha)^2(1+eta)/alpha)^2 * alpha/(4(1-alpha)^2(1+eta))."""
    p = validate(p)
    w = (1.0 - p.alpha) ** 2 * (1.0 + p.eta) / p.alpha
    return 1.0 + 0.25 * (p.a_y + w) ** 2 / w


def factored_quadratic(p: ModelParams) -> tuple[float, float, float]:
    """Monic quadratic left after removing lambda = 1/alpha from the cubic:
    lambda^2 - (2 + a_y + w) lambda + (1 + a_y + a_pi w), w the cost-channel
    slope (1-alpha)^2(1+eta)/alpha."""
    w = (1.0 - p.alpha) ** 2 * (1.0 + p.eta) / p.alpha
    return 1.0, -(2.0 + p.a_y + w), 1.0 + p.a_y + p.a_pi * w


@dataclass(frozen=True)
class PolicyScenarioReport:
    """Outcomes at the unconventional policy settings."""

    a_star_pi: float
    no_persistence_report: DeterminacyReport
    divine_roots: tuple[float, float]
    divine_report: DeterminacyReport


def g3_scenarios(p: ModelParams) -> PolicyScenarioReport:
    """Persistence-eliminating and Divine-Coincidence policy experiments.

    a_star_pi is the reaction magnitude that kills the lagged-inflation
    term.  The no-persistence system is a purely forward quadratic; the
    Divine-Coincidence policy leaves the root pair (alpha*beta, beta),
    which never supplies the two explosive roots a two-jump system needs.
    """
    p = validate(p)
    a, be, eta_, ay = p.alpha, p.beta, p.eta, p.a_y
    a_star = a * (1.0 + ay) / ((1.0 - a) ** 2 * (1.0 + eta_))
    # no-persistence quadratic (forward system, two jumps)
    q_lin = (1.0 + a) / a + (1.0 - a) ** 2 / a**2 * (1.0 + eta_) / (1.0 + ay) + 1.0 + ay
    q_const = (2.0 + ay) / a + (1.0 - a) ** 2 / a**2 * (1.0 + eta_)
    roots = find_roots(CharPoly((1.0, -q_lin, q_const)))
    np_report = classify(roots, n_jumps=2, n_states=0)
    divine = (a * be, be)
    div_report = classify(divine, n_jumps=2, n_states=0)
    return PolicyScenarioReport(
        a_star_pi=a_star,
        no_persistence_report=np_report,
        divine_roots=divine,
        divine_report=div_report,
    )
