"""Executable common-root test for cross-equation cancellation.

A linear expectational block loses dimension exactly when two equations
share a lag-polynomial root, or when a variable entering both without
dynamics does so with the same marginal effect.  The Calvo price block
has both degeneracies at zero trend inflation (shared root 1/(alpha*beta)
and identical demand-shock constants); any trend inflation splits them.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from calvobench.model_core import DomainError, ModelParams, validate


@dataclass(frozen=True)
class LagPolySystem:
    """Equations map variable name -> coefficient list (L^0, L^1, ...).

    Polynomials are trimmed of trailing zeros on construction.  The
    first-degree-or-higher entries carry the dynamics; degree-0 entries
    are constants in the Theorem-7 sense.
    """

    equations: tuple[dict[str, tuple[float, ...]], ...]
    label: str = ""

    def __post_init__(self):
        if not self.equations:
            raise ValueError("a system needs at least one equation")
        trimmed = []
        for eq in self.equations:
            t = {}
            for var, coeffs in eq.items():
                c = list(coeffs)
                while len(c) > 1 and c[-1] == 0.0:
                    c.pop()
                t[var] = tuple(float(x) for x in c)
            trimmed.append(t)
        object.__setattr__(self, "equations", tuple(trimmed))


@dataclass(frozen=True)
class ReductionReport:
    shared_roots: tuple[tuple[complex, tuple[int, int]], ...]
    constant_cancellations: tuple[str, ...]

    @property
    def reduced(self) -> bool:
        return bool(self.shared_roots) or bool(self.constant_cancellations)


def _poly_roots(coeffs: tuple[float, ...]) -> np.ndarray:
    if len(coeffs) < 2:
        return np.empty(0, dtype=complex)
    return np.roots(list(reversed(coeffs)))


def _normalization(eq: dict[str, tuple[float, ...]]) -> float:
    """Scale factor making an equation's representation canonical.

    The leading coefficient of its highest-degree polynomial if any
    dynamics are present, otherwise its largest coefficient magnitude.
    Dividing by this makes scan invariant to rescaling an equation.
    """
    best_deg, lead = -1, 0.0
    for coeffs in eq.values():
        deg = len(coeffs) - 1
        if deg > best_deg and coeffs[-1] != 0.0:
            best_deg, lead = deg, coeffs[-1]
    if best_deg >= 1:
        return lead
    mags = [abs(c) for coeffs in eq.values() for c in coeffs]
    return max(mags) if mags and max(mags) > 0.0 else 1.0


def scan(system: LagPolySystem, tol: float = 1e-10) -> ReductionReport:
    """Flag shared lag-polynomial roots and constant-function cancellations.

    Root matching uses max(tol, 1e-8*|root|); constants must be present
    in both equations with no dynamics and equal coefficients after each
    equation is normalized by its leading dynamic coefficient.  Symmetric
    in equation order and invariant to rescaling any equation.
    """
    eqs = system.equations
    norms = [_normalization(eq) for eq in eqs]
    shared: list[tuple[complex, tuple[int, int]]] = []
    cancels: set[str] = set()
    for i in range(len(eqs)):
        for j in range(i + 1, len(eqs)):
            roots_i = [r for coeffs in eqs[i].values() for r in _poly_roots(coeffs)]
            roots_j = [r for coeffs in eqs[j].values() for r in _poly_roots(coeffs)]
            for ri in roots_i:
                for rj in roots_j:
                    band = max(tol, 1e-8 * max(abs(ri), abs(rj)))
                    if abs(ri - rj) <= band:
                        shared.append((complex(ri), (i, j)))
            for var, ci in eqs[i].items():
                cj = eqs[j].get(var)
                if cj is None or len(ci) != 1 or len(cj) != 1:
                    continue
                ki = ci[0] / norms[i]
                kj = cj[0] / norms[j]
                if abs(ki - kj) <= max(tol, 1e-8 * max(abs(ki), abs(kj))):
                    cancels.add(var)
    return ReductionReport(
        shared_roots=tuple(shared),
        constant_cancellations=tuple(sorted(cancels)),
    )


def calvo_system(p: ModelParams, pi_bar: float | None = None) -> LagPolySystem:
    """Linearized reset-price block (value and weight recursions).

    Forward coefficients alpha*beta*(1+pi)^theta and
    alpha*beta*(1+pi)^(theta-1) make the polynomial roots
    1/(alpha*beta*(1+pi)^theta) and 1/(alpha*beta*(1+pi)^(theta-1)),
    coincident exactly at zero trend inflation; the demand-shock constants
    (the recursion loadings) likewise coincide only there.
    """
    pi = p.pi_bar if pi_bar is None else pi_bar
    p = validate(replace(p, pi_bar=pi))
    g = 1.0 + pi
    fa = p.alpha * p.beta * g**p.theta
    fb = p.alpha * p.beta * g ** (p.theta - 1.0)
    return LagPolySystem(
        equations=(
            {"aleph": (1.0, -fa), "psi": (1.0 - fa,)},
            {"beth": (1.0, -fb), "psi": (1.0 - fb,)},
        ),
        label=f"calvo@pi={pi}",
    )


def wage_system(alpha_w: float, beta: float, theta_w: float, eta: float = 4.0) -> LagPolySystem:
    """Linearized wage reset block at zero wage inflation.

    Both recursions discount at alpha_w*beta regardless of theta_w, so
    the lag polynomials share the root 1/(alpha_w*beta); the forcing
    terms load on wages and labor with different marginal effects, so no
    constant cancellation is implied.
    """
    if not 0.0 < alpha_w < 1.0:
        raise DomainError("alpha_w", "must lie in (0,1)")
    if theta_w <= 1.0:
        raise DomainError("theta_w", "must exceed 1")
    f = alpha_w * beta
    k = 1.0 - f
    return LagPolySystem(
        equations=(
            {
                "aleph_w": (1.0, -f),
                "w": (k * theta_w * (1.0 + eta),),
                "labor": (k * (1.0 + eta),),
            },
            {
                "beth_w": (1.0, -f),
                "w": (k * theta_w,),
                "labor": (k,),
            },
        ),
        label=f"wage@alpha_w={alpha_w}",
    )


def system_from_mapping(data: dict, label: str = "custom") -> LagPolySystem:
    """Build a system from a JSON-style map equation -> variable -> coeffs."""
    eqs = []
    for _, eq in sorted(data.items()):
        if not isinstance(eq, dict):
            raise ValueError("each equation must map variables to coefficient arrays")
        eqs.append({var: tuple(float(c) for c in coeffs) for var, coeffs in eq.items()})
    return LagPolySystem(equations=tuple(eqs), label=label)
