"""Model parameters, calibration presets and admissibility validation.

The benchmark calibration is alpha=2/3, beta=1, theta=6, sigma=1, eta=4
with policy reactions a_pi=0.5, a_y=0.5 at zero trend inflation.  All
other presets override a single field of the benchmark.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, fields, replace
from pathlib import Path


class DomainError(ValueError):
    """A parameter violates an admissibility bound; names the field."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class UnknownPreset(KeyError):
    pass


class SingularPolicy(ArithmeticError):
    """sigma + beta*a_y = 0: the Euler-policy block cannot be inverted."""


@dataclass(frozen=True)
class ModelParams:
    """Structural and policy parameters of the Calvo model.

    alpha   probability a price is NOT reset in a period, in (0,1)
    beta    discount factor, in (0,1]; beta=1 routes to analytic limits
    theta   demand elasticity, > 1
    sigma   inverse elasticity of intertemporal substitution, > 0
    eta     inverse Frisch elasticity, > 0
    a_pi    policy reaction to inflation
    a_y     policy reaction to the output gap
    rho_a   technology persistence, in [0,1)
    pi_bar  trend (net) inflation per period
    A_bar   steady-state technology level, > 0
    """

    alpha: float = 2.0 / 3.0
    beta: float = 1.0
    theta: float = 6.0
    sigma: float = 1.0
    eta: float = 4.0
    a_pi: float = 0.5
    a_y: float = 0.5
    rho_a: float = 0.0
    pi_bar: float = 0.0
    A_bar: float = 1.0


# A validated ModelParams is just a ModelParams; the alias documents intent
# at call sites that require validate() to have run.
ValidatedParams = ModelParams


def validate(p: ModelParams) -> ValidatedParams:
    """Check every admissibility bound, returning the parameters unchanged.

    Raises DomainError naming the violated field.  Idempotent.
    """
    if not 0.0 < p.alpha < 1.0:
        raise DomainError("alpha", f"must lie in (0,1), got {p.alpha}")
    if not 0.0 < p.beta <= 1.0:
        raise DomainError("beta", f"must lie in (0,1], got {p.beta}")
    if not p.theta > 1.0:
        raise DomainError("theta", f"must exceed 1, got {p.theta}")
    if not p.sigma > 0.0:
        raise DomainError("sigma", f"must be positive, got {p.sigma}")
    if not p.eta > 0.0:
        raise DomainError("eta", f"must be positive, got {p.eta}")
    if not 0.0 <= p.rho_a < 1.0:
        raise DomainError("rho_a", f"must lie in [0,1), got {p.rho_a}")
    if not p.A_bar > 0.0:
        raise DomainError("A_bar", f"must be positive, got {p.A_bar}")
    if not p.pi_bar > -1.0:
        raise DomainError("pi_bar", f"must exceed -1, got {p.pi_bar}")
    # price-level construction must be solvable: alpha(1+pi)^(theta-1) < 1
    if p.alpha * (1.0 + p.pi_bar) ** (p.theta - 1.0) >= 1.0:
        bound = (1.0 / p.alpha) ** (1.0 / (p.theta - 1.0)) - 1.0
        raise DomainError(
            "pi_bar",
            f"alpha*(1+pi_bar)^(theta-1) >= 1; need pi_bar < {bound:.6g}",
        )
    return p


def require_policy_regular(p: ModelParams) -> None:
    """Raise SingularPolicy when sigma + beta*a_y = 0 (Euler division)."""
    if abs(p.sigma + p.beta * p.a_y) < 1e-15:
        raise SingularPolicy(
            f"sigma + beta*a_y = {p.sigma + p.beta * p.a_y}; coefficient "
            "formulas divide by this combination"
        )


_BENCH = ModelParams()

_PRESETS: dict[str, ModelParams] = {
    "benchmark": _BENCH,
    "eta1": replace(_BENCH, eta=1.0),
    "eta2": replace(_BENCH, eta=2.0),
    "eta6": replace(_BENCH, eta=6.0),
    "alpha06": replace(_BENCH, alpha=0.6),
    "alpha08": replace(_BENCH, alpha=0.8),
    "ay0": replace(_BENCH, a_y=0.0),
    "ay1": replace(_BENCH, a_y=1.0),
    "ay15": replace(_BENCH, a_y=1.5),
    "ay2": replace(_BENCH, a_y=2.0),
    "ay25": replace(_BENCH, a_y=2.5),
    "inactive": replace(_BENCH, a_pi=0.0, a_y=0.0),
    "near_blowup": replace(_BENCH, a_pi=1.0 - 1e-6),
}

PRESET_NAMES = tuple(_PRESETS)


def preset(name: str) -> ModelParams:
    """Return the named calibration; always passes validate()."""
    try:
        return validate(_PRESETS[name])
    except KeyError:
        raise UnknownPreset(
            f"{name!r}; known presets: {', '.join(PRESET_NAMES)}"
        ) from None


_FIELD_NAMES = {f.name for f in fields(ModelParams)}


def params_from_mapping(data: dict) -> ModelParams:
    """Build ModelParams from a plain mapping; unknown keys are rejected."""
    unknown = set(data) - _FIELD_NAMES
    if unknown:
        raise DomainError(sorted(unknown)[0], "unknown configuration key")
    base = ModelParams(**{k: float(v) for k, v in data.items()})
    return validate(base)


def load_params(path: str | Path) -> ModelParams:
    """Load parameters from a .json or .toml config file."""
    path = Path(path)
    if path.suffix == ".json":
        data = json.loads(path.read_text())
    elif path.suffix == ".toml":
        try:
            import tomllib  # type: ignore[import-not-found]
        except ModuleNotFoundError:
            import tomli as tomllib  # type: ignore[no-redef]
        data = tomllib.loads(path.read_text())
    else:
        raise DomainError("config", f"unsupported config format {path.suffix!r}")
    if not isinstance(data, dict):
        raise DomainError("config", "top-level config must be a table/object")
    return params_from_mapping(data)


def params_to_dict(p: ModelParams) -> dict:
    return {f.name: getattr(p, f.name) for f in fields(ModelParams)}


def inflation_upper_bound(p: ModelParams) -> float:
    """Largest admissible trend inflation (1/alpha)^(1/(theta-1)) - 1."""
    return math.exp(-math.log(p.alpha) / (p.theta - 1.0)) - 1.0
