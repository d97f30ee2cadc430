"""Linear rational-expectations solution, simulation and ergodic moments.

The canonical system is E_t X_{t+1} = B X_t + Phi u_t with exogenous
vector u_t = (psi_t, psi_{t-1}, a_t); psi is white noise, technology is
AR(1).  Jumps are solved forward along the unstable eigenvalue block,
predetermined variables backward.  In the full variant dispersion is a
backward variable dated t, so the jump restriction substitutes its
realized recursion before inverting.  Simulation reduces to scalar IIR
filters, keeping million-period paths cheap and bit-reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.signal import lfilter

from calvobench.model_core import DomainError, ModelParams, validate
from calvobench.phillips import (
    CoefficientSet,
    MomentSet,
    MomentDivergence,
    general_coeffs,
    ge_impulse,
    singular_slopes,
    trend_coeffs,
)
from calvobench.determinacy import DegenerateSystem, DeterminacyReport, classify
from calvobench.steady_state import compute_nss


class NonHyperbolic(ArithmeticError):
    """An eigenvalue sits on the unit circle; no hyperbolic split exists."""


class WrongCount(ArithmeticError):
    """Unstable eigenvalues do not match the number of jump variables."""


class NonConvergence(ArithmeticError):
    pass


_EXOG_DIM = 3  # (psi_t, psi_{t-1}, a_t)


@dataclass(frozen=True)
class StateSpace:
    """Canonical form E_t X_{t+1} = transition X_t + shock_loading u_t.

    X orders jumps first.  The trailing components are backward-looking;
    they relate to the predetermined vector z_t and current jumps through
    x_state = x_state_from_z @ z_t + x_state_from_jump @ jumps_t, and z
    advances by z_{t+1} = state_persist @ z_t + state_from_jump @ jumps_t.
    """

    transition: np.ndarray
    shock_loading: np.ndarray
    variables: tuple[str, ...]
    n_jumps: int
    n_states: int
    variant: str
    rho_a: float
    state_from_jump: np.ndarray
    state_persist: np.ndarray
    x_state_from_z: np.ndarray
    x_state_from_jump: np.ndarray


@dataclass(frozen=True)
class ShockSpec:
    dist: str = "normal"  # normal | uniform | two_point
    scale_psi: float = 0.0
    scale_a: float = 0.0
    rho_a: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.dist not in ("normal", "uniform", "two_point"):
            raise DomainError("dist", f"unknown distribution {self.dist!r}")
        if self.scale_psi < 0.0 or self.scale_a < 0.0:
            raise DomainError("scale", "shock scales must be non-negative")
        if not 0.0 <= self.rho_a < 1.0:
            raise DomainError("rho_a", "persistence must lie in [0,1)")


@dataclass(frozen=True)
class SolvedSystem:
    """Reduced form: jumps_t = J z_t + K u_t, z_{t+1} = Az z_t + Au u_t."""

    space: StateSpace
    J: np.ndarray
    K: np.ndarray
    Az: np.ndarray
    Au: np.ndarray
    eigenvalues: tuple[complex, ...]

    @property
    def backward_spectral_radius(self) -> float:
        if self.Az.size == 0:
            return 0.0
        return float(np.max(np.abs(np.linalg.eigvals(self.Az))))


@dataclass(frozen=True)
class Path:
    pi: np.ndarray
    y: np.ndarray
    delta: np.ndarray
    psi: np.ndarray
    a: np.ndarray

    @property
    def length(self) -> int:
        return int(self.pi.shape[0])


@dataclass(frozen=True)
class ErgodicEstimate:
    moment_set: MomentSet
    standard_errors: dict[str, float]
    n_draws: int
    burn_in: int


def _limit_loadings(p: ModelParams, cs: CoefficientSet) -> tuple[np.ndarray, np.ndarray]:
    """Phillips and Euler row loadings onto (psi, psi_lag, a).

    The Phillips row carries the demand-difference term with weight b4/b3;
    the Euler row combines the direct demand shock with the expected-
    inflation substitution.  In gap coordinates with a natural-rate
    tracking intercept the technology column is zero.
    """
    b4 = cs.b4 if cs.b4 is not None else ge_impulse(p)
    ratio = b4 / cs.b3
    pc = np.array([-ratio, ratio, 0.0])
    euler = np.array([(ratio - 1.0) / p.sigma, -ratio / p.sigma, 0.0])
    return pc, euler


def build_state_space(
    cs: CoefficientSet | None,
    variant: str,
    p: ModelParams,
    require_determinate: bool = True,
    unobserved_natural_rate: bool = False,
) -> StateSpace:
    """Assemble the canonical matrices for one of the three variants.

    sqrt_eps: (pi, y, pi_lag), 2 jumps / 1 state, no dispersion feedback.
    full:     (pi, y, Delta, pi_lag), 2 jumps / 2 states.
    singular: (pi, y), purely forward; coefficients unused; pass
              unobserved_natural_rate=True to keep technology in demand.

    Refuses systems that do not classify exists_unique unless the caller
    overrides with require_determinate=False.
    """
    p = validate(p)
    if variant == "singular":
        _, omega = singular_slopes(p)
        be, sig = p.beta, p.sigma
        B = np.array(
            [
                [1.0 / be, -omega / be],
                [
                    (be * p.a_pi - 1.0) / (be * sig),
                    (omega + be * (sig + p.a_y)) / (be * sig),
                ],
            ]
        )
        load_a = (1.0 - p.rho_a) * (sig + p.eta) / sig if unobserved_natural_rate else 0.0
        Phi = np.array([[0.0, 0.0, 0.0], [-1.0 / sig, 0.0, load_a]])
        space = StateSpace(
            transition=B,
            shock_loading=Phi,
            variables=("pi", "y"),
            n_jumps=2,
            n_states=0,
            variant=variant,
            rho_a=p.rho_a,
            state_from_jump=np.zeros((0, 2)),
            state_persist=np.zeros((0, 0)),
            x_state_from_z=np.zeros((0, 0)),
            x_state_from_jump=np.zeros((0, 2)),
        )
    elif variant in ("sqrt_eps", "full"):
        if cs is None:
            raise ValueError("coefficient set required for this variant")
        if cs.b3 == 0.0 or cs.c3 == 0.0 or cs.d3 == 0.0:
            raise DegenerateSystem("a forward coefficient is zero")
        B_, B0, B1, B2 = cs.b / cs.b3, cs.b0 / cs.b3, cs.b1 / cs.b3, cs.b2 / cs.b3
        C_, C0, C1, C2 = cs.c / cs.c3, cs.c0 / cs.c3, cs.c1 / cs.c3, cs.c2 / cs.c3
        pc_load, euler_load = _limit_loadings(p, cs)
        if variant == "sqrt_eps":
            B = np.array(
                [
                    [B_, -B1, -B0],
                    [-C1, C_, -C0],
                    [1.0, 0.0, 0.0],
                ]
            )
            Phi = np.vstack([pc_load, euler_load, np.zeros(3)])
            space = StateSpace(
                transition=B,
                shock_loading=Phi,
                variables=("pi", "y", "pi_lag"),
                n_jumps=2,
                n_states=1,
                variant=variant,
                rho_a=p.rho_a,
                state_from_jump=np.array([[1.0, 0.0]]),
                state_persist=np.zeros((1, 1)),
                x_state_from_z=np.eye(1),
                x_state_from_jump=np.zeros((1, 2)),
            )
        else:
            D_, D0, D1, D2 = cs.d / cs.d3, cs.d0 / cs.d3, cs.d1 / cs.d3, cs.d2 / cs.d3
            B = np.array(
                [
                    [B_, -B1, -B2, -B0],
                    [-C1, C_, -C2, -C0],
                    [-D1, -D2, D_, -D0],
                    [1.0, 0.0, 0.0, 0.0],
                ]
            )
            # realized dispersion recursion: Delta_t = dp0 pi_t + persist Delta_{t-1}
            dp0 = -cs.d1 * cs.b3 / (cs.d3 * cs.b)
            persist = cs.d / cs.d3 - dp0 * (cs.b2 / cs.b3)
            Phi = np.vstack([pc_load, euler_load, dp0 * pc_load, np.zeros(3)])
            space = StateSpace(
                transition=B,
                shock_loading=Phi,
                variables=("pi", "y", "delta", "pi_lag"),
                n_jumps=2,
                n_states=2,
                variant=variant,
                rho_a=p.rho_a,
                # z = (pi_{t-1}, Delta_{t-1})
                state_from_jump=np.array([[1.0, 0.0], [dp0, 0.0]]),
                state_persist=np.array([[0.0, 0.0], [0.0, persist]]),
                # trailing X components (Delta_t, pi_{t-1}) from (z, jumps)
                x_state_from_z=np.array([[0.0, persist], [1.0, 0.0]]),
                x_state_from_jump=np.array([[dp0, 0.0], [0.0, 0.0]]),
            )
    else:
        raise ValueError(f"unknown variant {variant!r}")

    if require_determinate:
        rpt = classify_space(space)
        if rpt.classification != "exists_unique":
            raise WrongCount(
                f"{variant} system is {rpt.classification}; pass "
                "require_determinate=False to build anyway"
            )
    return space


def classify_space(space: StateSpace, tol: float = 1e-8) -> DeterminacyReport:
    lam = np.linalg.eigvals(space.transition)
    lam = tuple(sorted((complex(v) for v in lam), key=abs))
    return classify(lam, n_jumps=space.n_jumps, n_states=space.n_states, tol=tol)


def _exog_transition(rho_a: float) -> np.ndarray:
    return np.array([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, rho_a]])


def solve_re(space: StateSpace, tol: float = 1e-8) -> SolvedSystem:
    """Decouple the system along the eigen decomposition of the transition.

    NonHyperbolic for unit-circle eigenvalues; WrongCount when the
    unstable block does not match the jump count.  The forward sum over
    expected shocks is solved exactly as a small Sylvester system.
    """
    B = space.transition
    lam, V = np.linalg.eig(B)
    mods = np.abs(lam)
    if np.any(np.abs(mods - 1.0) < tol):
        raise NonHyperbolic(f"eigenvalue modulus within {tol} of 1: {sorted(mods)}")
    unstable = mods > 1.0
    nj, ns = space.n_jumps, space.n_states
    if int(unstable.sum()) != nj:
        raise WrongCount(f"{int(unstable.sum())} unstable eigenvalues for {nj} jumps")
    P = np.linalg.inv(V)
    PJ = P[unstable, :]
    lam_u = lam[unstable]
    F = PJ @ space.shock_loading
    R = _exog_transition(space.rho_a)
    # W = sum_i Lam^-(i+1) F R^i  <=>  Lam W - W R = F (solved exactly)
    Lam = np.diag(lam_u)
    lhs = np.kron(np.eye(_EXOG_DIM), Lam) - np.kron(R.T, np.eye(nj))
    W = np.linalg.solve(lhs, F.reshape(-1, order="F")).reshape((nj, _EXOG_DIM), order="F")
    # restriction PJ X_t = -W u_t with the trailing block substituted out
    PJ_j = PJ[:, :nj]
    PJ_s = PJ[:, nj:]
    A_j = PJ_j + PJ_s @ space.x_state_from_jump
    A_s = PJ_s @ space.x_state_from_z if ns else np.zeros((nj, 0))
    cond = np.linalg.cond(A_j)
    if not np.isfinite(cond) or cond > 1e12:
        raise NonConvergence("jump block numerically singular; no recursive solution")
    J = -np.linalg.solve(A_j, A_s) if ns else np.zeros((nj, 0))
    K = -np.linalg.solve(A_j, W)
    J = np.real_if_close(J, tol=1e6)
    K = np.real_if_close(K, tol=1e6)
    if np.iscomplexobj(J) or np.iscomplexobj(K):
        imag = max(
            float(np.max(np.abs(np.imag(J)))) if J.size else 0.0,
            float(np.max(np.abs(np.imag(K)))),
        )
        if imag > 1e-9:
            raise NonConvergence("complex residue in the solved system")
        J, K = np.real(J), np.real(K)
    Fj, Fz = space.state_from_jump, space.state_persist
    Az = Fz + Fj @ J if ns else np.zeros((0, 0))
    Au = Fj @ K if ns else np.zeros((0, _EXOG_DIM))
    sol = SolvedSystem(
        space=space,
        J=np.asarray(J, dtype=float),
        K=np.asarray(K, dtype=float),
        Az=np.asarray(Az, dtype=float),
        Au=np.asarray(Au, dtype=float),
        eigenvalues=tuple(sorted((complex(v) for v in lam), key=abs)),
    )
    if ns and sol.backward_spectral_radius >= 1.0:
        raise NonConvergence("backward block unstable after the split")
    return sol


_CHUNK = 1 << 16


def _innovations(spec: ShockSpec, T: int, stream: int) -> np.ndarray:
    """Unit-variance innovations drawn in fixed-size chunks from spawned
    seed sequences, so chunk-parallel consumers reproduce the stream
    bit-for-bit under the fixed reduction order."""
    root = np.random.SeedSequence(entropy=spec.seed, spawn_key=(stream,))
    n_chunks = (T + _CHUNK - 1) // _CHUNK
    children = root.spawn(n_chunks)
    out = np.empty(T)
    for i, child in enumerate(children):
        rng = np.random.default_rng(child)
        lo = i * _CHUNK
        hi = min(T, lo + _CHUNK)
        m = hi - lo
        if spec.dist == "normal":
            draw = np.clip(rng.standard_normal(m), -6.0, 6.0)
        elif spec.dist == "uniform":
            draw = rng.uniform(-math.sqrt(3.0), math.sqrt(3.0), m)
        else:
            draw = np.where(rng.random(m) < 0.5, -1.0, 1.0)
        out[lo:hi] = draw
    return out


def draw_shocks(spec: ShockSpec, T: int) -> tuple[np.ndarray, np.ndarray]:
    """(psi_t, a_t) paths: white-noise demand, AR(1) technology."""
    psi = spec.scale_psi * _innovations(spec, T, stream=0)
    eps_a = spec.scale_a * _innovations(spec, T, stream=1)
    a = lfilter([1.0], [1.0, -spec.rho_a], eps_a)
    return psi, a


def simulate(sys: SolvedSystem, shocks: ShockSpec, T: int) -> Path:
    """Length-T deviation paths; deterministic given the seed; identically
    zero when both shock scales vanish; exactly linear in the scales."""
    if T <= 0:
        raise ValueError("T must be positive")
    if shocks.rho_a != sys.space.rho_a:
        raise DomainError("rho_a", "ShockSpec and StateSpace persistence differ")
    psi, a = draw_shocks(shocks, T)
    psi_lag = np.concatenate(([0.0], psi[:-1]))
    u = np.vstack([psi, psi_lag, a])

    ns = sys.Az.shape[0]
    if ns == 0:
        jumps = sys.K @ u
    else:
        forcing = sys.Au @ u
        lagged = np.concatenate((np.zeros((ns, 1)), forcing[:, :-1]), axis=1)
        if ns == 1:
            z = lfilter([1.0], [1.0, -float(sys.Az[0, 0])], lagged[0])[None, :]
        else:
            evals, Q = np.linalg.eig(sys.Az)
            g = np.linalg.solve(Q, lagged)
            zt = np.empty((ns, T), dtype=complex)
            for k in range(ns):
                zt[k] = lfilter([1.0], [1.0, -evals[k]], g[k])
            z = np.real(Q @ zt)
        jumps = sys.J @ z + sys.K @ u
    pi = jumps[0]
    y = jumps[1]
    if sys.space.variant == "full":
        dp0 = float(sys.space.state_from_jump[1, 0])
        persist = float(sys.space.state_persist[1, 1])
        delta = lfilter([dp0], [1.0, -persist], pi)
    else:
        delta = np.zeros(T)
    return Path(pi=pi, y=y, delta=delta, psi=psi, a=a)


def persistence_stats(path: Path, burn_in: int = 0) -> dict[str, float]:
    """Lag-1 autocorrelations of inflation and the output gap."""

    def r1(x: np.ndarray) -> float:
        x = x[burn_in:]
        x = x - x.mean()
        v = float(x @ x)
        if v == 0.0:
            return 0.0
        return float(x[1:] @ x[:-1]) / v

    return {"pi": r1(path.pi), "y": r1(path.y)}


_MOMENT_FIELDS = (
    "m_theta",
    "m_theta_1",
    "m_theta_2",
    "m_euler_1",
    "m_euler_2",
    "m_joint_disp",
    "m_disp_pow",
)


def ergodic_moments(
    path: Path, p: ModelParams, burn_in: int | None = None, n_batches: int = 32
) -> ErgodicEstimate:
    """Sample analogues of the MomentSet from pi_t = pi_bar + pi_hat_t.

    The Euler moments use the joint simulated path of (psi, y, pi) with
    output including its flexible-price component; point values come from
    the stochastic-equilibrium relations so a degenerate path reproduces
    the non-stochastic steady state.  Standard errors are batch means.
    """
    p = validate(p)
    T = path.length
    if burn_in is None:
        burn_in = max(1_000, T // 10) if T > 2_000 else 0
    if burn_in >= T:
        raise ValueError("burn-in must be shorter than the path")
    pi = p.pi_bar + path.pi[burn_in:]
    yf = (1.0 + p.eta) / (p.sigma + p.eta) * path.a[burn_in:]
    y_tot = path.y[burn_in:] + yf
    psi = path.psi[burn_in:]
    g = 1.0 + pi
    th, a_ = p.theta, p.alpha

    bracket = 1.0 - a_ * g ** (th - 1.0)
    if np.any(bracket <= 0.0) or np.any(g <= 0.0):
        raise MomentDivergence("path leaves the admissible inflation band")

    sdf = np.exp(psi - p.sigma * y_tot)
    fns = {
        "m_theta": g**th,
        "m_theta_1": g ** (th - 1.0),
        "m_theta_2": g ** (th - 2.0),
        "m_euler_1": sdf / g,
        "m_euler_2": sdf / g**2,
        "m_joint_disp": g ** (th - 2.0) * bracket ** (1.0 / (th - 1.0)),
        "m_disp_pow": bracket ** (th / (th - 1.0)),
    }
    means = {k: float(np.mean(v)) for k, v in fns.items()}
    n = pi.shape[0]
    bs = max(1, n // n_batches)
    ses = {}
    for k, v in fns.items():
        bm = np.asarray(
            [float(np.mean(v[i * bs : (i + 1) * bs])) for i in range(n // bs)]
        )
        ses[k] = float(bm.std(ddof=1) / math.sqrt(len(bm))) if len(bm) > 1 else 0.0

    if p.alpha * p.beta * means["m_theta"] >= 1.0:
        raise MomentDivergence("sample alpha*beta*E(1+pi)^theta >= 1")

    m = _close_point_values(p, means, float(np.mean(pi)))
    return ErgodicEstimate(moment_set=m, standard_errors=ses, n_draws=T, burn_in=burn_in)


def _close_point_values(
    p: ModelParams, means: dict[str, float], pi_point: float
) -> MomentSet:
    """Point values (delta, y) from the ergodic equilibrium relations."""
    a_, th = p.alpha, p.theta
    delta = means["m_disp_pow"] / (
        (1.0 - a_) ** (1.0 / (th - 1.0)) * (1.0 - a_ * means["m_theta"])
    )
    y = se_output(p, means, pi_point, delta)
    return MomentSet(
        pi=pi_point, y=y, delta=delta, psi=1.0, A=p.A_bar,
        **{k: means[k] for k in _MOMENT_FIELDS},
    )


def se_output(
    p: ModelParams, means: dict[str, float], pi_point: float, delta: float
) -> float:
    """Output level solving the ergodic reset-price condition."""
    a_, th, be = p.alpha, p.theta, p.beta
    g = 1.0 + pi_point
    lead = (th - 1.0) / th * ((1.0 - a_) / (1.0 - a_ * g ** (th - 1.0))) ** (
        1.0 / (th - 1.0)
    )
    ratio = (1.0 - a_ * be * means["m_theta"]) / (1.0 - a_ * be * means["m_theta_1"])
    val = lead * p.A_bar ** (1.0 + p.eta) * delta ** (-p.eta) * ratio
    return val ** (1.0 / (p.sigma + p.eta))


def se_interest_rate(p: ModelParams, m: MomentSet) -> float:
    """Nominal rate from the ergodic Euler: 1+i = 1/(beta * m_euler_1)."""
    return 1.0 / (p.beta * m.m_euler_1) - 1.0


@dataclass(frozen=True)
class FixedPointResult:
    moments: MomentSet
    coefficients: CoefficientSet
    iterations: int
    converged: bool
    history: tuple[float, ...]


def stochastic_equilibrium(
    p: ModelParams,
    shocks: ShockSpec,
    damping: float = 0.5,
    tol: float = 1e-6,
    max_iter: int = 200,
    T: int = 40_000,
) -> FixedPointResult:
    """Fixed point of moments -> coefficients -> solve/simulate -> moments.

    Moments (not coefficients) are damped and the same seed is reused
    every iteration, making the map deterministic.  Zero-noise input
    returns the degenerate moments and trend coefficients immediately;
    beta=1 is refused because the geometric moment sums lose meaning.
    """
    p = validate(p)
    if p.beta >= 1.0:
        raise DomainError("beta", "stochastic equilibrium needs beta < 1")
    if shocks.scale_psi == 0.0 and shocks.scale_a == 0.0:
        return FixedPointResult(
            moments=MomentSet.degenerate(p),
            coefficients=trend_coeffs(p),
            iterations=1,
            converged=True,
            history=(0.0,),
        )
    point_fields = _MOMENT_FIELDS + ("pi", "y", "delta")
    m = MomentSet.degenerate(p)
    history: list[float] = []
    for it in range(1, max_iter + 1):
        cs = general_coeffs(p, m)
        space = build_state_space(cs, "full", p)
        sol = solve_re(space)
        path = simulate(sol, shocks, T)
        m_new = ergodic_moments(path, p).moment_set
        diff = max(abs(getattr(m_new, f) - getattr(m, f)) for f in point_fields)
        history.append(diff)
        m = replace(
            m,
            **{
                f: (1.0 - damping) * getattr(m, f) + damping * getattr(m_new, f)
                for f in point_fields
            },
        )
        if diff < tol:
            return FixedPointResult(
                moments=m,
                coefficients=general_coeffs(p, m),
                iterations=it,
                converged=True,
                history=tuple(history),
            )
    raise NonConvergence(
        f"no fixed point within {max_iter} iterations; last gaps {history[-2:]!r}"
    )


@dataclass(frozen=True)
class InequalityReport:
    interest_below_nss: bool
    dispersion_above_nss: bool
    output_below_nss: bool
    margins: dict[str, float]
    confident: bool


def theorem2_report(
    p: ModelParams,
    result: FixedPointResult,
    shocks: ShockSpec,
    T: int = 200_000,
    n_batches: int = 20,
) -> InequalityReport:
    """Stochastic-vs-non-stochastic sign checks with batch-mean confidence.

    Verifies E i < i^NSS, Delta > Delta^NSS and Y < Y^NSS at the
    converged coefficients; margins are one-sided t-ratios and the
    confident flag requires all three above the 95% normal quantile.
    """
    p = validate(p)
    ss = compute_nss(p)
    i_nss = (1.0 + p.pi_bar) / p.beta - 1.0
    space = build_state_space(result.coefficients, "full", p)
    sol = solve_re(space)
    path = simulate(sol, shocks, T)
    burn = max(1_000, T // 10)
    n = T - burn
    bs = n // n_batches
    vals: dict[str, list[float]] = {"i": [], "delta": [], "y": []}
    for k in range(n_batches):
        sl = slice(burn + k * bs, burn + (k + 1) * bs)
        sub = Path(
            pi=path.pi[sl], y=path.y[sl], delta=path.delta[sl],
            psi=path.psi[sl], a=path.a[sl],
        )
        m = ergodic_moments(sub, p, burn_in=0).moment_set
        vals["i"].append(se_interest_rate(p, m))
        vals["delta"].append(m.delta)
        vals["y"].append(m.y)
    margins: dict[str, float] = {}
    flags: dict[str, bool] = {}
    for key, target, want_below in (
        ("i", i_nss, True),
        ("delta", ss.delta, False),
        ("y", ss.y, True),
    ):
        arr = np.asarray(vals[key])
        mean = float(arr.mean())
        se = float(arr.std(ddof=1) / math.sqrt(n_batches))
        diff = (target - mean) if want_below else (mean - target)
        margins[key] = diff / se if se > 0.0 else math.copysign(math.inf, diff)
        flags[key] = diff > 0.0
    return InequalityReport(
        interest_below_nss=flags["i"],
        dispersion_above_nss=flags["delta"],
        output_below_nss=flags["y"],
        margins=margins,
        confident=all(v > 1.645 for v in margins.values()),
    )


def natural_rate_xs(p: ModelParams) -> tuple[float, float]:
    """Inverse eigenvalues (x1, x2) of the singular system."""
    from calvobench.determinacy import q_conditions

    q0, q1 = q_conditions(p)
    disc = q0 * q0 - 4.0 * q1
    if disc < 0.0:
        raise NonConvergence("complex inverse eigenvalues in the singular system")
    s = math.sqrt(disc)
    return (-q0 + s) / 2.0, (-q0 - s) / 2.0


def unobserved_natural_rate_system(p: ModelParams) -> SolvedSystem:
    """Singular system with the natural-rate intercept removed from policy:
    technology enters demand with weight (1-rho_a)(sigma+eta)/sigma."""
    p = validate(p)
    space = build_state_space(
        None, "singular", p, require_determinate=False, unobserved_natural_rate=True
    )
    rpt = classify_space(space)
    if rpt.classification != "exists_unique":
        raise WrongCount(f"singular system is {rpt.classification}")
    return solve_re(space)
