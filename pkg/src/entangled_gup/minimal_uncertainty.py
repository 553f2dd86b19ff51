"""Minimal position uncertainties: closed forms, a numeric oracle, and N-particle rescaling."""
from dataclasses import dataclass
from enum import Enum
import math

import numpy as np

from .errors import BracketError, DomainError, NoMinimumError, UnsupportedAnalyticError
from .gup_models import GupKind, GupModel, admissible_dp_max, pair_bracket

INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


class Method(Enum):
    ANALYTIC = "analytic"
    NUMERIC = "numeric"


@dataclass(frozen=True)
class MinimalLengthQuery:
    model: GupModel
    entangled: bool = True
    gamma: float = 0.0
    n_particles: int = 1
    hbar: float = 1.0

    def __post_init__(self):
        if self.n_particles < 1:
            raise DomainError(f"n_particles must be >= 1, got {self.n_particles}")
        if self.gamma < 0:
            raise DomainError(f"gamma must be >= 0, got {self.gamma}")
        if not self.hbar > 0:
            raise DomainError(f"hbar must be positive, got {self.hbar}")


@dataclass(frozen=True)
class MinimumResult:
    dq_min: float
    dp_star: float
    method: Method


def lower_bound_ratio(query, dp):
    """``g(dP) = RHS(dP) / dP``, the smallest dQ compatible with spread dP."""
    scale = 0.25 if query.entangled else 0.5
    return scale * query.hbar * pair_bracket(query.model, dp, query.gamma) / dp


def _check_has_minimum(model):
    if model.kind is GupKind.HUP:
        raise NoMinimumError("no minimum exists: the HUP bound hbar/(4 dP) has infimum 0")
    if model.param == 0:
        raise NoMinimumError(f"no minimum exists: {model.kind.value} with zero parameter reduces to HUP")


def analytic_min(query):
    """Closed-form minimum of ``g`` for gamma = 0.

    Entangled minima (hbar = 1): KMM sqrt(beta)/2, ADV alpha,
    Pedram (3/8) sqrt(3 beta), exponential sqrt(e beta / 2)/2. The separable
    minimum is exactly twice the entangled one at the same minimizer.
    """
    model = query.model
    _check_has_minimum(model)
    if query.gamma != 0:
        raise UnsupportedAnalyticError("closed forms assume gamma = 0; use numeric_min")
    a, hbar = model.param, query.hbar
    kind = model.kind
    if kind is GupKind.KMM:
        dq, dp = 0.5 * hbar * math.sqrt(a), 1.0 / math.sqrt(a)
    elif kind is GupKind.ADV:
        dq, dp = hbar * a, 0.5 / a
    elif kind is GupKind.PEDRAM:
        dq, dp = 0.375 * hbar * math.sqrt(3.0 * a), 1.0 / math.sqrt(3.0 * a)
    else:
        dq, dp = 0.5 * hbar * math.sqrt(math.e * a / 2.0), 1.0 / math.sqrt(2.0 * a)
    if not query.entangled:
        dq = 2.0 * dq
    return MinimumResult(dq, dp, Method.ANALYTIC)


def golden_section(f, lo, hi, tol=1e-12, max_iter=500):
    """Minimize a unimodal ``f`` on ``[lo, hi]`` to interval width ``tol``.

    Returns ``(x, f(x))``. Stops early once the interior points collide in
    floating point.
    """
    x1 = hi - INVPHI * (hi - lo)
    x2 = lo + INVPHI * (hi - lo)
    f1, f2 = f(x1), f(x2)
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - INVPHI * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + INVPHI * (hi - lo)
            f2 = f(x2)
        if x1 >= x2:
            break
    if f1 <= f2:
        return x1, f1
    return x2, f2


def _bracket(h, t0, step=1.0, max_iter=200):
    """Downhill walk with growing steps until ``h`` turns up; returns (a, b, c)."""
    a, b = t0, t0 + step
    ha, hb = h(a), h(b)
    if hb > ha:
        a, b, ha, hb = b, a, hb, ha
        step = -step
    for _ in range(max_iter):
        step *= 1.6180339887498949
        c = b + step
        hc = h(c)
        if hc > hb:
            return (a, c) if a < c else (c, a)
        a, b, ha, hb = b, c, hb, hc
    raise BracketError(
        "failed to bracket a minimum: g(dP) is monotone over the searched range "
        f"(last dP ~ {math.exp(b) if abs(b) < 700 else b:.6g})"
    )


def numeric_min(query, tol=1e-12):
    """Minimize ``g(dP)`` numerically; supports gamma > 0.

    The spread is searched in log space on (0, inf), or in logit space on
    (0, dP_max) for the Pedram model, so the domain edges are never touched.
    Bracketing by a growing downhill walk, then golden-section search in the
    transformed variable to relative tolerance ``tol``.
    """
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol}")
    model = query.model
    _check_has_minimum(model)
    upper = admissible_dp_max(model, query.gamma)
    if upper == 0.0:
        raise DomainError("Pedram pole: gamma >= 1 leaves no admissible dP")

    if np.isfinite(upper):
        t0 = 0.0

        def to_dp(t):
            return upper / (1.0 + math.exp(-t))
    else:
        # start at the model's natural momentum scale to keep exp() finite
        t0 = -math.log(model.param) if model.kind is GupKind.ADV else -0.5 * math.log(model.param)

        def to_dp(t):
            return math.exp(t)

    def h(t):
        if abs(t) > 700:
            return math.inf
        return float(lower_bound_ratio(query, to_dp(t)))

    # both maps have |d log dP / dt| <= 1, so a width-tol interval in t is
    # a relative tolerance tol on dP
    lo, hi = _bracket(h, t0)
    t_star, dq = golden_section(h, lo, hi, tol=tol)
    return MinimumResult(dq, to_dp(t_star), Method.NUMERIC)


def effective_parameter(param, n_particles, kind=None):
    """Composite-system deformation parameter ``param / N**2``.

    For ``kind=GupKind.ADV`` the rule acts on alpha squared, giving
    ``alpha / N``.
    """
    if n_particles < 1:
        raise DomainError(f"n_particles must be >= 1, got {n_particles}")
    if param < 0:
        raise DomainError(f"param must be >= 0, got {param}")
    if kind is GupKind.ADV:
        return param / n_particles
    return param / (n_particles * n_particles)


def _pair_parameter(kind, param, n_particles):
    # inverse of effective_parameter
    if kind is GupKind.ADV:
        return param * n_particles
    return param * n_particles * n_particles


def minimal_length(model, single_particle_param, n_particles=2, hbar=1.0):
    """Minimal length seen through an N-particle system, N in {1, 2}.

    For a pair, the parameter in the entangled bound is the composite one,
    so the fundamental parameter ``single_particle_param`` equals
    ``effective_parameter(pair_param, 2)``. Evaluating the entangled minimum
    at that ``pair_param`` gives back the separable minimal length: for KMM,
    ``hbar * sqrt(beta)``. ``N = 1`` is the separable minimum itself.
    """
    kind = model.kind if isinstance(model, GupModel) else GupKind.parse(model)
    if kind is GupKind.HUP:
        raise NoMinimumError("no minimal length exists for the undeformed commutator")
    if not single_particle_param > 0:
        raise DomainError(f"single_particle_param must be positive, got {single_particle_param}")
    if n_particles == 1:
        query = MinimalLengthQuery(GupModel(kind, single_particle_param), entangled=False, hbar=hbar)
        return analytic_min(query).dq_min
    if n_particles != 2:
        raise DomainError("entangled minimal uncertainties are only derived for pairs (N = 2)")
    pair_param = _pair_parameter(kind, single_particle_param, n_particles)
    query = MinimalLengthQuery(GupModel(kind, pair_param), entangled=True, n_particles=2, hbar=hbar)
    return analytic_min(query).dq_min
