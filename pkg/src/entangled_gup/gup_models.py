"""Deformed commutators and the uncertainty bounds they induce.

Every model is a commutator ``[x, p] = i hbar f(p)``. For a pair of identical
particles with equal per-particle spreads the entangled bound reads
``dQ_i dP_i >= (hbar/4) * B`` and the separable one-particle bound
``dx dp >= (hbar/2) * B``, where ``B`` is ``f`` averaged over the momentum
distribution (for Pedram and exponential models, ``f`` evaluated at the
second moment, which is a lower bound by convexity).
"""
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import kernels
from .errors import DomainError


class GupKind(Enum):
    HUP = "hup"
    KMM = "kmm"
    ADV = "adv"
    PEDRAM = "pedram"
    EXP = "exp"

    @property
    def code(self):
        return _CODES[self]

    @property
    def symbol(self):
        """Name of the deformation parameter."""
        if self is GupKind.ADV:
            return "alpha"
        if self is GupKind.HUP:
            return None
        return "beta"

    @classmethod
    def parse(cls, text):
        try:
            return cls(str(text).strip().lower())
        except ValueError:
            names = ", ".join(k.value for k in cls)
            raise DomainError(f"unknown model {text!r} (expected one of: {names})") from None


_CODES = {
    GupKind.HUP: kernels.HUP,
    GupKind.KMM: kernels.KMM,
    GupKind.ADV: kernels.ADV,
    GupKind.PEDRAM: kernels.PEDRAM,
    GupKind.EXP: kernels.EXP,
}

# commutator factor, entangled pair bound, entangled minimum
MODEL_FORMULAS = {
    GupKind.HUP: ("1", "(hbar/4)", "none (infimum 0)"),
    GupKind.KMM: ("1 + beta p^2", "(hbar/4)[1 + beta dP^2 + gamma]", "(hbar/2) sqrt(beta)"),
    GupKind.ADV: (
        "1 - 2 alpha p + 4 alpha^2 p^2",
        "(hbar/4)[1 + 4 alpha^2 dP^2 + gamma']",
        "hbar alpha",
    ),
    GupKind.PEDRAM: (
        "1 / (1 - beta p^2)",
        "(hbar/4) / [1 - beta dP^2 - gamma]",
        "(3 hbar/8) sqrt(3 beta)",
    ),
    GupKind.EXP: ("exp(beta p^2)", "(hbar/4) exp(beta dP^2 + gamma)", "(hbar/2) sqrt(e beta / 2)"),
}


@dataclass(frozen=True)
class GupModel:
    """A deformation family and its parameter.

    ``param`` is beta (inverse momentum squared) for KMM, PEDRAM and EXP,
    alpha (inverse momentum) for ADV, and ignored for HUP.
    """

    kind: GupKind
    param: float = 0.0

    def __post_init__(self):
        if isinstance(self.kind, str):
            object.__setattr__(self, "kind", GupKind.parse(self.kind))
        param = float(self.param)
        if not np.isfinite(param) or param < 0:
            raise DomainError(f"deformation parameter must be finite and >= 0, got {self.param}")
        if self.kind is GupKind.HUP:
            param = 0.0
        object.__setattr__(self, "param", param)

    def __str__(self):
        if self.kind is GupKind.HUP:
            return "hup"
        return f"{self.kind.value}({self.kind.symbol}={self.param:g})"


@dataclass(frozen=True)
class MomentumStats:
    """Per-particle momentum statistics: spread, mean, and second moment.

    Build from any two of the three with the classmethods; the second moment
    is always ``dp**2 + mean_p**2``.
    """

    dp: float
    mean_p: float = 0.0

    def __post_init__(self):
        dp = float(self.dp)
        if not dp > 0 or not np.isfinite(dp):
            raise DomainError(f"momentum spread dp must be positive, got {self.dp}")
        object.__setattr__(self, "dp", dp)
        object.__setattr__(self, "mean_p", float(self.mean_p))

    @property
    def mean_p_sq(self):
        return self.dp * self.dp + self.mean_p * self.mean_p

    @classmethod
    def from_moments(cls, mean_p, mean_p_sq):
        var = mean_p_sq - mean_p * mean_p
        if not var > 0:
            raise DomainError("second moment must exceed the squared mean")
        return cls(np.sqrt(var), mean_p)

    @classmethod
    def from_spread_and_second(cls, dp, mean_p_sq):
        # sign of the mean is not recoverable; the non-negative root is used
        rest = mean_p_sq - dp * dp
        if rest < 0:
            raise DomainError("second moment is smaller than dp**2")
        return cls(dp, np.sqrt(rest))


def gamma(model, stats):
    """Offset from the squared mean momentum: beta<p>^2, or 4 alpha^2 <p>^2 for ADV."""
    kind = model.kind
    if kind is GupKind.HUP:
        return 0.0
    if kind is GupKind.ADV:
        return 4.0 * model.param * model.param * stats.mean_p * stats.mean_p
    return model.param * stats.mean_p * stats.mean_p


@dataclass(frozen=True)
class BoundContext:
    """Everything a pair bound needs. ``gamma`` is derived, never passed in.

    With ``opposite_momenta`` (the default) the ADV linear term cancels
    between the two particles, <P1> + <P2> = 0.
    """

    model: GupModel
    stats: MomentumStats
    hbar: float = 1.0
    opposite_momenta: bool = True
    gamma: float = field(init=False)

    def __post_init__(self):
        if not self.hbar > 0:
            raise DomainError(f"hbar must be positive, got {self.hbar}")
        object.__setattr__(self, "gamma", gamma(self.model, self.stats))


def commutator_factor(model, p):
    """``f(p)`` in ``[x, p] = i hbar f(p)``. Accepts scalars or arrays."""
    kind, a = model.kind, model.param
    p = np.asarray(p, dtype=np.float64)
    if kind is GupKind.HUP:
        out = np.ones_like(p)
    elif kind is GupKind.KMM:
        out = 1.0 + a * p * p
    elif kind is GupKind.ADV:
        out = 1.0 - 2.0 * a * p + 4.0 * a * a * p * p
    elif kind is GupKind.PEDRAM:
        s = a * p * p
        if np.any(s >= 1.0):
            raise DomainError(
                f"Pedram pole: beta*p^2 >= 1 (|p| must stay below 1/sqrt(beta) = {_pole(a, 0.0):.12g})"
            )
        out = 1.0 / (1.0 - s)
    else:
        out = np.exp(a * p * p)
    return out[()] if out.ndim == 0 else out


def _pole(beta, gamma_):
    if beta == 0:
        return np.inf
    return float(np.sqrt(max(1.0 - gamma_, 0.0) / beta))


def admissible_dp_max(model, gamma_=0.0):
    """Largest momentum spread on the model's domain (inf except for Pedram)."""
    if model.kind is GupKind.PEDRAM:
        return _pole(model.param, gamma_)
    return np.inf


def pair_bracket(model, dp, gamma_=0.0, mean_p=None):
    """Bracket ``B`` of the pair bound for spread(s) ``dp`` at fixed offset ``gamma_``.

    ``mean_p`` is only consulted for ADV: when given, the linear term
    ``-2 alpha <p>`` is kept (no opposite-momenta cancellation).
    """
    kind, a = model.kind, model.param
    dp = np.asarray(dp, dtype=np.float64)
    if kind is GupKind.HUP:
        out = np.ones_like(dp)
    elif kind is GupKind.KMM:
        out = 1.0 + a * dp * dp + gamma_
    elif kind is GupKind.ADV:
        out = 1.0 + 4.0 * a * a * dp * dp + gamma_
        if mean_p is not None:
            out = out - 2.0 * a * mean_p
    elif kind is GupKind.PEDRAM:
        s = a * dp * dp + gamma_
        if np.any(s >= 1.0):
            raise DomainError(
                "Pedram pole: beta*dP^2 + gamma >= 1; admissible dP range is "
                f"(0, {_pole(a, gamma_):.12g})"
            )
        out = 1.0 / (1.0 - s)
    else:
        out = np.exp(a * dp * dp + gamma_)
    return out[()] if out.ndim == 0 else out


def entangled_pair_rhs(ctx):
    """Right-hand side of ``dQ_i dP_i >= RHS`` for a symmetric entangled pair."""
    mean_p = None if ctx.opposite_momenta else ctx.stats.mean_p
    return 0.25 * ctx.hbar * float(pair_bracket(ctx.model, ctx.stats.dp, ctx.gamma, mean_p))


def single_particle_rhs(model, stats, hbar=1.0):
    """Separable one-particle bound ``(hbar/2) * B``; ADV keeps its linear term."""
    mean_p = stats.mean_p if model.kind is GupKind.ADV else None
    return 0.5 * hbar * float(pair_bracket(model, stats.dp, gamma(model, stats), mean_p))


def bound_curve(ctx, dp_min, dp_max, n, separable=False):
    """Sample the smallest ``dQ`` allowed at each ``dP``: ``RHS(dP) / dP``.

    ``ctx`` acts as a template: its model, hbar, gamma and mean momentum are
    held fixed while the spread varies over ``linspace(dp_min, dp_max, n)``.
    Returns an ``(n, 2)`` array of ``(dP, dQ_lower_bound)`` rows.
    """
    n = int(n)
    if not 0 < dp_min < dp_max:
        raise DomainError(f"need 0 < dp_min < dp_max, got {dp_min}, {dp_max}")
    if n < 2:
        raise DomainError(f"need at least 2 points, got {n}")
    limit = admissible_dp_max(ctx.model, ctx.gamma)
    if dp_max >= limit:
        raise DomainError(
            f"Pedram pole inside the requested range; admissible dP range is (0, {limit:.12g})"
        )
    dp = np.linspace(dp_min, dp_max, n)
    mean_p = None if ctx.opposite_momenta else ctx.stats.mean_p
    scale = (0.5 if separable else 0.25) * ctx.hbar
    dq = scale * pair_bracket(ctx.model, dp, ctx.gamma, mean_p) / dp
    return np.column_stack((dp, dq))


def expected_commutator_factor(model, momenta, weights):
    """Average of ``f`` over discrete momentum distributions, and ``f`` at their moments.

    Rows of ``momenta``/``weights`` are independent distributions. Returns
    ``(mean_of_f, f_of_moments)``; by convexity the first dominates the
    second for Pedram (on its domain) and exponential models.
    """
    momenta = np.atleast_2d(np.asarray(momenta, dtype=np.float64))
    if model.kind is GupKind.PEDRAM and np.any(model.param * momenta * momenta >= 1.0):
        raise DomainError("Pedram pole: some momentum atoms have beta*p^2 >= 1")
    return kernels.factor_averages(momenta, weights, model.kind.code, model.param)
