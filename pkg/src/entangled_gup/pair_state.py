"""Two-particle wavefunctions on a square grid and the uncertainty chain they satisfy.

Ordinary quantum mechanics only: ``[x, p] = i hbar`` for each particle, so
the commutator of the total position and momentum has expectation
``2 i hbar`` in every state. Position moments come from direct quadrature of
``|psi|**2``; momentum moments from the two-axis FFT.
"""
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple, Optional

import numpy as np

from . import kernels
from .errors import GridError, StateFormatError

DECAY_LIMIT = 1e-12
DECAY_CELLS = 4
NORM_TOL = 1e-10
SYMMETRY_TOL = 1e-8

MAGIC = b"ENTGUP-PAIRSTATE"
FORMAT_VERSION = 1


@dataclass(frozen=True)
class GridSpec:
    """``n`` points per axis on ``[x_min, x_max)``, periodic spacing ``dx``."""

    x_min: float
    x_max: float
    n: int

    def __post_init__(self):
        if not self.x_max > self.x_min:
            raise GridError(f"x_max must exceed x_min, got [{self.x_min}, {self.x_max}]")
        n = int(self.n)
        if n < 64 or n & (n - 1):
            raise GridError(f"n must be a power of two >= 64, got {self.n}")
        object.__setattr__(self, "n", n)

    @property
    def dx(self):
        return (self.x_max - self.x_min) / self.n

    @property
    def dk(self):
        return 2.0 * np.pi / (self.n * self.dx)

    @property
    def x(self):
        return self.x_min + self.dx * np.arange(self.n)

    @property
    def k(self):
        """Wavenumbers in FFT order."""
        return 2.0 * np.pi * np.fft.fftfreq(self.n, d=self.dx)

    def widened(self, factor=1.5):
        """Same spacing, wider span (rounded up to the next power of two)."""
        n = 1 << int(np.ceil(np.log2(self.n * factor)))
        mid = 0.5 * (self.x_min + self.x_max)
        half = 0.5 * n * self.dx
        return GridSpec(mid - half, mid + half, n)


class Moments(NamedTuple):
    mean_q1: float
    mean_q2: float
    var_q1: float
    var_q2: float
    mean_p1: float
    mean_p2: float
    var_p1: float
    var_p2: float


def _edge_max(a, cells):
    return max(
        np.abs(a[:cells, :]).max(),
        np.abs(a[-cells:, :]).max(),
        np.abs(a[:, :cells]).max(),
        np.abs(a[:, -cells:]).max(),
    )


def _momentum_amplitudes(psi, grid):
    # continuous-transform normalization: sum |phi|^2 dk^2 == sum |psi|^2 dx^2
    return np.fft.fft2(psi) * (grid.dx * grid.dx / (2.0 * np.pi))


@dataclass(frozen=True, eq=False)
class PairState:
    """Normalized ``psi(x1, x2)``; axis 0 is particle 1, axis 1 particle 2."""

    grid: GridSpec
    amplitudes: np.ndarray = field(repr=False)
    hbar: float = 1.0

    def __post_init__(self):
        psi = np.ascontiguousarray(self.amplitudes, dtype=np.complex128)
        n = self.grid.n
        if psi.shape != (n, n):
            raise GridError(f"amplitudes must have shape {(n, n)}, got {psi.shape}")
        if not self.hbar > 0:
            raise GridError(f"hbar must be positive, got {self.hbar}")
        psi.setflags(write=False)
        object.__setattr__(self, "amplitudes", psi)
        norm = float(np.sum(np.abs(psi) ** 2) * self.grid.dx ** 2)
        if abs(norm - 1.0) > NORM_TOL:
            raise GridError(f"state is not normalized: sum |psi|^2 dx^2 = {norm:.15g}")
        edge = _edge_max(psi, DECAY_CELLS)
        if edge >= DECAY_LIMIT:
            wider = self.grid.widened()
            raise GridError(
                f"grid too small: |psi| = {edge:.3g} within {DECAY_CELLS} cells of the boundary "
                f"(limit {DECAY_LIMIT:g}); try x_min={wider.x_min:g}, x_max={wider.x_max:g}, n={wider.n}"
            )
        k_edge = _edge_max(np.fft.fftshift(self.momentum_amplitudes), DECAY_CELLS)
        if k_edge >= DECAY_LIMIT:
            raise GridError(
                f"grid too coarse: momentum amplitude {k_edge:.3g} near the Nyquist edge "
                f"|k| = {np.pi / self.grid.dx:.4g}; increase n to at least {2 * n}"
            )

    @cached_property
    def momentum_amplitudes(self):
        return _momentum_amplitudes(self.amplitudes, self.grid)

    @cached_property
    def _position_stats(self):
        x = self.grid.x
        return kernels.grid_moments(np.abs(self.amplitudes) ** 2, x, x)

    @cached_property
    def _momentum_stats(self):
        p = self.hbar * self.grid.k
        return kernels.grid_moments(np.abs(self.momentum_amplitudes) ** 2, p, p)

    def swapped(self):
        """The state with particle labels exchanged."""
        return PairState(self.grid, self.amplitudes.T.copy(), self.hbar)


def _normalized(psi, grid):
    norm = np.sqrt(np.sum(np.abs(psi) ** 2) * grid.dx ** 2)
    return psi / norm


def gaussian_pair(grid, center1, center2, precision, k1=0.0, k2=0.0):
    """Unnormalized ``exp(-d.A.d/2 + i k.d)`` with ``d = (x1 - c1, x2 - c2)``.

    ``precision`` is the symmetric positive-definite 2x2 matrix ``A``; the
    resulting ``|psi|**2`` has position covariance ``inv(A) / 2``.
    """
    a = np.asarray(precision, dtype=np.float64)
    x = grid.x
    d1 = (x - center1)[:, None]
    d2 = (x - center2)[None, :]
    quad = a[0, 0] * d1 * d1 + 2.0 * a[0, 1] * d1 * d2 + a[1, 1] * d2 * d2
    return np.exp(-0.5 * quad + 1j * (k1 * d1 + k2 * d2))


def make_product_state(grid, center1=0.0, sigma1=1.0, k1=0.0, center2=0.0, sigma2=1.0, k2=0.0, hbar=1.0):
    """Product of Gaussian packets with position spreads ``sigma`` and carriers ``hbar k``."""
    if not (sigma1 > 0 and sigma2 > 0):
        raise GridError("Gaussian widths must be positive")
    x = grid.x
    phi1 = np.exp(-((x - center1) ** 2) / (4.0 * sigma1 ** 2) + 1j * k1 * x)
    phi2 = np.exp(-((x - center2) ** 2) / (4.0 * sigma2 ** 2) + 1j * k2 * x)
    phi1 = phi1 / np.sqrt(np.sum(np.abs(phi1) ** 2) * grid.dx)
    phi2 = phi2 / np.sqrt(np.sum(np.abs(phi2) ** 2) * grid.dx)
    return PairState(grid, np.outer(phi1, phi2), hbar)


def correlated_precision(sigma_plus, sigma_minus):
    """Precision matrix for ``exp(-u^2/(4 s+^2) - v^2/(4 s-^2))``, ``u, v = (x1 +- x2)/sqrt 2``."""
    a_plus = 1.0 / (4.0 * sigma_plus ** 2)
    a_minus = 1.0 / (4.0 * sigma_minus ** 2)
    # exponent -(a+ u^2 + a- v^2) == -d.A.d/2
    return np.array([[a_plus + a_minus, a_plus - a_minus], [a_plus - a_minus, a_plus + a_minus]])


def make_correlated_gaussian(grid, sigma_plus, sigma_minus, k_total=0.0, hbar=1.0):
    """Gaussian in centre-of-mass/relative coordinates; entangled iff ``sigma_plus != sigma_minus``.

    The carrier ``exp(i k_total u / sqrt 2)`` gives ``<P1> = <P2> = hbar k_total / 2``.
    """
    if not (sigma_plus > 0 and sigma_minus > 0):
        raise GridError("Gaussian widths must be positive")
    psi = gaussian_pair(
        grid, 0.0, 0.0, correlated_precision(sigma_plus, sigma_minus), 0.5 * k_total, 0.5 * k_total
    )
    return PairState(grid, _normalized(psi, grid), hbar)


def make_random_state(grid, rng, n_terms=3, symmetric=True, hbar=1.0,
                      center_range=3.0, width_range=(0.5, 2.5), k_range=3.0):
    """Random superposition of rotated Gaussians, optionally exchange-symmetrized.

    With ``symmetric=True`` the amplitude is ``psi(x1, x2) + psi(x2, x1)``, so
    both particles share one marginal (identical bosons).
    """
    psi = np.zeros((grid.n, grid.n), dtype=np.complex128)
    lo, hi = width_range
    for _ in range(n_terms):
        s = rng.uniform(lo, hi, size=2)
        theta = rng.uniform(0.0, np.pi)
        rot = np.array([[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]])
        precision = rot @ np.diag(1.0 / (2.0 * s ** 2)) @ rot.T
        c = rng.uniform(-center_range, center_range, size=2)
        k = rng.uniform(-k_range, k_range, size=2)
        coeff = rng.normal() + 1j * rng.normal()
        psi += coeff * gaussian_pair(grid, c[0], c[1], precision, k[0], k[1])
    if symmetric:
        psi = psi + psi.T
    return PairState(grid, _normalized(psi, grid), hbar)


def moments(state):
    """Per-particle means and variances in position and momentum."""
    q = state._position_stats
    p = state._momentum_stats
    return Moments(q[1], q[2], q[3], q[4], p[1], p[2], p[3], p[4])


def qcf(state):
    """Quantum covariance functions ``(C_Q(1,2), C_P(1,2))``."""
    return float(state._position_stats[5]), float(state._momentum_stats[5])


@dataclass(frozen=True)
class UncertaintyReport:
    dq1: float
    dq2: float
    dp1: float
    dp2: float
    mean_q1: float
    mean_q2: float
    mean_p1: float
    mean_p2: float
    cq: float
    cp: float
    lhs_pair: float
    rhs_pair: float
    lhs_symmetric: float
    rhs_symmetric: float
    schwarz_q_ok: bool
    schwarz_p_ok: bool
    pair_ok: bool
    # None when the spreads differ between particles (bound not applicable)
    symmetric_ok: Optional[bool]
    robertson_ok: bool
    symmetric: bool
    diagnostics: tuple = ()

    @property
    def all_ok(self):
        flags = [self.schwarz_q_ok, self.schwarz_p_ok, self.pair_ok, self.robertson_ok]
        if self.symmetric_ok is not None:
            flags.append(self.symmetric_ok)
        return all(flags)


def _holds(lhs, rhs, rtol=1e-10):
    return bool(lhs >= rhs - rtol * max(abs(lhs), abs(rhs), 1e-300))


def check_inequalities(state, symmetry_tol=SYMMETRY_TOL):
    """Evaluate the variance/covariance inequality chain on ``state``.

    Checks Var(Q1)+Var(Q2) >= 2 C_Q and the momentum analogue, the summed
    pair bound ``(Var Q1 + Var Q2)(Var P1 + Var P2) >= hbar^2/4``, and, when
    both particles have equal spreads to ``symmetry_tol``, the symmetric
    bound ``dQ_i dP_i >= hbar/4``. ``robertson_ok`` additionally checks the
    marginal ``dQ_i dP_i >= hbar/2 - 1e-8`` as a discretization canary.
    A false flag means the grid is inadequate, never a physical violation.
    """
    m = moments(state)
    cq, cp = qcf(state)
    hbar = state.hbar
    dq1, dq2 = np.sqrt(m.var_q1), np.sqrt(m.var_q2)
    dp1, dp2 = np.sqrt(m.var_p1), np.sqrt(m.var_p2)

    schwarz_q = _holds(m.var_q1 + m.var_q2, 2.0 * cq)
    schwarz_p = _holds(m.var_p1 + m.var_p2, 2.0 * cp)
    lhs_pair = (m.var_q1 + m.var_q2) * (m.var_p1 + m.var_p2)
    # |<[Q, P]>| = 2 hbar; (2 hbar)^2 / 16
    rhs_pair = 0.25 * hbar * hbar
    pair = _holds(lhs_pair, rhs_pair)

    symmetric = abs(dq1 - dq2) < symmetry_tol and abs(dp1 - dp2) < symmetry_tol
    rhs_sym = 0.25 * hbar
    lhs_sym = dq1 * dp1
    sym_ok = _holds(lhs_sym, rhs_sym) if symmetric else None
    robertson = min(dq1 * dp1, dq2 * dp2) >= 0.5 * hbar - 1e-8

    notes = []
    for name, ok in (("schwarz_q", schwarz_q), ("schwarz_p", schwarz_p), ("pair", pair),
                     ("symmetric", sym_ok), ("robertson", robertson)):
        if ok is False:
            notes.append(f"{name} inequality violated beyond tolerance: discretization failure")
    return UncertaintyReport(
        dq1=float(dq1), dq2=float(dq2), dp1=float(dp1), dp2=float(dp2),
        mean_q1=float(m.mean_q1), mean_q2=float(m.mean_q2),
        mean_p1=float(m.mean_p1), mean_p2=float(m.mean_p2),
        cq=cq, cp=cp,
        lhs_pair=float(lhs_pair), rhs_pair=rhs_pair,
        lhs_symmetric=float(lhs_sym), rhs_symmetric=rhs_sym,
        schwarz_q_ok=schwarz_q, schwarz_p_ok=schwarz_p, pair_ok=pair,
        symmetric_ok=sym_ok, robertson_ok=bool(robertson), symmetric=bool(symmetric),
        diagnostics=tuple(notes),
    )


# -- fixture files ------------------------------------------------------------
#
# line 1: b"ENTGUP-PAIRSTATE 1\n"
# line 2: ASCII "n=<int> x_min=<float> x_max=<float> hbar=<float>\n" (floats in repr form)
# body:   n*n complex128 values, little-endian, row-major (axis 0 = x1),
#         each stored as (real, imag) float64 pairs

def save_state(state, path):
    g = state.grid
    header = f"n={g.n} x_min={g.x_min!r} x_max={g.x_max!r} hbar={float(state.hbar)!r}\n"
    with open(path, "wb") as fh:
        fh.write(MAGIC + b" " + str(FORMAT_VERSION).encode() + b"\n")
        fh.write(header.encode("ascii"))
        fh.write(state.amplitudes.astype("<c16").tobytes(order="C"))


def load_state(path):
    with open(path, "rb") as fh:
        first = fh.readline().rstrip(b"\n").split(b" ")
        if len(first) != 2 or first[0] != MAGIC:
            raise StateFormatError(f"{path}: not a pair-state file (bad magic)")
        if first[1] != str(FORMAT_VERSION).encode():
            raise StateFormatError(f"{path}: unsupported format version {first[1].decode(errors='replace')}")
        try:
            fields = dict(item.split("=", 1) for item in fh.readline().decode("ascii").split())
            n = int(fields["n"])
            x_min, x_max = float(fields["x_min"]), float(fields["x_max"])
            hbar = float(fields["hbar"])
        except (KeyError, ValueError, UnicodeDecodeError) as exc:
            raise StateFormatError(f"{path}: malformed header ({exc})") from None
        body = fh.read()
    if len(body) != n * n * 16:
        raise StateFormatError(f"{path}: expected {n * n * 16} data bytes, found {len(body)}")
    psi = np.frombuffer(body, dtype="<c16").reshape(n, n)
    return PairState(GridSpec(x_min, x_max, n), psi.astype(np.complex128), hbar)
