"""Upper bound on the KMM parameter from the Kim-Shih ghost-imaging data.

Photon 2 crosses a real slit of width ``w`` (separable case) or a virtual
one (entangled case). The slit-case spread solves the one-particle KMM
bound with equality; the entangled spread is the measured fraction
``ratio_ns_over_s`` of it; ``beta_max`` is the largest beta for which the
entangled pair bound ``w * dP_ns >= (hbar/4)(eta + beta dP_ns^2)`` still
holds.

Everything is computed with hbar = 1 (by default) in the record's length
unit; only ``l_min_upper`` is converted, to metres.
"""
from dataclasses import dataclass, replace
from enum import Enum
from importlib import resources
import math
from pathlib import Path
import warnings

from .errors import DegenerateDataError, DomainError, RecordParseError, RootError
from .units import convert_length, length_factor

PUBLISHED_BETA_MAX = 3.58e-2  # mm^2, with hbar^2 eta factored out
PUBLISHED_L_MIN = 1.9e-4  # m


class RootMethod(Enum):
    PAPER_SERIES = "paper-series"
    EXACT_QUADRATIC = "exact-quadratic"

    @classmethod
    def parse(cls, text):
        try:
            return cls(str(text).strip().lower().replace("_", "-"))
        except ValueError:
            names = ", ".join(m.value for m in cls)
            raise DomainError(f"unknown method {text!r} (expected one of: {names})") from None


class RootConditionWarning(UserWarning):
    """Series roots evaluated past their stated real-root condition."""


@dataclass(frozen=True)
class ExperimentRecord:
    slit_width: float = 0.16
    ratio_ns_over_s: float = 1.25 / 2.15
    eta: float = 1.0
    length_unit: str = "mm"
    source: str = "Kim & Shih (1999)"

    def __post_init__(self):
        if not self.slit_width > 0:
            raise DomainError(f"slit_width must be positive, got {self.slit_width}")
        if not self.ratio_ns_over_s > 0:
            raise DomainError(f"ratio_ns_over_s must be positive, got {self.ratio_ns_over_s}")
        if not self.eta >= 1:
            raise DomainError(f"eta = 1 + gamma must be >= 1, got {self.eta}")
        length_factor(self.length_unit)

    def to_unit(self, unit):
        return replace(self, slit_width=convert_length(self.slit_width, self.length_unit, unit),
                       length_unit=unit)


KIM_SHIH_1999 = ExperimentRecord()


@dataclass(frozen=True)
class BoundEstimate:
    beta_max: float  # length_unit^2 at the given hbar
    l_min_upper: float  # metres
    method: RootMethod
    roots_used: tuple
    length_unit: str
    hbar: float
    eta: float
    binding: str  # "entangled-bound" or "real-root-limit"
    beyond_real_root_condition: bool

    @property
    def beta_max_scaled(self):
        """``beta_max * hbar^2 * eta`` in length_unit^2."""
        return self.beta_max * self.hbar * self.hbar * self.eta


def paper_root_condition(record, hbar=1.0):
    """Real-root threshold stated alongside the series: ``w^2 / (hbar^2 eta)``."""
    return record.slit_width ** 2 / (hbar * hbar * record.eta)


def critical_beta(record, hbar=1.0):
    """Zero-discriminant point of ``2 hbar beta x^2 - w x + hbar eta / 2 = 0``."""
    return record.slit_width ** 2 / (4.0 * hbar * hbar * record.eta)


def slit_roots_paper(beta, record, hbar=1.0):
    """Second-order series for the slit-case spreads, written with ``2w``.

    ``r+ = 2w/(hbar beta) - hbar eta/(2w) - beta hbar^3 eta^2/(2w)^3``,
    ``r- = hbar eta/(2w) + beta hbar^3 eta^2/(2w)^3``.
    """
    if not beta > 0:
        raise DomainError(f"beta must be positive, got {beta}")
    a = 2.0 * record.slit_width
    eta = record.eta
    if beta > paper_root_condition(record, hbar):
        warnings.warn(
            f"beta = {beta:.6g} exceeds the series' real-root condition "
            f"w^2/(hbar^2 eta) = {paper_root_condition(record, hbar):.6g}",
            RootConditionWarning,
            stacklevel=2,
        )
    small = hbar * eta / a + beta * hbar ** 3 * eta * eta / a ** 3
    large = a / (hbar * beta) - small
    return large, small


def slit_roots_exact(beta, record, hbar=1.0):
    """Both roots of ``2 hbar beta x^2 - w x + hbar eta/2 = 0``, larger first.

    The larger root uses the standard form (no cancellation since ``w > 0``);
    the smaller comes from the product of roots, which stays accurate as
    beta -> 0.
    """
    if not beta > 0:
        raise DomainError(f"beta must be positive, got {beta}")
    w, eta = record.slit_width, record.eta
    a = 2.0 * hbar * beta
    c = 0.5 * hbar * eta
    disc = w * w - 4.0 * a * c
    if disc < 0:
        raise RootError(
            f"no real roots for beta = {beta:.6g}: need beta <= w^2/(4 hbar^2 eta) = "
            f"{critical_beta(record, hbar):.12g}"
        )
    q = 0.5 * (w + math.sqrt(disc))
    return q / a, c / q


def _series_zero(record, hbar):
    # beta at which the series r+ reaches zero: A beta^2 + B beta - C = 0
    a = 2.0 * record.slit_width
    eta = record.eta
    big_a = hbar ** 3 * eta * eta / a ** 3
    big_b = hbar * eta / a
    big_c = a / hbar
    return 2.0 * big_c / (big_b + math.sqrt(big_b * big_b + 4.0 * big_a * big_c))


def _roots(method, beta, record, hbar):
    if method is RootMethod.PAPER_SERIES:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RootConditionWarning)
            return slit_roots_paper(beta, record, hbar)
    return slit_roots_exact(beta, record, hbar)


def entangled_margin(beta, record, method=RootMethod.PAPER_SERIES, hbar=1.0):
    """``w dP_ns - (hbar/4)(eta + beta dP_ns^2)`` with ``dP_ns = ratio * r+(beta)``.

    Non-negative iff the entangled KMM bound holds at this beta.
    """
    r_plus, _ = _roots(method, beta, record, hbar)
    x = record.ratio_ns_over_s * r_plus
    return record.slit_width * x - 0.25 * hbar * (record.eta + beta * x * x)


def estimate_bound(record=KIM_SHIH_1999, method=RootMethod.PAPER_SERIES, hbar=1.0):
    """Largest beta compatible with the entangled bound, and the implied minimal length.

    The search runs over (0, beta_top], where beta_top is where the slit
    root stops existing: the zero of the series r+ for PAPER_SERIES, the
    zero-discriminant point for EXACT_QUADRATIC. The constraint must hold
    near beta = 0. If it fails inside the range the crossing is bisected to
    full double precision (binding = "entangled-bound"); if it still holds
    at beta_top the slit data alone cap beta (binding = "real-root-limit").
    """
    method = RootMethod.parse(method) if isinstance(method, str) else method
    if method is RootMethod.PAPER_SERIES:
        top = _series_zero(record, hbar)
    else:
        top = critical_beta(record, hbar)
    lo = top * 1e-12
    if entangled_margin(lo, record, method, hbar) < 0:
        raise DegenerateDataError(
            f"entangled bound fails already at beta = {lo:.3g} (lower endpoint): no admissible beta"
        )
    if entangled_margin(top, record, method, hbar) >= 0:
        beta_max, binding = top, "real-root-limit"
    else:
        hi = top
        for _ in range(400):
            mid = 0.5 * (lo + hi)
            if mid <= lo or mid >= hi:
                break
            if entangled_margin(mid, record, method, hbar) >= 0:
                lo = mid
            else:
                hi = mid
        beta_max, binding = lo, "entangled-bound"
    roots = _roots(method, beta_max, record, hbar)
    l_min = convert_length(hbar * math.sqrt(beta_max), record.length_unit, "m")
    return BoundEstimate(
        beta_max=beta_max,
        l_min_upper=l_min,
        method=method,
        roots_used=(float(roots[0]), float(roots[1])),
        length_unit=record.length_unit,
        hbar=hbar,
        eta=record.eta,
        binding=binding,
        beyond_real_root_condition=beta_max > paper_root_condition(record, hbar),
    )


# -- record files -------------------------------------------------------------

_REQUIRED = ("slit_width", "slit_width_unit", "ratio_ns", "ratio_s")
_KNOWN = _REQUIRED + ("eta", "source")


def parse_experiment(text):
    """Parse ``key = value`` lines (``#`` starts a comment) into a record."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip() if not raw.lstrip().startswith("source") else raw.strip()
        if not line:
            continue
        if "=" not in line:
            raise RecordParseError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _KNOWN:
            raise RecordParseError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise RecordParseError(f"line {lineno}: duplicate key {key!r}")
        values[key] = value
    for key in _REQUIRED:
        if key not in values:
            raise RecordParseError(f"{key} required")

    def number(key):
        try:
            v = float(values[key])
        except ValueError:
            raise RecordParseError(f"{key}: not a number: {values[key]!r}") from None
        if not math.isfinite(v) or v <= 0:
            raise RecordParseError(f"{key}: must be positive, got {values[key]}")
        return v

    unit = values["slit_width_unit"]
    try:
        length_factor(unit)
    except DomainError as exc:
        raise RecordParseError(f"slit_width_unit: {exc}") from None
    eta = number("eta") if "eta" in values else 1.0
    if eta < 1:
        raise RecordParseError(f"eta: must be >= 1, got {values['eta']}")
    return ExperimentRecord(
        slit_width=number("slit_width"),
        ratio_ns_over_s=number("ratio_ns") / number("ratio_s"),
        eta=eta,
        length_unit=unit,
        source=values.get("source", ""),
    )


def load_experiment(source):
    """Load a record from a path, or parse it from inline text."""
    if isinstance(source, Path) or ("\n" not in str(source) and "=" not in str(source)):
        path = Path(source)
        try:
            text = path.read_text()
        except OSError as exc:
            raise RecordParseError(f"cannot read {path}: {exc.strerror}") from None
        return parse_experiment(text)
    return parse_experiment(source)


def default_record_text():
    return resources.files("entangled_gup").joinpath("data/kim_shih_1999.txt").read_text()


def report_lines(estimates, record):
    """Flat ``(key, value)`` pairs for one or more estimates, methods side by side."""
    rows = [
        ("record.slit_width", record.slit_width),
        ("record.length_unit", record.length_unit),
        ("record.ratio_ns_over_s", record.ratio_ns_over_s),
        ("record.eta", record.eta),
        ("record.source", record.source),
    ]
    for est in estimates:
        tag = est.method.value.replace("-", "_")
        rows += [
            (f"{tag}.beta_max", est.beta_max),
            (f"{tag}.beta_max_hbar2_eta", est.beta_max_scaled),
            (f"{tag}.beta_unit", f"{est.length_unit}^2"),
            (f"{tag}.l_min_upper_m", est.l_min_upper),
            (f"{tag}.r_plus", est.roots_used[0]),
            (f"{tag}.r_minus", est.roots_used[1]),
            (f"{tag}.binding", est.binding),
            (f"{tag}.beyond_real_root_condition", est.beyond_real_root_condition),
        ]
        if est.length_unit == "mm" and est.hbar == 1.0:
            rows += [
                (f"{tag}.rel_dev_beta_vs_published", est.beta_max_scaled / PUBLISHED_BETA_MAX - 1.0),
                (f"{tag}.rel_dev_l_min_vs_published", est.l_min_upper / PUBLISHED_L_MIN - 1.0),
            ]
    rows += [
        ("published.beta_max_hbar2_eta", PUBLISHED_BETA_MAX),
        ("published.l_min_upper_m", PUBLISHED_L_MIN),
        ("threshold.series_real_root", paper_root_condition(record)),
        ("threshold.exact_discriminant", critical_beta(record)),
        ("note.root_discrepancy",
         "series r+ leading term 2w/(hbar beta) is 4x the exact quadratic's w/(2 hbar beta); "
         "series real-root threshold w^2/(hbar^2 eta) is 4x the exact w^2/(4 hbar^2 eta)"),
    ]
    return rows
