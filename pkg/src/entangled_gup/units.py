"""Natural-unit bookkeeping.

All arithmetic runs with a settable hbar (default 1) and a single length
unit; labels are carried as metadata and converted only at I/O boundaries.
"""
from dataclasses import dataclass

from .errors import DomainError

#: metres per unit
LENGTH_UNITS = {
    "m": 1.0,
    "cm": 1e-2,
    "mm": 1e-3,
    "um": 1e-6,
    "nm": 1e-9,
}


def length_factor(unit):
    try:
        return LENGTH_UNITS[unit]
    except KeyError:
        known = ", ".join(sorted(LENGTH_UNITS))
        raise DomainError(f"unknown length unit {unit!r} (known: {known})") from None


def convert_length(value, from_unit, to_unit):
    return value * (length_factor(from_unit) / length_factor(to_unit))


@dataclass(frozen=True)
class UnitSystem:
    hbar: float = 1.0
    length_unit: str = "mm"

    def __post_init__(self):
        if not self.hbar > 0:
            raise DomainError(f"hbar must be positive, got {self.hbar}")
        length_factor(self.length_unit)

    @property
    def momentum_unit(self):
        return f"hbar/{self.length_unit}"
