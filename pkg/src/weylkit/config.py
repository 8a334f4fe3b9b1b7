"""Numerical tolerances used across the package.

All exact identities of the underlying algebra hold only up to floating-point
drift; these knobs bound that drift.  Pass a modified :class:`Tolerances` to
any operation that accepts one to override the defaults, e.g.::

    tol = replace_tolerance(DEFAULT_TOLERANCES, "psd", 1e-8)
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

from .errors import DomainError

__all__ = ["Tolerances", "DEFAULT_TOLERANCES", "replace_tolerance", "TOLERANCE_NAMES"]


@dataclass(frozen=True)
class Tolerances:
    """Bundle of named numerical tolerances.

    Attributes
    ----------
    norm : float
        Allowed deviation of unit norms, trace-1 conditions and weight sums.
    herm : float
        Allowed Frobenius distance from a matrix to its conjugate transpose.
    psd : float
        Most negative eigenvalue accepted when checking positive
        semidefiniteness.
    jacobi : float
        Off-diagonal Frobenius mass at which the Jacobi eigenvalue sweep stops.
    cptp : float
        Allowed trace-preservation deficit of a quantum channel.  Looser than
        the construction tolerances because it accumulates up to d**2 matrix
        products.
    prune : float
        Kraus operators below this Frobenius norm are dropped after
        extraction from an isometry.
    """

    norm: float = 1e-10
    herm: float = 1e-10
    psd: float = 1e-9
    jacobi: float = 1e-12
    cptp: float = 1e-9
    prune: float = 1e-12


DEFAULT_TOLERANCES = Tolerances()

TOLERANCE_NAMES = tuple(f.name for f in dataclasses.fields(Tolerances))


def replace_tolerance(tol: Tolerances, name: str, value: float) -> Tolerances:
    """Return a copy of ``tol`` with the named tolerance replaced.

    Accepts the short field names (``norm``) as well as the conventional
    upper-case spelling (``NORM_TOL``), case-insensitively.
    """
    key = name.strip().lower()
    if key.endswith("_tol"):
        key = key[: -len("_tol")]
    if key not in TOLERANCE_NAMES:
        known = ", ".join(TOLERANCE_NAMES)
        raise DomainError(f"unknown tolerance {name!r}; known names: {known}")
    if not value > 0:
        raise DomainError(f"tolerance {name!r} must be positive, got {value}")
    return dataclasses.replace(tol, **{key: value})
