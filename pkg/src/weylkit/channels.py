"""Operator-sum (Kraus) machinery for qudit channels.

A channel acts on density matrices as ``rho -> sum_m E_m rho E_m^dagger``
and is trace-preserving when ``sum_m E_m^dagger E_m = I``.  Kraus operators
are read off a system-environment isometry V by slicing its rows at fixed
environment index, which reproduces the partial trace over the environment:

    tr_env(V rho V^dagger)  =  sum_m E_m rho E_m^dagger,
    E_m[r, c] = V[r * d**2 + m, c].

A Kraus list is far from unique (any unitary mixing of the operators leaves
the map unchanged), so equality of channels is decided on the Choi matrix

    J = sum_{i,j} Channel(|i><j|) (x) |i><j|  =  sum_m vec(E_m) vec(E_m)^dagger,

where vec stacks matrix entries with the row index outer, putting the
system-output factor on the left of the Kronecker product.  J is Hermitian,
positive semidefinite, has trace d for trace-preserving channels, and
identifies the map regardless of which Kraus list produced it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances
from .dilation import GammaTable, make_isometry
from .errors import DomainError, ParseError, ShapeError, ValidationError
from .numerics import (
    as_matrix,
    frobenius_distance,
    matrix_from_object,
    matrix_to_json,
    parse_json_document,
    validate_density_matrix,
)
from .weyl import weyl_element

__all__ = [
    "QuantumChannel",
    "kraus_from_isometry",
    "apply_channel",
    "is_trace_preserving",
    "unitality_deficit",
    "weyl_channel",
    "channel_from_dilation",
    "choi_matrix",
    "channels_equal",
    "channel_to_json",
    "json_to_channel",
    "choi_to_json",
    "kraus_mix",
]


@dataclass(frozen=True, eq=False)
class QuantumChannel:
    """An ordered list of d x d Kraus operators.

    The constructor checks shapes only; the factory functions in this module
    produce trace-preserving lists by construction, and
    :func:`is_trace_preserving` measures the deficit of any list, so
    deliberately incomplete channels can still be represented and examined.
    """

    d: int
    kraus: tuple = field(repr=False)

    def __post_init__(self):
        if self.d < 2:
            raise DomainError(f"channel dimension must be >= 2, got {self.d}")
        ops = tuple(as_matrix(e) for e in self.kraus)
        if not ops:
            raise DomainError("a channel needs at least one Kraus operator")
        for e in ops:
            if e.shape != (self.d, self.d):
                raise ShapeError(f"Kraus operators must be {self.d} x {self.d}, got {e.shape}")
            if not np.all(np.isfinite(e)):
                raise ValidationError("Kraus operator contains non-finite entries")
        frozen = []
        for e in ops:
            e = e.copy()
            e.setflags(write=False)
            frozen.append(e)
        object.__setattr__(self, "kraus", tuple(frozen))

    def __len__(self) -> int:
        return len(self.kraus)


def kraus_from_isometry(v, *, tol: Tolerances = DEFAULT_TOLERANCES) -> QuantumChannel:
    """Extract the Kraus operators of the channel dilated by isometry ``v``.

    ``v`` must be a (d**3, d) matrix with ``v^dagger v = I`` within
    ``tol.norm``.  Slot m of the d**2 environment indices yields
    ``E_m[r, c] = v[r * d**2 + m, c]``; operators with Frobenius norm below
    ``tol.prune`` (exact zeros for sparse gamma tables) are dropped, which
    cannot change the map.  Trace preservation holds by construction:
    ``sum_m E_m^dagger E_m = v^dagger v = I``.
    """
    v = as_matrix(v)
    d = v.shape[1]
    if d < 2 or v.shape[0] != d ** 3:
        raise ShapeError(f"expected a (d**3, d) isometry with d >= 2, got {v.shape}")
    gram_defect = frobenius_distance(v.conj().T @ v, np.eye(d))
    if gram_defect > tol.norm:
        raise ValidationError(
            f"input is not an isometry: ||V^dagger V - I||_F = {gram_defect:.3e} "
            f"exceeds {tol.norm:.3e}"
        )
    slices = v.reshape(d, d * d, d)  # [r, m, c]
    ops = [slices[:, m, :] for m in range(d * d)]
    kept = [e for e in ops if np.linalg.norm(e) >= tol.prune]
    if not kept:
        kept = [ops[0]]
    return QuantumChannel(d=d, kraus=tuple(kept))


def apply_channel(ch: QuantumChannel, rho, *, tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """Evolve a density matrix: ``sum_m E_m rho E_m^dagger``.

    The Kraus sum is accumulated in list order, so results are deterministic.
    The output is validated as a density matrix; a failure there means a
    non-trace-preserving or non-positive operator list slipped past
    construction and is reported as such.
    """
    rho = validate_density_matrix(rho, tol=tol)
    if rho.shape[0] != ch.d:
        raise ShapeError(f"state dimension {rho.shape[0]} does not match channel dimension {ch.d}")
    out = np.zeros((ch.d, ch.d), dtype=np.complex128)
    for e in ch.kraus:
        out += e @ rho @ e.conj().T
    try:
        return validate_density_matrix(out, tol=tol)
    except ValidationError as exc:
        raise ValidationError(f"channel output is not a valid state ({exc}); the Kraus list is not CPTP") from None


def is_trace_preserving(ch: QuantumChannel, *, tol: Tolerances = DEFAULT_TOLERANCES) -> tuple[bool, float]:
    """Completeness check: ``(ok, deficit)``.

    ``deficit = ||sum_m E_m^dagger E_m - I||_F`` and ``ok`` holds iff it is
    below ``tol.cptp``.  The dual condition (unitality) is measured
    separately by :func:`unitality_deficit`.
    """
    acc = np.zeros((ch.d, ch.d), dtype=np.complex128)
    for e in ch.kraus:
        acc += e.conj().T @ e
    deficit = frobenius_distance(acc, np.eye(ch.d))
    return deficit < tol.cptp, deficit


def unitality_deficit(ch: QuantumChannel) -> float:
    """``||sum_m E_m E_m^dagger - I||_F``; zero iff the channel fixes I/d."""
    acc = np.zeros((ch.d, ch.d), dtype=np.complex128)
    for e in ch.kraus:
        acc += e @ e.conj().T
    return frobenius_distance(acc, np.eye(ch.d))


def weyl_channel(weights, *, tol: Tolerances = DEFAULT_TOLERANCES) -> QuantumChannel:
    """Channel with Kraus operators ``sqrt(p[l, k]) * X_l Z_k``.

    ``weights`` is a (d, d) real table, nonnegative and summing to 1, which
    makes the channel exactly trace-preserving since every Weyl element is
    unitary.  Zero-weight elements are omitted.  The uniform table
    ``p = 1/d**2`` gives the completely depolarizing channel
    ``rho -> I/d``.
    """
    p = np.asarray(weights)
    if np.iscomplexobj(p):
        if np.max(np.abs(p.imag)) > tol.norm:
            raise DomainError("weights must be real")
        p = p.real
    p = p.astype(np.float64)
    if p.ndim != 2 or p.shape[0] != p.shape[1] or p.shape[0] < 2:
        raise ShapeError(f"weights must be a square (d, d) table with d >= 2, got {p.shape}")
    if np.any(p < 0):
        raise DomainError(f"weights must be nonnegative, got minimum {p.min()!r}")
    total = float(p.sum())
    if abs(total - 1.0) > tol.norm:
        raise DomainError(f"weights must sum to 1 within {tol.norm}, got {total!r}")
    d = p.shape[0]
    ops = []
    for l in range(d):
        for k in range(d):
            if np.sqrt(p[l, k] * d) >= tol.prune:
                ops.append(np.sqrt(p[l, k]) * weyl_element(d, l, k))
    if not ops:
        raise DomainError("all weights prune to zero")
    return QuantumChannel(d=d, kraus=tuple(ops))


def channel_from_dilation(g: GammaTable, *, tol: Tolerances = DEFAULT_TOLERANCES) -> QuantumChannel:
    """Kraus form of the channel realized by the gamma-table dilation.

    For every density matrix the result reproduces
    ``partial_trace_env(V rho V^dagger)``.  Environment slot ``(a, b)``
    contributes the rank-one operator ``gamma[a, b] |a - 2b><-b|`` (indices
    mod d), so the extracted list is rank-one throughout.
    """
    return kraus_from_isometry(make_isometry(g), tol=tol)


def choi_matrix(ch: QuantumChannel) -> np.ndarray:
    """Choi matrix ``J = sum_{i,j} Channel(|i><j|) (x) |i><j|`` (d**2 x d**2).

    Computed as ``sum_m vec(E_m) vec(E_m)^dagger`` with row-outer vec, which
    places the system-output factor on the left.  J is Hermitian and
    positive semidefinite; its trace equals d exactly when the channel is
    trace-preserving, and it is invariant under unitary mixing of the Kraus
    list.
    """
    n = ch.d * ch.d
    j = np.zeros((n, n), dtype=np.complex128)
    for e in ch.kraus:
        v = e.ravel(order="C")
        j += np.outer(v, v.conj())
    return j


def channels_equal(a: QuantumChannel, b: QuantumChannel, tol: float) -> bool:
    """Decide equality of the maps via Choi distance.

    Kraus lists are compared through their Choi matrices, so any two lists
    related by unitary mixing, permutation, padding with zeros, or global
    phases compare equal.
    """
    if a.d != b.d:
        raise ShapeError(f"channel dimensions differ: {a.d} vs {b.d}")
    return frobenius_distance(choi_matrix(a), choi_matrix(b)) < tol


# ---------------------------------------------------------------------------
# file formats


def channel_to_json(ch: QuantumChannel) -> str:
    """Serialize as ``{"d": d, "kraus": [matrix, ...]}`` in list order."""
    mats = ", ".join(matrix_to_json(e) for e in ch.kraus)
    return f'{{"d": {ch.d}, "kraus": [{mats}]}}'


def json_to_channel(text: str, what: str = "channel") -> QuantumChannel:
    """Parse a channel document; shapes are validated, completeness is not."""
    doc = parse_json_document(text, what)
    d = doc.get("d")
    if not isinstance(d, int) or isinstance(d, bool) or d < 2:
        raise ParseError(f"{what}: field 'd' must be an integer >= 2, got {d!r}")
    raw = doc.get("kraus")
    if not isinstance(raw, list) or not raw:
        raise ParseError(f"{what}: field 'kraus' must be a nonempty list of matrices")
    ops = [matrix_from_object(item, f"{what}: kraus[{idx}]") for idx, item in enumerate(raw)]
    try:
        return QuantumChannel(d=d, kraus=tuple(ops))
    except (ShapeError, DomainError) as exc:
        raise ParseError(f"{what}: {exc}") from None


def choi_to_json(j) -> str:
    """Serialize a Choi matrix in the matrix format plus a convention header."""
    j = as_matrix(j)
    body = matrix_to_json(j)
    return '{"convention": "column-stacking", ' + body[1:]


def kraus_mix(ch: QuantumChannel, u: Sequence[Sequence[complex]]) -> QuantumChannel:
    """Replace the Kraus list by ``F_m = sum_n u[m, n] E_n`` for a unitary u.

    Mixing by a unitary leaves the channel itself unchanged; this helper
    exists to exercise exactly that non-uniqueness.
    """
    u = as_matrix(u)
    m = len(ch.kraus)
    if u.shape != (m, m):
        raise ShapeError(f"mixing matrix must be {m} x {m}, got {u.shape}")
    stack = np.stack(ch.kraus)
    mixed = np.einsum("mn,nij->mij", u, stack)
    return QuantumChannel(d=ch.d, kraus=tuple(mixed[i] for i in range(m)))
