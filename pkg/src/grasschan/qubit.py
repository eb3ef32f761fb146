"""Dense 2x2 qubit machinery: states, canonical channels, conversions.

A channel is kept in the canonical diagonal form ``r -> t + diag(lam) r`` on
Bloch vectors.  The transfer matrix convention is

    ptm[i, j] = Tr[sigma_i N(sigma_j)] / 2      over (I, x, y, z),

so the first row is ``(1, 0, 0, 0)`` for trace-preserving maps and the first
column is ``(1, t1, t2, t3)``.  The Choi operator is
``sum_ij N(|i><j|) (x) |i><j|`` (trace 2); complete positivity is checked as
Choi positivity and trace preservation as ``Tr_out Choi = I``.

General canonicalization of a non-diagonal transfer block is out of scope:
inputs must already be canonical-diagonal, or Kraus lists whose transfer
matrix has a diagonal block.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

__all__ = [
    "PAULI",
    "SIGMA_PLUS",
    "SIGMA_MINUS",
    "QubitState",
    "QubitChannel",
    "CptpReport",
    "NonDiagonalBlockError",
    "NotTracePreservingError",
    "NotCptpError",
    "ptm_from_kraus",
    "canonical_from_ptm",
    "choi_from_ptm",
    "is_cptp",
    "apply_channel",
    "compose",
    "random_state",
    "random_cptp_canonical_channel",
]

PAULI = (
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)

SIGMA_PLUS = np.array([[0, 0], [1, 0]], dtype=complex)   # |1><0|
SIGMA_MINUS = np.array([[0, 1], [0, 0]], dtype=complex)  # |0><1|

STATE_ATOL = 1e-9
TP_ATOL = 1e-12
CHOI_EIG_FLOOR = -1e-9
DIAG_ATOL = 1e-10


class NonDiagonalBlockError(ValueError):
    """The 3x3 transfer block is not diagonal; canonicalize externally."""


class NotTracePreservingError(ValueError):
    """A Kraus list does not satisfy ``sum A_k^dag A_k = I``."""


class NotCptpError(ValueError):
    """A channel failed the complete-positivity / trace-preservation check."""


@dataclass(frozen=True)
class QubitState:
    """Qubit density matrix ``[[p, gamma], [gamma*, 1-p]]``."""

    p: float
    gamma: complex = 0.0

    def __post_init__(self):
        object.__setattr__(self, "p", float(self.p))
        object.__setattr__(self, "gamma", complex(self.gamma))
        if not -STATE_ATOL <= self.p <= 1 + STATE_ATOL:
            raise ValueError(f"p={self.p} outside [0, 1]")
        if abs(self.gamma) ** 2 > self.p * (1 - self.p) + STATE_ATOL:
            raise ValueError(
                f"|gamma|^2={abs(self.gamma)**2:.3e} exceeds p(1-p)={self.p*(1-self.p):.3e}"
            )

    @property
    def matrix(self) -> np.ndarray:
        return np.array(
            [[self.p, self.gamma], [np.conj(self.gamma), 1 - self.p]], dtype=complex
        )

    @property
    def bloch(self) -> np.ndarray:
        return np.array(
            [2 * self.gamma.real, -2 * self.gamma.imag, 2 * self.p - 1], dtype=float
        )

    @classmethod
    def from_bloch(cls, r) -> "QubitState":
        r = np.asarray(r, dtype=float)
        return cls(p=(1 + r[2]) / 2, gamma=(r[0] - 1j * r[1]) / 2)

    @classmethod
    def from_matrix(cls, m, atol: float = STATE_ATOL) -> "QubitState":
        m = np.asarray(m, dtype=complex)
        if m.shape != (2, 2):
            raise ValueError("expected a 2x2 matrix")
        if abs(np.trace(m) - 1) > atol:
            raise ValueError(f"trace {np.trace(m)} differs from 1")
        if np.max(np.abs(m - m.conj().T)) > atol:
            raise ValueError("matrix is not Hermitian")
        return cls(p=m[0, 0].real, gamma=m[0, 1])

    def isclose(self, other: "QubitState", atol: float = 1e-12) -> bool:
        return abs(self.p - other.p) <= atol and abs(self.gamma - other.gamma) <= atol


def ptm_from_kraus(kraus: Sequence[np.ndarray], atol: float = TP_ATOL) -> np.ndarray:
    """Transfer matrix ``Tr[sigma_i sum_k A_k sigma_j A_k^dag] / 2`` of a Kraus list."""
    ops = [np.asarray(a, dtype=complex) for a in kraus]
    total = sum(a.conj().T @ a for a in ops)
    if np.max(np.abs(total - np.eye(2))) > max(atol, 1e-10):
        raise NotTracePreservingError(
            f"sum A^dag A deviates from identity by {np.max(np.abs(total - np.eye(2))):.3e}"
        )
    ptm = np.empty((4, 4))
    for j in range(4):
        mapped = sum(a @ PAULI[j] @ a.conj().T for a in ops)
        for i in range(4):
            ptm[i, j] = np.real(np.trace(PAULI[i] @ mapped)) / 2
    return ptm


def canonical_from_ptm(ptm: np.ndarray, atol: float = DIAG_ATOL):
    """Read ``(t, lam)`` off a transfer matrix with a diagonal 3x3 block."""
    ptm = np.asarray(ptm, dtype=float)
    if ptm.shape != (4, 4):
        raise ValueError("expected a 4x4 matrix")
    if np.max(np.abs(ptm[0] - np.array([1.0, 0, 0, 0]))) > atol:
        raise NonDiagonalBlockError("first row is not (1, 0, 0, 0)")
    block = ptm[1:, 1:]
    off = block - np.diag(np.diag(block))
    worst = np.max(np.abs(off))
    if worst > atol:
        raise NonDiagonalBlockError(
            f"transfer block has off-diagonal entry {worst:.3e}; canonicalize externally"
        )
    return ptm[1:, 0].copy(), np.diag(block).copy()


def _ptm_from_canonical(t: np.ndarray, lam: np.ndarray) -> np.ndarray:
    ptm = np.zeros((4, 4))
    ptm[0, 0] = 1.0
    ptm[1:, 0] = t
    ptm[1:, 1:] = np.diag(lam)
    return ptm


_CHOI_BASIS = np.array([[np.kron(PAULI[k], PAULI[l].T) for l in range(4)] for k in range(4)])


def choi_from_ptm(ptm: np.ndarray) -> np.ndarray:
    """Choi operator ``sum_ij N(|i><j|) (x) |i><j|`` (trace 2).

    Expanding the basis maps gives the closed form
    ``choi = (1/2) sum_kl ptm[k, l] sigma_k (x) sigma_l^T``.
    """
    ptm = np.asarray(ptm, dtype=float)
    return 0.5 * np.tensordot(ptm, _CHOI_BASIS, axes=2)


def _trace_out_first(op4: np.ndarray) -> np.ndarray:
    return np.einsum("ikil->kl", op4.reshape(2, 2, 2, 2))


@dataclass(frozen=True)
class CptpReport:
    """Outcome of a complete-positivity / trace-preservation check."""

    ok: bool
    min_choi_eigenvalue: float
    tp_deviation: float

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True, eq=False)
class QubitChannel:
    """Canonical-form qubit channel ``r -> t + diag(lam) r``.

    ``kraus`` optionally carries an operator-sum form; when present it was
    validated to generate the same transfer matrix.
    """

    t: np.ndarray
    lam: np.ndarray
    kraus: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "t", np.asarray(self.t, dtype=float).reshape(3).copy())
        object.__setattr__(self, "lam", np.asarray(self.lam, dtype=float).reshape(3).copy())
        self.t.flags.writeable = False
        self.lam.flags.writeable = False
        if self.kraus is not None:
            ops = tuple(np.asarray(a, dtype=complex) for a in self.kraus)
            object.__setattr__(self, "kraus", ops)
            derived = ptm_from_kraus(ops)
            if np.max(np.abs(derived - self.ptm)) > 1e-9:
                raise ValueError("Kraus list is inconsistent with the canonical parameters")

    @classmethod
    def from_canonical(cls, t, lam) -> "QubitChannel":
        return cls(t=np.asarray(t, dtype=float), lam=np.asarray(lam, dtype=float))

    @classmethod
    def identity(cls) -> "QubitChannel":
        return cls.from_canonical([0, 0, 0], [1, 1, 1])

    @classmethod
    def from_kraus(cls, kraus: Sequence[np.ndarray]) -> "QubitChannel":
        ops = tuple(np.asarray(a, dtype=complex) for a in kraus)
        t, lam = canonical_from_ptm(ptm_from_kraus(ops))
        return cls(t=t, lam=lam, kraus=ops)

    @classmethod
    def from_ptm(cls, ptm: np.ndarray) -> "QubitChannel":
        t, lam = canonical_from_ptm(ptm)
        return cls(t=t, lam=lam)

    @cached_property
    def ptm(self) -> np.ndarray:
        ptm = _ptm_from_canonical(self.t, self.lam)
        ptm.flags.writeable = False
        return ptm

    @cached_property
    def choi(self) -> np.ndarray:
        choi = choi_from_ptm(self.ptm)
        choi.flags.writeable = False
        return choi

    @cached_property
    def cptp_report(self) -> CptpReport:
        eigs = np.linalg.eigvalsh(self.choi)
        tp_dev = float(np.max(np.abs(_trace_out_first(self.choi) - np.eye(2))))
        ok = bool(eigs[0] >= CHOI_EIG_FLOOR and tp_dev <= TP_ATOL)
        return CptpReport(ok=ok, min_choi_eigenvalue=float(eigs[0]), tp_deviation=tp_dev)

    def isclose(self, other: "QubitChannel", atol: float = 1e-12) -> bool:
        return bool(np.max(np.abs(self.ptm - other.ptm)) <= atol)

    def __repr__(self):
        t = ", ".join(f"{v:.6g}" for v in self.t)
        lam = ", ".join(f"{v:.6g}" for v in self.lam)
        return f"QubitChannel(t=({t}), lam=({lam}))"


def is_cptp(ch: QubitChannel) -> CptpReport:
    """Choi positivity (floor ``-1e-9``) plus trace preservation (``1e-12``)."""
    return ch.cptp_report


def apply_channel(ch: QubitChannel, rho: QubitState) -> QubitState:
    """Apply a CPTP channel to a state (Kraus sum when available, Bloch map otherwise)."""
    report = ch.cptp_report
    if not report.ok:
        raise NotCptpError(
            f"channel is not CPTP (min Choi eigenvalue {report.min_choi_eigenvalue:.3e}, "
            f"TP deviation {report.tp_deviation:.3e})"
        )
    if ch.kraus is not None:
        out = sum(a @ rho.matrix @ a.conj().T for a in ch.kraus)
        return QubitState.from_matrix(out)
    r = rho.bloch
    r_out = ch.t + ch.lam * r
    return QubitState.from_bloch(r_out)


def compose(second: QubitChannel, first: QubitChannel) -> QubitChannel:
    """Channel ``second o first``; transfer matrices multiply."""
    for ch in (second, first):
        if not ch.cptp_report.ok:
            raise NotCptpError("compose requires CPTP channels")
    return QubitChannel.from_ptm(second.ptm @ first.ptm)


def random_state(rng: np.random.Generator) -> QubitState:
    """Uniformly sample p, then gamma uniformly from the allowed disk."""
    p = rng.uniform(0, 1)
    radius = np.sqrt(p * (1 - p)) * np.sqrt(rng.uniform(0, 1))
    phase = rng.uniform(0, 2 * np.pi)
    return QubitState(p=p, gamma=radius * np.exp(1j * phase))


def random_cptp_canonical_channel(
    rng: np.random.Generator, t_scale: float = 0.8, max_tries: int = 10_000
) -> QubitChannel:
    """Rejection-sample a CPTP canonical channel with generic ``t`` and ``lam``."""
    for _ in range(max_tries):
        lam = rng.uniform(-1, 1, size=3)
        t = rng.uniform(-1, 1, size=3) * t_scale
        ch = QubitChannel.from_canonical(t, lam)
        if ch.cptp_report.ok:
            return ch
    raise RuntimeError("failed to sample a CPTP channel")
