"""Qubit-qubit dilations, weakly complementary channels, degradability certificates.

Every Gaussian channel in angle form ``(theta, phi, q)`` is realized by a
two-qubit unitary acting on system (x) environment (environment index
fastest) with columns::

    |0>_S |0>_E  ->  cos(theta)|00> + sin(theta)|11>
    |1>_S |0>_E  ->  sin(phi)|01> + cos(phi)|10>
    |0>_S |1>_E  ->  cos(phi)|01> - sin(phi)|10>
    |1>_S |1>_E  -> -sin(theta)|00> + cos(theta)|11>

and the environment prepared in ``diag(q, 1-q)``.  The completion on the
``|1>_E`` sector is the orthonormal one that keeps the traced-out system
channel inside the Gaussian family for every ``q`` (the alternative pairing
of the completion vectors only reproduces it at ``q = 1``); the dilation
soundness tests verify this numerically rather than trusting the structure.

A channel N with weakly complementary channel N~ is *weakly degradable* when
``D o N = N~`` for some channel D, and *anti-degradable* when
``D' o N~ = N`` for some D'; anti-degradability forces zero quantum
capacity.  Certificates are produced by a least-squares solve on transfer
matrices followed by honest re-verification (residual and Choi positivity);
a failed search is reported as "neither certified", an unknown rather than a
proof.  For a pure environment (q in {0, 1}) the sign test
``cos(2 theta)/cos(2 phi) >= 0`` predicts weak degradability, and
anti-degradability otherwise; for a mixed environment the negative side of
the test claims null quantum capacity (claimed, never computed here).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .green import AngleParams
from .qubit import (
    NonDiagonalBlockError,
    NotCptpError,
    QubitChannel,
    QubitState,
    canonical_from_ptm,
    is_cptp,
)

__all__ = [
    "Dilation",
    "DegradabilityVerdict",
    "Prediction",
    "WEAKLY_DEGRADABLE",
    "ANTI_DEGRADABLE",
    "NEITHER_CERTIFIED",
    "NULL_CAPACITY_CLAIMED",
    "dilation_from_angles",
    "weakly_complementary",
    "certify",
    "classify_by_angles",
]

WEAKLY_DEGRADABLE = "weakly_degradable"
ANTI_DEGRADABLE = "anti_degradable"
NEITHER_CERTIFIED = "neither_certified"
NULL_CAPACITY_CLAIMED = "null_capacity_claimed"

CERT_RESIDUAL_TOL = 1e-9
UNITARITY_ATOL = 1e-12
BOUNDARY_ATOL = 1e-12


@dataclass(frozen=True, eq=False)
class Dilation:
    """Two-qubit unitary plus environment state realizing a channel by partial trace."""

    unitary: np.ndarray
    env_state: QubitState

    def __post_init__(self):
        u = np.asarray(self.unitary, dtype=complex).reshape(4, 4).copy()
        u.flags.writeable = False
        object.__setattr__(self, "unitary", u)
        dev = np.max(np.abs(u.conj().T @ u - np.eye(4)))
        if dev > UNITARITY_ATOL:
            raise ValueError(f"matrix is not unitary (deviation {dev:.3e})")
        if abs(self.env_state.gamma) > 1e-12:
            raise ValueError("environment state must be diagonal diag(q, 1-q)")

    @property
    def q(self) -> float:
        return self.env_state.p

    def _branch_weights(self):
        q = self.q
        return [(0, q), (1, 1 - q)]

    def system_kraus(self) -> list:
        """Kraus list of the system-output channel Tr_E[U (rho (x) rho_E) U^dag]."""
        u = self.unitary.reshape(2, 2, 2, 2)  # [s_out, e_out, s_in, e_in]
        ops = []
        for j, weight in self._branch_weights():
            if weight == 0:
                continue
            for k in range(2):
                ops.append(np.sqrt(weight) * u[:, k, :, j])
        return ops

    def env_kraus(self) -> list:
        """Kraus list of the environment-output channel Tr_S[U (rho (x) rho_E) U^dag]."""
        u = self.unitary.reshape(2, 2, 2, 2)
        ops = []
        for j, weight in self._branch_weights():
            if weight == 0:
                continue
            for k in range(2):
                ops.append(np.sqrt(weight) * u[k, :, :, j])
        return ops

    def channel(self) -> QubitChannel:
        return QubitChannel.from_kraus(self.system_kraus())


def dilation_from_angles(ap: AngleParams) -> Dilation:
    """Construct the dilation of the Gaussian channel with angle form ``ap``."""
    if not -1e-12 <= ap.q <= 1 + 1e-12:
        raise ValueError(f"q={ap.q} outside [0, 1]")
    ct, st = np.cos(ap.theta), np.sin(ap.theta)
    cp, sp = np.cos(ap.phi), np.sin(ap.phi)
    u = np.zeros((4, 4), dtype=complex)
    # basis order |s e>: 00, 01, 10, 11; columns are images of basis kets
    u[:, 0] = [ct, 0, 0, st]       # |0 0>
    u[:, 2] = [0, sp, cp, 0]       # |1 0>
    u[:, 1] = [0, cp, -sp, 0]      # |0 1>
    u[:, 3] = [-st, 0, 0, ct]      # |1 1>
    q = min(max(float(ap.q), 0.0), 1.0)
    return Dilation(unitary=u, env_state=QubitState(p=q))


def weakly_complementary(d: Dilation) -> QubitChannel:
    """Environment-output channel of a dilation, as a canonical-form channel."""
    return QubitChannel.from_kraus(d.env_kraus())


@dataclass(frozen=True, eq=False)
class DegradabilityVerdict:
    """Outcome of the degradability search.

    ``residual`` and ``min_choi_eigenvalue`` describe the accepted witness;
    for a "neither certified" outcome they describe the better-residual
    attempt.  ``attempts`` keeps the diagnostics of both solve directions
    ("anti" is None when the weak direction already succeeded).
    """

    kind: str
    witness: Optional[QubitChannel]
    residual: float
    min_choi_eigenvalue: float
    attempts: dict

    def to_json(self) -> dict:
        def attempt_json(a):
            if a is None:
                return None
            return {
                "residual": a["residual"],
                "min_choi_eigenvalue": a["min_choi_eigenvalue"],
                "cptp": a["cptp"],
            }

        return {
            "kind": self.kind,
            "witness": None
            if self.witness is None
            else {
                "type": "canonical",
                "t": [float(v) for v in self.witness.t],
                "lambda": [float(v) for v in self.witness.lam],
            },
            "residual": float(self.residual),
            "min_choi_eigenvalue": float(self.min_choi_eigenvalue),
            "attempts": {k: attempt_json(v) for k, v in self.attempts.items()},
        }


def _solve_degrading(source: QubitChannel, target: QubitChannel):
    """Least-squares D with ``D o source ~= target``; returns diagnostics.

    The solve is restricted to the transfer-matrix block form
    ``[[1, 0], [d, Delta]]``, which keeps trace preservation exact; the
    minimum-norm solution is used where ``source`` is singular.  The result
    is only trusted after residual and Choi re-verification by the caller.
    """
    t_src = source.ptm[1:, 1:]
    t_tgt = target.ptm[1:, 1:]
    delta_t, *_ = np.linalg.lstsq(t_src.T, t_tgt.T, rcond=None)
    delta = delta_t.T
    shift = target.ptm[1:, 0] - delta @ source.ptm[1:, 0]
    ptm = np.zeros((4, 4))
    ptm[0, 0] = 1.0
    ptm[1:, 0] = shift
    ptm[1:, 1:] = delta
    residual = float(np.max(np.abs(ptm @ source.ptm - target.ptm)))
    try:
        t, lam = canonical_from_ptm(ptm, atol=1e-9)
    except NonDiagonalBlockError:
        return {
            "witness": None,
            "residual": residual,
            "min_choi_eigenvalue": float("-inf"),
            "cptp": False,
        }
    witness = QubitChannel.from_canonical(t, lam)
    report = is_cptp(witness)
    return {
        "witness": witness,
        "residual": residual,
        "min_choi_eigenvalue": report.min_choi_eigenvalue,
        "cptp": report.ok,
    }


def certify(
    n_ch: QubitChannel,
    comp: QubitChannel,
    residual_tol: float = CERT_RESIDUAL_TOL,
    attempt_both: bool = False,
) -> DegradabilityVerdict:
    """Certify weak degradability or anti-degradability of ``n_ch`` given its
    weakly complementary channel ``comp``.

    Tries ``D o N = N~`` first, then ``D' o N~ = N``.  A direction is accepted
    only when the recomposition residual is within ``residual_tol`` and the
    witness passes the CPTP check; otherwise the result is
    ``neither_certified`` with both attempts reported.  ``attempt_both``
    forces the anti-degrading solve to run even when the weak direction
    already succeeded (useful at classification boundaries).
    """
    for ch, label in ((n_ch, "channel"), (comp, "complement")):
        report = is_cptp(ch)
        if not report.ok:
            raise NotCptpError(f"{label} is not CPTP")
    weak = _solve_degrading(n_ch, comp)
    if weak["residual"] <= residual_tol and weak["cptp"]:
        anti = _solve_degrading(comp, n_ch) if attempt_both else None
        return DegradabilityVerdict(
            kind=WEAKLY_DEGRADABLE,
            witness=weak["witness"],
            residual=weak["residual"],
            min_choi_eigenvalue=weak["min_choi_eigenvalue"],
            attempts={"weak": weak, "anti": anti},
        )
    anti = _solve_degrading(comp, n_ch)
    if anti["residual"] <= residual_tol and anti["cptp"]:
        return DegradabilityVerdict(
            kind=ANTI_DEGRADABLE,
            witness=anti["witness"],
            residual=anti["residual"],
            min_choi_eigenvalue=anti["min_choi_eigenvalue"],
            attempts={"weak": weak, "anti": anti},
        )
    best = weak if weak["residual"] <= anti["residual"] else anti
    return DegradabilityVerdict(
        kind=NEITHER_CERTIFIED,
        witness=None,
        residual=best["residual"],
        min_choi_eigenvalue=best["min_choi_eigenvalue"],
        attempts={"weak": weak, "anti": anti},
    )


@dataclass(frozen=True)
class Prediction:
    """Verdict kind predicted from the sign of ``cos(2 theta)/cos(2 phi)``.

    ``boundary`` flags the pole ``cos(2 phi) = 0``, where the sign test is
    ill-defined and only numeric certification is meaningful.
    """

    kind: str
    ratio: float
    boundary: bool


def classify_by_angles(ap: AngleParams, boundary_atol: float = BOUNDARY_ATOL) -> Prediction:
    """Predict the verdict kind for the Gaussian channel with angle form ``ap``."""
    num = float(np.cos(2 * ap.theta))
    den = float(np.cos(2 * ap.phi))
    boundary = abs(den) <= boundary_atol
    ratio = float("inf") if boundary else num / den
    if boundary or ratio >= 0:
        kind = WEAKLY_DEGRADABLE
    elif ap.q <= boundary_atol or ap.q >= 1 - boundary_atol:
        kind = ANTI_DEGRADABLE
    else:
        kind = NULL_CAPACITY_CLAIMED
    return Prediction(kind=kind, ratio=ratio, boundary=boundary)
