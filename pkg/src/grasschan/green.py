"""Green-function representation of canonical qubit channels.

A channel with canonical parameters ``(t, lam)`` acts on characteristic
functions by the Berezin convolution

    chi_out(xi) = integrate_pair( chi(zeta) * G(zeta, xi) )

where the kernel combines a Grassmann delta, a terminating exponential and
two additive correction terms::

    G = delta_pair(zeta - a xi - b xi*) * (1 + (t3/2) xi xi*)
        + (lam3 - lam1 lam2) xi xi*
        + ((t1 - i t2)/2) zeta zeta* xi
        - ((t1 + i t2)/2) zeta zeta* xi*

with ``a = (lam1 + lam2)/2`` and ``b = (lam2 - lam1)/2``.  The additive
combination is the one fixed by the oracle-equivalence suite: the same
kernel also falls out of the trace construction
``trace(N(sigma3 D(-zeta)) D(xi))`` implemented by
:func:`green_from_channel_trace`, and the convolution path agrees with the
dense Bloch map on random channels and states.

A kernel is Gaussian when it matches ``delta_pair(zeta - a xi - b xi*)
* (1 + c xi xi*)`` exactly; for canonical provenance this happens iff
``t1 = t2 = 0`` and ``lam3 = lam1 lam2``.  Gaussian kernels admit the angle
form ``a = cos(theta)cos(phi)``, ``b = -sin(theta)sin(phi)``,
``c = (2q - 1)(cos 2theta - cos 2phi)/4`` realized by a qubit-qubit
dilation with environment ``diag(q, 1-q)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .charfunc import CharFunction, displacement
from .grassmann import (
    XI,
    XI_STAR,
    ZETA,
    ZETA_STAR,
    Generator,
    GrassmannElement,
    OperatorElement,
    delta_pair,
    integrate_pair,
    substitute,
)
from .qubit import PAULI, NotCptpError, QubitChannel, is_cptp

__all__ = [
    "GreenFunction",
    "GaussianParams",
    "AngleParams",
    "GaussianEquivalent",
    "NoSolutionError",
    "green_from_canonical",
    "green_from_channel",
    "green_from_channel_trace",
    "apply_green",
    "detect_gaussian",
    "angles_from_gaussian",
    "channel_from_angles",
    "gaussian_equivalent",
]

GAUSSIAN_ATOL = 1e-10
ANGLE_ATOL = 1e-9


class NoSolutionError(ValueError):
    """No (theta, phi, q) reproduces the requested Gaussian parameters."""


@dataclass(frozen=True, eq=False)
class GreenFunction:
    """Symbolic channel kernel plus, when known, its source parameters."""

    body: GrassmannElement
    provenance: Optional[tuple] = None

    def pretty(self) -> str:
        return self.body.pretty()

    def to_table(self) -> dict:
        return self.body.to_table()

    def isclose(self, other: "GreenFunction", atol: float = 1e-12) -> bool:
        return self.body.isclose(other.body, atol=atol)


@dataclass(frozen=True)
class GaussianParams:
    """Parameters of a Gaussian kernel ``delta(zeta - a xi - b xi*) (1 + c xi xi*)``."""

    a: complex
    b: complex
    c: float


@dataclass(frozen=True)
class AngleParams:
    """Angle form of a Gaussian channel with environment weight ``q``."""

    theta: float
    phi: float
    q: float


@dataclass(frozen=True, eq=False)
class GaussianEquivalent:
    """A lambda-permutation (with paired sign flips) that lands on a Gaussian channel."""

    perm: tuple
    signs: tuple
    channel: QubitChannel


def _delta_argument(a: complex, b: complex) -> GrassmannElement:
    return ZETA - a * XI - b * XI_STAR


def green_from_canonical(t, lam) -> GreenFunction:
    """Kernel of the CPTP canonical channel ``(t, lam)``."""
    ch = QubitChannel.from_canonical(t, lam)
    report = is_cptp(ch)
    if not report.ok:
        raise NotCptpError(
            f"canonical parameters are not CPTP (min Choi eigenvalue "
            f"{report.min_choi_eigenvalue:.3e})"
        )
    return _green_body(ch.t, ch.lam, provenance=(ch.t, ch.lam))


def green_from_channel(ch: QubitChannel) -> GreenFunction:
    return green_from_canonical(ch.t, ch.lam)


def _green_body(t, lam, provenance=None) -> GreenFunction:
    t1, t2, t3 = (float(v) for v in t)
    lam1, lam2, lam3 = (float(v) for v in lam)
    a = (lam1 + lam2) / 2
    b = (lam2 - lam1) / 2
    body = delta_pair(_delta_argument(a, b)) * (
        GrassmannElement.one() + (t3 / 2) * (XI * XI_STAR)
    )
    body = body + (lam3 - lam1 * lam2) * (XI * XI_STAR)
    body = body + ((t1 - 1j * t2) / 2) * (ZETA * ZETA_STAR * XI)
    body = body - ((t1 + 1j * t2) / 2) * (ZETA * ZETA_STAR * XI_STAR)
    return GreenFunction(body=body, provenance=provenance)


def green_from_channel_trace(ch: QubitChannel) -> GreenFunction:
    """Kernel from its trace definition ``trace(N(sigma3 D(-zeta)) D(xi))``.

    Independent of :func:`green_from_canonical`'s closed-form assembly; used
    to cross-check the additive combination of the kernel.
    """
    x = OperatorElement.from_matrix(PAULI[3]) * displacement(sign=-1, pair="zeta")
    mapped = {}
    for mask in range(16):
        m = x.monomial_matrix(mask)
        if not m.any():
            continue
        coeffs = np.array([np.trace(PAULI[k] @ m) / 2 for k in range(4)])
        out_coeffs = ch.ptm @ coeffs
        mapped[mask] = sum(out_coeffs[k] * PAULI[k] for k in range(4))
    transformed = OperatorElement.from_monomial_matrices(mapped)
    body = (transformed * displacement(sign=1, pair="xi")).trace()
    return GreenFunction(body=body, provenance=(ch.t, ch.lam))


def apply_green(green: GreenFunction, chi: CharFunction) -> CharFunction:
    """Berezin convolution of a kernel with an input characteristic function."""
    relabeled = substitute(
        chi.body, {Generator.XI: ZETA, Generator.XI_STAR: ZETA_STAR}
    )
    return CharFunction(integrate_pair(relabeled * green.body))


_GAUSSIAN_ZERO_MONOMIALS = (
    "1", "ζ", "ζ*", "ξ", "ξ*", "ζζ*ξ", "ζζ*ξ*", "ζξξ*", "ζ*ξξ*",
)


def detect_gaussian(green: GreenFunction, atol: float = GAUSSIAN_ATOL) -> Optional[GaussianParams]:
    """Match the kernel against the Gaussian pattern; None when it fails.

    For kernels built from canonical parameters this is equivalent to
    ``|t1|, |t2| <= atol`` and ``|lam3 - lam1 lam2| <= atol``.
    """
    body = green.body
    if abs(body.coefficient("ζζ*") - 1) > atol:
        return None
    a = body.coefficient("ζ*ξ")
    b = body.coefficient("ζ*ξ*")
    c = body.coefficient("ζζ*ξξ*")
    if abs(c.imag) > atol:
        return None
    checks = (
        abs(body.coefficient("ζξ") + np.conj(b)),
        abs(body.coefficient("ζξ*") + np.conj(a)),
        abs(body.coefficient("ξξ*") - (abs(a) ** 2 - abs(b) ** 2)),
    )
    if max(checks) > atol:
        return None
    if any(abs(body.coefficient(name)) > atol for name in _GAUSSIAN_ZERO_MONOMIALS):
        return None
    return GaussianParams(a=a, b=b, c=float(c.real))


def _candidate_angles(u: float, v: float) -> list:
    """Raw (theta, phi) branch candidates from theta-phi = ±u, theta+phi = ±v.

    Each candidate is normalized by the joint symmetries
    ``(theta, phi) -> (-theta, -phi)`` and ``-> (theta + pi, phi + pi)`` so
    that ``theta`` lands in [0, pi/2]; phi then lies in (-pi, pi].
    """
    seen = set()
    out = []
    for s_u, s_v in itertools.product((1, -1), repeat=2):
        theta = (s_v * v + s_u * u) / 2
        phi = (s_v * v - s_u * u) / 2
        if theta < 0:
            theta, phi = -theta, -phi
        if theta > np.pi / 2:
            theta, phi = np.pi - theta, np.pi - phi
        phi = float(np.mod(phi + np.pi, 2 * np.pi) - np.pi)
        if phi == -np.pi:
            phi = np.pi
        key = (round(theta, 12), round(phi, 12))
        if key not in seen:
            seen.add(key)
            out.append((float(theta), float(phi)))
    return out


def angles_from_gaussian(gp: GaussianParams, atol: float = ANGLE_ATOL) -> AngleParams:
    """Solve ``cos(theta)cos(phi) = a``, ``sin(theta)sin(phi) = -b`` and the
    exponent relation for ``q``.

    Branch policy: theta is normalized into [0, pi/2]; among consistent
    candidates the smallest theta wins, ties broken toward q = 1.  When
    ``cos 2theta = cos 2phi`` the exponent constrains nothing, ``c`` must
    vanish and q defaults to 1.
    """
    a, b, c = complex(gp.a), complex(gp.b), float(gp.c)
    if abs(a.imag) > atol or abs(b.imag) > atol:
        raise NoSolutionError("a and b must be real for the angle parametrization")
    if abs(a) > 1 + atol or abs(b) > 1 + atol:
        raise NoSolutionError(f"|a|={abs(a):.6g} or |b|={abs(b):.6g} exceeds 1")
    lam1 = a.real - b.real
    lam2 = a.real + b.real
    if abs(lam1) > 1 + atol or abs(lam2) > 1 + atol:
        raise NoSolutionError("difference/sum of a and b exceed the cosine range")
    u = float(np.arccos(np.clip(lam1, -1.0, 1.0)))
    v = float(np.arccos(np.clip(lam2, -1.0, 1.0)))
    valid = []
    for theta, phi in _candidate_angles(u, v):
        denom = (np.cos(2 * theta) - np.cos(2 * phi)) / 4
        if abs(denom) <= atol:
            if abs(c) > atol:
                continue
            q = 1.0
        else:
            ratio = c / denom
            if not -1 - 1e-7 <= ratio <= 1 + 1e-7:
                continue
            q = float(np.clip((1 + ratio) / 2, 0.0, 1.0))
        valid.append(AngleParams(theta=theta, phi=phi, q=q))
    if not valid:
        raise NoSolutionError(
            f"no (theta, phi, q) reproduces a={a.real:.6g}, b={b.real:.6g}, c={c:.6g}"
        )
    valid.sort(key=lambda ap: (round(ap.theta, 12), round(abs(ap.q - 1), 12), round(abs(ap.phi), 12), -ap.phi))
    return valid[0]


def channel_from_angles(ap: AngleParams) -> QubitChannel:
    """Canonical channel of the angle-parametrized Gaussian family."""
    lam1 = float(np.cos(ap.theta - ap.phi))
    lam2 = float(np.cos(ap.theta + ap.phi))
    lam3 = lam1 * lam2
    t3 = (2 * ap.q - 1) * (np.cos(2 * ap.theta) - np.cos(2 * ap.phi)) / 2
    return QubitChannel.from_canonical([0.0, 0.0, float(t3)], [lam1, lam2, lam3])


# Even permutations first (identity leading), then odd ones; within a
# permutation the sign patterns with fewer flips come first.  This order makes
# an already-Gaussian channel report the identity permutation and sends the
# phase-flip pattern (m, m, 1) to the bit-flip pattern (1, m, m).  Flipping
# two lambdas can never rescue the product condition (it is invariant under
# every even pattern), so matches always surface with all-plus signs; the
# patterns stay enumerated because they complete the admissible frame group.
_PERMUTATIONS = ((0, 1, 2), (1, 2, 0), (2, 0, 1), (0, 2, 1), (2, 1, 0), (1, 0, 2))
_SIGN_PATTERNS = ((1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1))


def gaussian_equivalent(
    ch: QubitChannel, atol: float = GAUSSIAN_ATOL
) -> Optional[GaussianEquivalent]:
    """Search lambda permutations with even sign flips for a Gaussian form.

    The admissible transforms are the unitary changes of canonical frame:
    relabel the three axes (permuting ``lam`` and ``t`` together) and flip the
    signs of any two lambdas.  Returns the first hit in a fixed enumeration
    order, or None.
    """
    t = ch.t
    lam = ch.lam
    for perm in _PERMUTATIONS:
        inv = tuple(perm.index(i) for i in range(3))
        for signs in _SIGN_PATTERNS:
            new_lam = np.array([signs[inv[i]] * lam[inv[i]] for i in range(3)])
            new_t = np.array([t[inv[i]] for i in range(3)])
            if abs(new_t[0]) > atol or abs(new_t[1]) > atol:
                continue
            if abs(new_lam[2] - new_lam[0] * new_lam[1]) > atol:
                continue
            channel = QubitChannel.from_canonical([0.0, 0.0, float(new_t[2])], new_lam)
            return GaussianEquivalent(perm=perm, signs=signs, channel=channel)
    return None
