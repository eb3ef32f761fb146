"""Characteristic-function layer: displacement operators, chi from rho, rho from chi.

The displacement operator is the exactly truncated exponential of
``sigma_+ g - g* sigma_-`` over a chosen generator pair (the series stops at
second order by nilpotency).  With the calibrated operator convention its
matrix over the xi pair is::

    [[1 + xi xi*/2,  -xi*      ],
     [xi,            1 - xi xi*/2]]

and the characteristic function of ``rho = [[p, gamma], [gamma*, 1-p]]`` is

    chi(xi) = 1 + (2p - 1) xi xi*/2 + gamma xi - gamma* xi*.

This closed form is the calibration invariant that pins every sign
convention in the algebra; the test suite rejects any convention change that
breaks it.

For a Hermitian source state the adjoint of the body equals the body with
both generators negated (even part fixed, odd part sign-flipped), the
Grassmann analogue of ``chi(xi)* = chi(-xi)``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .grassmann import (
    Generator,
    GrassmannElement,
    OperatorElement,
    substitute,
)
from .qubit import SIGMA_MINUS, SIGMA_PLUS, QubitState

__all__ = [
    "CharFunction",
    "NotNormalizedError",
    "NotPhysicalError",
    "displacement",
    "char_function",
    "state_from_char",
    "negate_generators",
]

NORMALIZATION_ATOL = 1e-10
PHYSICALITY_ATOL = 1e-9

_PAIRS = {
    "xi": (Generator.XI, Generator.XI_STAR),
    "zeta": (Generator.ZETA, Generator.ZETA_STAR),
}

_XI_MASK = (1 << Generator.XI) | (1 << Generator.XI_STAR)


class NotNormalizedError(ValueError):
    """Constant coefficient of a characteristic function differs from 1."""


class NotPhysicalError(ValueError):
    """Recovered (p, gamma) violates state positivity."""


@dataclass(frozen=True)
class CharFunction:
    """Characteristic function supported on the xi subalgebra, constant term 1."""

    body: GrassmannElement

    def __post_init__(self):
        for mask in self.body.support():
            if mask & ~_XI_MASK:
                raise ValueError("characteristic function must live on the xi subalgebra")
        if abs(self.body.constant - 1) > NORMALIZATION_ATOL:
            raise NotNormalizedError(
                f"constant coefficient {self.body.constant} differs from 1"
            )

    def pretty(self) -> str:
        return self.body.pretty()


@functools.lru_cache(maxsize=None)
def displacement(sign: int = 1, pair: str = "xi") -> OperatorElement:
    """Displacement operator ``exp(sigma_+ g - g* sigma_-)`` for ``g = sign * pair``.

    ``pair`` selects the generator pair ("xi" or "zeta"); ``sign=-1`` displaces
    along the negated generators.  Values are immutable, so the four variants
    are computed once and shared.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    try:
        g, g_star = _PAIRS[pair]
    except KeyError:
        raise ValueError(f"unknown generator pair {pair!r}") from None
    g_el = sign * GrassmannElement.generator(g)
    g_star_el = sign * GrassmannElement.generator(g_star)
    exponent = OperatorElement.from_matrix(SIGMA_PLUS) * g_el - OperatorElement.from_matrix(
        SIGMA_MINUS
    ) * g_star_el
    result = OperatorElement.identity()
    term = OperatorElement.identity()
    k = 1
    while True:
        term = term * exponent * (1.0 / k)
        if all(term.entry(i, j).is_zero() for i in range(2) for j in range(2)):
            break
        result = result + term
        k += 1
    return result


def char_function(rho: QubitState) -> CharFunction:
    """``trace(rho D(xi))`` as a Grassmann element of the xi subalgebra."""
    rho_op = OperatorElement.from_matrix(rho.matrix)
    return CharFunction((rho_op * displacement()).trace())


def state_from_char(chi: CharFunction) -> QubitState:
    """Invert the closed form: p from the xi xi* coefficient, gamma from xi."""
    body = chi.body
    if abs(body.constant - 1) > NORMALIZATION_ATOL:
        raise NotNormalizedError(f"constant coefficient {body.constant} differs from 1")
    pair_coeff = body.coefficient("ξξ*")
    if abs(pair_coeff.imag) > PHYSICALITY_ATOL:
        raise NotPhysicalError(f"xi xi* coefficient {pair_coeff} is not real")
    p = pair_coeff.real + 0.5
    gamma = body.coefficient("ξ")
    mirror = body.coefficient("ξ*")
    if abs(mirror + np.conj(gamma)) > PHYSICALITY_ATOL:
        raise NotPhysicalError(
            f"xi* coefficient {mirror} is inconsistent with -conj(xi coefficient)"
        )
    if not -PHYSICALITY_ATOL <= p <= 1 + PHYSICALITY_ATOL:
        raise NotPhysicalError(f"recovered p={p} outside [0, 1]")
    if abs(gamma) ** 2 > p * (1 - p) + PHYSICALITY_ATOL:
        raise NotPhysicalError(
            f"recovered |gamma|^2={abs(gamma)**2:.3e} exceeds p(1-p)={p*(1-p):.3e}"
        )
    return QubitState(p=min(max(p, 0.0), 1.0), gamma=gamma)


def negate_generators(x: GrassmannElement) -> GrassmannElement:
    """Map every generator g to -g (identity on even monomials)."""
    return substitute(
        x,
        {g: -GrassmannElement.generator(g) for g in Generator},
    )
