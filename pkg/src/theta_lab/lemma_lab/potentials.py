"""Closed-form constants and the one-parameter potentials of the proofs.

All functions accept scalars or numpy arrays.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

PI = math.pi
S18, S36, S54, S72 = (math.sin(k * PI / 10) for k in (1, 2, 3, 4))
C36, C72 = math.cos(PI / 5), math.cos(2 * PI / 5)


@dataclass(frozen=True)
class PaperConstants:
    K_main: float
    K_t253: float
    K_posofc: float
    K_case5: float
    K_case8: float

    def to_dict(self) -> dict:
        return asdict(self)


def paper_constants() -> PaperConstants:
    return PaperConstants(
        K_main=math.sin(3 * PI / 10) / (math.sin(2 * PI / 5) - math.sin(3 * PI / 10)),
        K_t253=1.0 / (math.cos(PI / 5) - math.sin(PI / 5)),
        K_posofc=1.0 / math.cos(2 * PI / 5),
        K_case5=1.0 / math.sin(PI / 10),
        K_case8=2 * math.sin(2 * PI / 5) / (math.sin(3 * PI / 10) * (1 - 2 * math.sin(PI / 10))),
    )


# K at which the derivative numerator below vanishes at theta = 0
DERIVATIVE_BREAKEVEN = math.sin(2 * PI / 5) / (math.cos(2 * PI / 5) * math.sin(3 * PI / 5))


def phi_t253(beta, K):
    """Relaxed potential in the right triangle (angles pi/5, pi/2, 3pi/10).

    Normalized so that the projection of w onto the pi/5 side is at
    distance 1 from the apex; beta is the angle between the right-angle
    leg and the segment to t.  Decreasing in beta.
    """
    beta = np.asarray(beta, dtype=np.float64)
    out = 1.0 + K * (S36 - C36 * np.tan(beta)) - K * C36 / np.cos(beta)
    return out if out.ndim else float(out)


def phi_t334(beta, K):
    """Relaxed potential in the (3pi/10, 3pi/10, 2pi/5) triangle, scaled by sin(2pi/5)/|s w_r|."""
    beta = np.asarray(beta, dtype=np.float64)
    out = np.sin(3 * PI / 10 + beta) + K * np.sin(3 * PI / 10 - beta) - K * S72
    return out if out.ndim else float(out)


def phi_t334_derivative(beta, K):
    beta = np.asarray(beta, dtype=np.float64)
    out = np.cos(3 * PI / 10 + beta) - K * np.cos(3 * PI / 10 - beta)
    return out if out.ndim else float(out)


def psi_transform(gamma, K, c_offset):
    """|a l'_m| + |l'_m c| - K|ab| with |b l'_m| = 1, as a function of gamma."""
    gamma = np.asarray(gamma, dtype=np.float64)
    out = (np.sin(gamma) - K * S72) / np.sin(2 * PI / 5 - gamma) + c_offset
    return out if out.ndim else float(out)


def psi_derivative_numerator(gamma, K):
    """Numerator of d(psi)/d(gamma); the denominator is a positive square."""
    gamma = np.asarray(gamma, dtype=np.float64)
    out = S72 * (1.0 - K * np.cos(2 * PI / 5 - gamma))
    return out if out.ndim else float(out)


def mainlemma2_derivative(theta, K):
    """Numerator of d(Phi*)/d(theta) when d' slides from p2 towards p3.

    Shares its sign with the derivative since the denominator
    sin^2(2pi/5 - theta) is positive.
    """
    theta = np.asarray(theta, dtype=np.float64)
    out = K * np.cos(2 * PI / 5 - theta) * math.sin(3 * PI / 5) - S72
    return out if out.ndim else float(out)
