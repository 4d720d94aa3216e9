"""Resource accounting: entanglement consumed, classical bits sent, and the
trade-off bounds on their sum.

Quantities per scheme:
* e_channel — entanglement entropy of the shared channel;
* e12 — probability-weighted average entanglement of the measurement basis;
* h12 — Shannon entropy of the outcome distribution (classical cost).

Bounds as functions of channel entanglement E:
* upper_bound_sum — the optimal-curve value of e12 + h12 for the one-parameter
  family a2 = a1 (expressed through a1);
* lower_bound_sum — piecewise envelope f1 (E < 3/2, via an auxiliary weight q
  with H(q) = 2(E-1)) and the affine f2 = k*E + b (E >= 3/2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import SchmidtChannel, channel_entropy
from .qlinalg import LOG2_3, TOL, binary_entropy, entanglement_from_tangle
from .scheme import SchemeParams, rotation_from_angles
from .teleport import branch_probabilities

# affine piece of the lower bound: f2(E) = K_SLOPE * E + B_INTERCEPT,
# pinned by f2(log2 3) = 1 + log2 6 and the stated slope
K_SLOPE = (5.0 / 3.0 - LOG2_3) / (LOG2_3 - 1.5)
B_INTERCEPT = 2.0 * LOG2_3 + 11.0 / 6.0 - 1.0 / (4.0 * LOG2_3 - 6.0)


@dataclass(frozen=True)
class ResourceReport:
    """All resource quantifiers of one solved scheme on one channel."""

    e_channel: float
    e12: float
    h12: float
    tangles: tuple[float, ...]
    probabilities: tuple[float, ...]
    sum: float

    def to_json_dict(self) -> dict:
        return {
            "e_channel": self.e_channel,
            "e12": self.e12,
            "h12": self.h12,
            "tangles": list(self.tangles),
            "probabilities": list(self.probabilities),
            "sum": self.sum,
        }


@dataclass(frozen=True)
class BoundCurve:
    """One piece of the trade-off bound with its domain and parameters."""

    kind: str  # "lower_f1" | "lower_f2" | "upper"
    domain: tuple[float, float]
    parameters: dict


def bound_curves() -> tuple[BoundCurve, ...]:
    return (
        BoundCurve(kind="lower_f1", domain=(1.0, 1.5), parameters={"q_range": (0.0, 0.5)}),
        BoundCurve(kind="lower_f2", domain=(1.5, LOG2_3),
                   parameters={"k": K_SLOPE, "b": B_INTERCEPT}),
        BoundCurve(kind="upper", domain=(1.0, LOG2_3),
                   parameters={"a1_sq_range": (1.0 / 3.0, 0.5)}),
    )


def measurement_entanglement(probabilities, tangles) -> float:
    """e12 = sum of P_j * H((1 + sqrt(1 - C_j)) / 2) over branches."""
    return float(sum(p * entanglement_from_tangle(c) for p, c in zip(probabilities, tangles)))


def classical_cost(probabilities) -> float:
    """Shannon entropy (bits) of the outcome distribution, with 0 log 0 = 0."""
    h = 0.0
    for p in probabilities:
        if p < -TOL.entry:
            raise ValueError(f"negative probability {p}")
        if p > 0.0:
            h -= p * math.log2(p)
    return h


def branch_tangles(params: SchemeParams) -> tuple[float, ...]:
    """Closed-form tangles of the six basis rows, in label order."""
    u = rotation_from_angles(*params.theta)
    d1, d2 = params.delta
    c12 = 4.0 * u[0, 1] ** 2 * (u[0, 0] ** 2 + u[0, 2] ** 2)
    c12m = 4.0 * u[1, 1] ** 2 * (u[1, 0] ** 2 + u[1, 2] ** 2)
    c3 = (
        2.0 * u[2, 0] ** 2 * u[2, 1] ** 2 * (1.0 - math.cos(d1))
        + 2.0 * u[2, 0] ** 2 * u[2, 2] ** 2 * (1.0 - math.cos(d2))
        + 2.0 * u[2, 1] ** 2 * u[2, 2] ** 2 * (1.0 - math.cos(d1 + d2))
    )
    clip = lambda c: min(max(c, 0.0), 1.0)
    return (clip(c12), clip(c12), clip(c3), clip(c12m), clip(c12m), clip(c3))


def _triangle_entanglement(xi1: float, xi2: float) -> float:
    rad = 1.0 / 3.0 + (2.0 / 9.0) * (math.cos(xi1) + math.cos(xi2) + math.cos(xi1 - xi2))
    return binary_entropy((1.0 + math.sqrt(max(rad, 0.0))) / 2.0)


def _checked_acos(x: float) -> float:
    if abs(x) > 1.0 + TOL.entry:
        raise ValueError(f"arccos argument {x} outside [-1, 1]")
    return math.acos(min(max(x, -1.0), 1.0))


def gour_e12_case1(a1: float) -> float:
    """Reference-protocol average entanglement on the slice a2 = a1.

    The two interior angles of the coefficient triangle with sides
    (a1^2, a1^2, a0^2) enter through a closed form; the channel must be
    capable, so a1^2 lies in [1/4, 1/2].
    """
    b = a1 * a1
    a = 1.0 - 2.0 * b
    if a < -TOL.entry or a > 2.0 * b + TOL.entry:
        raise ValueError(f"a1 = {a1} outside the capable slice (1/4 <= a1^2 <= 1/2)")
    xi1 = math.pi - _checked_acos((2.0 * b * b - a * a) / (2.0 * b * b))
    xi2 = math.pi + _checked_acos(a / (2.0 * b))
    return _triangle_entanglement(xi1, xi2)


def gour_e12_case2(a0: float, a2: float) -> float:
    """Reference-protocol average entanglement on the slice a1^2 = 1/2."""
    p, q, r = a0 * a0, 0.5, a2 * a2
    if abs(p + r - 0.5) > 1e-9:
        raise ValueError(f"case-2 slice needs a0^2 + a2^2 = 1/2, got {p + r}")
    # on the slice q = p + r, so the law-of-cosines arguments are 1 and -1 up
    # to the slice residual; evaluating them in that form avoids catastrophic
    # cancellation when p or r is tiny
    s = p + r
    arg1 = 1.0 + (q - s) * (q + s) / (2.0 * p * q) if p > 1e-15 else 1.0
    arg2 = -1.0 + (s - q) * (s + q) / (2.0 * p * r) if p > 1e-15 and r > 1e-15 else -1.0
    # the already-validated slice residual can push the arguments past +-1
    # when p or r is tiny; that overshoot is not a domain violation
    xi1 = math.pi - math.acos(min(max(arg1, -1.0), 1.0))
    xi2 = math.pi + math.acos(min(max(arg2, -1.0), 1.0))
    return _triangle_entanglement(xi1, xi2)


def upper_bound_sum(a1: float) -> float:
    """e12 + h12 along the optimal curve of the a2 = a1 family, via a1.

    The curve pins theta3 by cos(2*theta3) = (1 - 2*a1^2)/a1^2 and theta1 by
    tan(2*theta1) = -sqrt(2)/tan(2*theta3); the sum is evaluated in closed
    form. Domain: 1/3 <= a1^2 <= 1/2.
    """
    b = a1 * a1
    arg = (1.0 - 2.0 * b) / b
    if abs(arg) > 1.0 + TOL.entry:
        raise ValueError(f"a1 = {a1} outside domain (1/3 <= a1^2 <= 1/2)")
    t3 = 0.5 * _checked_acos(min(max(arg, -1.0), 1.0))
    tan23 = math.tan(2.0 * t3)
    t1 = 0.5 * math.atan(-math.sqrt(2.0) / tan23) if abs(tan23) > 1e-300 else -math.pi / 4
    c1, s1 = math.cos(t1) ** 2, math.sin(t1) ** 2
    c3, s3 = math.cos(t3) ** 2, math.sin(t3) ** 2
    tangles = (1.0 - c1 * c1 * s3 * s3, 1.0 - s1 * s1 * s3 * s3, c3 * (1.0 + s3))
    den = 4.0 + 2.0 * math.cos(2.0 * t3)
    probs = ((s1 + c1 * c3) / den, (c3 + c1 * s3) / den, c3 / den)
    total = 0.0
    for p, c in zip(probs, tangles):
        total += 2.0 * p * (entanglement_from_tangle(min(max(c, 0.0), 1.0)) - math.log2(p))
    return total


def _g_of_q(q: float) -> float:
    """Value of the low-entanglement bound piece at auxiliary weight q."""
    if q <= 0.0:
        return 3.0
    return (
        (q + 3.0) / (q + 1.0)
        + 2.0 * math.log2(q + 1.0)
        - (2.0 * q + 1.0) / (q + 1.0) ** 2 * math.log2(2.0 * q + 1.0)
        - q * (2.0 * q + 1.0) / (q + 1.0) ** 2 * math.log2(q)
    )


def _q_from_entropy(e: float) -> float:
    """Solve H(q) = 2(E - 1) for q in [0, 1/2] by bisection."""
    target = 2.0 * (e - 1.0)
    lo, hi = 0.0, 0.5
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if binary_entropy(mid) < target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def lower_bound_sum(e: float) -> float:
    """Piecewise lower envelope of e12 + h12 at channel entanglement E.

    E < 3/2 uses the q-parameterized piece; E >= 3/2 the affine piece
    (the two pieces disagree at E = 3/2; the affine value is returned there).
    Domain: 1 < E <= log2 3 (+ tolerance).
    """
    if not (1.0 - TOL.entry < e <= LOG2_3 + TOL.entry):
        raise ValueError(f"channel entanglement {e} outside (1, log2 3]")
    if e < 1.5:
        return _g_of_q(_q_from_entropy(e))
    return K_SLOPE * e + B_INTERCEPT


def resource_report(ch: SchmidtChannel, params: SchemeParams) -> ResourceReport:
    """Assemble all resource quantifiers for a solved scheme."""
    probs = branch_probabilities(ch, params)
    tangles = branch_tangles(params)
    e12 = measurement_entanglement(probs, tangles)
    h12 = classical_cost(probs)
    return ResourceReport(
        e_channel=channel_entropy(ch),
        e12=e12,
        h12=h12,
        tangles=tangles,
        probabilities=probs,
        sum=e12 + h12,
    )
