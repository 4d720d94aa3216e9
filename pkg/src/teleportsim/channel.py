"""Two-qutrit channels in Schmidt form and the teleportation-capability test."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qlinalg import TOL, LOG2_3


@dataclass(frozen=True)
class SchmidtChannel:
    """Real Schmidt coefficients (a0, a1, a2) of the shared two-qutrit state."""

    a: tuple[float, float, float]

    @property
    def squares(self) -> tuple[float, float, float]:
        return tuple(x * x for x in self.a)

    def state(self) -> np.ndarray:
        """The 9-dim ket a0|00> + a1|11> + a2|22> on C^3 (x) C^3."""
        v = np.zeros(9, dtype=complex)
        v[0], v[4], v[8] = self.a
        return v

    def to_json_dict(self) -> dict:
        return {"a": list(self.a)}


@dataclass(frozen=True)
class ChannelPermutation:
    """Relabeling of {0,1,2} placing the maximal Schmidt coefficient at index 1."""

    perm: tuple[int, int, int]

    def apply(self, triple):
        return tuple(triple[self.perm[i]] for i in range(3))

    def invert(self, triple):
        out = [None, None, None]
        for i in range(3):
            out[self.perm[i]] = triple[i]
        return tuple(out)


def make_channel(a0: float, a1: float, a2: float, *, norm_tol: float = 1e-9) -> SchmidtChannel:
    """Validate and build a channel; coefficients are kept in the given order.

    Inputs within norm_tol of unit square-sum are rescaled exactly onto the
    simplex so downstream algebra sees a normalized channel.
    """
    a = np.array([a0, a1, a2], dtype=float)
    if not np.all(np.isfinite(a)):
        raise ValueError("Schmidt coefficients must be finite")
    if np.any(a < 0.0):
        raise ValueError(f"negative Schmidt coefficient in {a.tolist()}")
    s = float(np.sum(a * a))
    if abs(s - 1.0) > norm_tol:
        raise ValueError(f"Schmidt coefficients not normalized: sum of squares = {s}")
    a = a / np.sqrt(s)
    return SchmidtChannel(a=tuple(float(x) for x in a))


def channel_entropy(ch: SchmidtChannel) -> float:
    """Entanglement entropy -sum a_j^2 log2 a_j^2, in [0, log2 3]."""
    e = 0.0
    for x in ch.squares:
        if x > 0.0:
            e -= x * np.log2(x)
    return min(max(float(e), 0.0), LOG2_3)


def is_teleport_capable(ch: SchmidtChannel) -> bool:
    """Perfect qubit teleportation is possible iff max a_j^2 <= 1/2."""
    return max(ch.squares) <= 0.5 + TOL.entry


def canonicalize(ch: SchmidtChannel) -> tuple[SchmidtChannel, ChannelPermutation]:
    """Permute coefficients so the maximal one sits at index 1.

    Ties break toward the permutation closest to identity (stable argmax),
    so repeated runs produce identical output.
    """
    sq = ch.squares
    imax = int(np.argmax(sq))
    perm = [0, 1, 2]
    perm[1], perm[imax] = perm[imax], perm[1]
    p = ChannelPermutation(perm=tuple(perm))
    return SchmidtChannel(a=p.apply(ch.a)), p
