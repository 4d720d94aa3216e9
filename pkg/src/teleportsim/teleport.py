"""Exact protocol execution: joint state, projective measurement, corrections.

All states are simulated exactly as complex vectors; fidelities come out as
floating-point 1 (to 1e-10), never as sampled statistics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import SchmidtChannel, is_teleport_capable
from .qlinalg import TOL, check_normalized, kron
from .scheme import (
    MeasurementBasis,
    SchemeParams,
    assemble_D12,
    rotation_from_angles,
)

# probabilities below this are treated as exactly-zero branches
_ZERO_PROB = 1e-14


class CapabilityError(Exception):
    """The channel cannot support perfect qubit teleportation."""


class CorrectionError(Exception):
    """A branch violates the equal-weight / orthogonality correction conditions."""


@dataclass(frozen=True)
class InputQubit:
    """The unknown qubit alpha|0> + beta|1> to be transmitted."""

    alpha: complex
    beta: complex

    def __post_init__(self):
        n2 = abs(self.alpha) ** 2 + abs(self.beta) ** 2
        if abs(n2 - 1.0) > TOL.entry:
            raise ValueError(f"input qubit not normalized: |alpha|^2+|beta|^2 = {n2}")

    def vector(self) -> np.ndarray:
        return np.array([self.alpha, self.beta], dtype=complex)


@dataclass(frozen=True)
class OutcomeBranch:
    """One measurement outcome with its collapsed (unnormalized) remote state."""

    label: str
    basis_vector: np.ndarray
    probability: float
    collapsed: np.ndarray
    correction: np.ndarray | None = None


@dataclass(frozen=True)
class TeleportReport:
    """Per-branch outcome data plus the fidelity certificate."""

    branches: tuple[OutcomeBranch, ...]
    fidelities: tuple[float, ...]
    mean_fidelity: float

    def to_json_dict(self) -> dict:
        return {
            "branches": [
                {"label": b.label, "probability": b.probability, "fidelity": f}
                for b, f in zip(self.branches, self.fidelities)
            ],
            "mean_fidelity": self.mean_fidelity,
        }


def random_input(rng: np.random.Generator) -> InputQubit:
    """Haar-random qubit: two complex normal deviates, normalized."""
    z = rng.normal(size=2) + 1j * rng.normal(size=2)
    z = z / np.linalg.norm(z)
    return InputQubit(alpha=complex(z[0]), beta=complex(z[1]))


def total_state(inp: InputQubit, ch: SchmidtChannel) -> np.ndarray:
    """Joint ket of the input qubit and the shared channel, dim 2*3*3."""
    psi = kron(inp.vector(), ch.state())
    check_normalized(psi)
    return psi


def measure_branches(total: np.ndarray, basis: MeasurementBasis) -> list[OutcomeBranch]:
    """Project the joint state onto each basis ket of Alice's two subsystems.

    Works for any split: Alice's dimension is the basis-vector dimension, the
    remainder is Bob's. Collapsed states are kept unnormalized so that
    probability = <collapsed|collapsed>.
    """
    na = basis.vectors.shape[1]
    nb = total.size // na
    if na * nb != total.size:
        raise ValueError("basis dimension incompatible with total state")
    m = total.reshape(na, nb)
    collapsed = basis.vectors.conj() @ m
    probs = np.sum(np.abs(collapsed) ** 2, axis=1)
    if abs(float(np.sum(probs)) - 1.0) > TOL.entry:
        raise ValueError("branch probabilities do not sum to 1")
    return [
        OutcomeBranch(
            label=basis.labels[j],
            basis_vector=basis.vectors[j].copy(),
            probability=float(probs[j]),
            collapsed=collapsed[j].copy(),
        )
        for j in range(len(basis.labels))
    ]


def branch_components(coeffs, basis: MeasurementBasis) -> list[tuple[np.ndarray, np.ndarray]]:
    """Input-independent split of each collapsed state: collapsed = alpha*va + beta*vb.

    coeffs are the diagonal channel coefficients (length = Bob's dimension).
    va and vb depend only on the channel and the basis row, so Bob's correction
    can be built once per branch and reused for every input.
    """
    a = np.asarray(coeffs, dtype=float)
    na = basis.vectors.shape[1]
    d = na // 2
    if a.shape != (d,):
        raise ValueError(f"expected {d} channel coefficients, got {a.shape}")
    out = []
    for row in basis.vectors:
        va = a * row[:d].conj()
        vb = a * row[d:].conj()
        out.append((va, vb))
    return out


def correction_unitary(phi_alpha: np.ndarray, phi_beta: np.ndarray) -> np.ndarray:
    """Unitary sending the alpha-component to |0> and the beta-component to |1>.

    Requires the equal-weight and orthogonality conditions; the completion row
    is the conjugated cross product, and the free global phase is fixed by
    making the first nonzero entry (row-major) real positive. Zero branches
    (both components null) get the identity by convention.
    """
    d = len(phi_alpha)
    na, nb = np.linalg.norm(phi_alpha), np.linalg.norm(phi_beta)
    if na <= _ZERO_PROB and nb <= _ZERO_PROB:
        return np.eye(d, dtype=complex)
    if abs(na - nb) > TOL.correction:
        raise CorrectionError(
            f"unequal component weights: |phi_alpha| = {na:.6g}, |phi_beta| = {nb:.6g}"
        )
    overlap = abs(np.vdot(phi_alpha, phi_beta))
    if overlap > TOL.correction:
        raise CorrectionError(f"components not orthogonal: |overlap| = {overlap:.3e}")
    r0 = (phi_alpha / na).conj()
    r1 = (phi_beta / nb).conj()
    if d == 2:
        w = np.array([r0, r1])
    elif d == 3:
        # complete by Gram-Schmidt from the standard basis vector with the
        # largest residual (deterministic; ties break to the lowest index)
        eye = np.eye(3, dtype=complex)
        resid = eye - np.outer(eye @ r0.conj(), r0) - np.outer(eye @ r1.conj(), r1)
        norms = np.linalg.norm(resid, axis=1)
        r2 = resid[int(np.argmax(np.round(norms, 12)))]
        r2 = r2 / np.linalg.norm(r2)
        k2 = int(np.argmax(np.abs(r2) > TOL.entry))
        r2 = r2 * (abs(r2[k2]) / r2[k2])
        w = np.array([r0, r1, r2])
    else:
        raise ValueError(f"unsupported dimension {d}")
    flat = w.reshape(-1)
    k = int(np.argmax(np.abs(flat) > TOL.entry))
    w = w * (abs(flat[k]) / flat[k])
    dev = np.max(np.abs(w.conj().T @ w - np.eye(d)))
    if dev > TOL.unitary:
        raise CorrectionError(f"correction not unitary: deviation {dev:.3e}")
    return w


def branch_corrections(coeffs, basis: MeasurementBasis) -> list[np.ndarray]:
    """Bob's correction unitary for every branch of a valid scheme."""
    return [correction_unitary(va, vb) for va, vb in branch_components(coeffs, basis)]


def branch_fidelity(inp: InputQubit, branch: OutcomeBranch) -> float:
    """|<target|W|collapsed>|^2 / P for one branch; zero branches count as 1."""
    if branch.probability <= _ZERO_PROB:
        return 1.0
    if branch.correction is None:
        raise ValueError("branch has no correction attached")
    out = branch.correction @ branch.collapsed
    target = np.zeros(len(branch.collapsed), dtype=complex)
    target[0], target[1] = inp.alpha, inp.beta
    return float(abs(np.vdot(target, out)) ** 2 / branch.probability)


def run_teleport(inp: InputQubit, ch: SchmidtChannel, params: SchemeParams) -> TeleportReport:
    """Execute the protocol exactly and certify unit fidelity on every branch."""
    if not is_teleport_capable(ch):
        raise CapabilityError(
            f"channel {ch.a} is not teleport-capable (max a_j^2 > 1/2)"
        )
    _, basis = assemble_D12(params)
    return run_with_basis(inp, ch, basis)


def run_with_basis(inp: InputQubit, ch: SchmidtChannel, basis: MeasurementBasis) -> TeleportReport:
    """As run_teleport, but with an explicitly supplied measurement basis."""
    total = total_state(inp, ch)
    bare = measure_branches(total, basis)
    corrections = branch_corrections(ch.a, basis)
    branches = tuple(
        OutcomeBranch(
            label=b.label,
            basis_vector=b.basis_vector,
            probability=b.probability,
            collapsed=b.collapsed,
            correction=w,
        )
        for b, w in zip(bare, corrections)
    )
    fids = tuple(branch_fidelity(inp, b) for b in branches)
    return TeleportReport(
        branches=branches,
        fidelities=fids,
        mean_fidelity=float(sum(b.probability * f for b, f in zip(branches, fids))),
    )


def run_two_qubit(inp: InputQubit, a0: float, a1: float, dmat: np.ndarray) -> TeleportReport:
    """Run the two-qubit protocol with an explicit 4x4 measurement unitary.

    Perfect corrections exist only for the balanced channel a0 = a1; other
    channels raise CorrectionError for at least one branch.
    """
    from .scheme import TWO_QUBIT_LABELS

    chan = np.zeros(4, dtype=complex)
    chan[0], chan[3] = a0, a1
    basis = MeasurementBasis(vectors=np.asarray(dmat, dtype=complex), labels=TWO_QUBIT_LABELS)
    total = kron(inp.vector(), chan)
    check_normalized(total)
    bare = measure_branches(total, basis)
    corrections = branch_corrections((a0, a1), basis)
    branches = tuple(
        OutcomeBranch(label=b.label, basis_vector=b.basis_vector,
                      probability=b.probability, collapsed=b.collapsed, correction=w)
        for b, w in zip(bare, corrections)
    )
    fids = tuple(branch_fidelity(inp, b) for b in branches)
    return TeleportReport(
        branches=branches,
        fidelities=fids,
        mean_fidelity=float(sum(b.probability * f for b, f in zip(branches, fids))),
    )


def collapsed_closed_form(inp: InputQubit, ch: SchmidtChannel, params: SchemeParams) -> np.ndarray:
    """Closed-form collapsed states, one row per branch, from the angles alone.

    Written directly in terms of the rotation entries and phases (no joint
    state, no projection), as an independent oracle for the simulator.
    """
    a0, a1, a2 = ch.a
    u = rotation_from_angles(*params.theta)
    d1, d2 = params.delta
    f1, f2 = np.exp(-1j * d1), np.exp(-1j * d2)  # conjugated column phases
    al, be = inp.alpha, inp.beta
    r2 = 1.0 / math.sqrt(2.0)
    rows = np.array([
        [al * a0 * u[0, 0], be * a1 * u[0, 1], al * a2 * u[0, 2]],
        [be * a0 * u[0, 0], al * a1 * u[0, 1] * f1, be * a2 * u[0, 2] * f2],
        [a0 * u[2, 0] * (al + be) * r2,
         a1 * u[2, 1] * (al * f1 + be) * r2,
         a2 * u[2, 2] * (al + be * f2) * r2],
        [al * a0 * u[1, 0], be * a1 * u[1, 1], al * a2 * u[1, 2]],
        [be * a0 * u[1, 0], al * a1 * u[1, 1] * f1, be * a2 * u[1, 2] * f2],
        [a0 * u[2, 0] * (-al + be) * r2,
         a1 * u[2, 1] * (al * f1 - be) * r2,
         a2 * u[2, 2] * (-al + be * f2) * r2],
    ], dtype=complex)
    return rows


def branch_probabilities(ch: SchmidtChannel, params: SchemeParams) -> tuple[float, ...]:
    """Closed-form outcome probabilities, input-independent for valid schemes."""
    A, B, C = ch.squares
    u = rotation_from_angles(*params.theta)
    p1 = A * u[0, 0] ** 2 + C * u[0, 2] ** 2
    p2 = A * u[1, 0] ** 2 + C * u[1, 2] ** 2
    p3 = 0.5 * (A * u[2, 0] ** 2 + B * u[2, 1] ** 2 + C * u[2, 2] ** 2)
    return (p1, p1, p3, p2, p2, p3)
