"""Group twirls of channels in the PTM representation.

Every analytic twirl here has a brute-force counterpart (explicit group
average) so the closed forms can be validated entrywise.  Inverses in the
averages use the transpose, valid because Clifford and Pauli PTMs are
orthogonal; twirling over the full unitary group coincides with the full
Clifford twirl and is not treated separately.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cliffords import CliffordGroup
from .paulis import num_qubits, pauli_conjugation_ptm, project, projector_diag

# Irreducible decompositions of the PTM representation for the standard
# groups: list of irreps, each a list of copies, each copy an ordered list
# of Pauli basis indices (the ordering aligns equivalent copies).
IRREP_TABLES: dict[str, list[list[list[int]]]] = {
    "c1": [[[0]], [[1, 2, 3]]],
    "full": [[[0]], [list(range(1, 16))]],
    "cxc": [
        [[0]],
        [[1, 2, 3]],
        [[4, 8, 12]],
        [[5, 6, 7, 9, 10, 11, 13, 14, 15]],
    ],
    "cxi": [
        [[0], [1], [2], [3]],
        [[4, 8, 12], [5, 9, 13], [6, 10, 14], [7, 11, 15]],
    ],
    "ixc": [
        [[0], [4], [8], [12]],
        [[1, 2, 3], [5, 6, 7], [9, 10, 11], [13, 14, 15]],
    ],
}


@dataclass(frozen=True)
class TwirlOutcome:
    group_kind: str
    twirled: np.ndarray
    alphas: dict[str, float]
    delta_alpha: float | None = None


@dataclass(frozen=True)
class SubsystemTwirlBlocks:
    """Block content of a single-subsystem (CxI or IxC) twirl.

    ``gamma`` is the d2^2 x d2^2 matrix repeated three times over the
    twirled qubit's X/Y/Z sector; its (0,0) element's powers govern the
    traced-out decay and approach alpha^m as the error vanishes.
    """

    which: int  # twirled qubit (1 or 2)
    marginal: np.ndarray
    gamma: np.ndarray

    @property
    def alpha(self) -> float:
        """Leading depolarizing parameter Tr(Pi_k R) / Tr(Pi_k)."""
        return float(self.gamma[0, 0])

    def reassembled(self) -> np.ndarray:
        """The full 16x16 twirled PTM rebuilt from the blocks."""
        out = np.zeros((4, 4, 4, 4))
        for j in range(4):
            for l in range(4):
                if self.which == 1:
                    out[0, j, 0, l] = self.marginal[j, l]
                    for n in range(1, 4):
                        out[n, j, n, l] = self.gamma[j, l]
                else:
                    out[j, 0, l, 0] = self.marginal[j, l]
                    for n in range(1, 4):
                        out[j, n, l, n] = self.gamma[j, l]
        return out.reshape(16, 16)


def brute_force_twirl(ptm: np.ndarray, group: CliffordGroup) -> np.ndarray:
    """Exact group average sum_U R_U^T R R_U / |G|."""
    if ptm.shape[0] != group.elements[0].ptm.shape[0]:
        raise ValueError("PTM and group dimensions differ")
    acc = np.zeros_like(ptm)
    for e in group.elements:
        acc += e.ptm.T @ ptm @ e.ptm
    return acc / len(group)


def pauli_group_ptms(n: int) -> list[np.ndarray]:
    """The 4**n Pauli-conjugation channels (diagonal sign PTMs)."""
    return [pauli_conjugation_ptm(k, n) for k in range(4**n)]


def pauli_twirl(ptm: np.ndarray) -> np.ndarray:
    """Pauli-group twirl: only the diagonal survives."""
    return np.diag(np.diag(ptm))


def pauli_twirl_brute(ptm: np.ndarray) -> np.ndarray:
    n = num_qubits(ptm)
    chans = pauli_group_ptms(n)
    return sum(c.T @ ptm @ c for c in chans) / len(chans)


def twirl_full_clifford(ptm: np.ndarray) -> TwirlOutcome:
    """Full-Clifford twirl: a depolarizing channel.

    alpha = Tr(Pi R) / Tr(Pi) = (Tr R - 1) / (d^2 - 1) over the
    non-identity block.
    """
    n = num_qubits(ptm)
    alpha = project(ptm, projector_diag("nonidentity", n))
    diag = np.full(4**n, alpha)
    diag[0] = 1.0
    return TwirlOutcome("full", np.diag(diag), {"alpha": alpha})


def twirl_cxc(ptm: np.ndarray) -> TwirlOutcome:
    """CxC twirl: tensor products of depolarizing channels.

    Block parameters alpha_{k|k'} = Tr(Pi_k R)/Tr(Pi_k); deviation of
    alpha_12 from the product alpha_{1|2} alpha_{2|1} witnesses
    correlated errors.
    """
    if num_qubits(ptm) != 2:
        raise ValueError("CxC twirl requires a two-qubit PTM")
    a_1_2 = project(ptm, projector_diag("q1", 2))
    a_2_1 = project(ptm, projector_diag("q2", 2))
    a_12 = project(ptm, projector_diag("corr", 2))
    diag = (
        projector_diag("identity", 2)
        + a_1_2 * projector_diag("q1", 2)
        + a_2_1 * projector_diag("q2", 2)
        + a_12 * projector_diag("corr", 2)
    )
    alphas = {"alpha_1_2": a_1_2, "alpha_2_1": a_2_1, "alpha_12": a_12}
    return TwirlOutcome("cxc", np.diag(diag), alphas, a_12 - a_1_2 * a_2_1)


def twirl_cxi(ptm: np.ndarray, which: int = 1) -> SubsystemTwirlBlocks:
    """Single-subsystem twirl (Clifford on qubit ``which``, identity on the other).

    Returns the marginal map of the untwirled qubit and the gamma block;
    all other matrix elements of the twirl vanish.
    """
    if num_qubits(ptm) != 2:
        raise ValueError("subsystem twirl requires a two-qubit PTM")
    r4 = ptm.reshape(4, 4, 4, 4)
    if which == 1:
        marginal = r4[0, :, 0, :].copy()
        gamma = (r4[1, :, 1, :] + r4[2, :, 2, :] + r4[3, :, 3, :]) / 3
    elif which == 2:
        marginal = r4[:, 0, :, 0].copy()
        gamma = (r4[:, 1, :, 1] + r4[:, 2, :, 2] + r4[:, 3, :, 3]) / 3
    else:
        raise ValueError("which must be 1 or 2")
    return SubsystemTwirlBlocks(which, marginal, gamma)


def schur_general_twirl(
    ptm: np.ndarray, irreps: list[list[list[int]]]
) -> np.ndarray:
    """Twirl from an explicit irrep decomposition with multiplicities.

    ``irreps`` lists, per irrep, its copies as ordered basis-index sets;
    equivalent copies must order their basis vectors consistently.  The
    result is sum over (irrep j, copies k, k') of
    Tr(Q^T R) / Tr(Q^T Q) * Q with Q built from the supplied bases.
    """
    size = ptm.shape[0]
    out = np.zeros((size, size))
    covered: set[int] = set()
    for copies in irreps:
        dim = len(copies[0])
        if any(len(c) != dim for c in copies):
            raise ValueError("copies of one irrep differ in dimension")
        for c in copies:
            covered.update(c)
        for ca in copies:
            for cb in copies:
                q = np.zeros((size, size))
                for l in range(dim):
                    q[ca[l], cb[l]] = 1.0
                weight = np.trace(q.T @ q)
                out += (np.trace(q.T @ ptm) / weight) * q
    if len(covered) != size:
        raise ValueError("irrep decomposition does not span the space")
    return out


def gamma_decay_curve(blocks, m_values) -> np.ndarray:
    """(Gamma^m)_{0,0} for each m, by repeated multiplication."""
    gamma = blocks.gamma if isinstance(blocks, SubsystemTwirlBlocks) else blocks
    m_values = np.asarray(m_values, dtype=np.int64)
    if np.any(m_values < 0):
        raise ValueError("m must be nonnegative")
    out = np.empty(len(m_values), dtype=float)
    order = np.argsort(m_values)
    power = np.eye(gamma.shape[0])
    current = 0
    for pos in order:
        target = int(m_values[pos])
        while current < target:
            power = power @ gamma
            current += 1
        out[pos] = power[0, 0]
    return out
