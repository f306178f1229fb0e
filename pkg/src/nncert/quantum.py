"""Dense density-matrix machinery for chain experiments with two 2-qubit sources.

Everything is mixed-state based (visibility noise produces mixed states
anyway).  Matrices are plain complex numpy arrays; the wrapper types below
only enforce the physicality invariants their consumers rely on.

Conventions fixed here and used everywhere else:

* ``tensor(m1, m2)`` is the Kronecker product with m1 indexing the coarse
  blocks (numpy's ``kron``).
* Binary measurements map outcome 0 to the +1 eigenspace.
* The global Hilbert space of a chain experiment is ordered (Alice qubit,
  Bob-left qubit, Bob-right qubit, Charlie qubit); the first source spans
  factors 1-2, the second factors 3-4, Bob's 4-dimensional effects act on
  factors 2-3.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .corr import Correlation, ScenarioShape

_HERM_TOL = 1e-12
_TRACE_TOL = 1e-12
_PSD_TOL = -1e-10

IDENTITY_2 = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)

# Maximally entangled two-qubit kets (|00>+|11>)/sqrt(2) and (|01>+|10>)/sqrt(2).
KET_PHI_PLUS = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
KET_PSI_PLUS = np.array([0, 1, 1, 0], dtype=complex) / np.sqrt(2)

for _m in (IDENTITY_2, PAULI_X, PAULI_Y, PAULI_Z, KET_PHI_PLUS, KET_PSI_PLUS):
    _m.flags.writeable = False


def tensor(m1: np.ndarray, m2: np.ndarray) -> np.ndarray:
    """Kronecker product, m1 indexing the coarse blocks."""
    return np.kron(m1, m2)


def _is_hermitian(m: np.ndarray, tol: float) -> bool:
    return m.shape[0] == m.shape[1] and np.abs(m - m.conj().T).max() <= tol


@dataclass(frozen=True)
class DensityState:
    """A density matrix: Hermitian, unit trace, positive semidefinite."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex, copy=True)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"density matrix must be square, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ValueError("density matrix entries must be finite")
        if not _is_hermitian(m, _HERM_TOL):
            raise ValueError("density matrix must be Hermitian within 1e-12")
        if abs(np.trace(m).real - 1.0) > _TRACE_TOL or abs(np.trace(m).imag) > _TRACE_TOL:
            raise ValueError(f"density matrix must have unit trace, got {np.trace(m)}")
        if np.linalg.eigvalsh(m).min() < _PSD_TOL:
            raise ValueError("density matrix must be positive semidefinite")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def pure_state(ket: np.ndarray) -> DensityState:
    ket = np.asarray(ket, dtype=complex)
    return DensityState(np.outer(ket, ket.conj()))


PHI_PLUS = pure_state(KET_PHI_PLUS)
PSI_PLUS = pure_state(KET_PSI_PLUS)


@dataclass(frozen=True)
class Povm:
    """A measurement: Hermitian PSD effects, one per outcome, summing to 1."""

    effects: tuple

    def __post_init__(self):
        effs = tuple(np.array(e, dtype=complex, copy=True) for e in self.effects)
        if not effs:
            raise ValueError("a POVM needs at least one effect")
        d = effs[0].shape[0]
        for e in effs:
            if e.shape != (d, d):
                raise ValueError("all effects must be square matrices of one dimension")
            if not _is_hermitian(e, _HERM_TOL):
                raise ValueError("effects must be Hermitian within 1e-12")
            if np.linalg.eigvalsh(e).min() < _PSD_TOL:
                raise ValueError("effects must be positive semidefinite")
        total = sum(effs)
        if np.abs(total - np.eye(d)).max() > _TRACE_TOL:
            raise ValueError("effects must sum to the identity within 1e-12")
        for e in effs:
            e.flags.writeable = False
        object.__setattr__(self, "effects", effs)

    @property
    def dim(self) -> int:
        return self.effects[0].shape[0]

    @property
    def n_outcomes(self) -> int:
        return len(self.effects)


@dataclass(frozen=True)
class WernerParams:
    """Visibility of isotropic-noise mixing, v in [0, 1]."""

    v: float

    def __post_init__(self):
        if not 0.0 <= self.v <= 1.0:
            raise ValueError(f"visibility must lie in [0, 1], got {self.v}")


def apply_werner(rho: DensityState, v: float) -> DensityState:
    """v * rho + (1 - v) * I/d.

    The identity is normalized by the dimension so the output stays a
    state; for the two-qubit sources used here that is 1/4.
    """
    WernerParams(v)
    d = rho.dim
    return DensityState(v * rho.matrix + (1.0 - v) * np.eye(d) / d)


def projective_binary_povm(observable: np.ndarray) -> Povm:
    """Convert a +-1-valued observable O into the POVM {(1+O)/2, (1-O)/2}.

    Outcome 0 corresponds to eigenvalue +1.  Raises if the spectrum is not
    {+1, -1} within 1e-10.
    """
    obs = np.asarray(observable, dtype=complex)
    if not _is_hermitian(obs, _HERM_TOL):
        raise ValueError("observable must be Hermitian")
    eig = np.sort(np.linalg.eigvalsh(obs))
    d = obs.shape[0]
    target = np.sort(np.concatenate([-np.ones(d // 2), np.ones(d - d // 2)]))
    if d % 2 != 0 or np.abs(eig - target).max() > 1e-10:
        raise ValueError(f"observable spectrum must be +-1, got eigenvalues {eig}")
    ident = np.eye(d)
    return Povm(((ident + obs) / 2, (ident - obs) / 2))


@dataclass(frozen=True)
class ChainSetup:
    """A quantum realization of a chain experiment.

    Two 4x4 source states, one binary qubit POVM per input for Alice and
    Charlie, and a single 4-dimensional POVM (any number of outcomes) for
    Bob.
    """

    rho_ab: DensityState
    rho_bc: DensityState
    alice: tuple
    bob: Povm
    charlie: tuple

    def __post_init__(self):
        object.__setattr__(self, "alice", tuple(self.alice))
        object.__setattr__(self, "charlie", tuple(self.charlie))
        if self.rho_ab.dim != 4 or self.rho_bc.dim != 4:
            raise ValueError("source states must be two-qubit (4x4)")
        if not self.alice or not self.charlie:
            raise ValueError("alice and charlie need at least one measurement each")
        for povm in (*self.alice, *self.charlie):
            if not isinstance(povm, Povm) or povm.dim != 2 or povm.n_outcomes != 2:
                raise ValueError("alice/charlie measurements must be binary qubit POVMs")
        if not isinstance(self.bob, Povm) or self.bob.dim != 4:
            raise ValueError("bob's measurement must act on the two middle qubits (dim 4)")


def born_chain(setup: ChainSetup, atol: float = 1e-9) -> Correlation:
    """Born-rule correlation of a chain experiment.

    p(a,b,c|x,z) = Tr[(rho_ab (x) rho_bc) (A_x^a (x) B^b (x) C_z^c)] with
    the factor ordering documented in the module docstring.
    """
    state = tensor(setup.rho_ab.matrix, setup.rho_bc.matrix)
    card_x, card_z = len(setup.alice), len(setup.charlie)
    card_b = setup.bob.n_outcomes
    shape = ScenarioShape(card_x=card_x, card_z=card_z, card_a=2, card_b=card_b, card_c=2)
    values = np.zeros(shape.tensor_shape)
    for x in range(card_x):
        for a in range(2):
            for b in range(card_b):
                ab = tensor(setup.alice[x].effects[a], setup.bob.effects[b])
                for z in range(card_z):
                    for c in range(2):
                        op = tensor(ab, setup.charlie[z].effects[c])
                        values[x, z, a, b, c] = float(np.einsum("ij,ji->", state, op).real)
    return Correlation(shape, values, atol)
