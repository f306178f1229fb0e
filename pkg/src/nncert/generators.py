"""Named correlations of the minimal chain scenario.

Every generator returns a minimal-shape :class:`~nncert.corr.Correlation`
(2-1-2 inputs, 2-2-2 outputs), except :func:`gen_pr_box` which produces
the underlying bipartite box.  Parameter ranges are enforced through the
small parameter dataclasses.

Measurement conventions follow :mod:`nncert.quantum`: outcome 0 is the +1
eigenvalue, and the diagonal observables are D0 = (sx - sz)/sqrt(2),
D1 = (sx + sz)/sqrt(2).
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

import numpy as np

from .corr import Correlation, MINIMAL_SHAPE, mirror, mix
from .quantum import (
    ChainSetup,
    DensityState,
    PAULI_X,
    PAULI_Z,
    PHI_PLUS,
    PSI_PLUS,
    Povm,
    WernerParams,
    apply_werner,
    born_chain,
    projective_binary_povm,
    tensor,
)

SQRT2 = np.sqrt(2.0)
DIAG_0 = (PAULI_X - PAULI_Z) / SQRT2
DIAG_1 = (PAULI_X + PAULI_Z) / SQRT2


@dataclass(frozen=True)
class PostSelectionParams:
    """Visibility V of the PR box and post-selection probability p_ps.

    Legality requires every entry of the generated box to be nonnegative,
    i.e. p_ps * (1 + V)/4 <= 1/4.
    """

    V: float
    p_ps: float

    def __post_init__(self):
        if not 0.0 <= self.V <= 1.0:
            raise ValueError(f"V must lie in [0, 1], got {self.V}")
        if self.p_ps < 0.0 or self.p_ps * (1.0 + self.V) / 4.0 > 0.25 + 1e-15:
            raise ValueError(
                f"illegal parameters: negativity, p_ps*(1+V)/4 = "
                f"{self.p_ps * (1 + self.V) / 4:.6g} must not exceed 1/4")
        if self.p_ps > 0.5:
            raise ValueError(f"p_ps must lie in [0, 1/2], got {self.p_ps}")


@dataclass(frozen=True)
class MixtureParams:
    mu: float

    def __post_init__(self):
        if not 0.0 <= self.mu <= 1.0:
            raise ValueError(f"mu must lie in [0, 1], got {self.mu}")


@dataclass(frozen=True)
class LauandParams:
    theta: float  # radians

    def __post_init__(self):
        if not 0.0 <= self.theta <= np.pi / 2:
            raise ValueError(f"theta must lie in [0, pi/2], got {self.theta}")


class FritzSide(enum.Enum):
    """Which side of the chain carries the classical source (R: B-C side)."""

    R = "R"
    L = "L"


def gen_pr_box(V: float) -> np.ndarray:
    """Noisy PR box p(a,b|x,y) = (1 + V*(-1)^(a+b+x*y))/4, indexed (x, y, a, b)."""
    if not 0.0 <= V <= 1.0:
        raise ValueError(f"V must lie in [0, 1], got {V}")
    p = np.empty((2, 2, 2, 2))
    for x, y, a, b in itertools.product(range(2), repeat=4):
        p[x, y, a, b] = (1.0 + V * (-1.0) ** (a + b + x * y)) / 4.0
    return p


def gen_post_selection_box(V: float, p_ps: float) -> Correlation:
    """Post-selection box: b=0 slice carries p_ps times a PR box between A and C.

    p(a,0,c|x,z) = p_ps * PR_V(a,c|x,z) and p(a,1,c|x,z) = 1/4 - p_ps * PR_V(a,c|x,z).
    """
    params = PostSelectionParams(V, p_ps)
    pr = gen_pr_box(params.V)  # (x, y, a, b) read as (x, z, a, c)
    values = np.empty(MINIMAL_SHAPE.tensor_shape)
    values[:, :, :, 0, :] = params.p_ps * pr
    values[:, :, :, 1, :] = 0.25 - values[:, :, :, 0, :]
    return Correlation(MINIMAL_SHAPE, values)


def gen_local_test() -> Correlation:
    """The deterministic-table local test point.

    p(a,b,c|x,z) = p(c|z) * p(a,b|x,c) with p(c|z) = 1/2 and
    p(a,b|x,c) = 1/4 when x+c is odd, 1/2 when x+c is even and a = b,
    0 when x+c is even and a != b.
    """
    values = np.empty(MINIMAL_SHAPE.tensor_shape)
    for x, z, a, b, c in itertools.product(range(2), repeat=5):
        if (x + c) % 2 == 1:
            pab = 0.25
        elif a == b:
            pab = 0.5
        else:
            pab = 0.0
        values[x, z, a, b, c] = 0.5 * pab
    return Correlation(MINIMAL_SHAPE, values)


def _lambda_wired_chain(rho_ab: DensityState, alice: tuple, bob_by_lambda: tuple) -> Correlation:
    """Chain correlation with a uniform classical B-C source.

    lambda in {0, 1} selects Bob's measurement, and Charlie outputs
    c = lambda for both inputs z.
    """
    values = np.zeros(MINIMAL_SHAPE.tensor_shape)
    for lam in range(2):
        for x, a, b in itertools.product(range(2), repeat=3):
            op = tensor(alice[x].effects[a], bob_by_lambda[lam].effects[b])
            pab = float(np.einsum("ij,ji->", rho_ab.matrix, op).real)
            values[x, :, a, b, lam] += 0.5 * pab
    return Correlation(MINIMAL_SHAPE, values)


def gen_local_test_quantum(v: float) -> Correlation:
    """Quantum realization of the local test with visibility v on the A-B state.

    A and B share a phi+ Werner state; Bob's diagonal observable is
    selected by the shared classical bit that Charlie outputs.  At v = 1
    this reproduces gen_local_test exactly.
    """
    WernerParams(v)
    rho = apply_werner(PHI_PLUS, v)
    meas = (projective_binary_povm(DIAG_0), projective_binary_povm(DIAG_1))
    return _lambda_wired_chain(rho, meas, meas)


def es_chain_setup(v: float = 1.0) -> ChainSetup:
    """Entanglement-swapping setup: two phi+ Werner sources, a coarse-grained
    Bell-state measurement for Bob (psi+ against its complement), diagonal
    observables for Alice and sx/sz for Charlie."""
    WernerParams(v)
    rho = apply_werner(PHI_PLUS, v)
    return ChainSetup(
        rho_ab=rho,
        rho_bc=rho,
        alice=(projective_binary_povm(DIAG_0), projective_binary_povm(DIAG_1)),
        bob=Povm((PSI_PLUS.matrix, np.eye(4, dtype=complex) - PSI_PLUS.matrix)),
        charlie=(projective_binary_povm(PAULI_X), projective_binary_povm(PAULI_Z)),
    )


def gen_entanglement_swapping(v: float = 1.0) -> Correlation:
    """Born-rule correlation of the entanglement-swapping setup at visibility v.

    At v = 1 it coincides with gen_post_selection_box(1/sqrt(2), 1/4).
    """
    return born_chain(es_chain_setup(v))


def gen_fritz(side: FritzSide | str = FritzSide.R, v: float = 1.0) -> Correlation:
    """CHSH wired into the chain through one classical source.

    Side R: the B-C source is a uniform classical bit lambda; Charlie
    outputs c = lambda ignoring z; Bob measures sx (lambda = 0) or sz
    (lambda = 1) on his half of a psi+ Werner state shared with Alice, who
    measures the diagonal observables.  With these settings the b=0/b=1
    statistics conditioned on c maximally violate the CHSH combination
    that weights the (x=1, c=1) correlator negatively.  Side L is the
    exact relabeling (a, x) <-> (c, z) of side R.
    """
    side = FritzSide(side)
    WernerParams(v)
    rho = apply_werner(PSI_PLUS, v)
    alice = (projective_binary_povm(DIAG_0), projective_binary_povm(DIAG_1))
    bob = (projective_binary_povm(PAULI_X), projective_binary_povm(PAULI_Z))
    corr = _lambda_wired_chain(rho, alice, bob)
    return mirror(corr) if side is FritzSide.L else corr


def gen_mnn1(mu: float, V: float, p_ps: float) -> Correlation:
    """Convex mixture mu * post-selection box + (1 - mu) * local test."""
    params = MixtureParams(mu)
    return mix([gen_post_selection_box(V, p_ps), gen_local_test()],
               [params.mu, 1.0 - params.mu])


def gen_mnn1_quantum(mu: float, v: float) -> Correlation:
    """Quantum flavor of gen_mnn1: visibility v on every quantum state.

    Both entanglement-swapping sources and the A-B state of the local-test
    branch are Werner-noised; the classical B-C source of the local branch
    carries no noise parameter.
    """
    params = MixtureParams(mu)
    return mix([gen_entanglement_swapping(v), gen_local_test_quantum(v)],
               [params.mu, 1.0 - params.mu])


def mnn2_chain_setup(theta: float, v: float = 1.0) -> ChainSetup:
    """Partial-swap setup: phi+ Werner sources, sx/sz for Alice and Charlie,
    Bob projecting onto sin(theta)|01> + cos(theta)|10> against its complement."""
    LauandParams(theta)
    WernerParams(v)
    rho = apply_werner(PHI_PLUS, v)
    ket = np.array([0, np.sin(theta), np.cos(theta), 0], dtype=complex)
    proj = np.outer(ket, ket.conj())
    meas = (projective_binary_povm(PAULI_X), projective_binary_povm(PAULI_Z))
    return ChainSetup(rho_ab=rho, rho_bc=rho, alice=meas,
                      bob=Povm((proj, np.eye(4, dtype=complex) - proj)), charlie=meas)


def gen_mnn2(theta: float, v: float = 1.0) -> Correlation:
    """Born-rule correlation of the partial-swap setup.

    Mirroring (a, x) <-> (c, z) maps gen_mnn2(theta, v) to
    gen_mnn2(pi/2 - theta, v); the point theta = pi/4 is mirror symmetric.
    """
    return born_chain(mnn2_chain_setup(theta, v))


# ---------------------------------------------------------------------------
# Random families used by the property and acceptance suites.

DETERMINISTIC_STRATEGIES = ((0, 0), (0, 1), (1, 0), (1, 1))
"""Strategy k maps input t to DETERMINISTIC_STRATEGIES[k][t]."""


def gen_random_classical(rng: np.random.Generator, return_model: bool = False):
    """Sample from the classical set by explicit product-hidden-variable construction.

    Draws Dirichlet weights q1, q2 over the four deterministic strategies
    of Alice and Charlie and a uniform random response table
    p(b=1|l1, l2) for Bob.  Returns the correlation, and optionally the
    (q1, q2, p_b1) model that realizes it.
    """
    q1 = rng.dirichlet(np.ones(4))
    q2 = rng.dirichlet(np.ones(4))
    p_b1 = rng.random((4, 4))
    values = np.zeros(MINIMAL_SHAPE.tensor_shape)
    for l1, l2 in itertools.product(range(4), repeat=2):
        w = q1[l1] * q2[l2]
        for x, z in itertools.product(range(2), repeat=2):
            a = DETERMINISTIC_STRATEGIES[l1][x]
            c = DETERMINISTIC_STRATEGIES[l2][z]
            values[x, z, a, 1, c] += w * p_b1[l1, l2]
            values[x, z, a, 0, c] += w * (1.0 - p_b1[l1, l2])
    corr = Correlation(MINIMAL_SHAPE, values)
    if return_model:
        return corr, (q1, q2, p_b1)
    return corr


def gen_random_degenerate(kind: str, rng: np.random.Generator) -> Correlation:
    """Random correlations of the output-collapsed forms.

    kind = "constant_b":  p(a|x) p(c|z) with b pinned to a random value;
    kind = "constant_c":  p(b) p(a|b,x) with c pinned to a random value;
    kind = "b_then_a":    p(b) p(a|b,x) p(c|z) (Charlie local and independent).

    All three are classical by construction: the collapsed output makes
    one source redundant.
    """
    values = np.zeros(MINIMAL_SHAPE.tensor_shape)
    if kind == "constant_b":
        pa = rng.dirichlet([1, 1], size=2)
        pc = rng.dirichlet([1, 1], size=2)
        b0 = int(rng.integers(2))
        for x, z, a, c in itertools.product(range(2), repeat=4):
            values[x, z, a, b0, c] = pa[x][a] * pc[z][c]
    elif kind == "constant_c":
        pb = rng.dirichlet([1, 1])
        pabx = rng.dirichlet([1, 1], size=(2, 2))  # (b, x) -> p(a|b,x)
        c0 = int(rng.integers(2))
        for x, z, a, b in itertools.product(range(2), repeat=4):
            values[x, z, a, b, c0] = pb[b] * pabx[b, x][a]
    elif kind == "b_then_a":
        pb = rng.dirichlet([1, 1])
        pabx = rng.dirichlet([1, 1], size=(2, 2))
        pc = rng.dirichlet([1, 1], size=2)
        for x, z, a, b, c in itertools.product(range(2), repeat=5):
            values[x, z, a, b, c] = pb[b] * pabx[b, x][a] * pc[z][c]
    else:
        raise ValueError(f"unknown degenerate kind {kind!r}")
    return Correlation(MINIMAL_SHAPE, values)
