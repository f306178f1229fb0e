"""Membership oracles for the minimal chain scenario and the region classifier.

Three sets are decided for a correlation p(a,b,c|x,z) with binary
everything and no input for the middle party:

* S0, both sources classical.  Decided twice, by independent methods:

  - :func:`s0_square_oracle` uses the unit-square picture.  With both
    hidden variables uniform on [0,1] and responses deterministic, sorting
    each axis splits the square into a 4x4 grid of rectangles, one per
    pair of deterministic strategies.  Columns carry Alice's classes
    (a at x=0, a at x=1) = (1,1), (1,0), (0,1), (0,0) with widths
    (alpha, p1(0)-alpha, p1(1)-alpha, 1-p1(0)-p1(1)+alpha), where
    p1(x) = p(a=1|x) and alpha is the unobserved overlap; rows do the
    same for Charlie with beta.  The widths are fixed by requiring the
    four columns to tile the unit interval (only the tiling choice of the
    fourth width is consistent with arbitrary marginals).  The b=1 mass
    S_J inside rectangle J is bounded by the rectangle area, and nine
    block sums of the S_J must match the observed p(a,b=1,c|x,z).  For a
    fixed alpha the whole system is one LP in (S, slack, beta), so the
    oracle scans alpha on a grid, refines around the best cell, and
    repeats on the mirrored correlation (grid over beta) for symmetry.

  - :func:`s0_seesaw_oracle` searches directly for the decomposition
    p = sum_{l1,l2} q1(l1) q2(l2) [a = f_l1(x)] [c = g_l2(z)] p(b|l1,l2)
    by alternating LPs: with q1 fixed the constraint
    sum_b T(b,l1,l2) = q1(l1) q2(l2) is linear in (q2, T), and vice
    versa.  A feasible answer is a constructive membership proof; an
    infeasible answer is heuristic only (local optima) and is flagged.

* S1, one classical and one no-signalling source, via :func:`s1_lp`.
  Unpacking the party attached to the classical source (listing its
  counterfactual outputs jointly) turns causal compatibility into an LP
  over Q(A0, A1, B, C | z): no-signalling of the remaining input,
  independence of the unpacked outputs from the far party, and
  compatibility with the observed correlation.

* S2, no-signalling plus independence of the end marginals, via
  :func:`nncert.corr.check_s2`.

:func:`classify` combines the verdicts into a region label.
"""

from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ._lp import LpInfeasibleError, solve_lp
from .corr import Correlation, S2Report, ValidationReport, check_s2, mirror, validate
from .generators import DETERMINISTIC_STRATEGIES

NEGATIVITY_CLAMP = 1e-9  # entries in [-NEGATIVITY_CLAMP, 0) are zeroed before oracle runs


class OracleInputError(ValueError):
    """Input correlation outside an oracle's domain (wrong shape or invalid)."""


class S1Mode(str, enum.Enum):
    """Which source the half-classical program takes to be classical."""

    AB_CLASSICAL_BC_OPT = "AB_CLASSICAL_BC_OPT"
    AB_OPT_BC_CLASSICAL = "AB_OPT_BC_CLASSICAL"


class RegionLabel(str, enum.Enum):
    INVALID = "INVALID"
    NOT_IN_S2 = "NOT_IN_S2"
    CLASSICAL = "CLASSICAL"
    MNN = "MNN"
    HALF_AB_OPT_ONLY = "HALF_AB_OPT_ONLY"
    HALF_BC_OPT_ONLY = "HALF_BC_OPT_ONLY"
    FNN = "FNN"


@dataclass(frozen=True)
class OracleConfig:
    """Shared numeric configuration.

    eps            feasibility threshold on the violation measures
    grid_n         coarse grid resolution of the square oracle's outer scan
    refine_rounds  pattern-search rounds around the best cell (8x per round)
    restarts       random seesaw restarts after the deterministic stage
    max_iters      alternation cap per seesaw start
    seed           RNG seed for seesaw restarts
    line_grid      points per seesaw marginal-line initialization sweep
    seesaw_crosscheck  run the seesaw when the square oracle says feasible
    s2_tol         tolerance for the S2 gate in classify (defaults to eps)
    """

    eps: float = 1e-7
    grid_n: int = 64
    refine_rounds: int = 3
    restarts: int = 4
    max_iters: int = 50
    seed: int = 0
    line_grid: int = 17
    seesaw_crosscheck: bool = True
    s2_tol: Optional[float] = None

    def __post_init__(self):
        if self.eps <= 0:
            raise ValueError("eps must be positive")
        if self.grid_n < 8:
            raise ValueError("grid_n must be at least 8")

    def as_dict(self) -> dict:
        return {
            "eps": self.eps, "grid_n": self.grid_n, "refine_rounds": self.refine_rounds,
            "restarts": self.restarts, "max_iters": self.max_iters, "seed": self.seed,
            "line_grid": self.line_grid, "seesaw_crosscheck": self.seesaw_crosscheck,
            "s2_tol": self.s2_tol if self.s2_tol is not None else self.eps,
        }


# Column/row classes of the square picture, ordered as in the width list
# (alpha, p1(0)-alpha, p1(1)-alpha, remainder).
_SQUARE_CLASSES = ((1, 1), (1, 0), (0, 1), (0, 0))


@dataclass(frozen=True)
class SquareInstance:
    """Feasible point of the square picture: b=1 masses plus the two overlaps.

    ``s`` is the flat list of the sixteen rectangle masses S_J with
    J = 4*row + col (rows: Charlie classes, cols: Alice classes, both in
    _SQUARE_CLASSES order).  ``widths``/``heights`` are the rectangle
    partitions implied by (alpha, beta) and the observed marginals.
    """

    s: np.ndarray
    alpha: float
    beta: float
    widths: np.ndarray
    heights: np.ndarray

    def reconstruct(self) -> np.ndarray:
        """Rebuild p(a,b,c|x,z) implied by the instance."""
        values = np.zeros((2, 2, 2, 2, 2))
        grid = self.s.reshape(4, 4)
        for r, cc in itertools.product(range(4), repeat=2):
            area = self.widths[cc] * self.heights[r]
            for x, z in itertools.product(range(2), repeat=2):
                a = _SQUARE_CLASSES[cc][x]
                c = _SQUARE_CLASSES[r][z]
                values[x, z, a, 1, c] += grid[r, cc]
                values[x, z, a, 0, c] += area - grid[r, cc]
        return values


@dataclass(frozen=True)
class SeesawDecomposition:
    """Explicit classical model: strategy weights q1, q2 and Bob's joint table.

    ``t[b, l1, l2]`` carries the total weight of (lambda1 = l1,
    lambda2 = l2, B = b); its b-sum equals q1(l1) * q2(l2).  Strategies
    are indexed by :data:`nncert.generators.DETERMINISTIC_STRATEGIES`.
    """

    q1: np.ndarray
    q2: np.ndarray
    t: np.ndarray

    def reconstruct(self) -> np.ndarray:
        values = np.zeros((2, 2, 2, 2, 2))
        for l1, l2 in itertools.product(range(4), repeat=2):
            for x, z, b in itertools.product(range(2), repeat=3):
                a = DETERMINISTIC_STRATEGIES[l1][x]
                c = DETERMINISTIC_STRATEGIES[l2][z]
                values[x, z, a, b, c] += self.t[b, l1, l2]
        return values


@dataclass(frozen=True)
class UnpackedLp:
    """Witness of a half-classical model: the unpacked joint distribution.

    For mode AB_CLASSICAL_BC_OPT, ``q[a0, a1, b, c, z]`` is
    Q(A0=a0, A1=a1, B=b, C=c | z).  For the mirrored mode the same array
    is stated for the relabeled correlation (A <-> C, x <-> z), i.e.
    ``q[c0, c1, b, a, x]``.
    """

    q: np.ndarray
    mode: S1Mode

    def reconstruct(self) -> np.ndarray:
        """Rebuild the correlation (in the orientation of `mode`'s input)."""
        values = np.zeros((2, 2, 2, 2, 2))
        for a0, a1, b, c, z in itertools.product(range(2), repeat=5):
            values[0, z, a0, b, c] += self.q[a0, a1, b, c, z]
            values[1, z, a1, b, c] += self.q[a0, a1, b, c, z]
        if self.mode is S1Mode.AB_OPT_BC_CLASSICAL:
            values = np.transpose(values, (1, 0, 4, 3, 2))
        return np.ascontiguousarray(values)


@dataclass(frozen=True)
class OracleResult:
    feasible: bool
    violation: float
    witness: object = None
    diagnostics: dict = field(default_factory=dict)


@dataclass(frozen=True)
class ClassificationReport:
    label: RegionLabel
    s0: Optional[OracleResult]
    s1_ab_classical: Optional[OracleResult]
    s1_bc_classical: Optional[OracleResult]
    s2: Optional[S2Report]
    validation: ValidationReport
    config: OracleConfig

    def to_json_dict(self) -> dict:
        def oracle(r: Optional[OracleResult]):
            if r is None:
                return None
            return {"feasible": r.feasible, "violation": r.violation,
                    "diagnostics": r.diagnostics}

        s2 = None
        if self.s2 is not None:
            s2 = {"in_s2": self.s2.in_s2,
                  "max_factorization_violation": self.s2.max_factorization_violation,
                  "max_ns_violation_z": self.s2.max_ns_violation_z,
                  "max_ns_violation_x": self.s2.max_ns_violation_x}
        return {
            "label": self.label.value,
            "s0": oracle(self.s0),
            "s1_ab_classical": oracle(self.s1_ab_classical),
            "s1_bc_classical": oracle(self.s1_bc_classical),
            "s2": s2,
            "config": self.config.as_dict(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())


# ---------------------------------------------------------------------------
# Shared input preparation


def _prepare(corr: Correlation) -> np.ndarray:
    """Validate, clamp floating-point negativity, renormalize per (x, z).

    Entries in [-1e-9, 0) are zeroed (quantum-simulation noise must not
    flip verdicts); anything worse raises :class:`OracleInputError`.
    """
    if not corr.shape.is_minimal:
        raise OracleInputError(
            f"oracles accept only the minimal 2-1-2 / 2-2-2 configuration, "
            f"got {corr.shape.tensor_shape}")
    report = validate(corr)
    if report.max_negativity > NEGATIVITY_CLAMP or report.max_normalization_error > max(
            corr.atol, 1e-6):
        raise OracleInputError(
            f"invalid correlation: max negativity {report.max_negativity:.3g}, "
            f"max normalization error {report.max_normalization_error:.3g}")
    v = np.maximum(corr.values, 0.0)
    return v / v.sum(axis=(2, 3, 4), keepdims=True)


def _marginal_a1(v: np.ndarray) -> np.ndarray:
    """p(a=1|x) from the full tensor, other input averaged out."""
    return v.sum(axis=(3, 4)).mean(axis=1)[:, 1]


def _marginal_c1(v: np.ndarray) -> np.ndarray:
    return v.sum(axis=(2, 3)).mean(axis=0)[:, 1]


def _overlap_box(m0: float, m1: float) -> tuple[float, float]:
    """Feasible interval of the unobserved overlap given two marginals."""
    return max(0.0, m0 + m1 - 1.0), min(m0, m1)


# ---------------------------------------------------------------------------
# S0: square-picture oracle


def _square_equalities(v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Nine block-sum equalities pinning the observed b=1 masses.

    The combos cover all (a,c) at (x,z) = (0,0) plus the extra rows needed
    for x=1 and z=1; the remaining b=1 values follow from no-signalling.
    """
    combos = [(a, c, 0, 0) for a, c in itertools.product(range(2), repeat=2)]
    combos += [(1, 1, 1, 0), (1, 0, 1, 0), (1, 1, 0, 1), (0, 1, 0, 1), (1, 1, 1, 1)]
    a_eq = np.zeros((9, 16))
    b_eq = np.zeros(9)
    for i, (a, c, x, z) in enumerate(combos):
        cols = [k for k in range(4) if _SQUARE_CLASSES[k][x] == a]
        rows = [k for k in range(4) if _SQUARE_CLASSES[k][z] == c]
        for r, cc in itertools.product(rows, cols):
            a_eq[i, 4 * r + cc] = 1.0
        b_eq[i] = v[x, z, a, 1, c]
    return a_eq, b_eq


def _square_inner_lp(alpha: float, p1: np.ndarray, pc1: np.ndarray,
                     a_eq9: np.ndarray, b_eq9: np.ndarray):
    """Minimum total bound violation at fixed alpha; beta solved by the LP.

    Variables: S (16), relaxation v >= 0 (16), beta (1).  Heights are
    affine in beta, so S_J <= width_col * height_row(beta) + v_J stays
    linear.  Returns (violation, S, beta) or (inf, None, None) when the
    equality system itself is inconsistent (possible only for signalling
    inputs); the caller falls back to a slacked system in that case.
    """
    w = np.maximum(
        [alpha, p1[0] - alpha, p1[1] - alpha, 1.0 - p1[0] - p1[1] + alpha], 0.0)
    h_const = np.array([0.0, pc1[0], pc1[1], 1.0 - pc1[0] - pc1[1]])
    h_beta = np.array([1.0, -1.0, -1.0, 1.0])
    beta_lo, beta_hi = _overlap_box(pc1[0], pc1[1])

    a_ub = np.zeros((16, 33))
    b_ub = np.zeros(16)
    for r, cc in itertools.product(range(4), repeat=2):
        j = 4 * r + cc
        a_ub[j, j] = 1.0
        a_ub[j, 16 + j] = -1.0
        a_ub[j, 32] = -w[cc] * h_beta[r]
        b_ub[j] = w[cc] * h_const[r]
    a_eq = np.zeros((9, 33))
    a_eq[:, :16] = a_eq9
    cost = np.concatenate([np.zeros(16), np.ones(16), [0.0]])
    bounds = [(0, None)] * 32 + [(beta_lo, max(beta_lo, beta_hi))]
    try:
        sol = solve_lp(cost, a_ub=a_ub, b_ub=b_ub, a_eq=a_eq, b_eq=b_eq9, bounds=bounds)
    except LpInfeasibleError:
        return np.inf, None, None
    return sol.objective, sol.x[:16], float(sol.x[32])


def _square_slacked_violation(v: np.ndarray) -> float:
    """Total equality slack when the nine block sums cannot be met at all.

    Only reachable for signalling inputs; keeps the reported violation
    finite for diagnostics.
    """
    a_eq9, b_eq9 = _square_equalities(v)
    a_eq = np.hstack([a_eq9, -np.eye(9), np.eye(9)])
    cost = np.concatenate([np.zeros(16), np.ones(18)])
    sol = solve_lp(cost, a_eq=a_eq, b_eq=b_eq9, bounds=[(0, None)] * 34)
    return sol.objective


def _square_axis_scan(v: np.ndarray, cfg: OracleConfig):
    """Grid-plus-refinement scan over alpha for one orientation of the input."""
    a_eq9, b_eq9 = _square_equalities(v)
    p1 = _marginal_a1(v)
    pc1 = _marginal_c1(v)
    lo, hi = _overlap_box(p1[0], p1[1])
    hi = max(lo, hi)
    early = cfg.eps * 0.1
    lp_count = 0

    best = (np.inf, None, None, None)  # violation, alpha, S, beta

    def probe(alpha):
        nonlocal best, lp_count
        lp_count += 1
        viol, s, beta = _square_inner_lp(alpha, p1, pc1, a_eq9, b_eq9)
        if viol < best[0]:
            best = (viol, alpha, s, beta)
        return viol

    alphas = np.linspace(lo, hi, cfg.grid_n) if hi > lo else np.array([lo])
    for alpha in alphas:
        if probe(alpha) <= early:
            return best + (lp_count,)
    step = (hi - lo) / max(cfg.grid_n - 1, 1)
    for _ in range(cfg.refine_rounds):
        if step <= 0 or best[1] is None:
            break
        left = max(lo, best[1] - step)
        right = min(hi, best[1] + step)
        for alpha in np.linspace(left, right, 17):
            if probe(alpha) <= early:
                return best + (lp_count,)
        step = (right - left) / 16.0
    return best + (lp_count,)


def s0_square_oracle(corr: Correlation, cfg: OracleConfig | None = None) -> OracleResult:
    """Decide classical-set membership through the square picture.

    The outer search runs over alpha (with beta handled exactly inside the
    LP) and, if that leaves the verdict infeasible, again over beta on the
    mirrored correlation.  Feasibility means the smallest total bound
    violation found is at most ``cfg.eps``; infeasibility is subject to
    the grid resolution reported in the diagnostics.
    """
    cfg = cfg or OracleConfig()
    v = _prepare(corr)

    viol, alpha, s, beta, lps = _square_axis_scan(v, cfg)
    axes = ["alpha"]
    swapped = False
    if viol > cfg.eps:
        vm = np.ascontiguousarray(np.transpose(v, (1, 0, 4, 3, 2)))
        viol2, alpha2, s2, beta2, lps2 = _square_axis_scan(vm, cfg)
        axes.append("beta")
        lps += lps2
        if viol2 < viol:
            viol, alpha, s, beta = viol2, alpha2, s2, beta2
            swapped = True

    if not np.isfinite(viol):
        viol = _square_slacked_violation(v)
        lps += 1
        s = None

    feasible = viol <= cfg.eps
    witness = None
    if feasible and s is not None:
        if swapped:
            # map the mirrored-picture witness back: rows <-> cols, alpha <-> beta
            s = np.asarray(s).reshape(4, 4).T.ravel()
            alpha, beta = beta, alpha
        p1, pc1 = _marginal_a1(v), _marginal_c1(v)
        widths = np.maximum([alpha, p1[0] - alpha, p1[1] - alpha,
                             1.0 - p1[0] - p1[1] + alpha], 0.0)
        heights = np.maximum([beta, pc1[0] - beta, pc1[1] - beta,
                              1.0 - pc1[0] - pc1[1] + beta], 0.0)
        witness = SquareInstance(np.asarray(s), float(alpha), float(beta),
                                 np.asarray(widths), np.asarray(heights))
    diagnostics = {"method": "square", "grid_n": cfg.grid_n,
                   "refine_rounds": cfg.refine_rounds, "lp_count": lps,
                   "axes_scanned": axes}
    return OracleResult(feasible, float(viol), witness, diagnostics)


# ---------------------------------------------------------------------------
# S0: seesaw oracle


def _seesaw_half_step(v: np.ndarray, q_fixed: np.ndarray, side: str):
    """One alternation step: fixed strategy weights on one side.

    side = "alice" fixes q1 and solves the LP over (q2, T); side =
    "charlie" fixes q2 and solves over (q1, T).  Returns the L1
    reconstruction error, the solved weights and T.
    """
    n_t, n_q, n_e = 32, 4, 32

    def ti(b, l1, l2):
        return (b * 4 + l1) * 4 + l2

    nvar = n_t + n_q + 2 * n_e
    a_eq = np.zeros((16 + 1 + 32, nvar))
    b_eq = np.zeros(16 + 1 + 32)
    row = 0
    for l1, l2 in itertools.product(range(4), repeat=2):
        for b in range(2):
            a_eq[row, ti(b, l1, l2)] = 1.0
        if side == "alice":
            a_eq[row, n_t + l2] = -q_fixed[l1]
        else:
            a_eq[row, n_t + l1] = -q_fixed[l2]
        row += 1
    a_eq[row, n_t:n_t + n_q] = 1.0
    b_eq[row] = 1.0
    row += 1
    for x, z, a, b, c in itertools.product(range(2), repeat=5):
        for l1, l2 in itertools.product(range(4), repeat=2):
            if DETERMINISTIC_STRATEGIES[l1][x] == a and DETERMINISTIC_STRATEGIES[l2][z] == c:
                a_eq[row, ti(b, l1, l2)] = 1.0
        a_eq[row, n_t + n_q + (row - 17)] = -1.0
        a_eq[row, n_t + n_q + n_e + (row - 17)] = 1.0
        b_eq[row] = v[x, z, a, b, c]
        row += 1

    cost = np.zeros(nvar)
    cost[n_t + n_q:] = 1.0
    sol = solve_lp(cost, a_eq=a_eq, b_eq=b_eq, bounds=[(0, None)] * nvar)
    t = sol.x[:n_t].reshape(2, 4, 4)
    q = sol.x[n_t:n_t + n_q]
    return sol.objective, q, t


def _overlap_weights(m: np.ndarray, overlap: float) -> np.ndarray:
    """Strategy weights consistent with marginals m = (p1(0), p1(1)).

    Ordered by DETERMINISTIC_STRATEGIES: (0,0), (0,1), (1,0), (1,1).
    """
    q = np.array([1.0 - m[0] - m[1] + overlap, m[1] - overlap, m[0] - overlap, overlap])
    q = np.maximum(q, 0.0)
    total = q.sum()
    return q / total if total > 0 else np.full(4, 0.25)


def s0_seesaw_oracle(corr: Correlation, cfg: OracleConfig | None = None) -> OracleResult:
    """Constructive classical-set membership search by alternating LPs.

    Deterministic stage first: sweep strategy weights along the
    marginal-consistent overlap lines of both end parties (with local
    refinement; exact reconstruction forces the weights onto those lines,
    and near the boundary the feasible stretch can be narrow), then
    alternate to convergence from the best point, then ``cfg.restarts``
    random restarts.  A feasible verdict carries an explicit
    decomposition; an infeasible one is heuristic and flagged as such in
    the diagnostics.
    """
    cfg = cfg or OracleConfig()
    v = _prepare(corr)
    rng = np.random.default_rng(cfg.seed)
    early = cfg.eps * 0.1

    best = {"viol": np.inf, "witness": None}
    lp_count = 0

    def record(viol, q_fixed, q_solved, t, side):
        if viol < best["viol"]:
            best["viol"] = viol
            q1, q2 = (q_fixed, q_solved) if side == "alice" else (q_solved, q_fixed)
            best["witness"] = SeesawDecomposition(np.asarray(q1, float).copy(),
                                                  np.asarray(q2, float).copy(), t.copy())

    def half(q, side):
        nonlocal lp_count
        lp_count += 1
        viol, q_new, t = _seesaw_half_step(v, q, side)
        record(viol, q, q_new, t, side)
        return viol, q_new

    def alternate(q, side):
        prev = np.inf
        for _ in range(cfg.max_iters):
            viol, q_new = half(q, side)
            if best["viol"] <= early or prev - viol < 1e-13:
                return
            prev, q, side = viol, q_new, ("charlie" if side == "alice" else "alice")

    def line_stage(margs, side):
        lo, hi = _overlap_box(margs[0], margs[1])
        grid = np.linspace(lo, hi, cfg.line_grid) if hi > lo else np.array([lo])
        vals = []
        for ov in grid:
            vals.append(half(_overlap_weights(margs, ov), side)[0])
            if best["viol"] <= early:
                return
        step = (hi - lo) / max(cfg.line_grid - 1, 1)
        center = grid[int(np.argmin(vals))]
        for _ in range(cfg.refine_rounds):
            if step <= 0:
                return
            left, right = max(lo, center - step), min(hi, center + step)
            grid = np.linspace(left, right, cfg.line_grid)
            vals = []
            for ov in grid:
                vals.append(half(_overlap_weights(margs, ov), side)[0])
                if best["viol"] <= early:
                    return
            center = grid[int(np.argmin(vals))]
            step = (right - left) / max(cfg.line_grid - 1, 1)

    line_stage(_marginal_a1(v), "alice")
    if best["viol"] > early:
        line_stage(_marginal_c1(v), "charlie")
    if best["viol"] > early and best["witness"] is not None:
        alternate(best["witness"].q2, "charlie")
    for _ in range(cfg.restarts):
        if best["viol"] <= early:
            break
        alternate(rng.dirichlet(np.ones(4)), "alice")

    feasible = best["viol"] <= cfg.eps
    diagnostics = {"method": "seesaw", "lp_count": lp_count, "restarts": cfg.restarts,
                   "seed": cfg.seed}
    if not feasible:
        diagnostics["heuristic_infeasible"] = True
    return OracleResult(feasible, float(best["viol"]),
                        best["witness"] if feasible else None, diagnostics)


# ---------------------------------------------------------------------------
# S1: unpacked feasibility LPs


def _s1_ab_classical_lp(v: np.ndarray, eps: float):
    """Min-total-slack LP for Q(A0, A1, B, C | z).

    Equalities: no-signalling Q(A0,A1,B|z=0) = Q(A0,A1,B|z=1);
    independence per z, Q(A0,A1,C=c|z) = Q(A0,A1|z) * p(c|z) with the
    observed marginal p(c|z) entering as a constant; and compatibility
    p(a,b,c|x,z) = Q(A_x=a, B=b, C=c|z).
    """
    def qi(a0, a1, b, c, z):
        return (((a0 * 2 + a1) * 2 + b) * 2 + c) * 2 + z

    pc = v.sum(axis=(2, 3)).mean(axis=0)  # p(c|z)
    rows, rhs = [], []
    for a0, a1, b in itertools.product(range(2), repeat=3):
        r = np.zeros(32)
        for c in range(2):
            r[qi(a0, a1, b, c, 0)] += 1.0
            r[qi(a0, a1, b, c, 1)] -= 1.0
        rows.append(r)
        rhs.append(0.0)
    for a0, a1, c, z in itertools.product(range(2), repeat=4):
        r = np.zeros(32)
        for b in range(2):
            r[qi(a0, a1, b, c, z)] += 1.0
            for c2 in range(2):
                r[qi(a0, a1, b, c2, z)] -= pc[z, c]
        rows.append(r)
        rhs.append(0.0)
    for x, z, a, b, c in itertools.product(range(2), repeat=5):
        r = np.zeros(32)
        if x == 0:
            for a1 in range(2):
                r[qi(a, a1, b, c, z)] += 1.0
        else:
            for a0 in range(2):
                r[qi(a0, a, b, c, z)] += 1.0
        rows.append(r)
        rhs.append(v[x, z, a, b, c])

    a = np.array(rows)
    m = len(rhs)
    a_eq = np.hstack([a, -np.eye(m), np.eye(m)])
    cost = np.concatenate([np.zeros(32), np.ones(2 * m)])
    sol = solve_lp(cost, a_eq=a_eq, b_eq=np.array(rhs), bounds=[(0, None)] * (32 + 2 * m))
    q = sol.x[:32].reshape(2, 2, 2, 2, 2)
    return sol.objective, q


def s1_lp(corr: Correlation, mode: S1Mode | str, eps: float = 1e-7) -> OracleResult:
    """Half-classical membership: is one source classical enough?

    mode AB_CLASSICAL_BC_OPT unpacks Alice (her counterfactual outputs
    coexist exactly when her source is classical); the mirrored mode
    relabels (a, x) <-> (c, z) and runs the same program.
    """
    mode = S1Mode(mode)
    v = _prepare(corr if mode is S1Mode.AB_CLASSICAL_BC_OPT else mirror(corr))
    viol, q = _s1_ab_classical_lp(v, eps)
    feasible = viol <= eps
    witness = UnpackedLp(q, mode) if feasible else None
    return OracleResult(feasible, float(viol), witness,
                        {"method": "unpacked_lp", "mode": mode.value})


# ---------------------------------------------------------------------------
# Region classification


def classify(corr: Correlation, cfg: OracleConfig | None = None) -> ClassificationReport:
    """Place a correlation in the region diagram.

    Pipeline: validate, S2 gate, both half-classical LPs, square oracle
    (authoritative for S0) with an optional seesaw cross-check when the
    square reports feasible.  Exactly one label comes out:

    INVALID, NOT_IN_S2, CLASSICAL (in S0), MNN (in both S1 sets but not
    S0), HALF_AB_OPT_ONLY / HALF_BC_OPT_ONLY (explainable only with the
    nonclassical source on that side), FNN (in S2 but in neither S1 set).
    """
    cfg = cfg or OracleConfig()
    report = validate(corr)
    if not report.is_valid:
        return ClassificationReport(RegionLabel.INVALID, None, None, None, None, report, cfg)

    s2 = check_s2(corr, cfg.s2_tol if cfg.s2_tol is not None else cfg.eps)
    left = s1_lp(corr, S1Mode.AB_CLASSICAL_BC_OPT, cfg.eps)
    right = s1_lp(corr, S1Mode.AB_OPT_BC_CLASSICAL, cfg.eps)
    s0 = s0_square_oracle(corr, cfg)
    if s0.feasible and cfg.seesaw_crosscheck:
        cross = s0_seesaw_oracle(corr, cfg)
        diag = dict(s0.diagnostics)
        diag["seesaw_crosscheck"] = {"feasible": cross.feasible,
                                     "violation": cross.violation}
        s0 = OracleResult(s0.feasible, s0.violation, s0.witness, diag)

    if not s2.in_s2:
        label = RegionLabel.NOT_IN_S2
    elif s0.feasible:
        label = RegionLabel.CLASSICAL
    elif left.feasible and right.feasible:
        label = RegionLabel.MNN
    elif right.feasible:
        label = RegionLabel.HALF_AB_OPT_ONLY
    elif left.feasible:
        label = RegionLabel.HALF_BC_OPT_ONLY
    else:
        label = RegionLabel.FNN
    return ClassificationReport(label, s0, left, right, s2, report, cfg)
