"""Inequality evaluators and parameter sweeps over the chain generators.

CHSH conventions: E(x,y) = sum_{a,b} (-1)^(a+b) p(a,b|x,y) and the
functional is sum_{x,y} (-1)^(x*y) E(x,y), i.e. the correlator at
(x,y) = (1,1) enters negatively.  Classical bound 2, quantum bound
2*sqrt(2), algebraic bound 4.
"""

from __future__ import annotations

import io
import json
import warnings
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .corr import Correlation
from .generators import gen_mnn1, gen_mnn1_quantum, gen_mnn2
from .oracles import ClassificationReport, OracleConfig, RegionLabel, classify


@dataclass(frozen=True)
class ChshValue:
    value: float
    conditioning: str = "none"


@dataclass(frozen=True)
class SweepRecord:
    parameter: str
    value: float
    label: RegionLabel
    s0_violation: float
    s1_ab_violation: float
    s1_bc_violation: float


@dataclass(frozen=True)
class BisectionConfig:
    lo: float = 0.0
    hi: float = 1.0
    tol: float = 1e-3
    spot_checks: int = 5

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError("need lo < hi")
        if self.tol <= 0:
            raise ValueError("tol must be positive")


class BracketError(ValueError):
    """The bisection predicate does not flip between lo and hi."""


def chsh(box: np.ndarray) -> ChshValue:
    """CHSH functional of a bipartite box indexed (x, y, a, b)."""
    box = np.asarray(box, dtype=float)
    if box.shape != (2, 2, 2, 2):
        raise ValueError(f"expected a (x,y,a,b) tensor of shape (2,2,2,2), got {box.shape}")
    sums = box.sum(axis=(2, 3))
    if np.abs(sums - 1.0).max() > 1e-8:
        raise ValueError("box must be normalized per input pair")
    sign = np.array([[1.0, -1.0], [-1.0, 1.0]])  # (-1)^(a+b)
    corr = np.einsum("xyab,ab->xy", box, sign)
    value = corr[0, 0] + corr[0, 1] + corr[1, 0] - corr[1, 1]
    return ChshValue(float(value))


def postselected_chsh(corr: Correlation, b_val: int) -> ChshValue:
    """CHSH between the end parties conditioned on Bob's outcome b_val."""
    v = corr.values
    if v.shape != (2, 2, 2, 2, 2):
        raise ValueError("post-selected CHSH needs the minimal configuration")
    if not 0 <= b_val < corr.shape.card_b:
        raise ValueError(f"b={b_val} outside cardinality {corr.shape.card_b}")
    pb = v[:, :, :, b_val, :].sum(axis=(2, 3))  # p(b=b_val | x, z)
    if pb.min() <= 1e-12:
        raise ValueError(f"post-selection probability p(b={b_val}|x,z) vanishes for some inputs")
    cond = v[:, :, :, b_val, :] / pb[:, :, None, None]  # (x, z, a, c)
    result = chsh(cond)
    return ChshValue(result.value, conditioning=f"b={b_val}")


def fritz_chsh(corr: Correlation, z: int) -> ChshValue:
    """CHSH between A and B with Charlie's output as Bob's effective input.

    Evaluates the standard functional on
    p_z(a,b|x,c) = p(a,b,c|x,z) / p(c|z) at fixed z.
    """
    v = corr.values
    if v.shape != (2, 2, 2, 2, 2):
        raise ValueError("this evaluator needs the minimal configuration")
    if not 0 <= z < corr.shape.card_z:
        raise ValueError(f"z={z} outside cardinality {corr.shape.card_z}")
    pc = v[:, z].sum(axis=(1, 2)).mean(axis=0)  # p(c|z), x averaged
    if pc.min() <= 1e-12:
        raise ValueError(f"p(c|z={z}) vanishes for some c")
    box = np.transpose(v[:, z], (0, 3, 1, 2)) / pc[None, :, None, None]  # (x, c, a, b)
    result = chsh(box)
    return ChshValue(result.value, conditioning=f"z={z}, inputs (x, c)")


def _bisect(predicate: Callable[[float], bool], lo: float, hi: float, tol: float):
    """Bisection on a boolean predicate; returns (midpoint, lo, hi)."""
    f_lo, f_hi = predicate(lo), predicate(hi)
    if f_lo == f_hi:
        raise BracketError(
            f"predicate does not flip on [{lo}, {hi}] (both ends -> {f_lo})")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if predicate(mid) == f_lo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi), lo, hi


def mnn1_quantum_family(mu: float) -> Callable[[float], Correlation]:
    """Visibility family v -> gen_mnn1_quantum(mu, v)."""
    return lambda v: gen_mnn1_quantum(mu, v)


def mnn2_family(theta: float) -> Callable[[float], Correlation]:
    """Visibility family v -> gen_mnn2(theta, v)."""
    return lambda v: gen_mnn2(theta, v)


def critical_visibility_bracket(family: Callable[[float], Correlation],
                                cfg: BisectionConfig | None = None,
                                oracle_cfg: OracleConfig | None = None):
    """Bisect the classical-set membership flip in the visibility.

    Returns (midpoint, lo, hi) of the final bracket.  Membership is read
    off the classifier's S0 verdict; monotonicity in v is assumed and
    spot-checked at ``cfg.spot_checks`` interior points (a warning is
    emitted if a spot check disagrees with the found threshold).
    """
    cfg = cfg or BisectionConfig()
    oracle_cfg = oracle_cfg or OracleConfig()

    def in_s0(v: float) -> bool:
        return classify(family(v), oracle_cfg).s0.feasible

    mid, lo, hi = _bisect(in_s0, cfg.lo, cfg.hi, cfg.tol)
    if cfg.spot_checks > 0:
        for v in np.linspace(cfg.lo, cfg.hi, cfg.spot_checks + 2)[1:-1]:
            if lo <= v <= hi:
                continue
            if in_s0(v) != (v < mid):
                warnings.warn(
                    f"classical-set membership not monotone in v: spot check at v={v:.4f} "
                    f"disagrees with threshold {mid:.4f}", stacklevel=2)
    return mid, lo, hi


def critical_visibility(family: Callable[[float], Correlation],
                        cfg: BisectionConfig | None = None,
                        oracle_cfg: OracleConfig | None = None) -> float:
    """Smallest visibility at which the family leaves the classical set."""
    return critical_visibility_bracket(family, cfg, oracle_cfg)[0]


def mu_range(V: float, p_ps: float,
             cfg: BisectionConfig | None = None,
             oracle_cfg: OracleConfig | None = None) -> tuple[float, float]:
    """Mixing-weight window in which the analytic mixture is MNN.

    The lower boundary is the flip of the classifier's S0 verdict, the
    upper boundary the flip of joint membership in both half-classical
    sets, each bisected to ``cfg.tol``.  Raises :class:`BracketError`
    when a flip does not exist in [lo, hi] (e.g. V = 0, where every
    mixture stays classical).
    """
    cfg = cfg or BisectionConfig()
    oracle_cfg = oracle_cfg or OracleConfig()

    def report(mu: float) -> ClassificationReport:
        return classify(gen_mnn1(mu, V, p_ps), oracle_cfg)

    def in_s0(mu: float) -> bool:
        return report(mu).s0.feasible

    def in_s1_both(mu: float) -> bool:
        r = report(mu)
        return r.s1_ab_classical.feasible and r.s1_bc_classical.feasible

    mu_low, _, _ = _bisect(in_s0, cfg.lo, cfg.hi, cfg.tol)
    mu_high, _, _ = _bisect(in_s1_both, cfg.lo, cfg.hi, cfg.tol)
    return mu_low, mu_high


def theta_scan(v: float, grid: Iterable[float],
               oracle_cfg: OracleConfig | None = None) -> list[SweepRecord]:
    """Classify the partial-swap family at each angle of the grid."""
    oracle_cfg = oracle_cfg or OracleConfig()
    records = []
    for theta in grid:
        r = classify(gen_mnn2(float(theta), v), oracle_cfg)
        records.append(SweepRecord("theta", float(theta), r.label,
                                   r.s0.violation,
                                   r.s1_ab_classical.violation,
                                   r.s1_bc_classical.violation))
    return records


def sweep_records(parameter: str, values: Iterable[float],
                  make_corr: Callable[[float], Correlation],
                  oracle_cfg: OracleConfig | None = None) -> list[SweepRecord]:
    """Classify ``make_corr(value)`` for each value, in ascending order."""
    oracle_cfg = oracle_cfg or OracleConfig()
    records = []
    for value in sorted(float(v) for v in values):
        r = classify(make_corr(value), oracle_cfg)
        records.append(SweepRecord(parameter, value, r.label,
                                   r.s0.violation,
                                   r.s1_ab_classical.violation,
                                   r.s1_bc_classical.violation))
    return records


CSV_HEADER = "parameter,value,label,s0_violation,s1_ab_violation,s1_bc_violation"


def records_to_csv(records: Sequence[SweepRecord]) -> str:
    out = io.StringIO()
    out.write(CSV_HEADER + "\n")
    for r in records:
        out.write(f"{r.parameter},{r.value!r},{r.label.value},"
                  f"{r.s0_violation!r},{r.s1_ab_violation!r},{r.s1_bc_violation!r}\n")
    return out.getvalue()


def records_to_json(records: Sequence[SweepRecord]) -> str:
    return json.dumps([{
        "parameter": r.parameter, "value": r.value, "label": r.label.value,
        "s0_violation": r.s0_violation, "s1_ab_violation": r.s1_ab_violation,
        "s1_bc_violation": r.s1_bc_violation,
    } for r in records])
