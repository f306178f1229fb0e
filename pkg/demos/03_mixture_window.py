"""The mixing-weight window where the post-selection/local mixture is MNN.

Sweeps mu for p(mu) = mu * post-selection-box + (1 - mu) * local-test and
locates the two boundaries: the classical-set exit (lower) and the joint
half-classical exit (upper).  For V = 1/sqrt(2) the window is roughly
(0.455, 0.705); for the extremal V = 1 box it becomes (0, 0.5).
"""
import numpy as np

from nncert import (
    BisectionConfig, OracleConfig, gen_mnn1, mu_range, records_to_csv, sweep_records,
)

SQRT2 = np.sqrt(2)
cfg = OracleConfig()

print("sweep of the quantum-realizable mixture (V = 1/sqrt2, p_ps = 1/4):")
records = sweep_records("mu", np.arange(0, 1.0001, 0.1),
                        lambda mu: gen_mnn1(mu, 1 / SQRT2, 0.25), cfg)
print(records_to_csv(records))

lo, hi = mu_range(1 / SQRT2, 0.25, BisectionConfig(tol=1e-3), cfg)
print(f"bisected window for V=1/sqrt2: mu in ({lo:.4f}, {hi:.4f})")

lo, hi = mu_range(1.0, 0.25, BisectionConfig(tol=1e-3), cfg)
print(f"bisected window for V=1:       mu in ({lo:.4f}, {hi:.4f})")
print("(the V=1 mixture is nonclassical for every positive weight)")
