"""Critical visibilities: how much Werner noise the two quantum examples survive.

Every quantum state in a realization is mixed with white noise at
visibility v; the critical visibility is where the correlation falls back
into the classical set.  The mixture point needs v >= ~0.987, while the
partial-swap protocol at theta = pi/8 survives down to ~0.861, making it
the better experimental candidate (~14% noise).
"""
import numpy as np

from nncert import (
    BisectionConfig, OracleConfig, classify, critical_visibility_bracket,
    gen_mnn1_quantum, gen_mnn2, mnn1_quantum_family, mnn2_family,
)

cfg = OracleConfig()
bis = BisectionConfig(tol=1e-3)

v1, lo, hi = critical_visibility_bracket(mnn1_quantum_family(0.65), bis, cfg)
print(f"mixture (mu=0.65):        v_crit = {v1:.4f}  bracket [{lo:.4f}, {hi:.4f}]")

v2, lo, hi = critical_visibility_bracket(mnn2_family(np.pi / 8), bis, cfg)
print(f"partial swap (theta=pi/8): v_crit = {v2:.4f}  bracket [{lo:.4f}, {hi:.4f}]")

print("\nlabels around the partial-swap threshold:")
for v in (v2 - 0.01, v2 + 0.01, 1.0):
    rep = classify(gen_mnn2(np.pi / 8, v), cfg)
    print(f"  v = {v:.4f}: {rep.label.value}")

print("\nlabels around the mixture threshold:")
for v in (v1 - 0.01, v1 + 0.005):
    rep = classify(gen_mnn1_quantum(0.65, v), cfg)
    print(f"  v = {v:.4f}: {rep.label.value}")
