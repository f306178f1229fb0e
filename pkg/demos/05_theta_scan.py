"""The partial-swap family across its angle parameter.

Bob projects onto sin(theta)|01> + cos(theta)|10>.  At theta = 0 or pi/2
the projector is a product state and the correlation is classical; at
theta = pi/4 it is the symmetric swap and also classical; everywhere in
between the point is MNN.  The angle map is mirror-covariant:
theta <-> pi/2 - theta give relabeled (hence identically labeled) points.
"""
import numpy as np

from nncert import OracleConfig, gen_mnn2, mirror, records_to_csv, theta_scan

cfg = OracleConfig()
grid = np.linspace(0, np.pi / 2, 9)

records = theta_scan(1.0, grid, cfg)
print(records_to_csv(records))

theta = np.pi / 8
diff = np.abs(mirror(gen_mnn2(theta, 1.0)).values
              - gen_mnn2(np.pi / 2 - theta, 1.0).values).max()
print(f"mirror(p(theta)) vs p(pi/2 - theta) at theta=pi/8: max |difference| = {diff:.2e}")
