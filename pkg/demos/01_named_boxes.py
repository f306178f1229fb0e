"""The named correlations of the minimal chain and their CHSH fingerprints.

Walks through every generator: the PR box, the post-selection box built
from it, the entanglement-swapping realization, the local test point, and
the Fritz wiring.  Shows that the quantum simulation and the analytic
formulas meet where they should.
"""
import numpy as np

from nncert import (
    chsh, fritz_chsh, gen_entanglement_swapping, gen_fritz, gen_local_test,
    gen_post_selection_box, gen_pr_box, marginalize, postselected_chsh, validate,
)

SQRT2 = np.sqrt(2)

# A PR box at visibility V has CHSH value 4V: algebraic maximum at V=1,
# the quantum boundary 2*sqrt(2) at V = 1/sqrt(2).
for V in (1.0, 1 / SQRT2, 0.5):
    print(f"PR box V={V:.4f}:  CHSH = {chsh(gen_pr_box(V)).value:.6f}")

# The post-selection box plants the PR box between the end parties on
# Bob's outcome 0, which occurs with probability p_ps for every input.
ps = gen_post_selection_box(1 / SQRT2, 0.25)
print("\npost-selection box (V=1/sqrt2, p_ps=1/4):")
print("  valid:", validate(ps).is_valid)
print("  p(b|x=0,z=0) =", marginalize(ps, {"b"}, {"x": 0, "z": 0}))
print("  CHSH conditioned on b=0:", postselected_chsh(ps, 0).value)

# The same correlation arises from an actual entanglement-swapping
# experiment: two maximally entangled sources and a coarse-grained
# Bell-state measurement in the middle.
es = gen_entanglement_swapping(1.0)
print("\nentanglement swapping vs analytic box, max |difference| =",
      np.abs(es.values - ps.values).max())

# With both sources passed through visibility-v Werner noise the swapped
# box keeps p_ps = 1/4 while its PR visibility drops to v^2/sqrt(2).
for v in (1.0, 0.9, 0.8):
    esv = gen_entanglement_swapping(v)
    print(f"  v={v:.1f}: post-selected CHSH = {postselected_chsh(esv, 0).value:.6f}"
          f"  (= 4 v^2/sqrt(2) = {4 * v * v / SQRT2:.6f})")

# The local test point: Charlie broadcasts the shared bit, and Alice/Bob
# play matched diagonal measurements.  Everything stays classical.
pl = gen_local_test()
print("\nlocal test point: p(0,0,0|0,0) =", pl.values[0, 0, 0, 0, 0],
      " p(0,1,0|0,0) =", pl.values[0, 0, 0, 1, 0])

# The Fritz wiring embeds a CHSH test between A and B, with Charlie's
# output acting as Bob's input.  The violation sits at 2*sqrt(2) for
# either value of z and scales linearly with the Werner visibility.
fr = gen_fritz("R", 1.0)
print("\nfritz wiring: CHSH(z=0) =", fritz_chsh(fr, 0).value,
      " CHSH(z=1) =", fritz_chsh(fr, 1).value)
for v in (0.75, 0.5):
    print(f"  visibility {v}: CHSH = {fritz_chsh(gen_fritz('R', v), 0).value:.6f}")
