import time

import numpy as np

from ssw import ChainParams, free_fermion_finite, magnetization_density, pair_correlators
from ssw.ed import chain_observables
from ssw.freefermion import sector_momenta
from ssw.verify import verify

# Exact diagonalization of an 8-site ring against the free-fermion solution
# of the same finite ring. They must agree to round-off.
p = ChainParams(1.0, 0.5, 1.0, 1.0)
ed = chain_observables(p, 8)
ff = free_fermion_finite(p, 8)

for key in ("log_z", "m", "e", "u", "q"):
    print(f"{key:6s} ED {ed[key]: .12f}   FF {getattr(ff, key): .12f}")
for r in (1, 2):
    pc = ff.pairs[r]
    print(f"R={r}  xx+yy ED {ed['pairs'][r]['xx_plus_yy']: .10f}  FF {pc.xx_plus_yy: .10f}")
    print(f"R={r}  yx-xy ED {ed['pairs'][r]['yx_minus_xy']: .10f}  FF {pc.yx_minus_xy: .10f}")
    print(f"R={r}  C     ED {ed['concurrence'][r]: .10f}  FF {ff.concurrence[r]: .10f}")

# A single Fourier sum over q = 2 pi k / N ignores the boundary term of the
# Jordan-Wigner string and misses the small-ring answer.
q = sector_momenta(8, periodic=True)
bx = p.beta * (p.b_field - np.cos(q)) + 2 * p.gamma * np.sin(q) * (p.b_field - np.cos(q))
print("plain Fourier m:", np.mean(np.tanh(bx)), " exact:", ed["m"])

# The finite ring approaches the infinite chain exponentially fast
m_inf = magnetization_density(p)
for n in (8, 16, 32, 64):
    print(f"N={n:3d}  |m_N - m_inf| = {abs(free_fermion_finite(p, n, pairs=()).m - m_inf):.2e}")

# the infinite-chain correlators for comparison
print("R=2 yx-xy, infinite chain:", pair_correlators(p, 2).yx_minus_xy)

# Full keystone grid: 4 fields x 3 temperatures x 3 drives
start = time.perf_counter()
report = verify(8)
w = report["worst"]
print(f"verify N=8: passed={report['passed']}  worst {w['abs_diff_ed_ff']:.1e} ({w['quantity']})"
      f"  in {time.perf_counter() - start:.1f} s")
