import numpy as np

from ssw import ChainParams, g_r, thermo_point, w1, w_ss, witnesses

# A chain with unit coupling, a modest field and unit temperature.
# gamma is the Lagrange multiplier that pins the energy current.
p = ChainParams(j_coupling=1.0, b_field=0.5, temperature=1.0, gamma=1.0)

tp = thermo_point(p)
print("ln Z / N :", tp.log_z_density)
print("m        :", tp.m_density)
print("e        :", tp.e_density)
print("q        :", tp.q_density)
print("u        :", tp.u_density)

# Both witnesses certify entanglement when they exceed 1.
res = witnesses(p)
print("W1 =", res.w1, "detects" if res.w1_detects else "silent")
print("Wss =", res.w_ss, "detects" if res.w_ss_detects else "silent")

# W1 is just the nearest-neighbour hopping correlator in disguise
print("2|G1| =", 2 * abs(g_r(p, 1)))

# Near zero temperature in equilibrium the ground state gives W1 = (4/pi) sqrt(1 - B^2),
# so the energy witness switches off at B = sqrt(1 - pi^2/16).
for b in (0.0, 0.3, 0.6, 0.62, 0.9):
    cold = ChainParams(1.0, b, 1e-3, 0.0)
    print(f"B={b:4.2f}  W1={w1(cold):.4f}  ground state {4 / np.pi * np.sqrt(1 - b * b):.4f}")
print("threshold B:", np.sqrt(1 - np.pi**2 / 16))

# Driving the current keeps the current witness alive at high temperature,
# while W1 stays small there.
for t in (2.0, 5.0, 10.0):
    hot = ChainParams(1.0, 0.0, t, 2.0)
    print(f"T={t:4.1f}  W1={w1(hot):.4f}  Wss={w_ss(hot):.4f}")

# In equilibrium there is no current, so Wss vanishes identically.
print("Wss at gamma=0:", w_ss(ChainParams(1.0, 0.5, 1.0, 0.0)))
