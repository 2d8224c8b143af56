import numpy as np

from ssw import detection_boundary, scan

# Where does W1 cross 1 in equilibrium? The boundary should meet the
# zero-temperature edge near B = sqrt(1 - pi^2/16).
b_axis = np.linspace(0.0, 1.2, 49)
t_axis = np.linspace(0.01, 1.0, 45)
w1_grid = scan("W1", b_axis, t_axis, [0.0])
lines = detection_boundary(w1_grid, level=1.0)
print(len(lines), "W1 boundary line(s)")
for line in lines:
    lo = line[np.argmin(line[:, 1])]
    hi = line[np.argmax(line[:, 1])]
    print(f"  {len(line)} points; lowest T at B={lo[0]:.3f}, highest T={hi[1]:.3f} at B={hi[0]:.3f}")
print("  zero-T prediction B =", np.sqrt(1 - np.pi**2 / 16))

# The current witness with a drive: region boundaries per gamma slice
b_axis = np.linspace(0.0, 2.0, 41)
t_axis = np.linspace(0.1, 10.0, 41)
wss = scan("WSS", b_axis, t_axis, [1.0, 2.0, 3.0])
for k, g in enumerate(wss.gamma_axis):
    lines = detection_boundary(wss, 1.0, gamma_index=k)
    if not lines:
        print(f"gamma={g}: Wss never reaches 1 on this window")
        continue
    pts = np.vstack(lines)
    print(f"gamma={g}: {len(lines)} line(s), B <= {pts[:, 0].max():.2f}, T in [{pts[:, 1].min():.2f}, {pts[:, 1].max():.2f}]")
