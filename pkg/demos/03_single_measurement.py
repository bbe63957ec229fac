"""
One T1 measurement under each control signal
============================================

A measurement excites the qubit, waits, and reads out, hundreds of times
per delay point.  The electrode signal during that ten-minute block
decides which defects matter: a grounded electrode freezes the current
arrangement, a random DC draw relocates it, and a slow triangle sweep
averages over every arrangement the bias can reach.
"""

from tlscontrol import Dc, Triangle, Zero, default_config, measure_t1

cfg = default_config()
settings = cfg.measurement_settings("ac")

for label, control in [
    ("grounded electrode", Zero()),
    ("dc bias at +3 V", Dc(3.0)),
    ("16 Vpp triangle at 0.1 Hz", Triangle(vpp=16.0, f_ac=0.1)),
]:
    # fresh world each time so the three runs see the same defect draw
    world = cfg.build_world(seed=5)
    curve, fit = measure_t1(world, control, settings)
    head = " ".join(f"{p:.2f}" for p in curve.p1[:5])
    tail = " ".join(f"{p:.2f}" for p in curve.p1[-3:])
    print(f"{label}:")
    print(f"  p1 head {head} ... tail {tail}")
    if fit.converged:
        print(f"  t1 = {fit.t1:.0f} +- {fit.t1_stderr:.0f} us")
    else:
        print("  fit did not converge")
    print()

print("same bath, three different answers: T1 is a property of the")
print("(qubit, bias trajectory) pair, not of the qubit alone")
