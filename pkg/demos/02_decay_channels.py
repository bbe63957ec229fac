"""
The three decay channels, one at a time
=======================================

The total relaxation rate is a sum: a fixed background, resonant defect
absorption that moves with the electrode bias, thermally activated
quasiparticle loss, and (under a swept bias) transition events at each
level crossing.  This script isolates each term on a hand-built bath so
the numbers are easy to follow.
"""

import numpy as np

from tlscontrol import (
    BathState,
    QubitSpec,
    TlsDefect,
    Triangle,
    gamma_lz,
    gamma_qp,
    gamma_tls,
)
from tlscontrol.rng import BATH_DIFFUSION, stream

qubit = QubitSpec(f_q=4.7, gamma0=4e-4)

# one defect parked 2 V away from resonance, one far detuned
tunable = TlsDefect(epsilon0=4.153, delta0=2.0, dipole_gain=0.05, g_bare=0.3,
                    gamma2=6.28, diff_sigma=0.0, diff_tau=1.0)
spectator = TlsDefect(epsilon0=6.0, delta0=1.0, dipole_gain=0.01, g_bare=0.3,
                      gamma2=6.28, diff_sigma=0.0, diff_tau=1.0)
defects = (tunable, spectator)
bath = BathState(defects, np.zeros(2), 0.0, stream(0, BATH_DIFFUSION), 0)

# 1. the defect channel vs bias: a sharp Lorentzian where the tunable
#    defect sweeps through the qubit frequency
print("bias_v  gamma_tls_per_us")
for v in (-8.0, 0.0, 1.9, 2.0, 2.1, 4.0, 8.0):
    print(f"{v:6.1f}  {gamma_tls(qubit, bath, v):.3e}")

# 2. quasiparticle loss vs temperature: dead below 40 mK, steep above 100
print("\ntemp_mk  gamma_qp_per_us")
for t_mk in (10.0, 50.0, 100.0, 150.0, 200.0):
    print(f"{t_mk:7.0f}  {gamma_qp(t_mk, qubit):.3e}")

# 3. crossing events under a triangle drive: the faster the sweep, the
#    more often the defect crosses, but each pass transfers less
print("\nf_ac_hz  gamma_lz_per_us")
for f_ac in (0.1, 1.0, 10.0, 100.0):
    rate = gamma_lz(qubit, bath, Triangle(vpp=16.0, f_ac=f_ac))
    print(f"{f_ac:7.1f}  {rate:.3e}")

print("\nat slow drives every crossing transfers the excitation, so the")
print("event rate just counts crossings; the defect channel dwarfs it")
print("only while the bias parks the defect on resonance")
