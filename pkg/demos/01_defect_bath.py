"""
Sampling a defect bath and watching it drift
============================================

Every simulated qubit lives against a bath of two-level defects drawn
from broad log-uniform distributions.  This script samples the reference
ensemble, looks at what landed near the qubit, and then lets the slow
asymmetry noise run for a few simulated hours to show the frequency
wander that makes T1 a moving target.
"""

import numpy as np

from tlscontrol import advance_diffusion, default_config, sample_bath, tls_splitting

cfg = default_config()
f_q = cfg.resolved["qubit"]["f_q_ghz"]

# sample the reference bath: 600 defects inside a +-0.5 GHz window
bath = sample_bath(cfg.bath_config(), seed=1)
print(f"sampled {len(bath)} defects around f_q = {f_q} GHz")

energies = np.array([tls_splitting(d, 0.0, 0.0) for d in bath.defects])
couplings = np.array([d.g_bare for d in bath.defects])
print(f"splittings span [{energies.min():.3f}, {energies.max():.3f}] GHz")
print(f"bare couplings span [{couplings.min() * 1e3:.2f}, {couplings.max() * 1e3:.2f}] mrad/us")

# now let the asymmetries diffuse: one step per simulated hour
print("\nhour  defects within 1 MHz of f_q")
for hour in range(6):
    energies = np.array(
        [tls_splitting(d, 0.0, xi) for d, xi in zip(bath.defects, bath.xi)]
    )
    print(f"{hour:4d}  {int(np.sum(np.abs(energies - f_q) < 0.001))}")
    advance_diffusion(bath, 3600.0)

print("\nthe cast of near-resonant defects changes from hour to hour;")
print("that churn is exactly what the bias control has to average away")
