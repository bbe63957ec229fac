"""Shared world builders for the test suite."""

import numpy as np
import pytest

from tlscontrol import QubitSpec, World
from tlscontrol.bath import BathState
from tlscontrol.rng import BATH_DIFFUSION, PROTOCOL, stream


def make_world(
    defects=(),
    gamma0=4e-4,
    seed=0,
    f_q=4.7,
    temperature_mk=10.0,
    read_err_e=0.02,
    read_err_g=0.01,
    gap=43.5,
    qubit_id="q0",
):
    """World with an explicit defect list (default: no defects at all)."""
    defects = list(defects)
    bath = BathState(
        defects=defects,
        xi=np.zeros(len(defects)),
        clock_s=0.0,
        rng=stream(seed, BATH_DIFFUSION),
        seed=seed,
    )
    qubit = QubitSpec(
        f_q=f_q,
        gamma0=gamma0,
        gap=gap,
        read_err_e=read_err_e,
        read_err_g=read_err_g,
    )
    return World(
        qubit=qubit,
        bath=bath,
        temperature_mk=temperature_mk,
        rng=stream(seed, PROTOCOL),
        qubit_id=qubit_id,
        seed=seed,
    )


@pytest.fixture
def empty_world():
    return make_world()
