"""Shared simulation state for one experiment timeline."""

from dataclasses import dataclass

import numpy as np

from .bath import BathState
from .decay import QubitSpec


@dataclass
class World:
    """One qubit, its bath, and the lab clock.

    The bath carries the wall clock; ``rng`` feeds every protocol-level
    draw (waveform phases, shot outcomes, random voltages) in strict call
    order, which is what pins down campaign-level determinism.
    """

    qubit: QubitSpec
    bath: BathState
    temperature_mk: float
    rng: np.random.Generator
    qubit_id: str = "q0"
    seed: int = 0

    @property
    def clock_s(self) -> float:
        return self.bath.clock_s
