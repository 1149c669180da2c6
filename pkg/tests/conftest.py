import numpy as np
import pytest

from grover_optics import CavityConfig, LossModel, TrapezoidPhasePlate

# Measured-plate experiment values: oracle flat widths with the ramp
# each wire shadow produces, all at -1.1 rad per pass.
PAPER_PLATES = {
    42.0: 4.0,
    84.0: 8.0,
    126.0: 37.0,
}


def paper_cavity(flat_um: float, n_pulses: int = 12, **overrides) -> CavityConfig:
    """Cavity at the measured-experiment defaults for one oracle width."""
    ramp_um = PAPER_PLATES[flat_um]
    kwargs = dict(
        oracle_plate=TrapezoidPhasePlate(
            center=150e-6,
            flat_width=flat_um * 1e-6,
            ramp_width=ramp_um * 1e-6,
            phase_depth=-1.1,
        ),
        iaa_plate=TrapezoidPhasePlate(
            center=0.0, flat_width=136e-6, ramp_width=8e-6, phase_depth=-1.1
        ),
        n_pulses=n_pulses,
    )
    kwargs.update(overrides)
    return CavityConfig(**kwargs)


def ideal_cavity(flat_um: float = 42.0, n_pulses: int = 30, **overrides) -> CavityConfig:
    """Hard-edged quarter-wave plates, no loss: the textbook iterator."""
    kwargs = dict(
        oracle_plate=TrapezoidPhasePlate(
            center=150e-6,
            flat_width=flat_um * 1e-6,
            ramp_width=0.0,
            phase_depth=-np.pi / 2,
        ),
        iaa_plate=TrapezoidPhasePlate(
            center=0.0, flat_width=136e-6, ramp_width=0.0, phase_depth=-np.pi / 2
        ),
        loss=LossModel(1.0),
        n_pulses=n_pulses,
    )
    kwargs.update(overrides)
    return CavityConfig(**kwargs)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260818)
