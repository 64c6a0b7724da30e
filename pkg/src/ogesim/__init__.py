"""Deterministic, seeded, discrete-time simulator of an open game economy.

Mechanism toggles (identity enforcement, asymmetric utility decay,
single-slot activation, wear with optional supply scaling) can be ablated
cell by cell to compare sustained and collapsing market trajectories under
adversarial agent populations.
"""

__version__ = "0.1.0"

from .config import ScenarioConfig, load_config
from .mechanisms import ALL_OFF, ALL_ON, MechanismToggles
from .sim import RunResult, Simulation, run_scenario

__all__ = [
    "ALL_OFF",
    "ALL_ON",
    "MechanismToggles",
    "RunResult",
    "ScenarioConfig",
    "Simulation",
    "load_config",
    "run_scenario",
    "__version__",
]
