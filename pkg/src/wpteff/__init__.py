"""Far-field wireless power transfer under round-robin and opportunistic scheduling."""

from .core import ConfigError, SystemParams, dbm_to_watts, power_density, rectifier_constant, watts_to_dbm

__version__ = "0.1.0"
