"""Exact modular data for subregular W-algebras at exceptional levels."""

from .rootsystem import RootSystem, Weight, build_root_system, parse_type
from .admissible import LevelData, orbit_representatives
from .cyclotomic import Cyc

__version__ = "0.1.0"

__all__ = ["RootSystem", "Weight", "build_root_system", "parse_type", "LevelData",
           "orbit_representatives", "Cyc", "__version__"]
