"""
All configurable parameters for the modular-coincidence analyzer.

Every value can be overridden through the environment (or a .env file).
Analysis functions take explicit keyword overrides and fall back to the
values below when none is given.

BUDGETS (hard caps, exceeding one is a typed error, never a silent cut):
- MAX_STATES: vertices of the substitution graph (m-tuples of colors)
- DIRECT_MAX_MAPS: composed maps materialized by the direct oracle
- MAX_PATCH_POINTS: points of a single generated patch
- CENSUS_MAX_CANDIDATES: substitutions enumerated by one census run

DEPTH CAPS:
- MAX_DEPTH: patch depth for lattice and cluster stabilization
- COLLAR_MAX_RADIUS: largest radius tried by the collaring R-scan
"""

import os

from dotenv import load_dotenv

load_dotenv()

# --- Logging ---
LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO")
LOG_FILE: str = os.getenv("LOG_FILE", "./logs/modco.log")
LOG_TO_FILE: bool = os.getenv("LOG_TO_FILE", "true").lower() == "true"

# --- Lattice arithmetic ---
# Eigenvalues with |lambda| - 1 below this margin make Q non-expansive
EXPANSIVE_MARGIN: float = float(os.getenv("MODCO_EXPANSIVE_MARGIN", "1e-9"))

# --- Patch generation & stabilization ---
MAX_DEPTH: int = int(os.getenv("MODCO_MAX_DEPTH", "32"))
STABLE_STEPS: int = int(os.getenv("MODCO_STABLE_STEPS", "2"))
MAX_PATCH_POINTS: int = int(os.getenv("MODCO_MAX_PATCH_POINTS", "2000000"))

# --- Coincidence search ---
MAX_STATES: int = int(os.getenv("MODCO_MAX_STATES", "1000000"))
DIRECT_MAX_MAPS: int = int(os.getenv("MODCO_DIRECT_MAX_MAPS", "2000000"))

# --- Collaring ---
COLLAR_MAX_RADIUS: int = int(os.getenv("MODCO_COLLAR_MAX_RADIUS", "32"))

# --- Census ---
CENSUS_MAX_CANDIDATES: int = int(os.getenv("MODCO_CENSUS_MAX_CANDIDATES", "250000"))
CENSUS_WORKERS: int = int(os.getenv("MODCO_CENSUS_WORKERS", str(os.cpu_count() or 1)))
CENSUS_CHUNK_SIZE: int = int(os.getenv("MODCO_CENSUS_CHUNK_SIZE", "64"))
