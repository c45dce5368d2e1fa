"""
Configuration module for eigencone.
"""
import os
from typing import Dict, Any
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

# Base paths
BASE_DIR = Path(__file__).resolve().parent.parent
LOG_DIR = BASE_DIR / "logs"

# System Configuration
SYSTEM_CONFIG = {
    # Logging level
    "log_level": os.getenv("LOG_LEVEL", "INFO"),

    # Rotating log files under logs/ in addition to stderr
    "log_to_file": os.getenv("LOG_TO_FILE", "false").lower() == "true",
}

# Numerical Parameters
NUMERICS_CONFIG = {
    # Crossing threshold for the singular line, relative to the curve's max r
    "crossing_eps_rel": float(os.getenv("CROSSING_EPS_REL", "1e-9")),

    # Curves spending more than this share of samples within eps of L are degenerate
    "linger_fraction": float(os.getenv("LINGER_FRACTION", "0.25")),

    # Fixed RK4 substeps per sample interval
    "rk4_substeps": int(os.getenv("RK4_SUBSTEPS", "4")),

    # Central finite-difference step, scaled by max(r, 1)
    "fd_step_rel": float(os.getenv("FD_STEP_REL", "1e-6")),

    # Second-difference step for Hessian checks, scaled by the rest length
    "hessian_fd_step_rel": float(os.getenv("HESSIAN_FD_STEP_REL", "1e-4")),

    # Trapezoid points for the Stokes curvature integral
    "stokes_points": int(os.getenv("STOKES_POINTS", "10000")),

    # Relative singular-value threshold for metric kernels
    "kernel_tol": float(os.getenv("KERNEL_TOL", "1e-10")),

    # Coincidence tolerance for the endpoints of closed curves
    "closure_tol": float(os.getenv("CLOSURE_TOL", "1e-12")),
}

# Benchmark Parameters
BENCH_CONFIG = {
    "repeats": int(os.getenv("BENCH_REPEATS", "3")),
    "min_radius": float(os.getenv("BENCH_MIN_RADIUS", "0.1")),
    "min_samples": int(os.getenv("BENCH_MIN_SAMPLES", "10")),
}

# Output formats
OUTPUT_CONFIG = {
    "csv_float_format": "%.17g",
}


def get_config() -> Dict[str, Any]:
    """
    Returns the complete configuration dictionary.
    """
    return {
        "system": SYSTEM_CONFIG,
        "numerics": NUMERICS_CONFIG,
        "bench": BENCH_CONFIG,
        "output": OUTPUT_CONFIG,
        "paths": {
            "base_dir": str(BASE_DIR),
            "log_dir": str(LOG_DIR),
        }
    }


def get_env_file_template() -> str:
    """
    Returns a template for the .env file.
    """
    return """# eigencone Environment Variables

# System Configuration
LOG_LEVEL=INFO  # DEBUG, INFO, WARNING, ERROR, CRITICAL
LOG_TO_FILE=false

# Numerical Parameters
CROSSING_EPS_REL=1e-9
LINGER_FRACTION=0.25
RK4_SUBSTEPS=4
FD_STEP_REL=1e-6
HESSIAN_FD_STEP_REL=1e-4
STOKES_POINTS=10000
KERNEL_TOL=1e-10
CLOSURE_TOL=1e-12

# Benchmark Parameters
BENCH_REPEATS=3
BENCH_MIN_RADIUS=0.1
BENCH_MIN_SAMPLES=10
"""
