"""Exact verification of the finite computations behind a degree-7 cyclic
cover construction of a fake projective plane."""

from .exactcore import IntMatrix, determinant, inertia, rank, smith_normal_form, solve_rational
from .latticekit import (Lattice, discriminant_group, disc_bilinear, enumerate_integral_overlattices,
                         p_elementary_and_length, sublattice)
from .report import ClaimReport, emit_report, parse_report
from .surfacecalc import ConfigError, SurfaceConfig, build_config_X, build_config_Y, load_config

__version__ = "0.1.0"

__all__ = [
    "ClaimReport", "ConfigError", "IntMatrix", "Lattice", "SurfaceConfig",
    "build_config_X", "build_config_Y", "determinant", "disc_bilinear", "discriminant_group",
    "emit_report", "enumerate_integral_overlattices", "inertia", "load_config",
    "p_elementary_and_length", "parse_report", "rank", "smith_normal_form", "solve_rational",
    "sublattice",
]
