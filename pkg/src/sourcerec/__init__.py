"""Exact source recovery for discrete-time linear dynamics from sensor samples."""

from .completeness import (EigenvalueOnePresent, NotRecoverable, ProblemDef,
                           Verdict, auto_test, has_eigenvalue_one,
                           placement_default, placement_search,
                           single_source_construct, single_source_exists,
                           single_vector_test, test_general, test_rank,
                           verify_certificate)
from .krylov import (AnnihilatorResult, ChainEntry, KrylovChain,
                     augmented_orbit_space, characteristic_space,
                     conductor_chain, lambda_accumulate, minimal_annihilator)
from .linalg import (Mat, NoSolution, SubspaceBasis, ZeroVector, inner,
                     kernel, orthogonal_projector, rank, solve, span_of)
from .poly import Poly, hat_transform, hermite_interpolant, poly_gcd, poly_lcm
from .recovery import (InsufficientSamples, MeasurementSeries, NotComplete,
                       OrthogonalSensor, RecoveryPlan, Trajectory, build_plan,
                       eigen_shortcut_recover, recover, simulate)
from .scalars import QI, ToleranceProfile, format_exact, parse_exact
from .spectral import (BadFactorization, fitting_projector_eig1,
                       minimal_polynomial, spectral_projectors)

__version__ = "0.1.0"

__all__ = [
    "AnnihilatorResult", "BadFactorization", "ChainEntry",
    "EigenvalueOnePresent", "InsufficientSamples", "KrylovChain", "Mat",
    "MeasurementSeries", "NoSolution", "NotComplete", "NotRecoverable",
    "OrthogonalSensor", "Poly", "ProblemDef", "QI", "RecoveryPlan",
    "SubspaceBasis", "ToleranceProfile", "Trajectory", "Verdict", "ZeroVector",
    "augmented_orbit_space", "auto_test", "build_plan",
    "characteristic_space", "conductor_chain", "eigen_shortcut_recover",
    "fitting_projector_eig1", "format_exact", "has_eigenvalue_one", "inner",
    "hat_transform", "hermite_interpolant", "kernel", "lambda_accumulate",
    "minimal_annihilator", "minimal_polynomial", "orthogonal_projector",
    "parse_exact", "placement_default", "placement_search", "poly_gcd",
    "poly_lcm", "rank", "recover", "simulate", "single_source_construct",
    "single_source_exists", "single_vector_test", "solve", "span_of",
    "spectral_projectors", "test_general", "test_rank", "verify_certificate",
]
