"""Numerical verification of h-convex function inequalities, scalar and operator."""
from .errors import (ConfigError, DegenerateError, DimensionError, DomainError, HConvexError,
                     NonConvergenceError, NonUnitalError, NotHermitianError)
from .hclass import (CertifiedPair, HFunction, ScalarFunction, builtin_catalog,
                     catalog_names, check_h_convex_scalar, check_subadditive,
                     check_submultiplicative, check_superadditive, check_supermultiplicative,
                     get_f, get_h)
from .matcore import (HermitianMatrix, SecantCoeffs, eig_h, loewner_leq, mat_func,
                      rand_hermitian, secant_coeffs)
from .posmaps import (Conjugation, MapFamily, Mixture, NormalizedTrace, Pinching,
                      random_family)
from .quadrature import QuadratureResult, integrate01
from .reports import IneqReport, PredicateReport, Verdict
from .scalar_ineq import VectorPoint, WeightVector
from .opineq import ComplementaryConstants, MercerChainReport, beta_compute, t0_compute
from .harness import SuiteConfig, SuiteReport, run_suite, search_counterexample

__version__ = "0.1.0"
