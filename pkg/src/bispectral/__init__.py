"""Exact-arithmetic solver for polynomial eigenproblems of differential operators.

Direct problem: from ``L = sum a_m(x) D^m`` (``deg a_m <= m``) compute the
eigenvalues and monic eigenpolynomials, plus the recurrence they satisfy.
Inverse problem: from eigenvalues and monic eigenpolynomials recover ``L``.
"""
from .delta import DeltaTable, check_truncation, delta_from_operator, operator_from_delta
from .direct import (EigenSystem, check_distinct_eigenvalues, eigenvalue, solve_direct_compositions,
                     solve_direct_triangular, verify_eigensystem)
from .errors import (BispectralError, DegenerateSpectrum, DegreeBound, EmptyOperator, InsufficientRows,
                     MalformedInput, NoTruncationFound, NonconstantZeroTerm, ParseError, VerificationFailed)
from .inverse import (EigenData, delta_from_eigendata_determinant, delta_from_eigendata_recursive,
                      reconstruct_operator, verify_delta_identity)
from .opcore import DifferentialOperator, apply_operator, make_operator, parse_operator, pretty_print
from .ratpoly import DensePolynomial, Rational, binomial, poly_derivative, poly_mul
from .recurrence import (RecurrenceRelation, check_recurrence_condition, conjecture_scan, detect_bandwidth,
                         expand_x_times_p)

__version__ = "0.1.0"
