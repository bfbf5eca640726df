"""Almost contact B-metric Lie algebras: classification and closed-form group exponentials.

Structure constants are flat lists ``[C01^0, C01^1, C01^2, C02^0, ..., C12^2]``
with ``C_ij^k`` the ``E_k`` component of ``[E_i, E_j]``.
"""

import json as _json

from ._core import (
    CLASSES,
    ArgumentError,
    ClassificationError,
    Error,
    FamilyViolation,
    IoError,
    ValidationError,
    canonical_algebra,
    classify,
    closed_form_exp,
    dump_algebra,
    example_algebra,
    example_group_element,
    exp_coefficients,
    extract_profile,
    f_from_connection,
    f_from_structure,
    is_lie_algebra,
    jacobi_residual,
    parse_algebra_json,
    recover_parameters,
    reference_expm,
    rodrigues,
    signature,
    spectral_exp,
    table1_matrix,
    verify_report,
)

__version__ = "0.1.0"


def verify(samples=1000, seed=42, tol=1e-10, workers=0):
    """Run the seeded sweep and return the report as a dict."""
    return _json.loads(verify_report(samples, seed, tol, workers))
