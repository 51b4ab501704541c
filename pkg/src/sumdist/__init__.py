"""Bounds on the sum of distances of spherical codes, code families and
Stolarsky-type discrepancy identities on the sphere and the Hamming cube."""

from .bounds import (
    BoundReport,
    bound_report,
    sandwich,
    ulb_closed,
    ulb_pipeline,
    uub_closed,
    uub_pipeline,
)
from .discrepancy import binary_discrepancy, lambda_table, spherical_discrepancy
from .errors import (
    ConsistencyError,
    DistributionValidationError,
    DomainError,
    InfeasibleParametersError,
    ParityError,
    PoleError,
    RangeWarning,
    SegmentError,
)
from .levenshtein import lev_bound, quadrature_system, select_degree

__version__ = "0.1.0"
