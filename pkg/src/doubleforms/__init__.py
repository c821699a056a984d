"""Exact computation with bi-forms and double forms.

Wedge products, Hodge stars, the Bianchi operator and self-dual splittings on
sparse rational bi-forms, with pointwise Euler and Pontryagin densities and
the one-sided Thorpe-type inequalities built on top.
"""

__version__ = "0.1.0"

from .biform import (
    BiForm,
    alt,
    alt_slots,
    basis,
    bianchi,
    inner,
    is_symmetric,
    norm_sq,
    project,
    star,
    top_coefficient,
    transpose,
    wedge,
)
from .chern_weil import (
    Density,
    PiMultiple,
    ThorpeReport,
    euler_density_norm,
    euler_density_pfaffian,
    pfaffian,
    pontryagin_density_norm,
    pontryagin_density_sym,
    thorpe_report,
)
from .curvature import (
    BundleCurvature,
    CurvatureTensor,
    constant_curvature,
    from_components,
    kulkarni_nomizu,
    power,
    random_curvature,
    thorpe_counterexample,
)
from .exterior import MultiIndex, SignedIndex, canonicalize, complement, wedge_basis

__all__ = [
    "BiForm",
    "BundleCurvature",
    "CurvatureTensor",
    "Density",
    "MultiIndex",
    "PiMultiple",
    "SignedIndex",
    "ThorpeReport",
    "alt",
    "alt_slots",
    "basis",
    "bianchi",
    "canonicalize",
    "complement",
    "constant_curvature",
    "euler_density_norm",
    "euler_density_pfaffian",
    "from_components",
    "inner",
    "is_symmetric",
    "kulkarni_nomizu",
    "norm_sq",
    "pfaffian",
    "pontryagin_density_norm",
    "pontryagin_density_sym",
    "power",
    "project",
    "random_curvature",
    "star",
    "thorpe_counterexample",
    "thorpe_report",
    "top_coefficient",
    "transpose",
    "wedge",
    "wedge_basis",
]
