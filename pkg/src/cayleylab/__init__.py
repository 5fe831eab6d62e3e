"""cayleylab: Gaussian series over finite-group regular representations.

Construct groups as Cayley tables, extract irreducible degree multisets,
sample spectral norms of Gaussian Cayley matrices (directly or through the
block-diagonal equivalent), compute the comparison bounds sigma / v /
w-certificate / m(G), and search for low-discrepancy sign colorings.
"""
from ._backend import active_backend
from .bounds import (BoundsReport, bounds_report, m_of_group, sigma_of,
                     v_of, v_of_cayley_generic, w_certificate)
from .errors import (CapExceededError, CayleyLabError, ConvergenceError,
                     DegenerateSpectrumError, GroupError, ValidationError)
from .groups import (FiniteGroup, ORDER_CAP, abelian, alternating,
                     commutator_subgroup_order, conjugacy_classes, cyclic,
                     dihedral, from_generators, from_json, is_simple,
                     make_group, multiply, parse_group_spec, psl2,
                     square_element, subgroup_closure, symmetric, to_json,
                     validate)
from .regular import (IrrepSpectrum, RegularRep, class_sum_matrix,
                      dixon_oracle, irrep_degrees, load_or_compute_spectrum,
                      s_matrix)
from .rng import substream_rng
from .sampling import (GaussianSeries, NormEstimate, dilate,
                       estimate_expected_norm, sample_cayley, sample_norms,
                       spectral_norm)
from .spencer import (Coloring, abelian_reduction, abelian_sign_norm,
                      brute_force, character_matrix, check_coloring,
                      coloring_norm, local_search, local_search_multi,
                      random_best_of_k)

__version__ = "0.1.0"

__all__ = [
    "BoundsReport", "CapExceededError", "CayleyLabError", "Coloring",
    "ConvergenceError", "DegenerateSpectrumError", "FiniteGroup",
    "GaussianSeries", "GroupError", "IrrepSpectrum", "NormEstimate",
    "ORDER_CAP", "RegularRep", "ValidationError", "abelian",
    "abelian_reduction", "abelian_sign_norm", "active_backend",
    "alternating", "bounds_report", "brute_force", "character_matrix",
    "check_coloring", "class_sum_matrix", "coloring_norm",
    "commutator_subgroup_order", "conjugacy_classes", "cyclic",
    "dihedral", "dilate", "dixon_oracle", "estimate_expected_norm",
    "from_generators", "from_json", "irrep_degrees", "is_simple",
    "load_or_compute_spectrum", "local_search", "local_search_multi",
    "m_of_group", "make_group", "multiply", "parse_group_spec", "psl2",
    "random_best_of_k", "s_matrix", "sample_cayley", "sample_norms",
    "sigma_of", "spectral_norm", "square_element", "subgroup_closure",
    "substream_rng", "symmetric", "to_json", "v_of", "v_of_cayley_generic",
    "validate", "w_certificate",
]
