"""Numerical checks of sharp Toeplitz-determinant bounds for subordination classes
of holomorphic mappings on p-ball circular domains."""

__version__ = "0.1.0"

from .bounds import CoeffPair, bound_b2, bound_t22, bound_t31, det_t22, det_t31, fs_bound
from .domains import DomainSpec, grad_rho, lemma1_check, rho
from .generators import GeneratorPhi, condition_thm1, condition_thm2, halfplane, order_alpha
from .generators import phi_inverse_series, phi_series, strong_beta
from .mappings import MappingZG, directional_b, extremal_G, from_member, transfer_form
from .members import ClassMember, SchwarzSpec, member_from_schwarz, random_schwarz
from .search import SearchResult, local_refine, random_search, rotation_sweep
from .series import TruncatedSeries
