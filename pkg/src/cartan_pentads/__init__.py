"""Exact computations with Cartan-type pentads.

A pentad P(r, n; A, D, Gamma) determines a Cartan matrix
C = Gamma . transpose(D) . A . D and a graded Lie algebra, built here
degree by degree over the rationals.
"""

from ._kernel import BACKEND
from .errors import *  # noqa: F401,F403
from .linalg import (QMatrix, Rational, block_compose, block_diag, det, format_rational,
                     image_basis, inverse, kernel_basis, parse_rational,
                     permutation_matrix, rank, rref, solve)
from .pentad import (CartanEquivalence, CartanMatrix, Pentad, PentadReport, analyze,
                     annihilator_basis, cartan_equivalent, cartan_matrix, direct_sum,
                     phi_map_vectors, phi_pairing_identity_check, shuffle_columns)
from .graded import (GradedAlgebra, GradedComponent, StructureReport, build_algebra,
                     build_local_part, center_dims, extend, prehomogeneity_witness,
                     structure_report, verify_invariant_form, verify_jacobi)
from .modules import (GradedModule, ModulePairing, WeightSpec, module_pairing,
                      negative_extension, positive_extension)
from .constructions import (CsFamilyMember, FiniteCartanData, cartan_data,
                            chain_append_weights, cs_family, finite_cartan_data,
                            from_contragredient, from_reductive, from_semisimple,
                            reductive_rep_embedding, scalar_augmented_embedding,
                            weight_from_coroot_values)
from .spec_io import dumps_spec, load_spec, pentad_from_dict, pentad_to_dict

__version__ = "0.1.0"
