"""Invariants of orbit configuration spaces of small covers and quasi-toric manifolds."""

from .combinatorics import Partition, coeff_bruteforce, coeff_closed, partitions
from .complexes import (FacePair, complement_vertex_map, k_ij, k_p, k_pm, l_pm,
                        locally_nice_check, maximal_disjoint_pairs, sd_boundary_simplex)
from .cover import (CoverModel, StandardSpace, inclusion_chain_map, polygon_cover_model,
                    simplex_cover_model, standard_complex, validate_cover_model)
from .errors import TorcfgError
from .euler import (chi_classical_closed, chi_classical_partition, chi_moment_angle_torus,
                    chi_orbit_config, chi_real_moment_angle)
from .homology import (ChainComplex, ChainMap, HomologyResult, SimplicialComplex, betti,
                       homology, oriented_chain_complex, reduced_betti)
from .linalg import Q, Z, Z2, SparseMatrix, smith_normal_form
from .polytope import (SimplePolytope, build_polytope, builtin, cube, diagonal_preimage_cell_vector,
                       eval_h, f_vector, h_polynomial, load_polytope, ngon, simplex)
from .spectral import (DoubleComplex, SpectralPages, convergence_report, double_complex, pages,
                       row_doubling_check, total_homology)

__version__ = "0.1.0"
