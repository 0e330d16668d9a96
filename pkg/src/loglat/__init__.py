"""loglat: a laboratory for the arithmetic of log-unit lattices.

Exact and certified-precision computation of log-unit lattices, regulators,
invariant Gram forms on group rings, Gassmann data, sign-orbit elimination
polynomials, and empirical integer-relation probes of the conditional
independence statements they feed.
"""

from .ball import BigComplex, BigReal, pi_ball, rational_reconstruct
from .bundles import FieldBundle
from .elimination import (MultiPoly, desquare, format_poly, parse_poly,
                          sign_orbit_product, vanishing_check)
from .galois import (GaloisAction, GramForm, change_of_basis_certificate,
                     gram_form, norm_to_subfield, recover_galois_action,
                     subfield_log_basis, weak_minkowski_check,
                     weak_minkowski_search)
from .groupring import (GroupRing, RationalIdempotent, SymGBasis,
                        complex_characters, compositum_decomposition,
                        isotypic_dims, isotypic_split, psi_map,
                        rational_idempotents, sym_g_space)
from .groups import (PermGroupData, catalog_upto_24, conjugacy_classes,
                     fano_group, gassmann_equivalent)
from .lattice import (GramMatrix, IsometryVerdict, isometry_test, lll_reduce,
                      shortest_vectors, similarity_test)
from .numberfield import (FieldElement, LogLattice, NumberField, UnitSystem,
                          build_field, include_sublattice, log_embed,
                          log_lattice, regulator)
from .ratpoly import RationalPoly
from .relations import RelationResult, integer_relation, pslq_crosscheck
from .residues import (ProbeReport, ResidueRecord, genericity_probe,
                       relation_probe, residue_at_one)
from .reports import pair_report, report_to_text
from .roots import RootBall, poly_roots
from .wedderburn import factor_nu, gram_residual, residual_nu, solve_gram_preimage

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
