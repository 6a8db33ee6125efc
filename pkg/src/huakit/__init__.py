"""huakit: exact computation with finite Moufang sets, quadratic Jordan
algebras, nearfields and sharply multiply transitive permutation groups.

Everything is table driven and exhaustive; no floating point, no
randomness without an explicit seed.
"""

__version__ = "0.1.0"

from .fields import (FieldAutomorphism, FieldElement, FiniteField, frobenius,
                     make_field, vandermonde_solve)
from .perm import PermGroup, Permutation, closure, transitivity_report
from .jordan import (QuadraticJordan, check_axioms, field_jordan,
                     is_division, jordan_inverse, matrix_jordan)
from .mset import (Endo, MoufangSetData, RootGroupModel, build_moufang,
                   check_moufang_criterion, compute_centroid, from_jordan,
                   hua_map, hua_subgroup, is_special, little_projective_group,
                   power, verify_identity_suite)
from .nearfield import (Coupling, KTAutomorphism, Nearfield, check_kt,
                        dickson, make_kt_sigma, pseudo_square, t3_group)
from .ultra import SetFamily, is_filter, is_ultrafilter, principal_family
from .report import CheckResult, Report
