"""Regular sets, perfect codes and total perfect codes in Cayley graphs of finite groups."""

from .cayley import (CayleyGraph, ConnectionSet, ConnectionSetError, cayley_graph,
                     make_connection_set, neighbors)
from .construction import (ConstructionTrace, CosetDecomposition, OrderedS0, canonical_k,
                           complement_outside, complement_to_full, construct_connection_set,
                           decompose_coset, inverse_closed_transversal, order_s0,
                           regular_set_connection)
from .equitable import (QuotientMatrix, ab_from_mu, eigenvalue_membership, integer_determinant,
                        mu_from_quotient, quotient_matrix)
from .groups import (CosetPartition, ElementSet, GroupSpecError, GroupTable, build_group,
                     element_order, generate_subgroup, inverse_closed, is_normal, left_cosets,
                     normal_subgroups, right_cosets, subgroups)
from .regular import (ElementMultiset, NotRegular, RegularSetCertificate, check_regular_set,
                      check_regular_set_ring, check_subgroup_regular, condition1_holds,
                      condition1_witness, is_perfect_code, is_total_perfect_code, ring_multiply)
from .search import (BudgetExceeded, FeasibilityTable, enumerate_regular_sets, feasible_ab_table,
                     inverse_closed_left_transversal, perfect_code_connection_exists,
                     question1_probe)

__version__ = "0.1.0"
