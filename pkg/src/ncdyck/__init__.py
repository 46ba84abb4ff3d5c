"""Exact rank-2 cluster combinatorics: noncommutative and quantum variables
from compatible gradings of maximal Dyck paths, with finite-field
Grassmannian counting as an independent oracle."""

from .coeff import (CoeffPoly, ExchangePolySpec, Model, VLaurent, make_spec,
                    numeric_model, parse_spec_text, symbolic_model)
from .dyck import ChebyshevTable, DimVector, DyckPath, decompose_recursive, standard_path
from .grading import Grading, TransferError, enumerate_compatible, is_compatible
from .ncalg import Budget, NCLaurent, apply, forward_chain_for, iterate_chain, kontsevich
from .cluster import ClusterExpansion, verify_main, y_total
from .quantum import QTorusElem, pi_v, verify_quantum, z_combinatorial
from .quiver import (CountingPolynomial, FFField, FieldTower, ValuedRep,
                     cluster_character, counting_polynomial, euler,
                     grassmannian_count, rigid_rep, verify_counting)

__version__ = "0.1.0"
