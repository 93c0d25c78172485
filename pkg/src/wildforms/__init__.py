"""Exact linear algebra for matrix tuples, skew-symmetric pencils and nilpotent algebras."""

from .errors import *  # noqa: F401,F403
from .fields import FiniteField, Q, Rationals
from .matrix import Matrix, det, inverse, rank
from .poly import Poly
from .tuples import EpsilonSignature, MatrixTuple, apply_congruence, apply_equivalence, apply_substitution
from .gadgets import MatrixPair, build_T, build_T_lemma42, intertwiner_similarity, witness_from_similarity
from .pencil import SkewPair, SkewPencilInvariants, emit_canonical_pair, pairs_congruent, pencil_invariants
from .mobius import INF, PointConfiguration, mobius_canonicalize
from .algebras import (
    CanonicalLabel, StructureConstants, adjoin_identity, check_semialgebra, emit_canonical_algebra,
    lie_classify, lie_isomorphic, pgroup_presentation, semialgebra_from_tuple, tuple_from_semialgebra,
)

__version__ = "0.1.0"
