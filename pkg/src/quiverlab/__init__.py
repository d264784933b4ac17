"""Bound quiver algebras, syzygies and block structure of biregular Gabriel quivers."""
from .algebra import (AlgebraBasis, CartanMatrix, DimensionVector, Inadmissible, NotFiniteDimensional,
                      Presentation, PresentationError, Relation, cartan_matrix, compute_basis,
                      idempotent_algebra, minimality_check, precedes_I, relation, socle_and_radical,
                      symmetry_diagnostics)
from .corpus import GlueSpec, glue_blocks, named_corpus, random_biregular, random_glue_spec
from .fields import QQ, PrimeField
from .homology import (is_isomorphic, period4_diagnostics, period_of_simple, projective_cover,
                       projective_module, simple_module, syzygy, syzygy_chain)
from .patterns import PatternSpec, match_pattern, registry_list, scan_forbidden
from .quiver import Arrow, Block, Path, Quiver, degree_profile, enumerate_paths, find_blocks, is_biregular
from .verify import CheckResult, main_theorem_report

__version__ = "0.1.0"
