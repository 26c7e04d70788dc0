from .field import Field, GF2, QQ
from .sparse import SparseMatrix, Echelon, axpy, rank_of_vectors
from .graded import GradedVectorSpace
from .complex import (ChainComplex, ChainComplexError, ChainMap, Homology, homology,
                      induced_map, coequalizer, graded_coequalizer, Coequalizer, stack_rank)
from .simplify import gaussian_simplify, Simplification

__all__ = [
    "Field", "GF2", "QQ", "SparseMatrix", "Echelon", "axpy", "rank_of_vectors",
    "GradedVectorSpace", "ChainComplex", "ChainComplexError", "ChainMap", "Homology",
    "homology", "induced_map", "coequalizer", "graded_coequalizer", "Coequalizer",
    "stack_rank", "gaussian_simplify", "Simplification",
]
