"""Exact computation with the genus-2 skein algebra and its DAHA models.

Layers, bottom up:

* scalars / laurent / ratfunc -- exact Gaussian-rational Laurent
  polynomial arithmetic and lazy fractions with cross-multiplication
  equality;
* modp -- prime-field evaluation for probabilistic identity testing;
* skein -- the handlebody bases and the six loop actions;
* ops -- operator expressions, twisted commutators, parsing;
* relations -- generic identity sweeps and the presentation suites;
* daha -- rank-1 DAHA polynomial representations, intertwiners onto the
  skein-module blocks, Leonard pairs;
* genus2daha -- the genus-2 spherical DAHA operators, the alpha
  rescaling, and the correspondence with the skein action;
* cli -- command-line verification front end.
"""

from .laurent import LaurentPoly, qfact, qint
from .ratfunc import RatFunc
from .scalars import BACKEND, GaussRat
from .skein import (
    SkeinVector,
    TruncationError,
    act_dumbbell,
    act_theta,
    chebyshev_apply,
    eval_triple,
    eval_vector,
    is_admissible,
    is_dumbbell,
    monomial_to_theta,
)
from .ops import jones_value, parse_expr, qcomm

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "GaussRat",
    "LaurentPoly",
    "RatFunc",
    "SkeinVector",
    "TruncationError",
    "act_dumbbell",
    "act_theta",
    "chebyshev_apply",
    "eval_triple",
    "eval_vector",
    "is_admissible",
    "is_dumbbell",
    "jones_value",
    "monomial_to_theta",
    "parse_expr",
    "qcomm",
    "qfact",
    "qint",
]
