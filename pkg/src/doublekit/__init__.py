"""Doubles of modules embedded in free modules over Q[x1, ..., xn].

The double of an element h is the pair (h(x), h(y)) over the ring with a second
copy of the variables; the double of a module is generated by the doubles of
its elements.  Homomorphisms, quotients, complexes and maps along map germs
double as well.
"""

from .complexes import (
    ChainComplex, ChainMap, DegreeOneMap, double_chain_map, double_complex,
    double_degree_one_map, is_complex, is_exact, is_exact_at, is_homotopy, tilde,
)
from .double import (
    DoubleContext, DoubledModule, GeneratorImageHom, RelativeMap, context_for,
    direct_sum_iso, double_element, double_matrix, double_matrix_hom, double_module,
    double_quotient_element, double_quotient_module, format_doubled_generators,
    functor_check, relative_double_hom,
)
from .errors import (
    DoubleKitError, IllDefinedHom, NotContained, ParseError, RankMismatch, RingMismatch,
)
from .groebner import INFINITE, groebner_basis
from .instances import InstanceSpec, gen_submodule
from .modules import (
    MatrixHom, ModuleElement, PresentedQuotient, Submodule, colength, contains,
    direct_sum, element, generic_rank, hom_compose, image, intersection, is_injective,
    is_submodule, is_surjective, is_zero_map, kernel, lift, module_eq, syzygies,
)
from .poly import QQ, PolyRing, Polynomial, RingMorphism, parse_poly
from .session import Session, dump_objects, load_session, parse_session
from .verifier import PropertyReport, run_property

__version__ = "0.1.0"

__all__ = [
    "ChainComplex", "ChainMap", "DegreeOneMap", "double_chain_map", "double_complex",
    "double_degree_one_map", "is_complex", "is_exact", "is_exact_at", "is_homotopy",
    "tilde", "DoubleContext", "DoubledModule", "GeneratorImageHom", "RelativeMap",
    "context_for", "direct_sum_iso", "double_element", "double_matrix", "double_matrix_hom",
    "double_module", "double_quotient_element", "double_quotient_module",
    "format_doubled_generators", "functor_check", "relative_double_hom", "DoubleKitError",
    "IllDefinedHom", "NotContained", "ParseError", "RankMismatch", "RingMismatch",
    "INFINITE", "groebner_basis", "InstanceSpec", "gen_submodule", "MatrixHom",
    "ModuleElement", "PresentedQuotient", "Submodule", "colength", "contains", "direct_sum",
    "element", "generic_rank", "hom_compose", "image", "intersection", "is_injective",
    "is_submodule", "is_surjective", "is_zero_map", "kernel", "lift", "module_eq",
    "syzygies", "QQ", "PolyRing", "Polynomial", "RingMorphism", "parse_poly", "Session",
    "dump_objects", "load_session", "parse_session", "PropertyReport", "run_property",
]
