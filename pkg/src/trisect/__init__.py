"""Group trisections: words, folding, presentations, cubes and their checks."""
from .diagram import CurveWord, FamilyVerdict, RelHomologyClass, check_diagram_family, independent, kernel_contains, rel_homology_class
from .dsl import Document, parse, parse_word, serialize
from .errors import (
    AlphabetMismatchError,
    DSLError,
    MissingImageError,
    ParameterError,
    ShapeError,
    TrisectError,
    UnvalidatedHomError,
)
from .presentation import (
    DEFAULT_BUDGET,
    AbelianInvariants,
    Certificate,
    Presentation,
    Verdict,
    abelianize,
    certify_free,
    certify_trivial,
    free_basis_rewrite,
    free_group,
    std_compression,
    std_surface,
    tietze_simplify,
)
from .smith import SmithForm, smith_normal_form
from .stallings import FoldedGraph, contains, fold, subgroup_rank
from .trisection import (
    CubeMorphism,
    GroupHom,
    Outcome,
    TrisectionCube,
    TrisectionParams,
    VerificationReport,
    check_boundary_condition,
    check_surjective,
    embed_closed,
    euler_char_closed,
    pushout,
    standard_pair,
    total_group,
    validate_hom,
    verify_cube,
    verify_morphism,
)
from .words import Alphabet, Word, commutator, free_reduce

__version__ = "0.1.0"
