"""Invariants of one-relator pro-p presentations at finite rank.

Cup-product Gram forms, Demushkin tests via two independent routes,
skew-symmetric form manipulation over GF(p), property-P character solving,
and the classification families' relator constructors.
"""

from .characters import (
    Character,
    PropertyPCertificate,
    certify_property_p,
    character_image,
    find_property_p_character,
    has_property_p,
)
from .errors import (
    DegenerateFormError,
    DomainError,
    GeneratorRangeError,
    NotAUnitError,
    NotPrimeError,
    ParseError,
    PrecisionError,
    SearchBoundError,
    WordSyntaxError,
)
from .forms import (
    FormFamily,
    SkewForm,
    Subspace,
    family_form,
    is_nondegenerate,
    isometric,
    nondegenerate_hull,
    project_onto,
    radical,
    symplectic_basis,
    t_invariant,
)
from .modular import (
    PrimePower,
    U2Descriptor,
    classify_z2_subgroup,
    inv_mod,
    is_prime,
    p_valuation,
)
from .presentations import (
    InvariantReport,
    Presentation,
    SubgroupReport,
    abelianization,
    analyze,
    canonical_relator,
    cup_form,
    dump_presentation,
    h2_of_index_p_subgroup,
    is_demushkin,
    is_minimal,
    load_presentation,
    pro2_relator,
    q_invariant,
    relator_from_form,
    s_family_relator,
    subgroup_rank,
    truncate,
)
from .words import (
    Commutator,
    DegreeTwoExpansion,
    Generator,
    GroupWord,
    Identity,
    Inverse,
    Power,
    Product,
    SchreierRewrite,
    exponent_vector,
    flatten,
    fox_eval,
    free_reduce,
    gen,
    magnus_degree2,
    parse_word,
    product,
    project_word,
    rewrite_index_p,
    substitute,
    word_to_text,
)

__version__ = "0.1.0"
