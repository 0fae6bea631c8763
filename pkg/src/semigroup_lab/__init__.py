"""semigroup_lab: a workbench for finite semigroup computations.

Construct explicit finite semigroups (i-Catalan monoids, Brandt matrices,
triangular matrices over GF(2)), compute Green's relations and DS/LDS
membership, check identities and bounded isoterms, generate and verify the
nonfinite-basis identity family, and run bounded divisor searches.
"""

from .core import (
    DEFAULT_CAP,
    ClosureOverflowError,
    FiniteSemigroup,
    NotAssociativeError,
    PowerData,
    SemigroupError,
    adjoin_identity,
    direct_product,
    generate,
    power_data,
)
from .constructions import (
    BinaryMatrix,
    PartialTransformation,
    build_b2,
    build_b21,
    build_cyclic,
    build_ic,
    build_semilattice_chain,
    build_tn2,
    compose,
    embed_ic4,
    from_builtin_name,
    mat_mul,
    verify_homomorphism,
)
from .green import GreenData, green, in_DS, in_LDS, local_submonoid
from .words import (
    BudgetExceededError,
    Identity,
    alphabet,
    apply_identity,
    factor_occurrences,
    format_rewrite_step,
    is_isoterm_bounded,
    is_sparse,
    parse_identity,
    parse_word,
    project,
    satisfies,
    substitute,
    word_str,
)
from .nfb import (
    NfbInstance,
    build_instance,
    certificate_text,
    check_P0,
    check_P1,
    check_P2,
    ds_power_identity_check,
    parse_certificate,
    substitution_support,
    verify_holds,
)
from .divisor import (
    DivisorWitness,
    InconclusiveSearchError,
    LdsCrossValidation,
    cross_validate_lds,
    find_onto_morphism,
    generated_subsemigroup,
    has_divisor,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
