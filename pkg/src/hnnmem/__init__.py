"""Membership problems in HNN extensions of free groups whose associated
subgroups are matched by a signed bijection of basis letters, applied to
the prefix membership problem of one-relator groups on relators of the
form w t^{-2s} w."""

from .basis import BasisRewriter, FreeBasis, expand_from_basis, rewrite_to_basis, verify_free_basis
from .elementary import (
    InternalCheckError,
    MrfSet,
    cancel_at,
    cancellation_sites,
    mrf,
    mrf_restricted,
    semicommutation_class,
    semicommutation_moves,
    words_equal_via_mrf,
)
from .hnn import (
    BlockWord,
    HnnExtension,
    ValidationError,
    hnn_reduce,
    is_hnn_reduced,
    to_block_form,
    validate_extension,
    words_equal,
)
from .membership import CompatibilityError, SubmonoidSpec, check_compatibility, decide_membership
from .moldavanskii import MoldavanskiiData, RhoData, moldavanskii_extension_data, rho_inverse, rho_t, xi_bounds
from .oracle import SaturatedAutomaton, benois_member, bfs_member, scramble
from .pipeline import (
    PipelineData,
    WtwSpec,
    build_pipeline,
    prefix_generators,
    prefix_member,
    translate_query,
    validate_wtw,
)
from .specfile import SpecFile, SpecFileError, parse_spec, serialize_spec
from .words import (
    SignedLetter,
    Word,
    cyclic_reduce,
    exponent_sum,
    format_word,
    free_reduce,
    letter,
    parse_word,
    prefixes,
)

__all__ = [name for name in dir() if not name.startswith("_")]
