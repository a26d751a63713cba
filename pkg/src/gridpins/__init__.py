"""Simple permutations, pin sequences, sawtooth structures, and monotone
gridding experiments: a library plus the ``gridpins`` command-line tool."""

from .errors import DomainError
from .perm import (
    Decomposition,
    Interval,
    Permutation,
    Rectangle,
    apply_symmetry,
    complement,
    contains,
    find_embedding,
    flatten,
    inflate,
    intervals,
    inverse,
    is_simple,
    parse_permutation,
    rect_hull,
    region_of,
    restrict,
    reverse,
    substitution_decompose,
    symmetry_orbit,
)
from .pins import (
    ExtensionRecord,
    PinSequence,
    PinWord,
    build_extended_spiral,
    classify_spiral,
    count_turns,
    extension_count,
    find_extensions,
    gen_spiral,
    gen_spiral_with_extensions,
    iter_pin_sequences,
    realize_pin_word,
    right_reaching,
    validate_pin_sequence,
)
from .structures import (
    gen_increasing_oscillation,
    gen_monotone_sum,
    gen_parallel_sawtooth,
    gen_sliced_wedge,
    gen_wedge_sawtooth,
    longest_skew12,
    longest_sum21,
    max_increasing_oscillation,
    max_sawtooth,
    max_sliced_wedge,
    rho,
)
from .gridding import (
    ClassSpec,
    Gridding,
    ScanReport,
    bound_f,
    bound_g,
    bound_h,
    bound_rect,
    criterion_scan,
    enumerate_class,
    find_monotone_gridding,
    obstruction_scan,
    verify_gridding,
)

__version__ = "0.1.0"
