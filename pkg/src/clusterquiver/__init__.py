"""Exact computational engine for cluster algebras from valued quivers."""

from .laurent import InexactDivisionError, LaurentPoly
from .quiver import (
    ExchangeMatrix,
    Permutation,
    QuiverClass,
    QuiverInvariantError,
    SymmetrizerError,
    ValuedQuiver,
    apply_permutation,
    build_quiver,
    enumerate_quiver_class,
    find_realizing_sequence,
    find_symmetry,
    freeze,
    infer_symmetrizer,
    matrix_to_quiver,
    mutate_matrix,
    mutate_quiver,
    mutate_quiver_via_matrix,
    normalize_symmetrizer,
    opposite_quiver,
    quiver_to_matrix,
    weight,
)
from .seeds import (
    CapExhaustedError,
    ClusterPattern,
    DEFAULT_MODE,
    EqualityMode,
    FinitenessRequiredError,
    FinitenessResult,
    PathTrace,
    STRICT,
    SYMMETRIC,
    Seed,
    apply_word,
    cancel_word,
    enumerate_cluster_pattern,
    initial_seed,
    is_finite_type,
    mutate_seed,
    permute_seed,
    seeds_equal,
)
from .groups import (
    CosetSet,
    EquivalenceResult,
    GroupCaps,
    GroupCapError,
    GroupElement,
    RootedLoop,
    RootedMutationGroup,
    cluster_order,
    cluster_set,
    compute_rooted_group,
    coset_set,
    enumerate_rooted_loops,
    equivalent,
    is_global_loop,
    is_rooted_loop,
    rebase_group,
    reduce_word,
    reverse_word,
)
from .classify import (
    ClassificationReport,
    IsoReport,
    classify_finite_type,
    dynkin_label,
    isomorphic,
    recognize_weight4_rank3,
)

__version__ = "0.1.0"
