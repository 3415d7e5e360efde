"""Exact relative homological algebra over Z/nZ and Z."""

from .invariants import (
    ExtResult,
    ResolutionCertificate,
    ResolutionComplex,
    build_resolution,
    check_E,
    check_R,
    check_S,
    check_condition,
    cohomology_of_chain,
    relative_ext,
    schanuel_iterate,
    schanuel_step,
    verify_resolution,
)
from .lab import (
    LabCase,
    LabConfig,
    LabReport,
    UniverseSpec,
    battery,
    enumerate_modules,
    reproduction_ids,
    run_reproduction,
    run_suite,
    suite_ids,
)
from .modules import (
    INTEGERS,
    HomGroup,
    ImageCokernel,
    KernelResult,
    ModuleMorphism,
    ModuleObject,
    RingSpec,
    SubmoduleResult,
    decompose,
    direct_sum,
    group_expression,
    hom_count,
    hom_group,
    image_cokernel,
    is_automorphism,
    is_epi,
    is_isomorphism,
    is_mono,
    kernel,
    module_expression,
    solve_factorization,
    solve_left_factor,
    submodule,
    sum_with_maps,
    torsion_submodule,
)
from .precover import (
    AllowedSet,
    EquivalenceWitness,
    Precover,
    PrecoverClass,
    build_precover,
    class_closed_under_summands,
    class_expression,
    class_weakly_closed,
    contains,
    cover_of,
    endomorphism_coset,
    equivalent,
    has_epi_precover,
    indecomposable_of_type,
    is_almost_epi,
    is_separating,
    minimize_to_cover,
    mono_precovers_are_iso,
    test_objects,
    trace_submodule,
    verify_precover,
)
from .snf import smith_normal_form, snf_data
from .verdicts import ConditionVerdict

__all__ = [
    "AllowedSet",
    "ConditionVerdict",
    "EquivalenceWitness",
    "ExtResult",
    "HomGroup",
    "INTEGERS",
    "ImageCokernel",
    "KernelResult",
    "LabCase",
    "LabConfig",
    "LabReport",
    "ModuleMorphism",
    "ModuleObject",
    "Precover",
    "PrecoverClass",
    "ResolutionCertificate",
    "ResolutionComplex",
    "RingSpec",
    "SubmoduleResult",
    "UniverseSpec",
    "battery",
    "build_precover",
    "build_resolution",
    "check_E",
    "check_R",
    "check_S",
    "check_condition",
    "class_closed_under_summands",
    "class_expression",
    "class_weakly_closed",
    "cohomology_of_chain",
    "contains",
    "cover_of",
    "decompose",
    "direct_sum",
    "endomorphism_coset",
    "enumerate_modules",
    "equivalent",
    "group_expression",
    "has_epi_precover",
    "hom_count",
    "hom_group",
    "image_cokernel",
    "indecomposable_of_type",
    "is_almost_epi",
    "is_automorphism",
    "is_epi",
    "is_isomorphism",
    "is_mono",
    "is_separating",
    "kernel",
    "minimize_to_cover",
    "module_expression",
    "mono_precovers_are_iso",
    "relative_ext",
    "reproduction_ids",
    "run_reproduction",
    "run_suite",
    "schanuel_iterate",
    "schanuel_step",
    "smith_normal_form",
    "snf_data",
    "solve_factorization",
    "solve_left_factor",
    "submodule",
    "suite_ids",
    "sum_with_maps",
    "test_objects",
    "torsion_submodule",
    "trace_submodule",
    "verify_precover",
    "verify_resolution",
]
