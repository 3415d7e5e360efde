"""Precover construction, class predicates, and equivalence checks."""

import pytest

import oracles
from relhom.modules import (
    INTEGERS,
    ModuleMorphism,
    ModuleObject,
    RingSpec,
    direct_sum,
    is_automorphism,
    is_epi,
    is_isomorphism,
    is_mono,
    module_expression,
)
from relhom.precover import (
    AllowedSet,
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

R4 = RingSpec.modular(4)
K = ModuleObject(R4, (2,))
BIG = ModuleObject(R4, (4,))
Z = ModuleObject.free(1)

ADD_K = PrecoverClass.additive(K)
ADD_BIG = PrecoverClass.additive(BIG)
ADD_MIX = PrecoverClass.additive(ModuleObject(R4, (4, 2)))
POW_MIX = PrecoverClass.powers(ModuleObject(R4, (4, 2)))
GAP = PrecoverClass.constrained(R4, {2: AllowedSet(2, (0,))})
TORS = PrecoverClass.torsion_over_z()


def test_allowed_set_normalization():
    a = AllowedSet(4, frozenset({0, 3}))
    assert a.conductor == 3 and a.members_below == frozenset({0})
    assert str(a) == "{0,3+}"
    assert a.contains(0) and not a.contains(2) and a.contains(17)
    assert a.smallest_at_least(1) == 3
    assert a.smallest_at_least(3) == 3
    assert a.smallest_missing() == 1
    assert AllowedSet.full().is_full
    assert AllowedSet.full().contains(1)


def test_allowed_set_validation():
    with pytest.raises(ValueError):
        AllowedSet(3, frozenset({0, 1}))
    with pytest.raises(ValueError):
        AllowedSet(2, frozenset({1}))
    with pytest.raises(ValueError):
        AllowedSet(-1)


def test_class_constructors_validate():
    with pytest.raises(ValueError):
        PrecoverClass.constrained(R4, {3: AllowedSet.full()})
    with pytest.raises(ValueError):
        PrecoverClass.constrained(R4, {6: AllowedSet.full()})
    with pytest.raises(ValueError):
        PrecoverClass.constrained(R4, {0: AllowedSet.full()})
    with pytest.raises(ValueError):
        PrecoverClass("add", INTEGERS, ModuleObject(R4, (2,)))
    with pytest.raises(ValueError):
        PrecoverClass("nonsense", R4)


def test_class_expressions():
    assert class_expression(ADD_K) == "add([2])"
    assert class_expression(POW_MIX) == "pow([4,2])"
    assert class_expression(GAP) == "constrained support=[2] allowed[2]={0,2+}"
    assert class_expression(TORS) == "torsionZ"
    assert str(PrecoverClass.additive(ModuleObject(INTEGERS, (), 1))) == "add(rank1)"


def test_membership():
    assert contains(ADD_K, ModuleObject.zero(R4))
    assert contains(ADD_K, ModuleObject(R4, (2, 2)))
    assert not contains(ADD_K, BIG)
    assert contains(POW_MIX, ModuleObject(R4, (4, 4, 2, 2)))
    assert not contains(POW_MIX, ModuleObject(R4, (4, 2, 2)))
    assert not contains(POW_MIX, BIG)
    assert contains(GAP, ModuleObject(R4, (2, 2)))
    assert not contains(GAP, K)
    assert contains(TORS, ModuleObject(INTEGERS, (2, 9)))
    assert not contains(TORS, ModuleObject(INTEGERS, (2,), 1))


def test_indecomposables_and_test_objects():
    assert indecomposable_of_type(R4, 2) == K
    assert indecomposable_of_type(INTEGERS, 0) == Z
    assert test_objects(ADD_MIX, BIG) == (K, BIG)
    assert test_objects(POW_MIX, K) == (ModuleObject(R4, (4, 2)),)
    probes = test_objects(TORS, ModuleObject(INTEGERS, (4, 3)))
    assert probes == (
        ModuleObject(INTEGERS, (2,)),
        ModuleObject(INTEGERS, (4,)),
        ModuleObject(INTEGERS, (3,)),
    )


def test_build_and_verify_precover():
    mods = [ModuleObject.zero(R4), K, BIG, ModuleObject(R4, (4, 2))]
    for family in (ADD_K, ADD_BIG, ADD_MIX, POW_MIX, GAP):
        for m in mods:
            pre = build_precover(family, m)
            assert contains(family, pre.morphism.domain)
            assert verify_precover(family, pre.morphism).is_yes
    zero_map = ModuleMorphism.zero(ModuleObject.zero(R4), BIG)
    assert verify_precover(ADD_K, zero_map).is_no


def test_cover_minimization():
    cov = cover_of(ADD_K, BIG)
    assert cov.morphism.matrix == ((2,),)
    again = minimize_to_cover(cov)
    assert again.morphism.domain == cov.morphism.domain
    ident = cover_of(ADD_K, ModuleObject(R4, (2, 2)))
    assert is_isomorphism(ident.morphism)


def test_trace_submodules():
    assert trace_submodule(ADD_K, BIG).module == K
    assert trace_submodule(ADD_BIG, K).module == K
    assert trace_submodule(TORS, Z).module.is_zero
    assert trace_submodule(GAP, K).module == K


def test_is_almost_epi_basic():
    proj = ModuleMorphism(BIG, K, ((1,),))
    assert is_almost_epi(proj).is_yes
    tight = cover_of(ADD_K, BIG).morphism
    assert is_almost_epi(tight).is_yes
    doubling = ModuleMorphism(Z, Z, ((2,),))
    verdict = is_almost_epi(doubling)
    assert verdict.is_yes
    assert endomorphism_coset(doubling) == (ModuleMorphism.identity(Z),)


def test_is_almost_epi_failure_witness():
    kk = ModuleObject(R4, (2, 2))
    inclusion = ModuleMorphism(K, kk, ((1,), (0,)))
    verdict = is_almost_epi(inclusion)
    assert verdict.is_no
    g = verdict.witness
    assert not is_automorphism(g)
    assert (g @ inclusion).matrix == inclusion.matrix


def test_endomorphism_coset_against_sweep():
    cases = [
        ModuleMorphism(K, ModuleObject(R4, (2, 2)), ((1,), (0,))),
        ModuleMorphism(K, BIG, ((2,),)),
        ModuleMorphism(BIG, BIG, ((2,),)),
        ModuleMorphism(BIG, ModuleObject(R4, (4, 2)), ((0,), (1,))),
        ModuleMorphism(K, K, ((1,),)),
    ]
    for phi in cases:
        cod = phi.codomain.generator_orders()
        brute = oracles.brute_endo_coset(
            tuple(tuple(r) for r in phi.matrix), phi.domain.generator_orders(), cod
        )
        coset = endomorphism_coset(phi)
        assert {g.matrix for g in coset} == brute
        verdict = is_almost_epi(phi)
        every_auto = all(oracles.is_bijective_matrix(g, cod) for g in brute)
        assert verdict.is_yes == every_auto
        if verdict.is_no:
            assert verdict.witness.matrix in brute


def test_class_closure_predicates():
    assert class_closed_under_summands(ADD_K).is_yes
    assert class_closed_under_summands(ADD_MIX).is_yes
    assert class_closed_under_summands(TORS).is_yes
    pow_verdict = class_closed_under_summands(POW_MIX)
    assert pow_verdict.is_no
    gap_verdict = class_closed_under_summands(GAP)
    assert gap_verdict.is_no
    member, part = gap_verdict.witness
    assert contains(GAP, member) and not contains(GAP, part)


def test_weakly_closed_statuses():
    assert class_weakly_closed(ADD_K).is_yes
    assert class_weakly_closed(ADD_BIG).is_yes
    assert class_weakly_closed(ADD_MIX).is_yes
    assert class_weakly_closed(POW_MIX).is_yes
    assert class_weakly_closed(TORS).is_yes
    verdict = class_weakly_closed(GAP)
    assert verdict.is_no
    assert verdict.witness is not None


def test_epis_monos_and_separation():
    assert has_epi_precover(ADD_K, BIG).is_no
    assert has_epi_precover(ADD_BIG, K).is_yes
    universe = [ModuleObject.zero(R4), K, BIG, ModuleObject(R4, (4, 2))]
    assert mono_precovers_are_iso(ADD_BIG, universe).is_yes
    assert is_separating(ADD_BIG, universe).is_yes
    torsion_universe = [Z, ModuleObject(INTEGERS, (2,)), ModuleObject(INTEGERS, (2,), 1)]
    verdict = mono_precovers_are_iso(TORS, torsion_universe)
    assert verdict.is_no
    witness_module, _ = verdict.witness
    assert witness_module.free_rank > 0


def test_equivalence():
    zero = ModuleObject.zero(R4)
    assert equivalent(ADD_K, K, zero).is_yes
    assert equivalent(ADD_K, K, K).is_yes
    assert equivalent(ADD_K, BIG, zero).is_no
    verdict = equivalent(GAP, K, zero)
    assert verdict.is_yes
    witness = verdict.witness
    assert contains(GAP, witness.left_pad) and contains(GAP, witness.right_pad)
    assert direct_sum([K, witness.left_pad]) == witness.right_pad
    mixed = equivalent(ADD_MIX, ModuleObject(R4, (4, 2)), ModuleObject(R4, (2,)))
    assert mixed.is_yes


def test_equivalence_is_symmetric_and_reflexive():
    zero = ModuleObject.zero(R4)
    pairs = [(K, zero), (BIG, zero), (K, BIG), (ModuleObject(R4, (4, 2)), K)]
    for family in (ADD_K, ADD_MIX, GAP):
        for a, b in pairs:
            assert equivalent(family, a, a).is_yes
            assert equivalent(family, a, b).status == equivalent(family, b, a).status
