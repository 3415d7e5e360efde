"""Verification suites, reproductions, and their configuration."""

import pytest

from relhom.modules import INTEGERS, ModuleObject, RingSpec, module_expression
from relhom.precover import PrecoverClass, verify_precover
from relhom.lab import (
    LabCase,
    LabConfig,
    LabReport,
    UniverseSpec,
    battery,
    enumerate_modules,
    padded_precover,
    padded_resolution,
    reproduction_ids,
    run_reproduction,
    run_suite,
    small_member,
    suite_ids,
)

R4 = RingSpec.modular(4)
TINY = LabConfig(max_total=2, max_level=1, z_max_total=1)


def test_registry_ids():
    assert suite_ids() == (
        "prop-2.1",
        "lemma-2.5",
        "lemma-2.8",
        "thm-2.10",
        "thm-3.4",
        "lemma-3.6",
        "thm-3.8",
        "schanuel-welldef",
        "ext-independence",
        "dimension-shift",
    )
    assert reproduction_ids() == (
        "prop-2.9",
        "example-2.2-finite",
        "lemma-2.4-witness",
        "example-2.7",
        "example-3.7b",
    )


def test_unknown_idents_raise():
    with pytest.raises(KeyError):
        run_suite("no-such-suite", TINY)
    with pytest.raises(KeyError):
        run_reproduction("no-such-example")


def test_enumerate_modules_ordering():
    spec = UniverseSpec(R4, (2, 4), 2)
    got = [module_expression(m) for m in enumerate_modules(spec)]
    assert got == ["0", "[2]", "[4]", "[2,2]", "[4,2]", "[4,4]"]
    free_spec = UniverseSpec(INTEGERS, (2,), 1, max_free_rank=1)
    got = [module_expression(m) for m in enumerate_modules(free_spec)]
    assert got == ["0", "[2]", "rank1"]


def test_universe_spec_validation():
    with pytest.raises(ValueError):
        UniverseSpec(R4, (2,), 1, max_free_rank=1)
    with pytest.raises(ValueError):
        UniverseSpec(R4, (3,), 1)
    with pytest.raises(ValueError):
        UniverseSpec(R4, (0,), 1)


def test_config_from_mapping():
    cfg = LabConfig.from_mapping({"modulus": 8, "max_total": 2, "z_torsion": [2]})
    assert cfg.modulus == 8
    assert cfg.max_total == 2
    assert cfg.z_torsion == (2,)
    assert cfg.max_level == LabConfig().max_level
    with pytest.raises(ValueError):
        LabConfig.from_mapping({"not_a_knob": 1})


def test_battery_composition():
    fams = [str(f) for f, _ in battery(LabConfig())]
    assert fams == [
        "add([2])",
        "add([4])",
        "add([4,2])",
        "pow([4,2])",
        "constrained support=[2] allowed[2]={0,2+}",
        "add(rank1)",
        "add(rank1+[2])",
        "torsionZ",
    ]
    no_z = [str(f) for f, _ in battery(LabConfig(include_z=False))]
    assert all("Z" not in name or "Z/" in name for name in no_z)
    assert len(no_z) == 5


def test_report_mechanics():
    cases = (
        LabCase("a", True),
        LabCase("b", True, skipped=True),
        LabCase("c", False, details="broke"),
    )
    report = LabReport("demo", "demo title", cases)
    assert not report.passed
    assert [c.label for c in report.failures] == ["c"]
    assert [c.label for c in report.skipped] == ["b"]
    assert report.summary() == "2 checks, 1 failure, 1 skipped"
    clean = LabReport("demo", "demo title", cases[:1])
    assert clean.passed
    assert clean.summary() == "1 check, 0 failures"


@pytest.mark.parametrize("ident", suite_ids())
def test_suites_pass_at_small_scale(ident):
    report = run_suite(ident, TINY)
    assert report.passed, report.summary()
    assert report.cases


@pytest.mark.parametrize("ident", reproduction_ids())
def test_reproductions_pass(ident):
    report = run_reproduction(ident)
    assert report.passed, report.summary()
    assert not report.skipped


def test_small_member_is_a_member():
    from relhom.precover import contains

    for family, _ in battery(LabConfig()):
        member = small_member(family)
        assert contains(family, member)
        assert not member.is_zero


def test_padded_precover_is_distinct_but_verified():
    family = PrecoverClass.additive(ModuleObject(R4, (2,)))
    m = ModuleObject(R4, (4,))
    padded = padded_precover(family, m)
    assert verify_precover(family, padded.morphism).is_yes
    from relhom.precover import cover_of

    cover = cover_of(family, m)
    assert padded.morphism.domain != cover.morphism.domain


def test_padded_resolution_extends_terms():
    family = PrecoverClass.additive(ModuleObject(R4, (4,)))
    m = ModuleObject(R4, (2,))
    terms, differentials = padded_resolution(family, m, 2)
    assert len(terms) == 3 and len(differentials) == 3
    for i in range(len(differentials) - 1):
        assert (differentials[i] @ differentials[i + 1]).is_zero_map
    assert differentials[0].codomain == m
