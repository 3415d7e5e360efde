"""Acceptance gate: eight exact criteria with enforced runtime budgets.

Each test prints one visible [PASS]/[FAIL] line naming its criterion,
then fails loudly if the computation or the budget went wrong.  All
arithmetic underneath is exact integer arithmetic.
"""

import time
from itertools import product

import oracles
from relhom.modules import ModuleMorphism, ModuleObject, RingSpec
from relhom.precover import (
    AllowedSet,
    PrecoverClass,
    class_weakly_closed,
    endomorphism_coset,
    has_epi_precover,
    is_almost_epi,
)
from relhom.invariants import check_E, check_R, check_S, relative_ext
from relhom.lab import LabConfig, run_reproduction, run_suite

R4 = RingSpec.modular(4)
K = ModuleObject(R4, (2,))
BIG = ModuleObject(R4, (4,))
ADD_K = PrecoverClass.additive(K)
FREE4 = PrecoverClass.additive(BIG)
POW_MIX = PrecoverClass.powers(ModuleObject(R4, (4, 2)))
GAP = PrecoverClass.constrained(R4, {2: AllowedSet(2, (0,))})
TORS = PrecoverClass.torsion_over_z()


def run_criterion(capsys, idx, label, budget, body):
    start = time.perf_counter()
    failure = None
    try:
        body()
    except BaseException as exc:
        failure = exc
    elapsed = time.perf_counter() - start
    ok = failure is None and elapsed <= budget
    status = "PASS" if ok else "FAIL"
    with capsys.disabled():
        print(
            f"[{status}] criterion {idx}/8: {label} "
            f"[{elapsed:.2f}s, budget {budget:.0f}s]"
        )
    if failure is not None:
        raise failure
    assert elapsed <= budget, f"criterion {idx} exceeded its {budget:.0f}s budget"


def test_criterion_1_mono_nonepi_cover_battery(capsys):
    def body():
        report = run_reproduction("prop-2.9")
        assert report.passed, report.summary()
        assert not report.skipped
        assert has_epi_precover(ADD_K, BIG).is_no

    run_criterion(capsys, 1, "mono non-epi covers over add([2]) (prop-2.9)", 5, body)


def test_criterion_2_schanuel_fails_where_resolution_exists(capsys):
    def body():
        assert check_E(ADD_K, BIG, 0).is_yes
        r = check_R(ADD_K, BIG, 0)
        assert r.is_yes
        assert r.witness == (K,)
        assert check_S(ADD_K, BIG, 0).is_no
        assert check_S(ADD_K, BIG, 1).is_yes

    run_criterion(capsys, 2, "resolution without Schanuel vanishing (thm-3.8)", 1, body)


def test_criterion_3_vanishing_without_resolution(capsys):
    def body():
        report = run_reproduction("lemma-2.4-witness")
        assert report.passed, report.summary()
        assert check_E(POW_MIX, K, 0).is_yes
        assert check_R(POW_MIX, K, 0).is_no

    run_criterion(capsys, 3, "Ext vanishing without a resolution (lemma-2.4)", 5, body)


def test_criterion_4_weak_closure_witness(capsys):
    def body():
        assert class_weakly_closed(GAP).is_no
        assert check_S(GAP, K, 0).is_yes
        assert check_R(GAP, K, 0).is_no

    run_criterion(capsys, 4, "Schanuel without resolution (thm-3.4 witness)", 5, body)


def test_criterion_5_torsion_class_gap(capsys):
    def body():
        report = run_reproduction("example-3.7b")
        assert report.passed, report.summary()
        z = ModuleObject.free(1)
        r = check_R(TORS, z, 0)
        assert r.is_yes
        assert all(t.is_zero for t in r.witness)
        assert check_S(TORS, z, 0).is_no

    run_criterion(capsys, 5, "zero-cover resolution of Z (example-3.7b)", 1, body)


def test_criterion_6_classical_ext_oracle(capsys):
    def body():
        assert str(relative_ext(FREE4, K, K, 1)) == "Z/2"
        assert relative_ext(FREE4, K, BIG, 1).group.is_zero
        orders_pool = [
            (),
            (2,),
            (4,),
            (2, 2),
            (4, 2),
            (4, 4),
            (2, 2, 2),
            (4, 2, 2),
            (4, 4, 2),
            (4, 4, 4),
        ]
        for mo, ao, n in product(orders_pool, orders_pool, range(3)):
            got = relative_ext(FREE4, ModuleObject(R4, mo), ModuleObject(R4, ao), n).group
            assert got.free_rank == 0
            expected = oracles.classical_ext_order_counts(4, ModuleObject(R4, mo).orders, ao, n)
            assert oracles.order_counts_of_group(got.orders) == expected, (mo, ao, n)

    run_criterion(capsys, 6, "relative Ext equals classical Ext over add([4])", 30, body)


def test_criterion_7_property_suites(capsys):
    def body():
        config = LabConfig(modulus=4, max_total=4, max_level=2, include_z=False)
        idents = (
            "prop-2.1",
            "lemma-2.5",
            "lemma-2.8",
            "thm-2.10",
            "thm-3.4",
            "lemma-3.6",
            "schanuel-welldef",
            "ext-independence",
            "dimension-shift",
        )
        for ident in idents:
            report = run_suite(ident, config)
            assert report.passed, f"{ident}: {report.summary()}"
            assert not report.failures, ident
            if ident == "thm-2.10":
                by_label = {c.label: c for c in report.cases}
                for required in ("add([2])", "add([4,2])"):
                    case = by_label[required]
                    assert case.passed and not case.skipped, required

    run_criterion(capsys, 7, "property suites over the Z/4 universe", 60, body)


def test_criterion_8_doubling_on_z(capsys):
    def body():
        report = run_reproduction("example-2.7")
        assert report.passed, report.summary()
        z = ModuleObject.free(1)
        doubling = ModuleMorphism(z, z, ((2,),))
        assert is_almost_epi(doubling).is_yes
        assert endomorphism_coset(doubling) == (ModuleMorphism.identity(z),)

    run_criterion(capsys, 8, "doubling on Z is almost epi (example-2.7)", 1, body)
