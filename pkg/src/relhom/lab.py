"""Sweep batteries and pinned reproductions for the condition lattice.

The suites check the implications between the E, R, and S conditions
and the class properties that govern them, over exhaustively enumerated
universes of small modules.  Each suite either verifies an implication
instance by instance or, when its hypothesis fails, pins the expected
witness.  The reproductions re-derive specific small computations with
every intermediate value asserted.

Suites aggregate one case per class; reproductions emit one case per
asserted fact.  Both are deterministic: no randomness, no tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace
from itertools import product

from .invariants import (
    build_resolution,
    check_E,
    check_R,
    check_S,
    cohomology_of_chain,
    relative_ext,
    schanuel_step,
    verify_resolution,
)
from .modules import (
    INTEGERS,
    ModuleMorphism,
    ModuleObject,
    RingSpec,
    assemble_from_blocks,
    direct_sum,
    freeze,
    group_expression,
    hom_count,
    hom_group,
    image_cokernel,
    is_automorphism,
    is_epi,
    is_mono,
    kernel,
    module_expression,
)
from .precover import (
    POWERS,
    TORSION_Z,
    AllowedSet,
    Precover,
    PrecoverClass,
    _support_with_allowed,
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
    mono_precovers_are_iso,
    trace_submodule,
    verify_precover,
)

ENDO_SWEEP_CAP = 1 << 12


@dataclass(frozen=True)
class LabCase:
    """One checked statement inside a suite or reproduction."""

    label: str
    passed: bool
    details: str = ""
    skipped: bool = False


@dataclass(frozen=True)
class LabReport:
    ident: str
    title: str
    cases: tuple

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases if not c.skipped)

    @property
    def failures(self) -> tuple:
        return tuple(c for c in self.cases if not c.skipped and not c.passed)

    @property
    def skipped(self) -> tuple:
        return tuple(c for c in self.cases if c.skipped)

    def summary(self) -> str:
        ran = len([c for c in self.cases if not c.skipped])
        failed = len(self.failures)
        parts = [
            f"{ran} check" + ("" if ran == 1 else "s"),
            f"{failed} failure" + ("" if failed == 1 else "s"),
        ]
        if self.skipped:
            parts.append(f"{len(self.skipped)} skipped")
        return ", ".join(parts)


@dataclass(frozen=True)
class UniverseSpec:
    """A finite slice of modules: torsion types with bounded multiplicity.

    max_total bounds the number of indecomposable summands; free_rank
    summands count toward it and are capped separately.
    """

    ring: RingSpec
    torsion_types: tuple
    max_total: int
    max_free_rank: int = 0

    def __post_init__(self):
        if self.max_total < 0 or self.max_free_rank < 0:
            raise ValueError("universe bounds cannot be negative")
        if self.max_free_rank and self.ring.is_modular:
            raise ValueError("free summands only exist over the integers")
        for t in self.torsion_types:
            indecomposable_of_type(self.ring, t)
            if t == 0:
                raise ValueError("list free summands via max_free_rank")


def enumerate_modules(spec: UniverseSpec) -> tuple:
    """All universe members, smallest first.

    Within one total multiplicity, mass on smaller indecomposables comes
    first, and free summands sort after every torsion type.

    >>> u = UniverseSpec(RingSpec.modular(4), (2, 4), 2)
    >>> [module_expression(m) for m in enumerate_modules(u)]
    ['0', '[2]', '[4]', '[2,2]', '[4,2]', '[4,4]']
    """
    types = tuple(sorted(set(spec.torsion_types)))
    slots = len(types) + (1 if spec.max_free_rank else 0)
    out = []
    for total in range(spec.max_total + 1):
        vectors = []
        for v in product(range(total + 1), repeat=slots):
            if sum(v) != total:
                continue
            if spec.max_free_rank and v[-1] > spec.max_free_rank:
                continue
            vectors.append(v)
        vectors.sort(key=lambda v: tuple(-x for x in v))
        for v in vectors:
            orders = []
            for t, mult in zip(types, v):
                orders.extend([t] * mult)
            rank = v[-1] if spec.max_free_rank else 0
            out.append(ModuleObject(spec.ring, tuple(orders), rank))
    return tuple(out)


@dataclass(frozen=True)
class LabConfig:
    """Bounds for the default batteries; JSON configs override fields."""

    modulus: int = 4
    max_total: int = 3
    max_level: int = 2
    z_torsion: tuple = (2, 4)
    z_max_total: int = 2
    z_free_rank: int = 1
    include_z: bool = True

    @classmethod
    def from_mapping(cls, data: dict) -> "LabConfig":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ValueError(f"unknown config keys: {', '.join(unknown)}")
        cfg = dict(data)
        if "z_torsion" in cfg:
            cfg["z_torsion"] = tuple(cfg["z_torsion"])
        return replace(cls(), **cfg)


def _prime_power_divisors(n: int) -> tuple:
    out = []
    d = 2
    m = n
    while d * d <= m:
        if m % d == 0:
            q = 1
            while m % d == 0:
                m //= d
                q *= d
            for e in _powers_up_to(d, q):
                out.append(e)
        d += 1
    if m > 1:
        out.append(m)
    return tuple(sorted(out))


def _powers_up_to(p: int, q: int):
    e = p
    while e <= q:
        yield e
        e *= p


def battery(config: LabConfig) -> tuple:
    """(class, universe) pairs the suites sweep by default."""
    ring = RingSpec.modular(config.modulus)
    types = _prime_power_divisors(config.modulus)
    cyclics = [ModuleObject.cyclic(ring, q) for q in types]
    universe = UniverseSpec(ring, types, config.max_total)
    families = [PrecoverClass.additive(c) for c in cyclics]
    if len(cyclics) > 1:
        families.append(PrecoverClass.additive(direct_sum(cyclics)))
    families.append(PrecoverClass.powers(direct_sum(cyclics)))
    families.append(
        PrecoverClass.constrained(ring, {types[0]: AllowedSet(2, (0,))})
    )
    entries = [(f, universe) for f in families]
    if config.include_z:
        z_univ = UniverseSpec(
            INTEGERS, config.z_torsion, config.z_max_total, config.z_free_rank
        )
        z_families = [
            PrecoverClass.additive(ModuleObject.free(1)),
            PrecoverClass.additive(
                direct_sum([ModuleObject.free(1), ModuleObject.cyclic(INTEGERS, 2)])
            ),
            PrecoverClass.torsion_over_z(),
        ]
        entries.extend((f, z_univ) for f in z_families)
    return tuple(entries)


def _levels(config: LabConfig):
    return range(config.max_level + 1)


def _instance(family, m, n=None) -> str:
    tag = f"{class_expression(family)}; M={module_expression(m)}"
    return tag if n is None else f"{tag}; n={n}"


def _skip_powers(family) -> bool:
    # resolutions over a powers class grow multiplicatively with the
    # hom basis, so the deep Ext sweeps stay with the other kinds
    return family.kind == POWERS


# ---------------------------------------------------------------- suites


def suite_resolution_forces_vanishing(config: LabConfig) -> LabReport:
    """R at level n forces E at level n, class by class."""
    cases = []
    for family, universe in battery(config):
        label = class_expression(family)
        if _skip_powers(family):
            cases.append(LabCase(label, True, "excluded from the deep Ext sweep", True))
            continue
        checked = 0
        undecided = 0
        bad = None
        for m in enumerate_modules(universe):
            for n in _levels(config):
                r = check_R(family, m, n)
                if r.is_unknown:
                    undecided += 1
                    continue
                if not r.is_yes:
                    continue
                checked += 1
                e = check_E(family, m, n)
                if not e.is_yes and bad is None:
                    bad = f"{_instance(family, m, n)}: R holds but E is {e.status}"
        details = f"{checked} instances with R confirmed"
        if undecided:
            details += f"; {undecided} left undecided"
        cases.append(LabCase(label, bad is None, bad or details))
    return LabReport(
        "prop-2.1",
        "a length-n resolution forces the derived vanishing at the same level",
        tuple(cases),
    )


def _all_endomorphisms(m: ModuleObject, cap: int):
    """Every endomorphism of a finite module, or None past the cap."""
    hg = hom_group(m, m)
    orders = hg.group.generator_orders()
    if any(o == 0 for o in orders):
        return None
    total = 1
    for o in orders:
        total *= o
    if total > cap:
        return None
    n = m.generator_count
    mats = [b.matrix for b in hg.basis]
    out = []
    for coeffs in product(*(range(o) for o in orders)):
        rows = [[0] * n for _ in range(n)]
        for c, mat in zip(coeffs, mats):
            if c:
                for j in range(n):
                    row = rows[j]
                    src = mat[j]
                    for i in range(n):
                        row[i] += c * src[i]
        out.append(ModuleMorphism(m, m, freeze(rows)))
    return out


def _morphism_pool(family, m):
    cov = cover_of(family, m)
    pre = build_precover(family, m)
    pool = [cov.morphism, pre.morphism, ModuleMorphism.zero(pre.morphism.domain, m)]
    if contains(family, m):
        pool.append(ModuleMorphism.identity(m))
    seen = set()
    out = []
    for phi in pool:
        key = (phi.domain, phi.matrix)
        if key not in seen:
            seen.add(key)
            out.append(phi)
    return out


def suite_solution_coset(config: LabConfig) -> LabReport:
    """The solver's solution coset matches brute force on small modules.

    For each pooled morphism into M the endomorphisms g with g o phi ==
    phi are enumerated two ways, and the almost-epi verdict must agree
    with checking every brute-force solution directly.
    """
    cases = []
    for family, universe in battery(config):
        label = class_expression(family)
        compared = 0
        bad = None
        for m in enumerate_modules(universe):
            endos = _all_endomorphisms(m, ENDO_SWEEP_CAP)
            if endos is None:
                continue
            for phi in _morphism_pool(family, m):
                brute = [g for g in endos if (g @ phi).matrix == phi.matrix]
                sols = endomorphism_coset(phi)
                ae = is_almost_epi(phi)
                expected = all(is_automorphism(g) for g in brute)
                ok = (
                    sols is not None
                    and {s.matrix for s in sols} == {g.matrix for g in brute}
                    and not ae.is_unknown
                    and ae.is_yes == expected
                )
                if ae.is_no and ok:
                    ok = any(ae.witness.matrix == g.matrix for g in brute)
                compared += 1
                if not ok and bad is None:
                    bad = (
                        f"{_instance(family, m)}: solver disagrees with the "
                        f"{len(brute)}-element brute-force coset"
                    )
        cases.append(LabCase(label, bad is None, bad or f"{compared} morphisms compared"))
    return LabReport(
        "lemma-2.5",
        "solution cosets and the almost-epi test agree with brute force",
        tuple(cases),
    )


def padded_precover(family: PrecoverClass, m: ModuleObject) -> Precover:
    """The evaluation precover with extra zero blocks, still in the class."""
    pre = build_precover(family, m)
    blocks = _pad_blocks(family, m, list(pre.blocks))
    phi = assemble_from_blocks(m, blocks)
    return Precover(family, m, tuple(blocks), phi)


def _first_padding_type(family):
    if family.kind == POWERS or family.kind == TORSION_Z:
        raise AssertionError("padding types only exist for support classes")
    return _support_with_allowed(family)[0]


def small_member(family: PrecoverClass):
    """A smallest nonzero class member, or None for the zero class."""
    if family.kind == TORSION_Z:
        return ModuleObject.cyclic(INTEGERS, 2)
    if family.kind == POWERS:
        return None if family.base.is_zero else family.base
    t, allowed = _first_padding_type(family)
    obj = indecomposable_of_type(family.ring, t)
    mult = allowed.smallest_at_least(1)
    return direct_sum([obj] * mult)


def suite_kernel_agreement(config: LabConfig) -> LabReport:
    """Kernels of different precovers of one target are equivalent.

    The pool holds the minimized cover, the evaluation precover, and a
    zero-padded evaluation, so at least two genuinely distinct precovers
    are compared for every target.
    """
    cases = []
    for family, universe in battery(config):
        label = class_expression(family)
        compared = 0
        bad = None
        for m in enumerate_modules(universe):
            pool = [
                cover_of(family, m).morphism,
                build_precover(family, m).morphism,
                padded_precover(family, m).morphism,
            ]
            distinct = {(p.domain, p.matrix) for p in pool}
            if len(distinct) < 2 and bad is None:
                bad = f"{_instance(family, m)}: the precover pool collapsed"
            kernels = [kernel(p).module for p in pool]
            for i in range(len(kernels)):
                for j in range(i + 1, len(kernels)):
                    compared += 1
                    verdict = equivalent(family, kernels[i], kernels[j])
                    if not verdict.is_yes and bad is None:
                        bad = (
                            f"{_instance(family, m)}: kernels "
                            f"{module_expression(kernels[i])} and "
                            f"{module_expression(kernels[j])} are not equivalent"
                        )
        cases.append(LabCase(label, bad is None, bad or f"{compared} kernel pairs agree"))
    return LabReport(
        "lemma-2.8",
        "kernels of any two precovers of the same target are equivalent",
        tuple(cases),
    )


def suite_vanishing_equals_resolution(config: LabConfig) -> LabReport:
    """Under summand closure and almost-epi covers, E and R coincide.

    Classes failing either hypothesis are skipped with the reason; the
    implication is only claimed where the hypotheses hold, and there an
    undecided R counts as a failure.
    """
    cases = []
    for family, universe in battery(config):
        label = class_expression(family)
        if _skip_powers(family):
            cases.append(LabCase(label, True, "excluded from the deep Ext sweep", True))
            continue
        mods = enumerate_modules(universe)
        closed = class_closed_under_summands(family)
        if not closed.is_yes:
            cases.append(
                LabCase(label, True, f"not closed under summands: {closed.reason}", True)
            )
            continue
        stuck = None
        for m in mods:
            ae = is_almost_epi(cover_of(family, m).morphism)
            if not ae.is_yes:
                stuck = f"cover of {module_expression(m)} is not almost epi"
                break
        if stuck:
            cases.append(LabCase(label, True, stuck, True))
            continue
        checked = 0
        bad = None
        for m in mods:
            for n in _levels(config):
                e = check_E(family, m, n)
                r = check_R(family, m, n)
                checked += 1
                if (r.is_unknown or e.status != r.status) and bad is None:
                    bad = f"{_instance(family, m, n)}: E is {e.status} but R is {r.status}"
        cases.append(LabCase(label, bad is None, bad or f"{checked} instances agree"))
    return LabReport(
        "thm-2.10",
        "with summand closure and almost-epi covers, E and R decide alike",
        tuple(cases),
    )


def suite_weakly_closed(config: LabConfig) -> LabReport:
    """Weak closure is exactly what makes S imply R.

    Weakly closed classes are swept for S-yes instances, each of which
    must carry a resolution; a class that is not weakly closed must
    instead yield a concrete module where S holds and R fails.
    """
    cases = []
    for family, universe in battery(config):
        label = class_expression(family)
        wc = class_weakly_closed(family)
        if wc.is_yes:
            checked = 0
            bad = None
            for m in enumerate_modules(universe):
                for n in _levels(config):
                    s = check_S(family, m, n)
                    if not s.is_yes:
                        continue
                    checked += 1
                    r = check_R(family, m, n)
                    if not r.is_yes and bad is None:
                        bad = f"{_instance(family, m, n)}: S holds but R is {r.status}"
            cases.append(
                LabCase(label, bad is None, bad or f"{checked} S-instances resolved")
            )
            continue
        x = wc.witness[0]
        s = check_S(family, x, 0)
        r = check_R(family, x, 0)
        ok = s.is_yes and r.is_no
        cases.append(
            LabCase(
                label,
                ok,
                f"not weakly closed; at M={module_expression(x)}, n=0: "
                f"S is {s.status} and R is {r.status}",
            )
        )
    return LabReport(
        "thm-3.4",
        "S forces R exactly over weakly closed classes",
        tuple(cases),
    )


def suite_separating(config: LabConfig) -> LabReport:
    """When every mono precover is an isomorphism, the class separates."""
    cases = []
    for family, universe in battery(config):
        label = class_expression(family)
        mods = enumerate_modules(universe)
        h = mono_precovers_are_iso(family, mods)
        if not h.is_yes:
            m, tr = h.witness
            cases.append(
                LabCase(
                    label,
                    True,
                    f"hypothesis fails at M={module_expression(m)} "
                    f"(trace {module_expression(tr)}); nothing to check",
                    True,
                )
            )
            continue
        sep = is_separating(family, mods)
        cases.append(
            LabCase(
                label,
                sep.is_yes,
                f"mono precovers are isomorphisms and separation is {sep.status}",
            )
        )
    return LabReport(
        "lemma-3.6",
        "iso-only mono precovers make the class separating",
        tuple(cases),
    )


def suite_resolution_forces_schanuel(config: LabConfig) -> LabReport:
    """R forces S exactly when every mono precover is an isomorphism.

    Classes passing the hypothesis are swept for R-yes instances, whose
    Schanuel class must vanish; a failing class must exhibit a module
    with a resolution whose Schanuel class survives.
    """
    cases = []
    for family, universe in battery(config):
        label = class_expression(family)
        mods = enumerate_modules(universe)
        h = mono_precovers_are_iso(family, mods)
        if h.is_yes:
            checked = 0
            bad = None
            for m in mods:
                for n in _levels(config):
                    r = check_R(family, m, n)
                    if not r.is_yes:
                        continue
                    checked += 1
                    s = check_S(family, m, n)
                    if not s.is_yes and bad is None:
                        bad = f"{_instance(family, m, n)}: R holds but S is {s.status}"
            cases.append(
                LabCase(label, bad is None, bad or f"{checked} R-instances vanish")
            )
            continue
        m, tr = h.witness
        r = check_R(family, m, 0)
        s = check_S(family, m, 0)
        ok = r.is_yes and s.is_no
        cases.append(
            LabCase(
                label,
                ok,
                f"mono precover {module_expression(tr)} -> {module_expression(m)} "
                f"is proper; at n=0: R is {r.status} and S is {s.status}",
            )
        )
    return LabReport(
        "thm-3.8",
        "R forces S exactly when mono precovers are isomorphisms",
        tuple(cases),
    )


def suite_schanuel_welldefined(config: LabConfig) -> LabReport:
    """The Schanuel step respects equivalence and ignores member pads."""
    cases = []
    for family, universe in battery(config):
        label = class_expression(family)
        pad = small_member(family)
        if pad is None:
            cases.append(LabCase(label, True, "the class has no nonzero member", True))
            continue
        checked = 0
        bad = None
        for m in enumerate_modules(universe):
            padded = direct_sum([m, pad])
            verdict = equivalent(
                family, schanuel_step(family, m), schanuel_step(family, padded)
            )
            checked += 1
            if not verdict.is_yes and bad is None:
                bad = f"{_instance(family, m)}: padding by {module_expression(pad)} moved the step"
            for n in _levels(config):
                a = check_S(family, m, n)
                b = check_S(family, padded, n)
                if a.status != b.status and bad is None:
                    bad = f"{_instance(family, m, n)}: S changed under an equivalent target"
        cases.append(LabCase(label, bad is None, bad or f"{checked} targets padded"))
    return LabReport(
        "schanuel-welldef",
        "the Schanuel class only depends on the equivalence class",
        tuple(cases),
    )


def _pad_blocks(family: PrecoverClass, m: ModuleObject, blocks: list) -> list:
    if family.kind == TORSION_Z:
        extra = ModuleObject.cyclic(INTEGERS, 2)
        blocks.append((extra, ModuleMorphism.zero(extra, m)))
    elif family.kind == POWERS:
        if not family.base.is_zero:
            blocks.append((family.base, ModuleMorphism.zero(family.base, m)))
    else:
        t, allowed = _first_padding_type(family)
        obj = indecomposable_of_type(family.ring, t)
        have = sum(1 for piece, _ in blocks if piece == obj)
        want = allowed.smallest_at_least(have + 1)
        blocks.extend(
            (obj, ModuleMorphism.zero(obj, m)) for _ in range(want - have)
        )
    return blocks


def _padded_cover(family: PrecoverClass, m: ModuleObject) -> Precover:
    """The minimized cover with extra zero blocks; growth stays bounded."""
    cov = cover_of(family, m)
    blocks = _pad_blocks(family, m, list(cov.blocks))
    phi = assemble_from_blocks(m, blocks)
    return Precover(family, m, tuple(blocks), phi)


def padded_resolution(family: PrecoverClass, m: ModuleObject, length: int):
    """A resolution chain built from padded covers instead of covers."""
    pre = _padded_cover(family, m)
    terms = [pre.morphism.domain]
    diffs = [pre.morphism]
    prev = kernel(pre.morphism)
    for _ in range(length):
        pre = _padded_cover(family, prev.module)
        terms.append(pre.morphism.domain)
        diffs.append(prev.inclusion @ pre.morphism)
        prev = kernel(pre.morphism)
    return tuple(terms), tuple(diffs)


def _coefficient_pool(universe: UniverseSpec) -> tuple:
    small = replace(universe, max_total=min(2, universe.max_total))
    return tuple(m for m in enumerate_modules(small) if not m.is_zero)


def suite_ext_independence(config: LabConfig) -> LabReport:
    """Relative Ext is the same over cover and padded resolutions."""
    cases = []
    for family, universe in battery(config):
        label = class_expression(family)
        if _skip_powers(family):
            cases.append(LabCase(label, True, "excluded from the deep Ext sweep", True))
            continue
        coeffs = _coefficient_pool(universe)
        checked = 0
        bad = None
        for m in enumerate_modules(universe):
            for n in _levels(config):
                terms, diffs = padded_resolution(family, m, n + 1)
                for a in coeffs:
                    lhs = relative_ext(family, m, a, n).group
                    rhs = cohomology_of_chain(terms, diffs, a, n).group
                    checked += 1
                    if lhs != rhs and bad is None:
                        bad = (
                            f"{_instance(family, m, n)}; A={module_expression(a)}: "
                            f"{group_expression(lhs)} vs {group_expression(rhs)}"
                        )
        cases.append(LabCase(label, bad is None, bad or f"{checked} groups agree"))
    return LabReport(
        "ext-independence",
        "relative Ext does not depend on the resolution",
        tuple(cases),
    )


def suite_dimension_shift(config: LabConfig) -> LabReport:
    """With epi covers, Ext of M one degree up is Ext of the step kernel."""
    cases = []
    for family, universe in battery(config):
        label = class_expression(family)
        if _skip_powers(family):
            cases.append(LabCase(label, True, "excluded from the deep Ext sweep", True))
            continue
        mods = enumerate_modules(universe)
        stuck = next(
            (m for m in mods if not is_epi(cover_of(family, m).morphism)), None
        )
        if stuck is not None:
            cases.append(
                LabCase(
                    label,
                    True,
                    f"cover of {module_expression(stuck)} is not epi; shift not claimed",
                    True,
                )
            )
            continue
        coeffs = _coefficient_pool(universe)
        checked = 0
        bad = None
        for m in mods:
            k = schanuel_step(family, m)
            for n in range(1, config.max_level + 1):
                for a in coeffs:
                    lhs = relative_ext(family, m, a, n + 1).group
                    rhs = relative_ext(family, k, a, n).group
                    checked += 1
                    if lhs != rhs and bad is None:
                        bad = (
                            f"{_instance(family, m, n)}; A={module_expression(a)}: "
                            f"{group_expression(lhs)} vs {group_expression(rhs)}"
                        )
        cases.append(LabCase(label, bad is None, bad or f"{checked} degree shifts agree"))
    return LabReport(
        "dimension-shift",
        "epi covers shift relative Ext degrees along the step kernel",
        tuple(cases),
    )


# --------------------------------------------------------- reproductions


def _assert_case(cases, label, ok, details=""):
    cases.append(LabCase(label, bool(ok), details))


def repro_mono_nonepi_cover(config: LabConfig) -> LabReport:
    """The doubling precover over the prime cyclic class, in full detail.

    Over Z/4 with class add(Z/2): the cover of Z/4 is the doubling map
    from Z/2, a mono non-epi precover whose solution coset is the two
    units; covers of mixed targets keep identity and doubling blocks,
    with solution cosets of size 2^(j(i+j)) that consist entirely of
    automorphisms whose bottom corner squares to the identity while the
    corner stays small.
    """
    ring = RingSpec.modular(4)
    k = ModuleObject.cyclic(ring, 2)
    big = ModuleObject.cyclic(ring, 4)
    family = PrecoverClass.additive(k)
    cases = []
    cov = cover_of(family, big)
    phi1 = cov.morphism
    _assert_case(
        cases,
        "cover of Z/4 is doubling from Z/2",
        phi1.domain == k and phi1.matrix == ((2,),),
        f"matrix {phi1.matrix}",
    )
    _assert_case(cases, "the cover is mono", is_mono(phi1))
    _assert_case(cases, "the cover is not epi", not is_epi(phi1))
    ae = is_almost_epi(phi1)
    sols = endomorphism_coset(phi1)
    _assert_case(
        cases,
        "the solution coset is the two units",
        ae.is_yes and sols is not None and sorted(s.matrix for s in sols) == [((1,),), ((3,),)],
        f"coset {[s.matrix for s in sols or ()]}",
    )
    _assert_case(
        cases,
        "no epi precover of Z/4 exists in this class",
        has_epi_precover(family, big).is_no,
    )
    for i, j in [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (3, 0), (2, 1), (1, 2), (0, 3)]:
        m = direct_sum([k] * i + [big] * j)
        cov = cover_of(family, m)
        expected = direct_sum(
            [ModuleMorphism.identity(k)] * i + [phi1] * j
        ) if i + j > 1 else (ModuleMorphism.identity(k) if j == 0 else phi1)
        _assert_case(
            cases,
            f"cover of {module_expression(m)} is the identity/doubling block sum",
            cov.morphism == expected,
        )
        sols = endomorphism_coset(cov.morphism)
        want = 2 ** (j * (i + j))
        _assert_case(
            cases,
            f"solution coset at {module_expression(m)} has size {want}",
            sols is not None and len(sols) == want,
            f"got {len(sols) if sols is not None else 'none'}",
        )
        auto = sols is not None and all(is_automorphism(g) for g in sols)
        _assert_case(
            cases,
            f"every solution at {module_expression(m)} is an automorphism",
            auto and is_almost_epi(cov.morphism).is_yes,
        )
        if j and j <= 2 and sols is not None:
            rows = range(i, i + j)
            square = True
            for g in sols:
                gg = g @ g
                if any(
                    gg.matrix[r][c] != (1 if r == c else 0)
                    for r in rows
                    for c in rows
                ):
                    square = False
            _assert_case(
                cases,
                f"the bottom corner of each solution at {module_expression(m)} "
                "squares to the identity",
                square,
            )
    return LabReport(
        "prop-2.9",
        "a mono non-epi precover whose solutions are all units",
        tuple(cases),
    )


def repro_periodic_resolution(config: LabConfig) -> LabReport:
    """The length-2 free resolution of Z/2 over Z/4 and its Ext values."""
    ring = RingSpec.modular(4)
    k = ModuleObject.cyclic(ring, 2)
    big = ModuleObject.cyclic(ring, 4)
    family = PrecoverClass.additive(big)
    cases = []
    res = build_resolution(family, k, 2)
    _assert_case(
        cases,
        "the resolution terms are three copies of Z/4",
        res.terms == (big, big, big),
        " -> ".join(module_expression(t) for t in res.terms),
    )
    _assert_case(
        cases,
        "the differentials are reduction then doubling twice",
        res.differentials[0].matrix == ((1,),)
        and res.differentials[1].matrix == ((2,),)
        and res.differentials[2].matrix == ((2,),),
    )
    _assert_case(
        cases,
        "the chain verifies as a resolution",
        verify_resolution(res).is_yes,
    )
    e_kk = relative_ext(family, k, k, 1)
    e_kr = relative_ext(family, k, big, 1)
    e2 = relative_ext(family, k, k, 2)
    _assert_case(
        cases,
        "Ext^1 against Z/2 is Z/2",
        group_expression(e_kk.group) == "Z/2",
        str(e_kk),
    )
    _assert_case(
        cases,
        "Ext^1 against Z/4 vanishes",
        e_kr.group.is_zero,
        str(e_kr),
    )
    _assert_case(
        cases,
        "Ext^2 against Z/2 is Z/2 again",
        group_expression(e2.group) == "Z/2",
        str(e2),
    )
    _assert_case(
        cases,
        "the Schanuel step is periodic at Z/2",
        schanuel_step(family, k) == k,
    )
    return LabReport(
        "example-2.2-finite",
        "the two-periodic resolution of Z/2 over Z/4",
        tuple(cases),
    )


def repro_vanishing_without_resolution(config: LabConfig) -> LabReport:
    """Derived vanishing without any resolution, over a powers class.

    With D = Z/4 + Z/2 and the class of powers of D, the module Z/2 has
    vanishing first Ext for every coefficient, yet admits no length-0
    resolution: hom-group sizes rule out every candidate power.
    """
    ring = RingSpec.modular(4)
    k = ModuleObject.cyclic(ring, 2)
    big = ModuleObject.cyclic(ring, 4)
    d = direct_sum([k, big])
    family = PrecoverClass.powers(d)
    cases = []
    e = check_E(family, k, 0)
    _assert_case(cases, "E holds at level 0", e.is_yes, e.reason)
    r = check_R(family, k, 0)
    _assert_case(cases, "R fails at level 0", r.is_no, r.reason)
    _assert_case(
        cases,
        "hom-group sizes exclude every candidate power",
        hom_count(d, k) == 4 and hom_count(d, d) == 32,
        f"|Hom(D, Z/2)| = {hom_count(d, k)}, |Hom(D, D)| = {hom_count(d, d)}",
    )
    s = check_S(family, k, 0)
    _assert_case(cases, "S fails at level 0 as well", s.is_no, s.reason)
    return LabReport(
        "lemma-2.4-witness",
        "vanishing Ext with no resolution over a powers class",
        tuple(cases),
    )


def repro_doubling_on_z(config: LabConfig) -> LabReport:
    """Doubling on Z is almost epi with a solution coset of one."""
    z = ModuleObject.free(1)
    dbl = ModuleMorphism(z, z, ((2,),))
    cases = []
    _assert_case(cases, "doubling is mono", is_mono(dbl))
    _assert_case(cases, "doubling is not epi", not is_epi(dbl))
    coker = image_cokernel(dbl).cokernel
    _assert_case(
        cases,
        "the cokernel is Z/2",
        group_expression(coker) == "Z/2",
        group_expression(coker),
    )
    ae = is_almost_epi(dbl)
    sols = endomorphism_coset(dbl)
    _assert_case(
        cases,
        "the identity is the only solution",
        ae.is_yes and sols == (ModuleMorphism.identity(z),),
        ae.reason,
    )
    return LabReport(
        "example-2.7",
        "doubling on the integers is almost epi",
        tuple(cases),
    )


def repro_torsion_class_gap(config: LabConfig) -> LabReport:
    """Over the torsion class, Z resolves trivially but never vanishes.

    The zero module is a mono non-isomorphism precover of Z, giving a
    length-0 resolution, while the Schanuel class of Z stays nonzero:
    the R-to-S implication fails on the nose.
    """
    family = PrecoverClass.torsion_over_z()
    z = ModuleObject.free(1)
    cases = []
    zero = ModuleObject.zero(INTEGERS)
    incl = ModuleMorphism.zero(zero, z)
    v = verify_precover(family, incl)
    _assert_case(
        cases,
        "the zero module is a precover of Z",
        v.is_yes and is_mono(incl) and not is_epi(incl),
        v.reason,
    )
    tr = trace_submodule(family, z)
    _assert_case(
        cases,
        "the trace of Z is zero",
        tr.module.is_zero,
    )
    h = mono_precovers_are_iso(family, (z,))
    _assert_case(
        cases,
        "a mono non-isomorphism precover is detected",
        h.is_no and h.witness[0] == z,
        h.reason,
    )
    r = check_R(family, z, 0)
    _assert_case(cases, "R holds for Z at level 0", r.is_yes, r.reason)
    s = check_S(family, z, 0)
    _assert_case(cases, "S fails for Z at level 0", s.is_no, s.reason)
    mixed = ModuleObject(INTEGERS, (2,), 1)
    r2 = check_R(family, mixed, 0)
    s2 = check_S(family, mixed, 0)
    _assert_case(
        cases,
        "the mixed module Z + Z/2 behaves the same way",
        r2.is_yes and s2.is_no,
    )
    return LabReport(
        "example-3.7b",
        "resolutions without Schanuel vanishing over the torsion class",
        tuple(cases),
    )


SUITES = {
    "prop-2.1": suite_resolution_forces_vanishing,
    "lemma-2.5": suite_solution_coset,
    "lemma-2.8": suite_kernel_agreement,
    "thm-2.10": suite_vanishing_equals_resolution,
    "thm-3.4": suite_weakly_closed,
    "lemma-3.6": suite_separating,
    "thm-3.8": suite_resolution_forces_schanuel,
    "schanuel-welldef": suite_schanuel_welldefined,
    "ext-independence": suite_ext_independence,
    "dimension-shift": suite_dimension_shift,
}

REPRODUCTIONS = {
    "prop-2.9": repro_mono_nonepi_cover,
    "example-2.2-finite": repro_periodic_resolution,
    "lemma-2.4-witness": repro_vanishing_without_resolution,
    "example-2.7": repro_doubling_on_z,
    "example-3.7b": repro_torsion_class_gap,
}


def suite_ids() -> tuple:
    return tuple(SUITES)


def reproduction_ids() -> tuple:
    return tuple(REPRODUCTIONS)


def run_suite(ident: str, config: LabConfig | None = None) -> LabReport:
    if ident not in SUITES:
        raise KeyError(f"unknown suite {ident!r}")
    return SUITES[ident](config or LabConfig())


def run_reproduction(ident: str, config: LabConfig | None = None) -> LabReport:
    if ident not in REPRODUCTIONS:
        raise KeyError(f"unknown reproduction {ident!r}")
    return REPRODUCTIONS[ident](config or LabConfig())
