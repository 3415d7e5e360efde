"""Resolutions, relative Ext, Schanuel iteration, and the three conditions.

A resolution here is the chain built from iterated covers: each
differential is the cover of the previous kernel followed by that
kernel's inclusion.  Such a chain is exact against Hom(F, -) for every
class member F by construction, and verify_resolution recomputes the
factorization evidence from scratch.

The three conditions on a module M at level n are

  E: the (n+1)-st relative Ext group vanishes for every coefficient,
  R: some resolution of length n exists,
  S: the n-th Schanuel class of M is the class of 0.

E is decided exactly: a single universal coefficient (the cokernel of
the next differential) detects nonvanishing.  R is decided by greedy
termination plus an exhaustive search at n == 0; the greedy route can
be inconclusive at higher n, which is reported as Unknown rather than
guessed.  S is a closed-form equivalence check on the iterated kernel.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .modules import (
    INTEGERS,
    ModuleMorphism,
    ModuleObject,
    direct_sum,
    group_expression,
    hom_count,
    hom_group,
    image_cokernel,
    kernel,
    module_expression,
    solve_factorization,
    solve_left_factor,
)
from .precover import (
    ADDITIVE,
    CONSTRAINED,
    POWERS,
    PrecoverClass,
    contains,
    cover_of,
    equivalent,
    indecomposable_of_type,
    test_objects,
    trace_submodule,
)
from .verdicts import ConditionVerdict

SEARCH_CAP = 1 << 12


@dataclass(frozen=True)
class ResolutionComplex:
    """A cover-built chain F_L -> ... -> F_0 -> M with its kernel data.

    kernel_objects[i] is ker(d_i) as a submodule of F_i; the tail is
    invisible when no class member maps nontrivially into the last
    kernel, which makes the truncated chain a finished resolution.
    """

    family: PrecoverClass
    target: ModuleObject
    terms: tuple
    differentials: tuple
    kernel_objects: tuple
    invisible_tail: bool

    @property
    def length(self) -> int:
        return len(self.terms) - 1


@lru_cache(maxsize=None)
def build_resolution(family: PrecoverClass, m: ModuleObject, length: int) -> ResolutionComplex:
    """Iterate covers to terms F_0..F_length.

    >>> from .modules import RingSpec
    >>> from .precover import PrecoverClass
    >>> R4 = RingSpec.modular(4)
    >>> res = build_resolution(
    ...     PrecoverClass.additive(ModuleObject(R4, (2,))), ModuleObject(R4, (2,)), 1)
    >>> [module_expression(t) for t in res.terms]
    ['[2]', '0']
    """
    if length < 0:
        raise ValueError("resolution length cannot be negative")
    terms = []
    differentials = []
    kernels = []
    cov = cover_of(family, m)
    terms.append(cov.morphism.domain)
    differentials.append(cov.morphism)
    kernels.append(kernel(cov.morphism))
    for _ in range(length):
        prev = kernels[-1]
        cov = cover_of(family, prev.module)
        d = prev.inclusion @ cov.morphism
        terms.append(cov.morphism.domain)
        differentials.append(d)
        k = kernel(cov.morphism)
        if not (d @ k.inclusion).is_zero_map:
            raise AssertionError("kernel inclusion escaped the differential")
        kernels.append(k)
    tail = kernels[-1].module
    invisible = trace_submodule(family, tail).module.is_zero
    return ResolutionComplex(
        family, m, tuple(terms), tuple(differentials), tuple(kernels), invisible
    )


@dataclass(frozen=True)
class ResolutionCertificate:
    """Recomputed evidence that a chain is a resolution.

    surjectivity holds the (generator, lift) pairs over the target,
    exactness holds them spot by spot, and composites records that
    consecutive differentials compose to zero.
    """

    surjectivity: tuple
    exactness: tuple
    composites_vanish: bool


def resolution_test_objects(res: ResolutionComplex) -> tuple:
    """Test objects covering the target and every term of the chain."""
    out = []
    seen = set()
    for m in (res.target, *res.terms):
        for obj in test_objects(res.family, m):
            if obj not in seen:
                seen.add(obj)
                out.append(obj)
    return tuple(out)


def verify_resolution(res: ResolutionComplex) -> ConditionVerdict:
    """Recheck Hom(F, -)-exactness of the chain from scratch.

    Exactness at each spot reduces to factoring the finitely many basis
    maps into the kernel through the next differential; the boundary
    spots are the precover property at the target and, when the tail is
    declared invisible, the vanishing of maps into the last kernel.
    """
    objs = resolution_test_objects(res)
    for i in range(len(res.differentials) - 1):
        comp = res.differentials[i] @ res.differentials[i + 1]
        if not comp.is_zero_map:
            return ConditionVerdict.no(f"differentials {i} and {i + 1} do not compose to zero")
    surj = []
    for obj in objs:
        for g in hom_group(obj, res.target).basis:
            psi = solve_factorization(g, res.differentials[0])
            if psi is None:
                return ConditionVerdict.no(
                    f"a map {module_expression(obj)} -> target does not lift"
                )
            surj.append((g, psi))
    exact = []
    sizes_agree = True
    for i in range(len(res.terms) - 1):
        k = res.kernel_objects[i]
        spot = []
        for obj in objs:
            for b in hom_group(obj, k.module).basis:
                g = k.inclusion @ b
                psi = solve_factorization(g, res.differentials[i + 1])
                if psi is None:
                    return ConditionVerdict.no(
                        f"a kernel map at spot {i} does not lift to term {i + 1}"
                    )
                spot.append((g, psi))
            # counting cross-check when everything is finite: the lifts
            # found above pin |Hom(I, K_i)| * |Hom(I, K_{i+1})| to
            # |Hom(I, F_{i+1})|
            a = hom_count(obj, k.module)
            b_ = hom_count(obj, res.kernel_objects[i + 1].module)
            c = hom_count(obj, res.terms[i + 1])
            if a is not None and b_ is not None and c is not None and a * b_ != c:
                sizes_agree = False
        exact.append(tuple(spot))
    if not sizes_agree:
        raise AssertionError("hom-count bookkeeping disagrees with the lifts")
    if res.invisible_tail:
        tail = res.kernel_objects[-1].module
        for obj in objs:
            if hom_count(obj, tail) != 1:
                return ConditionVerdict.no(
                    f"the tail kernel {module_expression(tail)} still receives maps"
                )
    cert = ResolutionCertificate(tuple(surj), tuple(exact), True)
    label = "object" if len(objs) == 1 else "objects"
    return ConditionVerdict.yes(
        f"exact against {len(objs)} test {label}", witness=cert
    )


@dataclass(frozen=True)
class ExtResult:
    """A relative Ext value with the cochain data it came from."""

    group: ModuleObject
    cochain_groups: tuple
    differentials: tuple

    def __str__(self) -> str:
        return group_expression(self.group)


@lru_cache(maxsize=None)
def relative_ext(
    family: PrecoverClass, m: ModuleObject, coeff: ModuleObject, n: int
) -> ExtResult:
    """n-th cohomology of Hom(F_*, coeff) for a cover-built resolution of m.

    >>> from .modules import RingSpec
    >>> from .precover import PrecoverClass
    >>> R4 = RingSpec.modular(4)
    >>> k = ModuleObject(R4, (2,))
    >>> free = PrecoverClass.additive(ModuleObject(R4, (4,)))
    >>> str(relative_ext(free, k, k, 1))
    'Z/2'
    """
    if n < 0:
        raise ValueError("Ext degree cannot be negative")
    if coeff.ring != family.ring:
        raise ValueError("coefficients live over the wrong ring")
    res = build_resolution(family, m, n + 1)
    return cohomology_of_chain(res.terms, res.differentials, coeff, n)


def cohomology_of_chain(terms, differentials, coeff: ModuleObject, n: int) -> ExtResult:
    """n-th cohomology of Hom(-, coeff) applied to a chain of terms.

    differentials[i + 1] maps terms[i + 1] into terms[i]; the chain must
    extend at least one spot past n.
    """
    if len(terms) < n + 2:
        raise ValueError("the chain is too short for this degree")
    homs = [hom_group(t, coeff) for t in terms]
    groups = [h.group for h in homs]
    maps = []
    for i in range(n + 1):
        cols = [
            homs[i + 1].coordinates(b @ differentials[i + 1]) for b in homs[i].basis
        ]
        rows = [
            [cols[c][r] for c in range(len(cols))]
            for r in range(groups[i + 1].generator_count)
        ]
        maps.append(ModuleMorphism(groups[i], groups[i + 1], tuple(tuple(r) for r in rows)))
    for i in range(len(maps) - 1):
        if not (maps[i + 1] @ maps[i]).is_zero_map:
            raise AssertionError("cochain differentials do not compose to zero")
    if n == 0:
        group = kernel(maps[0]).module
    else:
        kn = kernel(maps[n])
        gamma = solve_factorization(maps[n - 1], kn.inclusion)
        if gamma is None:
            raise AssertionError("cocycle image escaped the kernel")
        group = image_cokernel(gamma).cokernel
    return ExtResult(group, tuple(groups), tuple(maps))


def schanuel_step(family: PrecoverClass, m: ModuleObject) -> ModuleObject:
    """Kernel of the cover of m; iterating it drives the S condition."""
    return kernel(cover_of(family, m).morphism).module


def schanuel_iterate(family: PrecoverClass, m: ModuleObject, n: int) -> ModuleObject:
    x = m
    for _ in range(n):
        x = schanuel_step(family, x)
    return x


def check_S(family: PrecoverClass, m: ModuleObject, n: int) -> ConditionVerdict:
    """Whether the n-th Schanuel class of m is the class of zero."""
    if n < 0:
        raise ValueError("level cannot be negative")
    x = schanuel_iterate(family, m, n)
    verdict = equivalent(family, x, ModuleObject.zero(family.ring))
    if verdict.is_yes:
        return ConditionVerdict.yes(
            f"kernel {module_expression(x)} is equivalent to 0: {verdict.reason}",
            witness=verdict.witness,
        )
    return ConditionVerdict.no(
        f"kernel {module_expression(x)} stays nonzero up to class pads: {verdict.reason}",
        witness=x,
    )


def check_E(family: PrecoverClass, m: ModuleObject, n: int) -> ConditionVerdict:
    """Whether the (n+1)-st relative Ext of m vanishes for every coefficient.

    Decided by one universal coefficient: with Q the cokernel of
    d_{n+2}, every cocycle at spot n+1 factors through the projection
    onto Q, so vanishing for all coefficients is exactly the projection
    lifting along d_{n+1}.
    """
    if n < 0:
        raise ValueError("level cannot be negative")
    res = build_resolution(family, m, n + 2)
    d_in = res.differentials[n + 2]
    d_out = res.differentials[n + 1]
    q = image_cokernel(d_in).projection
    lift = solve_left_factor(q, d_out)
    if lift is not None:
        return ConditionVerdict.yes(
            "the universal cocycle lifts, so every Ext class dies", witness=lift
        )
    obstruction = relative_ext(family, m, q.codomain, n + 1)
    if obstruction.group.is_zero:
        raise AssertionError("the universal coefficient lost the obstruction")
    return ConditionVerdict.no(
        f"Ext^{n + 1} with the universal coefficient "
        f"{module_expression(q.codomain)} is {group_expression(obstruction.group)}",
        witness=(q.codomain, obstruction.group),
    )


def check_R(family: PrecoverClass, m: ModuleObject, n: int) -> ConditionVerdict:
    """Whether a length-n resolution of m exists.

    Greedy route: iterate covers; at each step the chain finishes if
    the current kernel lies in the class (use it as the last term) or
    the next kernel receives no maps from the class.  At n == 0 an
    exhaustive search over bounded candidates settles the question
    completely; at higher n a failed greedy run falls back to the E
    obstruction, and Unknown is returned when that is silent.
    """
    if n < 0:
        raise ValueError("level cannot be negative")
    x = m
    chain = []
    for i in range(n + 1):
        if contains(family, x):
            terms = tuple(chain) + (x,) + (ModuleObject.zero(family.ring),) * (n - i)
            return ConditionVerdict.yes(
                f"the chain terminates at step {i}: the kernel is a class member",
                witness=terms,
            )
        cov = cover_of(family, x)
        nxt = kernel(cov.morphism).module
        if trace_submodule(family, nxt).module.is_zero:
            terms = tuple(chain) + (cov.morphism.domain,) + (
                ModuleObject.zero(family.ring),
            ) * (n - i)
            return ConditionVerdict.yes(
                f"the chain terminates at step {i}: the next kernel is invisible",
                witness=terms,
            )
        chain.append(cov.morphism.domain)
        x = nxt
    if n == 0:
        return _exhaustive_length_zero(family, m)
    e = check_E(family, m, n)
    if e.is_no:
        return ConditionVerdict.no(
            "no resolution exists: a derived obstruction survives", witness=e.witness
        )
    return ConditionVerdict.unknown("the greedy chain does not terminate at this length")


def _exhaustive_length_zero(family: PrecoverClass, m: ModuleObject) -> ConditionVerdict:
    """Complete search for a length-0 resolution.

    A one-term resolution F -> m makes Hom(I, -) a bijection at F for
    every test object I, so Hom(I, F) and Hom(I, m) must be isomorphic
    groups.  Structure is additive in the summands of F, which bounds
    the candidate multiplicities by generator counts; every map out of
    each surviving candidate is then tried.
    """
    objs = test_objects(family, m)
    targets = {obj: hom_group(obj, m).group for obj in objs}
    pieces = _candidate_pieces(family)
    if pieces is None:
        return ConditionVerdict.unknown("the class has no searchable shape")
    bounded = []
    for piece, allowed in pieces:
        pairwise = {obj: hom_group(obj, piece).group for obj in objs}
        bound = None
        for obj in objs:
            g = pairwise[obj].generator_count
            if g:
                b = targets[obj].generator_count // g
                bound = b if bound is None else min(bound, b)
        # a hom-invisible piece never helps, so multiplicity 0 suffices
        bounded.append((piece, allowed, pairwise, bound or 0))
    ranges = [range(b + 1) for _, _, _, b in bounded]
    skipped = False
    for mults in product(*ranges):
        if any(not allowed(k) for (_, allowed, _, _), k in zip(bounded, mults)):
            continue
        ok = True
        for obj in objs:
            parts = []
            for (_, _, pairwise, _), k in zip(bounded, mults):
                parts.extend([pairwise[obj]] * k)
            built = direct_sum(parts) if parts else ModuleObject.zero(INTEGERS)
            if built != targets[obj]:
                ok = False
                break
        if not ok:
            continue
        parts = []
        for (piece, _, _, _), k in zip(bounded, mults):
            parts.extend([piece] * k)
        candidate = direct_sum(parts) if parts else ModuleObject.zero(family.ring)
        verdict = _try_all_maps(candidate, m, objs)
        if verdict is None:
            skipped = True
        elif verdict is not False:
            return verdict
    if skipped:
        return ConditionVerdict.unknown(
            "a candidate was too large to sweep all maps"
        )
    return ConditionVerdict.no(
        "no candidate matches the target on every hom group"
    )


def _candidate_pieces(family: PrecoverClass):
    """Building blocks and multiplicity predicates for the length-0 search."""
    if family.kind == POWERS:
        if family.base.is_zero:
            return []
        return [(family.base, lambda k: True)]
    if family.kind == ADDITIVE:
        return [
            (indecomposable_of_type(family.ring, t), lambda k: True)
            for t in family.support_types()
        ]
    if family.kind == CONSTRAINED:
        return [
            (indecomposable_of_type(family.ring, t), allowed.contains)
            for t, allowed in family.allowed
        ]
    return None


def _try_all_maps(candidate, m, objs):
    """Sweep maps candidate -> m for one lifting every generator.

    Returns a Yes verdict on success, False when the full sweep found
    nothing, and None when the sweep was too large to run.
    """
    hg = hom_group(candidate, m)
    orders = hg.group.generator_orders()
    if any(o == 0 for o in orders):
        return None
    total = 1
    for o in orders:
        total *= o
    if total > SEARCH_CAP:
        return None
    gens = []
    for obj in objs:
        gens.extend(hom_group(obj, m).basis)
    for coeffs in product(*[range(o) for o in orders]):
        d = ModuleMorphism.zero(candidate, m)
        for c, b in zip(coeffs, hg.basis):
            if c:
                d = d + b.scaled(c)
        if all(solve_factorization(g, d) is not None for g in gens):
            return ConditionVerdict.yes(
                f"found a one-term resolution {module_expression(candidate)} -> "
                f"{module_expression(m)}",
                witness=(candidate, d),
            )
    return False


def check_condition(
    family: PrecoverClass, m: ModuleObject, condition: str, n: int
) -> ConditionVerdict:
    """Dispatch to the E, R, or S decision."""
    if condition == "E":
        return check_E(family, m, n)
    if condition == "R":
        return check_R(family, m, n)
    if condition == "S":
        return check_S(family, m, n)
    raise ValueError(f"unknown condition {condition!r}")
