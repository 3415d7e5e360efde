"""Finitely generated modules over Z and Z/nZ, with exact morphism calculus.

A module is stored in canonical form: a multiset of prime-power cyclic
orders plus a free rank (free generators only over Z).  Morphisms are
integer matrices with one row per codomain generator; an entry is only
constrained by the congruence that makes the map well defined, namely
d_i * a[j][i] == 0 modulo the order of the j-th codomain generator,
where order 0 encodes a free generator and "modulo 0" means equality.

>>> R4 = RingSpec.modular(4)
>>> ModuleObject(R4, (4, 2))
ModuleObject(ring=RingSpec(modulus=4), orders=(2, 4), free_rank=0)
>>> hom_group(ModuleObject(R4, (2,)), ModuleObject(R4, (4,))).group
ModuleObject(ring=RingSpec(modulus=None), orders=(2,), free_rank=0)
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, prod

from .snf import (
    freeze,
    kernel_generators,
    mat_vec,
    snf_data,
)


@dataclass(frozen=True)
class RingSpec:
    """Either the integers (modulus None) or Z/nZ for n >= 2."""

    modulus: int | None

    def __post_init__(self):
        if self.modulus is not None and self.modulus < 2:
            raise ValueError("modulus must be at least 2")

    @classmethod
    def integers(cls) -> "RingSpec":
        return cls(None)

    @classmethod
    def modular(cls, n: int) -> "RingSpec":
        return cls(n)

    @property
    def is_modular(self) -> bool:
        return self.modulus is not None

    def __str__(self) -> str:
        return "Z" if self.modulus is None else f"Z/{self.modulus}"


INTEGERS = RingSpec.integers()


def _factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division; fine at the scales used here."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _prime_of(order: int) -> int:
    d = 2
    while d * d <= order:
        if order % d == 0:
            return d
        d += 1 if d == 2 else 2
    return order


def _split_prime_powers(order: int) -> list[int]:
    return sorted(p ** e for p, e in _factorize(order).items())


@dataclass(frozen=True)
class ModuleObject:
    """Canonical form: prime-power torsion orders ascending, then free rank.

    >>> ModuleObject(INTEGERS, (6,), 1).orders
    (2, 3)
    """

    ring: RingSpec
    orders: tuple[int, ...] = ()
    free_rank: int = 0

    def __post_init__(self):
        split: list[int] = []
        for o in self.orders:
            if o < 2:
                raise ValueError(f"torsion order {o} is not allowed")
            split.extend(_split_prime_powers(o))
        object.__setattr__(self, "orders", tuple(sorted(split)))
        if self.free_rank < 0:
            raise ValueError("free rank cannot be negative")
        if self.ring.is_modular:
            if self.free_rank:
                raise ValueError("free generators only exist over Z")
            n = self.ring.modulus
            for o in self.orders:
                if n % o:
                    raise ValueError(f"order {o} does not divide the modulus {n}")

    @classmethod
    def zero(cls, ring: RingSpec) -> "ModuleObject":
        return cls(ring, (), 0)

    @classmethod
    def cyclic(cls, ring: RingSpec, order: int) -> "ModuleObject":
        return cls(ring, (order,), 0)

    @classmethod
    def free(cls, rank: int) -> "ModuleObject":
        return cls(INTEGERS, (), rank)

    @property
    def is_zero(self) -> bool:
        return not self.orders and not self.free_rank

    def generator_orders(self) -> tuple[int, ...]:
        return self.orders + (0,) * self.free_rank

    @property
    def generator_count(self) -> int:
        return len(self.orders) + self.free_rank

    def size(self) -> int | None:
        """Number of elements, or None when infinite."""
        return None if self.free_rank else prod(self.orders)

    def multiplicities(self) -> dict[int, int]:
        """Multiset of indecomposable types; key 0 counts free summands."""
        out: dict[int, int] = {}
        for o in self.orders:
            out[o] = out.get(o, 0) + 1
        if self.free_rank:
            out[0] = self.free_rank
        return out

    def summands(self) -> tuple["ModuleObject", ...]:
        """The indecomposable summands, one object per generator."""
        pieces = [ModuleObject(self.ring, (o,)) for o in self.orders]
        pieces.extend(ModuleObject(self.ring, (), 1) for _ in range(self.free_rank))
        return tuple(pieces)

    def serialize(self) -> str:
        orders = "[" + ",".join(str(o) for o in reversed(self.orders)) + "]"
        return f"ring={self.ring}; rank={self.free_rank}; orders={orders}"

    def __str__(self) -> str:
        return module_expression(self)


def module_expression(m: ModuleObject) -> str:
    """Short bracket form: "[4,2]", "rank1+[2]", "rank1", or "0"."""
    if m.is_zero:
        return "0"
    brackets = "[" + ",".join(str(o) for o in reversed(m.orders)) + "]"
    if not m.free_rank:
        return brackets
    if not m.orders:
        return f"rank{m.free_rank}"
    return f"rank{m.free_rank}+{brackets}"


def group_expression(m: ModuleObject) -> str:
    """Additive display of an abelian group value, e.g. "Z + Z/4 + Z/2"."""
    parts = []
    if m.free_rank == 1:
        parts.append("Z")
    elif m.free_rank:
        parts.append(f"Z^{m.free_rank}")
    parts.extend(f"Z/{o}" for o in reversed(m.orders))
    return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class ModuleMorphism:
    """Integer matrix of a module map; row j per codomain generator.

    Entries are reduced into [0, e_j) on torsion rows.  Construction
    raises ValueError when the matrix does not define a module map.
    """

    domain: ModuleObject
    codomain: ModuleObject
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.domain.ring != self.codomain.ring:
            raise ValueError("domain and codomain live over different rings")
        dom_orders = self.domain.generator_orders()
        cod_orders = self.codomain.generator_orders()
        rows = [list(r) for r in self.matrix]
        if len(rows) != len(cod_orders) or any(len(r) != len(dom_orders) for r in rows):
            raise ValueError("matrix shape does not match the generator counts")
        for j, e in enumerate(cod_orders):
            if e:
                rows[j] = [a % e for a in rows[j]]
        for j, e in enumerate(cod_orders):
            for i, d in enumerate(dom_orders):
                if not d:
                    continue
                prodv = d * rows[j][i]
                if (prodv % e if e else prodv) != 0:
                    raise ValueError(
                        f"entry {rows[j][i]} at ({j},{i}) breaks the order-{d} relation"
                    )
        object.__setattr__(self, "matrix", freeze(rows))

    @classmethod
    def zero(cls, domain: ModuleObject, codomain: ModuleObject) -> "ModuleMorphism":
        rows = [[0] * domain.generator_count for _ in range(codomain.generator_count)]
        return cls(domain, codomain, freeze(rows))

    @classmethod
    def identity(cls, m: ModuleObject) -> "ModuleMorphism":
        n = m.generator_count
        rows = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
        return cls(m, m, freeze(rows))

    @property
    def is_zero_map(self) -> bool:
        return all(all(a == 0 for a in row) for row in self.matrix)

    def __matmul__(self, other: "ModuleMorphism") -> "ModuleMorphism":
        """Composition self after other."""
        if other.codomain != self.domain:
            raise ValueError("composition mismatch")
        rows = []
        for j in range(self.codomain.generator_count):
            row = self.matrix[j]
            rows.append([
                sum(row[k] * other.matrix[k][i] for k in range(self.domain.generator_count))
                for i in range(other.domain.generator_count)
            ])
        return ModuleMorphism(other.domain, self.codomain, freeze(rows))

    def __add__(self, other: "ModuleMorphism") -> "ModuleMorphism":
        if self.domain != other.domain or self.codomain != other.codomain:
            raise ValueError("sum of maps with different ends")
        rows = [
            [a + b for a, b in zip(ra, rb)]
            for ra, rb in zip(self.matrix, other.matrix)
        ]
        return ModuleMorphism(self.domain, self.codomain, freeze(rows))

    def __neg__(self) -> "ModuleMorphism":
        rows = [[-a for a in row] for row in self.matrix]
        return ModuleMorphism(self.domain, self.codomain, freeze(rows))

    def scaled(self, c: int) -> "ModuleMorphism":
        rows = [[c * a for a in row] for row in self.matrix]
        return ModuleMorphism(self.domain, self.codomain, freeze(rows))

    def apply(self, vector) -> tuple[int, ...]:
        """Image of an element given in domain generator coordinates."""
        out = list(mat_vec(self.matrix, tuple(vector)))
        for j, e in enumerate(self.codomain.generator_orders()):
            if e:
                out[j] %= e
        return tuple(out)


def decompose(ring: RingSpec, relations, generators: int) -> ModuleObject:
    """Canonical form of the module presented by relation rows on generators.

    >>> decompose(INTEGERS, [[6, 0]], 2)
    ModuleObject(ring=RingSpec(modulus=None), orders=(2, 3), free_rank=1)
    """
    rel = [tuple(r) for r in relations]
    for r in rel:
        if len(r) != generators:
            raise ValueError("relation length does not match the generator count")
    if ring.is_modular:
        n = ring.modulus
        rel.extend(tuple(n if k == i else 0 for k in range(generators)) for i in range(generators))
    entries = _quotient_of_lattice(generators, rel)
    torsion = tuple(o for o, _, _ in entries if o)
    free = sum(1 for o, _, _ in entries if not o)
    return ModuleObject(ring, torsion, free)


def _quotient_of_lattice(ambient: int, relations):
    """Structure of Z^ambient modulo the subgroup the relation vectors span.

    Returns a list of (order, representative, projection_row) triples in
    canonical order; order 0 marks a free generator.  The representative
    is an ambient vector mapping onto the canonical generator, and the
    projection row gives that generator's coefficient in the image of
    each ambient basis vector.
    """
    k = len(relations)
    cols = freeze([[relations[c][r] for c in range(k)] for r in range(ambient)])
    res = snf_data(cols, ambient, k)
    diag = res.diagonal
    raw = []
    for t in range(ambient):
        order = diag[t] if t < len(diag) else 0
        if order == 1:
            continue
        rep = tuple(res.uinv[r][t] for r in range(ambient))
        proj = tuple(res.u[t][r] for r in range(ambient))
        raw.append((order, rep, proj))
    entries = []
    for order, rep, proj in raw:
        if order == 0:
            entries.append((0, rep, proj))
            continue
        for q in _split_prime_powers(order):
            if q == order:
                entries.append((order, rep, proj))
                continue
            # CRT: c is 1 mod q and 0 mod order/q, so c*rep generates
            # the q-primary component of the cyclic piece
            m = order // q
            c = m * pow(m, -1, q)
            entries.append((q, tuple(c * x for x in rep), proj))
    entries.sort(key=lambda e: (e[0] == 0, e[0]))
    return entries


@dataclass(frozen=True)
class SubmoduleResult:
    module: ModuleObject
    inclusion: ModuleMorphism


def submodule(m: ModuleObject, vectors) -> SubmoduleResult:
    """Subgroup of m generated by the given coordinate vectors.

    Returns the canonical module together with its inclusion into m.
    """
    orders = m.generator_orders()
    ambient = len(orders)
    gens = [tuple(v) for v in vectors]
    for v in gens:
        if len(v) != ambient:
            raise ValueError("generator vector has the wrong length")
    torsion_rel = [
        tuple(orders[i] if k == i else 0 for k in range(ambient))
        for i in range(ambient)
        if orders[i]
    ]
    lattice = gens + torsion_rel
    if not lattice or ambient == 0:
        zero = ModuleObject.zero(m.ring)
        return SubmoduleResult(zero, ModuleMorphism.zero(zero, m))
    cols = freeze([[lattice[c][r] for c in range(len(lattice))] for r in range(ambient)])
    res = snf_data(cols, ambient, len(lattice))
    basis = []
    for t, s in enumerate(res.diagonal):
        if s:
            basis.append(tuple(s * res.uinv[r][t] for r in range(ambient)))
    sdim = len(basis)
    if sdim == 0:
        zero = ModuleObject.zero(m.ring)
        return SubmoduleResult(zero, ModuleMorphism.zero(zero, m))
    bmat = freeze([[basis[c][r] for c in range(sdim)] for r in range(ambient)])
    bres = snf_data(bmat, ambient, sdim)
    # coordinates of the ambient torsion relations in the chosen basis;
    # they lie in the lattice by construction, so each solve succeeds
    inner_rel = []
    for rel in torsion_rel:
        x = _solve_with(bres, rel, ambient, sdim)
        if x is None:
            raise AssertionError("torsion relation escaped the sublattice")
        inner_rel.append(x)
    entries = _quotient_of_lattice(sdim, inner_rel)
    sub_orders = tuple(o for o, _, _ in entries if o)
    sub_free = sum(1 for o, _, _ in entries if not o)
    sub = ModuleObject(m.ring, sub_orders, sub_free)
    incl_cols = []
    for order, rep, _ in entries:
        vec = [sum(bmat[r][c] * rep[c] for c in range(sdim)) for r in range(ambient)]
        incl_cols.append(vec)
    rows = [[incl_cols[c][r] for c in range(len(incl_cols))] for r in range(ambient)]
    return SubmoduleResult(sub, ModuleMorphism(sub, m, freeze(rows)))


def _solve_with(res, b, nrows, ncols):
    c = mat_vec(res.u, tuple(b))
    diag = res.diagonal
    y = [0] * ncols
    for i in range(nrows):
        d = diag[i] if i < len(diag) else 0
        if d:
            if c[i] % d:
                return None
            y[i] = c[i] // d
        elif c[i]:
            return None
    return mat_vec(res.v, tuple(y))


@dataclass(frozen=True)
class KernelResult:
    module: ModuleObject
    inclusion: ModuleMorphism


@lru_cache(maxsize=None)
def kernel(f: ModuleMorphism) -> KernelResult:
    """Kernel with its inclusion; exact via an integer lift of the congruences.

    >>> R4 = RingSpec.modular(4)
    >>> doubling = ModuleMorphism(ModuleObject(R4, (4,)), ModuleObject(R4, (4,)), ((2,),))
    >>> kernel(doubling).module.orders
    (2,)
    """
    dom_orders = f.domain.generator_orders()
    cod_orders = f.codomain.generator_orders()
    ndom, ncod = len(dom_orders), len(cod_orders)
    slack = [j for j, e in enumerate(cod_orders) if e]
    rows = []
    for j in range(ncod):
        row = list(f.matrix[j]) + [0] * len(slack)
        rows.append(row)
    for c, j in enumerate(slack):
        rows[j][ndom + c] = cod_orders[j]
    gens = kernel_generators(freeze(rows), ncod, ndom + len(slack))
    vectors = [g[:ndom] for g in gens]
    sub = submodule(f.domain, vectors)
    return KernelResult(sub.module, sub.inclusion)


@dataclass(frozen=True)
class ImageCokernel:
    image: ModuleObject
    cokernel: ModuleObject
    projection: ModuleMorphism
    image_inclusion: ModuleMorphism


@lru_cache(maxsize=None)
def image_cokernel(f: ModuleMorphism) -> ImageCokernel:
    """Image (with inclusion) and cokernel (with projection) of a map."""
    cod = f.codomain
    cod_orders = cod.generator_orders()
    ncod = len(cod_orders)
    columns = [
        tuple(f.matrix[j][i] for j in range(ncod))
        for i in range(f.domain.generator_count)
    ]
    sub = submodule(cod, columns)
    rel = list(columns) + [
        tuple(cod_orders[i] if k == i else 0 for k in range(ncod))
        for i in range(ncod)
        if cod_orders[i]
    ]
    entries = _quotient_of_lattice(ncod, rel)
    coker = ModuleObject(
        cod.ring,
        tuple(o for o, _, _ in entries if o),
        sum(1 for o, _, _ in entries if not o),
    )
    proj_rows = [list(proj) for _, _, proj in entries]
    proj = ModuleMorphism(cod, coker, freeze(proj_rows))
    return ImageCokernel(sub.module, coker, proj, sub.inclusion)


def is_mono(f: ModuleMorphism) -> bool:
    return kernel(f).module.is_zero


def is_epi(f: ModuleMorphism) -> bool:
    return image_cokernel(f).cokernel.is_zero


def is_isomorphism(f: ModuleMorphism) -> bool:
    return is_mono(f) and is_epi(f)


def is_automorphism(f: ModuleMorphism) -> bool:
    """Fast test for endomorphisms; finite modules reduce mod each prime.

    A finite endomorphism is bijective exactly when it is surjective,
    and surjectivity only needs the induced map on M/pM to be invertible
    for every prime p dividing the order.
    """
    if f.domain != f.codomain:
        return False
    m = f.domain
    if m.is_zero:
        return True
    if m.free_rank == 0:
        orders = m.generator_orders()
        for p in sorted({_prime_of(o) for o in m.orders}):
            idx = [i for i, o in enumerate(orders) if o % p == 0]
            block = [[f.matrix[j][i] % p for i in idx] for j in idx]
            if _det_mod_p(block, p) == 0:
                return False
        return True
    return is_mono(f) and is_epi(f)


def _det_mod_p(rows, p: int) -> int:
    n = len(rows)
    a = [list(r) for r in rows]
    det = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] % p), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        inv = pow(a[col][col], -1, p)
        det = det * a[col][col] % p
        for r in range(col + 1, n):
            factor = a[r][col] * inv % p
            if factor:
                a[r] = [(x - factor * y) % p for x, y in zip(a[r], a[col])]
    return det % p


@dataclass(frozen=True)
class HomGroup:
    """Hom(M, N) as an abelian group with an aligned morphism basis.

    group.generator_orders() matches the basis elementwise; pairs holds
    the (domain generator, codomain generator, scale) data of each basis
    morphism, whose matrix has the single entry scale at that position.
    """

    group: ModuleObject
    basis: tuple[ModuleMorphism, ...]
    pairs: tuple[tuple[int, int, int], ...]

    def size(self) -> int | None:
        return self.group.size()

    def coordinates(self, f: ModuleMorphism) -> tuple[int, ...]:
        """Coefficients of f in the basis; exact by entrywise division."""
        coords = []
        for (i, j, scale), order in zip(self.pairs, self.group.generator_orders()):
            entry = f.matrix[j][i]
            if entry % scale:
                raise ValueError("morphism entry is not a basis multiple")
            c = entry // scale
            coords.append(c % order if order else c)
        return tuple(coords)


@lru_cache(maxsize=None)
def hom_group(m: ModuleObject, n: ModuleObject) -> HomGroup:
    """Hom(M, N) with one cyclic factor per generator pair.

    Hom(Z/d, Z/e) is cyclic of order gcd(d, e) generated by
    x -> (e/gcd)*y; maps from a free generator are unconstrained and
    maps from torsion to a free generator vanish.
    """
    if m.ring != n.ring:
        raise ValueError("hom requires a common ring")
    dom_orders = m.generator_orders()
    cod_orders = n.generator_orders()
    factors = []
    for i, d in enumerate(dom_orders):
        for j, e in enumerate(cod_orders):
            if d == 0:
                order, scale = (e, 1)
            elif e == 0:
                continue
            else:
                g = gcd(d, e)
                if g == 1:
                    continue
                order, scale = g, e // g
            factors.append((order == 0, order, i, j, scale))
    factors.sort()
    basis = []
    pairs = []
    for _, order, i, j, scale in factors:
        rows = [
            [scale if (jj == j and ii == i) else 0 for ii in range(len(dom_orders))]
            for jj in range(len(cod_orders))
        ]
        basis.append(ModuleMorphism(m, n, freeze(rows)))
        pairs.append((i, j, scale))
    group = ModuleObject(
        INTEGERS,
        tuple(order for _, order, *_ in factors if order),
        sum(1 for free, *_ in factors if free),
    )
    return HomGroup(group, tuple(basis), tuple(pairs))


def hom_count(m: ModuleObject, n: ModuleObject) -> int | None:
    return hom_group(m, n).size()


def direct_sum(items):
    """Direct sum of module objects, or blockwise sum of morphisms."""
    items = list(items)
    if not items:
        raise ValueError("empty direct sum needs an explicit ring")
    if isinstance(items[0], ModuleMorphism):
        doms = [f.domain for f in items]
        cods = [f.codomain for f in items]
        dom, dom_inj, dom_proj = sum_with_maps(doms)
        cod, cod_inj, cod_proj = sum_with_maps(cods)
        total = ModuleMorphism.zero(dom, cod)
        for f, pr, inj in zip(items, dom_proj, cod_inj):
            total = total + (inj @ f @ pr)
        return total
    ring = items[0].ring
    orders = []
    free = 0
    for m in items:
        if m.ring != ring:
            raise ValueError("direct sum requires a common ring")
        orders.extend(m.orders)
        free += m.free_rank
    return ModuleObject(ring, tuple(orders), free)


def sum_with_maps(parts):
    """Direct sum plus the canonical injections and projections.

    Generators of the sum are assigned to part generators of equal order
    in reading order, so the construction is deterministic.
    """
    parts = list(parts)
    total = direct_sum(parts) if parts else None
    if total is None:
        raise ValueError("empty direct sum needs an explicit ring")
    total_orders = total.generator_orders()
    used = [False] * len(total_orders)
    injections = []
    projections = []
    for part in parts:
        slots = []
        for o in part.generator_orders():
            for idx, to in enumerate(total_orders):
                if not used[idx] and to == o:
                    used[idx] = True
                    slots.append(idx)
                    break
            else:
                raise AssertionError("summand generator lost its slot")
        inj_rows = [
            [1 if (slots[c] == r) else 0 for c in range(len(slots))]
            for r in range(len(total_orders))
        ]
        proj_rows = [
            [1 if (slots[r] == c) else 0 for c in range(len(total_orders))]
            for r in range(len(slots))
        ]
        injections.append(ModuleMorphism(part, total, freeze(inj_rows)))
        projections.append(ModuleMorphism(total, part, freeze(proj_rows)))
    return total, injections, projections


def assemble_from_blocks(codomain: ModuleObject, blocks):
    """Map out of a direct sum given the (piece, map-to-codomain) blocks."""
    pieces = [piece for piece, _ in blocks]
    if not pieces:
        zero = ModuleObject.zero(codomain.ring)
        return ModuleMorphism.zero(zero, codomain)
    dom, _, projections = sum_with_maps(pieces)
    total = ModuleMorphism.zero(dom, codomain)
    for (_, g), pr in zip(blocks, projections):
        total = total + (g @ pr)
    return total


def solve_factorization(f: ModuleMorphism, phi: ModuleMorphism):
    """A map psi with phi o psi == f, or None when no factorization exists.

    >>> R4 = RingSpec.modular(4)
    >>> k = ModuleObject(R4, (2,)); big = ModuleObject(R4, (4,))
    >>> into = ModuleMorphism(k, big, ((2,),))
    >>> triple = ModuleMorphism(k, big, ((2,),))
    >>> solve_factorization(triple, into).matrix
    ((1,),)
    """
    if f.codomain != phi.codomain:
        raise ValueError("factorization target mismatch")
    x, fm, mm = f.domain, phi.domain, phi.codomain
    nx, nf = x.generator_count, fm.generator_count
    x_orders = x.generator_orders()
    f_orders = fm.generator_orders()
    m_orders = mm.generator_orders()
    equations = []
    for j in range(len(m_orders)):
        for i in range(nx):
            coeffs = [(l * nx + i, phi.matrix[j][l]) for l in range(nf)]
            equations.append((coeffs, m_orders[j], f.matrix[j][i]))
    for l in range(nf):
        for i in range(nx):
            if x_orders[i]:
                equations.append(([(l * nx + i, x_orders[i])], f_orders[l], 0))
    particular, _ = solve_entry_system(nf * nx, equations, want_kernel=False)
    if particular is None:
        return None
    rows = [[particular[l * nx + i] for i in range(nx)] for l in range(nf)]
    return ModuleMorphism(x, fm, freeze(rows))


def solve_left_factor(f: ModuleMorphism, through: ModuleMorphism):
    """A map g with g o through == f, or None when none exists.

    through: X -> Y and f: X -> Z determine g: Y -> Z up to maps
    vanishing on the image of through.
    """
    if f.domain != through.domain:
        raise ValueError("left factorization needs a common domain")
    y, z = through.codomain, f.codomain
    ny, nz = y.generator_count, z.generator_count
    nx = f.domain.generator_count
    y_orders = y.generator_orders()
    z_orders = z.generator_orders()
    equations = []
    for j in range(nz):
        for i in range(nx):
            coeffs = [(j * ny + l, through.matrix[l][i]) for l in range(ny)]
            equations.append((coeffs, z_orders[j], f.matrix[j][i]))
    for j in range(nz):
        for l in range(ny):
            if y_orders[l]:
                equations.append(([(j * ny + l, y_orders[l])], z_orders[j], 0))
    particular, _ = solve_entry_system(nz * ny, equations, want_kernel=False)
    if particular is None:
        return None
    rows = [[particular[j * ny + l] for l in range(ny)] for j in range(nz)]
    return ModuleMorphism(y, z, freeze(rows))


def solve_entry_system(n_entries: int, equations, want_kernel: bool = True):
    """Integer solutions of congruence equations over entry variables.

    Each equation is (coeffs, modulus, rhs) with coeffs a list of
    (entry index, coefficient) pairs; modulus 0 means an exact equation.
    Returns (particular or None, projected kernel generators); slack
    variables for the moduli are internal and dropped from both.
    """
    n_eq = len(equations)
    slack_cols = [i for i, (_, mod, _) in enumerate(equations) if mod]
    width = n_entries + len(slack_cols)
    rows = []
    rhs = []
    for eq_idx, (coeffs, mod, b) in enumerate(equations):
        row = [0] * width
        for idx, c in coeffs:
            row[idx] += c
        if mod:
            row[n_entries + slack_cols.index(eq_idx)] = mod
        rows.append(row)
        rhs.append(b)
    frozen = freeze(rows)
    res = snf_data(frozen, n_eq, width)
    particular_full = _solve_with(res, rhs, n_eq, width)
    particular = tuple(particular_full[:n_entries]) if particular_full is not None else None
    gens = []
    if want_kernel:
        diag = res.diagonal
        for j in range(width):
            if j >= len(diag) or diag[j] == 0:
                vec = tuple(res.v[i][j] for i in range(n_entries))
                if any(vec):
                    gens.append(vec)
    return particular, gens


def torsion_submodule(m: ModuleObject) -> SubmoduleResult:
    """Torsion part with its inclusion; only meaningful over Z."""
    if m.ring.is_modular:
        raise ValueError("torsion submodule is only defined over Z")
    tors = ModuleObject(m.ring, m.orders, 0)
    k = len(m.orders)
    rows = [
        [1 if (r == c and r < k) else 0 for c in range(k)]
        for r in range(m.generator_count)
    ]
    return SubmoduleResult(tors, ModuleMorphism(tors, m, freeze(rows)))
