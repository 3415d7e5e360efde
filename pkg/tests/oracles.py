"""Brute-force reference computations for cross-checking the engine.

Everything here works by enumerating group elements or matrix entries
directly, so it shares no code path with the decomposition and normal
form machinery under test.  All groups handled here are finite and
given by a tuple of generator orders with coordinatewise addition.
"""

from collections import Counter
from itertools import product
from math import gcd, lcm, prod


def elements(orders):
    """Every coordinate tuple of the finite group with these orders."""
    return product(*(range(o) for o in orders))


def vec_add(u, v, orders):
    return tuple((a + b) % o for a, b, o in zip(u, v, orders))


def vec_scale(c, v, orders):
    return tuple((c * a) % o for a, o in zip(v, orders))


def element_order(v, orders):
    """Additive order of v: lcm over coordinates of o / gcd(a, o)."""
    out = 1
    for a, o in zip(v, orders):
        out = lcm(out, o // gcd(a, o))
    return out


def order_counts_of_set(subset, orders):
    """Multiset of element orders of a subgroup given as a set.

    The multiset of element orders is a complete isomorphism invariant
    for finite abelian groups, which is what makes these counts usable
    as equality oracles.
    """
    return Counter(element_order(v, orders) for v in subset)


def order_counts_of_group(orders):
    return Counter(element_order(v, orders) for v in elements(orders))


def subgroup_span(gens, orders):
    """Closure of the generators under addition, as a set of tuples."""
    zero = tuple(0 for _ in orders)
    seen = {zero}
    frontier = [zero]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = vec_add(x, g, orders)
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return seen


def annihilator(c, orders):
    """Elements killed by multiplication with c."""
    return {v for v in elements(orders) if all((c * a) % o == 0 for a, o in zip(v, orders))}


def multiple_set(c, orders):
    """The subgroup c * G."""
    return {vec_scale(c, v, orders) for v in elements(orders)}


def quotient_order_counts(big, small, orders):
    """Element-order multiset of big / small for subgroups small <= big."""
    small = frozenset(small)
    exponent = lcm(*orders)
    reps = {}
    for x in big:
        canon = min(vec_add(x, t, orders) for t in small)
        if canon in reps:
            continue
        k = 1
        while vec_scale(k, x, orders) not in small:
            k += 1
            if k > exponent:
                raise AssertionError("coset order exceeded the group exponent")
        reps[canon] = k
    return Counter(reps.values())


def cyclic_ext_order_counts(ring_n, d, a_orders, n):
    """Classical Ext^n(Z/d, A) over Z/ring_n, as an order multiset.

    The free resolution of Z/d is periodic with differentials that
    alternate between multiplication by d and by ring_n // d, so the
    cohomology of Hom(-, A) alternates between ann(e)/dA and ann(d)/eA.
    """
    if ring_n % d:
        raise ValueError("d must divide the ring modulus")
    e = ring_n // d
    zero = tuple(0 for _ in a_orders)
    if n == 0:
        big, small = annihilator(d, a_orders), {zero}
    elif n % 2 == 1:
        big, small = annihilator(e, a_orders), multiple_set(d, a_orders)
    else:
        big, small = annihilator(d, a_orders), multiple_set(e, a_orders)
    return quotient_order_counts(big, small, a_orders)


def combine_order_counts(a, b):
    """Order multiset of a direct sum from the multisets of the parts."""
    out = Counter()
    for x, cx in a.items():
        for y, cy in b.items():
            out[lcm(x, y)] += cx * cy
    return out


def classical_ext_order_counts(ring_n, m_orders, a_orders, n):
    """Classical Ext^n(M, A) over Z/ring_n via additivity in M."""
    out = Counter({1: 1})
    for d in m_orders:
        out = combine_order_counts(out, cyclic_ext_order_counts(ring_n, d, a_orders, n))
    return out


def brute_hom_count(dom_orders, cod_orders):
    """Number of homomorphisms, or None when the count is infinite.

    A map is fixed by the images of the domain generators; the image of
    an order-d generator can be any element killed by d, and torsion
    must land in the torsion part of the codomain.
    """
    tor = [o for o in cod_orders if o]
    free_cod = len(cod_orders) - len(tor)
    total = 1
    for d in dom_orders:
        if d == 0:
            if free_cod:
                return None
            total *= prod(tor)
        else:
            total *= sum(
                1
                for v in elements(tor)
                if all((d * a) % o == 0 for a, o in zip(v, tor))
            )
    return total


def valid_matrices(dom_orders, cod_orders):
    """Every matrix defining a map between the two finite modules.

    Entry (j, i) lives in [0, e_j) and must satisfy d_i * entry = 0
    mod e_j; validity is entrywise on canonical decompositions.
    """
    choices = []
    for e in cod_orders:
        for d in dom_orders:
            choices.append([a for a in range(e) if (d * a) % e == 0])
    ncols = len(dom_orders)
    for flat in product(*choices):
        yield tuple(
            tuple(flat[j * ncols : (j + 1) * ncols]) for j in range(len(cod_orders))
        )


def compose(g, f, cod_orders):
    """Matrix of g after f, rows reduced by the codomain orders."""
    rows = []
    for j, e in enumerate(cod_orders):
        row = []
        for i in range(len(f[0]) if f else 0):
            s = sum(g[j][k] * f[k][i] for k in range(len(f)))
            row.append(s % e)
        rows.append(tuple(row))
    return tuple(rows)


def brute_endo_coset(phi, dom_orders, cod_orders):
    """All endomorphism matrices g of the codomain with g o phi == phi."""
    out = set()
    for g in valid_matrices(cod_orders, cod_orders):
        if compose(g, phi, cod_orders) == tuple(tuple(r) for r in phi):
            out.add(g)
    return out


def is_bijective_matrix(g, orders):
    """Whether the endomorphism matrix permutes the group elements."""
    size = prod(orders)
    images = set()
    for v in elements(orders):
        w = tuple(
            sum(g[j][i] * v[i] for i in range(len(orders))) % orders[j]
            for j in range(len(orders))
        )
        images.add(w)
    return len(images) == size
