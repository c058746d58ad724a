"""Permutations as image tuples and small permutation groups (Schreier-Sims).

A permutation ``p`` maps ``i -> p[i]``. Products apply left to right:
``mul(p, q)[i] == q[p[i]]``.
"""

from __future__ import annotations

import re
from collections import Counter
from functools import reduce
from itertools import permutations as _all_perms
from math import gcd, prod
from typing import Iterable, Iterator, Sequence

Perm = tuple[int, ...]


def identity(n: int) -> Perm:
    return tuple(range(n))


def mul(p: Sequence[int], q: Sequence[int]) -> Perm:
    """Apply ``p`` then ``q``."""
    return tuple(q[x] for x in p)


def inverse(p: Sequence[int]) -> Perm:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def is_identity(p: Sequence[int]) -> bool:
    return all(i == x for i, x in enumerate(p))


def check_perm(p: Sequence[int]) -> None:
    if sorted(p) != list(range(len(p))):
        raise ValueError(f"not a permutation: {list(p)}")


def cycles(p: Sequence[int]) -> list[tuple[int, ...]]:
    seen = set()
    out = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = p[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = p[j]
        out.append(tuple(cyc))
    return out


def perm_order(p: Sequence[int]) -> int:
    return reduce(lambda a, b: a * b // gcd(a, b), (len(c) for c in cycles(p)), 1)


def format_cycles(p: Sequence[int], one_based: bool = False) -> str:
    shift = 1 if one_based else 0
    cyc = cycles(p)
    if not cyc:
        return "()"
    return "".join("(" + " ".join(str(x + shift) for x in c) + ")" for c in cyc)


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, n: int, one_based: bool = False) -> Perm:
    """Parse ``"(1524)(36)"`` style notation; single digits may be run together."""
    img = list(range(n))
    shift = 1 if one_based else 0
    for body in _CYCLE.findall(text):
        body = body.strip()
        if not body:
            continue
        tokens = body.replace(",", " ").split() if (" " in body or "," in body) else list(body)
        pts = [int(t) - shift for t in tokens]
        cur = list(range(n))
        for a, b in zip(pts, pts[1:] + pts[:1]):
            cur[a] = b
        img = list(mul(img, cur))
    return tuple(img)


class PermGroup:
    """Group generated by permutations of ``0..degree-1``.

    The base and strong generating set are built on first use with the
    deterministic Schreier-Sims algorithm.
    """

    def __init__(self, degree: int, generators: Iterable[Sequence[int]] = ()):
        self.degree = degree
        gens = []
        for g in generators:
            g = tuple(g)
            check_perm(g)
            if len(g) != degree:
                raise ValueError(f"generator of degree {len(g)} in a group of degree {degree}")
            if not is_identity(g) and g not in gens:
                gens.append(g)
        self.generators: list[Perm] = gens
        self._chain = None

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, order={self.order()}, gens={len(self.generators)})"

    # -- stabilizer chain -------------------------------------------------
    def _build(self):
        n = self.degree
        base: list[int] = []
        strong: list[list[Perm]] = []  # strong[i]: generators fixing base[:i]
        trans: list[dict[int, Perm]] = []  # trans[i][pt] = u with u[base[i]] == pt

        def orbit_transversal(b, gens):
            t = {b: identity(n)}
            frontier = [b]
            while frontier:
                nxt = []
                for pt in frontier:
                    u = t[pt]
                    for s in gens:
                        im = s[pt]
                        if im not in t:
                            t[im] = mul(u, s)
                            nxt.append(im)
                frontier = nxt
            return t

        def strip(g, start):
            for i in range(start, len(base)):
                pt = g[base[i]]
                if pt not in trans[i]:
                    return g, i
                g = mul(g, inverse(trans[i][pt]))
            return g, len(base)

        def new_base_point(g):
            return next(i for i in range(n) if g[i] != i)

        for g in self.generators:
            if all(g[b] == b for b in base):
                base.append(new_base_point(g))
        k = len(base)
        for i in range(k):
            strong.append([g for g in self.generators if all(g[b] == b for b in base[:i])])
            trans.append(orbit_transversal(base[i], strong[i]))
        i = k - 1
        while i >= 0:
            done = True
            for pt, u in list(trans[i].items()):
                for s in strong[i]:
                    us = mul(u, s)
                    h = mul(us, inverse(trans[i][us[base[i]]]))
                    if is_identity(h):
                        continue
                    res, j = strip(h, i + 1)
                    if j < len(base) or not is_identity(res):
                        if j == len(base):
                            base.append(new_base_point(res))
                            strong.append([])
                            trans.append({base[-1]: identity(n)})
                        for level in range(i + 1, j + 1):
                            strong[level].append(res)
                            trans[level] = orbit_transversal(base[level], strong[level])
                        i = j
                        done = False
                        break
                if not done:
                    break
            if done:
                i -= 1
        self._chain = (base, strong, trans)
        return self._chain

    @property
    def chain(self):
        return self._chain or self._build()

    def order(self) -> int:
        base, _, trans = self.chain
        return prod(len(t) for t in trans)

    def contains(self, g: Sequence[int]) -> bool:
        base, _, trans = self.chain
        g = tuple(g)
        for i, b in enumerate(base):
            pt = g[b]
            if pt not in trans[i]:
                return False
            g = mul(g, inverse(trans[i][pt]))
        return is_identity(g)

    def elements(self, limit: int = 100_000) -> Iterator[Perm]:
        """All elements as products of transversal representatives."""
        if self.order() > limit:
            raise ValueError(f"group order {self.order()} exceeds enumeration limit {limit}")
        _, _, trans = self.chain

        def rec(level, acc):
            if level < 0:
                yield acc
                return
            for u in trans[level].values():
                yield from rec(level - 1, mul(acc, u))

        yield from rec(len(trans) - 1, identity(self.degree))

    # -- orbits -------------------------------------------------------------
    def orbits(self) -> list[list[int]]:
        parent = list(range(self.degree))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in self.generators:
            for i, j in enumerate(g):
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
        groups: dict[int, list[int]] = {}
        for i in range(self.degree):
            groups.setdefault(find(i), []).append(i)
        return sorted(groups.values())

    def orbit(self, point: int) -> list[int]:
        return next(o for o in self.orbits() if point in o)

    def is_transitive(self) -> bool:
        return len(self.orbits()) <= 1

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(mul(a, b) == mul(b, a) for i, a in enumerate(gens) for b in gens[i + 1:])

    def stabilizer_chain_orders(self) -> list[int]:
        return [len(t) for t in self.chain[2]]


def order_statistics(group: PermGroup) -> Counter:
    """Multiset of element orders."""
    return Counter(perm_order(g) for g in group.elements())


# -- small group recognition ---------------------------------------------------

def _cyclic_stats(n: int) -> Counter:
    return Counter(n // gcd(k, n) for k in range(n))


def _direct_stats(*factors: int) -> Counter:
    """Order statistics of ``C_f1 x C_f2 x ...``."""
    stats = Counter({1: 1})
    for f in factors:
        new = Counter()
        for o1, c1 in stats.items():
            for o2, c2 in _cyclic_stats(f).items():
                new[o1 * o2 // gcd(o1, o2)] += c1 * c2
        stats = new
    return stats


def _dihedral_stats(n: int) -> Counter:
    """Dihedral group of order ``2n``."""
    stats = _cyclic_stats(n)
    stats[2] += n
    return stats


def _abelian_types(order: int) -> list[tuple[int, ...]]:
    """Invariant-factor decompositions ``(d1, d2, ...)`` with ``d_{i+1} | d_i``."""
    out = []

    def rec(rest, bound, acc):
        if rest == 1:
            out.append(tuple(acc))
            return
        for d in range(min(rest, bound), 1, -1):
            if rest % d == 0 and (not acc or acc[-1] % d == 0):
                rec(rest // d, d, acc + [d])

    rec(order, order, [])
    return out


def _nonabelian_table() -> dict[tuple[int, tuple], str]:
    table = {}

    def add(name, order, stats):
        table[(order, tuple(sorted(stats.items())))] = name

    for n in range(3, 13):
        add(f"D{2 * n}", 2 * n, _dihedral_stats(n))
    add("Q8", 8, Counter({1: 1, 2: 1, 4: 6}))
    add("A4", 12, Counter({1: 1, 2: 3, 3: 8}))
    add("C3⋊C4", 12, Counter({1: 1, 2: 1, 3: 2, 4: 6, 6: 2}))
    add("C5⋊C4", 20, Counter({1: 1, 2: 5, 4: 10, 5: 4}))
    add("Dic5", 20, Counter({1: 1, 2: 1, 4: 10, 5: 4, 10: 4}))
    add("S4", 24, Counter({1: 1, 2: 9, 3: 8, 4: 6}))
    add("SL(2,3)", 24, Counter({1: 1, 2: 1, 3: 8, 4: 6, 6: 8}))
    add("C7⋊C3", 21, Counter({1: 1, 3: 14, 7: 6}))
    add("C3⋊C8", 24, Counter({1: 1, 2: 1, 3: 2, 4: 2, 6: 2, 8: 8, 12: 4}))
    return table


_NONABELIAN = _nonabelian_table()


def recognize_group(group: PermGroup) -> str:
    """Structure name for groups of order <= 24, else ``"order-N unrecognized"``.

    Uses the order, the abelian flag and the multiset of element orders.
    Order 16 is always reported as unrecognized (element orders do not
    separate its groups).
    """
    n = group.order()
    if n == 1:
        return "C1"
    if n > 24 or n == 16:
        return f"order-{n} unrecognized"
    stats = order_statistics(group)
    if group.is_abelian():
        for factors in _abelian_types(n):
            if _direct_stats(*factors) == stats:
                return "×".join(f"C{f}" for f in factors)
        return f"order-{n} unrecognized"
    return _NONABELIAN.get((n, tuple(sorted(stats.items()))), f"order-{n} unrecognized")


def symmetric_group(n: int) -> PermGroup:
    if n < 2:
        return PermGroup(n)
    gens = [tuple([1, 0] + list(range(2, n)))]
    if n > 2:
        gens.append(tuple(list(range(1, n)) + [0]))
    return PermGroup(n, gens)


def all_permutations(n: int) -> Iterator[Perm]:
    return _all_perms(range(n))


def group_from_elements(degree: int, elements: Iterable[Sequence[int]]) -> PermGroup:
    """Greedy small generating set for the group generated by ``elements``."""
    g = PermGroup(degree)
    for e in elements:
        e = tuple(e)
        if is_identity(e) or g.contains(e):
            continue
        g = PermGroup(degree, g.generators + [e])
    return g
