"""Orbital association schemes of transitive groups, axiom checks and fusions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .canon import canonical_form
from .graphs import Digraph
from .perms import PermGroup


class SchemeError(ValueError):
    """Input cannot produce an association scheme (intransitive group, bad grouping)."""


class SchemeAxiomError(SchemeError):
    """A relation partition fails the scheme axioms; ``witness`` names the failure."""

    def __init__(self, message: str, witness: dict):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class AssociationScheme:
    """Relation matrix with classes ``0..c`` (0 is the diagonal) and its
    intersection numbers ``p[k][i][j]``."""

    n: int
    relation_matrix: tuple[tuple[int, ...], ...]
    c: int
    intersection_numbers: tuple

    def relation(self, k: int) -> Digraph:
        rows = tuple(sum(1 << y for y in range(self.n) if self.relation_matrix[x][y] == k) for x in range(self.n))
        return Digraph(self.n, rows)

    def valency(self, k: int) -> int:
        return sum(1 for y in range(self.n) if self.relation_matrix[0][y] == k)

    def valencies(self) -> list[int]:
        return [self.valency(k) for k in range(self.c + 1)]

    def transpose_class(self, k: int) -> int:
        x, y = next((x, y) for x in range(self.n) for y in range(self.n) if self.relation_matrix[x][y] == k)
        return self.relation_matrix[y][x]

    def is_symmetric(self) -> bool:
        return all(self.transpose_class(k) == k for k in range(self.c + 1))

    def is_commutative(self) -> bool:
        p = self.intersection_numbers
        r = range(self.c + 1)
        return all(p[k][i][j] == p[k][j][i] for k in r for i in r for j in r)

    def noncommuting_triple(self) -> Optional[tuple[int, int, int]]:
        p = self.intersection_numbers
        r = range(self.c + 1)
        for k in r:
            for i in r:
                for j in r:
                    if p[k][i][j] != p[k][j][i]:
                        return (i, j, k)
        return None

    def to_text(self) -> str:
        """Integer grid: first line ``n``, then one row of class indices per vertex."""
        lines = [str(self.n)] + [" ".join(str(x) for x in row) for row in self.relation_matrix]
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "classes": self.c,
            "valencies": self.valencies(),
            "commutative": self.is_commutative(),
            "symmetric": self.is_symmetric(),
            "relation_matrix": [list(r) for r in self.relation_matrix],
            "intersection_numbers": [[list(row) for row in layer] for layer in self.intersection_numbers],
        }


def scheme_from_matrix(matrix: Sequence[Sequence[int]]) -> AssociationScheme:
    """Validate a relation matrix exhaustively and compute its intersection numbers.

    Raises :class:`SchemeAxiomError` on the first violated axiom.
    """
    n = len(matrix)
    mat = tuple(tuple(int(x) for x in row) for row in matrix)
    if any(len(row) != n for row in mat):
        raise SchemeError("relation matrix is not square")
    labels = sorted({x for row in mat for x in row})
    c = len(labels) - 1
    if labels != list(range(c + 1)):
        raise SchemeError(f"class labels must be 0..c, got {labels}")
    for x in range(n):
        for y in range(n):
            if (mat[x][y] == 0) != (x == y):
                raise SchemeAxiomError(
                    f"class 0 must be exactly the diagonal; entry ({x},{y}) is {mat[x][y]}",
                    {"kind": "diagonal", "entry": [x, y]},
                )
    out_mask = [[0] * n for _ in range(c + 1)]
    in_mask = [[0] * n for _ in range(c + 1)]
    for x in range(n):
        for y in range(n):
            k = mat[x][y]
            out_mask[k][x] |= 1 << y
            in_mask[k][y] |= 1 << x
    for k in range(c + 1):
        pairs = [(x, y) for x in range(n) for y in range(n) if mat[x][y] == k]
        tk = {mat[y][x] for x, y in pairs}
        if len(tk) != 1:
            raise SchemeAxiomError(
                f"transpose of class {k} is not a single class (meets {sorted(tk)})",
                {"kind": "transpose", "class": k, "meets": sorted(tk)},
            )
    p = [[[None] * (c + 1) for _ in range(c + 1)] for _ in range(c + 1)]
    for x in range(n):
        for y in range(n):
            k = mat[x][y]
            for i in range(c + 1):
                oi = out_mask[i][x]
                for j in range(c + 1):
                    val = (oi & in_mask[j][y]).bit_count()
                    if p[k][i][j] is None:
                        p[k][i][j] = val
                    elif p[k][i][j] != val:
                        raise SchemeAxiomError(
                            f"p^{k}_{{{i},{j}}} is not constant: pair ({x},{y}) gives {val}, expected {p[k][i][j]}",
                            {"kind": "intersection", "triple": [i, j, k], "pair": [x, y],
                             "value": val, "expected": p[k][i][j]},
                        )
    tensor = tuple(tuple(tuple(row) for row in layer) for layer in p)
    return AssociationScheme(n, mat, c, tensor)


def _relation_key(n: int, pairs: list[tuple[int, int]]) -> tuple:
    rows = [0] * n
    for x, y in pairs:
        rows[x] |= 1 << y
    g = Digraph(n, tuple(rows))
    valency = rows[0].bit_count()
    return (valency, canonical_form(g)[0], min(pairs))


def orbitals(group: PermGroup) -> list[list[tuple[int, int]]]:
    """Orbits of ``group`` on ordered pairs, each a sorted list."""
    n = group.degree
    seen = [[False] * n for _ in range(n)]
    out = []
    for x in range(n):
        for y in range(n):
            if seen[x][y]:
                continue
            orb = [(x, y)]
            seen[x][y] = True
            frontier = [(x, y)]
            while frontier:
                a, b = frontier.pop()
                for g in group.generators:
                    u, v = g[a], g[b]
                    if not seen[u][v]:
                        seen[u][v] = True
                        orb.append((u, v))
                        frontier.append((u, v))
            out.append(sorted(orb))
    return out


def orbital_scheme(group: PermGroup, require_transitive: bool = True) -> AssociationScheme:
    """Scheme whose classes are the orbitals of ``group``.

    Class 0 is the diagonal; the others are ordered by valency, then by the
    certificate of the relation digraph, then by their least pair.
    """
    orbits = group.orbits()
    if len(orbits) > 1 and require_transitive:
        split = " | ".join(str(o) for o in orbits)
        raise SchemeError(f"group is not transitive; vertex orbits: {split}")
    n = group.degree
    orbs = orbitals(group)
    rest = [o for o in orbs if o[0][0] != o[0][1]]
    rest.sort(key=lambda o: _relation_key(n, o))
    # an intransitive group splits the diagonal; all of it becomes class 0
    # and the axiom check decides whether a scheme remains
    mat = [[0] * n for _ in range(n)]
    for k, orb in enumerate(rest, start=1):
        for x, y in orb:
            mat[x][y] = k
    return scheme_from_matrix(mat)


@dataclass
class FusionResult:
    ok: bool
    scheme: Optional[AssociationScheme]
    witness: Optional[dict]
    grouping: tuple[tuple[int, ...], ...]

    def __bool__(self):
        return self.ok


def _check_grouping(c: int, grouping) -> tuple[tuple[int, ...], ...]:
    groups = tuple(tuple(sorted(int(x) for x in g)) for g in grouping)
    flat = sorted(x for g in groups for x in g)
    if flat != list(range(1, c + 1)) or any(not g for g in groups):
        raise SchemeError(f"grouping {groups} does not partition the classes 1..{c}")
    return groups


def fuse(s: AssociationScheme, grouping) -> FusionResult:
    """Merge the nondiagonal classes per ``grouping`` (a partition of ``1..c``).

    New class ``i`` is ``grouping[i-1]``. Returns the fused scheme, or the
    violated axiom with its witness triple ``(i, j, k)``.
    """
    groups = _check_grouping(s.c, grouping)
    new_label = {0: 0}
    for idx, g in enumerate(groups, start=1):
        for k in g:
            new_label[k] = idx
    mat = [[new_label[x] for x in row] for row in s.relation_matrix]
    try:
        return FusionResult(True, scheme_from_matrix(mat), None, groups)
    except SchemeAxiomError as exc:
        return FusionResult(False, None, exc.witness, groups)


def _set_partitions(items: list[int]):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def feasible_fusions(s: AssociationScheme) -> list[FusionResult]:
    """Every nontrivial grouping of ``1..c`` that yields a scheme (the trivial
    identity grouping excluded)."""
    out = []
    for part in _set_partitions(list(range(1, s.c + 1))):
        if len(part) == s.c:
            continue
        res = fuse(s, part)
        if res.ok:
            out.append(res)
    out.sort(key=lambda r: (-len(r.grouping), r.grouping))
    return out


def relation_decomposition(s: AssociationScheme, g: Digraph) -> Union[frozenset, dict]:
    """Class indices whose union is the edge set of ``g``, or a mismatch witness dict."""
    if g.n != s.n:
        raise SchemeError(f"graph has {g.n} vertices, scheme has {s.n}")
    inside: dict[int, tuple[int, int]] = {}
    outside: dict[int, tuple[int, int]] = {}
    for x in range(s.n):
        for y in range(s.n):
            k = s.relation_matrix[x][y]
            (inside if g.has_edge(x, y) else outside).setdefault(k, (x, y))
    mixed = sorted(set(inside) & set(outside))
    if mixed:
        k = mixed[0]
        return {"kind": "not a union of classes", "class": k, "edge": list(inside[k]), "non_edge": list(outside[k])}
    return frozenset(inside)


def schemes_isomorphic(a: AssociationScheme, b: AssociationScheme) -> Optional[tuple[tuple[int, ...], dict[int, int]]]:
    """Vertex bijection ``f`` and class bijection ``phi`` with
    ``phi[a(x,y)] == b(f(x), f(y))`` for all pairs, or ``None``."""
    if a.n != b.n or a.c != b.c or sorted(a.valencies()) != sorted(b.valencies()):
        return None
    n = a.n
    ra, rb = a.relation_matrix, b.relation_matrix
    fmap = [-1] * n
    used = [False] * n
    phi: dict[int, int] = {0: 0}
    phinv: dict[int, int] = {0: 0}

    def extend(x):
        if x == n:
            return True
        for y in range(n):
            if used[y]:
                continue
            added = []
            ok = True
            for z in range(x):
                for ka, kb in ((ra[x][z], rb[y][fmap[z]]), (ra[z][x], rb[fmap[z]][y])):
                    if ka in phi:
                        if phi[ka] != kb:
                            ok = False
                    elif kb in phinv:
                        ok = False
                    else:
                        phi[ka] = kb
                        phinv[kb] = ka
                        added.append(ka)
                    if not ok:
                        break
                if not ok:
                    break
            if ok:
                fmap[x] = y
                used[y] = True
                if extend(x + 1):
                    return True
                used[y] = False
                fmap[x] = -1
            for ka in added:
                del phinv[phi.pop(ka)]
        return False

    if not extend(0):
        return None
    return tuple(fmap), dict(phi)


def load_relation_matrix(path) -> list[list[int]]:
    with open(path) as fh:
        tokens = fh.read().split()
    n = int(tokens[0])
    vals = [int(t) for t in tokens[1:]]
    if len(vals) != n * n:
        raise SchemeError(f"expected {n * n} entries, found {len(vals)}")
    return [vals[i * n:(i + 1) * n] for i in range(n)]


def graph_from_classes(s: AssociationScheme, classes) -> Digraph:
    classes = set(classes)
    rows = tuple(
        sum(1 << y for y in range(s.n) if s.relation_matrix[x][y] in classes) for x in range(s.n)
    )
    return Digraph(s.n, rows)


__all__ = [
    "AssociationScheme",
    "FusionResult",
    "SchemeAxiomError",
    "SchemeError",
    "feasible_fusions",
    "fuse",
    "graph_from_classes",
    "load_relation_matrix",
    "orbital_scheme",
    "orbitals",
    "relation_decomposition",
    "scheme_from_matrix",
    "schemes_isomorphic",
]
