"""Dense 0/1 digraphs and exact checks of the DSRG / SRG matrix identities.

Rows are stored as Python ints used as bitsets (bit ``j`` of ``rows[i]`` is
``A[i][j]``), so ``A @ A`` entries reduce to popcounts of row/column masks and
all arithmetic stays exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

Label = tuple  # (point, block, copy)


class StructuralError(ValueError):
    """Input is not of the shape an operation requires (loops, asymmetry, ...)."""


class VerificationError(Exception):
    """The matrix identity fails; ``witness`` describes the first violation."""

    def __init__(self, message: str, witness: dict):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class DsrgParams:
    v: int
    k: int
    t: int
    lam: int
    mu: int
    advisories: tuple[str, ...] = field(default=(), compare=False)

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.v, self.k, self.t, self.lam, self.mu)

    def scaled(self, m: int) -> "DsrgParams":
        return DsrgParams(*(m * x for x in self.as_tuple()))

    def __iter__(self):
        return iter(self.as_tuple())

    def __eq__(self, other):
        if isinstance(other, tuple):
            return self.as_tuple() == other
        if isinstance(other, DsrgParams):
            return self.as_tuple() == other.as_tuple()
        return NotImplemented

    def __hash__(self):
        return hash(self.as_tuple())

    def __str__(self):
        return "DSRG-(%d, %d, %d, %d, %d)" % self.as_tuple()


@dataclass(frozen=True)
class SrgParams:
    v: int
    k: int
    lam: int
    mu: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.v, self.k, self.lam, self.mu)

    def __iter__(self):
        return iter(self.as_tuple())

    def __eq__(self, other):
        if isinstance(other, tuple):
            return self.as_tuple() == other
        if isinstance(other, SrgParams):
            return self.as_tuple() == other.as_tuple()
        return NotImplemented

    def __hash__(self):
        return hash(self.as_tuple())

    def __str__(self):
        return "SRG-(%d, %d, %d, %d)" % self.as_tuple()


def _transpose_rows(rows: Sequence[int], n: int) -> tuple[int, ...]:
    cols = [0] * n
    for i, row in enumerate(rows):
        bit = 1 << i
        while row:
            low = row & -row
            cols[low.bit_length() - 1] |= bit
            row ^= low
    return tuple(cols)


@dataclass(frozen=True, eq=False)
class Digraph:
    """Square 0/1 adjacency matrix with optional per-vertex labels."""

    n: int
    rows: tuple[int, ...]
    labels: Optional[tuple[Label, ...]] = None

    def __post_init__(self):
        if len(self.rows) != self.n:
            raise StructuralError(f"expected {self.n} rows, got {len(self.rows)}")
        limit = 1 << self.n
        for i, row in enumerate(self.rows):
            if row < 0 or row >= limit:
                raise StructuralError(f"row {i} has bits outside 0..{self.n - 1}")
        if self.labels is not None and len(self.labels) != self.n:
            raise StructuralError("label count does not match vertex count")

    @classmethod
    def from_matrix(cls, matrix: Iterable[Iterable[int]], labels=None) -> "Digraph":
        rows = []
        for r in matrix:
            mask = 0
            for j, x in enumerate(r):
                if x not in (0, 1):
                    raise StructuralError(f"entry {x!r} is not 0/1")
                if x:
                    mask |= 1 << j
            rows.append(mask)
        return cls(len(rows), tuple(rows), None if labels is None else tuple(labels))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], labels=None) -> "Digraph":
        rows = [0] * n
        for i, j in edges:
            rows[i] |= 1 << j
        return cls(n, tuple(rows), None if labels is None else tuple(labels))

    @property
    def cols(self) -> tuple[int, ...]:
        cached = self.__dict__.get("_cols")
        if cached is None:
            cached = _transpose_rows(self.rows, self.n)
            object.__setattr__(self, "_cols", cached)
        return cached

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.rows[i] >> j & 1)

    def matrix(self) -> list[list[int]]:
        return [[self.rows[i] >> j & 1 for j in range(self.n)] for i in range(self.n)]

    def out_neighbors(self, i: int) -> list[int]:
        return _bits(self.rows[i])

    def edges(self):
        for i in range(self.n):
            for j in _bits(self.rows[i]):
                yield i, j

    def relabel(self, perm: Sequence[int]) -> "Digraph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        n = self.n
        rows = [0] * n
        for i in range(n):
            mask = 0
            for j in _bits(self.rows[i]):
                mask |= 1 << perm[j]
            rows[perm[i]] = mask
        labels = None
        if self.labels is not None:
            lab = [None] * n
            for i in range(n):
                lab[perm[i]] = self.labels[i]
            labels = tuple(lab)
        return Digraph(n, tuple(rows), labels)

    def is_symmetric(self) -> bool:
        return self.rows == self.cols

    def is_loopless(self) -> bool:
        return all(not (self.rows[i] >> i & 1) for i in range(self.n))

    def __eq__(self, other):
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __hash__(self):
        return hash((self.n, self.rows))

    def __repr__(self):
        return f"Digraph(n={self.n}, edges={sum(r.bit_count() for r in self.rows)})"


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _check_regular(g: Digraph) -> int:
    n = g.n
    k = g.rows[0].bit_count()
    for i in range(n):
        if g.rows[i].bit_count() != k:
            raise VerificationError(
                f"out-degree not constant: vertex {i} has {g.rows[i].bit_count()}, vertex 0 has {k}",
                {"kind": "out-degree", "vertex": i, "value": g.rows[i].bit_count(), "expected": k},
            )
        if g.cols[i].bit_count() != k:
            raise VerificationError(
                f"in-degree not constant: vertex {i} has {g.cols[i].bit_count()}, expected {k}",
                {"kind": "in-degree", "vertex": i, "value": g.cols[i].bit_count(), "expected": k},
            )
    if k == 0:
        raise VerificationError("degenerate: k = 0 (no edges)", {"kind": "degenerate", "k": 0})
    return k


def _square_params(g: Digraph, diag_name: str) -> tuple[int, int, Optional[int]]:
    """Diagonal value, on-edge value and off-edge value of ``A @ A``; raise on the first mismatch."""
    n = g.n
    rows, cols = g.rows, g.cols
    diag = lam = mu = None
    for i in range(n):
        ri = rows[i]
        for j in range(n):
            val = (ri & cols[j]).bit_count()
            if i == j:
                if diag is None:
                    diag = val
                elif val != diag:
                    raise VerificationError(
                        f"(A^2)[{i},{i}] = {val} but {diag_name} = {diag} elsewhere on the diagonal",
                        {"kind": "diagonal", "entry": [i, i], "value": val, "expected": diag},
                    )
            elif ri >> j & 1:
                if lam is None:
                    lam = val
                elif val != lam:
                    raise VerificationError(
                        f"(A^2)[{i},{j}] = {val} on an edge but lambda = {lam} elsewhere",
                        {"kind": "lambda", "entry": [i, j], "value": val, "expected": lam},
                    )
            else:
                if mu is None:
                    mu = val
                elif val != mu:
                    raise VerificationError(
                        f"(A^2)[{i},{j}] = {val} on a non-edge but mu = {mu} elsewhere",
                        {"kind": "mu", "entry": [i, j], "value": val, "expected": mu},
                    )
    return diag, lam, mu


def verify_dsrg(g: Digraph) -> DsrgParams:
    """Exact check of ``JA = AJ = kJ`` and ``A^2 = tI + lam*A + mu*(J - I - A)``.

    Returns the parameters or raises :class:`VerificationError` carrying the
    first violating entry. Loops raise :class:`StructuralError`.
    """
    if g.n == 0:
        raise VerificationError("empty graph", {"kind": "degenerate", "v": 0})
    if not g.is_loopless():
        i = next(i for i in range(g.n) if g.rows[i] >> i & 1)
        raise StructuralError(f"loop at vertex {i}")
    k = _check_regular(g)
    t, lam, mu = _square_params(g, "t")
    advisories = []
    if mu is None:
        # complete digraph: no non-adjacent pairs, so mu is unconstrained
        mu = lam
        advisories.append("complete: mu unconstrained, reported as lambda")
    if t == k:
        advisories.append("t = k: undirected strongly regular graph")
    elif t == 0:
        advisories.append("t = 0: doubly regular tournament")
    return DsrgParams(g.n, k, t, lam, mu, tuple(advisories))


def verify_srg(g: Digraph) -> SrgParams:
    """Exact check of ``A^2 = kI + lam*A + mu*(J - I - A)`` for a symmetric loopless graph."""
    if not g.is_symmetric():
        i = next(i for i in range(g.n) if g.rows[i] != g.cols[i])
        raise StructuralError(f"adjacency is not symmetric (row {i})")
    if g.n == 0:
        raise VerificationError("empty graph", {"kind": "degenerate", "v": 0})
    if not g.is_loopless():
        raise StructuralError("graph has loops")
    k = _check_regular(g)
    diag, lam, mu = _square_params(g, "k")
    if diag != k:  # cannot happen for a symmetric 0/1 matrix, kept as a guard
        raise VerificationError("diagonal of A^2 differs from k", {"kind": "diagonal", "value": diag, "expected": k})
    if mu is None:
        mu = lam
    return SrgParams(g.n, k, lam, mu)


def transpose(g: Digraph) -> Digraph:
    return Digraph(g.n, g.cols, g.labels)


def complement(g: Digraph) -> Digraph:
    full = (1 << g.n) - 1
    rows = tuple((full ^ g.rows[i]) & ~(1 << i) for i in range(g.n))
    return Digraph(g.n, rows, g.labels)


def symmetrize(g: Digraph) -> Digraph:
    """Elementwise OR of ``A`` and ``A^T``."""
    return Digraph(g.n, tuple(r | c for r, c in zip(g.rows, g.cols)), g.labels)


def identity_minus_complete(n: int) -> Digraph:
    """``J - I`` on ``n`` vertices."""
    full = (1 << n) - 1
    return Digraph(n, tuple(full & ~(1 << i) for i in range(n)))


def directed_cycle(n: int) -> Digraph:
    return Digraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def undirected_cycle(n: int) -> Digraph:
    edges = [(i, (i + 1) % n) for i in range(n)] + [((i + 1) % n, i) for i in range(n)]
    return Digraph.from_edges(n, edges)


def kneser_graph(m: int, r: int) -> Digraph:
    """Kneser graph K(m, r): r-subsets of an m-set, adjacent when disjoint."""
    from itertools import combinations

    subsets = list(combinations(range(m), r))
    edges = [
        (i, j)
        for i, a in enumerate(subsets)
        for j, b in enumerate(subsets)
        if i != j and not set(a) & set(b)
    ]
    return Digraph.from_edges(len(subsets), edges, labels=subsets)


def johnson_graph(m: int, r: int) -> Digraph:
    """Johnson graph J(m, r): r-subsets adjacent when they share r - 1 points."""
    from itertools import combinations

    subsets = list(combinations(range(m), r))
    edges = [
        (i, j)
        for i, a in enumerate(subsets)
        for j, b in enumerate(subsets)
        if i != j and len(set(a) & set(b)) == r - 1
    ]
    return Digraph.from_edges(len(subsets), edges, labels=subsets)
