"""Canonical labeling, isomorphism and automorphism groups of small digraphs.

Search tree in the style of individualization-refinement:

* a node is an ordered partition of the vertices, refined until equitable
  with respect to out- and in-neighbour counts;
* a child individualizes one vertex of the first smallest non-singleton cell;
* every refinement emits a trace that depends only on the isomorphism type
  of (graph, node), so traces can be compared across branches.

The automorphism group is computed first, one stabilizer level at a time along
the leftmost path. The canonical leaf is then the leaf minimizing
``(trace sequence, relabeled adjacency rows)`` over the tree, with subtrees
pruned by automorphism orbits and by trace comparison. The certificate is the
adjacency matrix of that leaf packed into bytes.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

from .graphs import Digraph
from .perms import Perm, PermGroup, inverse

_END = -1


class _Partition:
    """Ordered partition: ``lab`` lists vertices cell by cell, ``start[v]`` is
    the first position of the cell holding ``v`` and ``size[s]`` the length of
    the cell starting at position ``s``."""

    __slots__ = ("lab", "start", "size", "ncells")

    def __init__(self, lab, start, size, ncells):
        self.lab = lab
        self.start = start
        self.size = size
        self.ncells = ncells

    @classmethod
    def unit(cls, n: int, colors: Optional[Sequence] = None) -> "_Partition":
        if colors is None:
            lab = list(range(n))
            start = [0] * n
            size = [0] * n
            if n:
                size[0] = n
            return cls(lab, start, size, 1 if n else 0)
        lab = sorted(range(n), key=lambda v: colors[v])
        start = [0] * n
        size = [0] * n
        ncells = 0
        pos = 0
        while pos < n:
            end = pos
            while end < n and colors[lab[end]] == colors[lab[pos]]:
                end += 1
            for x in range(pos, end):
                start[lab[x]] = pos
            size[pos] = end - pos
            ncells += 1
            pos = end
        return cls(lab, start, size, ncells)

    def copy(self) -> "_Partition":
        return _Partition(self.lab[:], self.start[:], self.size[:], self.ncells)

    def cell_starts(self) -> list[int]:
        out, pos, n = [], 0, len(self.lab)
        while pos < n:
            out.append(pos)
            pos += self.size[pos]
        return out

    def is_discrete(self) -> bool:
        return self.ncells == len(self.lab)

    def target_cell(self) -> int:
        """Start of the first smallest non-singleton cell."""
        best, best_size = -1, None
        for s in self.cell_starts():
            sz = self.size[s]
            if sz > 1 and (best_size is None or sz < best_size):
                best, best_size = s, sz
        return best


def _refine(rows, cols, part: _Partition, queue: list[int]) -> tuple:
    """Refine ``part`` in place to the coarsest equitable refinement; return the trace."""
    n = len(part.lab)
    lab, start, size = part.lab, part.start, part.size
    pending = deque(queue)
    queued = [False] * n
    for s in queue:
        queued[s] = True
    trace = []
    while pending and part.ncells < n:
        w = pending.popleft()
        queued[w] = False
        wmask = 0
        for x in range(w, w + size[w]):
            wmask |= 1 << lab[x]
        s = 0
        while s < n:
            sz = size[s]
            if sz == 1:
                s += 1
                continue
            cell = lab[s:s + sz]
            keys = [((rows[v] & wmask).bit_count(), (cols[v] & wmask).bit_count()) for v in cell]
            first = keys[0]
            if all(k == first for k in keys):
                s += sz
                continue
            order = sorted(range(sz), key=keys.__getitem__)
            event = [s]
            frags = []
            pos = s
            prev = None
            for idx in order:
                key = keys[idx]
                if key != prev:
                    frags.append([pos, 0])
                    event.extend(key)
                    event.append(0)
                    prev = key
                v = cell[idx]
                lab[pos] = v
                start[v] = frags[-1][0]
                frags[-1][1] += 1
                event[-1] += 1
                pos += 1
            for fs, fl in frags:
                size[fs] = fl
            part.ncells += len(frags) - 1
            trace.append(tuple(event))
            if queued[s]:
                for fs, _ in frags[1:]:
                    queued[fs] = True
                    pending.append(fs)
            else:
                largest = max(range(len(frags)), key=lambda i: (frags[i][1], -i))
                for i, (fs, _) in enumerate(frags):
                    if i != largest:
                        queued[fs] = True
                        pending.append(fs)
            s += sz
    trace.append((_END, part.ncells))
    return tuple(trace)


def _individualize(rows, cols, part: _Partition, v: int) -> tuple[_Partition, tuple]:
    child = part.copy()
    s = child.start[v]
    sz = child.size[s]
    pos = child.lab.index(v, s, s + sz)
    child.lab[s], child.lab[pos] = child.lab[pos], child.lab[s]
    child.size[s] = 1
    child.size[s + 1] = sz - 1
    for x in range(s + 1, s + sz):
        child.start[child.lab[x]] = s + 1
    child.ncells += 1
    trace = ((s, 0),) + _refine(rows, cols, child, [s])
    return child, trace


def _leaf_code(rows, lab: Sequence[int]) -> tuple[int, ...]:
    """Rows of the relabeled matrix; column ``j`` is bit ``n-1-j`` so integer
    order equals lexicographic order of the 0/1 strings."""
    n = len(lab)
    weight = [0] * n
    for i, v in enumerate(lab):
        weight[v] = 1 << (n - 1 - i)
    code = []
    for v in lab:
        row = rows[v]
        val = 0
        while row:
            low = row & -row
            val |= weight[low.bit_length() - 1]
            row ^= low
        code.append(val)
    return tuple(code)


def _pack(code: Sequence[int], n: int) -> bytes:
    """Row-major packing of the n*n matrix, most significant bit first, prefixed by n."""
    bits = 0
    for row in code:
        bits = (bits << n) | row
    nbits = n * n
    nbytes = (nbits + 7) // 8
    return n.to_bytes(4, "big") + (bits << (nbytes * 8 - nbits)).to_bytes(nbytes, "big")


def _orbit_reps(cell: Sequence[int], gens: Sequence[Perm]) -> list[int]:
    """One representative (the first in ``cell`` order) per orbit of ``gens`` meeting ``cell``."""
    seen = set()
    reps = []
    for w in cell:
        if w in seen:
            continue
        reps.append(w)
        frontier = [w]
        seen.add(w)
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = g[x]
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
    return reps


def _fixing(gens: Sequence[Perm], path: Sequence[int]) -> list[Perm]:
    return [g for g in gens if all(g[p] == p for p in path)]


@dataclass(frozen=True)
class CanonicalResult:
    certificate: bytes
    labeling: tuple[int, ...]  # labeling[v] = canonical position of vertex v
    automorphisms: PermGroup

    @property
    def hex(self) -> str:
        return self.certificate.hex()


class _Search:
    def __init__(self, g: Digraph, colors=None):
        self.n = g.n
        self.rows = g.rows
        self.cols = g.cols
        self.colors = colors

    def root(self):
        part = _Partition.unit(self.n, self.colors)
        trace = _refine(self.rows, self.cols, part, part.cell_starts())
        return part, trace

    def automorphisms(self):
        """Generators of the full automorphism group, plus the leftmost path."""
        rows, cols = self.rows, self.cols
        part, trace = self.root()
        nodes = [part]
        traces = [trace]
        path = []
        while not part.is_discrete():
            s = part.target_cell()
            v = min(part.lab[s:s + part.size[s]])
            part, trace = _individualize(rows, cols, part, v)
            nodes.append(part)
            traces.append(trace)
            path.append(v)
        first_lab = part.lab
        first_code = _leaf_code(rows, first_lab)
        gens: list[Perm] = []

        def find_leaf(node, depth):
            """A leaf below ``node`` (at ``depth``) with the same code as the first leaf."""
            if node.is_discrete():
                return node.lab if _leaf_code(rows, node.lab) == first_code else None
            s = node.target_cell()
            for u in sorted(node.lab[s:s + node.size[s]]):
                child, tr = _individualize(rows, cols, node, u)
                if tr != traces[depth + 1]:
                    continue
                found = find_leaf(child, depth + 1)
                if found is not None:
                    return found
            return None

        for level in range(len(path) - 1, -1, -1):
            node = nodes[level]
            s = node.target_cell()
            cell = sorted(node.lab[s:s + node.size[s]])
            orbit = self._orbit(path[level], gens)
            for w in cell:
                if w in orbit:
                    continue
                child, tr = _individualize(rows, cols, node, w)
                if tr != traces[level + 1]:
                    continue
                leaf = find_leaf(child, level + 1)
                if leaf is None:
                    continue
                perm = [0] * self.n
                for a, b in zip(first_lab, leaf):
                    perm[a] = b
                gens.append(tuple(perm))
                orbit = self._orbit(path[level], gens)
        return gens

    @staticmethod
    def _orbit(x, gens):
        seen = {x}
        frontier = [x]
        while frontier:
            y = frontier.pop()
            for g in gens:
                z = g[y]
                if z not in seen:
                    seen.add(z)
                    frontier.append(z)
        return seen

    def canonical(self, gens):
        rows, cols = self.rows, self.cols
        part, trace = self.root()
        best = [None, None, None]  # trace sequence, code, lab

        def dfs(node, path, tseq):
            if best[0] is not None:
                prefix = best[0][:len(tseq)]
                if tseq > prefix:
                    return
            if node.is_discrete():
                code = _leaf_code(rows, node.lab)
                key = (tseq, code)
                if best[0] is None or key < (best[0], best[1]):
                    best[0], best[1], best[2] = tseq, code, node.lab
                return
            s = node.target_cell()
            cell = sorted(node.lab[s:s + node.size[s]])
            for u in _orbit_reps(cell, _fixing(gens, path)):
                child, tr = _individualize(rows, cols, node, u)
                dfs(child, path + [u], tseq + [tr])

        dfs(part, [], [trace])
        return best[1], best[2]


def _prepare(g: Digraph, colors=None):
    search = _Search(g, colors)
    gens = search.automorphisms()
    code, lab = search.canonical(gens)
    labeling = [0] * g.n
    for pos, v in enumerate(lab):
        labeling[v] = pos
    cert = _pack(code, g.n)
    if colors is not None:
        cert += repr([colors[v] for v in lab]).encode()
    return cert, tuple(labeling), PermGroup(g.n, gens)


def canonical_form(g: Digraph, colors: Optional[Sequence] = None) -> tuple[bytes, tuple[int, ...]]:
    """Certificate bytes and the canonical relabeling (``labeling[v]`` = new index of ``v``).

    ``g.relabel(labeling)`` is the canonical representative; its packed
    adjacency matrix is the certificate. ``colors`` (optional, comparable
    values) restricts isomorphisms to colour-preserving ones and is appended
    to the certificate.
    """
    cert, lab, _ = _prepare(g, colors)
    return cert, lab


def canonize(g: Digraph, colors: Optional[Sequence] = None) -> CanonicalResult:
    """Certificate, labeling and automorphism group from one search."""
    cert, lab, grp = _prepare(g, colors)
    return CanonicalResult(cert, lab, grp)


def certificate(g: Digraph) -> bytes:
    return canonical_form(g)[0]


def automorphism_group(g: Digraph, colors: Optional[Sequence] = None) -> PermGroup:
    """Full automorphism group; generators come from the stabilizer-chain search."""
    return PermGroup(g.n, _Search(g, colors).automorphisms())


def are_isomorphic(g: Digraph, h: Digraph) -> tuple[bool, Optional[Perm]]:
    """``(True, witness)`` with ``g.relabel(witness) == h``, or ``(False, None)``."""
    if g.n != h.n:
        return False, None
    cg, lg = canonical_form(g)
    ch, lh = canonical_form(h)
    if cg != ch:
        return False, None
    witness = tuple(inverse(lh)[lg[v]] for v in range(g.n))
    if g.relabel(witness) != h:  # cannot happen for a correct canonical form
        raise AssertionError("canonical forms agree but the induced map is not an isomorphism")
    return True, witness


def certificate_graph(cert: bytes) -> Digraph:
    """Decode a certificate produced without colours back into its digraph."""
    n = int.from_bytes(cert[:4], "big")
    nbits = n * n
    nbytes = (nbits + 7) // 8
    bits = int.from_bytes(cert[4:4 + nbytes], "big") >> (nbytes * 8 - nbits)
    rows = []
    for i in range(n):
        code = (bits >> ((n - 1 - i) * n)) & ((1 << n) - 1)
        rows.append(sum(1 << j for j in range(n) if code >> (n - 1 - j) & 1))
    return Digraph(n, tuple(rows))
