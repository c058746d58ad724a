"""Tactical configurations and the per-point block families fed to the constructions."""

from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass, field
from math import factorial
from typing import Iterator, Optional, Sequence

Block = tuple[int, ...]


class ParameterError(ValueError):
    """Construction parameters outside the admissible range."""


@dataclass(frozen=True)
class TacticalConfig:
    """Point set ``0..n_points-1`` with an ordered list of sorted blocks."""

    n_points: int
    blocks: tuple[Block, ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(tuple(sorted(b)) for b in self.blocks))

    @property
    def params(self) -> Optional[tuple[int, int, int, int]]:
        """``(v, b, k, r)`` when block size and replication are uniform, else ``None``."""
        if not self.blocks:
            return None
        sizes = {len(b) for b in self.blocks}
        reps = set(self.replication().values())
        if len(sizes) != 1 or len(reps) != 1:
            return None
        return (self.n_points, len(self.blocks), sizes.pop(), reps.pop())

    def replication(self) -> dict[int, int]:
        counts = Counter(p for b in self.blocks for p in b)
        return {p: counts.get(p, 0) for p in range(self.n_points)}


@dataclass
class ValidationReport:
    ok: bool
    violations: list[str] = field(default_factory=list)
    params: Optional[tuple[int, ...]] = None

    def __bool__(self):
        return self.ok


def validate_tactical_config(cfg: TacticalConfig, points: Optional[Sequence[int]] = None) -> ValidationReport:
    """Check constant block size, constant replication and ``v*r = b*k``.

    ``points`` restricts the point set (used for the per-point configurations
    living on ``P minus {g}``); it defaults to ``range(cfg.n_points)``.
    """
    pts = list(range(cfg.n_points)) if points is None else sorted(points)
    allowed = set(pts)
    violations = []
    if not cfg.blocks:
        violations.append("no blocks")
    sizes = Counter(len(b) for b in cfg.blocks)
    k = sizes.most_common(1)[0][0] if sizes else 0
    for idx, b in enumerate(cfg.blocks):
        if len(set(b)) != len(b):
            violations.append(f"block {idx} {list(b)} repeats a point")
        if len(b) != k:
            violations.append(f"block {idx} {list(b)} has size {len(b)}, expected {k}")
        stray = [p for p in b if p not in allowed]
        if stray:
            violations.append(f"block {idx} {list(b)} has points {stray} outside the point set")
    counts = Counter(p for b in cfg.blocks for p in b)
    reps = Counter(counts.get(p, 0) for p in pts)
    r = reps.most_common(1)[0][0] if reps else 0
    bad = {}
    for p in pts:
        c = counts.get(p, 0)
        if c != r:
            bad.setdefault(c, []).append(p)
    if bad:
        by_count = {}
        for p in pts:
            by_count.setdefault(counts.get(p, 0), []).append(p)
        detail = "; ".join(f"points {ps} in {c} blocks" for c, ps in sorted(by_count.items(), reverse=True))
        violations.append(f"replication not constant: {detail}")
    v, b = len(pts), len(cfg.blocks)
    if not violations and v * r != b * k:
        violations.append(f"double counting fails: v*r = {v * r} != b*k = {b * k}")
    params = (v, b, k, r) if not violations else None
    return ValidationReport(not violations, violations, params)


def cyclic_block_family(q: int, a: int, offset: int = 0) -> TacticalConfig:
    """Blocks ``{i, i+1, ..., i+a-1} mod q`` for ``i = 0..q-1``, shifted by ``offset``.

    The shifted form lives on points ``offset..offset+q-1`` but keeps
    ``n_points = q`` only when ``offset == 0``.
    """
    if not 1 <= a <= q:
        raise ParameterError(f"block size a={a} must satisfy 1 <= a <= q={q}")
    blocks = [tuple(offset + (i + j) % q for j in range(a)) for i in range(q)]
    return TacticalConfig(q + offset, tuple(blocks))


@dataclass(frozen=True)
class PointwiseFamily:
    """For each point ``g`` an ordered block list ``owner_blocks[g]``.

    Vertices of the antiflag graphs are the pairs ``(g, B)`` with
    ``B in owner_blocks[g]``.
    """

    n_points: int
    owner_blocks: tuple[tuple[Block, ...], ...]

    def __post_init__(self):
        if len(self.owner_blocks) != self.n_points:
            raise ParameterError(f"need one block list per point: {len(self.owner_blocks)} != {self.n_points}")
        object.__setattr__(
            self,
            "owner_blocks",
            tuple(tuple(tuple(sorted(b)) for b in fam) for fam in self.owner_blocks),
        )

    @property
    def per_point_params(self) -> Optional[tuple[int, int, int]]:
        """``(s, l, d)`` when every point has the same block count, size and replication."""
        found = set()
        for g, fam in enumerate(self.owner_blocks):
            if not fam:
                return None
            sizes = {len(b) for b in fam}
            counts = Counter(p for b in fam for p in b)
            reps = {counts.get(p, 0) for p in range(self.n_points) if p != g}
            if len(sizes) != 1 or len(reps) != 1:
                return None
            found.add((len(fam), sizes.pop(), reps.pop()))
        return found.pop() if len(found) == 1 else None

    @property
    def vertex_count(self) -> int:
        return sum(len(f) for f in self.owner_blocks)

    def union_config(self) -> TacticalConfig:
        return TacticalConfig(self.n_points, tuple(b for fam in self.owner_blocks for b in fam))

    def key(self) -> tuple:
        """Order-insensitive key: per point, the sorted multiset of blocks."""
        return tuple(tuple(sorted(fam)) for fam in self.owner_blocks)

    def relabel(self, perm: Sequence[int]) -> "PointwiseFamily":
        """Apply the point map ``p -> perm[p]``; families follow their point."""
        out = [None] * self.n_points
        for g, fam in enumerate(self.owner_blocks):
            out[perm[g]] = tuple(tuple(sorted(perm[p] for p in b)) for b in fam)
        return PointwiseFamily(self.n_points, tuple(out))

    def to_json(self) -> dict:
        return {"n_points": self.n_points, "families": [[list(b) for b in fam] for fam in self.owner_blocks]}

    @classmethod
    def from_json(cls, data: dict) -> "PointwiseFamily":
        try:
            n = int(data["n_points"])
            fams = tuple(tuple(tuple(int(p) for p in b) for b in fam) for fam in data["families"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParameterError(f"malformed family JSON: {exc}") from exc
        return cls(n, fams)


def validate_pointwise_family(fam: PointwiseFamily, exclude_owner: bool = True) -> ValidationReport:
    """Every ``owner_blocks[g]`` must be a tactical configuration on ``P minus {g}``
    with the same ``(n-1, s, l, d)``, and ``d(n-1) = ls``.
    """
    n = fam.n_points
    violations = []
    seen = set()
    for g, blocks in enumerate(fam.owner_blocks):
        if exclude_owner:
            for idx, b in enumerate(blocks):
                if g in b:
                    violations.append(f"point {g}: block {idx} {list(b)} contains its owner")
        pts = [p for p in range(n) if p != g] if exclude_owner else list(range(n))
        rep = validate_tactical_config(TacticalConfig(n, blocks), points=pts)
        if not rep.ok:
            violations.extend(f"point {g}: {msg}" for msg in rep.violations)
        else:
            seen.add(rep.params)
    if len(seen) > 1:
        violations.append(f"per-point parameters differ: {sorted(seen)}")
    params = None
    if not violations and seen:
        v, s, l, d = seen.pop()
        if exclude_owner and d * (n - 1) != l * s:
            violations.append(f"d(n-1) = {d * (n - 1)} != ls = {l * s}")
        params = (s, l, d)
    return ValidationReport(not violations, violations, params)


def chunked_pointwise_family(n: int, s: int, l: int, d: int) -> PointwiseFamily:
    """Default family: list ``P minus {g}`` in increasing order, repeat it ``d``
    times and cut the sequence into ``s`` consecutive chunks of length ``l``.
    """
    if min(n, s, l, d) < 1:
        raise ParameterError("n, s, l, d must be positive")
    if d * (n - 1) != l * s:
        raise ParameterError(f"d(n-1) = {d * (n - 1)} must equal ls = {l * s}")
    if l > n - 2:
        raise ParameterError(f"l={l} must satisfy l <= n-2 = {n - 2}")
    if d >= s:
        raise ParameterError(f"d={d} must be < s={s}")
    fams = []
    for g in range(n):
        others = [p for p in range(n) if p != g] * d
        fams.append(tuple(tuple(others[i * l:(i + 1) * l]) for i in range(s)))
    return PointwiseFamily(n, tuple(fams))


def set_partitions_equal(points: Sequence[int], s: int, l: int) -> list[tuple[Block, ...]]:
    """All partitions of ``points`` into ``s`` unordered cells of size ``l`` (cells sorted)."""
    points = sorted(points)
    if len(points) != s * l:
        raise ParameterError(f"{len(points)} points cannot split into {s} cells of size {l}")
    out = []

    def rec(rest, cells):
        if not rest:
            out.append(tuple(cells))
            return
        first, tail = rest[0], rest[1:]
        for comb in itertools.combinations(tail, l - 1):
            cell = (first,) + comb
            remaining = [p for p in tail if p not in comb]
            rec(remaining, cells + [cell])

    rec(points, [])
    return out


def partition_count(s: int, l: int) -> int:
    """``(ls)! / (s! (l!)^s)``."""
    return factorial(l * s) // (factorial(s) * factorial(l) ** s)


def enumerate_pointwise_partitions(n: int, s: int, l: int) -> Iterator[PointwiseFamily]:
    """Every family choosing, independently per point, a partition of ``P minus {g}``
    into ``s`` cells of size ``l``. Restartable: each call starts a fresh stream.
    """
    if l * s != n - 1:
        raise ParameterError(f"ls = {l * s} must equal n-1 = {n - 1}")
    choices = [set_partitions_equal([p for p in range(n) if p != g], s, l) for g in range(n)]
    for combo in itertools.product(*choices):
        yield PointwiseFamily(n, tuple(combo))


def random_pointwise_partition(n: int, s: int, l: int, rng) -> PointwiseFamily:
    """One family drawn uniformly from the stream of :func:`enumerate_pointwise_partitions`."""
    fams = []
    for g in range(n):
        others = [p for p in range(n) if p != g]
        rng.shuffle(others)
        fams.append(tuple(tuple(sorted(others[i * l:(i + 1) * l])) for i in range(s)))
    return PointwiseFamily(n, tuple(fams))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % p for p in range(2, int(n ** 0.5) + 1))


def projective_plane_points(order: int) -> list[tuple[int, int, int]]:
    """Normalized representatives of the 1-dimensional subspaces of ``GF(order)^3``."""
    q = order
    pts = [(1, y, z) for y in range(q) for z in range(q)]
    pts += [(0, 1, z) for z in range(q)]
    pts.append((0, 0, 1))
    return pts


def projective_plane_lines(order: int) -> list[tuple[int, ...]]:
    """Lines of PG(2, order) as sorted tuples of point indices (prime order only)."""
    if not is_prime(order):
        raise ParameterError(f"projective planes are built over prime fields only; order {order} is not prime")
    q = order
    pts = projective_plane_points(q)
    lines = []
    for a, b, c in pts:  # dual coordinates use the same representatives
        line = tuple(i for i, (x, y, z) in enumerate(pts) if (a * x + b * y + c * z) % q == 0)
        lines.append(line)
    return lines


def projective_plane_family(order: int) -> PointwiseFamily:
    """For each point ``p``, the blocks ``L minus {p}`` over the lines ``L`` through ``p``."""
    lines = projective_plane_lines(order)
    n = order * order + order + 1
    fams = []
    for p in range(n):
        fams.append(tuple(tuple(x for x in L if x != p) for L in lines if p in L))
    return PointwiseFamily(n, tuple(fams))


def load_family(path) -> PointwiseFamily:
    with open(path) as fh:
        return PointwiseFamily.from_json(json.load(fh))
