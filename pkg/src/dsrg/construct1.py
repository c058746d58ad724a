"""Construction I: antiflag digraphs over grouped point sets.

Points are split into ``r`` groups of size ``q`` (group ``j`` holds points
``j*q .. j*q+q-1``). Three forms share the adjacency rule
``(g, B) -> (g', B')`` iff ``g in B'``:

* general: ``q - 1 = a*b``, blocks ``X_gl | (B_j minus P_hj)``;
* b1: ``a = q - 1``, blocks ``(G_h minus {g}) | (B_j minus P_hj)``;
* a1: transversal blocks split into diagonal parts selected through a map ``pi``.
"""

from __future__ import annotations

import itertools
import warnings
from collections import Counter
from dataclasses import dataclass, field
from math import factorial
from typing import Iterator, Literal, Optional, Sequence

from .construct2 import ConstructionError, antiflag_digraph
from .designs import (
    ParameterError,
    PointwiseFamily,
    TacticalConfig,
    cyclic_block_family,
    validate_tactical_config,
)
from .graphs import Digraph, DsrgParams

Mode = Literal["general", "b1", "a1"]


class NonInjectiveMapWarning(UserWarning):
    """The a1 selection map is not injective; the result is still verified exactly."""


@dataclass(frozen=True)
class GroupedDesign:
    """Inputs of the general form.

    ``group_blocks[j]`` lists the ``q`` blocks ``P_j1..P_jq`` of group ``j``;
    ``spanning_blocks[i]`` is ``B_i``; ``x_partitions[g]`` lists the ``b`` cells
    ``X_g1..X_gb`` partitioning the rest of ``g``'s group.
    """

    r: int
    q: int
    a: int
    b: int
    groups: tuple[tuple[int, ...], ...]
    group_blocks: tuple[tuple[tuple[int, ...], ...], ...]
    spanning_blocks: tuple[tuple[int, ...], ...]
    x_partitions: tuple[tuple[tuple[int, ...], ...], ...]

    def to_json(self) -> dict:
        return {
            "r": self.r, "q": self.q, "a": self.a, "b": self.b,
            "groups": [list(g) for g in self.groups],
            "group_blocks": [[list(p) for p in fam] for fam in self.group_blocks],
            "spanning_blocks": [list(b) for b in self.spanning_blocks],
            "x_partitions": [[list(x) for x in xs] for xs in self.x_partitions],
        }

    @classmethod
    def from_json(cls, data: dict) -> "GroupedDesign":
        def blocks(seq):
            return tuple(tuple(sorted(int(p) for p in b)) for b in seq)

        try:
            return cls(
                int(data["r"]), int(data["q"]), int(data["a"]), int(data["b"]),
                tuple(tuple(sorted(int(p) for p in g)) for g in data["groups"]),
                tuple(blocks(fam) for fam in data["group_blocks"]),
                blocks(data["spanning_blocks"]),
                tuple(blocks(xs) for xs in data["x_partitions"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ParameterError(f"malformed grouped design JSON: {exc}") from exc


@dataclass(frozen=True)
class C1Options:
    mode: Mode
    r: int
    q: int
    a: Optional[int] = None
    b: Optional[int] = None
    pairing: Literal["strict", "relaxed"] = "strict"
    choices: Optional[tuple[int, ...]] = None
    pi_map: Optional[tuple[int, ...]] = None
    design: Optional[GroupedDesign] = field(default=None, compare=False)

    def __post_init__(self):
        a, b = _mode_ab(self.mode, self.q, self.a, self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)


def _mode_ab(mode: str, q: int, a: Optional[int], b: Optional[int]) -> tuple[int, int]:
    if q < 2:
        raise ParameterError(f"q={q} must be >= 2")
    if mode == "b1":
        if (a not in (None, q - 1)) or (b not in (None, 1)):
            raise ParameterError("b1 mode forces a = q-1, b = 1")
        return q - 1, 1
    if mode == "a1":
        if (a not in (None, 1)) or (b not in (None, q - 1)):
            raise ParameterError("a1 mode forces a = 1, b = q-1")
        return 1, q - 1
    if mode == "general":
        if a is None and b is None:
            raise ParameterError("general mode needs a and b")
        if a is None:
            a = (q - 1) // b
        if b is None:
            b = (q - 1) // a
        if a < 1 or b < 1 or a * b != q - 1:
            raise ParameterError(f"need q-1 = a*b, got q={q}, a={a}, b={b}")
        return a, b
    raise ParameterError(f"unknown mode {mode!r}")


def groups_of(r: int, q: int) -> list[tuple[int, ...]]:
    return [tuple(range(j * q, (j + 1) * q)) for j in range(r)]


def default_grouped_design(r: int, q: int, a: int, b: int) -> GroupedDesign:
    """Cyclic group blocks, ``B_i`` pairing the i-th block of every group, and
    ``X`` cells chunking the group in cyclic order starting after ``g``.
    """
    _mode_ab("general", q, a, b)
    if r < 2:
        raise ParameterError(f"r={r} must be >= 2")
    groups = groups_of(r, q)
    group_blocks = tuple(cyclic_block_family(q, a, offset=j * q).blocks for j in range(r))
    spanning = tuple(tuple(sorted(p for j in range(r) for p in group_blocks[j][i])) for i in range(q))
    xs = []
    for g in range(r * q):
        h, pos = divmod(g, q)
        rest = [h * q + (pos + step) % q for step in range(1, q)]
        xs.append(tuple(tuple(sorted(rest[l * a:(l + 1) * a])) for l in range(b)))
    return GroupedDesign(r, q, a, b, tuple(groups), group_blocks, spanning, tuple(xs))


def validate_grouped_design(design: GroupedDesign) -> list[str]:
    """Violated hypotheses of the grouped construction, empty when consistent."""
    r, q, a, b = design.r, design.q, design.a, design.b
    problems = []
    if q - 1 != a * b:
        problems.append(f"q-1 = {q - 1} != a*b = {a * b}")
    if len(design.groups) != r or any(len(g) != q for g in design.groups):
        problems.append(f"groups must be {r} cells of size {q}")
    flat = sorted(p for g in design.groups for p in g)
    if flat != list(range(r * q)):
        problems.append("groups do not partition the point set 0..rq-1")
    group_of = {p: j for j, g in enumerate(design.groups) for p in g}
    if len(design.group_blocks) != r:
        problems.append(f"need {r} group block families")
    for j, fam in enumerate(design.group_blocks):
        if j >= len(design.groups):
            break
        rep = validate_tactical_config(TacticalConfig(r * q, fam), points=design.groups[j])
        if not rep.ok or rep.params != (q, q, a, a):
            problems.append(
                f"group {j} blocks are not a tactical configuration (q, q, a, a) = {(q, q, a, a)}: "
                + ("; ".join(rep.violations) if not rep.ok else f"got {rep.params}")
            )
    if len(design.spanning_blocks) != q:
        problems.append(f"need {q} spanning blocks B_1..B_q")
    for i, big in enumerate(design.spanning_blocks):
        for j, fam in enumerate(design.group_blocks):
            part = tuple(sorted(p for p in big if group_of.get(p) == j))
            if part not in fam:
                problems.append(f"B_{i + 1} does not contain exactly one block of group {j}")
    for j, fam in enumerate(design.group_blocks):
        parts = [tuple(sorted(p for p in big if group_of.get(p) == j)) for big in design.spanning_blocks]
        if Counter(parts) != Counter(fam):
            problems.append(f"blocks of group {j} are not each used by exactly one spanning block")
    if len(design.x_partitions) != r * q:
        problems.append("need one X partition per point")
    else:
        for g, cells in enumerate(design.x_partitions):
            h = group_of.get(g)
            if h is None:
                continue
            rest = sorted(p for p in design.groups[h] if p != g)
            if len(cells) != b or any(len(x) != a for x in cells) or sorted(p for x in cells for p in x) != rest:
                problems.append(f"X cells of point {g} do not partition its group minus itself into {b} cells of size {a}")
    return problems


def grouped_family(design: GroupedDesign) -> PointwiseFamily:
    """Per-point blocks ``B_{gl,j} = X_gl | (B_j minus P_hj)``, ``l`` outer, ``j`` inner."""
    problems = validate_grouped_design(design)
    if problems:
        raise ConstructionError("grouped design violates: " + "; ".join(problems))
    group_of = {p: j for j, g in enumerate(design.groups) for p in g}
    fams = []
    for g in range(design.r * design.q):
        h = group_of[g]
        home = set(design.groups[h])
        blocks = []
        for x in design.x_partitions[g]:
            for big in design.spanning_blocks:
                blocks.append(tuple(sorted(set(x) | (set(big) - home))))
        fams.append(tuple(blocks))
    return PointwiseFamily(design.r * design.q, tuple(fams))


def build_c1_general(r: int, q: int, a: int, b: int, design: Optional[GroupedDesign] = None) -> Digraph:
    if design is None:
        design = default_grouped_design(r, q, a, b)
    elif (design.r, design.q, design.a, design.b) != (r, q, a, b):
        raise ParameterError("design parameters differ from (r, q, a, b)")
    return antiflag_digraph(grouped_family(design))


def _b1_subsets(r: int, q: int) -> list[list[tuple[int, ...]]]:
    # P_{j,i} = G_j minus its i-th point
    return [[tuple(p for p in g if p != g[i]) for i in range(q)] for g in groups_of(r, q)]


def b1_choice_count(r: int, q: int) -> int:
    """Relaxed pairings available to one point: ``(q!)^(r-2)``."""
    return factorial(q) ** (r - 2)


def b1_family(r: int, q: int, pairing: str = "strict", choices: Optional[Sequence[int]] = None) -> PointwiseFamily:
    """Per-point blocks of the b1 form.

    Strict pairing uses one global ``B_1..B_q``. Relaxed pairing lets every
    point re-align the non-reference groups: ``choices[g]`` indexes a tuple of
    permutations of ``range(q)`` (one per non-home group after the first),
    in ``itertools.product(itertools.permutations(range(q)), ...)`` order.
    """
    if r < 2 or q < 2:
        raise ParameterError(f"need r, q >= 2, got r={r}, q={q}")
    subsets = _b1_subsets(r, q)
    groups = groups_of(r, q)
    n = r * q
    if pairing == "strict":
        if choices is not None and any(c != 0 for c in choices):
            raise ParameterError("strict pairing takes no choices")
        choices = [0] * n
    elif pairing == "relaxed":
        if choices is None:
            choices = [0] * n
        if len(choices) != n:
            raise ParameterError(f"need {n} choices, got {len(choices)}")
    else:
        raise ParameterError(f"unknown pairing {pairing!r}")
    total = b1_choice_count(r, q)
    perms = list(itertools.permutations(range(q)))
    fams = []
    for g in range(n):
        c = choices[g]
        if not 0 <= c < total:
            raise ParameterError(f"choice {c} for point {g} outside 0..{total - 1}")
        h = g // q
        others = [f for f in range(r) if f != h]
        aligned = {others[0]: tuple(range(q))}
        for f in reversed(others[1:]):
            c, idx = divmod(c, len(perms))
            aligned[f] = perms[idx]
        home_rest = tuple(p for p in groups[h] if p != g)
        blocks = []
        for j in range(q):
            blk = set(home_rest)
            for f in others:
                blk.update(subsets[f][aligned[f][j]])
            blocks.append(tuple(sorted(blk)))
        fams.append(tuple(blocks))
    return PointwiseFamily(n, tuple(fams))


def build_c1_b1(r: int, q: int, pairing: str = "strict", choices: Optional[Sequence[int]] = None) -> Digraph:
    return antiflag_digraph(b1_family(r, q, pairing, choices))


def enumerate_b1_relaxed(r: int, q: int) -> Iterator[tuple[tuple[int, ...], Digraph]]:
    """All relaxed choice vectors with their graphs; ``(q!)^((r-2) r q)`` of them."""
    per_point = range(b1_choice_count(r, q))
    for choices in itertools.product(per_point, repeat=r * q):
        yield choices, build_c1_b1(r, q, "relaxed", choices)


def diagonal_parts(r: int, q: int, point: int) -> list[list[tuple[int, ...]]]:
    """Partition of the transversal blocks through ``point`` into ``q^(r-2)`` parts.

    A block through ``point`` is fixed by its coordinates ``y`` in the other
    ``r-1`` groups; part ``c`` holds ``y = (x, x+c_1, ..., x+c_{r-2}) mod q``.
    Parts are listed with ``c`` in lexicographic order.
    """
    h, pos = divmod(point, q)
    others = [f for f in range(r) if f != h]
    parts = []
    for c in itertools.product(range(q), repeat=r - 2):
        part = []
        for x in range(q):
            coords = [x] + [(x + ci) % q for ci in c]
            blk = {point} | {f * q + y for f, y in zip(others, coords)}
            part.append(tuple(sorted(blk)))
        parts.append(part)
    return parts


def default_pi(r: int, q: int) -> tuple[int, ...]:
    """``pi(i) = ((i-1) mod w) + 1`` on 1-based points, ``w = q^(r-2)``."""
    w = q ** (r - 2)
    return tuple(i % w + 1 for i in range(r * q))


def a1_family(r: int, q: int, pi_map: Optional[Sequence[int]] = None) -> PointwiseFamily:
    if r < 2 or q < 2:
        raise ParameterError(f"need r, q >= 2, got r={r}, q={q}")
    n = r * q
    w = q ** (r - 2)
    pi = tuple(default_pi(r, q) if pi_map is None else pi_map)
    if len(pi) != n:
        raise ParameterError(f"pi needs {n} values, got {len(pi)}")
    bad = [x for x in pi if not 1 <= x <= w]
    if bad:
        raise ParameterError(f"pi values {bad} outside 1..{w}")
    if len(set(pi)) != n:
        warnings.warn(
            f"pi is not injective ({n} points, {w} parts); result still verified exactly",
            NonInjectiveMapWarning,
            stacklevel=3,
        )
    selected = [diagonal_parts(r, q, i)[pi[i] - 1] for i in range(n)]
    fams = []
    for g in range(n):
        h = g // q
        blocks = []
        for i in range(h * q, (h + 1) * q):
            if i != g:
                blocks.extend(selected[i])
        fams.append(tuple(blocks))
    return PointwiseFamily(n, tuple(fams))


def build_c1_a1(r: int, q: int, pi_map: Optional[Sequence[int]] = None) -> Digraph:
    return antiflag_digraph(a1_family(r, q, pi_map))


def build_c1(opts: C1Options) -> Digraph:
    if opts.mode == "general":
        return build_c1_general(opts.r, opts.q, opts.a, opts.b, opts.design)
    if opts.mode == "b1":
        return build_c1_b1(opts.r, opts.q, opts.pairing, opts.choices)
    return build_c1_a1(opts.r, opts.q, opts.pi_map)


def expected_params_c1(mode: Mode, r: int, q: int, a: Optional[int] = None, b: Optional[int] = None, m: int = 1) -> DsrgParams:
    """Closed-form parameters for each form (times ``m`` for the m-copy blow-up)."""
    if r < 2:
        raise ParameterError(f"r={r} must be >= 2")
    if m < 1:
        raise ParameterError("m must be >= 1")
    a, b = _mode_ab(mode, q, a, b)
    if mode == "b1":
        p = (r * q * q, r * q * (q - 1), (q - 1) * (r * q - r + 1), r * (q - 1) ** 2 - 1, (q - 1) * (r * q - r + 1))
    elif mode == "a1":
        p = (r * q * q * (q - 1), r * q * (q - 1), r * q - r + 1, r * q - r - q + 1, r * q - r + 1)
    else:
        t = r * (q - 1) * a + a
        p = (r * q * q * b, r * q * (q - 1), t, q * (a - 1) + (r - 1) * (q - 1) * a, t)
    return DsrgParams(*p).scaled(m)
