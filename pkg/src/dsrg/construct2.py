"""Antiflag digraphs D1 / D2 over per-point block families, and their m-copy blow-ups."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .designs import ParameterError, PointwiseFamily, validate_pointwise_family
from .graphs import Digraph, DsrgParams, verify_dsrg

Variant = Literal["d1", "d2"]


class ConstructionError(ValueError):
    """Inputs violate a hypothesis the construction relies on."""


@dataclass(frozen=True)
class C2Spec:
    family: PointwiseFamily
    variant: Variant = "d1"
    m: int = 1

    def __post_init__(self):
        if self.variant not in ("d1", "d2"):
            raise ParameterError(f"unknown variant {self.variant!r}")
        if self.m < 1:
            raise ParameterError("m must be >= 1")


def _antiflag_rows(labels, n_points: int, same_point: bool) -> tuple[int, ...]:
    containing = [0] * n_points
    owned = [0] * n_points
    for idx, (g, b, _) in enumerate(labels):
        owned[g] |= 1 << idx
        for p in b:
            containing[p] |= 1 << idx
    rows = []
    for idx, (g, _, _) in enumerate(labels):
        row = containing[g]
        if same_point:
            row |= owned[g] & ~(1 << idx)
        rows.append(row)
    return tuple(rows)


def antiflag_digraph(family: PointwiseFamily, same_point: bool = False) -> Digraph:
    """Vertices ``(g, B)`` for ``B in owner_blocks[g]``; ``(g,B) -> (g',B')`` iff ``g in B'``.

    With ``same_point`` the pairs ``g == g'``, ``B != B'`` (distinct vertices)
    are joined as well.
    """
    labels = []
    for g, fam in enumerate(family.owner_blocks):
        for b in fam:
            if g in b:
                raise ConstructionError(f"({g}, {list(b)}) is not an antiflag")
            labels.append((g, b, 0))
    rows = _antiflag_rows(labels, family.n_points, same_point)
    return Digraph(len(labels), rows, tuple(labels))


def _checked(family: PointwiseFamily) -> PointwiseFamily:
    rep = validate_pointwise_family(family)
    if not rep.ok:
        raise ConstructionError("invalid pointwise family: " + "; ".join(rep.violations[:5]))
    return family


def build_d1(family: PointwiseFamily) -> Digraph:
    return antiflag_digraph(_checked(family))


def build_d2(family: PointwiseFamily) -> Digraph:
    return antiflag_digraph(_checked(family), same_point=True)


def build(spec: C2Spec) -> Digraph:
    g = build_d1(spec.family) if spec.variant == "d1" else build_d2(spec.family)
    return blow_up(g, spec.variant, spec.m) if spec.m > 1 else g


def blow_up(graph: Digraph, variant: Variant, m: int, check: bool = True) -> Digraph:
    """Replace every vertex by ``m`` copies tagged ``0..m-1``.

    d1: ``(g,B,i) -> (g',B',j)`` iff ``g in B'``.
    d2: additionally join distinct instances sharing the point ``g``.
    For d1 the input must satisfy ``t == mu`` (checked unless ``check=False``).
    """
    if m < 1:
        raise ParameterError("m must be >= 1")
    if graph.labels is None:
        raise ConstructionError("blow-up needs (point, block) vertex labels")
    if variant not in ("d1", "d2"):
        raise ParameterError(f"unknown variant {variant!r}")
    if check and variant == "d1":
        p = verify_dsrg(graph)
        if p.t != p.mu:
            raise ConstructionError(f"d1 blow-up needs t == mu, got {p}")
    labels = [(lab[0], lab[1], c) for c in range(m) for lab in graph.labels]
    points = 1 + max(max(lab[0], *lab[1]) if lab[1] else lab[0] for lab in labels)
    rows = _antiflag_rows(labels, points, variant == "d2")
    return Digraph(len(labels), rows, tuple(labels))


def expected_params_c2(n: int, s: int, l: int, d: int, variant: Variant = "d1", m: int = 1) -> DsrgParams:
    """Closed-form parameters of D1 / D2 and their m-copy blow-ups."""
    if min(n, s, l, d, m) < 1 or d * (n - 1) != l * s:
        raise ParameterError(f"inadmissible (n, s, l, d, m) = {(n, s, l, d, m)}")
    if variant == "d1":
        return DsrgParams(n * s, l * s, l * d, (l - 1) * d, l * d).scaled(m)
    if variant == "d2":
        return DsrgParams(
            m * n * s,
            m * (l * s + s) - 1,
            m * (l * d + s) - 1,
            m * (l * d + s) - 2,
            m * (l + 1) * d,
        )
    raise ParameterError(f"unknown variant {variant!r}")
