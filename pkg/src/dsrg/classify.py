"""Isomorphism classification of graph streams and orbit analysis of block families."""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import factorial
from typing import Iterable, Optional, Sequence

from .canon import automorphism_group, canonical_form, canonize, are_isomorphic
from .construct2 import antiflag_digraph
from .designs import ParameterError, PointwiseFamily, random_pointwise_partition
from .graphs import Digraph, VerificationError, transpose, verify_dsrg
from .perms import PermGroup, all_permutations, group_from_elements, recognize_group

__all__ = [
    "IsoClass",
    "IsoClassReport",
    "OrbitRecord",
    "SamplingReport",
    "are_isomorphic",
    "automorphism_group",
    "canonical_form",
    "classify_family",
    "isomorphic_to_any",
    "orbits_under_point_relabeling",
    "recognize_group",
    "sample_classes",
]


@dataclass
class IsoClass:
    certificate: bytes
    representative: Digraph
    size: int
    automorphisms: PermGroup
    aut_name: str
    self_transpose: bool
    transpose_certificate: bytes
    members: list[int] = field(default_factory=list)

    @property
    def aut_order(self) -> int:
        return self.automorphisms.order()

    def to_json(self) -> dict:
        return {
            "certificate": self.certificate.hex(),
            "size": self.size,
            "aut_order": self.aut_order,
            "aut_name": self.aut_name,
            "aut_generators": [list(g) for g in self.automorphisms.generators],
            "self_transpose": self.self_transpose,
            "transpose_certificate": self.transpose_certificate.hex(),
            "members": self.members,
        }


@dataclass
class IsoClassReport:
    classes: list[IsoClass]
    total: int

    @property
    def transpose_closure(self) -> int:
        """Number of classes once the transpose of every class is adjoined."""
        certs = {c.certificate for c in self.classes}
        certs |= {c.transpose_certificate for c in self.classes}
        return len(certs)

    def sizes(self) -> list[int]:
        return [c.size for c in self.classes]

    def to_json(self) -> dict:
        return {
            "total": self.total,
            "class_count": len(self.classes),
            "transpose_closure": self.transpose_closure,
            "classes": [c.to_json() for c in self.classes],
        }


def _certify(g: Digraph) -> bytes:
    return canonical_form(g)[0]


def _map(fn, items, jobs: int):
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))
    return [fn(x) for x in items]


def classify_family(graphs: Iterable[Digraph], jobs: int = 1) -> IsoClassReport:
    """Group ``graphs`` by certificate.

    Classes are listed in order of first appearance; each carries its size,
    automorphism group and whether it is isomorphic to its transpose.
    """
    graphs = list(graphs)
    certs = _map(_certify, graphs, jobs)
    order: list[bytes] = []
    members: dict[bytes, list[int]] = {}
    for idx, c in enumerate(certs):
        if c not in members:
            members[c] = []
            order.append(c)
        members[c].append(idx)
    classes = []
    for c in order:
        rep = graphs[members[c][0]]
        res = canonize(rep)
        tcert = _certify(transpose(rep))
        classes.append(
            IsoClass(
                certificate=c,
                representative=rep,
                size=len(members[c]),
                automorphisms=res.automorphisms,
                aut_name=recognize_group(res.automorphisms),
                self_transpose=tcert == c,
                transpose_certificate=tcert,
                members=members[c],
            )
        )
    return IsoClassReport(classes, len(graphs))


# -- point relabeling orbits ---------------------------------------------------

MAX_RELABEL_DEGREE = 8


@dataclass
class OrbitRecord:
    representative: PointwiseFamily
    orbit_size: int
    stabilizer: PermGroup
    members: list[int]

    @property
    def stabilizer_name(self) -> str:
        return recognize_group(self.stabilizer)

    def to_json(self) -> dict:
        return {
            "representative": self.representative.to_json(),
            "orbit_size": self.orbit_size,
            "stabilizer_order": self.stabilizer.order(),
            "stabilizer_name": self.stabilizer_name,
            "stabilizer_generators": [list(g) for g in self.stabilizer.generators],
            "members": self.members,
        }


def orbits_under_point_relabeling(families: Iterable[PointwiseFamily], n: int) -> list[OrbitRecord]:
    """Orbits of ``S_n`` acting on families by relabeling points.

    Orbits are closed under the full group even when the input is not; each
    record lists which inputs fall in it. Block order inside a per-point list
    is ignored. Refuses ``n > 8``; use :func:`sample_classes` there.
    """
    if n > MAX_RELABEL_DEGREE:
        raise ParameterError(
            f"n = {n}: {factorial(n)} relabelings per orbit is too many; use sampling mode instead"
        )
    families = list(families)
    for f in families:
        if f.n_points != n:
            raise ParameterError(f"family on {f.n_points} points in a run with n = {n}")
    index: dict[tuple, list[int]] = {}
    for i, f in enumerate(families):
        index.setdefault(f.key(), []).append(i)
    perms = list(all_permutations(n))
    done: set = set()
    out = []
    for f in families:
        key = f.key()
        if key in done:
            continue
        orbit = set()
        stab = []
        for p in perms:
            img = f.relabel(p).key()
            orbit.add(img)
            if img == key:
                stab.append(p)
        if len(orbit) * len(stab) != factorial(n):
            raise AssertionError("orbit-stabilizer count mismatch")
        done |= orbit
        members = sorted(i for k in orbit for i in index.get(k, []))
        out.append(OrbitRecord(f, len(orbit), group_from_elements(n, stab), members))
    return out


# -- sampling mode -------------------------------------------------------------

@dataclass
class SamplingReport:
    n: int
    s: int
    l: int
    seed: int
    samples: int
    distinct: int
    params: Optional[tuple]
    elapsed: float
    certificates: list[str] = field(default_factory=list, repr=False)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "s": self.s,
            "l": self.l,
            "seed": self.seed,
            "samples": self.samples,
            "distinct_certificates": self.distinct,
            "params": list(self.params) if self.params else None,
            "elapsed_s": round(self.elapsed, 3),
            "note": "distinct certificates are a lower bound on the number of isomorphism classes",
        }


def _sample_chunk(args) -> tuple[set, Optional[tuple]]:
    n, s, l, seed, count = args
    rng = random.Random(seed)
    certs = set()
    params = None
    for _ in range(count):
        fam = random_pointwise_partition(n, s, l, rng)
        g = antiflag_digraph(fam)
        p = verify_dsrg(g).as_tuple()
        if params is None:
            params = p
        elif p != params:
            raise VerificationError(f"sampled graph has {p}, earlier ones {params}", {"kind": "params", "value": p})
        certs.add(canonical_form(g)[0])
    return certs, params


def sample_classes(n: int, s: int, l: int, samples: int, seed: int = 0, jobs: int = 1,
                   chunk: int = 500) -> SamplingReport:
    """Draw ``samples`` random per-point partition families (d = 1), build and
    verify each antiflag digraph and count distinct certificates.

    Work is cut into fixed chunks seeded from ``seed`` so the result does not
    depend on ``jobs``.
    """
    t0 = time.perf_counter()
    seeds = random.Random(seed)
    tasks = []
    left = samples
    while left > 0:
        take = min(chunk, left)
        tasks.append((n, s, l, seeds.getrandbits(64), take))
        left -= take
    certs: set = set()
    params = None
    for found, p in _map(_sample_chunk, tasks, jobs):
        certs |= found
        params = params or p
    return SamplingReport(n, s, l, seed, samples, len(certs), params, time.perf_counter() - t0,
                          sorted(c.hex() for c in certs))


def isomorphic_to_any(g: Digraph, others: Sequence[Digraph]) -> Optional[int]:
    """Index of the first graph in ``others`` isomorphic to ``g``, else ``None``."""
    c = canonical_form(g)[0]
    for i, h in enumerate(others):
        if h.n == g.n and canonical_form(h)[0] == c:
            return i
    return None
