"""Regression catalog: recomputes every reference value the package reproduces.

Each check returns a :class:`CheckResult` holding the measured values next to
the reference ones, so the CLI can print one line per check.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

from .canon import are_isomorphic, automorphism_group, canonical_form
from .classify import classify_family, isomorphic_to_any, orbits_under_point_relabeling, sample_classes
from .construct1 import (
    build_c1_a1,
    build_c1_b1,
    build_c1_general,
    enumerate_b1_relaxed,
)
from .construct2 import antiflag_digraph, blow_up, build_d1, build_d2
from .designs import PointwiseFamily, enumerate_pointwise_partitions, projective_plane_family
from .formats import load_data_json, load_data_text, load_fixture
from .graphs import complement, kneser_graph, symmetrize, transpose, verify_dsrg, verify_srg
from .perms import recognize_group
from .schemes import fuse, orbital_scheme, relation_decomposition, scheme_from_matrix, schemes_isomorphic

B1_SWEEP = {  # (q, r) -> (v, k, t, lam, mu)
    (3, 5): (45, 30, 22, 19, 22),
    (3, 6): (54, 36, 26, 23, 26),
    (3, 8): (72, 48, 34, 31, 34),
    (3, 9): (81, 54, 38, 35, 38),
    (3, 11): (99, 66, 46, 43, 46),
    (3, 12): (108, 72, 50, 47, 50),
    (5, 3): (75, 60, 52, 47, 52),
    (6, 3): (108, 90, 80, 74, 80),
}
B1_SWEEP_BLOWUPS = {(3, 5): (90, 60, 44, 38, 44), (3, 6): (108, 72, 52, 46, 52)}

# reference values contradicted by an exact, independently cross-checked computation
KNOWN_DISCREPANCIES = {
    "relaxed b=1 enumeration (r=3,q=2)": {"transpose_closure"},
}


@dataclass
class CheckResult:
    name: str
    ok: bool
    measured: dict
    expected: dict
    seconds: float = 0.0
    notes: list[str] = field(default_factory=list)

    def failed_keys(self) -> list[str]:
        return [k for k, v in self.expected.items() if self.measured.get(k) != v]

    @property
    def status(self) -> str:
        """PASS, FAIL, or DIFF when every mismatch is a documented reference-value error."""
        if self.ok:
            return "PASS"
        known = KNOWN_DISCREPANCIES.get(self.name, set())
        return "DIFF" if set(self.failed_keys()) <= known else "FAIL"

    def line(self) -> str:
        extra = ""
        if not self.ok:
            extra = " differs on " + ", ".join(self.failed_keys())
        return f"[{self.status}] {self.name} ({self.seconds:.2f}s){extra}"

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "status": self.status,
            "seconds": round(self.seconds, 3),
            "measured": self.measured,
            "expected": self.expected,
            "notes": self.notes,
        }


def _compare(name, measured, expected, seconds, notes=()) -> CheckResult:
    ok = all(measured.get(k) == v for k, v in expected.items())
    return CheckResult(name, ok, measured, expected, seconds, list(notes))


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def check_c1_general() -> CheckResult:
    def run():
        default = verify_dsrg(build_c1_general(2, 5, 2, 2)).as_tuple()
        table = verify_dsrg(antiflag_digraph(PointwiseFamily.from_json(load_data_json("c1_r2_q5_a2_b2.json"))))
        return {"default": list(default), "table_design": list(table.as_tuple())}

    m, dt = _timed(run)
    m["under_5s"] = dt < 5
    return _compare("construction I general (2,5,2,2)", m,
                    {"default": [100, 40, 18, 13, 18], "table_design": [100, 40, 18, 13, 18], "under_5s": True}, dt)


def check_b1_sweep() -> CheckResult:
    def run():
        rows = {}
        for (q, r) in B1_SWEEP:
            rows[f"q={q},r={r}"] = list(verify_dsrg(build_c1_b1(r, q)).as_tuple())
        for (q, r) in B1_SWEEP_BLOWUPS:
            g = blow_up(build_c1_b1(r, q), "d1", 2)
            rows[f"q={q},r={r},m=2"] = list(verify_dsrg(g).as_tuple())
        return rows

    m, dt = _timed(run)
    exp = {f"q={q},r={r}": list(p) for (q, r), p in B1_SWEEP.items()}
    exp.update({f"q={q},r={r},m=2": list(p) for (q, r), p in B1_SWEEP_BLOWUPS.items()})
    m["under_60s"] = dt < 60
    exp["under_60s"] = True
    return _compare("construction I b=1 sweep", m, exp, dt)


def check_r2q3_transpose() -> CheckResult:
    def run():
        g = antiflag_digraph(PointwiseFamily.from_json(load_data_json("c1_b1_r2_q3.json")))
        default = build_c1_b1(2, 3)
        return {
            "params": list(verify_dsrg(g).as_tuple()),
            "isomorphic_to_transpose": are_isomorphic(g, transpose(g))[0],
            "default_matches_table": are_isomorphic(g, default)[0],
        }

    m, dt = _timed(run)
    return _compare("example (r=2,q=3) not self-transpose", m,
                    {"params": [18, 12, 10, 7, 10], "isomorphic_to_transpose": False}, dt)


def check_relaxed_b1() -> CheckResult:
    def run():
        graphs = []
        params = set()
        for _, g in enumerate_b1_relaxed(3, 2):
            params.add(verify_dsrg(g).as_tuple())
            graphs.append(g)
        rep = classify_family(graphs)
        fixtures = [load_fixture(f"N{i}") for i in range(1, 8)]
        matched = [isomorphic_to_any(c.representative, fixtures) for c in rep.classes]
        by_fixture = sorted(zip(matched, rep.classes), key=lambda t: (t[0] is None, t[0] or 0))
        return {
            "graphs": len(graphs),
            "params": [list(p) for p in sorted(params)],
            "classes": len(rep.classes),
            "sizes_N1_to_N7": [c.size for _, c in by_fixture],
            "aut_orders_N1_to_N7": [c.aut_order for _, c in by_fixture],
            "aut_names_N1_to_N7": [c.aut_name for _, c in by_fixture],
            "fixture_match": sorted(x + 1 for x in matched if x is not None),
            "self_transpose": [f"N{i + 1}" for i, c in by_fixture if c.self_transpose],
            "transpose_closure": rep.transpose_closure,
        }

    m, dt = _timed(run)
    exp = {
        "graphs": 64,
        "params": [[12, 6, 4, 2, 4]],
        "classes": 7,
        "sizes_N1_to_N7": [4, 6, 12, 12, 4, 2, 24],
        "aut_orders_N1_to_N7": [12, 8, 4, 4, 12, 24, 2],
        "aut_names_N1_to_N7": ["D12", "D8", "C2×C2", "C2×C2", "D12", "S4", "C2"],
        "fixture_match": [1, 2, 3, 4, 5, 6, 7],
        "transpose_closure": 14,
    }
    notes = []
    if m["transpose_closure"] != 14:
        notes.append("reference closure 14 assumes no class is self-transpose; "
                     f"measured self-transpose classes: {m['self_transpose']}")
    return _compare("relaxed b=1 enumeration (r=3,q=2)", m, exp, dt, notes)


def check_a1() -> CheckResult:
    import warnings

    def run():
        out = {}
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            for r, q in [(3, 2), (5, 2), (5, 3), (6, 3)]:
                out[f"r={r},q={q}"] = list(verify_dsrg(build_c1_a1(r, q)).as_tuple())
        return out

    m, dt = _timed(run)
    m["under_30s"] = dt < 30
    return _compare("construction I a=1", m, {
        "r=3,q=2": [12, 6, 4, 2, 4], "r=5,q=2": [20, 10, 6, 4, 6],
        "r=5,q=3": [90, 30, 11, 8, 11], "r=6,q=3": [108, 36, 13, 10, 13], "under_30s": True,
    }, dt)


def check_n5_classification() -> CheckResult:
    def run():
        fams = list(enumerate_pointwise_partitions(5, 2, 2))
        orbits = orbits_under_point_relabeling(fams, 5)
        ref = load_data_json("partitions_n5.json")
        fixtures = [load_fixture(f"T{i}") for i in range(1, 8)]
        # order the orbits like the tabulated families
        key_to_orbit = {}
        for idx, o in enumerate(orbits):
            for mi in o.members:
                key_to_orbit[fams[mi].key()] = idx
        table_order = [key_to_orbit[PointwiseFamily.from_json(ref[f"T{i}"]).key()] for i in range(1, 8)]
        graphs = [build_d1(f) for f in fams]
        params = sorted({verify_dsrg(g).as_tuple() for g in graphs})
        rep = classify_family(graphs)
        reps = [c.representative for c in rep.classes]
        graph_fixture = [isomorphic_to_any(fx, reps) for fx in fixtures]
        closure = set()
        for c in rep.classes:
            closure |= {c.certificate, c.transpose_certificate}
        specials = [load_fixture("J8"), load_fixture("J9"), transpose(load_fixture("J8"))]
        hits = [canonical_form(s)[0] in closure for s in specials]
        self_t = [i + 1 for i, fx in enumerate(fixtures) if are_isomorphic(fx, transpose(fx))[0]]
        return {
            "families": len(fams),
            "orbit_sizes": [orbits[i].orbit_size for i in table_order],
            "stabilizer_orders": [orbits[i].stabilizer.order() for i in table_order],
            "stabilizer_names": [orbits[i].stabilizer_name for i in table_order],
            "params": [list(p) for p in params],
            "classes": len(rep.classes),
            "fixtures_matched": all(x is not None for x in graph_fixture),
            "transpose_closure": rep.transpose_closure,
            "self_transpose_fixtures": self_t,
            "special_graphs_in_closure": hits,
        }

    m, dt = _timed(run)
    m["under_60s"] = dt < 60
    return _compare("point-relabeling classification (n=5,s=l=2)", m, {
        "families": 243,
        "orbit_sizes": [15, 30, 60, 6, 60, 60, 12],
        "stabilizer_orders": [8, 4, 2, 20, 2, 2, 10],
        "stabilizer_names": ["D8", "C2×C2", "C2", "C5⋊C4", "C2", "C2", "D10"],
        "params": [[10, 4, 2, 1, 2]],
        "classes": 7,
        "fixtures_matched": True,
        "transpose_closure": 13,
        "self_transpose_fixtures": [7],
        "special_graphs_in_closure": [False, False, False],
        "under_60s": True,
    }, dt)


def check_scheme() -> CheckResult:
    def run():
        t4 = load_fixture("T4")
        grp = automorphism_group(t4)
        s = orbital_scheme(grp)
        reference = scheme_from_matrix([[int(x) for x in ln.split()] for ln in load_data_text("scheme_T4.txt").split("\n")[1:] if ln.strip()])
        iso = schemes_isomorphic(reference, s)
        phi = iso[1] if iso else {}
        fused = fuse(s, [[phi.get(1), phi.get(3), phi.get(4)], [phi.get(2), phi.get(5)]]) if iso else None
        first = None
        if fused and fused.ok:
            first = list(verify_srg(fused.scheme.relation(1)).as_tuple())
        sym = symmetrize(t4)
        petersen = complement(sym)
        inv = {v: k for k, v in phi.items()}
        dec = relation_decomposition(s, t4)
        return {
            "aut_order": grp.order(),
            "aut_name": recognize_group(grp),
            "transitive": grp.is_transitive(),
            "classes": s.c,
            "commutative": s.is_commutative(),
            "matches_reference_table": iso is not None,
            "fusion_feasible": bool(fused and fused.ok),
            "fusion_first_relation": first,
            "symmetrization": list(verify_srg(sym).as_tuple()),
            "complement": list(verify_srg(petersen).as_tuple()),
            "complement_is_kneser": are_isomorphic(petersen, kneser_graph(5, 2))[0],
            "decomposition_reference_labels": sorted(inv[k] for k in dec) if isinstance(dec, frozenset) else None,
        }

    m, dt = _timed(run)
    return _compare("orbital scheme of Aut(D(T4))", m, {
        "aut_order": 20, "aut_name": "C5⋊C4", "transitive": True, "classes": 5, "commutative": False,
        "matches_reference_table": True, "fusion_feasible": True, "fusion_first_relation": [10, 6, 3, 4],
        "symmetrization": [10, 6, 3, 4], "complement": [10, 3, 0, 1], "complement_is_kneser": True,
        "decomposition_reference_labels": [1, 3],
    }, dt)


def check_projective() -> CheckResult:
    def run():
        out = {}
        for order in (2, 3):
            fam = projective_plane_family(order)
            out[f"n={order},d1"] = list(verify_dsrg(build_d1(fam)).as_tuple())
            out[f"n={order},d2"] = list(verify_dsrg(build_d2(fam)).as_tuple())
        return out

    m, dt = _timed(run)
    return _compare("projective plane source", m, {
        "n=2,d1": [21, 6, 2, 1, 2], "n=2,d2": [21, 8, 4, 3, 3],
        "n=3,d1": [52, 12, 3, 2, 3], "n=3,d2": [52, 15, 6, 5, 4],
    }, dt)


def check_sampling(samples: int = 10000, seed: int = 2026, jobs: int = 1) -> CheckResult:
    rep, dt = _timed(lambda: sample_classes(7, 2, 3, samples, seed=seed, jobs=jobs))
    m = {"distinct_at_least_1985": rep.distinct >= 1985, "distinct": rep.distinct,
         "params": list(rep.params), "samples": samples, "seed": seed}
    return _compare("sampling (n=7,s=2,l=3)", m, {"distinct_at_least_1985": True, "params": [14, 6, 3, 2, 3]}, dt)


CHECKS: dict[str, Callable[[], CheckResult]] = {
    "c1-general": check_c1_general,
    "c1-b1-sweep": check_b1_sweep,
    "c1-example-r2q3": check_r2q3_transpose,
    "c1-relaxed-r3q2": check_relaxed_b1,
    "c1-a1": check_a1,
    "c2-n5-classification": check_n5_classification,
    "scheme-T4": check_scheme,
    "projective": check_projective,
}


def run_catalog(include_sampling: bool = False, jobs: int = 1) -> list[CheckResult]:
    results = [fn() for fn in CHECKS.values()]
    if include_sampling:
        results.append(check_sampling(jobs=jobs))
    return results


__all__ = ["CHECKS", "CheckResult", "B1_SWEEP", "B1_SWEEP_BLOWUPS", "run_catalog"]
