"""Directed strongly regular graphs from tactical configurations.

Constructions over grouped point sets and per-point block families, an exact
verifier for the defining matrix identities, canonical labeling and
automorphism groups, orbit analysis and orbital association schemes.
"""

from .canon import are_isomorphic, automorphism_group, canonical_form
from .classify import classify_family, orbits_under_point_relabeling, sample_classes
from .construct1 import C1Options, build_c1, expected_params_c1
from .construct2 import C2Spec, blow_up, build, build_d1, build_d2, expected_params_c2
from .designs import PointwiseFamily, TacticalConfig, validate_tactical_config
from .formats import load_fixture, read_graph, write_graph
from .graphs import Digraph, DsrgParams, SrgParams, verify_dsrg, verify_srg
from .perms import PermGroup, recognize_group
from .schemes import AssociationScheme, fuse, orbital_scheme, relation_decomposition

__version__ = "0.1.0"

__all__ = [
    "AssociationScheme",
    "C1Options",
    "C2Spec",
    "Digraph",
    "DsrgParams",
    "PermGroup",
    "PointwiseFamily",
    "SrgParams",
    "TacticalConfig",
    "are_isomorphic",
    "automorphism_group",
    "blow_up",
    "build",
    "build_c1",
    "build_d1",
    "build_d2",
    "canonical_form",
    "classify_family",
    "expected_params_c1",
    "expected_params_c2",
    "fuse",
    "load_fixture",
    "orbital_scheme",
    "orbits_under_point_relabeling",
    "read_graph",
    "recognize_group",
    "relation_decomposition",
    "sample_classes",
    "validate_tactical_config",
    "verify_dsrg",
    "verify_srg",
    "write_graph",
]
