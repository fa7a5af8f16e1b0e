"""Local and 2-local automorphism checks: probe proofs and exhaustive oracles."""

from .fits import ParamConstraint, PointFit, Relation, fit_at_point
from .midproof import MidProofSample, build_midproof, equalities_hold, proof_equalities, sample_midproof
from .oracle import (
    FunctionTable,
    LocalCheck,
    OrbitIndex,
    PatchworkSpec,
    TwoLocalVerdict,
    all_local_linear_maps,
    is_2local,
    is_local_automorphism_exhaustive,
    make_patchwork,
    pair_has_common_automorphism,
)
from .probes import LocalVerdict, Probe, ProbeSet, probe_set, verify_local_via_probes
from .twolocal import CollapseVerdict, anchors, twolocal_collapse

__all__ = [
    "CollapseVerdict",
    "FunctionTable",
    "LocalCheck",
    "LocalVerdict",
    "MidProofSample",
    "OrbitIndex",
    "ParamConstraint",
    "PatchworkSpec",
    "PointFit",
    "Probe",
    "ProbeSet",
    "Relation",
    "TwoLocalVerdict",
    "all_local_linear_maps",
    "anchors",
    "build_midproof",
    "equalities_hold",
    "fit_at_point",
    "is_2local",
    "is_local_automorphism_exhaustive",
    "make_patchwork",
    "pair_has_common_automorphism",
    "probe_set",
    "proof_equalities",
    "sample_midproof",
    "twolocal_collapse",
    "verify_local_via_probes",
]
