"""Batch verification driven by a small manifest text format.

One instance per line: a family name followed by key=value pairs, e.g.

    sharp t=3 p=1 e=3 c=1,2 trials=5 seed=11
    random-sparse r=4 e=5 t=3 density=0.5 c=1,2 seed=7
    truncated-gorenstein-conic s=7 e=6 c=1 identities=off

Blank lines and '#' comments are skipped. Recognized per-instance keys
beyond the family parameters: c (comma list, default all of 1..t-1),
trials, seed (default derived from the run seed and the line index),
label, identities (on/off). A whole run is reproducible from the manifest
text and the run seed.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .bounds import VerificationReport, verify_instance
from .combinatorics import binomial
from .fields import FieldSpec
from .modules import (
    derive_seed,
    empirical_generic_h,
    h_vector,
    inclusion_exclusion_sum,
    relative_intersection_dim,
    remix_generators,
)
from .families import FAMILY_NAMES, FamilySpec, build_family


class ManifestError(ValueError):
    """Malformed manifest; carries the offending line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class ManifestInstance:
    spec: FamilySpec
    c_list: tuple[int, ...] | None  # None = all admissible types
    trials: int
    seed: int | None
    label: str
    identities: bool
    line: int


@dataclass(frozen=True)
class ExperimentManifest:
    instances: tuple[ManifestInstance, ...]


@dataclass(frozen=True)
class RunSummary:
    instances: int
    satisfied: int
    violated: int
    tight_instances: int
    identity_checks_passed: int
    identity_checks_failed: int
    wall_time: float
    seed: int

    def to_json_dict(self) -> dict:
        return {
            "instances": self.instances,
            "satisfied": self.satisfied,
            "violated": self.violated,
            "tightInstances": self.tight_instances,
            "identityChecksPassed": self.identity_checks_passed,
            "identityChecksFailed": self.identity_checks_failed,
            "wallTime": round(self.wall_time, 3),
            "seed": self.seed,
        }


_CONTROL_KEYS = {"c", "trials", "seed", "label", "identities"}


def parse_manifest(text: str) -> ExperimentManifest:
    instances = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        family = tokens[0]
        if family not in FAMILY_NAMES:
            raise ManifestError(
                f"unknown family {family!r}; known: {', '.join(FAMILY_NAMES)}", lineno
            )
        params: dict[str, object] = {}
        c_list = None
        trials = 5
        seed = None
        label = ""
        identities = True
        for tok in tokens[1:]:
            if "=" not in tok:
                raise ManifestError(f"expected key=value, got {tok!r}", lineno)
            key, _, value = tok.partition("=")
            if key == "c":
                try:
                    c_list = tuple(int(x) for x in value.split(","))
                except ValueError as exc:
                    raise ManifestError(f"bad c list {value!r}", lineno) from exc
            elif key == "trials":
                trials = _int(value, "trials", lineno)
                if trials < 1:
                    raise ManifestError("trials must be positive", lineno)
            elif key == "seed":
                seed = _int(value, "seed", lineno)
            elif key == "label":
                label = value
            elif key == "identities":
                if value not in ("on", "off"):
                    raise ManifestError("identities must be on or off", lineno)
                identities = value == "on"
            elif key == "density":
                try:
                    params[key] = float(value)
                except ValueError as exc:
                    raise ManifestError(f"bad density {value!r}", lineno) from exc
            else:
                params[key] = _int(value, key, lineno)
        instances.append(
            ManifestInstance(
                spec=FamilySpec.of(family, **params),
                c_list=c_list,
                trials=trials,
                seed=seed,
                label=label,
                identities=identities,
                line=lineno,
            )
        )
    if not instances:
        raise ManifestError("manifest has no instances", 1)
    return ExperimentManifest(tuple(instances))


def _int(value: str, what: str, lineno: int) -> int:
    try:
        return int(value)
    except ValueError as exc:
        raise ManifestError(f"{what} must be an integer, got {value!r}", lineno) from exc


@dataclass(frozen=True)
class InstanceResult:
    reports: tuple[VerificationReport, ...]
    identity_passed: int
    identity_failed: int


def _identity_checks(m, trials: int, seed: int) -> tuple[int, int]:
    """Count the per-degree identity checks on re-mixed generators.

    Three checks per inner degree u: the type-count identity
    sum = t*H_u - h_u, the subset recount sum = sum_j (j-1) C(t,j) D_u(j),
    and the overlap lower bound H_u >= h_{e-u} - sum.
    """
    t = m.type
    e = m.socle_degree
    if t < 2 or e < 2:
        return 0, 0
    g = remix_generators(m, derive_seed(seed, "identity-mix"))
    h = h_vector(m)
    emp = empirical_generic_h(m, 1, trials=trials, seed=derive_seed(seed, "identity-emp"))
    passed = failed = 0
    for u in range(1, e):
        sigma = inclusion_exclusion_sum(g, u)
        if sigma == t * emp[u] - h[u]:
            passed += 1
        else:
            failed += 1
        recount = sum(
            (j - 1) * binomial(t, j) * relative_intersection_dim(g, j, u)
            for j in range(2, t + 1)
        )
        if sigma == recount:
            passed += 1
        else:
            failed += 1
        if emp[u] >= h[e - u] - sigma:
            passed += 1
        else:
            failed += 1
    return passed, failed


def run_manifest(
    manifest: ExperimentManifest,
    field: FieldSpec | None = None,
    seed: int = 0,
) -> tuple[RunSummary, list[VerificationReport]]:
    """Run every instance; returns the summary and the per-(instance, c)
    verification reports in manifest order."""
    if field is None:
        field = FieldSpec.modular()
    start = time.monotonic()
    reports: list[VerificationReport] = []
    satisfied = violated = tight_instances = 0
    id_passed = id_failed = 0
    for index, inst in enumerate(manifest.instances):
        inst_seed = inst.seed if inst.seed is not None else derive_seed(seed, index)
        m = build_family(inst.spec, field, seed=inst_seed)
        if inst.label:
            m = type(m)(m.generators, m.field, label=inst.label)
        t = m.type
        c_list = inst.c_list if inst.c_list is not None else tuple(range(1, t))
        for c in c_list:
            if not 1 <= c <= t - 1:
                raise ManifestError(
                    f"c={c} out of range 1..{t - 1} for this instance", inst.line
                )
            rep = verify_instance(
                m, c, trials=inst.trials, seed=derive_seed(inst_seed, "verify", c)
            )
            reports.append(rep)
            if rep.satisfied:
                satisfied += 1
            else:
                violated += 1
            if len(rep.tight_degrees) == len(rep.h):
                tight_instances += 1
        if inst.identities:
            p, f = _identity_checks(m, inst.trials, inst_seed)
            id_passed += p
            id_failed += f
    summary = RunSummary(
        instances=len(manifest.instances),
        satisfied=satisfied,
        violated=violated,
        tight_instances=tight_instances,
        identity_checks_passed=id_passed,
        identity_checks_failed=id_failed,
        wall_time=time.monotonic() - start,
        seed=seed,
    )
    return summary, reports
