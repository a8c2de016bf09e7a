"""End-to-end coloring pipeline with bound auditing.

Pipeline: compute the clique number, split the collection into at most that
many flat classes, build a complete pillar assignment per class, then refine
each pillar's assigned shapes with two optimally colored permutation
instances.  The final palette never exceeds
    2 * w^2 * (4*w^2 - w + 2*ceil(4*log2(w)) + 11)
colors, which is at most 17*w^4 for every w >= 2.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import VerificationFailed
from .extend import ceil_4_log2, complete_pillar_assignment, palette_size
from .flatten import flatten_partition
from .geometry import LCollection, intersects
from .graph import build_intersection_graph, clique_number, color_permutation_graph
from .pillars import split_pillar_class


def audit_bound(omega: int, k_used: int, palette_used: int) -> dict:
    """Recompute all bound arithmetic with exact integers and flag breaches."""
    if omega <= 0:
        return {
            "omega": omega,
            "pillar_colors_bound": 0,
            "pillar_colors_used": k_used,
            "pipeline_bound": 0,
            "theorem_bound": 0,
            "palette_used": palette_used,
            "within_pipeline_bound": palette_used == 0,
            "within_theorem_bound": palette_used == 0,
        }
    k_formula = palette_size(omega) if omega >= 2 else 1
    pipeline_bound = 2 * omega**2 * k_formula
    theorem_bound = 17 * omega**4
    return {
        "omega": omega,
        "pillar_colors_bound": k_formula,
        "pillar_colors_used": k_used,
        "pipeline_bound": pipeline_bound,
        "theorem_bound": theorem_bound,
        "palette_used": palette_used,
        "within_pipeline_bound": palette_used <= pipeline_bound and k_used <= k_formula,
        "within_theorem_bound": omega < 2 or palette_used <= theorem_bound,
    }


@dataclass
class Coloring:
    color_of: dict[str, int]
    audit: dict

    @property
    def palette_used(self) -> int:
        return len(set(self.color_of.values()))

    def to_json(self) -> dict:
        return {
            "colors": {sid: c for sid, c in sorted(self.color_of.items())},
            "audit": self.audit,
        }


def verify_coloring(collection: LCollection, color_of: dict) -> dict:
    """Pairwise properness check; reports the first violating pair, if any."""
    missing = [s.id for s in collection.shapes if s.id not in color_of]
    if missing:
        return {"proper": False, "violating_pair": None, "missing": missing}
    shapes = collection.shapes
    for i, a in enumerate(shapes):
        for b in shapes[i + 1 :]:
            if color_of[a.id] == color_of[b.id] and intersects(a, b):
                return {"proper": False, "violating_pair": [a.id, b.id], "missing": []}
    return {"proper": True, "violating_pair": None, "missing": []}


def color_collection(
    collection: LCollection,
    omega_override: int | None = None,
    trace: list | None = None,
) -> Coloring:
    """Proper coloring of a collection's intersection graph within the audited
    bounds.  `omega_override` skips the exact clique oracle (for large
    benchmark inputs); the audit is then flagged as unverified."""
    if len(collection) == 0:
        return Coloring(color_of={}, audit=audit_bound(0, 0, 0) | {"verified_omega": True})

    if omega_override is None:
        omega, witness = clique_number(build_intersection_graph(collection))
        verified = True
    else:
        omega, witness = omega_override, []
        verified = False

    result = flatten_partition(collection, omega)
    stride = 2 * omega  # refinement sub-colors per pillar color
    k_enc = palette_size(omega) if omega >= 2 else 1
    color_of: dict[str, int] = {}
    k_used_max = 0
    refinement_max = 0

    for class_index, cls in enumerate(result.classes):
        if len(cls) == 0:
            continue
        class_graph = build_intersection_graph(cls)
        class_omega, _ = clique_number(class_graph) if omega_override is None else (
            min(omega, len(cls)),
            [],
        )
        if class_omega == 0:
            continue
        assignment = complete_pillar_assignment(cls, class_omega)
        k_used = max(assignment.colors, default=0)
        k_used_max = max(k_used_max, k_used)
        if trace is not None:
            trace.append(
                {
                    "class": class_index,
                    "shapes": len(cls),
                    "class_omega": class_omega,
                    "pillars": len(assignment.pillars),
                    "pillar_colors_used": k_used,
                }
            )
        for pillar_index in range(len(assignment.pillars)):
            assigned = assignment.assigned_to(pillar_index)
            if not assigned:
                continue
            inst1, inst2 = split_pillar_class(cls, assignment.pillars[pillar_index], assigned)
            sub1, w1 = color_permutation_graph(inst1)
            sub2, w2 = color_permutation_graph(inst2)
            refinement_max = max(refinement_max, w1 + w2)
            pillar_color = assignment.colors[pillar_index]
            for sid, sub in sub1.items():
                color_of[sid] = (
                    class_index * k_enc * stride + (pillar_color - 1) * stride + sub
                )
            for sid, sub in sub2.items():
                color_of[sid] = (
                    class_index * k_enc * stride
                    + (pillar_color - 1) * stride
                    + omega
                    + sub
                )

    report = verify_coloring(collection, color_of)
    if not report["proper"] or report["missing"]:
        raise VerificationFailed(f"internal properness check failed: {report}")

    audit = audit_bound(omega, k_used_max, len(set(color_of.values())))
    audit["flatten_classes"] = len(result.classes)
    audit["refinement_max"] = refinement_max
    audit["verified_omega"] = verified
    audit["clique_witness"] = witness
    return Coloring(color_of=color_of, audit=audit)
