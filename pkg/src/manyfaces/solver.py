"""Top-level solving: backend dispatch, face extraction, deduplication.

Backends: ``naive`` locates points in the full arrangement (or rebuilds each
point's cell directly at sizes where the arrangement would not fit);
``primal`` and ``dual`` run their recursions pure; ``combined`` picks the
asymmetric strategy by the size relation between m and n, interleaving the
dual step with the primal step in the balanced case.
"""

import math
from dataclasses import dataclass, field, replace

from .chain import LOWER, UPPER, HullChain
from .dual import dual_chains
from .errors import EmptyInput
from .faces import PLANE_FACE, face_from_envelopes
from .geom import Instance, PERTURB, REJECT, normalize_instance
from .instrumentation import Counters
from .oracle import non_empty_faces_naive, non_empty_faces_scan
from .primal import direct_chains, primal_chains

BACKENDS = ("naive", "primal", "dual", "combined")


@dataclass
class SolverConfig:
    backend: str = "combined"
    base_n: int = 32
    base_m: int = 32
    r_override: int | None = None
    policy: str = REJECT
    naive_dcel_limit: int = 128  # above this line count the naive backend scans
    seed: int = 0
    trusted: bool = False  # skip normalization (generator-provided instances)

    def __post_init__(self):
        if self.backend not in BACKENDS:
            raise ValueError(f"unknown backend {self.backend!r}")
        if self.base_n < 1 or self.base_m < 1:
            raise ValueError("recursion thresholds must be >= 1")


@dataclass
class FaceSet:
    """Deduplicated non-empty faces with their witness points."""

    faces: dict  # key -> Face
    witnesses: dict  # key -> sorted point indices
    trace: list = field(default_factory=list)
    stats: Counters = field(default_factory=Counters)
    report: object = None

    def keys(self):
        return sorted(self.faces)

    def items(self):
        return [(k, self.faces[k], self.witnesses[k]) for k in self.keys()]

    def total_complexity(self):
        return sum(f.complexity for f in self.faces.values())


def dedup_faces(per_point):
    """Fold (point index, Face) pairs into {key: (face, witnesses)}."""
    faces = {}
    witnesses = {}
    for pi, face in per_point:
        k = face.key
        if k not in faces:
            faces[k] = face
            witnesses[k] = []
        witnesses[k].append(pi)
    for k in witnesses:
        witnesses[k].sort()
    return faces, witnesses


def _combined_chains(points, lines, cfg, depth, stats):
    """Balanced-case interleaving: a dual step whose slab subproblems run a
    primal step with the same cutting parameter, whose leaf subproblems come
    back here."""
    n = len(lines)
    r0 = cfg.r_override or max(2, math.ceil(n ** (1 / 3)))

    def primal_sub(pts, lns, c, d, st):
        return primal_chains(
            pts, lns, c, d, st, subsolver=_combined_chains, r=r0
        )

    return dual_chains(points, lines, cfg, depth, stats, subsolver=primal_sub, r=r0)


def _primal_strategy(points, lines, cfg, depth, stats):
    return primal_chains(points, lines, cfg, depth, stats)


def _dual_strategy(points, lines, cfg, depth, stats):
    return dual_chains(points, lines, cfg, depth, stats)


def _chains_to_faceset(inst, chains, trace, stats, report):
    per_point = []
    for pi, p in enumerate(inst.points):
        below, above = chains[pi]
        per_point.append((pi, face_from_envelopes(below, above, p.x)))
    faces, witnesses = dedup_faces(per_point)
    fs = FaceSet(faces, witnesses, trace, stats, report)
    stats.face_complexity = fs.total_complexity()
    return fs


def _oracle_faceset(inst, cfg, trace, stats, report):
    if len(inst.lines) <= cfg.naive_dcel_limit:
        trace.append("naive:dcel")
        raw = non_empty_faces_naive(inst)
    else:
        trace.append("naive:scan")
        raw = non_empty_faces_scan(inst)
    faces = {k: f for k, (f, _) in raw.items()}
    witnesses = {k: sorted(w) for k, (_, w) in raw.items()}
    fs = FaceSet(faces, witnesses, trace, stats, report)
    stats.face_complexity = fs.total_complexity()
    return fs


def solve(instance, cfg=None):
    """All non-empty faces of the instance, per the configured backend."""
    cfg = cfg or SolverConfig()
    stats = Counters()
    trace = []
    if cfg.trusted:
        inst, report = instance, None
    else:
        inst, report = normalize_instance(instance, policy=cfg.policy)
    m, n = len(inst.points), len(inst.lines)
    if m == 0:
        return FaceSet({}, {}, ["empty:m=0"], stats, report)
    if n == 0:
        key = PLANE_FACE.key
        return FaceSet(
            {key: PLANE_FACE}, {key: list(range(m))}, ["plane:n=0"], stats, report
        )

    points = list(enumerate(inst.points))
    lines = list(enumerate(inst.lines))

    if cfg.backend == "naive":
        return _oracle_faceset(inst, cfg, trace, stats, report)
    if cfg.backend == "primal":
        trace.append("primal")
        chains = _primal_strategy(points, lines, cfg, 0, stats)
        return _chains_to_faceset(inst, chains, trace, stats, report)
    if cfg.backend == "dual":
        trace.append("dual")
        chains = _dual_strategy(points, lines, cfg, 0, stats)
        return _chains_to_faceset(inst, chains, trace, stats, report)

    # combined: dispatch on the size relation
    if m >= n * n:
        trace.append(f"combined:naive(m={m}>=n^2)")
        return _oracle_faceset(inst, cfg, trace, stats, report)
    if n >= m * m:
        trace.append(f"combined:dual-first(r={m},n>=m^2)")
        chains = dual_chains(points, lines, cfg, 0, stats, r=m)
        return _chains_to_faceset(inst, chains, trace, stats, report)
    if m > n:
        r = math.ceil(m / n)
        if r >= 2:
            trace.append(f"combined:primal-first(r={r})")
            chains = primal_chains(
                points, lines, cfg, 0, stats, subsolver=_combined_chains, r=r
            )
        else:
            trace.append("combined:symmetric")
            chains = _combined_chains(points, lines, cfg, 0, stats)
        return _chains_to_faceset(inst, chains, trace, stats, report)
    if n > m:
        r = math.ceil(n / m)
        if r >= 2:
            trace.append(f"combined:dual-first(r={r})")
            chains = dual_chains(
                points, lines, cfg, 0, stats, subsolver=_combined_chains, r=min(r, m)
            )
        else:
            trace.append("combined:symmetric")
            chains = _combined_chains(points, lines, cfg, 0, stats)
        return _chains_to_faceset(inst, chains, trace, stats, report)
    trace.append("combined:symmetric")
    chains = _combined_chains(points, lines, cfg, 0, stats)
    return _chains_to_faceset(inst, chains, trace, stats, report)
