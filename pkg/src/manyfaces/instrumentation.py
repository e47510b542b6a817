"""Counters shared by the solvers and the benchmark harness."""

from dataclasses import dataclass, field


@dataclass
class Counters:
    merges: int = 0
    crossings_total: int = 0
    max_crossings: int = 0
    chain_ops: int = 0
    total_k: int = 0
    envelope_sets: int = 0
    envelope_piece_violations: int = 0
    face_complexity: int = 0
    cutting_cells: int = 0
    cutting_conflict_total: int = 0
    cutting_retries: int = 0
    dispatch_trace: list = field(default_factory=list)

    def record_merge(self, crossings: int):
        self.merges += 1
        self.crossings_total += crossings
        if crossings > self.max_crossings:
            self.max_crossings = crossings

    def record_hull_set(self, k: int):
        self.total_k += k

    def record_envelope(self, k: int, pieces: int):
        self.envelope_sets += 1
        if pieces > max(2 * k - 1, 0):
            self.envelope_piece_violations += 1
