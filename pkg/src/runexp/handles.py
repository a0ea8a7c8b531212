"""Handle sets: disjoint inter-position certificates attached to runs.

Each run v = [i..j] with period p owns a set H(v) of inter-positions
(slot k sits between letters k and k+1). Let w be the leading block
u[i..i+p-1]. When the minimal and maximal rotations of w coincide
(single-letter block), H(v) is every inter-position inside v. Otherwise
H(v) collects the boundary slot between each pair of adjacent
occurrences of the minimal rotation inside v, and likewise for the
maximal rotation. Distinct runs get disjoint handle sets, so handle
mass is capped by the n-1 available slots; the report checks that cap,
the per-run size bounds, and the case dichotomy.
"""

from __future__ import annotations

from dataclasses import dataclass

from .periods import rotation_extremes
from .runs import Run, RunSet, find_runs, validate_run
from .words import Word

__all__ = ["HandleSet", "HandleReport", "handles_of_run", "verify_handle_properties"]


@dataclass(frozen=True)
class HandleSet:
    """Inter-positions assigned to one run; case is "a" or "b"."""

    owner: Run
    positions: tuple[int, ...]
    case: str

    def __post_init__(self):
        v = self.owner
        if any(not (v.i <= k <= v.j - 1) for k in self.positions):
            raise ValueError(f"handle positions escape the run interval [{v.i}..{v.j}]")
        if any(b <= a for a, b in zip(self.positions, self.positions[1:])):
            raise ValueError("handle positions must be strictly increasing")

    @property
    def size(self) -> int:
        return len(self.positions)


@dataclass(frozen=True)
class HandleReport:
    """Aggregate verdicts of the handle checks for one word.

    A sums handle sizes over period-1 runs, B over the rest. The
    per-run size bounds are: p = 1 forces exponent = size + 1 exactly;
    p >= 2 forces ceil(exponent) <= size/2 + 3 and
    size >= 2*(floor(exponent) - 2).
    """

    n: int
    runs: tuple[Run, ...]
    handle_sizes: tuple[int, ...]
    A: int
    B: int
    disjoint: bool
    size_bounds_ok: tuple[bool, ...]
    case_a_iff_p1: bool

    @property
    def rho(self) -> int:
        return len(self.runs)

    @property
    def size_bound_failures(self) -> tuple[Run, ...]:
        return tuple(v for v, ok in zip(self.runs, self.size_bounds_ok) if not ok)

    @property
    def sum_bound_ok(self) -> bool:
        """A + B <= n - 1: disjoint subsets of the n - 1 slots."""
        return self.A + self.B <= max(self.n - 1, 0)

    @property
    def all_ok(self) -> bool:
        return (
            self.disjoint
            and self.case_a_iff_p1
            and self.sum_bound_ok
            and all(self.size_bounds_ok)
        )

    def as_json_dict(self) -> dict:
        return {
            "n": self.n,
            "rho": self.rho,
            "A": self.A,
            "B": self.B,
            "disjoint": self.disjoint,
            "lemma1_failures": [[v.i, v.j, v.p] for v in self.size_bound_failures],
            "case_a_iff_p1": self.case_a_iff_p1,
        }


def _occurrences(data: bytes, pattern: bytes, lo: int, hi: int) -> list[int]:
    """0-based starts of occurrences of pattern lying fully in data[lo:hi]."""
    out: list[int] = []
    k = data.find(pattern, lo, hi)
    while k != -1:
        out.append(k)
        k = data.find(pattern, k + 1, hi)
    return out


def handles_of_run(w: Word, v: Run) -> HandleSet:
    """Build H(v) from the rotation extremes of the run's leading block.

    Occurrences are located by plain scanning, then checked to sit
    exactly p apart: inside the run any rotation of the primitive block
    can only occur aligned, so an uneven gap means a bug.
    """
    validate_run(w, v)
    i, j, p = v
    data = w.data
    ext = rotation_extremes(w.factor(i, i + p - 1))
    if ext.minimal.data == ext.maximal.data:
        return HandleSet(owner=v, positions=tuple(range(i, j)), case="a")
    slots: set[int] = set()
    for rotation in (ext.minimal.data, ext.maximal.data):
        starts = _occurrences(data, rotation, i - 1, j)
        for s0, s1 in zip(starts, starts[1:]):
            if s1 - s0 != p:
                raise RuntimeError(
                    "internal error: adjacent occurrences of a block rotation "
                    f"inside run [{i}..{j}] are {s1 - s0} apart, expected {p}"
                )
            slots.add(s0 + p)
    return HandleSet(owner=v, positions=tuple(sorted(slots)), case="b")


def _size_bounds_ok(v: Run, size: int) -> bool:
    if v.p == 1:
        return v.length == size + 1
    ceil_e = -(-v.length // v.p)
    floor_e = v.length // v.p
    return 2 * ceil_e <= size + 6 and size >= 2 * (floor_e - 2)


def verify_handle_properties(w: Word, runs: RunSet | None = None) -> HandleReport:
    """Check every proved handle property on one word.

    Verdicts are collected, not raised: disjointness of all handle
    sets, case (a) exactly for period-1 runs, the per-run size bounds,
    and A + B <= n - 1. ``runs`` defaults to find_runs(w).
    """
    if runs is None:
        runs = find_runs(w)
    handles = [handles_of_run(w, v) for v in runs]
    a_mass = 0
    b_mass = 0
    total = 0
    seen: set[int] = set()
    for h in handles:
        if h.owner.p == 1:
            a_mass += h.size
        else:
            b_mass += h.size
        total += h.size
        seen.update(h.positions)
    return HandleReport(
        n=len(w),
        runs=tuple(h.owner for h in handles),
        handle_sizes=tuple(h.size for h in handles),
        A=a_mass,
        B=b_mass,
        disjoint=len(seen) == total,
        size_bounds_ok=tuple(_size_bounds_ok(h.owner, h.size) for h in handles),
        case_a_iff_p1=all((h.case == "a") == (h.owner.p == 1) for h in handles),
    )
