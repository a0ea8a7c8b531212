"""Enumerate all runs (maximal repetitions) of a word and sum their exponents.

A run is an interval whose factor has shortest period p with 2p <= length
and that cannot be extended in either direction without breaking the
period. The fast engine finds candidate periods through longest-Lyndon
prefixes (computed for the normal and the reversed symbol order) and
extends each candidate with longest-common-extension queries; the
brute-force engine applies the definition to every interval and serves
as an independent oracle.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple, TextIO

import numpy as np

from . import periods as _periods
from .words import Word

__all__ = [
    "Run",
    "RunSet",
    "RunStats",
    "find_runs",
    "find_runs_bruteforce",
    "run_stats",
    "sigma_as_decimal",
    "fraction_to_decimal",
    "validate_run",
    "run_listing_lines",
    "write_run_listing",
]

# Inputs shorter than this are processed with plain-Python primitives;
# the quadratic worst case is harmless at this size and the per-call
# numpy overhead dominates otherwise. Both paths run the same algorithm.
SMALL_ENGINE_LIMIT = 256

BRUTE_FORCE_CAP = 2000

_FLIP = bytes(255 - b for b in range(256))


class Run(NamedTuple):
    """One run: 1-based inclusive interval [i..j] with shortest period p."""

    i: int
    j: int
    p: int

    @property
    def length(self) -> int:
        return self.j - self.i + 1

    @property
    def exponent(self) -> Fraction:
        """length / p, reduced; at least 2 for a run."""
        return Fraction(self.length, self.p)

    @property
    def is_cubic(self) -> bool:
        return self.length >= 3 * self.p


class RunSet:
    """All runs of one word, sorted by (i, j), positions 1-based.

    Backed by parallel integer arrays so that multi-million-run results
    stay compact; iterating yields :class:`Run` values.
    """

    __slots__ = ("starts", "ends", "periods")

    def __init__(self, starts, ends, periods):
        starts = np.asarray(starts, dtype=np.int64)
        ends = np.asarray(ends, dtype=np.int64)
        periods = np.asarray(periods, dtype=np.int64)
        if not (starts.shape == ends.shape == periods.shape) or starts.ndim != 1:
            raise ValueError("starts, ends and periods must be parallel 1-d arrays")
        for arr in (starts, ends, periods):
            arr.flags.writeable = False
        self.starts = starts
        self.ends = ends
        self.periods = periods

    @classmethod
    def from_runs(cls, runs: Iterable[tuple[int, int, int]]) -> "RunSet":
        triples = sorted((r[0], r[1], r[2]) for r in runs)
        if not triples:
            return cls(np.empty(0, np.int64), np.empty(0, np.int64), np.empty(0, np.int64))
        cols = np.array(triples, dtype=np.int64)
        return cls(cols[:, 0].copy(), cols[:, 1].copy(), cols[:, 2].copy())

    def __len__(self) -> int:
        return int(self.starts.size)

    def __iter__(self) -> Iterator[Run]:
        for i, j, p in zip(self.starts.tolist(), self.ends.tolist(), self.periods.tolist()):
            yield Run(i, j, p)

    def __getitem__(self, k: int) -> Run:
        return Run(int(self.starts[k]), int(self.ends[k]), int(self.periods[k]))

    def __eq__(self, other) -> bool:
        if not isinstance(other, RunSet):
            return NotImplemented
        return (
            self.starts.size == other.starts.size
            and bool(np.array_equal(self.starts, other.starts))
            and bool(np.array_equal(self.ends, other.ends))
            and bool(np.array_equal(self.periods, other.periods))
        )

    def as_triples(self) -> list[tuple[int, int, int]]:
        return list(zip(self.starts.tolist(), self.ends.tolist(), self.periods.tolist()))

    def __repr__(self) -> str:
        return f"RunSet({len(self)} runs)"


@dataclass(frozen=True)
class RunStats:
    """Run counts and exact exponent sums for one word."""

    n: int
    rho: int
    sigma: Fraction
    rho_cubic: int
    sigma_cubic: Fraction


# ---------------------------------------------------------------------------
# suffix-array plumbing (numpy path)
# ---------------------------------------------------------------------------

def _suffix_array_doubling(codes: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Suffix array and ranks by prefix doubling with numpy sorts.

    Positions past the end rank below every real symbol, so a proper
    prefix sorts before any extension of it.
    """
    n = int(codes.size)
    if n == 1:
        one = np.zeros(1, dtype=np.int64)
        return one, one.copy()
    rank = np.asarray(codes, dtype=np.int32)
    k = 1
    while True:
        second = np.full(n, -1, dtype=np.int32)
        second[: n - k] = rank[k:]
        order = np.lexsort((second, rank))
        r_ord = rank[order]
        s_ord = second[order]
        bump = np.empty(n, dtype=np.int32)
        bump[0] = 0
        bump[1:] = (r_ord[1:] != r_ord[:-1]) | (s_ord[1:] != s_ord[:-1])
        new_rank = np.empty(n, dtype=np.int32)
        new_rank[order] = np.cumsum(bump, dtype=np.int32)
        rank = new_rank
        if int(rank[order[-1]]) == n - 1:
            return order.astype(np.int64), rank
        k <<= 1


def _to_intarray(values: np.ndarray) -> array:
    out = array("i")
    out.frombytes(values.astype(np.int32).tobytes())
    return out


def _kasai_lcp(data: bytes, sa, isa) -> array:
    """LCP array: entry r = lcp of the suffixes ranked r-1 and r."""
    n = len(data)
    lcp = array("i", bytes(4 * n))
    h = 0
    for i in range(n):
        r = isa[i]
        if r > 0:
            j = sa[r - 1]
            while i + h < n and j + h < n and data[i + h] == data[j + h]:
                h += 1
            lcp[r] = h
            if h:
                h -= 1
        else:
            h = 0
    return lcp


def _lyndon_lengths(rank) -> array:
    """Length of the longest Lyndon prefix at each position.

    Equals the distance to the next suffix that ranks lower (next
    smaller value over the inverse suffix array).
    """
    n = len(rank)
    lam = array("i", bytes(4 * n))
    idx_st: list[int] = []
    rank_st: list[int] = []
    push_i = idx_st.append
    push_r = rank_st.append
    for i in range(n - 1, -1, -1):
        ri = rank[i]
        while rank_st and rank_st[-1] > ri:
            idx_st.pop()
            rank_st.pop()
        lam[i] = (idx_st[-1] if idx_st else n) - i
        push_i(i)
        push_r(ri)
    return lam


def _batched_range_min(values: np.ndarray, left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """Minimum of values[l..r] (inclusive) for many queries at once.

    Streams the sparse-table levels so only two levels are alive at a
    time; queries are answered at the level matching their length.
    """
    out = np.empty(left.shape, dtype=values.dtype)
    if left.size == 0:
        return out
    lengths = (right - left + 1).astype(np.float64)
    _, exp = np.frexp(lengths)
    level = exp.astype(np.int64) - 1  # floor(log2(len)), exact for ints < 2**53
    table = values
    kmax = int(level.max())
    for k in range(kmax + 1):
        mask = level == k
        if mask.any():
            l = left[mask]
            r = right[mask]
            out[mask] = np.minimum(table[l], table[r - (1 << k) + 1])
        if k < kmax:
            step = 1 << k
            table = np.minimum(table[: table.size - step], table[step:])
    return out


def _candidate_rows(n: int, lam: array, isa_f: np.ndarray, lcp_f: np.ndarray,
                    isa_b: np.ndarray, lcp_b: np.ndarray) -> np.ndarray:
    """Extend every Lyndon-prefix candidate and keep those reaching 2p."""
    idx = np.arange(n, dtype=np.int64)
    p = np.frombuffer(lam, dtype=np.int32).astype(np.int64)

    r_ext = np.zeros(n, dtype=np.int64)
    sel = idx + p < n
    a = isa_f[idx[sel]].astype(np.int64)
    b = isa_f[(idx + p)[sel]].astype(np.int64)
    r_ext[sel] = _batched_range_min(lcp_f, np.minimum(a, b) + 1, np.maximum(a, b))

    l_ext = np.zeros(n, dtype=np.int64)
    sel2 = idx >= 1
    ar = (n - idx)[sel2]
    br = ar - p[sel2]
    a2 = isa_b[ar].astype(np.int64)
    b2 = isa_b[br].astype(np.int64)
    l_ext[sel2] = _batched_range_min(lcp_b, np.minimum(a2, b2) + 1, np.maximum(a2, b2))

    total = p + l_ext + r_ext
    keep = total >= 2 * p
    b0 = idx[keep] - l_ext[keep]
    e0 = b0 + total[keep] - 1
    return np.stack([b0, e0, p[keep]], axis=1)


def _runs_arrays(data: bytes) -> np.ndarray:
    """All runs of ``data`` as 0-based (start, end, period) rows, sorted."""
    n = len(data)
    codes = np.frombuffer(data, dtype=np.uint8)

    sa_f, isa_f = _suffix_array_doubling(codes)
    _, isa_flip = _suffix_array_doubling(255 - codes.astype(np.int32))
    rdata = data[::-1]
    sa_b, isa_b = _suffix_array_doubling(codes[::-1])

    sa_f_fast = _to_intarray(sa_f)
    isa_f_fast = _to_intarray(isa_f)
    sa_b_fast = _to_intarray(sa_b)
    isa_b_fast = _to_intarray(isa_b)

    lcp_f = np.frombuffer(_kasai_lcp(data, sa_f_fast, isa_f_fast), dtype=np.int32).astype(np.int64)
    lcp_b = np.frombuffer(_kasai_lcp(rdata, sa_b_fast, isa_b_fast), dtype=np.int32).astype(np.int64)

    lam0 = _lyndon_lengths(isa_f_fast)
    lam1 = _lyndon_lengths(_to_intarray(isa_flip))

    rows = np.concatenate(
        [
            _candidate_rows(n, lam0, isa_f, lcp_f, isa_b, lcp_b),
            _candidate_rows(n, lam1, isa_f, lcp_f, isa_b, lcp_b),
        ],
        axis=0,
    )
    uniq = np.unique(rows, axis=0)
    if uniq.shape[0] > 1:
        dup = (uniq[1:, 0] == uniq[:-1, 0]) & (uniq[1:, 1] == uniq[:-1, 1])
        if dup.any():
            raise RuntimeError("internal error: one interval reported with two periods")
    return uniq


# ---------------------------------------------------------------------------
# plain-Python path for short words
# ---------------------------------------------------------------------------

def _suffix_ranks_small(data: bytes) -> list[int]:
    n = len(data)
    order = sorted(range(n), key=lambda i: data[i:])
    isa = [0] * n
    for r, i in enumerate(order):
        isa[i] = r
    return isa


def _runs_python(data: bytes) -> set[tuple[int, int, int]]:
    n = len(data)
    found: set[tuple[int, int, int]] = set()
    if n < 2:
        return found
    for src in (data, data.translate(_FLIP)):
        lam = _lyndon_lengths(_suffix_ranks_small(src))
        for i in range(n):
            p = lam[i]
            q = i + p
            r = 0
            while q + r < n and data[i + r] == data[q + r]:
                r += 1
            l = 0
            while l < i and data[i - 1 - l] == data[i + p - 1 - l]:
                l += 1
            if l + r >= p:
                found.add((i - l, i + p + r - 1, p))
    return found


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def find_runs(w: Word, *, engine: str = "auto") -> RunSet:
    """All runs of ``w``, each reported once, sorted by (i, j).

    ``engine`` selects the primitive backend: "python" (short inputs),
    "arrays" (numpy, scales to millions of letters) or "auto".
    """
    data = w.data
    n = len(data)
    if n < 2:
        return RunSet.from_runs([])
    if engine == "auto":
        engine = "python" if n < SMALL_ENGINE_LIMIT else "arrays"
    if engine == "python":
        triples = sorted(_runs_python(data))
        seen_intervals = {(b, e) for b, e, _ in triples}
        if len(seen_intervals) != len(triples):
            raise RuntimeError("internal error: one interval reported with two periods")
        rows = np.array(triples, dtype=np.int64).reshape(len(triples), 3)
    elif engine == "arrays":
        rows = _runs_arrays(data)
    else:
        raise ValueError(f"unknown engine {engine!r}")
    if rows.shape[0] == 0:
        return RunSet.from_runs([])
    return RunSet(rows[:, 0] + 1, rows[:, 1] + 1, rows[:, 2].copy())


def find_runs_bruteforce(w: Word, *, cap: int = BRUTE_FORCE_CAP) -> RunSet:
    """Literal definition scan: test every interval of ``w``.

    For each interval the shortest period comes from the border table of
    the factor; the interval is a run when 2p <= length and neither side
    can be extended. Refuses words longer than ``cap``.
    """
    n = len(w)
    if n > cap:
        raise ValueError(f"word length {n} exceeds the brute-force cap {cap}")
    data = w.data
    found: list[tuple[int, int, int]] = []
    for b in range(n):
        sub = data[b:]
        m = len(sub)
        pf = [0] * m
        k = 0
        for q in range(1, m):
            c = sub[q]
            while k > 0 and sub[k] != c:
                k = pf[k - 1]
            if sub[k] == c:
                k += 1
            pf[q] = k
            length = q + 1
            p = length - k
            if 2 * p <= length:
                e = b + q
                if (b == 0 or data[b - 1] != data[b + p - 1]) and (
                    e == n - 1 or data[e - p + 1] != data[e + 1]
                ):
                    found.append((b, e, p))
    return RunSet.from_runs((b + 1, e + 1, p) for b, e, p in found)


def validate_run(w: Word, run: Run) -> None:
    """Re-check the four run invariants against ``w``; raise on failure.

    Uses the border-table period, independent of the enumeration engine.
    """
    n = len(w)
    i, j, p = run
    if not (1 <= i <= j <= n):
        raise ValueError(f"run interval [{i}..{j}] out of range for n={n}")
    length = j - i + 1
    if 2 * p > length:
        raise ValueError(f"run [{i}..{j}] with p={p} violates 2p <= length")
    true_p = _periods.shortest_period(w.factor(i, j))
    if true_p != p:
        raise ValueError(f"run [{i}..{j}] claims period {p} but the factor has period {true_p}")
    data = w.data
    if i > 1 and data[i - 2] == data[i + p - 2]:
        raise ValueError(f"run [{i}..{j}] is not left-maximal")
    if j < n and data[j - p] == data[j]:
        raise ValueError(f"run [{i}..{j}] is not right-maximal")


def run_stats(w: Word, runs: RunSet) -> RunStats:
    """Exact counts and exponent sums over ``runs``.

    The exponent sum is accumulated per distinct period: integer length
    sums S_p first, then sigma = sum of S_p / p as exact rationals.
    """
    n = len(w)
    if len(runs) == 0:
        zero = Fraction(0)
        return RunStats(n=n, rho=0, sigma=zero, rho_cubic=0, sigma_cubic=zero)
    lens = runs.ends - runs.starts + 1
    sigma = _exact_exponent_sum(lens, runs.periods)
    cubic = lens >= 3 * runs.periods
    rho_cubic = int(np.count_nonzero(cubic))
    if rho_cubic:
        sigma_cubic = _exact_exponent_sum(lens[cubic], runs.periods[cubic])
    else:
        sigma_cubic = Fraction(0)
    return RunStats(n=n, rho=len(runs), sigma=sigma, rho_cubic=rho_cubic, sigma_cubic=sigma_cubic)


def _exact_exponent_sum(lens: np.ndarray, periods: np.ndarray) -> Fraction:
    order = np.argsort(periods, kind="stable")
    ps = periods[order]
    ls = lens[order]
    starts = np.concatenate([[0], np.flatnonzero(np.diff(ps)) + 1])
    sums = np.add.reduceat(ls, starts)
    total = Fraction(0)
    for p, s in zip(ps[starts].tolist(), sums.tolist()):
        total += Fraction(s, p)
    return total


def fraction_to_decimal(value: Fraction, digits: int, *, rounding: str = "half-up") -> str:
    """Render an exact rational with ``digits`` decimals.

    >>> fraction_to_decimal(Fraction(26, 3), 2)
    '8.67'
    """
    if digits < 0:
        raise ValueError("digits must be >= 0")
    num = value.numerator
    den = value.denominator
    negative = num < 0
    scale = 10 ** digits
    q, r = divmod(abs(num) * scale, den)
    if rounding == "half-up":
        if 2 * r >= den:
            q += 1
    elif rounding != "truncate":
        raise ValueError(f"unknown rounding mode {rounding!r}")
    whole, frac = divmod(q, scale)
    text = f"{whole}.{frac:0{digits}d}" if digits else str(whole)
    return f"-{text}" if negative and q else text


def sigma_as_decimal(stats: RunStats, digits: int = 2) -> str:
    """Half-up decimal rendering of the exact exponent sum.

    The exact fraction itself is ``stats.sigma``; callers that need both
    should print that alongside.
    """
    return fraction_to_decimal(stats.sigma, digits)


def run_listing_lines(runs: RunSet) -> Iterator[str]:
    """Tab-separated listing: i, j, p, length, reduced exponent."""
    for r in runs:
        e = r.exponent
        yield f"{r.i}\t{r.j}\t{r.p}\t{r.length}\t{e.numerator}/{e.denominator}"


def write_run_listing(runs: RunSet, stream: TextIO) -> None:
    for line in run_listing_lines(runs):
        stream.write(line)
        stream.write("\n")
