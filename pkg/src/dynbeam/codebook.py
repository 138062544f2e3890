"""Hierarchical beam codebooks built from index sets of bottom-layer beams.

Every codeword is a phase-aligned, normalized sum of the bottom-layer
steering beams ``f_i`` (i = 1..N) listed in its index set.  Because the
``f_i`` sit on the orthogonal DFT grid, dropping an index from a set puts
an exact null toward that beam's center while leaving the gain at every
other retained center flat at ``sqrt(N / |set|)``.

Indices and positions are 1-based throughout, matching the usual layer /
position labelling of binary codebooks.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .arraycore import steering_matrix


def _check_power_of_two(n):
    if int(n) != n or n < 1 or (int(n) & (int(n) - 1)):
        raise ValueError(f"array size must be a power of two, got {n}")
    return int(n)


def num_layers(n):
    return _check_power_of_two(n).bit_length() - 1


def bin_center(n, i):
    """Direction cosine at the center of bottom-layer beam ``i``."""
    return -1.0 + (2 * i - 1) / n


def phase_schedule(n, i):
    """Alignment phase applied to ``f_i`` before summation."""
    return np.pi * (-1.0 + 1.0 / n) * i


@dataclass(frozen=True, eq=False)
class Codeword:
    weights: np.ndarray
    members: frozenset
    n: int

    @property
    def is_zero(self):
        return not self.members


@lru_cache(maxsize=None)
def _bottom_matrix(n):
    m = steering_matrix(n, [bin_center(n, i) for i in range(1, n + 1)])
    m.setflags(write=False)
    return m


def bottom_codeword(n, i):
    """Bottom-layer beam ``f_i``: the steering vector at bin ``i``'s center.

    Its main lobe covers [-1 + 2(i-1)/n, -1 + 2i/n].
    """
    n = _check_power_of_two(n)
    if not 1 <= i <= n:
        raise IndexError(f"beam index {i} outside [1, {n}]")
    return Codeword(_bottom_matrix(n)[:, i - 1], frozenset([i]), n)


def initial_index_set(s, m, n):
    """Bottom indices covered by position ``m`` of layer ``s`` in a full binary tree."""
    n = _check_power_of_two(n)
    if not 0 <= s <= num_layers(n):
        raise ValueError(f"layer {s} outside [0, {num_layers(n)}]")
    if not 1 <= m <= 2 ** s:
        raise ValueError(f"position {m} outside [1, {2 ** s}] at layer {s}")
    width = n >> s
    return frozenset(range((m - 1) * width + 1, m * width + 1))


def unnormalized_sum(members, n):
    """Phase-aligned sum of the bottom beams in ``members`` (before normalization)."""
    idx = np.fromiter(sorted(members), dtype=int, count=len(members))
    if idx.size == 0:
        return np.zeros(n, dtype=complex)
    phases = np.exp(1j * phase_schedule(n, idx))
    return _bottom_matrix(n)[:, idx - 1] @ phases


@lru_cache(maxsize=65536)
def _synthesize_cached(members, n):
    v = unnormalized_sum(members, n)
    if members:
        v = v / np.linalg.norm(v)
    v.setflags(write=False)
    return Codeword(v, members, n)


def synthesize(members, n):
    """Codeword for an index set; the zero vector when the set is empty."""
    n = _check_power_of_two(n)
    members = frozenset(int(i) for i in members)
    if members and not (min(members) >= 1 and max(members) <= n):
        raise IndexError(f"index set has members outside [1, {n}]")
    return _synthesize_cached(members, n)


def midpoint_phase_check(i, n):
    """Phase step ``theta_{i+1} - theta_i`` of the alignment schedule.

    The schedule makes ``f_i`` and ``f_{i+1}`` add coherently at their
    shared edge ``-1 + 2i/n``; the step is ``(-1 + 1/n) * pi``.
    """
    n = _check_power_of_two(n)
    if not 1 <= i < n:
        raise IndexError(f"index {i} outside [1, {n - 1}]")
    return phase_schedule(n, i + 1) - phase_schedule(n, i)


class CodebookState:
    """Per-side hierarchy of index sets for layers ``s0..log2(n)``.

    Codewords are synthesized lazily; :meth:`remove_index` only marks the
    slots it touched as dirty, and they are rebuilt on the next request.
    """

    def __init__(self, n, s0):
        self.n = _check_power_of_two(n)
        self.depth = num_layers(self.n)
        if not 0 <= s0 <= self.depth:
            raise ValueError(f"start layer {s0} outside [0, {self.depth}]")
        self.s0 = int(s0)
        self.sets = {
            (s, m): set(initial_index_set(s, m, self.n))
            for s in range(self.s0, self.depth + 1)
            for m in range(1, 2 ** s + 1)
        }
        self.removed = set()
        self.dirty = set()
        self.regenerations = 0
        self._codewords = {}

    def __repr__(self):
        return f"CodebookState({format_descriptor(self)!r})"

    def slot_of(self, s, p):
        """Position at layer ``s`` whose initial set holds bottom index ``p``."""
        return (p - 1) // (self.n >> s) + 1

    def _check_slot(self, s, m):
        if not self.s0 <= s <= self.depth:
            raise ValueError(f"layer {s} outside [{self.s0}, {self.depth}]")
        if not 1 <= m <= 2 ** s:
            raise ValueError(f"position {m} outside [1, {2 ** s}] at layer {s}")

    def remove_index(self, p):
        """Drop bottom index ``p`` from every set holding it; idempotent."""
        if not 1 <= p <= self.n:
            raise IndexError(f"beam index {p} outside [1, {self.n}]")
        if p in self.removed:
            return self
        self.removed.add(p)
        for s in range(self.s0, self.depth + 1):
            slot = (s, self.slot_of(s, p))
            self.sets[slot].discard(p)
            self.dirty.add(slot)
            self._codewords.pop(slot, None)
        return self

    def codeword_at(self, s, m):
        self._check_slot(s, m)
        cw = self._codewords.get((s, m))
        if cw is None:
            cw = synthesize(self.sets[(s, m)], self.n)
            self._codewords[(s, m)] = cw
            self.dirty.discard((s, m))
            self.regenerations += 1
        return cw

    def index_set(self, s, m):
        self._check_slot(s, m)
        return frozenset(self.sets[(s, m)])


def make_codebook_state(n, s0):
    return CodebookState(n, s0)


def format_descriptor(state):
    removed = ",".join(str(p) for p in sorted(state.removed))
    return f"{state.n} {state.s0} removed={removed}"


def parse_descriptor(text):
    """Rebuild a state from ``"N S0 removed=<comma list>"``."""
    parts = text.split()
    if len(parts) not in (2, 3):
        raise ValueError(f"bad codebook descriptor: {text!r}")
    state = CodebookState(int(parts[0]), int(parts[1]))
    if len(parts) == 3:
        key, _, value = parts[2].partition("=")
        if key != "removed":
            raise ValueError(f"bad codebook descriptor field: {parts[2]!r}")
        for tok in filter(None, value.split(",")):
            state.remove_index(int(tok))
    return state
