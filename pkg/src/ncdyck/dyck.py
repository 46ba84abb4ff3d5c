"""Maximal Dyck paths and their recursive structure.

Two-parameter Chebyshev numbers drive the dimension (root) vectors a_m and
a'_m; the lattice path D_a below the diagonal of the a1 x a2 rectangle is
built greedily and validated against its defining maximality property.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, NamedTuple


class DimVector(NamedTuple):
    a1: int
    a2: int

    def __add__(self, other):  # type: ignore[override]
        return DimVector(self.a1 + other.a1, self.a2 + other.a2)

    def scaled(self, c: int) -> "DimVector":
        return DimVector(c * self.a1, c * self.a2)


def degree_of(k: int, d1: int, d2: int) -> int:
    """Degree d_k of the k-th exchange polynomial: d1 for odd k, d2 for even."""
    return d1 if k % 2 == 1 else d2


class ChebyshevTable:
    """Memoized two-parameter Chebyshev numbers u_{m,k} for fixed (d1, d2).

    u_{0,k} = 0, u_{1,k} = 1 and u_{m+1,k+1} = d_k u_{m,k} - u_{m-1,k-1}.
    The value depends on k only through its parity.
    """

    def __init__(self, d1: int, d2: int):
        if d1 < 1 or d2 < 1:
            raise ValueError("degrees must be positive")
        self.d1 = d1
        self.d2 = d2
        # _rows[m] = (u_{m, even k}, u_{m, odd k})
        self._rows: list[tuple[int, int]] = [(0, 0), (1, 1)]

    def degree(self, k: int) -> int:
        return degree_of(k, self.d1, self.d2)

    def u(self, m: int, k: int) -> int:
        if m < 0:
            raise ValueError("u_{m,k} is only defined here for m >= 0")
        while len(self._rows) <= m:
            n = len(self._rows) - 1  # computing row n+1
            prev, cur = self._rows[n - 1], self._rows[n]
            # u_{n+1,k} = d_{k-1} u_{n,k-1} - u_{n-1,k}  (indices mod 2)
            even = self.degree(1) * cur[1] - prev[0]
            odd = self.degree(0) * cur[0] - prev[1]
            self._rows.append((even, odd))
        return self._rows[m][k % 2]

    def delta(self, m: int) -> int:
        """1 when d_{m-1} = 1 and m != 3, else 0."""
        return 1 if self.degree(m - 1) == 1 and m != 3 else 0

    def root_vector(self, m: int, primed: bool = False) -> DimVector:
        if m <= 0:
            raise ValueError("root vectors are indexed by m >= 1")
        if primed:
            return DimVector(self.u(m, 2), self.u(m - 1, 1))
        return DimVector(self.u(m, 1), self.u(m - 1, 2))

    def swapped(self) -> "ChebyshevTable":
        return ChebyshevTable(self.d2, self.d1)


def chebyshev(m: int, k: int, d1: int, d2: int) -> int:
    return ChebyshevTable(d1, d2).u(m, k)


def root_vector(m: int, d1: int, d2: int, primed: bool = False) -> DimVector:
    return ChebyshevTable(d1, d2).root_vector(m, primed=primed)


@dataclass(frozen=True)
class DyckPath:
    """A monotone lattice path weakly below the diagonal of its rectangle.

    ``steps`` is a string over {H, V}.  Horizontal edges are h_1..h_{a1} and
    vertical edges v_1..v_{a2}, numbered along the path; edge positions are
    0-based indexes into ``steps``.
    """

    rect: DimVector
    steps: str

    def __post_init__(self):
        if len(self.steps) != self.rect.a1 + self.rect.a2:
            raise ValueError("step count does not match rectangle")
        if self.steps.count("H") != self.rect.a1:
            raise ValueError("horizontal count does not match rectangle")

    @property
    def num_edges(self) -> int:
        return len(self.steps)

    @property
    def h_positions(self) -> tuple[int, ...]:
        return tuple(i for i, s in enumerate(self.steps) if s == "H")

    @property
    def v_positions(self) -> tuple[int, ...]:
        return tuple(i for i, s in enumerate(self.steps) if s == "V")

    def lattice_points(self) -> Iterator[tuple[int, int]]:
        x = y = 0
        yield (x, y)
        for s in self.steps:
            if s == "H":
                x += 1
            else:
                y += 1
            yield (x, y)

    def is_below_diagonal(self) -> bool:
        a1, a2 = self.rect
        return all(y * a1 <= x * a2 for x, y in self.lattice_points())

    def is_maximal(self) -> bool:
        """Defining property: below the diagonal, and every lattice point
        strictly above the path is strictly above the diagonal."""
        if not self.is_below_diagonal():
            return False
        a1, a2 = self.rect
        for x, y in self.lattice_points():
            # (x, y+1) is the lowest point strictly above the path at x
            # unless the path itself passes through it later (same x).
            if y + 1 <= a2 and (y + 1) * a1 <= x * a2:
                # point on or below diagonal strictly above the path here?
                if not self._passes_through(x, y + 1):
                    return False
        return True

    def _passes_through(self, px: int, py: int) -> bool:
        return any((x, y) == (px, py) for x, y in self.lattice_points())

    def height(self, i: int) -> int:
        """Number of vertical edges preceding h_i (1-based i)."""
        pos = self.h_positions[i - 1]
        return self.steps[:pos].count("V")

    def depth(self, t: int) -> int:
        """Number of horizontal edges preceding v_t (1-based t)."""
        pos = self.v_positions[t - 1]
        return self.steps[:pos].count("H")

    def verticals_following(self, i: int) -> int:
        """Length of the run of V's immediately after h_i (1-based i)."""
        pos = self.h_positions[i - 1] + 1
        n = 0
        while pos + n < len(self.steps) and self.steps[pos + n] == "V":
            n += 1
        return n

    def horizontals_preceding(self, t: int) -> int:
        """Length of the run of H's immediately before v_t (1-based t)."""
        pos = self.v_positions[t - 1] - 1
        n = 0
        while pos - n >= 0 and self.steps[pos - n] == "H":
            n += 1
        return n

    def concat(self, other: "DyckPath") -> "DyckPath":
        return DyckPath(self.rect + other.rect, self.steps + other.steps)

    def drop_prefix(self, k: int) -> "DyckPath":
        pre = self.steps[:k]
        return DyckPath(
            DimVector(self.rect.a1 - pre.count("H"), self.rect.a2 - pre.count("V")),
            self.steps[k:],
        )

    def to_json(self) -> str:
        return json.dumps({"rect": [self.rect.a1, self.rect.a2], "steps": self.steps})

    @classmethod
    def from_json(cls, text: str) -> "DyckPath":
        data = json.loads(text)
        return cls(DimVector(*data["rect"]), data["steps"])

    def __str__(self) -> str:
        return self.steps


def build_maximal(a: DimVector) -> DyckPath:
    """The maximal Dyck path in the a1 x a2 rectangle.

    Greedy: take the North step exactly when the new point stays on or below
    the diagonal.
    """
    a1, a2 = a
    if a1 < 0 or a2 < 0 or (a1 == 0 and a2 == 0):
        raise ValueError("rectangle must be nonnegative and nonempty")
    steps = []
    x = y = 0
    while x < a1 or y < a2:
        if y < a2 and (y + 1) * a1 <= x * a2:
            steps.append("V")
            y += 1
        else:
            steps.append("H")
            x += 1
    return DyckPath(a, "".join(steps))


def height_formula(table: ChebyshevTable, m: int, i: int) -> int:
    """ht(h_i) = floor((i-1) u_{m-1,2} / u_{m,1}) on D_m, m >= 2."""
    return (i - 1) * table.u(m - 1, 2) // table.u(m, 1)


def depth_formula(table: ChebyshevTable, m: int, t: int) -> int:
    """dp(v_t) = ceil(t u_{m,1} / u_{m-1,2}) on D_m, m >= 2."""
    num = t * table.u(m, 1)
    den = table.u(m - 1, 2)
    return -(-num // den)


@lru_cache(maxsize=None)
def _maximal_for(d1: int, d2: int, m: int, primed: bool) -> DyckPath:
    return build_maximal(ChebyshevTable(d1, d2).root_vector(m, primed=primed))


def standard_path(table: ChebyshevTable, m: int, primed: bool = False) -> DyckPath:
    """D_m (or D'_m) for the table's degree pair."""
    return _maximal_for(table.d1, table.d2, m, primed)


@dataclass(frozen=True)
class Decomposition:
    """Recursive structure of D_m, m >= 3.

    ``copies`` holds the 0-based step spans [start, stop) of the
    d_m - 1 - delta_m full copies of D_{m-1}; ``last_copy`` spans the final
    D_{m-1} with its first D_{m-2-delta_m} removed, whose length is
    ``removed_len``.  ``concatenated`` is C_m, the maximal path made of d_m
    copies of D_{m-1}.
    """

    m: int
    path: DyckPath
    previous: DyckPath
    copies: tuple[tuple[int, int], ...]
    last_copy: tuple[int, int]
    removed_len: int
    concatenated: DyckPath
    delta: int

    def initial_subpath_witness(self) -> bool:
        """Dropping the last edge of D_m leaves a prefix of C_m."""
        return self.concatenated.steps.startswith(self.path.steps[:-1])


def decompose_recursive(table: ChebyshevTable, m: int, primed: bool = False) -> Decomposition:
    if m < 3:
        raise ValueError("the recursive structure needs m >= 3")
    if table.d1 * table.d2 < 4:
        raise ValueError("the recursive structure needs d1*d2 >= 4")
    if primed:
        # D'_m decomposes like D_m with the degree roles interchanged.
        t = table.swapped()
        inner = decompose_recursive(t, m, primed=False)
        here = standard_path(table, m, primed=True)
        prev = standard_path(table, m - 1, primed=True)
        cat = DyckPath(inner.concatenated.rect, inner.concatenated.steps)
        return Decomposition(m, here, prev, inner.copies, inner.last_copy,
                             inner.removed_len, cat, inner.delta)

    path = standard_path(table, m)
    prev = standard_path(table, m - 1)
    delta = table.delta(m)
    d_m = table.degree(m)
    n_full = d_m - 1 - delta
    prev_len = prev.num_edges
    removed = standard_path(table, m - 2 - delta) if m - 2 - delta >= 1 else None
    removed_len = removed.num_edges if removed is not None else 0

    copies = tuple((r * prev_len, (r + 1) * prev_len) for r in range(n_full))
    last_start = n_full * prev_len
    last_copy = (last_start, path.num_edges)

    # Verify the concatenation reproduces the path exactly.
    rebuilt = prev.steps * n_full + prev.steps[removed_len:]
    if rebuilt != path.steps:
        raise AssertionError("recursive decomposition does not match the path")
    if removed is not None and not prev.steps.startswith(removed.steps):
        raise AssertionError("removed piece is not an initial copy")

    cat_rect = prev.rect.scaled(d_m)
    concatenated = DyckPath(cat_rect, prev.steps * d_m)
    return Decomposition(m, path, prev, copies, last_copy, removed_len,
                         concatenated, delta)


def prime_transform(path: DyckPath, direction: str, d1: int, d2: int) -> DyckPath:
    """Rewrite each horizontal edge plus its l following verticals as
    (d - l) horizontals then one vertical; d = d1 for direction 'a'
    (D_m -> D'_{m+1}), d = d2 for 'b' (D'_m -> D_{m+1})."""
    if direction not in ("a", "b"):
        raise ValueError("direction must be 'a' or 'b'")
    d = d1 if direction == "a" else d2
    if path.steps and path.steps[0] == "V":
        raise ValueError("path must start with a horizontal edge")
    out = []
    i = 0
    n = len(path.steps)
    while i < n:
        assert path.steps[i] == "H"
        i += 1
        run = 0
        while i < n and path.steps[i] == "V":
            run += 1
            i += 1
        if run > d:
            raise ValueError("vertical run exceeds the degree bound")
        out.append("H" * (d - run) + "V")
    steps = "".join(out)
    a1 = path.rect.a1
    a2 = path.rect.a2
    return DyckPath(DimVector(d * a1 - a2, a1), steps)
