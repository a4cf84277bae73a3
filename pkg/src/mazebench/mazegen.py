"""Procedural maze generation on an n-by-n cell lattice.

A maze is a set of interior walls between 4-adjacent cells. Generation
carves a perfect maze with an iterative randomized depth-first search and
then keeps only a fraction of the leftover (non-carved) walls, which adds
loops and shortcuts while preserving connectivity.

Cells are (x, y) pairs with 0 <= x, y < n. A wall slot is an ordered pair
of adjacent cells, normalized so the lexicographically smaller cell comes
first. The border is implicitly always walled and is not part of the slot
universe, which therefore has exactly 2*n*(n-1) slots.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterator, Optional

import numpy as np

from .rng import make_rng

Cell = tuple[int, int]
WallSlot = tuple[Cell, Cell]

# DFS start cell is fixed; randomizing it would not change the distribution
# of spanning trees enough to matter and a fixed origin keeps grids stable.
DFS_START: Cell = (0, 0)


def wall_slot(a: Cell, b: Cell) -> WallSlot:
    """Normalized wall slot between two adjacent cells."""
    if abs(a[0] - b[0]) + abs(a[1] - b[1]) != 1:
        raise ValueError(f"cells {a} and {b} are not adjacent")
    return (a, b) if a < b else (b, a)


def all_interior_slots(n: int) -> list[WallSlot]:
    """Every interior wall slot of an n x n grid, in sorted order."""
    slots: list[WallSlot] = []
    for x in range(n):
        for y in range(n):
            if x + 1 < n:
                slots.append(((x, y), (x + 1, y)))
            if y + 1 < n:
                slots.append(((x, y), (x, y + 1)))
    slots.sort()
    return slots


def round_half_away(x: float) -> int:
    """Round with halves away from zero (2.5 -> 3, -2.5 -> -3)."""
    return int(math.floor(x + 0.5)) if x >= 0 else int(math.ceil(x - 0.5))


@dataclass(frozen=True)
class MazeGrid:
    """n x n cell lattice with a set of interior walls present."""

    n: int
    walls: frozenset[WallSlot] = field(default_factory=frozenset)

    def cells(self) -> Iterator[Cell]:
        for x in range(self.n):
            for y in range(self.n):
                yield (x, y)

    def in_bounds(self, c: Cell) -> bool:
        return 0 <= c[0] < self.n and 0 <= c[1] < self.n

    def has_wall(self, a: Cell, b: Cell) -> bool:
        """True if moving between adjacent cells a, b is blocked.

        Crossing the border counts as walled.
        """
        if not self.in_bounds(a) or not self.in_bounds(b):
            return True
        return wall_slot(a, b) in self.walls

    def open_neighbors(self, c: Cell) -> Iterator[Cell]:
        x, y = c
        for nb in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
            if self.in_bounds(nb) and not self.has_wall(c, nb):
                yield nb

    def wall_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Dense wall masks for the renderer and collision code.

        Returns (walls_v, walls_h):
          walls_v[i, y] -- vertical segment on the line x=i spanning
                           y..y+1, i.e. the wall between cells (i-1, y)
                           and (i, y); shape (n+1, n).
          walls_h[x, j] -- horizontal segment on the line y=j spanning
                           x..x+1; shape (n, n+1).
        Border segments are always set.
        """
        n = self.n
        walls_v = np.zeros((n + 1, n), dtype=np.uint8)
        walls_h = np.zeros((n, n + 1), dtype=np.uint8)
        walls_v[0, :] = 1
        walls_v[n, :] = 1
        walls_h[:, 0] = 1
        walls_h[:, n] = 1
        for (x1, y1), (x2, y2) in self.walls:
            if y1 == y2:  # horizontal neighbors -> vertical wall segment
                walls_v[x2, y1] = 1
            else:
                walls_h[x1, y2] = 1
        return walls_v, walls_h

    def to_text(self) -> str:
        """Compact text form: header line `n`, one `x1,y1-x2,y2` per wall."""
        lines = [str(self.n)]
        for (x1, y1), (x2, y2) in sorted(self.walls):
            lines.append(f"{x1},{y1}-{x2},{y2}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "MazeGrid":
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty grid text")
        n = int(lines[0])
        if n < 1:
            raise ValueError(f"grid size must be >= 1, got {n}")
        walls = set()
        for ln in lines[1:]:
            left, right = ln.split("-")
            x1, y1 = (int(v) for v in left.split(","))
            x2, y2 = (int(v) for v in right.split(","))
            slot = wall_slot((x1, y1), (x2, y2))
            if not (0 <= x2 < n and 0 <= y2 < n):
                raise ValueError(f"wall slot {ln} out of bounds for n={n}")
            walls.add(slot)
        return cls(n=n, walls=frozenset(walls))


def generate_maze(n: int, seed: int, retain_fraction: float = 0.6) -> MazeGrid:
    """Generate a connected maze.

    DFS from (0, 0) carves a spanning tree, removing exactly n*n - 1 wall
    slots. Of the (n-1)**2 residual walls, round(retain_fraction * residual)
    are kept, drawn uniformly without replacement; the rest are removed as
    extra interconnections. retain_fraction=1.0 keeps the perfect maze.

    Pure function of (n, seed, retain_fraction).
    """
    if n < 1:
        raise ValueError(f"maze size must be >= 1, got {n}")
    if not 0.0 <= retain_fraction <= 1.0:
        raise ValueError(f"retain_fraction must be in [0, 1], got {retain_fraction}")

    rng = make_rng(seed)

    carved: set[WallSlot] = set()
    visited = {DFS_START}
    stack = [DFS_START]
    while stack:
        cx, cy = stack[-1]
        options = [
            nb
            for nb in ((cx + 1, cy), (cx - 1, cy), (cx, cy + 1), (cx, cy - 1))
            if 0 <= nb[0] < n and 0 <= nb[1] < n and nb not in visited
        ]
        if options:
            nxt = options[int(rng.integers(len(options)))]
            carved.add(wall_slot((cx, cy), nxt))
            visited.add(nxt)
            stack.append(nxt)
        else:
            stack.pop()

    residual = sorted(set(all_interior_slots(n)) - carved)
    keep = round_half_away(retain_fraction * len(residual))
    if keep < len(residual):
        idx = rng.choice(len(residual), size=keep, replace=False)
        kept = frozenset(residual[int(i)] for i in idx)
    else:
        kept = frozenset(residual)
    return MazeGrid(n=n, walls=kept)


def shortest_path_length(grid: MazeGrid, a: Cell, b: Cell) -> Optional[int]:
    """BFS distance between two cells, or None if unreachable.

    Unreachable cells never occur for generated grids (the DFS spanning
    tree guarantees connectivity); a None from a generated grid means a
    generator bug.
    """
    for c in (a, b):
        if not grid.in_bounds(c):
            raise ValueError(f"cell {c} out of bounds for n={grid.n}")
    if a == b:
        return 0
    dist = {a: 0}
    queue = deque([a])
    while queue:
        cur = queue.popleft()
        for nb in grid.open_neighbors(cur):
            if nb not in dist:
                dist[nb] = dist[cur] + 1
                if nb == b:
                    return dist[nb]
                queue.append(nb)
    return None


def bfs_distances(grid: MazeGrid, src: Cell) -> dict[Cell, int]:
    """BFS distances from src to every reachable cell."""
    dist = {src: 0}
    queue = deque([src])
    while queue:
        cur = queue.popleft()
        for nb in grid.open_neighbors(cur):
            if nb not in dist:
                dist[nb] = dist[cur] + 1
                queue.append(nb)
    return dist


def is_connected(grid: MazeGrid) -> bool:
    """Single connected component check (flood fill from (0, 0))."""
    seen = {(0, 0)}
    queue = deque([(0, 0)])
    while queue:
        cur = queue.popleft()
        for nb in grid.open_neighbors(cur):
            if nb not in seen:
                seen.add(nb)
                queue.append(nb)
    return len(seen) == grid.n * grid.n
