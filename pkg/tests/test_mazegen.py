"""Maze generator tests.

Oracles here are deliberately independent of the library code: connectivity
is checked with a union-find over the wall set, distances with a standalone
BFS that builds its own adjacency.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mazebench.mazegen import (
    MazeGrid,
    all_interior_slots,
    generate_maze,
    round_half_away,
    shortest_path_length,
    wall_slot,
)


def oracle_components(n, walls):
    """Number of connected components, union-find over open edges."""
    parent = {(x, y): (x, y) for x in range(n) for y in range(n)}

    def find(c):
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    for x in range(n):
        for y in range(n):
            for nb in ((x + 1, y), (x, y + 1)):
                if nb[0] < n and nb[1] < n and wall_slot((x, y), nb) not in walls:
                    ra, rb = find((x, y)), find(nb)
                    if ra != rb:
                        parent[ra] = rb
    return len({find(c) for c in parent})


def oracle_bfs(n, walls, a, b):
    """Standalone BFS distance; returns None when unreachable."""
    from collections import deque

    dist = {a: 0}
    queue = deque([a])
    while queue:
        x, y = queue.popleft()
        for nb in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
            if 0 <= nb[0] < n and 0 <= nb[1] < n and nb not in dist:
                if wall_slot((x, y), nb) not in walls:
                    dist[nb] = dist[(x, y)] + 1
                    queue.append(nb)
    return dist.get(b)


def expected_wall_count(n, f):
    residual = 2 * n * (n - 1) - (n * n - 1)
    return round_half_away(f * residual)


def test_single_cell_has_no_walls():
    for seed in (0, 1, 99):
        grid = generate_maze(1, seed, 0.5)
        assert grid.walls == frozenset()
        assert all_interior_slots(1) == []


def test_n7_seed123_wall_counts():
    grid = generate_maze(7, 123, 0.6)
    assert len(grid.walls) == 22  # round(0.6 * 36)
    assert oracle_components(7, grid.walls) == 1

    perfect = generate_maze(7, 123, 1.0)
    assert len(perfect.walls) == 36  # residual (n-1)^2 kept whole
    assert oracle_components(7, perfect.walls) == 1


def test_zero_size_rejected():
    with pytest.raises(ValueError):
        generate_maze(0, 1, 0.6)
    with pytest.raises(ValueError):
        generate_maze(3, 1, 1.5)


def test_determinism():
    a = generate_maze(11, 777, 0.3)
    b = generate_maze(11, 777, 0.3)
    assert a.walls == b.walls
    c = generate_maze(11, 778, 0.3)
    assert c.walls != a.walls


def test_distance_zero_to_self():
    grid = generate_maze(5, 4, 0.6)
    for cell in [(0, 0), (2, 3), (4, 4)]:
        assert shortest_path_length(grid, cell, cell) == 0


def test_2x2_perfect_maze_opposite_corners():
    # A perfect 2x2 maze is a 4-cell path along the cell cycle; the removed
    # edge's endpoints become the path ends, and those are always adjacent
    # cells, so opposite corners sit exactly 2 apart in every carving.
    seen_walls = set()
    for seed in range(200):
        grid = generate_maze(2, seed, 1.0)
        assert len(grid.walls) == 1
        seen_walls.add(next(iter(grid.walls)))
        assert shortest_path_length(grid, (0, 0), (1, 1)) == 2
        assert oracle_bfs(2, grid.walls, (0, 0), (1, 1)) == 2
    assert len(seen_walls) > 1  # carvings actually vary


def test_corner_to_corner_distance_matches_bfs_oracle():
    grid = generate_maze(7, 123, 0.6)
    want = oracle_bfs(7, grid.walls, (0, 0), (6, 6))
    assert want == 14  # frozen from the oracle
    assert shortest_path_length(grid, (0, 0), (6, 6)) == want


def test_unreachable_reported_as_none():
    # Hand-built grid with cell (0,0) boxed in.
    walls = frozenset({(((0, 0)), ((1, 0))), (((0, 0)), ((0, 1)))})
    grid = MazeGrid(n=2, walls=walls)
    assert shortest_path_length(grid, (0, 0), (1, 1)) is None


def test_out_of_bounds_cell_rejected():
    grid = generate_maze(3, 0, 0.6)
    with pytest.raises(ValueError):
        shortest_path_length(grid, (0, 0), (3, 0))


@settings(max_examples=120, deadline=None)
@given(
    n=st.integers(min_value=1, max_value=25),
    seed=st.integers(min_value=0, max_value=2**63 - 1),
    f=st.sampled_from([0.0, 0.3, 0.6, 1.0]),
)
def test_generated_grids_connected_with_exact_wall_count(n, seed, f):
    grid = generate_maze(n, seed, f)
    assert len(grid.walls) == expected_wall_count(n, f)
    assert oracle_components(n, grid.walls) == 1


@settings(max_examples=60, deadline=None)
@given(
    n=st.integers(min_value=2, max_value=12),
    seed=st.integers(min_value=0, max_value=2**32),
)
def test_distances_match_oracle(n, seed):
    grid = generate_maze(n, seed, 0.6)
    rng = np.random.default_rng(seed)
    for _ in range(4):
        a = (int(rng.integers(n)), int(rng.integers(n)))
        b = (int(rng.integers(n)), int(rng.integers(n)))
        assert shortest_path_length(grid, a, b) == oracle_bfs(n, grid.walls, a, b)


def test_text_roundtrip():
    grid = generate_maze(9, 42, 0.6)
    again = MazeGrid.from_text(grid.to_text())
    assert again == grid
    assert MazeGrid.from_text("1\n") == MazeGrid(n=1)


def test_wall_arrays_match_wall_set():
    grid = generate_maze(6, 5, 0.3)
    wv, wh = grid.wall_arrays()
    assert wv.shape == (7, 6) and wh.shape == (6, 7)
    assert wv[0].all() and wv[6].all() and wh[:, 0].all() and wh[:, 6].all()
    for x in range(6):
        for y in range(6):
            if x + 1 < 6:
                assert bool(wv[x + 1, y]) == grid.has_wall((x, y), (x + 1, y))
            if y + 1 < 6:
                assert bool(wh[x, y + 1]) == grid.has_wall((x, y), (x, y + 1))


def test_round_half_away():
    assert round_half_away(2.5) == 3
    assert round_half_away(2.4) == 2
    assert round_half_away(-2.5) == -3
    assert round_half_away(0.0) == 0
