"""mazebench: fast deterministic first-person 3D maze tasks for RL."""

__version__ = "0.1.0"

from .mazegen import MazeGrid, generate_maze, shortest_path_length  # noqa: F401
