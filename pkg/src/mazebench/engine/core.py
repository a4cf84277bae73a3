"""Per-config simulator facade over the numba kernels."""

from __future__ import annotations

import numpy as np

from ..scenarios import PK_TOTEM, Event, ScenarioConfig
from . import kernels
from .constants import FRAME_H, FRAME_SKIP, FRAME_W, N_ACTIONS, sprite_style


def obs_array() -> np.ndarray:
    """A correctly shaped observation buffer (channels, rows, cols)."""
    return np.zeros((3, FRAME_H, FRAME_W), dtype=np.uint8)


class Engine:
    """Physics, contact events, and rendering for one scenario config.

    Holds only config-derived constants plus scratch buffers; all episode
    state (pose, collected flags, item cells) is owned by the caller, so
    one Engine can be shared by consecutive episodes of the same config.
    """

    def __init__(self, cfg: ScenarioConfig):
        self.cfg = cfg
        walls_v, walls_h = cfg.maze.wall_arrays()
        self.walls_v = np.ascontiguousarray(walls_v)
        self.walls_h = np.ascontiguousarray(walls_h)

        m = len(cfg.placements)
        self.spr_x = np.zeros(m, dtype=np.float64)
        self.spr_y = np.zeros(m, dtype=np.float64)
        self.spr_w = np.zeros(m, dtype=np.float64)
        self.spr_h = np.zeros(m, dtype=np.float64)
        self.spr_r = np.zeros(m, dtype=np.uint8)
        self.spr_g = np.zeros(m, dtype=np.uint8)
        self.spr_b = np.zeros(m, dtype=np.uint8)
        self.detectable = np.zeros(m, dtype=np.uint8)
        self.totem_xy = None
        for i, p in enumerate(cfg.placements):
            w, h, r, g, b = sprite_style(cfg.kind.family, p.kind, p.tag)
            self.spr_w[i] = w
            self.spr_h[i] = h
            self.spr_r[i] = r
            self.spr_g[i] = g
            self.spr_b[i] = b
            self.detectable[i] = p.kind != PK_TOTEM
            if p.kind == PK_TOTEM:
                self.totem_xy = (p.cell[0] + 0.5, p.cell[1] + 0.5)

        self._detect = np.zeros(m, dtype=np.uint8)
        self._on = np.zeros(m, dtype=np.uint8)
        self._fired = np.zeros(m, dtype=np.uint8)
        self._ev_idx = np.zeros(m, dtype=np.int64)
        self._ev_tick = np.zeros(m, dtype=np.int64)
        self._order = np.zeros(m, dtype=np.int64)
        self._depth = np.zeros(m, dtype=np.float64)
        self._zbuf = np.zeros(FRAME_W, dtype=np.float64)

    def start_pose(self) -> np.ndarray:
        cx, cy = self.cfg.spawn_cell
        return np.array([cx + 0.5, cy + 0.5, self.cfg.spawn_heading], dtype=np.float64)

    def _sync_items(self, item_cells) -> None:
        for i, (cx, cy) in enumerate(item_cells):
            self.spr_x[i] = cx + 0.5
            self.spr_y[i] = cy + 0.5

    def decision_step(self, pose: np.ndarray, action: int, collected, item_cells) -> list[Event]:
        """Run FRAME_SKIP physics ticks; mutates pose, returns contact events."""
        if not 0 <= action < N_ACTIONS:
            raise ValueError(f"action {action} out of range")
        self._sync_items(item_cells)
        for i in range(len(collected)):
            self._detect[i] = 0 if collected[i] else self.detectable[i]
        nev = kernels.decision_step(
            pose,
            action,
            self.walls_v,
            self.walls_h,
            self.spr_x,
            self.spr_y,
            self._detect,
            self._fired,
            self._ev_idx,
            self._ev_tick,
            FRAME_SKIP,
        )
        return [Event(int(self._ev_idx[j]), int(self._ev_tick[j])) for j in range(nev)]

    def render(self, pose: np.ndarray, collected, item_cells, out: np.ndarray) -> None:
        self._sync_items(item_cells)
        for i in range(len(collected)):
            self._on[i] = 0 if collected[i] else 1
        kernels.render_frame(
            out,
            self._zbuf,
            pose[0],
            pose[1],
            pose[2],
            self.walls_v,
            self.walls_h,
            self.spr_x,
            self.spr_y,
            self.spr_w,
            self.spr_h,
            self.spr_r,
            self.spr_g,
            self.spr_b,
            self._on,
            self._order,
            self._depth,
        )

    def totem_visible(self, pose: np.ndarray) -> bool:
        """FOV-and-occlusion test against the totem center, if any."""
        if self.totem_xy is None:
            return False
        tx, ty = self.totem_xy
        return bool(
            kernels.point_visible(pose[0], pose[1], pose[2], tx, ty, self.walls_v, self.walls_h)
        )
