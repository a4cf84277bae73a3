"""Pinned simulator constants.

Everything that affects physics or pixels lives here so the whole stack
(kernels, tests, bindings) agrees on one set of numbers. Changing any of
these invalidates recorded rollouts and golden frames.
"""

import math

from ..scenarios import PK_ENTRY, PK_EXIT, PK_GOAL, PK_ITEM, PK_TOTEM

FRAME_W = 112
FRAME_H = 64
FRAME_SKIP = 4  # physics ticks per decision step

FOV_DEG = 90.0
HALF_FOV_RAD = math.radians(FOV_DEG / 2.0)
WALL_SCALE = 48.0  # pixel height of a wall one unit away
HORIZON = 32  # screen row of the eye line
SHADE_K = 0.3  # wall shade = 1 / (1 + SHADE_K * distance)
NEAR_CLIP = 0.1  # sprites at depth <= this are skipped

AGENT_RADIUS = 0.2
PICKUP_RADIUS = 0.35  # contact events fire strictly inside this
MOVE_SPEED = 0.05  # units per physics tick
TURN_DEG = 4.5  # degrees per physics tick
TURN_RAD = math.radians(TURN_DEG)

N_ACTIONS = 6
ACTION_NAMES = (
    "forward",
    "backward",
    "turn_left",
    "turn_right",
    "forward_left",
    "forward_right",
)

CEILING_RGB = (40, 40, 40)
FLOOR_RGB = (70, 50, 30)
WALL_RGB = (160, 160, 160)

# Item hues for the ordered-collection family, by pickup order.
ORDERED_PALETTE = (
    (230, 60, 60),
    (235, 160, 50),
    (230, 220, 60),
    (80, 200, 80),
    (70, 200, 210),
    (70, 90, 230),
    (160, 80, 220),
    (230, 90, 200),
)

GOAL_RGB = (240, 210, 60)
ENTRY_RGB = (70, 130, 230)
EXIT_RGB = (235, 235, 245)
COLOR_RGB = {0: (255, 0, 0), 1: (0, 255, 0)}  # red / green pickups and totems


def sprite_style(family: str, kind: str, tag: int) -> tuple[float, float, int, int, int]:
    """Billboard size (width, height in world units) and color for a placement."""
    if kind == PK_ITEM:
        if family == "two_color":
            r, g, b = COLOR_RGB[tag]
        else:
            r, g, b = ORDERED_PALETTE[tag % len(ORDERED_PALETTE)]
        return 0.4, 0.4, r, g, b
    if kind == PK_GOAL:
        return 0.5, 0.6, *GOAL_RGB
    if kind == PK_ENTRY:
        return 0.9, 0.5, *ENTRY_RGB
    if kind == PK_EXIT:
        return 0.9, 0.5, *EXIT_RGB
    if kind == PK_TOTEM:
        return 0.5, 1.0, *COLOR_RGB[tag]
    raise ValueError(f"unknown placement kind {kind!r}")
