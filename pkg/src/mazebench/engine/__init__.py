from .constants import (
    ACTION_NAMES,
    AGENT_RADIUS,
    FRAME_H,
    FRAME_SKIP,
    FRAME_W,
    MOVE_SPEED,
    N_ACTIONS,
    PICKUP_RADIUS,
    TURN_DEG,
    TURN_RAD,
)
from .core import Engine, obs_array

__all__ = [
    "ACTION_NAMES",
    "AGENT_RADIUS",
    "Engine",
    "FRAME_H",
    "FRAME_SKIP",
    "FRAME_W",
    "MOVE_SPEED",
    "N_ACTIONS",
    "PICKUP_RADIUS",
    "TURN_DEG",
    "TURN_RAD",
    "obs_array",
]
