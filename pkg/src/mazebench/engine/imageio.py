"""Save rendered observations to image files."""

from pathlib import Path

import numpy as np


def to_hwc(obs: np.ndarray) -> np.ndarray:
    """(3, H, W) uint8 -> (H, W, 3) copy suitable for image writers."""
    if obs.ndim != 3 or obs.shape[0] != 3:
        raise ValueError(f"expected (3, H, W) observation, got {obs.shape}")
    return np.ascontiguousarray(np.moveaxis(obs, 0, -1))


def save_ppm(obs: np.ndarray, path) -> None:
    hwc = to_hwc(obs)
    header = f"P6 {hwc.shape[1]} {hwc.shape[0]} 255\n".encode()
    Path(path).write_bytes(header + hwc.tobytes())


def save_png(obs: np.ndarray, path) -> None:
    try:
        from PIL import Image
    except ImportError as e:  # pragma: no cover
        raise RuntimeError("PNG export needs Pillow; use save_ppm instead") from e
    Image.fromarray(to_hwc(obs)).save(path)
