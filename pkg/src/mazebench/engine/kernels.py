"""Numba kernels for raycasting, movement, and contact detection.

Walls are thin segments on the unit-grid lines (see MazeGrid.wall_arrays),
so the caster steps from grid line to grid line instead of cell to cell.
All kernels release the GIL so environment slots can run on a thread pool.
"""

import math

import numpy as np
from numba import njit

from .constants import (
    AGENT_RADIUS,
    CEILING_RGB,
    FLOOR_RGB,
    HALF_FOV_RAD,
    HORIZON,
    MOVE_SPEED,
    NEAR_CLIP,
    PICKUP_RADIUS,
    SHADE_K,
    TURN_RAD,
    WALL_RGB,
    WALL_SCALE,
)

TWO_PI = 2.0 * math.pi
_FAR = 1.0e30
_R2 = AGENT_RADIUS * AGENT_RADIUS
_PICK2 = PICKUP_RADIUS * PICKUP_RADIUS
_CEIL_R, _CEIL_G, _CEIL_B = CEILING_RGB
_FLOOR_R, _FLOOR_G, _FLOOR_B = FLOOR_RGB
_WALL_R, _WALL_G, _WALL_B = WALL_RGB


@njit(cache=True, nogil=True)
def _rhalf(x):
    return int(math.floor(x + 0.5))


@njit(cache=True, nogil=True)
def cast_ray(px, py, rdx, rdy, walls_v, walls_h):
    """Distance along the ray to the first wall segment.

    Returns (t, side) with side 0 for a vertical segment (line x = const)
    and 1 for a horizontal one. Grid-line ties resolve to vertical. The
    border is always walled, so a hit is guaranteed for interior starts.
    """
    n = walls_h.shape[0]
    cx = int(math.floor(px))
    cy = int(math.floor(py))

    if rdx > 0.0:
        inv_dx = 1.0 / rdx
        step_x = 1
        line_x = cx + 1
        t_x = (cx + 1.0 - px) * inv_dx
    elif rdx < 0.0:
        inv_dx = -1.0 / rdx
        step_x = -1
        line_x = cx
        t_x = (px - cx) * inv_dx
    else:
        inv_dx = _FAR
        step_x = 0
        line_x = 0
        t_x = _FAR

    if rdy > 0.0:
        inv_dy = 1.0 / rdy
        step_y = 1
        line_y = cy + 1
        t_y = (cy + 1.0 - py) * inv_dy
    elif rdy < 0.0:
        inv_dy = -1.0 / rdy
        step_y = -1
        line_y = cy
        t_y = (py - cy) * inv_dy
    else:
        inv_dy = _FAR
        step_y = 0
        line_y = 0
        t_y = _FAR

    for _ in range(4 * (n + 2)):
        if t_x <= t_y:
            hit_y = py + rdy * t_x
            iy = int(math.floor(hit_y))
            if iy < 0:
                iy = 0
            elif iy > n - 1:
                iy = n - 1
            if 0 <= line_x <= n and walls_v[line_x, iy] != 0:
                return t_x, 0
            t_x += inv_dx
            line_x += step_x
        else:
            hit_x = px + rdx * t_y
            ix = int(math.floor(hit_x))
            if ix < 0:
                ix = 0
            elif ix > n - 1:
                ix = n - 1
            if 0 <= line_y <= n and walls_h[ix, line_y] != 0:
                return t_y, 1
            t_y += inv_dy
            line_y += step_y
    return _FAR, -1


@njit(cache=True, nogil=True)
def disc_hits_wall(px, py, walls_v, walls_h):
    """True if a disc of AGENT_RADIUS at (px, py) overlaps any wall segment."""
    n = walls_h.shape[0]
    cx = int(math.floor(px))
    cy = int(math.floor(py))
    for lx in range(cx, cx + 2):
        if lx < 0 or lx > n:
            continue
        for yi in range(cy - 1, cy + 2):
            if yi < 0 or yi > n - 1:
                continue
            if walls_v[lx, yi] != 0:
                qy = py
                if qy < yi:
                    qy = float(yi)
                elif qy > yi + 1.0:
                    qy = yi + 1.0
                ddx = px - lx
                ddy = py - qy
                if ddx * ddx + ddy * ddy < _R2:
                    return True
    for ly in range(cy, cy + 2):
        if ly < 0 or ly > n:
            continue
        for xi in range(cx - 1, cx + 2):
            if xi < 0 or xi > n - 1:
                continue
            if walls_h[xi, ly] != 0:
                qx = px
                if qx < xi:
                    qx = float(xi)
                elif qx > xi + 1.0:
                    qx = xi + 1.0
                ddx = px - qx
                ddy = py - ly
                if ddx * ddx + ddy * ddy < _R2:
                    return True
    return False


@njit(cache=True, nogil=True)
def decision_step(pose, action, walls_v, walls_h, spr_x, spr_y, detect, fired, ev_idx, ev_tick, n_ticks):
    """Advance n_ticks physics ticks under one repeated action.

    Each tick turns first, then translates per axis, cancelling an axis
    move that would put the agent disc inside a wall. Contact events fire
    at most once per placement per call; returns the event count with
    placement indices and first-contact ticks in ev_idx / ev_tick.
    """
    x = pose[0]
    y = pose[1]
    hd = pose[2]

    mv = 0.0
    turn = 0.0
    if action == 0:
        mv = 1.0
    elif action == 1:
        mv = -1.0
    elif action == 2:
        turn = 1.0
    elif action == 3:
        turn = -1.0
    elif action == 4:
        mv = 1.0
        turn = 1.0
    elif action == 5:
        mv = 1.0
        turn = -1.0

    m = spr_x.shape[0]
    for i in range(m):
        fired[i] = 0
    nev = 0

    for tick in range(n_ticks):
        if turn != 0.0:
            hd += turn * TURN_RAD
            if hd >= TWO_PI:
                hd -= TWO_PI
            elif hd < 0.0:
                hd += TWO_PI
        if mv != 0.0:
            nx = x + mv * MOVE_SPEED * math.cos(hd)
            if not disc_hits_wall(nx, y, walls_v, walls_h):
                x = nx
            ny = y + mv * MOVE_SPEED * math.sin(hd)
            if not disc_hits_wall(x, ny, walls_v, walls_h):
                y = ny
        for i in range(m):
            if detect[i] != 0 and fired[i] == 0:
                ddx = x - spr_x[i]
                ddy = y - spr_y[i]
                if ddx * ddx + ddy * ddy < _PICK2:
                    fired[i] = 1
                    ev_idx[nev] = i
                    ev_tick[nev] = tick
                    nev += 1

    pose[0] = x
    pose[1] = y
    pose[2] = hd
    return nev


@njit(cache=True, nogil=True)
def render_frame(out, zbuf, px, py, heading, walls_v, walls_h, spr_x, spr_y, spr_w, spr_h, spr_r, spr_g, spr_b, spr_on, order, depth):
    """Draw one first-person frame into out (3, H, W) uint8.

    Walls are distance-shaded columns around the horizon; billboards are
    drawn far to near and clipped per column against the wall depth.
    """
    H = out.shape[1]
    W = out.shape[2]
    dirx = math.cos(heading)
    diry = math.sin(heading)
    planex = math.sin(heading)  # |plane| = tan(FOV/2) = 1
    planey = -math.cos(heading)

    for col in range(W):
        c = 2.0 * (col + 0.5) / W - 1.0
        t, _side = cast_ray(px, py, dirx + planex * c, diry + planey * c, walls_v, walls_h)
        zbuf[col] = t
        h = _rhalf(WALL_SCALE / t)
        if h > H:
            h = H
        top = HORIZON - h // 2
        bot = top + h
        if top < 0:
            top = 0
        if bot > H:
            bot = H
        shade = 1.0 / (1.0 + SHADE_K * t)
        wr = np.uint8(_WALL_R * shade)
        wg = np.uint8(_WALL_G * shade)
        wb = np.uint8(_WALL_B * shade)
        for row in range(0, top):
            out[0, row, col] = _CEIL_R
            out[1, row, col] = _CEIL_G
            out[2, row, col] = _CEIL_B
        for row in range(top, bot):
            out[0, row, col] = wr
            out[1, row, col] = wg
            out[2, row, col] = wb
        for row in range(bot, H):
            out[0, row, col] = _FLOOR_R
            out[1, row, col] = _FLOOR_G
            out[2, row, col] = _FLOOR_B

    m = spr_x.shape[0]
    count = 0
    for i in range(m):
        if spr_on[i] != 0:
            relx = spr_x[i] - px
            rely = spr_y[i] - py
            tv = dirx * relx + diry * rely
            if tv > NEAR_CLIP:
                order[count] = i
                depth[count] = tv
                count += 1

    for a in range(1, count):  # insertion sort, farthest first
        oi = order[a]
        dv = depth[a]
        b = a - 1
        while b >= 0 and depth[b] < dv:
            order[b + 1] = order[b]
            depth[b + 1] = depth[b]
            b -= 1
        order[b + 1] = oi
        depth[b + 1] = dv

    for s in range(count):
        i = order[s]
        tv = depth[s]
        relx = spr_x[i] - px
        rely = spr_y[i] - py
        tx = diry * relx - dirx * rely
        screen_cx = 0.5 * W * (1.0 + tx / tv)
        scale = WALL_SCALE / tv
        half_w = 0.5 * spr_w[i] * scale
        bot_f = HORIZON + 0.5 * scale
        row0 = _rhalf(bot_f - spr_h[i] * scale)
        row1 = _rhalf(bot_f)
        col0 = _rhalf(screen_cx - half_w)
        col1 = _rhalf(screen_cx + half_w)
        if row0 < 0:
            row0 = 0
        if row1 > H:
            row1 = H
        if col0 < 0:
            col0 = 0
        if col1 > W:
            col1 = W
        for col in range(col0, col1):
            if tv < zbuf[col]:
                for row in range(row0, row1):
                    out[0, row, col] = spr_r[i]
                    out[1, row, col] = spr_g[i]
                    out[2, row, col] = spr_b[i]


@njit(cache=True, nogil=True)
def point_visible(px, py, heading, tx, ty, walls_v, walls_h):
    """True if world point (tx, ty) is inside the FOV and not wall-occluded."""
    relx = tx - px
    rely = ty - py
    d = math.sqrt(relx * relx + rely * rely)
    if d < 1e-9:
        return True
    ang = math.atan2(rely, relx) - heading
    while ang > math.pi:
        ang -= TWO_PI
    while ang < -math.pi:
        ang += TWO_PI
    if abs(ang) > HALF_FOV_RAD:
        return False
    t, _ = cast_ray(px, py, relx / d, rely / d, walls_v, walls_h)
    return t > d - 1e-9
