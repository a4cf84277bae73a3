"""Task rulesets and seeded train/test configuration sets.

Four scenario families share the same world machinery and differ in item
placement, rewards, and termination:

  labyrinth    reach the exit pad; +1 on exit, -0.0001 per step.
  find_return  touch the goal object (+0.5), then get back to the entry
               marker at the spawn cell (+0.5, terminal); -0.0001 per step.
  ordered_k    collect k items in tag order; +0.5 each, a wrong-order
               pickup gives -0.25 and ends the episode; -0.0001 per step.
  two_color    collect items matching the totem's color; +0.1 per correct
               item, -0.01 per step. Health starts at 100, +25 correct,
               -25 wrong, -1 decay per step; episode ends when health
               drops below 0.

All step accounting is in decision steps (one agent action, frame_skip
physics ticks). Every family is capped at STEP_LIMIT decision steps.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .errors import CapacityError, ConfigError, InternalConsistencyError
from .mazegen import Cell, MazeGrid, bfs_distances, generate_maze
from .rng import SPLIT_TEST, SPLIT_TRAIN, make_rng

CONFIGSET_FORMAT = "mazebench-configset-v1"

STEP_LIMIT = 2100
STEP_PENALTY = 1e-4
EXIT_REWARD = 1.0
FIND_REWARD = 0.5
RETURN_REWARD = 0.5
ORDERED_ITEM_REWARD = 0.5
WRONG_ORDER_PENALTY = 0.25
TWOCOLOR_ITEM_REWARD = 0.1
TWOCOLOR_STEP_PENALTY = 0.01
HEALTH_START = 100.0
HEALTH_CORRECT = 25.0
HEALTH_WRONG = 25.0
HEALTH_DECAY = 1.0
RESPAWN_DELAY = 32  # decision steps until a consumed two_color item returns

DEFAULT_RETAIN = 0.6  # walls kept after carving; 40% of residuals removed

FAMILIES = ("labyrinth", "find_return", "ordered_k", "two_color")

# Placement kinds. "item" is collectible; zones fire arrival events without
# being consumed; the totem is scenery and never fires events.
PK_EXIT = "exit"
PK_ENTRY = "entry"
PK_GOAL = "goal"
PK_ITEM = "item"
PK_TOTEM = "totem"

RED, GREEN = 0, 1
COLOR_NAMES = {RED: "red", GREEN: "green"}

_MAX_ATTEMPTS = 64


@dataclass(frozen=True)
class ScenarioKind:
    """Scenario family plus its difficulty parameter.

    param is k for ordered_k (benchmark presets 2/4/6/8) and the wall
    complexity c for two_color (presets 1/3/5/7, retained wall fraction
    0.1 * c). It is unused for labyrinth and find_return.
    """

    family: str
    param: Optional[int] = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ConfigError(f"unknown scenario family {self.family!r}")
        if self.family == "ordered_k":
            if self.param is None or self.param < 1:
                raise ConfigError("ordered_k needs param k >= 1")
        elif self.family == "two_color":
            if self.param is None or not 0 <= self.param <= 10:
                raise ConfigError("two_color needs complexity in 0..10")
        elif self.param is not None:
            raise ConfigError(f"{self.family} takes no parameter")

    @classmethod
    def labyrinth(cls) -> "ScenarioKind":
        return cls("labyrinth")

    @classmethod
    def find_return(cls) -> "ScenarioKind":
        return cls("find_return")

    @classmethod
    def ordered_k(cls, k: int) -> "ScenarioKind":
        return cls("ordered_k", k)

    @classmethod
    def two_color(cls, complexity: int) -> "ScenarioKind":
        return cls("two_color", complexity)

    def retain_fraction(self) -> float:
        if self.family == "two_color":
            return 0.1 * self.param
        return DEFAULT_RETAIN

    def label(self) -> str:
        if self.param is None:
            return self.family
        return f"{self.family}:{self.param}"

    @classmethod
    def parse(cls, text: str) -> "ScenarioKind":
        family, _, param = text.partition(":")
        return cls(family, int(param) if param else None)


@dataclass(frozen=True)
class Placement:
    kind: str
    tag: int
    cell: Cell


@dataclass(frozen=True)
class ScenarioConfig:
    """One immutable task instance."""

    kind: ScenarioKind
    n: int
    config_seed: int
    retain_fraction: float
    maze: MazeGrid
    spawn_cell: Cell
    spawn_heading: float
    placements: tuple[Placement, ...]
    task_tag: Optional[str] = None  # totem color for two_color

    def key(self):
        """Identity used for train/test distinctness (heading excluded)."""
        return (
            tuple(sorted(self.maze.walls)),
            self.spawn_cell,
            tuple((p.kind, p.tag, p.cell) for p in self.placements),
            self.task_tag,
        )


@dataclass
class EpisodeState:
    """Mutable per-episode state, owned by exactly one environment."""

    x: float
    y: float
    heading: float
    t: int = 0
    collected: list[bool] = field(default_factory=list)
    item_cells: list[Cell] = field(default_factory=list)
    health: Optional[float] = None
    done: bool = False
    succeeded: bool = False
    goal_found: bool = False
    next_item: int = 0
    cumulative_return: float = 0.0
    respawn_queue: list[tuple[int, int]] = field(default_factory=list)
    rng: Optional[np.random.Generator] = None


@dataclass(frozen=True)
class Event:
    """A pickup/arrival contact detected during one decision step."""

    index: int  # placement index
    tick: int = 0


def init_episode(cfg: ScenarioConfig, rng: Optional[np.random.Generator] = None) -> EpisodeState:
    cx, cy = cfg.spawn_cell
    return EpisodeState(
        x=cx + 0.5,
        y=cy + 0.5,
        heading=cfg.spawn_heading,
        collected=[False] * len(cfg.placements),
        item_cells=[p.cell for p in cfg.placements],
        health=HEALTH_START if cfg.kind.family == "two_color" else None,
        rng=rng,
    )


def _respawn_due_items(cfg: ScenarioConfig, st: EpisodeState) -> None:
    due = [(step, idx) for step, idx in st.respawn_queue if step <= st.t]
    if not due:
        return
    st.respawn_queue = [(s, i) for s, i in st.respawn_queue if s > st.t]
    agent_cell = (int(math.floor(st.x)), int(math.floor(st.y)))
    for _, idx in due:
        occupied = {agent_cell}
        occupied.update(
            st.item_cells[i]
            for i, p in enumerate(cfg.placements)
            if not st.collected[i]
        )
        free = [c for c in cfg.maze.cells() if c not in occupied]
        if not free:  # pathological tiny map; retry next step
            st.respawn_queue.append((st.t + 1, idx))
            continue
        cell = free[int(st.rng.integers(len(free)))]
        st.item_cells[idx] = cell
        st.collected[idx] = False


def scenario_step(
    cfg: ScenarioConfig, st: EpisodeState, events: Sequence[Event]
) -> tuple[float, bool, EpisodeState]:
    """Settle one decision step: apply events, charge penalties, terminate.

    Events must arrive in tick order and reference placements that were
    active when the step began; once the episode terminates mid-step the
    remaining events are ignored.
    """
    if st.done:
        raise InternalConsistencyError("scenario_step called on a finished episode")
    for ev in events:
        if not 0 <= ev.index < len(cfg.placements):
            raise InternalConsistencyError(f"event references placement {ev.index}")

    family = cfg.kind.family
    reward = 0.0

    if family == "labyrinth":
        reward -= STEP_PENALTY
        for ev in events:
            if st.done:
                break
            if cfg.placements[ev.index].kind == PK_EXIT:
                reward += EXIT_REWARD
                st.done = True
                st.succeeded = True
        st.t += 1

    elif family == "find_return":
        reward -= STEP_PENALTY
        for ev in events:
            if st.done:
                break
            p = cfg.placements[ev.index]
            if p.kind == PK_GOAL and not st.collected[ev.index]:
                st.collected[ev.index] = True
                st.goal_found = True
                reward += FIND_REWARD
            elif p.kind == PK_ENTRY and st.goal_found:
                reward += RETURN_REWARD
                st.done = True
                st.succeeded = True
        st.t += 1

    elif family == "ordered_k":
        reward -= STEP_PENALTY
        k = cfg.kind.param
        for ev in events:
            if st.done:
                break
            p = cfg.placements[ev.index]
            if p.kind != PK_ITEM:
                continue
            if st.collected[ev.index]:
                raise InternalConsistencyError("pickup event for a collected item")
            if p.tag == st.next_item:
                st.collected[ev.index] = True
                st.next_item += 1
                reward += ORDERED_ITEM_REWARD
                if st.next_item == k:
                    st.done = True
                    st.succeeded = True
            else:
                reward -= WRONG_ORDER_PENALTY
                st.done = True
        st.t += 1

    elif family == "two_color":
        reward -= TWOCOLOR_STEP_PENALTY
        correct = RED if cfg.task_tag == "red" else GREEN
        for ev in events:
            if st.done:
                break
            p = cfg.placements[ev.index]
            if p.kind != PK_ITEM:
                continue
            if st.collected[ev.index]:
                raise InternalConsistencyError("pickup event for a collected item")
            st.collected[ev.index] = True
            st.respawn_queue.append((st.t + 1 + RESPAWN_DELAY, ev.index))
            if p.tag == correct:
                reward += TWOCOLOR_ITEM_REWARD
                st.health += HEALTH_CORRECT
            else:
                st.health -= HEALTH_WRONG
        st.health -= HEALTH_DECAY
        st.t += 1
        if st.health < 0:
            st.done = True

    else:  # pragma: no cover
        raise InternalConsistencyError(f"unhandled family {family}")

    if st.t >= STEP_LIMIT and not st.done:
        st.done = True
        if family == "two_color":
            st.succeeded = True  # survived the full horizon

    if family == "two_color" and not st.done:
        _respawn_due_items(cfg, st)

    st.cumulative_return += reward
    return reward, st.done, st


def items_per_color(n: int) -> int:
    """Two-color item count per color, scaled with maze area."""
    return max(2, round(n * n / 8))


def _build_one(
    kind: ScenarioKind,
    n: int,
    retain: float,
    master_seed: int,
    split_code: int,
    index: int,
    attempt: int,
) -> ScenarioConfig:
    rng = make_rng(master_seed, split_code, index, attempt)
    maze_seed = int(rng.integers(2**63))
    maze = generate_maze(n, maze_seed, retain)
    cells = list(maze.cells())
    center = (n // 2, n // 2)

    spawn_pool = cells if kind.family != "two_color" else [c for c in cells if c != center]
    if not spawn_pool:
        raise CapacityError(f"no spawn cell available for n={n}")
    spawn = spawn_pool[int(rng.integers(len(spawn_pool)))]
    heading = float(rng.uniform(0.0, 2.0 * math.pi))
    dists = bfs_distances(maze, spawn)

    placements: list[Placement] = []
    task_tag = None

    def far_cells():
        return [c for c in cells if c != spawn and dists.get(c, -1) >= n]

    if kind.family == "labyrinth":
        pool = far_cells()
        if not pool:
            raise CapacityError(f"no exit cell at distance >= {n} from spawn")
        placements.append(Placement(PK_EXIT, 0, pool[int(rng.integers(len(pool)))]))

    elif kind.family == "find_return":
        pool = far_cells()
        if not pool:
            raise CapacityError(f"no goal cell at distance >= {n} from spawn")
        placements.append(Placement(PK_GOAL, 0, pool[int(rng.integers(len(pool)))]))
        placements.append(Placement(PK_ENTRY, 0, spawn))

    elif kind.family == "ordered_k":
        k = kind.param
        pool = [c for c in cells if c != spawn]
        if len(pool) < k:
            raise CapacityError(f"n={n} cannot host {k} items")
        idx = rng.choice(len(pool), size=k, replace=False)
        for tag, i in enumerate(idx):
            placements.append(Placement(PK_ITEM, tag, pool[int(i)]))

    elif kind.family == "two_color":
        m = items_per_color(n)
        pool = [c for c in cells if c != spawn and c != center]
        if len(pool) < 2 * m:
            raise CapacityError(f"n={n} cannot host {2 * m} items plus totem")
        idx = rng.choice(len(pool), size=2 * m, replace=False)
        for j, i in enumerate(idx):
            placements.append(Placement(PK_ITEM, RED if j < m else GREEN, pool[int(i)]))
        # Exact alternation keeps totem colors balanced in every split.
        color = RED if index % 2 == 0 else GREEN
        task_tag = COLOR_NAMES[color]
        placements.append(Placement(PK_TOTEM, color, center))

    for p in placements:
        if dists.get(p.cell) is None:
            raise InternalConsistencyError(f"placement {p} unreachable from spawn")

    return ScenarioConfig(
        kind=kind,
        n=n,
        config_seed=maze_seed,
        retain_fraction=retain,
        maze=maze,
        spawn_cell=spawn,
        spawn_heading=heading,
        placements=tuple(placements),
        task_tag=task_tag,
    )


@dataclass(frozen=True)
class ConfigSet:
    kind: ScenarioKind
    n: int
    master_seed: int
    retain_fraction: float
    train: tuple[ScenarioConfig, ...]
    test: tuple[ScenarioConfig, ...]

    def split(self, name: str) -> tuple[ScenarioConfig, ...]:
        if name == "train":
            return self.train
        if name == "test":
            return self.test
        raise ConfigError(f"unknown split {name!r} (expected train or test)")


def build_config_set(
    kind: ScenarioKind,
    n: int,
    n_train: int,
    n_test: int,
    master_seed: int,
    retain_fraction: Optional[float] = None,
) -> ConfigSet:
    """Deterministic config set with pairwise-distinct layouts.

    Config i of a split is a pure function of (master_seed, split, i,
    attempt), where attempt counts rejection-sampling retries used to
    enforce distinctness across the train/test union.
    """
    if n_train < 0 or n_test < 0:
        raise ConfigError("n_train and n_test must be >= 0")
    retain = kind.retain_fraction() if retain_fraction is None else retain_fraction

    seen = set()
    splits: dict[int, list[ScenarioConfig]] = {SPLIT_TRAIN: [], SPLIT_TEST: []}
    for split_code, count in ((SPLIT_TRAIN, n_train), (SPLIT_TEST, n_test)):
        for index in range(count):
            for attempt in range(_MAX_ATTEMPTS):
                try:
                    cfg = _build_one(kind, n, retain, master_seed, split_code, index, attempt)
                except CapacityError:
                    continue
                if cfg.key() not in seen:
                    seen.add(cfg.key())
                    splits[split_code].append(cfg)
                    break
            else:
                raise CapacityError(
                    f"could not build distinct config {index} for split {split_code} "
                    f"after {_MAX_ATTEMPTS} attempts (n={n} too small for {kind.label()}?)"
                )
    return ConfigSet(
        kind=kind,
        n=n,
        master_seed=master_seed,
        retain_fraction=retain,
        train=tuple(splits[SPLIT_TRAIN]),
        test=tuple(splits[SPLIT_TEST]),
    )


def _config_to_json(cfg: ScenarioConfig) -> dict:
    return {
        "config_seed": cfg.config_seed,
        "maze": cfg.maze.to_text(),
        "spawn_cell": list(cfg.spawn_cell),
        "spawn_heading": cfg.spawn_heading,
        "task_tag": cfg.task_tag,
        "placements": [
            {"kind": p.kind, "tag": p.tag, "cell": list(p.cell)} for p in cfg.placements
        ],
    }


def _config_from_json(d: dict, kind: ScenarioKind, n: int, retain: float) -> ScenarioConfig:
    return ScenarioConfig(
        kind=kind,
        n=n,
        config_seed=int(d["config_seed"]),
        retain_fraction=retain,
        maze=MazeGrid.from_text(d["maze"]),
        spawn_cell=tuple(d["spawn_cell"]),
        spawn_heading=float(d["spawn_heading"]),
        placements=tuple(
            Placement(p["kind"], int(p["tag"]), tuple(p["cell"])) for p in d["placements"]
        ),
        task_tag=d.get("task_tag"),
    )


def save_config_set(cs: ConfigSet, path: str | Path) -> None:
    doc = {
        "format": CONFIGSET_FORMAT,
        "kind": {"family": cs.kind.family, "param": cs.kind.param},
        "size": cs.n,
        "master_seed": cs.master_seed,
        "retain_fraction": cs.retain_fraction,
        "train": [_config_to_json(c) for c in cs.train],
        "test": [_config_to_json(c) for c in cs.test],
    }
    Path(path).write_text(json.dumps(doc))


def load_config_set(path: str | Path) -> ConfigSet:
    p = Path(path)
    if not p.exists():
        raise FileNotFoundError(str(p))
    try:
        doc = json.loads(p.read_text())
    except json.JSONDecodeError as e:
        raise ConfigError(f"{p}: not a valid config set file: {e}") from e
    if doc.get("format") != CONFIGSET_FORMAT:
        raise ConfigError(f"{p}: unsupported format {doc.get('format')!r}")
    kind = ScenarioKind(doc["kind"]["family"], doc["kind"]["param"])
    n = int(doc["size"])
    retain = float(doc["retain_fraction"])
    return ConfigSet(
        kind=kind,
        n=n,
        master_seed=int(doc["master_seed"]),
        retain_fraction=retain,
        train=tuple(_config_from_json(d, kind, n, retain) for d in doc["train"]),
        test=tuple(_config_from_json(d, kind, n, retain) for d in doc["test"]),
    )
