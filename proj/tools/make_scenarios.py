#!/usr/bin/env python3
"""Regenerates the bundled scenario documents.

    python3 tools/make_scenarios.py scenarios/
"""
import json
import random
import sys
from pathlib import Path

BOUNDS = [0.0, 0.0, 100.0, 60.0]
HALF_EXTENT = 0.5
ROBOT_SPEED = 0.75
START = [5.0, 5.0]
GOAL = [95.0, 55.0]

# Corridor-and-rooms layout: three bands joined by doors, with partitions.
WALLS = [
    # lower band ceiling, doors at x in [20, 25] and [72, 77]
    [0.0, 20.0, 20.0, 21.0],
    [25.0, 20.0, 72.0, 21.0],
    [77.0, 20.0, 100.0, 21.0],
    # upper band floor, doors at x in [60, 65] and [88, 93]
    [0.0, 40.0, 60.0, 41.0],
    [65.0, 40.0, 88.0, 41.0],
    [93.0, 40.0, 100.0, 41.0],
    # room partitions
    [40.0, 0.0, 41.0, 12.0],
    [60.0, 8.0, 61.0, 20.0],
    [12.0, 28.0, 32.0, 29.0],
    [80.0, 21.0, 81.0, 33.0],
    [30.0, 49.0, 31.0, 60.0],
    [72.0, 41.0, 73.0, 52.0],
]


def overlaps(a, b, margin=0.0):
    return (a[0] - margin < b[2] and b[0] - margin < a[2]
            and a[1] - margin < b[3] and b[1] - margin < a[3])


def near(rect, p, radius):
    cx = min(max(p[0], rect[0]), rect[2])
    cy = min(max(p[1], rect[1]), rect[3])
    return (cx - p[0]) ** 2 + (cy - p[1]) ** 2 < radius ** 2


def base(name, cutoff_s, plan_iterations):
    return {
        "name": name,
        "bounds": BOUNDS,
        "walls": WALLS,
        "obstacles": [],
        "start": START,
        "goal": GOAL,
        "robot_speed": ROBOT_SPEED,
        "robot_half_extent": HALF_EXTENT,
        "cutoff_s": cutoff_s,
        "planning_budget_s": 0.05,
        "plan_iterations": plan_iterations,
    }


def dynamic(rng):
    doc = base("dynamic", 300.0, 40)
    size = 2.0 * HALF_EXTENT
    placed = []
    while len(placed) < 30:
        x = round(rng.uniform(BOUNDS[0] + 0.5, BOUNDS[2] - size - 0.5), 2)
        y = round(rng.uniform(BOUNDS[1] + 0.5, BOUNDS[3] - size - 0.5), 2)
        r = [x, y, x + size, y + size]
        if any(overlaps(r, w, 0.5) for w in WALLS) or any(overlaps(r, o, 0.5) for o in placed):
            continue
        if near(r, START, 6.0) or near(r, GOAL, 6.0):
            continue
        placed.append(r)
    for i, r in enumerate(placed):
        speed = round(rng.uniform(0.10, 0.55) * ROBOT_SPEED, 4)
        doc["obstacles"].append({"kind": "moving", "rect": r, "speed": speed, "motion_seed": i})
    return doc


def partial(rng):
    doc = base("partial", 60.0, 40)
    blocks = [
        # (rect, spawn_tick); the first two land beside the doors nearest the
        # straight start-goal line after the robot has committed to them.
        ([25.5, 18.5, 29.5, 22.5], 20),
        ([66.0, 38.5, 70.0, 42.5], 40),
        ([42.0, 25.0, 45.5, 28.5], 30),
        ([52.0, 33.0, 55.5, 36.5], 40),
        ([30.0, 10.0, 33.0, 13.0], 15),
        ([80.0, 52.0, 84.0, 56.0], 60),
    ]
    for rect, tick in blocks:
        doc["obstacles"].append({"kind": "appearing", "rect": rect, "spawn_tick": tick})
    return doc


def main():
    out = Path(sys.argv[1] if len(sys.argv) > 1 else "scenarios")
    out.mkdir(parents=True, exist_ok=True)
    rng = random.Random(20240611)
    for doc in (dynamic(rng), partial(rng)):
        (out / f"{doc['name']}.scenario").write_text(json.dumps(doc, indent=1) + "\n")


if __name__ == "__main__":
    main()
