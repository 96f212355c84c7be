#!/usr/bin/env python3
"""Regenerates the bundled CSV datasets deterministically.

Usage: python3 tools/gen_data.py [output_dir]

Three files are written:

  synthetic_main.csv   2000 rows, exactly balanced control, 4 numeric and
                       4 categorical attributes. Several class-skewed
                       high-impact pockets are planted next to one
                       class-balanced pocket, so impact-only search bounds
                       chase the skewed pockets while distribution-aware
                       bounds prune them.
  synthetic_small.csv  200 rows, 2 numeric and 2 categorical attributes,
                       with some empty attribute cells.
  ballpark.csv         300 rows of a toy salary table with a two-league
                       control of slightly unequal size (exercises the
                       seeded stratification step).
"""

import csv
import random
import sys
from pathlib import Path

SEED = 12345


def synthetic_main(rng):
    rows = []
    for i in range(2000):
        ctrl = "C1" if i % 2 == 0 else "C2"
        x0 = round(rng.uniform(0.0, 100.0), 3)
        x1 = round(rng.uniform(0.0, 100.0), 3)
        x2 = round(rng.uniform(0.0, 100.0), 3)
        x3 = round(rng.gauss(40.0, 12.0), 3)
        # The pocket alternates classes by construction, so its class
        # counts match exactly and its representativeness is 1.
        c0 = "P" if i % 10 < 2 else rng.choice(["A", "B", "C", "D", "E", "F"])
        # Trap level T is almost exclusive to class C1.
        t_prob = 0.13 if ctrl == "C1" else 0.005
        c1 = "T" if rng.random() < t_prob else rng.choice(["E", "F", "G", "H"])
        c2 = rng.choice(["I", "J", "K", "L"])
        c3 = rng.choice(["M", "N", "O", "Q", "R", "S"])

        # Low background noise: outside the planted structure no subset of
        # either class accumulates meaningful excess over the mean. The
        # skewed boosts sit on class C1 only and match the pocket's
        # per-item excess, so trading pocket items for trap items never
        # raises impact but always costs representativeness: plain-impact
        # search bounds stay high across broad descriptions where
        # distribution-aware bounds prune.
        y = rng.gauss(50.0, 1.0)
        # Class-balanced pocket: the intended winner at every weight.
        if c0 == "P":
            y += 14.0
        # Class-skewed boosts, mutually exclusive with the pocket.
        elif c1 == "T":
            y += 14.0
        elif c2 == "J" and ctrl == "C1":
            y += 14.0
        elif c2 == "K" and ctrl == "C1":
            y += 14.0
        rows.append(
            {
                "y": round(max(y, 0.0), 2),
                "ctrl": ctrl,
                "x0": x0,
                "x1": x1,
                "x2": x2,
                "x3": x3,
                "c0": c0,
                "c1": c1,
                "c2": c2,
                "c3": c3,
            }
        )
    return ["y", "ctrl", "x0", "x1", "x2", "x3", "c0", "c1", "c2", "c3"], rows


def synthetic_small(rng):
    rows = []
    for i in range(200):
        ctrl = "C1" if i % 2 == 0 else "C2"
        x0 = round(rng.uniform(0.0, 10.0), 3)
        x1 = round(rng.gauss(5.0, 2.0), 3)
        c0 = rng.choice(["A", "B", "C"])
        c1 = rng.choice(["U", "V", "W", "X"])
        y = rng.gauss(20.0, 4.0)
        if c0 == "A" and x0 > 7.0:
            y += 9.0
        if c1 == "U" and ctrl == "C1":
            y += 12.0
        row = {
            "y": round(y, 2),
            "ctrl": ctrl,
            "x0": x0,
            "x1": x1,
            "c0": c0,
            "c1": c1,
        }
        # A sprinkling of missing attribute cells.
        for col in ("x0", "x1", "c0", "c1"):
            if rng.random() < 0.03:
                row[col] = ""
        rows.append(row)
    return ["y", "ctrl", "x0", "x1", "c0", "c1"], rows


def ballpark(rng):
    positions = ["C", "1B", "2B", "SS", "3B", "OF", "DH"]
    premium = {"C": 90.0, "1B": 55.0, "2B": 40.0, "SS": 70.0, "3B": 50.0, "OF": 45.0, "DH": 30.0}
    teams = ["ARG", "BLU", "CRI", "DUN", "ELM", "FOX"]
    rows = []
    for i in range(300):
        league = "A" if i % 15 < 8 else "N"
        position = rng.choice(positions)
        team = rng.choice(teams)
        age = rng.randint(19, 38)
        experience = max(0, min(age - 19, int(rng.gauss(age - 22, 2.0))))
        hits = max(0, int(rng.gauss(90 + 6 * min(experience, 8), 35)))
        salary = (
            180.0
            + premium[position]
            + 38.0 * experience
            + 0.9 * hits
            + (25.0 if league == "A" else 0.0)
            + rng.gauss(0.0, 60.0)
        )
        rows.append(
            {
                "salary": round(max(salary, 60.0), 1),
                "league": league,
                "team": team,
                "position": position,
                "age": age,
                "experience": experience,
                "hits": hits,
            }
        )
    return ["salary", "league", "team", "position", "age", "experience", "hits"], rows


def write(path, header, rows):
    with open(path, "w", newline="") as handle:
        writer = csv.DictWriter(handle, fieldnames=header, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    print(f"wrote {path} ({len(rows)} rows)")


def main():
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "data"
    out.mkdir(parents=True, exist_ok=True)
    for name, build in [
        ("synthetic_main.csv", synthetic_main),
        ("synthetic_small.csv", synthetic_small),
        ("ballpark.csv", ballpark),
    ]:
        # One generator per file keeps any single file reproducible on its own.
        header, rows = build(random.Random(SEED))
        write(out / name, header, rows)


if __name__ == "__main__":
    main()
