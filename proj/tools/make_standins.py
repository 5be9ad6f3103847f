#!/usr/bin/env python3
"""Regenerates the seeded stand-in instances under data/.

Usage: python3 tools/make_standins.py [data-dir]
"""
import math
import random
import sys
from pathlib import Path


def samegame_board(rng, width=15, height=15, colors=5):
    return "".join("".join(str(rng.randint(1, colors)) for _ in range(width)) + "\n" for _ in range(height))


def tsptw_instance(rng, customers=46, service=10.0):
    # Half clustered, half uniform, like the RC family.
    centres = [(rng.uniform(15, 85), rng.uniform(15, 85)) for _ in range(5)]
    pts = [(40.0, 50.0)]
    for i in range(customers):
        if i % 2 == 0:
            cx, cy = rng.choice(centres)
            pts.append((round(min(100, max(0, rng.gauss(cx, 6)))), round(min(100, max(0, rng.gauss(cy, 6))))))
        else:
            pts.append((rng.randint(0, 100), rng.randint(0, 100)))

    def dist(a, b):
        return math.hypot(pts[a][0] - pts[b][0], pts[a][1] - pts[b][1])

    # Nearest-neighbour reference tour with a few random swaps keeps the
    # instance feasible without making the reference optimal.
    left = set(range(1, customers + 1))
    tour, cur = [], 0
    while left:
        nxt = min(left, key=lambda j: dist(cur, j))
        tour.append(nxt)
        left.remove(nxt)
        cur = nxt
    for _ in range(6):
        i, j = rng.randrange(customers), rng.randrange(customers)
        tour[i], tour[j] = tour[j], tour[i]

    windows = {}
    t, cur = 0.0, 0
    for n in tour:
        t += dist(cur, n) + (service if cur else 0.0)
        width = rng.uniform(120, 480)
        shift = rng.uniform(0, 1)
        ready = max(0, math.floor(t - width * shift))
        due = math.ceil(t + width * (1 - shift))
        windows[n] = (ready, due)
        t = max(t, ready)
        cur = n
    back = t + service + dist(cur, 0)
    windows[0] = (0, math.ceil(back * 1.1))

    lines = ["RC2LIKE46", "", "VEHICLE", "NUMBER     CAPACITY", "  25         1000", "", "CUSTOMER",
             "CUST NO.  XCOORD.   YCOORD.    DEMAND   READY TIME  DUE DATE   SERVICE TIME", ""]
    for n in range(customers + 1):
        x, y = pts[n]
        r, d = windows[n]
        s = 0 if n == 0 else int(service)
        lines.append(f"{n:5d} {x:8.0f} {y:10.0f} {rng.randint(5, 40) if n else 0:10d} {r:10d} {d:10d} {s:10d}")
    return "\n".join(lines) + "\n"


def main():
    out = Path(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "data")
    out.mkdir(parents=True, exist_ok=True)
    (out / "samegame_15x15_5c.txt").write_text(samegame_board(random.Random(1)))
    (out / "tsptw_rc2like_46.txt").write_text(tsptw_instance(random.Random(204)))


if __name__ == "__main__":
    main()
