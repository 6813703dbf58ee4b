"""Writes the three MovingAI-format stand-in maps under data/movingai.

The real benchmark maps are not bundled; these only exercise the loader with
the symbols the format uses (. G @ O T W S) at non-trivial sizes.
"""
import random
import sys
from pathlib import Path


def write(path, rows):
    h, w = len(rows), len(rows[0])
    with open(path, "w", newline="\n") as f:
        f.write(f"type octile\nheight {h}\nwidth {w}\nmap\n")
        for r in rows:
            f.write("".join(r) + "\n")


def city(rng, h=256, w=256):
    g = [["." for _ in range(w)] for _ in range(h)]
    for r0 in range(4, h - 4, 24):
        for c0 in range(4, w - 4, 24):
            bh, bw = rng.randint(8, 18), rng.randint(8, 18)
            for r in range(r0, min(h, r0 + bh)):
                for c in range(c0, min(w, c0 + bw)):
                    g[r][c] = "@"
    for _ in range(400):
        r, c = rng.randrange(h), rng.randrange(w)
        if g[r][c] == ".":
            g[r][c] = "T"
    return g


def maze(rng, h=127, w=127):
    g = [["@" for _ in range(w)] for _ in range(h)]
    stack = [(1, 1)]
    g[1][1] = "."
    while stack:
        r, c = stack[-1]
        opts = [(dr, dc) for dr, dc in ((2, 0), (-2, 0), (0, 2), (0, -2))
                if 0 < r + dr < h - 1 and 0 < c + dc < w - 1 and g[r + dr][c + dc] == "@"]
        if not opts:
            stack.pop()
            continue
        dr, dc = rng.choice(opts)
        g[r + dr // 2][c + dc // 2] = "."
        g[r + dr][c + dc] = "."
        stack.append((r + dr, c + dc))
    return g


def game(rng, h=160, w=192):
    g = [["." for _ in range(w)] for _ in range(h)]
    for r in range(h):
        for c in range(w):
            if r in (0, h - 1) or c in (0, w - 1):
                g[r][c] = "@"
    for sym, count, radius in (("W", 6, 12), ("T", 25, 5), ("S", 8, 6), ("O", 10, 3)):
        for _ in range(count):
            cr, cc = rng.randrange(h), rng.randrange(w)
            for r in range(max(1, cr - radius), min(h - 1, cr + radius)):
                for c in range(max(1, cc - radius), min(w - 1, cc + radius)):
                    if (r - cr) ** 2 + (c - cc) ** 2 <= radius * radius and rng.random() < 0.85:
                        g[r][c] = sym
    for _ in range(300):
        r, c = rng.randrange(1, h - 1), rng.randrange(1, w - 1)
        if g[r][c] == ".":
            g[r][c] = "G"
    return g


def main(out):
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    write(out / "city_standin.map", city(random.Random(1)))
    write(out / "maze_standin.map", maze(random.Random(2)))
    write(out / "game_standin.map", game(random.Random(3)))


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/movingai")
