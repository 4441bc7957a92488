"""Stage 1: build the 100-vertex Higman-Sims graph from PG(2,4).

Construction: the 21 points of PG(2,4) plus a point at infinity form the
point set of the Steiner system S(3,6,22) whose blocks are the 21 extended
lines and a 56-orbit of hyperovals. Vertices: one marker vertex, the 22
design points, the 77 blocks. Adjacency: marker ~ every point, point ~ block
containing it, block ~ disjoint block. The result is checked to be
srg(100, 22, 0, 6).

Emits out/graph.json with adjacency rows and linear-group generators as
vertex permutations.
"""

from __future__ import annotations

import itertools
import json
import os

import numpy as np

from groups import StabChain

# F4 = {0, 1, w, w+1} encoded 0..3; addition is xor.
MUL = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]]


def normalize(v):
    for c in v:
        if c:
            inv = [0, 1, 3, 2][c]
            return tuple(MUL[inv][x] for x in v)
    raise ValueError("zero vector")


def build_pg24():
    pts = set()
    for v in itertools.product(range(4), repeat=3):
        if any(v):
            pts.add(normalize(v))
    pts = sorted(pts)
    lines = []
    for a in pts:  # line coefficient vectors, also 21 up to scalar
        on = frozenset(
            i for i, p in enumerate(pts) if MUL[a[0]][p[0]] ^ MUL[a[1]][p[1]] ^ MUL[a[2]][p[2]] == 0
        )
        assert len(on) == 5
        lines.append(on)
    return pts, lines


def collinear(pts, i, j, k):
    a, b, c = pts[i], pts[j], pts[k]
    det = 0
    for perm, sign in (((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1)):
        det ^= MUL[a[perm[0]]][MUL[b[perm[1]]][c[perm[2]]]]
        det ^= MUL[a[perm[0]]][MUL[b[perm[2]]][c[perm[1]]]]
    return det == 0


def hyperovals(pts):
    n = len(pts)
    coll = {}
    for i, j, k in itertools.combinations(range(n), 3):
        coll[(i, j, k)] = collinear(pts, i, j, k)
    found = []

    def extend(arc, start):
        if len(arc) == 6:
            found.append(frozenset(arc))
            return
        for nxt in range(start, n):
            ok = True
            for i, j in itertools.combinations(arc, 2):
                if coll[tuple(sorted((i, j, nxt)))]:
                    ok = False
                    break
            if ok:
                extend(arc + [nxt], nxt + 1)

    extend([], 0)
    return found


def matrix_action(m, pts, index):
    out = []
    for p in pts:
        img = tuple(
            MUL[m[r][0]][p[0]] ^ MUL[m[r][1]][p[1]] ^ MUL[m[r][2]][p[2]] for r in range(3)
        )
        out.append(index[normalize(img)])
    return tuple(out)


def sl34_generators(pts):
    index = {p: i for i, p in enumerate(pts)}
    mats = [
        [[1, 1, 0], [0, 1, 0], [0, 0, 1]],
        [[1, 0, 0], [0, 1, 1], [0, 0, 1]],
        [[2, 0, 0], [0, 3, 0], [0, 0, 1]],
        [[0, 1, 0], [0, 0, 1], [1, 0, 0]],
    ]
    return [matrix_action(m, pts, index) for m in mats]


def orbit_of_set(s, gens):
    seen = {s}
    queue = [s]
    while queue:
        cur = queue.pop()
        for g in gens:
            img = frozenset(g[i] for i in cur)
            if img not in seen:
                seen.add(img)
                queue.append(img)
    return seen


def main():
    pts, lines = build_pg24()
    assert len(pts) == 21 and len(lines) == 21
    ovals = hyperovals(pts)
    assert len(ovals) == 168, len(ovals)

    gens21 = sl34_generators(pts)
    assert StabChain(gens21, 21).order() == 20160  # PSL(3,4) in its point action

    remaining = set(ovals)
    orbits = []
    while remaining:
        orb = orbit_of_set(min(remaining, key=sorted), gens21)
        assert orb <= remaining
        remaining -= orb
        orbits.append(sorted(orb, key=sorted))
    assert sorted(len(o) for o in orbits) == [56, 56, 56]
    chosen = orbits[0]

    # Design points 0..20 are PG points, 21 is the added point.
    blocks = [frozenset(l) | {21} for l in lines] + [frozenset(o) for o in chosen]
    assert len(blocks) == 77
    for triple in itertools.combinations(range(22), 3):
        hits = sum(1 for b in blocks if set(triple) <= b)
        assert hits == 1, (triple, hits)

    # Vertices: 0 marker, 1..22 design points, 23..99 blocks.
    adj = np.zeros((100, 100), dtype=np.int64)

    def connect(u, v):
        adj[u][v] = adj[v][u] = 1

    for p in range(22):
        connect(0, 1 + p)
    for bi, b in enumerate(blocks):
        for p in b:
            connect(1 + p, 23 + bi)
    for bi, bj in itertools.combinations(range(77), 2):
        if not (blocks[bi] & blocks[bj]):
            connect(23 + bi, 23 + bj)

    a2 = adj @ adj
    j = np.ones((100, 100), dtype=np.int64)
    i = np.eye(100, dtype=np.int64)
    assert (a2 == 22 * i + 0 * adj + 6 * (j - i - adj)).all(), "not srg(100,22,0,6)"

    # Lift the linear group to the 100 vertices: fixes marker and point 21.
    block_index = {b: i for i, b in enumerate(blocks)}
    vgens = []
    for g in gens21:
        v = [0] * 100
        for p in range(21):
            v[1 + p] = 1 + g[p]
        v[22] = 22  # design point 21
        for bi, b in enumerate(blocks):
            img = frozenset((g[x] if x != 21 else 21) for x in b)
            v[23 + bi] = 23 + block_index[img]
        vgens.append(tuple(v))
    for g in vgens:
        perm = np.array(g)
        assert (adj[np.ix_(perm, perm)] == adj).all(), "generator is not an automorphism"

    out = {
        "adjacency": ["".join(str(x) for x in row) for row in adj.tolist()],
        "linear_generators": [list(g) for g in vgens],
    }
    here = os.path.dirname(os.path.abspath(__file__))
    with open(os.path.join(here, "out", "graph.json"), "w") as f:
        json.dump(out, f)
    print("graph.json written; srg(100,22,0,6) verified; PSL(3,4) order 20160 verified")


if __name__ == "__main__":
    main()
