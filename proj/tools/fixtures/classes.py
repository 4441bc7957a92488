"""Stage 3: conjugacy classes of the graph group.

Finds class representatives by invariant bucketing of random elements,
resolves invariant ties with meet-in-the-middle conjugacy tests, computes
centralizer orders from conjugation collisions, derives power maps, and
evaluates the two nontrivial rank-3 characters from eigenspace projectors.

The class equation is required to balance exactly; the character data gets
its final exact certification later through table orthogonality.
"""

from __future__ import annotations

import json
import math
import os
import time

import numpy as np

from groups import StabChain, RandomElements, pmul, pinv, ppow, porder, cycle_type

GROUP_ORDER = 44352000


def conj(x, g):
    """x g x^-1."""
    return pmul(x, pmul(g, pinv(x)))


class ClassFinder:
    def __init__(self, gens, n, masks, seed=11):
        self.n = n
        self.masks = masks
        self.rand = RandomElements(gens, seed=seed)
        self.chain = StabChain(gens, n)
        assert self.chain.order() == GROUP_ORDER
        self._inv_cache = {}

    def random_element(self):
        return self.rand.next()

    def edge_trace(self, g):
        return sum((self.masks[v] >> g[v]) & 1 for v in range(self.n))

    def invariant(self, g):
        cached = self._inv_cache.get(g)
        if cached is not None:
            return cached
        k = porder(g)
        sig = []
        for d in [1] + sorted(d for d in range(2, k) if k % d == 0):
            p = ppow(g, d)
            sig.append((cycle_type(p), self.edge_trace(p)))
        inv = (k, tuple(sig))
        if len(self._inv_cache) < 40000:
            self._inv_cache[g] = inv
        return inv

    def conjugacy_related(self, g, h, budget=26000):
        """Monte Carlo conjugacy test via collision of conjugate sets."""
        if self.invariant(g) != self.invariant(h):
            return False
        seen_g = {g: True}
        seen_h = {h: True}
        for _ in range(budget):
            x = self.random_element()
            cg = conj(x, g)
            if cg in seen_h:
                return True
            seen_g[cg] = True
            y = self.random_element()
            ch = conj(y, h)
            if ch in seen_g:
                return True
            seen_h[ch] = True
        return False

    def centralizer_order(self, g, stable_rounds=60):
        """Order of the subgroup generated by conjugation collisions; exact
        once saturated, certified globally by the class equation."""
        seen = {}
        cent = StabChain([g], self.n)
        stable = 0
        while stable < stable_rounds:
            x = self.random_element()
            key = conj(x, g)
            prev = seen.get(key)
            if prev is None:
                seen[key] = x
                continue
            z = pmul(pinv(prev), x)  # prev^-1 x centralizes g
            assert conj(z, g) == g
            if cent.add_generator(z):
                stable = 0
            else:
                stable += 1
        return cent.order()


def main():
    t0 = time.time()
    here = os.path.dirname(os.path.abspath(__file__))
    with open(os.path.join(here, "out", "graph.json")) as f:
        rows = json.load(f)["adjacency"]
    masks = [int(row[::-1], 2) for row in rows]
    adj = np.array([[int(ch) for ch in row] for row in rows], dtype=np.int64)
    with open(os.path.join(here, "out", "group.json")) as f:
        gens = [tuple(g) for g in json.load(f)["generators"]]
    n = len(gens[0])
    identity = tuple(range(n))

    finder = ClassFinder(gens, n, masks)
    print(f"group chain rebuilt ({time.time() - t0:.1f}s)", flush=True)

    reps = [identity]
    cents = [GROUP_ORDER]
    known_invs = {finder.invariant(identity): [0]}

    def add_class(g):
        reps.append(g)
        c = finder.centralizer_order(g)
        assert GROUP_ORDER % c == 0
        cents.append(c)
        known_invs.setdefault(finder.invariant(g), []).append(len(reps) - 1)
        # Coprime powers of g cover the full Galois orbit of its class.
        k = porder(g)
        for j in range(2, k):
            if math.gcd(j, k) != 1:
                continue
            h = ppow(g, j)
            siblings = known_invs[finder.invariant(h)]
            if all(not finder.conjugacy_related(h, reps[i]) for i in siblings):
                add_class(h)

    def class_sum():
        return sum(GROUP_ORDER // c for c in cents)

    samples = 0
    stale = 0
    checked = 0
    while class_sum() < GROUP_ORDER:
        g = finder.random_element()
        samples += 1
        stale += 1
        cands = known_invs.get(finder.invariant(g))
        is_new = cands is None
        if not is_new and stale >= 30000:
            # The cheap invariant has stopped finding anything, so classes
            # hiding behind an invariant tie must be surfaced by genuine
            # conjugacy tests against every candidate in the bucket.
            checked += 1
            assert checked < 4000, "class search stalled"
            is_new = all(not finder.conjugacy_related(g, reps[i]) for i in cands)
        if is_new:
            add_class(g)
            stale = 0
            deficit = GROUP_ORDER - class_sum()
            print(
                f"classes={len(reps)} sum={class_sum()} deficit={deficit} "
                f"samples={samples} checked={checked} ({time.time() - t0:.1f}s)",
                flush=True,
            )
    assert class_sum() == GROUP_ORDER, "class equation does not balance"
    print(f"class equation balanced with {len(reps)} classes ({time.time() - t0:.1f}s)", flush=True)

    sizes = [GROUP_ORDER // c for c in cents]
    order_of = [porder(g) for g in reps]
    perm = sorted(range(len(reps)), key=lambda i: (order_of[i], sizes[i]))
    reps = [reps[i] for i in perm]
    order_of = [order_of[i] for i in perm]
    cents = [cents[i] for i in perm]
    sizes = [sizes[i] for i in perm]
    names = []
    by_order = {}
    for k in order_of:
        by_order[k] = by_order.get(k, 0) + 1
        names.append(f"{k}{'abcdefgh'[by_order[k] - 1]}")
    print("classes:", " ".join(names))
    print("centralizers:", " ".join(str(c) for c in cents))

    exponent = 1
    for k in order_of:
        exponent = exponent * k // math.gcd(exponent, k)
    print("exponent:", exponent)

    def class_of(h):
        cand = [i for i, g in enumerate(reps) if finder.invariant(g) == finder.invariant(h)]
        assert cand, "element matches no known class"
        if len(cand) == 1:
            return cand[0]
        for i in cand[:-1]:
            if finder.conjugacy_related(h, reps[i]):
                return i
        return cand[-1]

    powermaps = {}
    for p in (2, 3, 5, 7, 11):
        if exponent % p == 0:
            powermaps[p] = [class_of(ppow(g, p)) for g in reps]
            print(f"power map {p} done ({time.time() - t0:.1f}s)", flush=True)

    # Rank-3 character data per class from the 100-point action:
    # fix(g), tr(g A), tr(g A^2) determine the two eigenspace characters.
    a2 = adj @ adj
    data = []
    for g in reps:
        garr = np.array(g)
        fix = int((garr == np.arange(n)).sum())
        tra = int(adj[np.arange(n), garr].sum())
        tra2 = int(a2[np.arange(n), garr].sum())
        num = tra2 - 24 * tra + 44 * fix
        assert num % 300 == 0
        chi2 = num // 300
        chi3 = fix - 1 - chi2
        data.append({"fix": fix, "chi2": chi2, "chi3": chi3})

    # Joint exactness check on sizes and eigenspace characters.
    assert sum(s * d["chi2"] for s, d in zip(sizes, data)) == 0
    assert sum(s * d["chi3"] for s, d in zip(sizes, data)) == 0
    assert sum(s * d["chi2"] ** 2 for s, d in zip(sizes, data)) == GROUP_ORDER
    assert sum(s * d["chi3"] ** 2 for s, d in zip(sizes, data)) == GROUP_ORDER
    assert sum(s * d["chi2"] * d["chi3"] for s, d in zip(sizes, data)) == 0
    print("eigenspace characters certified by orthogonality")

    out = {
        "names": names,
        "orders": order_of,
        "sizes": sizes,
        "centralizers": cents,
        "exponent": exponent,
        "powermaps": {str(p): m for p, m in powermaps.items()},
        "reps": [list(g) for g in reps],
        "rank3": data,
    }
    with open(os.path.join(here, "out", "classes.json"), "w") as f:
        json.dump(out, f)
    print(f"classes.json written ({time.time() - t0:.1f}s)")


if __name__ == "__main__":
    main()
