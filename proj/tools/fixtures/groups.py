"""Permutation group utilities: Schreier-Sims, sifting, random elements.

Permutations act on 0..n-1 and are stored as tuples; (p*q)(i) = p(q(i)).
"""

from __future__ import annotations

import random


def pmul(p, q):
    return tuple(p[qi] for qi in q)


def pinv(p):
    out = [0] * len(p)
    for i, pi in enumerate(p):
        out[pi] = i
    return tuple(out)


def pident(n):
    return tuple(range(n))


def is_identity(p):
    return all(p[i] == i for i in range(len(p)))


def ppow(p, e):
    acc = pident(len(p))
    base = p
    while e:
        if e & 1:
            acc = pmul(base, acc)
        base = pmul(base, base)
        e >>= 1
    return acc


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def porder(p):
    order = 1
    for length, _ in cycle_type(p):
        order = order * length // _gcd(order, length)
    return order


def cycle_type(p):
    n = len(p)
    seen = [False] * n
    counts = {}
    for i in range(n):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        counts[length] = counts.get(length, 0) + 1
    return tuple(sorted(counts.items()))


class StabChain:
    """Deterministic Schreier-Sims stabilizer chain.

    Levels are verified bottom-up; a level's generating set is every strong
    generator fixing all earlier base points.
    """

    def __init__(self, gens, n):
        self.n = n
        self.bases = []
        self.strong = []
        self._orbits = {}  # level -> (gen_count, {point: transversal})
        for g in gens:
            self.add_generator(g)

    def _fixes_prefix(self, g):
        i = 0
        while i < len(self.bases) and g[self.bases[i]] == self.bases[i]:
            i += 1
        return i

    def _gens_at(self, level):
        return [g for g in self.strong if self._fixes_prefix(g) >= level]

    def _orbit(self, level):
        cached = self._orbits.get(level)
        key = (len(self.strong), len(self.bases))
        if cached is not None and cached[0] == key:
            return cached[1]
        gens = self._gens_at(level)
        base = self.bases[level]
        orbit = {base: pident(self.n)}
        queue = [base]
        while queue:
            a = queue.pop()
            ua = orbit[a]
            for g in gens:
                b = g[a]
                if b not in orbit:
                    orbit[b] = pmul(g, ua)
                    queue.append(b)
        self._orbits[level] = (key, orbit)
        return orbit

    def _sift_from(self, level, p):
        for i in range(level, len(self.bases)):
            a = p[self.bases[i]]
            orbit = self._orbit(i)
            if a not in orbit:
                return p
            p = pmul(pinv(orbit[a]), p)
        return p

    def sift(self, p):
        return self._sift_from(0, p)

    def contains(self, p):
        if len(p) != self.n:
            return False
        return is_identity(self.sift(p))

    def add_generator(self, g):
        if len(g) != self.n:
            raise ValueError("generator degree mismatch")
        if is_identity(g) or self.contains(g):
            return False
        self._install(g)
        return True

    def _install(self, g):
        j = self._fixes_prefix(g)
        if j == len(self.bases):
            self.bases.append(next(k for k in range(self.n) if g[k] != k))
        self.strong.append(g)
        self._verify_from(j)

    def _verify_from(self, start):
        # Levels deeper than `start` are consistent; re-verify start..0 and
        # descend again whenever a new strong generator lands deeper.
        i = start
        while i >= 0:
            if i >= len(self.bases):
                i = len(self.bases) - 1
                continue
            orbit = self._orbit(i)
            gens = self._gens_at(i)
            dirty = None
            for a in orbit:
                ua = orbit[a]
                for h in gens:
                    s = pmul(pinv(orbit[h[a]]), pmul(h, ua))
                    res = self._sift_from(i + 1, s)
                    if is_identity(res):
                        continue
                    j = self._fixes_prefix(res)
                    if j == len(self.bases):
                        self.bases.append(next(k for k in range(self.n) if res[k] != k))
                    self.strong.append(res)
                    dirty = j
                    break
                if dirty is not None:
                    break
            if dirty is not None:
                i = dirty
            else:
                i -= 1

    def order(self):
        o = 1
        for i in range(len(self.bases)):
            o *= len(self._orbit(i))
        return o

    def generators(self):
        return list(self.strong)


class RandomElements:
    """Product replacement (rattle) random element generator."""

    def __init__(self, gens, seed=0):
        if not gens:
            raise ValueError("need generators")
        self.rng = random.Random(seed)
        self.slots = list(gens) * max(1, (10 + len(gens) - 1) // len(gens))
        self.acc = pident(len(gens[0]))
        for _ in range(120):
            self.next()

    def next(self):
        rng = self.rng
        i = rng.randrange(len(self.slots))
        j = rng.randrange(len(self.slots))
        while j == i:
            j = rng.randrange(len(self.slots))
        if rng.random() < 0.5:
            self.slots[i] = pmul(self.slots[i], self.slots[j])
        else:
            self.slots[i] = pmul(self.slots[j], self.slots[i])
        self.acc = pmul(self.acc, self.slots[i])
        return self.acc


def derived_subgroup(gens, n, target_order=None, seed=1, tries=4000):
    """Stabilizer chain for the derived subgroup, grown from random commutators."""
    rand = RandomElements(gens, seed=seed)
    chain = None
    stable = 0
    for _ in range(tries):
        x = rand.next()
        y = rand.next()
        c = pmul(pinv(pmul(y, x)), pmul(x, y))  # x^-1 y^-1 x y
        if chain is None:
            if not is_identity(c):
                chain = StabChain([c], n)
        elif chain.add_generator(c):
            stable = 0
        else:
            stable += 1
        if chain is not None:
            if target_order is not None and chain.order() == target_order:
                return chain
            if target_order is None and stable > 200:
                return chain
    return chain
