"""Stage 4: the full ordinary character table, exactly.

Seeds a lattice of virtual characters with the two eigenspace characters of
the rank-3 action and with inductions of all linear characters of the cyclic
subgroups generated by the class representatives (their fusion is determined
by the certified power maps alone). Closes the lattice under products and
Adams operations until LLL reduction yields 24 pairwise orthogonal norm-1
vectors with positive degrees: the irreducible characters.

Everything is exact (Fractions over cyclotomic exponent dictionaries); the
output is re-certified independently by the C++ validator's orthogonality
and Galois checks.
"""

from __future__ import annotations

import json
import math
import os
import time
from collections import deque
from fractions import Fraction

GROUP_ORDER = 44352000


# ---------------------------------------------------------------- cyclotomic

def cyclotomic_poly(n, _cache={}):
    """Coefficient list of the n-th cyclotomic polynomial, low degree first."""
    if n in _cache:
        return _cache[n]
    # x^n - 1 divided by the product of all lower-level factors.
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d:
            continue
        phi_d = cyclotomic_poly(d)
        # exact polynomial division num / phi_d
        out = [0] * (len(num) - len(phi_d) + 1)
        rem = list(num)
        for i in range(len(out) - 1, -1, -1):
            c = rem[i + len(phi_d) - 1]
            assert c % phi_d[-1] == 0
            q = c // phi_d[-1]
            out[i] = q
            for j, pc in enumerate(phi_d):
                rem[i + j] -= q * pc
        assert all(r == 0 for r in rem)
        num = out
    _cache[n] = num
    return num


def euler_phi(n):
    out = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            out -= out // p
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out -= out // m
    return out


# A value at a class of element order m is a dict {exponent mod m: Fraction},
# read as sum coeff * zeta_m^exponent. No canonical form is kept; reduction
# happens only when integer coordinates are required.

def dict_add(a, b, scale=1):
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) + c * scale
        if out[e] == 0:
            del out[e]
    return out


def dict_mul(a, b, m):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = (ea + eb) % m
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c != 0}


def dict_conj(a, m):
    return {(-e) % m: c for e, c in a.items()}


def dict_galois(a, m, j):
    assert math.gcd(j, m) == 1
    return {(e * j) % m: c for e, c in a.items()}


def dict_scale(a, s):
    return {e: c * s for e, c in a.items() if c * s != 0}


def trace_to_q(a, m):
    """Trace from Q(zeta_m) to Q of an exponent dict, via Tr(zeta_m^e)."""
    total = 0
    phim = euler_phi(m)
    for e, c in a.items():
        g = math.gcd(e, m)
        f = m // g  # zeta_m^e is a primitive f-th root
        total += c * Fraction(phim, euler_phi(f)) * moebius(f)
    return total


def moebius(n, _cache={}):
    if n in _cache:
        return _cache[n]
    out, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                out = 0
                break
            out = -out
        p += 1
    else:
        if m > 1:
            out = -out
    _cache[n] = out
    return out


def reduce_mod_phi(a, m):
    """Canonical coordinates of an exponent dict in the power basis of
    Q(zeta_m): a Fraction list of length euler_phi(m)."""
    deg = euler_phi(m)
    dense = [Fraction(0)] * m
    for e, c in a.items():
        dense[e % m] += c
    phi = cyclotomic_poly(m)
    for i in range(m - 1, deg - 1, -1):
        c = dense[i]
        if c == 0:
            continue
        dense[i] = Fraction(0)
        for j in range(len(phi) - 1):
            dense[i - (len(phi) - 1) + j] -= c * phi[j]
    return dense[:deg]


# ------------------------------------------------------------ class functions

class Table:
    """Class data: orders, sizes, power-map fusion."""

    def __init__(self, names, orders, sizes, powermaps):
        self.names = names
        self.orders = orders
        self.sizes = sizes
        self.powermaps = {int(p): list(m) for p, m in powermaps.items()}
        self.n = len(names)
        self.weights = [Fraction(s, GROUP_ORDER) for s in sizes]

    def power_class(self, c, m):
        m %= self.orders[c]
        if m == 0:
            return 0
        # Split off the non-coprime part; its primes divide the class order,
        # so they always have power maps.
        cur = c
        d = math.gcd(m, self.orders[c])
        rem = d
        for p in sorted(self.powermaps):
            while rem % p == 0:
                cur = self.powermaps[p][cur]
                rem //= p
        assert rem == 1, rem
        m2 = self.orders[cur]
        u = (m // d) % m2
        if m2 == 1:
            return cur
        # The coprime part may contain primes without power maps (13 squares
        # to nothing here); rewrite it mod m2 as a product of mapped primes
        # found by breadth-first search in the unit group.
        avail = [p for p in sorted(self.powermaps) if m2 % p != 0]
        prev = {1 % m2: None}
        queue = deque([1 % m2])
        while queue and u not in prev:
            x = queue.popleft()
            for p in avail:
                y = (x * p) % m2
                if y not in prev:
                    prev[y] = (x, p)
                    queue.append(y)
        assert u in prev, (m2, u)
        chain = []
        x = u
        while prev[x] is not None:
            x, p = prev[x]
            chain.append(p)
        for p in chain:
            cur = self.powermaps[p][cur]
        return cur


def inner(t, alpha, beta):
    """Exact <alpha, beta>; valid because the total is rational, so the
    per-class scaled traces sum to it (trace transitivity)."""
    total = Fraction(0)
    for c in range(t.n):
        m = t.orders[c]
        prod = dict_mul(alpha[c], dict_conj(beta[c], m), m)
        total += t.weights[c] * Fraction(trace_to_q(prod, m), euler_phi(m))
    return total


def coords(t, alpha):
    """Concatenated power-basis coordinates; must be integral for virtual
    characters."""
    out = []
    for c in range(t.n):
        for v in reduce_mod_phi(alpha[c], t.orders[c]):
            assert v.denominator == 1, "non-integral character value"
            out.append(int(v))
    return out


def from_ints(t, values):
    return [{0: Fraction(v)} if v else {} for v in values]


def product(t, alpha, beta):
    return [dict_mul(alpha[c], beta[c], t.orders[c]) for c in range(t.n)]


def adams(t, alpha, k):
    """psi^k: value at C becomes the value at C^k, embedded in C's field."""
    out = []
    for c in range(t.n):
        d = t.power_class(c, k)
        md, mc = t.orders[d], t.orders[c]
        assert mc % md == 0
        out.append({(e * (mc // md)) % mc: v for e, v in alpha[d].items()})
    return out


def induce_linear(t, c, j):
    """Induction of the j-th linear character of <x> for x in class c."""
    n = t.orders[c]
    vals = [dict() for _ in range(t.n)]
    for d in range(n):
        target = t.power_class(c, d)
        m = t.orders[target]
        # x^d has order m, so zeta_n^(j*d) is an m-th root of unity.
        e = (j * d) % n
        assert (e * m) % n == 0
        em = (e * m // n) % m
        vals[target][em] = vals[target].get(em, 0) + 1
    out = []
    for cls in range(t.n):
        scale = Fraction(GROUP_ORDER, t.sizes[cls] * n)
        out.append(dict_scale(vals[cls], scale))
    return out


# ----------------------------------------------------------------- lattices

def hnf_rows(mat):
    """Hermite-style reduction: a row-echelon Z-basis of the integer row
    lattice spanned by `mat`. Elementary integer row operations only."""
    rows = [list(r) for r in mat if any(r)]
    ncols = len(mat[0])
    basis = []
    for col in range(ncols):
        while True:
            nz = [r for r in rows if r[col] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            for r in nz[1:]:
                q = r[col] // piv[col]
                if q:
                    for i in range(ncols):
                        r[i] -= q * piv[i]
            rows = [r for r in rows if any(r)]
        nz = [r for r in rows if r[col] != 0]
        if nz:
            piv = nz[0]
            if piv[col] < 0:
                for i in range(ncols):
                    piv[i] = -piv[i]
            basis.append(piv)
            rows = [r for r in rows if r is not piv]
    assert all(not any(r) for r in rows)
    return basis


def det_int(gram):
    """Exact determinant of a square integer matrix via fraction-free
    Gaussian elimination."""
    n = len(gram)
    a = [[Fraction(x) for x in row] for row in gram]
    det = Fraction(1)
    for i in range(n):
        piv = next((r for r in range(i, n) if a[r][i]), None)
        if piv is None:
            return 0
        if piv != i:
            a[i], a[piv] = a[piv], a[i]
            det = -det
        det *= a[i][i]
        for r in range(i + 1, n):
            f = a[r][i] / a[i][i]
            if f:
                a[r] = [a[r][c] - f * a[i][c] for c in range(n)]
    assert det.denominator == 1
    return int(det)


def lll_reduce(gram):
    """Exact LLL (delta = 99/100) driven purely by the Gram matrix.
    Returns integer combination rows expressing the reduced basis."""
    n = len(gram)
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    g = [[Fraction(gram[i][j]) for j in range(n)] for i in range(n)]
    mu = [[Fraction(0)] * n for _ in range(n)]
    bstar = [Fraction(0)] * n

    def gso():
        for i in range(n):
            bstar[i] = g[i][i]
            for j in range(i):
                mu[i][j] = g[i][j]
                for kk in range(j):
                    mu[i][j] -= mu[i][kk] * mu[j][kk] * bstar[kk]
                mu[i][j] /= bstar[j]
                bstar[i] -= mu[i][j] ** 2 * bstar[j]

    def sub_row(k, q, j):
        # b_k -= q b_j, with the Gram kept in sync
        gkj, gjj = g[k][j], g[j][j]
        for i in range(n):
            if i != k:
                g[k][i] -= q * g[j][i]
                g[i][k] = g[k][i]
        g[k][k] += q * q * gjj - 2 * q * gkj
        u[k] = [a - q * b for a, b in zip(u[k], u[j])]

    gso()
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                sub_row(k, q, j)
                gso()
        if bstar[k] >= (Fraction(99, 100) - mu[k][k - 1] ** 2) * bstar[k - 1]:
            k += 1
        else:
            g[k], g[k - 1] = g[k - 1], g[k]
            for row in g:
                row[k], row[k - 1] = row[k - 1], row[k]
            u[k], u[k - 1] = u[k - 1], u[k]
            gso()
            k = max(k - 1, 1)
    return u


def main():
    t0 = time.time()
    here = os.path.dirname(os.path.abspath(__file__))
    with open(os.path.join(here, "out", "classes.json")) as f:
        cj = json.load(f)
    t = Table(cj["names"], cj["orders"], cj["sizes"], cj["powermaps"])
    assert t.n == 24

    # Seed characters.
    seeds = []
    chi1 = from_ints(t, [1] * t.n)
    chi2 = from_ints(t, [d["chi2"] for d in cj["rank3"]])
    chi3 = from_ints(t, [d["chi3"] for d in cj["rank3"]])
    seeds += [chi1, chi2, chi3]
    seeds += [product(t, chi2, chi2), product(t, chi2, chi3), product(t, chi3, chi3)]
    for base in (chi2, chi3):
        for k in range(2, 21):
            seeds.append(adams(t, base, k))
    for c in range(1, t.n):
        for j in range(t.orders[c]):
            seeds.append(induce_linear(t, c, j))

    # Halved square operations: genuine characters that the plain product
    # and power operations only reach after division by two.
    for base in (chi2, chi3, product(t, chi2, chi3)):
        sq = product(t, base, base)
        a2 = adams(t, base, 2)
        seeds.append([
            dict_scale(dict_add(sq[i], dict_scale(a2[i], -1)), Fraction(1, 2))
            for i in range(t.n)
        ])
        seeds.append([
            dict_scale(dict_add(sq[i], a2[i]), Fraction(1, 2))
            for i in range(t.n)
        ])

    # Permutation characters of the vertex action on edges, non-edges, and
    # two-step paths, counted directly on the certified representatives.
    with open(os.path.join(here, "out", "graph.json")) as f:
        gj = json.load(f)
    adj = [[ch == "1" for ch in row] for row in gj["adjacency"]]
    nbrs = [[v for v in range(100) if adj[u][v]] for u in range(100)]
    pi_e, pi_n, pi_p2 = [], [], []
    for g in cj["reps"]:
        fixed = [u for u in range(100) if g[u] == u]
        two_cycles = sum(1 for u in range(100) if g[u] > u and g[g[u]] == u)
        e = sum(1 for u in range(100) for v in nbrs[u] if u < v and
                ((g[u] == u and g[v] == v) or (g[u] == v and g[v] == u)))
        pairs = len(fixed) * (len(fixed) - 1) // 2 + two_cycles
        pi_e.append(e)
        pi_n.append(pairs - e)
        p2 = 0
        for v in fixed:
            fv = sum(1 for u in nbrs[v] if g[u] == u)
            sv = sum(1 for u in nbrs[v] if g[u] != u and adj[v][g[u]] and g[g[u]] == u)
            p2 += fv * (fv - 1) // 2 + sv // 2
        pi_p2.append(p2)
    for pi in (pi_e, pi_n, pi_p2):
        seeds.append(from_ints(t, pi))
    print(f"{len(seeds)} seed characters ({time.time() - t0:.1f}s)", flush=True)

    # Integer coordinates and Hermite basis of the seed lattice.
    mat = [coords(t, s) for s in seeds]
    # dedupe
    uniq = []
    seen = set()
    for row in mat:
        key = tuple(row)
        if key not in seen:
            seen.add(key)
            uniq.append(row)
    basis = hnf_rows(uniq)
    print(f"lattice rank {len(basis)} ({time.time() - t0:.1f}s)", flush=True)
    assert len(basis) == 24, "cyclic inductions must span all class functions"

    # Rebuild class functions from integer coordinates.
    def decode(row):
        out = []
        pos = 0
        for c in range(t.n):
            m = t.orders[c]
            deg = euler_phi(m)
            out.append({e: Fraction(v) for e, v in enumerate(row[pos:pos + deg]) if v})
            pos += deg
        return out

    funcs = [decode(r) for r in basis]

    found = []  # irreducible characters as class functions

    def degree_of(alpha):
        v = alpha[0].get(0, Fraction(0))
        assert v.denominator == 1
        return int(v)

    def combine(vecs, comb):
        vec = None
        for c, f in zip(comb, vecs):
            if c == 0:
                continue
            term = [dict_scale(f[i], c) for i in range(t.n)]
            vec = term if vec is None else [dict_add(vec[i], term[i]) for i in range(t.n)]
        assert vec is not None
        return vec

    def deflate(vecs):
        """Project away the found irreducibles; inner products are integers,
        so the projections stay in the virtual-character lattice."""
        out = []
        for v in vecs:
            w = v
            for f in found:
                ip = inner(t, w, f)
                assert ip.denominator == 1
                if ip:
                    w = [dict_add(w[i], dict_scale(f[i], -ip)) for i in range(t.n)]
            out.append(w)
        return out

    def gram_of(vecs):
        gm = [[inner(t, a, b) for b in vecs] for a in vecs]
        for row in gm:
            for v in row:
                assert v.denominator == 1, "virtual characters must have integral Gram"
        return [[int(v) for v in row] for row in gm]

    def unit_vectors(gram):
        """All integer combinations of squared length exactly 1 (one per
        sign pair), by exact branch-and-bound over a Cholesky split."""
        n = len(gram)
        if n == 0:
            return []
        d = [Fraction(0)] * n
        uu = [[Fraction(0)] * n for _ in range(n)]
        g = [[Fraction(x) for x in row] for row in gram]
        for i in range(n):
            for j in range(i, n):
                s = g[i][j]
                for k2 in range(i):
                    s -= d[k2] * uu[k2][i] * uu[k2][j]
                if j == i:
                    assert s > 0
                    d[i] = s
                else:
                    uu[i][j] = s / d[i]
        res = []
        x = [0] * n

        def rec(i, rem):
            if i < 0:
                if rem == 0:
                    res.append(list(x))
                return
            c = sum((uu[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
            lim = rem / d[i]
            span = math.isqrt(int(lim)) + 1
            lo = math.floor(-c) - span
            hi = math.ceil(-c) + span
            for xi in range(lo, hi + 1):
                w = d[i] * (xi + c) ** 2
                if w <= rem:
                    x[i] = xi
                    rec(i - 1, rem - w)
            x[i] = 0

        rec(n - 1, Fraction(1))
        # keep one representative per sign pair
        keep = []
        seen_signs = set()
        for v in res:
            tv = tuple(v)
            nv = tuple(-a for a in v)
            if nv not in seen_signs:
                seen_signs.add(tv)
                keep.append(v)
        return keep

    pool = funcs
    rounds = 0
    stall = 0
    while len(found) < 24:
        rounds += 1
        assert rounds <= 24, "lattice search failed to converge"
        work_rows = hnf_rows([coords(t, v) for v in deflate(pool)])
        assert len(work_rows) + len(found) == 24, (len(work_rows), len(found))
        work = [decode(r) for r in work_rows]
        gram = gram_of(work)
        u = lll_reduce(gram)
        reduced = [combine(work, comb) for comb in u]
        newly = []
        fresh = set()
        for x in unit_vectors(gram_of(reduced)):
            vec = combine(reduced, x)
            if degree_of(vec) < 0:
                vec = [dict_scale(v, -1) for v in vec]
            key = tuple(coords(t, vec))
            if key not in fresh:
                fresh.add(key)
                newly.append(vec)
        print(f"round {rounds}: {len(found)}+{len(newly)} irreducibles "
              f"({time.time() - t0:.1f}s)", flush=True)
        if newly:
            found += newly
            pool = reduced + newly
            stall = 0
            continue
        # The deflated lattice holds no unit vectors, so it is a proper
        # sublattice of the remaining span.  Escalate: conjugates and halved
        # squares first, then every pairwise product of the irreducibles in
        # hand, then a direct rational-hull search.  Soundness does not
        # depend on these heuristics; the orthonormality and degree
        # certificates at the end reject any wrong candidate.
        stall += 1
        extra = []
        if stall == 1:
            for w in reduced:
                extra.append([dict_conj(w[i], t.orders[i]) for i in range(t.n)])
            for f in found:
                for w in reduced:
                    extra.append(product(t, f, w))
            for w in reduced[: min(len(reduced), 6)]:
                sq = product(t, w, w)
                a2 = adams(t, w, 2)
                extra.append([
                    dict_scale(dict_add(sq[i], dict_scale(a2[i], -1)), Fraction(1, 2))
                    for i in range(t.n)
                ])
                extra.append([
                    dict_scale(dict_add(sq[i], a2[i]), Fraction(1, 2))
                    for i in range(t.n)
                ])
        elif stall == 2:
            for i2 in range(len(found)):
                for j2 in range(i2, len(found)):
                    extra.append(product(t, found[i2], found[j2]))
        elif stall == 3:
            # Enumerate small rational combinations of the remaining basis
            # whose denominator divides the lattice index and that still have
            # integral coordinates and integral inner products.
            det = det_int(gram)
            idx = math.isqrt(det)
            assert idx * idx == det, (det, "remaining lattice index not square")
            print(f"glue search: remaining index {idx} ({time.time() - t0:.1f}s)",
                  flush=True)
            r = len(reduced)
            spanbox = range(-idx, idx + 1)
            for den in range(2, idx + 1):
                if idx % den:
                    continue
                def walk(i3, acc):
                    if i3 == r:
                        if any(acc):
                            cand = [
                                dict_scale(v, Fraction(1, den))
                                for v in combine(reduced, acc)
                            ]
                            try:
                                coords(t, cand)
                            except AssertionError:
                                return
                            nrm = inner(t, cand, cand)
                            if nrm.denominator != 1:
                                return
                            if any(inner(t, cand, w).denominator != 1 for w in reduced):
                                return
                            extra.append(cand)
                        return
                    for a in spanbox:
                        walk(i3 + 1, acc + [a])
                walk(0, [])
        else:
            raise AssertionError("glue search exhausted without completing the table")
        pool = found + reduced + extra
        print(f"round {rounds}: stall {stall}, pool {len(pool)} "
              f"({time.time() - t0:.1f}s)", flush=True)

    # Certify: orthonormal, degrees positive, squares sum to the group order.
    for i in range(24):
        for j in range(i, 24):
            expected = 1 if i == j else 0
            assert inner(t, found[i], found[j]) == expected, (i, j)
    degrees = sorted(degree_of(v) for v in found)
    assert sum(d * d for d in degrees) == GROUP_ORDER
    expected_degrees = [1, 22, 77, 154, 154, 154, 175, 231, 693, 770, 770, 770,
                        825, 896, 896, 1056, 1386, 1408, 1750, 1925, 1925, 2520,
                        2750, 3200]
    assert degrees == expected_degrees, degrees
    print("24 irreducibles certified", flush=True)

    # Canonical class naming conventions for ambiguous pairs.
    def column_swap(i, j):
        assert t.orders[i] == t.orders[j] and t.sizes[i] == t.sizes[j]
        for vec in found:
            vec[i], vec[j] = vec[j], vec[i]
        for p in t.powermaps:
            pm = t.powermaps[p]
            pm[i], pm[j] = pm[j], pm[i]
            for c in range(t.n):
                if pm[c] == i:
                    pm[c] = j
                elif pm[c] == j:
                    pm[c] = i
        cj["reps"][i], cj["reps"][j] = cj["reps"][j], cj["reps"][i]

    names = t.names
    idx = {nm: i for i, nm in enumerate(names)}

    # 896 pair: the quadratic-residue eta goes to 11a.
    eta0 = {e: Fraction(1) for e in (1, 3, 4, 5, 9)}
    pair896 = [v for v in found if degree_of(v) == 896]
    assert len(pair896) == 2
    v11a = pair896[0][idx["11a"]]
    if reduce_mod_phi(v11a, 11) != reduce_mod_phi(eta0, 11):
        column_swap(idx["11a"], idx["11b"])
    assert any(
        reduce_mod_phi(v[idx["11a"]], 11) == reduce_mod_phi(eta0, 11) for v in pair896)

    # 10a is the class squaring into 5a.
    if t.power_class(idx["10a"], 2) != idx["5a"]:
        column_swap(idx["10a"], idx["10b"])
    assert t.power_class(idx["10a"], 2) == idx["5a"]

    def canon_value(vec, c):
        return tuple(reduce_mod_phi(vec[c], t.orders[c]))

    def char_sort_key(vec):
        return (degree_of(vec), [canon_value(vec, c) for c in range(t.n)])

    # 8b/8c and 20a/20b carry no structural distinction; order the columns by
    # the first character value that separates them.
    for a, b in (("8b", "8c"), ("20a", "20b")):
        i, j = idx[a], idx[b]
        for vec in sorted(found, key=char_sort_key):
            vi, vj = canon_value(vec, i), canon_value(vec, j)
            if vi != vj:
                if vj < vi:
                    column_swap(i, j)
                break

    found.sort(key=char_sort_key)

    # Within the 896 pair the lower chi number goes to the member whose 11a
    # value is the quadratic-residue eta, matching the reference numbering.
    p896 = [i for i, v in enumerate(found) if degree_of(v) == 896]
    assert len(p896) == 2 and p896[1] == p896[0] + 1
    if reduce_mod_phi(found[p896[0]][idx["11a"]], 11) != reduce_mod_phi(eta0, 11):
        found[p896[0]], found[p896[1]] = found[p896[1]], found[p896[0]]
    assert reduce_mod_phi(found[p896[0]][idx["11a"]], 11) == reduce_mod_phi(eta0, 11)

    char_names = [f"chi{i + 1}" for i in range(24)]

    # Galois consistency against the power maps, ahead of the C++ validator.
    for vec in found:
        for p in t.powermaps:
            for c in range(t.n):
                if t.orders[c] % p == 0:
                    continue
                lhs = reduce_mod_phi(dict_galois(vec[c], t.orders[c], p), t.orders[c])
                target = t.powermaps[p][c]
                rhs = reduce_mod_phi(vec[target], t.orders[target])
                # compare within the larger field
                assert t.orders[target] == t.orders[c]
                assert lhs == rhs, (p, c)
    print("galois consistency holds", flush=True)

    # Emit the fixture table.
    def value_json(vec, c):
        m = t.orders[c]
        red = reduce_mod_phi(vec[c], m)
        assert all(v.denominator == 1 for v in red)
        if all(v == 0 for v in red[1:]):
            return int(red[0])
        return {
            "conductor": m,
            "coeffs": {str(e): str(int(v)) for e, v in enumerate(red) if v != 0},
        }

    table = {
        "group": "HS",
        "order": GROUP_ORDER,
        "exponent": cj["exponent"],
        "classes": [
            {"name": names[c], "order": t.orders[c], "size": t.sizes[c]} for c in range(t.n)
        ],
        "powermaps": {
            str(p): {names[c]: names[t.powermaps[p][c]] for c in range(t.n)}
            for p in sorted(t.powermaps)
        },
        "characters": [
            {"name": nm, "values": [value_json(vec, c) for c in range(t.n)]}
            for nm, vec in zip(char_names, found)
        ],
    }
    root = os.path.dirname(os.path.dirname(here))
    with open(os.path.join(root, "data", "hs.json"), "w") as f:
        json.dump(table, f)
    aligned = dict(cj)
    aligned["powermaps"] = {str(p): t.powermaps[p] for p in sorted(t.powermaps)}
    with open(os.path.join(here, "out", "classes-final.json"), "w") as f:
        json.dump(aligned, f)
    print(f"hs.json written ({time.time() - t0:.1f}s)")


if __name__ == "__main__":
    main()
