"""Dense linear algebra and module chopping over small prime fields.

Everything is exact: matrices live in numpy float arrays holding residues
mod p, and every product is reduced before the accumulated magnitude can
reach the float mantissa limit. Modules are row-vector spaces with a right
group action; a module remembers how it was carved out of a permutation or
tensor root, so the action of an arbitrary group element can be rebuilt
on demand (needed for eigenvalue counts at specific class representatives).
"""

import random

import numpy as np

# float32 products stay exact while n * (p-1)^2 < 2^24; float64 is roomier
# but twice the memory and traffic. For p <= 11 float32 is exact well past
# every dimension used here, so the threshold is just a small-case nicety.
F32_LIMIT = 1200


def _dtype(n):
    return np.float32 if n > F32_LIMIT else np.float64


def check_exact(p, n, dtype):
    cap = 2 ** 24 if dtype == np.float32 else 2 ** 53
    assert n * (p - 1) ** 2 < cap, (p, n, dtype)


def matmul(p, a, b):
    check_exact(p, a.shape[1], a.dtype)
    out = a @ b
    np.mod(out, p, out=out)
    return out


def mat_identity(p, n):
    return np.identity(n, dtype=_dtype(n))


def perm_matrix(p, perm, n):
    m = np.zeros((n, n), dtype=_dtype(n))
    m[np.arange(n), perm] = 1
    return m


def echelon(p, a, reduced=True):
    """Row-reduce a copy of `a` over F_p.

    Returns (rows, pivots): `rows` are the nonzero echelon rows with unit
    pivots, sorted by pivot column; `pivots` the matching column indices.
    With reduced=True entries above pivots are cleared as well, so
    expressing a row-space member w in this basis is just w[pivots].
    """
    a = np.array(a, copy=True)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    m, n = a.shape
    pivots = []
    r = 0
    for j in range(n):
        if r == m:
            break
        col = a[r:, j]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, j]), p - 2, p)
        if inv != 1:
            row = a[r]
            np.multiply(row, inv, out=row)
            np.mod(row, p, out=row)
        col = a[r + 1:, j]
        nzi = np.nonzero(col)[0]
        if nzi.size:
            sub = a[r + 1 + nzi]
            sub -= np.outer(col[nzi], a[r])
            np.mod(sub, p, out=sub)
            a[r + 1 + nzi] = sub
        pivots.append(j)
        r += 1
    rows = a[:r]
    if reduced and r > 1:
        for k in range(r - 1, 0, -1):
            j = pivots[k]
            col = rows[:k, j]
            nzi = np.nonzero(col)[0]
            if nzi.size:
                sub = rows[nzi]
                sub -= np.outer(col[nzi], rows[k])
                np.mod(sub, p, out=sub)
                rows[nzi] = sub
    return rows, pivots


def reduce_rows(p, w, basis, pivots):
    """Reduce rows w modulo the row space of a reduced-echelon basis."""
    if basis.shape[0] == 0:
        return np.mod(np.array(w, copy=True), p)
    out = w - matmul(p, np.mod(w[:, pivots], p), basis)
    np.mod(out, p, out=out)
    return out


def nullspace(p, a):
    """Basis of the right kernel {x : a x = 0}, presented as rows of the
    returned (k, n) array."""
    rows, pivots = echelon(p, a)
    n = a.shape[1]
    pivset = set(pivots)
    free = [j for j in range(n) if j not in pivset]
    out = np.zeros((len(free), n), dtype=a.dtype)
    for k, j in enumerate(free):
        out[k, j] = 1
        out[k, pivots] = (-rows[:, j]) % p
    return out


def rank(p, a):
    return len(echelon(p, a, reduced=False)[1])


# ------------------------------------------------------------ polynomials
# Coefficient lists over F_p, low degree first, no trailing zeros.


def pnorm(p, f):
    f = [x % p for x in f]
    while f and f[-1] == 0:
        f.pop()
    return f


def padd(p, f, g):
    n = max(len(f), len(g))
    return pnorm(p, [(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)
                     for i in range(n)])


def psub(p, f, g):
    n = max(len(f), len(g))
    return pnorm(p, [(f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)
                     for i in range(n)])


_FFT_MIN = 1024


def pmul(p, f, g):
    if not f or not g:
        return []
    fa = np.asarray(f, dtype=np.int64)
    ga = np.asarray(g, dtype=np.int64)
    n = len(f) + len(g) - 1
    # real FFT stays exact while the convolution values are far below the
    # f64 mantissa; small prime coefficients keep them under 2^34 here
    if n >= _FFT_MIN and (p - 1) * (p - 1) * min(len(f), len(g)) < (1 << 34):
        size = 1
        while size < n:
            size *= 2
        conv = np.fft.irfft(np.fft.rfft(fa % p, size) * np.fft.rfft(ga % p, size),
                            size)[:n]
        out = np.mod(np.rint(conv).astype(np.int64), p)
    else:
        out = np.mod(np.convolve(fa, ga), p)
    return pnorm(p, out.tolist())


def pdivmod(p, f, g):
    g = pnorm(p, g)
    assert g, "division by zero polynomial"
    fa = np.mod(np.asarray(f, dtype=np.int64), p)
    dg = len(g) - 1
    if len(fa) <= dg:
        return [], pnorm(p, fa.tolist())
    ga = np.mod(np.asarray(g, dtype=np.int64), p)
    inv = pow(int(ga[-1]), p - 2, p)
    q = np.zeros(len(fa) - dg, dtype=np.int64)
    for i in range(len(fa) - 1, dg - 1, -1):
        c = int(fa[i])
        if c:
            c = (c * inv) % p
            q[i - dg] = c
            fa[i - dg:i + 1] -= c * ga
            fa[i - dg:i + 1] %= p
    return pnorm(p, q.tolist()), pnorm(p, fa.tolist())


def _arem(p, fa, ga):
    """Remainder of fa modulo ga on int64 coefficient arrays; trashes fa."""
    dg = len(ga) - 1
    inv = pow(int(ga[-1]), p - 2, p)
    for i in range(len(fa) - 1, dg - 1, -1):
        c = int(fa[i])
        if c:
            c = (c * inv) % p
            fa[i - dg:i + 1] -= c * ga
            fa[i - dg:i + 1] %= p
    n = min(len(fa), dg)
    while n and not fa[n - 1]:
        n -= 1
    return fa[:n]


def pgcd(p, f, g):
    fa = np.asarray(pnorm(p, [x % p for x in f]), dtype=np.int64)
    ga = np.asarray(pnorm(p, [x % p for x in g]), dtype=np.int64)
    while ga.size:
        fa, ga = ga, _arem(p, fa, ga)
    out = fa.tolist()
    if out:
        inv = pow(out[-1], p - 2, p)
        out = [(c * inv) % p for c in out]
    return out


def ppowmod(p, f, e, m):
    out = [1]
    f = pdivmod(p, f, m)[1]
    while e:
        if e & 1:
            out = pdivmod(p, pmul(p, out, f), m)[1]
        f = pdivmod(p, pmul(p, f, f), m)[1]
        e >>= 1
    return out


def pderiv(p, f):
    return pnorm(p, [(i * c) % p for i, c in enumerate(f)][1:])


def squarefree_parts(p, f):
    """Decompose monic f as a product of g_i^i with the g_i squarefree and
    coprime; returns a list of (g_i, i) with deg g_i > 0."""
    out = []
    f = pnorm(p, f)
    if len(f) <= 1:
        return out
    df = pderiv(p, f)
    if not df:
        # f(x) = u(x^p) = u(x)^p since the coefficients are in F_p
        for g, m in squarefree_parts(p, f[::p]):
            out.append((g, m * p))
        return out
    c = pgcd(p, f, df)
    w = pdivmod(p, f, c)[0]
    i = 1
    while len(w) > 1:
        y = pgcd(p, w, c)
        part = pdivmod(p, w, y)[0]
        if len(part) > 1:
            out.append((part, i))
        w = y
        c = pdivmod(p, c, y)[0]
        i += 1
    if len(c) > 1:
        for g, m in squarefree_parts(p, c[::p]):
            out.append((g, m * p))
    return out


def _equal_degree_split(p, g, d, rng):
    """Cantor-Zassenhaus on squarefree g whose factors all have degree d."""
    if len(g) - 1 == d:
        return [g]
    n = len(g) - 1
    while True:
        h = [rng.randrange(p) for _ in range(n)] + [1]
        if p == 2:
            acc = pdivmod(p, h, g)[1]
            t = acc
            for _ in range(d - 1):
                acc = ppowmod(p, acc, 2, g)
                t = padd(p, t, acc)
            cand = pgcd(p, g, t)
        else:
            e = (p ** d - 1) // 2
            t = ppowmod(p, h, e, g)
            cand = pgcd(p, g, psub(p, t, [1]))
        if 0 < len(cand) - 1 < len(g) - 1:
            rest = pdivmod(p, g, cand)[0]
            return (_equal_degree_split(p, cand, d, rng)
                    + _equal_degree_split(p, rest, d, rng))


def _distinct_degree(p, g):
    """Squarefree monic g -> list of (product of its degree-d factors, d)."""
    out = []
    h = [0, 1]
    d = 0
    g = list(g)
    while len(g) - 1 >= 2 * (d + 1):
        d += 1
        h = ppowmod(p, h, p, g)
        s = pgcd(p, g, psub(p, h, [0, 1]))
        if len(s) > 1:
            out.append((s, d))
            g = pdivmod(p, g, s)[0]
            h = pdivmod(p, h, g)[1]
    if len(g) > 1:
        out.append((g, len(g) - 1))
    return out


def poly_factor(p, f, rng=None):
    """Full factorization of f over F_p.

    Returns a sorted list of (irreducible monic coefficient list, mult).
    """
    rng = rng or random.Random(11)
    f = pnorm(p, f)
    assert len(f) >= 2
    inv = pow(f[-1], p - 2, p)
    f = [(c * inv) % p for c in f]
    out = {}
    for g, mult in squarefree_parts(p, f):
        for block, d in _distinct_degree(p, g):
            for piece in _equal_degree_split(p, block, d, rng):
                key = tuple(piece)
                out[key] = out.get(key, 0) + mult
    check = [1]
    for g, m in out.items():
        for _ in range(m):
            check = pmul(p, check, list(g))
    assert check == f, "factorization does not multiply back"
    return sorted((list(g), m) for g, m in out.items())


def small_factors(p, f, rng=None, max_degree=None):
    """Distinct monic irreducible factors of f with degree <= max_degree.

    Unlike poly_factor this skips the squarefree decomposition (distinct
    degree gcds pick up each irreducible once regardless of multiplicity,
    provided found factors are stripped to all their copies) and never
    splits the part of f whose factors all exceed the cap, so it stays
    cheap on the huge minimal polynomials of large modules.
    """
    rng = rng or random.Random(11)
    f = pnorm(p, f)
    assert len(f) >= 2
    inv = pow(f[-1], p - 2, p)
    g = [(c * inv) % p for c in f]
    cap = max_degree if max_degree is not None else len(f) - 1
    out = []
    h = [0, 1]
    d = 0
    while len(g) - 1 >= 2 * (d + 1) and d < cap:
        d += 1
        h = ppowmod(p, h, p, g)
        s = pgcd(p, g, psub(p, h, [0, 1]))
        if len(s) > 1:
            for irr in _equal_degree_split(p, s, d, rng):
                out.append(irr)
                while True:
                    q, r = pdivmod(p, g, irr)
                    if r:
                        break
                    g = q
            if len(g) > 1:
                h = pdivmod(p, h, g)[1]
    if 1 <= len(g) - 1 <= cap and len(g) - 1 < 2 * (d + 1):
        # no two distinct factors fit in the remainder and multiples of a
        # smaller one were stripped, so it is irreducible
        out.append(g)
    for irr in out:
        assert not pdivmod(p, f, irr)[1], "found factor does not divide"
    return sorted(out, key=len)


def poly_eval_matrix(p, f, a):
    """f(a) for a square matrix a, Horner with reduction each step."""
    n = a.shape[0]
    out = np.zeros_like(a)
    if not f:
        return out
    np.fill_diagonal(out, f[-1] % p)
    for c in reversed(f[:-1]):
        out = matmul(p, out, a)
        if c % p:
            out[np.diag_indices(n)] += c % p
            np.mod(out, p, out=out)
    return out


_MINPOLY_BATCH = 256


def minpoly_on_vector(p, w, v, max_deg=None):
    """Minimal polynomial of the matrix w acting (on the right) on row v.

    Krylov vectors are generated and reduced in batches so the echelon
    bookkeeping runs as matrix products rather than per-row updates; the
    basis is kept fully reduced with one back-substitution per batch.
    combos[i] records basis[i] as a combination of the raw Krylov vectors,
    giving the dependency coefficients the moment a row vanishes.
    """
    n = w.shape[0]
    max_deg = max_deg or n
    cap = max_deg + 1
    dt = w.dtype
    basis = np.zeros((cap, n), dtype=dt)
    combos = np.zeros((cap, cap + 1), dtype=np.float32)
    pivots = []
    nrows = 0
    x = np.mod(np.asarray(v, dtype=dt).reshape(1, -1), p)
    step = 0
    bsz = _MINPOLY_BATCH if n >= _MINPOLY_BATCH else max(8, n // 2 + 1)
    while step <= max_deg:
        b = min(bsz, max_deg + 1 - step)
        batch = np.empty((b, n), dtype=dt)
        cbatch = np.zeros((b, cap + 1), dtype=np.float32)
        for j in range(b):
            batch[j] = x[0]
            cbatch[j, step + j] = 1
            x = matmul(p, x, w)
        if nrows:
            fac = np.mod(batch[:, pivots], p)
            batch = reduce_rows(p, batch, basis[:nrows], pivots)
            cbatch = np.mod(cbatch - fac.astype(np.float32) @ combos[:nrows], p)
        first_new = nrows
        for j in range(b):
            row = batch[j]
            crow = cbatch[j]
            # eliminate pivots introduced by earlier rows of this batch
            for i in range(first_new, nrows):
                c = row[pivots[i]] % p
                if c:
                    row -= c * basis[i]
                    np.mod(row, p, out=row)
                    crow -= c * combos[i]
                    np.mod(crow, p, out=crow)
            nz = np.nonzero(row)[0]
            if nz.size == 0:
                mp = pnorm(p, [int(c) for c in crow])
                assert mp and mp[-1] == 1 and len(mp) - 1 == step + j
                return mp
            piv = int(nz[0])
            inv = pow(int(row[piv]), p - 2, p)
            basis[nrows] = np.mod(row * inv, p)
            combos[nrows] = np.mod(crow * inv, p)
            # keep this batch's rows reduced against one another so the
            # batch-end product over the old rows sees a true reduced basis
            col = np.mod(basis[first_new:nrows, piv], p)
            for i in np.nonzero(col)[0]:
                c = col[i]
                basis[first_new + i] = np.mod(
                    basis[first_new + i] - c * basis[nrows], p)
                combos[first_new + i] = np.mod(
                    combos[first_new + i] - c * combos[nrows], p)
            pivots.append(piv)
            nrows += 1
        if first_new < nrows and first_new:
            # restore the reduced form of the old rows in one product
            newpiv = pivots[first_new:nrows]
            fac = np.mod(basis[:first_new, newpiv], p)
            if np.any(fac):
                basis[:first_new] = np.mod(
                    basis[:first_new] - matmul(p, fac, basis[first_new:nrows]), p)
                combos[:first_new] = np.mod(
                    combos[:first_new]
                    - fac.astype(np.float32) @ combos[first_new:nrows], p)
        step += b
    raise AssertionError("minimal polynomial exceeded bound")


def spin(p, seeds, gens):
    """Closure of the row space of `seeds` under right multiplication by
    `gens`. Returns (basis, pivots) in reduced echelon form, rows ordered
    by pivot column."""
    basis, pivots = echelon(p, seeds)
    frontier = basis
    while frontier.shape[0]:
        imgs = np.vstack([matmul(p, frontier, g) for g in gens])
        red = reduce_rows(p, imgs, basis, pivots)
        new, newpiv = echelon(p, red)
        if not newpiv:
            break
        col = np.mod(basis[:, newpiv], p)
        if np.any(col):
            basis = np.mod(basis - matmul(p, col, new), p)
        basis = np.vstack([basis, new])
        pivots = pivots + newpiv
        order = np.argsort(pivots)
        basis = np.ascontiguousarray(basis[order])
        pivots = [pivots[i] for i in order]
        frontier = new
    return basis, pivots


# ------------------------------------------------------------ modules


class Module:
    """A right module over F_p with explicit generator matrices and enough
    provenance to rebuild the action of an arbitrary group element.

    Provenance bases are stored as int8 to keep deep sub/quotient chains
    cheap; parent generator matrices are not needed to rebuild actions, so
    the chopper frees them once a module has been split.
    """

    def __init__(self, p, gens, prov):
        self.p = p
        self.gens = gens
        self.dim = gens[0].shape[0] if gens else 0
        self.prov = prov

    def action(self, g):
        """Matrix of the group element g (a point permutation) on this
        module, built along the provenance chain."""
        kind = self.prov[0]
        if kind == 'perm':
            pts = self.prov[1](g)
            return perm_matrix(self.p, pts, self.dim)
        if kind == 'kron':
            a = self.prov[1].action(g)
            b = self.prov[2].action(g)
            nd = _dtype(a.shape[0] * b.shape[0])
            out = np.kron(a.astype(nd), b.astype(nd))
            np.mod(out, self.p, out=out)
            return out
        if kind == 'wedge':
            act, n0, sign = self.prov[1], self.prov[2], self.prov[3]
            return _pair_matrix(self.p, act(g), n0, sign, self.dim)
        if kind == 'explicit':
            raise AssertionError("module carved without provenance")
        parent, basis8, pivots = self.prov[1], self.prov[2], self.prov[3]
        e = parent.action(g)
        basis = basis8.astype(e.dtype)
        if kind == 'sub':
            rows = matmul(self.p, basis, e)
            return np.ascontiguousarray(np.mod(rows[:, pivots], self.p))
        assert kind == 'quot'
        free = [j for j in range(parent.dim) if j not in set(pivots)]
        rows = reduce_rows(self.p, np.ascontiguousarray(e[free, :]), basis, pivots)
        return np.ascontiguousarray(np.mod(rows[:, free], self.p))

    def sub(self, basis, pivots, keep_action=True):
        gens = [np.ascontiguousarray(np.mod(matmul(self.p, basis, g)[:, pivots], self.p))
                for g in self.gens]
        prov = ('sub', self, basis.astype(np.int8), list(pivots)) if keep_action \
            else ('explicit',)
        return Module(self.p, gens, prov)

    def quot(self, basis, pivots, keep_action=True):
        free = [j for j in range(self.dim) if j not in set(pivots)]
        gens = []
        for g in self.gens:
            rows = reduce_rows(self.p, np.ascontiguousarray(g[free, :]), basis, pivots)
            gens.append(np.ascontiguousarray(np.mod(rows[:, free], self.p)))
        prov = ('quot', self, basis.astype(np.int8), list(pivots)) if keep_action \
            else ('explicit',)
        return Module(self.p, gens, prov)


def _pair_matrix(p, img, n0, sign, dim):
    pairs = [(i, j) for i in range(n0) for j in range(i + 1, n0)]
    index = {pr: k for k, pr in enumerate(pairs)}
    m = np.zeros((dim, dim), dtype=_dtype(dim))
    for k, (i, j) in enumerate(pairs):
        a, b = int(img[i]), int(img[j])
        if a < b:
            m[k, index[(a, b)]] = 1
        else:
            m[k, index[(b, a)]] = sign % p
    return m


def make_perm_module(p, n, act, generators):
    gens = [perm_matrix(p, act(g), n) for g in generators]
    return Module(p, gens, ('perm', act))


def make_kron_module(p, m1, m2):
    gens = []
    for a, b in zip(m1.gens, m2.gens):
        nd = _dtype(a.shape[0] * b.shape[0])
        out = np.kron(a.astype(nd), b.astype(nd))
        np.mod(out, p, out=out)
        gens.append(out)
    return Module(p, gens, ('kron', m1, m2))


def make_wedge_module(p, n0, act, generators, sign=-1):
    dim = n0 * (n0 - 1) // 2
    gens = [_pair_matrix(p, act(g), n0, sign, dim) for g in generators]
    return Module(p, gens, ('wedge', act, n0, sign))


def random_word(p, gens, rng, dim):
    """A pseudo-random element of the algebra generated by the action."""
    a, b = gens[0], gens[1]
    choices = [a, b, matmul(p, a, b), matmul(p, b, a)]
    w = np.zeros_like(a)
    for m in choices:
        c = rng.randrange(p)
        if c:
            w = np.mod(w + c * m, p)
    for _ in range(rng.randrange(3)):
        w = matmul(p, w, choices[rng.randrange(4)])
        c = rng.randrange(p)
        if c:
            d = np.diag_indices(dim)
            w[d] += c
            np.mod(w, p, out=w)
    return w


class StopChop(Exception):
    """Raised by a leaf hook to abandon the rest of a chop early."""


def chop(module, rng=None, leaf_hook=None, word_tries=40, keep_action=True):
    """Split a module into composition factors; returns the list of leaves.

    Irreducibility is certified only through the multiplicity-one case of
    the standard meataxe test: an irreducible factor f of a word's minimal
    polynomial with nullity(f(w)) == deg f, whose kernel vector spins to
    the full space on both the module and its transpose. A leaf hook may
    raise StopChop to end early once it has seen enough; the leaves found
    so far are returned.
    """
    rng = rng or random.Random(97)
    out = []
    stack = [module]
    while stack:
        m = stack.pop()
        if m.dim == 0:
            continue
        split = None if m.dim == 1 else _try_split(m, rng, word_tries, keep_action)
        if split is None:
            out.append(m)
            if leaf_hook:
                try:
                    leaf_hook(m)
                except StopChop:
                    return out
        else:
            m.gens = None  # children rebuild actions from provenance alone
            stack.extend(split)
            stack.sort(key=lambda mm: -mm.dim)  # settle small pieces first
    return out


VERBOSE_MIN = None  # set to a dimension to trace work on large modules


def _note(dim, msg):
    if VERBOSE_MIN is not None and dim >= VERBOSE_MIN:
        print(f"    [chop {dim}] {msg}", flush=True)


BIG_DIM = 6000        # above this, only a few small minpoly factors are tried
_FACTOR_CAP = 24      # degree cap on factors pursued for large modules
_FACTOR_TRIES_BIG = 3


def _try_split(m, rng, word_tries, keep_action=True):
    p = m.p
    for tries in range(word_tries):
        w = random_word(p, m.gens, rng, m.dim)
        v = np.zeros(m.dim, dtype=m.gens[0].dtype)
        for _ in range(max(2, m.dim // 64)):
            v[rng.randrange(m.dim)] = 1 + rng.randrange(p - 1)
        mp = minpoly_on_vector(p, w, v)
        _note(m.dim, f"word {tries}: minpoly degree {len(mp) - 1}")
        if len(mp) <= 1:
            continue
        cap = len(mp) - 1 if m.dim <= 512 else _FACTOR_CAP
        factors = small_factors(p, mp, rng, cap)
        if m.dim > BIG_DIM:
            factors = factors[:_FACTOR_TRIES_BIG]
        for f in factors:
            fw = poly_eval_matrix(p, f, w)
            # module vectors are rows, so the acting kernel is the left one
            ker = nullspace(p, np.ascontiguousarray(fw.T))
            _note(m.dim, f"factor degree {len(f) - 1}: nullity {ker.shape[0]}")
            if ker.shape[0] == 0:
                continue
            conclusive = ker.shape[0] == len(f) - 1
            for i in range(1 if conclusive else min(4, ker.shape[0])):
                basis, pivots = spin(p, ker[i:i + 1], m.gens)
                if 0 < len(pivots) < m.dim:
                    return [m.sub(basis, pivots, keep_action),
                            m.quot(basis, pivots, keep_action)]
            # spin one transpose-side kernel vector; a proper invariant
            # row space W there yields the invariant subspace {x : W x^T=0}
            kert = nullspace(p, fw)
            gens_t = [np.ascontiguousarray(g.T) for g in m.gens]
            dbasis, dpivots = spin(p, kert[0:1], gens_t)
            if 0 < len(dpivots) < m.dim:
                sbasis, spiv = echelon(p, nullspace(p, dbasis))
                assert 0 < len(spiv) < m.dim
                return [m.sub(sbasis, spiv, keep_action),
                        m.quot(sbasis, spiv, keep_action)]
            if conclusive and len(dpivots) == m.dim:
                return None
    raise AssertionError(f"chop undecided at dimension {m.dim}")


# quadratic extension support: a matrix over F_{p^2} = F_p[t]/(t^2 - s t - r)
# is a pair (a0, a1) meaning a0 + t a1; kernels reduce to F_p kernels of a
# doubled block matrix.


def ext_params(p):
    """(r, s) with t^2 = r + s t irreducible over F_p."""
    for s in range(p):
        for r in range(1, p):
            if all((x * x - s * x - r) % p for x in range(p)):
                return r, s
    raise AssertionError("no quadratic extension parameters")


def ext_matmul(p, a, b):
    r, s = ext_params(p)
    a0, a1 = a
    b0, b1 = b
    cross = matmul(p, a1, b1)
    c0 = np.mod(matmul(p, a0, b0) + r * cross, p)
    c1 = np.mod(matmul(p, a0, b1) + matmul(p, a1, b0) + s * cross, p)
    return c0, c1


def ext_block(p, a):
    """F_p block matrix whose right kernel encodes the F_{p^2} kernel of
    a0 + t a1: column (x0; x1) maps to the kernel element x0 + t x1."""
    r, s = ext_params(p)
    a0, a1 = a
    top = np.hstack([a0, np.mod(r * a1, p)])
    bot = np.hstack([a1, np.mod(a0 + s * a1, p)])
    return np.vstack([top, bot])


def ext_nullity(p, a):
    nul = nullspace(p, ext_block(p, a)).shape[0]
    assert nul % 2 == 0
    return nul // 2


# ------------------------------------------------------------ self test


def _selftest():
    rng = random.Random(5)
    for p in (2, 3, 5, 7, 11):
        for _ in range(8):
            m = rng.randrange(1, 14)
            n = rng.randrange(1, 14)
            a = np.array([[rng.randrange(p) for _ in range(n)] for _ in range(m)],
                         dtype=np.float64)
            rows, piv = echelon(p, a)
            assert rows.shape[0] == len(piv)
            for i, j in enumerate(piv):
                assert rows[i, j] == 1
                assert np.count_nonzero(rows[:, j]) == 1
            ker = nullspace(p, a)
            if ker.shape[0]:
                assert not np.mod(a @ ker.T, p).any()
            assert ker.shape[0] == n - len(piv)
        for _ in range(6):
            f = [rng.randrange(p) for _ in range(rng.randrange(2, 7))] + [1]
            g = [rng.randrange(p) for _ in range(rng.randrange(2, 7))] + [1]
            q, r = pdivmod(p, pmul(p, f, g), g)
            assert q == pnorm(p, f) and r == []
            fac = poly_factor(p, pmul(p, f, g))
            prod = [1]
            for h, mm in fac:
                for _ in range(mm):
                    prod = pmul(p, prod, h)
            assert prod == pmul(p, f, g)
    # big-degree products go through the FFT branch; crosscheck int convolve
    for p in (2, 7, 11):
        f = [rng.randrange(p) for _ in range(900)] + [1]
        g = [rng.randrange(p) for _ in range(800)] + [1]
        ref = np.mod(np.convolve(np.asarray(f, dtype=np.int64),
                                 np.asarray(g, dtype=np.int64)), p)
        assert pmul(p, f, g) == pnorm(p, ref.tolist())
        q, r = pdivmod(p, pmul(p, f, g), g)
        assert q == pnorm(p, f) and r == []
    # small_factors agrees with poly_factor on the distinct small factors
    for p in (2, 3, 7):
        for _ in range(4):
            f = [1]
            for _ in range(rng.randrange(2, 5)):
                f = pmul(p, f, [rng.randrange(p) for _ in
                                range(rng.randrange(1, 5))] + [1])
            cap = rng.randrange(1, 6)
            want = sorted(tuple(g) for g, _ in poly_factor(p, f)
                          if len(g) - 1 <= cap)
            got = sorted(tuple(g) for g in small_factors(p, f, rng, cap))
            assert got == want, (p, f, cap, got, want)
    # the blocked minpoly agrees with dense-kernel annihilation and rank
    saved_batch = globals()['_MINPOLY_BATCH']
    globals()['_MINPOLY_BATCH'] = 5
    try:
        for p in (2, 5, 11):
            for _ in range(10):
                n = rng.randrange(2, 28)
                w = np.array([[rng.randrange(p) for _ in range(n)]
                              for _ in range(n)], dtype=np.float64)
                v = np.array([rng.randrange(p) for _ in range(n)],
                             dtype=np.float64)
                if not v.any():
                    v[0] = 1
                mp = minpoly_on_vector(p, w, v)
                deg = len(mp) - 1
                kry = np.empty((deg + 1, n))
                x = v.copy()
                for i in range(deg + 1):
                    kry[i] = x
                    x = matmul(p, x.reshape(1, -1), w)[0]
                acc = np.zeros(n)
                for c, row in zip(mp, kry):
                    acc += c * row
                assert not np.mod(acc, p).any()
                assert len(echelon(p, kry)[1]) == deg
    finally:
        globals()['_MINPOLY_BATCH'] = saved_batch
    # x^11 - 1 over F_3: (x-1) times two quintics
    fac = poly_factor(3, [-1] + [0] * 10 + [1])
    assert sorted(len(g) - 1 for g, m in fac) == [1, 5, 5]
    # x^7 - 1 over F_2: (x-1) times two cubics
    fac = poly_factor(2, [1] + [0] * 6 + [1])
    assert sorted(len(g) - 1 for g, m in fac) == [1, 3, 3]
    # inseparable input goes through the p-th power route
    fac = poly_factor(2, pmul(2, [1, 1, 1], [1, 1, 1]))
    assert fac == [([1, 1, 1], 2)]
    # chop the regular module of C7 over F_2: dims 1, 3, 3
    c7 = np.zeros((7, 7))
    for i in range(7):
        c7[i, (i + 1) % 7] = 1
    mod = Module(2, [c7, c7], ('perm', lambda g: g))
    leaves = chop(mod, random.Random(1))
    assert sorted(l.dim for l in leaves) == [1, 3, 3]
    # minpoly of the shift matrix on e_0 is x^5
    sh = np.zeros((5, 5))
    for i in range(4):
        sh[i, i + 1] = 1
    mp = minpoly_on_vector(5, sh, np.array([1., 0, 0, 0, 0]))
    assert mp == [0, 0, 0, 0, 0, 1]
    # quadratic extension: x^2 + t x + 1 over F_4 divides Phi_5, so the
    # companion matrix of Phi_5 has ext nullity 2 there
    assert ext_params(2) == (1, 1)
    comp = np.zeros((4, 4))
    for i in range(3):
        comp[i, i + 1] = 1
    comp[3] = [1, 1, 1, 1]
    c0 = np.mod(comp @ comp + np.identity(4), 2)
    c1 = comp.copy()
    assert ext_nullity(2, (c0, c1)) == 2
    # spin: the all-ones row under C7 spans only the fixed line
    basis, piv = spin(2, np.ones((1, 7)), [c7])
    assert len(piv) == 1
    print("modular selftest ok")


if __name__ == "__main__":
    _selftest()
