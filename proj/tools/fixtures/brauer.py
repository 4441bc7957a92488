"""Builds the modular (Brauer) character tables shipped under data/.

Two routes, both exact:

* p = 7, 11: every block of the group algebra has cyclic defect, so the
  modular characters of the non-projective block follow from a tree that
  is forced to be an open line once conjugation symmetry is taken into
  account. The finitely many line orderings that satisfy the degree
  arithmetic are told apart by chopping explicit permutation and tensor
  modules over F_p and comparing composition factor dimensions. Edge
  values then come from alternating sums of ordinary restrictions, and
  the projective (defect zero) characters are plain restrictions.

* p = 2, 3, 5: simple modules are found by chopping permutation, pair,
  and tensor modules; their characters are solved from modules with
  known character (fixed-point counts and products), and irrational
  entries on split classes are pinned down by eigenvalue multiplicities
  computed as nullities over a master extension field.

Certificates checked before anything is written: block partition via
central characters, linear independence, the count of simples against
the regular class count, and non-negative integral decompositions of
all ordinary characters.
"""

import itertools
import json
import os
import random
import sys
import time
from collections import Counter
from fractions import Fraction

import numpy as np

import modular
from chars import (Table, dict_add, dict_mul, dict_scale, euler_phi,
                   inner, product, adams, reduce_mod_phi)

HERE = os.path.dirname(os.path.abspath(__file__))
OUT = os.path.join(HERE, "out")
DATA = os.path.join(os.path.dirname(os.path.dirname(HERE)), "data")


def log(msg):
    print(f"[{time.strftime('%H:%M:%S')}] {msg}", flush=True)


# ------------------------------------------------------------ group data


def load_group():
    with open(os.path.join(OUT, "group.json")) as f:
        gj = json.load(f)
    with open(os.path.join(OUT, "classes-final.json")) as f:
        cj = json.load(f)
    with open(os.path.join(OUT, "graph.json")) as f:
        gr = json.load(f)
    gens = [np.array(g, dtype=np.int64) for g in gj["generators"]]
    reps = [np.array(r, dtype=np.int64) for r in cj["reps"]]
    adj = np.array([[c == "1" for c in row] for row in gr["adjacency"]])
    return gens, cj, reps, adj


def load_ordinary():
    with open(os.path.join(DATA, "hs.json")) as f:
        hs = json.load(f)
    names = [c["name"] for c in hs["classes"]]
    orders = [c["order"] for c in hs["classes"]]
    sizes = [c["size"] for c in hs["classes"]]
    pm = {p: [names.index(v) for v in [mp[n] for n in names]]
          for p, mp in hs["powermaps"].items()}
    t = Table(names, orders, sizes, pm)
    chars = []
    for ch in hs["characters"]:
        vec = []
        for c, v in enumerate(ch["values"]):
            if isinstance(v, dict):
                vec.append({int(e): Fraction(int(s)) for e, s in v["coeffs"].items()})
            else:
                vec.append({0: Fraction(v)} if v else {})
        chars.append(vec)
    return hs, t, chars


def value_key(vec, t, cols):
    return tuple(tuple(reduce_mod_phi(vec[c], t.orders[c])) for c in cols)


def value_json(v, m):
    red = reduce_mod_phi(v, m)
    assert all(x.denominator == 1 for x in red)
    if all(x == 0 for x in red[1:]):
        return int(red[0])
    return {"conductor": m,
            "coeffs": {str(e): str(int(x)) for e, x in enumerate(red) if x != 0}}


# ------------------------------------------------------ exact linear algebra


def fraction_solve(rows, rhs_list):
    """Solve rows^T x = rhs for several rhs vectors, all over Q.

    rows: list of k coordinate vectors (the basis, length n each);
    rhs_list: list of coordinate vectors length n. Returns a list of
    solutions (length-k tuples) or raises if a system is inconsistent
    or the basis is dependent.
    """
    k = len(rows)
    n = len(rows[0])
    aug = [[Fraction(rows[i][j]) for i in range(k)]
           + [Fraction(rhs[j]) for rhs in rhs_list] for j in range(n)]
    piv_rows = []
    r = 0
    for col in range(k):
        sel = next((i for i in range(r, n) if aug[i][col] != 0), None)
        assert sel is not None, "dependent basis"
        aug[r], aug[sel] = aug[sel], aug[r]
        inv = 1 / aug[r][col]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        piv_rows.append(r)
        r += 1
    for i in range(r, n):
        assert all(x == 0 for x in aug[i][k:]), "inconsistent system"
    sols = []
    for jr in range(len(rhs_list)):
        sols.append(tuple(aug[piv_rows[c]][k + jr] for c in range(k)))
    return sols


def rational_rank(rows):
    mat = [list(map(Fraction, r)) for r in rows]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    col = 0
    for col in range(ncols):
        sel = next((i for i in range(rank, len(mat)) if mat[i][col] != 0), None)
        if sel is None:
            continue
        mat[rank], mat[sel] = mat[sel], mat[rank]
        inv = 1 / mat[rank][col]
        mat[rank] = [x * inv for x in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[rank])]
        rank += 1
    return rank


# ------------------------------------------------------ master field


class MasterField:
    """F_{p^M} containing a root tau of order D, with an embedding of the
    p-regular part of the cyclotomic values: zeta_E^k maps to tau^k where
    E is the group exponent (tau^E = 1 holds because D is the p-regular
    part of E)."""

    def __init__(self, p, exponent, rng=None):
        rng = rng or random.Random(2024)
        d = exponent
        while d % p == 0:
            d //= p
        self.p, self.D, self.E = p, d, exponent
        m = 1
        while pow(p, m, d) != 1:
            m += 1
        self.M = m
        self.h = self._find_irreducible(m, rng)
        self.tau = self._find_order_d(rng)
        self._powers = {0: [1]}

    def _find_irreducible(self, m, rng):
        p = self.p
        mprimes = {q for q in range(2, m + 1) if m % q == 0 and all(
            q % r for r in range(2, q))}
        while True:
            h = [rng.randrange(p) for _ in range(m)] + [1]
            xq = modular.ppowmod(p, [0, 1], p ** m, h)
            if modular.psub(p, xq, [0, 1]):
                continue
            ok = True
            for q in mprimes:
                xq = modular.ppowmod(p, [0, 1], p ** (m // q), h)
                if len(modular.pgcd(p, modular.psub(p, xq, [0, 1]), h)) > 1:
                    ok = False
                    break
            if ok:
                return h

    def mul(self, a, b):
        return modular.pdivmod(self.p, modular.pmul(self.p, a, b), self.h)[1]

    def pow(self, a, e):
        out = [1]
        a = list(a)
        while e:
            if e & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            e >>= 1
        return out

    def _find_order_d(self, rng):
        p, m, d = self.p, self.M, self.D
        total = p ** m - 1
        assert total % d == 0
        dprimes = [q for q in range(2, d + 1) if d % q == 0 and all(
            q % r for r in range(2, q))]
        while True:
            a = [rng.randrange(p) for _ in range(m)]
            if not modular.pnorm(p, a):
                continue
            t = self.pow(a, total // d)
            if t == [1]:
                continue
            if all(self.pow(t, d // q) != [1] for q in dprimes):
                return t

    def tau_power(self, k):
        k %= self.D
        if k not in self._powers:
            self._powers[k] = self.pow(self.tau, k)
        return self._powers[k]

    def embed(self, valdict, m):
        """Image of a conductor-m value dict with integer coefficients."""
        assert self.E % m == 0
        out = []
        step = self.E // m
        for e, c in valdict.items():
            ci = int(c) % self.p
            if ci:
                term = [(x * ci) % self.p for x in self.tau_power(step * e)]
                out = modular.padd(self.p, out, term)
        return tuple(out)


# ------------------------------------------------------ cyclic defect route


def line_candidates(degrees):
    """All orderings (up to reversal) of the given vertex degrees along a
    line such that the peeled edge dimensions stay positive."""
    idxs = list(range(len(degrees)))
    out = []
    seen = set()
    for perm in itertools.permutations(idxs):
        edges = []
        e = 0
        ok = True
        for v in perm[:-1]:
            e = degrees[v] - e
            if e < 1:
                ok = False
                break
            edges.append(e)
        if not ok or edges[-1] != degrees[perm[-1]]:
            continue
        key = min(perm, perm[::-1])
        if key in seen:
            continue
        seen.add(key)
        out.append((list(perm), edges))
    return out


class Candidate:
    """One conjectural line ordering for the non-projective block."""

    def __init__(self, order, edges, vertex_chars):
        self.order = order          # positions into vertex_chars
        self.edge_dims = edges
        last = len(order) - 1
        self.vertex_edges = {}
        for i, v in enumerate(order):
            if i == 0:
                adj = [edges[0]]
            elif i == last:
                adj = [edges[last - 1]]
            else:
                adj = [edges[i - 1], edges[i]]
            self.vertex_edges[vertex_chars[v]] = adj

    def describe(self, degrees):
        return "-".join(str(degrees[v]) for v in self.order)


def build_cyclic_defect_table(p, gens, cj, reps, adj, hs, t, chars):
    names = t.names
    regular = [c for c in range(t.n) if t.orders[c] % p != 0]
    degrees = [int(v[0].get(0, 0)) for v in chars]
    defect0 = [i for i, d in enumerate(degrees) if d % p == 0]
    principal = [i for i in range(24) if i not in defect0]
    log(f"p={p}: {len(defect0)} projective characters, "
        f"{len(principal)} in the non-projective block")

    # the two same-degree characters in the p=11 block agree on regular
    # classes and share one tree vertex; collapse them for the arithmetic
    vertex_chars = []
    seen_deg = {}
    collapsed = {}
    for i in principal:
        d = degrees[i]
        if d in seen_deg and p == 11:
            collapsed[i] = seen_deg[d]
            for c in regular:
                assert (reduce_mod_phi(chars[i][c], t.orders[c])
                        == reduce_mod_phi(chars[seen_deg[d]][c], t.orders[c]))
            continue
        seen_deg[d] = i
        vertex_chars.append(i)
    vdegs = [degrees[i] for i in vertex_chars]

    cands = [Candidate(o, e, vertex_chars) for o, e in line_candidates(vdegs)]
    log(f"p={p}: vertex degrees {vdegs}, {len(cands)} line orderings")
    assert len(cands) == (8 if p == 7 else 4)

    # block certificate: central characters agree exactly on the block
    mf = MasterField(p, hs["exponent"])
    omega = []
    for i in range(24):
        row = []
        for c in range(t.n):
            w = dict_scale(chars[i][c], Fraction(t.sizes[c], degrees[i]))
            red = reduce_mod_phi(w, t.orders[c])
            assert all(x.denominator == 1 for x in red)
            row.append(mf.embed({e: x for e, x in enumerate(red)}, t.orders[c]))
        omega.append(tuple(row))
    blocks = {}
    for i in range(24):
        blocks.setdefault(omega[i], []).append(i)
    blocksets = sorted(blocks.values())
    assert sorted(principal) in blocksets
    for i in defect0:
        assert [i] in blocksets
    log(f"p={p}: central characters certify the block partition")

    # peeled edge values per candidate, as exact dicts on regular classes
    def edge_values(cand):
        vals = []
        acc = None
        for k, v in enumerate(cand.order[:-1]):
            ci = vertex_chars[v]
            if acc is None:
                acc = {c: dict(chars[ci][c]) for c in regular}
            else:
                acc = {c: dict_add(chars[ci][c], dict_scale(acc[c], -1))
                       for c in regular}
            vals.append({c: dict(acc[c]) for c in regular})
        return vals

    for cand in cands:
        cand.values = edge_values(cand)
        for k, dim in enumerate(cand.edge_dims):
            assert int(cand.values[k][0].get(0, 0)) == dim

    defect0_set = set(defect0)

    def predicted(cand, content):
        """Composition dimension multiset of a module whose ordinary
        character content (multiplicity per ordinary index) is known."""
        out = Counter()
        for i, mult in enumerate(content):
            if not mult:
                continue
            j = collapsed.get(i, i)
            if j in defect0_set:
                out[degrees[j]] += mult
            else:
                for dim in cand.vertex_edges[j]:
                    out[dim] += mult
        return out

    # module builders over F_p
    npts = adj.shape[0]
    edge_list = [(i, j) for i in range(npts) for j in range(i + 1, npts) if adj[i, j]]
    non_list = [(i, j) for i in range(npts) for j in range(i + 1, npts)
                if i != j and not adj[i, j]]
    e_index = {e: k for k, e in enumerate(edge_list)}
    n_index = {e: k for k, e in enumerate(non_list)}

    def act_points(g):
        return g

    def act_pairs(index, pairs):
        def act(g):
            out = np.empty(len(pairs), dtype=np.int64)
            for k, (i, j) in enumerate(pairs):
                a, b = int(g[i]), int(g[j])
                out[k] = index[(a, b) if a < b else (b, a)]
            return out
        return act

    act_edges = act_pairs(e_index, edge_list)
    act_non = act_pairs(n_index, non_list)

    def perm_content(fixes):
        vec = [{0: Fraction(f)} for f in fixes]
        return [int(inner(t, vec, chars[i])) for i in range(24)]

    def fixes_of(act):
        out = []
        for r in reps:
            img = act(r)
            out.append(int(np.count_nonzero(img == np.arange(len(img)))))
        return out

    def product_content(i, j):
        prod = product(t, chars[i], chars[j])
        con = [inner(t, prod, chars[k]) for k in range(24)]
        con = [int(x) for x in con]
        assert sum(c * degrees[k] for k, c in enumerate(con)) == degrees[i] * degrees[j]
        return con

    found_leaves = {}

    def run_witness(label, module, alternatives, alive, stop_early=False):
        """Chop `module`; return the candidates consistent with the result."""
        log(f"p={p}: chopping {label} (dim {module.dim}, "
            f"{len(alive)} candidates alive)")
        preds = {}
        for cand in alive:
            preds[id(cand)] = [predicted(cand, alt) for alt in alternatives]
        observed = Counter()
        current = set(id(c) for c in alive)

        def hook(leaf):
            observed[leaf.dim] += 1
            still = set()
            for cand in alive:
                if any(all(observed[d] <= pr[d] for d in observed)
                       for pr in preds[id(cand)]):
                    still.add(id(cand))
            current.clear()
            current.update(still)
            assert current, f"no candidate matches {label}: {dict(observed)}"
            if stop_early and len(current) == 1:
                raise modular.StopChop

        leaves = modular.chop(module, random.Random(1000 + p),
                              leaf_hook=hook, keep_action=False)
        for l in leaves:
            found_leaves.setdefault((label, l.dim), l)
        if len(current) > 1:
            # chop ran to completion; require exact multiset equality
            still = []
            for cand in alive:
                if any(pr == observed for pr in preds[id(cand)]):
                    still.append(cand)
            assert still, f"no candidate matches completed {label}: {dict(observed)}"
            out = still
        else:
            out = [c for c in alive if id(c) in current]
        log(f"p={p}: {label} factors {sorted(observed.elements())}, "
            f"{len(out)} candidates remain")
        return out

    alive = list(cands)
    fix100 = fixes_of(act_points)
    content100 = perm_content(fix100)
    m100 = modular.make_perm_module(p, npts, act_points, gens)
    alive = run_witness("perm100", m100, [content100], alive)

    if p == 7:
        plan = ["perm1100", "perm3850", "tensor77x154"]
    else:
        plan = ["tensor22x22", "tensor22xmid", "tensor22x154"]

    for label in plan:
        if len(alive) == 1:
            break
        if label == "perm1100":
            content = perm_content(fixes_of(act_edges))
            module = modular.make_perm_module(p, 1100, act_edges, gens)
            alts = [content]
        elif label == "perm3850":
            content = perm_content(fixes_of(act_non))
            module = modular.make_perm_module(p, 3850, act_non, gens)
            alts = [content]
        elif label == "tensor22x22":
            module = modular.make_kron_module(p, found_leaves[("perm100", 22)],
                                              found_leaves[("perm100", 22)])
            alts = [product_content(1, 1)]
        elif label == "tensor22xmid":
            # multiply the projective 22 onto the piece the 484 left at the
            # degree-175 vertex; both outcomes supply a projective 154 whose
            # own 22-tensor separates the remaining orderings
            v22 = found_leaves[("perm100", 22)]
            if ("tensor22x22", 175) in found_leaves:
                module = modular.make_kron_module(p, v22,
                                                  found_leaves[("tensor22x22", 175)])
                alts = [product_content(1, 6)]
            else:
                module = modular.make_kron_module(p, v22,
                                                  found_leaves[("tensor22x22", 174)])
                # the 174 has Brauer character chi7 minus chi1 on regular
                # classes, so the tensor content is chi2*chi7 less chi2
                con = list(product_content(1, 6))
                assert con[1] == 1
                con[1] -= 1
                alts = [con]
        elif label == "tensor22x154":
            module = modular.make_kron_module(p, found_leaves[("perm100", 22)],
                                              found_leaves[("tensor22xmid", 154)])
            alts = [product_content(1, 3), product_content(1, 4)]
        elif label == "tensor77x154":
            # the degree-154 leaf of the 3850-point module is its unique
            # projective piece of that degree, so the tensor content is
            # the ordinary product of the 77 and that 154
            v154 = found_leaves[("perm3850", 154)]
            v77 = found_leaves[("perm100", 77)]
            module = modular.make_kron_module(p, v77, v154)
            alts = [product_content(2, 5)]
        else:
            raise AssertionError(label)
        stop_early = label in ("perm1100", "tensor22x154", "tensor77x154")
        alive = run_witness(label, module, alts, alive, stop_early)

    assert len(alive) == 1, [c.describe(vdegs) for c in alive]
    cand = alive[0]
    log(f"p={p}: line settled: {cand.describe(vdegs)} with edges {cand.edge_dims}")

    # assemble the table: projective restrictions plus the peeled edges
    rows = []
    for i in defect0:
        rows.append({c: dict(chars[i][c]) for c in regular})
    rows.extend(cand.values)
    assert len(rows) == len(regular)

    # the trivial modular character is the edge at the trivial vertex
    triv = [r for r in rows if all(
        reduce_mod_phi(r[c], t.orders[c]) == reduce_mod_phi({0: Fraction(1)}, t.orders[c])
        for c in regular)]
    assert len(triv) == 1

    # linear independence over Q
    coord_rows = []
    for r in rows:
        cr = []
        for c in regular:
            cr.extend(reduce_mod_phi(r[c], t.orders[c]))
        coord_rows.append(cr)
    assert rational_rank(coord_rows) == len(rows)

    # every ordinary character decomposes non-negatively and integrally
    rhs = []
    for i in range(24):
        cr = []
        for c in regular:
            cr.extend(reduce_mod_phi(chars[i][c], t.orders[c]))
        rhs.append(cr)
    sols = fraction_solve(coord_rows, rhs)
    for i, sol in enumerate(sols):
        for x in sol:
            assert x.denominator == 1 and x >= 0, (i, sol)
    log(f"p={p}: decomposition certificate holds for all 24 ordinaries")

    emit_brauer_table(p, t, regular, rows)
    return rows


def emit_brauer_table(p, t, regular, rows):
    def degree_of(r):
        return int(r[0].get(0, 0))

    def sort_key(r):
        return (degree_of(r), value_key(r, t, regular))

    rows = sorted(rows, key=sort_key)
    table = {
        "group": "HS",
        "prime": p,
        "characters": [
            {"name": f"chi{k + 1}",
             "values": {t.names[c]: value_json(r[c], t.orders[c]) for c in regular}}
            for k, r in enumerate(rows)
        ],
    }
    path = os.path.join(DATA, f"hs-mod{p}.json")
    with open(path, "w") as f:
        json.dump(table, f)
    log(f"p={p}: wrote {path} ({len(rows)} characters)")


def main():
    stages = sys.argv[1:] or ["hs7", "hs11"]
    modular.VERBOSE_MIN = 3000
    gens, cj, reps, adj = load_group()
    hs, t, chars = load_ordinary()
    assert [c["name"] for c in hs["classes"]] == cj["names"]
    for stage in stages:
        if stage == "hs7":
            build_cyclic_defect_table(7, gens, cj, reps, adj, hs, t, chars)
        elif stage == "hs11":
            build_cyclic_defect_table(11, gens, cj, reps, adj, hs, t, chars)
        else:
            raise SystemExit(f"unknown stage {stage}")


if __name__ == "__main__":
    main()
