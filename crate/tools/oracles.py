#!/usr/bin/env python3
"""Brute-force reference values for the test fixtures.

Everything here is computed from first principles (explicit matrices,
permutations, residue rings and exhaustive scans), independently of the Rust
crates. Run from the repository root:

    python3 tools/oracles.py > crates/core/tests/fixtures/derived.json
"""

import itertools
import json
from math import gcd

import sympy as sp

# ---------------------------------------------------------------- groups


def closure(gens, mul, ident):
    elems = [ident]
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in seen:
                    seen.add(y)
                    elems.append(y)
                    nxt.append(y)
        frontier = nxt
    return elems


def table_group(elems, mul):
    idx = {e: i for i, e in enumerate(elems)}
    return [[idx[mul(a, b)] for b in elems] for a in elems]


# 2x2 matrices over Gaussian integers, entries as (re, im)
def cmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def cadd(a, b):
    return (a[0] + b[0], a[1] + b[1])


def mmul(x, y):
    return tuple(
        tuple(
            cadd(cmul(x[i][0], y[0][j]), cmul(x[i][1], y[1][j]))
            for j in range(2)
        )
        for i in range(2)
    )


def mat(rows):
    return tuple(tuple((c, 0) if isinstance(c, int) else c for c in r) for r in rows)


ID2 = mat([[1, 0], [0, 1]])
Q8_GENS = [mat([[(0, 1), 0], [0, (0, -1)]]), mat([[0, 1], [-1, 0]])]
D4_GENS = [mat([[0, -1], [1, 0]]), mat([[1, 0], [0, -1]])]


def perm_mul(a, b):
    # apply b first, then a
    return tuple(a[b[i]] for i in range(len(a)))


def groups():
    out = {}
    out["C4"] = [[(a + b) % 4 for b in range(4)] for a in range(4)]
    q8 = closure(Q8_GENS, mmul, ID2)
    out["Q8"] = table_group(q8, mmul)
    d4 = closure(D4_GENS, mmul, ID2)
    out["D4"] = table_group(d4, mmul)
    s3 = list(itertools.permutations(range(3)))
    out["S3"] = table_group(s3, perm_mul)
    rot = tuple((i + 1) % 6 for i in range(6))
    ref = tuple((-i) % 6 for i in range(6))
    d6 = closure([rot, ref], perm_mul, tuple(range(6)))
    out["D6"] = table_group(d6, perm_mul)
    # affine maps x -> u x + t on Z/8 with u in {1, 3}
    a = tuple((x + 1) % 8 for x in range(8))
    b = tuple((3 * x) % 8 for x in range(8))
    sd16 = closure([a, b], perm_mul, tuple(range(8)))
    out["SD16"] = table_group(sd16, perm_mul)
    s4 = list(itertools.permutations(range(4)))
    out["S4"] = table_group(s4, perm_mul)
    return out, {"Q8": q8, "D4": d4}


def identity_of(t):
    n = len(t)
    return next(e for e in range(n) if all(t[e][x] == x for x in range(n)))


def inverse(t, x):
    e = identity_of(t)
    return next(y for y in range(len(t)) if t[x][y] == e)


def is_group(t):
    n = len(t)
    for a, b, c in itertools.product(range(n), repeat=3):
        if t[t[a][b]][c] != t[a][t[b][c]]:
            return False
    e = identity_of(t)
    return all(any(t[x][y] == e for y in range(n)) for x in range(n))


def class_sizes(t):
    n = len(t)
    seen = set()
    sizes = []
    for x in range(n):
        if x in seen:
            continue
        cls = {t[t[g][x]][inverse(t, g)] for g in range(n)}
        seen |= cls
        sizes.append(len(cls))
    return sorted(sizes)


def is_subgroup(t, s):
    return all(t[a][b] in s for a in s for b in s)


def index_two_count(t):
    n = len(t)
    if n <= 16:
        count = 0
        for sub in itertools.combinations(range(n), n // 2):
            if identity_of(t) in sub and is_subgroup(t, set(sub)):
                count += 1
        return count
    # larger groups: index-2 subgroups contain every square, so they are the
    # hyperplanes of the elementary abelian quotient by the squares
    squares = {t[x][x] for x in range(n)}
    sq = set(squares)
    while True:
        grown = sq | {t[a][b] for a in sq for b in sq}
        if grown == sq:
            break
        sq = grown
    r = (n // len(sq)).bit_length() - 1
    return 2**r - 1


def element_orders(t):
    e = identity_of(t)
    out = []
    for x in range(len(t)):
        k, y = 1, x
        while y != e:
            y = t[y][x]
            k += 1
        out.append(k)
    return out


# ------------------------------------------------- characters and forms


def to_sp(c):
    return sp.Integer(c[0]) + sp.I * sp.Integer(c[1])


def sp_mat(m):
    return sp.Matrix(2, 2, lambda i, j: to_sp(m[i][j]))


def trace_by_class(elems):
    # classes of Q8: 1, -1, {±i}, {±j}, {±k}
    tr = [sp.simplify(sp_mat(m).trace()) for m in elems]
    return tr


def invariant_form_dim(elems):
    b = sp.Matrix(2, 2, sp.symbols("b0:4"))
    eqs = []
    for m in elems:
        g = sp_mat(m)
        eqs.extend(list(g.T * b * g - b))
    sol = sp.linsolve(eqs, list(b))
    (vec,) = sol
    free = set().union(*[sp.sympify(v).free_symbols for v in vec])
    gram = sp.Matrix(2, 2, list(vec))
    sym = "symmetric" if sp.simplify(gram - gram.T) == sp.zeros(2) else (
        "alternating" if sp.simplify(gram + gram.T) == sp.zeros(2) else "neither"
    )
    return len(free), sym


def zeta(k, n):
    return sp.exp(2 * sp.pi * sp.I * sp.Rational(k % n, n))


def indicators(t, h):
    """Frobenius-Schur and twisted indicators of the linear characters of a
    cyclic subgroup `h` of index 2."""
    n = len(h)
    orders = element_orders(t)
    gen = next(x for x in h if orders[x] == n)
    logs = {}
    y = identity_of(t)
    for k in range(n):
        logs[y] = k
        y = t[y][gen]
    outside = [g for g in range(len(t)) if g not in h]
    out = []
    for j in range(n):
        chi = lambda x: zeta(j * logs[x], n)
        fs = sp.nsimplify(sp.simplify(sum(chi(t[x][x]) for x in h) / n))
        tw = sp.nsimplify(sp.simplify(sum(chi(t[g][g]) for g in outside) / n))
        out.append([int(fs), int(tw)])
    return sorted(out)


def s3_regular_decomposition():
    perms = list(itertools.permutations(range(3)))

    def sign(p):
        s = 1
        for i in range(3):
            for j in range(i + 1, 3):
                if p[i] > p[j]:
                    s = -s
        return s

    triv = [1 for _ in perms]
    sgn = [sign(p) for p in perms]
    fixed = [sum(p[i] == i for i in range(3)) for p in perms]
    std = [f - 1 for f in fixed]
    reg = [6 if p == (0, 1, 2) else 0 for p in perms]
    inner = lambda a, b: sp.Rational(sum(x * y for x, y in zip(a, b)), 6)
    return sorted(int(inner(reg, c)) for c in (triv, sgn, std))


# ------------------------------------------------------------ local


def legendre(a, p):
    return sp.legendre_symbol(a % p, p) if a % p else 0


def least_nonresidue(p):
    return next(n for n in range(2, p) if legendre(n, p) == -1)


class Ring:
    """O_K / P_K^k as pairs (a mod ma, b mod mb) with g^2 = d."""

    def __init__(self, p, d, ka, kb, ramified):
        self.p, self.d = p, d
        self.ma, self.mb = p**ka, p**kb
        self.ramified = ramified

    def mul(self, x, y):
        a = (x[0] * y[0] + x[1] * y[1] * self.d) % self.ma
        b = (x[0] * y[1] + x[1] * y[0]) % self.mb
        return (a, b)

    def one(self):
        return (1 % self.ma, 0)

    def is_unit(self, x):
        if self.ramified or self.mb == 1:
            return x[0] % self.p != 0
        return (x[0] ** 2 - self.d * x[1] ** 2) % self.p != 0

    def units(self):
        return [
            (a, b)
            for a in range(self.ma)
            for b in range(self.mb)
            if self.is_unit((a, b))
        ]

    def pow(self, x, e):
        acc = self.one()
        for _ in range(e):
            acc = self.mul(acc, x)
        return acc


def ring_for(p, kind, k):
    if kind == "base":
        return Ring(p, 0, k, 0, False)
    if kind == "unramified":
        return Ring(p, least_nonresidue(p), k, k, False)
    d = p if kind == "ramified_pi" else p * least_nonresidue(p)
    return Ring(p, d, (k + 1) // 2, k // 2, True)


def primary_orders(ring):
    units = ring.units()
    n = len(units)
    out = []
    for ell in sp.factorint(n):
        counts = [1]
        k = 1
        while True:
            c = sum(1 for x in units if ring.pow(x, ell**k) == ring.one())
            counts.append(c)
            if c == counts[-2] and k > 1:
                break
            k += 1
        # cyclic factors of order >= ell^k
        ge = [round(sp.log(counts[i] // counts[i - 1], ell)) for i in range(1, len(counts))]
        for i, m in enumerate(ge):
            nxt = ge[i + 1] if i + 1 < len(ge) else 0
            out.extend([ell ** (i + 1)] * (m - nxt))
    return sorted(out)


def cyclic_generator(ring):
    units = ring.units()
    n = len(units)
    for x in units:
        if all(ring.pow(x, n // q) != ring.one() for q in sp.factorint(n)):
            return x, n
    return None, n


def dlog_table(ring, g, n):
    table = {}
    y = ring.one()
    for k in range(n):
        table[y] = k
        y = ring.mul(y, g)
    return table


def conductor_counts(p):
    ring = ring_for(p, "base", 2)
    g, n = cyclic_generator(ring)
    logs = dlog_table(ring, g, n)
    principal = [x for x in ring.units() if x[0] % p == 1]
    counts = [0, 0, 0]
    for k in range(n):
        if k == 0:
            counts[0] += 1
        elif all((k * logs[x]) % n == 0 for x in principal):
            counts[1] += 1
        else:
            counts[2] += 1
    return counts


def frobenius_exponent(p):
    ring = ring_for(p, "unramified", 1)
    g, n = cyclic_generator(ring)
    sig = (g[0], (-g[1]) % ring.mb)
    return next(j for j in range(n) if ring.pow(g, j) == sig)


def unramified_tame_conj_symplectic(p):
    """Unit-part orders of conjugate-symplectic characters of E^x, E/Q_p
    unramified, trivial on 1 + P_E, with value at p in the fourth roots of
    unity. Characters: mu(g) = zeta_n^k, mu(p) = i^w."""
    ring = ring_for(p, "unramified", 1)
    g, n = cyclic_generator(ring)
    logs = dlog_table(ring, g, n)
    sig = logs[(g[0], (-g[1]) % ring.mb)]
    out = []
    for k in range(n):
        for w in range(4):
            # mu * mu^sigma = 1 on units and at p (sigma fixes p)
            if (k + k * sig) % n or (2 * w) % 4:
                continue
            # restriction to F: units trivial (eta unramified), p -> -1
            if any((k * logs[(a, 0)]) % n for a in range(1, p)):
                continue
            if w != 2:
                continue
            out.append(n // gcd(k, n))
    return sorted(out)


def ramified_conj_symplectic_conductors(p, kind):
    """Conductors a_E of conjugate-symplectic characters of a ramified E with
    a_E <= 2 and value at the uniformizer in the fourth roots of unity."""
    ring = ring_for(p, kind, 2)
    g, n = cyclic_generator(ring)
    logs = dlog_table(ring, g, n)
    sig = logs[(g[0], (-g[1]) % ring.mb)]
    minus_one = logs[((-1) % ring.ma, 0)]
    u0 = ring.d // p
    u0_inv = pow(u0, -1, p)
    # eta_{E/F}: Legendre on units; at p determined by N(g) = -d being a norm
    eta_p = legendre(-u0, p)
    principal = [x for x in ring.units() if x[0] % p == 1]
    conds = set()
    for k in range(n):
        for w in range(4):
            mu_unit = lambda x: (k * logs[x]) % n
            # mu(g) mu(-g) = mu(-1) mu(g)^2 = 1, in units of 1/(4n)
            if (4 * mu_unit(((-1) % ring.ma, 0)) + 2 * w * n) % (4 * n):
                continue
            if (k + k * sig) % n:
                continue
            # restriction to F units is the Legendre symbol
            ok = True
            for a in range(1, p):
                val = (2 * mu_unit((a, 0))) % (2 * n)
                want = 0 if legendre(a, p) == 1 else n
                if val != want:
                    ok = False
            if not ok:
                continue
            # mu(p) = mu(g)^2 mu(u0^{-1}) = eta(p)
            val = (2 * w * n + 4 * mu_unit((u0_inv, 0))) % (4 * n)
            want = 0 if eta_p == 1 else 2 * n
            if val != want:
                continue
            if k == 0:
                conds.add(0)
            elif all((k * logs[x]) % n == 0 for x in principal):
                conds.add(1)
            else:
                conds.add(2)
    del minus_one
    return sorted(conds)


def root_label(v):
    """Label of a fourth root of unity in the crate's display format."""
    v = sp.nsimplify(sp.simplify(v))
    return {1: "1", -1: "-1", sp.I: "z4^1", -sp.I: "z4^3"}[v]


def tame_quadratic_epsilon(p, at_pi):
    """epsilon(chi, psi0) for chi = Legendre on units, chi(p) = at_pi:
    p^{-1/2} sum_u chi^{-1}(u/p) psi0(u/p)."""
    s = sum(legendre(u, p) * at_pi * zeta(u, p) for u in range(1, p))
    return root_label(sp.expand_complex(s) / sp.sqrt(p))


def ramified_lambda(p, kind):
    """lambda(E/F, psi0) = epsilon(eta, psi0) for ramified E."""
    u0 = 1 if kind == "ramified_pi" else least_nonresidue(p)
    eta_p = legendre(-u0, p)
    return tame_quadratic_epsilon(p, eta_p)


# ------------------------------------------------------------ main


def main():
    tables, mats = groups()
    out = {"groups": {}, "characters": {}, "local": {}}
    for name, t in tables.items():
        out["groups"][name] = {
            "order": len(t),
            "index_two": index_two_count(t),
            "class_sizes": class_sizes(t),
        }
    out["groups"]["Q8"]["valid"] = is_group(tables["Q8"])

    q8 = mats["Q8"]
    tr = [int(x) for x in trace_by_class(q8)]
    out["characters"]["q8_two_dim_trace_multiset"] = sorted(tr)
    out["characters"]["q8_two_dim_norm"] = int(sp.Rational(sum(x * x for x in tr), 8))
    out["characters"]["q8_two_dim_fs"] = int(sp.Rational(sum(int(sp_mat(mmul(m, m)).trace()) for m in q8), 8))
    out["characters"]["q8_two_dim_forms"] = list(invariant_form_dim(q8))
    out["characters"]["d4_two_dim_forms"] = list(invariant_form_dim(mats["D4"]))
    out["characters"]["s3_regular"] = s3_regular_decomposition()

    orders = {n: element_orders(t) for n, t in tables.items()}
    ind = {}
    for gname, hord in [("Q8", 4), ("D4", 4), ("C4", 2)]:
        t = tables[gname]
        for sub in itertools.combinations(range(len(t)), len(t) // 2):
            s = set(sub)
            if identity_of(t) in s and is_subgroup(t, s) and any(orders[gname][x] == hord for x in s):
                ind[gname] = indicators(t, sorted(s))
                break
    out["characters"]["cyclic_index_two_indicators"] = ind

    loc = out["local"]
    loc["unit_orders"] = {
        "base_p5_k3": primary_orders(ring_for(5, "base", 3)),
        "base_p7_k2": primary_orders(ring_for(7, "base", 2)),
        "unramified_p3_k2": primary_orders(ring_for(3, "unramified", 2)),
        "ramified_pi_p3_k4": primary_orders(ring_for(3, "ramified_pi", 4)),
        "ramified_upi_p5_k3": primary_orders(ring_for(5, "ramified_upi", 3)),
    }
    loc["conductor_counts"] = {str(p): conductor_counts(p) for p in (3, 5, 7)}
    loc["frobenius_exponent"] = {str(p): frobenius_exponent(p) for p in (3, 5, 7)}
    loc["unramified_tame_conj_symplectic_p3"] = unramified_tame_conj_symplectic(3)
    loc["ramified_conj_symplectic_conductors"] = {
        f"{kind}_p{p}": ramified_conj_symplectic_conductors(p, kind)
        for p in (3, 5)
        for kind in ("ramified_pi", "ramified_upi")
    }
    loc["tame_quadratic_epsilon"] = {
        f"p{p}_pi{w}": tame_quadratic_epsilon(p, w) for p in (3, 5) for w in (1, -1)
    }
    loc["ramified_lambda"] = {
        f"{kind}_p{p}": ramified_lambda(p, kind)
        for p in (3, 5)
        for kind in ("ramified_pi", "ramified_upi")
    }
    print(json.dumps(out, indent=1, sort_keys=True))


if __name__ == "__main__":
    main()
