#!/usr/bin/env python3
"""Regenerate crates/core/fixtures/expected/*.json by brute force.

Shares no code with the Rust crates. Forms are dicts {bitmask: Fraction};
ranks come from sympy over QQ. Cohomology-level ranks are computed without
choosing representatives: rank L^k = rank[ω^k Z | B] - rank B.

Usage: python3 scripts/brute_force_expectations.py [--check]
"""

import json
import sys
from fractions import Fraction
from itertools import combinations
from math import factorial
from pathlib import Path

import sympy

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "crates" / "core" / "fixtures"
OUT = FIXTURES / "expected"
NAMES = ["torus4", "torus6", "kodaira_thurston", "heis_r2", "solv5", "torus4_z2"]


def bits(b):
    return [i for i in range(32) if b >> i & 1]


def sign_merge(a, b):
    """Sign of e^a ∧ e^b against the sorted blade (0 if they overlap)."""
    if a & b:
        return 0
    inv = 0
    for i in bits(b):
        inv += sum(1 for j in bits(a) if j > i)
    return -1 if inv % 2 else 1


def add(x, y, c=1):
    out = dict(x)
    for k, v in y.items():
        out[k] = out.get(k, 0) + c * v
        if out[k] == 0:
            del out[k]
    return out


def wedge(x, y):
    out = {}
    for a, ca in x.items():
        for b, cb in y.items():
            s = sign_merge(a, b)
            if s:
                out = add(out, {a | b: s * ca * cb})
    return out


def iota(i, x):
    """Contraction with the i-th basis vector."""
    out = {}
    for b, c in x.items():
        if b >> i & 1:
            s = -1 if bin(b & ((1 << i) - 1)).count("1") % 2 else 1
            out = add(out, {b & ~(1 << i): s * c})
    return out


def iota_vec(v, x):
    out = {}
    for i, c in v.items():
        out = add(out, iota(i, x), c)
    return out


def blades(m, k):
    return [sum(1 << i for i in s) for s in combinations(range(m), k)]


def frac(s):
    return Fraction(s)


class Model:
    def __init__(self, spec):
        self.m = m = spec["dim"]
        self.dgen = [{} for _ in range(m)]
        for i, j, k, c in spec["brackets"]:
            i, j, k, c = i - 1, j - 1, k - 1, frac(c)
            if i > j:
                i, j, c = j, i, -c
            self.dgen[k] = add(self.dgen[k], {(1 << i) | (1 << j): -c})
        self.omega = {}
        for i, j, c in spec["omega"]:
            i, j, c = i - 1, j - 1, frac(c)
            if i > j:
                i, j, c = j, i, -c
            self.omega = add(self.omega, {(1 << i) | (1 << j): c})

    def d(self, x):
        out = {}
        for b, c in x.items():
            idx = bits(b)
            for pos, i in enumerate(idx):
                rest = b & ~(1 << i)
                s = -1 if pos % 2 else 1
                term = wedge(self.dgen[i], {rest: Fraction(1)})
                # e^{b} = ± e^i ∧ e^{rest}; d is a derivation.
                lead = sign_merge(1 << i, rest)
                out = add(out, term, s * lead * c)
        return out


def coords(x, m, k):
    return [x.get(b, 0) for b in blades(m, k)]


def rank(cols, rows):
    if not cols:
        return 0
    return sympy.Matrix(rows, len(cols), lambda r, c: cols[c][r]).rank()


def nullspace(cols, rows):
    if not cols:
        return []
    if rows == 0:
        return [[Fraction(int(i == j)) for i in range(len(cols))] for j in range(len(cols))]
    M = sympy.Matrix(rows, len(cols), lambda r, c: cols[c][r])
    return [[Fraction(int(sympy.fraction(v)[0]), int(sympy.fraction(v)[1])) for v in vec] for vec in M.nullspace()]


def combine(coeffs, basis):
    out = {}
    for c, f in zip(coeffs, basis):
        out = add(out, f, c)
    return out


class Star:
    """⋆ξ = ι_{♯ξ} (ω^n/n!) with ♭(v) = ι_v ω, over the span of `comp`."""

    def __init__(self, m, omega, comp):
        self.m = m
        self.n = n = len(comp) // 2
        mu = {0: Fraction(1)}
        for _ in range(n):
            mu = wedge(mu, omega)
        self.mu = {b: c / factorial(n) for b, c in mu.items()}
        self.comp = comp
        self.flat = [iota_vec(v, omega) for v in comp]

    def star(self, x, k):
        if not x:
            return {}
        m = self.m
        subsets = list(combinations(range(len(self.comp)), k))
        cols = []
        for s in subsets:
            f = {0: Fraction(1)}
            for a in s:
                f = wedge(f, self.flat[a])
            cols.append(coords(f, m, k))
        M = sympy.Matrix(len(blades(m, k)), len(cols), lambda r, c: cols[c][r])
        rhs = sympy.Matrix(coords(x, m, k))
        sol, params = M.gauss_jordan_solve(rhs)
        assert not params, "musical map not injective"
        out = {}
        for c, s in zip(sol, subsets):
            if c == 0:
                continue
            y = self.mu
            for a in s:
                y = iota_vec(self.comp[a], y)
            num, den = sympy.fraction(c)
            out = add(out, y, Fraction(int(num), int(den)))
        return out


def complex_data(model, pieces, star_t, top):
    """pieces[k] = list of forms spanning degree k of the complex."""
    m = model.m
    n = top // 2
    out = {"dims": [], "betti": [], "harmonic_dims": [], "representable": []}
    cycles, bounds = [], []
    for k in range(top + 1):
        P = pieces[k]
        dcols = [coords(model.d(f), m, k + 1) for f in P]
        ker = nullspace(dcols, len(blades(m, k + 1)))
        cycles.append([combine(v, P) for v in ker])
        bounds.append([model.d(f) for f in pieces[k - 1]] if k > 0 else [])
    for k in range(top + 1):
        rows = len(blades(m, k))
        rb = rank([coords(f, m, k) for f in bounds[k]], rows)
        betti = len(cycles[k]) - rb
        P = pieces[k]
        # Harmonic: kernel of d and δ = (-1)^k ⋆ d ⋆ on the piece.
        cols = []
        for f in P:
            col = coords(model.d(f), m, k + 1)
            if k > 0:
                dl = star_t.star(model.d(star_t.star(f, k)), top - k + 1)
                col += coords(dl, m, k - 1)
            cols.append(col)
        nrows = len(blades(m, k + 1)) + (len(blades(m, k - 1)) if k > 0 else 0)
        harm = [combine(v, P) for v in nullspace(cols, nrows)]
        img = rank([coords(f, m, k) for f in harm + bounds[k]], rows) - rb
        out["dims"].append(len(P))
        out["betti"].append(betti)
        out["harmonic_dims"].append(len(harm))
        out["representable"].append(img == betti)
    lev = []
    for k in range(n + 1):
        src, tgt = n - k, n + k
        rows = len(blades(m, tgt))
        wk = {0: Fraction(1)}
        for _ in range(k):
            wk = wedge(wk, model.omega)
        rb = rank([coords(f, m, tgt) for f in bounds[tgt]], rows)
        imgs = [coords(wedge(wk, z), m, tgt) for z in cycles[src]]
        r = rank(imgs + [coords(f, m, tgt) for f in bounds[tgt]], rows) - rb
        lev.append({"k": k, "rank": r, "target_dim": out["betti"][tgt]})
    out["lefschetz"] = lev
    out["lefschetz_side"] = all(l["rank"] == l["target_dim"] for l in lev)
    out["harmonic_side"] = all(out["representable"])
    return out


def full_pieces(model):
    m = model.m
    return [[{b: Fraction(1)} for b in blades(model.m, k)] for k in range(m + 1)]


def units(m, idx):
    return [{i: Fraction(1)} for i in idx]


def fmt(c):
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def analyze(spec):
    model = Model(spec)
    m = model.m
    result = {"name": spec["name"]}
    if "foliation" in spec:
        fol = spec["foliation"]
        leaf = [i - 1 for i in fol["leaf_basis"]]
        trans = [i for i in range(m) if i not in leaf]
        pieces = []
        for k in range(len(trans) + 1):
            cands = [{sum(1 << trans[a] for a in s): Fraction(1)} for s in combinations(range(len(trans)), k)]
            cols = []
            for f in cands:
                df = model.d(f)
                col = []
                for l in leaf:
                    col += coords(iota(l, df), m, k)
                cols.append(col)
            ker = nullspace(cols, len(leaf) * len(blades(m, k)))
            pieces.append([combine(v, cands) for v in ker])
        star = Star(m, model.omega, units(m, trans))
        result["primary"] = complex_data(model, pieces, star, len(trans))
        result["primary"]["complex"] = "basic"
        # κ from d_{0,1} χ = κ ∧ χ with χ = e^{leaf} (identity metric fixtures).
        assert all(frac(fol["metric"][i][j]) == (1 if i == j else 0) for i in range(m) for j in range(m))
        lmask = sum(1 << l for l in leaf)
        chi = {lmask: Fraction(fol["chi_sign"])}
        nleaf = lambda b: bin(b & lmask).count("1")
        d01 = {b: c for b, c in model.d(chi).items() if nleaf(b) == len(leaf)}
        kappa = {}
        for b, c in d01.items():
            t = [i for i in bits(b) if i not in leaf][0]
            kappa = add(kappa, {1 << t: c * sign_merge(1 << t, lmask) / chi[lmask]})
        assert add(wedge(kappa, chi), d01, -1) == {}
        kap = [[bits(b)[0] + 1, fmt(c)] for b, c in sorted(kappa.items())]
        # tense: κ basic, i.e. ι_l dκ = 0 (κ already transverse).
        tense = all(not iota(l, model.d(kappa)) for l in leaf)
        result["foliation"] = {"kappa": kap, "minimal": not kappa, "tense": tense}
    else:
        star = Star(m, model.omega, units(m, range(m)))
        result["primary"] = complex_data(model, full_pieces(model), star, m)
        result["primary"]["complex"] = "full"
    if "group" in spec:
        gens = [[[frac(x) for x in row] for row in g] for g in spec["group"]]
        elems = [tuple(tuple(Fraction(int(i == j)) for j in range(m)) for i in range(m))]
        seen = set(elems)
        i = 0
        while i < len(elems):
            x = elems[i]
            i += 1
            for g in gens:
                y = tuple(tuple(sum(x[r][t] * g[t][c] for t in range(m)) for c in range(m)) for r in range(m))
                if y not in seen:
                    seen.add(y)
                    elems.append(y)

        def pull(g, f):
            out = {}
            for b, c in f.items():
                img = {0: Fraction(c)}
                for i in bits(b):
                    img = wedge(img, {1 << j: g[i][j] for j in range(m) if g[i][j] != 0})
                out = add(out, img)
            return out

        pieces = []
        for k in range(m + 1):
            avgs = []
            for b in blades(m, k):
                a = {}
                for g in elems:
                    a = add(a, pull(g, {b: Fraction(1)}), Fraction(1, len(elems)))
                avgs.append(a)
            rows = len(blades(m, k))
            basis = []
            for f in avgs:
                if rank([coords(x, m, k) for x in basis + [f]], rows) > len(basis):
                    basis.append(f)
            pieces.append(basis)
        star = Star(m, model.omega, units(m, range(m)))
        result["invariant"] = complex_data(model, pieces, star, m)
        result["invariant"]["complex"] = "invariant"
        result["invariant"]["group_order"] = len(elems)
    return result


def main():
    check = "--check" in sys.argv
    OUT.mkdir(parents=True, exist_ok=True)
    stale = []
    for name in NAMES:
        spec = json.loads((FIXTURES / f"{name}.json").read_text())
        text = json.dumps(analyze(spec), indent=2, sort_keys=True) + "\n"
        path = OUT / f"{name}.json"
        if check:
            if not path.exists() or path.read_text() != text:
                stale.append(name)
        else:
            path.write_text(text)
            print(f"wrote {path.relative_to(ROOT)}")
    if stale:
        print("stale expectations: " + ", ".join(stale))
        sys.exit(1)


if __name__ == "__main__":
    main()
