#!/usr/bin/env python3
"""Regenerates the shipped basis fixtures.

Newforms of levels 26 and 52 in weight 2 are the L-series of the elliptic
curves 26a1, 26b1 and 52a1 (Cremona labels); their coefficients are obtained
here by point counting, independently of the C++ library. The integral bases
are the saturation of the span of newforms and their images under q -> q^2.

Level one bases in weights 12..26 are the products Delta^j E_4^a E_6^b with
4a + 6b = k - 12j, j = 1..dim; they are unitriangular in q^1..q^dim, hence a
Z-basis of the integral lattice.
"""
import argparse
import os
from sympy import Matrix, factorint, primerange

CURVES = {
    "26a": [1, 0, 1, -5, -8],
    "26b": [1, -1, 1, -3, 3],
    "52a": [0, 0, 0, 1, -10],
}
CONDUCTOR = {"26a": 26, "26b": 26, "52a": 52}


def count_ap(ainv, p):
    a1, a2, a3, a4, a6 = ainv
    count = 1
    for x in range(p):
        rhs = x**3 + a2 * x * x + a4 * x + a6
        b = a1 * x + a3
        if p == 2:
            count += sum(1 for y in range(2) if (y * y + b * y - rhs) % 2 == 0)
        else:
            # y^2 + b*y = rhs  <=>  (2y + b)^2 = 4*rhs + b^2
            disc = (4 * rhs + b * b) % p
            count += 1 if disc == 0 else (2 if pow(disc, (p - 1) // 2, p) == 1 else 0)
    return p + 1 - count


def newform(name, bound):
    ainv = CURVES[name]
    level = CONDUCTOR[name]
    ap = {p: count_ap(ainv, p) for p in primerange(2, bound + 1)}
    a = [0] * (bound + 1)
    a[1] = 1
    prime_power = {}
    for p in ap:
        vals = [1, ap[p]]
        while p ** len(vals) <= bound:
            if level % p == 0:
                vals.append(vals[-1] * ap[p])
            else:
                vals.append(ap[p] * vals[-1] - p * vals[-2])
        prime_power[p] = vals
    for n in range(2, bound + 1):
        value = 1
        for p, e in factorint(n).items():
            value *= prime_power[p][e]
        a[n] = value
    return a


def shift(a, d):
    out = [0] * len(a)
    for n in range(1, len(a)):
        if n % d == 0:
            out[n] = a[n // d]
    return out


def saturate(rows):
    """Saturates the Z-span of integer rows inside Z^B."""
    rows = [list(r) for r in rows]
    changed = True
    while changed:
        changed = False
        m = Matrix([r[:40] for r in rows])
        # index divides any nonzero maximal minor
        pivots = m.rref()[1]
        det = abs(m.extract(list(range(len(rows))), list(pivots)).det())
        for p in factorint(det):
            kernel = _left_kernel_mod_p(rows, p)
            if kernel:
                c = kernel[0]
                new = [sum(ci * r[j] for ci, r in zip(c, rows)) for j in range(len(rows[0]))]
                assert all(x % p == 0 for x in new)
                idx = max(i for i, ci in enumerate(c) if ci % p)
                rows[idx] = [x // p for x in new]
                changed = True
                break
    return rows


def _left_kernel_mod_p(rows, p):
    n = len(rows)
    cols = len(rows[0])
    # augmented [A | I] mod p, row-reduce on A part
    aug = [[x % p for x in rows[i]] + [1 if j == i else 0 for j in range(n)] for i in range(n)]
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, n) if aug[i][c]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = pow(aug[r][c], -1, p)
        aug[r] = [x * inv % p for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [(x - f * y) % p for x, y in zip(aug[i], aug[r])]
        r += 1
        if r == n:
            break
    return [row[cols:] for row in aug[r:]]


def mul(a, b):
    n = min(len(a), len(b))
    out = [0] * n
    for i, x in enumerate(a[:n]):
        if x:
            for j in range(n - i):
                out[i + j] += x * b[j]
    return out


def power(a, e):
    out = [1] + [0] * (len(a) - 1)
    for _ in range(e):
        out = mul(out, a)
    return out


def eisenstein(k, bound, factor):
    return [1] + [factor * sum(d ** (k - 1) for d in range(1, n + 1) if n % d == 0) for n in range(1, bound + 1)]


def delta(bound):
    a = [0, 1] + [0] * (bound - 1)
    for n in range(1, bound + 1):
        factor = [1] + [0] * bound
        factor[n] = -1
        a = mul(a, power(factor, 24))
    return a


def level_one_basis(k, bound):
    e4 = eisenstein(4, bound, 240)
    e6 = eisenstein(6, bound, -504)
    d = delta(bound)
    rows = []
    j = 1
    while 12 * j <= k:
        rest = k - 12 * j
        choice = next(((a, b) for b in range(rest // 6 + 1) for a in [(rest - 6 * b) // 4]
                       if 4 * a + 6 * b == rest and a >= 0), None)
        if choice is None:
            break
        a, b = choice
        rows.append(mul(mul(power(d, j), power(e4, a)), power(e6, b)))
        j += 1
    return rows


def write_space(path, level, weight, trunc, rows, note):
    with open(path, "w") as out:
        out.write(f"# {note}\n")
        out.write(f"space level={level} weight={weight} group=g0 char=none trunc={trunc} coeffring=int\n")
        for r in rows:
            out.write(",".join(str(x) for x in r[1 : trunc + 1]) + "\n")


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--out", default=os.path.join(os.path.dirname(__file__), "..", "..", "fixtures"))
    parser.add_argument("--trunc", type=int, default=600)
    parser.add_argument("--level-one-trunc", type=int, default=200)
    args = parser.parse_args()
    B = args.trunc
    os.makedirs(args.out, exist_ok=True)

    g1 = newform("26a", B)
    g = newform("26b", B)
    f = newform("52a", B)
    gt = [x if n % 2 else 0 for n, x in enumerate(g)]

    basis26 = saturate([g, g1])
    basis52 = saturate([f, g, shift(g, 2), g1, shift(g1, 2)])
    for name, rows in (("26", basis26), ("52", basis52)):
        print(name, "rows:")
        for r in rows:
            print("  ", r[1:20])
    write_space(os.path.join(args.out, "S_2_G0_26.basis"), 26, 2, B, basis26,
                "saturated integral basis of S_2(Gamma0(26)); newforms 26a, 26b")
    write_space(os.path.join(args.out, "S_2_G0_52.basis"), 52, 2, B, basis52,
                "saturated integral basis of S_2(Gamma0(52))")
    write_space(os.path.join(args.out, "newforms_26_52.forms"), 52, 2, B, [f, g, g1],
                "normalized newforms: 52a (f), 26b (g), 26a (g1)")
    write_space(os.path.join(args.out, "gtilde_52.forms"), 52, 2, B, [gt],
                "odd-index part of 26b, an eigenform in S_2(Gamma0(52))")

    for k in (12, 16, 18, 20, 22, 24, 26):
        rows = level_one_basis(k, args.level_one_trunc)
        write_space(os.path.join(args.out, f"S_{k}_G0_1.basis"), 1, k, args.level_one_trunc, rows,
                    f"integral basis of S_{k}(SL2(Z)): Delta^j E4^a E6^b")


if __name__ == "__main__":
    main()
