#!/usr/bin/env python3
"""Brute-force reference values for the reflexorb test suite.

Everything here is computed by direct enumeration with Python integers and
fractions, sharing no code with the Rust library. Expected values in the Rust
tests were frozen from the output of this script.

    python3 crates/core/oracle/brute_force.py
"""
import itertools
import random
from fractions import Fraction


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def scan(bounds, keep):
    for p in itertools.product(*[range(lo, hi + 1) for lo, hi in bounds]):
        if keep(p):
            yield p


def dual_points(rays, bound):
    """Points m with <m, v> >= -1 for every ray v, found in a cube scan."""
    n = len(rays[0])
    return sorted(scan([(-bound, bound)] * n,
                       lambda m: all(dot(m, v) >= -1 for v in rays)))


def rank(rows):
    rows = [[Fraction(x) for x in r] for r in rows]
    rk, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rk < len(rows) and col < ncols:
        piv = next((i for i in range(rk, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            col += 1
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        for i in range(len(rows)):
            if i != rk and rows[i][col] != 0:
                f = rows[i][col] / rows[rk][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rk])]
        rk += 1
        col += 1
    return rk


def face_interiors(points, normals):
    """Group points by their exact set of saturated hyperplanes <m, v> = -1."""
    groups = {}
    for m in points:
        sat = frozenset(i for i, v in enumerate(normals) if dot(m, v) == -1)
        groups.setdefault(sat, []).append(m)
    return groups


def face_dim(sat, normals, n):
    if not sat:
        return n
    return n - rank([normals[i] for i in sat])


def analyse(name, rays, bound):
    n = len(rays[0])
    delta = dual_points(rays, bound)
    # vertices of delta: points saturating normals of full rank
    dverts = [m for m in delta
              if rank([v for v in rays if dot(m, v) == -1] or [[0] * n]) == n]
    polar = sorted(scan([(-bound, bound)] * n,
                        lambda v: all(dot(w, v) >= -1 for w in dverts)))
    g_delta = face_interiors(delta, rays)  # keyed by sets of ray ids
    g_polar = face_interiors(polar, dverts)  # keyed by sets of delta-vertex ids

    def lstar_delta(sat):
        return len(g_delta.get(frozenset(sat), []))

    # face of delta dual to a face of polar: polar face has vertex set S (ray ids);
    # its dual face in delta is {m : <m,v_i> = -1, i in S}
    ray_index = {tuple(v): i for i, v in enumerate(rays)}
    facets_delta = sum(len(g_delta.get(frozenset([i]), [])) for i in range(len(rays)))
    # faces of polar as sets of ray ids: saturated sets of delta vertices
    polar_faces = {}
    for sat, pts in g_polar.items():
        d = face_dim(sat, dverts, n)
        polar_faces[sat] = (d, len(pts))
    # interior count of a polar face by its ray set
    polar_by_rays = {}
    for sat, (d, cnt) in polar_faces.items():
        if not sat:
            continue
        # ray ids on this polar face: rays saturating every delta vertex in sat
        rids = frozenset(i for i, v in enumerate(rays)
                         if all(dot(dverts[j], v) == -1 for j in sat))
        polar_by_rays[rids] = (d, cnt)
    # include faces with no interior points (vertex-only faces): enumerate
    # all ray subsets that are closed faces
    lpolar = len(polar)
    facets_polar = sum(c for (d, c) in polar_by_rays.values() if d == n - 1)
    codim2 = sum(c * lstar_delta(r) for r, (d, c) in polar_by_rays.items() if d == n - 2)
    edges = sum(c * lstar_delta(r) for r, (d, c) in polar_by_rays.items() if d == 1)
    r = len(rays)
    h11 = r - n
    h11_orb = lpolar - n - 1 - facets_polar + codim2
    h21 = len(delta) - n - 1 - facets_delta
    h21_orb = h21 + edges
    print(f"{name}: l(delta)={len(delta)} l(polar)={lpolar} sum l*(facets of delta)={facets_delta}"
          f" h11={h11} h11_orb={h11_orb} h21={h21} h21_orb={h21_orb}")
    return delta, dverts


def jacobian_rank(rays, delta, seed):
    n = len(rays[0])
    rng = random.Random(seed)
    lam = {m: rng.randint(1, 10**6) for m in delta}
    dset = set(delta)
    rows = []
    for v in rays:
        rows.append([lam[m] * (dot(m, v) + 1) for m in delta])
    for i, v in enumerate(rays):
        interior = [m for m in delta if dot(m, v) == -1
                    and all(dot(m, w) > -1 for j, w in enumerate(rays) if j != i)]
        for ms in interior:
            row = []
            for m in delta:
                d = tuple(a - b for a, b in zip(m, ms))
                row.append(lam[d] * (dot(d, v) + 1) if d in dset else 0)
            rows.append(row)
    rk = rank(rows)
    return rk, len(delta) - rk


def box_scan(gens):
    """All integral points sum a_i g_i with a_i in [0,1), by bounding-box scan."""
    d = len(gens)
    n = len(gens[0])
    lo = [sum(min(0, g[k]) for g in gens) for k in range(n)]
    hi = [sum(max(0, g[k]) for g in gens) for k in range(n)]
    out = []
    for p in itertools.product(*[range(lo[k], hi[k] + 1) for k in range(n)]):
        # solve p = sum a_i g_i via least squares on the Gram system
        gram = [[Fraction(dot(gi, gj)) for gj in gens] + [Fraction(dot(gi, p))] for gi in gens]
        for c in range(d):
            piv = next(i for i in range(c, d) if gram[i][c] != 0)
            gram[c], gram[piv] = gram[piv], gram[c]
            for i in range(d):
                if i != c and gram[i][c] != 0:
                    f = gram[i][c] / gram[c][c]
                    gram[i] = [a - f * b for a, b in zip(gram[i], gram[c])]
        a = [gram[i][d] / gram[i][i] for i in range(d)]
        if [sum(a[i] * gens[i][k] for i in range(d)) for k in range(n)] != list(p):
            continue
        if all(0 <= x < 1 for x in a):
            out.append((p, a))
    return out


if __name__ == "__main__":
    e = lambda i, n=4: tuple(1 if k == i else 0 for k in range(n))
    p11222 = [(-1, -2, -2, -2), e(0), e(1), e(2), e(3)]
    quintic = [(-1, -1, -1, -1), e(0), e(1), e(2), e(3)]
    cross = [e(i) for i in range(4)] + [tuple(-x for x in e(i)) for i in range(4)]
    p11112 = [(-1, -1, -1, -2), e(0), e(1), e(2), e(3)]
    p11114 = [(-1, -1, -1, -4), e(0), e(1), e(2), e(3)]

    for name, rays in [("P(1,1,2,2,2)", p11222), ("quintic", quintic),
                       ("cube/cross", cross), ("P(1,1,1,1,2)", p11112),
                       ("P(1,1,1,1,4)", p11114)]:
        delta, dverts = analyse(name, rays, 9)
        print("   delta vertices:", dverts)
        for seed in (1, 2, 3):
            rk, q = jacobian_rank(rays, delta, seed)
            print(f"   jacobian seed={seed}: rank={rk} quotient={q}")
        # mirror side
        analyse(name + " mirror", dverts, 9)
        rk, q = jacobian_rank(dverts, dual_points(dverts, 9), 7)
        print(f"   mirror jacobian rank={rk} quotient={q}")

    # a Z2 x Z4 quotient of P(1,1,2,2,2) whose polar dual is lattice-equivalent
    # to itself (found by scanning two-generator quotients)
    analyse("self-dual", [(7, -2, -4, -8), e(0), e(1), (-1, 0, 2, 0), (-3, 0, 0, 4)], 9)

    # rank of all 8 Euler rows for the cube/cross pair
    delta = dual_points(cross, 2)
    rng = random.Random(5)
    lam = {m: rng.randint(1, 10**6) for m in delta}
    euler = [[lam[m] * (dot(m, v) + 1) for m in delta] for v in cross]
    print("cube euler rank:", rank(euler), "relations:", len(cross) - rank(euler))

    # box elements
    for gens in [[(1, 0), (1, 2)], [(1, 0), (1, 3)], [(1, 0), (2, 5)],
                 [(-1, -2, -2, -2), (1, 0, 0, 0)]]:
        print("box", gens, [(p, [str(x) for x in a], str(sum(a))) for p, a in box_scan(gens)])
