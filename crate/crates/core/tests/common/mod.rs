#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use reflexorb::{LatticePolytope, LatticeVector, ReflexivePair};

pub fn v(coords: &[i64]) -> LatticeVector {
    LatticeVector::from_i64s(coords)
}

pub fn polytope(rows: &[&[i64]]) -> LatticePolytope {
    LatticePolytope::from_vertices(&rows.iter().map(|r| v(r)).collect::<Vec<_>>()).unwrap()
}

pub fn from_polar(rows: &[&[i64]]) -> ReflexivePair {
    ReflexivePair::from_polar(polytope(rows)).unwrap()
}

pub fn p11222() -> ReflexivePair {
    from_polar(&[
        &[-1, -2, -2, -2],
        &[1, 0, 0, 0],
        &[0, 1, 0, 0],
        &[0, 0, 1, 0],
        &[0, 0, 0, 1],
    ])
}

pub fn quintic() -> ReflexivePair {
    from_polar(&[
        &[-1, -1, -1, -1],
        &[1, 0, 0, 0],
        &[0, 1, 0, 0],
        &[0, 0, 1, 0],
        &[0, 0, 0, 1],
    ])
}

pub fn p11112() -> ReflexivePair {
    from_polar(&[
        &[-1, -1, -1, -2],
        &[1, 0, 0, 0],
        &[0, 1, 0, 0],
        &[0, 0, 1, 0],
        &[0, 0, 0, 1],
    ])
}

pub fn p11114() -> ReflexivePair {
    from_polar(&[
        &[-1, -1, -1, -4],
        &[1, 0, 0, 0],
        &[0, 1, 0, 0],
        &[0, 0, 1, 0],
        &[0, 0, 0, 1],
    ])
}

/// A Z/2 x Z/4 quotient of P(1,1,2,2,2) with `h11_orb = h21_orb = 18`.
pub fn self_dual() -> ReflexivePair {
    from_polar(&[
        &[7, -2, -4, -8],
        &[1, 0, 0, 0],
        &[0, 1, 0, 0],
        &[-1, 0, 2, 0],
        &[-3, 0, 0, 4],
    ])
}

pub fn cube_vertices(n: usize) -> Vec<LatticeVector> {
    (0..1u32 << n)
        .map(|m| {
            LatticeVector::from_i64s(
                &(0..n)
                    .map(|i| if m >> i & 1 == 1 { 1 } else { -1 })
                    .collect::<Vec<_>>(),
            )
        })
        .collect()
}

/// `Δ = [-1, 1]^4`, `Δ°` the cross polytope (simplicial fan).
pub fn cube_delta() -> ReflexivePair {
    ReflexivePair::from_delta(LatticePolytope::from_vertices(&cube_vertices(4)).unwrap()).unwrap()
}

/// Four-dimensional pairs whose normal fan is simplicial.
pub fn simplicial_pairs() -> Vec<(&'static str, ReflexivePair)> {
    let mut out = Vec::new();
    for (name, mirror, pair) in [
        ("P11222", "P11222 mirror", p11222()),
        ("quintic", "quintic mirror", quintic()),
        ("P11112", "P11112 mirror", p11112()),
        ("P11114", "P11114 mirror", p11114()),
        ("quotient", "quotient mirror", self_dual()),
    ] {
        out.push((mirror, pair.swapped()));
        out.push((name, pair));
    }
    out.push(("cube", cube_delta()));
    out
}

/// Reflexive pairs in dimensions 2 to 4, including the non-simplicial
/// fan over the cube.
pub fn all_pairs() -> Vec<(&'static str, ReflexivePair)> {
    let mut out = simplicial_pairs();
    out.push(("cube mirror", cube_delta().swapped()));
    out.push(("P2", from_polar(&[&[-1, -1], &[1, 0], &[0, 1]])));
    out.push(("P112", from_polar(&[&[-1, -2], &[1, 0], &[0, 1]])));
    out.push((
        "hexagon",
        from_polar(&[&[1, 0], &[0, 1], &[-1, -1], &[-1, 0], &[0, -1], &[1, 1]]),
    ));
    out.push((
        "square",
        from_polar(&[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]]),
    ));
    out.push((
        "P3",
        from_polar(&[&[-1, -1, -1], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]),
    ));
    out.push((
        "P1113",
        from_polar(&[&[-1, -1, -3], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]),
    ));
    out.push((
        "octahedron",
        ReflexivePair::from_delta(LatticePolytope::from_vertices(&cube_vertices(3)).unwrap())
            .unwrap(),
    ));
    out
}

fn q(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

/// Solves `sum_i a_i g_i = p` by Gaussian elimination on the augmented
/// system; `None` when `p` is outside the span.
pub fn coordinates(gens: &[LatticeVector], p: &LatticeVector) -> Option<Vec<BigRational>> {
    let n = p.dim();
    let d = gens.len();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|r| {
            gens.iter()
                .map(|g| q(&g.coords()[r]))
                .chain([q(&p.coords()[r])])
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..d {
        let Some(pr) = (row..n).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, pr);
        let inv = BigRational::one() / a[row][col].clone();
        for x in a[row].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[row].clone();
                for (x, p) in a[r].iter_mut().zip(&pivot_row) {
                    *x -= p * &f;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if a[row..].iter().any(|r| !r[d].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); d];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = a[r][d].clone();
    }
    Some(x)
}

/// Lattice points `sum a_i g_i` with every `a_i` in `[0, 1)`, found by
/// scanning the bounding box of the parallelepiped.
pub fn parallelepiped_scan(gens: &[LatticeVector]) -> Vec<(LatticeVector, Vec<BigRational>)> {
    let n = gens[0].dim();
    let lo: Vec<i64> = (0..n)
        .map(|i| gens.iter().map(|g| g.to_i64s().unwrap()[i].min(0)).sum())
        .collect();
    let hi: Vec<i64> = (0..n)
        .map(|i| gens.iter().map(|g| g.to_i64s().unwrap()[i].max(0)).sum())
        .collect();
    // for full-dimensional cones, a = p G^-1; scale G^-1 to integers so the
    // membership test runs on i64
    let inverse: Option<(Vec<Vec<i64>>, i64)> = (gens.len() == n).then(|| {
        let inv: Vec<Vec<BigRational>> = (0..n)
            .map(|j| coordinates(gens, &LatticeVector::unit(n, j)).unwrap())
            .collect();
        let l = inv.iter().flatten().fold(BigInt::one(), |acc, x| {
            num_integer::Integer::lcm(&acc, x.denom())
        });
        let scaled = inv
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        (x * BigRational::from_integer(l.clone()))
                            .to_integer()
                            .try_into()
                            .unwrap()
                    })
                    .collect()
            })
            .collect();
        (scaled, l.try_into().unwrap())
    });
    let mut out = Vec::new();
    let mut cur = lo.clone();
    loop {
        let p = LatticeVector::from_i64s(&cur);
        let coords = match &inverse {
            Some((inv, l)) => {
                let num: Vec<i64> = (0..n)
                    .map(|i| (0..n).map(|j| cur[j] * inv[j][i]).sum())
                    .collect();
                num.iter().all(|&x| 0 <= x && x < *l).then(|| {
                    num.iter()
                        .map(|&x| BigRational::new(x.into(), (*l).into()))
                        .collect()
                })
            }
            None => coordinates(gens, &p),
        };
        if let Some(a) = coords {
            if a.iter()
                .all(|x| !x.is_negative() && x < &BigRational::one())
            {
                out.push((p, a));
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                out.sort_by(|x, y| x.0.cmp(&y.0));
                return out;
            }
            cur[i] += 1;
            if cur[i] <= hi[i] {
                break;
            }
            cur[i] = lo[i];
            i += 1;
        }
    }
}
