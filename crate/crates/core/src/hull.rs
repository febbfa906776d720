//! Facet enumeration for lattice polytopes by the double description method.
//!
//! The facets of `conv(P)` are the extreme rays of the homogenized cone
//! `{(a, b) : <a, p> + b >= 0 for all p in P}`. Constraints are inserted one
//! point at a time; adjacency of rays is decided combinatorially from their
//! sets of saturated constraints. All arithmetic is on integer vectors kept
//! primitive after every combination.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::lattice::{gcd_all, IntMatrix, RatMatrix};
use crate::vector::LatticeVector;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub(crate) struct BitSet(Vec<u64>);

impl BitSet {
    pub(crate) fn with_capacity(bits: usize) -> Self {
        BitSet(vec![0; bits.div_ceil(64)])
    }

    pub(crate) fn insert(&mut self, i: usize) {
        let w = i / 64;
        if w >= self.0.len() {
            self.0.resize(w + 1, 0);
        }
        self.0[w] |= 1 << (i % 64);
    }

    #[cfg(test)]
    pub(crate) fn contains(&self, i: usize) -> bool {
        self.0.get(i / 64).is_some_and(|w| w & (1 << (i % 64)) != 0)
    }

    pub(crate) fn intersection(&self, other: &BitSet) -> BitSet {
        BitSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    pub(crate) fn is_subset(&self, other: &BitSet) -> bool {
        self.0
            .iter()
            .enumerate()
            .all(|(i, w)| w & !other.0.get(i).copied().unwrap_or(0) == 0)
    }

    pub(crate) fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[cfg(test)]
    pub(crate) fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(wi, &w)| {
            (0..64)
                .filter(move |b| w & (1 << b) != 0)
                .map(move |b| wi * 64 + b)
        })
    }
}

struct Ray {
    coords: Vec<BigInt>,
    zeros: BitSet,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = gcd_all(&v);
    if !g.is_zero() && !g.is_one() {
        for x in &mut v {
            *x /= &g;
        }
    }
    v
}

fn lift(p: &LatticeVector) -> Vec<BigInt> {
    let mut v = p.coords().to_vec();
    v.push(BigInt::one());
    v
}

/// Indices of a maximal affinely independent subset, chosen greedily.
pub(crate) fn affine_basis(points: &[LatticeVector]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    let cols = points.first().map_or(0, |p| p.dim() + 1);
    for (i, p) in points.iter().enumerate() {
        if rows.len() == cols {
            break;
        }
        rows.push(lift(p));
        if IntMatrix::from_rows(cols, rows.clone()).rank() == rows.len() {
            chosen.push(i);
        } else {
            rows.pop();
        }
    }
    chosen
}

/// Facet inequalities `(normal, offset)` meaning `<x, normal> + offset >= 0`,
/// normals primitive. `points` must be deduplicated and affinely span `R^n`.
pub(crate) fn facets(points: &[LatticeVector]) -> Vec<(LatticeVector, BigInt)> {
    let n = points[0].dim();
    let d = n + 1;
    let basis = affine_basis(points);
    assert_eq!(
        basis.len(),
        d,
        "points must affinely span the ambient space"
    );
    let constraints: Vec<Vec<BigInt>> = points.iter().map(lift).collect();

    // initial cone: A0 y >= 0 with A0 invertible; rays are the columns of A0^-1
    let a0 = RatMatrix::from_rows(
        d,
        basis
            .iter()
            .map(|&i| {
                constraints[i]
                    .iter()
                    .cloned()
                    .map(BigRational::from_integer)
                    .collect()
            })
            .collect(),
    );
    let mut rays: Vec<Ray> = Vec::with_capacity(d);
    for j in 0..d {
        let e: Vec<BigRational> = (0..d)
            .map(|k| {
                if k == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            })
            .collect();
        let col = a0.solve(&e).expect("basis matrix is invertible");
        let den = col.iter().fold(BigInt::one(), |acc, q| {
            num_integer::Integer::lcm(&acc, q.denom())
        });
        let coords = primitive(col.iter().map(|q| q.numer() * (&den / q.denom())).collect());
        let mut zeros = BitSet::with_capacity(points.len());
        for (k, &b) in basis.iter().enumerate() {
            if k != j {
                zeros.insert(b);
            }
        }
        rays.push(Ray { coords, zeros });
    }

    for (k, h) in constraints.iter().enumerate() {
        if basis.contains(&k) {
            continue;
        }
        let values: Vec<BigInt> = rays.iter().map(|r| dot(h, &r.coords)).collect();
        if values.iter().all(|v| !v.is_negative()) {
            for (r, v) in rays.iter_mut().zip(&values) {
                if v.is_zero() {
                    r.zeros.insert(k);
                }
            }
            continue;
        }
        let pos: Vec<usize> = (0..rays.len())
            .filter(|&i| values[i].is_positive())
            .collect();
        let neg: Vec<usize> = (0..rays.len())
            .filter(|&i| values[i].is_negative())
            .collect();
        let mut created = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].zeros.intersection(&rays[q].zeros);
                if common.len() + 2 < d {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(i, r)| i == p || i == q || !common.is_subset(&r.zeros));
                if !adjacent {
                    continue;
                }
                let coords: Vec<BigInt> = rays[q]
                    .coords
                    .iter()
                    .zip(&rays[p].coords)
                    .map(|(yq, yp)| &values[p] * yq - &values[q] * yp)
                    .collect();
                let mut zeros = common;
                zeros.insert(k);
                created.push(Ray {
                    coords: primitive(coords),
                    zeros,
                });
            }
        }
        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() + created.len());
        for (mut r, v) in rays.into_iter().zip(values) {
            if v.is_zero() {
                r.zeros.insert(k);
                next.push(r);
            } else if v.is_positive() {
                next.push(r);
            }
        }
        next.extend(created);
        rays = next;
    }

    rays.into_iter()
        .map(|r| {
            let mut coords = r.coords;
            let offset = coords.pop().expect("homogenizing coordinate");
            let g = gcd_all(&coords);
            assert!(
                !g.is_zero(),
                "facet normal cannot vanish for a full-dimensional hull"
            );
            let normal: Vec<BigInt> = coords.into_iter().map(|x| x / &g).collect();
            assert!(
                (&offset % &g).is_zero(),
                "lattice facets have integral offsets"
            );
            (LatticeVector::new(normal), offset / g)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[&[i64]]) -> Vec<LatticeVector> {
        v.iter().map(|p| LatticeVector::from_i64s(p)).collect()
    }

    #[test]
    fn square_has_four_facets() {
        let f = facets(&pts(&[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1], &[0, 0]]));
        assert_eq!(f.len(), 4);
        for (normal, offset) in &f {
            assert_eq!(offset, &BigInt::one());
            assert!(normal.is_primitive());
        }
    }

    #[test]
    fn cube_and_cross_polytope() {
        let mut cube = Vec::new();
        for mask in 0..16u32 {
            cube.push(LatticeVector::from_i64s(
                &(0..4)
                    .map(|i| if mask >> i & 1 == 1 { 1 } else { -1 })
                    .collect::<Vec<_>>(),
            ));
        }
        assert_eq!(facets(&cube).len(), 8);
        let mut cross = Vec::new();
        for i in 0..4 {
            cross.push(LatticeVector::unit(4, i));
            cross.push(-&LatticeVector::unit(4, i));
        }
        assert_eq!(facets(&cross).len(), 16);
    }

    #[test]
    fn bitset_ops() {
        let mut a = BitSet::with_capacity(130);
        let mut b = BitSet::with_capacity(130);
        for i in [1, 64, 129] {
            a.insert(i);
        }
        b.insert(64);
        assert!(b.is_subset(&a));
        assert!(!a.is_subset(&b));
        assert_eq!(a.intersection(&b).iter().collect::<Vec<_>>(), vec![64]);
        assert_eq!(a.len(), 3);
        assert!(a.contains(129) && !a.contains(2));
    }
}
