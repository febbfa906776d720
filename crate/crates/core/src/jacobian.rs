//! Rank of the anticanonical graded piece of the Jacobian ideal, as an
//! independent check of the closed formula for `h^{n-2,1}(V)`.
//!
//! For `f = sum_m lambda_m x^m` with `x^m = prod_i x_i^{<m, v_i> + 1}`, the
//! degree `beta_0 = [-K]` part of `J(f)` is spanned by the Euler-type
//! elements `x_k df/dx_k` and, for each ray `v_i` and each interior lattice
//! point `m*` of the facet `F_i` of `Δ` dual to it, by
//! `x^{m*} x_i df/dx_i` (shifted). Each generator is written in the monomial
//! basis `Δ ∩ M` and the rank of the resulting matrix is computed exactly.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hodge::hn21_untwisted;
use crate::lattice::{rational_rank, IntMatrix, RatMatrix};
use crate::polytope::ReflexivePair;
use crate::vector::LatticeVector;

/// Inclusive range of the random coefficients.
pub const COEFFICIENT_RANGE: (u64, u64) = (1, 1_000_000);

/// Seeds tried by [`jacobian_rank_check`] before giving up.
pub const MAX_DRAWS: u64 = 5;

/// The monomials of degree `beta_0`, i.e. the lattice points of `Δ`.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    points: Vec<LatticeVector>,
    index: HashMap<LatticeVector, usize>,
}

impl MonomialBasis {
    pub fn new(pair: &ReflexivePair) -> MonomialBasis {
        let points = pair.delta().whole().lattice_points.clone();
        let index = points
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        MonomialBasis { points, index }
    }

    pub fn points(&self) -> &[LatticeVector] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn position(&self, m: &LatticeVector) -> Option<usize> {
        self.index.get(m).copied()
    }
}

/// Nonzero integer coefficients `lambda_m`, one per lattice point of `Δ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericCoefficients {
    lambda: BTreeMap<LatticeVector, BigInt>,
}

impl GenericCoefficients {
    /// Uniform draws from [`COEFFICIENT_RANGE`] with a seeded ChaCha stream.
    pub fn draw(basis: &MonomialBasis, seed: u64) -> GenericCoefficients {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (lo, hi) = COEFFICIENT_RANGE;
        let lambda = basis
            .points()
            .iter()
            .map(|m| (m.clone(), BigInt::from(rng.gen_range(lo..=hi))))
            .collect();
        GenericCoefficients { lambda }
    }

    /// Explicit coefficients; every value must be nonzero.
    pub fn from_map(lambda: BTreeMap<LatticeVector, BigInt>) -> Result<GenericCoefficients> {
        if let Some((m, _)) = lambda.iter().find(|(_, v)| v.is_zero()) {
            return Err(Error::Hypothesis(format!("coefficient of {m} is zero")));
        }
        Ok(GenericCoefficients { lambda })
    }

    pub fn get(&self, m: &LatticeVector) -> Option<&BigInt> {
        self.lambda.get(m)
    }

    /// Every coefficient multiplied by `k`.
    pub fn scaled(&self, k: &BigInt) -> GenericCoefficients {
        GenericCoefficients {
            lambda: self
                .lambda
                .iter()
                .map(|(m, v)| (m.clone(), v * k))
                .collect(),
        }
    }
}

/// The lexicographically first rays whose lifts `(v, 1)` are linearly independent.
pub fn independent_rays(pair: &ReflexivePair) -> Vec<usize> {
    let n = pair.dim();
    let mut chosen = Vec::new();
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for (i, v) in pair.rays().iter().enumerate() {
        if chosen.len() == n + 1 {
            break;
        }
        let mut lifted = v.coords().to_vec();
        lifted.push(BigInt::one());
        rows.push(lifted);
        if IntMatrix::from_rows(n + 1, rows.clone()).rank() == rows.len() {
            chosen.push(i);
        } else {
            rows.pop();
        }
    }
    assert_eq!(
        chosen.len(),
        n + 1,
        "the lifted rays of a reflexive polytope span R^(n+1)"
    );
    chosen
}

/// Row of `x_k df/dx_k`: entry `lambda_m (<m, v_k> + 1)` at column `m`.
fn euler_row(
    basis: &MonomialBasis,
    coeffs: &GenericCoefficients,
    ray: &LatticeVector,
) -> Vec<BigInt> {
    basis
        .points()
        .iter()
        .map(|m| coeff(coeffs, m) * (m.dot(ray) + BigInt::one()))
        .collect()
}

fn coeff<'a>(coeffs: &'a GenericCoefficients, m: &LatticeVector) -> &'a BigInt {
    coeffs
        .get(m)
        .expect("a coefficient for every lattice point of the polytope")
}

/// Euler rows for the given rays.
pub fn euler_rows_for(
    pair: &ReflexivePair,
    basis: &MonomialBasis,
    coeffs: &GenericCoefficients,
    rays: &[usize],
) -> Vec<Vec<BigInt>> {
    rays.iter()
        .map(|&k| euler_row(basis, coeffs, &pair.rays()[k]))
        .collect()
}

/// The `n + 1` Euler rows over [`independent_rays`].
pub fn euler_rows(
    pair: &ReflexivePair,
    basis: &MonomialBasis,
    coeffs: &GenericCoefficients,
) -> Vec<Vec<BigInt>> {
    euler_rows_for(pair, basis, coeffs, &independent_rays(pair))
}

/// A generator `x^{m*} x_i df/dx_i` shifted into degree `beta_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetRow {
    pub ray: usize,
    pub interior_point: LatticeVector,
    pub entries: Vec<BigInt>,
}

/// One row per ray `v_i` and interior lattice point `m*` of its dual facet:
/// entry `lambda_{m - m*} (<m - m*, v_i> + 1)` when `m - m*` lies in `Δ`,
/// zero otherwise.
pub fn facet_interior_rows(
    pair: &ReflexivePair,
    basis: &MonomialBasis,
    coeffs: &GenericCoefficients,
) -> Vec<FacetRow> {
    let mut out = Vec::new();
    for (i, ray) in pair.rays().iter().enumerate() {
        let facet = pair.delta().face(pair.facet_of_ray(i));
        for m_star in &facet.interior_points {
            let entries = basis
                .points()
                .iter()
                .map(|m| {
                    let shifted = m - m_star;
                    match coeffs.get(&shifted) {
                        Some(l) => l * (shifted.dot(ray) + BigInt::one()),
                        None => BigInt::zero(),
                    }
                })
                .collect();
            out.push(FacetRow {
                ray: i,
                interior_point: m_star.clone(),
                entries,
            });
        }
    }
    out
}

/// Spanning set of `(J(f))_{beta_0}` in monomial coordinates.
#[derive(Clone, Debug)]
pub struct JacobianPiece {
    pub generators: RatMatrix,
    /// Expected rank `n + 1 + sum_i l*(F_i)`.
    pub gamma: usize,
}

impl JacobianPiece {
    pub fn assemble(
        pair: &ReflexivePair,
        basis: &MonomialBasis,
        coeffs: &GenericCoefficients,
    ) -> JacobianPiece {
        let mut rows = euler_rows(pair, basis, coeffs);
        rows.extend(
            facet_interior_rows(pair, basis, coeffs)
                .into_iter()
                .map(|r| r.entries),
        );
        let gamma = rows.len();
        let rat = rows
            .into_iter()
            .map(|r| r.into_iter().map(BigRational::from_integer).collect())
            .collect();
        JacobianPiece {
            generators: RatMatrix::from_rows(basis.len(), rat),
            gamma,
        }
    }

    pub fn rank(&self) -> usize {
        rational_rank(&self.generators)
    }
}

/// Outcome of [`jacobian_rank_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobianReport {
    /// Seed of the draw that was accepted.
    pub seed: u64,
    pub attempts: u64,
    pub rank: usize,
    pub gamma: usize,
    pub l_delta: usize,
    /// `l(Δ) - rank`, the dimension of `(S/J(f))_{beta_0}`.
    pub quotient: usize,
    /// The closed formula for `h^{n-2,1}(V)`.
    pub formula: i64,
}

impl JacobianReport {
    pub fn agrees(&self) -> bool {
        self.rank == self.gamma && self.quotient as i64 == self.formula
    }
}

/// Draws coefficients from `seed` (then `seed + 1`, ... up to [`MAX_DRAWS`]
/// seeds while the rank stays below `gamma`) and compares the dimension of
/// the quotient with the closed formula.
pub fn jacobian_rank_check(pair: &ReflexivePair, seed: u64) -> Result<JacobianReport> {
    let formula = hn21_untwisted(pair)?;
    let basis = MonomialBasis::new(pair);
    let mut best = 0;
    let mut gamma = 0;
    for attempt in 0..MAX_DRAWS {
        let s = seed.wrapping_add(attempt);
        let piece = JacobianPiece::assemble(pair, &basis, &GenericCoefficients::draw(&basis, s));
        let rank = piece.rank();
        gamma = piece.gamma;
        if rank == gamma {
            return Ok(JacobianReport {
                seed: s,
                attempts: attempt + 1,
                rank,
                gamma,
                l_delta: basis.len(),
                quotient: basis.len() - rank,
                formula,
            });
        }
        best = best.max(rank);
    }
    Err(Error::NonGenericDraws {
        rank: best,
        expected: gamma,
    })
}

/// The matrix `E_ij = <m_i, v_j> + 1`.
pub fn matrix_e(points: &[LatticeVector], rays: &[LatticeVector]) -> IntMatrix {
    IntMatrix::from_rows(
        rays.len(),
        points.iter().map(|m| {
            rays.iter()
                .map(|v| m.dot(v) + BigInt::one())
                .collect::<Vec<_>>()
        }),
    )
}

/// Checks that `P_ij = lambda_{m_i} (<m_i, v_j> + 1)` is nonsingular, with
/// `m_1..m_n` the first linearly independent vertices of `Δ`, `m_{n+1} = 0`
/// and the rays from [`independent_rays`].
pub fn verify_matrix_p_nonsingular(pair: &ReflexivePair, coeffs: &GenericCoefficients) -> bool {
    let n = pair.dim();
    let mut points: Vec<LatticeVector> = Vec::new();
    for v in pair.delta().vertices() {
        if points.len() == n {
            break;
        }
        points.push(v.clone());
        let m = IntMatrix::from_rows(n, points.iter().map(|p| p.coords().to_vec()));
        if m.rank() < points.len() {
            points.pop();
        }
    }
    points.push(LatticeVector::zero(n));
    let rays: Vec<LatticeVector> = independent_rays(pair)
        .into_iter()
        .map(|i| pair.rays()[i].clone())
        .collect();
    let e = matrix_e(&points, &rays);
    let det_e = e.determinant().expect("square");
    let p = IntMatrix::from_rows(
        rays.len(),
        points.iter().enumerate().map(|(i, m)| {
            let l = coeff(coeffs, m);
            e.row(i).iter().map(|x| l * x).collect::<Vec<_>>()
        }),
    );
    let det_p = p.determinant().expect("square");
    let lambda_product: BigInt = points.iter().map(|m| coeff(coeffs, m)).product();
    debug_assert_eq!(det_p, lambda_product * &det_e);
    !det_p.is_zero()
}
