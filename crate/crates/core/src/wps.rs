//! Toric data of weighted projective spaces.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::polytope::LatticePolytope;
use crate::vector::LatticeVector;

/// The hull of the rays of `P(w_0, ..., w_n)` as a candidate `Δ°`.
///
/// One weight must equal 1; the first such weight becomes `w_0`, so the rays
/// are `v_0 = -(w_1, ..., w_n)` and `e_1, ..., e_n`. The result is returned
/// only when it is reflexive.
pub fn wps_polytope(weights: &[u64]) -> Result<LatticePolytope> {
    if weights.len() < 3 {
        return Err(Error::Weights(format!(
            "need at least 3 weights, got {}",
            weights.len()
        )));
    }
    if weights.contains(&0) {
        return Err(Error::Weights("weights must be positive".into()));
    }
    for skip in 0..weights.len() {
        let g = weights
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .fold(0u64, |g, (_, w)| g.gcd(w));
        if g != 1 {
            return Err(Error::Weights(format!(
                "weights are not well formed: dropping weight {} leaves gcd {g}",
                skip + 1
            )));
        }
    }
    let one = weights
        .iter()
        .position(|&w| w == 1)
        .ok_or_else(|| Error::Weights("one weight must equal 1".into()))?;
    let rest: Vec<u64> = weights
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != one)
        .map(|(_, &w)| w)
        .collect();
    let n = rest.len();
    let mut rays = vec![LatticeVector::from_i64s(
        &rest.iter().map(|&w| -(w as i64)).collect::<Vec<_>>(),
    )];
    rays.extend((0..n).map(|i| LatticeVector::unit(n, i)));
    let polytope = LatticePolytope::from_vertices(&rays)?;
    if !polytope.is_reflexive() {
        let total: u64 = weights.iter().sum();
        return Err(Error::NotReflexive(format!(
            "P{weights:?}: some weight does not divide the degree {total}"
        )));
    }
    Ok(polytope)
}
