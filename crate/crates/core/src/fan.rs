//! Simplicial fans, local quotient groups and box elements.
//!
//! For a simplicial cone with primitive generators `v_1..v_d`, the finite
//! group `N_tau-saturation / span(v_i)` is represented by its box: the
//! integral points `sum a_i v_i` with every `a_i` in `[0, 1)`. Twisted sectors
//! of the toric variety are the pairs (cone, box element interior to it), and
//! the age of a sector is `sum a_i`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::IntMatrix;
use crate::polytope::ReflexivePair;
use crate::vector::LatticeVector;

/// A cone spanned by rays of a fan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    /// Sorted indices into [`Fan::rays`].
    pub ray_ids: Vec<usize>,
    pub generators: Vec<LatticeVector>,
    /// Face of the polar polytope the cone is spanned over (`None` for the
    /// zero cone or for fans not built from a polytope).
    pub face_ref: Option<usize>,
}

impl Cone {
    pub fn new(generators: Vec<LatticeVector>) -> Cone {
        Cone {
            ray_ids: (0..generators.len()).collect(),
            generators,
            face_ref: None,
        }
    }

    pub fn from_i64s(generators: &[&[i64]]) -> Cone {
        Cone::new(
            generators
                .iter()
                .map(|g| LatticeVector::from_i64s(g))
                .collect(),
        )
    }

    /// Number of generators (the dimension, for simplicial cones).
    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    /// Canonical identity: generator coordinates in sorted order.
    pub fn key(&self) -> Vec<LatticeVector> {
        let mut k = self.generators.clone();
        k.sort();
        k
    }

    pub fn generator_matrix(&self) -> Option<IntMatrix> {
        let n = self.generators.first()?.dim();
        Some(IntMatrix::from_rows(
            n,
            self.generators.iter().map(|g| g.coords().to_vec()),
        ))
    }

    pub fn is_simplicial(&self) -> bool {
        self.generator_matrix()
            .is_none_or(|m| m.rank() == self.dim())
    }

    fn require_simplicial(&self) -> Result<()> {
        if self.is_simplicial() {
            Ok(())
        } else {
            Err(Error::NotSimplicial(format!(
                "{} generators of rank below that",
                self.dim()
            )))
        }
    }
}

/// Element of the box of a simplicial cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxElement {
    /// Coefficients in `[0, 1)`, one per generator, in generator order.
    pub coeffs: Vec<BigRational>,
    /// The lattice point `sum coeffs[i] * generators[i]`.
    pub point: LatticeVector,
    pub age: BigRational,
}

impl BoxElement {
    /// All coefficients strictly positive.
    pub fn is_interior(&self) -> bool {
        self.coeffs.iter().all(Signed::is_positive)
    }

    pub fn has_integral_age(&self) -> bool {
        self.age.is_integer()
    }
}

/// Index of the sublattice spanned by the generators inside its saturation.
pub fn quotient_group_order(cone: &Cone) -> Result<BigInt> {
    cone.require_simplicial()?;
    let Some(g) = cone.generator_matrix() else {
        return Ok(BigInt::one());
    };
    Ok(g.smith_normal_form().invariant_factors().iter().product())
}

/// Box elements of a simplicial cone, sorted by lattice point.
///
/// With `interior_only` only elements with every coefficient in `(0, 1)` are
/// returned. Representatives of the quotient group come from the Smith form
/// `U G V = D` of the generator matrix `G`: the point `sum k_i w_i` with
/// `w_i = (U G)_i / d_i` has coefficients `sum_i k_i U_ij / d_i`, which are
/// reduced mod 1.
pub fn box_elements(cone: &Cone, interior_only: bool) -> Result<Vec<BoxElement>> {
    cone.require_simplicial()?;
    // the zero cone has no generators to write a point in
    let Some(g) = cone.generator_matrix() else {
        return Ok(Vec::new());
    };
    let d = cone.dim();
    let n = g.cols();
    let snf = g.smith_normal_form();
    let divisors = snf.invariant_factors();
    debug_assert_eq!(divisors.len(), d);

    let mut out = Vec::new();
    let mut k = vec![BigInt::zero(); d];
    loop {
        let coeffs: Vec<BigRational> = (0..d)
            .map(|j| {
                let a: BigRational = (0..d)
                    .map(|i| BigRational::new(&k[i] * &snf.u[(i, j)], divisors[i].clone()))
                    .sum();
                a.clone() - a.floor()
            })
            .collect();
        if !interior_only || coeffs.iter().all(Signed::is_positive) {
            out.push(element_from_coeffs(cone, n, coeffs));
        }
        // odometer over prod [0, d_i)
        let mut i = d;
        loop {
            if i == 0 {
                out.sort_by(|a, b| a.point.cmp(&b.point));
                return Ok(out);
            }
            i -= 1;
            k[i] += 1;
            if k[i] < divisors[i] {
                break;
            }
            k[i] = BigInt::zero();
        }
    }
}

fn element_from_coeffs(cone: &Cone, n: usize, coeffs: Vec<BigRational>) -> BoxElement {
    let mut point = vec![BigRational::zero(); n];
    for (a, gen) in coeffs.iter().zip(&cone.generators) {
        for (p, x) in point.iter_mut().zip(gen.coords()) {
            *p += a * BigRational::from_integer(x.clone());
        }
    }
    debug_assert!(
        point.iter().all(BigRational::is_integer),
        "box points are integral"
    );
    let point = LatticeVector::new(point.into_iter().map(|q| q.to_integer()).collect());
    let age = coeffs.iter().sum();
    BoxElement { coeffs, point, age }
}

/// Coefficients of `point` in the generators of `cone`, when it lies in their span.
pub fn coefficients_in_cone(cone: &Cone, point: &LatticeVector) -> Option<Vec<BigRational>> {
    let g = cone.generator_matrix()?;
    let rhs: Vec<BigRational> = point
        .coords()
        .iter()
        .cloned()
        .map(BigRational::from_integer)
        .collect();
    g.transpose().to_rational().solve(&rhs)
}

/// A fan of rational cones in `N_R = R^n`.
#[derive(Clone, Debug)]
pub struct Fan {
    n: usize,
    rays: Vec<LatticeVector>,
    /// Sorted by (number of generators, ray ids); the zero cone comes first.
    cones: Vec<Cone>,
}

impl Fan {
    /// Fan whose cones are all faces of the given simplicial maximal cones
    /// (faces of a simplicial cone are spanned by subsets of its generators).
    pub fn from_maximal_cones(
        n: usize,
        rays: Vec<LatticeVector>,
        maximal: &[Vec<usize>],
    ) -> Result<Fan> {
        let mut sets: std::collections::BTreeSet<Vec<usize>> = std::collections::BTreeSet::new();
        for cone in maximal {
            let mut ids = cone.clone();
            ids.sort_unstable();
            let c = Cone {
                generators: ids.iter().map(|&i| rays[i].clone()).collect(),
                ray_ids: ids.clone(),
                face_ref: None,
            };
            c.require_simplicial()?;
            for mask in 0..1u64 << ids.len() {
                sets.insert(
                    ids.iter()
                        .enumerate()
                        .filter(|(b, _)| mask >> b & 1 == 1)
                        .map(|(_, &i)| i)
                        .collect(),
                );
            }
        }
        let mut cones: Vec<Cone> = sets
            .into_iter()
            .map(|ids| Cone {
                generators: ids.iter().map(|&i| rays[i].clone()).collect(),
                ray_ids: ids,
                face_ref: None,
            })
            .collect();
        cones.sort_by(|a, b| (a.dim(), &a.ray_ids).cmp(&(b.dim(), &b.ray_ids)));
        Ok(Fan { n, rays, cones })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    /// Number of rays, `r`.
    pub fn ray_count(&self) -> usize {
        self.rays.len()
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn cones_of_dim(&self, d: usize) -> impl Iterator<Item = &Cone> {
        self.cones.iter().filter(move |c| c.dim() == d)
    }

    pub fn is_simplicial(&self) -> bool {
        self.cones.par_iter().all(Cone::is_simplicial)
    }

    fn require_simplicial(&self) -> Result<()> {
        match self.cones.iter().find(|c| !c.is_simplicial()) {
            None => Ok(()),
            Some(c) => Err(Error::NotSimplicial(format!(
                "cone over rays {:?} has dependent generators",
                c.ray_ids
            ))),
        }
    }
}

/// Normal fan of the `M`-side polytope: the cones over the proper faces of
/// the `N`-side polytope, plus the zero cone.
pub fn normal_fan(pair: &ReflexivePair) -> Fan {
    let polar = pair.delta_polar();
    let rays = polar.vertices().to_vec();
    let mut cones = vec![Cone {
        ray_ids: Vec::new(),
        generators: Vec::new(),
        face_ref: None,
    }];
    for (id, face) in polar.proper_faces() {
        cones.push(Cone {
            ray_ids: face.vertex_ids.clone(),
            generators: face.vertex_ids.iter().map(|&v| rays[v].clone()).collect(),
            face_ref: Some(id),
        });
    }
    cones.sort_by(|a, b| (a.dim(), &a.ray_ids).cmp(&(b.dim(), &b.ray_ids)));
    Fan {
        n: pair.dim(),
        rays,
        cones,
    }
}

/// `true` iff every cone of the fan is simplicial.
pub fn is_simplicial(fan: &Fan) -> bool {
    fan.is_simplicial()
}

/// A twisted sector of a simplicial toric variety: the orbit closure of a
/// cone `tau` paired with a box element interior to `tau`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricSector {
    /// Index into [`Fan::cones`].
    pub cone_index: usize,
    pub cone: Cone,
    pub element: BoxElement,
    /// Dimension of the orbit closure, `n - dim tau`.
    pub support_dim: usize,
    /// Order of the local group of `tau`.
    pub group_order: BigInt,
}

impl ToricSector {
    pub fn age(&self) -> &BigRational {
        &self.element.age
    }
}

/// All twisted sectors of a simplicial fan, ordered by cone key then by
/// box point.
pub fn toric_twisted_sectors(fan: &Fan) -> Result<Vec<ToricSector>> {
    fan.require_simplicial()?;
    let per_cone: Vec<Vec<ToricSector>> = fan
        .cones
        .par_iter()
        .enumerate()
        .map(|(index, cone)| {
            let elements = box_elements(cone, true)?;
            debug_assert!(
                cone.dim() >= 2 || elements.is_empty(),
                "cones of dim <= 1 have primitive generators"
            );
            let order = quotient_group_order(cone)?;
            Ok(elements
                .into_iter()
                .map(|element| ToricSector {
                    cone_index: index,
                    cone: cone.clone(),
                    element,
                    support_dim: fan.n - cone.dim(),
                    group_order: order.clone(),
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    let mut sectors: Vec<ToricSector> = per_cone.into_iter().flatten().collect();
    sectors.sort_by(compare_sectors);
    Ok(sectors)
}

fn compare_sectors(a: &ToricSector, b: &ToricSector) -> Ordering {
    a.cone
        .key()
        .cmp(&b.cone.key())
        .then_with(|| a.element.point.cmp(&b.element.point))
}

/// `true` iff every box element of every cone has integral age.
pub fn is_gorenstein_fan(fan: &Fan) -> Result<bool> {
    fan.require_simplicial()?;
    let results: Vec<bool> = fan
        .cones
        .par_iter()
        .map(|c| box_elements(c, false).map(|b| b.iter().all(BoxElement::has_integral_age)))
        .collect::<Result<_>>()?;
    Ok(results.into_iter().all(|x| x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::LatticePolytope;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn pair(v: &[&[i64]]) -> ReflexivePair {
        let p = LatticePolytope::from_vertices(
            &v.iter()
                .map(|x| LatticeVector::from_i64s(x))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        ReflexivePair::from_polar(p).unwrap()
    }

    const P11222: [&[i64]; 5] = [
        &[-1, -2, -2, -2],
        &[1, 0, 0, 0],
        &[0, 1, 0, 0],
        &[0, 0, 1, 0],
        &[0, 0, 0, 1],
    ];
    const QUINTIC: [&[i64]; 5] = [
        &[-1, -1, -1, -1],
        &[1, 0, 0, 0],
        &[0, 1, 0, 0],
        &[0, 0, 1, 0],
        &[0, 0, 0, 1],
    ];

    #[test]
    fn group_orders() {
        assert_eq!(
            quotient_group_order(&Cone::from_i64s(&[&[1, 0], &[0, 1]])).unwrap(),
            BigInt::one()
        );
        assert_eq!(
            quotient_group_order(&Cone::from_i64s(&[&[1, 0], &[1, 2]])).unwrap(),
            BigInt::from(2)
        );
        let edge = Cone::from_i64s(&[&[-1, -2, -2, -2], &[1, 0, 0, 0]]);
        assert_eq!(quotient_group_order(&edge).unwrap(), BigInt::from(2));
    }

    #[test]
    fn box_of_plane_cone() {
        let c = Cone::from_i64s(&[&[1, 0], &[1, 2]]);
        let all = box_elements(&c, false).unwrap();
        assert_eq!(all.len(), 2);
        assert_eq!(all[0].point, LatticeVector::zero(2));
        assert_eq!(all[1].point, LatticeVector::from_i64s(&[1, 1]));
        assert_eq!(all[1].coeffs, vec![q(1, 2), q(1, 2)]);
        assert_eq!(all[1].age, q(1, 1));
        assert!(box_elements(&Cone::from_i64s(&[&[1, 0], &[0, 1]]), true)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn box_of_p11222_edge() {
        let edge = Cone::from_i64s(&[&[-1, -2, -2, -2], &[1, 0, 0, 0]]);
        let inner = box_elements(&edge, true).unwrap();
        assert_eq!(inner.len(), 1);
        assert_eq!(inner[0].point, LatticeVector::from_i64s(&[0, -1, -1, -1]));
        assert_eq!(inner[0].coeffs, vec![q(1, 2), q(1, 2)]);
        assert_eq!(inner[0].age, q(1, 1));
        assert_eq!(
            coefficients_in_cone(&edge, &inner[0].point).unwrap(),
            inner[0].coeffs
        );
    }

    #[test]
    fn non_gorenstein_witness() {
        // ages of the box of (1,0),(2,5): 0, 4/5, 3/5, 7/5, 6/5
        let c = Cone::from_i64s(&[&[1, 0], &[2, 5]]);
        let mut ages: Vec<BigRational> = box_elements(&c, false)
            .unwrap()
            .into_iter()
            .map(|b| b.age)
            .collect();
        ages.sort();
        assert_eq!(ages, vec![q(0, 1), q(3, 5), q(4, 5), q(6, 5), q(7, 5)]);
        let rays = vec![
            LatticeVector::from_i64s(&[1, 0]),
            LatticeVector::from_i64s(&[2, 5]),
        ];
        let fan = Fan::from_maximal_cones(2, rays, &[vec![0, 1]]).unwrap();
        assert!(!is_gorenstein_fan(&fan).unwrap());
        let rays = vec![
            LatticeVector::from_i64s(&[1, 0]),
            LatticeVector::from_i64s(&[1, 2]),
        ];
        let fan = Fan::from_maximal_cones(2, rays, &[vec![0, 1]]).unwrap();
        assert!(is_gorenstein_fan(&fan).unwrap());
    }

    #[test]
    fn p11222_fan() {
        let fan = normal_fan(&pair(&P11222));
        assert_eq!(fan.ray_count(), 5);
        assert_eq!(fan.cones_of_dim(4).count(), 5);
        assert!(fan.is_simplicial());
        assert!(is_gorenstein_fan(&fan).unwrap());
        let sectors = toric_twisted_sectors(&fan).unwrap();
        assert_eq!(sectors.len(), 1);
        let s = &sectors[0];
        assert_eq!(s.cone.ray_ids, vec![0, 1]);
        assert_eq!(s.support_dim, 2);
        assert_eq!(s.group_order, BigInt::from(2));
        assert_eq!(s.age(), &q(1, 1));
    }

    #[test]
    fn quintic_fan_is_smooth() {
        let fan = normal_fan(&pair(&QUINTIC));
        assert_eq!(fan.ray_count(), 5);
        for c in fan.cones_of_dim(4) {
            assert_eq!(
                c.generator_matrix().unwrap().determinant().unwrap().abs(),
                BigInt::one()
            );
        }
        assert!(toric_twisted_sectors(&fan).unwrap().is_empty());
    }

    #[test]
    fn cross_polytope_fan_and_cube_fan() {
        let mut cross: Vec<Vec<i64>> = Vec::new();
        for i in 0..4 {
            let mut e = vec![0; 4];
            e[i] = 1;
            cross.push(e.clone());
            e[i] = -1;
            cross.push(e);
        }
        let refs: Vec<&[i64]> = cross.iter().map(|v| v.as_slice()).collect();
        let p = pair(&refs);
        let fan = normal_fan(&p);
        assert_eq!(fan.ray_count(), 8);
        assert_eq!(fan.cones_of_dim(4).count(), 16);
        assert!(fan.is_simplicial());
        // fan over the faces of the cube is not simplicial
        let cube_fan = normal_fan(&p.swapped());
        assert!(!cube_fan.is_simplicial());
        assert!(matches!(
            toric_twisted_sectors(&cube_fan),
            Err(Error::NotSimplicial(_))
        ));
    }

    #[test]
    fn octahedron_fan_is_simplicial() {
        let p = pair(&[
            &[1, 0, 0],
            &[-1, 0, 0],
            &[0, 1, 0],
            &[0, -1, 0],
            &[0, 0, 1],
            &[0, 0, -1],
        ]);
        assert!(normal_fan(&p).is_simplicial());
    }
}
