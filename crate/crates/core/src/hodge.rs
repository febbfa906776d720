//! Twisted sectors of the anticanonical Calabi-Yau hypersurface and its
//! orbifold Hodge numbers `h^{1,1}_orb` and `h^{n-2,1}_orb`.
//!
//! Everything is combinatorial: the hypersurface is never written down, only
//! the face data of the reflexive pair enters. The closed formulas are
//! evaluated from lattice-point counts and, independently, reassembled from
//! the untwisted part plus the per-sector contributions so the two routes
//! can be compared on every run.

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fan::{box_elements, normal_fan, BoxElement, Cone, Fan};
use crate::polytope::ReflexivePair;

/// Smallest dimension for which the Lefschetz argument pins `h^{1,1}(V)`.
pub const MIN_FORMULA_DIM: usize = 4;

/// A twisted sector datum of the hypersurface: a face `F°` of the polar
/// polytope with `1 <= dim F° <= n-2` and a box element interior to the cone
/// over it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CySector {
    /// Face id in the polar polytope.
    pub face: usize,
    pub face_dim: usize,
    /// Id of the dual face in `delta`.
    pub dual_face: usize,
    pub cone: Cone,
    pub element: BoxElement,
    /// Number of connected twisted sectors this datum accounts for.
    pub components: usize,
    /// `h^{n-3,0}` of each component; only set when `dim F° = 1`.
    pub h_top: Option<usize>,
}

impl CySector {
    pub fn age(&self) -> &num_rational::BigRational {
        &self.element.age
    }

    /// Age-one sectors are the only ones entering `h^{1,1}_orb` and `h^{n-2,1}_orb`.
    pub fn used_by_formulas(&self) -> bool {
        self.element.age.is_one()
    }
}

fn simplicial_fan(pair: &ReflexivePair) -> Result<Fan> {
    let fan = normal_fan(pair);
    if !fan.is_simplicial() {
        return Err(Error::NotSimplicial(
            "normal fan has a non-simplicial cone".into(),
        ));
    }
    Ok(fan)
}

fn require_formula_range(n: usize) -> Result<()> {
    if n < MIN_FORMULA_DIM {
        Err(Error::LefschetzRange(n))
    } else {
        Ok(())
    }
}

/// Twisted sectors of the generic anticanonical hypersurface, ordered by
/// face id then box point.
pub fn cy_twisted_sectors(pair: &ReflexivePair) -> Result<Vec<CySector>> {
    let fan = simplicial_fan(pair)?;
    let n = pair.dim();
    if n < 2 {
        return Err(Error::Hypothesis(format!(
            "hypersurface sectors need n >= 2, got {n}"
        )));
    }
    let polar = pair.delta_polar();
    let per_cone: Vec<Vec<CySector>> = fan
        .cones()
        .par_iter()
        .filter_map(|cone| {
            let face = cone.face_ref?;
            let face_dim = polar.face(face).dim;
            (1..=n.saturating_sub(2))
                .contains(&face_dim)
                .then_some((cone, face, face_dim))
        })
        .map(|(cone, face, face_dim)| {
            let dual_face = pair
                .dual_of_polar_face(face)
                .expect("proper faces have duals");
            let dual_interior = pair.delta().face(dual_face).interior_count();
            let components = if face_dim == n - 2 {
                dual_interior + 1
            } else {
                1
            };
            let h_top = (face_dim == 1).then_some(dual_interior);
            Ok(box_elements(cone, true)?
                .into_iter()
                .map(|element| CySector {
                    face,
                    face_dim,
                    dual_face,
                    cone: cone.clone(),
                    element,
                    components,
                    h_top,
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    let mut sectors: Vec<CySector> = per_cone.into_iter().flatten().collect();
    sectors.sort_by(|a, b| (a.face, &a.element.point).cmp(&(b.face, &b.element.point)));
    Ok(sectors)
}

/// `h^{n-3,0}` of a sector's components: `l*` of the dual face when
/// `dim F° = 1`, zero otherwise.
pub fn sector_h_top(sector: &CySector, pair: &ReflexivePair) -> usize {
    if sector.face_dim == 1 {
        pair.delta().face(sector.dual_face).interior_count()
    } else {
        0
    }
}

/// Lattice-point data the closed formulas are built from. Swapping the pair
/// exchanges the `polar_*` and `delta_*` fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaInputs {
    pub n: usize,
    /// `l(Δ°)`
    pub l_polar: usize,
    /// `l(Δ)`
    pub l_delta: usize,
    /// `sum l*(F°)` over facets of `Δ°`
    pub polar_facet_interior: usize,
    /// `sum l*(F)` over facets of `Δ`
    pub delta_facet_interior: usize,
    /// `sum l*(F°) l*(dual)` over faces of `Δ°` of dimension `n-2`
    pub polar_codim2_product: usize,
    /// `sum l*(F) l*(dual)` over faces of `Δ` of dimension `n-2`
    pub delta_codim2_product: usize,
}

impl FormulaInputs {
    pub fn of(pair: &ReflexivePair) -> FormulaInputs {
        let n = pair.dim();
        let (delta, polar) = (pair.delta(), pair.delta_polar());
        let facet_sum = |p: &crate::polytope::LatticePolytope| {
            p.faces_of_dim(n - 1).map(|(_, f)| f.interior_count()).sum()
        };
        let polar_codim2_product = if n >= 2 {
            polar
                .faces_of_dim(n - 2)
                .map(|(id, f)| {
                    f.interior_count()
                        * delta
                            .face(pair.dual_of_polar_face(id).unwrap())
                            .interior_count()
                })
                .sum()
        } else {
            0
        };
        let delta_codim2_product = if n >= 2 {
            delta
                .faces_of_dim(n - 2)
                .map(|(id, f)| {
                    f.interior_count()
                        * polar
                            .face(pair.dual_of_delta_face(id).unwrap())
                            .interior_count()
                })
                .sum()
        } else {
            0
        };
        FormulaInputs {
            n,
            l_polar: polar.lattice_point_count(1),
            l_delta: delta.lattice_point_count(1),
            polar_facet_interior: facet_sum(polar),
            delta_facet_interior: facet_sum(delta),
            polar_codim2_product,
            delta_codim2_product,
        }
    }

    pub fn swapped(&self) -> FormulaInputs {
        FormulaInputs {
            n: self.n,
            l_polar: self.l_delta,
            l_delta: self.l_polar,
            polar_facet_interior: self.delta_facet_interior,
            delta_facet_interior: self.polar_facet_interior,
            polar_codim2_product: self.delta_codim2_product,
            delta_codim2_product: self.polar_codim2_product,
        }
    }

    fn h11_orb(&self) -> i64 {
        self.l_polar as i64 - self.n as i64 - 1 - self.polar_facet_interior as i64
            + self.polar_codim2_product as i64
    }

    fn hn21_untwisted(&self) -> i64 {
        self.l_delta as i64 - self.n as i64 - 1 - self.delta_facet_interior as i64
    }

    fn hn21_orb(&self) -> i64 {
        self.hn21_untwisted() + self.delta_codim2_product as i64
    }
}

/// `h^{1,1}(V) = r - n`.
pub fn h11_untwisted(pair: &ReflexivePair) -> Result<i64> {
    require_formula_range(pair.dim())?;
    Ok(pair.rays().len() as i64 - pair.dim() as i64)
}

/// `h^{1,1}_orb(V)` from the closed formula.
pub fn h11_orb(pair: &ReflexivePair) -> Result<i64> {
    require_formula_range(pair.dim())?;
    Ok(FormulaInputs::of(pair).h11_orb())
}

/// `h^{n-2,1}(V)` from the facets of `Δ`.
pub fn hn21_untwisted(pair: &ReflexivePair) -> Result<i64> {
    require_formula_range(pair.dim())?;
    Ok(FormulaInputs::of(pair).hn21_untwisted())
}

/// `h^{n-2,1}_orb(V)` from the closed formula.
pub fn hn21_orb(pair: &ReflexivePair) -> Result<i64> {
    require_formula_range(pair.dim())?;
    Ok(FormulaInputs::of(pair).hn21_orb())
}

/// Orbifold Hodge numbers of the hypersurface together with the sector
/// table and the additive split used to audit the closed formulas.
#[derive(Clone, Debug)]
pub struct HodgeReport {
    pub n: usize,
    /// Number of rays of the normal fan.
    pub r: usize,
    pub l_delta: usize,
    pub l_polar: usize,
    pub h11_untwisted: i64,
    pub h11_orb: i64,
    pub hn21_untwisted: i64,
    pub hn21_orb: i64,
    pub sectors: Vec<CySector>,
    /// Age-one sector components, i.e. `h11_orb - h11_untwisted` rebuilt
    /// from the sector table.
    pub h11_sector_sum: i64,
    /// `sum h_top` over age-one sectors, i.e. `hn21_orb - hn21_untwisted`
    /// rebuilt from the sector table.
    pub hn21_sector_sum: i64,
    /// Full table `h^{p,q}_orb`, only for `n = 4`.
    pub diamond: Option<[[i64; 4]; 4]>,
    /// Set when the formulas were evaluated outside `n >= 4`.
    pub forced: bool,
}

impl HodgeReport {
    /// Computes the report; `force` evaluates the formulas for `n < 4`
    /// anyway and marks the result.
    pub fn compute(pair: &ReflexivePair, force: bool) -> Result<HodgeReport> {
        let n = pair.dim();
        let forced = n < MIN_FORMULA_DIM;
        if forced && !force {
            return Err(Error::LefschetzRange(n));
        }
        let sectors = cy_twisted_sectors(pair)?;
        let inputs = FormulaInputs::of(pair);
        let r = pair.rays().len();
        let h11_untwisted = r as i64 - n as i64;
        let hn21_untwisted = inputs.hn21_untwisted();
        let (h11_orb, hn21_orb) = (inputs.h11_orb(), inputs.hn21_orb());
        let age_one = sectors.iter().filter(|s| s.used_by_formulas());
        let h11_sector_sum = age_one.clone().map(|s| s.components as i64).sum();
        let hn21_sector_sum = age_one.map(|s| s.h_top.unwrap_or(0) as i64).sum();
        let diamond = (n == 4).then(|| diamond_table(h11_orb, hn21_orb));
        Ok(HodgeReport {
            n,
            r,
            l_delta: inputs.l_delta,
            l_polar: inputs.l_polar,
            h11_untwisted,
            h11_orb,
            hn21_untwisted,
            hn21_orb,
            sectors,
            h11_sector_sum,
            hn21_sector_sum,
            diamond,
            forced,
        })
    }

    /// Both closed formulas agree with untwisted part plus sector sums.
    pub fn audit_consistent(&self) -> bool {
        self.h11_orb - self.h11_untwisted == self.h11_sector_sum
            && self.hn21_orb - self.hn21_untwisted == self.hn21_sector_sum
    }

    /// `2 (h^{1,1}_orb - h^{2,1}_orb)` for threefolds.
    pub fn euler_characteristic(&self) -> Option<i64> {
        (self.n == 4).then(|| 2 * (self.h11_orb - self.hn21_orb))
    }
}

fn diamond_table(h11: i64, h21: i64) -> [[i64; 4]; 4] {
    let mut h = [[0; 4]; 4];
    h[0][0] = 1;
    h[3][3] = 1;
    h[3][0] = 1;
    h[0][3] = 1;
    h[1][1] = h11;
    h[2][2] = h11;
    h[2][1] = h21;
    h[1][2] = h21;
    h
}

/// Orbifold Hodge table `h[p][q]` of a Calabi-Yau threefold hypersurface.
pub fn hodge_diamond_n4(pair: &ReflexivePair) -> Result<[[i64; 4]; 4]> {
    if pair.dim() != 4 {
        return Err(Error::Hypothesis(format!(
            "the Hodge diamond is only assembled for n = 4, got {}",
            pair.dim()
        )));
    }
    Ok(diamond_table(h11_orb(pair)?, hn21_orb(pair)?))
}

/// Hodge numbers of a pair and of its swap, with the mirror equalities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MirrorReport {
    /// Both normal fans simplicial.
    pub hypothesis_met: bool,
    /// `(h11_orb, hn21_orb)` of the hypersurface in `P_Δ`.
    pub original: Option<(i64, i64)>,
    /// `(h11_orb, hn21_orb)` of the hypersurface in `P_Δ°`.
    pub mirror: Option<(i64, i64)>,
}

impl MirrorReport {
    pub fn h11_matches(&self) -> Option<bool> {
        Some(self.original?.0 == self.mirror?.1)
    }

    pub fn hn21_matches(&self) -> Option<bool> {
        Some(self.original?.1 == self.mirror?.0)
    }

    pub fn passed(&self) -> bool {
        self.h11_matches() == Some(true) && self.hn21_matches() == Some(true)
    }
}

/// Exchanges `Δ` and `Δ°` and compares the two columns of Hodge numbers.
pub fn mirror_check(pair: &ReflexivePair, force: bool) -> Result<MirrorReport> {
    if pair.dim() < MIN_FORMULA_DIM && !force {
        return Err(Error::LefschetzRange(pair.dim()));
    }
    let swapped = pair.swapped();
    if !normal_fan(pair).is_simplicial() || !normal_fan(&swapped).is_simplicial() {
        return Ok(MirrorReport {
            hypothesis_met: false,
            original: None,
            mirror: None,
        });
    }
    let a = FormulaInputs::of(pair);
    let b = FormulaInputs::of(&swapped);
    Ok(MirrorReport {
        hypothesis_met: true,
        original: Some((a.h11_orb(), a.hn21_orb())),
        mirror: Some((b.h11_orb(), b.hn21_orb())),
    })
}

/// Group order of the cone over a sector's face, for reports.
pub fn sector_group_order(sector: &CySector) -> BigInt {
    crate::fan::quotient_group_order(&sector.cone).expect("sector cones are simplicial")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::LatticePolytope;
    use crate::vector::LatticeVector;

    fn pair(v: &[&[i64]]) -> ReflexivePair {
        let p = LatticePolytope::from_vertices(
            &v.iter()
                .map(|x| LatticeVector::from_i64s(x))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        ReflexivePair::from_polar(p).unwrap()
    }

    fn p11222() -> ReflexivePair {
        pair(&[
            &[-1, -2, -2, -2],
            &[1, 0, 0, 0],
            &[0, 1, 0, 0],
            &[0, 0, 1, 0],
            &[0, 0, 0, 1],
        ])
    }

    fn quintic() -> ReflexivePair {
        pair(&[
            &[-1, -1, -1, -1],
            &[1, 0, 0, 0],
            &[0, 1, 0, 0],
            &[0, 0, 1, 0],
            &[0, 0, 0, 1],
        ])
    }

    fn cube_delta() -> ReflexivePair {
        pair(&[
            &[1, 0, 0, 0],
            &[-1, 0, 0, 0],
            &[0, 1, 0, 0],
            &[0, -1, 0, 0],
            &[0, 0, 1, 0],
            &[0, 0, -1, 0],
            &[0, 0, 0, 1],
            &[0, 0, 0, -1],
        ])
    }

    #[test]
    fn p11222_numbers() {
        let p = p11222();
        assert_eq!(h11_untwisted(&p).unwrap(), 1);
        assert_eq!(h11_orb(&p).unwrap(), 2);
        assert_eq!(hn21_untwisted(&p).unwrap(), 83);
        assert_eq!(hn21_orb(&p).unwrap(), 86);
        let sectors = cy_twisted_sectors(&p).unwrap();
        assert_eq!(sectors.len(), 1);
        let s = &sectors[0];
        assert_eq!(s.face_dim, 1);
        assert_eq!(s.element.point, LatticeVector::from_i64s(&[0, -1, -1, -1]));
        assert_eq!(s.components, 1);
        assert_eq!(s.h_top, Some(3));
        assert_eq!(sector_h_top(s, &p), 3);
        let report = HodgeReport::compute(&p, false).unwrap();
        assert!(report.audit_consistent());
        assert_eq!(report.euler_characteristic(), Some(-168));
        let d = hodge_diamond_n4(&p).unwrap();
        assert_eq!((d[1][1], d[2][1], d[3][0], d[1][0]), (2, 86, 1, 0));
    }

    #[test]
    fn quintic_numbers() {
        let p = quintic();
        assert!(cy_twisted_sectors(&p).unwrap().is_empty());
        assert_eq!(h11_untwisted(&p).unwrap(), 1);
        assert_eq!(h11_orb(&p).unwrap(), 1);
        assert_eq!(hn21_untwisted(&p).unwrap(), 101);
        assert_eq!(hn21_orb(&p).unwrap(), 101);
    }

    #[test]
    fn cube_numbers() {
        let p = cube_delta();
        assert_eq!(h11_untwisted(&p).unwrap(), 4);
        assert_eq!(h11_orb(&p).unwrap(), 4);
        assert_eq!(hn21_untwisted(&p).unwrap(), 68);
        assert_eq!(hn21_orb(&p).unwrap(), 68);
        // Δ = cube: its fan over the cube's faces is not simplicial
        let m = mirror_check(&p, false).unwrap();
        assert!(!m.hypothesis_met);
        assert!(!m.passed());
    }

    #[test]
    fn mirror_of_p11222() {
        let m = mirror_check(&p11222(), false).unwrap();
        assert!(m.hypothesis_met);
        assert_eq!(m.original, Some((2, 86)));
        assert_eq!(m.mirror, Some((86, 2)));
        assert!(m.passed());
    }

    #[test]
    fn lefschetz_range_enforced() {
        let hexagon = pair(&[&[1, 0], &[0, 1], &[-1, 1], &[-1, 0], &[0, -1], &[1, -1]]);
        assert_eq!(h11_orb(&hexagon), Err(Error::LefschetzRange(2)));
        assert!(matches!(
            HodgeReport::compute(&hexagon, false),
            Err(Error::LefschetzRange(2))
        ));
        let forced = HodgeReport::compute(&hexagon, true).unwrap();
        assert!(forced.forced);
        assert!(hodge_diamond_n4(&hexagon).is_err());
    }

    #[test]
    fn swapped_formula_inputs() {
        let p = p11222();
        assert_eq!(
            FormulaInputs::of(&p).swapped(),
            FormulaInputs::of(&p.swapped())
        );
    }
}
