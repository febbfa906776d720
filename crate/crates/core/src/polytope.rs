//! Lattice polytopes, their face lattices, reflexivity and polar duality.

use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::hull::{self, BitSet};
use crate::lattice::IntMatrix;
use crate::vector::LatticeVector;

/// Largest ambient dimension accepted by [`LatticePolytope::from_vertices`].
pub const MAX_DIM: usize = 6;

/// Supporting inequality `<m, normal> >= -offset` of a facet.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FacetInequality {
    pub normal: LatticeVector,
    pub offset: BigInt,
}

impl FacetInequality {
    /// `<m, normal> + k * offset`, nonnegative on the k-th dilate.
    pub fn slack(&self, m: &LatticeVector, k: &BigInt) -> BigInt {
        m.dot(&self.normal) + k * &self.offset
    }
}

/// A nonempty face of a polytope (the polytope itself included).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub dim: usize,
    /// Sorted ids into [`LatticePolytope::vertices`].
    pub vertex_ids: Vec<usize>,
    /// Sorted ids of every facet containing the face.
    pub active_facets: Vec<usize>,
    pub lattice_points: Vec<LatticeVector>,
    /// Lattice points in the relative interior; `l*` is their count.
    pub interior_points: Vec<LatticeVector>,
}

impl Face {
    /// `l*` of the face.
    pub fn interior_count(&self) -> usize {
        self.interior_points.len()
    }
}

/// Full-dimensional lattice polytope with its facets and face lattice.
#[derive(Clone, Debug)]
pub struct LatticePolytope {
    n: usize,
    vertices: Vec<LatticeVector>,
    facets: Vec<FacetInequality>,
    /// Sorted by (dim, vertex ids); the last entry is the polytope itself.
    faces: Vec<Face>,
    by_active: HashMap<Vec<usize>, usize>,
    by_vertices: HashMap<Vec<usize>, usize>,
}

impl LatticePolytope {
    /// Convex hull of `points`. Non-extreme and repeated points are dropped;
    /// the surviving vertices keep their input order.
    pub fn from_vertices(points: &[LatticeVector]) -> Result<LatticePolytope> {
        let n = points.first().map_or(0, LatticeVector::dim);
        if n == 0 || n > MAX_DIM {
            return Err(Error::Dimension(n));
        }
        if points.iter().any(|p| p.dim() != n) {
            return Err(Error::MixedDimensions);
        }
        let mut seen = HashSet::new();
        let unique: Vec<LatticeVector> =
            points.iter().filter(|p| seen.insert(*p)).cloned().collect();
        let basis = hull::affine_basis(&unique);
        if basis.len() != n + 1 {
            return Err(Error::NotFullDimensional {
                rank: basis.len().saturating_sub(1),
                dim: n,
            });
        }

        let mut facets: Vec<FacetInequality> = hull::facets(&unique)
            .into_iter()
            .map(|(normal, offset)| FacetInequality { normal, offset })
            .collect();
        facets.sort();

        let vertices: Vec<LatticeVector> = unique
            .into_iter()
            .filter(|p| {
                let tight: Vec<Vec<BigInt>> = facets
                    .iter()
                    .filter(|f| f.slack(p, &BigInt::one()).is_zero())
                    .map(|f| f.normal.coords().to_vec())
                    .collect();
                tight.len() >= n && IntMatrix::from_rows(n, tight).rank() == n
            })
            .collect();

        Ok(LatticePolytope::assemble(n, vertices, facets))
    }

    fn assemble(
        n: usize,
        vertices: Vec<LatticeVector>,
        facets: Vec<FacetInequality>,
    ) -> LatticePolytope {
        let one = BigInt::one();
        let incidence: Vec<Vec<usize>> = facets
            .iter()
            .map(|f| {
                (0..vertices.len())
                    .filter(|&v| f.slack(&vertices[v], &one).is_zero())
                    .collect()
            })
            .collect();

        // every nonempty face is an intersection of facets
        let mut vertex_sets: HashSet<Vec<usize>> = HashSet::new();
        let mut queue: VecDeque<Vec<usize>> = VecDeque::new();
        vertex_sets.insert((0..vertices.len()).collect());
        for set in &incidence {
            if vertex_sets.insert(set.clone()) {
                queue.push_back(set.clone());
            }
        }
        while let Some(face) = queue.pop_front() {
            for set in &incidence {
                let meet: Vec<usize> = face
                    .iter()
                    .copied()
                    .filter(|v| set.binary_search(v).is_ok())
                    .collect();
                if !meet.is_empty() && vertex_sets.insert(meet.clone()) {
                    queue.push_back(meet);
                }
            }
        }

        let mut faces: Vec<Face> = vertex_sets
            .into_iter()
            .map(|vertex_ids| {
                let active_facets: Vec<usize> = (0..facets.len())
                    .filter(|&f| {
                        vertex_ids
                            .iter()
                            .all(|v| incidence[f].binary_search(v).is_ok())
                    })
                    .collect();
                let normals = active_facets
                    .iter()
                    .map(|&f| facets[f].normal.coords().to_vec());
                let dim = n - IntMatrix::from_rows(n, normals).rank();
                Face {
                    dim,
                    vertex_ids,
                    active_facets,
                    lattice_points: Vec::new(),
                    interior_points: Vec::new(),
                }
            })
            .collect();
        faces.sort_by(|a, b| (a.dim, &a.vertex_ids).cmp(&(b.dim, &b.vertex_ids)));

        let mut polytope = LatticePolytope {
            n,
            by_active: faces
                .iter()
                .enumerate()
                .map(|(i, f)| (f.active_facets.clone(), i))
                .collect(),
            by_vertices: faces
                .iter()
                .enumerate()
                .map(|(i, f)| (f.vertex_ids.clone(), i))
                .collect(),
            vertices,
            facets,
            faces,
        };
        polytope.assign_points();
        polytope
    }

    fn assign_points(&mut self) {
        let points = self.lattice_points(1);
        let one = BigInt::one();
        let active_sets: Vec<BitSet> = self
            .faces
            .iter()
            .map(|f| {
                let mut b = BitSet::with_capacity(self.facets.len());
                f.active_facets.iter().for_each(|&i| b.insert(i));
                b
            })
            .collect();
        for p in points {
            let mut tight = BitSet::with_capacity(self.facets.len());
            let mut tight_ids = Vec::new();
            for (i, f) in self.facets.iter().enumerate() {
                if f.slack(&p, &one).is_zero() {
                    tight.insert(i);
                    tight_ids.push(i);
                }
            }
            for (face, active) in self.faces.iter_mut().zip(&active_sets) {
                if active.is_subset(&tight) {
                    face.lattice_points.push(p.clone());
                }
            }
            // relative interior of exactly one face: the one whose active
            // facets are precisely the tight ones
            let owner = self.by_active[&tight_ids];
            self.faces[owner].interior_points.push(p);
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[LatticeVector] {
        &self.vertices
    }

    pub fn facets(&self) -> &[FacetInequality] {
        &self.facets
    }

    /// All nonempty faces, sorted by dimension then vertex ids.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: usize) -> &Face {
        &self.faces[id]
    }

    pub fn faces_of_dim(&self, dim: usize) -> impl Iterator<Item = (usize, &Face)> {
        self.faces
            .iter()
            .enumerate()
            .filter(move |(_, f)| f.dim == dim)
    }

    /// Proper faces: every face except the polytope itself.
    pub fn proper_faces(&self) -> impl Iterator<Item = (usize, &Face)> {
        let n = self.n;
        self.faces
            .iter()
            .enumerate()
            .filter(move |(_, f)| f.dim < n)
    }

    /// The face whose sorted vertex ids are `ids`, if any.
    pub fn face_by_vertices(&self, ids: &[usize]) -> Option<usize> {
        self.by_vertices.get(ids).copied()
    }

    /// The face whose set of containing facets is exactly `ids`.
    pub fn face_by_active_facets(&self, ids: &[usize]) -> Option<usize> {
        self.by_active.get(ids).copied()
    }

    /// Face id of facet `facet` (as an index into [`Self::facets`]).
    pub fn facet_face(&self, facet: usize) -> usize {
        self.by_active[&vec![facet]]
    }

    /// Counts of faces by dimension, `f_0 .. f_n`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.n + 1];
        for face in &self.faces {
            f[face.dim] += 1;
        }
        f
    }

    /// Lattice points of the k-th dilate, in lexicographic order.
    pub fn lattice_points(&self, k: u32) -> Vec<LatticeVector> {
        assert!(k >= 1, "dilation factor must be positive");
        let k = BigInt::from(k);
        let n = self.n;
        let lo: Vec<BigInt> = (0..n)
            .map(|i| {
                self.vertices
                    .iter()
                    .map(|v| &v.coords()[i] * &k)
                    .min()
                    .unwrap()
            })
            .collect();
        let hi: Vec<BigInt> = (0..n)
            .map(|i| {
                self.vertices
                    .iter()
                    .map(|v| &v.coords()[i] * &k)
                    .max()
                    .unwrap()
            })
            .collect();
        let mut out = Vec::new();
        let mut cur = lo.clone();
        'scan: loop {
            let p = LatticeVector::new(cur.clone());
            if self.facets.iter().all(|f| !f.slack(&p, &k).is_negative()) {
                out.push(p);
            }
            for i in (0..n).rev() {
                if cur[i] < hi[i] {
                    cur[i] += 1;
                    cur[i + 1..].clone_from_slice(&lo[i + 1..]);
                    continue 'scan;
                }
            }
            break;
        }
        out
    }

    /// `l(k * self)`.
    pub fn lattice_point_count(&self, k: u32) -> usize {
        if k == 1 {
            self.faces.last().map_or(0, |f| f.lattice_points.len())
        } else {
            self.lattice_points(k).len()
        }
    }

    /// The polytope itself as a face.
    pub fn whole(&self) -> &Face {
        self.faces.last().expect("polytope has at least one face")
    }

    /// Origin strictly inside and every facet at lattice distance one.
    pub fn is_reflexive(&self) -> bool {
        self.facets.iter().all(|f| f.offset.is_one())
    }

    fn require_reflexive(&self) -> Result<()> {
        match self.facets.iter().find(|f| !f.offset.is_one()) {
            None => Ok(()),
            Some(f) if !f.offset.is_positive() => Err(Error::NotReflexive(
                "origin is not an interior point".into(),
            )),
            Some(f) => Err(Error::NotReflexive(format!(
                "facet with normal {} lies at lattice distance {}",
                f.normal, f.offset
            ))),
        }
    }

    /// Polar dual `{v : <m, v> >= -1 for all m}`; its vertices are the facet
    /// normals of `self`.
    pub fn polar_dual(&self) -> Result<LatticePolytope> {
        self.require_reflexive()?;
        let normals: Vec<LatticeVector> = self.facets.iter().map(|f| f.normal.clone()).collect();
        LatticePolytope::from_vertices(&normals)
    }
}

/// Lattice points of a face in its relative interior.
pub fn interior_lattice_points(face: &Face) -> &[LatticeVector] {
    &face.interior_points
}

/// A reflexive polytope `delta` in `M` with its polar `delta_polar` in `N`
/// and the inclusion-reversing bijection between their proper faces.
#[derive(Clone, Debug)]
pub struct ReflexivePair {
    delta: LatticePolytope,
    delta_polar: LatticePolytope,
    polar_to_delta: Vec<Option<usize>>,
    delta_to_polar: Vec<Option<usize>>,
    /// ray i (vertex i of delta_polar) -> facet id of delta with that normal
    ray_facet: Vec<usize>,
}

impl ReflexivePair {
    /// Builds the pair from the `N`-side polytope, whose faces the fan cones over.
    pub fn from_polar(delta_polar: LatticePolytope) -> Result<ReflexivePair> {
        let delta = delta_polar.polar_dual()?;
        Ok(ReflexivePair::link(delta, delta_polar))
    }

    /// Builds the pair from the `M`-side polytope.
    pub fn from_delta(delta: LatticePolytope) -> Result<ReflexivePair> {
        let delta_polar = delta.polar_dual()?;
        Ok(ReflexivePair::link(delta, delta_polar))
    }

    fn link(delta: LatticePolytope, delta_polar: LatticePolytope) -> ReflexivePair {
        let ray_facet = vertex_to_facet(&delta_polar, &delta);
        let point_facet = vertex_to_facet(&delta, &delta_polar);
        let polar_to_delta = dual_face_map(&delta_polar, &delta, &ray_facet);
        let delta_to_polar = dual_face_map(&delta, &delta_polar, &point_facet);
        ReflexivePair {
            delta,
            delta_polar,
            polar_to_delta,
            delta_to_polar,
            ray_facet,
        }
    }

    /// The same pair with the roles of `M` and `N` exchanged.
    pub fn swapped(&self) -> ReflexivePair {
        ReflexivePair::link(self.delta_polar.clone(), self.delta.clone())
    }

    pub fn dim(&self) -> usize {
        self.delta.dim()
    }

    pub fn delta(&self) -> &LatticePolytope {
        &self.delta
    }

    pub fn delta_polar(&self) -> &LatticePolytope {
        &self.delta_polar
    }

    /// Ray generators `v_1..v_r` of the normal fan (vertices of `delta_polar`).
    pub fn rays(&self) -> &[LatticeVector] {
        self.delta_polar.vertices()
    }

    /// Face of `delta` dual to the proper face `polar_face` of `delta_polar`.
    pub fn dual_of_polar_face(&self, polar_face: usize) -> Option<usize> {
        self.polar_to_delta[polar_face]
    }

    /// Face of `delta_polar` dual to the proper face `face` of `delta`.
    pub fn dual_of_delta_face(&self, face: usize) -> Option<usize> {
        self.delta_to_polar[face]
    }

    /// Face id in `delta` of the facet `F_i = {m : <m, v_i> = -1}`.
    pub fn facet_of_ray(&self, ray: usize) -> usize {
        self.delta.facet_face(self.ray_facet[ray])
    }
}

/// Builds the pair from a reflexive `N`-side polytope.
pub fn build_reflexive_pair(delta_polar: LatticePolytope) -> Result<ReflexivePair> {
    ReflexivePair::from_polar(delta_polar)
}

fn vertex_to_facet(a: &LatticePolytope, b: &LatticePolytope) -> Vec<usize> {
    let by_normal: HashMap<&LatticeVector, usize> = b
        .facets()
        .iter()
        .enumerate()
        .map(|(i, f)| (&f.normal, i))
        .collect();
    a.vertices().iter().map(|v| by_normal[v]).collect()
}

fn dual_face_map(
    a: &LatticePolytope,
    b: &LatticePolytope,
    vertex_facet: &[usize],
) -> Vec<Option<usize>> {
    a.faces()
        .iter()
        .map(|f| {
            if f.dim == a.dim() {
                return None;
            }
            let mut key: Vec<usize> = f.vertex_ids.iter().map(|&v| vertex_facet[v]).collect();
            key.sort_unstable();
            Some(
                b.face_by_active_facets(&key)
                    .expect("dual face exists for reflexive pairs"),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(v: &[&[i64]]) -> LatticePolytope {
        LatticePolytope::from_vertices(
            &v.iter()
                .map(|p| LatticeVector::from_i64s(p))
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    fn p11222() -> LatticePolytope {
        poly(&[
            &[-1, -2, -2, -2],
            &[1, 0, 0, 0],
            &[0, 1, 0, 0],
            &[0, 0, 1, 0],
            &[0, 0, 0, 1],
        ])
    }

    fn cube(n: usize) -> LatticePolytope {
        let pts: Vec<LatticeVector> = (0..1u32 << n)
            .map(|mask| {
                LatticeVector::from_i64s(
                    &(0..n)
                        .map(|i| if mask >> i & 1 == 1 { 1 } else { -1 })
                        .collect::<Vec<_>>(),
                )
            })
            .collect();
        LatticePolytope::from_vertices(&pts).unwrap()
    }

    #[test]
    fn square() {
        let p = poly(&[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]]);
        assert_eq!(p.vertices().len(), 4);
        assert_eq!(p.facets().len(), 4);
        assert_eq!(p.f_vector(), vec![4, 4, 1]);
    }

    #[test]
    fn p11222_is_a_reflexive_simplex() {
        let p = p11222();
        assert_eq!(p.vertices().len(), 5);
        assert_eq!(p.facets().len(), 5);
        assert!(p.is_reflexive());
        assert_eq!(p.lattice_point_count(1), 7);
        let expected_interior = vec![
            LatticeVector::zero(4),
            LatticeVector::from_i64s(&[0, -1, -1, -1]),
        ];
        let mut interiors: Vec<LatticeVector> = p
            .faces()
            .iter()
            .filter(|f| f.dim > 0)
            .flat_map(|f| f.interior_points.clone())
            .collect();
        interiors.sort();
        let mut want = expected_interior;
        want.sort();
        assert_eq!(interiors, want);
    }

    #[test]
    fn duplicates_and_interior_points_are_dropped() {
        let p = poly(&[&[1, 0], &[0, 1], &[-1, -1], &[0, 0], &[1, 0]]);
        assert_eq!(p.vertices().len(), 3);
        assert_eq!(p.vertices()[0], LatticeVector::from_i64s(&[1, 0]));
    }

    #[test]
    fn degenerate_input_rejected() {
        let pts: Vec<LatticeVector> = [[0, 0], [1, 1], [2, 2]]
            .iter()
            .map(|p| LatticeVector::from_i64s(p))
            .collect();
        assert!(matches!(
            LatticePolytope::from_vertices(&pts),
            Err(Error::NotFullDimensional { rank: 1, dim: 2 })
        ));
        assert!(matches!(
            LatticePolytope::from_vertices(&[]),
            Err(Error::Dimension(0))
        ));
    }

    #[test]
    fn reflexivity_examples() {
        assert!(!poly(&[&[2, 0], &[0, 2], &[-2, 0], &[0, -2]]).is_reflexive());
        assert!(cube(4).is_reflexive());
        // origin on the boundary
        let p = poly(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert!(!p.is_reflexive());
        assert!(matches!(p.polar_dual(), Err(Error::NotReflexive(_))));
    }

    #[test]
    fn polar_of_p11222() {
        let d = p11222().polar_dual().unwrap();
        let mut got: Vec<LatticeVector> = d.vertices().to_vec();
        got.sort();
        let mut want: Vec<LatticeVector> = [
            [-1, -1, -1, -1],
            [7, -1, -1, -1],
            [-1, 3, -1, -1],
            [-1, -1, 3, -1],
            [-1, -1, -1, 3],
        ]
        .iter()
        .map(|p| LatticeVector::from_i64s(p))
        .collect();
        want.sort();
        assert_eq!(got, want);
        assert_eq!(d.lattice_point_count(1), 105);
    }

    #[test]
    fn cube_polar_is_cross_polytope() {
        let c = cube(4);
        assert_eq!(c.lattice_point_count(1), 81);
        let cross = c.polar_dual().unwrap();
        assert_eq!(cross.vertices().len(), 8);
        assert!(cross.vertices().iter().all(|v| v
            .coords()
            .iter()
            .filter(|x| !x.is_zero())
            .count()
            == 1));
        let back = cross.polar_dual().unwrap();
        let mut a = back.vertices().to_vec();
        let mut b = c.vertices().to_vec();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn face_duality_for_p11222() {
        let pair = ReflexivePair::from_polar(p11222()).unwrap();
        let polar = pair.delta_polar();
        let edge = polar.face_by_vertices(&[0, 1]).unwrap();
        assert_eq!(polar.face(edge).dim, 1);
        assert_eq!(
            polar.face(edge).interior_points,
            vec![LatticeVector::from_i64s(&[0, -1, -1, -1])]
        );
        let dual = pair.dual_of_polar_face(edge).unwrap();
        assert_eq!(pair.delta().face(dual).dim, 2);
        assert_eq!(pair.delta().face(dual).interior_count(), 3);
        assert_eq!(pair.dual_of_delta_face(dual), Some(edge));
        for (id, f) in polar.proper_faces() {
            let g = pair.delta().face(pair.dual_of_polar_face(id).unwrap());
            assert_eq!(f.dim + g.dim, 3);
        }
    }

    #[test]
    fn cube_facets_pair_with_cross_vertices() {
        let pair = ReflexivePair::from_delta(cube(4)).unwrap();
        for (id, f) in pair.delta().faces_of_dim(3) {
            let g = pair
                .delta_polar()
                .face(pair.dual_of_delta_face(id).unwrap());
            assert_eq!((f.dim, g.dim), (3, 0));
        }
    }

    #[test]
    fn quintic_facet_interior() {
        let pair = ReflexivePair::from_polar(poly(&[
            &[-1, -1, -1, -1],
            &[1, 0, 0, 0],
            &[0, 1, 0, 0],
            &[0, 0, 1, 0],
            &[0, 0, 0, 1],
        ]))
        .unwrap();
        for ray in 0..5 {
            assert_eq!(
                pair.delta().face(pair.facet_of_ray(ray)).interior_count(),
                4
            );
        }
    }

    #[test]
    fn dilates() {
        let sq = poly(&[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]]);
        assert_eq!(sq.lattice_points(1).len(), 9);
        assert_eq!(sq.lattice_points(2).len(), 25);
        let pts = sq.lattice_points(1);
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
    }
}
