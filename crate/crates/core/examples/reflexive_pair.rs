//! Build a reflexive pair from vertices, list its faces with their duals and
//! count lattice points of dilates.
//!
//! `cargo run --example reflexive_pair`

use reflexorb::{LatticePolytope, LatticeVector, ReflexivePair};

fn main() -> reflexorb::Result<()> {
    let rays: Vec<LatticeVector> = [
        [-1, -2, -2, -2],
        [1, 0, 0, 0],
        [0, 1, 0, 0],
        [0, 0, 1, 0],
        [0, 0, 0, 1],
    ]
    .iter()
    .map(|v| LatticeVector::from_i64s(v))
    .collect();
    let polar = LatticePolytope::from_vertices(&rays)?;
    println!(
        "Δ° reflexive: {}, f-vector {:?}",
        polar.is_reflexive(),
        polar.f_vector()
    );

    let pair = ReflexivePair::from_polar(polar)?;
    let delta = pair.delta();
    println!("Δ vertices:");
    for v in delta.vertices() {
        println!("  {v}");
    }
    for k in 1..=3 {
        println!("l({k}Δ) = {}", delta.lattice_point_count(k));
    }

    println!("edges of Δ° and their dual faces in Δ:");
    for (id, edge) in pair.delta_polar().faces_of_dim(1) {
        let dual = delta.face(pair.dual_of_polar_face(id).expect("proper face"));
        println!(
            "  {:?}: l* = {}, dual {:?} of dim {} with l* = {}",
            edge.vertex_ids,
            edge.interior_count(),
            dual.vertex_ids,
            dual.dim,
            dual.interior_count()
        );
    }

    let back = pair.delta().polar_dual()?;
    assert_eq!(back.vertices().len(), pair.delta_polar().vertices().len());
    Ok(())
}
