//! Exchange Δ and Δ° and compare orbifold Hodge numbers.
//!
//! `cargo run --example mirror_pair`

use reflexorb::hodge::mirror_check;
use reflexorb::wps::wps_polytope;
use reflexorb::{LatticePolytope, LatticeVector, ReflexivePair};

fn report(name: &str, pair: &ReflexivePair) -> reflexorb::Result<()> {
    let m = mirror_check(pair, false)?;
    match (m.original, m.mirror) {
        (Some(a), Some(b)) => println!("{name}: {a:?} <-> {b:?}, mirror symmetric: {}", m.passed()),
        _ => println!("{name}: one of the fans is not simplicial"),
    }
    Ok(())
}

fn main() -> reflexorb::Result<()> {
    for w in [[1, 1, 2, 2, 2], [1, 1, 1, 1, 1], [1, 1, 1, 1, 4]] {
        report(
            &format!("P{w:?}"),
            &ReflexivePair::from_polar(wps_polytope(&w)?)?,
        )?;
    }

    // Z/2 x Z/4 quotient of P(1,1,2,2,2) with h11_orb = h21_orb
    let rays: Vec<LatticeVector> = [
        [7, -2, -4, -8],
        [1, 0, 0, 0],
        [0, 1, 0, 0],
        [-1, 0, 2, 0],
        [-3, 0, 0, 4],
    ]
    .iter()
    .map(|v| LatticeVector::from_i64s(v))
    .collect();
    report(
        "quotient",
        &ReflexivePair::from_polar(LatticePolytope::from_vertices(&rays)?)?,
    )?;

    let cube: Vec<LatticeVector> = (0..16)
        .map(|m| {
            LatticeVector::from_i64s(
                &(0..4)
                    .map(|i| if m >> i & 1 == 1 { 1 } else { -1 })
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    let pair = ReflexivePair::from_delta(LatticePolytope::from_vertices(&cube)?)?;
    report("cube", &pair)?;
    Ok(())
}
