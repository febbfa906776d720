//! Box elements of simplicial cones and the twisted sectors of a simplicial
//! toric variety.
//!
//! `cargo run --example toric_sectors`

use reflexorb::fan::{box_elements, is_gorenstein_fan, normal_fan, toric_twisted_sectors, Cone};
use reflexorb::wps::wps_polytope;
use reflexorb::ReflexivePair;

fn main() -> reflexorb::Result<()> {
    let cone = Cone::from_i64s(&[&[1, 0], &[2, 5]]);
    println!("box of <(1,0),(2,5)>:");
    for b in box_elements(&cone, false)? {
        let coeffs: Vec<String> = b.coeffs.iter().map(ToString::to_string).collect();
        println!("  {} = ({}), age {}", b.point, coeffs.join(", "), b.age);
    }

    for weights in [&[1, 1, 2, 2, 2][..], &[1, 1, 1, 1, 4], &[1, 1, 1, 1, 1]] {
        let pair = ReflexivePair::from_polar(wps_polytope(weights)?)?;
        let fan = normal_fan(&pair);
        let sectors = toric_twisted_sectors(&fan)?;
        println!(
            "P{weights:?}: {} twisted sectors, Gorenstein {}",
            sectors.len(),
            is_gorenstein_fan(&fan)?
        );
        for s in sectors {
            println!(
                "  rays {:?}  point {}  age {}  |G| = {}  support dim {}",
                s.cone.ray_ids,
                s.element.point,
                s.age(),
                s.group_order,
                s.support_dim
            );
        }
    }
    Ok(())
}
