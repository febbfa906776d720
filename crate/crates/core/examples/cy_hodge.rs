//! Orbifold Hodge numbers of an anticanonical Calabi-Yau hypersurface, with
//! the sector table the closed formulas are audited against.
//!
//! `cargo run --example cy_hodge [vertex-file]` (defaults to data/p11222_polar.txt)

use std::path::PathBuf;

use reflexorb::format::parse_vertex_file;
use reflexorb::hodge::HodgeReport;
use reflexorb::ReflexivePair;

fn main() -> reflexorb::Result<()> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/p11222_polar.txt"));
    let pair = ReflexivePair::from_polar(parse_vertex_file(&path)?)?;
    let h = HodgeReport::compute(&pair, false)?;

    println!("{}", path.display());
    println!("  h11 = {}  h11_orb = {}", h.h11_untwisted, h.h11_orb);
    println!("  h21 = {}  h21_orb = {}", h.hn21_untwisted, h.hn21_orb);
    for s in &h.sectors {
        println!(
            "  sector on face {:?} (dim {}): point {}, age {}, {} component(s), h_top {:?}",
            pair.delta_polar().face(s.face).vertex_ids,
            s.face_dim,
            s.element.point,
            s.age(),
            s.components,
            s.h_top
        );
    }
    println!("  formulas match the sector sums: {}", h.audit_consistent());
    if let Some(chi) = h.euler_characteristic() {
        println!("  Euler characteristic {chi}");
    }
    Ok(())
}
