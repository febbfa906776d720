//! Cross-check `h^{n-2,1}` against the exact rank of the degree `[-K]` part
//! of the Jacobian ideal for random coefficients.
//!
//! `cargo run --release --example jacobian_oracle [seed]`

use reflexorb::jacobian::jacobian_rank_check;
use reflexorb::wps::wps_polytope;
use reflexorb::ReflexivePair;

fn main() -> reflexorb::Result<()> {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(7);
    for w in [[1, 1, 1, 1, 1], [1, 1, 2, 2, 2], [1, 1, 1, 1, 2]] {
        let pair = ReflexivePair::from_polar(wps_polytope(&w)?)?;
        for p in [&pair, &pair.swapped()] {
            let r = jacobian_rank_check(p, seed)?;
            println!(
                "P{w:?}{}: l(Δ) = {:3}  rank = {:2}  γ = {:2}  quotient = {:3}  formula = {:3}  {}",
                if std::ptr::eq(p, &pair) {
                    "       "
                } else {
                    " mirror"
                },
                r.l_delta,
                r.rank,
                r.gamma,
                r.quotient,
                r.formula,
                if r.agrees() { "ok" } else { "MISMATCH" }
            );
        }
    }
    Ok(())
}
