//! Generate Δ° for weighted projective spaces and drive the command-line
//! front end in-process.
//!
//! `cargo run --example weighted_projective -- 1,1,2,2,2`

use reflexorb::cli::run_from_args;
use reflexorb::format::write_vertex_text;
use reflexorb::wps::wps_polytope;

fn main() {
    let weights: Vec<u64> = std::env::args()
        .nth(1)
        .map(|s| {
            s.split(',')
                .map(|w| w.trim().parse().expect("integer weight"))
                .collect()
        })
        .unwrap_or_else(|| vec![1, 1, 2, 2, 2]);
    match wps_polytope(&weights) {
        Ok(p) => print!("{}", write_vertex_text(p.vertices())),
        Err(e) => {
            eprintln!("P{weights:?}: {e} (exit code {})", e.exit_code());
            return;
        }
    }

    let list = weights
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",");
    let out = run_from_args(["reflexorb", "hodge", "--weights", &list, "--format", "tsv"]);
    for line in out.stdout.lines().filter(|l| l.starts_with('h')) {
        println!("{line}");
    }
    if out.code != 0 {
        eprint!("{}", out.stderr);
    }
}
