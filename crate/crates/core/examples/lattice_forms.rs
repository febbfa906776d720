//! Exact integer linear algebra: rank, determinant, Hermite and Smith forms.
//!
//! Run with `cargo run --example lattice_forms`.

use num_bigint::BigInt;
use reflexorb::lattice::{integer_determinant, IntMatrix};

fn matrix(rows: &[&[i64]]) -> IntMatrix {
    let cols = rows[0].len();
    IntMatrix::from_rows(
        cols,
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>()),
    )
}

fn main() {
    // a maximal cone of the fan of P(1,1,2,2,2)
    let chart = matrix(&[
        &[1, 0, 0, 0],
        &[0, 1, 0, 0],
        &[0, 0, 1, 0],
        &[-1, -2, -2, -2],
    ]);
    println!("chart:\n{chart}");
    println!(
        "rank {}, det {}",
        chart.rank(),
        integer_determinant(&chart).unwrap()
    );

    let (h, u) = chart.hermite_normal_form();
    println!("HNF:\n{h}");
    assert_eq!(&u * &chart, h);

    let snf = chart.smith_normal_form();
    let factors: Vec<String> = snf
        .invariant_factors()
        .iter()
        .map(ToString::to_string)
        .collect();
    println!("invariant factors: {}", factors.join(" "));
    assert_eq!(&(&snf.u * &chart) * &snf.v, snf.d);

    let big = matrix(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
    let snf = big.smith_normal_form();
    println!("diag(2, 6, 12) expected, got:\n{}", snf.d);
}
