//! Lattice invariants of a batch of surfaces: the alpha and beta numbers,
//! the three Picard ranks and the Tate cohomology group.
//!
//! Run with: cargo run --example surface_invariants

use chatelet::forms::SurfaceSpec;
use chatelet::picard;

fn main() {
    let surfaces: Vec<(&str, SurfaceSpec)> = vec![
        (
            "(u^2+2v^2)(u^2+3v^2), a=-1",
            SurfaceSpec::from_i64(-1, &[&[1, 0, 2], &[1, 0, 3]]).unwrap(),
        ),
        (
            "u v (u^2+2v^2), a=-1",
            SurfaceSpec::from_i64(-1, &[&[1, 0], &[0, 1], &[1, 0, 2]]).unwrap(),
        ),
        (
            "u (u^3-2v^3), a=-1",
            SurfaceSpec::from_i64(-1, &[&[1, 0], &[1, 0, 0, -2]]).unwrap(),
        ),
        (
            "u^4-2v^4, a=-1",
            SurfaceSpec::from_i64(-1, &[&[1, 0, 0, 0, -2]]).unwrap(),
        ),
        (
            "u v (u-v) (u+v), a=-1",
            SurfaceSpec::from_i64(-1, &[&[1, 0], &[0, 1], &[1, -1], &[1, 1]]).unwrap(),
        ),
        (
            "(u^2+2v^2)(u^2+3v^2)(u^2+5v^2), a=-1",
            SurfaceSpec::from_i64(-1, &[&[1, 0, 2], &[1, 0, 3], &[1, 0, 5]]).unwrap(),
        ),
    ];

    println!(
        "{:45} {:>3} {:>3} {:>6} {:>5} {:>14} {:>10}",
        "surface", "n", "r", "alpha", "beta", "ranks", "H^1"
    );
    for (name, spec) in &surfaces {
        let inv = picard::invariants(spec).unwrap();
        let beta = inv.beta.agreed_value().unwrap();
        println!(
            "{:45} {:>3} {:>3} {:>6} {:>5} {:>14} {:>10}",
            name,
            inv.n,
            inv.r,
            inv.alpha.alpha.to_string(),
            beta.to_string(),
            format!(
                "({},{},{})",
                inv.rank_geometric, inv.rank_quadratic, inv.rank_rational
            ),
            inv.tate.to_string(),
        );
    }

    println!();
    println!("ranks are (geometric, over Q(sqrt a), over Q) = (n+2, r+2, 2);");
    println!("beta agrees with the order of H^1 and with the parity closed form.");
}
