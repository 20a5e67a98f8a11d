//! Exhaustively verify that every rational point of bounded height lands in
//! exactly one torsor class.
//!
//! Run with: cargo run --release --example partition_check

use chatelet::forms::SurfaceSpec;
use chatelet::torsor::partition_check;

fn main() {
    let surfaces = [
        (
            "(u^2+2v^2)(u^2+3v^2), a=-1",
            SurfaceSpec::from_i64(-1, &[&[1, 0, 2], &[1, 0, 3]]).unwrap(),
        ),
        (
            "u v (u-v) (u+v), a=-1",
            SurfaceSpec::from_i64(-1, &[&[1, 0], &[0, 1], &[1, -1], &[1, 1]]).unwrap(),
        ),
    ];
    for (name, spec) in &surfaces {
        let report = partition_check(spec, 50).unwrap();
        println!("{}", name);
        println!(
            "  height <= {}: {} points, {} on the zero locus, {} undecided",
            report.bound, report.points, report.zero_locus, report.unknowns
        );
        for (label, count) in &report.per_label {
            println!("  {:>6} points in class {}", count, label);
        }
        println!(
            "  partition: {}",
            if report.passed() {
                "every point in exactly one class"
            } else {
                "VIOLATED"
            }
        );
        for v in &report.violations {
            println!("  !! {}", v);
        }
        println!();
    }
}
