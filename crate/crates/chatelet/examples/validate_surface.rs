//! Check the standing hypotheses on a few surfaces.
//!
//! Run with: cargo run --example validate_surface

use chatelet::forms::{validate_surface, CheckStatus, SurfaceSpec};

fn show(name: &str, spec: &SurfaceSpec) {
    let report = validate_surface(spec);
    println!(
        "{}: {}",
        name,
        if report.passed() { "PASS" } else { "FAIL" }
    );
    for check in &report.checks {
        match &check.status {
            CheckStatus::Pass => println!("  [ok]   {}", check.name),
            CheckStatus::Warn(m) => println!("  [warn] {}: {}", check.name, m),
            CheckStatus::Fail(m) => println!("  [FAIL] {}: {}", check.name, m),
        }
    }
    println!();
}

fn main() {
    // the running example: a = -1, F = (u^2 + 2v^2)(u^2 + 3v^2)
    let good = SurfaceSpec::from_i64(-1, &[&[1, 0, 2], &[1, 0, 3]]).unwrap();
    show("(u^2+2v^2)(u^2+3v^2) over Q(i)", &good);

    // a must be squarefree
    let bad_a = SurfaceSpec::from_i64(4, &[&[1, 0, 2], &[1, 0, 3]]).unwrap();
    show("same form with a = 4", &bad_a);

    // u^2 + v^2 = (u+iv)(u-iv) splits over Q(i)
    let splits = SurfaceSpec::from_i64(-1, &[&[1, 0, 1], &[1, 0, 2]]).unwrap();
    show("(u^2+v^2)(u^2+2v^2) over Q(i)", &splits);

    // a quartic that stays irreducible over Q(i), certified mod a split prime
    let quartic = SurfaceSpec::from_i64(-1, &[&[1, 0, 0, 0, -2]]).unwrap();
    show("u^4 - 2v^4 over Q(i)", &quartic);

    // odd total degree is rejected
    let odd = SurfaceSpec::from_i64(-1, &[&[1, 0], &[1, 0, 2]]).unwrap();
    show("u (u^2+2v^2), total degree 3", &odd);
}
