//! The finite torsor class sets: sign vectors, divisor vectors and their
//! product, plus the label of a sample point.
//!
//! Run with: cargo run --example torsor_classes

use chatelet::forms::SurfaceSpec;
use chatelet::torsor::{
    assign_label, lambda_torsor_witness, m_set, sigma_set, Assignment, PointRecord,
};
use num_bigint::BigInt;

fn show(name: &str, spec: &SurfaceSpec) {
    println!("{}:", name);
    println!("  sign vectors: {:?}", sigma_set(spec));
    let ms = m_set(spec).unwrap();
    let ms: Vec<Vec<String>> = ms
        .iter()
        .map(|m| m.iter().map(|x| x.to_string()).collect())
        .collect();
    println!("  divisor vectors: {:?}", ms);
    println!();
}

fn main() {
    show(
        "(u^2+2v^2)(u^2+3v^2), a=-1",
        &SurfaceSpec::from_i64(-1, &[&[1, 0, 2], &[1, 0, 3]]).unwrap(),
    );
    // resultant 121 = 11^2 with 11 inert: nontrivial divisor vectors
    show(
        "(u^2+2v^2)(u^2+13v^2), a=-1",
        &SurfaceSpec::from_i64(-1, &[&[1, 0, 2], &[1, 0, 13]]).unwrap(),
    );
    show(
        "u v (u-v) (u+v), a=-1",
        &SurfaceSpec::from_i64(-1, &[&[1, 0], &[0, 1], &[1, -1], &[1, 1]]).unwrap(),
    );

    // label a point by hand: (u,v) = (1,2) gives F1 = 9, F2 = 13 and the
    // point (y,z,t) = (9,6,1) since 9^2 + 6^2 = 117 = 9 * 13
    let spec = SurfaceSpec::from_i64(-1, &[&[1, 0, 2], &[1, 0, 3]]).unwrap();
    let pt = PointRecord::new(
        &spec,
        BigInt::from(9),
        BigInt::from(6),
        BigInt::from(1),
        BigInt::from(1),
        BigInt::from(2),
    )
    .unwrap();
    match assign_label(&spec, &pt).unwrap() {
        Assignment::Regular(label) => {
            println!("label of {}: {}", pt, label);
            // realize the point on the class torsor: F_i(u,v) = n_i (s^2 - a t^2)
            let (witnesses, (x, y)) = lambda_torsor_witness(&spec, &pt, &label)
                .unwrap()
                .expect("witnesses exist");
            for (i, w) in witnesses.iter().enumerate() {
                println!("  F_{}(u,v) = {} * ({}^2 + {}^2)", i + 1, w.n_i, w.s, w.t);
            }
            println!("  product of class integers is the norm of {} + {} i", x, y);
        }
        other => println!("unexpected: {:?}", other),
    }
}
