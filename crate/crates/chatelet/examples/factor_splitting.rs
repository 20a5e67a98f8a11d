//! Splitting quadratic factors into linear forms over multiquadratic fields,
//! their pairwise resultants, and the three-term relations between them.
//!
//! Run with: cargo run --example factor_splitting

use chatelet::forms::BinaryForm;
use chatelet::multiquad::{delta, pluecker_residue, split_quadratic};
use num_bigint::BigInt;

fn main() {
    let f1 = BinaryForm::from_i64(&[1, 0, 2]).unwrap(); // u^2 + 2 v^2
    let f2 = BinaryForm::from_i64(&[1, 0, 3]).unwrap(); // u^2 + 3 v^2

    let (l1, l2) = split_quadratic(&f1).unwrap();
    let (l3, l4) = split_quadratic(&f2).unwrap();
    println!("u^2+2v^2 = (alpha u - beta v)(...) with");
    println!("  L1: alpha = {}, beta = {}", l1.alpha, l1.beta);
    println!("  L2: alpha = {}, beta = {}", l2.alpha, l2.beta);
    println!("u^2+3v^2 splits as");
    println!("  L3: alpha = {}, beta = {}", l3.alpha, l3.beta);
    println!("  L4: alpha = {}, beta = {}", l4.alpha, l4.beta);

    println!();
    println!("pairwise resultants:");
    let pairs = [
        ("L1,L2", &l1, &l2),
        ("L3,L4", &l3, &l4),
        ("L1,L3", &l1, &l3),
        ("L2,L4", &l2, &l4),
    ];
    for (name, a, b) in pairs {
        println!("  delta({}) = {}", name, delta(a, b).unwrap());
    }

    println!();
    println!("three-term relations vanish at every integer point:");
    let forms = [&l1, &l2, &l3, &l4];
    for (u, v) in [(5i64, 7i64), (1, 0), (-3, 11)] {
        for (i, j, k) in [(0usize, 1usize, 2usize), (0, 2, 3), (1, 2, 3)] {
            let r = pluecker_residue(
                forms[i],
                forms[j],
                forms[k],
                &BigInt::from(u),
                &BigInt::from(v),
            )
            .unwrap();
            assert!(r.is_zero());
        }
        println!("  ({}, {}): all residues zero", u, v);
    }
}
