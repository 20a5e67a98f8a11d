//! Norm equations x^2 - a y^2 = n: the representability oracle and the two
//! ways of counting representations for imaginary fields.
//!
//! Run with: cargo run --example norm_representations

use chatelet::quadfield::{is_norm, r_a_count, r_a_divisor_formula, NormDecision};
use num_bigint::BigInt;

fn main() {
    // representability over Q(sqrt 3), where exactly one sign of each
    // admissible n works (the fundamental unit 2 + sqrt3 has norm +1)
    println!("norms from Z[sqrt 3]:");
    for n in [1i64, -1, 2, -2, 11, -11, 13, -13] {
        let d = is_norm(&BigInt::from(n), &BigInt::from(3)).unwrap();
        match d {
            NormDecision::Representable(x, y) => {
                println!("  {:>4} = {}^2 - 3*{}^2", n, x, y)
            }
            NormDecision::NotRepresentable => println!("  {:>4}   is not a norm", n),
            NormDecision::Unknown(why) => println!("  {:>4}   undecided: {}", n, why),
        }
    }

    // counting representations n = y^2 + z^2 two ways
    println!();
    println!("representation counts for a = -1 (count | divisor formula):");
    for n in [1i64, 2, 3, 4, 5, 25, 65, 325] {
        let nb = BigInt::from(n);
        let count = r_a_count(&nb, &BigInt::from(-1), None).unwrap();
        let formula = r_a_divisor_formula(&nb, &BigInt::from(-1)).unwrap();
        println!("  r(-1, {:>4}) = {:>3} | {:>3}", n, count, formula);
        assert_eq!(count, formula);
    }

    // the same equivalence over Q(sqrt -3), where half-integral coordinates
    // (u/2, v/2) with u, v odd contribute
    println!();
    println!("representation counts for a = -3 (count | divisor formula):");
    for n in [1i64, 3, 4, 7, 13, 21, 49] {
        let nb = BigInt::from(n);
        let count = r_a_count(&nb, &BigInt::from(-3), None).unwrap();
        let formula = r_a_divisor_formula(&nb, &BigInt::from(-3)).unwrap();
        println!("  r(-3, {:>4}) = {:>3} | {:>3}", n, count, formula);
        assert_eq!(count, formula);
    }
}
