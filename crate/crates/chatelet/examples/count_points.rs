//! Count rational points of bounded height, recover parameters from
//! monomial vectors, and compare the representation sum against its divisor
//! formula variant.
//!
//! Run with: cargo run --release --example count_points

use chatelet::counting::{count_nb, recover_parametrization, sum_r_a};
use chatelet::forms::SurfaceSpec;
use num_bigint::BigInt;

fn main() {
    let spec = SurfaceSpec::from_i64(-1, &[&[1, 0, 2], &[1, 0, 3]]).unwrap();

    println!("point counts for (u^2+2v^2)(u^2+3v^2), a=-1:");
    for bound in [10u64, 20, 30, 40, 50] {
        let report = count_nb(&spec, bound).unwrap();
        println!(
            "  N({:>3}) = {:>5}   (raw quintuples {:>6}, zero locus {})",
            bound, report.total, report.raw_quintuples, report.zero_locus
        );
    }

    println!();
    println!("parameter recovery from monomial vectors:");
    for x in [[4i64, 6, 9], [1, 0, 0], [9, -6, 4]] {
        let xb: Vec<BigInt> = x.iter().map(|&c| BigInt::from(c)).collect();
        match recover_parametrization(&xb) {
            Ok(pre) => println!(
                "  {:?} -> (t,u,v) = ({},{},{}) or ({},{},{})",
                x, pre[0].0, pre[0].1, pre[0].2, pre[1].0, pre[1].1, pre[1].2
            ),
            Err(e) => println!("  {:?} -> {}", x, e),
        }
    }

    println!();
    println!("representation sums over the window [-x, x]^2:");
    for x in [5u64, 10, 15] {
        let sum = sum_r_a(&spec, x, None).unwrap();
        println!("  S({:>2}) = {}", x, sum);
    }
}
