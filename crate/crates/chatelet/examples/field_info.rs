//! Invariants of quadratic fields: fundamental units from continued
//! fractions, class number one certification, negative Pell solvability.
//!
//! Run with: cargo run --example field_info

use chatelet::quadfield::{field_info, negative_pell, FieldKind};
use num_bigint::BigInt;

fn main() {
    println!("real fields:");
    for a in [2i64, 3, 5, 6, 7, 13, 17, 19, 21, 61] {
        let info = field_info(&BigInt::from(a)).unwrap();
        let FieldKind::Real {
            unit,
            unit_norm,
            integral_unit,
        } = &info.kind
        else {
            unreachable!()
        };
        let unit_str = if unit.half {
            format!("({}+{} sqrt{})/2", unit.x, unit.y, a)
        } else {
            format!("{}+{} sqrt{}", unit.x, unit.y, a)
        };
        let pell = negative_pell(&BigInt::from(a)).unwrap();
        println!(
            "  a={:>3}  D={:>4}  unit {:<22} norm {:+}  h={:?} h+={:?}  x^2-{}y^2=-1 {}",
            a,
            info.fundamental_discriminant,
            unit_str,
            unit_norm,
            info.h,
            info.h_plus,
            a,
            match &pell.witness {
                Some((x, y)) => format!("solvable, e.g. ({}, {})", x, y),
                None => "not solvable".into(),
            }
        );
        let _ = integral_unit;
    }

    println!();
    println!("imaginary fields:");
    for a in [-1i64, -2, -3, -5, -7, -11, -14, -19, -43, -67, -163] {
        let info = field_info(&BigInt::from(a)).unwrap();
        println!(
            "  a={:>5}  D={:>5}  h={:?}  roots of unity: {:?}",
            a,
            info.fundamental_discriminant,
            info.h,
            info.omega()
        );
    }
}
