//! Truncated local densities of the intermediate model at small primes.
//!
//! Run with: cargo run --release --example local_densities

use chatelet::counting::{default_density_budget, local_density, DensityMode};
use chatelet::forms::SurfaceSpec;
use chatelet::torsor::effective_label_set;

fn main() {
    let spec = SurfaceSpec::from_i64(-1, &[&[1, 0, 2], &[1, 0, 3]]).unwrap();
    let labels = effective_label_set(&spec).unwrap();

    for p in [3u64, 5] {
        println!("densities at p = {}:", p);
        for label in &labels {
            println!("  class {}:", label);
            let levels = local_density(&spec, label, p, 3, default_density_budget(), 0).unwrap();
            let mut prev: Option<f64> = None;
            for lv in &levels {
                let approx = rational_to_f64(&lv.value);
                let delta = prev.map(|q| (approx - q).abs());
                prev = Some(approx);
                let mode = match lv.mode {
                    DensityMode::Exhaustive => "exact".to_string(),
                    DensityMode::Sampled { samples, std_error } => {
                        format!("sampled n={} se={:.2e}", samples, std_error)
                    }
                };
                println!(
                    "    level {}: {} ~ {:.6}{}  ambiguous {}  [{}]",
                    lv.level,
                    lv.value,
                    approx,
                    match delta {
                        Some(d) => format!("  |diff| {:.6}", d),
                        None => String::new(),
                    },
                    lv.ambiguous,
                    mode,
                );
            }
        }
        println!();
    }
}

fn rational_to_f64(q: &num_rational::BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}
