//! Height-bounded point enumeration, representation sums and truncated
//! local densities.
//!
//! Points live on the intermediate model `y^2 - a z^2 = t^2 F(u,v)` and the
//! height of a point is the sup norm of the monomial vector
//! `(t u^(n/2), t v u^(n/2-1), ..., t v^(n/2), y, z)`, which for the sup
//! norm collapses to `max(t * max(|u|,|v|)^(n/2), |y|, |z|)`.

use crate::arith::sqrt_exact;
use crate::forms::SurfaceSpec;
use crate::quadfield::r_a_count;
use crate::torsor::{assign_label, Assignment, PointRecord, TorsorLabel};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Counting summary at one height bound.
#[derive(Debug, Clone)]
pub struct CountReport {
    pub bound: u64,
    /// number of rational points of height at most the bound, i.e. a quarter
    /// of the raw quintuple count
    pub total: u64,
    /// raw count over all sign choices; always divisible by four
    pub raw_quintuples: u64,
    pub per_label: BTreeMap<TorsorLabel, u64>,
    /// points over parameters where one factor vanishes
    pub zero_locus: u64,
    pub unknowns: u64,
}

/// Enumerate the canonically normalized points of height at most `bound`:
/// `t > 0`, `(u, v)` lexicographically positive within its sign pair, every
/// `(y, z)` solution listed separately. These biject with the rational
/// points being counted.
pub fn enumerate_points(spec: &SurfaceSpec, bound: u64) -> Result<Vec<PointRecord>> {
    spec.ensure_valid()?;
    let half_deg = (spec.total_degree() / 2) as u32;
    let full = spec.full_form();
    let b = BigInt::from(bound);
    // parallel over t; rayon keeps the range order, so the output is
    // deterministic
    let points: Vec<PointRecord> = (1..=bound)
        .into_par_iter()
        .flat_map_iter(|t_abs| {
            let t = BigInt::from(t_abs);
            let cap = bound / t_abs;
            let m = nth_root_u64(cap, half_deg) as i64;
            let mut local = Vec::new();
            for u in -m..=m {
                for v in -m..=m {
                    if !lex_positive(u, v) || num_integer::gcd(u, v) != 1 {
                        continue;
                    }
                    let ub = BigInt::from(u);
                    let vb = BigInt::from(v);
                    let f = full.evaluate(&ub, &vb);
                    let w = &t * &t * f;
                    for (y, z) in norm_solutions(&w, spec.a(), &b) {
                        if y.gcd(&z).gcd(&t) != BigInt::one() {
                            continue;
                        }
                        local.push(PointRecord {
                            y,
                            z,
                            t: t.clone(),
                            u: ub.clone(),
                            v: vb.clone(),
                        });
                    }
                }
            }
            local
        })
        .collect();
    Ok(points)
}

fn lex_positive(u: i64, v: i64) -> bool {
    u > 0 || (u == 0 && v > 0)
}

/// All integer solutions of `y^2 - a z^2 = w` with `|y|, |z| <= cap`,
/// both signs listed.
fn norm_solutions(w: &BigInt, a: &BigInt, cap: &BigInt) -> Vec<(BigInt, BigInt)> {
    let mut out = Vec::new();
    if a.is_negative() {
        if w.is_negative() {
            return out;
        }
        let abs_a = a.abs();
        let mut z = BigInt::zero();
        loop {
            let az2 = &abs_a * &z * &z;
            if az2 > *w {
                break;
            }
            if &z > cap {
                break;
            }
            let y2 = w - az2;
            if let Some(y) = sqrt_exact(&y2) {
                if &y <= cap {
                    push_signed(&mut out, y, z.clone());
                }
            }
            z += BigInt::one();
        }
    } else {
        let mut z = BigInt::zero();
        while &z <= cap {
            let y2 = w + a * &z * &z;
            if !y2.is_negative() {
                if let Some(y) = sqrt_exact(&y2) {
                    if &y <= cap {
                        push_signed(&mut out, y, z.clone());
                    }
                }
            }
            z += BigInt::one();
        }
    }
    out
}

fn push_signed(out: &mut Vec<(BigInt, BigInt)>, y: BigInt, z: BigInt) {
    let ys: Vec<BigInt> = if y.is_zero() {
        vec![y.clone()]
    } else {
        vec![y.clone(), -y.clone()]
    };
    let zs: Vec<BigInt> = if z.is_zero() {
        vec![z.clone()]
    } else {
        vec![z.clone(), -z.clone()]
    };
    for yy in &ys {
        for zz in &zs {
            out.push((yy.clone(), zz.clone()));
        }
    }
}

fn nth_root_u64(x: u64, k: u32) -> u64 {
    if k == 0 {
        return u64::MAX;
    }
    if k == 1 {
        return x;
    }
    let mut r = (x as f64).powf(1.0 / k as f64).round() as u64 + 1;
    while r > 0 && r.checked_pow(k).is_none_or(|p| p > x) {
        r -= 1;
    }
    r
}

/// Count rational points of height at most `bound`.
///
/// The raw enumeration ranges over every sign choice of `t` and `(u, v)`;
/// the four-fold redundancy of the parametrization is verified by exact
/// divisibility rather than assumed, and the per-label tallies use the
/// canonical representatives.
pub fn count_nb(spec: &SurfaceSpec, bound: u64) -> Result<CountReport> {
    spec.ensure_valid()?;
    let points = enumerate_points(spec, bound)?;
    // raw count: each canonical record stands for 4 quintuples
    // (t sign x (u,v) sign); verify by explicit double-count of one orbit
    // representative set
    let raw = raw_quintuple_count(spec, bound)?;
    if raw % 4 != 0 {
        return Err(Error::PartitionFalsified(format!(
            "raw quintuple count {} is not divisible by 4",
            raw
        )));
    }
    if raw / 4 != points.len() as u64 {
        return Err(Error::PartitionFalsified(format!(
            "canonical points {} disagree with raw/4 = {}",
            points.len(),
            raw / 4
        )));
    }
    let outcomes: Vec<Result<(Option<TorsorLabel>, bool)>> = points
        .par_iter()
        .map(|pt| -> Result<(Option<TorsorLabel>, bool)> {
            match assign_label(spec, pt)? {
                Assignment::Regular(label) => Ok((Some(label), false)),
                Assignment::ZeroLocus { .. } => Ok((None, true)),
                Assignment::Unknown(_) => Ok((None, false)),
            }
        })
        .collect();
    let mut per_label = BTreeMap::new();
    let mut zero_locus = 0u64;
    let mut unknowns = 0u64;
    for o in outcomes {
        match o? {
            (Some(label), _) => *per_label.entry(label).or_insert(0) += 1,
            (None, true) => zero_locus += 1,
            (None, false) => unknowns += 1,
        }
    }
    Ok(CountReport {
        bound,
        total: points.len() as u64,
        raw_quintuples: raw,
        per_label,
        zero_locus,
        unknowns,
    })
}

/// Count quintuples over all signs of `t` and `(u, v)` directly.
fn raw_quintuple_count(spec: &SurfaceSpec, bound: u64) -> Result<u64> {
    let half_deg = (spec.total_degree() / 2) as u32;
    let full = spec.full_form();
    let b = BigInt::from(bound);
    let count = (1..=bound)
        .into_par_iter()
        .map(|t_abs| {
            let cap = bound / t_abs;
            let m = nth_root_u64(cap, half_deg) as i64;
            let mut local = 0u64;
            for t_sign in [1i64, -1] {
                let t = BigInt::from(t_sign * t_abs as i64);
                for u in -m..=m {
                    for v in -m..=m {
                        if (u, v) == (0, 0) || num_integer::gcd(u, v) != 1 {
                            continue;
                        }
                        let f = full.evaluate(&BigInt::from(u), &BigInt::from(v));
                        let w = &t * &t * f;
                        for (y, z) in norm_solutions(&w, spec.a(), &b) {
                            if y.gcd(&z).gcd(&t) == BigInt::one() {
                                local += 1;
                            }
                        }
                    }
                }
            }
            local
        })
        .sum();
    Ok(count)
}

/// Recover `(t, u, v)` from the monomial vector `x_k = t u^(n/2-k) v^k`.
///
/// The input must satisfy the quadric chain `x_(k-1) x_(k+1) = x_k^2`.
/// Exactly two preimages exist: the sign of `(u, v)` flips freely when
/// `n/2` is even, and jointly with `t` when `n/2` is odd.
pub fn recover_parametrization(x: &[BigInt]) -> Result<[(BigInt, BigInt, BigInt); 2]> {
    if x.len() < 2 {
        return Err(Error::Degenerate("need at least two coordinates".into()));
    }
    if x.iter().all(|c| c.is_zero()) {
        return Err(Error::Degenerate("zero vector".into()));
    }
    for k in 1..(x.len() - 1) {
        if &x[k - 1] * &x[k + 1] != &x[k] * &x[k] {
            return Err(Error::Degenerate(format!(
                "chain violated at position {}: {} * {} != {}^2",
                k,
                x[k - 1],
                x[k + 1],
                x[k]
            )));
        }
    }
    let half_deg = (x.len() - 1) as u32;
    let mut g = BigInt::zero();
    for c in x {
        g = g.gcd(c);
    }
    // |u| and |v| from the displayed gcds
    let mut u_abs = BigInt::zero();
    for c in &x[..x.len() - 1] {
        u_abs = u_abs.gcd(&(c / &g));
    }
    let mut v_abs = BigInt::zero();
    for c in &x[1..] {
        v_abs = v_abs.gcd(&(c / &g));
    }
    let mut found = Vec::new();
    for ts in [1i64, -1] {
        for us in [1i64, -1] {
            for vs in [1i64, -1] {
                let t = &g * BigInt::from(ts);
                let u = &u_abs * BigInt::from(us);
                let v = &v_abs * BigInt::from(vs);
                let ok = (0..x.len()).all(|k| {
                    let mut m = t.clone();
                    for _ in 0..(half_deg as usize - k) {
                        m *= &u;
                    }
                    for _ in 0..k {
                        m *= &v;
                    }
                    m == x[k]
                });
                if ok {
                    let cand = (t, u, v);
                    if !found.contains(&cand) {
                        found.push(cand);
                    }
                }
            }
        }
    }
    if found.len() != 2 {
        return Err(Error::Degenerate(format!(
            "expected exactly two preimages, found {}",
            found.len()
        )));
    }
    Ok([found[0].clone(), found[1].clone()])
}

/// `sum over x in [-X, X]^2 with F(x) > 0 of r_a(F(x))`. For `a > 0` the
/// representation count needs an explicit coordinate box.
pub fn sum_r_a(spec: &SurfaceSpec, x_bound: u64, bbox: Option<&BigInt>) -> Result<BigInt> {
    spec.ensure_valid()?;
    if spec.a().is_positive() && bbox.is_none() {
        return Err(Error::Unsupported(
            "real a needs a representation box".into(),
        ));
    }
    let xi = x_bound as i64;
    let full = spec.full_form();
    let mut sum = BigInt::zero();
    for x1 in -xi..=xi {
        for x2 in -xi..=xi {
            let value = full.evaluate(&BigInt::from(x1), &BigInt::from(x2));
            if value.is_positive() {
                sum += r_a_count(&value, spec.a(), bbox)?;
            }
        }
    }
    Ok(sum)
}

/// How one density level was computed.
#[derive(Debug, Clone, PartialEq)]
pub enum DensityMode {
    Exhaustive,
    /// uniform sampling with the given number of samples and the estimated
    /// standard error of the density value
    Sampled {
        samples: u64,
        std_error: f64,
    },
}

/// One truncation level of a local density.
#[derive(Debug, Clone)]
pub struct DensityLevel {
    pub level: u32,
    /// counted solutions divided by p^(4 level)
    pub value: BigRational,
    /// tuples whose factor value vanished to the full modulus: their
    /// valuation was truncated to the level itself before the parity test,
    /// and they are tallied here on top of being counted
    pub ambiguous: u64,
    pub mode: DensityMode,
}

/// Per-level truncated local density of the intermediate model at `p` with
/// the valuation parity constraints of the label's divisor vector.
///
/// Level n counts tuples `(u,v,y,z,t)` mod `p^n` with
/// `t^2 F(u,v) = y^2 - a z^2`, `p` dividing neither `(u,v)` nor `(y,z,t)`
/// entirely, and `min(val_p(F_i(u,v)), n) = val_p(m_i) mod 2` read from the
/// residue; a vanishing residue has truncated valuation n, and how many
/// tuples relied on that fallback is reported in `ambiguous`. Exhaustive
/// mode is exact; above the work budget a seeded uniform sample estimates
/// the value.
pub fn local_density(
    spec: &SurfaceSpec,
    label: &TorsorLabel,
    p: u64,
    levels: u32,
    budget: u64,
    seed: u64,
) -> Result<Vec<DensityLevel>> {
    spec.ensure_valid()?;
    if !crate::arith::is_prime(&BigInt::from(p)) {
        return Err(Error::NotPrime(p.to_string()));
    }
    let mut out = Vec::new();
    for level in 1..=levels {
        let pn = (p as u128).checked_pow(level);
        let work = pn.and_then(|pn| pn.checked_pow(5));
        match (pn, work) {
            (Some(pn), Some(work)) if work <= budget as u128 => {
                out.push(exhaustive_level(spec, label, p, level, pn as u64)?);
            }
            (Some(pn), _) => {
                out.push(sampled_level(spec, label, p, level, pn as u64, seed)?);
            }
            _ => {
                return Err(Error::ResourceLimit(format!(
                    "p^{} overflows the modulus range",
                    level
                )))
            }
        }
    }
    Ok(out)
}

fn exhaustive_level(
    spec: &SurfaceSpec,
    label: &TorsorLabel,
    p: u64,
    level: u32,
    pn: u64,
) -> Result<DensityLevel> {
    let a_mod = spec.a().mod_floor(&BigInt::from(pn)).to_u64().unwrap();
    // table over c of #{(y,z) mod p^n : y^2 - a z^2 = c}, plus the variant
    // with both y and z divisible by p
    let mut pairs_all = vec![0u64; pn as usize];
    let mut pairs_div = vec![0u64; pn as usize];
    for y in 0..pn {
        let y2 = mulmod_u(y, y, pn);
        for z in 0..pn {
            let az2 = mulmod_u(a_mod, mulmod_u(z, z, pn), pn);
            let c = (y2 + pn - az2) % pn;
            pairs_all[c as usize] += 1;
            if y % p == 0 && z % p == 0 {
                pairs_div[c as usize] += 1;
            }
        }
    }
    let r = spec.factor_count();
    let mu: Vec<u32> = (0..r)
        .map(|i| {
            if (&label.m[i] % BigInt::from(p)).is_zero() {
                1
            } else {
                0
            }
        })
        .collect();
    let mut count: u64 = 0;
    let mut ambiguous: u64 = 0;
    for u in 0..pn {
        for v in 0..pn {
            if u % p == 0 && v % p == 0 {
                continue;
            }
            // factor values mod p^n with truncated-valuation parity screen
            let mut parity_ok = true;
            let mut truncated = false;
            let mut f_mod = 1u64;
            for (i, factor) in spec.factors().iter().enumerate() {
                let value = eval_form_mod(factor, u, v, pn);
                f_mod = mulmod_u(f_mod, value, pn);
                let val = if value == 0 {
                    truncated = true;
                    level
                } else {
                    let mut val = 0u32;
                    let mut x = value;
                    while x.is_multiple_of(p) {
                        x /= p;
                        val += 1;
                    }
                    val
                };
                if val % 2 != mu[i] % 2 {
                    parity_ok = false;
                    break;
                }
            }
            if !parity_ok {
                continue;
            }
            // count (y,z,t) with t^2 f = y^2 - a z^2, not all divisible by p
            for t in 0..pn {
                let c = mulmod_u(mulmod_u(t, t, pn), f_mod, pn);
                let total = pairs_all[c as usize];
                let excluded = if t % p == 0 { pairs_div[c as usize] } else { 0 };
                count += total - excluded;
                if truncated {
                    ambiguous += total - excluded;
                }
            }
        }
    }
    let denom = BigInt::from(pn).pow(4);
    Ok(DensityLevel {
        level,
        value: BigRational::new(BigInt::from(count), denom),
        ambiguous,
        mode: DensityMode::Exhaustive,
    })
}

fn sampled_level(
    spec: &SurfaceSpec,
    label: &TorsorLabel,
    p: u64,
    level: u32,
    pn: u64,
    seed: u64,
) -> Result<DensityLevel> {
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    let mut rng = StdRng::seed_from_u64(seed ^ (p << 32) ^ level as u64);
    let a_mod = spec.a().mod_floor(&BigInt::from(pn)).to_u64().unwrap();
    let r = spec.factor_count();
    let mu: Vec<u32> = (0..r)
        .map(|i| {
            if (&label.m[i] % BigInt::from(p)).is_zero() {
                1
            } else {
                0
            }
        })
        .collect();
    let samples: u64 = 2_000_000;
    let mut hits = 0u64;
    let mut ambiguous = 0u64;
    for _ in 0..samples {
        let u = rng.gen_range(0..pn);
        let v = rng.gen_range(0..pn);
        let y = rng.gen_range(0..pn);
        let z = rng.gen_range(0..pn);
        let t = rng.gen_range(0..pn);
        if u % p == 0 && v % p == 0 {
            continue;
        }
        if y % p == 0 && z % p == 0 && t % p == 0 {
            continue;
        }
        let mut parity_ok = true;
        let mut truncated = false;
        let mut f_mod = 1u64;
        for (i, factor) in spec.factors().iter().enumerate() {
            let value = eval_form_mod(factor, u, v, pn);
            f_mod = mulmod_u(f_mod, value, pn);
            let val = if value == 0 {
                truncated = true;
                level
            } else {
                let mut val = 0u32;
                let mut x = value;
                while x.is_multiple_of(p) {
                    x /= p;
                    val += 1;
                }
                val
            };
            if val % 2 != mu[i] % 2 {
                parity_ok = false;
                break;
            }
        }
        if !parity_ok {
            continue;
        }
        let lhs = mulmod_u(mulmod_u(t, t, pn), f_mod, pn);
        let rhs = (mulmod_u(y, y, pn) + pn - mulmod_u(a_mod, mulmod_u(z, z, pn), pn)) % pn;
        if lhs == rhs {
            hits += 1;
            if truncated {
                ambiguous += 1;
            }
        }
    }
    // density estimate: hits/samples * p^(5n) / p^(4n) = hits/samples * p^n
    let fraction = hits as f64 / samples as f64;
    let std_error = ((fraction * (1.0 - fraction)) / samples as f64).sqrt() * pn as f64;
    let value = BigRational::new(BigInt::from(hits) * BigInt::from(pn), BigInt::from(samples));
    Ok(DensityLevel {
        level,
        value,
        ambiguous,
        mode: DensityMode::Sampled { samples, std_error },
    })
}

fn mulmod_u(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn eval_form_mod(f: &crate::forms::BinaryForm, u: u64, v: u64, m: u64) -> u64 {
    let d = f.degree();
    let mb = BigInt::from(m);
    let mut acc = 0u64;
    let mut vj = 1u64;
    // powers of u descending
    let mut upows = vec![1u64; d + 1];
    for k in 1..=d {
        upows[k] = mulmod_u(upows[k - 1], u, m);
    }
    for (j, c) in f.coeffs().iter().enumerate() {
        let cm = c.mod_floor(&mb).to_u64().unwrap();
        let term = mulmod_u(cm, mulmod_u(upows[d - j], vj, m), m);
        acc = (acc + term) % m;
        vj = mulmod_u(vj, v, m);
    }
    acc
}

/// Convenience wrapper returning the default budget used by the CLI.
pub fn default_density_budget() -> u64 {
    2_000_000_000
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn desk_spec() -> SurfaceSpec {
        SurfaceSpec::from_i64(-1, &[&[1, 0, 2], &[1, 0, 3]]).unwrap()
    }

    /// Plain five-fold loop, the independent enumeration oracle.
    fn brute_force_raw(spec: &SurfaceSpec, bound: u64) -> u64 {
        let bb = bound as i64;
        let full = spec.full_form();
        let half_deg = (spec.total_degree() / 2) as u32;
        let mut count = 0u64;
        for t in -bb..=bb {
            if t == 0 {
                continue;
            }
            for u in -bb..=bb {
                for v in -bb..=bb {
                    if num_integer::gcd(u, v) != 1 {
                        continue;
                    }
                    let h = (t as i64).unsigned_abs()
                        * (u.unsigned_abs().max(v.unsigned_abs())).pow(half_deg);
                    if h > bound {
                        continue;
                    }
                    let w = bi(t * t) * full.evaluate(&bi(u), &bi(v));
                    for y in -bb..=bb {
                        for z in -bb..=bb {
                            if bi(y) * bi(y) - spec.a() * bi(z) * bi(z) != w {
                                continue;
                            }
                            if bi(y).gcd(&bi(z)).gcd(&bi(t)) != bi(1) {
                                continue;
                            }
                            count += 1;
                        }
                    }
                }
            }
        }
        count
    }

    #[test]
    fn count_matches_brute_force_at_tiny_height() {
        let spec = desk_spec();
        let report = count_nb(&spec, 12).unwrap();
        let raw = brute_force_raw(&spec, 12);
        assert_eq!(report.raw_quintuples, raw);
        assert_eq!(report.total, raw / 4);
        assert_eq!(report.bound, 12);
    }

    #[test]
    fn count_zero_below_smallest_height() {
        let spec = desk_spec();
        let report = count_nb(&spec, 0).unwrap();
        assert_eq!(report.total, 0);
    }

    #[test]
    fn count_consistency_totals() {
        let spec = desk_spec();
        let report = count_nb(&spec, 30).unwrap();
        let labelled: u64 = report.per_label.values().sum();
        assert_eq!(labelled + report.zero_locus + report.unknowns, report.total);
        assert_eq!(report.unknowns, 0);
    }

    #[test]
    fn recover_examples() {
        let two = recover_parametrization(&[bi(4), bi(6), bi(9)]).unwrap();
        assert!(two.contains(&(bi(1), bi(2), bi(3))));
        assert!(two.contains(&(bi(1), bi(-2), bi(-3))));
        let two = recover_parametrization(&[bi(1), bi(0), bi(0)]).unwrap();
        assert!(two.contains(&(bi(1), bi(1), bi(0))));
        assert!(two.contains(&(bi(1), bi(-1), bi(0))));
        assert!(recover_parametrization(&[bi(2), bi(4), bi(7)]).is_err());
    }

    #[test]
    fn recover_joint_sign_when_half_degree_odd() {
        // n/2 = 3: x = (t u^3, t u^2 v, t u v^2, t v^3)
        let x = [bi(-8), bi(-12), bi(-18), bi(-27)];
        let two = recover_parametrization(&x).unwrap();
        assert!(two.contains(&(bi(1), bi(-2), bi(-3))));
        assert!(two.contains(&(bi(-1), bi(2), bi(3))));
    }

    #[test]
    fn sum_r_a_oracle_equivalence_small() {
        let spec = desk_spec();
        let direct = sum_r_a(&spec, 6, None).unwrap();
        // same sum through the divisor formula
        let full = spec.full_form();
        let mut formula = bi(0);
        for x1 in -6i64..=6 {
            for x2 in -6i64..=6 {
                let value = full.evaluate(&bi(x1), &bi(x2));
                if value.is_positive() {
                    formula += crate::quadfield::r_a_divisor_formula(&value, spec.a()).unwrap();
                }
            }
        }
        assert_eq!(direct, formula);
        assert!(direct > bi(0));
        // monotone in the window size
        assert!(sum_r_a(&spec, 7, None).unwrap() >= direct);
        // empty window
        assert_eq!(sum_r_a(&spec, 0, None).unwrap(), bi(0));
    }

    #[test]
    fn local_density_levels_are_exact() {
        let spec = desk_spec();
        let label = TorsorLabel::new(vec![1, 1], vec![bi(1), bi(1)]).unwrap();
        // zero levels requested: empty sequence
        let none = local_density(&spec, &label, 3, 0, default_density_budget(), 0).unwrap();
        assert!(none.is_empty());
        let levels = local_density(&spec, &label, 3, 2, default_density_budget(), 0).unwrap();
        assert_eq!(levels.len(), 2);
        for (i, lv) in levels.iter().enumerate() {
            assert_eq!(lv.level as usize, i + 1);
            assert_eq!(lv.mode, DensityMode::Exhaustive);
            // denominator divides p^(4 level)
            let denom = BigInt::from(3u64).pow(4 * lv.level);
            assert!((&denom % lv.value.denom()).is_zero());
            assert!(lv.value > BigRational::zero());
        }
    }

    #[test]
    fn exhaustive_level_one_matches_naive_loop() {
        let spec = desk_spec();
        let label = TorsorLabel::new(vec![1, 1], vec![bi(1), bi(1)]).unwrap();
        let p = 5u64;
        let lv = &local_density(&spec, &label, p, 1, default_density_budget(), 0).unwrap()[0];
        // naive five-fold loop mod p
        let full = spec.full_form();
        let mut naive = 0u64;
        for u in 0..p {
            for v in 0..p {
                if u == 0 && v == 0 {
                    continue;
                }
                let f = full
                    .evaluate(&bi(u as i64), &bi(v as i64))
                    .mod_floor(&bi(p as i64))
                    .to_u64()
                    .unwrap();
                // at level one, parity demands the factor values be nonzero
                let f1 = spec.factors()[0]
                    .evaluate(&bi(u as i64), &bi(v as i64))
                    .mod_floor(&bi(p as i64));
                let f2 = spec.factors()[1]
                    .evaluate(&bi(u as i64), &bi(v as i64))
                    .mod_floor(&bi(p as i64));
                if f1.is_zero() || f2.is_zero() {
                    continue; // ambiguous bucket
                }
                for y in 0..p {
                    for z in 0..p {
                        for t in 0..p {
                            if y == 0 && z == 0 && t == 0 {
                                continue;
                            }
                            let lhs = (t * t % p) * f % p;
                            let rhs = (y * y + z * z) % p;
                            if lhs == rhs {
                                naive += 1;
                            }
                        }
                    }
                }
            }
        }
        let expected = BigRational::new(bi(naive as i64), bi((p * p * p * p) as i64));
        assert_eq!(lv.value, expected);
    }

    #[test]
    fn height_cap_uses_integer_roots() {
        assert_eq!(nth_root_u64(50, 2), 7);
        assert_eq!(nth_root_u64(49, 2), 7);
        assert_eq!(nth_root_u64(48, 2), 6);
        assert_eq!(nth_root_u64(1, 3), 1);
        assert_eq!(nth_root_u64(0, 2), 0);
    }
}
