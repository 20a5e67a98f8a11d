//! Torsor classes and the descent partition of rational points.
//!
//! Integral points of the intermediate model `y^2 - a z^2 = t^2 F(u,v)`
//! carry a class label `(eps, m)`: `m_i` collects the inert primes dividing
//! `F_i(u,v)` to an odd power, `eps_i` records which sign of
//! `F_i(u,v)/m_i` is a norm. The label set is finite (a sign set `Sigma`
//! times a divisor set `M` cut out by the inert parts of the pairwise
//! resultants) and the labelled points partition the rational points; the
//! partition is checked exhaustively at desk scale by [`partition_check`].

use crate::arith::{factorize, signed_squarefree_kernel};
use crate::forms::{resultant_splitting, SurfaceSpec};
use crate::quadfield::{
    self, is_inert, is_norm, is_norm_maximal, MaximalNormDecision, NormDecision,
};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// One torsor class: a sign vector with product one and a vector of positive
/// squarefree integers with square product.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TorsorLabel {
    pub eps: Vec<i8>,
    pub m: Vec<BigInt>,
}

impl TorsorLabel {
    pub fn new(eps: Vec<i8>, m: Vec<BigInt>) -> Result<Self> {
        if eps.len() != m.len() {
            return Err(Error::InvalidPoint("label length mismatch".into()));
        }
        let prod: i32 = eps.iter().map(|&e| e as i32).product();
        if prod != 1 {
            return Err(Error::InvalidPoint("sign product differs from one".into()));
        }
        let mprod: BigInt = m.iter().product();
        if crate::arith::sqrt_exact(&mprod).is_none() {
            return Err(Error::InvalidPoint(format!(
                "divisor product {} is not a square",
                mprod
            )));
        }
        for mi in &m {
            if mi < &BigInt::one() || !factorize(mi)?.is_squarefree() {
                return Err(Error::InvalidPoint(format!("{} not squarefree", mi)));
            }
        }
        Ok(TorsorLabel { eps, m })
    }
}

impl std::fmt::Display for TorsorLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let eps: Vec<String> = self.eps.iter().map(|e| format!("{:+}", e)).collect();
        let m: Vec<String> = self.m.iter().map(|x| x.to_string()).collect();
        write!(f, "eps=({}) m=({})", eps.join(","), m.join(","))
    }
}

/// An integral point on the intermediate model, normalized to
/// `gcd(y,z,t) = gcd(u,v) = 1` and `t > 0`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PointRecord {
    pub y: BigInt,
    pub z: BigInt,
    pub t: BigInt,
    pub u: BigInt,
    pub v: BigInt,
}

impl PointRecord {
    pub fn new(
        spec: &SurfaceSpec,
        y: BigInt,
        z: BigInt,
        t: BigInt,
        u: BigInt,
        v: BigInt,
    ) -> Result<Self> {
        if y.gcd(&z).gcd(&t) != BigInt::one() {
            return Err(Error::InvalidPoint("gcd(y,z,t) != 1".into()));
        }
        if u.gcd(&v) != BigInt::one() {
            return Err(Error::InvalidPoint("gcd(u,v) != 1".into()));
        }
        if !t.is_positive() {
            return Err(Error::InvalidPoint("t must be positive".into()));
        }
        let f = spec.full_form().evaluate(&u, &v);
        if &y * &y - spec.a() * &z * &z != &t * &t * f {
            return Err(Error::InvalidPoint("equation not satisfied".into()));
        }
        Ok(PointRecord { y, z, t, u, v })
    }
}

impl std::fmt::Display for PointRecord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "(y,z,t;u,v)=({},{},{};{},{})",
            self.y, self.z, self.t, self.u, self.v
        )
    }
}

/// The admissible sign vectors: product one, and the first odd-degree factor
/// (when one exists) pinned to +1.
pub fn sigma_set(spec: &SurfaceSpec) -> Vec<Vec<i8>> {
    let degrees = spec.degrees();
    let r = degrees.len();
    let first_odd = degrees.iter().position(|d| d % 2 == 1);
    let mut out = Vec::new();
    for mask in 0..(1u32 << r) {
        let eps: Vec<i8> = (0..r)
            .map(|i| if (mask >> i) & 1 == 1 { -1 } else { 1 })
            .collect();
        if eps.iter().map(|&e| e as i32).product::<i32>() != 1 {
            continue;
        }
        if let Some(i0) = first_odd {
            if eps[i0] != 1 {
                continue;
            }
        }
        out.push(eps);
    }
    out
}

/// The admissible divisor vectors: squarefree `m_i`, supported on the inert
/// parts of the pairwise resultants, with pairwise gcd conditions and square
/// total product. Enumerated prime by prime.
pub fn m_set(spec: &SurfaceSpec) -> Result<Vec<Vec<BigInt>>> {
    let r = spec.factor_count();
    // inert resultant parts per unordered pair
    let mut r_minus: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
    for i in 0..r {
        for j in (i + 1)..r {
            let (_, _, minus) = resultant_splitting(spec, i, j)?;
            r_minus.insert((i, j), minus);
        }
    }
    // all inert primes that appear anywhere
    let mut primes: Vec<BigInt> = Vec::new();
    for minus in r_minus.values() {
        for p in factorize(minus)?.primes() {
            if !primes.contains(p) {
                primes.push(p.clone());
            }
        }
    }
    primes.sort();

    // per prime: choose the subset of indices i with p | m_i; the subset must
    // have even size (square product) and p must divide r^(-1)_{ij} for every
    // pair inside it
    let mut per_prime_choices: Vec<Vec<u32>> = Vec::new();
    for p in &primes {
        let mut choices = Vec::new();
        'mask: for mask in 0..(1u32 << r) {
            if mask.count_ones() % 2 != 0 {
                continue;
            }
            let members: Vec<usize> = (0..r).filter(|i| (mask >> i) & 1 == 1).collect();
            for (ai, &i) in members.iter().enumerate() {
                for &j in &members[(ai + 1)..] {
                    let key = (i.min(j), i.max(j));
                    if !(&r_minus[&key] % p).is_zero() {
                        continue 'mask;
                    }
                }
            }
            choices.push(mask);
        }
        per_prime_choices.push(choices);
    }

    // cartesian product over primes
    let mut vectors: Vec<Vec<BigInt>> = vec![vec![BigInt::one(); r]];
    for (p, choices) in primes.iter().zip(&per_prime_choices) {
        let mut next = Vec::with_capacity(vectors.len() * choices.len());
        for vec_m in &vectors {
            for &mask in choices {
                let mut m = vec_m.clone();
                for (i, mi) in m.iter_mut().enumerate() {
                    if (mask >> i) & 1 == 1 {
                        *mi = &*mi * p;
                    }
                }
                next.push(m);
            }
        }
        vectors = next;
    }
    vectors.sort();
    vectors.dedup();
    Ok(vectors)
}

/// Full label set `Sigma x M`.
pub fn label_set(spec: &SurfaceSpec) -> Result<Vec<TorsorLabel>> {
    let sigmas = sigma_set(spec);
    let ms = m_set(spec)?;
    let mut out = Vec::with_capacity(sigmas.len() * ms.len());
    for eps in &sigmas {
        for m in &ms {
            out.push(TorsorLabel {
                eps: eps.clone(),
                m: m.clone(),
            });
        }
    }
    Ok(out)
}

/// The labels that name pairwise distinct point sets. Over a real field
/// whose fundamental unit has norm -1 the sign twists are all isomorphic
/// (multiplying a witness by the unit flips the sign), so only the all-ones
/// sign vector survives; everywhere else this is the full `Sigma x M`.
pub fn effective_label_set(spec: &SurfaceSpec) -> Result<Vec<TorsorLabel>> {
    let info = quadfield::field_info(spec.a())?;
    if info.is_real() && info.h_plus == Some(1) {
        let ms = m_set(spec)?;
        let r = spec.factor_count();
        return Ok(ms
            .into_iter()
            .map(|m| TorsorLabel { eps: vec![1; r], m })
            .collect());
    }
    label_set(spec)
}

/// Result of assigning a label to a point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Assignment {
    /// every factor value nonzero, ordinary label
    Regular(TorsorLabel),
    /// one factor vanishes at (u,v); its slot is the squarefree completion
    /// and such points are reported apart
    ZeroLocus {
        label: TorsorLabel,
        vanishing: usize,
    },
    /// a norm decision was inconclusive
    Unknown(String),
}

impl Assignment {
    pub fn label(&self) -> Option<&TorsorLabel> {
        match self {
            Assignment::Regular(l) => Some(l),
            Assignment::ZeroLocus { label, .. } => Some(label),
            Assignment::Unknown(_) => None,
        }
    }
}

/// Inert primes dividing `value` to an odd power, as a positive squarefree
/// integer.
fn inert_odd_part(spec: &SurfaceSpec, value: &BigInt) -> Result<BigInt> {
    let mut m = BigInt::one();
    for (p, e) in &factorize(value)?.factors {
        if e % 2 == 1 && is_inert(spec.a(), p) {
            m *= p;
        }
    }
    Ok(m)
}

/// Assign the torsor class of a point.
///
/// `m_i` is the inert odd part of `F_i(u,v)`. For `a < 0` the sign is the
/// sign of `F_i(u,v)`; for `a > 0` with norm-(-1) unit every sign works and
/// `+1` is chosen; for restricted class number two the representable sign of
/// `F_i(u,v)/m_i` decides. When an odd-degree factor is present the point is
/// moved to the `(-u,-v)` branch if needed so the label lands in the sign
/// set. A resulting label outside `Sigma x M` is a hard error since it would
/// falsify the partition property.
pub fn assign_label(spec: &SurfaceSpec, pt: &PointRecord) -> Result<Assignment> {
    let values = spec.factor_values(&pt.u, &pt.v);
    let zero_count = values.iter().filter(|x| x.is_zero()).count();
    if zero_count > 1 {
        return Err(Error::InvalidPoint(
            "two factors vanish at a primitive point".into(),
        ));
    }
    let vanishing = values.iter().position(|x| x.is_zero());
    let r = values.len();
    let degrees = spec.degrees();
    let first_odd = degrees.iter().position(|d| d % 2 == 1);

    let info = quadfield::field_info(spec.a())?;
    let real_all_plus = info.is_real() && info.h_plus == Some(1);

    let mut m = vec![BigInt::one(); r];
    let mut eps = vec![1i8; r];
    for (i, value) in values.iter().enumerate() {
        if Some(i) == vanishing {
            continue;
        }
        m[i] = inert_odd_part(spec, value)?;
        if spec.a().is_negative() {
            eps[i] = if value.is_negative() { -1 } else { 1 };
        } else if real_all_plus {
            eps[i] = 1;
        } else {
            // restricted class number 2: decide the representable sign
            let reduced = value / &m[i];
            match is_norm_maximal(&reduced, spec.a())? {
                MaximalNormDecision::Representable { .. } => eps[i] = 1,
                MaximalNormDecision::NotRepresentable => {
                    match is_norm_maximal(&(-reduced), spec.a())? {
                        MaximalNormDecision::Representable { .. } => eps[i] = -1,
                        MaximalNormDecision::NotRepresentable => {
                            return Err(Error::PartitionFalsified(format!(
                                "neither sign of F_{}/m_{} is a norm at {}",
                                i + 1,
                                i + 1,
                                pt
                            )))
                        }
                        MaximalNormDecision::Unknown(why) => return Ok(Assignment::Unknown(why)),
                    }
                }
                MaximalNormDecision::Unknown(why) => return Ok(Assignment::Unknown(why)),
            }
        }
    }

    // vanishing factor: the unique signed squarefree completion making the
    // total product a positive square
    if let Some(i0) = vanishing {
        let mut prod = BigInt::one();
        for i in 0..r {
            if i != i0 {
                prod *= BigInt::from(eps[i]) * &m[i];
            }
        }
        let completion = signed_squarefree_kernel(&prod)?;
        eps[i0] = if completion.is_negative() { -1 } else { 1 };
        m[i0] = completion.abs();
    }

    // odd-degree branch normalization: flip to (-u,-v) when the pinned sign
    // came out negative
    if let Some(i0) = first_odd {
        if eps[i0] == -1 {
            for (i, d) in degrees.iter().enumerate() {
                if d % 2 == 1 {
                    eps[i] = -eps[i];
                }
            }
        }
    }

    let label = TorsorLabel::new(eps, m).map_err(|e| {
        Error::PartitionFalsified(format!("label invariant broken at {}: {}", pt, e))
    })?;
    // the label must live in the finite class set
    if !sigma_set(spec).contains(&label.eps) || !m_set(spec)?.contains(&label.m) {
        return Err(Error::PartitionFalsified(format!(
            "label {} of {} escapes the class set",
            label, pt
        )));
    }
    match vanishing {
        Some(v) => Ok(Assignment::ZeroLocus {
            label,
            vanishing: v,
        }),
        None => Ok(Assignment::Regular(label)),
    }
}

/// Tri-state membership.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    In,
    Out,
    Unknown(String),
}

/// Does the point lie in the image of the torsor with the given label?
///
/// Checks, for every factor: matching inert valuation parities with `m_i`,
/// positivity of `eps_i F_i(u,v)` when `a < 0`, and representability of
/// `F_i(u,v)/(eps_i m_i)`. With an odd-degree factor both the `(u,v)` and
/// `(-u,-v)` branches are admitted. A vanishing factor value is accepted
/// exactly when the label slot equals the squarefree completion used by
/// [`assign_label`].
pub fn membership_test(
    spec: &SurfaceSpec,
    label: &TorsorLabel,
    pt: &PointRecord,
) -> Result<Membership> {
    let degrees = spec.degrees();
    let has_odd = degrees.iter().any(|d| d % 2 == 1);
    let branches: &[i8] = if has_odd { &[1, -1] } else { &[1] };
    let mut unknown: Option<String> = None;
    for &branch in branches {
        let u = &pt.u * BigInt::from(branch);
        let v = &pt.v * BigInt::from(branch);
        match branch_membership(spec, label, &u, &v)? {
            Membership::In => return Ok(Membership::In),
            Membership::Out => {}
            Membership::Unknown(why) => unknown = Some(why),
        }
    }
    Ok(match unknown {
        Some(why) => Membership::Unknown(why),
        None => Membership::Out,
    })
}

fn branch_membership(
    spec: &SurfaceSpec,
    label: &TorsorLabel,
    u: &BigInt,
    v: &BigInt,
) -> Result<Membership> {
    let values = spec.factor_values(u, v);
    let vanishing = values.iter().position(|x| x.is_zero());
    if values.iter().filter(|x| x.is_zero()).count() > 1 {
        return Err(Error::InvalidPoint("two factors vanish".into()));
    }
    // vanishing factor: label slot must equal the forced completion
    if let Some(i0) = vanishing {
        let mut prod = BigInt::one();
        for (i, (e, m)) in label.eps.iter().zip(&label.m).enumerate() {
            if i != i0 {
                prod *= BigInt::from(*e) * m;
            }
        }
        let completion = signed_squarefree_kernel(&prod)?;
        let slot = BigInt::from(label.eps[i0]) * &label.m[i0];
        if slot != completion {
            return Ok(Membership::Out);
        }
    }
    for (i, value) in values.iter().enumerate() {
        if Some(i) == vanishing {
            continue;
        }
        // inert valuation parities must match m_i
        let fz = factorize(value)?;
        for (p, e) in &fz.factors {
            if !is_inert(spec.a(), p) {
                continue;
            }
            let mu = if (&label.m[i] % p).is_zero() { 1u32 } else { 0 };
            if (e % 2) != mu {
                return Ok(Membership::Out);
            }
        }
        // m_i must divide the value (no stray inert primes in m_i)
        if !(value % &label.m[i]).is_zero() {
            return Ok(Membership::Out);
        }
        let reduced = value / &label.m[i] * BigInt::from(label.eps[i]);
        if spec.a().is_negative() && !reduced.is_positive() {
            return Ok(Membership::Out);
        }
        match is_norm_maximal(&reduced, spec.a())? {
            MaximalNormDecision::Representable { .. } => {}
            MaximalNormDecision::NotRepresentable => return Ok(Membership::Out),
            MaximalNormDecision::Unknown(why) => return Ok(Membership::Unknown(why)),
        }
    }
    Ok(Membership::In)
}

/// Witness data for one factor on the class torsor: `F_i(u,v) = n_i (s^2 -
/// a t^2)` with `s, t` integral or half-integral (denominator two appears
/// only over fields with half-integral algebraic integers).
#[derive(Debug, Clone)]
pub struct FactorWitness {
    pub n_i: BigInt,
    pub s: BigRational,
    pub t: BigRational,
}

/// Realize the point on the class torsor: per factor, `n_i = eps_i m_i` and
/// a witness `(s_i, t_i)` with `F_i(u,v) = n_i (s_i^2 - a t_i^2)` exactly,
/// plus an integral witness that the product of the `n_i` is a norm (it is
/// a perfect square by the label invariants).
pub fn lambda_torsor_witness(
    spec: &SurfaceSpec,
    pt: &PointRecord,
    label: &TorsorLabel,
) -> Result<Option<(Vec<FactorWitness>, (BigInt, BigInt))>> {
    // pick the accepting branch
    let degrees = spec.degrees();
    let has_odd = degrees.iter().any(|d| d % 2 == 1);
    let branches: &[i8] = if has_odd { &[1, -1] } else { &[1] };
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    for &branch in branches {
        let u = &pt.u * BigInt::from(branch);
        let v = &pt.v * BigInt::from(branch);
        if branch_membership(spec, label, &u, &v)? != Membership::In {
            continue;
        }
        let values = spec.factor_values(&u, &v);
        let mut witnesses = Vec::new();
        let mut ok = true;
        for (i, value) in values.iter().enumerate() {
            let n_i = BigInt::from(label.eps[i]) * &label.m[i];
            if value.is_zero() {
                witnesses.push(FactorWitness {
                    n_i,
                    s: BigRational::zero(),
                    t: BigRational::zero(),
                });
                continue;
            }
            let reduced = value / &n_i;
            match is_norm_maximal(&reduced, spec.a())? {
                MaximalNormDecision::Representable { x2, y2 } => witnesses.push(FactorWitness {
                    n_i,
                    s: BigRational::from_integer(x2) * &half,
                    t: BigRational::from_integer(y2) * &half,
                }),
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        let n_prod: BigInt = witnesses.iter().map(|w| w.n_i.clone()).product();
        match is_norm(&n_prod, spec.a())? {
            NormDecision::Representable(x, y) => return Ok(Some((witnesses, (x, y)))),
            NormDecision::NotRepresentable => {
                return Err(Error::PartitionFalsified(format!(
                    "product of class integers {} is not a norm",
                    n_prod
                )))
            }
            NormDecision::Unknown(_) => return Ok(None),
        }
    }
    Ok(None)
}

/// Outcome of the exhaustive partition verification.
#[derive(Debug, Clone)]
pub struct PartitionReport {
    pub bound: u64,
    pub points: u64,
    pub per_label: BTreeMap<TorsorLabel, u64>,
    pub zero_locus: u64,
    pub unknowns: u64,
    /// points with no accepting label, or more than one
    pub violations: Vec<String>,
}

impl PartitionReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

enum PointOutcome {
    Labelled(TorsorLabel, bool),
    Unknown,
    Violation(String),
}

/// Enumerate every point of height at most `bound`, assign labels, and check
/// that membership accepts exactly the assigned label among all classes.
/// Points are processed in parallel and the per-label tallies merged.
pub fn partition_check(spec: &SurfaceSpec, bound: u64) -> Result<PartitionReport> {
    use rayon::prelude::*;
    spec.ensure_valid()?;
    let labels = effective_label_set(spec)?;
    let points = crate::counting::enumerate_points(spec, bound)?;
    let outcomes: Vec<Result<PointOutcome>> = points
        .par_iter()
        .map(|pt| -> Result<PointOutcome> {
            let assigned = assign_label(spec, pt)?;
            let is_zero_locus = matches!(assigned, Assignment::ZeroLocus { .. });
            let Some(assigned_label) = assigned.label() else {
                return Ok(PointOutcome::Unknown);
            };
            let mut accepting: Vec<&TorsorLabel> = Vec::new();
            for label in &labels {
                match membership_test(spec, label, pt)? {
                    Membership::In => accepting.push(label),
                    Membership::Out => {}
                    Membership::Unknown(_) => return Ok(PointOutcome::Unknown),
                }
            }
            if accepting.len() != 1 {
                return Ok(PointOutcome::Violation(format!(
                    "{} accepted by {} labels: [{}] (assigned {})",
                    pt,
                    accepting.len(),
                    accepting
                        .iter()
                        .map(|l| l.to_string())
                        .collect::<Vec<_>>()
                        .join("; "),
                    assigned_label
                )));
            }
            if accepting[0] != assigned_label {
                return Ok(PointOutcome::Violation(format!(
                    "{} assigned {} but accepted by {}",
                    pt, assigned_label, accepting[0]
                )));
            }
            Ok(PointOutcome::Labelled(
                assigned_label.clone(),
                is_zero_locus,
            ))
        })
        .collect();

    let mut per_label: BTreeMap<TorsorLabel, u64> = BTreeMap::new();
    let mut zero_locus = 0u64;
    let mut unknowns = 0u64;
    let mut violations = Vec::new();
    for outcome in outcomes {
        match outcome? {
            PointOutcome::Labelled(label, true) => {
                zero_locus += 1;
                let _ = label;
            }
            PointOutcome::Labelled(label, false) => {
                *per_label.entry(label).or_insert(0) += 1;
            }
            PointOutcome::Unknown => unknowns += 1,
            PointOutcome::Violation(v) => violations.push(v),
        }
    }
    Ok(PartitionReport {
        bound,
        points: points.len() as u64,
        per_label,
        zero_locus,
        unknowns,
        violations,
    })
}
