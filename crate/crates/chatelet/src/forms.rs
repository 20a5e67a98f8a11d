//! Integral binary forms, resultants and the surface hypotheses.
//!
//! A surface is described by a squarefree integer `a` together with a
//! factored binary form `F = F_1 ... F_r` of even total degree; the factors
//! must be irreducible over `Q` and stay irreducible over `Q(sqrt(a))`.
//! [`validate_surface`] checks all of this and reports per-hypothesis
//! outcomes instead of aborting on the first failure.

use crate::arith::{self, is_prime, kronecker};
use crate::lattice::{det_bareiss, IntMat};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// How many admissible split primes the irreducibility certificate scans
/// before giving up with `Unknown`.
const CERTIFICATE_PRIME_BUDGET: usize = 50;

/// `F(u,v) = sum_j c_j u^(d-j) v^j`, coefficients listed degree-descending
/// in `u`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    coeffs: Vec<BigInt>,
}

impl BinaryForm {
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.is_empty() || coeffs.iter().all(|c| c.is_zero()) {
            return Err(Error::InvalidForm("all coefficients zero".into()));
        }
        Ok(BinaryForm { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Leading coefficient (of `u^d`).
    pub fn leading(&self) -> &BigInt {
        &self.coeffs[0]
    }

    pub fn evaluate(&self, u: &BigInt, v: &BigInt) -> BigInt {
        // homogeneous Horner: acc_j = acc_(j-1) * u + c_j * v^j
        let mut acc = BigInt::zero();
        let mut vj = BigInt::one();
        for c in &self.coeffs {
            acc = acc * u + c * &vj;
            vj *= v;
        }
        acc
    }

    pub fn evaluate_i64(&self, u: i64, v: i64) -> BigInt {
        self.evaluate(&BigInt::from(u), &BigInt::from(v))
    }

    /// Product of two forms.
    pub fn product(&self, other: &BinaryForm) -> BinaryForm {
        let d = self.degree() + other.degree();
        let mut coeffs = vec![BigInt::zero(); d + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        BinaryForm { coeffs }
    }

    /// Discriminant of a quadratic form a u^2 + b uv + c v^2.
    pub fn quadratic_discriminant(&self) -> Option<BigInt> {
        if self.degree() != 2 {
            return None;
        }
        let (a, b, c) = (&self.coeffs[0], &self.coeffs[1], &self.coeffs[2]);
        Some(b * b - BigInt::from(4) * a * c)
    }

    /// Formal derivative of the dehomogenization F(x,1).
    fn derivative_coeffs(&self) -> Vec<BigInt> {
        let d = self.degree();
        (0..d)
            .map(|j| &self.coeffs[j] * BigInt::from((d - j) as u64))
            .collect()
    }
}

impl std::fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let d = self.degree();
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first && !c.is_negative() {
                write!(f, "+")?;
            }
            first = false;
            let up = d - j;
            let vp = j;
            if up == 0 && vp == 0 {
                write!(f, "{}", c)?;
                continue;
            }
            if c.is_one() {
            } else if (-c).is_one() {
                write!(f, "-")?;
            } else {
                write!(f, "{}*", c)?;
            }
            match (up, vp) {
                (1, 0) => write!(f, "u")?,
                (_, 0) => write!(f, "u^{}", up)?,
                (0, 1) => write!(f, "v")?,
                (0, _) => write!(f, "v^{}", vp)?,
                (1, 1) => write!(f, "u*v")?,
                (1, _) => write!(f, "u*v^{}", vp)?,
                (_, 1) => write!(f, "u^{}*v", up)?,
                _ => write!(f, "u^{}*v^{}", up, vp)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Resultant of the dehomogenizations F(x,1), G(x,1) taken at the declared
/// degrees, i.e. the determinant of the Sylvester matrix built from the full
/// coefficient vectors. Vanishes exactly when the forms share a projective
/// root.
pub fn resultant(f: &BinaryForm, g: &BinaryForm) -> BigInt {
    let df = f.degree();
    let dg = g.degree();
    if df == 0 {
        return f.coeffs[0].pow(dg as u32);
    }
    if dg == 0 {
        return g.coeffs[0].pow(df as u32);
    }
    let n = df + dg;
    let mut m = IntMat::zero(n, n);
    for i in 0..dg {
        for (j, c) in f.coeffs.iter().enumerate() {
            m[(i, i + j)] = c.clone();
        }
    }
    for i in 0..df {
        for (j, c) in g.coeffs.iter().enumerate() {
            m[(dg + i, i + j)] = c.clone();
        }
    }
    det_bareiss(&m)
}

/// Outcome of an irreducibility test over `Q(sqrt(a))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadIrreducibility {
    Irreducible,
    Reducible,
    Unknown,
}

/// Outcome of an irreducibility test over `Q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatIrreducibility {
    Irreducible,
    Reducible,
    Unknown,
}

/// Irreducibility of `f` over `Q` (the form has a factor `v` exactly when the
/// leading coefficient vanishes). Degree <= 2 is decided exactly; degree >= 3
/// uses a rational-root screen plus a finite-field certificate and may return
/// `Unknown`.
pub fn irreducible_over_q(f: &BinaryForm) -> RatIrreducibility {
    let d = f.degree();
    if d == 0 {
        return RatIrreducibility::Reducible; // constants are not factors
    }
    if d == 1 {
        return RatIrreducibility::Irreducible;
    }
    if f.leading().is_zero() {
        return RatIrreducibility::Reducible; // v divides F
    }
    if d == 2 {
        let disc = f.quadratic_discriminant().unwrap();
        return if arith::is_square(&disc) {
            RatIrreducibility::Reducible
        } else {
            RatIrreducibility::Irreducible
        };
    }
    // rational root screen on F(x,1) and the root at infinity handled above
    if has_rational_root(f) {
        return RatIrreducibility::Reducible;
    }
    if d == 3 {
        // a cubic without rational roots is irreducible
        return RatIrreducibility::Irreducible;
    }
    // finite-field certificate: irreducible mod any good prime is conclusive
    let bad = resultant_with_derivative(f) * f.leading();
    let mut tried = 0usize;
    let mut p = 2u64;
    while tried < CERTIFICATE_PRIME_BUDGET {
        if (&bad % BigInt::from(p)).is_zero() {
            p = next_prime(p);
            continue;
        }
        tried += 1;
        if poly_irreducible_mod_p(&f.coeffs, p) {
            return RatIrreducibility::Irreducible;
        }
        p = next_prime(p);
    }
    RatIrreducibility::Unknown
}

fn has_rational_root(f: &BinaryForm) -> bool {
    // roots p/q with p | constant term, q | leading coefficient
    let d = f.degree();
    let c0 = &f.coeffs[0];
    let cd = &f.coeffs[d];
    if cd.is_zero() {
        return true; // u divides F
    }
    let ps = match arith::factorize(cd) {
        Ok(fz) => fz.divisors(),
        Err(_) => return false,
    };
    let qs = match arith::factorize(c0) {
        Ok(fz) => fz.divisors(),
        Err(_) => return false,
    };
    for p in &ps {
        for q in &qs {
            if !p.gcd(q).is_one() {
                continue;
            }
            for sgn in [1i64, -1] {
                let num = p * BigInt::from(sgn);
                if f.evaluate(&num, q).is_zero() {
                    return true;
                }
            }
        }
    }
    false
}

fn resultant_with_derivative(f: &BinaryForm) -> BigInt {
    let der = BinaryForm {
        coeffs: f.derivative_coeffs(),
    };
    if der.coeffs.iter().all(|c| c.is_zero()) {
        return BigInt::zero();
    }
    resultant(f, &der)
}

fn next_prime(p: u64) -> u64 {
    let mut q = p + 1;
    while !is_prime(&BigInt::from(q)) {
        q += 1;
    }
    q
}

/// Irreducibility of a univariate polynomial over F_p (coefficients listed
/// degree-descending; the leading coefficient must be a p-unit).
fn poly_irreducible_mod_p(coeffs: &[BigInt], p: u64) -> bool {
    let pb = BigInt::from(p);
    let mut c: Vec<u64> = coeffs
        .iter()
        .map(|x| x.mod_floor(&pb).to_u64().unwrap())
        .collect();
    // normalize monic
    while c.first().is_some_and(|&x| x == 0) {
        c.remove(0);
    }
    let d = c.len() - 1;
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let inv = mod_inv(c[0], p);
    let f: Vec<u64> = c.iter().map(|&x| mulmod(x, inv, p)).collect();
    // x^(p^d) == x mod f, and gcd(x^(p^(d/q)) - x, f) = 1 for prime q | d
    let x = vec![1, 0]; // the polynomial x
    let mut t = x.clone();
    for _ in 0..d {
        t = poly_powmod(&t, p, &f, p);
    }
    if t != x {
        return false;
    }
    let mut primes = Vec::new();
    let mut dd = d;
    let mut q = 2;
    while q * q <= dd {
        if dd.is_multiple_of(q) {
            primes.push(q);
            while dd.is_multiple_of(q) {
                dd /= q;
            }
        }
        q += 1;
    }
    if dd > 1 {
        primes.push(dd);
    }
    for q in primes {
        let e = d / q;
        let mut t = x.clone();
        for _ in 0..e {
            t = poly_powmod(&t, p, &f, p);
        }
        // gcd(t - x, f)
        let diff = poly_sub(&t, &x, p);
        if poly_gcd_deg(&diff, &f, p) != 0 {
            return false;
        }
    }
    true
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // p prime
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod(result, base, p);
        }
        base = mulmod(base, base, p);
        e >>= 1;
    }
    result
}

fn poly_trim(a: &mut Vec<u64>) {
    while a.len() > 1 && a[0] == 0 {
        a.remove(0);
    }
    if a.is_empty() {
        a.push(0);
    }
}

fn poly_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + mulmod(x, y, p)) % p;
        }
    }
    poly_rem(&prod, f, p)
}

fn poly_rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.to_vec();
    poly_trim(&mut r);
    let df = f.len() - 1;
    while r.len() > df && !(r.len() == 1 && r[0] == 0) {
        let shift = (r.len() - 1) - df;
        let c = r[0]; // f is monic
        if c != 0 {
            for (j, &fc) in f.iter().enumerate() {
                let idx = j;
                let sub = mulmod(c, fc, p);
                let pos = idx;
                let cur = r[pos];
                r[pos] = (cur + p - sub % p) % p;
            }
        }
        let _ = shift;
        r.remove(0);
        poly_trim(&mut r);
        if r.len() - 1 < df {
            break;
        }
    }
    poly_trim(&mut r);
    r
}

fn poly_powmod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut b = poly_rem(base, f, p);
    while e > 0 {
        if e & 1 == 1 {
            result = poly_mulmod(&result, &b, f, p);
        }
        b = poly_mulmod(&b, &b, f, p);
        e >>= 1;
    }
    result
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for (i, &x) in a.iter().rev().enumerate() {
        out[n - 1 - i] = x % p;
    }
    for (i, &x) in b.iter().rev().enumerate() {
        out[n - 1 - i] = (out[n - 1 - i] + p - x % p) % p;
    }
    poly_trim(&mut out);
    out
}

/// Degree of gcd(a, f) over F_p; 0 means coprime.
fn poly_gcd_deg(a: &[u64], f: &[u64], p: u64) -> usize {
    let mut x = f.to_vec();
    let mut y = a.to_vec();
    poly_trim(&mut x);
    poly_trim(&mut y);
    while !(y.len() == 1 && y[0] == 0) {
        // make y monic for poly_rem
        let inv = mod_inv(y[0], p);
        let ym: Vec<u64> = y.iter().map(|&c| mulmod(c, inv, p)).collect();
        let r = poly_rem(&x, &ym, p);
        x = y;
        y = r;
    }
    x.len() - 1
}

/// Does the irreducible form `f` stay irreducible over `Q(sqrt(a))`?
///
/// Degree 1 and odd degrees are always irreducible (an odd-degree extension
/// cannot appear inside a compositum with a quadratic one). Degree 2 is
/// decided by whether disc(f)/a is a nonzero rational square. Even degrees
/// from 4 up are certified irreducible when `f` stays irreducible modulo
/// some good prime split in `Q(sqrt(a))`; the certificate is one-sided, so
/// the scan may end in `Unknown`.
pub fn irreducible_over_quadratic(f: &BinaryForm, a: &BigInt) -> Result<QuadIrreducibility> {
    match irreducible_over_q(f) {
        RatIrreducibility::Irreducible => {}
        RatIrreducibility::Reducible => {
            return Err(Error::InvalidForm(
                "form is reducible over the rationals".into(),
            ))
        }
        RatIrreducibility::Unknown => return Ok(QuadIrreducibility::Unknown),
    }
    let d = f.degree();
    if d == 1 || d % 2 == 1 {
        return Ok(QuadIrreducibility::Irreducible);
    }
    if d == 2 {
        let disc = f.quadratic_discriminant().unwrap();
        // splits over Q(sqrt(a)) iff disc/a is a nonzero rational square,
        // i.e. iff disc * a is a perfect square
        return if !disc.is_zero() && arith::is_square(&(&disc * a)) {
            Ok(QuadIrreducibility::Reducible)
        } else {
            Ok(QuadIrreducibility::Irreducible)
        };
    }
    // even degree >= 4: scan split primes for a certificate
    let bad = resultant_with_derivative(f) * f.leading() * a;
    let mut tried = 0usize;
    let mut p = 2u64;
    while tried < CERTIFICATE_PRIME_BUDGET {
        let pb = BigInt::from(p);
        if (&bad % &pb).is_zero() || kronecker(a, &pb) != 1 {
            p = next_prime(p);
            continue;
        }
        tried += 1;
        if poly_irreducible_mod_p(&f.coeffs, p) {
            return Ok(QuadIrreducibility::Irreducible);
        }
        p = next_prime(p);
    }
    Ok(QuadIrreducibility::Unknown)
}

/// The surface input: `a` and the factored form `F = F_1 ... F_r`.
#[derive(Debug, Clone)]
pub struct SurfaceSpec {
    a: BigInt,
    factors: Vec<BinaryForm>,
}

impl SurfaceSpec {
    /// Structural construction; the hypotheses are checked by
    /// [`validate_surface`].
    pub fn new(a: BigInt, factors: Vec<BinaryForm>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidSurface("no factors".into()));
        }
        if factors.iter().any(|f| f.degree() == 0) {
            return Err(Error::InvalidSurface("constant factor".into()));
        }
        Ok(SurfaceSpec { a, factors })
    }

    pub fn from_i64(a: i64, factors: &[&[i64]]) -> Result<Self> {
        Self::new(
            BigInt::from(a),
            factors
                .iter()
                .map(|c| BinaryForm::from_i64(c))
                .collect::<Result<_>>()?,
        )
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn factors(&self) -> &[BinaryForm] {
        &self.factors
    }

    pub fn factor_count(&self) -> usize {
        self.factors.len()
    }

    /// Total degree n.
    pub fn total_degree(&self) -> usize {
        self.factors.iter().map(|f| f.degree()).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.degree()).collect()
    }

    /// The full form F as a product.
    pub fn full_form(&self) -> BinaryForm {
        let mut it = self.factors.iter();
        let first = it.next().unwrap().clone();
        it.fold(first, |acc, f| acc.product(f))
    }

    /// Evaluate every factor at (u,v).
    pub fn factor_values(&self, u: &BigInt, v: &BigInt) -> Vec<BigInt> {
        self.factors.iter().map(|f| f.evaluate(u, v)).collect()
    }

    /// Validate and error out unless every hard hypothesis holds.
    pub fn ensure_valid(&self) -> Result<ValidationReport> {
        let report = validate_surface(self);
        if report.passed() {
            Ok(report)
        } else {
            Err(Error::ValidationFailed(report.summary()))
        }
    }
}

/// Resultant of two factors together with its split/inert prime parts:
/// `r1` multiplies the distinct primes of `r_ij` that are split or ramified
/// in `Q(sqrt(a))`, `r_minus1` those that are inert. The product `r1 *
/// r_minus1` is the squarefree kernel of `|r_ij|`.
pub fn resultant_splitting(
    spec: &SurfaceSpec,
    i: usize,
    j: usize,
) -> Result<(BigInt, BigInt, BigInt)> {
    if i == j {
        return Err(Error::Degenerate("equal indices".into()));
    }
    let r = resultant(&spec.factors[i], &spec.factors[j]);
    if r.is_zero() {
        return Err(Error::Degenerate("zero resultant".into()));
    }
    let f = arith::factorize(&r)?;
    let mut plus = BigInt::one();
    let mut minus = BigInt::one();
    for p in f.primes() {
        if crate::quadfield::is_inert(&spec.a, p) {
            minus *= p;
        } else {
            plus *= p;
        }
    }
    Ok((r, plus, minus))
}

/// One validation check outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail(String),
    Warn(String),
}

#[derive(Debug, Clone)]
pub struct ValidationCheck {
    pub name: String,
    pub status: CheckStatus,
}

/// Pass/fail/warn report over all surface hypotheses.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub checks: Vec<ValidationCheck>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks
            .iter()
            .all(|c| !matches!(c.status, CheckStatus::Fail(_)))
    }

    pub fn warnings(&self) -> Vec<&ValidationCheck> {
        self.checks
            .iter()
            .filter(|c| matches!(c.status, CheckStatus::Warn(_)))
            .collect()
    }

    pub fn summary(&self) -> String {
        let fails: Vec<String> = self
            .checks
            .iter()
            .filter_map(|c| match &c.status {
                CheckStatus::Fail(msg) => Some(format!("{}: {}", c.name, msg)),
                _ => None,
            })
            .collect();
        if fails.is_empty() {
            "all hypotheses hold".into()
        } else {
            fails.join("; ")
        }
    }
}

/// Check every standing hypothesis on the surface data.
pub fn validate_surface(spec: &SurfaceSpec) -> ValidationReport {
    let mut checks = Vec::new();
    let mut push = |name: &str, status: CheckStatus| {
        checks.push(ValidationCheck {
            name: name.to_string(),
            status,
        });
    };

    // a squarefree, not 0 or 1
    let a = &spec.a;
    if a.is_zero() || a.is_one() {
        push("a_nonzero_nonone", CheckStatus::Fail(format!("a = {}", a)));
    } else {
        push("a_nonzero_nonone", CheckStatus::Pass);
        match arith::is_squarefree(a) {
            Ok(true) => push("a_squarefree", CheckStatus::Pass),
            Ok(false) => push(
                "a_squarefree",
                CheckStatus::Fail(format!("{} has a square factor", a)),
            ),
            Err(e) => push("a_squarefree", CheckStatus::Warn(e.to_string())),
        }
    }

    // even total degree
    let n = spec.total_degree();
    if n.is_multiple_of(2) {
        push("total_degree_even", CheckStatus::Pass);
    } else {
        push(
            "total_degree_even",
            CheckStatus::Fail(format!("deg F = {}", n)),
        );
    }

    // factor irreducibility over Q
    for (i, f) in spec.factors.iter().enumerate() {
        let name = format!("factor_{}_irreducible_over_q", i + 1);
        match irreducible_over_q(f) {
            RatIrreducibility::Irreducible => push(&name, CheckStatus::Pass),
            RatIrreducibility::Reducible => {
                push(&name, CheckStatus::Fail(format!("{} is reducible", f)))
            }
            RatIrreducibility::Unknown => push(
                &name,
                CheckStatus::Warn("no irreducibility certificate found".into()),
            ),
        }
    }

    // pairwise nonzero resultants
    for i in 0..spec.factors.len() {
        for j in (i + 1)..spec.factors.len() {
            let name = format!("resultant_{}_{}_nonzero", i + 1, j + 1);
            if resultant(&spec.factors[i], &spec.factors[j]).is_zero() {
                push(&name, CheckStatus::Fail("shared projective root".into()));
            } else {
                push(&name, CheckStatus::Pass);
            }
        }
    }

    // irreducibility over Q(sqrt(a))
    if !a.is_zero() && !a.is_one() {
        for (i, f) in spec.factors.iter().enumerate() {
            let name = format!("factor_{}_irreducible_over_quadratic", i + 1);
            match irreducible_over_quadratic(f, a) {
                Ok(QuadIrreducibility::Irreducible) => push(&name, CheckStatus::Pass),
                Ok(QuadIrreducibility::Reducible) => push(
                    &name,
                    CheckStatus::Fail(format!("{} splits over Q(sqrt({}))", f, a)),
                ),
                Ok(QuadIrreducibility::Unknown) => push(
                    &name,
                    CheckStatus::Warn("no split-prime certificate found".into()),
                ),
                Err(_) => {} // already reported as reducible over Q
            }
        }
    }

    ValidationReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn form(c: &[i64]) -> BinaryForm {
        BinaryForm::from_i64(c).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let f = form(&[1, 0, 2]); // u^2 + 2 v^2
        assert_eq!(f.evaluate_i64(1, 1), bi(3));
        assert_eq!(f.evaluate_i64(0, 0), bi(0));
        // product evaluated equals product of values: 6 * 7 = 42
        let g = form(&[1, 0, 3]);
        let fg = f.product(&g);
        assert_eq!(fg.degree(), 4);
        assert_eq!(fg.evaluate_i64(2, 1), bi(42));
    }

    #[test]
    fn resultant_examples() {
        // naive 2x2 oracle: res(au+bv, cu+dv) = ad - bc
        assert_eq!(resultant(&form(&[1, -1]), &form(&[1, 1])), bi(2));
        let f = form(&[1, 0, 2]);
        let g = form(&[1, 0, 3]);
        assert_eq!(resultant(&f, &g), bi(1));
        assert_eq!(resultant(&f, &f), bi(0));
    }

    #[test]
    fn resultant_swap_sign() {
        let f = form(&[2, 3, 1]);
        let g = form(&[1, -1, 4, 5]);
        let sign = if (f.degree() * g.degree()) % 2 == 1 {
            -1
        } else {
            1
        };
        assert_eq!(resultant(&f, &g), resultant(&g, &f) * bi(sign));
    }

    #[test]
    fn resultant_with_declared_degree_detects_infinity_root() {
        // both forms divisible by v: leading coefficients in x vanish,
        // they share the projective root [1:0]... here the root v=0 means
        // coefficient of highest u power zero
        let f = form(&[0, 1, 1]); // uv + v^2 = v(u+v)
        let g = form(&[0, 1, 2]); // v(u+2v)
        assert_eq!(resultant(&f, &g), bi(0));
    }

    #[test]
    fn irreducibility_over_q() {
        assert_eq!(
            irreducible_over_q(&form(&[1, 0, 2])),
            RatIrreducibility::Irreducible
        );
        assert_eq!(
            irreducible_over_q(&form(&[1, 0, -4])),
            RatIrreducibility::Reducible
        );
        // cubic with no rational root
        assert_eq!(
            irreducible_over_q(&form(&[1, 0, 0, -2])),
            RatIrreducibility::Irreducible
        );
        // quartic certificate
        assert_eq!(
            irreducible_over_q(&form(&[1, 0, 0, 0, -2])),
            RatIrreducibility::Irreducible
        );
        // x^4 - 4 = (x^2-2)(x^2+2) has no rational root and of course no
        // irreducibility certificate; the one-sided scan reports Unknown
        assert_eq!(
            irreducible_over_q(&form(&[1, 0, 0, 0, -4])),
            RatIrreducibility::Unknown
        );
    }

    #[test]
    fn quadratic_splitting_tests() {
        // u^2 + v^2 splits over Q(i)
        assert_eq!(
            irreducible_over_quadratic(&form(&[1, 0, 1]), &bi(-1)).unwrap(),
            QuadIrreducibility::Reducible
        );
        // u^2 + 2 v^2 does not: -8 / -1 = 8 is not a square
        assert_eq!(
            irreducible_over_quadratic(&form(&[1, 0, 2]), &bi(-1)).unwrap(),
            QuadIrreducibility::Irreducible
        );
        // u^2 - 2 v^2 splits over Q(sqrt(2)): 8/2 = 4
        assert_eq!(
            irreducible_over_quadratic(&form(&[1, 0, -2]), &bi(2)).unwrap(),
            QuadIrreducibility::Reducible
        );
        // quartic stays irreducible over Q(i), certified mod 5
        assert_eq!(
            irreducible_over_quadratic(&form(&[1, 0, 0, 0, -2]), &bi(-1)).unwrap(),
            QuadIrreducibility::Irreducible
        );
        // odd degree is automatic
        assert_eq!(
            irreducible_over_quadratic(&form(&[1, 0, 0, -2]), &bi(-1)).unwrap(),
            QuadIrreducibility::Irreducible
        );
    }

    #[test]
    fn validation_examples() {
        let good = SurfaceSpec::from_i64(-1, &[&[1, 0, 2], &[1, 0, 3]]).unwrap();
        assert!(validate_surface(&good).passed());

        let bad_a = SurfaceSpec::from_i64(4, &[&[1, 0, 2], &[1, 0, 3]]).unwrap();
        assert!(!validate_surface(&bad_a).passed());

        let splits = SurfaceSpec::from_i64(-1, &[&[1, 0, 1], &[1, 0, 2]]).unwrap();
        assert!(!validate_surface(&splits).passed());
    }

    #[test]
    fn splitting_of_resultants() {
        let spec = SurfaceSpec::from_i64(-1, &[&[1, 0, 2], &[1, 0, 3]]).unwrap();
        let (r, plus, minus) = resultant_splitting(&spec, 0, 1).unwrap();
        assert_eq!(r, bi(1));
        assert_eq!(plus, bi(1));
        assert_eq!(minus, bi(1));

        // res(x^2+2, x^2+17) = 15^2 with divisors {3, 5}: 3 is inert for
        // a = -1, 5 splits
        let spec = SurfaceSpec::from_i64(-1, &[&[1, 0, 2], &[1, 0, 17]]).unwrap();
        let (r, plus, minus) = resultant_splitting(&spec, 0, 1).unwrap();
        assert_eq!(r, bi(225));
        assert_eq!(minus, bi(3));
        assert_eq!(plus, bi(5));

        // resultant -1 gives the trivial splitting with the sign carried
        let spec = SurfaceSpec::from_i64(-1, &[&[0, 1], &[1, 0], &[1, 0, 2], &[1, 0, 3]]).unwrap();
        let (r, plus, minus) = resultant_splitting(&spec, 0, 1).unwrap();
        assert_eq!((r, plus, minus), (bi(-1), bi(1), bi(1)));

        // res(x^2+15, x^4+226) = (225+226)^2 = 451^2 = (11*41)^2;
        // 11 = 3 mod 4 is inert for a = -1 while 41 = 1 mod 4 splits
        let spec = SurfaceSpec::from_i64(-1, &[&[1, 0, 15], &[1, 0, 0, 0, 15 * 15 + 1]]).unwrap();
        let (r, plus, minus) = resultant_splitting(&spec, 0, 1).unwrap();
        assert_eq!(r, bi(451 * 451));
        assert_eq!(minus, bi(11));
        assert_eq!(plus, bi(41));
        // plus * minus is the radical: the product of the distinct primes
        let fz = arith::factorize(&r).unwrap();
        let radical: BigInt = fz.primes().product();
        assert_eq!(&plus * &minus, radical);
        for p in fz.primes() {
            if crate::quadfield::is_inert(&bi(-1), p) {
                assert!((&minus % p).is_zero());
                assert_eq!(kronecker(&bi(-1), p), -1);
            } else {
                assert!((&plus % p).is_zero());
            }
        }
    }

    /// gcd of dehomogenized polynomials over Q, test oracle for resultant
    /// vanishing.
    fn rational_gcd_degree(f: &BinaryForm, g: &BinaryForm) -> usize {
        use num_rational::BigRational;
        let to_rat = |h: &BinaryForm| -> Vec<BigRational> {
            h.coeffs()
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect()
        };
        let trim = |v: &mut Vec<BigRational>| {
            while v.len() > 1 && v[0].is_zero() {
                v.remove(0);
            }
        };
        let mut a = to_rat(f);
        let mut b = to_rat(g);
        trim(&mut a);
        trim(&mut b);
        let is_zero = |v: &Vec<BigRational>| v.len() == 1 && v[0].is_zero();
        loop {
            if is_zero(&b) {
                return a.len() - 1;
            }
            if is_zero(&a) || a.len() < b.len() {
                std::mem::swap(&mut a, &mut b);
                continue;
            }
            // kill the leading term: a -= lead(a)/lead(b) * x^(da-db) * b,
            // which subtracts b aligned at the top of a
            let factor = &a[0] / &b[0];
            for (i, bc) in b.iter().enumerate() {
                let t = &factor * bc;
                a[i] -= t;
            }
            trim(&mut a);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn resultant_vanishes_iff_common_factor(
            c1 in prop::collection::vec(-5i64..=5, 2..=3),
            c2 in prop::collection::vec(-5i64..=5, 2..=3),
            c3 in prop::collection::vec(-5i64..=5, 2..=3),
            share in prop::bool::ANY,
        ) {
            prop_assume!(c1.iter().any(|&x| x != 0));
            prop_assume!(c2.iter().any(|&x| x != 0));
            prop_assume!(c3.iter().any(|&x| x != 0));
            let f1 = form(&c1);
            let f2 = form(&c2);
            let f3 = form(&c3);
            let (f, g) = if share {
                (f1.product(&f3), f2.product(&f3))
            } else {
                (f1.product(&f2), f3.clone())
            };
            let res = resultant(&f, &g);
            let gcd_deg = rational_gcd_degree(&f, &g);
            // account for common projective roots at infinity: both leading
            // coefficients zero
            let inf = f.leading().is_zero() && g.leading().is_zero();
            prop_assert_eq!(res.is_zero(), gcd_deg > 0 || inf);
        }

        #[test]
        fn resultant_multiplicative(
            c1 in prop::collection::vec(-4i64..=4, 2..=4),
            c2 in prop::collection::vec(-4i64..=4, 2..=4),
            c3 in prop::collection::vec(-4i64..=4, 2..=4),
        ) {
            prop_assume!(c1[0] != 0 && c2[0] != 0 && c3[0] != 0);
            let f = form(&c1);
            let g = form(&c2);
            let h = form(&c3);
            let lhs = resultant(&f, &g.product(&h));
            let rhs = resultant(&f, &g) * resultant(&f, &h);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn resultant_swap(
            c1 in prop::collection::vec(-4i64..=4, 2..=5),
            c2 in prop::collection::vec(-4i64..=4, 2..=5),
        ) {
            prop_assume!(c1.iter().any(|&x| x != 0));
            prop_assume!(c2.iter().any(|&x| x != 0));
            let f = form(&c1);
            let g = form(&c2);
            let sign = if (f.degree() * g.degree()) % 2 == 1 { -1 } else { 1 };
            prop_assert_eq!(resultant(&f, &g), resultant(&g, &f) * bi(sign));
        }
    }
}
