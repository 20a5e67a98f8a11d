//! Exact arithmetic in multiquadratic fields `Q(sqrt(d_1), ..., sqrt(d_k))`.
//!
//! Elements carry a basis of pairwise multiplicatively independent squarefree
//! radicands and one rational coordinate per subset of the basis. This is
//! enough to split quadratic factors into linear forms, form the pairwise
//! resultants of those forms and verify the three-term relations between
//! them at integer points.

use crate::arith::{self, is_square};
use crate::forms::BinaryForm;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Element of a multiquadratic field: `sum over S of coords[S] * prod_{i in S}
/// sqrt(radicands[i])`, with subsets encoded as bitmasks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MQElement {
    radicands: Vec<BigInt>,
    coords: Vec<BigRational>,
}

fn rat_int(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

impl MQElement {
    /// A rational constant over the empty basis.
    pub fn rational(q: BigRational) -> Self {
        MQElement {
            radicands: Vec::new(),
            coords: vec![q],
        }
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Self::integer(0)
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    /// `c * sqrt(d)` for squarefree d not 0 or 1.
    pub fn sqrt_term(c: BigRational, d: &BigInt) -> Result<Self> {
        check_radicand(d)?;
        Ok(MQElement {
            radicands: vec![d.clone()],
            coords: vec![BigRational::zero(), c],
        })
    }

    pub fn radicands(&self) -> &[BigInt] {
        &self.radicands
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Rational part, provided no irrational coordinate survives.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coords[1..].iter().all(|c| c.is_zero()) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    /// Drop radicands with no nonzero coordinate.
    fn prune(mut self) -> Self {
        let k = self.radicands.len();
        let mut keep = Vec::new();
        for i in 0..k {
            let used =
                (0..self.coords.len()).any(|s| (s >> i) & 1 == 1 && !self.coords[s].is_zero());
            if used {
                keep.push(i);
            }
        }
        if keep.len() == k {
            return self;
        }
        let mut radicands = Vec::with_capacity(keep.len());
        for &i in &keep {
            radicands.push(self.radicands[i].clone());
        }
        let mut coords = vec![BigRational::zero(); 1 << keep.len()];
        for (s, c) in self.coords.iter_mut().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut ns = 0usize;
            for (new_i, &old_i) in keep.iter().enumerate() {
                if (s >> old_i) & 1 == 1 {
                    ns |= 1 << new_i;
                }
            }
            coords[ns] = std::mem::take(c);
        }
        MQElement { radicands, coords }
    }

    /// Re-express over a larger basis containing the current one.
    pub fn embed(&self, basis: &[BigInt]) -> MQElement {
        let map: Vec<usize> = self
            .radicands
            .iter()
            .map(|d| basis.iter().position(|e| e == d).expect("sub-basis"))
            .collect();
        let mut coords = vec![BigRational::zero(); 1 << basis.len()];
        for (s, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut ns = 0usize;
            for (i, &target) in map.iter().enumerate() {
                if (s >> i) & 1 == 1 {
                    ns |= 1 << target;
                }
            }
            coords[ns] = c.clone();
        }
        MQElement {
            radicands: basis.to_vec(),
            coords,
        }
    }

    pub fn add(&self, other: &MQElement) -> Result<MQElement> {
        let (a, b) = align(self, other)?;
        let coords = a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect();
        Ok(MQElement {
            radicands: a.radicands,
            coords,
        }
        .prune())
    }

    pub fn sub(&self, other: &MQElement) -> Result<MQElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MQElement {
        MQElement {
            radicands: self.radicands.clone(),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, q: &BigRational) -> MQElement {
        MQElement {
            radicands: self.radicands.clone(),
            coords: self.coords.iter().map(|c| c * q).collect(),
        }
        .prune()
    }

    pub fn mul(&self, other: &MQElement) -> Result<MQElement> {
        let (a, b) = align(self, other)?;
        Ok(a.mul_same_basis(&b).prune())
    }

    /// Multiplication of two elements over the identical radicand list; no
    /// basis reduction afterwards.
    fn mul_same_basis(&self, other: &MQElement) -> MQElement {
        debug_assert_eq!(self.radicands, other.radicands);
        let basis = &self.radicands;
        let mut coords = vec![BigRational::zero(); self.coords.len()];
        for (s, cs) in self.coords.iter().enumerate() {
            if cs.is_zero() {
                continue;
            }
            for (t, ct) in other.coords.iter().enumerate() {
                if ct.is_zero() {
                    continue;
                }
                // sqrt_S * sqrt_T = prod_{i in S cap T} d_i * sqrt_(S xor T)
                let mut factor = cs * ct;
                let mut inter = s & t;
                let mut i = 0;
                while inter != 0 {
                    if inter & 1 == 1 {
                        factor *= rat_int(&basis[i]);
                    }
                    inter >>= 1;
                    i += 1;
                }
                coords[s ^ t] += factor;
            }
        }
        MQElement {
            radicands: basis.clone(),
            coords,
        }
    }

    /// Conjugate flipping the signs of `sqrt(d_i)` for every i in `flips`
    /// (a bitmask over the element's own radicand list).
    pub fn conjugate(&self, flips: usize) -> MQElement {
        let coords = self
            .coords
            .iter()
            .enumerate()
            .map(|(s, c)| {
                if (s & flips).count_ones() % 2 == 1 {
                    -c
                } else {
                    c.clone()
                }
            })
            .collect();
        MQElement {
            radicands: self.radicands.clone(),
            coords,
        }
    }

    /// Product over all 2^k conjugates of the element's own field, a
    /// rational number.
    pub fn norm_to_q(&self) -> BigRational {
        self.norm_over(&self.radicands.clone())
    }

    /// Norm over the field generated by `basis` (the element is embedded
    /// first, so elements missing some radicands get the full conjugate
    /// multiplicity).
    pub fn norm_over(&self, basis: &[BigInt]) -> BigRational {
        let mut cur = self.embed(basis);
        let k = basis.len();
        // eliminate radicands from the top: x * conj_i(x) is conj_i-invariant
        for i in (0..k).rev() {
            let conj = cur.conjugate(1 << i);
            cur = cur.mul_same_basis(&conj);
            debug_assert!(cur
                .coords
                .iter()
                .enumerate()
                .all(|(s, c)| (s >> i) & 1 == 0 || c.is_zero()));
        }
        cur.coords[0].clone()
    }
}

impl std::fmt::Display for MQElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (s, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first && c.is_positive() {
                write!(f, "+")?;
            }
            first = false;
            write!(f, "{}", c)?;
            for (i, d) in self.radicands.iter().enumerate() {
                if (s >> i) & 1 == 1 {
                    write!(f, "*sqrt({})", d)?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn check_radicand(d: &BigInt) -> Result<()> {
    if d.is_zero() || d.is_one() {
        return Err(Error::BasisMerge(format!("radicand {} not allowed", d)));
    }
    if !arith::is_squarefree(d)? {
        return Err(Error::BasisMerge(format!("radicand {} not squarefree", d)));
    }
    Ok(())
}

/// Express both elements over one independent radicand basis.
///
/// The basis starts from the left element; incoming radicands that are
/// multiplicatively dependent on it are rewritten as subset coordinates
/// (for instance sqrt(6) over the basis {2, 3} becomes the {2,3}
/// coordinate), so merging never manufactures a dependent basis.
pub fn align(a: &MQElement, b: &MQElement) -> Result<(MQElement, MQElement)> {
    let mut basis: Vec<BigInt> = a.radicands.clone();
    // representation of every incoming radicand over the evolving basis
    let mut reps: Vec<Option<(usize, BigRational)>> = Vec::new(); // (subset, scale)
    for d in &b.radicands {
        if let Some((mask, scale)) = span_rewrite(&basis, d) {
            reps.push(Some((mask, scale)));
        } else {
            basis.push(d.clone());
            if basis.len() > 12 {
                return Err(Error::BasisMerge("too many radicands".into()));
            }
            reps.push(None); // filled below once the basis is final
        }
    }
    // second pass: fresh radicands are plain basis coordinates
    let reps: Vec<(usize, BigRational)> = b
        .radicands
        .iter()
        .zip(reps)
        .map(|(d, r)| match r {
            Some(r) => r,
            None => {
                let i = basis.iter().position(|e| e == d).unwrap();
                (1usize << i, BigRational::one())
            }
        })
        .collect();
    let a_out = a.embed(&basis);
    // rebuild b coordinate by coordinate: the subset T maps to the symmetric
    // difference of the rewrites, picking up d_i factors on overlaps
    let mut b_coords = vec![BigRational::zero(); 1 << basis.len()];
    for (t, c) in b.coords.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut mask = 0usize;
        let mut factor = c.clone();
        for (j, (rmask, rscale)) in reps.iter().enumerate() {
            if (t >> j) & 1 == 0 {
                continue;
            }
            factor *= rscale;
            let overlap = mask & rmask;
            let mut i = 0;
            let mut ov = overlap;
            while ov != 0 {
                if ov & 1 == 1 {
                    factor *= rat_int(&basis[i]);
                }
                ov >>= 1;
                i += 1;
            }
            mask ^= rmask;
        }
        b_coords[mask] += factor;
    }
    let b_out = MQElement {
        radicands: basis,
        coords: b_coords,
    };
    Ok((a_out, b_out))
}

/// Is `d` equivalent modulo squares to a subset product of the basis? On
/// success returns the subset mask and the rational scale c with
/// `sqrt(d) = c * prod_{i in S} sqrt(basis[i])`.
fn span_rewrite(basis: &[BigInt], d: &BigInt) -> Option<(usize, BigRational)> {
    for mask in 0usize..(1 << basis.len()) {
        let mut prod = BigInt::one();
        for (i, e) in basis.iter().enumerate() {
            if (mask >> i) & 1 == 1 {
                prod *= e;
            }
        }
        let square = d * &prod;
        if square.is_positive() && is_square(&square) {
            // d * prod = t^2 forces (c prod sqrt(e_i))^2 = c^2 t^2 / d = d
            // for c = |d|/t; the positive branch keeps the identity rewrite
            // (d already in the basis) literal
            let t = crate::arith::sqrt_exact(&square).unwrap();
            let scale = BigRational::new(d.abs(), t);
            return Some((mask, scale));
        }
    }
    None
}

/// Linear form `L(u, v) = alpha * u - beta * v` with multiquadratic
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MQLinearForm {
    pub alpha: MQElement,
    pub beta: MQElement,
}

impl MQLinearForm {
    pub fn new(alpha: MQElement, beta: MQElement) -> Result<Self> {
        if alpha.is_zero() && beta.is_zero() {
            return Err(Error::Degenerate("zero linear form".into()));
        }
        Ok(MQLinearForm { alpha, beta })
    }

    pub fn evaluate(&self, u: &BigInt, v: &BigInt) -> MQElement {
        let au = self.alpha.scale(&rat_int(u));
        let bv = self.beta.scale(&rat_int(v));
        au.sub(&bv).expect("same basis")
    }
}

/// Resultant of two linear forms, the 2x2 determinant
/// `alpha_1 beta_2 - alpha_2 beta_1`. Antisymmetric in its arguments.
pub fn delta(l1: &MQLinearForm, l2: &MQLinearForm) -> Result<MQElement> {
    let t1 = l1.alpha.mul(&l2.beta)?;
    let t2 = l2.alpha.mul(&l1.beta)?;
    t1.sub(&t2)
}

/// Split an irreducible quadratic form `a u^2 + b uv + c v^2` into two
/// conjugate linear forms over `Q(sqrt(disc))` whose product expands back to
/// the input exactly.
pub fn split_quadratic(f: &BinaryForm) -> Result<(MQLinearForm, MQLinearForm)> {
    if f.degree() != 2 {
        return Err(Error::Degenerate("degree must be 2".into()));
    }
    let c = f.coeffs();
    let (a, b) = (&c[0], &c[1]);
    let disc = f.quadratic_discriminant().unwrap();
    if disc.is_zero() || is_square(&disc) {
        // a vanishing leading coefficient makes disc = b^2, so this branch
        // also rejects forms needing a projective change of coordinates
        return Err(Error::Degenerate(
            "discriminant is a square; the form splits rationally".into(),
        ));
    }
    // disc = s^2 * d0 with d0 squarefree, so sqrt(disc) = s sqrt(d0)
    let d0 = arith::signed_squarefree_kernel(&disc)?;
    let s = arith::sqrt_exact(&(&disc / &d0)).expect("square part");
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let sqrt_disc = MQElement::sqrt_term(rat_int(&s), &d0)?;
    // L1 = a u - beta1 v, beta1 = -(b + sqrt(disc))/2
    // L2 = u - beta2 v,   beta2 = (sqrt(disc) - b)/(2a)
    let beta1 = sqrt_disc
        .add(&MQElement::rational(rat_int(b)))?
        .scale(&-half.clone());
    let beta2 = sqrt_disc
        .sub(&MQElement::rational(rat_int(b)))?
        .scale(&(&half / rat_int(a)));
    let l1 = MQLinearForm::new(MQElement::rational(rat_int(a)), beta1)?;
    let l2 = MQLinearForm::new(MQElement::one(), beta2)?;
    Ok((l1, l2))
}

/// Expand the product of two linear forms into a quadratic form with
/// rational coefficients; `None` if a coefficient fails to be rational.
pub fn expand_product(l1: &MQLinearForm, l2: &MQLinearForm) -> Result<Option<[BigRational; 3]>> {
    let cu2 = l1.alpha.mul(&l2.alpha)?;
    let cuv = l1.alpha.mul(&l2.beta)?.add(&l2.alpha.mul(&l1.beta)?)?.neg();
    let cv2 = l1.beta.mul(&l2.beta)?;
    let (Some(a), Some(b), Some(c)) = (cu2.as_rational(), cuv.as_rational(), cv2.as_rational())
    else {
        return Ok(None);
    };
    Ok(Some([a, b, c]))
}

/// The alternating three-term combination
/// `delta_{jk} L_l(u,v) + delta_{kl} L_j(u,v) + delta_{lj} L_k(u,v)`,
/// identically zero for any three linear forms.
pub fn pluecker_residue(
    lj: &MQLinearForm,
    lk: &MQLinearForm,
    ll: &MQLinearForm,
    u: &BigInt,
    v: &BigInt,
) -> Result<MQElement> {
    let d_jk = delta(lj, lk)?;
    let d_kl = delta(lk, ll)?;
    let d_lj = delta(ll, lj)?;
    let t1 = d_jk.mul(&ll.evaluate(u, v))?;
    let t2 = d_kl.mul(&lj.evaluate(u, v))?;
    let t3 = d_lj.mul(&lk.evaluate(u, v))?;
    t1.add(&t2)?.add(&t3)
}
