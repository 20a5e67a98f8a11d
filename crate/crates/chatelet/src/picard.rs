//! The geometric Picard lattice of the surface with its Galois action.
//!
//! The lattice has rank n+2 with basis `E+, D_1^+, ..., D_n^+, D_1^-`, where
//! the D's sit over the n roots of F and come in conjugate pairs. Relations
//! reduce every other exceptional curve class to this basis:
//!
//! - `D_j^- = (D_1^+ + D_1^-) - D_j^+`
//! - `E^-  = E^+ + sum_j D_j^+ - (n/2)(D_1^+ + D_1^-)`
//!
//! The quadratic conjugation swaps the +/- curves; one cyclic generator per
//! irreducible factor realizes the transitive root action, which is all the
//! fixed-lattice and cohomology statements depend on. Fixed sublattices come
//! from exact integer kernels, Tate cohomology from Smith normal form, and
//! the alpha invariant from the effective cone cut by the anticanonical
//! hyperplane.

use crate::forms::SurfaceSpec;
use crate::lattice::{kernel_basis, smith_divisors, solve_integral, solve_rational, IntMat};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exceptional curve classes on the geometric surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveClass {
    EPlus,
    EMinus,
    /// 1-based root index
    DPlus(usize),
    DMinus(usize),
}

/// The Picard lattice of the surface together with its Galois generators.
#[derive(Debug, Clone)]
pub struct PicardLattice {
    /// total degree n (number of conjugate pairs of fiber components)
    pub n: usize,
    pub factor_degrees: Vec<usize>,
    /// conjugation of Q(sqrt(a)), as a matrix on the rank-(n+2) basis
    pub sigma: IntMat,
    /// one full-cycle generator per irreducible factor
    pub perm_generators: Vec<IntMat>,
    /// anticanonical class 2 E+ + sum_j D_j^+
    pub anticanonical: Vec<BigInt>,
    /// the conjugation-invariant fiber class D_1^+ + D_1^-
    pub fiber_pair: Vec<BigInt>,
}

fn basis_dim(n: usize) -> usize {
    n + 2
}

/// Coordinates of a curve class in the `E+, D_1^+..D_n^+, D_1^-` basis.
pub fn curve_vector(n: usize, c: CurveClass) -> Vec<BigInt> {
    let dim = basis_dim(n);
    let mut v = vec![BigInt::zero(); dim];
    match c {
        CurveClass::EPlus => v[0] = BigInt::one(),
        CurveClass::DPlus(j) => v[j] = BigInt::one(),
        CurveClass::DMinus(1) => v[n + 1] = BigInt::one(),
        CurveClass::DMinus(j) => {
            // (D_1^+ + D_1^-) - D_j^+
            v[1] = BigInt::one();
            v[n + 1] = BigInt::one();
            v[j] = BigInt::from(-1);
        }
        CurveClass::EMinus => {
            // E+ + sum_j D_j^+ - (n/2)(D_1^+ + D_1^-)
            v[0] = BigInt::one();
            for j in 1..=n {
                v[j] += BigInt::one();
            }
            let half = BigInt::from((n / 2) as i64);
            v[1] -= &half;
            v[n + 1] -= &half;
        }
    }
    v
}

/// Build the lattice for a validated surface.
pub fn build_lattice(spec: &SurfaceSpec) -> Result<PicardLattice> {
    spec.ensure_valid()?;
    let n = spec.total_degree();
    if !n.is_multiple_of(2) {
        return Err(Error::InvalidSurface("odd total degree".into()));
    }
    let dim = basis_dim(n);
    let degrees = spec.degrees();

    // sigma maps each basis class to its conjugate, reduced to the basis
    let sigma = IntMat::from_rows(transpose_images(n, |col| match col_class(n, col) {
        CurveClass::EPlus => curve_vector(n, CurveClass::EMinus),
        CurveClass::DPlus(j) => curve_vector(n, CurveClass::DMinus(j)),
        CurveClass::DMinus(1) => curve_vector(n, CurveClass::DPlus(1)),
        _ => unreachable!(),
    }));

    // per-factor cycle on that factor's block of roots
    let mut perm_generators = Vec::new();
    let mut offset = 0usize;
    for &d in &degrees {
        let block: Vec<usize> = (offset + 1..=offset + d).collect();
        let next = |j: usize| -> usize {
            match block.iter().position(|&b| b == j) {
                Some(pos) => block[(pos + 1) % block.len()],
                None => j,
            }
        };
        let g = IntMat::from_rows(transpose_images(n, |col| match col_class(n, col) {
            CurveClass::EPlus => curve_vector(n, CurveClass::EPlus),
            CurveClass::DPlus(j) => curve_vector(n, CurveClass::DPlus(next(j))),
            CurveClass::DMinus(1) => curve_vector(n, CurveClass::DMinus(next(1))),
            _ => unreachable!(),
        }));
        perm_generators.push(g);
        offset += d;
    }

    let mut anticanonical = vec![BigInt::zero(); dim];
    anticanonical[0] = BigInt::from(2);
    for j in 1..=n {
        anticanonical[j] = BigInt::one();
    }
    let mut fiber_pair = vec![BigInt::zero(); dim];
    fiber_pair[1] = BigInt::one();
    fiber_pair[n + 1] = BigInt::one();

    let lat = PicardLattice {
        n,
        factor_degrees: degrees,
        sigma,
        perm_generators,
        anticanonical,
        fiber_pair,
    };
    debug_assert!(lat.sigma.mul(&lat.sigma).is_identity());
    Ok(lat)
}

fn col_class(n: usize, col: usize) -> CurveClass {
    if col == 0 {
        CurveClass::EPlus
    } else if col <= n {
        CurveClass::DPlus(col)
    } else {
        CurveClass::DMinus(1)
    }
}

/// Images per basis column, returned as matrix rows (transposed on build).
fn transpose_images(n: usize, image: impl Fn(usize) -> Vec<BigInt>) -> Vec<Vec<BigInt>> {
    let dim = basis_dim(n);
    let cols: Vec<Vec<BigInt>> = (0..dim).map(image).collect();
    (0..dim)
        .map(|i| (0..dim).map(|j| cols[j][i].clone()).collect())
        .collect()
}

/// Which generators to fix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorSel {
    Conjugation,
    /// 0-based factor index
    Factor(usize),
}

impl PicardLattice {
    pub fn dim(&self) -> usize {
        basis_dim(self.n)
    }

    pub fn generator(&self, sel: GeneratorSel) -> &IntMat {
        match sel {
            GeneratorSel::Conjugation => &self.sigma,
            GeneratorSel::Factor(i) => &self.perm_generators[i],
        }
    }

    pub fn all_generators(&self) -> Vec<GeneratorSel> {
        let mut v = vec![GeneratorSel::Conjugation];
        v.extend((0..self.perm_generators.len()).map(GeneratorSel::Factor));
        v
    }

    pub fn perm_only(&self) -> Vec<GeneratorSel> {
        (0..self.perm_generators.len())
            .map(GeneratorSel::Factor)
            .collect()
    }

    /// Apply sigma to a vector.
    pub fn conjugate_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.sigma.mul_vec(v)
    }
}

/// Basis (as matrix columns) of the simultaneous fixed sublattice of the
/// selected generators: the integer kernel of the stacked `(g - 1)`.
pub fn fixed_sublattice(lat: &PicardLattice, sel: &[GeneratorSel]) -> IntMat {
    let dim = lat.dim();
    if sel.is_empty() {
        return IntMat::identity(dim);
    }
    let id = IntMat::identity(dim);
    let stacked: Vec<IntMat> = sel.iter().map(|&s| lat.generator(s).sub(&id)).collect();
    let refs: Vec<&IntMat> = stacked.iter().collect();
    kernel_basis(&IntMat::vstack(&refs))
}

/// A finite abelian group by its elementary divisor chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAbelianGroup {
    pub divisors: Vec<BigInt>,
}

impl FiniteAbelianGroup {
    pub fn order(&self) -> BigInt {
        self.divisors.iter().product::<BigInt>().max(BigInt::one())
    }

    pub fn is_trivial(&self) -> bool {
        self.divisors.is_empty()
    }
}

impl std::fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.divisors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.divisors.iter().map(|d| format!("Z/{}", d)).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// Tate cohomology `ker(sigma + 1) / im(1 - sigma)` of the conjugation
/// acting on the sublattice fixed by all root permutations (the rank r+2
/// model of the Picard group over the quadratic field).
pub fn tate_h1(lat: &PicardLattice) -> FiniteAbelianGroup {
    let sub = fixed_sublattice(lat, &lat.perm_only());
    // restrict sigma to the sublattice: solve sub * x = sigma * sub
    let image = lat.sigma.mul(&sub);
    let restricted = solve_integral(&sub, &image)
        .expect("conjugation preserves the permutation-fixed sublattice");
    let k = restricted.rows;
    let id = IntMat::identity(k);
    let plus = restricted.add(&id);
    let minus = id.sub(&restricted);
    // kernel of (sigma + 1) on the sublattice
    let ker = kernel_basis(&plus);
    if ker.cols == 0 {
        return FiniteAbelianGroup {
            divisors: Vec::new(),
        };
    }
    // express the generators of im(1 - sigma) in kernel coordinates
    let rel = solve_integral(&ker, &minus).expect("im(1 - sigma) lies in ker(sigma + 1)");
    let divisors = smith_divisors(&rel);
    FiniteAbelianGroup { divisors }
}

/// The degree-parity computation of the same cohomology group, three ways.
#[derive(Debug, Clone)]
pub struct BetaBreakdown {
    /// 2^(r-1) for all degrees even, else 2^(r-2)
    pub closed_form: BigInt,
    /// order of the quotient (orthogonal of the parity vector)/(all-ones line)
    /// in F_2^r
    pub parity_quotient: BigInt,
    /// order of the Tate cohomology group
    pub tate_order: BigInt,
}

impl BetaBreakdown {
    pub fn agreed_value(&self) -> Result<BigInt> {
        if self.closed_form == self.parity_quotient && self.parity_quotient == self.tate_order {
            Ok(self.closed_form.clone())
        } else {
            Err(Error::PartitionFalsified(format!(
                "beta disagreement: closed {} parity {} tate {}",
                self.closed_form, self.parity_quotient, self.tate_order
            )))
        }
    }
}

/// Cardinality of the first Galois cohomology of the geometric Picard
/// lattice, computed three independent ways which must agree.
pub fn beta(spec: &SurfaceSpec) -> Result<BetaBreakdown> {
    let degrees = spec.degrees();
    let r = degrees.len();
    let all_even = degrees.iter().all(|d| d % 2 == 0);
    let exp = if all_even { r - 1 } else { r.saturating_sub(2) };
    let closed_form = BigInt::from(2).pow(exp as u32);

    // mod-2 linear algebra: orthogonal of the parity vector, modulo (1,..,1)
    let parity: Vec<u8> = degrees.iter().map(|d| (d % 2) as u8).collect();
    let orth_dim = f2_kernel_dim(&parity);
    // the all-ones vector is orthogonal to the parity vector since the total
    // degree is even; quotient out the line it spans
    debug_assert_eq!(parity.iter().map(|&x| x as usize).sum::<usize>() % 2, 0);
    let quot_dim = orth_dim - 1;
    let parity_quotient = BigInt::from(2).pow(quot_dim as u32);

    let lat = build_lattice(spec)?;
    let tate_order = tate_h1(&lat).order();

    Ok(BetaBreakdown {
        closed_form,
        parity_quotient,
        tate_order,
    })
}

/// Dimension of the kernel of the 1 x r matrix `row` over F_2.
fn f2_kernel_dim(row: &[u8]) -> usize {
    let rank = if row.contains(&1) { 1 } else { 0 };
    row.len() - rank
}

/// Effective cone data in the rank-2 invariant Picard group.
#[derive(Debug, Clone)]
pub struct AlphaReport {
    /// coordinates of the cone generators in the (anticanonical, fiber pair)
    /// basis
    pub cone_generators: [(BigRational, BigRational); 2],
    pub alpha: BigRational,
}

/// The alpha invariant: the length of the slice of the dual effective cone
/// at height one against the anticanonical class. Computed geometrically
/// from the cone generated by `E+ + E-` and `D_1^+ + D_1^-` inside the
/// rank-2 invariant lattice.
pub fn alpha(spec: &SurfaceSpec) -> Result<AlphaReport> {
    let lat = build_lattice(spec)?;
    let n = lat.n;

    // rank-2 check of the full fixed lattice
    let fixed = fixed_sublattice(&lat, &lat.all_generators());
    if fixed.cols != 2 {
        return Err(Error::InvalidSurface(format!(
            "invariant lattice rank {} instead of 2",
            fixed.cols
        )));
    }

    // cone generators: E+ + sigma(E+) and the fiber pair
    let e_plus = curve_vector(n, CurveClass::EPlus);
    let e_pair: Vec<BigInt> = lat
        .conjugate_vec(&e_plus)
        .iter()
        .zip(&e_plus)
        .map(|(x, y)| x + y)
        .collect();
    let gens = [e_pair, lat.fiber_pair.clone()];

    // coordinates in the basis (anticanonical, fiber pair)
    let dim = lat.dim();
    let basis = IntMat::from_fn(dim, 2, |i, j| {
        if j == 0 {
            lat.anticanonical[i].clone()
        } else {
            lat.fiber_pair[i].clone()
        }
    });
    let mut coords = Vec::new();
    for g in &gens {
        let b = IntMat::from_fn(dim, 1, |i, _| g[i].clone());
        let sol = solve_rational(&basis, &b).ok_or_else(|| {
            Error::InvalidSurface("cone generator outside the invariant rank-2 lattice".into())
        })?;
        coords.push((sol[0][0].clone(), sol[0][1].clone()));
    }

    // dual cone sliced at <anticanonical, x> = 1: x = (1, t) must satisfy
    // a + b t >= 0 for each generator (a, b); the slice is an interval
    let mut lower: Option<BigRational> = None;
    let mut upper: Option<BigRational> = None;
    for (a, b) in &coords {
        if b.is_zero() {
            if a.is_negative() {
                return Err(Error::InvalidSurface("empty cone slice".into()));
            }
            continue;
        }
        let bound = -a / b;
        if b.is_positive() {
            lower = Some(match lower {
                None => bound,
                Some(l) => l.max(bound),
            });
        } else {
            upper = Some(match upper {
                None => bound,
                Some(u) => u.min(bound),
            });
        }
    }
    let (Some(lo), Some(hi)) = (lower, upper) else {
        return Err(Error::InvalidSurface("cone slice is unbounded".into()));
    };
    if hi <= lo {
        return Err(Error::InvalidSurface("cone slice is empty".into()));
    }
    Ok(AlphaReport {
        cone_generators: [coords[0].clone(), coords[1].clone()],
        alpha: hi - lo,
    })
}

/// All the lattice invariants gathered for reporting.
#[derive(Debug, Clone)]
pub struct SurfaceInvariants {
    pub n: usize,
    pub r: usize,
    pub rank_geometric: usize,
    pub rank_quadratic: usize,
    pub rank_rational: usize,
    pub alpha: AlphaReport,
    pub beta: BetaBreakdown,
    pub tate: FiniteAbelianGroup,
    pub anticanonical: Vec<BigInt>,
}

pub fn invariants(spec: &SurfaceSpec) -> Result<SurfaceInvariants> {
    let lat = build_lattice(spec)?;
    let none: [GeneratorSel; 0] = [];
    let rank_geometric = fixed_sublattice(&lat, &none).cols;
    let rank_quadratic = fixed_sublattice(&lat, &lat.perm_only()).cols;
    let rank_rational = fixed_sublattice(&lat, &lat.all_generators()).cols;
    Ok(SurfaceInvariants {
        n: lat.n,
        r: spec.factor_count(),
        rank_geometric,
        rank_quadratic,
        rank_rational,
        alpha: alpha(spec)?,
        beta: beta(spec)?,
        tate: tate_h1(&lat),
        anticanonical: lat.anticanonical.clone(),
    })
}

/// Check that a matrix generator respects the relations: applying it to the
/// reduced coordinates of each curve class matches reducing the permuted
/// class. Used by tests and the validation report.
pub fn generator_respects_relations(
    lat: &PicardLattice,
    mat: &IntMat,
    relabel: impl Fn(CurveClass) -> CurveClass,
) -> bool {
    let n = lat.n;
    let mut classes = vec![CurveClass::EPlus, CurveClass::EMinus];
    for j in 1..=n {
        classes.push(CurveClass::DPlus(j));
        classes.push(CurveClass::DMinus(j));
    }
    classes.into_iter().all(|c| {
        let lhs = mat.mul_vec(&curve_vector(n, c));
        let rhs = curve_vector(n, relabel(c));
        lhs == rhs
    })
}
