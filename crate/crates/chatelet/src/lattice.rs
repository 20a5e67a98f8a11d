//! Small exact integer linear algebra: kernels through column reduction,
//! Smith normal form divisors, Bareiss determinants and rational solving.
//!
//! Matrices here are tiny (ranks up to a dozen), so the simple textbook
//! algorithms are used throughout. Everything is exact; no floats.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c));
        IntMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> BigInt) -> Self {
        let mut m = Self::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    pub fn add(&self, other: &IntMat) -> IntMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMat::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &other[(i, j)])
    }

    pub fn sub(&self, other: &IntMat) -> IntMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMat::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] - &other[(i, j)])
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self[(i, j)].is_one()
                    } else {
                        self[(i, j)].is_zero()
                    }
                })
            })
    }

    /// Stack matrices vertically.
    pub fn vstack(mats: &[&IntMat]) -> IntMat {
        let cols = mats[0].cols;
        assert!(mats.iter().all(|m| m.cols == cols));
        let rows = mats.iter().map(|m| m.rows).sum();
        let mut out = IntMat::zero(rows, cols);
        let mut r0 = 0;
        for m in mats {
            for i in 0..m.rows {
                for j in 0..cols {
                    out[(r0 + i, j)] = m[(i, j)].clone();
                }
            }
            r0 += m.rows;
        }
        out
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            let x = self[(i, a)].clone();
            self[(i, a)] = self[(i, b)].clone();
            self[(i, b)] = x;
        }
    }

    /// col_b -= q * col_a
    fn addmul_col(&mut self, b: usize, a: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let t = q * &self[(i, a)];
            self[(i, b)] -= t;
        }
    }

    fn negate_col(&mut self, a: usize) {
        for i in 0..self.rows {
            let v = -self[(i, a)].clone();
            self[(i, a)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Integer kernel of `a`: columns of the returned matrix form a basis of
/// { x : a x = 0 }. Computed by column reduction with a tracked unimodular
/// transform.
pub fn kernel_basis(a: &IntMat) -> IntMat {
    let mut h = a.clone();
    let mut u = IntMat::identity(a.cols);
    let mut pivot_col = 0usize;
    for row in 0..h.rows {
        if pivot_col >= h.cols {
            break;
        }
        // gcd-eliminate entries of this row among columns pivot_col..
        loop {
            // locate column with smallest nonzero |entry| in this row
            let mut best: Option<usize> = None;
            for j in pivot_col..h.cols {
                if !h[(row, j)].is_zero() {
                    best = match best {
                        None => Some(j),
                        Some(b) => {
                            if h[(row, j)].abs() < h[(row, b)].abs() {
                                Some(j)
                            } else {
                                Some(b)
                            }
                        }
                    };
                }
            }
            let Some(jmin) = best else { break };
            h.swap_cols(pivot_col, jmin);
            u.swap_cols(pivot_col, jmin);
            let mut done = true;
            for j in (pivot_col + 1)..h.cols {
                if h[(row, j)].is_zero() {
                    continue;
                }
                let q = div_round(&h[(row, j)], &h[(row, pivot_col)]);
                h.addmul_col(j, pivot_col, &q);
                u.addmul_col(j, pivot_col, &q);
                if !h[(row, j)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !h[(row, pivot_col)].is_zero() {
            if h[(row, pivot_col)].is_negative() {
                h.negate_col(pivot_col);
                u.negate_col(pivot_col);
            }
            pivot_col += 1;
        }
    }
    // columns pivot_col.. of h are zero columns; their u columns span the kernel
    let mut ker_cols = Vec::new();
    for j in 0..h.cols {
        if (0..h.rows).all(|i| h[(i, j)].is_zero()) {
            ker_cols.push(u.column(j));
        }
    }
    let mut out = IntMat::zero(a.cols, ker_cols.len());
    for (j, col) in ker_cols.iter().enumerate() {
        for i in 0..a.cols {
            out[(i, j)] = col[i].clone();
        }
    }
    out
}

/// Rounded division used to keep column entries small.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    let (q, r) = num_integer::Integer::div_rem(a, b);
    if &r.abs() * &two > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Rank over Q.
pub fn rank(a: &IntMat) -> usize {
    let mut m: Vec<Vec<BigRational>> = (0..a.rows)
        .map(|i| {
            (0..a.cols)
                .map(|j| BigRational::from_integer(a[(i, j)].clone()))
                .collect()
        })
        .collect();
    let mut rank = 0usize;
    let mut col = 0usize;
    while rank < a.rows && col < a.cols {
        let piv = (rank..a.rows).find(|&i| !m[i][col].is_zero());
        let Some(piv) = piv else {
            col += 1;
            continue;
        };
        m.swap(rank, piv);
        let inv = m[rank][col].clone();
        for i in (rank + 1)..a.rows {
            if m[i][col].is_zero() {
                continue;
            }
            let f = &m[i][col] / &inv;
            for j in col..a.cols {
                let t = &f * &m[rank][j];
                m[i][j] -= t;
            }
        }
        rank += 1;
        col += 1;
    }
    rank
}

/// Nontrivial Smith normal form divisors (the diagonal entries > 1, in
/// divisibility order), describing coker as a finite abelian group when the
/// matrix has full row rank over Q, and more generally the torsion part
/// together with unit entries dropped.
pub fn smith_divisors(a: &IntMat) -> Vec<BigInt> {
    let mut m = a.clone();
    let mut diag: Vec<BigInt> = Vec::new();
    let mut top = 0usize;
    let mut left = 0usize;
    while top < m.rows && left < m.cols {
        // find nonzero pivot of minimal absolute value
        let mut best: Option<(usize, usize)> = None;
        for i in top..m.rows {
            for j in left..m.cols {
                if !m[(i, j)].is_zero() {
                    best = match best {
                        None => Some((i, j)),
                        Some((bi, bj)) => {
                            if m[(i, j)].abs() < m[(bi, bj)].abs() {
                                Some((i, j))
                            } else {
                                Some((bi, bj))
                            }
                        }
                    };
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        // move pivot to (top,left)
        for j in 0..m.cols {
            let t = m[(top, j)].clone();
            m[(top, j)] = m[(pi, j)].clone();
            m[(pi, j)] = t;
        }
        m.swap_cols(left, pj);
        // clear row and column
        let mut again = false;
        for i in (top + 1)..m.rows {
            if m[(i, left)].is_zero() {
                continue;
            }
            let q = div_round(&m[(i, left)], &m[(top, left)]);
            for j in left..m.cols {
                let t = &q * &m[(top, j)];
                m[(i, j)] -= t;
            }
            if !m[(i, left)].is_zero() {
                again = true;
            }
        }
        for j in (left + 1)..m.cols {
            if m[(top, j)].is_zero() {
                continue;
            }
            let q = div_round(&m[(top, j)], &m[(top, left)]);
            for i in top..m.rows {
                let t = &q * &m[(i, left)];
                m[(i, j)] -= t;
            }
            if !m[(top, j)].is_zero() {
                again = true;
            }
        }
        if again {
            continue;
        }
        // enforce divisibility of the remaining block by the pivot
        let p = m[(top, left)].clone();
        let mut fixed = true;
        'scan: for i in (top + 1)..m.rows {
            for j in (left + 1)..m.cols {
                if !(&m[(i, j)] % &p).is_zero() {
                    // add row i to row top and restart elimination
                    for jj in left..m.cols {
                        let t = m[(i, jj)].clone();
                        m[(top, jj)] += t;
                    }
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if !fixed {
            continue;
        }
        diag.push(p.abs());
        top += 1;
        left += 1;
    }
    diag.retain(|d| !d.is_one());
    diag
}

/// Exact determinant by fraction-free Gaussian elimination.
pub fn det_bareiss(a: &IntMat) -> BigInt {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[(k, k)].is_zero() {
            let swap = ((k + 1)..n).find(|&i| !m[(i, k)].is_zero());
            let Some(swap) = swap else {
                return BigInt::zero();
            };
            for j in 0..n {
                let t = m[(k, j)].clone();
                m[(k, j)] = m[(swap, j)].clone();
                m[(swap, j)] = t;
            }
            sign = -sign;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let num = &m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)];
                m[(i, j)] = num / &prev;
            }
        }
        prev = m[(k, k)].clone();
    }
    sign * m[(n - 1, n - 1)].clone()
}

/// Solve `a x = b` over the rationals (unique solution required: a must have
/// full column rank and the system must be consistent). Returns one column
/// per column of b.
pub fn solve_rational(a: &IntMat, b: &IntMat) -> Option<Vec<Vec<BigRational>>> {
    assert_eq!(a.rows, b.rows);
    let rows = a.rows;
    let cols = a.cols;
    let wide = cols + b.cols;
    let mut m: Vec<Vec<BigRational>> = (0..rows)
        .map(|i| {
            (0..wide)
                .map(|j| {
                    let v = if j < cols {
                        &a[(i, j)]
                    } else {
                        &b[(i, j - cols)]
                    };
                    BigRational::from_integer(v.clone())
                })
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        let piv = (r..rows).find(|&i| !m[i][c].is_zero());
        let Some(piv) = piv else { continue };
        m.swap(r, piv);
        let inv = m[r][c].clone();
        for j in c..wide {
            m[r][j] = &m[r][j] / &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..wide {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if pivots.len() != cols {
        return None; // not full column rank
    }
    // consistency: rows beyond r must be zero in the b block
    for i in r..rows {
        for j in cols..wide {
            if !m[i][j].is_zero() {
                return None;
            }
        }
    }
    let mut out = Vec::new();
    for bj in 0..b.cols {
        let mut col = vec![BigRational::zero(); cols];
        for (ri, &c) in pivots.iter().enumerate() {
            col[c] = m[ri][cols + bj].clone();
        }
        out.push(col);
    }
    Some(out)
}

/// Integer solutions of `a x = b`, if the rational solution is integral.
pub fn solve_integral(a: &IntMat, b: &IntMat) -> Option<IntMat> {
    let sol = solve_rational(a, b)?;
    let mut out = IntMat::zero(a.cols, b.cols);
    for (j, col) in sol.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            if !v.is_integer() {
                return None;
            }
            out[(i, j)] = v.to_integer();
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn mat(rows: &[&[i64]]) -> IntMat {
        IntMat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| bi(x)).collect())
                .collect(),
        )
    }

    /// Cofactor-expansion determinant, the independent oracle.
    fn det_naive(a: &IntMat) -> BigInt {
        let n = a.rows;
        if n == 0 {
            return bi(1);
        }
        if n == 1 {
            return a[(0, 0)].clone();
        }
        let mut acc = BigInt::zero();
        for j in 0..n {
            if a[(0, j)].is_zero() {
                continue;
            }
            let sub = IntMat::from_fn(n - 1, n - 1, |r, c| {
                a[(r + 1, if c < j { c } else { c + 1 })].clone()
            });
            let term = &a[(0, j)] * det_naive(&sub);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn det_matches_naive() {
        let m = mat(&[&[2, 3, 1], &[0, -1, 4], &[5, 2, 2]]);
        assert_eq!(det_bareiss(&m), det_naive(&m));
        let m = mat(&[&[1, 2], &[3, 4]]);
        assert_eq!(det_bareiss(&m), bi(-2));
    }

    #[test]
    fn kernel_of_simple_map() {
        // x + y + z = 0 has rank-2 kernel
        let a = mat(&[&[1, 1, 1]]);
        let k = kernel_basis(&a);
        assert_eq!(k.cols, 2);
        for j in 0..k.cols {
            let v = k.column(j);
            assert!((&v[0] + &v[1] + &v[2]).is_zero());
        }
    }

    #[test]
    fn kernel_empty_for_injective() {
        let a = mat(&[&[1, 0], &[0, 2], &[3, 3]]);
        let k = kernel_basis(&a);
        assert_eq!(k.cols, 0);
    }

    #[test]
    fn smith_divisors_examples() {
        // Z^2 / (2e1, 6e2) = Z/2 x Z/6
        let a = mat(&[&[2, 0], &[0, 6]]);
        assert_eq!(smith_divisors(&a), vec![bi(2), bi(6)]);
        // divisibility chain is enforced
        let a = mat(&[&[2, 0], &[0, 3]]);
        assert_eq!(smith_divisors(&a), vec![bi(6)]);
        let a = mat(&[&[4, 2], &[2, 4]]);
        // det 12, gcd of entries 2 -> divisors 2, 6
        assert_eq!(smith_divisors(&a), vec![bi(2), bi(6)]);
    }

    #[test]
    fn solve_and_rank() {
        let a = mat(&[&[2, 0], &[0, 3]]);
        let b = mat(&[&[4], &[9]]);
        let x = solve_integral(&a, &b).unwrap();
        assert_eq!(x[(0, 0)], bi(2));
        assert_eq!(x[(1, 0)], bi(3));
        assert_eq!(rank(&a), 2);
        assert_eq!(rank(&mat(&[&[1, 2], &[2, 4]])), 1);
    }
}
