//! Exact integer and rational matrix kernel.
//!
//! Everything here works on arbitrary-precision integers ([`BigInt`]) or
//! rationals ([`BigRational`]); there is no floating point in this module.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Dense integer matrix stored in row-major order.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{:?}", self.to_rows())
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(k: usize) -> Self {
        let mut m = Self::zeros(k, k);
        for i in 0..k {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of small integers. Panics on ragged input.
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix rows");
        Self {
            rows: rows.len(),
            cols,
            entries: rows.iter().flatten().map(|&x| BigInt::from(x)).collect(),
        }
    }

    /// Builds a matrix from rows; `cols` is needed for the empty case.
    pub fn from_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix rows");
        Self {
            rows: rows.len(),
            cols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<BigInt>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    /// Rows converted to `i64`; `None` if some entry does not fit.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        use num_traits::ToPrimitive;
        (0..self.rows)
            .map(|i| self.row(i).iter().map(ToPrimitive::to_i64).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in product");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Submatrix formed by the given columns, in the given order.
    pub fn select_columns(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (jj, &j) in idx.iter().enumerate() {
                m[(i, jj)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let rows = idx.iter().map(|&i| self.row(i).to_vec()).collect();
        Self::from_rows(rows, self.cols)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += factor * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self[(src, j)] * factor;
            self[(dst, j)] += v;
        }
    }

    fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self[(i, src)] * factor;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -std::mem::take(&mut self[(i, j)]);
            self[(i, j)] = v;
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[(i, k)].is_zero()) else {
                return BigInt::zero();
            };
            if p != k {
                a.swap_rows(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
                a[(i, k)] = BigInt::zero();
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    pub fn rank(&self) -> usize {
        rational_row_echelon(&to_rational_rows(&self.to_rows()), self.cols).len()
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

/// Rational vector of fixed dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatVector(pub Vec<BigRational>);

impl RatVector {
    pub fn from_ints(v: &[BigInt]) -> Self {
        Self(v.iter().cloned().map(BigRational::from_integer).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Positive multiple with integer coordinates and gcd 1 (zero stays zero).
    pub fn to_primitive_integer(&self) -> Vec<BigInt> {
        let lcm = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = self
            .0
            .iter()
            .map(|x| x.numer() * (&lcm / x.denom()))
            .collect();
        primitive(&ints)
    }
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn vec_gcd(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Divides by the gcd of the entries; the zero vector is returned unchanged.
pub fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = vec_gcd(v);
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Primitive vector with its first nonzero coordinate made positive.
pub fn canonical_line(v: &[BigInt]) -> Vec<BigInt> {
    let p = primitive(v);
    match p.iter().find(|x| !x.is_zero()) {
        Some(first) if first.is_negative() => p.iter().map(|x| -x).collect(),
        _ => p,
    }
}

pub fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub(crate) fn to_rational_rows(rows: &[Vec<BigInt>]) -> Vec<Vec<BigRational>> {
    rows.iter()
        .map(|r| r.iter().cloned().map(BigRational::from_integer).collect())
        .collect()
}

/// Reduced row echelon form over the rationals; returns the nonzero rows.
pub(crate) fn rational_row_echelon(
    rows: &[Vec<BigRational>],
    cols: usize,
) -> Vec<Vec<BigRational>> {
    let mut a: Vec<Vec<BigRational>> = rows.to_vec();
    let mut pivot_row = 0;
    for c in 0..cols {
        let Some(p) = (pivot_row..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, pivot_row);
        let inv = a[pivot_row][c].recip();
        for x in a[pivot_row].iter_mut() {
            *x *= &inv;
        }
        for i in 0..a.len() {
            if i != pivot_row && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let v = &f * &a[pivot_row][j];
                    a[i][j] -= v;
                }
            }
        }
        pivot_row += 1;
        if pivot_row == a.len() {
            break;
        }
    }
    a.truncate(pivot_row);
    a
}

/// Row Hermite normal form `H = U·A` with `U` unimodular.
///
/// Pivots are positive and entries above a pivot lie in `[0, pivot)`. Zero
/// rows of `H` are at the bottom.
pub fn hermite_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = a.clone();
    let mut u = IntMatrix::identity(a.rows);
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for c in 0..a.cols {
        if pivot_row == a.rows {
            break;
        }
        loop {
            // smallest nonzero |entry| in column c at or below pivot_row
            let best = (pivot_row..a.rows)
                .filter(|&i| !h[(i, c)].is_zero())
                .min_by(|&i, &j| h[(i, c)].abs().cmp(&h[(j, c)].abs()).then(i.cmp(&j)));
            let Some(best) = best else { break };
            h.swap_rows(best, pivot_row);
            u.swap_rows(best, pivot_row);
            let mut done = true;
            for i in pivot_row + 1..a.rows {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = h[(i, c)].div_floor(&h[(pivot_row, c)]);
                let neg = -q;
                h.add_row_multiple(i, pivot_row, &neg);
                u.add_row_multiple(i, pivot_row, &neg);
                if !h[(i, c)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(pivot_row, c)].is_zero() {
            continue;
        }
        if h[(pivot_row, c)].is_negative() {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        for i in 0..pivot_row {
            let q = h[(i, c)].div_floor(&h[(pivot_row, c)]);
            if !q.is_zero() {
                let neg = -q;
                h.add_row_multiple(i, pivot_row, &neg);
                u.add_row_multiple(i, pivot_row, &neg);
            }
        }
        pivots.push(c);
        pivot_row += 1;
    }
    (h, u)
}

/// Row HNF with the zero rows dropped: a canonical basis of the row lattice.
pub fn row_lattice_basis(a: &IntMatrix) -> IntMatrix {
    let (h, _) = hermite_normal_form(a);
    let keep: Vec<usize> = (0..h.rows())
        .filter(|&i| h.row(i).iter().any(|x| !x.is_zero()))
        .collect();
    h.select_rows(&keep)
}

/// True when the two matrices have the same row lattice in `Z^cols`.
pub fn same_row_lattice(a: &IntMatrix, b: &IntMatrix) -> bool {
    a.cols() == b.cols() && row_lattice_basis(a) == row_lattice_basis(b)
}

/// A basis (as rows, in Hermite normal form) of `{x in Z^cols : A x = 0}`.
pub fn integer_kernel_basis(a: &IntMatrix) -> IntMatrix {
    let (h, u) = hermite_normal_form(&a.transpose());
    let zero_rows: Vec<usize> = (0..h.rows())
        .filter(|&i| h.row(i).iter().all(Zero::is_zero))
        .collect();
    let k = u.select_rows(&zero_rows);
    if k.rows() == 0 {
        return k;
    }
    row_lattice_basis(&k)
}

/// Invariant factors `d1 | d2 | ...` (nonzero ones only).
pub fn smith_invariants(a: &IntMatrix) -> Vec<BigInt> {
    let mut m = a.clone();
    let (rows, cols) = (m.rows(), m.cols());
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[(i, j)].is_zero()
                    && best.is_none_or(|(bi, bj)| m[(i, j)].abs() < m[(bi, bj)].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap_rows(t, bi);
        m.swap_cols(t, bj);
        let mut clean = true;
        for i in t + 1..rows {
            let q = m[(i, t)].div_floor(&m[(t, t)]);
            m.add_row_multiple(i, t, &-q);
            clean &= m[(i, t)].is_zero();
        }
        for j in t + 1..cols {
            let q = m[(t, j)].div_floor(&m[(t, t)]);
            m.add_col_multiple(j, t, &-q);
            clean &= m[(t, j)].is_zero();
        }
        if !clean {
            continue;
        }
        // pivot must divide the rest of the block
        let bad = (t + 1..rows)
            .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
            .find(|&(i, j)| !m[(i, j)].is_multiple_of(&m[(t, t)]));
        if let Some((i, _)) = bad {
            m.add_row_multiple(t, i, &BigInt::one());
            continue;
        }
        out.push(m[(t, t)].abs());
        t += 1;
    }
    out
}

/// Some rational solution of `A x = b`, or `None` when inconsistent.
///
/// Free variables are set to zero, so a square nonsingular system yields its
/// unique solution.
pub fn solve_rational(a: &IntMatrix, b: &RatVector) -> Option<RatVector> {
    assert_eq!(a.rows(), b.dim(), "right-hand side has wrong dimension");
    let cols = a.cols();
    let mut aug: Vec<Vec<BigRational>> = to_rational_rows(&a.to_rows());
    for (row, rhs) in aug.iter_mut().zip(&b.0) {
        row.push(rhs.clone());
    }
    let ech = rational_row_echelon(&aug, cols + 1);
    let mut x = vec![BigRational::zero(); cols];
    for row in &ech {
        match row.iter().position(|v| !v.is_zero()) {
            Some(p) if p == cols => return None,
            Some(p) => x[p] = row[cols].clone(),
            None => {}
        }
    }
    Some(RatVector(x))
}

/// Basis of the rational row space of `rows`, as primitive integer vectors.
pub fn rational_span_basis(rows: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    rational_row_echelon(&to_rational_rows(rows), cols)
        .into_iter()
        .map(|r| RatVector(r).to_primitive_integer())
        .collect()
}

/// Basis of the orthogonal complement of the span of `rows` in `Q^cols`.
pub fn orthogonal_complement(rows: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    if rows.is_empty() {
        return (0..cols)
            .map(|i| (0..cols).map(|j| BigInt::from((i == j) as i64)).collect())
            .collect();
    }
    integer_kernel_basis(&IntMatrix::from_rows(rows.to_vec(), cols)).to_rows()
}
