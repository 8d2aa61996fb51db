//! Dense exact linear algebra over the rationals.
//!
//! Matrices act on column vectors. Everything here is exact; all
//! eliminations are fraction-free in the sense that no rounding ever
//! happens, but they do work directly over `Q`.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{fmt_q, Q};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| fmt_q(&self[(r, c)])).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Q;
    fn index(&self, (r, c): (usize, usize)) -> &Q {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Q {
        &mut self.data[r * self.cols + c]
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn scalar(n: usize, c: &Q) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Builds a `rows x columns.len()` matrix from column vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<Q>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, x) in col.iter().enumerate() {
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[Q] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Q> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Q>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Matrix::identity(self.rows)
    }

    pub fn trace(&self) -> Q {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Q::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    /// `self - c * I`.
    pub fn shift(&self, c: &Q) -> Matrix {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            m[(i, i)] -= c;
        }
        m
    }

    pub fn commutator(&self, other: &Matrix) -> Matrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn pow(&self, k: usize) -> Matrix {
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Rows `r0..r1` and columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Matrix {
        let mut m = Matrix::zeros(r1 - r0, c1 - c0);
        for r in r0..r1 {
            for c in c0..c1 {
                m[(r - r0, c - c0)] = self[(r, c)].clone();
            }
        }
        m
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(parts: &[Matrix]) -> Matrix {
        let cols = parts.first().map_or(0, |m| m.cols);
        let mut data = Vec::new();
        let mut rows = 0;
        for p in parts {
            assert_eq!(p.cols, cols);
            rows += p.rows;
            data.extend(p.data.iter().cloned());
        }
        Matrix { rows, cols, data }
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..m.cols {
            if prow == m.rows {
                break;
            }
            let Some(sel) = (prow..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(prow, sel);
            let inv = m[(prow, col)].recip();
            for c in col..m.cols {
                let v = &m[(prow, c)] * &inv;
                m[(prow, c)] = v;
            }
            for r in 0..m.rows {
                if r == prow || m[(r, col)].is_zero() {
                    continue;
                }
                let f = m[(r, col)].clone();
                for c in col..m.cols {
                    if m[(prow, c)].is_zero() {
                        continue;
                    }
                    let d = &f * &m[(prow, c)];
                    m[(r, c)] -= d;
                }
            }
            pivots.push(col);
            prow += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self * x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Q::zero(); self.cols];
            v[free] = Q::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r[(row, free)].clone();
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, n + r)] = Q::one();
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(red.block(0, n, n, 2 * n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Characteristic polynomial `det(xI - A)` as coefficients, lowest
    /// degree first (monic, length `n + 1`). Faddeev-LeVerrier.
    pub fn char_poly(&self) -> Vec<Q> {
        assert!(self.is_square());
        let n = self.rows;
        let mut coeffs = vec![Q::zero(); n + 1];
        coeffs[n] = Q::one();
        let mut m = Matrix::zeros(n, n);
        for k in 1..=n {
            m = self.mul(&m);
            for i in 0..n {
                m[(i, i)] += &coeffs[n - k + 1];
            }
            let t = self.mul(&m).trace();
            coeffs[n - k] = -t / Q::from_integer(BigInt::from(k));
        }
        coeffs
    }

    /// All eigenvalues with algebraic multiplicity, provided every one of
    /// them is rational; `None` otherwise.
    pub fn rational_eigenvalues(&self) -> Option<Vec<(Q, usize)>> {
        let n = self.rows;
        if n == 0 {
            return Some(Vec::new());
        }
        // Scaling by the common denominator gives an integer matrix whose
        // rational eigenvalues are integers bounded by its row/column norms.
        let mut den = BigInt::one();
        for x in &self.data {
            den = den.lcm(x.denom());
        }
        let d = Q::from_integer(den);
        let scaled = self.scale(&d);
        let norm = |by_rows: bool| -> BigInt {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let x = if by_rows { &scaled[(i, j)] } else { &scaled[(j, i)] };
                            x.numer().abs()
                        })
                        .sum::<BigInt>()
                })
                .max()
                .unwrap_or_default()
        };
        let bound = norm(true).min(norm(false));
        let mut poly: Vec<BigInt> = scaled.char_poly().iter().map(|c| c.to_integer()).collect();
        let mut found = Vec::new();
        let mut remaining = n;
        // Zero first, then +/- k outward; stop once every root is accounted for.
        let mut k = BigInt::zero();
        while remaining > 0 && k <= bound {
            for cand in if k.is_zero() { vec![k.clone()] } else { vec![k.clone(), -k.clone()] } {
                let mut mult = 0;
                while poly.len() > 1 {
                    let (quot, rem) = synthetic_division(&poly, &cand);
                    if !rem.is_zero() {
                        break;
                    }
                    poly = quot;
                    mult += 1;
                }
                if mult > 0 {
                    found.push((Q::from_integer(cand.clone()) / &d, mult));
                    remaining -= mult;
                }
            }
            k += 1;
        }
        if remaining > 0 {
            return None;
        }
        found.sort_by(|a, b| a.0.cmp(&b.0));
        Some(found)
    }
}

fn synthetic_division(poly: &[BigInt], root: &BigInt) -> (Vec<BigInt>, BigInt) {
    // poly lowest degree first
    let n = poly.len() - 1;
    let mut quot = vec![BigInt::zero(); n];
    let mut carry = BigInt::zero();
    for i in (0..=n).rev() {
        let v = &poly[i] + &carry * root;
        if i == 0 {
            return (quot, v);
        }
        quot[i - 1] = v.clone();
        carry = v;
    }
    unreachable!()
}

/// An incrementally built subspace of `Q^dim`, kept in reduced echelon form.
#[derive(Clone, Debug)]
pub struct Subspace {
    dim: usize,
    rows: Vec<Vec<Q>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(dim: usize) -> Self {
        Subspace { dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn spanned_by<'a>(dim: usize, vectors: impl IntoIterator<Item = &'a Vec<Q>>) -> Self {
        let mut s = Self::new(dim);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residue of `v` after eliminating every pivot coordinate.
    pub fn reduce(&self, v: &[Q]) -> Vec<Q> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[Q]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].recip();
        for x in r.iter_mut() {
            *x *= &inv;
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&r) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        true
    }

    /// Coordinates of `v` modulo the subspace, read off the non-pivot
    /// positions. This is a linear surjection onto the quotient.
    pub fn quotient_coords(&self, v: &[Q]) -> Vec<Q> {
        let r = self.reduce(v);
        self.non_pivots().into_iter().map(|i| r[i].clone()).collect()
    }

    pub fn non_pivots(&self) -> Vec<usize> {
        let mut is_p = vec![false; self.dim];
        for &p in &self.pivots {
            is_p[p] = true;
        }
        (0..self.dim).filter(|&i| !is_p[i]).collect()
    }

    /// Coordinates of `v` in terms of `basis()`; `v` must lie in the span.
    pub fn coords(&self, v: &[Q]) -> Vec<Q> {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    /// Matrix whose columns are the basis vectors.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(self.dim, &self.rows)
    }

    /// `{x : <b, x> = 0 for all basis vectors b}`.
    pub fn annihilator(&self) -> Subspace {
        if self.rows.is_empty() {
            let mut s = Subspace::new(self.dim);
            for i in 0..self.dim {
                s.insert(&unit(self.dim, i));
            }
            return s;
        }
        let m = Matrix::from_rows(self.rows.clone());
        let null = m.nullspace();
        Subspace::spanned_by(self.dim, null.iter())
    }
}

pub fn unit(dim: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); dim];
    v[i] = Q::one();
    v
}

pub fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Smallest subspace containing `seeds` and stable under every operator.
pub fn spin(seeds: &[Vec<Q>], ops: &[Matrix], dim: usize) -> Subspace {
    let mut space = Subspace::new(dim);
    let mut queue: Vec<Vec<Q>> = Vec::new();
    for s in seeds {
        if space.insert(s) {
            queue.push(s.clone());
        }
    }
    while let Some(v) = queue.pop() {
        for op in ops {
            let w = op.mul_vec(&v);
            if space.insert(&w) {
                if space.dim() == dim {
                    return space;
                }
                queue.push(w);
            }
        }
    }
    space
}

/// Kernel of `(A - c)^m` where `m` is large enough to reach the generalized
/// eigenspace.
pub fn generalized_eigenspace(a: &Matrix, c: &Q, mult: usize) -> Vec<Vec<Q>> {
    a.shift(c).pow(mult).nullspace()
}

/// Restriction of `a` to the invariant subspace spanned by the columns of
/// `basis` (which must have full column rank): returns `X` with `a B = B X`.
pub fn restrict(a: &Matrix, basis: &Matrix) -> Matrix {
    let image = a.mul(basis);
    solve_in_span(basis, &image)
}

/// Solves `B X = V` for `X`, assuming every column of `V` lies in the column
/// span of `B` and `B` has full column rank.
pub fn solve_in_span(basis: &Matrix, v: &Matrix) -> Matrix {
    let k = basis.cols();
    let (_, pivot_rows) = basis.transpose().rref();
    assert_eq!(pivot_rows.len(), k, "basis is rank deficient");
    let mut minor = Matrix::zeros(k, k);
    let mut rhs = Matrix::zeros(k, v.cols());
    for (i, &r) in pivot_rows.iter().enumerate() {
        for j in 0..k {
            minor[(i, j)] = basis[(r, j)].clone();
        }
        for j in 0..v.cols() {
            rhs[(i, j)] = v[(r, j)].clone();
        }
    }
    minor.inverse().expect("pivot minor is invertible").mul(&rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
    }

    #[test]
    fn inverse_and_rank() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn nullspace_is_annihilated() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(is_zero_vec(&a.mul_vec(&ns[0])));
    }

    #[test]
    fn char_poly_of_companion() {
        // x^2 - 3x + 2
        let a = m(&[&[0, -2], &[1, 3]]);
        assert_eq!(a.char_poly(), vec![q(2), q(-3), q(1)]);
        assert_eq!(a.rational_eigenvalues().unwrap(), vec![(q(1), 1), (q(2), 1)]);
    }

    #[test]
    fn irrational_eigenvalues_detected() {
        let a = m(&[&[0, 2], &[1, 0]]);
        assert!(a.rational_eigenvalues().is_none());
    }

    #[test]
    fn fractional_eigenvalues() {
        let a = Matrix::from_rows(vec![vec![qf(1, 2), q(1)], vec![q(0), qf(-3, 2)]]);
        assert_eq!(a.rational_eigenvalues().unwrap(), vec![(qf(-3, 2), 1), (qf(1, 2), 1)]);
        let j = Matrix::from_rows(vec![vec![qf(1, 2), q(1)], vec![q(0), qf(1, 2)]]);
        assert_eq!(j.rational_eigenvalues().unwrap(), vec![(qf(1, 2), 2)]);
    }

    #[test]
    fn subspace_quotient() {
        let mut s = Subspace::new(3);
        assert!(s.insert(&[q(1), q(1), q(0)]));
        assert!(!s.insert(&[q(2), q(2), q(0)]));
        assert_eq!(s.non_pivots(), vec![1, 2]);
        assert_eq!(s.quotient_coords(&[q(1), q(0), q(0)]), vec![q(-1), q(0)]);
        let ann = s.annihilator();
        assert_eq!(ann.dim(), 2);
    }

    #[test]
    fn restriction_to_invariant_subspace() {
        let a = m(&[&[1, 1], &[0, 2]]);
        let basis = Matrix::from_columns(2, &[vec![q(1), q(0)]]);
        assert_eq!(restrict(&a, &basis), m(&[&[1]]));
    }
}
