//! Dense exact linear algebra over ℚ(i): matrices, row reduction, kernels.
//!
//! Matrices here are small (at most a few hundred rows) but mostly zero, so
//! elimination skips zero entries instead of using a sparse format.

use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};

use crate::scalar::ExactScalar;

pub type Vector = Vec<ExactScalar>;

pub fn zero_vector(n: usize) -> Vector {
    vec![ExactScalar::zero(); n]
}

pub fn is_zero_vector(v: &[ExactScalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = ExactScalar::one();
    v
}

pub fn add_scaled(acc: &mut [ExactScalar], c: &ExactScalar, v: &[ExactScalar]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += &(c * x);
        }
    }
}

pub fn scale_vector(c: &ExactScalar, v: &[ExactScalar]) -> Vector {
    v.iter().map(|x| c * x).collect()
}

/// Scales `v` so that its first nonzero entry is 1.
pub fn normalize_leading(v: &mut [ExactScalar]) {
    if let Some(p) = v.iter().find(|x| !x.is_zero()).cloned() {
        let inv = p.inv();
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
    }
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<ExactScalar>,
}

impl Index<(usize, usize)> for Matrix {
    type Output = ExactScalar;
    fn index(&self, (i, j): (usize, usize)) -> &ExactScalar {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut ExactScalar {
        &mut self.data[i * self.cols + j]
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![ExactScalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ExactScalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vector>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, cols: &[Vector]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    /// Matrix with integer entries, for tests and fixtures.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| ExactScalar::from_int(x)).collect()).collect())
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[ExactScalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn rows_vec(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &ExactScalar)> {
        self.data.iter().enumerate().map(move |(k, x)| ((k / self.cols, k % self.cols), x))
    }

    pub fn nonzeros(&self) -> impl Iterator<Item = ((usize, usize), &ExactScalar)> {
        self.entries().filter(|(_, x)| !x.is_zero())
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
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[ExactScalar]) -> Vector {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = ExactScalar::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &ExactScalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| c * x).collect() }
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn conj(&self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(ExactScalar::conj).collect() }
    }

    pub fn conj_transpose(&self) -> Matrix {
        self.transpose().conj()
    }

    pub fn trace(&self) -> ExactScalar {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    /// `self·other − other·self`.
    pub fn commutator(&self, other: &Matrix) -> Matrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn pow(&self, k: u32) -> Matrix {
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `exp(self)` for a nilpotent matrix; `None` if not nilpotent.
    pub fn exp_nilpotent(&self) -> Option<Matrix> {
        let n = self.rows;
        let mut acc = Matrix::identity(n);
        let mut term = Matrix::identity(n);
        for k in 1..=n {
            term = term.mul(self).scale(&ExactScalar::from_ratio(1, k as i64));
            if term.is_zero() {
                return Some(acc);
            }
            acc = acc.add(&term);
        }
        term.mul(self).is_zero().then_some(acc)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug: Vec<Vector> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend(unit_vector(n, i));
                r
            })
            .collect();
        let pivots = rref_in_place(&mut aug, n);
        if pivots.len() < n {
            return None;
        }
        Some(Matrix::from_rows(aug.into_iter().map(|r| r[n..].to_vec()).collect()))
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.rows_vec();
        rref_in_place(&mut rows, self.cols).len()
    }

    /// Basis of `{v : self·v = 0}`.
    pub fn nullspace(&self) -> Vec<Vector> {
        nullspace_of_rows(self.rows_vec(), self.cols)
    }

    /// One solution of `self·v = b`, if any.
    pub fn solve(&self, b: &[ExactScalar]) -> Option<Vector> {
        assert_eq!(b.len(), self.rows);
        let n = self.cols;
        let mut aug: Vec<Vector> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(b[i].clone());
                r
            })
            .collect();
        let pivots = rref_in_place(&mut aug, n + 1);
        if pivots.last() == Some(&n) {
            return None;
        }
        let mut x = zero_vector(n);
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug[r][n].clone();
        }
        Some(x)
    }

    /// Determinant by elimination.
    pub fn determinant(&self) -> ExactScalar {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.rows_vec();
        let mut det = ExactScalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
                return ExactScalar::zero();
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            let piv = a[c][c].clone();
            det = &det * &piv;
            let inv = piv.inv();
            for r in c + 1..n {
                if a[r][c].is_zero() {
                    continue;
                }
                let f = &a[r][c] * &inv;
                for j in c..n {
                    if !a[c][j].is_zero() {
                        let t = &f * &a[c][j];
                        a[r][j] -= &t;
                    }
                }
            }
        }
        det
    }
}

/// Reduces `rows` (each of length `ncols`) to reduced row echelon form in place and
/// returns the pivot columns. Pivots are sought only among the first `ncols`
/// columns; any further columns (augmentations) are carried along.
pub fn rref_in_place(rows: &mut [Vector], ncols: usize) -> Vec<usize> {
    let m = rows.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r >= m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv();
        for x in rows[r].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = rows[r].clone();
        let support: Vec<usize> = (c..pivot_row.len()).filter(|&j| !pivot_row[j].is_zero()).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &j in &support {
                let t = &f * &pivot_row[j];
                row[j] -= &t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn nullspace_of_rows(mut rows: Vec<Vector>, ncols: usize) -> Vec<Vector> {
    let pivots = rref_in_place(&mut rows, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = unit_vector(ncols, free);
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -&rows[r][free];
            }
            v
        })
        .collect()
}

/// Rank of the span of `vectors`, all of length `dim`.
pub fn span_rank(vectors: &[Vector], dim: usize) -> usize {
    let mut rows = vectors.to_vec();
    rref_in_place(&mut rows, dim).len()
}

/// Reduced echelon basis of the span of `vectors`.
pub fn span_basis(vectors: &[Vector], dim: usize) -> Vec<Vector> {
    let mut rows = vectors.to_vec();
    let k = rref_in_place(&mut rows, dim).len();
    rows.truncate(k);
    rows
}

/// Incremental independence test: keeps an echelon form of accepted vectors.
#[derive(Clone, Debug)]
pub struct IndependenceTracker {
    dim: usize,
    echelon: Vec<(usize, Vector)>,
}

impl IndependenceTracker {
    pub fn new(dim: usize) -> Self {
        Self { dim, echelon: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.echelon.len()
    }

    fn reduce(&self, v: &[ExactScalar]) -> Vector {
        let mut w = v.to_vec();
        for (p, row) in &self.echelon {
            if !w[*p].is_zero() {
                let f = w[*p].clone();
                for (x, y) in w.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x -= &(&f * y);
                    }
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[ExactScalar]) -> bool {
        is_zero_vector(&self.reduce(v))
    }

    /// Adds `v` if it is independent of the vectors accepted so far.
    pub fn insert(&mut self, v: &[ExactScalar]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].inv();
        for x in w.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for (_, row) in self.echelon.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (x, y) in row.iter_mut().zip(&w) {
                    if !y.is_zero() {
                        *x -= &(&f * y);
                    }
                }
            }
        }
        self.echelon.push((p, w));
        true
    }
}

/// Upper bound on the modulus of every eigenvalue of a square matrix
/// (induced 1-norm, with `|re| + |im|` for each entry).
pub fn eigenvalue_bound(op: &Matrix) -> i64 {
    use num_traits::ToPrimitive;
    let mut best = num_rational::BigRational::zero();
    for j in 0..op.ncols() {
        let col: num_rational::BigRational = (0..op.nrows()).map(|i| op[(i, j)].l1_bound()).sum();
        if col > best {
            best = col;
        }
    }
    best.ceil().to_integer().to_i64().expect("eigenvalue bound overflows i64")
}

/// Splits the span of `space` into eigenspaces of `op` with integer eigenvalues.
///
/// Returns `None` when the eigenspaces found do not fill the space, i.e. `op`
/// is not diagonalizable there with integer eigenvalues.
pub fn integer_eigenspaces(op: &Matrix, space: &[Vector]) -> Option<Vec<(i64, Vec<Vector>)>> {
    let m = space.len();
    if m == 0 {
        return Some(Vec::new());
    }
    let d = op.nrows();
    let images: Vec<Vector> = space.iter().map(|b| op.mul_vec(b)).collect();
    let bound = eigenvalue_bound(op);
    let mut found = 0;
    let mut out = Vec::new();
    let mut candidates = vec![0i64];
    for k in 1..=bound {
        candidates.push(k);
        candidates.push(-k);
    }
    for c in candidates {
        if found == m {
            break;
        }
        let cs = ExactScalar::from_int(c);
        let cols: Vec<Vector> =
            images.iter().zip(space).map(|(ab, b)| ab.iter().zip(b).map(|(x, y)| x - &(&cs * y)).collect()).collect();
        let kernel = Matrix::from_columns(d, &cols).nullspace();
        if kernel.is_empty() {
            continue;
        }
        let vecs: Vec<Vector> = kernel
            .iter()
            .map(|y| {
                let mut v = zero_vector(d);
                for (yi, b) in y.iter().zip(space) {
                    add_scaled(&mut v, yi, b);
                }
                v
            })
            .collect();
        found += vecs.len();
        out.push((c, vecs));
    }
    (found == m).then(|| {
        out.sort_by_key(|(c, _)| std::cmp::Reverse(*c));
        out
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(n: i64) -> ExactScalar {
        ExactScalar::from_int(n)
    }

    #[test]
    fn nullspace_of_rank_one() {
        let a = Matrix::from_int_rows(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(is_zero_vector(&a.mul_vec(v)));
        }
        assert_eq!(a.rank(), 1);
    }

    #[test]
    fn solve_inconsistent() {
        let a = Matrix::from_int_rows(&[&[1, 1], &[1, 1]]);
        assert!(a.solve(&[s(1), s(2)]).is_none());
        let x = a.solve(&[s(3), s(3)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![s(3), s(3)]);
    }

    #[test]
    fn inverse_and_determinant() {
        let a = Matrix::from_int_rows(&[&[2, 1], &[7, 4]]);
        assert_eq!(a.determinant(), s(1));
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2));
        let sing = Matrix::from_int_rows(&[&[1, 2], &[2, 4]]);
        assert!(sing.inverse().is_none());
        assert!(sing.determinant().is_zero());
    }

    #[test]
    fn exp_of_jordan_block() {
        let n = Matrix::from_int_rows(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        let e = n.exp_nilpotent().unwrap();
        assert_eq!(e[(0, 2)], ExactScalar::from_ratio(1, 2));
        assert_eq!(e.mul(&n.scale(&s(-1)).exp_nilpotent().unwrap()), Matrix::identity(3));
        assert!(Matrix::identity(2).exp_nilpotent().is_none());
    }

    #[test]
    fn tracker_detects_dependence() {
        let mut t = IndependenceTracker::new(3);
        assert!(t.insert(&[s(1), s(1), s(0)]));
        assert!(t.insert(&[s(0), s(1), s(1)]));
        assert!(!t.insert(&[s(1), s(2), s(1)]));
        assert!(t.contains(&[s(2), s(3), s(1)]));
        assert_eq!(t.rank(), 2);
    }

    #[test]
    fn eigenspaces_of_diagonalizable() {
        let a = Matrix::from_int_rows(&[&[2, 1], &[0, -1]]);
        let space = vec![unit_vector(2, 0), unit_vector(2, 1)];
        let es = integer_eigenspaces(&a, &space).unwrap();
        assert_eq!(es.iter().map(|(c, v)| (*c, v.len())).collect::<Vec<_>>(), vec![(2, 1), (-1, 1)]);
        let jordan = Matrix::from_int_rows(&[&[1, 1], &[0, 1]]);
        assert!(integer_eigenspaces(&jordan, &space).is_none());
        let half = Matrix::identity(2).scale(&ExactScalar::from_ratio(1, 2));
        assert!(integer_eigenspaces(&half, &space).is_none());
    }

    proptest! {
        #[test]
        fn rank_nullity(entries in proptest::collection::vec(-3i64..4, 12)) {
            let rows: Vec<Vector> = entries.chunks(4).map(|c| c.iter().map(|&x| s(x)).collect()).collect();
            let a = Matrix::from_rows(rows);
            let ns = a.nullspace();
            prop_assert_eq!(a.rank() + ns.len(), 4);
            for v in &ns {
                prop_assert!(is_zero_vector(&a.mul_vec(v)));
            }
        }
    }
}
