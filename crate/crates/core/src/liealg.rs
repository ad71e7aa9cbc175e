//! Matrix realizations of complexified classical real forms.
//!
//! A realization fixes an ordered basis of `g_C` adapted to the Cartan
//! decomposition `g_C = k_C ⊕ p_C`: the first `dim k_C` basis vectors span `k_C`,
//! the rest span `p_C`. Elements are handled as coordinate vectors in this basis;
//! brackets go through a precomputed table of structure constants.
//!
//! * `sl(n,ℝ)`: `θ(Z) = −Zᵀ`, so `k_C = so(n,ℂ)` and `p_C` is the traceless
//!   symmetric matrices. The standard Cartan of `k_C` is spanned by
//!   `i(E_{2j−1,2j} − E_{2j,2j−1})`.
//! * `su(p,q)`: `θ(Z) = I_{p,q} Z I_{p,q}`, so `k_C = s(gl_p ⊕ gl_q)` and `p_C`
//!   is the off-diagonal blocks. The standard Cartan is the traceless diagonal.
//!
//! In both cases the compact real form is `su(n)` and `τ(Z) = −Z*`.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, Vector};
use crate::scalar::ExactScalar;

/// Which real form to realize.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", deny_unknown_fields)]
pub enum RealFormDescriptor {
    #[serde(rename = "sl_R")]
    SlR { n: usize },
    #[serde(rename = "su")]
    Su { p: usize, q: usize },
}

impl RealFormDescriptor {
    pub fn validate(&self) -> Result<()> {
        match *self {
            RealFormDescriptor::SlR { n } if n < 2 => {
                Err(Error::Descriptor(format!("sl(n,R) needs n >= 2, got n = {n}")))
            }
            RealFormDescriptor::Su { p, q } if q < 1 || p < q => {
                Err(Error::Descriptor(format!("su(p,q) needs p >= q >= 1, got ({p},{q})")))
            }
            _ => Ok(()),
        }
    }

    /// Size of the defining matrices.
    pub fn matrix_size(&self) -> usize {
        match *self {
            RealFormDescriptor::SlR { n } => n,
            RealFormDescriptor::Su { p, q } => p + q,
        }
    }
}

impl fmt::Display for RealFormDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealFormDescriptor::SlR { n } => write!(f, "sl({n},R)"),
            RealFormDescriptor::Su { p, q } => write!(f, "su({p},{q})"),
        }
    }
}

/// A linear functional on `n × n` matrices, stored as `Σ c·Z[i][j]`.
type EntryFunctional = Vec<(usize, usize, ExactScalar)>;

/// Sparse coordinate vector: `(basis index, coefficient)`.
type SparseCoords = Vec<(usize, ExactScalar)>;

/// An exact realization of `g_C` with its Cartan decomposition.
#[derive(Clone, Debug)]
pub struct AlgebraRealization {
    descriptor: RealFormDescriptor,
    n: usize,
    basis: Vec<Matrix>,
    labels: Vec<String>,
    dim_k: usize,
    duals: Vec<EntryFunctional>,
    structure: Vec<SparseCoords>,
    cartan: Vec<Vector>,
    chevalley_frame: Matrix,
}

fn unit(n: usize, i: usize, j: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    m[(i, j)] = ExactScalar::one();
    m
}

fn one() -> ExactScalar {
    ExactScalar::one()
}

fn half() -> ExactScalar {
    ExactScalar::from_ratio(1, 2)
}

/// Builds the realization for `d`.
pub fn build_real_form(d: RealFormDescriptor) -> Result<AlgebraRealization> {
    d.validate()?;
    let n = d.matrix_size();
    let mut basis = Vec::new();
    let mut labels = Vec::new();
    let mut duals: Vec<EntryFunctional> = Vec::new();
    let diag_dual = |i: usize| -> EntryFunctional { (0..=i).map(|m| (m, m, one())).collect() };
    let diag = |i: usize| unit(n, i, i).sub(&unit(n, i + 1, i + 1));

    let dim_k;
    let mut cartan_indices: Vec<(usize, ExactScalar)> = Vec::new();
    match d {
        RealFormDescriptor::SlR { .. } => {
            for i in 0..n {
                for j in i + 1..n {
                    if j == i + 1 && i % 2 == 0 {
                        cartan_indices.push((basis.len(), ExactScalar::i()));
                    }
                    basis.push(unit(n, i, j).sub(&unit(n, j, i)));
                    labels.push(format!("K{}{}", i + 1, j + 1));
                    duals.push(vec![(i, j, half()), (j, i, -half())]);
                }
            }
            dim_k = basis.len();
            for i in 0..n {
                for j in i + 1..n {
                    basis.push(unit(n, i, j).add(&unit(n, j, i)));
                    labels.push(format!("P{}{}", i + 1, j + 1));
                    duals.push(vec![(i, j, half()), (j, i, half())]);
                }
            }
            for i in 0..n - 1 {
                basis.push(diag(i));
                labels.push(format!("D{}", i + 1));
                duals.push(diag_dual(i));
            }
        }
        RealFormDescriptor::Su { p, .. } => {
            let block = |i: usize| i < p;
            for i in 0..n - 1 {
                cartan_indices.push((basis.len(), one()));
                basis.push(diag(i));
                labels.push(format!("H{}", i + 1));
                duals.push(diag_dual(i));
            }
            for i in 0..n {
                for j in 0..n {
                    if i != j && block(i) == block(j) {
                        basis.push(unit(n, i, j));
                        labels.push(format!("E{},{}", i + 1, j + 1));
                        duals.push(vec![(i, j, one())]);
                    }
                }
            }
            dim_k = basis.len();
            for i in 0..n {
                for j in 0..n {
                    if block(i) != block(j) {
                        basis.push(unit(n, i, j));
                        labels.push(format!("E{},{}", i + 1, j + 1));
                        duals.push(vec![(i, j, one())]);
                    }
                }
            }
        }
    }

    let dim = basis.len();
    let cartan = cartan_indices
        .iter()
        .map(|(idx, c)| {
            let mut v = linalg::zero_vector(dim);
            v[*idx] = c.clone();
            v
        })
        .collect();

    let chevalley_frame = match d {
        RealFormDescriptor::SlR { .. } => {
            let mut c = Matrix::zeros(n, n);
            for b in 0..n / 2 {
                let (r0, r1) = (2 * b, 2 * b + 1);
                c[(r0, r0)] = one();
                c[(r1, r0)] = -ExactScalar::i();
                c[(r0, r1)] = half();
                c[(r1, r1)] = &ExactScalar::i() * &half();
            }
            if n % 2 == 1 {
                c[(n - 1, n - 1)] = one();
            }
            c
        }
        RealFormDescriptor::Su { .. } => Matrix::identity(n),
    };

    let mut realization = AlgebraRealization {
        descriptor: d,
        n,
        basis,
        labels,
        dim_k,
        duals,
        structure: Vec::new(),
        cartan,
        chevalley_frame,
    };
    realization.structure = realization.compute_structure_constants()?;
    Ok(realization)
}

impl AlgebraRealization {
    fn compute_structure_constants(&self) -> Result<Vec<SparseCoords>> {
        let d = self.dim();
        let mut table = vec![Vec::new(); d * d];
        for i in 0..d {
            for j in i + 1..d {
                let c = self.coords(&self.basis[i].commutator(&self.basis[j]))?;
                let sparse: SparseCoords = c.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
                table[j * d + i] = sparse.iter().map(|(k, x)| (*k, -x)).collect();
                table[i * d + j] = sparse;
            }
        }
        Ok(table)
    }

    pub fn descriptor(&self) -> RealFormDescriptor {
        self.descriptor
    }

    /// Size `n` of the ambient matrices.
    pub fn matrix_size(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn dim_k(&self) -> usize {
        self.dim_k
    }

    pub fn dim_p(&self) -> usize {
        self.dim() - self.dim_k
    }

    pub fn k_range(&self) -> std::ops::Range<usize> {
        0..self.dim_k
    }

    pub fn p_range(&self) -> std::ops::Range<usize> {
        self.dim_k..self.dim()
    }

    pub fn basis_matrix(&self, i: usize) -> &Matrix {
        &self.basis[i]
    }

    pub fn basis_label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// Coordinate vectors of the `k_C` basis.
    pub fn k_basis(&self) -> Vec<Vector> {
        self.k_range().map(|i| linalg::unit_vector(self.dim(), i)).collect()
    }

    /// Coordinate vectors of the `p_C` basis.
    pub fn p_basis(&self) -> Vec<Vector> {
        self.p_range().map(|i| linalg::unit_vector(self.dim(), i)).collect()
    }

    /// Basis of the standard Cartan subalgebra `t_C ⊂ k_C`, as coordinates.
    pub fn cartan_basis(&self) -> &[Vector] {
        &self.cartan
    }

    /// Columns are a frame of `ℂⁿ` in which `t_C` is diagonal; conjugating matrix
    /// units by it gives a Chevalley basis for a Cartan `h ⊇ t_C` of `g_C`.
    pub fn chevalley_frame(&self) -> &Matrix {
        &self.chevalley_frame
    }

    pub fn to_matrix(&self, v: &[ExactScalar]) -> Matrix {
        assert_eq!(v.len(), self.dim());
        let mut m = Matrix::zeros(self.n, self.n);
        for (c, b) in v.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for ((i, j), x) in b.nonzeros() {
                m[(i, j)] += &(c * x);
            }
        }
        m
    }

    /// Coordinates of a matrix in the basis.
    pub fn coords(&self, z: &Matrix) -> Result<Vector> {
        if z.nrows() != self.n || z.ncols() != self.n {
            return Err(Error::NotInSpan(format!(
                "expected {0}x{0} matrix, got {1}x{2}",
                self.n,
                z.nrows(),
                z.ncols()
            )));
        }
        let v: Vector = self.duals.iter().map(|f| f.iter().map(|(i, j, c)| c * &z[(*i, *j)]).sum()).collect();
        if &self.to_matrix(&v) != z {
            return Err(Error::NotInSpan(format!("matrix is not in {}", self.descriptor)));
        }
        Ok(v)
    }

    /// `[b_i, b_j]` in coordinates, sparse.
    pub fn structure_constants(&self, i: usize, j: usize) -> &[(usize, ExactScalar)] {
        &self.structure[i * self.dim() + j]
    }

    /// `[z, w]` in coordinates.
    pub fn bracket(&self, z: &[ExactScalar], w: &[ExactScalar]) -> Vector {
        let d = self.dim();
        let mut out = linalg::zero_vector(d);
        for (i, zi) in z.iter().enumerate() {
            if zi.is_zero() {
                continue;
            }
            for (j, wj) in w.iter().enumerate() {
                if wj.is_zero() {
                    continue;
                }
                let s = self.structure_constants(i, j);
                if s.is_empty() {
                    continue;
                }
                let c = zi * wj;
                for (k, x) in s {
                    out[*k] += &(&c * x);
                }
            }
        }
        out
    }

    /// `ZW − WZ` for matrices, re-expressed in the basis.
    pub fn bracket_matrices(&self, z: &Matrix, w: &Matrix) -> Result<Vector> {
        self.coords(&z.commutator(w))
    }

    /// Matrix of `ad(z)` on `g_C` in the basis (column `j` is `[z, b_j]`).
    pub fn ad(&self, z: &[ExactScalar]) -> Matrix {
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        for (i, zi) in z.iter().enumerate() {
            if zi.is_zero() {
                continue;
            }
            for j in 0..d {
                for (k, x) in self.structure_constants(i, j) {
                    m[(*k, j)] += &(zi * x);
                }
            }
        }
        m
    }

    /// Images `[z, v]` of each vector in `domain`.
    pub fn ad_images(&self, z: &[ExactScalar], domain: &[Vector]) -> Vec<Vector> {
        domain.iter().map(|v| self.bracket(z, v)).collect()
    }

    /// Rank of `v ↦ [z, v]` on the span of `domain`.
    pub fn ad_rank(&self, z: &[ExactScalar], domain: &[Vector]) -> usize {
        linalg::span_rank(&self.ad_images(z, domain), self.dim())
    }

    pub fn is_in_k(&self, v: &[ExactScalar]) -> bool {
        v[self.dim_k..].iter().all(Zero::is_zero)
    }

    pub fn is_in_p(&self, v: &[ExactScalar]) -> bool {
        v[..self.dim_k].iter().all(Zero::is_zero)
    }

    /// Cartan involution in coordinates.
    pub fn theta(&self, v: &[ExactScalar]) -> Vector {
        v.iter().enumerate().map(|(i, x)| if i < self.dim_k { x.clone() } else { -x }).collect()
    }

    /// Cartan involution on matrices.
    pub fn theta_matrix(&self, z: &Matrix) -> Matrix {
        match self.descriptor {
            RealFormDescriptor::SlR { .. } => z.transpose().scale(&ExactScalar::from_int(-1)),
            RealFormDescriptor::Su { p, q } => {
                let s = signature_matrix(p, q);
                s.mul(z).mul(&s)
            }
        }
    }

    /// Conjugation of `g_C` with respect to the real form `g`.
    pub fn sigma_matrix(&self, z: &Matrix) -> Matrix {
        match self.descriptor {
            RealFormDescriptor::SlR { .. } => z.conj(),
            RealFormDescriptor::Su { p, q } => {
                let s = signature_matrix(p, q);
                s.mul(&z.conj_transpose()).mul(&s).scale(&ExactScalar::from_int(-1))
            }
        }
    }

    /// Conjugation with respect to the compact real form `k + i·p`.
    pub fn tau_matrix(&self, z: &Matrix) -> Matrix {
        z.conj_transpose().scale(&ExactScalar::from_int(-1))
    }

    pub fn sigma(&self, v: &[ExactScalar]) -> Result<Vector> {
        self.coords(&self.sigma_matrix(&self.to_matrix(v)))
    }

    pub fn tau(&self, v: &[ExactScalar]) -> Result<Vector> {
        self.coords(&self.tau_matrix(&self.to_matrix(v)))
    }

    /// Killing form `tr(ad z ∘ ad w)`.
    pub fn killing_form(&self, z: &[ExactScalar], w: &[ExactScalar]) -> ExactScalar {
        let az = self.ad(z);
        let aw = self.ad(w);
        let d = self.dim();
        let mut acc = ExactScalar::zero();
        for j in 0..d {
            for m in 0..d {
                let a = &az[(j, m)];
                if a.is_zero() {
                    continue;
                }
                let b = &aw[(m, j)];
                if !b.is_zero() {
                    acc += &(a * b);
                }
            }
        }
        acc
    }

    /// `⟨z, w⟩ = −B(z, τ(w))`: linear in `z`, conjugate-linear in `w`.
    pub fn hermitian_form(&self, z: &[ExactScalar], w: &[ExactScalar]) -> ExactScalar {
        let tw = self.tau(w).expect("tau preserves g_C");
        -self.killing_form(z, &tw)
    }

    /// Coefficients of `x` in the standard Cartan basis, if `x ∈ t_C`.
    pub fn cartan_coordinates(&self, x: &[ExactScalar]) -> Option<Vec<ExactScalar>> {
        let d = self.dim();
        let a = Matrix::from_columns(d, &self.cartan);
        let c = a.solve(x)?;
        Some(c)
    }
}

/// `I_{p,q} = diag(1,…,1,−1,…,−1)`.
pub fn signature_matrix(p: usize, q: usize) -> Matrix {
    let mut s = Matrix::identity(p + q);
    for i in p..p + q {
        s[(i, i)] = ExactScalar::from_int(-1);
    }
    s
}
