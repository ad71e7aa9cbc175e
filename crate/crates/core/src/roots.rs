//! Root data for `(k_C, t_C)`, positive systems, `w₀`, and the Weyl involution.
//!
//! Weights are integer vectors. For `sl(n,ℝ)` the coordinates are the standard
//! `ε`-coordinates of `so(n,ℂ)` (eigenvalues on the rotation generators of the
//! standard Cartan). For `su(p,q)` a weight is a vector of length `p+q`, defined
//! up to adding multiples of `(1,…,1)`; it is stored normalized so the last
//! coordinate is 0.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::liealg::{AlgebraRealization, RealFormDescriptor};
use crate::linalg::{self, Matrix, Vector};
use crate::scalar::ExactScalar;

/// An integral weight in `t*`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVector(pub Vec<i64>);

impl WeightVector {
    pub fn zero(len: usize) -> Self {
        WeightVector(vec![0; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &WeightVector) -> WeightVector {
        WeightVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &WeightVector) -> WeightVector {
        WeightVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> WeightVector {
        WeightVector(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> WeightVector {
        self.scale(-1)
    }

    pub fn dot(&self, other: &WeightVector) -> i64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn max_norm(&self) -> i64 {
        self.0.iter().map(|c| c.abs()).max().unwrap_or(0)
    }
}

impl fmt::Debug for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl From<Vec<i64>> for WeightVector {
    fn from(v: Vec<i64>) -> Self {
        WeightVector(v)
    }
}

/// How weight coordinates relate to the Cartan basis of the realization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightConvention {
    /// `so(n,ℂ)`: coordinate `j` is the eigenvalue on the `j`-th rotation generator.
    Orthogonal { rank: usize },
    /// `s(gl_p ⊕ gl_q)`: eigenvalue on `E_ii − E_{i+1,i+1}` is `λ_i − λ_{i+1}`.
    Unitary { n: usize },
}

impl WeightConvention {
    pub fn for_realization(g: &AlgebraRealization) -> Self {
        match g.descriptor() {
            RealFormDescriptor::SlR { n } => WeightConvention::Orthogonal { rank: n / 2 },
            RealFormDescriptor::Su { p, q } => WeightConvention::Unitary { n: p + q },
        }
    }

    pub fn len(&self) -> usize {
        match *self {
            WeightConvention::Orthogonal { rank } => rank,
            WeightConvention::Unitary { n } => n,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Weight coordinates from eigenvalues on the Cartan basis.
    pub fn from_cartan_values(&self, values: &[i64]) -> WeightVector {
        match *self {
            WeightConvention::Orthogonal { .. } => WeightVector(values.to_vec()),
            WeightConvention::Unitary { n } => {
                let mut w = vec![0i64; n];
                for i in (0..n - 1).rev() {
                    w[i] = values[i] + w[i + 1];
                }
                WeightVector(w)
            }
        }
    }

    /// Canonical representative of the weight class.
    pub fn normalize(&self, w: &WeightVector) -> WeightVector {
        match *self {
            WeightConvention::Orthogonal { .. } => w.clone(),
            WeightConvention::Unitary { .. } => {
                let last = *w.0.last().unwrap_or(&0);
                WeightVector(w.0.iter().map(|c| c - last).collect())
            }
        }
    }

    /// Representative with coordinate sum zero, used for roots and `p_C` weights.
    ///
    /// Pairings with these are independent of the normalization of the other weight.
    pub fn traceless(&self, w: &WeightVector) -> WeightVector {
        match *self {
            WeightConvention::Orthogonal { .. } => w.clone(),
            WeightConvention::Unitary { n } => {
                let s: i64 = w.0.iter().sum();
                assert_eq!(s % n as i64, 0, "weight is not in the root lattice");
                let shift = s / n as i64;
                WeightVector(w.0.iter().map(|c| c - shift).collect())
            }
        }
    }

    /// Squared length, insensitive to the normalization (scaled by `n` in the
    /// unitary case, where it is the length of the projection off `(1,…,1)`).
    pub fn norm_sq(&self, w: &WeightVector) -> i128 {
        let sq: i128 = w.0.iter().map(|&c| (c as i128) * (c as i128)).sum();
        match *self {
            WeightConvention::Orthogonal { .. } => sq,
            WeightConvention::Unitary { n } => {
                let s: i128 = w.0.iter().map(|&c| c as i128).sum();
                (n as i128) * sq - s * s
            }
        }
    }
}

/// A root of `(k_C, t_C)` with a root vector.
#[derive(Clone, Debug)]
pub struct Root {
    pub weight: WeightVector,
    pub cartan_values: Vec<i64>,
    /// Root vector, in realization coordinates.
    pub vector: Vector,
    pub positive: bool,
    /// `α(x)` for the grading element supplied at construction.
    pub x_value: i64,
}

/// A `t_C`-weight space of `p_C`.
#[derive(Clone, Debug)]
pub struct WeightSpace {
    pub weight: WeightVector,
    pub cartan_values: Vec<i64>,
    pub basis: Vec<Vector>,
    pub x_value: i64,
}

/// Root data of `k_C` relative to the standard Cartan `t_C`, with a positive
/// system for which a given grading element `x ∈ t_C` is dominant.
#[derive(Clone, Debug)]
pub struct RootDatum {
    convention: WeightConvention,
    cartan: Vec<Vector>,
    x: Vector,
    x_cartan: Vec<ExactScalar>,
    roots: Vec<Root>,
    simple: Vec<usize>,
    p_weights: Vec<WeightSpace>,
    chevalley_frame: Matrix,
}

fn cartan_eigen_decomposition(g: &AlgebraRealization, space: Vec<Vector>) -> Result<Vec<(Vec<i64>, Vec<Vector>)>> {
    let mut pieces: Vec<(Vec<i64>, Vec<Vector>)> = vec![(Vec::new(), space)];
    for t in g.cartan_basis() {
        let ad = g.ad(t);
        let mut next = Vec::new();
        for (values, basis) in pieces {
            let split = linalg::integer_eigenspaces(&ad, &basis)
                .ok_or_else(|| Error::Consistency("Cartan element is not ad-diagonalizable over Z".into()))?;
            for (c, vecs) in split {
                let mut v = values.clone();
                v.push(c);
                next.push((v, vecs));
            }
        }
        pieces = next;
    }
    Ok(pieces)
}

fn rational_to_i64(q: &ExactScalar, what: &str) -> Result<i64> {
    q.to_i64().ok_or_else(|| Error::NotGradingElement(format!("{what} = {q} is not an integer")))
}

/// Builds the root datum for `realization`, choosing `Δ_k⁺` so that `x` is dominant.
///
/// Roots with `α(x) = 0` are ordered by the regular vector `(L, L−1, …, 1)` in
/// weight coordinates.
pub fn build_root_datum(g: &AlgebraRealization, x: &[ExactScalar]) -> Result<RootDatum> {
    if x.len() != g.dim() {
        return Err(Error::DimensionMismatch { expected: g.dim(), got: x.len() });
    }
    let x_cartan = g.cartan_coordinates(x).ok_or(Error::NotInStandardCartan)?;
    let convention = WeightConvention::for_realization(g);
    let x_value = |values: &[i64]| -> Result<i64> {
        let v: ExactScalar = values.iter().zip(&x_cartan).map(|(&a, c)| &ExactScalar::from_int(a) * c).sum();
        rational_to_i64(&v, "root value on x")
    };
    let len = convention.len() as i64;
    let tiebreak = WeightVector((0..len).map(|k| len - k).collect());

    let mut roots = Vec::new();
    let mut zero_dim = 0;
    for (values, vecs) in cartan_eigen_decomposition(g, g.k_basis())? {
        if values.iter().all(|&c| c == 0) {
            zero_dim = vecs.len();
            continue;
        }
        if vecs.len() != 1 {
            return Err(Error::Consistency(format!("root space of dimension {}", vecs.len())));
        }
        let weight = convention.traceless(&convention.from_cartan_values(&values));
        let xv = x_value(&values)?;
        let positive = match xv.cmp(&0) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => weight.dot(&tiebreak) > 0,
        };
        let mut vector = vecs.into_iter().next().unwrap();
        linalg::normalize_leading(&mut vector);
        roots.push(Root { weight, cartan_values: values, vector, positive, x_value: xv });
    }
    if zero_dim != g.cartan_basis().len() {
        return Err(Error::Consistency("t_C is not its own centralizer in k_C".into()));
    }
    roots.sort_by(|a, b| b.positive.cmp(&a.positive).then_with(|| b.weight.cmp(&a.weight)));

    let positive: Vec<usize> = (0..roots.len()).filter(|&i| roots[i].positive).collect();
    let simple = positive
        .iter()
        .copied()
        .filter(|&i| {
            !positive
                .iter()
                .any(|&a| positive.iter().any(|&b| roots[a].weight.add(&roots[b].weight) == roots[i].weight))
        })
        .collect();

    let mut p_weights = Vec::new();
    for (values, mut basis) in cartan_eigen_decomposition(g, g.p_basis())? {
        for v in basis.iter_mut() {
            linalg::normalize_leading(v);
        }
        p_weights.push(WeightSpace {
            weight: convention.traceless(&convention.from_cartan_values(&values)),
            x_value: x_value(&values)?,
            cartan_values: values,
            basis,
        });
    }
    p_weights.sort_by(|a, b| b.weight.cmp(&a.weight));

    Ok(RootDatum {
        convention,
        cartan: g.cartan_basis().to_vec(),
        x: x.to_vec(),
        x_cartan,
        roots,
        simple,
        p_weights,
        chevalley_frame: g.chevalley_frame().clone(),
    })
}

impl RootDatum {
    pub fn convention(&self) -> WeightConvention {
        self.convention
    }

    pub fn weight_len(&self) -> usize {
        self.convention.len()
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan_basis(&self) -> &[Vector] {
        &self.cartan
    }

    pub fn grading_element(&self) -> &[ExactScalar] {
        &self.x
    }

    /// Coefficients of the grading element in the Cartan basis.
    pub fn grading_cartan_coordinates(&self) -> &[ExactScalar] {
        &self.x_cartan
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter().filter(|r| r.positive)
    }

    pub fn negative_roots(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter().filter(|r| !r.positive)
    }

    pub fn simple_roots(&self) -> Vec<&Root> {
        self.simple.iter().map(|&i| &self.roots[i]).collect()
    }

    /// Root vectors spanning `n_k`.
    pub fn nilradical(&self) -> Vec<Vector> {
        self.positive_roots().map(|r| r.vector.clone()).collect()
    }

    /// Root vectors spanning `n_k⁻`.
    pub fn opposite_nilradical(&self) -> Vec<Vector> {
        self.negative_roots().map(|r| r.vector.clone()).collect()
    }

    /// `t_C ⊕ n_k`.
    pub fn borel(&self) -> Vec<Vector> {
        let mut b = self.cartan.clone();
        b.extend(self.nilradical());
        b
    }

    pub fn borel_dim(&self) -> usize {
        self.rank() + self.positive_roots().count()
    }

    /// Positive roots vanishing on `x`; their root vectors span `u(l_k)`.
    pub fn levi_positive_roots(&self) -> Vec<&Root> {
        self.positive_roots().filter(|r| r.x_value == 0).collect()
    }

    /// Simple roots of `l_C ∩ k_C` for the induced positive system.
    pub fn levi_simple_roots(&self) -> Vec<&Root> {
        let pos = self.levi_positive_roots();
        pos.iter()
            .copied()
            .filter(|r| !pos.iter().any(|a| pos.iter().any(|b| a.weight.add(&b.weight) == r.weight)))
            .collect()
    }

    /// `t_C`-weight spaces of `p_C`, by decreasing weight.
    pub fn p_weight_spaces(&self) -> &[WeightSpace] {
        &self.p_weights
    }

    pub fn pairing(&self, a: &WeightVector, b: &WeightVector) -> i64 {
        a.dot(b)
    }

    /// `⟨λ, α⟩ ≥ 0` for every simple root.
    pub fn is_dominant(&self, lambda: &WeightVector) -> bool {
        lambda.len() == self.weight_len() && self.simple_roots().iter().all(|a| lambda.dot(&a.weight) >= 0)
    }

    /// Reflection in the hyperplane orthogonal to `alpha`.
    pub fn reflect(&self, lambda: &WeightVector, alpha: &WeightVector) -> WeightVector {
        let num = 2 * lambda.dot(alpha);
        let den = alpha.dot(alpha);
        assert_eq!(num % den, 0, "non-integral reflection");
        lambda.sub(&alpha.scale(num / den))
    }

    fn rho2(&self) -> WeightVector {
        self.positive_roots().fold(WeightVector::zero(self.weight_len()), |acc, r| acc.add(&r.weight))
    }

    /// `w₀` as an integer matrix on weight coordinates (rows act on column vectors).
    ///
    /// Found by reflecting the strictly dominant `2ρ` in simple roots until it
    /// becomes antidominant.
    pub fn longest_weyl_element(&self) -> Vec<Vec<i64>> {
        let len = self.weight_len();
        let simple = self.simple_roots();
        let mut word: Vec<WeightVector> = Vec::new();
        let mut v = self.rho2();
        while let Some(a) = simple.iter().find(|a| v.dot(&a.weight) > 0) {
            v = self.reflect(&v, &a.weight);
            word.push(a.weight.clone());
        }
        // w₀ = s_{word[last]} ⋯ s_{word[0]}; apply to each unit vector
        let columns: Vec<WeightVector> = (0..len)
            .map(|j| {
                let mut e = WeightVector::zero(len);
                e.0[j] = 1;
                for a in &word {
                    e = self.reflect(&e, a);
                }
                e
            })
            .collect();
        (0..len).map(|i| columns.iter().map(|c| c.0[i]).collect()).collect()
    }

    pub fn apply_w0(&self, lambda: &WeightVector) -> WeightVector {
        let w0 = self.longest_weyl_element();
        let image = WeightVector(w0.iter().map(|row| row.iter().zip(&lambda.0).map(|(a, b)| a * b).sum()).collect());
        self.convention.normalize(&image)
    }

    /// `−w₀λ` without a dominance check.
    pub fn dual_weight(&self, lambda: &WeightVector) -> WeightVector {
        self.convention.normalize(&self.apply_w0(lambda).neg())
    }

    /// Highest weight of the dual K-type, `−w₀λ`.
    pub fn dual_ktype(&self, lambda: &WeightVector) -> Result<WeightVector> {
        if !self.is_dominant(lambda) {
            return Err(Error::NotDominant(lambda.0.clone()));
        }
        Ok(self.dual_weight(lambda))
    }

    /// The Weyl involution for the Chevalley basis built from the realization's frame.
    pub fn weyl_involution(&self) -> WeylInvolution {
        WeylInvolution::from_frame(&self.chevalley_frame)
    }
}

/// Chevalley basis of `g_C = sl(n,ℂ)` relative to a Cartan `h ⊇ t_C`.
#[derive(Clone, Debug)]
pub struct ChevalleyBasis {
    /// `H_α` for the simple roots `α = e_a − e_{a+1}`.
    pub simple_coroots: Vec<Matrix>,
    /// `(X_α, X_{−α})` for the positive roots `e_a − e_b`, `a < b`.
    pub root_pairs: Vec<(Matrix, Matrix)>,
}

/// `ν(Z) = −M Zᵀ M⁻¹` with `M = C Cᵀ`, where the frame `C` carries matrix units to
/// the Chevalley basis. Then `ν(H_α) = −H_α` and `ν(X_α) = −X_{−α}`.
#[derive(Clone, Debug)]
pub struct WeylInvolution {
    frame: Matrix,
    frame_inv: Matrix,
    m: Matrix,
    m_inv: Matrix,
}

impl WeylInvolution {
    pub fn from_frame(frame: &Matrix) -> Self {
        let frame_inv = frame.inverse().expect("Chevalley frame is invertible");
        let m = frame.mul(&frame.transpose());
        let m_inv = m.inverse().expect("frame Gram matrix is invertible");
        Self { frame: frame.clone(), frame_inv, m, m_inv }
    }

    pub fn apply(&self, z: &Matrix) -> Matrix {
        self.m.mul(&z.transpose()).mul(&self.m_inv).scale(&ExactScalar::from_int(-1))
    }

    /// `ν` in realization coordinates.
    pub fn apply_coords(&self, g: &AlgebraRealization, v: &[ExactScalar]) -> Result<Vector> {
        g.coords(&self.apply(&g.to_matrix(v)))
    }

    pub fn chevalley_basis(&self) -> ChevalleyBasis {
        let n = self.frame.nrows();
        let conj = |a: usize, b: usize| {
            let mut e = Matrix::zeros(n, n);
            e[(a, b)] = ExactScalar::from_int(1);
            self.frame.mul(&e).mul(&self.frame_inv)
        };
        let simple_coroots = (0..n.saturating_sub(1)).map(|a| conj(a, a).sub(&conj(a + 1, a + 1))).collect();
        let mut root_pairs = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                root_pairs.push((conj(a, b), conj(b, a)));
            }
        }
        ChevalleyBasis { simple_coroots, root_pairs }
    }
}
