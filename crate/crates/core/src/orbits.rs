//! Nilpotent `K_C`-orbits in `p_C`: representatives, normal triples, the
//! `ad(x)`-grading, and the smallness / sphericality tests.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::liealg::{AlgebraRealization, RealFormDescriptor};
use crate::linalg::{self, Matrix, Vector};
use crate::roots::{build_root_datum, RootDatum};
use crate::scalar::ExactScalar;

/// The two `SO(n,ℂ)`-orbits sharing an all-even partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PartitionLabel {
    I,
    II,
}

/// Names a nilpotent orbit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum OrbitDescriptor {
    /// Partition of `n`, for `sl(n,ℝ)`.
    Partition {
        partition: Vec<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<PartitionLabel>,
    },
    /// Signed Young tableau rows such as `"+-+,+-+,+-+"`, for `su(p,q)`.
    Signed { signed: String },
    /// An explicit element of `p_C`.
    Matrix { matrix: Vec<Vec<ExactScalar>> },
}

impl fmt::Display for OrbitDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitDescriptor::Partition { partition, label } => {
                let parts: Vec<String> = partition.iter().map(usize::to_string).collect();
                write!(f, "[{}]", parts.join(","))?;
                if let Some(l) = label {
                    write!(f, " {l:?}")?;
                }
                Ok(())
            }
            OrbitDescriptor::Signed { signed } => write!(f, "{signed}"),
            OrbitDescriptor::Matrix { matrix } => write!(f, "{}x{} matrix", matrix.len(), matrix.len()),
        }
    }
}

/// Parses signed tableau rows. Rows are separated by commas or whitespace and
/// must alternate in sign; `-` and `−` are both accepted.
pub fn parse_signed_rows(s: &str) -> Result<Vec<Vec<bool>>> {
    let rows: Vec<Vec<bool>> = s
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|r| !r.is_empty())
        .map(|r| {
            r.chars()
                .map(|c| match c {
                    '+' => Ok(true),
                    '-' | '\u{2212}' => Ok(false),
                    other => Err(Error::Descriptor(format!("unexpected character {other:?} in signed tableau"))),
                })
                .collect::<Result<Vec<bool>>>()
        })
        .collect::<Result<_>>()?;
    if rows.is_empty() {
        return Err(Error::Descriptor("empty signed tableau".into()));
    }
    for r in &rows {
        if r.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Descriptor(format!("signs must alternate along each row, got {s:?}")));
        }
    }
    Ok(rows)
}

fn scalar(n: i64) -> ExactScalar {
    ExactScalar::from_int(n)
}

fn outer(u: &[ExactScalar], v: &[ExactScalar]) -> Matrix {
    let n = u.len();
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        if u[i].is_zero() {
            continue;
        }
        for j in 0..n {
            if !v[j].is_zero() {
                m[(i, j)] = &u[i] * &v[j];
            }
        }
    }
    m
}

/// Symmetric nilpotent for a partition of `n`, with `x` in the standard Cartan.
///
/// A part `k` is an `sl₂`-module with weight vectors `w_j` (`j = k−1, k−3, …`),
/// `e·w_j = w_{j+2}` and the invariant form `⟨w_j, w_{−j}⟩ = 1`. Each pair
/// `w_{±j}` goes to one standard plane through `u₁ = w_j + w_{−j}/2`,
/// `u₂ = i·w_j − (i/2)·w_{−j}`; zero-weight vectors go to standard axes.
fn sl_partition_representative(n: usize, parts: &[usize], label: Option<PartitionLabel>) -> Result<Matrix> {
    if parts.contains(&0) || parts.iter().sum::<usize>() != n {
        return Err(Error::Descriptor(format!("{parts:?} is not a partition of {n}")));
    }
    let all_even = parts.iter().all(|k| k % 2 == 0);
    if label.is_some() && !all_even {
        return Err(Error::Descriptor("labels I/II apply only to partitions with all parts even".into()));
    }
    let mut parts = parts.to_vec();
    parts.sort_unstable_by(|a, b| b.cmp(a));

    let half = ExactScalar::from_ratio(1, 2);
    let i = ExactScalar::i();
    let mut next_plane = 0usize;
    let mut axes: Vec<usize> = Vec::new();
    let odd_count = parts.iter().filter(|k| *k % 2 == 1).count();
    // zero-weight axes: paired into whole planes after the weight planes, plus the
    // last coordinate when n is odd
    let planes_for_pairs: usize = parts.iter().map(|k| k / 2).sum();
    for a in 0..odd_count / 2 {
        axes.push(2 * (planes_for_pairs + a));
        axes.push(2 * (planes_for_pairs + a) + 1);
    }
    if n % 2 == 1 {
        axes.push(n - 1);
    }
    let mut axes = axes.into_iter();

    let mut e = Matrix::zeros(n, n);
    for &k in &parts {
        // images of w_j for j = −(k−1), …, k−1
        let mut images: BTreeMap<i64, Vector> = BTreeMap::new();
        let top = k as i64 - 1;
        let mut j = top;
        while j > 0 {
            let (a, b) = (2 * next_plane, 2 * next_plane + 1);
            next_plane += 1;
            let mut wp = linalg::zero_vector(n);
            wp[a] = half.clone();
            wp[b] = -(&half * &i);
            let mut wm = linalg::zero_vector(n);
            wm[a] = ExactScalar::one();
            wm[b] = i.clone();
            images.insert(j, wp);
            images.insert(-j, wm);
            j -= 2;
        }
        if k % 2 == 1 {
            let axis = axes.next().expect("axis available for odd part");
            images.insert(0, linalg::unit_vector(n, axis));
        }
        let mut j = -top;
        while j < top {
            e = e.add(&outer(&images[&(j + 2)], &images[&(-j)]));
            j += 2;
        }
    }
    let mut e = e.scale(&scalar(4));
    if label == Some(PartitionLabel::II) {
        let mut d = Matrix::identity(n);
        d[(n - 1, n - 1)] = scalar(-1);
        e = d.mul(&e).mul(&d);
    }
    Ok(e)
}

/// Matrix-unit chains for signed tableau rows: along a row `v₁, …, v_k`,
/// `e·v_{l+1} = v_l`. `+` rows go to the first `p` coordinates, `−` to the rest.
fn su_signed_representative(p: usize, q: usize, rows: &[Vec<bool>]) -> Result<Matrix> {
    let plus = rows.iter().flatten().filter(|&&s| s).count();
    let minus = rows.iter().flatten().filter(|&&s| !s).count();
    if plus != p || minus != q {
        return Err(Error::Descriptor(format!(
            "signed tableau has {plus} '+' and {minus} '-' signs, su({p},{q}) needs {p} and {q}"
        )));
    }
    let n = p + q;
    let (mut next_plus, mut next_minus) = (0, p);
    let mut e = Matrix::zeros(n, n);
    for row in rows {
        let idx: Vec<usize> = row
            .iter()
            .map(|&s| {
                let slot = if s { &mut next_plus } else { &mut next_minus };
                *slot += 1;
                *slot - 1
            })
            .collect();
        for w in idx.windows(2) {
            e[(w[0], w[1])] = ExactScalar::one();
        }
    }
    Ok(e)
}

/// A representative `e ∈ p_C` (coordinates) of the orbit named by `d`.
pub fn representative(g: &AlgebraRealization, d: &OrbitDescriptor) -> Result<Vector> {
    let m = match (d, g.descriptor()) {
        (OrbitDescriptor::Partition { partition, label }, RealFormDescriptor::SlR { n }) => {
            sl_partition_representative(n, partition, *label)?
        }
        (OrbitDescriptor::Signed { signed }, RealFormDescriptor::Su { p, q }) => {
            su_signed_representative(p, q, &parse_signed_rows(signed)?)?
        }
        (OrbitDescriptor::Matrix { matrix }, _) => {
            let n = g.matrix_size();
            if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
                return Err(Error::Descriptor(format!("explicit e must be {n}x{n}")));
            }
            let m = Matrix::from_rows(matrix.clone());
            if !m.pow(n as u32).is_zero() {
                return Err(Error::Descriptor("explicit e is not nilpotent".into()));
            }
            m
        }
        (d, real) => {
            return Err(Error::Descriptor(format!("orbit descriptor {d} does not apply to {real}")));
        }
    };
    let v = g.coords(&m).map_err(|_| Error::Descriptor("e is not in the realization".into()))?;
    if !g.is_in_p(&v) {
        return Err(Error::Descriptor("e is not in p_C".into()));
    }
    Ok(v)
}

/// A normal triple `{x, e, f}`: `x ∈ k_C`, `e, f ∈ p_C`, `[x,e] = 2e`,
/// `[x,f] = −2f`, `[e,f] = x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalTriple {
    pub x: Vector,
    pub e: Vector,
    pub f: Vector,
}

impl NormalTriple {
    pub fn zero(dim: usize) -> Self {
        let z = linalg::zero_vector(dim);
        Self { x: z.clone(), e: z.clone(), f: z }
    }

    pub fn is_zero(&self) -> bool {
        linalg::is_zero_vector(&self.e)
    }

    /// Checks the bracket relations and the Cartan-decomposition conditions exactly.
    pub fn verify(&self, g: &AlgebraRealization) -> bool {
        let two = scalar(2);
        g.bracket(&self.x, &self.e) == linalg::scale_vector(&two, &self.e)
            && g.bracket(&self.x, &self.f) == linalg::scale_vector(&-two, &self.f)
            && g.bracket(&self.e, &self.f) == self.x
            && g.is_in_k(&self.x)
            && g.is_in_p(&self.e)
            && g.is_in_p(&self.f)
    }
}

/// Solves `A·y = b` where the columns of `A` are given; `None` if inconsistent.
fn solve_columns(rows: usize, cols: &[Vector], b: &[ExactScalar]) -> Option<Vector> {
    if cols.is_empty() {
        return linalg::is_zero_vector(b).then(Vec::new);
    }
    Matrix::from_columns(rows, cols).solve(b)
}

fn combine(coeffs: &[ExactScalar], vecs: &[Vector], dim: usize) -> Vector {
    let mut out = linalg::zero_vector(dim);
    for (c, v) in coeffs.iter().zip(vecs) {
        linalg::add_scaled(&mut out, c, v);
    }
    out
}

/// Completes a nilpotent `e ∈ p_C` to a normal triple.
///
/// `x` is sought in the standard Cartan first, so catalog orbits produce gradings
/// that the root datum accepts; otherwise any `x ∈ k_C ∩ [e, p_C]` is used.
pub fn complete_to_normal_triple(g: &AlgebraRealization, e: &[ExactScalar]) -> Result<NormalTriple> {
    let d = g.dim();
    if e.len() != d {
        return Err(Error::DimensionMismatch { expected: d, got: e.len() });
    }
    if !g.is_in_p(e) {
        return Err(Error::Descriptor("e is not in p_C".into()));
    }
    if linalg::is_zero_vector(e) {
        return Ok(NormalTriple::zero(d));
    }
    let p_basis = g.p_basis();
    let two_e = linalg::scale_vector(&scalar(2), e);

    // unknowns (f₀ ∈ p_C, c ∈ ℂ^rank): [e,f₀] − Σ c_j T_j = 0, Σ c_j [T_j, e] = 2e
    let mut cols: Vec<Vector> = p_basis.iter().map(|b| g.bracket(e, b)).collect();
    for t in g.cartan_basis() {
        let mut col = linalg::scale_vector(&scalar(-1), t);
        linalg::add_scaled(&mut col, &ExactScalar::one(), &g.bracket(t, e));
        cols.push(col);
    }
    let (x, f0) = match solve_columns(d, &cols, &two_e) {
        Some(sol) => {
            let dp = p_basis.len();
            let f0 = combine(&sol[..dp], &p_basis, d);
            (combine(&sol[dp..], g.cartan_basis(), d), f0)
        }
        None => {
            // [[e,f₀],e] = 2e with x = [e,f₀]
            let cols: Vec<Vector> = p_basis.iter().map(|b| g.bracket(&g.bracket(e, b), e)).collect();
            let sol = solve_columns(d, &cols, &two_e)
                .ok_or_else(|| Error::Descriptor("e is not nilpotent in p_C: no normal triple".into()))?;
            let f0 = combine(&sol, &p_basis, d);
            (g.bracket(e, &f0), f0)
        }
    };

    // f = f₀ − z with z ∈ p_C, [e,z] = 0 and (ad x + 2)z = [x,f₀] + 2f₀
    let two = scalar(2);
    let cols: Vec<Vector> = p_basis
        .iter()
        .map(|b| {
            let mut col = g.bracket(e, b);
            linalg::add_scaled(&mut col, &ExactScalar::one(), &g.bracket(&x, b));
            linalg::add_scaled(&mut col, &two, b);
            col
        })
        .collect();
    let mut rhs = g.bracket(&x, &f0);
    linalg::add_scaled(&mut rhs, &two, &f0);
    let z = solve_columns(d, &cols, &rhs)
        .ok_or_else(|| Error::Consistency("normal triple correction has no solution".into()))?;
    let mut f = f0;
    linalg::add_scaled(&mut f, &scalar(-1), &combine(&z, &p_basis, d));

    let triple = NormalTriple { x, e: e.to_vec(), f };
    if !triple.verify(g) {
        return Err(Error::Consistency("completed triple fails the bracket relations".into()));
    }
    Ok(triple)
}

/// `k_C(x;j)` and `p_C(x;j)` for one eigenvalue `j`.
#[derive(Clone, Debug, Default)]
pub struct GradePiece {
    pub k: Vec<Vector>,
    pub p: Vec<Vector>,
}

/// Dimensions of one graded piece.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradeDimensions {
    pub j: i64,
    pub g: usize,
    pub k: usize,
    pub p: usize,
}

/// The eigenspace decomposition of `ad(x)` on `g_C = k_C ⊕ p_C`.
#[derive(Clone, Debug)]
pub struct AdGrading {
    x: Vector,
    dim: usize,
    pieces: BTreeMap<i64, GradePiece>,
}

/// Splits `k_C` and `p_C` into `ad(x)`-eigenspaces.
pub fn grade(g: &AlgebraRealization, x: &[ExactScalar]) -> Result<AdGrading> {
    if !g.is_in_k(x) {
        return Err(Error::NotGradingElement("x is not in k_C".into()));
    }
    let ad = g.ad(x);
    let split = |space: Vec<Vector>| {
        linalg::integer_eigenspaces(&ad, &space)
            .ok_or_else(|| Error::NotGradingElement("ad(x) has a non-integer eigenvalue".into()))
    };
    let mut pieces: BTreeMap<i64, GradePiece> = BTreeMap::new();
    for (j, vecs) in split(g.k_basis())? {
        pieces.entry(j).or_default().k = vecs;
    }
    for (j, vecs) in split(g.p_basis())? {
        pieces.entry(j).or_default().p = vecs;
    }
    Ok(AdGrading { x: x.to_vec(), dim: g.dim(), pieces })
}

impl AdGrading {
    pub fn x(&self) -> &[ExactScalar] {
        &self.x
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Eigenvalues with a nonzero eigenspace, in increasing order.
    pub fn degrees(&self) -> Vec<i64> {
        self.pieces.keys().copied().collect()
    }

    pub fn k(&self, j: i64) -> &[Vector] {
        self.pieces.get(&j).map(|p| p.k.as_slice()).unwrap_or(&[])
    }

    pub fn p(&self, j: i64) -> &[Vector] {
        self.pieces.get(&j).map(|p| p.p.as_slice()).unwrap_or(&[])
    }

    /// `g_C(x;j) = k_C(x;j) ⊕ p_C(x;j)`.
    pub fn g(&self, j: i64) -> Vec<Vector> {
        let mut v = self.k(j).to_vec();
        v.extend(self.p(j).iter().cloned());
        v
    }

    fn collect(&self, pred: impl Fn(i64) -> bool, k: bool, p: bool) -> Vec<Vector> {
        let mut out = Vec::new();
        for (&j, piece) in &self.pieces {
            if pred(j) {
                if k {
                    out.extend(piece.k.iter().cloned());
                }
                if p {
                    out.extend(piece.p.iter().cloned());
                }
            }
        }
        out
    }

    /// `V = Σ_{j≥2} g_C(x;j)`.
    pub fn v(&self) -> Vec<Vector> {
        self.collect(|j| j >= 2, true, true)
    }

    /// `Ṽ = V ∩ p_C`.
    pub fn v_tilde(&self) -> Vec<Vector> {
        self.collect(|j| j >= 2, false, true)
    }

    /// `q_C = Σ_{j≥0} g_C(x;j)`.
    pub fn q(&self) -> Vec<Vector> {
        self.collect(|j| j >= 0, true, true)
    }

    pub fn q_k(&self) -> Vec<Vector> {
        self.collect(|j| j >= 0, true, false)
    }

    /// `u_C = Σ_{j>0} g_C(x;j)`.
    pub fn u(&self) -> Vec<Vector> {
        self.collect(|j| j > 0, true, true)
    }

    /// `l_C = g_C(x;0)`.
    pub fn l(&self) -> Vec<Vector> {
        self.g(0)
    }

    /// `u(l_k)`: root vectors of `n_k` inside `l_C`.
    pub fn levi_nilradical(&self, rd: &RootDatum) -> Vec<Vector> {
        rd.levi_positive_roots().iter().map(|r| r.vector.clone()).collect()
    }

    pub fn dimensions(&self) -> Vec<GradeDimensions> {
        self.pieces
            .iter()
            .map(|(&j, piece)| GradeDimensions {
                j,
                g: piece.k.len() + piece.p.len(),
                k: piece.k.len(),
                p: piece.p.len(),
            })
            .collect()
    }
}

/// Largest `j` with `g_C(x;j) ≠ 0`.
pub fn height(gr: &AdGrading) -> i64 {
    gr.pieces.iter().filter(|(_, p)| !p.k.is_empty() || !p.p.is_empty()).map(|(&j, _)| j).max().unwrap_or(0)
}

/// `p_C(x;i) = 0` for all `i > 2`.
pub fn is_small(gr: &AdGrading) -> bool {
    gr.pieces.iter().all(|(&j, p)| j <= 2 || p.p.is_empty())
}

/// Basis of `{z ∈ span(domain) : [z, w] = 0 for all w ∈ elements}`.
pub fn centralizer(g: &AlgebraRealization, domain: &[Vector], elements: &[&[ExactScalar]]) -> Vec<Vector> {
    let d = g.dim();
    if domain.is_empty() {
        return Vec::new();
    }
    let cols: Vec<Vector> = domain.iter().map(|b| elements.iter().flat_map(|w| g.bracket(b, w)).collect()).collect();
    let rows = d * elements.len();
    if rows == 0 {
        return domain.to_vec();
    }
    Matrix::from_columns(rows, &cols).nullspace().iter().map(|c| combine(c, domain, d)).collect()
}

/// `dim K_C·e`, as the rank of `z ↦ [z,e]` on `k_C`.
pub fn orbit_dimension(g: &AlgebraRealization, e: &[ExactScalar]) -> usize {
    g.ad_rank(e, &g.k_basis())
}

/// How a sphericality verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Certainty {
    /// Decided by an exact argument.
    #[serde(rename = "certified")]
    Certified,
    /// Decided by sampling random points of the orbit.
    #[serde(rename = "monte-carlo")]
    MonteCarlo,
}

/// Outcome of the sphericality test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sphericality {
    pub spherical: bool,
    pub certainty: Certainty,
    pub dim_orbit: usize,
    pub dim_borel: usize,
}

fn random_group_element(g: &AlgebraRealization, rd: &RootDatum, rng: &mut ChaCha8Rng) -> (Matrix, Matrix) {
    let n = g.matrix_size();
    let pos: Vec<Matrix> = rd.positive_roots().map(|r| g.to_matrix(&r.vector)).collect();
    let neg: Vec<Matrix> = rd.negative_roots().map(|r| g.to_matrix(&r.vector)).collect();
    let mut factors: Vec<(Matrix, i64)> = Vec::new();
    for layer in [&pos, &neg, &pos, &neg] {
        for xa in layer.iter() {
            factors.push((xa.clone(), rng.gen_range(-3..=3)));
        }
    }
    let mut h = Matrix::identity(n);
    let mut h_inv = Matrix::identity(n);
    for (xa, t) in &factors {
        if *t == 0 {
            continue;
        }
        let step = xa.scale(&scalar(*t)).exp_nilpotent().expect("root vectors are nilpotent");
        let back = xa.scale(&scalar(-*t)).exp_nilpotent().expect("root vectors are nilpotent");
        h = h.mul(&step);
        h_inv = back.mul(&h_inv);
    }
    (h, h_inv)
}

/// Whether a Borel subgroup of `K_C` has a dense orbit in `K_C·e`.
///
/// `dim B < dim O` certifies a negative answer. Otherwise the dimension of
/// `b·(h·e)` is maximized over `samples` random `h` in `K_C`.
pub fn is_spherical(
    g: &AlgebraRealization,
    rd: &RootDatum,
    e: &[ExactScalar],
    samples: usize,
    seed: u64,
) -> Sphericality {
    let dim_orbit = orbit_dimension(g, e);
    let dim_borel = rd.borel_dim();
    let verdict = |spherical, certainty| Sphericality { spherical, certainty, dim_orbit, dim_borel };
    if dim_orbit == 0 {
        return verdict(true, Certainty::Certified);
    }
    if dim_borel < dim_orbit {
        return verdict(false, Certainty::Certified);
    }
    let borel = rd.borel();
    let e_m = g.to_matrix(e);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = g.ad_rank(e, &borel);
    for _ in 0..samples {
        if best == dim_orbit {
            break;
        }
        let (h, h_inv) = random_group_element(g, rd, &mut rng);
        let moved = g.coords(&h.mul(&e_m).mul(&h_inv)).expect("K_C preserves p_C");
        best = best.max(g.ad_rank(&moved, &borel));
    }
    verdict(best == dim_orbit, Certainty::MonteCarlo)
}

/// `z ↦ [z,e]` maps `q_C ∩ k_C` onto `Ṽ`.
pub fn gy_condition_check(g: &AlgebraRealization, gr: &AdGrading, e: &[ExactScalar]) -> bool {
    let v = gr.v_tilde();
    let images = g.ad_images(e, &gr.q_k());
    let d = g.dim();
    let rank = linalg::span_rank(&images, d);
    if rank != v.len() {
        return false;
    }
    let mut all = v.clone();
    all.extend(images);
    linalg::span_rank(&all, d) == v.len()
}

/// For small orbits, `0 → k_C^{x,e,f} → k_C^x → p_C(x;2) → 0` is exact, with the
/// middle map `ad(e)`.
pub fn small_exact_sequence_check(g: &AlgebraRealization, gr: &AdGrading, t: &NormalTriple) -> Result<bool> {
    if !is_small(gr) {
        return Err(Error::Precondition("exact sequence check needs a small orbit".into()));
    }
    let kx = gr.k(0);
    let p2 = gr.p(2);
    let d = g.dim();
    let images = g.ad_images(&t.e, kx);
    let rank = linalg::span_rank(&images, d);
    let mut span = p2.to_vec();
    span.extend(images);
    let onto = rank == p2.len() && linalg::span_rank(&span, d) == p2.len();
    let kernel = centralizer(g, kx, &[&t.e]);
    let triple_centralizer = centralizer(g, &g.k_basis(), &[&t.x, &t.e, &t.f]);
    let kernel_in_centralizer = kernel.iter().all(|z| linalg::is_zero_vector(&g.bracket(z, &t.f)));
    Ok(onto
        && kernel.len() == triple_centralizer.len()
        && kernel_in_centralizer
        && kx.len() == triple_centralizer.len() + p2.len())
}

/// `[Ṽ, Ṽ] = 0`.
pub fn commutativity_check(g: &AlgebraRealization, gr: &AdGrading) -> bool {
    let v = gr.v_tilde();
    v.iter().enumerate().all(|(i, a)| v[i + 1..].iter().all(|b| linalg::is_zero_vector(&g.bracket(a, b))))
}

/// Largest dimension of a `u(l_k)`-orbit in `Ṽ`, over random points.
pub fn generic_levi_orbit_dimension(
    g: &AlgebraRealization,
    gr: &AdGrading,
    rd: &RootDatum,
    samples: usize,
    seed: u64,
) -> usize {
    let v = gr.v_tilde();
    let u = gr.levi_nilradical(rd);
    if v.is_empty() || u.is_empty() {
        return 0;
    }
    let d = g.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut best = 0;
    for _ in 0..samples.max(1) {
        let coeffs: Vec<ExactScalar> = (0..v.len()).map(|_| scalar(rng.gen_range(-7..=7))).collect();
        let point = combine(&coeffs, &v, d);
        best = best.max(linalg::span_rank(&g.ad_images(&point, &u), d));
    }
    best
}

/// Summary flags of an orbit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitFlags {
    pub height: i64,
    pub small: bool,
    pub spherical: bool,
    pub certainty: Certainty,
    pub dim_orbit: usize,
    pub dim_borel: usize,
    /// `dim Ṽ` minus the generic `u(l_k)`-orbit dimension in `Ṽ`.
    pub rank_r: usize,
}

/// An orbit with its triple, root datum and grading.
#[derive(Clone, Debug)]
pub struct Orbit {
    pub triple: NormalTriple,
    pub root_datum: RootDatum,
    pub grading: AdGrading,
}

impl Orbit {
    /// Representative, triple, root datum and grading, each stage named on error.
    pub fn build(g: &AlgebraRealization, d: &OrbitDescriptor) -> Result<Orbit> {
        let e = representative(g, d).map_err(|e| e.stage("representative"))?;
        Self::from_element(g, &e)
    }

    pub fn from_element(g: &AlgebraRealization, e: &[ExactScalar]) -> Result<Orbit> {
        let triple = complete_to_normal_triple(g, e).map_err(|e| e.stage("normal triple"))?;
        let root_datum = build_root_datum(g, &triple.x).map_err(|e| e.stage("root datum"))?;
        let grading = grade(g, &triple.x).map_err(|e| e.stage("grading"))?;
        Ok(Orbit { triple, root_datum, grading })
    }

    /// Height, smallness, sphericality, dimensions and rank.
    pub fn flags(&self, g: &AlgebraRealization, samples: usize, seed: u64) -> OrbitFlags {
        let s = is_spherical(g, &self.root_datum, &self.triple.e, samples, seed);
        let generic = generic_levi_orbit_dimension(g, &self.grading, &self.root_datum, samples, seed);
        OrbitFlags {
            height: height(&self.grading),
            small: is_small(&self.grading),
            spherical: s.spherical,
            certainty: s.certainty,
            dim_orbit: s.dim_orbit,
            dim_borel: s.dim_borel,
            rank_r: self.grading.v_tilde().len() - generic,
        }
    }
}
