//! Highest weight vectors in `S(p_C(x;2))` for `u(l_k)`, and generators of the
//! invariant ring.
//!
//! A variable is a `t_C`-weight vector `Y ∈ p_C(x;2)`, read as the function
//! `Z ↦ tr(Y·Z)` on `p_C(x;−2)`. `k_C(x;0)` acts on variables by `ad`, and on
//! polynomials by derivations.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::liealg::AlgebraRealization;
use crate::linalg::{self, IndependenceTracker, Matrix, Vector};
use crate::orbits::{generic_levi_orbit_dimension, is_small, Orbit};
use crate::roots::{RootDatum, WeightConvention, WeightVector};
use crate::scalar::ExactScalar;

/// Exponent vector of a monomial in the variables.
pub type Exponents = Vec<u32>;

/// A homogeneous polynomial in the variables with a single `t_C`-weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedPolynomial {
    pub degree: usize,
    pub weight: WeightVector,
    pub terms: BTreeMap<Exponents, ExactScalar>,
}

impl WeightedPolynomial {
    pub fn is_zero(&self) -> bool {
        self.terms.values().all(Zero::is_zero)
    }

    /// Term with the lexicographically largest exponent vector.
    pub fn leading(&self) -> Option<(&Exponents, &ExactScalar)> {
        self.terms.iter().rev().find(|(_, c)| !c.is_zero())
    }

    /// Scales so the leading coefficient is 1.
    pub fn normalize(&mut self) {
        if let Some((_, c)) = self.leading() {
            let inv = c.inv();
            for v in self.terms.values_mut() {
                *v = &*v * &inv;
            }
        }
    }

    pub fn coefficient(&self, exps: &[u32]) -> ExactScalar {
        self.terms.get(exps).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn mul(&self, other: &WeightedPolynomial) -> WeightedPolynomial {
        let mut terms: BTreeMap<Exponents, ExactScalar> = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let m: Exponents = a.iter().zip(b).map(|(x, y)| x + y).collect();
                *terms.entry(m).or_insert_with(ExactScalar::zero) += &(ca * cb);
            }
        }
        terms.retain(|_, c| !c.is_zero());
        WeightedPolynomial { degree: self.degree + other.degree, weight: self.weight.add(&other.weight), terms }
    }

    pub fn evaluate(&self, point: &[ExactScalar]) -> ExactScalar {
        self.terms.iter().map(|(m, c)| c * &monomial_value(m, point)).sum()
    }

    /// `∂/∂y_a`.
    pub fn partial(&self, a: usize) -> BTreeMap<Exponents, ExactScalar> {
        let mut out = BTreeMap::new();
        for (m, c) in &self.terms {
            if m[a] > 0 {
                let mut m2 = m.clone();
                m2[a] -= 1;
                *out.entry(m2).or_insert_with(ExactScalar::zero) += &(c * &ExactScalar::from_int(m[a] as i64));
            }
        }
        out
    }
}

fn monomial_value(m: &[u32], point: &[ExactScalar]) -> ExactScalar {
    let mut v = ExactScalar::one();
    for (e, x) in m.iter().zip(point) {
        for _ in 0..*e {
            v = &v * x;
        }
    }
    v
}

fn exponent_key(m: &[u32]) -> String {
    m.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

fn parse_exponent_key(s: &str) -> std::result::Result<Exponents, String> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|t| t.trim().parse::<u32>().map_err(|e| format!("bad exponent {t:?}: {e}"))).collect()
}

#[derive(Serialize, Deserialize)]
struct PolyWire {
    degree: usize,
    weight: WeightVector,
    poly: BTreeMap<String, ExactScalar>,
}

impl Serialize for WeightedPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyWire {
            degree: self.degree,
            weight: self.weight.clone(),
            poly: self.terms.iter().map(|(m, c)| (exponent_key(m), c.clone())).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightedPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = PolyWire::deserialize(d)?;
        let mut terms = BTreeMap::new();
        for (k, c) in w.poly {
            terms.insert(parse_exponent_key(&k).map_err(serde::de::Error::custom)?, c);
        }
        Ok(WeightedPolynomial { degree: w.degree, weight: w.weight, terms })
    }
}

/// A variable: a weight vector of `p_C(x;2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Variable {
    pub weight: WeightVector,
    /// The matrix `Y`, scaled so its first nonzero entry (row-major) is 1.
    pub matrix: Vec<Vec<ExactScalar>>,
}

/// One monomial of a symmetric power with its weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedMonomial {
    pub exponents: Exponents,
    pub weight: WeightVector,
}

/// All exponent vectors of total degree `n` in `m` variables, in decreasing
/// lexicographic order.
pub fn exponent_vectors(m: usize, n: usize) -> Vec<Exponents> {
    fn rec(m: usize, n: u32, prefix: &mut Exponents, out: &mut Vec<Exponents>) {
        if prefix.len() + 1 == m {
            prefix.push(n);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for a in (0..=n).rev() {
            prefix.push(a);
            rec(m, n - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if m == 0 {
        if n == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(m, n as u32, &mut Vec::new(), &mut out);
    out
}

/// Degree-`n` monomials in variables of the given weights, each with its weight.
pub fn symmetric_power_basis(weights: &[WeightVector], weight_len: usize, n: usize) -> Vec<WeightedMonomial> {
    exponent_vectors(weights.len(), n)
        .into_iter()
        .map(|exponents| {
            let weight = exponents
                .iter()
                .zip(weights)
                .fold(WeightVector::zero(weight_len), |acc, (&e, w)| acc.add(&w.scale(e as i64)));
            WeightedMonomial { exponents, weight }
        })
        .collect()
}

/// Linear action of a `k_C(x;0)` element on the variables: column `a` holds the
/// coordinates of `[X, Y_a]` in the variable basis.
#[derive(Clone, Debug)]
struct VariableAction {
    columns: Vec<Vec<(usize, ExactScalar)>>,
}

/// `S(p_C(x;2))` with the `t_C` and `u(l_k)` actions.
#[derive(Clone, Debug)]
pub struct InvariantSpace {
    convention: WeightConvention,
    variables: Vec<Variable>,
    weights: Vec<WeightVector>,
    cartan_values: Vec<Vec<i64>>,
    rank: usize,
    simple: Vec<VariableAction>,
    positive: Vec<VariableAction>,
}

fn first_entry_normalized(m: &Matrix) -> ExactScalar {
    m.entries().map(|(_, x)| x).find(|x| !x.is_zero()).cloned().unwrap_or_else(ExactScalar::one)
}

impl InvariantSpace {
    /// Requires a small orbit, so that `Ṽ = p_C(x;2)`.
    pub fn new(g: &AlgebraRealization, orbit: &Orbit) -> Result<Self> {
        if !is_small(&orbit.grading) {
            return Err(Error::Precondition("invariants need a small orbit".into()));
        }
        let rd = &orbit.root_datum;
        let d = g.dim();
        let mut coords: Vec<Vector> = Vec::new();
        let mut variables = Vec::new();
        let mut weights = Vec::new();
        let mut cartan_values = Vec::new();
        for ws in rd.p_weight_spaces().iter().filter(|w| w.x_value == 2) {
            for v in &ws.basis {
                let m = g.to_matrix(v);
                let inv = first_entry_normalized(&m).inv();
                coords.push(linalg::scale_vector(&inv, v));
                variables.push(Variable { weight: ws.weight.clone(), matrix: m.scale(&inv).rows_vec() });
                weights.push(ws.weight.clone());
                cartan_values.push(ws.cartan_values.clone());
            }
        }
        if coords.len() != orbit.grading.p(2).len() {
            return Err(Error::Consistency("weight vectors do not span p_C(x;2)".into()));
        }
        let var_matrix = Matrix::from_columns(d, &coords);
        let action = |r: &crate::roots::Root| -> Result<VariableAction> {
            let columns = coords
                .iter()
                .map(|y| {
                    let img = g.bracket(&r.vector, y);
                    let c = var_matrix
                        .solve(&img)
                        .ok_or_else(|| Error::Consistency("k_C(x;0) does not preserve p_C(x;2)".into()))?;
                    Ok(c.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect())
                })
                .collect::<Result<_>>()?;
            Ok(VariableAction { columns })
        };
        let simple = rd.levi_simple_roots().into_iter().map(action).collect::<Result<_>>()?;
        let positive = rd.levi_positive_roots().into_iter().map(action).collect::<Result<_>>()?;
        Ok(InvariantSpace {
            convention: rd.convention(),
            variables,
            weights,
            cartan_values,
            rank: rd.rank(),
            simple,
            positive,
        })
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn num_variables(&self) -> usize {
        self.variables.len()
    }

    pub fn convention(&self) -> WeightConvention {
        self.convention
    }

    pub fn symmetric_power_basis(&self, n: usize) -> Vec<WeightedMonomial> {
        symmetric_power_basis(&self.weights, self.convention.len(), n)
    }

    fn monomial_weight(&self, m: &[u32]) -> WeightVector {
        m.iter()
            .zip(&self.weights)
            .fold(WeightVector::zero(self.convention.len()), |acc, (&e, w)| acc.add(&w.scale(e as i64)))
    }

    fn derive(action: &VariableAction, terms: &BTreeMap<Exponents, ExactScalar>) -> BTreeMap<Exponents, ExactScalar> {
        let mut out: BTreeMap<Exponents, ExactScalar> = BTreeMap::new();
        for (m, c) in terms {
            for (a, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let base = c * &ExactScalar::from_int(e as i64);
                for (b, x) in &action.columns[a] {
                    let mut m2 = m.clone();
                    m2[a] -= 1;
                    m2[*b] += 1;
                    *out.entry(m2).or_insert_with(ExactScalar::zero) += &(&base * x);
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Whether `f` is killed by every root vector of `u(l_k)`, not only the simple ones.
    pub fn is_highest_weight_vector(&self, f: &WeightedPolynomial) -> bool {
        self.positive.iter().all(|a| Self::derive(a, &f.terms).is_empty())
    }

    /// Whether each Cartan basis element acts on `f` by the scalar given by its weight.
    pub fn weight_is_consistent(&self, f: &WeightedPolynomial, cartan_values: &[i64]) -> bool {
        f.terms.keys().all(|m| {
            let mut acc = vec![0i64; cartan_values.len()];
            for (e, cv) in m.iter().zip(&self.cartan_values) {
                for (a, c) in acc.iter_mut().zip(cv) {
                    *a += *e as i64 * c;
                }
            }
            acc == cartan_values
        })
    }

    /// Eigenvalues of the Cartan basis on monomials of weight `w`, if any exist.
    pub fn cartan_values_of(&self, f: &WeightedPolynomial) -> Option<Vec<i64>> {
        let m = f.terms.keys().next()?;
        let mut acc = vec![0i64; self.rank];
        for (e, cv) in m.iter().zip(&self.cartan_values) {
            for (a, c) in acc.iter_mut().zip(cv) {
                *a += *e as i64 * c;
            }
        }
        Some(acc)
    }

    /// Highest weight vectors of degree `n`, grouped by weight (raw weight coordinates).
    pub fn kernel_by_weight(&self, n: usize) -> BTreeMap<WeightVector, Vec<WeightedPolynomial>> {
        let basis = self.symmetric_power_basis(n);
        let mut blocks: BTreeMap<WeightVector, Vec<Exponents>> = BTreeMap::new();
        for m in basis {
            blocks.entry(m.weight).or_default().push(m.exponents);
        }
        let mut out = BTreeMap::new();
        for (weight, monomials) in blocks {
            let mut rows: Vec<Vector> = Vec::new();
            for action in &self.simple {
                let mut target: BTreeMap<Exponents, Vector> = BTreeMap::new();
                for (col, m) in monomials.iter().enumerate() {
                    let single: BTreeMap<Exponents, ExactScalar> = [(m.clone(), ExactScalar::one())].into();
                    for (m2, c) in Self::derive(action, &single) {
                        target.entry(m2).or_insert_with(|| linalg::zero_vector(monomials.len()))[col] = c;
                    }
                }
                rows.extend(target.into_values());
            }
            let kernel = if rows.is_empty() {
                (0..monomials.len()).map(|i| linalg::unit_vector(monomials.len(), i)).collect()
            } else {
                linalg::nullspace_of_rows(rows, monomials.len())
            };
            let polys: Vec<WeightedPolynomial> = kernel
                .into_iter()
                .map(|v| {
                    let terms =
                        monomials.iter().zip(v).filter(|(_, c)| !c.is_zero()).map(|(m, c)| (m.clone(), c)).collect();
                    let mut p = WeightedPolynomial { degree: n, weight: weight.clone(), terms };
                    p.normalize();
                    p
                })
                .collect();
            if !polys.is_empty() {
                out.insert(weight, polys);
            }
        }
        out
    }

    /// Basis of the degree-`n` highest weight vectors, by decreasing weight.
    pub fn nilradical_kernel(&self, n: usize) -> Vec<WeightedPolynomial> {
        self.kernel_by_weight(n).into_values().rev().flatten().collect()
    }

    /// The variable polynomial `y_a`.
    pub fn variable(&self, a: usize) -> WeightedPolynomial {
        let mut m = vec![0; self.num_variables()];
        m[a] = 1;
        WeightedPolynomial { degree: 1, weight: self.weights[a].clone(), terms: [(m, ExactScalar::one())].into() }
    }

    /// Generic `u(l_k)` orbit dimension subtracted from `dim Ṽ`.
    pub fn expected_rank(g: &AlgebraRealization, orbit: &Orbit, seed: u64) -> usize {
        orbit.grading.v_tilde().len() - generic_levi_orbit_dimension(g, &orbit.grading, &orbit.root_datum, 8, seed)
    }

    /// Extracts generators degree by degree and checks the polynomial-algebra
    /// property through `max_degree`.
    pub fn extract_generators(&self, expected_rank: usize, max_degree: usize, seed: u64) -> Result<GeneratorSet> {
        if max_degree == 0 {
            return Err(Error::Precondition("max_degree must be at least 1".into()));
        }
        let mut generators: Vec<WeightedPolynomial> = Vec::new();
        let mut kernel_dims: Vec<BTreeMap<WeightVector, usize>> = vec![BTreeMap::new()];
        kernel_dims[0].insert(WeightVector::zero(self.convention.len()), 1);
        let one = WeightedPolynomial {
            degree: 0,
            weight: WeightVector::zero(self.convention.len()),
            terms: [(vec![0; self.num_variables()], ExactScalar::one())].into(),
        };
        // generator exponent vectors (trailing zeros trimmed) → product polynomial
        let mut memo: BTreeMap<Vec<u32>, WeightedPolynomial> = [(Vec::new(), one)].into();

        for n in 1..=max_degree {
            let mut layer: Vec<WeightedPolynomial> = Vec::new();
            for key in generator_exponents(&generators, n) {
                layer.push(product(&key, &generators, &mut memo));
            }
            let kernel = self.kernel_by_weight(n);
            for p in &layer {
                if !kernel.contains_key(&p.weight) {
                    return Err(Error::Consistency("a product of generators is not a highest weight vector".into()));
                }
            }
            let mut dims = BTreeMap::new();
            let mut new_gens = Vec::new();
            for (weight, basis) in &kernel {
                dims.insert(weight.clone(), basis.len());
                let monomials = self.monomials_of_weight(n, weight);
                let to_vec =
                    |p: &WeightedPolynomial| -> Vector { monomials.iter().map(|m| p.coefficient(m)).collect() };
                let mut tracker = IndependenceTracker::new(monomials.len());
                for p in layer.iter().filter(|p| &p.weight == weight) {
                    if !tracker.insert(&to_vec(p)) {
                        return Err(Error::Consistency(format!(
                            "products of generators are dependent in degree {n}, weight {weight}"
                        )));
                    }
                }
                for b in basis {
                    if tracker.insert(&to_vec(b)) {
                        new_gens.push(b.clone());
                    }
                }
            }
            kernel_dims.push(dims);
            generators.extend(new_gens);
        }

        if generators.len() < expected_rank {
            return Err(Error::IncreaseDegreeBound { found: generators.len(), expected: expected_rank, max_degree });
        }
        if generators.len() > expected_rank {
            return Err(Error::Consistency(format!(
                "found {} generators but the invariant ring has transcendence degree {expected_rank}",
                generators.len()
            )));
        }
        let gs = GeneratorSet {
            convention_len: self.convention.len(),
            variables: self.variables.clone(),
            generators,
            kernel_dimensions: kernel_dims,
        };
        if !gs.monomial_counts_match() {
            return Err(Error::Consistency("kernel dimensions differ from generator monomial counts".into()));
        }
        if !self.algebraically_independent(&gs.generators, seed) {
            return Err(Error::Consistency("generators are algebraically dependent".into()));
        }
        Ok(gs)
    }

    fn monomials_of_weight(&self, n: usize, weight: &WeightVector) -> Vec<Exponents> {
        exponent_vectors(self.num_variables(), n).into_iter().filter(|m| &self.monomial_weight(m) == weight).collect()
    }

    /// Jacobian rank at a random integer point, retried at three fresh points.
    pub fn algebraically_independent(&self, gens: &[WeightedPolynomial], seed: u64) -> bool {
        let r = gens.len();
        if r == 0 {
            return true;
        }
        let m = self.num_variables();
        let partials: Vec<Vec<BTreeMap<Exponents, ExactScalar>>> =
            gens.iter().map(|f| (0..m).map(|a| f.partial(a)).collect()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(0x1a_c0b1));
        for _ in 0..4 {
            let point: Vec<ExactScalar> = (0..m).map(|_| ExactScalar::from_int(rng.gen_range(-9..=9))).collect();
            let rows: Vec<Vector> = partials
                .iter()
                .map(|ps| ps.iter().map(|p| p.iter().map(|(mm, c)| c * &monomial_value(mm, &point)).sum()).collect())
                .collect();
            if linalg::span_rank(&rows, m) == r {
                return true;
            }
        }
        false
    }
}

/// Generators of `S(p_C(x;2))^{u(l_k)}` with their degrees and highest weights.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSet {
    #[serde(skip)]
    convention_len: usize,
    pub variables: Vec<Variable>,
    pub generators: Vec<WeightedPolynomial>,
    /// `kernel_dimensions[n][λ]`: dimension of the degree-`n`, weight-`λ` slice.
    #[serde(skip)]
    pub kernel_dimensions: Vec<BTreeMap<WeightVector, usize>>,
}

impl GeneratorSet {
    pub fn empty(weight_len: usize) -> Self {
        GeneratorSet {
            convention_len: weight_len,
            variables: Vec::new(),
            generators: Vec::new(),
            kernel_dimensions: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.generators.iter().map(|g| g.degree).collect()
    }

    pub fn weights(&self) -> Vec<WeightVector> {
        self.generators.iter().map(|g| g.weight.clone()).collect()
    }

    /// Number of monomials `Π f_i^{a_i}` of total degree `n` and weight `λ`.
    pub fn monomial_count(&self, n: usize, weight: &WeightVector) -> usize {
        fn rec(gens: &[WeightedPolynomial], i: usize, n: usize, w: WeightVector, target: &WeightVector) -> usize {
            if i == gens.len() {
                return usize::from(n == 0 && &w == target);
            }
            let mut total = 0;
            let mut k = 0;
            let mut w = w;
            loop {
                if gens[i].degree * k > n {
                    break;
                }
                total += rec(gens, i + 1, n - gens[i].degree * k, w.clone(), target);
                if gens[i].degree == 0 {
                    break;
                }
                w = w.add(&gens[i].weight);
                k += 1;
            }
            total
        }
        rec(&self.generators, 0, n, WeightVector::zero(self.convention_len.max(weight.len())), weight)
    }

    /// Every recorded kernel slice has the dimension predicted by the generators,
    /// and no generator monomial lands outside the recorded slices.
    pub fn monomial_counts_match(&self) -> bool {
        self.kernel_dimensions.iter().enumerate().all(|(n, dims)| {
            let predicted = self.predicted_dimensions(n);
            &predicted == dims
        })
    }

    /// Weight slices of the degree-`n` monomials in the generators.
    pub fn predicted_dimensions(&self, n: usize) -> BTreeMap<WeightVector, usize> {
        let mut out = BTreeMap::new();
        fn rec(gs: &GeneratorSet, i: usize, n: usize, w: WeightVector, out: &mut BTreeMap<WeightVector, usize>) {
            if i == gs.generators.len() {
                if n == 0 {
                    *out.entry(w).or_insert(0) += 1;
                }
                return;
            }
            let g = &gs.generators[i];
            let mut w = w;
            let mut used = 0;
            loop {
                rec(gs, i + 1, n - used, w.clone(), out);
                used += g.degree;
                if g.degree == 0 || used > n {
                    break;
                }
                w = w.add(&g.weight);
            }
        }
        rec(self, 0, n, WeightVector::zero(self.convention_len), &mut out);
        out
    }
}

/// Exponent vectors `a` with `Σ a_i·deg(f_i) = n`, trailing zeros trimmed.
fn generator_exponents(gens: &[WeightedPolynomial], n: usize) -> Vec<Vec<u32>> {
    fn rec(gens: &[WeightedPolynomial], i: usize, n: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == gens.len() {
            if n == 0 {
                let mut k = prefix.clone();
                while k.last() == Some(&0) {
                    k.pop();
                }
                out.push(k);
            }
            return;
        }
        let d = gens[i].degree;
        let mut a = 0;
        while a * d <= n {
            prefix.push(a as u32);
            rec(gens, i + 1, n - a * d, prefix, out);
            prefix.pop();
            if d == 0 {
                break;
            }
            a += 1;
        }
    }
    let mut out = Vec::new();
    rec(gens, 0, n, &mut Vec::new(), &mut out);
    out
}

fn product(
    key: &[u32],
    gens: &[WeightedPolynomial],
    memo: &mut BTreeMap<Vec<u32>, WeightedPolynomial>,
) -> WeightedPolynomial {
    if let Some(p) = memo.get(key) {
        return p.clone();
    }
    let i = key.len() - 1;
    let mut prev = key.to_vec();
    prev[i] -= 1;
    while prev.last() == Some(&0) {
        prev.pop();
    }
    let p = product(&prev, gens, memo).mul(&gens[i]);
    memo.insert(key.to_vec(), p.clone());
    p
}

/// Highest weights `μ_i` of the generators and their duals `−w₀μ_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaWeights {
    pub self_dual: bool,
    /// Generator weights `γ_i` used for the K-type lattice.
    pub gamma: Vec<WeightVector>,
    /// `μ_i`, normalized.
    pub mu: Vec<WeightVector>,
    /// `−w₀μ_i`; equal to `mu` as a set when self-dual.
    pub dual_mu: Vec<WeightVector>,
}

/// Generator weights of `R[O̅]^{n_k}`.
///
/// Self-dual orbits use `γ_i = μ_i`. Otherwise both `{μ_i}` and `{−w₀μ_i}` are
/// returned; the lattice still uses `μ_i`.
pub fn resolve_gamma_weights(gs: &GeneratorSet, rd: &RootDatum, self_dual: bool) -> GammaWeights {
    let conv = rd.convention();
    let mu: Vec<WeightVector> = gs.weights().iter().map(|w| conv.normalize(w)).collect();
    let dual_mu = mu.iter().map(|w| rd.dual_weight(w)).collect();
    GammaWeights { self_dual, gamma: mu.clone(), mu, dual_mu }
}

/// Distinct weights in a list, sorted.
pub fn weight_set(ws: &[WeightVector]) -> BTreeSet<WeightVector> {
    ws.iter().cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{build_real_form, RealFormDescriptor};
    use crate::orbits::{OrbitDescriptor, PartitionLabel};

    fn speh() -> (AlgebraRealization, Orbit) {
        let g = build_real_form(RealFormDescriptor::SlR { n: 4 }).unwrap();
        let d = OrbitDescriptor::Partition { partition: vec![2, 2], label: Some(PartitionLabel::I) };
        let o = Orbit::build(&g, &d).unwrap();
        (g, o)
    }

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn exponent_vector_counts() {
        assert_eq!(exponent_vectors(3, 0), vec![vec![0, 0, 0]]);
        assert_eq!(exponent_vectors(0, 0), vec![Vec::<u32>::new()]);
        assert!(exponent_vectors(0, 2).is_empty());
        for m in 1..5 {
            for n in 0..5 {
                assert_eq!(exponent_vectors(m, n).len(), binomial(m + n - 1, n));
            }
        }
        assert_eq!(exponent_vectors(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn speh_variables_are_the_example_matrices() {
        let (g, o) = speh();
        let s = InvariantSpace::new(&g, &o).unwrap();
        let weights: Vec<Vec<i64>> = s.variables().iter().map(|v| v.weight.0.clone()).collect();
        assert_eq!(weights, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        let i = ExactScalar::i();
        let z = ExactScalar::zero();
        let one = ExactScalar::one();
        let m1 = -one.clone();
        let mi = -i.clone();
        let y3 = vec![
            vec![z.clone(), z.clone(), one.clone(), mi.clone()],
            vec![z.clone(), z.clone(), mi.clone(), m1.clone()],
            vec![one.clone(), mi.clone(), z.clone(), z.clone()],
            vec![mi.clone(), m1.clone(), z.clone(), z.clone()],
        ];
        assert_eq!(s.variables()[1].matrix, y3);
        assert_eq!(s.variables()[0].matrix[0][..2], [one.clone(), mi.clone()]);
    }

    #[test]
    fn speh_symmetric_powers() {
        let (g, o) = speh();
        let s = InvariantSpace::new(&g, &o).unwrap();
        let b0 = s.symmetric_power_basis(0);
        assert_eq!(b0.len(), 1);
        assert!(b0[0].weight.is_zero());
        assert_eq!(s.symmetric_power_basis(1).len(), 3);
        assert_eq!(s.symmetric_power_basis(2).len(), binomial(4, 2));
    }

    #[test]
    fn speh_kernel() {
        let (g, o) = speh();
        let s = InvariantSpace::new(&g, &o).unwrap();
        let k0 = s.nilradical_kernel(0);
        assert_eq!(k0.len(), 1);
        let k1 = s.nilradical_kernel(1);
        assert_eq!(k1.len(), 1);
        assert_eq!(k1[0].weight, WeightVector(vec![2, 0]));
        assert_eq!(k1[0], s.variable(0));
        let k2 = s.nilradical_kernel(2);
        let f = k2.iter().find(|p| p.weight == WeightVector(vec![2, 2])).unwrap();
        // y1·y2 − ¼·y3², variables ordered (Y1, Y3, Y2)
        let expected = WeightedPolynomial {
            degree: 2,
            weight: WeightVector(vec![2, 2]),
            terms: [(vec![1, 0, 1], ExactScalar::one()), (vec![0, 2, 0], ExactScalar::from_ratio(-1, 4))].into(),
        };
        assert_eq!(f, &expected);
        for p in k2.iter().chain(&k1) {
            assert!(s.is_highest_weight_vector(p));
        }
    }

    #[test]
    fn speh_generators() {
        let (g, o) = speh();
        let s = InvariantSpace::new(&g, &o).unwrap();
        let rank = InvariantSpace::expected_rank(&g, &o, 0);
        assert_eq!(rank, 2);
        let gs = s.extract_generators(rank, 4, 0).unwrap();
        assert_eq!(gs.degrees(), vec![1, 2]);
        assert_eq!(gs.weights(), vec![WeightVector(vec![2, 0]), WeightVector(vec![2, 2])]);
        assert!(gs.monomial_counts_match());
        let err = s.extract_generators(rank, 1, 0).unwrap_err();
        assert!(matches!(err, Error::IncreaseDegreeBound { found: 1, expected: 2, max_degree: 1 }));
    }

    #[test]
    fn polynomial_wire_format() {
        let p = WeightedPolynomial {
            degree: 2,
            weight: WeightVector(vec![2, 2]),
            terms: [(vec![1, 0, 1], ExactScalar::one()), (vec![0, 2, 0], ExactScalar::from_ratio(-1, 4))].into(),
        };
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(
            s,
            r#"{"degree":2,"weight":[2,2],"poly":{"0,2,0":{"re":"-1/4","im":"0"},"1,0,1":{"re":"1","im":"0"}}}"#
        );
        let back: WeightedPolynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn dependent_generators_detected() {
        let (g, o) = speh();
        let s = InvariantSpace::new(&g, &o).unwrap();
        let y1 = s.variable(0);
        assert!(s.algebraically_independent(std::slice::from_ref(&y1), 0));
        assert!(!s.algebraically_independent(&[y1.clone(), y1.mul(&y1)], 0));
    }
}
