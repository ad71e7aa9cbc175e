//! K-type lattices `Γ = {Σ mᵢγᵢ}`, multiplicities, self-duality, and the
//! asymptotic cone `ℝ⁺Γ` with an exact Fourier–Motzkin solver.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roots::{RootDatum, WeightVector};

type Q = BigRational;

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// One row `a·x ≤ b` (or `a·x = b`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Row {
    pub a: Vec<Q>,
    pub b: Q,
}

impl Row {
    pub fn new(a: Vec<Q>, b: Q) -> Self {
        Row { a, b }
    }

    fn is_trivial(&self) -> bool {
        self.a.iter().all(Zero::is_zero)
    }

    /// Scales by a positive rational so the entries become coprime integers.
    fn primitive(&self) -> Row {
        let mut l = BigInt::one();
        for x in self.a.iter().chain(std::iter::once(&self.b)) {
            l = l.lcm(x.denom());
        }
        let ints: Vec<BigInt> = self
            .a
            .iter()
            .chain(std::iter::once(&self.b))
            .map(|x| (x * Q::from_integer(l.clone())).to_integer())
            .collect();
        let mut gcd = BigInt::zero();
        for x in &ints {
            gcd = gcd.gcd(x);
        }
        if gcd.is_zero() {
            return self.clone();
        }
        let mut v: Vec<Q> = ints.into_iter().map(|x| Q::from_integer(x / &gcd)).collect();
        let b = v.pop().unwrap();
        Row { a: v, b }
    }
}

/// Affine bound `c + Σ coeffs_j x_j` on an eliminated variable.
#[derive(Clone, Debug)]
struct Affine {
    coeffs: Vec<Q>,
    c: Q,
}

impl Affine {
    fn eval(&self, x: &[Q]) -> Q {
        self.coeffs.iter().zip(x).fold(self.c.clone(), |acc, (a, v)| acc + a * v)
    }
}

#[derive(Clone, Debug)]
enum Step {
    Equality { var: usize, value: Affine },
    Fm { var: usize, lower: Vec<Affine>, upper: Vec<Affine> },
}

/// A system of linear inequalities and equalities over ℚ.
#[derive(Clone, Debug, Default)]
pub struct LinearSystem {
    pub nvars: usize,
    pub ineqs: Vec<Row>,
    pub eqs: Vec<Row>,
}

/// Result of eliminating a set of variables.
#[derive(Clone, Debug)]
pub struct Projection {
    /// Inequalities on the kept variables (zero coefficients elsewhere).
    pub ineqs: Vec<Row>,
    /// Equalities on the kept variables.
    pub eqs: Vec<Row>,
    /// `false` if a constant row `0 ≤ b` or `0 = b` was violated.
    pub consistent: bool,
    steps: Vec<Step>,
}

fn dedup(rows: Vec<Row>) -> Vec<Row> {
    let mut out: Vec<Row> = rows.into_iter().map(|r| r.primitive()).collect();
    out.sort();
    out.dedup();
    out
}

fn bound_from(row: &Row, var: usize) -> Affine {
    // a_k x_k ≤ b − Σ_{j≠k} a_j x_j, divided by a_k
    let ak = row.a[var].clone();
    let coeffs = row.a.iter().enumerate().map(|(j, a)| if j == var { Q::zero() } else { -(a / &ak) }).collect();
    Affine { coeffs, c: &row.b / &ak }
}

impl LinearSystem {
    pub fn new(nvars: usize) -> Self {
        LinearSystem { nvars, ineqs: Vec::new(), eqs: Vec::new() }
    }

    /// Eliminates every variable with `eliminate[j]`, equalities first.
    pub fn project(&self, eliminate: &[bool]) -> Projection {
        let mut ineqs = dedup(self.ineqs.clone());
        let mut eqs = dedup(self.eqs.clone());
        let mut steps = Vec::new();

        // equality pre-elimination
        loop {
            let pick = eqs
                .iter()
                .enumerate()
                .find_map(|(i, r)| (0..self.nvars).find(|&j| eliminate[j] && !r.a[j].is_zero()).map(|j| (i, j)));
            let Some((i, var)) = pick else { break };
            let row = eqs.remove(i);
            let value = bound_from(&row, var);
            let substitute = |r: &Row| -> Row {
                let f = r.a[var].clone();
                if f.is_zero() {
                    return r.clone();
                }
                let mut a: Vec<Q> = r.a.iter().zip(&value.coeffs).map(|(x, c)| x + &f * c).collect();
                a[var] = Q::zero();
                Row { a, b: &r.b - &f * &value.c }
            };
            ineqs = dedup(ineqs.iter().map(substitute).collect());
            eqs = dedup(eqs.iter().map(substitute).collect());
            steps.push(Step::Equality { var, value });
        }

        for var in 0..self.nvars {
            if !eliminate[var] {
                continue;
            }
            let (mut lower_rows, mut upper_rows, mut rest) = (Vec::new(), Vec::new(), Vec::new());
            for r in ineqs {
                if r.a[var].is_positive() {
                    upper_rows.push(r);
                } else if r.a[var].is_negative() {
                    lower_rows.push(r);
                } else {
                    rest.push(r);
                }
            }
            for lo in &lower_rows {
                for up in &upper_rows {
                    // combine so the coefficient of var cancels
                    let s = up.a[var].clone();
                    let t = -lo.a[var].clone();
                    let a = lo.a.iter().zip(&up.a).map(|(x, y)| x * &s + y * &t).collect();
                    let mut row = Row { a, b: &lo.b * &s + &up.b * &t };
                    row.a[var] = Q::zero();
                    rest.push(row);
                }
            }
            steps.push(Step::Fm {
                var,
                lower: lower_rows.iter().map(|r| bound_from(r, var)).collect(),
                upper: upper_rows.iter().map(|r| bound_from(r, var)).collect(),
            });
            ineqs = dedup(rest);
        }

        let mut consistent = true;
        ineqs.retain(|r| {
            if r.is_trivial() {
                consistent &= !r.b.is_negative();
                false
            } else {
                true
            }
        });
        eqs.retain(|r| {
            if r.is_trivial() {
                consistent &= r.b.is_zero();
                false
            } else {
                true
            }
        });
        Projection { ineqs, eqs, consistent, steps }
    }

    /// A rational point satisfying the system, or `None` if it is infeasible.
    pub fn solve(&self) -> Option<Vec<Q>> {
        let proj = self.project(&vec![true; self.nvars]);
        if !proj.consistent {
            return None;
        }
        let mut x = vec![Q::zero(); self.nvars];
        for step in proj.steps.iter().rev() {
            match step {
                Step::Equality { var, value } => x[*var] = value.eval(&x),
                Step::Fm { var, lower, upper } => {
                    let lo = lower.iter().map(|b| b.eval(&x)).max();
                    let hi = upper.iter().map(|b| b.eval(&x)).min();
                    x[*var] = match (lo, hi) {
                        (Some(l), _) => l,
                        (None, Some(h)) => h,
                        (None, None) => Q::zero(),
                    };
                }
            }
        }
        debug_assert!(self.satisfied_by(&x));
        Some(x)
    }

    pub fn satisfied_by(&self, x: &[Q]) -> bool {
        let dot = |r: &Row| r.a.iter().zip(x).fold(Q::zero(), |acc, (a, v)| acc + a * v);
        self.ineqs.iter().all(|r| dot(r) <= r.b) && self.eqs.iter().all(|r| dot(r) == r.b)
    }
}

/// A positive functional `y` with `y·γᵢ ≥ 1`, scaled to integers.
fn positive_functional(gens: &[WeightVector], len: usize) -> Option<Vec<i64>> {
    let mut sys = LinearSystem::new(len);
    for g in gens {
        sys.ineqs.push(Row::new(g.0.iter().map(|&c| q(-c)).collect(), q(-1)));
    }
    let y = sys.solve()?;
    let mut l = BigInt::one();
    for v in &y {
        l = l.lcm(v.denom());
    }
    y.iter().map(|v| (v * Q::from_integer(l.clone())).to_integer().to_i64()).collect()
}

/// The monoid `Γ = {Σ mᵢγᵢ : mᵢ ∈ ℕ}` with multiplicities counted as the number
/// of exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KTypeLattice {
    pub generators: Vec<WeightVector>,
    #[serde(skip)]
    weight_len: usize,
    #[serde(skip)]
    functional: Vec<i64>,
}

impl KTypeLattice {
    /// Fails if a generator is zero or the generators do not lie in an open half-space.
    pub fn new(generators: Vec<WeightVector>, weight_len: usize) -> Result<Self> {
        if generators.iter().any(|g| g.len() != weight_len) {
            return Err(Error::DimensionMismatch {
                expected: weight_len,
                got: generators.iter().map(WeightVector::len).find(|&l| l != weight_len).unwrap_or(0),
            });
        }
        if generators.iter().any(WeightVector::is_zero) {
            return Err(Error::DegenerateLattice("a generator weight is zero".into()));
        }
        let functional = positive_functional(&generators, weight_len)
            .ok_or_else(|| Error::DegenerateLattice("generator weights do not lie in an open half-space".into()))?;
        Ok(KTypeLattice { generators, weight_len, functional })
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn weight_len(&self) -> usize {
        self.weight_len
    }

    fn level(&self, w: &WeightVector) -> i64 {
        self.functional.iter().zip(&w.0).map(|(a, b)| a * b).sum()
    }

    /// Calls `visit` for each exponent vector whose weight has level at most `budget`.
    fn for_each_point(&self, budget: i64, visit: &mut dyn FnMut(&[u32], &WeightVector)) {
        fn rec(
            l: &KTypeLattice,
            i: usize,
            budget: i64,
            exps: &mut Vec<u32>,
            w: WeightVector,
            visit: &mut dyn FnMut(&[u32], &WeightVector),
        ) {
            if i == l.generators.len() {
                visit(exps, &w);
                return;
            }
            let step = l.level(&l.generators[i]);
            let mut w = w;
            let mut used = 0;
            let mut m = 0u32;
            while used <= budget {
                exps.push(m);
                rec(l, i + 1, budget - used, exps, w.clone(), visit);
                exps.pop();
                w = w.add(&l.generators[i]);
                used += step;
                m += 1;
            }
        }
        rec(self, 0, budget, &mut Vec::new(), WeightVector::zero(self.weight_len), visit);
    }

    /// `#{m ∈ ℕ^r : Σ mᵢγᵢ = λ}`.
    pub fn multiplicity(&self, lambda: &WeightVector) -> Result<u64> {
        if lambda.len() != self.weight_len {
            return Err(Error::DimensionMismatch { expected: self.weight_len, got: lambda.len() });
        }
        let budget = self.level(lambda);
        if budget < 0 {
            return Ok(0);
        }
        let mut count = 0;
        self.for_each_point(budget, &mut |_, w| {
            if w == lambda {
                count += 1;
            }
        });
        Ok(count)
    }

    fn level_bound(&self, bound: i64) -> i64 {
        self.functional.iter().map(|a| a.abs()).sum::<i64>() * bound
    }

    /// Lattice points with max-norm at most `bound`, with multiplicities.
    pub fn enumerate(&self, bound: i64) -> Vec<(WeightVector, u64)> {
        self.shifted_points(&WeightVector::zero(self.weight_len), bound)
    }

    fn shifted_points(&self, mu: &WeightVector, bound: i64) -> Vec<(WeightVector, u64)> {
        let mut counts: BTreeMap<WeightVector, u64> = BTreeMap::new();
        if bound < 0 {
            return Vec::new();
        }
        let budget = self.level_bound(bound) - self.level(mu);
        if budget >= 0 {
            self.for_each_point(budget, &mut |_, w| {
                let p = mu.add(w);
                if p.max_norm() <= bound {
                    *counts.entry(p).or_insert(0) += 1;
                }
            });
        }
        counts.into_iter().collect()
    }

    /// `{μ + Σ mᵢγᵢ}` within max-norm `bound`, sorted.
    pub fn shifted_lattice(&self, rd: &RootDatum, mu: &WeightVector, bound: i64) -> Result<Vec<WeightVector>> {
        if !rd.is_dominant(mu) {
            return Err(Error::NotDominant(mu.0.clone()));
        }
        Ok(self.shifted_points(mu, bound).into_iter().map(|(w, _)| w).collect())
    }

    /// `m(λ) = m(−w₀λ)` for every lattice point within `bound`, raised if needed to
    /// cover the generators and their duals. Also checks that the generator
    /// multiset is stable under duality; the two answers must agree.
    pub fn self_dual_check(&self, rd: &RootDatum, bound: i64) -> Result<bool> {
        let duals: Vec<WeightVector> = self.generators.iter().map(|g| rd.dual_weight(g)).collect();
        let needed = self.generators.iter().chain(&duals).map(WeightVector::max_norm).max().unwrap_or(0);
        let bound = bound.max(needed);
        let mut a = self.generators.clone();
        let mut b = duals;
        a.sort();
        b.sort();
        let stable = a == b;
        let mut matches = true;
        for (lambda, m) in self.enumerate(bound) {
            if self.multiplicity(&rd.dual_weight(&lambda))? != m {
                matches = false;
                break;
            }
        }
        if stable != matches {
            return Err(Error::Consistency(format!(
                "generator duality ({stable}) disagrees with multiplicity duality ({matches})"
            )));
        }
        Ok(stable)
    }

    pub fn asymptotic_cone(&self) -> Cone {
        Cone::new(self.generators.clone(), self.weight_len)
    }
}

/// A polyhedral cone `ℝ⁺{γᵢ}` with its inequality description `h·v ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cone {
    #[serde(rename = "generators")]
    pub rays: Vec<WeightVector>,
    /// Rows `h` with `h·v ≥ 0` on the cone, primitive, irredundant, in
    /// decreasing lexicographic order. A linear span constraint appears as `±h`.
    #[serde(rename = "cone_inequalities")]
    pub inequalities: Vec<Vec<i64>>,
}

fn ray_system(rays: &[WeightVector], len: usize, v: &[Q]) -> LinearSystem {
    // unknowns c ∈ ℚ^r: c ≥ 0, Σ cᵢγᵢ = v
    let r = rays.len();
    let mut sys = LinearSystem::new(r);
    for i in 0..r {
        let mut a = vec![Q::zero(); r];
        a[i] = q(-1);
        sys.ineqs.push(Row::new(a, Q::zero()));
    }
    for k in 0..len {
        sys.eqs.push(Row::new(rays.iter().map(|g| q(g.0[k])).collect(), v[k].clone()));
    }
    sys
}

fn in_cone_of(rays: &[Vec<i64>], v: &[i64]) -> bool {
    let ws: Vec<WeightVector> = rays.iter().map(|r| WeightVector(r.clone())).collect();
    let target: Vec<Q> = v.iter().map(|&c| q(c)).collect();
    ray_system(&ws, v.len(), &target).solve().is_some()
}

impl Cone {
    pub fn new(rays: Vec<WeightVector>, len: usize) -> Cone {
        let r = rays.len();
        // variables (v ∈ ℚ^len, c ∈ ℚ^r): v − Σ cᵢγᵢ = 0, c ≥ 0; eliminate c
        let mut sys = LinearSystem::new(len + r);
        for i in 0..r {
            let mut a = vec![Q::zero(); len + r];
            a[len + i] = q(-1);
            sys.ineqs.push(Row::new(a, Q::zero()));
        }
        for k in 0..len {
            let mut a = vec![Q::zero(); len + r];
            a[k] = q(1);
            for (i, g) in rays.iter().enumerate() {
                a[len + i] = q(-g.0[k]);
            }
            sys.eqs.push(Row::new(a, Q::zero()));
        }
        let eliminate: Vec<bool> = (0..len + r).map(|j| j >= len).collect();
        let proj = sys.project(&eliminate);
        let to_h = |row: &Row, sign: i64| -> Vec<i64> {
            let p = row.primitive();
            p.a[..len].iter().map(|x| sign * -x.to_integer().to_i64().expect("small coefficient")).collect()
        };
        let mut hs: Vec<Vec<i64>> = proj.ineqs.iter().map(|row| to_h(row, 1)).collect();
        for row in &proj.eqs {
            hs.push(to_h(row, 1));
            hs.push(to_h(row, -1));
        }
        hs.sort_by(|a, b| b.cmp(a));
        hs.dedup();
        // drop rows implied by the others: h is implied iff h ∈ cone(others)
        let mut i = 0;
        while i < hs.len() {
            let others: Vec<Vec<i64>> =
                hs.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, h)| h.clone()).collect();
            if in_cone_of(&others, &hs[i]) {
                hs.remove(i);
            } else {
                i += 1;
            }
        }
        Cone { rays, inequalities: hs }
    }

    pub fn dim(&self) -> usize {
        self.rays.first().map_or_else(|| self.inequalities.first().map_or(0, Vec::len), WeightVector::len)
    }

    /// Exact conic feasibility: `v = Σ cᵢγᵢ` with rational `cᵢ ≥ 0`.
    pub fn contains(&self, v: &[Q], len: usize) -> Result<bool> {
        if v.len() != len {
            return Err(Error::DimensionMismatch { expected: len, got: v.len() });
        }
        Ok(ray_system(&self.rays, len, v).solve().is_some())
    }

    /// `h·v ≥ 0` for every stored inequality.
    pub fn satisfies_inequalities(&self, v: &[Q]) -> bool {
        self.inequalities.iter().all(|h| !h.iter().zip(v).fold(Q::zero(), |acc, (a, x)| acc + q(*a) * x).is_negative())
    }
}

/// Integer vector as rationals.
pub fn to_rational(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&c| q(c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(v: &[i64]) -> WeightVector {
        WeightVector(v.to_vec())
    }

    fn speh() -> KTypeLattice {
        KTypeLattice::new(vec![w(&[2, 0]), w(&[2, 2])], 2).unwrap()
    }

    #[test]
    fn fm_witness() {
        // x + y ≤ 4, x ≥ 1, y ≥ 2, x − y = −1
        let mut sys = LinearSystem::new(2);
        sys.ineqs.push(Row::new(to_rational(&[1, 1]), q(4)));
        sys.ineqs.push(Row::new(to_rational(&[-1, 0]), q(-1)));
        sys.ineqs.push(Row::new(to_rational(&[0, -1]), q(-2)));
        sys.eqs.push(Row::new(to_rational(&[1, -1]), q(-1)));
        let x = sys.solve().unwrap();
        assert!(sys.satisfied_by(&x));
        sys.ineqs.push(Row::new(to_rational(&[0, 1]), q(1)));
        assert!(sys.solve().is_none());
    }

    #[test]
    fn speh_multiplicities() {
        let l = speh();
        assert_eq!(l.multiplicity(&w(&[4, 2])).unwrap(), 1);
        assert_eq!(l.multiplicity(&w(&[0, 0])).unwrap(), 1);
        assert_eq!(l.multiplicity(&w(&[1, 0])).unwrap(), 0);
        assert_eq!(l.multiplicity(&w(&[-2, 0])).unwrap(), 0);
        assert!(l.multiplicity(&w(&[1, 0, 0])).is_err());
    }

    #[test]
    fn speh_enumeration() {
        let l = speh();
        let pts: Vec<(Vec<i64>, u64)> = l.enumerate(4).into_iter().map(|(p, m)| (p.0, m)).collect();
        let mut expected =
            vec![(vec![0, 0], 1), (vec![2, 0], 1), (vec![2, 2], 1), (vec![4, 0], 1), (vec![4, 2], 1), (vec![4, 4], 1)];
        expected.sort();
        assert_eq!(pts, expected);
        assert_eq!(l.enumerate(0), vec![(w(&[0, 0]), 1)]);
    }

    #[test]
    fn zero_lattice() {
        let l = KTypeLattice::new(Vec::new(), 2).unwrap();
        assert_eq!(l.enumerate(7), vec![(w(&[0, 0]), 1)]);
        let c = l.asymptotic_cone();
        assert!(c.contains(&to_rational(&[0, 0]), 2).unwrap());
        assert!(!c.contains(&to_rational(&[1, 0]), 2).unwrap());
    }

    #[test]
    fn degenerate_lattices() {
        assert!(matches!(KTypeLattice::new(vec![w(&[0, 0])], 2), Err(Error::DegenerateLattice(_))));
        assert!(matches!(KTypeLattice::new(vec![w(&[1, 0]), w(&[-1, 0])], 2), Err(Error::DegenerateLattice(_))));
    }

    #[test]
    fn speh_cone() {
        let c = speh().asymptotic_cone();
        assert_eq!(c.inequalities, vec![vec![1, -1], vec![0, 1]]);
        assert!(c.contains(&to_rational(&[3, 1]), 2).unwrap());
        assert!(!c.contains(&to_rational(&[0, 2]), 2).unwrap());
        assert!(c.contains(&to_rational(&[0, 0]), 2).unwrap());
        assert!(c.contains(&to_rational(&[1]), 1).is_err() || c.contains(&to_rational(&[1]), 2).is_err());
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(json, r#"{"generators":[[2,0],[2,2]],"cone_inequalities":[[1,-1],[0,1]]}"#);
    }

    #[test]
    fn ray_cone() {
        let c = KTypeLattice::new(vec![w(&[2, 0])], 2).unwrap().asymptotic_cone();
        assert!(c.contains(&to_rational(&[5, 0]), 2).unwrap());
        assert!(!c.contains(&to_rational(&[-1, 0]), 2).unwrap());
        assert!(!c.contains(&to_rational(&[1, 1]), 2).unwrap());
        assert_eq!(c.inequalities, vec![vec![1, 0], vec![0, 1], vec![0, -1]]);
    }

    proptest! {
        #[test]
        fn cone_membership_matches_inequalities(
            gens in proptest::collection::vec(proptest::collection::vec(0i64..4, 3), 1..4),
            v in proptest::collection::vec(-6i64..7, 3),
            scale in 1i64..5,
        ) {
            let gens: Vec<WeightVector> = gens.into_iter().filter(|g| g.iter().any(|&c| c != 0)).map(WeightVector).collect();
            prop_assume!(!gens.is_empty());
            let l = KTypeLattice::new(gens.clone(), 3).unwrap();
            let c = l.asymptotic_cone();
            let vq = to_rational(&v);
            let inside = c.contains(&vq, 3).unwrap();
            prop_assert_eq!(inside, c.satisfies_inequalities(&vq));
            let scaled: Vec<Q> = vq.iter().map(|x| x * q(scale)).collect();
            prop_assert_eq!(inside, c.contains(&scaled, 3).unwrap());
            for g in &gens {
                prop_assert!(c.contains(&to_rational(&g.0), 3).unwrap());
            }
        }
    }
}
