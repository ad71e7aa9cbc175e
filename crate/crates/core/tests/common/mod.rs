#![allow(dead_code)]

use std::collections::BTreeMap;

use korbits::analysis::list_fixtures;
use korbits::liealg::{build_real_form, AlgebraRealization};
use korbits::linalg::{Matrix, Vector};
use korbits::orbits::{Orbit, OrbitFlags};
use korbits::roots::WeightVector;
use korbits::ExactScalar;

pub struct Loaded {
    pub name: String,
    pub g: AlgebraRealization,
    pub orbit: Orbit,
    pub flags: OrbitFlags,
}

pub fn load(name: &str) -> Loaded {
    let f = korbits::analysis::fixture(name).expect("fixture");
    let g = build_real_form(f.algebra).unwrap();
    let orbit = Orbit::build(&g, &f.orbit).unwrap();
    let flags = orbit.flags(&g, 8, 0);
    Loaded { name: f.name, g, orbit, flags }
}

pub fn all() -> Vec<Loaded> {
    list_fixtures().iter().map(|f| load(&f.name)).collect()
}

pub fn int(n: i64) -> ExactScalar {
    ExactScalar::from_int(n)
}

/// `tr(A Bᴴ)` on the matrix realization.
pub fn frobenius(g: &AlgebraRealization, a: &[ExactScalar], b: &[ExactScalar]) -> ExactScalar {
    g.to_matrix(a).mul(&g.to_matrix(b).conj_transpose()).trace()
}

/// Dimension of the joint kernel of `op_i − c_i` on the coordinate span of `range`.
pub fn joint_kernel_dim(ops: &[(&Matrix, i64)], range: std::ops::Range<usize>) -> usize {
    let cols: Vec<Vector> = range
        .clone()
        .map(|i| {
            let mut col = Vec::new();
            for (op, c) in ops {
                let mut v = op.column(i);
                v[i] -= &int(*c);
                col.extend(v);
            }
            col
        })
        .collect();
    let rows = cols.first().map_or(0, Vec::len);
    range.len() - Matrix::from_columns(rows, &cols).rank()
}

/// Largest eigenvalue of `ad(x)` found by a rank scan, independent of the eigenspace code.
pub fn ad_height(g: &AlgebraRealization, x: &[ExactScalar]) -> i64 {
    let ad = g.ad(x);
    let n = g.matrix_size() as i64;
    (0..=2 * n).rev().find(|&j| joint_kernel_dim(&[(&ad, j)], 0..g.dim()) > 0).unwrap()
}

/// Monomials `Π f_i^{m_i}` of total degree `n`, counted per weight by direct enumeration.
pub fn monomial_counts(
    degrees: &[usize],
    weights: &[WeightVector],
    len: usize,
    n: usize,
) -> BTreeMap<WeightVector, usize> {
    fn go(
        i: usize,
        left: usize,
        acc: WeightVector,
        degrees: &[usize],
        weights: &[WeightVector],
        out: &mut BTreeMap<WeightVector, usize>,
    ) {
        if i == degrees.len() {
            if left == 0 {
                *out.entry(acc).or_default() += 1;
            }
            return;
        }
        let mut k = 0;
        while k * degrees[i] <= left {
            go(i + 1, left - k * degrees[i], acc.add(&weights[i].scale(k as i64)), degrees, weights, out);
            k += 1;
        }
    }
    let mut out = BTreeMap::new();
    go(0, n, WeightVector::zero(len), degrees, weights, &mut out);
    out
}
