//! Seeded random inputs for the verification suites.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::scalar::Scalar;
use crate::shift::{DegreeVector, ShiftMatrix};
use crate::symtensor::{monomial_basis, SymTensor};

/// p/q with |p| ≤ 12 and 1 ≤ q ≤ 7.
pub fn rational<S: Scalar, R: Rng>(rng: &mut R) -> S {
    let p = rng.gen_range(-12..=12);
    let q = rng.gen_range(1..=7);
    S::from_i64(p) / S::from_i64(q)
}

/// A nonzero small integer coefficient.
pub fn small_int<S: Scalar, R: Rng>(rng: &mut R) -> S {
    let v = rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 };
    S::from_i64(v)
}

/// An N-shift of total weight exactly `weight`, placing units uniformly over
/// the allowed cells (off-diagonal, or also diagonal when `diagonal`).
pub fn shift<R: Rng>(rng: &mut R, n: usize, weight: u32, diagonal: bool) -> ShiftMatrix {
    let cells: Vec<(usize, usize)> =
        (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).filter(|&(i, j)| diagonal || i != j).collect();
    let mut s = ShiftMatrix::zero(n);
    if cells.is_empty() {
        return s;
    }
    for _ in 0..weight {
        let &(i, j) = cells.choose(rng).expect("nonempty");
        s = s.add_unit(i, j);
    }
    s
}

/// A strictly lower-triangular N-shift of total weight in 1..=max_weight (needs n ≥ 2).
pub fn lower_shift<R: Rng>(rng: &mut R, n: usize, max_weight: u32) -> ShiftMatrix {
    let cells: Vec<(usize, usize)> = (1..=n).flat_map(|i| (1..i).map(move |j| (i, j))).collect();
    let w = rng.gen_range(1..=max_weight);
    let mut s = ShiftMatrix::zero(n);
    for _ in 0..w {
        let &(i, j) = cells.choose(rng).expect("n ≥ 2");
        s = s.add_unit(i, j);
    }
    s
}

pub fn degrees<R: Rng>(rng: &mut R, n: usize, max_degree: u32) -> DegreeVector {
    DegreeVector::new((0..n).map(|_| rng.gen_range(0..=max_degree) as i64).collect())
}

/// A random homogeneous tensor of the given multidegree with up to `max_terms` terms.
pub fn homogeneous_tensor<S: Scalar, R: Rng>(
    rng: &mut R,
    m: usize,
    alpha: &DegreeVector,
    max_terms: usize,
) -> SymTensor<S> {
    let basis = monomial_basis(m, alpha);
    let mut t = SymTensor::zero(alpha.n(), m);
    let k = rng.gen_range(1..=max_terms.max(1)).min(basis.len());
    for mono in basis.choose_multiple(rng, k) {
        t.add_term(mono.clone(), rational(rng));
    }
    t
}

/// A random tensor mixing up to three multidegrees with slot degrees ≤ max_degree.
pub fn tensor<S: Scalar, R: Rng>(rng: &mut R, n: usize, m: usize, max_degree: u32, max_terms: usize) -> SymTensor<S> {
    let mut t = SymTensor::zero(n, m);
    for _ in 0..rng.gen_range(1..=3) {
        let alpha = degrees(rng, n, max_degree);
        t = t.add(&homogeneous_tensor(rng, m, &alpha, max_terms));
    }
    t
}

/// λ satisfying l_i − l_j − i + j = r, other entries random rationals.
pub fn verma_lambda<S: Scalar, R: Rng>(rng: &mut R, n: usize, i: usize, j: usize, r: u32) -> Vec<S> {
    let mut lam: Vec<S> = (0..n).map(|_| rational(rng)).collect();
    lam[j - 1] = lam[i - 1].clone() - S::from_i64(i as i64) + S::from_i64(j as i64) - S::from_i64(r as i64);
    lam
}
