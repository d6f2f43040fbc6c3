//! The Zelevinsky complex ZEL(α, V): terms indexed by permutations, differential
//! blocks as polarization combinations, exact matrix realization and homology.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::bruhat::{arrow_pairs, ArrowPair, Permutation, SignatureTable};
use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::scalar::{binomial_i, factorial, Scalar};
use crate::shift::{in_term_set, route_flow, term_set, DegreeVector, ShiftMatrix};
use crate::symtensor::{monomial_basis, Monomial, SymTensor};
use crate::weyl_ops::{apply_combo, PolarCombo};
use crate::Q;

/// ZEL^π(α, V) = S^{b_1}V ⊗ … ⊗ S^{b_N}V with b_k = a_k − k + π(k).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ZelTerm {
    pub perm: Permutation,
    pub degrees: DegreeVector,
}

impl ZelTerm {
    pub fn new(perm: Permutation, alpha: &DegreeVector) -> Self {
        assert_eq!(perm.n(), alpha.n(), "permutation and degree vector sizes differ");
        let degrees = (1..=alpha.n()).map(|k| alpha.get(k) - k as i64 + perm.get(k) as i64).collect();
        ZelTerm { perm, degrees: DegreeVector::new(degrees) }
    }

    pub fn is_zero_space(&self) -> bool {
        !self.degrees.is_effective()
    }

    pub fn dim(&self, m: usize) -> u128 {
        if self.is_zero_space() {
            return 0;
        }
        self.degrees.degrees.iter().map(|&b| crate::scalar::binomial_u(b as u64 + m as u64 - 1, m as u64 - 1)).product()
    }
}

/// ⟨σ; π, π′⟩ = r!·∏_{k=i+1}^{j−1} R_k!·(r−R_k)!·C(π(i)−π(k), r−R_k).
pub fn zel_amplitude(s: &ShiftMatrix, a: &ArrowPair) -> Result<i64> {
    if s.n() != a.source.n() || !in_term_set(s, a.i, a.j, a.r) {
        return Err(Error::NotSubordinate(format!("{s} is not in TERM({},{},{})", a.i, a.j, a.r)));
    }
    let r = a.r;
    let mut amp = factorial(r);
    for k in a.i + 1..a.j {
        let rk = route_flow(s, k)?;
        let sk = r - rk;
        let top = a.source.get(a.i) as i64 - a.source.get(k) as i64;
        amp *= factorial(rk) * factorial(sk) * binomial_i(top, sk as i64);
    }
    Ok(amp)
}

/// sgn(a)·Σ_{σ ∈ TERM(i,j,r)} ⟨σ; a⟩·P(σ). The block does not depend on α.
pub fn differential_block<S: Scalar>(a: &ArrowPair, sgn: &SignatureTable) -> Result<PolarCombo<S>> {
    let sign = sgn.sign(a).ok_or_else(|| Error::Index(format!("no sign for arrow {a}")))?;
    let n = a.source.n();
    let mut c = PolarCombo::zero(n);
    for s in term_set(n, a.i, a.j, a.r)? {
        let amp = zel_amplitude(&s, a)?;
        c.add_term(s, S::from_i64(sign as i64 * amp));
    }
    Ok(c)
}

/// Terms grouped by level, and one differential block per arrow pair.
#[derive(Clone, Debug)]
pub struct ZelComplex {
    pub n: usize,
    pub alpha: DegreeVector,
    pub m: usize,
    pub signature: SignatureTable,
    /// levels[k] lists terms with l(π) = k, sorted by permutation.
    pub levels: Vec<Vec<ZelTerm>>,
    pub blocks: BTreeMap<(Permutation, Permutation), (ArrowPair, PolarCombo<Q>)>,
}

pub fn build_complex(alpha: &DegreeVector, m: usize, sgn: &SignatureTable) -> Result<ZelComplex> {
    let n = alpha.n();
    if m == 0 {
        return Err(Error::Range("dim V must be positive".into()));
    }
    if sgn.n() != n {
        return Err(Error::Shape(format!("signature table is for n={}, α has n={n}", sgn.n())));
    }
    let top = n * (n - 1) / 2;
    let mut levels = vec![Vec::new(); top + 1];
    for p in Permutation::all(n) {
        let l = p.length();
        levels[l].push(ZelTerm::new(p, alpha));
    }
    let mut blocks = BTreeMap::new();
    for a in arrow_pairs(n) {
        let c = differential_block(&a, sgn)?;
        blocks.insert((a.source.clone(), a.target.clone()), (a, c));
    }
    Ok(ZelComplex { n, alpha: alpha.clone(), m, signature: sgn.clone(), levels, blocks })
}

impl ZelComplex {
    pub fn top_level(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level_dim(&self, k: usize) -> usize {
        self.levels[k].iter().map(|t| t.dim(self.m) as usize).sum()
    }

    pub fn block(&self, a: &ArrowPair) -> Option<&PolarCombo<Q>> {
        self.blocks.get(&(a.source.clone(), a.target.clone())).map(|(_, c)| c)
    }

    fn level_bases(&self, k: usize) -> Vec<(Permutation, usize, Vec<Monomial>)> {
        let mut off = 0;
        self.levels[k]
            .iter()
            .map(|t| {
                let b = monomial_basis(self.m, &t.degrees);
                let entry = (t.perm.clone(), off, b);
                off += entry.2.len();
                entry
            })
            .collect()
    }

    /// Euler characteristic Σ (−1)^k dim ZEL^k.
    pub fn euler_characteristic(&self) -> i64 {
        (0..=self.top_level()).map(|k| if k % 2 == 0 { 1 } else { -1 } * self.level_dim(k) as i64).sum()
    }
}

/// Matrix of d_k : ZEL^k → ZEL^{k−1}; rows index level k−1, columns level k.
pub fn realize_matrix(c: &ZelComplex, k: usize) -> Result<RationalMatrix> {
    if k < 1 || k > c.top_level() {
        return Err(Error::Range(format!("level {k} outside 1..={}", c.top_level())));
    }
    let src = c.level_bases(k);
    let dst = c.level_bases(k - 1);
    let rows: usize = dst.iter().map(|d| d.2.len()).sum();
    let cols: usize = src.iter().map(|d| d.2.len()).sum();
    let dst_index: HashMap<&Permutation, (usize, HashMap<&Monomial, usize>)> =
        dst.iter().map(|(p, off, b)| (p, (*off, b.iter().enumerate().map(|(x, mm)| (mm, x)).collect()))).collect();

    let jobs: Vec<(&ArrowPair, &PolarCombo<Q>, usize, &[Monomial])> = c
        .blocks
        .values()
        .filter_map(|(a, combo)| {
            let (_, off, basis) = src.iter().find(|(p, _, _)| *p == a.source)?;
            Some((a, combo, *off, basis.as_slice()))
        })
        .collect();
    let pieces: Vec<Vec<(usize, usize, Q)>> = jobs
        .par_iter()
        .map(|(a, combo, col_off, basis)| {
            let Some((row_off, idx)) = dst_index.get(&a.target) else { return Vec::new() };
            let mut out = Vec::new();
            for (x, mono) in basis.iter().enumerate() {
                let img = apply_combo(combo, &SymTensor::from_monomial(mono.clone()));
                for (mm, v) in img.terms() {
                    let row = idx.get(mm).expect("image lies in the target term");
                    out.push((row_off + row, col_off + x, v.clone()));
                }
            }
            out
        })
        .collect();
    let mut mat = RationalMatrix::zeros(rows, cols);
    for piece in pieces {
        for (r, col, v) in piece {
            mat.add_to(r, col, v);
        }
    }
    Ok(mat)
}

/// Realized differentials d_1, …, d_top (index 0 holds d_1).
pub fn realize_all(c: &ZelComplex) -> Result<Vec<RationalMatrix>> {
    (1..=c.top_level()).map(|k| realize_matrix(c, k)).collect()
}

/// True iff d_k ∘ d_{k+1} = 0 for every k.
pub fn dd_is_zero(mats: &[RationalMatrix]) -> bool {
    mats.windows(2).all(|w| w[0].mul(&w[1]).is_zero())
}

/// H_k = dim ker d_k − rank d_{k+1}, with H_0 = dim coker d_1.
pub fn homology_dims(c: &ZelComplex) -> Result<Vec<usize>> {
    let mats = realize_all(c)?;
    Ok(homology_from_matrices(c, &mats))
}

pub fn homology_from_matrices(c: &ZelComplex, mats: &[RationalMatrix]) -> Vec<usize> {
    let ranks: Vec<usize> = mats.par_iter().map(RationalMatrix::rank).collect();
    let top = c.top_level();
    (0..=top)
        .map(|k| {
            let into = if k >= 1 { ranks[k - 1] } else { 0 };
            let out = if k < top { ranks[k] } else { 0 };
            c.level_dim(k) - into - out
        })
        .collect()
}

/// det[h_{a_i − i + j}(1^M)] with h_n(1^M) = C(n + M − 1, M − 1), h_n = 0 for n < 0.
pub fn schur_dimension_oracle(alpha: &DegreeVector, m: usize) -> i64 {
    let n = alpha.n();
    let h = |d: i64| -> BigInt {
        if d < 0 {
            BigInt::zero()
        } else {
            BigInt::from(crate::scalar::binomial_u((d + m as i64 - 1) as u64, m as u64 - 1))
        }
    };
    let mut det = BigInt::zero();
    for p in Permutation::all(n) {
        let sign = if p.length() % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        let prod = (1..=n).fold(sign, |acc, i| acc * h(alpha.get(i) - i as i64 + p.get(i) as i64));
        det += prod;
    }
    i64::try_from(det).expect("dimension overflow")
}

/// Hook-content formula ∏_{cells} (M + c)/h for a partition; `None` otherwise.
pub fn hook_content_dimension(alpha: &DegreeVector, m: usize) -> Option<i64> {
    if !alpha.is_partition() {
        return None;
    }
    let rows: Vec<i64> = alpha.degrees.clone();
    let col_len = |c: i64| rows.iter().filter(|&&r| r > c).count() as i64;
    let (mut num, mut den) = (BigInt::one(), BigInt::one());
    for (i, &len) in rows.iter().enumerate() {
        for c in 0..len {
            let content = c - i as i64;
            let hook = (len - c - 1) + (col_len(c) - i as i64 - 1) + 1;
            num *= BigInt::from(m as i64 + content);
            den *= BigInt::from(hook);
        }
    }
    let q = num / den;
    Some(if q.is_negative() { 0 } else { i64::try_from(q).ok()? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bruhat::akin_signature;

    #[test]
    fn oracle_values() {
        let d = |v: Vec<i64>| DegreeVector::new(v);
        assert_eq!(schur_dimension_oracle(&d(vec![1, 0]), 2), 2);
        assert_eq!(schur_dimension_oracle(&d(vec![1, 1, 0]), 3), 3);
        assert_eq!(schur_dimension_oracle(&d(vec![2, 1, 0]), 3), 8);
        assert_eq!(hook_content_dimension(&d(vec![2, 1, 0]), 3), Some(8));
        assert_eq!(hook_content_dimension(&d(vec![1, 1]), 2), Some(1));
        assert_eq!(hook_content_dimension(&d(vec![1, 1, 1]), 2), Some(0));
        assert_eq!(hook_content_dimension(&d(vec![0, 1]), 2), None);
    }

    #[test]
    fn two_by_one_column() {
        let sgn = akin_signature(2).unwrap();
        let c = build_complex(&DegreeVector::new(vec![1, 1]), 2, &sgn).unwrap();
        assert_eq!(c.level_dim(0), 4);
        assert_eq!(c.level_dim(1), 3);
        assert_eq!(homology_dims(&c).unwrap(), vec![1, 0]);
    }

    #[test]
    fn n1_has_no_differentials() {
        let sgn = akin_signature(1).unwrap();
        let c = build_complex(&DegreeVector::new(vec![5]), 2, &sgn).unwrap();
        assert_eq!(c.top_level(), 0);
        assert_eq!(homology_dims(&c).unwrap(), vec![6]);
    }

    #[test]
    fn zero_space_terms() {
        let sgn = akin_signature(2).unwrap();
        let c = build_complex(&DegreeVector::new(vec![1, 0]), 2, &sgn).unwrap();
        assert!(c.levels[1][0].is_zero_space());
        assert_eq!(realize_matrix(&c, 1).unwrap().cols(), 0);
        assert_eq!(homology_dims(&c).unwrap(), vec![2, 0]);
    }
}
