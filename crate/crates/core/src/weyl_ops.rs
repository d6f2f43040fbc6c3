//! Formal calculus on combinations Σ c_σ P(σ): products with elementary
//! polarizations, commutators, and words of elementary polarizations.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::Scalar;
use crate::shift::ShiftMatrix;
use crate::symtensor::{apply_elementary, apply_weyl, SymTensor};

/// Finite combination Σ c_σ P(σ) with distinct shifts treated as a formal basis.
#[derive(Clone, PartialEq, Debug)]
pub struct PolarCombo<S: Scalar> {
    n: usize,
    terms: BTreeMap<ShiftMatrix, S>,
}

impl<S: Scalar> PolarCombo<S> {
    pub fn zero(n: usize) -> Self {
        PolarCombo { n, terms: BTreeMap::new() }
    }

    /// The identity operator P(0).
    pub fn identity(n: usize) -> Self {
        Self::single(ShiftMatrix::zero(n))
    }

    pub fn single(s: ShiftMatrix) -> Self {
        let mut c = Self::zero(s.n());
        c.add_term(s, S::one());
        c
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn terms(&self) -> &BTreeMap<ShiftMatrix, S> {
        &self.terms
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn coeff(&self, s: &ShiftMatrix) -> S {
        self.terms.get(s).cloned().unwrap_or_else(S::zero)
    }

    pub fn add_term(&mut self, s: ShiftMatrix, c: S) {
        assert_eq!(s.n(), self.n, "shift size differs from combo size");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&s) {
            Some(v) => {
                *v = v.clone() + c;
                if v.is_zero() {
                    self.terms.remove(&s);
                }
            }
            None => {
                self.terms.insert(s, c);
            }
        }
    }

    /// Adds c·P(σ) when σ is present; absent (ineffective) shifts contribute nothing.
    fn add_opt(&mut self, s: Option<ShiftMatrix>, c: S) {
        if let Some(s) = s {
            self.add_term(s, c);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &S::one());
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &-S::one());
        out
    }

    pub fn add_scaled(&mut self, other: &Self, c: &S) {
        assert_eq!(self.n, other.n);
        for (s, v) in &other.terms {
            self.add_term(s.clone(), v.clone() * c.clone());
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(self.n);
        out.add_scaled(self, c);
        out
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(S::is_integer)
    }
}

impl<S: Scalar> fmt::Display for PolarCombo<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|(s, c)| format!("({})·P({})", c.to_ratio_string(), s)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// An ordered product E_{i_1,j_1}⋯E_{i_L,j_L}; the rightmost factor acts first.
#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize, serde::Deserialize)]
pub struct ElementaryWord {
    pub n: usize,
    pub factors: Vec<(usize, usize)>,
}

impl ElementaryWord {
    pub fn new(n: usize, factors: Vec<(usize, usize)>) -> Self {
        assert!(factors.iter().all(|&(i, j)| (1..=n).contains(&i) && (1..=n).contains(&j)), "word factor out of range");
        ElementaryWord { n, factors }
    }

    pub fn concat(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        ElementaryWord { n: self.n, factors }
    }

    /// Iterated elementary action, rightmost factor first.
    pub fn act<S: Scalar>(&self, t: &SymTensor<S>) -> SymTensor<S> {
        self.factors.iter().rev().fold(t.clone(), |acc, &(i, j)| apply_elementary(i, j, &acc))
    }
}

fn check(n: usize, i: usize, j: usize) {
    assert!((1..=n).contains(&i) && (1..=n).contains(&j), "generator E{i},{j} out of range for n={n}");
}

/// E_{i,j} · c.
pub fn left_mul_elementary<S: Scalar>(i: usize, j: usize, c: &PolarCombo<S>) -> PolarCombo<S> {
    let n = c.n;
    check(n, i, j);
    let mut out = PolarCombo::zero(n);
    for (s, v) in &c.terms {
        let lead = S::from_i64(s.get(i, j) as i64 + 1);
        out.add_term(s.add_unit(i, j), v.clone() * lead);
        if i == j {
            let row = S::from_i64(s.row_sum(i) as i64);
            out.add_term(s.clone(), v.clone() * row);
            continue;
        }
        for k in 1..=n {
            let m = S::from_i64(s.get(i, k) as i64 + 1);
            out.add_opt(s.offset(&[(i, k, 1), (j, k, -1)]), v.clone() * m);
        }
    }
    out
}

/// c · E_{i,j}.
pub fn right_mul_elementary<S: Scalar>(c: &PolarCombo<S>, i: usize, j: usize) -> PolarCombo<S> {
    let n = c.n;
    check(n, i, j);
    let mut out = PolarCombo::zero(n);
    for (s, v) in &c.terms {
        let lead = S::from_i64(s.get(i, j) as i64 + 1);
        out.add_term(s.add_unit(i, j), v.clone() * lead);
        if i == j {
            let col = S::from_i64(s.col_sum(i) as i64);
            out.add_term(s.clone(), v.clone() * col);
            continue;
        }
        for k in 1..=n {
            let m = S::from_i64(s.get(k, j) as i64 + 1);
            out.add_opt(s.offset(&[(k, j, 1), (k, i, -1)]), v.clone() * m);
        }
    }
    out
}

/// [E_{p,q}, c] = E_{p,q}c − cE_{p,q}.
pub fn commutator_elementary<S: Scalar>(p: usize, q: usize, c: &PolarCombo<S>) -> PolarCombo<S> {
    left_mul_elementary(p, q, c).sub(&right_mul_elementary(c, p, q))
}

/// The combination acting as the composite E_{i_1,j_1}∘…∘E_{i_L,j_L}.
pub fn word_to_combo<S: Scalar>(w: &ElementaryWord) -> PolarCombo<S> {
    w.factors.iter().rev().fold(PolarCombo::identity(w.n), |acc, &(i, j)| left_mul_elementary(i, j, &acc))
}

/// Σ c_σ · P(σ)(t).
pub fn apply_combo<S: Scalar>(c: &PolarCombo<S>, t: &SymTensor<S>) -> SymTensor<S> {
    assert_eq!(c.n, t.n(), "combo size differs from tensor slot count");
    let mut out = SymTensor::zero(t.n(), t.m());
    for (s, v) in &c.terms {
        out.add_assign_scaled(&apply_weyl(s, t), v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;

    fn p(n: usize, terms: &[(usize, usize, u32)]) -> PolarCombo<Q> {
        PolarCombo::single(ShiftMatrix::from_terms(n, terms))
    }

    type Part<'a> = (i64, &'a [(usize, usize, u32)]);

    fn combo(n: usize, parts: &[Part]) -> PolarCombo<Q> {
        let mut c = PolarCombo::zero(n);
        for (v, t) in parts {
            c.add_term(ShiftMatrix::from_terms(n, t), Q::from_i64(*v));
        }
        c
    }

    #[test]
    fn left_products() {
        assert_eq!(left_mul_elementary(3, 2, &p(4, &[(4, 3, 1)])), p(4, &[(3, 2, 1), (4, 3, 1)]));
        assert_eq!(left_mul_elementary(2, 1, &p(3, &[(2, 1, 1)])), combo(3, &[(2, &[(2, 1, 2)])]));
        assert_eq!(
            left_mul_elementary(1, 1, &p(2, &[(1, 2, 1)])),
            combo(2, &[(1, &[(1, 1, 1), (1, 2, 1)]), (1, &[(1, 2, 1)])])
        );
    }

    #[test]
    fn right_products() {
        assert_eq!(right_mul_elementary(&PolarCombo::<Q>::identity(2), 2, 1), p(2, &[(2, 1, 1)]));
        // P(E21)·E32: the moved letter cannot be moved again, no correction term.
        assert_eq!(right_mul_elementary(&p(3, &[(2, 1, 1)]), 3, 2), p(3, &[(2, 1, 1), (3, 2, 1)]));
        assert_eq!(
            right_mul_elementary(&p(3, &[(3, 2, 1)]), 2, 1),
            combo(3, &[(1, &[(2, 1, 1), (3, 2, 1)]), (1, &[(3, 1, 1)])])
        );
        assert_eq!(
            right_mul_elementary(&p(2, &[(2, 1, 1)]), 1, 1),
            combo(2, &[(1, &[(1, 1, 1), (2, 1, 1)]), (1, &[(2, 1, 1)])])
        );
    }

    #[test]
    fn commutators() {
        assert!(commutator_elementary(2, 1, &p(3, &[(2, 1, 1)])).is_zero());
        assert!(commutator_elementary(1, 1, &p(3, &[(1, 2, 1), (2, 1, 1)])).is_zero());
    }

    #[test]
    fn words() {
        let w = |f: Vec<(usize, usize)>| ElementaryWord::new(3, f);
        assert_eq!(word_to_combo::<Q>(&w(vec![])), PolarCombo::identity(3));
        assert_eq!(word_to_combo::<Q>(&w(vec![(2, 1), (3, 2)])), p(3, &[(2, 1, 1), (3, 2, 1)]));
        assert_eq!(
            word_to_combo::<Q>(&w(vec![(3, 2), (2, 1)])),
            combo(3, &[(1, &[(2, 1, 1), (3, 2, 1)]), (1, &[(3, 1, 1)])])
        );
    }
}
