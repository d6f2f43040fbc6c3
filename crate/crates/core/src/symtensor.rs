//! Exact arithmetic in S^{a_1}V ⊗ … ⊗ S^{a_N}V with dim V = M, and the
//! combinatorial and differential actions of polarization operators.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::{binomial_u, multinomial_with_rest, Scalar};
use crate::shift::{shift_factorial, DegreeVector, ShiftMatrix};

/// Monomial ∏ (X_k^{(i)})^{e_{i,k}}: slot i, variable k, both 1-based in accessors.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial {
    n: usize,
    m: usize,
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(n: usize, m: usize) -> Self {
        Monomial { n, m, exps: vec![0; n * m] }
    }

    /// Builds from per-slot exponent rows (N rows of length M).
    pub fn from_rows(rows: &[Vec<u32>]) -> Option<Self> {
        let n = rows.len();
        let m = rows.first()?.len();
        if m == 0 || rows.iter().any(|r| r.len() != m) {
            return None;
        }
        Some(Monomial { n, m, exps: rows.concat() })
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn m(&self) -> usize {
        self.m
    }
    pub fn get(&self, slot: usize, var: usize) -> u32 {
        self.exps[(slot - 1) * self.m + (var - 1)]
    }
    fn at(&mut self, slot: usize, var: usize) -> &mut u32 {
        &mut self.exps[(slot - 1) * self.m + (var - 1)]
    }
    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.exps.chunks(self.m).map(<[u32]>::to_vec).collect()
    }
    pub fn slot_degree(&self, slot: usize) -> u32 {
        (1..=self.m).map(|k| self.get(slot, k)).sum()
    }
    pub fn multidegree(&self) -> DegreeVector {
        DegreeVector::new((1..=self.n).map(|i| self.slot_degree(i) as i64).collect())
    }
    /// Total exponent of variable k over all slots.
    pub fn content(&self) -> Vec<u32> {
        (1..=self.m).map(|k| (1..=self.n).map(|i| self.get(i, k)).sum()).collect()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let slots: Vec<String> = (1..=self.n)
            .map(|i| {
                let vars: Vec<String> = (1..=self.m)
                    .filter(|&k| self.get(i, k) > 0)
                    .map(|k| match self.get(i, k) {
                        1 => format!("x{k}"),
                        e => format!("x{k}^{e}"),
                    })
                    .collect();
                if vars.is_empty() {
                    "1".to_string()
                } else {
                    vars.join("")
                }
            })
            .collect();
        write!(f, "{}", slots.join("⊗"))
    }
}

/// All monomials with the given slot degrees, ascending. Empty if any degree is negative.
pub fn monomial_basis(m: usize, degrees: &DegreeVector) -> Vec<Monomial> {
    let n = degrees.n();
    if !degrees.is_effective() {
        return Vec::new();
    }
    let per_slot: Vec<Vec<Vec<u32>>> = degrees.degrees.iter().map(|&b| compositions(b as u32, m)).collect();
    let mut out = vec![Vec::new()];
    for opts in &per_slot {
        let mut next = Vec::with_capacity(out.len() * opts.len());
        for prefix in &out {
            for o in opts {
                let mut v: Vec<u32> = prefix.clone();
                v.extend_from_slice(o);
                next.push(v);
            }
        }
        out = next;
    }
    let mut monos: Vec<Monomial> = out.into_iter().map(|exps| Monomial { n, m, exps }).collect();
    monos.sort();
    monos
}

/// Weak compositions of `total` into `parts` parts.
pub(crate) fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Finite linear combination of monomials with exact coefficients. No zero is stored.
#[derive(Clone, PartialEq, Debug)]
pub struct SymTensor<S: Scalar> {
    n: usize,
    m: usize,
    terms: BTreeMap<Monomial, S>,
}

impl<S: Scalar> SymTensor<S> {
    pub fn zero(n: usize, m: usize) -> Self {
        assert!(n >= 1 && m >= 1, "tensor shape must be positive");
        SymTensor { n, m, terms: BTreeMap::new() }
    }

    pub fn from_monomial(mono: Monomial) -> Self {
        let mut t = Self::zero(mono.n, mono.m);
        t.add_term(mono, S::one());
        t
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn m(&self) -> usize {
        self.m
    }
    pub fn terms(&self) -> &BTreeMap<Monomial, S> {
        &self.terms
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn coeff(&self, mono: &Monomial) -> S {
        self.terms.get(mono).cloned().unwrap_or_else(S::zero)
    }

    pub fn add_term(&mut self, mono: Monomial, c: S) {
        assert!(mono.n == self.n && mono.m == self.m, "monomial shape differs from tensor shape");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mono) {
            Some(v) => {
                *v = v.clone() + c;
                if v.is_zero() {
                    self.terms.remove(&mono);
                }
            }
            None => {
                self.terms.insert(mono, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_scaled(other, &S::one());
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_scaled(other, &-S::one());
        out
    }

    pub fn add_assign_scaled(&mut self, other: &Self, c: &S) {
        assert!(self.n == other.n && self.m == other.m, "tensor shapes differ");
        for (mono, v) in &other.terms {
            self.add_term(mono.clone(), v.clone() * c.clone());
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(self.n, self.m);
        out.add_assign_scaled(self, c);
        out
    }

    /// Common multidegree of all terms, or `None` if inhomogeneous or zero.
    pub fn multidegree(&self) -> Option<DegreeVector> {
        let mut it = self.terms.keys().map(Monomial::multidegree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Split into multihomogeneous components.
    pub fn components(&self) -> BTreeMap<DegreeVector, Self> {
        let mut out: BTreeMap<DegreeVector, Self> = BTreeMap::new();
        for (mono, c) in &self.terms {
            out.entry(mono.multidegree())
                .or_insert_with(|| Self::zero(self.n, self.m))
                .add_term(mono.clone(), c.clone());
        }
        out
    }

    /// Linear change of variables x_k ↦ Σ_l g[k][l] x_l applied in every slot.
    pub fn substitute(&self, g: &[Vec<S>]) -> Self {
        assert_eq!(g.len(), self.m, "substitution must be M×M");
        let mut out = Self::zero(self.n, self.m);
        for (mono, c) in &self.terms {
            let mut acc = Self::from_monomial(Monomial::one(self.n, self.m)).scale(c);
            for slot in 1..=self.n {
                for k in 1..=self.m {
                    for _ in 0..mono.get(slot, k) {
                        acc = multiply_linear_form(&acc, slot, &g[k - 1]);
                    }
                }
            }
            out.add_assign_scaled(&acc, &S::one());
        }
        out
    }
}

fn multiply_linear_form<S: Scalar>(t: &SymTensor<S>, slot: usize, form: &[S]) -> SymTensor<S> {
    let mut out = SymTensor::zero(t.n, t.m);
    for (mono, c) in &t.terms {
        for (l, coef) in form.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            let mut mm = mono.clone();
            *mm.at(slot, l + 1) += 1;
            out.add_term(mm, c.clone() * coef.clone());
        }
    }
    out
}

impl<S: Scalar> fmt::Display for SymTensor<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({}) {}", c.to_ratio_string(), m)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Elementary polarization D_{i,j}. For i = j, scales each monomial by its slot-i degree.
pub fn apply_elementary<S: Scalar>(i: usize, j: usize, t: &SymTensor<S>) -> SymTensor<S> {
    assert!((1..=t.n).contains(&i) && (1..=t.n).contains(&j), "index out of range");
    let mut out = SymTensor::zero(t.n, t.m);
    for (mono, c) in &t.terms {
        if i == j {
            let d = mono.slot_degree(i) as i64;
            out.add_term(mono.clone(), c.clone() * S::from_i64(d));
            continue;
        }
        for k in 1..=t.m {
            let e = mono.get(j, k);
            if e == 0 {
                continue;
            }
            let mut mm = mono.clone();
            *mm.at(j, k) -= 1;
            *mm.at(i, k) += 1;
            out.add_term(mm, c.clone() * S::from_i64(e as i64));
        }
    }
    out
}

/// Combinatorial Weyl polarization P(σ): move σ_{i,j} distinct letters from slot j
/// to slot i in all ways, no letter moved twice.
pub fn apply_weyl<S: Scalar>(s: &ShiftMatrix, t: &SymTensor<S>) -> SymTensor<S> {
    assert_eq!(s.n(), t.n, "shift size differs from tensor slot count");
    let mut out = SymTensor::zero(t.n, t.m);
    for (mono, c) in &t.terms {
        for (mm, w) in weyl_on_monomial(s, mono) {
            out.add_term(mm, c.clone() * S::from_i64(i64::try_from(w).expect("count overflow")));
        }
    }
    out
}

/// P(σ) on one monomial, as (result, integer weight) pairs with distinct results.
pub fn weyl_on_monomial(s: &ShiftMatrix, mono: &Monomial) -> Vec<(Monomial, u128)> {
    let (n, m) = (mono.n, mono.m);
    // For each source slot j: alternatives (delta over n*m exponents, weight).
    let mut cols: Vec<Vec<(Vec<i64>, u128)>> = Vec::with_capacity(n);
    for j in 1..=n {
        let need: Vec<u32> = (1..=n).map(|i| s.get(i, j)).collect();
        if need.iter().sum::<u32>() > mono.slot_degree(j) {
            return Vec::new();
        }
        let caps: Vec<u32> = (1..=m).map(|k| mono.get(j, k)).collect();
        let mut mu = vec![vec![0u32; m]; n];
        let mut alts = Vec::new();
        column_moves(&need, &caps, 0, &mut mu, &mut alts, j, n, m);
        cols.push(alts);
    }
    let mut acc: BTreeMap<Vec<i64>, u128> = BTreeMap::new();
    acc.insert(vec![0; n * m], 1);
    for alts in &cols {
        if alts.len() == 1 && alts[0].1 == 1 && alts[0].0.iter().all(|&d| d == 0) {
            continue;
        }
        let mut next: BTreeMap<Vec<i64>, u128> = BTreeMap::new();
        for (d0, w0) in &acc {
            for (d1, w1) in alts {
                let d: Vec<i64> = d0.iter().zip(d1).map(|(a, b)| a + b).collect();
                *next.entry(d).or_insert(0) += w0 * w1;
            }
        }
        acc = next;
    }
    acc.into_iter()
        .map(|(d, w)| {
            let exps = mono.exps.iter().zip(&d).map(|(&e, &x)| (e as i64 + x) as u32).collect();
            (Monomial { n, m, exps }, w)
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn column_moves(
    need: &[u32],
    caps: &[u32],
    target: usize,
    mu: &mut Vec<Vec<u32>>,
    out: &mut Vec<(Vec<i64>, u128)>,
    j: usize,
    n: usize,
    m: usize,
) {
    if target == n {
        let mut w: u128 = 1;
        let mut delta = vec![0i64; n * m];
        for k in 0..m {
            let parts: Vec<u32> = (0..n).map(|i| mu[i][k]).collect();
            w *= multinomial_with_rest(caps[k], &parts);
            for i in 0..n {
                delta[(j - 1) * m + k] -= mu[i][k] as i64;
                delta[i * m + k] += mu[i][k] as i64;
            }
        }
        out.push((delta, w));
        return;
    }
    let used: Vec<u32> = (0..m).map(|k| (0..target).map(|i| mu[i][k]).sum()).collect();
    let room: Vec<u32> = (0..m).map(|k| caps[k] - used[k]).collect();
    distribute(need[target], &room, 0, &mut mu[target].clone(), &mut |row| {
        let saved = std::mem::replace(&mut mu[target], row.to_vec());
        column_moves(need, caps, target + 1, mu, out, j, n, m);
        mu[target] = saved;
    });
}

fn distribute(left: u32, room: &[u32], k: usize, row: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
    if k == room.len() {
        if left == 0 {
            f(row);
        }
        return;
    }
    let rest_room: u32 = room[k + 1..].iter().sum();
    let lo = left.saturating_sub(rest_room);
    for v in lo..=left.min(room[k]) {
        row[k] = v;
        distribute(left - v, room, k + 1, row, f);
    }
    row[k] = 0;
}

/// Non-normalized differential polarization P0(σ): all derivatives, then all multiplications.
pub fn apply_weyl_unnormalized<S: Scalar>(s: &ShiftMatrix, t: &SymTensor<S>) -> SymTensor<S> {
    assert_eq!(s.n(), t.n, "shift size differs from tensor slot count");
    let factors: Vec<(usize, usize)> =
        s.support().flat_map(|(i, j, v)| std::iter::repeat_n((i, j), v as usize)).collect();
    let mut out = SymTensor::zero(t.n, t.m);
    for (mono, c) in &t.terms {
        let mut results: Vec<(Monomial, i64)> = Vec::new();
        differentiate(&factors, 0, mono.clone(), 1, &mut Vec::new(), &mut results);
        for (mm, w) in results {
            out.add_term(mm, c.clone() * S::from_i64(w));
        }
    }
    out
}

// Applies ∂/∂X_{k}^{(j_s)} for each factor in turn over all variable choices, then the
// matching multiplications X_{k}^{(i_s)}.
fn differentiate(
    factors: &[(usize, usize)],
    s: usize,
    cur: Monomial,
    coeff: i64,
    chosen: &mut Vec<usize>,
    out: &mut Vec<(Monomial, i64)>,
) {
    if s == factors.len() {
        let mut mm = cur;
        for (&(i, _), &k) in factors.iter().zip(chosen.iter()) {
            *mm.at(i, k) += 1;
        }
        out.push((mm, coeff));
        return;
    }
    let j = factors[s].1;
    for k in 1..=cur.m {
        let e = cur.get(j, k);
        if e == 0 {
            continue;
        }
        let mut next = cur.clone();
        *next.at(j, k) -= 1;
        chosen.push(k);
        differentiate(factors, s + 1, next, coeff * e as i64, chosen, out);
        chosen.pop();
    }
}

/// Normalized differential polarization (1/σ!)·P0(σ).
pub fn apply_weyl_differential<S: Scalar>(s: &ShiftMatrix, t: &SymTensor<S>) -> SymTensor<S> {
    let f = S::from_i64(shift_factorial(s));
    apply_weyl_unnormalized(s, t).scale(&(S::one() / f))
}

/// ∏_i C(a_i − Σ_{j≠i} σ_{j,i}, σ_{i,i}), with C(x, s) = 0 for x < s.
pub fn diagonal_reduction_factor(s: &ShiftMatrix, alpha: &DegreeVector) -> i64 {
    assert_eq!(s.n(), alpha.n());
    let mut acc: i64 = 1;
    for i in 1..=s.n() {
        let off: i64 = (1..=s.n()).filter(|&j| j != i).map(|j| s.get(j, i) as i64).sum();
        let top = alpha.get(i) - off;
        if top < 0 {
            return 0;
        }
        acc *= i64::try_from(binomial_u(top as u64, s.get(i, i) as u64)).expect("overflow");
    }
    acc
}
