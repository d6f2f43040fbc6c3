//! PBW normal forms in U(gl_N), expansion of polarizations in PBW monomials,
//! and the action on Verma modules with numeric highest weight.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::shift::{shift_factorial, sigma_zero, total_weight, ShiftMatrix};
use crate::symtensor::{apply_elementary, SymTensor};
use crate::verma::VermaTriple;
use crate::weyl_ops::{left_mul_elementary, PolarCombo};

/// Total order on the N² generators E_{i,j}: lowering (i > j) in a chosen order,
/// then Cartan E_{1,1}, …, E_{N,N}, then raising (i < j) lexicographically.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GeneratorOrder {
    n: usize,
    gens: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
}

impl GeneratorOrder {
    pub fn new(n: usize, lowering: Vec<(usize, usize)>) -> Result<Self> {
        let mut want: Vec<(usize, usize)> = lower_pairs(n);
        let mut got = lowering.clone();
        want.sort();
        got.sort();
        if want != got {
            return Err(Error::Parse(format!("lowering order must list each E_ij with i > j exactly once for n={n}")));
        }
        let mut gens = lowering;
        gens.extend((1..=n).map(|k| (k, k)));
        gens.extend((1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))));
        let index = gens.iter().enumerate().map(|(x, &g)| (g, x)).collect();
        Ok(GeneratorOrder { n, gens, index })
    }

    /// Lowering generators sorted by (i, j): E21, E31, E32, E41, ….
    pub fn lex(n: usize) -> Self {
        Self::new(n, lower_pairs(n)).expect("complete lowering list")
    }

    /// The reverse of [`GeneratorOrder::lex`] on the lowering block.
    pub fn reverse_lex(n: usize) -> Self {
        let mut l = lower_pairs(n);
        l.reverse();
        Self::new(n, l).expect("complete lowering list")
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn generators(&self) -> &[(usize, usize)] {
        &self.gens
    }
    pub fn position(&self, i: usize, j: usize) -> usize {
        self.index[&(i, j)]
    }
    pub fn n_lowering(&self) -> usize {
        self.n * (self.n - 1) / 2
    }
    fn is_raising(&self, x: usize) -> bool {
        x >= self.n_lowering() + self.n
    }
    fn is_cartan(&self, x: usize) -> bool {
        x >= self.n_lowering() && x < self.n_lowering() + self.n
    }
}

fn lower_pairs(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|i| (1..i).map(move |j| (i, j))).collect()
}

type Terms<S> = BTreeMap<Vec<u32>, S>;

fn add_into<S: Scalar>(acc: &mut Terms<S>, m: Vec<u32>, c: S) {
    if c.is_zero() {
        return;
    }
    match acc.get_mut(&m) {
        Some(v) => {
            *v = v.clone() + c;
            if v.is_zero() {
                acc.remove(&m);
            }
        }
        None => {
            acc.insert(m, c);
        }
    }
}

/// An element of U(gl_N) in PBW normal form: Σ c·∏ g_x^{e_x} over the ordered generators.
#[derive(Clone, PartialEq, Debug)]
pub struct UElement<S: Scalar> {
    order: Arc<GeneratorOrder>,
    terms: Terms<S>,
}

impl<S: Scalar> UElement<S> {
    pub fn one(order: Arc<GeneratorOrder>) -> Self {
        let len = order.gens.len();
        let mut terms = BTreeMap::new();
        terms.insert(vec![0; len], S::one());
        UElement { order, terms }
    }

    pub fn zero(order: Arc<GeneratorOrder>) -> Self {
        UElement { order, terms: BTreeMap::new() }
    }

    pub fn n(&self) -> usize {
        self.order.n
    }
    pub fn order(&self) -> &Arc<GeneratorOrder> {
        &self.order
    }
    pub fn terms(&self) -> &Terms<S> {
        &self.terms
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> S {
        self.terms.get(exps).cloned().unwrap_or_else(S::zero)
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: S) {
        assert_eq!(exps.len(), self.order.gens.len());
        add_into(&mut self.terms, exps, c);
    }

    pub fn add_scaled(&mut self, other: &Self, c: &S) {
        for (m, v) in &other.terms {
            add_into(&mut self.terms, m.clone(), v.clone() * c.clone());
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &-S::one());
        out
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = UElement::zero(self.order.clone());
        out.add_scaled(self, c);
        out
    }

    /// Exponents of the PBW monomial F_σ = ∏ E_{i,j}^{σ_{i,j}} (in this order).
    pub fn monomial_of_shift(order: &GeneratorOrder, s: &ShiftMatrix) -> Vec<u32> {
        let mut e = vec![0; order.gens.len()];
        for (i, j, v) in s.support() {
            e[order.position(i, j)] = v;
        }
        e
    }

    /// Generator sequence of a PBW monomial, left to right.
    pub fn word_of(&self, exps: &[u32]) -> Vec<(usize, usize)> {
        exps.iter().enumerate().flat_map(|(x, &e)| std::iter::repeat_n(self.order.gens[x], e as usize)).collect()
    }

    /// Filtration degree of a monomial (number of generator factors).
    pub fn degree(exps: &[u32]) -> u32 {
        exps.iter().sum()
    }

    pub fn uses_only_lowering(&self) -> bool {
        let nl = self.order.n_lowering();
        self.terms.keys().all(|m| m[nl..].iter().all(|&e| e == 0))
    }

    /// Action on S^{⊗N}V, each monomial read as a word of elementary polarizations.
    pub fn act_on_tensor(&self, t: &SymTensor<S>) -> SymTensor<S> {
        let mut out = SymTensor::zero(t.n(), t.m());
        for (m, c) in &self.terms {
            let img = self.word_of(m).iter().rev().fold(t.clone(), |acc, &(i, j)| apply_elementary(i, j, &acc));
            out.add_assign_scaled(&img, c);
        }
        out
    }
}

/// A vector Σ c·F v_λ of the Verma module, F a lowering PBW monomial.
#[derive(Clone, PartialEq, Debug)]
pub struct VermaVector<S: Scalar> {
    order: Arc<GeneratorOrder>,
    lambda: Vec<S>,
    terms: Terms<S>,
}

impl<S: Scalar> VermaVector<S> {
    /// The highest-weight vector v_λ.
    pub fn highest(order: Arc<GeneratorOrder>, lambda: Vec<S>) -> Self {
        assert_eq!(lambda.len(), order.n, "λ length differs from n");
        let mut terms = BTreeMap::new();
        terms.insert(vec![0; order.gens.len()], S::one());
        VermaVector { order, lambda, terms }
    }

    pub fn n(&self) -> usize {
        self.order.n
    }
    pub fn lambda(&self) -> &[S] {
        &self.lambda
    }
    pub fn order(&self) -> &Arc<GeneratorOrder> {
        &self.order
    }
    pub fn terms(&self) -> &Terms<S> {
        &self.terms
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Weight of a lowering monomial relative to λ (Σ e_a − e_b over factors E_{a,b}).
    pub fn relative_weight(&self, exps: &[u32]) -> Vec<i64> {
        let mut w = vec![0i64; self.order.n];
        for (x, &e) in exps.iter().enumerate() {
            let (a, b) = self.order.gens[x];
            w[a - 1] += e as i64;
            w[b - 1] -= e as i64;
        }
        w
    }
}

/// Memoized straightening and polarization expansion for one generator order.
pub struct PbwEngine<S: Scalar> {
    order: Arc<GeneratorOrder>,
    mul_memo: HashMap<(usize, Vec<u32>), Terms<S>>,
    polar_memo: HashMap<ShiftMatrix, Terms<S>>,
}

impl<S: Scalar> PbwEngine<S> {
    pub fn new(order: GeneratorOrder) -> Self {
        Self::with_order(Arc::new(order))
    }

    pub fn with_order(order: Arc<GeneratorOrder>) -> Self {
        PbwEngine { order, mul_memo: HashMap::new(), polar_memo: HashMap::new() }
    }

    pub fn order(&self) -> &Arc<GeneratorOrder> {
        &self.order
    }

    fn wrap(&self, terms: Terms<S>) -> UElement<S> {
        UElement { order: self.order.clone(), terms }
    }

    // g · (PBW monomial m), in normal form.
    fn gen_times(&mut self, g: usize, m: &[u32]) -> Terms<S> {
        if let Some(hit) = self.mul_memo.get(&(g, m.to_vec())) {
            return hit.clone();
        }
        let mut out = Terms::new();
        match m.iter().position(|&e| e > 0) {
            Some(f) if g > f => {
                // g·g_f·m'' = g_f·(g·m'') + [g, g_f]·m''
                let mut rest = m.to_vec();
                rest[f] -= 1;
                for (t, c) in self.gen_times(g, &rest) {
                    for (u, d) in self.gen_times(f, &t) {
                        add_into(&mut out, u, c.clone() * d);
                    }
                }
                for (h, k) in self.bracket(g, f) {
                    for (u, d) in self.gen_times(h, &rest) {
                        add_into(&mut out, u, S::from_i64(k) * d);
                    }
                }
            }
            _ => {
                let mut mm = m.to_vec();
                mm[g] += 1;
                out.insert(mm, S::one());
            }
        }
        self.mul_memo.insert((g, m.to_vec()), out.clone());
        out
    }

    // [E_ab, E_cd] = δ_bc E_ad − δ_da E_cb, as (generator index, coefficient).
    fn bracket(&self, x: usize, y: usize) -> Vec<(usize, i64)> {
        let (a, b) = self.order.gens[x];
        let (c, d) = self.order.gens[y];
        let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
        if b == c {
            *acc.entry(self.order.position(a, d)).or_insert(0) += 1;
        }
        if d == a {
            *acc.entry(self.order.position(c, b)).or_insert(0) -= 1;
        }
        acc.into_iter().filter(|&(_, k)| k != 0).collect()
    }

    fn word_times(&mut self, word: &[(usize, usize)], terms: &Terms<S>) -> Terms<S> {
        let mut cur = terms.clone();
        for &(i, j) in word.iter().rev() {
            let g = self.order.position(i, j);
            let mut next = Terms::new();
            for (m, c) in &cur {
                for (u, d) in self.gen_times(g, m) {
                    add_into(&mut next, u, c.clone() * d);
                }
            }
            cur = next;
        }
        cur
    }

    /// Normal form of a product of generators E_{i_1,j_1}⋯E_{i_L,j_L}.
    pub fn straighten(&mut self, word: &[(usize, usize)]) -> UElement<S> {
        let one = UElement::one(self.order.clone()).terms;
        let t = self.word_times(word, &one);
        self.wrap(t)
    }

    /// u · v in normal form.
    pub fn mul(&mut self, u: &UElement<S>, v: &UElement<S>) -> UElement<S> {
        let mut out = Terms::new();
        for (m, c) in &u.terms {
            let w = u.word_of(m);
            for (x, d) in self.word_times(&w, &v.terms) {
                add_into(&mut out, x, c.clone() * d);
            }
        }
        self.wrap(out)
    }

    /// P(σ) as an element of U(gl_N), by peeling the first nonzero entry E_{i,j}:
    /// σ_{i,j}·P(σ) = E_{i,j}·P(σ − E_{i,j}) − (lower-weight corrections).
    pub fn polar_to_pbw(&mut self, s: &ShiftMatrix) -> UElement<S> {
        let t = self.polar_terms(s);
        self.wrap(t)
    }

    fn polar_terms(&mut self, s: &ShiftMatrix) -> Terms<S> {
        assert_eq!(s.n(), self.order.n, "shift size differs from order size");
        if let Some(hit) = self.polar_memo.get(s) {
            return hit.clone();
        }
        let out = match s.support().next() {
            None => UElement::<S>::one(self.order.clone()).terms,
            Some((i, j, v)) => {
                let prev = s.offset(&[(i, j, -1)]).expect("entry is positive");
                let base = self.polar_terms(&prev);
                let mut acc = self.word_times(&[(i, j)], &base);
                let expansion = left_mul_elementary::<S>(i, j, &PolarCombo::single(prev));
                for (t, c) in expansion.terms() {
                    if t == s {
                        continue;
                    }
                    for (m, d) in self.polar_terms(t) {
                        add_into(&mut acc, m, -(c.clone() * d));
                    }
                }
                let inv = S::one() / S::from_i64(v as i64);
                acc.into_iter().map(|(m, c)| (m, c * inv.clone())).collect()
            }
        };
        self.polar_memo.insert(s.clone(), out.clone());
        out
    }

    pub fn combo_to_pbw(&mut self, c: &PolarCombo<S>) -> UElement<S> {
        let mut out = Terms::new();
        for (s, v) in c.terms() {
            for (m, d) in self.polar_terms(s) {
                add_into(&mut out, m, v.clone() * d);
            }
        }
        self.wrap(out)
    }

    /// u · v in the Verma module: normal-order, drop raising, evaluate Cartan at λ.
    pub fn act_on_verma(&mut self, u: &UElement<S>, v: &VermaVector<S>) -> VermaVector<S> {
        assert_eq!(*u.order, *v.order, "element and vector use different generator orders");
        let order = self.order.clone();
        let nl = order.n_lowering();
        let mut out = Terms::new();
        for (m, c) in &u.terms {
            let w = u.word_of(m);
            for (x, d) in self.word_times(&w, &v.terms) {
                if x.iter().enumerate().any(|(k, &e)| e > 0 && order.is_raising(k)) {
                    continue;
                }
                let mut factor = c.clone() * d;
                for (k, &e) in x.iter().enumerate() {
                    if order.is_cartan(k) {
                        for _ in 0..e {
                            factor = factor * v.lambda[k - nl].clone();
                        }
                    }
                }
                let mut low = x.clone();
                for e in low[nl..].iter_mut() {
                    *e = 0;
                }
                add_into(&mut out, low, factor);
            }
        }
        VermaVector { order, lambda: v.lambda.clone(), terms: out }
    }

    /// E_{p,p+1}·(c·v_λ) for each p, together with c·v_λ itself.
    pub fn singular_report(&mut self, c: &PolarCombo<S>, t: &VermaTriple<S>) -> SingularReport<S> {
        let g = self.combo_to_pbw(c);
        let v = VermaVector::highest(self.order.clone(), t.lambda.clone());
        let gv = self.act_on_verma(&g, &v);
        let mut want = vec![0i64; t.n];
        want[t.i - 1] = -(t.r as i64);
        want[t.j - 1] = t.r as i64;
        let weight_ok = gv.terms.keys().all(|m| gv.relative_weight(m) == want);
        let raised = (1..t.n)
            .map(|p| {
                let e = self.straighten(&[(p, p + 1)]);
                self.act_on_verma(&e, &gv)
            })
            .collect();
        SingularReport { vector: gv, raised, weight_ok }
    }

    /// True iff every E_{p,p+1} kills c·v_λ and c·v_λ has weight λ − r(e_i − e_j).
    /// The zero combination passes vacuously; see [`SingularReport::degenerate`].
    pub fn singular_check(&mut self, c: &PolarCombo<S>, t: &VermaTriple<S>) -> bool {
        self.singular_report(c, t).is_singular()
    }

    /// Coefficient of F_{σ0}, σ0 = sigma_zero(i, j, r), in the PBW form of c.
    pub fn shapovalov_coefficient(&mut self, c: &PolarCombo<S>, i: usize, j: usize, r: u32) -> Result<S> {
        let s0 = sigma_zero(self.order.n, i, j, r)?;
        let key = UElement::<S>::monomial_of_shift(&self.order, &s0);
        Ok(self.combo_to_pbw(c).coeff(&key))
    }

    /// P(σ) = F_σ/σ! + (terms of filtration degree < W(σ)).
    pub fn leading_coefficient_check(&mut self, s: &ShiftMatrix) -> bool {
        let u = self.polar_to_pbw(s);
        let lead = UElement::<S>::monomial_of_shift(&self.order, s);
        let w = total_weight(s);
        let want = S::one() / S::from_i64(shift_factorial(s));
        u.coeff(&lead) == want && u.terms.keys().all(|m| *m == lead || UElement::<S>::degree(m) < w)
    }
}

/// Outcome of a singular-vector test.
#[derive(Clone, Debug)]
pub struct SingularReport<S: Scalar> {
    /// c·v_λ.
    pub vector: VermaVector<S>,
    /// E_{p,p+1}·c·v_λ for p = 1..N−1.
    pub raised: Vec<VermaVector<S>>,
    pub weight_ok: bool,
}

impl<S: Scalar> SingularReport<S> {
    pub fn is_singular(&self) -> bool {
        self.weight_ok && self.raised.iter().all(VermaVector::is_zero)
    }
    /// c·v_λ = 0.
    pub fn degenerate(&self) -> bool {
        self.vector.is_zero()
    }
}

/// One-shot wrappers building a fresh engine.
pub fn straighten<S: Scalar>(word: &[(usize, usize)], order: &GeneratorOrder) -> UElement<S> {
    PbwEngine::new(order.clone()).straighten(word)
}

pub fn polar_to_pbw<S: Scalar>(s: &ShiftMatrix, order: &GeneratorOrder) -> UElement<S> {
    PbwEngine::new(order.clone()).polar_to_pbw(s)
}

pub fn combo_to_pbw<S: Scalar>(c: &PolarCombo<S>, order: &GeneratorOrder) -> UElement<S> {
    PbwEngine::new(order.clone()).combo_to_pbw(c)
}

pub fn act_on_verma<S: Scalar>(u: &UElement<S>, v: &VermaVector<S>) -> VermaVector<S> {
    PbwEngine::with_order(u.order.clone()).act_on_verma(u, v)
}

/// Uses the lexicographic lowering order.
pub fn singular_check<S: Scalar>(c: &PolarCombo<S>, t: &VermaTriple<S>) -> bool {
    PbwEngine::new(GeneratorOrder::lex(t.n)).singular_check(c, t)
}

pub fn shapovalov_coefficient<S: Scalar>(
    c: &PolarCombo<S>,
    i: usize,
    j: usize,
    r: u32,
    order: &GeneratorOrder,
) -> Result<S> {
    PbwEngine::new(order.clone()).shapovalov_coefficient(c, i, j, r)
}

pub fn leading_coefficient_check<S: Scalar>(s: &ShiftMatrix, order: &GeneratorOrder) -> bool {
    PbwEngine::<S>::new(order.clone()).leading_coefficient_check(s)
}
