//! N-shifts: nonnegative integer N×N matrices indexing Weyl polarizations,
//! their statistics, the TERM sets and σ-selections.
//!
//! All indices in the public API are 1-based.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{factorial, multinomial_with_rest};

/// An effective N-shift σ. Entries are never negative: arithmetic that would
/// produce a negative entry yields `None` instead.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(try_from = "ShiftWire", into = "ShiftWire")]
pub struct ShiftMatrix {
    n: usize,
    entries: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct ShiftWire {
    n: usize,
    entries: Vec<Vec<u32>>,
}

impl TryFrom<ShiftWire> for ShiftMatrix {
    type Error = Error;
    fn try_from(w: ShiftWire) -> Result<Self> {
        let m = ShiftMatrix::from_rows(&w.entries)?;
        if m.n != w.n {
            return Err(Error::Shape(format!("n = {} but {} rows given", w.n, m.n)));
        }
        Ok(m)
    }
}

impl From<ShiftMatrix> for ShiftWire {
    fn from(m: ShiftMatrix) -> Self {
        ShiftWire { n: m.n, entries: m.rows() }
    }
}

impl ShiftMatrix {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "shift size must be positive");
        ShiftMatrix { n, entries: vec![0; n * n] }
    }

    /// The unit shift E_{i,j}.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        Self::from_terms(n, &[(i, j, 1)])
    }

    /// Σ v·E_{i,j} over the given triples.
    pub fn from_terms(n: usize, terms: &[(usize, usize, u32)]) -> Self {
        let mut m = Self::zero(n);
        for &(i, j, v) in terms {
            let cur = m.get(i, j);
            m.set(i, j, cur + v);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Shape("empty shift matrix".into()));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Shape("shift matrix must be square".into()));
        }
        Ok(ShiftMatrix { n, entries: rows.concat() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        assert!((1..=self.n).contains(&i) && (1..=self.n).contains(&j), "index ({i},{j}) outside 1..={}", self.n);
        (i - 1) * self.n + (j - 1)
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[self.idx(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        let k = self.idx(i, j);
        self.entries[k] = v;
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.entries.chunks(self.n).map(<[u32]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    /// Nonzero entries as (i, j, value), row-major.
    pub fn support(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        let n = self.n;
        self.entries.iter().enumerate().filter(|(_, &v)| v > 0).map(move |(k, &v)| (k / n + 1, k % n + 1, v))
    }

    pub fn add_unit(&self, i: usize, j: usize) -> Self {
        let mut m = self.clone();
        m.set(i, j, self.get(i, j) + 1);
        m
    }

    pub fn plus(&self, other: &ShiftMatrix) -> Self {
        assert_eq!(self.n, other.n);
        ShiftMatrix { n: self.n, entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect() }
    }

    /// Applies signed unit changes; `None` if any entry would become negative.
    pub fn offset(&self, changes: &[(usize, usize, i64)]) -> Option<Self> {
        let mut vals: Vec<i64> = self.entries.iter().map(|&e| e as i64).collect();
        for &(i, j, d) in changes {
            vals[self.idx(i, j)] += d;
        }
        if vals.iter().any(|&v| v < 0) {
            return None;
        }
        Some(ShiftMatrix { n: self.n, entries: vals.into_iter().map(|v| v as u32).collect() })
    }

    pub fn row_sum(&self, i: usize) -> u32 {
        (1..=self.n).map(|l| self.get(i, l)).sum()
    }

    pub fn col_sum(&self, i: usize) -> u32 {
        (1..=self.n).map(|l| self.get(l, i)).sum()
    }

    pub fn is_strictly_lower(&self) -> bool {
        self.support().all(|(i, j, _)| i > j)
    }

    pub fn is_reduced(&self) -> bool {
        (1..=self.n).all(|i| self.get(i, i) == 0)
    }
}

impl fmt::Display for ShiftMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.support().map(|(i, j, v)| if v == 1 { format!("E{i},{j}") } else { format!("{v}E{i},{j}") }).collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// σ! = ∏ σ_{p,q}!.
pub fn shift_factorial(s: &ShiftMatrix) -> i64 {
    s.entries.iter().map(|&e| factorial(e)).product()
}

/// wt_i = (row sum i) − (column sum i).
pub fn weight_vector(s: &ShiftMatrix) -> Vec<i64> {
    (1..=s.n).map(|i| s.row_sum(i) as i64 - s.col_sum(i) as i64).collect()
}

/// W(σ) = Σ σ_{i,j}.
pub fn total_weight(s: &ShiftMatrix) -> u32 {
    s.entries.iter().sum()
}

/// σ with its diagonal zeroed.
pub fn reduced(s: &ShiftMatrix) -> ShiftMatrix {
    let mut m = s.clone();
    for i in 1..=s.n {
        m.set(i, i, 0);
    }
    m
}

/// Degrees α = (a_1, …, a_N); a negative degree denotes the zero space.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct DegreeVector {
    pub degrees: Vec<i64>,
}

impl DegreeVector {
    pub fn new(degrees: Vec<i64>) -> Self {
        assert!(!degrees.is_empty(), "degree vector must be nonempty");
        DegreeVector { degrees }
    }
    pub fn n(&self) -> usize {
        self.degrees.len()
    }
    /// a_i, 1-based.
    pub fn get(&self, i: usize) -> i64 {
        self.degrees[i - 1]
    }
    pub fn is_effective(&self) -> bool {
        self.degrees.iter().all(|&a| a >= 0)
    }
    pub fn is_partition(&self) -> bool {
        self.is_effective() && self.degrees.windows(2).all(|w| w[0] >= w[1])
    }
}

fn check_range(n: usize, i: usize, j: usize) -> Result<()> {
    if i < 1 || j > n {
        return Err(Error::Index(format!("({i},{j}) outside 1..={n}")));
    }
    if i >= j {
        return Err(Error::Range(format!("need i < j, got i={i}, j={j}")));
    }
    Ok(())
}

/// TERM(i, j, r): integer flows of value r from i to j along edges q → p (q < p),
/// recorded as σ_{p,q}. Sorted row-major lexicographically.
pub fn term_set(n: usize, i: usize, j: usize, r: u32) -> Result<Vec<ShiftMatrix>> {
    check_range(n, i, j)?;
    if r == 0 {
        return Err(Error::Range("r must be positive".into()));
    }
    let mut out = Vec::new();
    let mut cur = ShiftMatrix::zero(n);
    flow_from(i, j, i, r, &mut cur, &mut out);
    out.sort();
    Ok(out)
}

// Distribute the outflow of node `k` over targets k+1..=j, then continue at k+1.
fn flow_from(i: usize, j: usize, k: usize, out_k: u32, cur: &mut ShiftMatrix, acc: &mut Vec<ShiftMatrix>) {
    if k == j {
        acc.push(cur.clone());
        return;
    }
    split_among(i, j, k, k + 1, out_k, cur, acc);
}

fn split_among(i: usize, j: usize, k: usize, p: usize, left: u32, cur: &mut ShiftMatrix, acc: &mut Vec<ShiftMatrix>) {
    if p == j {
        cur.set(j, k, left);
        let next_in = cur.row_sum(k + 1);
        flow_from(i, j, k + 1, next_in, cur, acc);
        cur.set(j, k, 0);
        return;
    }
    for v in 0..=left {
        cur.set(p, k, v);
        split_among(i, j, k, p + 1, left - v, cur, acc);
    }
    cur.set(p, k, 0);
}

/// Membership test for TERM(i, j, r) without enumeration.
pub fn in_term_set(s: &ShiftMatrix, i: usize, j: usize, r: u32) -> bool {
    let n = s.n;
    if !(1 <= i && i < j && j <= n) || r == 0 {
        return false;
    }
    let inside = s.support().all(|(p, q, _)| i <= q && q < p && p <= j);
    inside && (i + 1..=j).map(|l| s.get(l, i)).sum::<u32>() == r && (i + 1..j).all(|k| s.col_sum(k) == s.row_sum(k))
}

/// R_k(σ): the common value of column-k and row-k sums.
pub fn route_flow(s: &ShiftMatrix, k: usize) -> Result<u32> {
    if k < 1 || k > s.n {
        return Err(Error::Index(format!("k={k} outside 1..={}", s.n)));
    }
    let (c, r) = (s.col_sum(k), s.row_sum(k));
    if c != r {
        return Err(Error::Contract(format!("column {k} sums to {c} but row {k} sums to {r}")));
    }
    Ok(c)
}

/// σ0(i, j, r) = r·(E_{i+1,i} + … + E_{j,j−1}).
pub fn sigma_zero(n: usize, i: usize, j: usize, r: u32) -> Result<ShiftMatrix> {
    check_range(n, i, j)?;
    let terms: Vec<_> = (i..j).map(|k| (k + 1, k, r)).collect();
    Ok(ShiftMatrix::from_terms(n, &terms))
}

/// Number of σ-selections for degrees α (0 if some column sum exceeds a_i).
pub fn selection_count(s: &ShiftMatrix, alpha: &DegreeVector) -> u128 {
    assert_eq!(s.n, alpha.n());
    let mut acc: u128 = 1;
    for i in 1..=s.n {
        let a = alpha.get(i);
        let col: Vec<u32> = (1..=s.n).map(|l| s.get(l, i)).collect();
        if a < 0 {
            return 0;
        }
        acc *= multinomial_with_rest(a as u32, &col);
        if acc == 0 {
            return 0;
        }
    }
    acc
}

/// A σ-selection: disjoint position sets C_{i,j} ⊆ {1..a_j} with |C_{i,j}| = σ_{i,j}.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct SelectionFamily {
    n: usize,
    sets: Vec<BTreeSet<u32>>,
}

impl SelectionFamily {
    /// C_{i,j}, 1-based.
    pub fn get(&self, i: usize, j: usize) -> &BTreeSet<u32> {
        &self.sets[(i - 1) * self.n + (j - 1)]
    }
    pub fn n(&self) -> usize {
        self.n
    }
    /// C_{0,j}: positions of slot j left in place.
    pub fn untouched(&self, j: usize, a_j: u32) -> BTreeSet<u32> {
        let used: BTreeSet<u32> = (1..=self.n).flat_map(|i| self.get(i, j).iter().copied()).collect();
        (1..=a_j).filter(|x| !used.contains(x)).collect()
    }
}

/// All σ-selections for degrees α, in a deterministic order.
pub fn enumerate_selections(s: &ShiftMatrix, alpha: &DegreeVector) -> Vec<SelectionFamily> {
    assert_eq!(s.n, alpha.n());
    let n = s.n;
    if alpha.degrees.iter().any(|&a| a < 0) {
        return Vec::new();
    }
    // Per column j: all ways to choose disjoint C_{1,j}, …, C_{N,j}.
    let per_col: Vec<Vec<Vec<BTreeSet<u32>>>> = (1..=n)
        .map(|j| {
            let sizes: Vec<u32> = (1..=n).map(|i| s.get(i, j)).collect();
            let mut out = Vec::new();
            disjoint_choices(&sizes, &(1..=alpha.get(j) as u32).collect(), &mut Vec::new(), &mut out);
            out
        })
        .collect();
    let mut families = vec![vec![BTreeSet::new(); n * n]];
    for (jj, choices) in per_col.iter().enumerate() {
        let mut next = Vec::with_capacity(families.len() * choices.len());
        for fam in &families {
            for ch in choices {
                let mut f = fam.clone();
                for (ii, set) in ch.iter().enumerate() {
                    f[ii * n + jj] = set.clone();
                }
                next.push(f);
            }
        }
        families = next;
    }
    families.into_iter().map(|sets| SelectionFamily { n, sets }).collect()
}

fn disjoint_choices(
    sizes: &[u32],
    free: &BTreeSet<u32>,
    cur: &mut Vec<BTreeSet<u32>>,
    out: &mut Vec<Vec<BTreeSet<u32>>>,
) {
    if cur.len() == sizes.len() {
        out.push(cur.clone());
        return;
    }
    let want = sizes[cur.len()] as usize;
    let pool: Vec<u32> = free.iter().copied().collect();
    for subset in subsets_of_size(&pool, want) {
        let rest: BTreeSet<u32> = free.difference(&subset).copied().collect();
        cur.push(subset);
        disjoint_choices(sizes, &rest, cur, out);
        cur.pop();
    }
}

fn subsets_of_size(pool: &[u32], k: usize) -> Vec<BTreeSet<u32>> {
    if k == 0 {
        return vec![BTreeSet::new()];
    }
    if pool.len() < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (idx, &x) in pool.iter().enumerate() {
        for mut rest in subsets_of_size(&pool[idx + 1..], k - 1) {
            rest.insert(x);
            out.push(rest);
        }
    }
    out
}
