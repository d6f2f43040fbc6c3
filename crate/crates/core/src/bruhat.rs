//! Symmetric-group combinatorics: inversion length, Bruhat covers ("arrow
//! pairs"), squares, and the BGG signature built along a maximal chain.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation in one-line notation π(1), …, π(N).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation(Vec<usize>);

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

impl Permutation {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v < 1 || v > n || seen[v] {
                return Err(Error::Parse(format!("{values:?} is not a permutation of 1..={n}")));
            }
            seen[v] = true;
        }
        if n == 0 {
            return Err(Error::Parse("empty permutation".into()));
        }
        Ok(Permutation(values))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    pub fn longest(n: usize) -> Self {
        Permutation((1..=n).rev().collect())
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// π(k), 1-based.
    pub fn get(&self, k: usize) -> usize {
        self.0[k - 1]
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let v = &self.0;
        (0..v.len()).map(|a| (a + 1..v.len()).filter(|&b| v[a] > v[b]).count()).sum()
    }

    /// π with positions i and j exchanged (right multiplication by (i j)).
    pub fn swap_positions(&self, i: usize, j: usize) -> Self {
        let mut v = self.0.clone();
        v.swap(i - 1, j - 1);
        Permutation(v)
    }

    /// All permutations of 1..=n, lexicographic.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut cur: Vec<usize> = (1..=n).collect();
        let mut out = vec![Permutation(cur.clone())];
        while next_permutation(&mut cur) {
            out.push(Permutation(cur.clone()));
        }
        out
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(a) = (1..v.len()).rev().find(|&a| v[a - 1] < v[a]) else {
        return false;
    };
    let b = (a..v.len()).rev().find(|&b| v[b] > v[a - 1]).expect("pivot exists");
    v.swap(a - 1, b);
    v[a..].reverse();
    true
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.n() > 9 { "," } else { "" };
        let s: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "[{}]", s.join(sep))
    }
}

/// A Bruhat cover π → π′ = π·(i j), i < j, with multiplicity r = π(i) − π(j).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ArrowPair {
    pub source: Permutation,
    pub target: Permutation,
    pub i: usize,
    pub j: usize,
    pub r: u32,
}

impl ArrowPair {
    /// Validates π(i) > π(j) and l(π·(i j)) = l(π) − 1.
    pub fn new(source: Permutation, i: usize, j: usize) -> Result<Self> {
        let n = source.n();
        if !(1 <= i && i < j && j <= n) {
            return Err(Error::Range(format!("transposition ({i},{j}) invalid for n={n}")));
        }
        let target = source.swap_positions(i, j);
        if source.get(i) <= source.get(j) || target.length() + 1 != source.length() {
            return Err(Error::Range(format!("{source} -> ({i},{j}) is not a Bruhat cover")));
        }
        let r = (source.get(i) - source.get(j)) as u32;
        Ok(ArrowPair { source, target, i, j, r })
    }

    /// Finds the transposition linking two permutations, if they form an arrow pair.
    pub fn between(source: &Permutation, target: &Permutation) -> Result<Self> {
        let diff: Vec<usize> = (1..=source.n()).filter(|&k| source.get(k) != target.get(k)).collect();
        match diff.as_slice() {
            [i, j] => ArrowPair::new(source.clone(), *i, *j),
            _ => Err(Error::Range(format!("{source} and {target} differ by no single transposition"))),
        }
    }
}

impl fmt::Display for ArrowPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->({},{}){}", self.source, self.i, self.j, self.target)
    }
}

/// All arrow pairs of S_n, ordered by l(source) descending, then source, then target.
pub fn arrow_pairs(n: usize) -> Vec<ArrowPair> {
    let mut out = Vec::new();
    for p in Permutation::all(n) {
        for i in 1..=n {
            for j in i + 1..=n {
                if let Ok(a) = ArrowPair::new(p.clone(), i, j) {
                    out.push(a);
                }
            }
        }
    }
    out.sort_by(|a, b| {
        b.source.length().cmp(&a.source.length()).then_with(|| (&a.source, &a.target).cmp(&(&b.source, &b.target)))
    });
    out
}

/// Squares (w1→w2, w2→w4, w1→w3, w3→w4) with w2 < w3, one per length-2 interval.
pub fn squares(n: usize) -> Vec<[ArrowPair; 4]> {
    let arrows = arrow_pairs(n);
    let mut from: BTreeMap<&Permutation, Vec<&ArrowPair>> = BTreeMap::new();
    for a in &arrows {
        from.entry(&a.source).or_default().push(a);
    }
    let mut out = Vec::new();
    for (w1, firsts) in &from {
        let mut paths: BTreeMap<&Permutation, Vec<(&ArrowPair, &ArrowPair)>> = BTreeMap::new();
        for a in firsts {
            for b in from.get(&a.target).map(Vec::as_slice).unwrap_or(&[]) {
                paths.entry(&b.target).or_default().push((a, b));
            }
        }
        let _ = w1;
        for ps in paths.values() {
            for x in 0..ps.len() {
                for y in x + 1..ps.len() {
                    let (a, b) = ps[x];
                    let (c, d) = ps[y];
                    out.push([a.clone(), b.clone(), c.clone(), d.clone()]);
                }
            }
        }
    }
    out
}

/// Positions k of the successive swaps (k, k+1) along the canonical chain:
/// blocks [n−1], [n−2, n−1], …, [1, …, n−1].
pub fn canonical_chain_steps(n: usize) -> Vec<usize> {
    (1..n).rev().flat_map(|b| b..n).collect()
}

/// w_0 = identity, …, w_{C(n,2)} = longest element.
pub fn canonical_chain(n: usize) -> Vec<Permutation> {
    let mut w = Permutation::identity(n);
    let mut out = vec![w.clone()];
    for k in canonical_chain_steps(n) {
        w = w.swap_positions(k, k + 1);
        out.push(w.clone());
    }
    out
}

/// The Bruhat lower interval {v ≤ w}, found by descending through arrow pairs.
pub fn lower_interval(w: &Permutation) -> BTreeSet<Permutation> {
    let n = w.n();
    let mut seen = BTreeSet::from([w.clone()]);
    let mut queue = VecDeque::from([w.clone()]);
    while let Some(v) = queue.pop_front() {
        for i in 1..=n {
            for j in i + 1..=n {
                if let Ok(a) = ArrowPair::new(v.clone(), i, j) {
                    if seen.insert(a.target.clone()) {
                        queue.push_back(a.target);
                    }
                }
            }
        }
    }
    seen
}

/// Successive differences P(w_p) \ P(w_{p−1}) along the canonical chain.
pub fn chain_filtration(n: usize) -> Vec<Vec<Permutation>> {
    let mut prev = BTreeSet::new();
    canonical_chain(n)
        .iter()
        .map(|w| {
            let cur = lower_interval(w);
            let fresh: Vec<Permutation> = cur.difference(&prev).cloned().collect();
            prev = cur;
            fresh
        })
        .collect()
}

/// A ±1 labeling of arrow pairs.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignatureTable {
    n: usize,
    signs: BTreeMap<(Permutation, Permutation), i8>,
}

impl SignatureTable {
    pub fn new(n: usize) -> Self {
        SignatureTable { n, signs: BTreeMap::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sign(&self, a: &ArrowPair) -> Option<i8> {
        self.signs.get(&(a.source.clone(), a.target.clone())).copied()
    }

    pub fn set(&mut self, a: &ArrowPair, s: i8) {
        assert!(s == 1 || s == -1, "signs are ±1");
        self.signs.insert((a.source.clone(), a.target.clone()), s);
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    /// Entries in the order of [`arrow_pairs`].
    pub fn entries(&self) -> Vec<(ArrowPair, i8)> {
        arrow_pairs(self.n).into_iter().filter_map(|a| self.sign(&a).map(|s| (a, s))).collect()
    }

    /// s′(w, w′) = f(w)·f(w′)·s(w, w′) with f = −1 on `flip`; preserves square products.
    pub fn twisted(&self, flip: &BTreeSet<Permutation>) -> Self {
        let f = |w: &Permutation| if flip.contains(w) { -1 } else { 1 };
        SignatureTable {
            n: self.n,
            signs: self.signs.iter().map(|((a, b), &s)| ((a.clone(), b.clone()), s * f(a) * f(b))).collect(),
        }
    }
}

/// The signature built inductively along [`canonical_chain`] (Cases I–IV).
pub fn akin_signature(n: usize) -> Result<SignatureTable> {
    if n < 1 {
        return Err(Error::Range("n must be positive".into()));
    }
    let chain = canonical_chain(n);
    let steps = canonical_chain_steps(n);
    let mut table = SignatureTable::new(n);
    let mut prev = lower_interval(&chain[0]);
    for (p, &k) in steps.iter().enumerate() {
        let cur = lower_interval(&chain[p + 1]);
        let lookup = |t: &SignatureTable, a: &Permutation, b: &Permutation| -> Result<i8> {
            t.signs
                .get(&(a.clone(), b.clone()))
                .copied()
                .ok_or_else(|| Error::Contract(format!("missing sign for {a}->{b} at chain step {p}")))
        };
        let mut fresh = Vec::new();
        for w in cur.difference(&prev) {
            for i in 1..=n {
                for j in i + 1..=n {
                    let Ok(a) = ArrowPair::new(w.clone(), i, j) else { continue };
                    let s = if (i, j) == (k, k + 1) {
                        1
                    } else {
                        let ws = w.swap_positions(k, k + 1);
                        let w2s = a.target.swap_positions(k, k + 1);
                        let base = -lookup(&table, &ws, &w2s)?;
                        if prev.contains(&a.target) {
                            base * lookup(&table, &a.target, &w2s)?
                        } else {
                            base
                        }
                    };
                    fresh.push((a, s));
                }
            }
        }
        for (a, s) in fresh {
            table.set(&a, s);
        }
        prev = cur;
    }
    if !verify_square_property(&table) {
        return Err(Error::Contract(format!("signature for n={n} violates the square property")));
    }
    Ok(table)
}

/// True iff every square has sign product −1 (and every arrow has a sign).
pub fn verify_square_property(t: &SignatureTable) -> bool {
    squares(t.n).iter().all(|sq| {
        let prod: Option<i8> = sq.iter().try_fold(1i8, |acc, a| t.sign(a).map(|s| acc * s));
        prod == Some(-1)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> Permutation {
        Permutation::new(s.chars().map(|c| c.to_digit(10).unwrap() as usize).collect()).unwrap()
    }

    #[test]
    fn arrows_small() {
        let a = arrow_pairs(2);
        assert_eq!(a.len(), 1);
        assert_eq!((a[0].i, a[0].j, a[0].r), (1, 2, 1));
        assert_eq!(arrow_pairs(3).len(), 8);
        let a = ArrowPair::new(perm("2341"), 2, 4).unwrap();
        assert_eq!(a.target, perm("2143"));
        assert_eq!(a.r, 2);
        assert!(arrow_pairs(4).contains(&a));
        assert!(ArrowPair::new(perm("321"), 1, 3).is_err());
    }

    #[test]
    fn chains() {
        let c: Vec<String> = canonical_chain(4).iter().map(|p| p.to_string()).collect();
        assert_eq!(c, ["[1234]", "[1243]", "[1423]", "[1432]", "[4132]", "[4312]", "[4321]"]);
        let c: Vec<String> = canonical_chain(3).iter().map(|p| p.to_string()).collect();
        assert_eq!(c, ["[123]", "[132]", "[312]", "[321]"]);
        assert_eq!(canonical_chain(2).len(), 2);
    }

    #[test]
    fn filtration_n3() {
        let f = chain_filtration(3);
        let f: Vec<Vec<String>> = f.iter().map(|l| l.iter().map(|p| p.to_string()).collect()).collect();
        assert_eq!(f, vec![vec!["[123]"], vec!["[132]"], vec!["[213]", "[312]"], vec!["[231]", "[321]"]]);
    }

    #[test]
    fn flipped_sign_breaks_squares() {
        let mut t = akin_signature(3).unwrap();
        let a = &squares(3)[0][0];
        t.set(a, -t.sign(a).unwrap());
        assert!(!verify_square_property(&t));
    }

    #[test]
    fn n1_and_n2() {
        assert!(akin_signature(1).unwrap().is_empty());
        let t = akin_signature(2).unwrap();
        assert_eq!(t.entries().iter().map(|e| e.1).collect::<Vec<_>>(), vec![1]);
        assert!(squares(2).is_empty());
    }
}
