//! Independent brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use weylpol::bruhat::Permutation;
use weylpol::shift::ShiftMatrix;
use weylpol::symtensor::{Monomial, SymTensor};
use weylpol::{Scalar, Q};

pub fn q(v: i64) -> Q {
    Q::from_i64(v)
}

pub fn qs(s: &str) -> Q {
    Q::parse_ratio(s).unwrap()
}

pub fn mono(rows: &[&[u32]]) -> Monomial {
    Monomial::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

pub fn lam(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| q(x)).collect()
}

pub fn perm(s: &str) -> Permutation {
    Permutation::new(s.chars().map(|c| c.to_digit(10).unwrap() as usize).collect()).unwrap()
}

/// All k-subsets of `items`.
fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if items.len() < k {
        return vec![];
    }
    let mut out = Vec::new();
    for x in 0..items.len() {
        for mut rest in subsets(&items[x + 1..], k - 1) {
            rest.insert(0, items[x]);
            out.push(rest);
        }
    }
    out
}

/// P(σ) on one monomial by literally choosing disjoint sets of distinguishable
/// letters in each source slot and moving them (diagonal picks stay put).
pub fn letter_polarization(s: &ShiftMatrix, m: &Monomial) -> BTreeMap<Monomial, i64> {
    let n = s.n();
    // slot j → list of letters (variable indices), one per occurrence
    let letters: Vec<Vec<usize>> =
        (1..=n).map(|j| (1..=m.m()).flat_map(|v| std::iter::repeat_n(v, m.get(j, v) as usize)).collect()).collect();
    let cells: Vec<(usize, usize)> = (1..=n).flat_map(|j| (1..=n).map(move |i| (i, j))).collect();
    let mut out = BTreeMap::new();
    let mut used: Vec<Vec<bool>> = letters.iter().map(|l| vec![false; l.len()]).collect();
    let mut moves: Vec<(usize, usize, usize)> = Vec::new(); // (target slot, source slot, letter)
    rec(s, &letters, &cells, 0, &mut used, &mut moves, m, &mut out);
    out.retain(|_, v| *v != 0);
    out
}

#[allow(clippy::too_many_arguments)]
fn rec(
    s: &ShiftMatrix,
    letters: &[Vec<usize>],
    cells: &[(usize, usize)],
    at: usize,
    used: &mut Vec<Vec<bool>>,
    moves: &mut Vec<(usize, usize, usize)>,
    m: &Monomial,
    out: &mut BTreeMap<Monomial, i64>,
) {
    if at == cells.len() {
        let mut rows = m.rows();
        for &(_, j, v) in moves.iter() {
            rows[j - 1][v - 1] -= 1;
        }
        for &(i, _, v) in moves.iter() {
            rows[i - 1][v - 1] += 1;
        }
        *out.entry(Monomial::from_rows(&rows).unwrap()).or_insert(0) += 1;
        return;
    }
    let (i, j) = cells[at];
    let k = s.get(i, j) as usize;
    let free: Vec<usize> = (0..letters[j - 1].len()).filter(|&p| !used[j - 1][p]).collect();
    for pick in subsets(&free, k) {
        for &p in &pick {
            used[j - 1][p] = true;
            moves.push((i, j, letters[j - 1][p]));
        }
        rec(s, letters, cells, at + 1, used, moves, m, out);
        for &p in &pick {
            used[j - 1][p] = false;
            moves.pop();
        }
    }
}

pub fn letter_apply(s: &ShiftMatrix, t: &SymTensor<Q>) -> SymTensor<Q> {
    let mut out = SymTensor::zero(t.n(), t.m());
    for (m, c) in t.terms() {
        for (mm, k) in letter_polarization(s, m) {
            out.add_term(mm, c.clone() * q(k));
        }
    }
    out
}

/// TERM(i, j, r) by exhaustive search over all block-supported lower matrices with entries ≤ r.
pub fn brute_term_set(n: usize, i: usize, j: usize, r: u32) -> Vec<ShiftMatrix> {
    let cells: Vec<(usize, usize)> = (i..=j).flat_map(|p| (i..p).map(move |q| (p, q))).collect();
    let mut out = Vec::new();
    let total = (r as usize + 1).pow(cells.len() as u32);
    for code in 0..total {
        let mut c = code;
        let mut s = ShiftMatrix::zero(n);
        for &(p, qq) in &cells {
            s.set(p, qq, (c % (r as usize + 1)) as u32);
            c /= r as usize + 1;
        }
        let out_i: u32 = (i + 1..=j).map(|l| s.get(l, i)).sum();
        let conserve = (i + 1..j).all(|k| s.row_sum(k) == s.col_sum(k));
        if out_i == r && conserve {
            out.push(s);
        }
    }
    out.sort();
    out
}

/// Number of squares w1 → {w2, w3} → w4 by brute force over covers.
pub fn brute_square_count(n: usize) -> usize {
    let perms = Permutation::all(n);
    let covers = |a: &Permutation, b: &Permutation| {
        let diff: Vec<usize> = (1..=n).filter(|&k| a.get(k) != b.get(k)).collect();
        diff.len() == 2 && a.length() == b.length() + 1
    };
    let mut count = 0;
    for w1 in &perms {
        for w4 in &perms {
            if w1.length() != w4.length() + 2 {
                continue;
            }
            let mids = perms.iter().filter(|w| covers(w1, w) && covers(w, w4)).count();
            if mids == 2 {
                count += 1;
            } else if mids > 2 {
                panic!("interval of length 2 with {mids} middle elements");
            }
        }
    }
    count
}
