//! Sparse exact matrices and fraction-free rank.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Q;

/// Sparse matrix over Q. Indices are 0-based.
#[derive(Clone, PartialEq, Debug)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Q>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }
    pub fn entries(&self) -> &BTreeMap<(usize, usize), Q> {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> Q {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: Q) {
        assert!(r < self.rows && c < self.cols, "entry ({r},{c}) outside {}×{}", self.rows, self.cols);
        if v.is_zero() {
            return;
        }
        let e = self.entries.entry((r, c)).or_insert_with(Q::zero);
        *e += v;
        if e.is_zero() {
            self.entries.remove(&(r, c));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut by_row: BTreeMap<usize, Vec<(usize, &Q)>> = BTreeMap::new();
        for ((r, c), v) in &other.entries {
            by_row.entry(*r).or_default().push((*c, v));
        }
        let mut out = RationalMatrix::zeros(self.rows, other.cols);
        for ((r, k), a) in &self.entries {
            if let Some(row) = by_row.get(k) {
                for (c, b) in row {
                    out.add_to(*r, *c, a * *b);
                }
            }
        }
        out
    }

    /// Exact rank by fraction-free row reduction over the integers.
    ///
    /// Each row is scaled to a primitive integer vector, then reduced against the
    /// stored pivot rows by cross-multiplication (pivot = first nonzero column).
    pub fn rank(&self) -> usize {
        let mut rows: BTreeMap<usize, Vec<(usize, Q)>> = BTreeMap::new();
        for ((r, c), v) in &self.entries {
            rows.entry(*r).or_default().push((*c, v.clone()));
        }
        let mut pivots: BTreeMap<usize, Vec<(usize, BigInt)>> = BTreeMap::new();
        for row in rows.into_values() {
            let mut cur = primitive(clear_denominators(&row));
            while let Some((lead, _)) = cur.first() {
                match pivots.get(lead) {
                    Some(p) => cur = primitive(eliminate(&cur, p)),
                    None => {
                        pivots.insert(*lead, cur);
                        break;
                    }
                }
            }
        }
        pivots.len()
    }
}

fn clear_denominators(row: &[(usize, Q)]) -> Vec<(usize, BigInt)> {
    let l = row.iter().fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    row.iter().map(|(c, v)| (*c, v.numer() * (&l / v.denom()))).collect()
}

fn primitive(mut row: Vec<(usize, BigInt)>) -> Vec<(usize, BigInt)> {
    let g = row.iter().fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
    if let Some((_, v)) = row.first() {
        if v.is_negative() {
            for (_, v) in row.iter_mut() {
                *v = -&*v;
            }
        }
    }
    row
}

// p_lead·a − a_lead·p; both rows share their leading column, which cancels.
fn eliminate(a: &[(usize, BigInt)], p: &[(usize, BigInt)]) -> Vec<(usize, BigInt)> {
    let (al, pl) = (&a[0].1, &p[0].1);
    let g = al.gcd(pl);
    let (fa, fp) = (pl / &g, al / &g);
    let mut out = Vec::with_capacity(a.len() + p.len());
    let (mut x, mut y) = (1, 1);
    while x < a.len() || y < p.len() {
        let take = match (a.get(x), p.get(y)) {
            (Some((ca, _)), Some((cp, _))) => ca.cmp(cp),
            (Some(_), None) => std::cmp::Ordering::Less,
            _ => std::cmp::Ordering::Greater,
        };
        let (c, v) = match take {
            std::cmp::Ordering::Less => {
                x += 1;
                (a[x - 1].0, &fa * &a[x - 1].1)
            }
            std::cmp::Ordering::Greater => {
                y += 1;
                (p[y - 1].0, -(&fp * &p[y - 1].1))
            }
            std::cmp::Ordering::Equal => {
                x += 1;
                y += 1;
                (a[x - 1].0, &fa * &a[x - 1].1 - &fp * &p[y - 1].1)
            }
        };
        if !v.is_zero() {
            out.push((c, v));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Scalar;

    fn from_dense(rows: &[&[i64]]) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(rows.len(), rows.first().map_or(0, |r| r.len()));
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                m.add_to(r, c, Q::from_i64(v));
            }
        }
        m
    }

    #[test]
    fn small_ranks() {
        assert_eq!(from_dense(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(from_dense(&[&[0, 1, 0], &[1, 0, 0], &[1, 1, 0]]).rank(), 2);
        assert_eq!(from_dense(&[&[2, 3, 5], &[7, 11, 13], &[17, 19, 23]]).rank(), 3);
        assert_eq!(RationalMatrix::zeros(3, 0).rank(), 0);
    }

    #[test]
    fn fractional_entries() {
        let mut m = RationalMatrix::zeros(2, 2);
        m.add_to(0, 0, Q::parse_ratio("1/2").unwrap());
        m.add_to(0, 1, Q::parse_ratio("1/3").unwrap());
        m.add_to(1, 0, Q::from_i64(3));
        m.add_to(1, 1, Q::from_i64(2));
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn products() {
        let a = from_dense(&[&[1, 1], &[0, 1]]);
        let b = from_dense(&[&[1, -1], &[0, 1]]);
        assert_eq!(a.mul(&b), from_dense(&[&[1, 0], &[0, 1]]));
    }
}
