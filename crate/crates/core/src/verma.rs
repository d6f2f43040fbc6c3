//! Verma triples for gl_N, Verma–Shapovalov amplitudes and elements, and the
//! coefficient identities behind their singularity as executable checks.

use serde::{Deserialize, Serialize};

use crate::bruhat::ArrowPair;
use crate::error::{Error, Result};
use crate::scalar::{binomial, factorial, Scalar};
use crate::shift::{in_term_set, route_flow, term_set, weight_vector, ShiftMatrix};
use crate::weyl_ops::PolarCombo;

/// Data (i < j, r, λ) for the positive root λ_i − λ_j.
#[derive(Clone, PartialEq, Debug)]
pub struct VermaTriple<S: Scalar> {
    pub n: usize,
    pub i: usize,
    pub j: usize,
    pub r: u32,
    pub lambda: Vec<S>,
}

impl<S: Scalar> VermaTriple<S> {
    /// Validates ranges and the Verma condition l_i − l_j − i + j = r.
    pub fn new(n: usize, i: usize, j: usize, r: u32, lambda: Vec<S>) -> Result<Self> {
        let t = Self::new_unchecked(n, i, j, r, lambda)?;
        if !t.condition_holds() {
            return Err(Error::VermaCondition(format!(
                "l_{i} - l_{j} - {i} + {j} = {} but r = {r}",
                t.condition_value().to_ratio_string()
            )));
        }
        Ok(t)
    }

    /// Validates ranges only; the Verma condition may fail (used for negative controls).
    pub fn new_unchecked(n: usize, i: usize, j: usize, r: u32, lambda: Vec<S>) -> Result<Self> {
        if !(1 <= i && i < j && j <= n) {
            return Err(Error::Range(format!("root ({i},{j}) invalid for n={n}")));
        }
        if r == 0 {
            return Err(Error::Range("r must be positive".into()));
        }
        if lambda.len() != n {
            return Err(Error::Shape(format!("λ has {} entries, expected {n}", lambda.len())));
        }
        Ok(VermaTriple { n, i, j, r, lambda })
    }

    /// l_k, 1-based.
    pub fn l(&self, k: usize) -> &S {
        &self.lambda[k - 1]
    }

    /// l_i − l_j − i + j.
    pub fn condition_value(&self) -> S {
        self.l(self.i).clone() - self.l(self.j).clone() - S::from_i64(self.i as i64) + S::from_i64(self.j as i64)
    }

    pub fn condition_holds(&self) -> bool {
        self.condition_value() == S::from_i64(self.r as i64)
    }

    /// A copy with l_k replaced.
    pub fn with_l(&self, k: usize, v: S) -> Self {
        let mut t = self.clone();
        t.lambda[k - 1] = v;
        t
    }
}

#[derive(Serialize, Deserialize)]
pub(crate) struct TripleWire {
    pub n: usize,
    pub i: usize,
    pub j: usize,
    pub r: u32,
    pub lambda: Vec<String>,
}

impl<S: Scalar> Serialize for VermaTriple<S> {
    fn serialize<Se: serde::Serializer>(&self, s: Se) -> std::result::Result<Se::Ok, Se::Error> {
        TripleWire {
            n: self.n,
            i: self.i,
            j: self.j,
            r: self.r,
            lambda: self.lambda.iter().map(S::to_ratio_string).collect(),
        }
        .serialize(s)
    }
}

impl<'de, S: Scalar> Deserialize<'de> for VermaTriple<S> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = TripleWire::deserialize(d)?;
        let lambda = w
            .lambda
            .iter()
            .map(|x| S::parse_ratio(x).ok_or_else(|| D::Error::custom(format!("bad rational {x:?}"))))
            .collect::<std::result::Result<Vec<S>, _>>()?;
        VermaTriple::new(w.n, w.i, w.j, w.r, lambda).map_err(D::Error::custom)
    }
}

/// ⟨σ; τ⟩ = r!·∏_{k=i+1}^{j−1} R_k!·S_k!·C(l_i − l_k − i + k, S_k), S_k = r − R_k.
pub fn vs_amplitude<S: Scalar>(s: &ShiftMatrix, t: &VermaTriple<S>) -> Result<S> {
    if s.n() != t.n || !in_term_set(s, t.i, t.j, t.r) {
        return Err(Error::NotSubordinate(format!("{s} is not in TERM({},{},{})", t.i, t.j, t.r)));
    }
    let mut amp = S::from_i64(factorial(t.r));
    for k in t.i + 1..t.j {
        let rk = route_flow(s, k)?;
        let sk = t.r - rk;
        let x = t.l(t.i).clone() - t.l(k).clone() - S::from_i64(t.i as i64) + S::from_i64(k as i64);
        amp = amp * S::from_i64(factorial(rk) * factorial(sk)) * binomial(&x, sk as i64);
    }
    Ok(amp)
}

/// Amplitude extended by zero to shifts outside TERM(i, j, r) and to absent shifts.
pub fn amplitude_or_zero<S: Scalar>(s: Option<&ShiftMatrix>, t: &VermaTriple<S>) -> S {
    s.and_then(|s| vs_amplitude(s, t).ok()).unwrap_or_else(S::zero)
}

/// VS(τ) = Σ_{σ ∈ TERM(i,j,r)} ⟨σ; τ⟩·P(σ).
pub fn vs_element<S: Scalar>(t: &VermaTriple<S>) -> Result<PolarCombo<S>> {
    if !t.condition_holds() {
        return Err(Error::VermaCondition(format!(
            "l_{} - l_{} - {} + {} = {} but r = {}",
            t.i,
            t.j,
            t.i,
            t.j,
            t.condition_value().to_ratio_string(),
            t.r
        )));
    }
    vs_element_unchecked(t)
}

/// The same sum without checking the Verma condition.
pub fn vs_element_unchecked<S: Scalar>(t: &VermaTriple<S>) -> Result<PolarCombo<S>> {
    let mut c = PolarCombo::zero(t.n);
    for s in term_set(t.n, t.i, t.j, t.r)? {
        let amp = vs_amplitude(&s, t)?;
        c.add_term(s, amp);
    }
    Ok(c)
}

/// λ with l_k = π(k) + k + c, so that l_i − l_k − i + k = π(i) − π(k).
pub fn triple_from_arrow<S: Scalar>(a: &ArrowPair, c: &S) -> VermaTriple<S> {
    let n = a.source.n();
    let lambda = (1..=n).map(|k| S::from_i64((a.source.get(k) + k) as i64) + c.clone()).collect();
    VermaTriple::new(n, a.i, a.j, a.r, lambda).expect("arrow pairs satisfy the Verma condition")
}

/// A_p + B_p + C_p, for every σ ∈ TERM(i,j,r) with σ_{p+1,p} ≥ 1.
pub fn coefficient_identity_sums<S: Scalar>(t: &VermaTriple<S>, p: usize) -> Result<Vec<(ShiftMatrix, S)>> {
    if p < t.i || p >= t.j {
        return Err(Error::Range(format!("p={p} outside {}..={}", t.i, t.j - 1)));
    }
    let mut out = Vec::new();
    for s in term_set(t.n, t.i, t.j, t.r)? {
        if s.get(p + 1, p) == 0 {
            continue;
        }
        let a = (t.l(p).clone() - t.l(p + 1).clone() - S::from_i64(s.col_sum(p) as i64)
            + S::from_i64(s.col_sum(p + 1) as i64)
            + S::one())
            * amplitude_or_zero(Some(&s), t);
        let mut b = S::zero();
        for k in t.i..p {
            let w = s.get(p, k);
            if w > 0 {
                let sh = s.offset(&[(p + 1, k, 1), (p, k, -1), (p + 1, p, -1)]);
                b = b + S::from_i64(w as i64) * amplitude_or_zero(sh.as_ref(), t);
            }
        }
        let mut c = S::zero();
        for k in p + 2..=t.j {
            let w = s.get(k, p + 1);
            if w > 0 {
                let sh = s.offset(&[(k, p, 1), (k, p + 1, -1), (p + 1, p, -1)]);
                c = c - S::from_i64(w as i64) * amplitude_or_zero(sh.as_ref(), t);
            }
        }
        out.push((s, a + b + c));
    }
    Ok(out)
}

/// True iff A_p + B_p + C_p vanishes for every σ in G_p.
pub fn coefficient_identity_check<S: Scalar>(t: &VermaTriple<S>, p: usize) -> Result<bool> {
    Ok(coefficient_identity_sums(t, p)?.iter().all(|(_, v)| v.is_zero()))
}

/// True iff every σ ∈ TERM(i,j,r) has weight −r(e_i − e_j).
pub fn weight_check<S: Scalar>(t: &VermaTriple<S>) -> bool {
    let Ok(ts) = term_set(t.n, t.i, t.j, t.r) else { return false };
    let mut want = vec![0i64; t.n];
    want[t.i - 1] = -(t.r as i64);
    want[t.j - 1] = t.r as i64;
    ts.iter().all(|s| weight_vector(s) == want)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bruhat::Permutation;
    use crate::Q;

    fn lam(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| Q::from_i64(x)).collect()
    }

    #[test]
    fn condition_is_enforced() {
        assert!(VermaTriple::new(3, 1, 3, 1, lam(&[3, 5, 4])).is_ok());
        assert!(matches!(VermaTriple::new(3, 1, 2, 3, lam(&[3, 2, 0])), Err(Error::VermaCondition(_))));
        assert!(VermaTriple::new(3, 2, 1, 1, lam(&[0, 0, 0])).is_err());
    }

    #[test]
    fn small_amplitudes() {
        let t = VermaTriple::new(3, 1, 3, 1, lam(&[3, 5, 4])).unwrap();
        assert_eq!(vs_amplitude(&ShiftMatrix::unit(3, 3, 1), &t).unwrap(), Q::from_i64(-1));
        let s2 = ShiftMatrix::from_terms(3, &[(2, 1, 1), (3, 2, 1)]);
        assert_eq!(vs_amplitude(&s2, &t).unwrap(), Q::from_i64(1));
        assert!(vs_amplitude(&ShiftMatrix::unit(3, 2, 1), &t).is_err());
        let t = VermaTriple::new(3, 2, 3, 2, lam(&[0, 3, 2])).unwrap();
        assert_eq!(vs_amplitude(&ShiftMatrix::from_terms(3, &[(3, 2, 2)]), &t).unwrap(), Q::from_i64(2));
    }

    #[test]
    fn from_arrow() {
        let a = ArrowPair::new(Permutation::new(vec![2, 3, 4, 1]).unwrap(), 2, 4).unwrap();
        let t = triple_from_arrow(&a, &Q::from_i64(0));
        assert!(t.condition_holds());
        let c = vs_element(&t).unwrap();
        let coeffs: Vec<i64> = [
            ShiftMatrix::from_terms(4, &[(3, 2, 2), (4, 3, 2)]),
            ShiftMatrix::from_terms(4, &[(3, 2, 1), (4, 3, 1), (4, 2, 1)]),
            ShiftMatrix::from_terms(4, &[(4, 2, 2)]),
        ]
        .iter()
        .map(|s| i64::try_from(c.coeff(s).to_integer()).unwrap())
        .collect();
        assert_eq!(coeffs, vec![4, -2, 4]);
    }

    #[test]
    fn identities_and_negative_control() {
        let t = VermaTriple::new(4, 1, 4, 2, lam(&[7, 2, 5, 8])).unwrap();
        assert!(weight_check(&t));
        for p in 1..4 {
            assert!(coefficient_identity_check(&t, p).unwrap());
        }
        let bad = t.with_l(4, t.l(4).clone() + Q::from_i64(1));
        assert!(coefficient_identity_check(&bad, 1).unwrap());
        assert!(coefficient_identity_check(&bad, 2).unwrap());
        assert!(!coefficient_identity_check(&bad, 3).unwrap());
        assert!(coefficient_identity_check(&t, 4).is_err());
    }
}
