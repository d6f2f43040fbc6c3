//! JSON wire formats. Coefficients are "p/q" strings.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bruhat::{ArrowPair, Permutation, SignatureTable};
use crate::pbw::{GeneratorOrder, UElement, VermaVector};
use crate::scalar::Scalar;
use crate::shift::ShiftMatrix;
use crate::symtensor::{Monomial, SymTensor};
use crate::weyl_ops::PolarCombo;
use crate::zelevinsky::ZelComplex;

fn parse<S: Scalar, E: serde::de::Error>(x: &str) -> Result<S, E> {
    S::parse_ratio(x).ok_or_else(|| E::custom(format!("bad rational {x:?}")))
}

#[derive(Serialize, Deserialize)]
struct TensorTerm {
    coeff: String,
    exponents: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
struct TensorWire {
    n: usize,
    m: usize,
    terms: Vec<TensorTerm>,
}

impl<S: Scalar> Serialize for SymTensor<S> {
    fn serialize<Se: Serializer>(&self, s: Se) -> Result<Se::Ok, Se::Error> {
        TensorWire {
            n: self.n(),
            m: self.m(),
            terms: self
                .terms()
                .iter()
                .map(|(mono, c)| TensorTerm { coeff: c.to_ratio_string(), exponents: mono.rows() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de, S: Scalar> Deserialize<'de> for SymTensor<S> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = TensorWire::deserialize(d)?;
        let mut t = SymTensor::zero(w.n, w.m);
        for term in w.terms {
            let mono = Monomial::from_rows(&term.exponents)
                .filter(|mono| mono.n() == w.n && mono.m() == w.m)
                .ok_or_else(|| D::Error::custom(format!("exponents must be {}×{}", w.n, w.m)))?;
            t.add_term(mono, parse(&term.coeff)?);
        }
        Ok(t)
    }
}

#[derive(Serialize, Deserialize)]
struct ComboTerm {
    coeff: String,
    shift: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
struct ComboWire {
    n: usize,
    terms: Vec<ComboTerm>,
}

impl<S: Scalar> Serialize for PolarCombo<S> {
    fn serialize<Se: Serializer>(&self, s: Se) -> Result<Se::Ok, Se::Error> {
        ComboWire {
            n: self.n(),
            terms: self
                .terms()
                .iter()
                .map(|(sh, c)| ComboTerm { coeff: c.to_ratio_string(), shift: sh.rows() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de, S: Scalar> Deserialize<'de> for PolarCombo<S> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = ComboWire::deserialize(d)?;
        let mut c = PolarCombo::zero(w.n);
        for term in w.terms {
            let sh = ShiftMatrix::from_rows(&term.shift).map_err(D::Error::custom)?;
            if sh.n() != w.n {
                return Err(D::Error::custom(format!("shift is {}×{}, expected n={}", sh.n(), sh.n(), w.n)));
            }
            c.add_term(sh, parse(&term.coeff)?);
        }
        Ok(c)
    }
}

#[derive(Serialize, Deserialize)]
struct UTerm {
    coeff: String,
    exponents: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct UWire {
    n: usize,
    order: Vec<(usize, usize)>,
    terms: Vec<UTerm>,
}

fn order_from_list(n: usize, list: &[(usize, usize)]) -> Option<GeneratorOrder> {
    let nl = n * (n.max(1) - 1) / 2;
    let o = GeneratorOrder::new(n, list.get(..nl)?.to_vec()).ok()?;
    (o.generators() == list).then_some(o)
}

impl<S: Scalar> Serialize for UElement<S> {
    fn serialize<Se: Serializer>(&self, s: Se) -> Result<Se::Ok, Se::Error> {
        UWire {
            n: self.n(),
            order: self.order().generators().to_vec(),
            terms: self
                .terms()
                .iter()
                .map(|(e, c)| UTerm { coeff: c.to_ratio_string(), exponents: e.clone() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de, S: Scalar> Deserialize<'de> for UElement<S> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = UWire::deserialize(d)?;
        let o = order_from_list(w.n, &w.order)
            .ok_or_else(|| D::Error::custom("order must list lowering, then Cartan, then raising (lex) generators"))?;
        let len = o.generators().len();
        let mut u = UElement::zero(std::sync::Arc::new(o));
        for term in w.terms {
            if term.exponents.len() != len {
                return Err(D::Error::custom(format!("exponent vector must have {len} entries")));
            }
            u.add_term(term.exponents, parse(&term.coeff)?);
        }
        Ok(u)
    }
}

#[derive(Serialize)]
struct VermaVectorWire {
    n: usize,
    lambda: Vec<String>,
    order: Vec<(usize, usize)>,
    terms: Vec<UTerm>,
}

impl<S: Scalar> Serialize for VermaVector<S> {
    fn serialize<Se: Serializer>(&self, s: Se) -> Result<Se::Ok, Se::Error> {
        VermaVectorWire {
            n: self.n(),
            lambda: self.lambda().iter().map(S::to_ratio_string).collect(),
            order: self.order().generators().to_vec(),
            terms: self
                .terms()
                .iter()
                .map(|(e, c)| UTerm { coeff: c.to_ratio_string(), exponents: e.clone() })
                .collect(),
        }
        .serialize(s)
    }
}

#[derive(Serialize, Deserialize)]
struct ArrowWire {
    from: Permutation,
    to: Permutation,
    transposition: (usize, usize),
    r: u32,
    sign: i8,
}

#[derive(Serialize, Deserialize)]
struct SignatureWire {
    n: usize,
    arrows: Vec<ArrowWire>,
}

impl Serialize for SignatureTable {
    fn serialize<Se: Serializer>(&self, s: Se) -> Result<Se::Ok, Se::Error> {
        SignatureWire {
            n: self.n(),
            arrows: self
                .entries()
                .into_iter()
                .map(|(a, sign)| ArrowWire { from: a.source, to: a.target, transposition: (a.i, a.j), r: a.r, sign })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SignatureTable {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = SignatureWire::deserialize(d)?;
        let mut t = SignatureTable::new(w.n);
        for a in w.arrows {
            let pair =
                ArrowPair::new(a.from.clone(), a.transposition.0, a.transposition.1).map_err(D::Error::custom)?;
            if pair.target != a.to || pair.r != a.r || a.from.n() != w.n {
                return Err(D::Error::custom(format!("inconsistent arrow {pair}")));
            }
            if a.sign != 1 && a.sign != -1 {
                return Err(D::Error::custom("signs must be ±1"));
            }
            t.set(&pair, a.sign);
        }
        Ok(t)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZelTermReport {
    pub perm: Permutation,
    pub degrees: Vec<i64>,
    pub dim: u128,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZelLevelReport {
    pub terms: Vec<ZelTermReport>,
    pub dim: usize,
}

/// {"levels":[{"terms":[…],"dim":d}],"dd_zero":…,"homology":[…]}.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZelReport {
    pub n: usize,
    pub alpha: Vec<i64>,
    pub dim_v: usize,
    pub levels: Vec<ZelLevelReport>,
    pub euler_characteristic: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dd_zero: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub homology: Option<Vec<usize>>,
}

impl ZelReport {
    pub fn new(c: &ZelComplex, dd_zero: Option<bool>, homology: Option<Vec<usize>>) -> Self {
        let levels = c
            .levels
            .iter()
            .enumerate()
            .map(|(k, ts)| ZelLevelReport {
                terms: ts
                    .iter()
                    .map(|t| ZelTermReport {
                        perm: t.perm.clone(),
                        degrees: t.degrees.degrees.clone(),
                        dim: t.dim(c.m),
                    })
                    .collect(),
                dim: c.level_dim(k),
            })
            .collect();
        ZelReport {
            n: c.n,
            alpha: c.alpha.degrees.clone(),
            dim_v: c.m,
            levels,
            euler_characteristic: c.euler_characteristic(),
            dd_zero,
            homology,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bruhat::akin_signature;
    use crate::pbw::polar_to_pbw;
    use crate::Q;

    #[test]
    fn tensor_roundtrip() {
        let mut t = SymTensor::<Q>::zero(2, 2);
        t.add_term(Monomial::from_rows(&[vec![1, 0], vec![0, 2]]).unwrap(), Q::parse_ratio("-3/4").unwrap());
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, r#"{"n":2,"m":2,"terms":[{"coeff":"-3/4","exponents":[[1,0],[0,2]]}]}"#);
        assert_eq!(serde_json::from_str::<SymTensor<Q>>(&s).unwrap(), t);
        assert!(serde_json::from_str::<SymTensor<Q>>(
            r#"{"n":2,"m":2,"terms":[{"coeff":"1/0","exponents":[[1,0],[0,2]]}]}"#
        )
        .is_err());
        assert!(serde_json::from_str::<SymTensor<Q>>(r#"{"n":2,"m":2,"terms":[{"coeff":"1","exponents":[[1,0]]}]}"#)
            .is_err());
    }

    #[test]
    fn combo_roundtrip() {
        let mut c = PolarCombo::<Q>::zero(3);
        c.add_term(ShiftMatrix::unit(3, 3, 1), Q::from_i64(-1));
        c.add_term(ShiftMatrix::from_terms(3, &[(2, 1, 1), (3, 2, 1)]), Q::from_i64(1));
        let s = serde_json::to_string(&c).unwrap();
        assert!(s.contains(r#""coeff":"-1/1""#));
        assert_eq!(serde_json::from_str::<PolarCombo<Q>>(&s).unwrap(), c);
    }

    #[test]
    fn uelement_roundtrip() {
        let o = GeneratorOrder::reverse_lex(3);
        let u = polar_to_pbw::<Q>(&ShiftMatrix::from_terms(3, &[(2, 1, 1), (3, 2, 1)]), &o);
        let s = serde_json::to_string(&u).unwrap();
        assert_eq!(serde_json::from_str::<UElement<Q>>(&s).unwrap(), u);
        let bad = s.replace("[[3,2],[3,1],[2,1]", "[[3,1],[3,2],[3,1]");
        assert!(serde_json::from_str::<UElement<Q>>(&bad).is_err());
    }

    #[test]
    fn signature_roundtrip() {
        let t = akin_signature(3).unwrap();
        let v = serde_json::to_value(&t).unwrap();
        assert_eq!(v["arrows"].as_array().unwrap().len(), 8);
        assert_eq!(v["arrows"][0]["from"], serde_json::json!([3, 2, 1]));
        assert_eq!(serde_json::from_value::<SignatureTable>(v).unwrap(), t);
    }
}
