mod common;

use common::{lam, perm, q, qs};
use num_rational::Rational64;
use proptest::prelude::*;
use weylpol::bruhat::{arrow_pairs, ArrowPair};
use weylpol::shift::{sigma_zero, term_set, ShiftMatrix};
use weylpol::verify::tau_n3;
use weylpol::verma::*;
use weylpol::weyl_ops::{apply_combo, PolarCombo};
use weylpol::zelevinsky::zel_amplitude;
use weylpol::{sample, Scalar, VermaTripleQ, Q};

fn shift(n: usize, t: &[(usize, usize, u32)]) -> ShiftMatrix {
    ShiftMatrix::from_terms(n, t)
}

#[test]
fn triple_validation() {
    assert!(VermaTriple::new(3, 1, 3, 1, lam(&[3, 5, 4])).is_ok());
    assert!(VermaTriple::new(3, 1, 2, 3, lam(&[3, 2, 0])).is_err());
    assert!(VermaTriple::new(3, 2, 1, 1, lam(&[0, 0, 0])).is_err());
    assert!(VermaTriple::new(3, 1, 3, 1, lam(&[3, 5])).is_err());
    let t = VermaTriple::new_unchecked(3, 1, 2, 3, lam(&[3, 2, 0])).unwrap();
    assert!(!t.condition_holds());
    assert_eq!(t.condition_value(), q(2));
}

#[test]
fn amplitude_examples() {
    let t = VermaTriple::new(3, 1, 3, 1, lam(&[3, 5, 4])).unwrap();
    assert_eq!(vs_amplitude(&shift(3, &[(3, 1, 1)]), &t).unwrap(), q(-1));
    assert_eq!(vs_amplitude(&shift(3, &[(2, 1, 1), (3, 2, 1)]), &t).unwrap(), q(1));
    assert!(vs_amplitude(&shift(3, &[(2, 1, 1)]), &t).is_err());
    let t = VermaTriple::new(3, 2, 3, 2, vec![qs("1/3"), qs("7/2"), qs("5/2")]).unwrap();
    assert_eq!(vs_amplitude(&shift(3, &[(3, 2, 2)]), &t).unwrap(), q(2));
    for r in 1..=3u32 {
        let l = vec![q(0), q(r as i64 - 2), q(0), q(0), q(-7)];
        let t = VermaTriple::new(5, 2, 4, r, l).unwrap();
        let f = (1..=r as i64).product::<i64>();
        assert_eq!(vs_amplitude(&sigma_zero(5, 2, 4, r).unwrap(), &t).unwrap(), q(f * f));
    }
}

#[test]
fn vs_element_examples() {
    for r in 1..=3u32 {
        let t = VermaTriple::new(2, 1, 2, r, vec![q(r as i64 - 1), q(0)]).unwrap();
        let mut want = PolarCombo::zero(2);
        want.add_term(shift(2, &[(2, 1, r)]), q((1..=r as i64).product()));
        assert_eq!(vs_element(&t).unwrap(), want);
    }
    let t = VermaTriple::new(3, 1, 3, 1, lam(&[3, 5, 4])).unwrap();
    let mut want = PolarCombo::zero(3);
    want.add_term(shift(3, &[(3, 1, 1)]), q(-1));
    want.add_term(shift(3, &[(2, 1, 1), (3, 2, 1)]), q(1));
    assert_eq!(vs_element(&t).unwrap(), want);
    assert!(vs_element(&VermaTriple::new_unchecked(3, 1, 3, 1, lam(&[0, 0, 0])).unwrap()).is_err());
}

#[test]
fn vs_element_2_4_2_in_x() {
    for (l2, l3) in [("0/1", "0/1"), ("3/2", "-1/3"), ("5/1", "7/1"), ("-2/7", "4/5")] {
        let (l2, l3) = (qs(l2), qs(l3));
        let lambda = vec![q(1), l2.clone(), l3.clone(), l2.clone()];
        let t = VermaTriple::new(4, 2, 4, 2, lambda).unwrap();
        let x = l2 - l3 + q(1);
        let mut want = PolarCombo::zero(4);
        want.add_term(shift(4, &[(3, 2, 2), (4, 3, 2)]), q(4));
        want.add_term(shift(4, &[(3, 2, 1), (4, 3, 1), (4, 2, 1)]), q(2) * x.clone());
        want.add_term(shift(4, &[(4, 2, 2)]), q(2) * x.clone() * (x - q(1)));
        assert_eq!(vs_element(&t).unwrap(), want);
    }
}

#[test]
fn arrow_dictionary() {
    let t = triple_from_arrow(&tau_n3(3), &q(0));
    assert_eq!(t.lambda, lam(&[3, 5, 4]));
    assert_eq!((t.i, t.j, t.r), (1, 3, 1));
    let t = triple_from_arrow(&tau_n3(4), &qs("2/3"));
    assert_eq!((t.i, t.j, t.r), (2, 3, 2));
    let a = ArrowPair::new(perm("2341"), 2, 4).unwrap();
    let t = triple_from_arrow(&a, &q(0));
    let amps: Vec<Q> = term_set(4, 2, 4, 2).unwrap().iter().map(|s| vs_amplitude(s, &t).unwrap()).collect();
    let mut want = vec![q(4), q(-2), q(4)];
    want.sort();
    let mut got = amps;
    got.sort();
    assert_eq!(got, want);
    for n in 2..=4 {
        for a in arrow_pairs(n) {
            for c in [q(0), qs("-5/3"), q(11)] {
                let t = triple_from_arrow(&a, &c);
                assert!(t.condition_holds());
                for s in term_set(n, a.i, a.j, a.r).unwrap() {
                    assert_eq!(vs_amplitude(&s, &t).unwrap(), q(zel_amplitude(&s, &a).unwrap()));
                }
            }
        }
    }
}

#[test]
fn coefficient_identities() {
    let t = VermaTriple::new(4, 1, 4, 2, vec![qs("1/2"), q(0), qs("-3/7"), qs("3/2")]).unwrap();
    for p in 1..=3 {
        assert!(coefficient_identity_check(&t, p).unwrap(), "p={p}");
    }
    assert!(coefficient_identity_check(&t, 4).is_err());
    let broken = t.with_l(4, t.l(4).clone() + q(1));
    assert!(!coefficient_identity_check(&broken, 3).unwrap());
    assert!(coefficient_identity_check(&broken, 1).unwrap());
    assert!(coefficient_identity_check(&broken, 2).unwrap());
}

#[test]
fn weight_examples() {
    assert!(weight_check(&VermaTriple::new(3, 1, 3, 1, lam(&[3, 5, 4])).unwrap()));
    assert!(weight_check(&VermaTriple::new(4, 2, 4, 2, lam(&[0, 1, 1, 1])).unwrap()));
    assert!(weight_check(&VermaTriple::new(2, 1, 2, 3, lam(&[2, 0])).unwrap()));
}

#[test]
fn weight_property_on_tensors() {
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(9);
    let t = VermaTriple::new(3, 1, 3, 1, lam(&[3, 5, 4])).unwrap();
    let c = vs_element(&t).unwrap();
    for _ in 0..10 {
        let d = sample::degrees(&mut rng, 3, 3);
        let x: weylpol::SymTensorQ = sample::homogeneous_tensor(&mut rng, 2, &d, 4);
        if let Some(out) = apply_combo(&c, &x).multidegree() {
            assert_eq!(out.degrees, vec![d.get(1) - 1, d.get(2), d.get(3) + 1]);
        }
    }
}

#[test]
fn small_rational_scalar() {
    let l: Vec<Rational64> = [(1, 2), (0, 1), (-3, 7), (3, 2)].iter().map(|&(a, b)| Rational64::new(a, b)).collect();
    let t = VermaTriple::new(4, 1, 4, 2, l).unwrap();
    let big: VermaTripleQ = VermaTriple::new(4, 1, 4, 2, vec![qs("1/2"), q(0), qs("-3/7"), qs("3/2")]).unwrap();
    for s in term_set(4, 1, 4, 2).unwrap() {
        let a = vs_amplitude(&s, &t).unwrap();
        assert_eq!(a.to_ratio_string(), vs_amplitude(&s, &big).unwrap().to_ratio_string());
    }
}

#[test]
fn triple_json() {
    let t = VermaTriple::new(3, 1, 3, 1, vec![qs("3/1"), qs("5/1"), qs("4/1")]).unwrap();
    let v = serde_json::to_value(&t).unwrap();
    assert_eq!(v, serde_json::json!({"n": 3, "i": 1, "j": 3, "r": 1, "lambda": ["3/1", "5/1", "4/1"]}));
    assert_eq!(serde_json::from_value::<VermaTripleQ>(v).unwrap(), t);
    let bad = r#"{"n":3,"i":1,"j":3,"r":1,"lambda":["0/1","0/1","0/1"]}"#;
    assert!(serde_json::from_str::<VermaTripleQ>(bad).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn integer_lambda_gives_integer_amplitudes(n in 2usize..=5, a in 1usize..=4, b in 1usize..=4, r in 1u32..=2,
                                              ls in proptest::collection::vec(-6i64..=6, 5)) {
        let (i, j) = (a.min(b), a.max(b) + 1);
        prop_assume!(j <= n);
        let mut l = lam(&ls[..n]);
        l[i - 1] = l[j - 1].clone() + q(r as i64 + i as i64 - j as i64);
        let t = VermaTriple::new(n, i, j, r, l).unwrap();
        for s in term_set(n, i, j, r).unwrap() {
            prop_assert!(vs_amplitude(&s, &t).unwrap().is_integer());
        }
        for p in i..j {
            prop_assert!(coefficient_identity_check(&t, p).unwrap());
        }
    }
}
