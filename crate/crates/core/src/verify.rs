//! Seeded verification suites. Every suite returns named verdicts; all
//! randomness comes from one ChaCha8 stream so reports are reproducible.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bruhat::{
    akin_signature, arrow_pairs, squares, verify_square_property, ArrowPair, Permutation, SignatureTable,
};
use crate::error::{Error, Result};
use crate::pbw::{GeneratorOrder, PbwEngine};
use crate::sample;
use crate::shift::{reduced, DegreeVector, ShiftMatrix};
use crate::symtensor::{
    apply_elementary, apply_weyl, apply_weyl_differential, apply_weyl_unnormalized, diagonal_reduction_factor,
    SymTensor,
};
use crate::verma::{
    coefficient_identity_check, triple_from_arrow, vs_amplitude, vs_element, vs_element_unchecked, weight_check,
    VermaTriple,
};
use crate::weyl_ops::{
    apply_combo, commutator_elementary, left_mul_elementary, right_mul_elementary, word_to_combo, ElementaryWord,
    PolarCombo,
};
use crate::zelevinsky::{
    build_complex, dd_is_zero, differential_block, homology_from_matrices, hook_content_dimension, realize_all,
    schur_dimension_oracle, zel_amplitude,
};
use crate::{Scalar, Q};

pub const SUITES: [&str; 6] = ["equivalence", "recurrences", "signatures", "complex", "vs", "pbw"];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Verdict {
    fn from_failures(name: &str, cases: usize, failures: Vec<String>) -> Self {
        Verdict {
            name: name.into(),
            passed: failures.is_empty(),
            cases,
            detail: failures.first().map(|f| format!("{} failure(s); first: {f}", failures.len())),
        }
    }

    fn single(name: &str, passed: bool, detail: impl Into<Option<String>>) -> Self {
        Verdict { name: name.into(), passed, cases: 1, detail: detail.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub verdicts: Vec<Verdict>,
    /// Observations that are recorded but not asserted.
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Restricts size-parameterized suites (currently `signatures`) to one N.
    pub n: Option<usize>,
}

/// Runs one suite, or every suite for `"all"`.
pub fn run(suite: &str, cfg: &VerifyConfig) -> Result<Vec<SuiteReport>> {
    match suite {
        "all" => SUITES.iter().map(|s| run_one(s, cfg)).collect(),
        s => Ok(vec![run_one(s, cfg)?]),
    }
}

pub fn run_one(suite: &str, cfg: &VerifyConfig) -> Result<SuiteReport> {
    // Each suite gets its own stream so suites are independent of run order.
    let offset = SUITES
        .iter()
        .position(|s| *s == suite)
        .ok_or_else(|| Error::Parse(format!("unknown suite {suite:?}; expected one of {SUITES:?} or all")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(offset as u64));
    let mut notes = Vec::new();
    let verdicts = match suite {
        "equivalence" => equivalence(&mut rng),
        "recurrences" => recurrences(&mut rng),
        "signatures" => signatures(cfg.n)?,
        "complex" => complex(&mut rng, &mut notes)?,
        "vs" => vs(&mut rng)?,
        "pbw" => pbw(&mut rng)?,
        _ => unreachable!(),
    };
    Ok(SuiteReport { suite: suite.into(), seed: cfg.seed, verdicts, notes })
}

fn parallel_failures<T: Sync>(cases: &[T], f: impl Fn(&T) -> Option<String> + Sync) -> Vec<String> {
    cases.par_iter().filter_map(&f).collect()
}

type Case = (ShiftMatrix, SymTensor<Q>);
/// A shift, a tensor and a word of elementary generators.
type SoundCase = (ShiftMatrix, SymTensor<Q>, Vec<(usize, usize)>);
/// (homology, Jacobi–Trudi, hook-content, Euler characteristic).
type HomologyRow = (Vec<usize>, i64, Option<i64>, i64);

fn random_cases(rng: &mut ChaCha8Rng, count: usize, max_weight: u32, diagonal: bool) -> Vec<Case> {
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=3);
            let m = rng.gen_range(1..=3);
            let w = rng.gen_range(0..=max_weight);
            let diag = diagonal && rng.gen_bool(0.3);
            let s = sample::shift(rng, n, w, diag);
            (s, sample::tensor(rng, n, m, 3, 4))
        })
        .collect()
}

pub fn equivalence(rng: &mut ChaCha8Rng) -> Vec<Verdict> {
    let cases = random_cases(rng, 240, 3, true);
    let eq = parallel_failures(&cases, |(s, t)| {
        (apply_weyl(s, t) != apply_weyl_differential(s, t)).then(|| format!("σ={s}"))
    });
    let norm = parallel_failures(&cases, |(s, t)| {
        let f = Q::from_i64(crate::shift::shift_factorial(s));
        (apply_weyl_unnormalized(s, t) != apply_weyl(s, t).scale(&f)).then(|| format!("σ={s}"))
    });
    let grading = parallel_failures(&cases, |(s, t)| {
        let wt = crate::shift::weight_vector(s);
        for (alpha, comp) in t.components() {
            let out = apply_weyl(s, &comp);
            let target: Vec<i64> = alpha.degrees.iter().zip(&wt).map(|(a, w)| a + w).collect();
            if target.iter().any(|&b| b < 0) && !out.is_zero() {
                return Some(format!("σ={s} nonzero into negative degree"));
            }
            if let Some(d) = out.multidegree() {
                if d.degrees != target {
                    return Some(format!("σ={s} wrong output degree"));
                }
            }
        }
        None
    });
    vec![
        Verdict::from_failures("combinatorial_equals_differential", cases.len(), eq),
        Verdict::from_failures("unnormalized_is_factorial_multiple", cases.len(), norm),
        Verdict::from_failures("grading", cases.len(), grading),
    ]
}

pub fn recurrences(rng: &mut ChaCha8Rng) -> Vec<Verdict> {
    let cases: Vec<Case> = random_cases(rng, 400, 3, true).into_iter().filter(|(s, _)| s.n() >= 2).take(240).collect();
    // One off-diagonal (equations A, B) and one diagonal (C, D) generator per case.
    let gens: Vec<[(usize, usize); 2]> = cases
        .iter()
        .map(|(s, _)| {
            let n = s.n();
            let i = rng.gen_range(1..=n);
            let j = (i + rng.gen_range(1..n) - 1) % n + 1;
            [(i, j), (i, i)]
        })
        .collect();
    let idx: Vec<usize> = (0..cases.len()).collect();
    let run = |which: u8, diag: usize| -> Vec<String> {
        parallel_failures(&idx, |&x| {
            let (s, t) = &cases[x];
            let (i, j) = gens[x][diag];
            let p = PolarCombo::<Q>::single(s.clone());
            let base = apply_weyl(s, t);
            let (formal, oracle) = match which {
                0 => (left_mul_elementary(i, j, &p), apply_elementary(i, j, &base)),
                1 => (right_mul_elementary(&p, i, j), apply_weyl(s, &apply_elementary(i, j, t))),
                _ => (
                    commutator_elementary(i, j, &p),
                    apply_elementary(i, j, &base).sub(&apply_weyl(s, &apply_elementary(i, j, t))),
                ),
            };
            (apply_combo(&formal, t) != oracle).then(|| format!("E{i},{j} with σ={s}"))
        })
    };
    let k = cases.len();
    let mut comm = run(2, 0);
    comm.extend(run(2, 1));

    let homog: Vec<(ShiftMatrix, SymTensor<Q>)> = (0..120)
        .map(|_| {
            let n = rng.gen_range(1..=3);
            let m = rng.gen_range(1..=3);
            let w = rng.gen_range(0..=3);
            let s = sample::shift(rng, n, w, true);
            let alpha = sample::degrees(rng, n, 4);
            (s, sample::homogeneous_tensor(rng, m, &alpha, 4))
        })
        .collect();
    let reduction = parallel_failures(&homog, |(s, t)| {
        let alpha = t.multidegree()?;
        let f = Q::from_i64(diagonal_reduction_factor(s, &alpha));
        (apply_weyl(s, t) != apply_weyl(&reduced(s), t).scale(&f)).then(|| format!("σ={s}"))
    });

    let words: Vec<(ElementaryWord, SymTensor<Q>)> = (0..200)
        .map(|_| {
            let n = rng.gen_range(1..=3);
            let len = rng.gen_range(0..=4);
            let f = (0..len).map(|_| (rng.gen_range(1..=n), rng.gen_range(1..=n))).collect();
            let m = rng.gen_range(1..=3);
            (ElementaryWord::new(n, f), sample::tensor(rng, n, m, 3, 4))
        })
        .collect();
    let word_fails = parallel_failures(&words, |(w, t)| {
        (apply_combo(&word_to_combo::<Q>(w), t) != w.act(t)).then(|| format!("word {:?}", w.factors))
    });
    let integral = parallel_failures(&words, |(w, _)| {
        (!word_to_combo::<Q>(w).is_integral()).then(|| format!("word {:?}", w.factors))
    });

    let mut out = vec![
        Verdict::from_failures("left_mul_offdiagonal", k, run(0, 0)),
        Verdict::from_failures("right_mul_offdiagonal", k, run(1, 0)),
        Verdict::from_failures("left_mul_diagonal", k, run(0, 1)),
        Verdict::from_failures("right_mul_diagonal", k, run(1, 1)),
        Verdict::from_failures("commutator", 2 * k, comm),
        Verdict::from_failures("diagonal_reduction_factor", homog.len(), reduction),
        Verdict::from_failures("word_to_combo_matches_composition", words.len(), word_fails),
        Verdict::from_failures("word_to_combo_integral", words.len(), integral),
    ];
    out.extend(commutation_relations(rng));
    out
}

/// [D_ij, D_kl] = δ_jk D_il − δ_li D_kj, on tensors and formally, for all index choices with N ≤ 4.
fn commutation_relations(rng: &mut ChaCha8Rng) -> Vec<Verdict> {
    let mut jobs = Vec::new();
    for n in 1..=4usize {
        let t: SymTensor<Q> = sample::tensor(rng, n, 2, 2, 3);
        let g: Vec<(usize, usize)> = (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).collect();
        for &a in &g {
            for &b in &g {
                jobs.push((n, a, b, t.clone()));
            }
        }
    }
    let expect = |n: usize, (i, j): (usize, usize), (k, l): (usize, usize)| {
        let mut c = PolarCombo::<Q>::zero(n);
        if j == k {
            c = c.add(&word_to_combo(&ElementaryWord::new(n, vec![(i, l)])));
        }
        if l == i {
            c = c.sub(&word_to_combo(&ElementaryWord::new(n, vec![(k, j)])));
        }
        c
    };
    let tensor = parallel_failures(&jobs, |(n, (i, j), (k, l), t)| {
        let lhs = apply_elementary(*i, *j, &apply_elementary(*k, *l, t)).sub(&apply_elementary(
            *k,
            *l,
            &apply_elementary(*i, *j, t),
        ));
        let rhs = apply_combo(&expect(*n, (*i, *j), (*k, *l)), t);
        (lhs != rhs).then(|| format!("n={n} [E{i},{j},E{k},{l}]"))
    });
    let formal = parallel_failures(&jobs, |(n, a, b, _)| {
        let lhs = word_to_combo::<Q>(&ElementaryWord::new(*n, vec![*a, *b]))
            .sub(&word_to_combo(&ElementaryWord::new(*n, vec![*b, *a])));
        (lhs != expect(*n, *a, *b)).then(|| format!("n={n} [{a:?},{b:?}]"))
    });
    vec![
        Verdict::from_failures("elementary_commutation_on_tensors", jobs.len(), tensor),
        Verdict::from_failures("capelli_lie_homomorphism", jobs.len(), formal),
    ]
}

/// The N = 3 arrow pairs τ1..τ8 as (source, i, j).
pub const TAU_N3: [(&[usize], usize, usize); 8] = [
    (&[2, 1, 3], 1, 2),
    (&[1, 3, 2], 2, 3),
    (&[2, 3, 1], 1, 3),
    (&[2, 3, 1], 2, 3),
    (&[3, 1, 2], 1, 2),
    (&[3, 1, 2], 1, 3),
    (&[3, 2, 1], 1, 2),
    (&[3, 2, 1], 2, 3),
];

pub fn tau_n3(k: usize) -> ArrowPair {
    let (p, i, j) = TAU_N3[k - 1];
    ArrowPair::new(Permutation::new(p.to_vec()).expect("valid"), i, j).expect("cover")
}

/// The Akin signs of τ1..τ8.
pub const AKIN_N3: [i8; 8] = [1, 1, -1, 1, 1, -1, 1, 1];

pub fn signatures(n: Option<usize>) -> Result<Vec<Verdict>> {
    let mut out = Vec::new();
    if n.is_none() || n == Some(3) {
        let t = akin_signature(3)?;
        let got: Vec<i8> = (1..=8).map(|k| t.sign(&tau_n3(k)).unwrap_or(0)).collect();
        out.push(Verdict::single("akin_n3_table", got == AKIN_N3, format!("signs {got:?}")));
    }
    let sizes: Vec<usize> = n.map_or(vec![2, 3, 4], |k| vec![k]);
    for k in sizes {
        if k < 2 {
            return Err(Error::Range("signatures need n ≥ 2".into()));
        }
        let t = akin_signature(k)?;
        let total = arrow_pairs(k).iter().all(|a| t.sign(a).is_some());
        out.push(Verdict {
            name: format!("square_property_n{k}"),
            passed: total && verify_square_property(&t),
            cases: squares(k).len(),
            detail: None,
        });
    }
    Ok(out)
}

/// The Doty–Verma words of the N = 3 table, with τ7 ↦ E21 and τ8 ↦ E32.
pub fn doty_verma_n3(k: usize) -> PolarCombo<Q> {
    let w = |f: &[(usize, usize)]| word_to_combo::<Q>(&ElementaryWord::new(3, f.to_vec()));
    let two = Q::from_i64(2);
    match k {
        1 | 7 => w(&[(2, 1)]),
        2 | 8 => w(&[(3, 2)]),
        3 => w(&[(3, 2), (2, 1)]).sub(&w(&[(2, 1), (3, 2)]).scale(&two)),
        4 => w(&[(3, 2), (3, 2)]),
        5 => w(&[(2, 1), (2, 1)]),
        6 => w(&[(2, 1), (3, 2)]).sub(&w(&[(3, 2), (2, 1)]).scale(&two)),
        _ => panic!("τ index {k} outside 1..=8"),
    }
}

const DD_ALPHAS_N3: [[i64; 3]; 12] = [
    [2, 1, 0],
    [3, 1, 1],
    [2, 2, 1],
    [1, 1, 0],
    [3, 2, 0],
    [4, 2, 1],
    [2, 0, 0],
    [0, 2, 1],
    [1, 3, 0],
    [0, 0, 2],
    [1, 2, 3],
    [2, 3, 1],
];

fn partitions_n3(max: i64) -> Vec<DegreeVector> {
    let mut out = Vec::new();
    for a in 0..=max {
        for b in 0..=a {
            for c in 0..=b {
                out.push(DegreeVector::new(vec![a, b, c]));
            }
        }
    }
    out
}

pub fn complex(rng: &mut ChaCha8Rng, notes: &mut Vec<String>) -> Result<Vec<Verdict>> {
    let sgn3 = akin_signature(3)?;
    let mut out = Vec::new();

    let mut table_fail = Vec::new();
    for k in 1..=8 {
        let a = tau_n3(k);
        let block = differential_block::<Q>(&a, &sgn3)?;
        let dv = doty_verma_n3(k);
        let t: SymTensor<Q> = sample::tensor(rng, 3, 3, 3, 5);
        if block != dv || apply_combo(&block, &t) != apply_combo(&dv, &t) {
            table_fail.push(format!("τ{k}: {block} vs {dv}"));
        }
    }
    out.push(Verdict::from_failures("n3_blocks_match_doty_verma", 8, table_fail));

    let a = ArrowPair::new(Permutation::new(vec![2, 3, 4, 1])?, 2, 4)?;
    let c = zel_amplitude(&ShiftMatrix::from_terms(4, &[(4, 2, 2)]), &a)?;
    out.push(Verdict::single("arrow_2341_c_is_4", c == 4, format!("computed c={c}, printed 2")));

    let mut dd_inputs: Vec<(DegreeVector, usize, SignatureTable)> = Vec::new();
    for m in [2, 3] {
        for al in DD_ALPHAS_N3 {
            dd_inputs.push((DegreeVector::new(al.to_vec()), m, sgn3.clone()));
        }
    }
    dd_inputs.push((DegreeVector::new(vec![2, 1, 1, 0]), 2, akin_signature(4)?));
    let flip: BTreeSet<Permutation> = [Permutation::new(vec![2, 3, 1])?, Permutation::new(vec![1, 3, 2])?].into();
    let twisted = sgn3.twisted(&flip);
    dd_inputs.push((DegreeVector::new(vec![2, 1, 0]), 3, twisted.clone()));
    dd_inputs.push((DegreeVector::new(vec![0, 2, 1]), 2, twisted));

    let mut dd_fail = Vec::new();
    let mut euler_fail = Vec::new();
    for (alpha, m, sgn) in &dd_inputs {
        let cx = build_complex(alpha, *m, sgn)?;
        let mats = realize_all(&cx)?;
        if !dd_is_zero(&mats) {
            dd_fail.push(format!("α={:?} M={m}", alpha.degrees));
        }
        if cx.euler_characteristic() != schur_dimension_oracle(alpha, *m) {
            euler_fail.push(format!("α={:?} M={m}", alpha.degrees));
        }
        if !alpha.is_partition() {
            let h = homology_from_matrices(&cx, &mats);
            if h[1..].iter().any(|&x| x != 0) {
                notes.push(format!("non-partition α={:?} M={m}: homology {h:?}", alpha.degrees));
            }
        }
    }
    out.push(Verdict::from_failures("dd_zero", dd_inputs.len(), dd_fail));

    let parts: Vec<(DegreeVector, usize)> =
        [2, 3].iter().flat_map(|&m| partitions_n3(4).into_iter().map(move |a| (a, m))).collect();
    let results: Vec<Result<HomologyRow>> = parts
        .par_iter()
        .map(|(alpha, m)| {
            let cx = build_complex(alpha, *m, &sgn3)?;
            let mats = realize_all(&cx)?;
            Ok((
                homology_from_matrices(&cx, &mats),
                schur_dimension_oracle(alpha, *m),
                hook_content_dimension(alpha, *m),
                cx.euler_characteristic(),
            ))
        })
        .collect();
    let mut hom_fail = Vec::new();
    for ((alpha, m), r) in parts.iter().zip(results) {
        let (h, schur, hook, euler) = r?;
        let ok = h[1..].iter().all(|&x| x == 0) && h[0] as i64 == schur && hook == Some(schur);
        if !ok {
            hom_fail.push(format!("α={:?} M={m}: H={h:?} schur={schur} hook={hook:?}", alpha.degrees));
        }
        if euler != schur {
            euler_fail.push(format!("α={:?} M={m}", alpha.degrees));
        }
    }
    out.push(Verdict::from_failures("partition_homology", parts.len(), hom_fail));
    out.push(Verdict::from_failures("euler_characteristic", dd_inputs.len() + parts.len(), euler_fail));
    Ok(out)
}

/// The (N, i, j, r) grid: N ≤ 5, j − i ≤ 4, r ≤ 3, and j − i ≤ 3 when r = 3.
pub fn vs_grid() -> Vec<(usize, usize, usize, u32)> {
    let mut g = Vec::new();
    for n in 2..=5 {
        for i in 1..n {
            for j in i + 1..=n {
                for r in 1..=3u32 {
                    if j - i <= 4 && (r < 3 || j - i <= 3) {
                        g.push((n, i, j, r));
                    }
                }
            }
        }
    }
    g
}

fn vs_triples(rng: &mut ChaCha8Rng, per: usize) -> Vec<VermaTriple<Q>> {
    vs_grid()
        .into_iter()
        .flat_map(|(n, i, j, r)| (0..per).map(move |_| (n, i, j, r)).collect::<Vec<_>>())
        .map(|(n, i, j, r)| {
            let lam = sample::verma_lambda(rng, n, i, j, r);
            VermaTriple::new(n, i, j, r, lam).expect("sampled on the Verma condition")
        })
        .collect()
}

/// Runs `f` on each item with one engine per (N, order); sizes run in parallel.
fn per_size<I: Sync, T: Send>(
    items: &[I],
    size: impl Fn(&I) -> usize + Sync,
    order: fn(usize) -> GeneratorOrder,
    f: impl Fn(&mut PbwEngine<Q>, &I) -> T + Sync,
) -> Vec<T> {
    let sizes: Vec<usize> = items.iter().map(&size).collect::<BTreeSet<_>>().into_iter().collect();
    let mut tagged: Vec<(usize, T)> = sizes
        .par_iter()
        .flat_map_iter(|&n| {
            let mut eng = PbwEngine::new(order(n));
            items
                .iter()
                .enumerate()
                .filter(|(_, it)| size(it) == n)
                .map(|(x, it)| (x, f(&mut eng, it)))
                .collect::<Vec<_>>()
        })
        .collect();
    tagged.sort_by_key(|(x, _)| *x);
    tagged.into_iter().map(|(_, v)| v).collect()
}

fn per_engine<T: Send>(
    triples: &[VermaTriple<Q>],
    order: fn(usize) -> GeneratorOrder,
    f: impl Fn(&mut PbwEngine<Q>, &VermaTriple<Q>) -> T + Sync,
) -> Vec<T> {
    per_size(triples, |t| t.n, order, f)
}

fn describe(t: &VermaTriple<Q>) -> String {
    let l: Vec<String> = t.lambda.iter().map(Q::to_ratio_string).collect();
    format!("n={} ({},{}) r={} λ=[{}]", t.n, t.i, t.j, t.r, l.join(","))
}

pub fn vs(rng: &mut ChaCha8Rng) -> Result<Vec<Verdict>> {
    let triples = vs_triples(rng, 3);
    let mut weight = Vec::new();
    let mut ident = Vec::new();
    let mut zero_amp = Vec::new();
    for t in &triples {
        if !weight_check(t) {
            weight.push(describe(t));
        }
        for p in t.i..t.j {
            if !coefficient_identity_check(t, p)? {
                ident.push(format!("{} p={p}", describe(t)));
            }
        }
        let s0 = crate::shift::sigma_zero(t.n, t.i, t.j, t.r)?;
        let want = Q::from_i64(crate::scalar::factorial(t.r)).pow((t.j - t.i) as i32);
        if vs_amplitude(&s0, t)? != want {
            zero_amp.push(describe(t));
        }
    }

    let singular = per_engine(&triples, GeneratorOrder::lex, |eng, t| {
        let c = vs_element(t).expect("condition holds");
        let rep = eng.singular_report(&c, t);
        (!rep.is_singular() || rep.degenerate()).then(|| describe(t))
    });

    let perturbed: Vec<VermaTriple<Q>> =
        triples.iter().map(|t| t.with_l(t.j, t.l(t.j).clone() + Q::from_i64(1))).collect();
    let negative = per_engine(&perturbed, GeneratorOrder::lex, |eng, t| {
        let c = vs_element_unchecked(t).expect("valid ranges");
        let rep = eng.singular_report(&c, t);
        let raised = rep.raised.iter().any(|v| !v.is_zero());
        let lower_ok = (t.i..t.j - 1).all(|p| coefficient_identity_check(t, p).expect("p in range"));
        (!raised || !lower_ok).then(|| describe(t))
    });

    let arrows: Vec<ArrowPair> = (2..=4).flat_map(arrow_pairs).collect();
    let mut arrow_fail = Vec::new();
    for a in &arrows {
        let c: Q = sample::rational(rng);
        let t = triple_from_arrow(a, &c);
        for s in crate::shift::term_set(t.n, t.i, t.j, t.r)? {
            if vs_amplitude(&s, &t)? != Q::from_i64(zel_amplitude(&s, a)?) {
                arrow_fail.push(format!("{a} σ={s}"));
            }
        }
    }

    let mut out = vec![
        Verdict::from_failures("weight_check", triples.len(), weight),
        Verdict::from_failures("coefficient_identities", triples.len(), ident),
        Verdict::from_failures("sigma_zero_amplitude", triples.len(), zero_amp),
        Verdict::from_failures("singular_check", triples.len(), singular.into_iter().flatten().collect()),
        Verdict::from_failures("negative_control", perturbed.len(), negative.into_iter().flatten().collect()),
        Verdict::from_failures("triple_from_arrow_matches_zel", arrows.len(), arrow_fail),
    ];
    out.extend(erratum_2_4_2()?);
    Ok(out)
}

/// The (2,4,2) element at λ = (3,5,7,5): computed coefficient vs the printed 2.
pub fn erratum_2_4_2() -> Result<Vec<Verdict>> {
    let a = ArrowPair::new(Permutation::new(vec![2, 3, 4, 1])?, 2, 4)?;
    let t = triple_from_arrow(&a, &Q::from_i64(0));
    let c = vs_element(&t)?;
    let s = ShiftMatrix::from_terms(4, &[(4, 2, 2)]);
    let computed = c.coeff(&s);
    let mut eng = PbwEngine::<Q>::new(GeneratorOrder::lex(4));
    let ok = eng.singular_check(&c, &t);
    let mut printed = c.clone();
    printed.add_term(s, Q::from_i64(2) - computed.clone());
    let rejected = !eng.singular_check(&printed, &t);
    Ok(vec![
        Verdict::single(
            "erratum_2_4_2_computed_coefficient_singular",
            computed == Q::from_i64(4) && ok,
            format!("c={}", computed.to_ratio_string()),
        ),
        Verdict::single("erratum_2_4_2_printed_coefficient_rejected", rejected, None),
    ])
}

pub fn pbw(rng: &mut ChaCha8Rng) -> Result<Vec<Verdict>> {
    let sigmas: Vec<ShiftMatrix> = (0..60)
        .map(|_| {
            let n = rng.gen_range(2..=4);
            sample::lower_shift(rng, n, 5)
        })
        .collect();
    let lead = per_size(&sigmas, ShiftMatrix::n, GeneratorOrder::lex, |eng, s| {
        (!eng.leading_coefficient_check(s)).then(|| format!("σ={s}"))
    });
    let lead_rev = per_size(&sigmas, ShiftMatrix::n, GeneratorOrder::reverse_lex, |eng, s| {
        (!eng.leading_coefficient_check(s)).then(|| format!("σ={s}"))
    });

    let triples = vs_triples(rng, 1);
    let shap = |order: fn(usize) -> GeneratorOrder| {
        per_engine(&triples, order, |eng, t| {
            let c = vs_element(t).expect("condition holds");
            let v = eng.shapovalov_coefficient(&c, t.i, t.j, t.r).expect("valid root");
            (v != Q::from_i64(1)).then(|| format!("{} coefficient {}", describe(t), v.to_ratio_string()))
        })
    };
    let shap_lex: Vec<String> = shap(GeneratorOrder::lex).into_iter().flatten().collect();
    let shap_rev: Vec<String> = shap(GeneratorOrder::reverse_lex).into_iter().flatten().collect();

    let sound: Vec<SoundCase> = (0..80)
        .map(|_| {
            let n = rng.gen_range(2..=3);
            let s = sample::lower_shift(rng, n, 3);
            let len = rng.gen_range(0..=4);
            let w = (0..len).map(|_| (rng.gen_range(1..=n), rng.gen_range(1..=n))).collect();
            (s, sample::tensor(rng, n, 2, 3, 4), w)
        })
        .collect();
    let sound_res = per_size(
        &sound,
        |x| x.0.n(),
        GeneratorOrder::reverse_lex,
        |eng, (s, t, word)| {
            let u = eng.polar_to_pbw(s);
            let st = eng.straighten(word);
            let w = ElementaryWord::new(s.n(), word.clone());
            if u.act_on_tensor(t) != apply_weyl(s, t) {
                Some(format!("polar σ={s}"))
            } else if st.act_on_tensor(t) != w.act(t) {
                Some(format!("word {word:?}"))
            } else {
                None
            }
        },
    );

    Ok(vec![
        Verdict::from_failures("leading_coefficient_lex", sigmas.len(), lead.into_iter().flatten().collect()),
        Verdict::from_failures("leading_coefficient_reverse", sigmas.len(), lead_rev.into_iter().flatten().collect()),
        Verdict::from_failures("shapovalov_coefficient_lex", triples.len(), shap_lex),
        Verdict::from_failures("shapovalov_coefficient_reverse", triples.len(), shap_rev),
        Verdict::from_failures("pbw_tensor_soundness", sound.len(), sound_res.into_iter().flatten().collect()),
    ])
}
