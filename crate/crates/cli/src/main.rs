use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use weylpol::bruhat::{akin_signature, verify_square_property, ArrowPair, Permutation};
use weylpol::json::ZelReport;
use weylpol::pbw::{GeneratorOrder, PbwEngine};
use weylpol::shift::{term_set, DegreeVector, ShiftMatrix};
use weylpol::symtensor::{apply_weyl, apply_weyl_differential};
use weylpol::verify::{self, Verdict, VerifyConfig};
use weylpol::verma::{vs_amplitude, vs_element, vs_element_unchecked, VermaTriple};
use weylpol::weyl_ops::{apply_combo, PolarCombo};
use weylpol::zelevinsky::{build_complex, dd_is_zero, homology_from_matrices, realize_all, zel_amplitude};
use weylpol::{Scalar, SymTensorQ, Q};

#[derive(Parser)]
#[command(name = "weylpol", version, about = "Weyl polarizations, Zelevinsky complexes and Verma–Shapovalov elements")]
struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Include wall-clock timing in the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List TERM(i, j, r).
    TermSet {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        r: u32,
    },
    /// Amplitude of one shift, for a Verma triple or an arrow pair.
    Amplitude {
        /// ShiftMatrix JSON, inline or a file path.
        #[arg(long)]
        shift: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        root: Option<Vec<usize>>,
        #[arg(long)]
        r: Option<u32>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambda: Option<Vec<String>>,
        /// Arrow source in one-line notation, e.g. 2,3,4,1.
        #[arg(long, value_delimiter = ',', conflicts_with = "lambda")]
        perm: Option<Vec<usize>>,
        /// Transposition i,j of the arrow pair.
        #[arg(long, value_delimiter = ',', requires = "perm")]
        transposition: Option<Vec<usize>>,
    },
    /// Verma–Shapovalov element VS(τ).
    Vs {
        #[command(flatten)]
        triple: TripleArgs,
        /// Also print the PBW form.
        #[arg(long)]
        pbw: bool,
        /// Run the singular-vector and normalization checks.
        #[arg(long)]
        check: bool,
        /// Skip the Verma condition check.
        #[arg(long)]
        no_check: bool,
        #[arg(long, value_enum, default_value_t = OrderArg::Lex)]
        order: OrderArg,
    },
    /// Zelevinsky complex ZEL(α, V).
    Zel {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        alpha: Vec<i64>,
        /// dim V.
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        check_dd: bool,
        #[arg(long)]
        homology: bool,
        /// Also write the complex report to this file.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Akin BGG signature table.
    Signatures {
        #[arg(long)]
        n: usize,
    },
    /// PBW expansion of a polarization P(σ) or a PolarCombo.
    Pbw {
        /// ShiftMatrix JSON, inline or a file path.
        #[arg(long, conflicts_with = "combo")]
        shift: Option<String>,
        /// PolarCombo JSON, inline or a file path.
        #[arg(long)]
        combo: Option<String>,
        /// lex, reverse, or an explicit lowering list such as 31,21,32.
        #[arg(long, default_value = "lex")]
        order: String,
    },
    /// Apply P(σ) or a PolarCombo to a tensor.
    Apply {
        #[arg(long, conflicts_with = "combo")]
        shift: Option<String>,
        #[arg(long)]
        combo: Option<String>,
        /// SymTensor JSON, inline or a file path.
        #[arg(long)]
        tensor: String,
        /// Use the differential-operator action (P(σ) only).
        #[arg(long)]
        differential: bool,
    },
    /// Run verification suites.
    Verify {
        /// equivalence, recurrences, signatures, complex, vs, pbw or all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        n: Option<usize>,
    },
}

#[derive(Args, Clone)]
struct TripleArgs {
    #[arg(long)]
    n: usize,
    /// Root i,j with i < j.
    #[arg(long, value_delimiter = ',')]
    root: Vec<usize>,
    #[arg(long)]
    r: u32,
    /// l_1,…,l_N as integers or p/q.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    lambda: Vec<String>,
}

#[derive(ValueEnum, Clone, Copy)]
enum OrderArg {
    Lex,
    Reverse,
}

impl OrderArg {
    fn build(self, n: usize) -> GeneratorOrder {
        match self {
            OrderArg::Lex => GeneratorOrder::lex(n),
            OrderArg::Reverse => GeneratorOrder::reverse_lex(n),
        }
    }
}

#[derive(Serialize)]
struct RunReport {
    command: String,
    inputs: Value,
    outputs: Value,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    verdicts: Vec<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing_ms: Option<u128>,
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<weylpol::Error> for Failure {
    fn from(e: weylpol::Error) -> Self {
        if e.is_input() {
            Failure::Input(e.to_string())
        } else {
            Failure::Internal(e.to_string())
        }
    }
}

type Out = Result<RunReport, Failure>;

fn input<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Input(msg.into()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(v) = std::env::var("WEYLPOL_THREADS") {
        match v.parse::<usize>() {
            Ok(k) if k > 0 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
            }
            _ => {
                eprintln!("error: WEYLPOL_THREADS must be a positive integer");
                return ExitCode::from(2);
            }
        }
    }
    let start = Instant::now();
    match dispatch(&cli.cmd) {
        Ok(mut report) => {
            if cli.timing {
                report.timing_ms = Some(start.elapsed().as_millis());
            }
            let text = if cli.pretty {
                render_pretty(&report)
            } else {
                serde_json::to_string(&report).expect("report serializes") + "\n"
            };
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let mut out = std::io::stdout().lock();
            if let Err(e) = out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    eprintln!("error: cannot write output: {e}");
                    return ExitCode::from(1);
                }
            }
            if report.verdicts.iter().all(|v| v.passed) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal error: {m}");
            ExitCode::from(1)
        }
    }
}

fn render_pretty(r: &RunReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "command: {}", r.command);
    let _ = writeln!(s, "inputs:  {}", r.inputs);
    let _ = writeln!(s, "{}", serde_json::to_string_pretty(&r.outputs).expect("serializes"));
    if !r.verdicts.is_empty() {
        let w = r.verdicts.iter().map(|v| v.name.len()).max().unwrap_or(0);
        let _ = writeln!(s, "{:<w$}  result  cases", "check");
        for v in &r.verdicts {
            let res = if v.passed { "PASS" } else { "FAIL" };
            let _ = write!(s, "{:<w$}  {res:<6}  {}", v.name, v.cases);
            if let Some(d) = &v.detail {
                let _ = write!(s, "  {d}");
            }
            s.push('\n');
        }
    }
    if let Some(t) = r.timing_ms {
        let _ = writeln!(s, "time: {t} ms");
    }
    s
}

fn dispatch(cmd: &Cmd) -> Out {
    match cmd {
        Cmd::TermSet { n, i, j, r } => cmd_term_set(*n, *i, *j, *r),
        Cmd::Amplitude { shift, n, root, r, lambda, perm, transposition } => {
            let triple = match (n, root, r, lambda) {
                (Some(n), Some(root), Some(r), Some(lambda)) => {
                    Some(TripleArgs { n: *n, root: root.clone(), r: *r, lambda: lambda.clone() })
                }
                (None, None, None, None) => None,
                _ => return input("a Verma triple needs all of --n, --root, --r and --lambda"),
            };
            cmd_amplitude(shift, triple.as_ref(), perm.as_deref(), transposition.as_deref())
        }
        Cmd::Vs { triple, pbw, check, no_check, order } => cmd_vs(triple, *pbw, *check, *no_check, *order),
        Cmd::Zel { n, alpha, dim, check_dd, homology, json } => {
            cmd_zel(*n, alpha, *dim, *check_dd, *homology, json.as_ref())
        }
        Cmd::Signatures { n } => cmd_signatures(*n),
        Cmd::Pbw { shift, combo, order } => cmd_pbw(shift.as_deref(), combo.as_deref(), order),
        Cmd::Apply { shift, combo, tensor, differential } => {
            cmd_apply(shift.as_deref(), combo.as_deref(), tensor, *differential)
        }
        Cmd::Verify { suite, seed, n } => cmd_verify(suite, *seed, *n),
    }
}

fn report(command: &str, inputs: Value, outputs: Value, verdicts: Vec<Verdict>) -> RunReport {
    RunReport { command: command.into(), inputs, outputs, verdicts, timing_ms: None }
}

fn verdict(name: &str, passed: bool) -> Verdict {
    Verdict { name: name.into(), passed, cases: 1, detail: None }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializes")
}

/// Inline JSON if it starts with '{', otherwise a file path.
fn load<T: serde::de::DeserializeOwned>(arg: &str, what: &str) -> Result<T, Failure> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| Failure::Input(format!("cannot read {what} file {arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("invalid {what} JSON: {e}")))
}

fn cmd_term_set(n: usize, i: usize, j: usize, r: u32) -> Out {
    let ts = term_set(n, i, j, r)?;
    Ok(report("term-set", json!({"n": n, "i": i, "j": j, "r": r}), to_value(&ts), vec![]))
}

fn triple(t: &TripleArgs, checked: bool) -> Result<VermaTriple<Q>, Failure> {
    let [i, j] = t.root[..] else { return input("--root expects two indices i,j") };
    let lambda = t
        .lambda
        .iter()
        .map(|x| Q::parse_ratio(x.trim()).ok_or_else(|| Failure::Input(format!("bad rational {x:?} in --lambda"))))
        .collect::<Result<Vec<Q>, _>>()?;
    Ok(if checked {
        VermaTriple::new(t.n, i, j, t.r, lambda)?
    } else {
        VermaTriple::new_unchecked(t.n, i, j, t.r, lambda)?
    })
}

fn cmd_amplitude(shift: &str, t: Option<&TripleArgs>, perm: Option<&[usize]>, transposition: Option<&[usize]>) -> Out {
    let s: ShiftMatrix = load(shift, "shift")?;
    match (t, perm) {
        (Some(t), None) => {
            let t = triple(t, true)?;
            let a = vs_amplitude(&s, &t)?;
            Ok(report("amplitude", json!({"shift": s, "triple": t}), json!(a.to_ratio_string()), vec![]))
        }
        (None, Some(p)) => {
            let Some(&[i, j]) = transposition else { return input("--transposition expects i,j") };
            let a = ArrowPair::new(Permutation::new(p.to_vec())?, i, j)?;
            let amp = zel_amplitude(&s, &a)?;
            let inputs =
                json!({"shift": s, "arrow": {"from": a.source, "to": a.target, "transposition": [i, j], "r": a.r}});
            Ok(report("amplitude", inputs, json!(amp), vec![]))
        }
        _ => input("give either --n/--root/--r/--lambda or --perm/--transposition"),
    }
}

fn cmd_vs(args: &TripleArgs, pbw: bool, check: bool, no_check: bool, order: OrderArg) -> Out {
    let t = triple(args, !no_check)?;
    let c = if no_check { vs_element_unchecked(&t)? } else { vs_element(&t)? };
    let mut outputs = json!({"combo": c});
    let mut verdicts = Vec::new();
    if pbw || check {
        let mut eng = PbwEngine::<Q>::new(order.build(t.n));
        if pbw {
            outputs["pbw"] = to_value(&eng.combo_to_pbw(&c));
        }
        if check {
            let rep = eng.singular_report(&c, &t);
            verdicts.push(verdict("singular", rep.is_singular() && !rep.degenerate()));
            let coef = eng.shapovalov_coefficient(&c, t.i, t.j, t.r)?;
            verdicts.push(verdict("shapovalov_coefficient_is_1", coef == Q::from_i64(1)));
            verdicts.push(verdict("weight", weylpol::verma::weight_check(&t)));
        }
    }
    Ok(report("vs", to_value(&t), outputs, verdicts))
}

fn cmd_zel(n: usize, alpha: &[i64], dim: usize, check_dd: bool, homology: bool, out: Option<&PathBuf>) -> Out {
    if alpha.len() != n {
        return input(format!("--alpha has {} entries, expected {n}", alpha.len()));
    }
    if n == 0 {
        return input("n must be positive");
    }
    let alpha = DegreeVector::new(alpha.to_vec());
    let sgn = akin_signature(n)?;
    let cx = build_complex(&alpha, dim, &sgn)?;
    let mut verdicts = Vec::new();
    let (mut dd, mut hom) = (None, None);
    if check_dd || homology {
        let mats = realize_all(&cx)?;
        if check_dd {
            let z = dd_is_zero(&mats);
            verdicts.push(verdict("dd_zero", z));
            dd = Some(z);
        }
        if homology {
            hom = Some(homology_from_matrices(&cx, &mats));
        }
    }
    let rep = ZelReport::new(&cx, dd, hom);
    if let Some(path) = out {
        let text = serde_json::to_string_pretty(&rep).expect("serializes");
        std::fs::write(path, text).map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(report("zel", json!({"n": n, "alpha": alpha.degrees, "dim": dim}), to_value(&rep), verdicts))
}

fn cmd_signatures(n: usize) -> Out {
    let t = akin_signature(n)?;
    let ok = verify_square_property(&t);
    Ok(report("signatures", json!({"n": n}), to_value(&t), vec![verdict("square_property", ok)]))
}

fn parse_order(spec: &str, n: usize) -> Result<GeneratorOrder, Failure> {
    match spec {
        "lex" => Ok(GeneratorOrder::lex(n)),
        "reverse" => Ok(GeneratorOrder::reverse_lex(n)),
        list => {
            let pairs = list
                .split(',')
                .map(|g| {
                    let d: Vec<usize> =
                        g.trim().chars().map(|c| c.to_digit(10).map(|x| x as usize)).collect::<Option<_>>()?;
                    match d[..] {
                        [a, b] => Some((a, b)),
                        _ => None,
                    }
                })
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Failure::Input(format!("bad --order {list:?}; use lex, reverse or e.g. 31,21,32")))?;
            Ok(GeneratorOrder::new(n, pairs)?)
        }
    }
}

fn load_combo(shift: Option<&str>, combo: Option<&str>) -> Result<PolarCombo<Q>, Failure> {
    match (shift, combo) {
        (Some(s), None) => Ok(PolarCombo::single(load::<ShiftMatrix>(s, "shift")?)),
        (None, Some(c)) => load(c, "combo"),
        _ => input("give exactly one of --shift or --combo"),
    }
}

fn cmd_pbw(shift: Option<&str>, combo: Option<&str>, order: &str) -> Out {
    let c = load_combo(shift, combo)?;
    if c.terms().keys().any(|s| !s.is_strictly_lower()) {
        return input("pbw expects strictly lower-triangular shifts");
    }
    let o = parse_order(order, c.n())?;
    let u = PbwEngine::<Q>::new(o).combo_to_pbw(&c);
    Ok(report("pbw", json!({"combo": c, "order": order}), to_value(&u), vec![]))
}

fn cmd_apply(shift: Option<&str>, combo: Option<&str>, tensor: &str, differential: bool) -> Out {
    let t: SymTensorQ = load(tensor, "tensor")?;
    let c = load_combo(shift, combo)?;
    if c.n() != t.n() {
        return input(format!("operator has n={} but tensor has n={}", c.n(), t.n()));
    }
    let img = if differential {
        let Some(s) = shift else { return input("--differential requires --shift") };
        apply_weyl_differential(&load::<ShiftMatrix>(s, "shift")?, &t)
    } else if let Some(s) = shift {
        apply_weyl(&load::<ShiftMatrix>(s, "shift")?, &t)
    } else {
        apply_combo(&c, &t)
    };
    Ok(report("apply", json!({"operator": c, "tensor": t, "differential": differential}), to_value(&img), vec![]))
}

fn cmd_verify(suite: &str, seed: u64, n: Option<usize>) -> Out {
    let reports = verify::run(suite, &VerifyConfig { seed, n })?;
    let verdicts: Vec<Verdict> = reports
        .iter()
        .flat_map(|r| r.verdicts.iter().map(move |v| Verdict { name: format!("{}/{}", r.suite, v.name), ..v.clone() }))
        .collect();
    Ok(report("verify", json!({"suite": suite, "seed": seed, "n": n}), to_value(&reports), verdicts))
}
