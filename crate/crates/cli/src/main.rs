use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use symideal::chains::{self, ChainOptions, ChainSpec, InvarianceReport, StabilizationReport};
use symideal::gb::{self, FiniteIdeal, GbConfig, UniversalMode};
use symideal::poly::{parse_monomial, parse_polynomial, parse_polynomial_list, Monomial, Polynomial, TermOrder, Var, VarSet};
use symideal::reduce::{self, ReductionTrace};
use symideal::symorder::{self, Relation};
use symideal::toric::{self, ToricSpec};
use symideal::{Error, Result};

const SCHEMA: &str = "symideal/1";

#[derive(Parser)]
#[command(name = "symideal", version, about = "Exact computations with symmetric ideals")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Largest S-pair degree before giving up.
    #[arg(long, default_value_t = 40, global = true)]
    max_degree: u64,
    /// Largest number of S-pairs before giving up.
    #[arg(long, default_value_t = 200_000, global = true)]
    max_pairs: usize,
    /// Largest level reached by chain and toric experiments.
    #[arg(long, default_value_t = 8, global = true)]
    max_level: u32,
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Include wall-clock timings (output is then no longer reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Term order comparisons and cancellation witnesses.
    #[command(subcommand)]
    Order(OrderCmd),
    /// Find an injection of indices carrying V to a divisor of W.
    DividesUptoInjection { v: String, w: String },
    /// Well-quasi-order checks on monomial sequences.
    #[command(subcommand)]
    Wqo(WqoCmd),
    /// One equivariant reduction step.
    Reduce(ReduceArgs),
    /// Equivariant normal form with its reduction trace.
    NormalForm {
        #[command(flatten)]
        args: ReduceArgs,
        /// Keep reducing below the leading term.
        #[arg(long)]
        tail: bool,
    },
    /// Gröbner bases over finitely many variables.
    #[command(subcommand)]
    Gb(GbCmd),
    /// Generators of the m-symmetrization.
    Symmetrize {
        /// Level of the input (defaults to the largest index used).
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        m: u32,
        #[arg(required = true)]
        polys: Vec<String>,
    },
    /// Reduced Gröbner basis of the n-projection of generators in R_m.
    Project {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        polys: Vec<String>,
    },
    /// Invariance and stabilization of chains given as JSON documents.
    #[command(subcommand)]
    Chain(ChainCmd),
    /// Kernels of the maps x_u -> f(t_u1, ..., t_uk).
    #[command(subcommand)]
    Toric(ToricCmd),
    /// The monomials s_n of the bad sequence, optionally scanned for good pairs.
    Badseq {
        from: u32,
        /// Last index (defaults to FROM).
        to: Option<u32>,
        #[arg(long)]
        scan: bool,
    },
}

#[derive(Subcommand)]
enum OrderCmd {
    Cmp {
        v: String,
        w: String,
        #[arg(long, default_value = "lex")]
        order: String,
    },
    Witness { v: String, w: String },
}

#[derive(Subcommand)]
enum WqoCmd {
    /// First pair i < j with s_i related to s_j.
    Scan {
        #[arg(long, default_value = "higman")]
        relation: String,
        #[arg(required = true)]
        monomials: Vec<String>,
    },
}

#[derive(Args)]
struct ReduceArgs {
    /// Basis polynomials (repeatable, `@file` reads one per line).
    #[arg(long = "basis", short = 'b')]
    basis: Vec<String>,
    f: String,
}

#[derive(Subcommand)]
enum GbCmd {
    /// Do the symmetrized generators all reduce to zero by the basis.
    TruncateCheck {
        #[arg(long = "basis", short = 'b')]
        basis: Vec<String>,
        #[arg(long = "gen", short = 'g')]
        gens: Vec<String>,
        #[arg(long)]
        n: u32,
    },
    Buchberger {
        #[arg(long, default_value = "lex")]
        order: String,
        polys: Vec<String>,
    },
    Membership {
        #[arg(long, default_value = "lex")]
        order: String,
        #[arg(long = "ideal", short = 'i')]
        ideal: Vec<String>,
        f: String,
    },
    Equal {
        #[arg(long, default_value = "lex")]
        order: String,
        #[arg(long = "left", short = 'l')]
        left: Vec<String>,
        #[arg(long = "right", short = 'r')]
        right: Vec<String>,
    },
    Eliminate {
        #[arg(long, default_value = "grevlex")]
        order: String,
        /// Eliminate every t variable.
        #[arg(long)]
        aux: bool,
        /// Eliminate every x variable with an index above this bound.
        #[arg(long)]
        above: Option<u32>,
        /// Eliminate these variables.
        #[arg(long = "var")]
        vars: Vec<String>,
        polys: Vec<String>,
    },
    /// Does the basis contain a Gröbner basis for every permuted Lex order.
    UniversalCheck {
        #[arg(long)]
        n: u32,
        /// Check this many random permutations instead of all of them.
        #[arg(long)]
        sampled: Option<usize>,
        polys: Vec<String>,
    },
}

#[derive(Subcommand)]
enum ChainCmd {
    Check {
        spec: String,
        #[arg(long)]
        lo: Option<u32>,
        #[arg(long)]
        hi: u32,
    },
    Stabilize {
        spec: String,
        #[arg(long)]
        lo: Option<u32>,
        #[arg(long)]
        hi: u32,
    },
}

#[derive(Subcommand)]
enum ToricCmd {
    Matrix {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: usize,
    },
    Kernel {
        #[arg(long)]
        f: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: u32,
    },
    Squarefree {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: usize,
    },
    Experiment {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n_hi: u32,
    },
    Probe {
        #[arg(long)]
        f: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n_hi: u32,
        /// Membership query `LEVEL:POLYNOMIAL` (repeatable).
        #[arg(long = "member")]
        members: Vec<String>,
    },
}

struct Output {
    command: &'static str,
    text: String,
    result: Value,
    negative: bool,
}

impl Output {
    fn new(command: &'static str, text: String, result: Value) -> Self {
        Output {
            command,
            text,
            result,
            negative: false,
        }
    }

    fn negative_if(mut self, cond: bool) -> Self {
        self.negative = cond;
        self
    }
}

fn read_arg(arg: &str) -> Result<String> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("{path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

fn polys(args: &[String]) -> Result<Vec<Polynomial>> {
    let mut out = Vec::new();
    for a in args {
        if a.starts_with('@') {
            out.extend(parse_polynomial_list(&read_arg(a)?)?);
        } else {
            out.push(parse_polynomial(a)?);
        }
    }
    Ok(out)
}

fn monomials(args: &[String]) -> Result<Vec<Monomial>> {
    let mut out = Vec::new();
    for a in args {
        if a.starts_with('@') {
            for line in read_arg(a)?.lines() {
                let line = line.split('#').next().unwrap_or("").trim();
                if !line.is_empty() {
                    out.push(parse_monomial(line)?);
                }
            }
        } else {
            out.push(parse_monomial(a)?);
        }
    }
    Ok(out)
}

fn order(s: &str) -> Result<TermOrder> {
    s.parse()
}

fn lines(ps: &[Polynomial], order: &TermOrder) -> String {
    ps.iter().map(|p| p.to_text(order) + "\n").collect()
}

fn texts(ps: &[Polynomial], order: &TermOrder) -> Value {
    Value::Array(ps.iter().map(|p| Value::String(p.to_text(order))).collect())
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report types serialize")
}

fn trace_text(trace: &ReductionTrace) -> String {
    let mut s = String::new();
    for (i, st) in trace.steps.iter().enumerate() {
        let _ = writeln!(s, "step {}: generator {} sigma {} term {}", i + 1, st.generator + 1, st.sigma, st.term_text());
    }
    let _ = writeln!(s, "residue: {}", trace.residue);
    s
}

fn trace_json(trace: &ReductionTrace) -> Value {
    let steps: Vec<Value> = trace
        .steps
        .iter()
        .map(|st| {
            json!({
                "generator": st.generator + 1,
                "sigma": st.sigma.to_string(),
                "term": st.term_text(),
            })
        })
        .collect();
    json!({ "steps": steps, "residue": trace.residue.to_string() })
}

fn stabilization_text(r: &StabilizationReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "window: {}..{}", r.window.0, r.window.1);
    let _ = writeln!(s, "level generators gb max-variable-size");
    for l in &r.levels {
        let _ = writeln!(s, "{:>5} {:>10} {:>2} {:>17}", l.n, l.generators, l.gb_size, l.max_variable_size);
    }
    let _ = writeln!(s, "n m equal gb(L_m(I_n)) gb(I_m)");
    for p in &r.pairs {
        let _ = write!(s, "{} {} {} {} {}", p.n, p.m, yes(p.equal), p.symmetrized_gb_size, p.level_gb_size);
        if let Some(ms) = p.millis {
            let _ = write!(s, " {ms}ms");
        }
        s.push('\n');
    }
    match r.stabilization {
        Some(n) => {
            let _ = writeln!(s, "stabilizes within window from N = {n}");
        }
        None => {
            let _ = writeln!(s, "no stabilization within window");
        }
    }
    s
}

fn invariance_text(r: &InvarianceReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "window: {}..{}", r.window.0, r.window.1);
    let _ = writeln!(s, "n m symmetrization projection");
    for p in &r.pairs {
        let _ = writeln!(s, "{} {} {} {}", p.n, p.m, yes(p.symmetrization), yes(p.projection));
    }
    let _ = writeln!(s, "invariant: {}", yes(r.holds));
    s
}

fn load_chain(arg: &str) -> Result<ChainSpec> {
    let text = if arg.trim_start().starts_with('{') { arg.to_string() } else { read_arg(&format!("@{}", arg.trim_start_matches('@')))? };
    ChainSpec::from_json(&text)
}

fn run(cli: &Cli) -> Result<Output> {
    let cfg = GbConfig {
        max_degree: cli.max_degree,
        max_pairs: cli.max_pairs,
    };
    let opts = ChainOptions {
        gb: cfg,
        timing: cli.timing,
        max_level: cli.max_level,
    };
    let lex = TermOrder::Lex;
    Ok(match &cli.command {
        Command::Order(OrderCmd::Cmp { v, w, order: o }) => {
            let (v, w, o) = (parse_monomial(v)?, parse_monomial(w)?, order(o)?);
            symideal::poly::mono_combine(&v, &w, symideal::poly::Combine::Product)?;
            let r = match o.compare(&v, &w) {
                std::cmp::Ordering::Less => "less",
                std::cmp::Ordering::Equal => "equal",
                std::cmp::Ordering::Greater => "greater",
            };
            Output::new("order cmp", format!("{r}\n"), json!({ "order": o.to_string(), "result": r }))
        }
        Command::Order(OrderCmd::Witness { v, w }) => {
            let (v, w) = (parse_monomial(v)?, parse_monomial(w)?);
            let r = symorder::cancellation_witness(&v, &w)?;
            let verified = r.verify(&v, &w);
            let mut text = format!("related: {}\n", yes(r.related));
            if let (Some(phi), Some(sigma), Some(u)) = (&r.phi, &r.sigma, &r.cofactor) {
                let phi: Vec<String> = phi.iter().enumerate().map(|(i, j)| format!("{}->{j}", i + 1)).collect();
                let _ = write!(text, "phi: {}\nsigma: {sigma}\ncofactor: {u}\nverified: {}\n", phi.join(", "), yes(verified));
            }
            let mut doc = to_value(&r);
            doc["verified"] = json!(verified);
            Output::new("order witness", text, doc).negative_if(!r.related)
        }
        Command::DividesUptoInjection { v, w } => {
            let (v, w) = (parse_monomial(v)?, parse_monomial(w)?);
            let r = symorder::injection_divisor(&v, &w)?;
            let text = match &r {
                Some(pi) => format!("injection: {pi}\n"),
                None => "injection: none\n".to_string(),
            };
            let doc = json!({ "injection": r.as_ref().map(to_value) });
            Output::new("divides-upto-injection", text, doc).negative_if(r.is_none())
        }
        Command::Wqo(WqoCmd::Scan { relation, monomials: ms }) => {
            let rel: Relation = relation.parse()?;
            let seq = monomials(ms)?;
            let r = symorder::goodness_scan(&seq, rel)?;
            let text = match r {
                Some((i, j)) => format!("good pair: ({i}, {j})\n"),
                None => "good pair: none\n".to_string(),
            };
            Output::new("wqo scan", text, json!({ "length": seq.len(), "good_pair": r })).negative_if(r.is_none())
        }
        Command::Reduce(a) => {
            let (basis, f) = (polys(&a.basis)?, parse_polynomial(&a.f)?);
            match reduce::reduce_step(&f, &basis)? {
                Some((h, st)) => {
                    let text = format!("generator {} sigma {} term {}\nresult: {h}\n", st.generator + 1, st.sigma, st.term_text());
                    let doc = json!({
                        "reducible": true,
                        "generator": st.generator + 1,
                        "sigma": st.sigma.to_string(),
                        "term": st.term_text(),
                        "result": h.to_string(),
                    });
                    Output::new("reduce", text, doc)
                }
                None => Output::new("reduce", "irreducible\n".into(), json!({ "reducible": false })).negative_if(true),
            }
        }
        Command::NormalForm { args, tail } => {
            let (basis, f) = (polys(&args.basis)?, parse_polynomial(&args.f)?);
            let trace = reduce::normal_form(&f, &basis, *tail)?;
            let ok = reduce::verify_trace(&f, &basis, &trace);
            let text = format!("{}verified: {}\n", trace_text(&trace), yes(ok));
            let mut doc = trace_json(&trace);
            doc["verified"] = json!(ok);
            Output::new("normal-form", text, doc)
        }
        Command::Gb(GbCmd::TruncateCheck { basis, gens, n }) => {
            let r = reduce::truncation_gb_check(&polys(basis)?, &polys(gens)?, *n)?;
            Output::new("gb truncate-check", format!("groebner: {}\n", yes(r)), json!({ "n": n, "groebner": r })).negative_if(!r)
        }
        Command::Gb(GbCmd::Buchberger { order: o, polys: ps }) => {
            let o = order(o)?;
            let b = gb::buchberger(&polys(ps)?, &o, &cfg)?;
            Output::new("gb buchberger", lines(&b, &o), json!({ "order": o.to_string(), "basis": texts(&b, &o) }))
        }
        Command::Gb(GbCmd::Membership { order: o, ideal, f }) => {
            let i = FiniteIdeal::with_config(polys(ideal)?, order(o)?, cfg);
            let r = i.contains(&parse_polynomial(f)?)?;
            Output::new("gb membership", format!("member: {}\n", yes(r)), json!({ "member": r })).negative_if(!r)
        }
        Command::Gb(GbCmd::Equal { order: o, left, right }) => {
            let o = order(o)?;
            let a = FiniteIdeal::with_config(polys(left)?, o.clone(), cfg);
            let b = FiniteIdeal::with_config(polys(right)?, o, cfg);
            let r = a.equals(&b)?;
            Output::new("gb equal", format!("equal: {}\n", yes(r)), json!({ "equal": r })).negative_if(!r)
        }
        Command::Gb(GbCmd::Eliminate { order: o, aux, above, vars, polys: ps }) => {
            let o = order(o)?;
            let drop = match (aux, above, vars.is_empty()) {
                (true, None, true) => VarSet::Aux,
                (false, Some(n), true) => VarSet::IndexAbove(*n),
                (false, None, _) => {
                    let set = vars
                        .iter()
                        .map(|v| {
                            let m = parse_monomial(v)?;
                            match m.factors() {
                                [(var, 1)] => Ok::<Var, Error>(var.clone()),
                                _ => Err(Error::InvalidArgument(format!("{v} is not a variable"))),
                            }
                        })
                        .collect::<Result<_>>()?;
                    VarSet::Explicit(set)
                }
                _ => return Err(Error::InvalidArgument("use exactly one of --aux, --above, --var".into())),
            };
            let i = FiniteIdeal::with_config(polys(ps)?, o.clone(), cfg).eliminate(&drop)?;
            let b = i.groebner_basis()?;
            Output::new("gb eliminate", lines(b, &o), json!({ "order": o.to_string(), "basis": texts(b, &o) }))
        }
        Command::Gb(GbCmd::UniversalCheck { n, sampled, polys: ps }) => {
            let mode = match sampled {
                Some(s) => UniversalMode::Sampled { samples: *s, seed: cli.seed },
                None if *n <= 7 => UniversalMode::Exhaustive,
                None => return Err(Error::InvalidArgument("exhaustive mode needs n <= 7; pass --sampled".into())),
            };
            let r = gb::universal_gb_check(&polys(ps)?, *n, mode, &cfg)?;
            Output::new("gb universal-check", format!("universal: {}\n", yes(r)), json!({ "n": n, "universal": r })).negative_if(!r)
        }
        Command::Symmetrize { n, m, polys: ps } => {
            let b = polys(ps)?;
            let n = n.unwrap_or_else(|| b.iter().filter_map(Polynomial::max_index).max().unwrap_or(1).min(*m));
            let l = chains::symmetrize(&b, n, *m)?;
            Output::new("symmetrize", lines(&l, &lex), json!({ "n": n, "m": m, "count": l.len(), "generators": texts(&l, &lex) }))
        }
        Command::Project { m, n, polys: ps } => {
            let p = chains::project(&polys(ps)?, *m, *n, &cfg)?;
            let o = chains::LEVEL_ORDER;
            Output::new("project", lines(&p, &o), json!({ "m": m, "n": n, "basis": texts(&p, &o) }))
        }
        Command::Chain(ChainCmd::Check { spec, lo, hi }) => {
            let c = load_chain(spec)?;
            let r = chains::invariance_check(&c, lo.unwrap_or(c.first_level), *hi, &opts)?;
            Output::new("chain check", invariance_text(&r), to_value(&r)).negative_if(!r.holds)
        }
        Command::Chain(ChainCmd::Stabilize { spec, lo, hi }) => {
            let c = load_chain(spec)?;
            let r = chains::detect_stabilization(&c, lo.unwrap_or(c.first_level), *hi, &opts)?;
            Output::new("chain stabilize", stabilization_text(&r), to_value(&r)).negative_if(r.stabilization.is_none())
        }
        Command::Toric(ToricCmd::Matrix { n, k }) => {
            let m = toric::sorting_matrix(*n, *k)?;
            Output::new("toric matrix", m.to_grid(), to_value(&m))
        }
        Command::Toric(ToricCmd::Kernel { f, k, n }) => {
            let spec = ToricSpec::new(*k, parse_polynomial(f)?)?;
            let q = toric::kernel(&spec, *n, &cfg)?;
            let o = chains::LEVEL_ORDER;
            let b = q.groebner_basis()?;
            Output::new("toric kernel", lines(b, &o), json!({ "k": k, "n": n, "basis": texts(b, &o) }))
        }
        Command::Toric(ToricCmd::Squarefree { n, k }) => {
            let s = toric::squarefree_generating_set(*n, *k)?;
            Output::new("toric squarefree", lines(&s, &lex), json!({ "n": n, "k": k, "generators": texts(&s, &lex) }))
        }
        Command::Toric(ToricCmd::Experiment { k, n_hi }) => {
            let r = toric::squarefree_stabilization_experiment(*k, *n_hi, &opts)?;
            let mut text = String::from("level agrees kernel-gb generating-set max-variable-size\n");
            for l in &r.levels {
                let _ = writeln!(text, "{} {} {} {} {}", l.n, yes(l.equal), l.kernel_gb_size, l.generating_set_size, l.max_variable_size);
            }
            text.push_str(&stabilization_text(&r.stabilization));
            let _ = writeln!(text, "max variable size M: {}", r.max_variable_size);
            match r.size_bound {
                Some(b) => {
                    let _ = writeln!(text, "size bound max(N, kM): {b}");
                }
                None => text.push_str("size bound max(N, kM): undetermined in window\n"),
            }
            let _ = writeln!(
                text,
                "theorem bound 4k: {} ({})",
                r.theorem_bound,
                if r.beyond_theorem_bound { "pairs beyond it checked" } else { "beyond window, evidence only" }
            );
            let _ = writeln!(text, "violations above 4k: {}", r.violations.len());
            let _ = writeln!(text, "consistent: {}", yes(r.consistent()));
            Output::new("toric experiment", text, to_value(&r)).negative_if(!r.consistent())
        }
        Command::Toric(ToricCmd::Probe { f, k, n_hi, members }) => {
            let spec = ToricSpec::new(*k, parse_polynomial(f)?)?;
            let queries = members
                .iter()
                .map(|q| {
                    let (n, p) = q
                        .split_once(':')
                        .ok_or_else(|| Error::InvalidArgument(format!("membership query {q:?} is not LEVEL:POLYNOMIAL")))?;
                    let n: u32 = n.trim().parse().map_err(|_| Error::InvalidArgument(format!("bad level in {q:?}")))?;
                    Ok((n, parse_polynomial(p)?))
                })
                .collect::<Result<Vec<_>>>()?;
            let r = toric::conjecture_probe(&spec, *n_hi, &queries, &opts)?;
            let o = chains::LEVEL_ORDER;
            let mut text = format!("f = {} (occurring variables: {}, tau = {})\n", r.spec.f, r.normalization.i, r.normalization.tau);
            for l in &r.levels {
                let _ = writeln!(text, "Q_{}: {} generators", l.n, l.kernel.len());
                for g in &l.kernel {
                    let _ = writeln!(text, "  {}", g.to_text(&o));
                }
            }
            text.push_str(&invariance_text(&r.invariance));
            text.push_str(&stabilization_text(&r.stabilization));
            for m in &r.memberships {
                let _ = writeln!(text, "member of Q_{}: {} {}", m.n, yes(m.member), m.polynomial);
            }
            Output::new("toric probe", text, to_value(&r))
        }
        Command::Badseq { from, to, scan } => {
            let to = to.unwrap_or(*from);
            if to < *from {
                return Err(Error::InvalidArgument(format!("{to} is below {from}")));
            }
            let seq = (*from..=to).map(symorder::bad_sequence).collect::<Result<Vec<_>>>()?;
            let mut text: String = seq.iter().zip(*from..).map(|(s, n)| format!("s{n} = {s}\n")).collect();
            let mut doc = json!({ "from": from, "to": to, "monomials": seq.iter().map(|s| s.to_string()).collect::<Vec<_>>() });
            let mut negative = false;
            if *scan {
                let r = symorder::goodness_scan(&seq, Relation::Injection)?;
                match r {
                    Some((i, j)) => {
                        let _ = writeln!(text, "good pair: (s{}, s{})", from + i as u32 - 1, from + j as u32 - 1);
                    }
                    None => text.push_str("good pair: none\n"),
                }
                doc["good_pair"] = json!(r);
                negative = r.is_some();
            }
            Output::new("badseq", text, doc).negative_if(negative)
        }
    })
}

fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Text => emit(&out.text),
                Format::Json => {
                    let doc = json!({ "schema": SCHEMA, "command": out.command, "result": out.result });
                    emit(&format!("{}\n", serde_json::to_string_pretty(&doc).expect("json values serialize")));
                }
            }
            ExitCode::from(u8::from(out.negative))
        }
        Err(e) => {
            eprintln!("error: {e}");
            if cli.format == Format::Json {
                let kind = match &e {
                    Error::CapExceeded { .. } => "cap-exceeded",
                    Error::Parse(_) => "parse",
                    _ => "usage",
                };
                let doc = json!({ "schema": SCHEMA, "error": { "kind": kind, "message": e.to_string() } });
                emit(&format!("{}\n", serde_json::to_string_pretty(&doc).expect("json values serialize")));
            }
            ExitCode::from(match e {
                Error::CapExceeded { .. } => 3,
                _ => 2,
            })
        }
    }
}
