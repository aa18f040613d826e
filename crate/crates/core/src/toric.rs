//! Kernels `Q_n` of the maps `φ_n: x_u ↦ f(t_{u_1}, ..., t_{u_k})`, the
//! square-free sorting construction, and window experiments on the chains
//! these kernels form.
//!
//! The polynomial `f` is written in `t[1], ..., t[k]`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::chains::{detect_on_levels, invariance_check, variable_size, ChainOptions, ChainSpec, InvarianceReport, StabilizationReport, LEVEL_ORDER};
use crate::error::{Error, Result};
use crate::gb::{FiniteIdeal, GbConfig};
use crate::poly::{Monomial, Permutation, Polynomial, TermOrder, Var, VarSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ToricSpec {
    pub k: usize,
    pub f: Polynomial,
}

impl ToricSpec {
    pub fn new(k: usize, f: Polynomial) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("arity must be positive".into()));
        }
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        for v in f.variables() {
            match v {
                Var::T(i) if (i as usize) <= k => {}
                other => return Err(Error::InvalidArgument(format!("{other} is not one of t[1]..t[{k}]"))),
            }
        }
        Ok(ToricSpec { k, f })
    }

    /// `t[1]*...*t[k]`.
    pub fn squarefree(k: usize) -> Self {
        let m = Monomial::from_factors((1..=k as u32).map(|i| (Var::t(i), 1)));
        ToricSpec {
            k,
            f: Polynomial::from_monomial(m),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Normalized {
    /// Number of `t` variables that occur.
    pub i: usize,
    /// Sends the occurring indices, in increasing order, onto `1..i`.
    pub tau: Permutation,
    pub f: Polynomial,
}

/// Renames the occurring `t` variables to `t[1..i]` preserving their order.
pub fn normalize_f(spec: &ToricSpec) -> Result<Normalized> {
    if spec.f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let occurring: Vec<u32> = spec
        .f
        .variables()
        .into_iter()
        .filter_map(|v| match v {
            Var::T(i) => Some(i),
            _ => None,
        })
        .collect();
    let pairs: Vec<(u32, u32)> = occurring.iter().enumerate().map(|(j, &i)| (i, j as u32 + 1)).collect();
    let tau = Permutation::extend_injection(&pairs, spec.k as u32)?;
    let f = spec.f.substitute(&|v| match v {
        Var::T(i) => Some(Polynomial::var(Var::t(tau.apply(*i)))),
        _ => None,
    });
    Ok(Normalized {
        i: occurring.len(),
        tau,
        f,
    })
}

/// Ordered `k`-tuples of distinct entries from `1..n`, in Lex order.
pub fn tuples(n: u32, k: usize) -> Vec<Vec<u32>> {
    fn go(n: u32, k: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in 1..=n {
            if !cur.contains(&i) {
                cur.push(i);
                go(n, k, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Increasing `k`-subsets of `1..n`, in Lex order.
pub fn sorted_tuples(n: u32, k: usize) -> Vec<Vec<u32>> {
    tuples(n, k).into_iter().filter(|u| u.windows(2).all(|w| w[0] < w[1])).collect()
}

fn xvar(u: &[u32]) -> Var {
    Var::tuple(u).expect("tuples have distinct positive entries")
}

/// The images `x_u ↦ f(t_{u_1}, ..., t_{u_k})` for every `u` of `<n>^k`.
pub fn phi_bindings(spec: &ToricSpec, n: u32) -> Result<Vec<(Var, Polynomial)>> {
    if (n as usize) < spec.k {
        return Err(Error::InvalidArgument(format!("n = {n} is below k = {}", spec.k)));
    }
    Ok(tuples(n, spec.k)
        .into_iter()
        .map(|u| {
            let image = spec.f.substitute(&|v| match v {
                Var::T(j) => Some(Polynomial::var(Var::t(u[*j as usize - 1]))),
                _ => None,
            });
            (xvar(&u), image)
        })
        .collect())
}

/// Kernel of `x ↦ image`, found by eliminating every `t` variable from the
/// ideal of the graphs `x - image`.
pub fn kernel_by_elimination(bindings: &[(Var, Polynomial)], cfg: &GbConfig) -> Result<FiniteIdeal> {
    let gens: Vec<Polynomial> = bindings.iter().map(|(x, img)| &Polynomial::var(x.clone()) - img).collect();
    FiniteIdeal::with_config(gens, LEVEL_ORDER, *cfg).eliminate(&VarSet::Aux)
}

/// `Q_n = ker φ_n`.
pub fn kernel(spec: &ToricSpec, n: u32, cfg: &GbConfig) -> Result<FiniteIdeal> {
    kernel_by_elimination(&phi_bindings(spec, n)?, cfg)
}

/// The 0/1 matrix with rows `t_1..t_n` and one column per increasing
/// `k`-subset of `1..n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SortingMatrix {
    pub n: u32,
    pub k: usize,
    pub columns: Vec<Vec<u32>>,
    pub rows: Vec<Vec<u8>>,
}

impl SortingMatrix {
    /// Labels `x12`, `t3`, with comma-separated entries once any index
    /// exceeds 9.
    pub fn to_grid(&self) -> String {
        let wide = self.n > 9;
        let col_labels: Vec<String> = self
            .columns
            .iter()
            .map(|u| {
                let parts: Vec<String> = u.iter().map(u32::to_string).collect();
                format!("x{}", parts.join(if wide { "," } else { "" }))
            })
            .collect();
        let row_labels: Vec<String> = (1..=self.n).map(|i| format!("t{i}")).collect();
        let lw = row_labels.iter().map(String::len).max().unwrap_or(0);
        let cw = col_labels.iter().map(String::len).max().unwrap_or(1);
        let mut s = String::new();
        s.push_str(&" ".repeat(lw));
        for c in &col_labels {
            let _ = write!(s, " {c:>cw$}");
        }
        s.push('\n');
        for (label, row) in row_labels.iter().zip(&self.rows) {
            let _ = write!(s, "{label:<lw$}");
            for e in row {
                let _ = write!(s, " {e:>cw$}");
            }
            s.push('\n');
        }
        s
    }
}

pub fn sorting_matrix(n: u32, k: usize) -> Result<SortingMatrix> {
    if k == 0 || (n as usize) < k {
        return Err(Error::InvalidArgument(format!("need n >= k >= 1, got n = {n}, k = {k}")));
    }
    let columns = sorted_tuples(n, k);
    let rows = (1..=n)
        .map(|i| columns.iter().map(|u| u8::from(u.contains(&i))).collect())
        .collect();
    Ok(SortingMatrix { n, k, columns, rows })
}

pub fn sort_word(word: &[u32]) -> Vec<u32> {
    let mut w = word.to_vec();
    w.sort_unstable();
    w
}

fn interleave(u: &[u32], v: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let merged = sort_word(&[u, v].concat());
    let odd = merged.iter().step_by(2).copied().collect();
    let even = merged.iter().skip(1).step_by(2).copied().collect();
    (odd, even)
}

/// Odd and even positions of the merged entries of two increasing tuples
/// with `2k` distinct entries.
pub fn sorted_pair(u: &[u32], v: &[u32]) -> Result<(Vec<u32>, Vec<u32>)> {
    let increasing = |w: &[u32]| w.windows(2).all(|p| p[0] < p[1]);
    if u.len() != v.len() || !increasing(u) || !increasing(v) {
        return Err(Error::InvalidArgument("sorted_pair needs two increasing tuples of equal length".into()));
    }
    let all: BTreeSet<u32> = u.iter().chain(v).copied().collect();
    if all.len() != 2 * u.len() {
        return Err(Error::InvalidArgument("sorted_pair needs pairwise distinct entries".into()));
    }
    Ok(interleave(u, v))
}

/// Generators of `Q_n` for `f = t[1]*...*t[k]`: the binomials
/// `x_u - x_{sort(u)}` for unsorted `u`, and the quadrics
/// `x_u x_v - x_{u'} x_{v'}` over pairs of increasing tuples, where `u', v'`
/// are the odd and even positions of the merged entries. Tuples may share
/// entries; each shared entry then lands once in `u'` and once in `v'`.
pub fn squarefree_generating_set(n: u32, k: usize) -> Result<Vec<Polynomial>> {
    if k == 0 || (n as usize) < k {
        return Err(Error::InvalidArgument(format!("need n >= k >= 1, got n = {n}, k = {k}")));
    }
    let mono = |us: &[&[u32]]| Monomial::from_factors(us.iter().map(|u| (xvar(u), 1)));
    let mut out: BTreeSet<Polynomial> = BTreeSet::new();
    for u in tuples(n, k) {
        let s = sort_word(&u);
        if s != u {
            out.insert(Polynomial::binomial(mono(&[&u]), mono(&[&s])).sign_normalized(&TermOrder::Lex));
        }
    }
    let sorted = sorted_tuples(n, k);
    for (a, u) in sorted.iter().enumerate() {
        for v in &sorted[a + 1..] {
            let (p, q) = interleave(u, v);
            if (&p, &q) != (u, v) {
                let b = Polynomial::binomial(mono(&[u, v]), mono(&[&p, &q]));
                out.insert(b.sign_normalized(&TermOrder::Lex));
            }
        }
    }
    let mut v: Vec<Polynomial> = out.into_iter().collect();
    v.sort_by(|a, b| a.cmp_in(b, &TermOrder::Lex));
    Ok(v)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelAgreement {
    pub n: u32,
    pub equal: bool,
    pub kernel_gb_size: usize,
    pub generating_set_size: usize,
    pub max_variable_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquarefreeExperiment {
    pub k: usize,
    pub window: (u32, u32),
    pub levels: Vec<LevelAgreement>,
    /// Largest variable size among all generating sets in the window.
    pub max_variable_size: usize,
    /// `max(N, k * M)` with `N` the window stabilization index.
    pub size_bound: Option<u32>,
    pub theorem_bound: u32,
    /// Whether some checked pair has `n > 4k`.
    pub beyond_theorem_bound: bool,
    /// Checked pairs with `n > 4k` whose ideals differ.
    pub violations: Vec<(u32, u32)>,
    pub stabilization: StabilizationReport,
}

impl SquarefreeExperiment {
    pub fn consistent(&self) -> bool {
        self.levels.iter().all(|l| l.equal) && self.violations.is_empty()
    }
}

fn experiment_caps(k: usize, hi: u32, opts: &ChainOptions) -> Result<()> {
    if k > 3 {
        return Err(Error::CapExceeded { cap: "max-k", limit: 3 });
    }
    if hi > opts.max_level {
        return Err(Error::CapExceeded {
            cap: "max-level",
            limit: opts.max_level as usize,
        });
    }
    Ok(())
}

/// Builds `Q_n` for `f = t[1]*...*t[k]` both by elimination and from
/// [`squarefree_generating_set`] for `k <= n <= n_hi`, compares them, and
/// runs the stabilization check on the window.
pub fn squarefree_stabilization_experiment(k: usize, n_hi: u32, opts: &ChainOptions) -> Result<SquarefreeExperiment> {
    experiment_caps(k, n_hi, opts)?;
    let lo = k as u32;
    if n_hi < lo {
        return Err(Error::InvalidArgument(format!("n_hi = {n_hi} is below k = {k}")));
    }
    let spec = ToricSpec::squarefree(k);
    let per_level: Vec<(FiniteIdeal, LevelAgreement)> = (lo..=n_hi)
        .into_par_iter()
        .map(|n| {
            let q = kernel(&spec, n, &opts.gb)?;
            let s = squarefree_generating_set(n, k)?;
            let si = FiniteIdeal::with_config(s.clone(), LEVEL_ORDER, opts.gb);
            let equal = si.equals(&q)?;
            let agreement = LevelAgreement {
                n,
                equal,
                kernel_gb_size: q.groebner_basis()?.len(),
                generating_set_size: s.len(),
                max_variable_size: s.iter().map(variable_size).max().unwrap_or(0),
            };
            Ok((q, agreement))
        })
        .collect::<Result<_>>()?;
    let (levels, agreement): (Vec<FiniteIdeal>, Vec<LevelAgreement>) = per_level.into_iter().unzip();
    let stabilization = detect_on_levels(&levels, lo, n_hi, opts)?;
    let m = agreement.iter().map(|l| l.max_variable_size).max().unwrap_or(0);
    let theorem_bound = 4 * k as u32;
    let violations = stabilization
        .pairs
        .iter()
        .filter(|p| p.n > theorem_bound && !p.equal)
        .map(|p| (p.n, p.m))
        .collect();
    Ok(SquarefreeExperiment {
        k,
        window: (lo, n_hi),
        levels: agreement,
        max_variable_size: m,
        size_bound: stabilization.stabilization.map(|n| n.max(k as u32 * m as u32)),
        theorem_bound,
        beyond_theorem_bound: n_hi > theorem_bound,
        violations,
        stabilization,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipCheck {
    pub n: u32,
    pub polynomial: Polynomial,
    pub member: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeLevel {
    pub n: u32,
    pub kernel: Vec<Polynomial>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub spec: ToricSpec,
    pub normalization: Normalized,
    pub levels: Vec<ProbeLevel>,
    pub invariance: InvarianceReport,
    pub stabilization: StabilizationReport,
    pub memberships: Vec<MembershipCheck>,
}

/// Evidence gathering for the chain induced by `f`: kernels for
/// `k <= n <= n_hi`, both invariance inclusions, the stabilization window,
/// and membership of the given `(n, polynomial)` queries in `Q_n`.
pub fn conjecture_probe(spec: &ToricSpec, n_hi: u32, queries: &[(u32, Polynomial)], opts: &ChainOptions) -> Result<ProbeReport> {
    experiment_caps(spec.k, n_hi, opts)?;
    let normalization = normalize_f(spec)?;
    let lo = spec.k as u32;
    if n_hi < lo {
        return Err(Error::InvalidArgument(format!("n_hi = {n_hi} is below k = {}", spec.k)));
    }
    let kernels: Vec<FiniteIdeal> = (lo..=n_hi).into_par_iter().map(|n| kernel(spec, n, &opts.gb)).collect::<Result<_>>()?;
    let levels: Vec<FiniteIdeal> = kernels
        .iter()
        .map(|q| Ok(FiniteIdeal::with_config(q.groebner_basis()?.to_vec(), LEVEL_ORDER, opts.gb)))
        .collect::<Result<_>>()?;
    let chain = ChainSpec::explicit(spec.k, lo, levels.iter().map(|l| l.generators().to_vec()).collect())?;
    let invariance = invariance_check(&chain, lo, n_hi, opts)?;
    let stabilization = detect_on_levels(&levels, lo, n_hi, opts)?;
    let memberships = queries
        .iter()
        .map(|(n, f)| {
            let member = if *n < lo || *n > n_hi {
                kernel(spec, *n, &opts.gb)?.contains(f)?
            } else {
                levels[(n - lo) as usize].contains(f)?
            };
            Ok(MembershipCheck {
                n: *n,
                polynomial: f.clone(),
                member,
            })
        })
        .collect::<Result<_>>()?;
    Ok(ProbeReport {
        spec: spec.clone(),
        normalization,
        levels: levels
            .iter()
            .zip(lo..)
            .map(|(l, n)| ProbeLevel {
                n,
                kernel: l.generators().to_vec(),
            })
            .collect(),
        invariance,
        stabilization,
        memberships,
    })
}
