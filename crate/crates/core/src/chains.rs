//! Symmetrization and projection of generator sets, chains of invariant
//! ideals `I_n ⊆ R_n`, and stabilization checks on finite windows.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gb::{FiniteIdeal, GbConfig};
use crate::poly::{Injection, Polynomial, TermOrder, VarSet};
use crate::toric::{self, ToricSpec};

/// Order used for every level ideal.
pub const LEVEL_ORDER: TermOrder = TermOrder::DegRevLex;

fn common_arity(gens: &[Polynomial]) -> Result<Option<usize>> {
    let mut k = None;
    for g in gens {
        if let Some(a) = g.arity()? {
            match k {
                Some(b) if b != a => return Err(Error::MixedArity(b, a)),
                _ => k = Some(a),
            }
        }
    }
    Ok(k)
}

fn check_level(gens: &[Polynomial], n: u32) -> Result<()> {
    common_arity(gens)?;
    for g in gens {
        if g.variables().iter().any(|v| v.is_aux()) {
            return Err(Error::InvalidArgument(format!("auxiliary variable in {g}")));
        }
        if let Some(i) = g.index_support().into_iter().find(|&i| i > n) {
            return Err(Error::InvalidArgument(format!("index {i} of {g} lies outside R_{n}")));
        }
    }
    Ok(())
}

fn for_each_injection(support: &[u32], m: u32, f: &mut dyn FnMut(&Injection)) {
    fn go(support: &[u32], m: u32, pos: usize, used: &mut Vec<u32>, f: &mut dyn FnMut(&Injection)) {
        if pos == support.len() {
            let map = support.iter().copied().zip(used.iter().copied()).collect();
            f(&Injection::new(map).expect("distinct targets"));
            return;
        }
        for t in 1..=m {
            if !used.contains(&t) {
                used.push(t);
                go(support, m, pos + 1, used, f);
                used.pop();
            }
        }
    }
    go(support, m, 0, &mut Vec::with_capacity(support.len()), f)
}

/// Generators of `L_m(B)`: the images of every element of `B` under all
/// injections of its index support into `{1..m}`, made Lex-monic up to sign,
/// deduplicated and sorted.
pub fn symmetrize(basis: &[Polynomial], n: u32, m: u32) -> Result<Vec<Polynomial>> {
    if m < n {
        return Err(Error::InvalidArgument(format!("m = {m} is below n = {n}")));
    }
    check_level(basis, n)?;
    let mut out: BTreeSet<Polynomial> = BTreeSet::new();
    for g in basis.iter().filter(|g| !g.is_zero()) {
        // an image of an earlier generator contributes nothing new
        if out.contains(&g.sign_normalized(&TermOrder::Lex)) {
            continue;
        }
        let support = g.index_support();
        for_each_injection(&support, m, &mut |pi| {
            let image = g.act(pi).expect("injection covers the support");
            out.insert(image.sign_normalized(&TermOrder::Lex));
        });
    }
    let mut v: Vec<Polynomial> = out.into_iter().collect();
    v.sort_by(|a, b| a.cmp_in(b, &TermOrder::Lex));
    Ok(v)
}

/// Reduced Gröbner basis (under [`LEVEL_ORDER`]) of `P_n(B)`, the
/// intersection of the invariant ideal generated by `B ⊆ R_m` with `R_n`.
pub fn project(basis: &[Polynomial], m: u32, n: u32, cfg: &GbConfig) -> Result<Vec<Polynomial>> {
    if n > m {
        return Err(Error::InvalidArgument(format!("n = {n} exceeds m = {m}")));
    }
    let orbit = symmetrize(basis, m, m)?;
    let ideal = FiniteIdeal::with_config(orbit, LEVEL_ORDER, *cfg);
    Ok(ideal.eliminate(&VarSet::IndexAbove(n))?.groebner_basis()?.to_vec())
}

/// Number of distinct variables occurring in `g`.
pub fn variable_size(g: &Polynomial) -> usize {
    g.variables().len()
}

/// Generator rule for the levels of a chain.
pub type RuleFn = Arc<dyn Fn(u32) -> Result<Vec<Polynomial>> + Send + Sync>;

#[derive(Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ChainKind {
    /// Generators for each level, starting at the first level.
    Explicit { levels: Vec<Vec<Polynomial>> },
    /// `I_n = L_n(generators)`.
    Orbit { generators: Vec<Polynomial> },
    /// `I_n = ker φ_n` for `x_u ↦ f(t_{u_1}, ..., t_{u_k})`.
    Toric { f: Polynomial },
    #[serde(skip)]
    Rule(RuleFn),
}

impl fmt::Debug for ChainKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainKind::Explicit { levels } => f.debug_struct("Explicit").field("levels", levels).finish(),
            ChainKind::Orbit { generators } => f.debug_struct("Orbit").field("generators", generators).finish(),
            ChainKind::Toric { f: p } => f.debug_struct("Toric").field("f", p).finish(),
            ChainKind::Rule(_) => f.write_str("Rule(..)"),
        }
    }
}

/// A chain `I_{n0} ⊆ I_{n0+1} ⊆ ...` of ideals in variables of arity `k`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChainSpec {
    pub k: usize,
    pub first_level: u32,
    #[serde(flatten)]
    pub kind: ChainKind,
}

impl ChainSpec {
    pub fn explicit(k: usize, first_level: u32, levels: Vec<Vec<Polynomial>>) -> Result<Self> {
        let s = ChainSpec {
            k,
            first_level,
            kind: ChainKind::Explicit { levels },
        };
        s.validate()?;
        Ok(s)
    }

    pub fn orbit(k: usize, first_level: u32, generators: Vec<Polynomial>) -> Result<Self> {
        let s = ChainSpec {
            k,
            first_level,
            kind: ChainKind::Orbit { generators },
        };
        s.validate()?;
        Ok(s)
    }

    /// The chain of kernels induced by `f`, starting at level `k`.
    pub fn toric(spec: &ToricSpec) -> Self {
        ChainSpec {
            k: spec.k,
            first_level: spec.k as u32,
            kind: ChainKind::Toric { f: spec.f.clone() },
        }
    }

    pub fn rule(k: usize, first_level: u32, rule: RuleFn) -> Self {
        ChainSpec {
            k,
            first_level,
            kind: ChainKind::Rule(rule),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let s: ChainSpec = serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("chain spec: {e}")))?;
        s.validate()?;
        Ok(s)
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::InvalidArgument(format!("chain spec: {e}")))
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::InvalidArgument("arity must be positive".into()));
        }
        let arity_ok = |gens: &[Polynomial]| -> Result<()> {
            match common_arity(gens)? {
                Some(a) if a != self.k => Err(Error::WrongArity {
                    expected: self.k,
                    found: a,
                }),
                _ => Ok(()),
            }
        };
        match &self.kind {
            ChainKind::Explicit { levels } => {
                for (i, gens) in levels.iter().enumerate() {
                    arity_ok(gens)?;
                    check_level(gens, self.first_level + i as u32)?;
                }
            }
            ChainKind::Orbit { generators } => {
                arity_ok(generators)?;
                check_level(generators, self.first_level)?;
            }
            ChainKind::Toric { f } => {
                ToricSpec::new(self.k, f.clone())?;
            }
            ChainKind::Rule(_) => {}
        }
        Ok(())
    }

    /// Highest level the chain can produce, if bounded.
    pub fn last_level(&self) -> Option<u32> {
        match &self.kind {
            ChainKind::Explicit { levels } => (!levels.is_empty()).then(|| self.first_level + levels.len() as u32 - 1),
            _ => None,
        }
    }

    /// Generators of `I_n`.
    pub fn generators(&self, n: u32, cfg: &GbConfig) -> Result<Vec<Polynomial>> {
        if n < self.first_level {
            return Err(Error::InvalidArgument(format!("level {n} precedes the first level {}", self.first_level)));
        }
        let gens = match &self.kind {
            ChainKind::Explicit { levels } => levels
                .get((n - self.first_level) as usize)
                .cloned()
                .ok_or_else(|| Error::InvalidArgument(format!("no generators given for level {n}")))?,
            ChainKind::Orbit { generators } => symmetrize(generators, self.first_level, n)?,
            ChainKind::Toric { f } => {
                let spec = ToricSpec::new(self.k, f.clone())?;
                toric::kernel(&spec, n, cfg)?.groebner_basis()?.to_vec()
            }
            ChainKind::Rule(rule) => rule(n)?,
        };
        check_level(&gens, n)?;
        Ok(gens)
    }

    /// Level ideal `I_n` under [`LEVEL_ORDER`].
    pub fn level(&self, n: u32, cfg: &GbConfig) -> Result<FiniteIdeal> {
        Ok(FiniteIdeal::with_config(self.generators(n, cfg)?, LEVEL_ORDER, *cfg))
    }

    fn levels(&self, lo: u32, hi: u32, cfg: &GbConfig) -> Result<Vec<FiniteIdeal>> {
        if lo > hi || lo < self.first_level {
            return Err(Error::InvalidArgument(format!("window ({lo}, {hi}) is empty or precedes level {}", self.first_level)));
        }
        let levels: Vec<FiniteIdeal> = (lo..=hi).into_par_iter().map(|n| self.level(n, cfg)).collect::<Result<_>>()?;
        levels.par_iter().try_for_each(|i| i.basis().map(|_| ()))?;
        Ok(levels)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChainOptions {
    pub gb: GbConfig,
    /// Record wall-clock milliseconds per pair.
    pub timing: bool,
    /// Largest level any experiment may reach.
    pub max_level: u32,
}

impl Default for ChainOptions {
    fn default() -> Self {
        ChainOptions {
            gb: GbConfig::default(),
            timing: false,
            max_level: 8,
        }
    }
}

fn check_window(hi: u32, opts: &ChainOptions) -> Result<()> {
    if hi > opts.max_level {
        return Err(Error::CapExceeded {
            cap: "max-level",
            limit: opts.max_level as usize,
        });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariancePair {
    pub n: u32,
    pub m: u32,
    /// `L_m(I_n) ⊆ I_m`.
    pub symmetrization: bool,
    /// `P_n(I_m) ⊆ I_n`.
    pub projection: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvarianceReport {
    pub window: (u32, u32),
    pub pairs: Vec<InvariancePair>,
    pub holds: bool,
}

impl InvarianceReport {
    /// First pair violating either inclusion.
    pub fn first_failure(&self) -> Option<&InvariancePair> {
        self.pairs.iter().find(|p| !(p.symmetrization && p.projection))
    }
}

fn window_pairs(lo: u32, hi: u32) -> Vec<(u32, u32)> {
    (lo..=hi).flat_map(|n| (n..=hi).map(move |m| (n, m))).collect()
}

/// Checks both inclusions for every `n <= m` in the window.
pub fn invariance_check(chain: &ChainSpec, lo: u32, hi: u32, opts: &ChainOptions) -> Result<InvarianceReport> {
    check_window(hi, opts)?;
    let levels = chain.levels(lo, hi, &opts.gb)?;
    let at = |n: u32| &levels[(n - lo) as usize];
    let pairs = window_pairs(lo, hi)
        .into_par_iter()
        .map(|(n, m)| {
            let (small, big) = (at(n), at(m));
            let sym = symmetrize(small.groebner_basis()?, n, m)?;
            let b = big.basis()?;
            let symmetrization = sym.iter().all(|g| b.contains(g));
            let proj = project(big.groebner_basis()?, m, n, &opts.gb)?;
            let s = small.basis()?;
            let projection = proj.iter().all(|g| s.contains(g));
            Ok(InvariancePair {
                n,
                m,
                symmetrization,
                projection,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let holds = pairs.iter().all(|p| p.symmetrization && p.projection);
    Ok(InvarianceReport {
        window: (lo, hi),
        pairs,
        holds,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairResult {
    pub n: u32,
    pub m: u32,
    /// `L_m(I_n) = I_m`.
    pub equal: bool,
    pub symmetrized_gb_size: usize,
    pub level_gb_size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelStats {
    pub n: u32,
    pub generators: usize,
    pub gb_size: usize,
    pub max_variable_size: usize,
}

/// Window certificate: `stabilization = Some(N)` means `L_m(I_n) = I_m` for
/// all `N <= n <= m <= hi`, and no smaller `N` in the window has this
/// property. Nothing is claimed beyond `hi`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilizationReport {
    pub window: (u32, u32),
    pub stabilization: Option<u32>,
    pub pairs: Vec<PairResult>,
    pub levels: Vec<LevelStats>,
}

impl StabilizationReport {
    pub fn pair(&self, n: u32, m: u32) -> Option<&PairResult> {
        self.pairs.iter().find(|p| p.n == n && p.m == m)
    }
}

/// Compares `L_m(I_n)` with `I_m` for all `lo <= n <= m <= hi` and reports the
/// smallest `N` in `[lo, hi - 1]` from which every comparison succeeds.
pub fn detect_stabilization(chain: &ChainSpec, lo: u32, hi: u32, opts: &ChainOptions) -> Result<StabilizationReport> {
    check_window(hi, opts)?;
    let levels = chain.levels(lo, hi, &opts.gb)?;
    detect_on_levels(&levels, lo, hi, opts)
}

pub(crate) fn detect_on_levels(levels: &[FiniteIdeal], lo: u32, hi: u32, opts: &ChainOptions) -> Result<StabilizationReport> {
    let at = |n: u32| &levels[(n - lo) as usize];
    let pairs = window_pairs(lo, hi)
        .into_par_iter()
        .map(|(n, m)| {
            let start = Instant::now();
            let sym = FiniteIdeal::with_config(symmetrize(at(n).groebner_basis()?, n, m)?, LEVEL_ORDER, opts.gb);
            let a = sym.groebner_basis()?;
            let b = at(m).groebner_basis()?;
            Ok(PairResult {
                n,
                m,
                equal: a == b,
                symmetrized_gb_size: a.len(),
                level_gb_size: b.len(),
                millis: opts.timing.then(|| start.elapsed().as_millis() as u64),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let stabilization = (lo..hi).find(|&big_n| pairs.iter().filter(|p| p.n >= big_n).all(|p| p.equal));
    let levels = (lo..=hi)
        .map(|n| {
            let i = at(n);
            Ok(LevelStats {
                n,
                generators: i.generators().len(),
                gb_size: i.groebner_basis()?.len(),
                max_variable_size: i.generators().iter().map(variable_size).max().unwrap_or(0),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(StabilizationReport {
        window: (lo, hi),
        stabilization,
        pairs,
        levels,
    })
}
