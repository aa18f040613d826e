//! Certified order relations between monomials.
//!
//! For plain variables `x[1], x[2], ...` under Lex, `v` is related to `w` when
//! `v <= w` and the exponent profile of `v` Higman-embeds into that of `w`.
//! Any such embedding extends to a permutation `σ` with `σv | w` that is
//! increasing on `{1..|v|}`, which makes `σ` a witness of the symmetric
//! cancellation ordering. The converse is not claimed.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::monomial::check_same_arity;
use crate::poly::{Injection, Monomial, Permutation, TermOrder, Var};

fn plain_profile(m: &Monomial) -> Result<Vec<u32>> {
    match m.arity()? {
        Some(1) | None => m.profile(),
        Some(k) => Err(Error::WrongArity {
            expected: 1,
            found: k,
        }),
    }
}

/// Leftmost-greedy strictly increasing map `φ` on positions with
/// `v*(i) <= w*(φ(i))`. Entry `i` of the result is `φ(i + 1)` (1-based).
///
/// Greedy is complete: if some embedding exists, matching each position to the
/// first admissible slot never uses a later slot than that embedding does.
pub fn higman_embed(v: &Monomial, w: &Monomial) -> Result<Option<Vec<u32>>> {
    let (vp, wp) = (plain_profile(v)?, plain_profile(w)?);
    Ok(embed_leftmost(&vp, &wp))
}

pub(crate) fn embed_leftmost(vp: &[u32], wp: &[u32]) -> Option<Vec<u32>> {
    let mut phi = Vec::with_capacity(vp.len());
    let mut j = 0;
    for &a in vp {
        while j < wp.len() && wp[j] < a {
            j += 1;
        }
        if j == wp.len() {
            return None;
        }
        phi.push(j as u32 + 1);
        j += 1;
    }
    Some(phi)
}

/// Mirror image of [`embed_leftmost`]: each position, from the last one down,
/// takes the latest admissible slot.
pub(crate) fn embed_rightmost(vp: &[u32], wp: &[u32]) -> Option<Vec<u32>> {
    let mut phi = vec![0; vp.len()];
    let mut j = wp.len();
    for (i, &a) in vp.iter().enumerate().rev() {
        loop {
            if j == 0 {
                return None;
            }
            j -= 1;
            if wp[j] >= a {
                break;
            }
        }
        phi[i] = j as u32 + 1;
    }
    Some(phi)
}

/// Outcome of [`cancellation_witness`]. When `related`, `sigma` maps `v`
/// into a divisor of `w`, `cofactor * sigma(v) == w`, and `sigma` fixes every
/// index above `max_index(w)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub related: bool,
    pub phi: Option<Vec<u32>>,
    pub sigma: Option<Permutation>,
    pub cofactor: Option<Monomial>,
}

impl WitnessReport {
    fn unrelated() -> Self {
        Self {
            related: false,
            phi: None,
            sigma: None,
            cofactor: None,
        }
    }

    /// Re-checks the divisibility identity by expansion.
    pub fn verify(&self, v: &Monomial, w: &Monomial) -> bool {
        match (&self.sigma, &self.cofactor) {
            (Some(sigma), Some(u)) if self.related => {
                let image = v.permute(sigma);
                let bound = w.max_index().unwrap_or(0);
                u.mul(&image) == *w && sigma.max_moved().is_none_or(|m| m <= bound)
            }
            _ => !self.related,
        }
    }
}

/// Decides the implemented relation for plain variables and, when it holds,
/// produces the permutation witness and cofactor.
///
/// The witness uses the latest-slot embedding: positions of `v` are placed as
/// high as possible, the unused indices of `{1..|w|}` are filled in increasing
/// order, and the cofactor gathers the remaining low-index factors. For
/// `(x[1]*x[2]^2, x[1]^3*x[2]*x[3]^2)` this gives `σ = (1 2 3)`, cofactor
/// `x[1]^3`.
pub fn cancellation_witness(v: &Monomial, w: &Monomial) -> Result<WitnessReport> {
    let (vp, wp) = (plain_profile(v)?, plain_profile(w)?);
    if TermOrder::Lex.compare(v, w) == Ordering::Greater {
        return Ok(WitnessReport::unrelated());
    }
    let Some(phi) = embed_rightmost(&vp, &wp) else {
        return Ok(WitnessReport::unrelated());
    };
    let pairs: Vec<(u32, u32)> = phi.iter().enumerate().map(|(i, &j)| (i as u32 + 1, j)).collect();
    let sigma = Permutation::extend_injection(&pairs, wp.len() as u32)?;
    let cofactor = w
        .div(&v.permute(&sigma))
        .expect("pointwise domination implies divisibility");
    Ok(WitnessReport {
        related: true,
        phi: Some(phi),
        sigma: Some(sigma),
        cofactor: Some(cofactor),
    })
}

/// `v <= w` under Lex together with a Higman embedding of profiles.
pub fn is_related(v: &Monomial, w: &Monomial) -> Result<bool> {
    let (vp, wp) = (plain_profile(v)?, plain_profile(w)?);
    Ok(TermOrder::Lex.compare(v, w) != Ordering::Greater && embed_leftmost(&vp, &wp).is_some())
}

/// Searches for an injection `π` on the index support of `v` with `π(v) | w`.
///
/// Support indices are assigned in increasing order and candidate targets are
/// tried in increasing order, so the first hit is deterministic. `None` means
/// the search space was exhausted: no permutation maps `v` into a divisor of `w`.
pub fn injection_divisor(v: &Monomial, w: &Monomial) -> Result<Option<Injection>> {
    check_same_arity(v, w)?;
    let support = v.index_support();
    let targets = w.index_support();
    if support.len() > targets.len() {
        return Ok(None);
    }
    // For each support position, the variables of v whose entries are all
    // assigned once that position is.
    let pos_of: BTreeMap<u32, usize> = support.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let mut completes: Vec<Vec<(&Var, u32)>> = vec![Vec::new(); support.len()];
    for (var, e) in v.factors() {
        let last = var.indices().iter().map(|i| pos_of[i]).max().unwrap_or(0);
        completes[last].push((var, *e));
    }
    let mut assignment: Vec<u32> = Vec::with_capacity(support.len());
    let mut used = vec![false; targets.len()];
    let found = search(&support, &targets, &completes, w, &mut assignment, &mut used);
    Ok(found.then(|| {
        Injection::new(support.iter().copied().zip(assignment).collect())
            .expect("assignment uses distinct targets")
    }))
}

fn search(
    support: &[u32],
    targets: &[u32],
    completes: &[Vec<(&Var, u32)>],
    w: &Monomial,
    assignment: &mut Vec<u32>,
    used: &mut [bool],
) -> bool {
    let p = assignment.len();
    if p == support.len() {
        return true;
    }
    for (ti, &t) in targets.iter().enumerate() {
        if used[ti] {
            continue;
        }
        assignment.push(t);
        used[ti] = true;
        let consistent = completes[p].iter().all(|(var, e)| {
            let image = var
                .try_map(|i| {
                    let q = support.binary_search(&i).expect("index in support");
                    Ok(assignment[q])
                })
                .expect("all entries assigned");
            w.exponent(&image) >= *e
        });
        if consistent && search(support, targets, completes, w, assignment, used) {
            return true;
        }
        assignment.pop();
        used[ti] = false;
    }
    false
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// Lex together with a Higman embedding of profiles (plain variables only).
    Higman,
    /// Divisibility up to an injection of indices (any arity).
    Injection,
}

impl std::str::FromStr for Relation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "higman" => Ok(Relation::Higman),
            "injection" => Ok(Relation::Injection),
            other => Err(Error::InvalidArgument(format!("unknown relation '{other}'"))),
        }
    }
}

/// First pair `(i, j)`, `i < j`, 1-based, in lexicographic order with
/// `seq[i]` related to `seq[j]`.
pub fn goodness_scan(seq: &[Monomial], relation: Relation) -> Result<Option<(usize, usize)>> {
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            let related = match relation {
                Relation::Higman => is_related(&seq[i], &seq[j])?,
                Relation::Injection => injection_divisor(&seq[i], &seq[j])?.is_some(),
            };
            if related {
                return Ok(Some((i + 1, j + 1)));
            }
        }
    }
    Ok(None)
}

/// `s_n = x[1,2] x[3,2] x[4,3] ... x[n,n-1] x[n,n+1]`, a bad sequence for
/// divisibility up to permutations in arity 2.
pub fn bad_sequence(n: u32) -> Result<Monomial> {
    if n < 3 {
        return Err(Error::InvalidArgument("bad sequence starts at n = 3".into()));
    }
    let mut vars = vec![Var::tuple(&[1, 2])?, Var::tuple(&[3, 2])?];
    for i in 4..=n {
        vars.push(Var::tuple(&[i, i - 1])?);
    }
    vars.push(Var::tuple(&[n, n + 1])?);
    Ok(Monomial::from_factors(vars.into_iter().map(|v| (v, 1))))
}
