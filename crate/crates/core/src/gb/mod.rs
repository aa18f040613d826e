//! Classical Gröbner bases over finitely many variables: completion, ideal
//! membership and equality, elimination, and universal-basis checks.

mod dense;

use std::collections::BTreeSet;
use std::sync::OnceLock;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use crate::error::Result;
use crate::poly::{Permutation, Polynomial, TermOrder, Var, VarSet};
use dense::{universe_of, DPoly, Ring};

/// Hard limits for a completion run; exceeding one aborts with
/// [`Error::CapExceeded`](crate::Error::CapExceeded).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GbConfig {
    /// Largest total degree of an S-pair lcm.
    pub max_degree: u64,
    /// Largest number of queued or processed pairs.
    pub max_pairs: usize,
}

impl Default for GbConfig {
    fn default() -> Self {
        GbConfig {
            max_degree: 40,
            max_pairs: 200_000,
        }
    }
}

/// A reduced Gröbner basis together with the compiled ring used to reduce
/// further polynomials against it.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    order: TermOrder,
    ring: Ring,
    dense: Vec<DPoly>,
    polys: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn compute(gens: &[Polynomial], order: &TermOrder, cfg: &GbConfig) -> Result<Self> {
        let universe = universe_of(gens);
        let ring = Ring::new(order, &universe);
        let dense = dense::groebner(&ring, gens, cfg)?;
        let polys = dense.iter().map(|p| ring.to_sparse(p)).collect();
        Ok(GroebnerBasis {
            order: order.clone(),
            ring,
            dense,
            polys,
        })
    }

    pub fn polynomials(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// Classical normal form (fully reduced remainder).
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        if self.ring.contains_all(f) {
            let refs: Vec<&DPoly> = self.dense.iter().collect();
            return self.ring.to_sparse(&self.ring.reduce(self.ring.to_dense(f), &refs));
        }
        // foreign variables: widen the ring for this one query
        let universe = universe_of(self.polys.iter().chain(std::iter::once(f)));
        let ring = Ring::new(&self.order, &universe);
        let dense: Vec<DPoly> = self.polys.iter().map(|g| ring.to_dense(g)).collect();
        let refs: Vec<&DPoly> = dense.iter().collect();
        ring.to_sparse(&ring.reduce(ring.to_dense(f), &refs))
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn leading_monomials(&self) -> Vec<crate::poly::Monomial> {
        self.polys
            .iter()
            .map(|p| p.lm(&self.order).expect("basis elements are nonzero").clone())
            .collect()
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens` under `order`.
pub fn buchberger(gens: &[Polynomial], order: &TermOrder, cfg: &GbConfig) -> Result<Vec<Polynomial>> {
    Ok(GroebnerBasis::compute(gens, order, cfg)?.polys)
}

/// Ideal of a polynomial ring in the finitely many variables its generators
/// use, with a lazily computed and cached reduced Gröbner basis.
#[derive(Debug)]
pub struct FiniteIdeal {
    gens: Vec<Polynomial>,
    order: TermOrder,
    cfg: GbConfig,
    gb: OnceLock<GroebnerBasis>,
}

impl Clone for FiniteIdeal {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(b) = self.gb.get() {
            let _ = gb.set(b.clone());
        }
        FiniteIdeal {
            gens: self.gens.clone(),
            order: self.order.clone(),
            cfg: self.cfg,
            gb,
        }
    }
}

impl FiniteIdeal {
    pub fn new(gens: Vec<Polynomial>, order: TermOrder) -> Self {
        Self::with_config(gens, order, GbConfig::default())
    }

    pub fn with_config(gens: Vec<Polynomial>, order: TermOrder, cfg: GbConfig) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        FiniteIdeal {
            gens,
            order,
            cfg,
            gb: OnceLock::new(),
        }
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn config(&self) -> &GbConfig {
        &self.cfg
    }

    pub fn universe(&self) -> BTreeSet<Var> {
        universe_of(&self.gens)
    }

    pub fn basis(&self) -> Result<&GroebnerBasis> {
        if let Some(b) = self.gb.get() {
            return Ok(b);
        }
        let b = GroebnerBasis::compute(&self.gens, &self.order, &self.cfg)?;
        Ok(self.gb.get_or_init(|| b))
    }

    pub fn groebner_basis(&self) -> Result<&[Polynomial]> {
        Ok(self.basis()?.polynomials())
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.basis()?.contains(f))
    }

    /// Every generator of `other` lies in `self`.
    pub fn contains_ideal(&self, other: &FiniteIdeal) -> Result<bool> {
        let b = self.basis()?;
        Ok(other.gens.iter().all(|g| b.contains(g)))
    }

    /// Compares reduced bases, recomputing `other` under this ideal's order
    /// when the orders differ.
    pub fn equals(&self, other: &FiniteIdeal) -> Result<bool> {
        let mine = self.groebner_basis()?;
        if other.order == self.order {
            return Ok(mine == other.groebner_basis()?);
        }
        Ok(mine == buchberger(&other.gens, &self.order, &self.cfg)?.as_slice())
    }

    /// `I ∩ K[universe \ drop]`, computed with a block order that puts the
    /// dropped variables (Lex among themselves) above this ideal's order.
    pub fn eliminate(&self, drop: &VarSet) -> Result<FiniteIdeal> {
        let block = TermOrder::block(drop.clone(), self.order.clone());
        let gb = buchberger(&self.gens, &block, &self.cfg)?;
        let kept: Vec<Polynomial> = gb
            .into_iter()
            .filter(|g| g.variables().iter().all(|v| !drop.contains(v)))
            .collect();
        // a block-order basis restricted to the kept variables is a basis of
        // the intersection under the inner order, so this recomputation is cheap
        Ok(FiniteIdeal::with_config(kept, self.order.clone(), self.cfg))
    }
}

pub fn membership(f: &Polynomial, ideal: &FiniteIdeal) -> Result<bool> {
    ideal.contains(f)
}

pub fn ideal_equal(a: &FiniteIdeal, b: &FiniteIdeal) -> Result<bool> {
    a.equals(b)
}

pub fn eliminate(ideal: &FiniteIdeal, drop: &VarSet) -> Result<FiniteIdeal> {
    ideal.eliminate(drop)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UniversalMode {
    /// Every permutation of `{1..n}`.
    Exhaustive,
    /// A seeded random sample of permutations.
    Sampled { samples: usize, seed: u64 },
}

/// Checks that `basis` contains, for every `σ` (or every sampled `σ`), a
/// classical Gröbner basis under `PermutedLex(σ)` of the `𝔖_n`-invariant
/// ideal generated by `basis`.
pub fn universal_gb_check(basis: &[Polynomial], n: u32, mode: UniversalMode, cfg: &GbConfig) -> Result<bool> {
    let basis: Vec<Polynomial> = basis.iter().filter(|g| !g.is_zero()).cloned().collect();
    if basis.is_empty() {
        return Ok(true);
    }
    let mut orbit: BTreeSet<Polynomial> = BTreeSet::new();
    let perms = Permutation::all_of(n);
    for g in &basis {
        for s in &perms {
            orbit.insert(g.permute(s));
        }
    }
    let orbit: Vec<Polynomial> = orbit.into_iter().collect();
    let sigmas: Vec<Permutation> = match mode {
        UniversalMode::Exhaustive => perms,
        UniversalMode::Sampled { samples, seed } => {
            let mut rng = StdRng::seed_from_u64(seed);
            (0..samples)
                .map(|_| perms.choose(&mut rng).expect("n! >= 1").clone())
                .collect()
        }
    };
    for sigma in sigmas {
        let order = TermOrder::PermutedLex(sigma);
        let gb = GroebnerBasis::compute(&orbit, &order, cfg)?;
        // basis ⊆ ideal, so it is a Gröbner basis iff its leading monomials
        // generate every leading monomial of the reduced basis
        let leads: Vec<_> = basis.iter().map(|g| g.lm(&order).expect("nonzero").clone()).collect();
        let ok = gb
            .leading_monomials()
            .iter()
            .all(|m| leads.iter().any(|l| l.divides(m)));
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}
