//! Equivariant reduction of polynomials in plain variables `x[1], x[2], ...`
//! by a finite basis, with certificates.
//!
//! A step rewrites only the leading term of `f`: if `lm(g)` is related to
//! `lm(f)` with witness `σ` and cofactor `u`, then
//! `f -> f - (lc(f)/lc(g)) * u * σ(g)`, and the leading monomial drops under
//! Lex.

use std::cmp::Ordering;

use serde::{Serialize, Serializer};

use crate::chains::symmetrize;
use crate::error::{Error, Result};
use crate::poly::{Monomial, Permutation, Polynomial, Rational, TermOrder};
use crate::symorder::{cancellation_witness, is_related};

/// One rewrite `f -> f - coeff * cofactor * sigma(B[generator])`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionStep {
    pub generator: usize,
    pub sigma: Permutation,
    #[serde(serialize_with = "as_text")]
    pub coeff: Rational,
    pub cofactor: Monomial,
}

fn as_text<S: Serializer>(c: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(c)
}

impl ReductionStep {
    /// The subtracted summand `coeff * cofactor * sigma(g)`.
    pub fn summand(&self, g: &Polynomial) -> Polynomial {
        g.permute(&self.sigma).mul_term(&self.coeff, &self.cofactor)
    }

    /// Single-term multiplier as text, e.g. `-2*x[1]^3`.
    pub fn term_text(&self) -> String {
        Polynomial::term(self.coeff.clone(), self.cofactor.clone()).to_string()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
    pub residue: Polynomial,
}

fn plain_basis(basis: &[Polynomial]) -> Result<()> {
    for g in basis {
        match g.arity()? {
            Some(1) | None => {}
            Some(k) => return Err(Error::WrongArity { expected: 1, found: k }),
        }
        if g.variables().iter().any(|v| v.is_aux()) {
            return Err(Error::InvalidArgument(format!("auxiliary variable in {g}")));
        }
    }
    Ok(())
}

/// Index into `basis` of the generator used to reduce a polynomial with
/// leading monomial `lm`: the Lex-smallest applicable leading monomial, ties
/// broken by position.
fn select(lm: &Monomial, basis: &[Polynomial]) -> Result<Option<usize>> {
    let mut best: Option<(usize, &Monomial)> = None;
    for (i, g) in basis.iter().enumerate() {
        let Some(glm) = g.lm(&TermOrder::Lex) else { continue };
        if let Some((_, b)) = best {
            if TermOrder::Lex.compare(glm, b) != Ordering::Less {
                continue;
            }
        }
        if is_related(glm, lm)? {
            best = Some((i, glm));
        }
    }
    Ok(best.map(|(i, _)| i))
}

/// One leading-term rewrite of `f` by `basis`, or `None` when `f` is reduced.
pub fn reduce_step(f: &Polynomial, basis: &[Polynomial]) -> Result<Option<(Polynomial, ReductionStep)>> {
    plain_basis(std::slice::from_ref(f))?;
    plain_basis(basis)?;
    let (lm, lc) = f.leading(&TermOrder::Lex).ok_or(Error::ZeroPolynomial)?;
    let Some(i) = select(lm, basis)? else {
        return Ok(None);
    };
    let g = &basis[i];
    let (glm, glc) = g.leading(&TermOrder::Lex).expect("selected generators are nonzero");
    let report = cancellation_witness(glm, lm)?;
    let step = ReductionStep {
        generator: i,
        sigma: report.sigma.expect("related"),
        coeff: lc / glc,
        cofactor: report.cofactor.expect("related"),
    };
    let h = f - &step.summand(g);
    Ok(Some((h, step)))
}

/// Reduces until the leading term is irreducible. With `tail`, continues on
/// the remaining terms so that no term of the residue is reducible.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial], tail: bool) -> Result<ReductionTrace> {
    let mut steps = Vec::new();
    let mut rest = f.clone();
    let mut residue = Polynomial::zero();
    while !rest.is_zero() {
        match reduce_step(&rest, basis)? {
            Some((h, step)) => {
                steps.push(step);
                rest = h;
            }
            None if tail => {
                let (m, c) = rest.leading(&TermOrder::Lex).expect("nonzero");
                let (m, c) = (m.clone(), c.clone());
                residue.add_term(c.clone(), m.clone());
                rest.add_term(-c, m);
            }
            None => break,
        }
    }
    Ok(ReductionTrace {
        steps,
        residue: &residue + &rest,
    })
}

/// Checks `f == residue + Σ summands` exactly and that no summand has a
/// leading monomial above `lm(f)`.
pub fn verify_trace(f: &Polynomial, basis: &[Polynomial], trace: &ReductionTrace) -> bool {
    let mut total = trace.residue.clone();
    let bound = f.lm(&TermOrder::Lex);
    for step in &trace.steps {
        let Some(g) = basis.get(step.generator) else {
            return false;
        };
        let s = step.summand(g);
        if let Some(m) = s.lm(&TermOrder::Lex) {
            match bound {
                Some(b) if TermOrder::Lex.compare(m, b) != Ordering::Greater => {}
                _ => return false,
            }
        }
        total = &total + &s;
    }
    total == *f
}

/// Whether every generator of the `𝔖_n`-invariant ideal of `R_n` generated
/// by `gens` reduces to zero by `basis`.
pub fn truncation_gb_check(basis: &[Polynomial], gens: &[Polynomial], n: u32) -> Result<bool> {
    plain_basis(gens)?;
    for g in symmetrize(gens, n, n)? {
        if !normal_form(&g, basis, false)?.residue.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Drops zero elements and every element whose leading monomial lies above
/// another element's leading monomial; among equal leading monomials the
/// first occurrence stays.
pub fn minimalize(basis: &[Polynomial]) -> Result<Vec<Polynomial>> {
    plain_basis(basis)?;
    let lms: Vec<Option<&Monomial>> = basis.iter().map(|g| g.lm(&TermOrder::Lex)).collect();
    let mut out = Vec::new();
    'outer: for (j, g) in basis.iter().enumerate() {
        let Some(lj) = lms[j] else { continue };
        for (i, li) in lms.iter().enumerate() {
            let Some(li) = li else { continue };
            if i == j || (li == &lj && i > j) {
                continue;
            }
            if is_related(li, lj)? {
                continue 'outer;
            }
        }
        out.push(g.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s).unwrap()
    }

    fn fg() -> (Polynomial, Polynomial) {
        (
            p("x[1]*x[2]^2 + x[2] + x[1]^2"),
            p("x[1]^3*x[2]*x[3]^2 + x[3]^2 + x[1]^4*x[3]"),
        )
    }

    #[test]
    fn one_step_of_example() {
        let (f, g) = fg();
        let (h, step) = reduce_step(&g, &[f]).unwrap().unwrap();
        assert_eq!(h, p("x[1]^4*x[3] + x[3]^2 - x[1]^3*x[3] - x[1]^3*x[2]^2"));
        assert_eq!(step.sigma.to_string(), "(1 2 3)");
        assert_eq!(step.term_text(), "x[1]^3");
    }

    #[test]
    fn normal_form_stops_after_one_step() {
        let (f, g) = fg();
        let basis = [f];
        let trace = normal_form(&g, &basis, false).unwrap();
        assert_eq!(trace.steps.len(), 1);
        assert_eq!(trace.residue.lm(&TermOrder::Lex).unwrap().to_string(), "x[3]^2");
        assert!(verify_trace(&g, &basis, &trace));
        let mut bad = trace.clone();
        bad.steps[0].coeff += Rational::from_integer(1.into());
        assert!(!verify_trace(&g, &basis, &bad));
    }

    #[test]
    fn trivial_reductions() {
        let (_, g) = fg();
        assert!(reduce_step(&g, std::slice::from_ref(&g)).unwrap().unwrap().0.is_zero());
        assert!(reduce_step(&p("x[1]"), &[p("x[1]^2")]).unwrap().is_none());
        assert_eq!(reduce_step(&Polynomial::zero(), &[]), Err(Error::ZeroPolynomial));
        let t = normal_form(&Polynomial::zero(), std::slice::from_ref(&g), false).unwrap();
        assert!(t.steps.is_empty() && t.residue.is_zero());
        let t = normal_form(&g, std::slice::from_ref(&g), false).unwrap();
        assert_eq!(t.steps.len(), 1);
        assert!(t.residue.is_zero());
    }

    #[test]
    fn tail_reduction_clears_every_term() {
        let basis = [p("x[1]")];
        let t = normal_form(&p("x[3]^2 + x[2] + 5"), &basis, true).unwrap();
        assert_eq!(t.residue, p("5"));
        assert!(verify_trace(&p("x[3]^2 + x[2] + 5"), &basis, &t));
        let t = normal_form(&p("x[3]^2 + x[2] + 5"), &basis, false).unwrap();
        assert_eq!(t.steps.len(), 2);
        assert_eq!(t.residue, p("5"));
    }

    #[test]
    fn truncation_examples() {
        for n in 1..=4 {
            let gens: Vec<_> = (1..=n).map(|i| p(&format!("x[{i}]"))).collect();
            assert!(truncation_gb_check(&[p("x[1]")], &gens, n).unwrap());
        }
        assert!(truncation_gb_check(&[], &[], 3).unwrap());
        assert!(!truncation_gb_check(&[p("x[1]^2")], &[p("x[1]")], 1).unwrap());
    }

    #[test]
    fn minimal_subsets() {
        assert_eq!(minimalize(&[p("x[1]"), p("x[1]*x[2]^2")]).unwrap(), vec![p("x[1]")]);
        assert_eq!(minimalize(&[p("x[1]")]).unwrap(), vec![p("x[1]")]);
        assert_eq!(minimalize(&[p("x[1]^2"), p("x[2]^3")]).unwrap(), vec![p("x[1]^2")]);
        assert_eq!(minimalize(&[p("x[2]"), p("2*x[2]")]).unwrap(), vec![p("x[2]")]);
    }

    #[test]
    fn tuple_variables_are_rejected() {
        let f = p("x[1,2]");
        assert!(matches!(reduce_step(&f, &[]), Err(Error::WrongArity { .. })));
    }
}
