use std::fmt;

use smallvec::SmallVec;

use super::perm::{IndexAction, Permutation};
use super::var::Var;
use crate::error::{Error, Result};

/// A power product of variables: a finite map from variables to positive
/// exponents, kept sorted by variable. The empty product is the monomial 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial {
    factors: SmallVec<[(Var, u32); 4]>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Combine {
    Product,
    Quotient,
}

/// `Product` returns `v·w`; `Quotient` returns the `u` with `u·v = w`, or
/// `None` when `v` does not divide `w`. Fails on mixed arities.
pub fn mono_combine(v: &Monomial, w: &Monomial, mode: Combine) -> Result<Option<Monomial>> {
    check_same_arity(v, w)?;
    Ok(match mode {
        Combine::Product => Some(v.mul(w)),
        Combine::Quotient => w.div(v),
    })
}

pub(crate) fn check_same_arity(v: &Monomial, w: &Monomial) -> Result<()> {
    match (v.arity()?, w.arity()?) {
        (Some(a), Some(b)) if a != b => Err(Error::MixedArity(a, b)),
        _ => Ok(()),
    }
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: Var) -> Self {
        Self::pow(v, 1)
    }

    pub fn pow(v: Var, e: u32) -> Self {
        let mut factors = SmallVec::new();
        if e > 0 {
            factors.push((v, e));
        }
        Self { factors }
    }

    /// Builds a monomial from arbitrary (variable, exponent) pairs; repeated
    /// variables are merged and zero exponents dropped.
    pub fn from_factors<I: IntoIterator<Item = (Var, u32)>>(iter: I) -> Self {
        let mut factors: SmallVec<[(Var, u32); 4]> = iter.into_iter().filter(|f| f.1 > 0).collect();
        factors.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: SmallVec<[(Var, u32); 4]> = SmallVec::with_capacity(factors.len());
        for (v, e) in factors {
            match merged.last_mut() {
                Some(last) if last.0 == v => last.1 += e,
                _ => merged.push((v, e)),
            }
        }
        Self { factors: merged }
    }

    /// Plain `k = 1` monomial from an exponent profile `(a_1, ..., a_n)`.
    pub fn from_exponents(exps: &[u32]) -> Self {
        Self {
            factors: exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| (Var::x(i as u32 + 1), e))
                .collect(),
        }
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.factors
    }

    pub fn variables(&self) -> impl DoubleEndedIterator<Item = &Var> + '_ {
        self.factors.iter().map(|(v, _)| v)
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.factors.iter().map(|&(_, e)| e as u64).sum()
    }

    pub fn exponent(&self, v: &Var) -> u32 {
        self.factors
            .binary_search_by(|(x, _)| x.cmp(v))
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    /// Common tuple length of the `x` variables, `None` when there are none.
    pub fn arity(&self) -> Result<Option<usize>> {
        let mut arity = None;
        for v in self.variables() {
            if let Some(a) = v.arity() {
                match arity {
                    None => arity = Some(a),
                    Some(b) if b != a => return Err(Error::MixedArity(b, a)),
                    _ => {}
                }
            }
        }
        Ok(arity)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.factors, &other.factors);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().cloned());
        Monomial { factors: out }
    }

    pub fn divides(&self, w: &Monomial) -> bool {
        self.factors.iter().all(|(v, e)| w.exponent(v) >= *e)
    }

    /// `self / v` when `v` divides `self`.
    pub fn div(&self, v: &Monomial) -> Option<Monomial> {
        if !v.divides(self) {
            return None;
        }
        let factors = self
            .factors
            .iter()
            .filter_map(|(x, e)| {
                let rest = e - v.exponent(x);
                (rest > 0).then(|| (x.clone(), rest))
            })
            .collect();
        Some(Monomial { factors })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::from_factors(
            self.factors
                .iter()
                .map(|(v, e)| (v.clone(), (*e).max(other.exponent(v))))
                .chain(
                    other
                        .factors
                        .iter()
                        .filter(|(v, _)| self.exponent(v) == 0)
                        .cloned(),
                ),
        )
    }

    /// Largest index entry occurring in the monomial (`|w|` for `k = 1`);
    /// `None` for the monomial 1.
    pub fn max_index(&self) -> Option<u32> {
        self.variables().map(Var::max_entry).max()
    }

    /// All index entries occurring in any variable, sorted and deduplicated.
    pub fn index_support(&self) -> Vec<u32> {
        let mut s: Vec<u32> = self.variables().flat_map(|v| v.indices().iter().copied()).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// Exponent sequence `(w*(x_1), ..., w*(x_|w|))` of a `k = 1` monomial in
    /// the main variables; empty for the monomial 1.
    pub fn profile(&self) -> Result<Vec<u32>> {
        let mut out = Vec::new();
        for (v, e) in &self.factors {
            match v {
                Var::X(idx) if idx.len() == 1 => {
                    let pos = idx[0] as usize;
                    if out.len() < pos {
                        out.resize(pos, 0);
                    }
                    out[pos - 1] = *e;
                }
                Var::X(idx) => {
                    return Err(Error::WrongArity {
                        expected: 1,
                        found: idx.len(),
                    })
                }
                Var::T(_) => {
                    return Err(Error::InvalidArgument(
                        "profile is defined only for x variables".into(),
                    ))
                }
            }
        }
        Ok(out)
    }

    pub fn act<A: IndexAction + ?Sized>(&self, g: &A) -> Result<Monomial> {
        let factors = self
            .factors
            .iter()
            .map(|(v, e)| Ok((v.try_map(|i| g.image_or_err(i))?, *e)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Monomial::from_factors(factors))
    }

    pub fn permute(&self, sigma: &Permutation) -> Monomial {
        self.act(sigma).expect("permutations are total")
    }
}

impl serde::Serialize for Monomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Monomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        super::parse::parse_monomial(&s).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (i, (v, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "{v}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(exps: &[u32]) -> Monomial {
        Monomial::from_exponents(exps)
    }

    #[test]
    fn quotient_examples() {
        // x2 x3^2 divides x1^3 x2 x3^2 with cofactor x1^3
        let q = mono_combine(&m(&[0, 1, 2]), &m(&[3, 1, 2]), Combine::Quotient).unwrap();
        assert_eq!(q, Some(m(&[3])));
        let q = mono_combine(&m(&[1]), &m(&[0, 2]), Combine::Quotient).unwrap();
        assert_eq!(q, None);
        let p = mono_combine(&m(&[2]), &m(&[0, 1]), Combine::Product).unwrap();
        assert_eq!(p, Some(m(&[2, 1])));
    }

    #[test]
    fn mixed_arity_is_rejected() {
        let a = Monomial::var(Var::x(1));
        let b = Monomial::var(Var::tuple(&[1, 2]).unwrap());
        assert_eq!(
            mono_combine(&a, &b, Combine::Product),
            Err(Error::MixedArity(1, 2))
        );
    }

    #[test]
    fn max_index_and_profile() {
        let w = m(&[3, 1, 2]);
        assert_eq!(w.max_index(), Some(3));
        assert_eq!(m(&[1, 2]).profile().unwrap(), vec![1, 2]);
        assert_eq!(m(&[0, 0, 2]).profile().unwrap(), vec![0, 0, 2]);
        assert_eq!(Monomial::one().max_index(), None);
        assert!(Monomial::one().profile().unwrap().is_empty());
    }

    #[test]
    fn action_on_tuples_is_entrywise() {
        let sigma = Permutation::from_cycles(&[&[1, 2]]).unwrap();
        let v = Monomial::var(Var::tuple(&[1, 2]).unwrap());
        assert_eq!(v.permute(&sigma), Monomial::var(Var::tuple(&[2, 1]).unwrap()));
        let tau = Permutation::cycle_up_to(3);
        assert_eq!(m(&[1, 2]).permute(&tau), m(&[0, 1, 2]));
    }

    #[test]
    fn display() {
        assert_eq!(m(&[3, 1, 2]).to_string(), "x[1]^3*x[2]*x[3]^2");
        assert_eq!(Monomial::one().to_string(), "1");
    }

    #[test]
    fn lcm_and_div() {
        let a = m(&[2, 0, 1]);
        let b = m(&[1, 3]);
        assert_eq!(a.lcm(&b), m(&[2, 3, 1]));
        assert_eq!(a.lcm(&b).div(&a), Some(m(&[0, 3])));
    }
}
