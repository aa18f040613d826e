use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::order::TermOrder;
use super::perm::{IndexAction, Permutation};
use super::var::Var;
use super::Rational;
use crate::error::{Error, Result};

/// A polynomial with exact rational coefficients: a finite map from monomials
/// to nonzero coefficients. The empty map is the zero polynomial.
///
/// Storage order is structural; anything order-sensitive (leading terms,
/// printing) takes a [`TermOrder`].
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

/// Leading monomial, coefficient and, for plain `k = 1` polynomials, the
/// index and exponent profile of the leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeadingData {
    pub lm: Monomial,
    pub lc: Rational,
    pub max_index: Option<u32>,
    pub profile: Option<Vec<u32>>,
}

impl LeadingData {
    pub fn lt(&self) -> Polynomial {
        Polynomial::term(self.lc.clone(), self.lm.clone())
    }
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn var(v: Var) -> Self {
        Self::from_monomial(Monomial::var(v))
    }

    pub fn from_monomial(m: Monomial) -> Self {
        Self::term(Rational::one(), m)
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Rational, Monomial)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (c, m) in iter {
            p.add_term(c, m);
        }
        p
    }

    /// `a - b` for two monomials, the shape of every binomial in this crate.
    pub fn binomial(a: Monomial, b: Monomial) -> Self {
        Self::from_terms([(Rational::one(), a), (-Rational::one(), b)])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, c: Rational, m: Monomial) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// `c·u·self` for a single term `c·u`.
    pub fn mul_term(&self, c: &Rational, u: &Monomial) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, a)| (m.mul(u), a * c)).collect(),
        }
    }

    pub fn act<A: IndexAction + ?Sized>(&self, g: &A) -> Result<Self> {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(c.clone(), m.act(g)?);
        }
        Ok(out)
    }

    pub fn permute(&self, sigma: &Permutation) -> Self {
        self.act(sigma).expect("permutations are total")
    }

    pub fn leading(&self, order: &TermOrder) -> Option<(&Monomial, &Rational)> {
        self.terms
            .iter()
            .max_by(|a, b| order.compare(a.0, b.0))
    }

    pub fn lm(&self, order: &TermOrder) -> Option<&Monomial> {
        self.leading(order).map(|(m, _)| m)
    }

    pub fn leading_data(&self, order: &TermOrder) -> Option<LeadingData> {
        let (lm, lc) = self.leading(order)?;
        let plain = matches!(lm.arity(), Ok(Some(1)) | Ok(None))
            && lm.variables().all(|v| !v.is_aux());
        Some(LeadingData {
            lm: lm.clone(),
            lc: lc.clone(),
            max_index: plain.then(|| lm.max_index()).flatten(),
            profile: if plain { lm.profile().ok() } else { None },
        })
    }

    /// Terms in descending order.
    pub fn sorted_terms(&self, order: &TermOrder) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.compare(b.0, a.0).then_with(|| a.0.cmp(b.0)));
        v
    }

    pub fn monic(&self, order: &TermOrder) -> Self {
        match self.leading(order) {
            Some((_, lc)) => self.scale(&lc.recip()),
            None => Self::zero(),
        }
    }

    /// Multiplies by -1 when the leading coefficient is negative.
    pub fn sign_normalized(&self, order: &TermOrder) -> Self {
        match self.leading(order) {
            Some((_, lc)) if lc.is_negative() => -self,
            _ => self.clone(),
        }
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.variables().cloned()).collect()
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn max_index(&self) -> Option<u32> {
        self.terms.keys().filter_map(Monomial::max_index).max()
    }

    pub fn index_support(&self) -> Vec<u32> {
        let mut s: Vec<u32> = self.terms.keys().flat_map(|m| m.index_support()).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    pub fn arity(&self) -> Result<Option<usize>> {
        let mut arity = None;
        for m in self.terms.keys() {
            if let Some(a) = m.arity()? {
                match arity {
                    None => arity = Some(a),
                    Some(b) if b != a => return Err(Error::MixedArity(b, a)),
                    _ => {}
                }
            }
        }
        Ok(arity)
    }

    /// Substitutes each variable by a polynomial; variables without a binding
    /// are kept.
    pub fn substitute(&self, bind: &dyn Fn(&Var) -> Option<Polynomial>) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut acc = Polynomial::constant(c.clone());
            for (v, e) in m.factors() {
                let image = bind(v).unwrap_or_else(|| Polynomial::var(v.clone()));
                for _ in 0..*e {
                    acc = &acc * &image;
                }
            }
            out = &out + &acc;
        }
        out
    }

    /// Canonical text under `order`: terms descending, e.g. `x[3]^2 - x[1]*x[2]`.
    pub fn to_text(&self, order: &TermOrder) -> String {
        let mut s = String::new();
        if self.is_zero() {
            return "0".into();
        }
        for (i, (m, c)) in self.sorted_terms(order).into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            if m.is_one() {
                s.push_str(&abs.to_string());
            } else if abs.is_one() {
                s.push_str(&m.to_string());
            } else {
                s.push_str(&format!("{abs}*{m}"));
            }
        }
        s
    }

    /// Comparison key that lists terms in descending `order`; used for
    /// canonical sorting of generator lists.
    pub fn order_key(&self, order: &TermOrder) -> Vec<(Monomial, Rational)> {
        self.sorted_terms(order)
            .into_iter()
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect()
    }

    /// Compares two polynomials term by term from the top under `order`.
    pub fn cmp_in(&self, other: &Polynomial, order: &TermOrder) -> Ordering {
        let a = self.sorted_terms(order);
        let b = other.sorted_terms(order);
        for ((ma, ca), (mb, cb)) in a.iter().zip(b.iter()) {
            let o = order.compare(ma, mb).then_with(|| ca.cmp(cb));
            if o != Ordering::Equal {
                return o;
            }
        }
        a.len().cmp(&b.len())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(&TermOrder::Lex))
    }
}

impl serde::Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        super::parse::parse_polynomial(&s).map_err(serde::de::Error::custom)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(c.clone(), m.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(-c.clone(), m.clone());
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            for (n, d) in &rhs.terms {
                out.add_term(c * d, m.mul(n));
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Subtract,
    Multiply,
}

/// Exact ring arithmetic on two operands after checking their arities agree.
pub fn poly_arith(op: ArithOp, a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
    if let (Some(x), Some(y)) = (a.arity()?, b.arity()?) {
        if x != y {
            return Err(Error::MixedArity(x, y));
        }
    }
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Subtract => a - b,
        ArithOp::Multiply => a * b,
    })
}
