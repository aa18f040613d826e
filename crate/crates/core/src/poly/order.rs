use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use super::monomial::Monomial;
use super::perm::Permutation;
use super::var::Var;
use crate::error::Error;

/// A set of variables singled out by an elimination block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VarSet {
    Explicit(BTreeSet<Var>),
    /// Every auxiliary `t` variable.
    Aux,
    /// Every `x` variable with some tuple entry strictly above the bound.
    IndexAbove(u32),
}

impl VarSet {
    pub fn contains(&self, v: &Var) -> bool {
        match self {
            VarSet::Explicit(s) => s.contains(v),
            VarSet::Aux => v.is_aux(),
            VarSet::IndexAbove(n) => !v.is_aux() && v.max_entry() > *n,
        }
    }
}

/// Term orders on monomials.
///
/// Lex compares exponent tuples starting from the largest variable, so
/// `x[1]^2 < x[1]*x[2]^2`. Variables are ordered as [`Var`]'s derived order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermOrder {
    Lex,
    /// Graded reverse lexicographic order over the same variable order.
    DegRevLex,
    /// `v <= w` iff `σv <= σw` under Lex.
    PermutedLex(Permutation),
    /// Monomials are compared first by Lex on their eliminated part, then by
    /// `inner` on the rest; any monomial involving an eliminated variable is
    /// above every monomial that does not.
    Block {
        eliminated: VarSet,
        inner: Box<TermOrder>,
    },
}

impl TermOrder {
    pub fn block(eliminated: VarSet, inner: TermOrder) -> Self {
        TermOrder::Block {
            eliminated,
            inner: Box::new(inner),
        }
    }

    pub fn compare(&self, v: &Monomial, w: &Monomial) -> Ordering {
        match self {
            TermOrder::Lex => lex(v, w),
            TermOrder::DegRevLex => degrevlex(v, w),
            TermOrder::PermutedLex(sigma) => lex(&v.permute(sigma), &w.permute(sigma)),
            TermOrder::Block { eliminated, inner } => {
                let (ve, vr) = split(v, eliminated);
                let (we, wr) = split(w, eliminated);
                lex(&ve, &we).then_with(|| inner.compare(&vr, &wr))
            }
        }
    }
}

fn split(m: &Monomial, set: &VarSet) -> (Monomial, Monomial) {
    let (a, b): (Vec<_>, Vec<_>) = m.factors().iter().cloned().partition(|(v, _)| set.contains(v));
    (Monomial::from_factors(a), Monomial::from_factors(b))
}

fn lex(v: &Monomial, w: &Monomial) -> Ordering {
    let mut a = v.factors().iter().rev();
    let mut b = w.factors().iter().rev();
    loop {
        match (a.next(), b.next()) {
            (None, None) => return Ordering::Equal,
            (Some(_), None) => return Ordering::Greater,
            (None, Some(_)) => return Ordering::Less,
            (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                Ordering::Equal if ea == eb => {}
                Ordering::Equal => return ea.cmp(eb),
                other => return other,
            },
        }
    }
}

fn degrevlex(v: &Monomial, w: &Monomial) -> Ordering {
    v.degree().cmp(&w.degree()).then_with(|| {
        for ((va, ea), (vb, eb)) in v.factors().iter().zip(w.factors()) {
            match va.cmp(vb) {
                Ordering::Equal if ea == eb => {}
                Ordering::Equal => return eb.cmp(ea),
                Ordering::Less => return Ordering::Less,
                Ordering::Greater => return Ordering::Greater,
            }
        }
        Ordering::Equal
    })
}

impl fmt::Display for TermOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermOrder::Lex => f.write_str("lex"),
            TermOrder::DegRevLex => f.write_str("grevlex"),
            TermOrder::PermutedLex(s) => write!(f, "perm:{s}"),
            TermOrder::Block { eliminated, inner } => {
                let set = match eliminated {
                    VarSet::Aux => "t".to_string(),
                    VarSet::IndexAbove(n) => format!(">{n}"),
                    VarSet::Explicit(s) => s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","),
                };
                write!(f, "block[{set}]:{inner}")
            }
        }
    }
}

impl FromStr for TermOrder {
    type Err = Error;

    /// Accepts `lex`, `grevlex` and `perm:<cycles>`.
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim() {
            "lex" => Ok(TermOrder::Lex),
            "grevlex" | "degrevlex" => Ok(TermOrder::DegRevLex),
            other => match other.strip_prefix("perm:") {
                Some(cycles) => Ok(TermOrder::PermutedLex(cycles.parse()?)),
                None => Err(Error::InvalidArgument(format!("unknown term order '{other}'"))),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(exps: &[u32]) -> Monomial {
        Monomial::from_exponents(exps)
    }

    #[test]
    fn lex_examples() {
        assert_eq!(TermOrder::Lex.compare(&m(&[2]), &m(&[1, 2])), Ordering::Less);
        assert_eq!(TermOrder::Lex.compare(&Monomial::one(), &m(&[0, 0, 0, 0, 1])), Ordering::Less);
        // x3^2 is above x1^4 x3 because the x3 exponent decides first
        assert_eq!(TermOrder::Lex.compare(&m(&[0, 0, 2]), &m(&[4, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn permuted_lex_swaps_variables() {
        let sigma = Permutation::from_cycles(&[&[1, 2]]).unwrap();
        let order = TermOrder::PermutedLex(sigma);
        assert_eq!(order.compare(&m(&[1]), &m(&[0, 1])), Ordering::Greater);
    }

    #[test]
    fn degrevlex_basics() {
        let o = TermOrder::DegRevLex;
        assert_eq!(o.compare(&m(&[3]), &m(&[0, 1])), Ordering::Greater);
        // same degree: more of the smallest variable is smaller
        assert_eq!(o.compare(&m(&[1, 0, 1]), &m(&[0, 2])), Ordering::Less);
        assert_eq!(o.compare(&m(&[1, 1]), &m(&[1, 1])), Ordering::Equal);
    }

    #[test]
    fn block_puts_eliminated_variables_on_top() {
        let o = TermOrder::block(VarSet::Aux, TermOrder::DegRevLex);
        let t = Monomial::var(Var::t(1));
        let big = m(&[9, 9, 9]);
        assert_eq!(o.compare(&t, &big), Ordering::Greater);
    }

    #[test]
    fn parse_orders() {
        assert_eq!("lex".parse::<TermOrder>().unwrap(), TermOrder::Lex);
        assert!(matches!("perm:(1 2)".parse::<TermOrder>().unwrap(), TermOrder::PermutedLex(_)));
        assert!("revlex".parse::<TermOrder>().is_err());
    }
}
