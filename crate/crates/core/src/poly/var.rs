use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Entries of an index tuple; length one for the plain `x[i]` case.
pub type Index = SmallVec<[u32; 3]>;

/// An indeterminate: either a main variable `x[u]` indexed by a tuple of
/// pairwise distinct positive integers, or an auxiliary `t[i]`.
///
/// The derived order puts every `x` below every `t`; `x` variables compare
/// lexicographically on their tuple entries.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Var {
    X(Index),
    T(u32),
}

impl Var {
    pub fn x(i: u32) -> Var {
        assert!(i >= 1, "variable indices start at 1");
        Var::X(smallvec::smallvec![i])
    }

    /// Tuple variable `x[u1,...,uk]`; entries must be positive and pairwise distinct.
    pub fn tuple(entries: &[u32]) -> Result<Var> {
        if entries.is_empty() {
            return Err(Error::InvalidArgument("empty index tuple".into()));
        }
        for (i, &e) in entries.iter().enumerate() {
            if e == 0 {
                return Err(Error::InvalidArgument("index entries must be >= 1".into()));
            }
            if entries[..i].contains(&e) {
                return Err(Error::InvalidArgument(format!(
                    "repeated entry {e} in index tuple"
                )));
            }
        }
        Ok(Var::X(entries.iter().copied().collect()))
    }

    pub fn t(i: u32) -> Var {
        assert!(i >= 1, "variable indices start at 1");
        Var::T(i)
    }

    /// Tuple length for `x` variables; `None` for auxiliaries.
    pub fn arity(&self) -> Option<usize> {
        match self {
            Var::X(idx) => Some(idx.len()),
            Var::T(_) => None,
        }
    }

    pub fn is_aux(&self) -> bool {
        matches!(self, Var::T(_))
    }

    pub fn indices(&self) -> &[u32] {
        match self {
            Var::X(idx) => idx,
            Var::T(i) => std::slice::from_ref(i),
        }
    }

    pub fn max_entry(&self) -> u32 {
        self.indices().iter().copied().max().unwrap_or(0)
    }

    /// Applies `f` entrywise. `f` must be injective on the entries for the
    /// result to remain a valid tuple.
    pub fn try_map<F>(&self, mut f: F) -> Result<Var>
    where
        F: FnMut(u32) -> Result<u32>,
    {
        Ok(match self {
            Var::X(idx) => Var::X(idx.iter().map(|&i| f(i)).collect::<Result<_>>()?),
            Var::T(i) => Var::T(f(*i)?),
        })
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X(idx) => {
                f.write_str("x[")?;
                for (i, e) in idx.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{e}")?;
                }
                f.write_str("]")
            }
            Var::T(i) => write!(f, "t[{i}]"),
        }
    }
}
