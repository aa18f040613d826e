use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, ParseError, Result};

/// Anything that maps positive integers to positive integers, possibly partially.
pub trait IndexAction {
    fn image(&self, i: u32) -> Option<u32>;

    fn image_or_err(&self, i: u32) -> Result<u32> {
        self.image(i).ok_or(Error::UndefinedIndex(i))
    }
}

/// A finitely supported bijection of the positive integers.
///
/// Only moved points are stored, so two equal permutations always have equal
/// representations.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct Permutation {
    moved: BTreeMap<u32, u32>,
}

impl Permutation {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Builds a permutation from explicit images. The map must permute its own
    /// domain; fixed points in it are dropped.
    pub fn from_map(map: BTreeMap<u32, u32>) -> Result<Self> {
        let domain: BTreeSet<u32> = map.keys().copied().collect();
        let image: BTreeSet<u32> = map.values().copied().collect();
        if domain.contains(&0) || image.len() != map.len() || domain != image {
            return Err(Error::InvalidArgument(
                "map is not a permutation of its domain".into(),
            ));
        }
        Ok(Self {
            moved: map.into_iter().filter(|(a, b)| a != b).collect(),
        })
    }

    pub fn from_cycles(cycles: &[&[u32]]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                let b = cycle[(i + 1) % cycle.len()];
                if map.insert(a, b).is_some() {
                    return Err(Error::InvalidArgument(format!(
                        "point {a} appears in two cycles"
                    )));
                }
            }
        }
        Self::from_map(map)
    }

    /// The cycle `(1 2 ... n)`.
    pub fn cycle_up_to(n: u32) -> Self {
        let c: Vec<u32> = (1..=n).collect();
        Self::from_cycles(&[&c]).expect("a single cycle is always valid")
    }

    /// Extends a strictly increasing (or any injective) partial map on `{1..n}`
    /// into a permutation of `{1..n}` fixing everything above `n`. Points of
    /// `{1..n}` outside the domain are sent, in increasing order, to the unused
    /// images in increasing order.
    pub fn extend_injection(pairs: &[(u32, u32)], n: u32) -> Result<Self> {
        let mut map = BTreeMap::new();
        let mut used = BTreeSet::new();
        for &(a, b) in pairs {
            if a == 0 || b == 0 || a > n || b > n {
                return Err(Error::InvalidArgument(format!(
                    "pair {a}->{b} lies outside 1..={n}"
                )));
            }
            if map.insert(a, b).is_some() || !used.insert(b) {
                return Err(Error::InvalidArgument("partial map is not injective".into()));
            }
        }
        let free_images: Vec<u32> = (1..=n).filter(|b| !used.contains(b)).collect();
        let free_points: Vec<u32> = (1..=n).filter(|a| !map.contains_key(a)).collect();
        for (a, b) in free_points.into_iter().zip(free_images) {
            map.insert(a, b);
        }
        Self::from_map(map)
    }

    /// Every permutation of `{1..n}` in lexicographic order of image lists.
    pub fn all_of(n: u32) -> Vec<Self> {
        let mut current: Vec<u32> = (1..=n).collect();
        let mut out = Vec::new();
        loop {
            let map = current
                .iter()
                .enumerate()
                .map(|(i, &b)| (i as u32 + 1, b))
                .collect();
            out.push(Self::from_map(map).expect("image list is a permutation"));
            // next lexicographic permutation
            let Some(i) = (1..current.len()).rev().find(|&i| current[i - 1] < current[i]) else {
                return out;
            };
            let j = (i..current.len())
                .rev()
                .find(|&j| current[j] > current[i - 1])
                .expect("pivot has a successor");
            current.swap(i - 1, j);
            current[i..].reverse();
        }
    }

    pub fn apply(&self, i: u32) -> u32 {
        self.moved.get(&i).copied().unwrap_or(i)
    }

    pub fn inverse(&self) -> Self {
        Self {
            moved: self.moved.iter().map(|(&a, &b)| (b, a)).collect(),
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        let points: BTreeSet<u32> = self.moved.keys().chain(other.moved.keys()).copied().collect();
        let moved = points
            .into_iter()
            .map(|p| (p, self.apply(other.apply(p))))
            .filter(|(a, b)| a != b)
            .collect();
        Self { moved }
    }

    pub fn is_identity(&self) -> bool {
        self.moved.is_empty()
    }

    /// Points that are not fixed.
    pub fn support(&self) -> impl Iterator<Item = u32> + '_ {
        self.moved.keys().copied()
    }

    pub fn max_moved(&self) -> Option<u32> {
        self.moved.keys().next_back().copied()
    }

    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in self.moved.keys() {
            if seen.contains(&start) {
                continue;
            }
            let mut cycle = vec![start];
            seen.insert(start);
            let mut p = self.apply(start);
            while p != start {
                seen.insert(p);
                cycle.push(p);
                p = self.apply(p);
            }
            out.push(cycle);
        }
        out
    }
}

impl IndexAction for Permutation {
    fn image(&self, i: u32) -> Option<u32> {
        Some(self.apply(i))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("()");
        }
        for cycle in self.cycles() {
            f.write_str("(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Parses cycle notation such as `(1 2 3)(4 5)`; `()` and the empty string
    /// are the identity. Commas may separate points.
    fn from_str(s: &str) -> Result<Self> {
        let err = |column: usize, message: &str| {
            Error::Parse(ParseError {
                line: 1,
                column,
                message: message.to_string(),
            })
        };
        let mut cycles: Vec<Vec<u32>> = Vec::new();
        let mut current: Option<Vec<u32>> = None;
        let mut number = String::new();
        let mut number_start = 0;
        for (pos, ch) in s.char_indices().chain(std::iter::once((s.len(), ' '))) {
            let column = pos + 1;
            if ch.is_ascii_digit() {
                if number.is_empty() {
                    number_start = column;
                }
                number.push(ch);
                continue;
            }
            if !number.is_empty() {
                let Some(cycle) = current.as_mut() else {
                    return Err(err(number_start, "number outside a cycle"));
                };
                let value: u32 = number
                    .parse()
                    .map_err(|_| err(number_start, "point out of range"))?;
                if value == 0 {
                    return Err(err(number_start, "points start at 1"));
                }
                cycle.push(value);
                number.clear();
            }
            match ch {
                '(' => {
                    if current.is_some() {
                        return Err(err(column, "nested '('"));
                    }
                    current = Some(Vec::new());
                }
                ')' => match current.take() {
                    Some(c) => cycles.push(c),
                    None => return Err(err(column, "unmatched ')'")),
                },
                ',' | ' ' | '\t' => {}
                _ => return Err(err(column, "unexpected character")),
            }
        }
        if current.is_some() {
            return Err(err(s.len() + 1, "unterminated cycle"));
        }
        let refs: Vec<&[u32]> = cycles.iter().filter(|c| !c.is_empty()).map(|c| c.as_slice()).collect();
        Self::from_cycles(&refs)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A finite injective partial map on positive integers.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Injection {
    map: BTreeMap<u32, u32>,
}

impl Injection {
    pub fn new(map: BTreeMap<u32, u32>) -> Result<Self> {
        let image: BTreeSet<u32> = map.values().copied().collect();
        if image.len() != map.len() || map.keys().any(|&a| a == 0) || image.contains(&0) {
            return Err(Error::InvalidArgument("map is not an injection".into()));
        }
        Ok(Self { map })
    }

    pub fn identity_on(points: impl IntoIterator<Item = u32>) -> Self {
        Self {
            map: points.into_iter().map(|p| (p, p)).collect(),
        }
    }

    pub fn pairs(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.map.iter().map(|(&a, &b)| (a, b))
    }

    pub fn domain_len(&self) -> usize {
        self.map.len()
    }
}

impl IndexAction for Injection {
    fn image(&self, i: u32) -> Option<u32> {
        self.map.get(&i).copied()
    }
}

impl fmt::Display for Injection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (a, b)) in self.map.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}->{b}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for Injection {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_map(self.map.iter().map(|(a, b)| (a.to_string(), b)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_notation_round_trip() {
        let p: Permutation = "(1 2 3)".parse().unwrap();
        assert_eq!(p.apply(1), 2);
        assert_eq!(p.apply(3), 1);
        assert_eq!(p.apply(7), 7);
        assert_eq!(p.to_string(), "(1 2 3)");
        let q: Permutation = "(3 1)(5,4)".parse().unwrap();
        assert_eq!(q.to_string(), "(1 3)(4 5)");
        assert_eq!("()".parse::<Permutation>().unwrap(), Permutation::identity());
        assert!("(1 1)".parse::<Permutation>().is_err());
        assert!("(1 2".parse::<Permutation>().is_err());
        assert!("(0 2)".parse::<Permutation>().is_err());
    }

    #[test]
    fn compose_and_inverse() {
        let p = Permutation::cycle_up_to(3);
        let q = Permutation::from_cycles(&[&[1, 2]]).unwrap();
        // q∘p: 1 -> 2 -> 1
        assert_eq!(q.compose(&p).apply(1), 1);
        assert!(p.compose(&p.inverse()).is_identity());
    }

    #[test]
    fn extension_fills_in_increasing_order() {
        // φ = {1↦2, 2↦3} on {1..3} extends to (1 2 3)
        let p = Permutation::extend_injection(&[(1, 2), (2, 3)], 3).unwrap();
        assert_eq!(p, Permutation::cycle_up_to(3));
        let q = Permutation::extend_injection(&[(1, 2)], 2).unwrap();
        assert_eq!(q.to_string(), "(1 2)");
        assert!(Permutation::extend_injection(&[(1, 4)], 3).is_err());
    }

    #[test]
    fn all_of_enumerates_factorial_many() {
        assert_eq!(Permutation::all_of(4).len(), 24);
        assert_eq!(Permutation::all_of(1), vec![Permutation::identity()]);
    }

    #[test]
    fn from_map_rejects_non_permutations() {
        let map = [(1, 2)].into_iter().collect();
        assert!(Permutation::from_map(map).is_err());
    }
}
