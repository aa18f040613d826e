//! Dense-exponent Buchberger engine over a fixed finite set of variables.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

use num_traits::{One, Zero};

use super::GbConfig;
use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, Rational, TermOrder, Var, VarSet};

type Exps = Box<[u16]>;

#[derive(Clone, Copy, Debug)]
enum SegKind {
    Lex,
    DegRevLex,
}

#[derive(Clone, Copy, Debug)]
struct Segment {
    start: usize,
    end: usize,
    kind: SegKind,
}

/// Variables laid out in rank order (position 0 is the largest variable of its
/// block) plus the comparison recipe derived from a [`TermOrder`].
#[derive(Clone, Debug)]
pub(crate) struct Ring {
    vars: Vec<Var>,
    position: HashMap<Var, usize>,
    segments: Vec<Segment>,
}

fn layout(order: &TermOrder, mut vars: Vec<Var>, offset: usize, out_vars: &mut Vec<Var>, segs: &mut Vec<Segment>) {
    match order {
        TermOrder::Lex | TermOrder::DegRevLex => {
            vars.sort_by(|a, b| b.cmp(a));
            let kind = if matches!(order, TermOrder::Lex) {
                SegKind::Lex
            } else {
                SegKind::DegRevLex
            };
            segs.push(Segment {
                start: offset,
                end: offset + vars.len(),
                kind,
            });
            out_vars.extend(vars);
        }
        TermOrder::PermutedLex(sigma) => {
            let mut keyed: Vec<(Var, Var)> = vars
                .into_iter()
                .map(|v| {
                    let image = v.try_map(|i| Ok(sigma.apply(i))).expect("permutations are total");
                    (image, v)
                })
                .collect();
            keyed.sort_by(|a, b| b.0.cmp(&a.0));
            segs.push(Segment {
                start: offset,
                end: offset + keyed.len(),
                kind: SegKind::Lex,
            });
            out_vars.extend(keyed.into_iter().map(|(_, v)| v));
        }
        TermOrder::Block { eliminated, inner } => {
            let (mut elim, rest): (Vec<Var>, Vec<Var>) = vars.into_iter().partition(|v| eliminated.contains(v));
            elim.sort_by(|a, b| b.cmp(a));
            let n = elim.len();
            if n > 0 {
                segs.push(Segment {
                    start: offset,
                    end: offset + n,
                    kind: SegKind::Lex,
                });
            }
            out_vars.extend(elim);
            layout(inner, rest, offset + n, out_vars, segs);
        }
    }
}

impl Ring {
    pub(crate) fn new(order: &TermOrder, universe: &BTreeSet<Var>) -> Ring {
        let mut vars = Vec::with_capacity(universe.len());
        let mut segments = Vec::new();
        layout(order, universe.iter().cloned().collect(), 0, &mut vars, &mut segments);
        let position = vars.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        Ring {
            vars,
            position,
            segments,
        }
    }

    pub(crate) fn contains_all(&self, p: &Polynomial) -> bool {
        p.terms()
            .all(|(m, _)| m.variables().all(|v| self.position.contains_key(v)))
    }

    fn cmp(&self, a: &[u16], b: &[u16]) -> Ordering {
        for seg in &self.segments {
            let (x, y) = (&a[seg.start..seg.end], &b[seg.start..seg.end]);
            let o = match seg.kind {
                SegKind::Lex => x.cmp(y),
                SegKind::DegRevLex => {
                    let dx: u32 = x.iter().map(|&e| e as u32).sum();
                    let dy: u32 = y.iter().map(|&e| e as u32).sum();
                    dx.cmp(&dy).then_with(|| {
                        for (p, q) in x.iter().zip(y).rev() {
                            if p != q {
                                return q.cmp(p);
                            }
                        }
                        Ordering::Equal
                    })
                }
            };
            if o != Ordering::Equal {
                return o;
            }
        }
        Ordering::Equal
    }

    fn to_exps(&self, m: &Monomial) -> Exps {
        let mut e = vec![0u16; self.vars.len()];
        for (v, k) in m.factors() {
            e[self.position[v]] = u16::try_from(*k).expect("exponent fits in 16 bits");
        }
        e.into_boxed_slice()
    }

    fn to_monomial(&self, e: &[u16]) -> Monomial {
        Monomial::from_factors(
            e.iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| (self.vars[i].clone(), k as u32)),
        )
    }

    pub(crate) fn to_dense(&self, p: &Polynomial) -> DPoly {
        let mut terms: Vec<(Exps, Rational)> = p.terms().map(|(m, c)| (self.to_exps(m), c.clone())).collect();
        terms.sort_by(|a, b| self.cmp(&b.0, &a.0));
        DPoly::new(terms)
    }

    pub(crate) fn to_sparse(&self, p: &DPoly) -> Polynomial {
        Polynomial::from_terms(p.terms.iter().map(|(e, c)| (c.clone(), self.to_monomial(e))))
    }

    /// Full reduction (leading and tail terms) of `p` by `basis`.
    pub(crate) fn reduce(&self, p: DPoly, basis: &[&DPoly]) -> DPoly {
        let mut done: Vec<(Exps, Rational)> = Vec::new();
        let mut rest = p.terms;
        let mut cursor = 0;
        while cursor < rest.len() {
            let (m, c) = &rest[cursor];
            let mask = divmask(m);
            let divisor = basis
                .iter()
                .find(|g| g.mask & !mask == 0 && divides(&g.terms[0].0, m));
            match divisor {
                None => {
                    done.push(rest[cursor].clone());
                    cursor += 1;
                }
                Some(g) => {
                    let factor = c / &g.terms[0].1;
                    let shift: Vec<u16> = m.iter().zip(g.terms[0].0.iter()).map(|(a, b)| a - b).collect();
                    let scaled = g.terms[1..]
                        .iter()
                        .map(|(e, k)| (add_exps(e, &shift), -(k * &factor)));
                    rest = self.merge(rest.drain(cursor + 1..), scaled);
                    cursor = 0;
                }
            }
        }
        DPoly::new(done)
    }

    fn merge(
        &self,
        a: impl Iterator<Item = (Exps, Rational)>,
        b: impl Iterator<Item = (Exps, Rational)>,
    ) -> Vec<(Exps, Rational)> {
        let mut a = a.peekable();
        let mut b = b.peekable();
        let mut out = Vec::new();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(x), Some(y)) => self.cmp(&x.0, &y.0),
            };
            match ord {
                Ordering::Greater => out.push(a.next().expect("peeked")),
                Ordering::Less => out.push(b.next().expect("peeked")),
                Ordering::Equal => {
                    let (e, x) = a.next().expect("peeked");
                    let (_, y) = b.next().expect("peeked");
                    let s = x + y;
                    if !s.is_zero() {
                        out.push((e, s));
                    }
                }
            }
        }
        out
    }

    fn spoly(&self, f: &DPoly, g: &DPoly, lcm: &[u16]) -> DPoly {
        let sf: Vec<u16> = lcm.iter().zip(f.terms[0].0.iter()).map(|(a, b)| a - b).collect();
        let sg: Vec<u16> = lcm.iter().zip(g.terms[0].0.iter()).map(|(a, b)| a - b).collect();
        let fi = f.terms[1..].iter().map(|(e, c)| (add_exps(e, &sf), c / &f.terms[0].1));
        let gi = g.terms[1..].iter().map(|(e, c)| (add_exps(e, &sg), -(c / &g.terms[0].1)));
        DPoly::new(self.merge(fi, gi))
    }
}

fn add_exps(a: &[u16], b: &[u16]) -> Exps {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn divides(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u16], b: &[u16]) -> Exps {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn coprime(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

fn degree(a: &[u16]) -> u64 {
    a.iter().map(|&e| e as u64).sum()
}

fn divmask(e: &[u16]) -> u64 {
    e.iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .fold(0u64, |acc, (i, _)| acc | (1 << (i % 64)))
}

/// Terms sorted in descending order; the first term leads.
#[derive(Clone, Debug)]
pub(crate) struct DPoly {
    terms: Vec<(Exps, Rational)>,
    mask: u64,
}

impl DPoly {
    fn new(terms: Vec<(Exps, Rational)>) -> Self {
        let mask = terms.first().map_or(0, |t| divmask(&t.0));
        DPoly { terms, mask }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lm(&self) -> &[u16] {
        &self.terms[0].0
    }

    fn monic(self) -> Self {
        match self.terms.first() {
            Some((_, c)) if !c.is_one() => {
                let inv = c.recip();
                DPoly::new(self.terms.into_iter().map(|(e, k)| (e, k * &inv)).collect())
            }
            _ => self,
        }
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Exps,
}

enum Item {
    Input(DPoly),
    Pair(Pair),
}

impl Item {
    fn key(&self) -> &[u16] {
        match self {
            Item::Input(p) => p.lm(),
            Item::Pair(p) => &p.lcm,
        }
    }
}

/// Buchberger completion with the normal selection strategy and the
/// Gebauer-Möller criteria. Returns the reduced basis, monic and sorted by
/// ascending leading monomial.
pub(crate) fn groebner(ring: &Ring, gens: &[Polynomial], cfg: &GbConfig) -> Result<Vec<DPoly>> {
    let mut queue: Vec<Item> = gens
        .iter()
        .map(|g| ring.to_dense(g))
        .filter(|g| !g.is_zero())
        .map(Item::Input)
        .collect();
    let mut basis: Vec<DPoly> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut processed = 0usize;
    let mut dirty = true;

    loop {
        if dirty {
            // descending, so the smallest key pops off the end; inputs before pairs on ties
            queue.sort_by(|a, b| {
                ring.cmp(b.key(), a.key())
                    .then_with(|| matches!(a, Item::Input(_)).cmp(&matches!(b, Item::Input(_))))
            });
            dirty = false;
        }
        let Some(item) = queue.pop() else { break };
        processed += 1;
        if processed > cfg.max_pairs {
            return Err(Error::CapExceeded {
                cap: "max-pairs",
                limit: cfg.max_pairs,
            });
        }
        let candidate = match item {
            Item::Input(p) => p,
            Item::Pair(pair) => {
                if degree(&pair.lcm) > cfg.max_degree {
                    return Err(Error::CapExceeded {
                        cap: "max-degree",
                        limit: cfg.max_degree as usize,
                    });
                }
                ring.spoly(&basis[pair.i], &basis[pair.j], &pair.lcm)
            }
        };
        let reducers: Vec<&DPoly> = basis.iter().zip(&active).filter(|(_, &a)| a).map(|(g, _)| g).collect();
        let h = ring.reduce(candidate, &reducers);
        if h.is_zero() {
            continue;
        }
        let h = h.monic();
        let new_pairs = update(&basis, &mut active, &mut queue, &h);
        let idx = basis.len();
        basis.push(h);
        active.push(true);
        for (i, l) in new_pairs {
            queue.push(Item::Pair(Pair { i, j: idx, lcm: l }));
        }
        if queue.len() > cfg.max_pairs {
            return Err(Error::CapExceeded {
                cap: "max-pairs",
                limit: cfg.max_pairs,
            });
        }
        dirty = true;
    }

    let minimal: Vec<DPoly> = basis
        .into_iter()
        .zip(active)
        .filter(|(_, a)| *a)
        .map(|(g, _)| g)
        .collect();
    let mut reduced: Vec<DPoly> = (0..minimal.len())
        .map(|i| {
            let others: Vec<&DPoly> = minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g).collect();
            let g = &minimal[i];
            let head = DPoly::new(vec![g.terms[0].clone()]);
            let tail = ring.reduce(DPoly::new(g.terms[1..].to_vec()), &others);
            let mut terms = head.terms;
            terms.extend(tail.terms);
            DPoly::new(terms)
        })
        .collect();
    reduced.sort_by(|a, b| ring.cmp(a.lm(), b.lm()));
    Ok(reduced)
}

/// Gebauer-Möller update: returns the new pairs `(i, new)` worth keeping,
/// prunes old pairs made redundant by `h`, and deactivates basis elements
/// whose leading monomial `h` divides.
fn update(basis: &[DPoly], active: &mut [bool], queue: &mut Vec<Item>, h: &DPoly) -> Vec<(usize, Exps)> {
    let hm = h.lm();
    let candidates: Vec<(usize, Exps, bool)> = basis
        .iter()
        .enumerate()
        .filter(|(i, _)| active[*i])
        .map(|(i, g)| (i, lcm(g.lm(), hm), coprime(g.lm(), hm)))
        .collect();

    // chain criterion among the new pairs
    let mut kept: Vec<usize> = Vec::new();
    for (a, (_, la, cop)) in candidates.iter().enumerate() {
        let dominated = !cop
            && (candidates[a + 1..].iter().any(|(_, lb, _)| divides(lb, la))
                || kept.iter().any(|&b| divides(&candidates[b].1, la)));
        if !dominated {
            kept.push(a);
        }
    }
    let new_pairs: Vec<(usize, Exps)> = kept
        .into_iter()
        .filter(|&a| !candidates[a].2)
        .map(|a| (candidates[a].0, candidates[a].1.clone()))
        .collect();

    queue.retain(|item| match item {
        Item::Input(_) => true,
        Item::Pair(p) => {
            !(divides(hm, &p.lcm)
                && *lcm(basis[p.i].lm(), hm) != *p.lcm
                && *lcm(basis[p.j].lm(), hm) != *p.lcm)
        }
    });

    for (i, g) in basis.iter().enumerate() {
        if active[i] && divides(hm, g.lm()) {
            active[i] = false;
        }
    }
    new_pairs
}

pub(crate) fn universe_of<'a>(polys: impl IntoIterator<Item = &'a Polynomial>) -> BTreeSet<Var> {
    polys.into_iter().flat_map(|p| p.variables()).collect()
}

#[allow(dead_code)]
pub(crate) fn eliminated_vars(universe: &BTreeSet<Var>, set: &VarSet) -> BTreeSet<Var> {
    universe.iter().filter(|v| set.contains(v)).cloned().collect()
}
