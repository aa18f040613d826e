//! Brute-force reference implementations the library is checked against.

use symideal::poly::{Monomial, Polynomial, TermOrder, Var};

/// Classical multivariate division; returns the remainder.
pub fn divide(f: &Polynomial, gs: &[Polynomial], order: &TermOrder) -> Polynomial {
    let mut p = f.clone();
    let mut r = Polynomial::zero();
    while let Some((lm, lc)) = p.leading(order).map(|(m, c)| (m.clone(), c.clone())) {
        let hit = gs.iter().filter(|g| !g.is_zero()).find(|g| g.lm(order).unwrap().divides(&lm));
        match hit {
            Some(g) => {
                let (glm, glc) = g.leading(order).unwrap();
                let u = lm.div(glm).unwrap();
                p = &p - &g.mul_term(&(&lc / glc), &u);
            }
            None => {
                r.add_term(lc.clone(), lm.clone());
                p.add_term(-lc, lm);
            }
        }
    }
    r
}

pub fn spoly(a: &Polynomial, b: &Polynomial, order: &TermOrder) -> Polynomial {
    let (am, ac) = a.leading(order).unwrap();
    let (bm, bc) = b.leading(order).unwrap();
    let l = am.lcm(bm);
    let one = symideal::poly::Rational::from_integer(1.into());
    &a.mul_term(&(&one / ac), &l.div(am).unwrap()) - &b.mul_term(&(&one / bc), &l.div(bm).unwrap())
}

/// Every strictly increasing map from `0..k` into `0..n`.
pub fn increasing_maps(k: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(k: usize, n: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for j in start..n {
            cur.push(j);
            go(k, n, j + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, n, 0, &mut Vec::new(), &mut out);
    out
}

pub fn higman_exists(v: &Monomial, w: &Monomial) -> bool {
    let (vp, wp) = (v.profile().unwrap(), w.profile().unwrap());
    increasing_maps(vp.len(), wp.len())
        .iter()
        .any(|phi| phi.iter().enumerate().all(|(i, &j)| vp[i] <= wp[j]))
}

/// Related under Lex plus a Higman embedding, by exhaustive search.
pub fn related(v: &Monomial, w: &Monomial) -> bool {
    TermOrder::Lex.compare(v, w).is_le() && higman_exists(v, w)
}

/// Injections of `v`'s index support into `w`'s index support.
pub fn injection_exists(v: &Monomial, w: &Monomial) -> bool {
    let vs = v.index_support();
    let ws = w.index_support();
    fn go(vs: &[u32], ws: &[u32], pos: usize, map: &mut Vec<(u32, u32)>, v: &Monomial, w: &Monomial) -> bool {
        if pos == vs.len() {
            let m: std::collections::BTreeMap<u32, u32> = map.iter().copied().collect();
            let image = Monomial::from_factors(v.factors().iter().map(|(var, e)| {
                let idx: Vec<u32> = var.indices().iter().map(|i| m[i]).collect();
                (Var::tuple(&idx).unwrap(), *e)
            }));
            return image.divides(w);
        }
        for &t in ws {
            if map.iter().all(|&(_, u)| u != t) {
                map.push((vs[pos], t));
                if go(vs, ws, pos + 1, map, v, w) {
                    return true;
                }
                map.pop();
            }
        }
        false
    }
    go(&vs, &ws, 0, &mut Vec::new(), v, w)
}

/// Every plain monomial in `x[1..=n]` of total degree at most `d`.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<Monomial> {
    fn go(n: usize, d: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if cur.len() == n {
            out.push(Monomial::from_exponents(cur));
            return;
        }
        let used: u32 = cur.iter().sum();
        for e in 0..=(d - used) {
            cur.push(e);
            go(n, d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, d, &mut Vec::new(), &mut out);
    out
}

/// `x[1]^c * shift(w)`, where shift sends `x[i]` to `x[i + 1]`.
pub fn shifted(c: u32, w: &Monomial) -> Monomial {
    let mut e = vec![c];
    e.extend(w.profile().unwrap());
    Monomial::from_exponents(&e)
}
