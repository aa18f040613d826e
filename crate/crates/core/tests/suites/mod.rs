//! Randomized property suites, shared by the `properties` test target and the
//! acceptance harness. Every suite runs [`CASES`] cases from a fixed seed.

#![allow(dead_code)]

pub mod oracles;

use std::collections::BTreeMap;
use std::sync::LazyLock;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestError, TestRng, TestRunner};

use symideal::chains::{symmetrize, variable_size, LEVEL_ORDER};
use symideal::gb::{buchberger, FiniteIdeal, GbConfig};
use symideal::poly::{mono_combine, parse_polynomial, Combine, Monomial, Permutation, Polynomial, Rational, TermOrder, Var, VarSet};
use symideal::reduce::{normal_form, reduce_step, verify_trace};
use symideal::symorder::{cancellation_witness, injection_divisor, is_related};
use symideal::toric::{self, ToricSpec};

pub const CASES: u32 = 256;

fn runner() -> TestRunner {
    let config = Config {
        cases: CASES,
        failure_persistence: None,
        max_global_rejects: 4 * CASES,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn check<S: Strategy>(strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    runner().run(&strategy, test).map_err(|e| match e {
        TestError::Fail(why, value) => format!("{why}; minimal input: {value:?}"),
        TestError::Abort(why) => format!("aborted: {why}"),
    })
}

pub struct Suite {
    pub name: &'static str,
    pub run: fn() -> Result<(), String>,
}

pub const SUITES: &[Suite] = &[
    Suite { name: "order axioms", run: order_axioms },
    Suite { name: "action homomorphism and quotients", run: action_homomorphism },
    Suite { name: "text round trip", run: text_round_trip },
    Suite { name: "witness soundness", run: witness_soundness },
    Suite { name: "relation order laws", run: relation_laws },
    Suite { name: "shift-lemma stability", run: shift_stability },
    Suite { name: "injection divisor oracle", run: injection_oracle },
    Suite { name: "trace identities", run: trace_identities },
    Suite { name: "lm strict descent", run: strict_descent },
    Suite { name: "buchberger post-hoc s-pairs", run: buchberger_post_hoc },
    Suite { name: "elimination monotone", run: elimination_monotone },
    Suite { name: "level generator independence", run: generator_independence },
    Suite { name: "toric kernel invariance", run: toric_invariance },
];

// ---- strategies ----

fn exps(len: usize, max: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..=max, 0..=len)
}

fn plain_mono(len: usize, max: u32) -> impl Strategy<Value = Monomial> {
    exps(len, max).prop_map(|e| Monomial::from_exponents(&e))
}

fn rational() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3)
        .prop_filter("nonzero", |(p, _)| *p != 0)
        .prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn plain_poly(vars: usize, deg: u32, terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((rational(), plain_mono(vars, deg)), 1..=terms).prop_map(Polynomial::from_terms)
}

fn nonzero_plain_poly(vars: usize, deg: u32, terms: usize) -> impl Strategy<Value = Polynomial> {
    plain_poly(vars, deg, terms).prop_filter("nonzero", |p| !p.is_zero())
}

fn perm(n: u32) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<u32>>())
        .prop_shuffle()
        .prop_map(|img| Permutation::from_map((1..).zip(img).collect()).unwrap())
}

fn tuple_var(n: u32, k: usize) -> impl Strategy<Value = Var> {
    Just((1..=n).collect::<Vec<u32>>())
        .prop_shuffle()
        .prop_map(move |v| Var::tuple(&v[..k]).unwrap())
}

fn tuple_mono(n: u32, k: usize, factors: usize) -> impl Strategy<Value = Monomial> {
    prop::collection::vec((tuple_var(n, k), 1u32..=2), 0..=factors).prop_map(Monomial::from_factors)
}

fn tuple_poly(n: u32, k: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((rational(), tuple_mono(n, k, 3)), 1..=3).prop_map(Polynomial::from_terms)
}

fn term_order() -> impl Strategy<Value = TermOrder> {
    prop_oneof![
        Just(TermOrder::Lex),
        Just(TermOrder::DegRevLex),
        perm(4).prop_map(TermOrder::PermutedLex),
    ]
}

/// `(v, w)` with `v`'s profile Higman-embedded into `w`'s by construction;
/// about half of these are also Lex-ordered.
fn embedded_pair() -> impl Strategy<Value = (Monomial, Monomial)> {
    (exps(3, 3), 0usize..=2, prop::collection::vec(0u32..=2, 6), prop::collection::vec(0u32..=2, 6), any::<u64>()).prop_map(
        |(vp, extra, bump, filler, pick)| {
            let n = vp.len() + extra;
            let mut slots: Vec<usize> = (0..n).collect();
            // a deterministic pseudo-random choice of vp.len() increasing slots
            let mut s = pick;
            while slots.len() > vp.len() {
                let i = (s % slots.len() as u64) as usize;
                slots.remove(i);
                s /= 3;
            }
            let mut wp: Vec<u32> = (0..n).map(|j| filler[j % 6]).collect();
            for (i, &j) in slots.iter().enumerate() {
                wp[j] = vp[i] + bump[i % 6];
            }
            (Monomial::from_exponents(&vp), Monomial::from_exponents(&wp))
        },
    )
}

fn any_pair() -> impl Strategy<Value = (Monomial, Monomial)> {
    prop_oneof![embedded_pair(), (plain_mono(4, 3), plain_mono(4, 3))]
}

// ---- suites ----

fn order_axioms() -> Result<(), String> {
    let mono = || plain_mono(4, 3);
    check((term_order(), mono(), mono(), mono(), mono()), |(o, a, b, c, u)| {
        let ab = o.compare(&a, &b);
        prop_assert_eq!(ab, o.compare(&b, &a).reverse());
        prop_assert_eq!(ab.is_eq(), a == b);
        if ab.is_le() && o.compare(&b, &c).is_le() {
            prop_assert!(o.compare(&a, &c).is_le());
        }
        if ab.is_le() {
            prop_assert!(o.compare(&u.mul(&a), &u.mul(&b)).is_le());
        }
        prop_assert!(o.compare(&Monomial::one(), &a).is_le());
        if TermOrder::Lex.compare(&a, &b).is_le() {
            prop_assert!(a.max_index().unwrap_or(0) <= b.max_index().unwrap_or(0));
        }
        // elimination block: anything with a t variable sits above everything without
        let block = TermOrder::block(VarSet::Aux, o.clone());
        let ta = a.mul(&Monomial::var(Var::t(1)));
        prop_assert!(block.compare(&b, &ta).is_lt());
        prop_assert_eq!(block.compare(&a, &b), ab);
        Ok(())
    })
}

fn action_homomorphism() -> Result<(), String> {
    let p = || plain_poly(4, 2, 3);
    check((perm(5), p(), p(), plain_mono(4, 3), plain_mono(4, 3), tuple_poly(5, 2)), |(s, f, g, u, v, t)| {
        prop_assert_eq!((&f * &g).permute(&s), &f.permute(&s) * &g.permute(&s));
        prop_assert_eq!((&f + &g).permute(&s), &f.permute(&s) + &g.permute(&s));
        prop_assert_eq!(f.permute(&s).total_degree(), f.total_degree());
        prop_assert_eq!(f.permute(&s).permute(&s.inverse()), f.clone());
        prop_assert_eq!(t.permute(&s).permute(&s.inverse()), t.clone());
        prop_assert_eq!(variable_size(&t.permute(&s)), variable_size(&t));
        let w = mono_combine(&u, &v, Combine::Product).unwrap().unwrap();
        let q = mono_combine(&v, &w, Combine::Quotient).unwrap().unwrap();
        prop_assert_eq!(q.mul(&v.permute(&Permutation::identity())), w.clone());
        if let Some(q) = mono_combine(&u, &v, Combine::Quotient).unwrap() {
            prop_assert_eq!(q.mul(&u), v.clone());
        } else {
            prop_assert!(!u.divides(&v));
        }
        Ok(())
    })
}

fn text_round_trip() -> Result<(), String> {
    check((plain_poly(4, 3, 4), tuple_poly(6, 3), term_order()), |(f, t, o)| {
        prop_assert_eq!(parse_polynomial(&f.to_text(&o)).unwrap(), f.clone());
        prop_assert_eq!(parse_polynomial(&t.to_string()).unwrap(), t.clone());
        let mixed = &f * &parse_polynomial("t[1] - 1/2*t[2]^2").unwrap();
        prop_assert_eq!(parse_polynomial(&mixed.to_string()).unwrap(), mixed.clone());
        Ok(())
    })
}

fn witness_soundness() -> Result<(), String> {
    check(any_pair(), |(v, w)| {
        let r = cancellation_witness(&v, &w).unwrap();
        prop_assert_eq!(r.related, oracles::related(&v, &w));
        prop_assert_eq!(r.related, is_related(&v, &w).unwrap());
        prop_assert!(r.verify(&v, &w));
        if !r.related {
            return Ok(());
        }
        let sigma = r.sigma.as_ref().unwrap();
        let image = v.permute(sigma);
        prop_assert_eq!(r.cofactor.as_ref().unwrap().mul(&image), w.clone());
        let bound = w.max_index().unwrap_or(0);
        prop_assert!(sigma.support().all(|i| i <= bound));
        // σ must keep the order of every v' <= v (bounded sample)
        let top = v.max_index().unwrap_or(0) as usize;
        let below: Vec<Monomial> = oracles::monomials_up_to(top, v.degree() as u32 + 2)
            .into_iter()
            .filter(|m| TermOrder::Lex.compare(m, &v).is_le())
            .collect();
        for a in &below {
            prop_assert!(TermOrder::Lex.compare(&a.permute(sigma), &image).is_le());
        }
        for a in below.iter().take(12) {
            for b in below.iter().take(12) {
                prop_assert_eq!(TermOrder::Lex.compare(a, b), TermOrder::Lex.compare(&a.permute(sigma), &b.permute(sigma)));
            }
        }
        Ok(())
    })
}

fn relation_laws() -> Result<(), String> {
    check((embedded_pair(), embedded_pair(), plain_mono(3, 2)), |((a, b), (_, c0), u)| {
        prop_assert!(is_related(&a, &a).unwrap());
        let c = b.mul(&c0).mul(&u);
        if is_related(&a, &b).unwrap() && is_related(&b, &c).unwrap() {
            prop_assert!(is_related(&a, &c).unwrap());
        }
        if is_related(&a, &b).unwrap() && is_related(&b, &a).unwrap() {
            prop_assert_eq!(a.clone(), b.clone());
        }
        Ok(())
    })
}

fn shift_stability() -> Result<(), String> {
    check((embedded_pair(), 0u32..=3, 0u32..=3, 0u32..=3), |((v, w), c, a, d)| {
        prop_assume!(is_related(&v, &w).unwrap() && !w.is_one());
        prop_assert!(is_related(&v, &oracles::shifted(c, &w)).unwrap());
        let b = a + d;
        prop_assert!(is_related(&oracles::shifted(a, &v), &oracles::shifted(b, &w)).unwrap());
        Ok(())
    })
}

fn injection_oracle() -> Result<(), String> {
    let pair = prop_oneof![
        (tuple_mono(4, 2, 3), tuple_mono(5, 2, 4)),
        (tuple_mono(4, 2, 3), tuple_mono(5, 2, 4)).prop_map(|(v, u)| (v.clone(), v.permute(&"(1 5 2)".parse().unwrap()).mul(&u))),
    ];
    check(pair, |(v, w)| {
        let r = injection_divisor(&v, &w).unwrap();
        prop_assert_eq!(r.is_some(), oracles::injection_exists(&v, &w));
        if let Some(pi) = r {
            prop_assert!(v.act(&pi).unwrap().divides(&w));
        }
        Ok(())
    })
}

fn basis_strategy() -> impl Strategy<Value = Vec<Polynomial>> {
    prop::collection::vec(nonzero_plain_poly(3, 2, 3), 1..=3)
}

fn trace_identities() -> Result<(), String> {
    check((plain_poly(3, 3, 4), basis_strategy(), any::<bool>()), |(f, b, tail)| {
        let t = normal_form(&f, &b, tail).unwrap();
        prop_assert!(verify_trace(&f, &b, &t));
        let again = normal_form(&t.residue, &b, tail).unwrap();
        prop_assert_eq!(&again.residue, &t.residue);
        prop_assert!(again.steps.is_empty());
        if let Some(step) = t.steps.first() {
            let mut broken = t.clone();
            broken.steps[0].coeff = &step.coeff + Rational::from_integer(1.into());
            prop_assert!(!verify_trace(&f, &b, &broken));
        }
        Ok(())
    })
}

fn strict_descent() -> Result<(), String> {
    check((nonzero_plain_poly(3, 3, 4), basis_strategy()), |(f, b)| {
        let reducible = b
            .iter()
            .any(|g| oracles::related(g.lm(&TermOrder::Lex).unwrap(), f.lm(&TermOrder::Lex).unwrap()));
        prop_assert_eq!(reduce_step(&f, &b).unwrap().is_some(), reducible);
        let mut cur = f.clone();
        let mut steps = 0;
        while let Some((h, _)) = reduce_step(&cur, &b).unwrap() {
            if let Some(m) = h.lm(&TermOrder::Lex) {
                prop_assert!(TermOrder::Lex.compare(m, cur.lm(&TermOrder::Lex).unwrap()).is_lt());
            }
            steps += 1;
            prop_assert!(steps < 10_000);
            if h.is_zero() {
                break;
            }
            cur = h;
        }
        Ok(())
    })
}

fn small_cfg() -> GbConfig {
    GbConfig {
        max_degree: 12,
        max_pairs: 5_000,
    }
}

fn buchberger_post_hoc() -> Result<(), String> {
    let gens = prop::collection::vec(nonzero_plain_poly(3, 3, 3), 1..=3);
    check((gens, term_order(), prop::collection::vec((rational(), plain_mono(3, 1)), 3), plain_poly(3, 3, 3)), |(gens, o, cof, f)| {
        let Ok(g) = buchberger(&gens, &o, &small_cfg()) else {
            return Err(TestCaseError::reject("cap"));
        };
        for (i, a) in g.iter().enumerate() {
            prop_assert_eq!(a.leading(&o).unwrap().1.clone(), Rational::from_integer(1.into()));
            for (j, b) in g.iter().enumerate() {
                if i < j {
                    prop_assert!(oracles::divide(&oracles::spoly(a, b, &o), &g, &o).is_zero());
                }
                if i != j {
                    let lm = a.lm(&o).unwrap();
                    prop_assert!(b.terms().all(|(m, _)| !lm.divides(m)));
                }
            }
        }
        for x in &gens {
            prop_assert!(oracles::divide(x, &g, &o).is_zero());
        }
        let mut rev = gens.clone();
        rev.reverse();
        prop_assert_eq!(buchberger(&rev, &o, &small_cfg()).unwrap(), g.clone());
        let ideal = FiniteIdeal::with_config(gens.clone(), o.clone(), small_cfg());
        let combo = gens
            .iter()
            .zip(&cof)
            .fold(Polynomial::zero(), |acc, (x, (c, m))| &acc + &x.mul_term(c, m));
        prop_assert!(ideal.contains(&combo).unwrap());
        prop_assert_eq!(ideal.contains(&f).unwrap(), oracles::divide(&f, &g, &o).is_zero());
        Ok(())
    })
}

fn elimination_monotone() -> Result<(), String> {
    let gens = prop::collection::vec(nonzero_plain_poly(3, 2, 3), 1..=2);
    check((gens, nonzero_plain_poly(3, 2, 2), 1u32..=2), |(gens, extra, bound)| {
        let i = FiniteIdeal::with_config(gens.clone(), TermOrder::DegRevLex, small_cfg());
        let mut more = gens.clone();
        more.push(extra);
        let j = FiniteIdeal::with_config(more, TermOrder::DegRevLex, small_cfg());
        let (Ok(ei), Ok(ej)) = (i.eliminate(&VarSet::IndexAbove(bound)), j.eliminate(&VarSet::IndexAbove(bound))) else {
            return Err(TestCaseError::reject("cap"));
        };
        let ei_gb = ei.groebner_basis().unwrap();
        for g in ei_gb {
            prop_assert!(g.max_index().unwrap_or(0) <= bound);
            prop_assert!(ej.contains(g).unwrap());
            prop_assert!(i.contains(g).unwrap());
        }
        Ok(())
    })
}

fn generator_independence() -> Result<(), String> {
    let b = prop::collection::vec(nonzero_plain_poly(2, 2, 2), 1..=2);
    check((b, prop::collection::vec((rational(), plain_mono(2, 1)), 2)), |(b, cof)| {
        let derived = b
            .iter()
            .zip(&cof)
            .fold(Polynomial::zero(), |acc, (g, (c, m))| &acc + &g.mul_term(c, m));
        let mut b2 = b.clone();
        b2.push(derived);
        let l1 = FiniteIdeal::with_config(symmetrize(&b, 2, 3).unwrap(), LEVEL_ORDER, small_cfg());
        let l2 = FiniteIdeal::with_config(symmetrize(&b2, 2, 3).unwrap(), LEVEL_ORDER, small_cfg());
        match l1.equals(&l2) {
            Ok(eq) => prop_assert!(eq),
            Err(_) => return Err(TestCaseError::reject("cap")),
        }
        // an image of an image is an image
        let twice = symmetrize(&symmetrize(&b, 2, 3).unwrap(), 3, 3).unwrap();
        prop_assert_eq!(twice, symmetrize(&b, 2, 3).unwrap());
        Ok(())
    })
}

struct Kernel {
    spec: ToricSpec,
    n: u32,
    ideal: FiniteIdeal,
}

static KERNELS: LazyLock<Vec<Kernel>> = LazyLock::new(|| {
    [("t[1]*t[2]", 2, 4), ("t[1]^2*t[2]", 2, 3), ("t[1] - t[2]", 2, 3), ("t[1]*t[2]*t[3]", 3, 4)]
        .into_iter()
        .map(|(f, k, n)| {
            let spec = ToricSpec::new(k, parse_polynomial(f).unwrap()).unwrap();
            let ideal = toric::kernel(&spec, n, &GbConfig::default()).unwrap();
            ideal.basis().unwrap();
            Kernel { spec, n, ideal }
        })
        .collect()
});

fn phi(g: &Polynomial, spec: &ToricSpec, n: u32) -> Polynomial {
    let images: BTreeMap<Var, Polynomial> = toric::phi_bindings(spec, n).unwrap().into_iter().collect();
    g.substitute(&|v| images.get(v).cloned())
}

fn toric_invariance() -> Result<(), String> {
    check((0usize..4, perm(4), any::<prop::sample::Index>(), 2u32..=5, 1usize..=3), |(which, s, pick, n, k)| {
        let kern = &KERNELS[which];
        let gb = kern.ideal.groebner_basis().unwrap();
        prop_assume!(!gb.is_empty());
        let s = if kern.n < 4 { Permutation::from_map(s.pairs_below(kern.n)).unwrap() } else { s };
        let g = pick.get(gb);
        prop_assert!(kern.ideal.contains(&g.permute(&s)).unwrap());
        prop_assert!(phi(g, &kern.spec, kern.n).is_zero());
        prop_assume!(n as usize >= k);
        let set = toric::squarefree_generating_set(n, k).unwrap();
        let spec = ToricSpec::squarefree(k);
        if !set.is_empty() {
            let h = pick.get(&set);
            prop_assert!(phi(h, &spec, n).is_zero());
            prop_assert!(variable_size(h) <= 4);
        }
        let m = toric::sorting_matrix(n, k).unwrap();
        for j in 0..m.columns.len() {
            prop_assert_eq!(m.rows.iter().map(|r| r[j] as usize).sum::<usize>(), k);
        }
        let per_row = binom(n as usize - 1, k - 1);
        prop_assert!(m.rows.iter().all(|r| r.iter().map(|&e| e as usize).sum::<usize>() == per_row));
        Ok(())
    })
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

trait Restrict {
    fn pairs_below(&self, n: u32) -> BTreeMap<u32, u32>;
}

impl Restrict for Permutation {
    /// The permutation induced on `1..=n` by reading images in order and
    /// skipping those above `n`.
    fn pairs_below(&self, n: u32) -> BTreeMap<u32, u32> {
        let images: Vec<u32> = (1..=4).map(|i| self.apply(i)).filter(|&j| j <= n).collect();
        (1..=n).zip(images).collect()
    }
}
