#![allow(dead_code)]

//! Randomized algebra laws, shared by the core law tests and the acceptance
//! target. Runs are seeded, so every invocation checks the same cases.

use glchain::gl::{apply_derivation, apply_generator, phi, GroupGenerator, LieDerivation};
use glchain::ring::{Edge, Monomial, Polynomial, Universe};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

pub const VERTICES: usize = 7;

fn universe() -> Universe {
    Universe::edge(VERTICES).unwrap()
}

fn all_edges() -> Vec<Edge> {
    let mut out = Vec::new();
    for u in 1..=VERTICES {
        for v in u + 1..=VERTICES {
            out.push(Edge::new(u, v).unwrap());
        }
    }
    out
}

pub fn monomial() -> impl Strategy<Value = Monomial> {
    prop::sample::subsequence(all_edges(), 0..=4).prop_map(|es| Monomial::from_edges(es).unwrap())
}

pub fn polynomial() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(monomial(), 0..6).prop_map(|ms| Polynomial::from_terms(universe(), ms).unwrap())
}

pub fn group_generator() -> impl Strategy<Value = GroupGenerator> {
    (1..=VERTICES, 1..=VERTICES, any::<bool>())
        .prop_filter("distinct indices", |(a, b, _)| a != b)
        .prop_map(|(a, b, transvection)| {
            if transvection {
                GroupGenerator::transvection(a, b)
            } else {
                GroupGenerator::transposition(a.min(b), a.max(b))
            }
        })
}

pub fn derivation() -> impl Strategy<Value = LieDerivation> {
    (1..=VERTICES, 1..=VERTICES)
        .prop_filter("distinct indices", |(a, b)| a != b)
        .prop_map(|(a, b)| LieDerivation::new(a, b).unwrap())
}

fn check(cond: bool, what: &str) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(what.to_string()))
    }
}

fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    runner(cases).run(&strategy, test).map_err(|e| e.to_string())
}

pub fn commutativity(cases: u32) -> Result<(), String> {
    run(cases, (polynomial(), polynomial()), |(f, g)| {
        check(f.mul(&g).unwrap() == g.mul(&f).unwrap(), "fg = gf")?;
        check(f.add(&g).unwrap() == g.add(&f).unwrap(), "f+g = g+f")
    })
}

pub fn associativity(cases: u32) -> Result<(), String> {
    run(cases, (polynomial(), polynomial(), polynomial()), |(f, g, h)| {
        let left = f.mul(&g).unwrap().mul(&h).unwrap();
        let right = f.mul(&g.mul(&h).unwrap()).unwrap();
        check(left == right, "(fg)h = f(gh)")?;
        let left = f.add(&g).unwrap().add(&h).unwrap();
        let right = f.add(&g.add(&h).unwrap()).unwrap();
        check(left == right, "(f+g)+h = f+(g+h)")
    })
}

pub fn distributivity(cases: u32) -> Result<(), String> {
    run(cases, (polynomial(), polynomial(), polynomial()), |(f, g, h)| {
        let left = f.mul(&g.add(&h).unwrap()).unwrap();
        let right = f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap();
        check(left == right, "f(g+h) = fg+fh")
    })
}

pub fn char_two(cases: u32) -> Result<(), String> {
    run(cases, (polynomial(), monomial()), |(f, m)| {
        check(f.add(&f).unwrap().is_zero(), "f+f = 0")?;
        check(f.mul(&Polynomial::one(universe())).unwrap() == f, "1 is a unit")?;
        for e in m.edges() {
            check(m.mul(Monomial::edge(e)).is_none(), "x^2 = 0")?;
        }
        Ok(())
    })
}

pub fn leibniz(cases: u32) -> Result<(), String> {
    run(cases, (derivation(), polynomial(), polynomial()), |(d, f, g)| {
        let left = apply_derivation(d, &f.mul(&g).unwrap()).unwrap();
        let right = apply_derivation(d, &f)
            .unwrap()
            .mul(&g)
            .unwrap()
            .add(&f.mul(&apply_derivation(d, &g).unwrap()).unwrap())
            .unwrap();
        check(left == right, "D(fg) = D(f)g + fD(g)")?;
        let sum = apply_derivation(d, &f.add(&g).unwrap()).unwrap();
        check(
            sum == apply_derivation(d, &f).unwrap().add(&apply_derivation(d, &g).unwrap()).unwrap(),
            "D is additive",
        )
    })
}

pub fn involution(cases: u32) -> Result<(), String> {
    run(cases, (group_generator(), polynomial()), |(gamma, f)| {
        let twice = apply_generator(gamma, &apply_generator(gamma, &f).unwrap()).unwrap();
        check(twice == f, "gamma(gamma(f)) = f")
    })
}

pub fn generator_homomorphism(cases: u32) -> Result<(), String> {
    run(cases, (group_generator(), polynomial(), polynomial()), |(gamma, f, g)| {
        let act = |p: &Polynomial| apply_generator(gamma, p).unwrap();
        check(act(&f.mul(&g).unwrap()) == act(&f).mul(&act(&g)).unwrap(), "gamma(fg) = gamma(f)gamma(g)")?;
        check(act(&f.add(&g).unwrap()) == act(&f).add(&act(&g)).unwrap(), "gamma(f+g) = gamma(f)+gamma(g)")
    })
}

pub fn phi_homomorphism(cases: u32) -> Result<(), String> {
    run(cases, (polynomial(), polynomial()), |(f, g)| {
        let image = |p: &Polynomial| phi(p).unwrap();
        check(image(&f.mul(&g).unwrap()) == image(&f).mul(&image(&g)).unwrap(), "phi(fg) = phi(f)phi(g)")?;
        check(image(&f.add(&g).unwrap()) == image(&f).add(&image(&g)).unwrap(), "phi(f+g) = phi(f)+phi(g)")
    })
}

pub type Law = fn(u32) -> Result<(), String>;

pub const LAWS: &[(&str, Law)] = &[
    ("commutativity", commutativity),
    ("associativity", associativity),
    ("distributivity", distributivity),
    ("char-2 self-cancellation", char_two),
    ("Leibniz rule", leibniz),
    ("transvection involution", involution),
    ("group action is a homomorphism", generator_homomorphism),
    ("phi is a homomorphism", phi_homomorphism),
];
