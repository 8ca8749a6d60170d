//! Action of GL generators, Lie-algebra derivations, and the map `phi`.
//!
//! A group element `g` acts on `x_{a,b} = e_a ^ e_b` by
//! `x_{a,b} -> g(e_a) ^ g(e_b)`, extended multiplicatively. Over F2 the
//! diagonal subgroup is trivial, so transvections and transpositions are
//! all that is needed.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ring::{
    paired_x, paired_y, Edge, Monomial, Polynomial, RingError, Universe, VertexPermutation,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GlError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("expected a polynomial over the edge alphabet, got {0}")]
    NotEdgeAlphabet(Universe),
    #[error("index {index} outside 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("generator indices must differ, got {0} twice")]
    Degenerate(usize),
}

/// A generator of GL over F2, acting on basis vectors `e_1, e_2, ...`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupGenerator {
    /// `e_src -> e_src + e_add`, every other basis vector fixed.
    Transvection { src: usize, add: usize },
    /// Swaps `e_i` and `e_j`.
    Transposition { i: usize, j: usize },
}

impl GroupGenerator {
    pub fn transvection(src: usize, add: usize) -> Self {
        GroupGenerator::Transvection { src, add }
    }

    pub fn transposition(i: usize, j: usize) -> Self {
        GroupGenerator::Transposition { i, j }
    }

    fn indices(self) -> (usize, usize) {
        match self {
            GroupGenerator::Transvection { src, add } => (src, add),
            GroupGenerator::Transposition { i, j } => (i, j),
        }
    }

    pub fn validate(self, vertices: usize) -> Result<(), GlError> {
        let (a, b) = self.indices();
        for x in [a, b] {
            if x == 0 || x > vertices {
                return Err(GlError::IndexOutOfRange {
                    index: x,
                    max: vertices,
                });
            }
        }
        if a == b {
            return Err(GlError::Degenerate(a));
        }
        Ok(())
    }

    /// Every transvection `(s, t)` with `s != t` followed by every
    /// transposition `(i, j)` with `i < j`, on `1..=vertices`.
    pub fn all(vertices: usize) -> Vec<GroupGenerator> {
        let mut out = Vec::with_capacity(vertices * vertices);
        for s in 1..=vertices {
            for t in 1..=vertices {
                if s != t {
                    out.push(Self::transvection(s, t));
                }
            }
        }
        for i in 1..=vertices {
            for j in i + 1..=vertices {
                out.push(Self::transposition(i, j));
            }
        }
        out
    }
}

impl fmt::Display for GroupGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupGenerator::Transvection { src, add } => write!(f, "E(e{src} -> e{src}+e{add})"),
            GroupGenerator::Transposition { i, j } => write!(f, "({i} {j})"),
        }
    }
}

/// The derivation replacing index `from` by `to` in one variable at a time:
/// `x_{a,from} -> x_{a,to}`, `x_{a,b} -> 0` when `from` is not an endpoint,
/// extended by the Leibniz rule. Expansions of `e(m)` are always computed
/// from this rule, never from a hand-written term list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LieDerivation {
    pub from: usize,
    pub to: usize,
}

impl LieDerivation {
    pub fn new(from: usize, to: usize) -> Result<Self, GlError> {
        if from == to {
            return Err(GlError::Degenerate(from));
        }
        Ok(Self { from, to })
    }
}

fn edge_vertices(f: &Polynomial) -> Result<usize, GlError> {
    match f.universe() {
        Universe::Edge { vertices } => Ok(vertices),
        other => Err(GlError::NotEdgeAlphabet(other)),
    }
}

/// Toggle-accumulates monomials, cancelling pairs.
#[derive(Default)]
struct Accumulator(HashSet<Monomial>);

impl Accumulator {
    fn toggle(&mut self, m: Monomial) {
        if !self.0.remove(&m) {
            self.0.insert(m);
        }
    }

    /// Multiplies every accumulated term by the sum `options`.
    fn times_sum(self, options: &[Monomial]) -> Accumulator {
        let mut out = Accumulator::default();
        for m in self.0 {
            for &o in options {
                if let Some(p) = m.mul(o) {
                    out.toggle(p);
                }
            }
        }
        out
    }
}

pub fn apply_generator(g: GroupGenerator, f: &Polynomial) -> Result<Polynomial, GlError> {
    let vertices = edge_vertices(f)?;
    g.validate(vertices)?;
    match g {
        GroupGenerator::Transposition { i, j } => {
            let perm = VertexPermutation::transposition(i, j, vertices);
            Ok(f.permute(&perm)?)
        }
        GroupGenerator::Transvection { src, add } => {
            let mut out = Accumulator::default();
            for m in f.terms() {
                let mut moving = Vec::new();
                let mut fixed = 0u128;
                for e in m.edges() {
                    if e.contains(src) {
                        moving.push(e);
                    } else {
                        fixed |= Monomial::edge(e).bits();
                    }
                }
                let mut acc = Accumulator::default();
                acc.toggle(Monomial::from_bits(fixed));
                for e in moving {
                    let b = e.other(src).expect("edge touches src");
                    // (e_src + e_add) ^ e_b = x_{src,b} + x_{add,b}
                    let mut opts = vec![Monomial::edge(e)];
                    if b != add {
                        opts.push(Monomial::edge(Edge::new(add, b)?));
                    }
                    acc = acc.times_sum(&opts);
                }
                for t in acc.0 {
                    out.toggle(t);
                }
            }
            Ok(Polynomial::from_terms_unchecked(f.universe(), out.0))
        }
    }
}

pub fn apply_derivation(e: LieDerivation, f: &Polynomial) -> Result<Polynomial, GlError> {
    let vertices = edge_vertices(f)?;
    for x in [e.from, e.to] {
        if x == 0 || x > vertices {
            return Err(GlError::IndexOutOfRange {
                index: x,
                max: vertices,
            });
        }
    }
    let mut out = Accumulator::default();
    for m in f.terms() {
        for edge in m.edges().filter(|x| x.contains(e.from)) {
            let a = edge.other(e.from).expect("edge touches from");
            if a == e.to {
                continue;
            }
            let rest = m.without(Monomial::edge(edge));
            if let Some(t) = rest.mul(Monomial::edge(Edge::new(a, e.to)?)) {
                out.toggle(t);
            }
        }
    }
    Ok(Polynomial::from_terms_unchecked(f.universe(), out.0))
}

/// `x_{i,j} -> x_i y_j + x_j y_i` into the paired algebra on the same index range.
pub fn phi(f: &Polynomial) -> Result<Polynomial, GlError> {
    let vertices = edge_vertices(f)?;
    let target = Universe::paired(vertices)?;
    let mut out = Accumulator::default();
    for m in f.terms() {
        let mut acc = Accumulator::default();
        acc.toggle(Monomial::ONE);
        for e in m.edges() {
            let (i, j) = (e.u(), e.v());
            let opts = [
                Monomial::from_bits(1u128 << paired_x(i) | 1u128 << paired_y(j)),
                Monomial::from_bits(1u128 << paired_x(j) | 1u128 << paired_y(i)),
            ];
            acc = acc.times_sum(&opts);
        }
        for t in acc.0 {
            out.toggle(t);
        }
    }
    Ok(Polynomial::from_terms_unchecked(target, out.0))
}

/// Simultaneous relabelling of `x_i` and `y_i` in the paired algebra.
pub fn permute_paired(f: &Polynomial, perm: &VertexPermutation) -> Result<Polynomial, GlError> {
    let vertices = match f.universe() {
        Universe::Paired { vertices } => vertices,
        other => return Err(GlError::Ring(RingError::Parse(format!("expected paired alphabet, got {other}")))),
    };
    let terms = f.terms().map(|m| {
        let mut bits = 0u128;
        for b in m.var_bits() {
            let nb = if b < 64 {
                paired_x(perm.apply(b as usize + 1))
            } else {
                paired_y(perm.apply(b as usize - 63))
            };
            bits |= 1u128 << nb;
        }
        Monomial::from_bits(bits)
    });
    Ok(Polynomial::from_terms(Universe::paired(vertices)?, terms)?)
}
