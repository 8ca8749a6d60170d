use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{generators_within, Budget, Generator, IdealError, IdealSpec};
use crate::gf2::{BitMatrix, BitVector, Echelon};
use crate::ring::{count_monomials, enumerate_monomials, girth, Edge, Monomial, Multidegree, Polynomial, MAX_VERTICES};

/// Size figures of one graded piece.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisStats {
    /// `dim R_d`.
    pub columns: usize,
    /// Columns that are multiples of a short cycle generator.
    pub monomial_columns: usize,
    /// Distinct spanning rows fed to elimination (including the monomial ones).
    pub spanning_rows: usize,
    /// `dim (I_n)_d`.
    pub rank: usize,
}

/// The graded piece `(I_n)_d` as a reduced echelon matrix over the monomial
/// basis of `R_d`.
#[derive(Debug, Clone)]
pub struct GradedBasis {
    pub spec: IdealSpec,
    pub degree: Multidegree,
    columns: Vec<Monomial>,
    index: HashMap<Monomial, u32>,
    basis: BitMatrix,
    pub stats: BasisStats,
}

impl GradedBasis {
    pub fn columns(&self) -> &[Monomial] {
        &self.columns
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.stats.rank
    }

    pub fn dim(&self) -> usize {
        self.columns.len()
    }

    pub fn quotient_dim(&self) -> usize {
        self.dim() - self.rank()
    }

    pub fn column_of(&self, m: Monomial) -> Option<usize> {
        self.index.get(&m).map(|&i| i as usize)
    }

    /// Coefficient vector of a polynomial all of whose terms have degree `d`.
    pub fn vector(&self, f: &Polynomial) -> Result<BitVector, IdealError> {
        let mut v = BitVector::zeros(self.columns.len());
        for m in f.terms() {
            let col = self.column_of(m).ok_or_else(|| {
                IdealError::DegreeMismatch(format!(
                    "term of degree {} in a component of degree {}",
                    m.multidegree(),
                    self.degree
                ))
            })?;
            v.flip(col);
        }
        Ok(v)
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool, IdealError> {
        Ok(self.basis.in_rowspace(&self.vector(f)?)?)
    }

    pub(crate) fn from_parts(
        spec: IdealSpec,
        degree: Multidegree,
        columns: Vec<Monomial>,
        basis: BitMatrix,
        stats: BasisStats,
    ) -> Self {
        let index = columns.iter().enumerate().map(|(i, &m)| (m, i as u32)).collect();
        Self {
            spec,
            degree,
            columns,
            index,
            basis,
            stats,
        }
    }

    /// Builds `(I_n)_d`.
    ///
    /// Cycle generators of length `<= n` times monomials span exactly the
    /// monomials whose graph (restricted to vertices `<= N`) has girth `<= n`,
    /// so those columns become unit rows directly and elimination only runs
    /// on the Plucker products restricted to the remaining columns.
    pub fn build(spec: IdealSpec, degree: &Multidegree, budget: &Budget) -> Result<Self, IdealError> {
        check_degree(degree)?;
        let gens = relevant_generators(spec, degree);
        guard(degree, &gens, budget)?;

        let columns = enumerate_monomials(degree);
        let inside = edges_within(spec.vertices);
        let killed: Vec<bool> = columns
            .iter()
            .map(|&m| spec.n >= 3 && girth(Monomial::from_bits(m.bits() & inside)).is_some_and(|g| g <= spec.n))
            .collect();
        let mut live_index: HashMap<Monomial, u32> = HashMap::new();
        let mut live_cols = Vec::new();
        for (i, (&m, &k)) in columns.iter().zip(&killed).enumerate() {
            if !k {
                live_index.insert(m, live_cols.len() as u32);
                live_cols.push(i);
            }
        }

        let per_generator: Vec<Vec<Vec<u32>>> = gens
            .par_iter()
            .filter(|g| !g.is_monomial())
            .map(|g| {
                let cof_deg = degree.checked_sub(&g.degree).expect("filtered to e <= d");
                let terms: Vec<Monomial> = g.poly.terms().collect();
                let mut rows = Vec::new();
                for cof in enumerate_monomials(&cof_deg) {
                    let mut row: Vec<u32> = terms
                        .iter()
                        .filter_map(|&t| cof.mul(t))
                        .filter_map(|p| live_index.get(&p).copied())
                        .collect();
                    if !row.is_empty() {
                        row.sort_unstable();
                        rows.push(row);
                    }
                }
                rows
            })
            .collect();

        let mut ech = Echelon::new(live_cols.len());
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        for row in per_generator.into_iter().flatten() {
            if seen.contains(&row) {
                continue;
            }
            ech.insert_positions(&row);
            seen.insert(row);
        }
        let live_rref = ech.into_rref();

        // Unit rows for the monomial columns, then the live rows mapped back.
        let width = columns.len();
        let mut rows: Vec<(usize, BitVector)> = Vec::with_capacity(width);
        for (i, &k) in killed.iter().enumerate() {
            if k {
                rows.push((i, BitVector::from_positions(width, [i])));
            }
        }
        let monomial_columns = rows.len();
        for row in live_rref.rows() {
            let full = BitVector::from_positions(width, row.iter_ones().map(|j| live_cols[j]));
            rows.push((full.first_one().expect("nonzero"), full));
        }
        rows.sort_by_key(|(p, _)| *p);
        let rank = rows.len();
        let basis = BitMatrix::from_rref_parts(width, rows.into_iter().map(|(_, r)| r).collect())?;
        let stats = BasisStats {
            columns: width,
            monomial_columns,
            spanning_rows: monomial_columns + seen.len(),
            rank,
        };
        Ok(Self::from_parts(spec, degree.clone(), columns, basis, stats))
    }
}

fn check_degree(degree: &Multidegree) -> Result<(), IdealError> {
    if degree.max_vertex() > MAX_VERTICES {
        return Err(IdealError::DegreeMismatch(format!(
            "degree {degree} reaches past vertex {MAX_VERTICES}"
        )));
    }
    Ok(())
}

/// Generators that can contribute to degree `d`: supported inside
/// `support(d)` (and `[N]`) with degree `<= d`.
fn relevant_generators(spec: IdealSpec, degree: &Multidegree) -> Vec<Generator> {
    let pl_mask = degree.support_mask();
    let cyc_mask = degree
        .as_slice()
        .iter()
        .enumerate()
        .filter(|(_, &x)| x >= 2)
        .fold(0u32, |acc, (i, _)| acc | 1 << i);
    generators_within(spec, pl_mask, cyc_mask)
        .into_iter()
        .filter(|g| g.degree.le(degree))
        .collect()
}

fn guard(degree: &Multidegree, gens: &[Generator], budget: &Budget) -> Result<(), IdealError> {
    if budget.force {
        return Ok(());
    }
    let columns = count_monomials(degree);
    let mut memo: HashMap<Multidegree, u64> = HashMap::new();
    let mut rows = 0u64;
    for g in gens {
        let cof = degree.checked_sub(&g.degree).expect("filtered");
        let c = *memo.entry(cof.clone()).or_insert_with(|| count_monomials(&cof));
        rows = rows.saturating_add(c);
    }
    budget.check(&degree.to_string(), columns, rows)
}

fn edges_within(vertices: usize) -> u128 {
    let mut m = 0u128;
    for u in 1..=vertices {
        for v in u + 1..=vertices {
            m |= Monomial::edge(Edge::new(u, v).expect("in range")).bits();
        }
    }
    m
}

/// The literal spanning set of `(I_n)_d`: one row per nonzero product
/// `cofactor * generator`, duplicates dropped, with its provenance.
#[derive(Debug, Clone)]
pub struct SpanningRows {
    pub columns: Vec<Monomial>,
    pub generators: Vec<Generator>,
    pub rows: BitMatrix,
    /// `(index into generators, cofactor)` for each row of `rows`.
    pub provenance: Vec<(usize, Monomial)>,
}

pub fn graded_spanning_rows(
    spec: IdealSpec,
    degree: &Multidegree,
    budget: &Budget,
) -> Result<SpanningRows, IdealError> {
    check_degree(degree)?;
    let generators = relevant_generators(spec, degree);
    guard(degree, &generators, budget)?;
    let columns = enumerate_monomials(degree);
    let index: HashMap<Monomial, usize> = columns.iter().enumerate().map(|(i, &m)| (m, i)).collect();

    let mut seen = HashSet::new();
    let mut rows = Vec::new();
    let mut provenance = Vec::new();
    for (gi, g) in generators.iter().enumerate() {
        let cof_deg = degree.checked_sub(&g.degree).expect("filtered");
        for cof in enumerate_monomials(&cof_deg) {
            let product = g.poly.mul_monomial(cof);
            if product.is_zero() {
                continue;
            }
            let v = BitVector::from_positions(columns.len(), product.terms().map(|m| index[&m]));
            if seen.insert(v.clone()) {
                rows.push(v);
                provenance.push((gi, cof));
            }
        }
    }
    let rows = BitMatrix::from_rows(columns.len(), rows)?;
    Ok(SpanningRows {
        columns,
        generators,
        rows,
        provenance,
    })
}
