//! Independent check that the `(n+1)`-cycle avoids `I_n`.
//!
//! On `R_d` with `d = (2, ..., 2)` on `n+1` vertices the monomials are the
//! 2-regular graphs. The functional counting Hamilton cycles mod 2 kills
//! every cofactor times generator product in that degree, yet takes the
//! value 1 on any single Hamilton cycle. This module evaluates it on every
//! literal spanning row, with no elimination involved.
//!
//! The vertex set is `support(d)`, i.e. `1..=n+1`; the grading forces this.
//! Permuted copies of the cycle that coincide as monomials are counted once,
//! so the cycle part of `R_d` has dimension `n!/2`.

use serde::{Deserialize, Serialize};

use super::{graded_spanning_rows, Budget, IdealError, IdealSpec};
use crate::ring::{cycle_monomial, cycle_structure, Monomial, Multidegree, Polynomial, Universe};

/// Parity of the number of terms of `f` that are a single cycle through all
/// of `1..=n+1`. Every term must have degree `(2, ..., 2)` on `n+1` vertices.
pub fn cycle_sum_functional(f: &Polynomial, n: usize) -> Result<bool, IdealError> {
    let d = Multidegree::constant(2, n + 1);
    let mut parity = false;
    for m in f.terms() {
        if m.multidegree() != d {
            return Err(IdealError::DegreeMismatch(format!(
                "term of degree {} where {d} was expected",
                m.multidegree()
            )));
        }
        parity ^= is_hamiltonian(m, n + 1);
    }
    Ok(parity)
}

fn is_hamiltonian(m: Monomial, vertices: usize) -> bool {
    cycle_structure(m).cycle_lengths == [vertices]
}

/// A spanning row `cofactor * generator` with functional value 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayViolation {
    pub label: String,
    pub product: Polynomial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayReport {
    pub n: usize,
    /// `dim R_d`: the 2-regular graphs on `n+1` vertices.
    pub columns: usize,
    /// Distinct nonzero cofactor times generator products.
    pub rows: usize,
    /// Columns that are Hamilton cycles, `n!/2` of them.
    pub hamiltonian_columns: usize,
    /// Rows on which the functional is nonzero. Must be empty.
    pub violations: Vec<ReplayViolation>,
    /// Value on the standard cycle `1-2-...-(n+1)`.
    pub value_on_cycle: bool,
}

impl ReplayReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.value_on_cycle
    }
}

/// Replays the argument for `I_n` on `n+1` vertices. The cycle lies outside
/// the ideal when the report passes.
pub fn proof_replay_dkk(n: usize, budget: &Budget) -> Result<ReplayReport, IdealError> {
    let spec = IdealSpec::new(n, (n + 1).max(4))?;
    let universe = spec.universe();
    let d = Multidegree::constant(2, n + 1);
    let span = graded_spanning_rows(spec, &d, budget)?;
    let hamiltonian_columns = span.columns.iter().filter(|&&m| is_hamiltonian(m, n + 1)).count();

    let mut violations = Vec::new();
    for (row, &(g, cofactor)) in span.rows.rows().iter().zip(&span.provenance) {
        let terms = row.iter_ones().map(|i| span.columns[i]);
        let product = Polynomial::from_terms(universe, terms)?;
        if cycle_sum_functional(&product, n)? {
            violations.push(ReplayViolation {
                label: format!("{} * {}", cofactor_label(cofactor), span.generators[g].kind),
                product,
            });
        }
    }

    let seq: Vec<usize> = (1..=n + 1).collect();
    let w = Polynomial::monomial(universe, cycle_monomial(&seq)?)?;
    let value_on_cycle = cycle_sum_functional(&w, n)?;
    Ok(ReplayReport {
        n,
        columns: span.columns.len(),
        rows: span.rows.num_rows(),
        hamiltonian_columns,
        violations,
        value_on_cycle,
    })
}

fn cofactor_label(m: Monomial) -> String {
    Polynomial::monomial(Universe::Edge { vertices: m.max_vertex().max(1) }, m)
        .map(|p| p.to_string())
        .unwrap_or_else(|_| format!("{m:?}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::plucker;

    #[test]
    fn replay_passes_for_small_n() {
        for (n, columns, ham) in [(3, 3, 3), (4, 12, 12), (5, 70, 60)] {
            let r = proof_replay_dkk(n, &Budget::default()).unwrap();
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.columns, columns);
            assert_eq!(r.hamiltonian_columns, ham);
            assert!(r.rows > 0);
        }
        // For n = 2 nothing fits inside a triangle, so there are no rows.
        let r = proof_replay_dkk(2, &Budget::default()).unwrap();
        assert!(r.passed());
        assert_eq!((r.columns, r.rows, r.hamiltonian_columns), (1, 0, 1));
    }

    #[test]
    fn functional_on_small_examples() {
        let u = Universe::edge(4).unwrap();
        let c = |s: &[usize]| Polynomial::monomial(u, cycle_monomial(s).unwrap()).unwrap();
        assert!(cycle_sum_functional(&c(&[1, 2, 3, 4]), 3).unwrap());
        let two = c(&[1, 2, 3, 4]).add(&c(&[1, 3, 2, 4])).unwrap();
        assert!(!cycle_sum_functional(&two, 3).unwrap());
        // pl times a matching: two Hamilton cycles, parity zero.
        let pl = plucker(u, [1, 2, 3, 4]).unwrap();
        let prod = pl.mul_monomial(Monomial::from_pairs(&[(1, 2), (3, 4)]).unwrap());
        assert_eq!(prod.len(), 2);
        assert!(!cycle_sum_functional(&prod, 3).unwrap());
    }

    #[test]
    fn functional_rejects_other_degrees() {
        let u = Universe::edge(4).unwrap();
        let tri = Polynomial::monomial(u, cycle_monomial(&[1, 2, 3]).unwrap()).unwrap();
        assert!(matches!(cycle_sum_functional(&tri, 3), Err(IdealError::DegreeMismatch(_))));
    }
}
