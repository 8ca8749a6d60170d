use std::collections::HashMap;

use glchain::gf2::{BitMatrix, BitVector};
use glchain::ideal::{generators, graded_spanning_rows, Budget, GradedBasis, IdealSpec, MembershipEngine};
use glchain::ring::{cycle_monomial, enumerate_monomials, Monomial, Multidegree, Polynomial, Universe};
use proptest::prelude::*;

fn spec(n: usize, vertices: usize) -> IdealSpec {
    IdealSpec::new(n, vertices).unwrap()
}

fn degrees() -> Vec<Multidegree> {
    [
        vec![2, 2, 2, 2],
        vec![2, 2, 2, 2, 2],
        vec![2, 2, 2, 2, 2, 2],
        vec![2, 2, 2, 2, 1, 1],
        vec![3, 2, 2, 2, 2, 1],
        vec![2, 2, 2, 1, 1, 1, 1],
    ]
    .into_iter()
    .map(Multidegree::from_vec)
    .collect()
}

#[test]
fn chain_is_monotone() {
    for d in degrees() {
        for n in 2..=5 {
            let lower = GradedBasis::build(spec(n, 7), &d, &Budget::default()).unwrap();
            let upper = GradedBasis::build(spec(n + 1, 7), &d, &Budget::default()).unwrap();
            assert_eq!(lower.columns(), upper.columns());
            for row in lower.matrix().rows() {
                assert!(upper.matrix().in_rowspace(row).unwrap(), "I_{n} not in I_{} at {d}", n + 1);
            }
            assert!(lower.rank() <= upper.rank());
        }
    }
}

#[test]
fn ideal_is_proper_and_contains_zero() {
    for (n, vertices) in [(2, 4), (3, 5), (4, 6), (6, 8)] {
        let e = MembershipEngine::new(spec(n, vertices));
        let u = Universe::edge(vertices).unwrap();
        assert!(e.member(&Polynomial::zero(u)).unwrap().member);
        assert!(!e.member(&Polynomial::one(u)).unwrap().member);
    }
}

#[test]
fn generators_outside_the_support_do_not_change_the_rank() {
    for d in degrees() {
        let s = spec(3, 7);
        let local = graded_spanning_rows(s, &d, &Budget::default()).unwrap();
        // Rebuild from every generator of the ideal, filtered only by degree.
        let index: HashMap<Monomial, usize> = local.columns.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let mut rows = Vec::new();
        for g in generators(s) {
            let Some(cof_deg) = d.checked_sub(&g.degree) else { continue };
            for cof in enumerate_monomials(&cof_deg) {
                let p = g.poly.mul_monomial(cof);
                rows.push(BitVector::from_positions(local.columns.len(), p.terms().map(|m| index[&m])));
            }
        }
        let global = BitMatrix::from_rows(local.columns.len(), rows).unwrap();
        assert!(generators(s).len() > local.generators.len());
        assert_eq!(global.rref().rank(), local.rows.rref().rank(), "{d}");
        let fast = GradedBasis::build(s, &d, &Budget::default()).unwrap();
        assert_eq!(Some(fast.rank()), global.rref().rank());
    }
}

#[test]
fn membership_verdicts_do_not_depend_on_thread_count() {
    let polys: Vec<Polynomial> = {
        let u = Universe::edge(7).unwrap();
        let c = |s: &[usize]| Polynomial::monomial(u, cycle_monomial(s).unwrap()).unwrap();
        vec![
            c(&[1, 2, 3, 4, 5]),
            c(&[1, 2, 3, 4]).add(&c(&[1, 3, 2, 4])).unwrap(),
            c(&[1, 2, 3]).mul(&c(&[4, 5, 6])).unwrap(),
            c(&[1, 2, 3, 4, 5, 6, 7]),
        ]
    };
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            let e = MembershipEngine::new(spec(4, 7));
            polys.iter().map(|p| e.member(p).unwrap()).collect::<Vec<_>>()
        })
    };
    assert_eq!(run(1), run(8));
}

fn spanning_element(n: usize, vertices: usize, d: &Multidegree, pick: &[bool]) -> Polynomial {
    let s = spec(n, vertices);
    let rows = graded_spanning_rows(s, d, &Budget::default()).unwrap();
    let mut acc = BitVector::zeros(rows.columns.len());
    for (row, &take) in rows.rows.rows().iter().zip(pick.iter().cycle()) {
        if take {
            acc.xor_assign(row).unwrap();
        }
    }
    Polynomial::from_terms(s.universe(), acc.iter_ones().map(|i| rows.columns[i])).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn ideal_is_closed_under_multiplication(
        pick in prop::collection::vec(any::<bool>(), 1..40),
        which in 0usize..6,
        a in 1usize..=7,
        b in 1usize..=7,
    ) {
        prop_assume!(a != b);
        let d = &degrees()[which];
        let h = spanning_element(3, 7, d, &pick);
        let x = Monomial::from_pairs(&[(a, b)]).unwrap();
        let e = MembershipEngine::new(spec(3, 7));
        prop_assert!(e.member(&h).unwrap().member);
        prop_assert!(e.member(&h.mul_monomial(x)).unwrap().member);
    }

    #[test]
    fn products_from_i_n_plus_one_land_in_i_n(
        p1 in prop::collection::vec(any::<bool>(), 1..20),
        p2 in prop::collection::vec(any::<bool>(), 1..20),
    ) {
        // Random elements of (I_3) pieces on disjoint vertex ranges, at N = 8.
        let d1 = Multidegree::from_vec(vec![2, 2, 2, 2]);
        let d2 = Multidegree::from_vec(vec![0, 0, 0, 0, 2, 2, 2, 2]);
        let f1 = spanning_element(3, 8, &d1, &p1);
        let f2 = spanning_element(3, 8, &d2, &p2);
        let e = MembershipEngine::new(spec(2, 8));
        prop_assert!(e.member(&f1.mul(&f2).unwrap()).unwrap().member);
    }
}
