use glchain::ideal::{IdealSpec, MembershipEngine};
use glchain::ring::{cycle_monomial, Multidegree, Polynomial};
use glchain::verify::{
    default_lemma_cofactors, verify_dkk, verify_lemma, verify_phi, verify_stability, verify_tail, Context, Params,
    Verdict, VerificationReport, Witness,
};
use proptest::prelude::*;

#[test]
fn dkk_and_stability_agree_on_the_long_cycle() {
    let ctx = Context::default();
    for n in 2..=4 {
        let dkk = verify_dkk(&ctx, n, None).unwrap();
        assert!(dkk.passed());
        let stab = verify_stability(&ctx, n, None).unwrap();
        assert!(stab.passed());
        let excluded = stab
            .witnesses
            .iter()
            .find(|w| w.label == format!("w_{} in I_{n}", n + 1))
            .expect("stability reports the long cycle");
        assert!(!excluded.observed && excluded.ok);

        // Same question asked directly of a fresh engine at the stability truncation.
        let spec = IdealSpec::new(n, n + 2).unwrap();
        let seq: Vec<usize> = (1..=n + 1).collect();
        let w = Polynomial::monomial(spec.universe(), cycle_monomial(&seq).unwrap()).unwrap();
        assert!(!MembershipEngine::new(spec).member(&w).unwrap().member);
    }
}

#[test]
fn passing_reports_have_no_failed_witnesses() {
    let r = verify_lemma(&default_lemma_cofactors()[..20]).unwrap();
    assert!(r.passed());
    assert_eq!(r.dims["cofactors"], 20);
    let ctx = Context::default();
    for r in [verify_tail(&ctx, 2, None).unwrap(), verify_phi(&ctx, 6, None).unwrap()] {
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.failures().count(), 0);
    }
}

#[test]
fn real_reports_round_trip_through_json() {
    let ctx = Context { certificates: true, ..Context::default() };
    for r in [
        verify_dkk(&ctx, 3, None).unwrap(),
        verify_tail(&ctx, 3, None).unwrap(),
        verify_phi(&ctx, 6, None).unwrap(),
    ] {
        let json = serde_json::to_string(&r).unwrap();
        let back: VerificationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }
}

fn witness() -> impl Strategy<Value = Witness> {
    ("[a-z ]{0,12}", any::<bool>(), any::<bool>(), proptest::option::of(any::<bool>()), 0usize..4).prop_map(
        |(label, expected, observed, certified, k)| {
            let u = glchain::ring::Universe::edge(5).unwrap();
            let element = (k > 0).then(|| {
                let seq: Vec<usize> = (1..=k + 2).collect();
                Polynomial::monomial(u, cycle_monomial(&seq).unwrap()).unwrap()
            });
            let mut w = match certified {
                Some(c) => Witness::membership(label, element.unwrap_or_else(|| Polynomial::one(u)), expected, observed, c),
                None => Witness::new(label, element, expected, observed),
            };
            if k == 3 {
                w = w.with_detail("detail");
            }
            w
        },
    )
}

fn report() -> impl Strategy<Value = VerificationReport> {
    (
        prop::collection::vec(witness(), 0..5),
        proptest::option::of(2usize..8),
        prop::collection::btree_map("[a-z_]{1,8}", any::<u64>(), 0..4),
        any::<u64>(),
    )
        .prop_map(|(witnesses, n, dims, elapsed_ms)| {
            let verdict = if witnesses.iter().all(|w| w.ok) { Verdict::Pass } else { Verdict::Fail };
            VerificationReport {
                suite: "dkk".into(),
                params: Params {
                    n,
                    vertices: n.map(|n| n + 1),
                    degrees: n.map(|n| vec![Multidegree::constant(2, n + 1)]).unwrap_or_default(),
                    ..Params::default()
                },
                verdict,
                witnesses,
                dims,
                reports: Vec::new(),
                elapsed_ms,
            }
        })
}

proptest! {
    #[test]
    fn report_schema_round_trips(r in report()) {
        let json = serde_json::to_string(&r).unwrap();
        let back: VerificationReport = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, r);
    }
}
