//! Verification suites and their machine-readable reports.
//!
//! Every suite returns a [`VerificationReport`]. Witnesses record the
//! elements that were checked (all failures, plus the anchor elements each
//! suite is about), so a failing report always names a counterexample.
//! Suites fan out over the rayon pool; results are collected in input order,
//! so reports do not depend on the number of threads.

mod stats;
mod suites;

pub use stats::{dimension_stats, DimRow};
pub use suites::{
    default_lemma_cofactors, verify_all, verify_dkk, verify_lemma, verify_phi, verify_square, verify_stability,
    verify_tail, SQUARE_N_MAX,
};

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gl::GlError;
use crate::ideal::{BasisCache, Budget, Certificate, DiskCache, IdealError, IdealSpec, MembershipEngine};
use crate::ring::{Multidegree, Polynomial, RingError};

pub const DEFAULT_SEED: u64 = 0x00c0_ffee;
pub const DEFAULT_SAMPLE: usize = 5_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Gl(#[from] GlError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl VerifyError {
    pub fn is_budget(&self) -> bool {
        matches!(self, VerifyError::Ideal(IdealError::BudgetExceeded { .. }))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, rename = "N", skip_serializing_if = "Option::is_none")]
    pub vertices: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub degrees: Vec<Multidegree>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sample: Option<usize>,
}

/// One checked claim about one element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub element: Option<Polynomial>,
    pub expected: bool,
    pub observed: bool,
    /// Present for membership checks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certified: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub ok: bool,
}

impl Witness {
    pub fn new(label: impl Into<String>, element: Option<Polynomial>, expected: bool, observed: bool) -> Self {
        Self {
            label: label.into(),
            element,
            expected,
            observed,
            certified: None,
            certificate: None,
            detail: None,
            ok: expected == observed,
        }
    }

    /// A membership claim; it only holds if the verdict is also certified.
    pub fn membership(label: impl Into<String>, element: Polynomial, expected: bool, observed: bool, certified: bool) -> Self {
        let mut w = Self::new(label, Some(element), expected, observed);
        w.certified = Some(certified);
        w.ok = expected == observed && certified;
        w
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub params: Params,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    pub dims: BTreeMap<String, u64>,
    /// Sub-reports of an aggregate run.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub reports: Vec<VerificationReport>,
    /// Wall-clock time; the only field that varies between identical runs.
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict.passed()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Witness> {
        self.witnesses.iter().filter(|w| !w.ok)
    }

    /// Zeroes `elapsed_ms` here and in every sub-report.
    pub fn without_timing(mut self) -> Self {
        self.elapsed_ms = 0;
        self.reports = self.reports.into_iter().map(Self::without_timing).collect();
        self
    }
}

/// Accumulates witnesses and sizes for one suite run.
pub(crate) struct ReportBuilder {
    suite: &'static str,
    params: Params,
    witnesses: Vec<Witness>,
    dims: BTreeMap<String, u64>,
    reports: Vec<VerificationReport>,
    start: Instant,
}

impl ReportBuilder {
    pub(crate) fn new(suite: &'static str, params: Params) -> Self {
        Self {
            suite,
            params,
            witnesses: Vec::new(),
            dims: BTreeMap::new(),
            reports: Vec::new(),
            start: Instant::now(),
        }
    }

    pub(crate) fn witness(&mut self, w: Witness) {
        self.witnesses.push(w);
    }

    pub(crate) fn dim(&mut self, key: &str, value: usize) {
        self.dims.insert(key.to_string(), value as u64);
    }

    pub(crate) fn child(&mut self, r: VerificationReport) {
        self.reports.push(r);
    }

    /// Passes iff every witness holds and every sub-report passes.
    pub(crate) fn finish(self) -> VerificationReport {
        let ok = self.witnesses.iter().all(|w| w.ok) && self.reports.iter().all(|r| r.passed());
        VerificationReport {
            suite: self.suite.to_string(),
            params: self.params,
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
            witnesses: self.witnesses,
            dims: self.dims,
            reports: self.reports,
            elapsed_ms: self.start.elapsed().as_millis() as u64,
        }
    }
}

/// Shared settings and caches for suite runs.
#[derive(Clone)]
pub struct Context {
    pub budget: Budget,
    pub cache: BasisCache,
    pub disk: Option<DiskCache>,
    pub seed: u64,
    pub sample: usize,
    /// Attach explicit certificates to positive membership anchors.
    pub certificates: bool,
}

impl Default for Context {
    fn default() -> Self {
        Self {
            budget: Budget::default(),
            cache: BasisCache::new(),
            disk: None,
            seed: DEFAULT_SEED,
            sample: DEFAULT_SAMPLE,
            certificates: false,
        }
    }
}

impl Context {
    pub fn engine(&self, spec: IdealSpec) -> MembershipEngine {
        MembershipEngine::new(spec)
            .with_budget(self.budget)
            .with_cache(self.cache.clone())
            .with_disk_cache(self.disk.clone())
    }

    /// Membership witness for `f` in `I_n` at `spec`, with a certificate
    /// attached when requested and `f` is a member.
    pub(crate) fn membership_witness(
        &self,
        label: impl Into<String>,
        spec: IdealSpec,
        f: &Polynomial,
        expected: bool,
    ) -> Result<(Witness, crate::ideal::MembershipVerdict), VerifyError> {
        let engine = self.engine(spec);
        let v = engine.member(f)?;
        let mut w = Witness::membership(label, f.clone(), expected, v.member, v.certified);
        if self.certificates && v.member {
            let cert = engine.certificate(f)?;
            if let Some(c) = &cert {
                if !c.proves(f) {
                    w.ok = false;
                    w.detail = Some("certificate does not reproduce the element".into());
                }
            }
            w.certificate = cert;
        }
        Ok((w, v))
    }
}
