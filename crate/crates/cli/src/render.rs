use std::fmt::Write;

use glchain::ideal::{BasisDump, Certificate, ComponentVerdict, IdealSpec};
use glchain::ring::Polynomial;
use glchain::verify::{DimRow, VerificationReport};

fn opt(v: Option<usize>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

fn verdict(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn report_text(report: &VerificationReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<10} {:>3} {:>3} {:>7} {:>9} {:>8} {:>10}",
        "suite", "n", "N", "verdict", "witnesses", "failures", "elapsed_ms"
    );
    let rows: Vec<&VerificationReport> = if report.reports.is_empty() {
        vec![report]
    } else {
        report.reports.iter().chain(std::iter::once(report)).collect()
    };
    for r in &rows {
        let _ = writeln!(
            s,
            "{:<10} {:>3} {:>3} {:>7} {:>9} {:>8} {:>10}",
            r.suite,
            opt(r.params.n.or(r.params.n_max)),
            opt(r.params.vertices),
            verdict(r.passed()),
            r.witnesses.len(),
            r.failures().count(),
            r.elapsed_ms
        );
    }
    for r in rows {
        for w in r.failures() {
            let _ = writeln!(s, "counterexample [{}]: {}", r.suite, w.label);
            if let Some(e) = &w.element {
                let _ = writeln!(s, "  element: {e}");
            }
            if let Some(d) = &w.detail {
                let _ = writeln!(s, "  {d}");
            }
        }
    }
    s
}

pub fn member_text(
    spec: IdealSpec,
    f: &Polynomial,
    member: bool,
    certified: bool,
    components: &[ComponentVerdict],
    certificate: Option<&Certificate>,
) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "element:   {f}");
    let _ = writeln!(s, "ideal:     I_{} on N = {}", spec.n, spec.vertices);
    let _ = writeln!(
        s,
        "member:    {member} ({})",
        if certified { "certified" } else { "not certified beyond N" }
    );
    for c in components {
        let _ = writeln!(
            s,
            "  degree {:<24} terms {:>4}  dim {:>7}  rank {:>7}  member {}",
            c.degree.to_string(),
            c.terms,
            c.dim,
            c.rank,
            c.member
        );
    }
    if let Some(cert) = certificate {
        let _ = writeln!(s, "certificate: {} products", cert.entries.len());
        for e in &cert.entries {
            let edges: Vec<String> = e.cofactor.iter().map(|[a, b]| format!("x{a},{b}")).collect();
            let cof = if edges.is_empty() { "1".to_string() } else { edges.join("*") };
            let _ = writeln!(s, "  {cof} * {}", e.generator);
        }
    }
    s
}

pub fn stats_text(rows: &[DimRow]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{:>3}  {:<28} {:>9} {:>9} {:>12}", "n", "degree", "dim_R", "dim_I", "dim_quotient");
    for r in rows {
        let _ = writeln!(
            s,
            "{:>3}  {:<28} {:>9} {:>9} {:>12}",
            r.n, r.degree, r.dim_r, r.dim_i, r.dim_quotient
        );
    }
    s
}

pub fn dump_text(d: &BasisDump) -> String {
    format!(
        "I_{} on N = {}, degree {}: {} columns, rank {}, checksum {}\n",
        d.spec.n,
        d.spec.vertices,
        d.d,
        d.columns.len(),
        d.rank,
        d.checksum
    )
}
