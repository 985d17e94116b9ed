//! The built-in catalog of small groups and a parallel theorem scan over it.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::csection::{Analysis, Options};
use crate::groupspec::GroupSpec;
use crate::report::VerdictReport;
use crate::verify::{verify_lemma1_in, verify_theorem_instance};

/// Largest order admitted to the catalog.
pub const CATALOG_MAX_ORDER: u64 = 500;

fn n(name: &str, params: &[u64]) -> GroupSpec {
    GroupSpec::named(name, params)
}

/// Catalog entries with their orders, in catalog order.
pub fn catalog() -> Vec<(GroupSpec, u64)> {
    let mut out: Vec<(GroupSpec, u64)> = Vec::new();
    for k in 1..=12 {
        out.push((n("Cyclic", &[k]), k));
    }
    for order in (6..=24).step_by(2) {
        out.push((n("Dihedral", &[order]), order));
    }
    for (p, k) in [(2u64, 2u64), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)] {
        out.push((n("ElemAbelian", &[p, k]), p.pow(k as u32)));
    }
    for (k, o) in [(3, 6), (4, 24), (5, 120)] {
        out.push((n("Sym", &[k]), o));
    }
    for (k, o) in [(4, 12), (5, 60), (6, 360)] {
        out.push((n("Alt", &[k]), o));
    }
    for (q, o) in [(2, 6), (3, 12), (4, 60), (5, 60), (7, 168), (9, 360)] {
        out.push((n("PSL2", &[q]), o));
    }
    for (q, o) in [(2, 6), (3, 24), (4, 60), (5, 120), (7, 336)] {
        out.push((n("PGL2", &[q]), o));
    }
    for (q, o) in [(2, 6), (3, 24), (4, 60), (5, 120), (7, 336)] {
        out.push((n("SL", &[2, q]), o));
    }
    for (name, nq, o) in [
        ("BorelSL", [2, 4], 12),
        ("BorelSL", [2, 8], 56),
        ("BorelSL", [2, 9], 72),
        ("BorelPSL", [2, 9], 36),
        ("BorelPSL", [3, 4], 192),
    ] {
        out.push((n(name, &nq), o));
    }
    let small: [(GroupSpec, u64); 10] = [
        (n("Cyclic", &[2]), 2),
        (n("Cyclic", &[3]), 3),
        (n("Cyclic", &[5]), 5),
        (n("Sym", &[3]), 6),
        (n("Dihedral", &[8]), 8),
        (n("Alt", &[4]), 12),
        (n("Sym", &[4]), 24),
        (n("Alt", &[5]), 60),
        (n("Sym", &[5]), 120),
        (n("PSL2", &[7]), 168),
    ];
    for i in 0..small.len() {
        for j in i..small.len() {
            let o = small[i].1 * small[j].1;
            // Z_p x Z_p is already listed as elementary abelian.
            if o <= CATALOG_MAX_ORDER && !(i == j && i < 3) {
                out.push((
                    GroupSpec::product(vec![small[i].0.clone(), small[j].0.clone()]),
                    o,
                ));
            }
        }
    }
    out
}

/// Outcome of scanning one catalog entry.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScanResult {
    pub spec: GroupSpec,
    pub label: String,
    /// Theorem report followed by the c-section consistency report.
    pub reports: Vec<VerdictReport>,
    pub error: Option<String>,
}

impl ScanResult {
    pub fn complete(&self) -> bool {
        self.error.is_none() && self.reports.iter().all(|r| r.completeness)
    }

    pub fn theorem(&self) -> Option<&VerdictReport> {
        self.reports.first()
    }
}

/// Theorem and c-section consistency reports for a single group spec.
pub fn scan_one(spec: &GroupSpec, options: Options) -> ScanResult {
    let run = || -> Result<Vec<VerdictReport>, String> {
        let g = spec.build(options.degree_cap).map_err(|e| e.to_string())?;
        let theorem = verify_theorem_instance(&g, options).map_err(|e| e.to_string())?;
        let a = Analysis::new(&g, options).map_err(|e| e.to_string())?;
        let lemma1 = verify_lemma1_in(&a).map_err(|e| e.to_string())?;
        Ok(vec![theorem, lemma1])
    };
    let label = spec.label();
    let (reports, error) = match run() {
        Ok(r) => (r, None),
        Err(e) => (Vec::new(), Some(e)),
    };
    let reports = reports
        .into_iter()
        .map(|r| r.with_subject(label.clone()))
        .collect();
    ScanResult {
        spec: spec.clone(),
        label,
        reports,
        error,
    }
}

/// Scan `specs` on `workers` threads (0 means available parallelism).
/// Results come back in input order.
pub fn scan(specs: &[GroupSpec], options: Options, workers: usize) -> Vec<ScanResult> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("thread pool");
    pool.install(|| specs.par_iter().map(|s| scan_one(s, options)).collect())
}
