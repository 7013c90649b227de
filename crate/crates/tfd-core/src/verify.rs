//! End-to-end verification: enumerate everything, diff against the golden
//! catalog, check the infeasibility certificates, and re-run the bounded
//! emptiness scans.

use crate::catalog::{attach_golden_labels, diff, golden_catalog, DiffReport};
use crate::certificate::{check_certificate, prove_empty_case_ii_xk};
use crate::enumerator::{enumerate_all, enumerate_case_ii_xk_scenario};
use crate::Result;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub computed: usize,
    pub golden: usize,
    pub diff: DiffReport,
    /// (k, certificate valid) for k = 2..8.
    pub certificates: Vec<(u8, bool)>,
    /// (k, bounded scan found nothing) for k = 2..8.
    pub empty_scans: Vec<(u8, bool)>,
    /// Candidates rejected only by the interior midpoint check; expected
    /// empty, surfaced loudly otherwise.
    pub flagged: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.diff.is_empty()
            && self.certificates.iter().all(|(_, ok)| *ok)
            && self.empty_scans.iter().all(|(_, ok)| *ok)
    }

    pub fn summary(&self) -> String {
        let matched = self.golden - self.diff.missing.len();
        format!(
            "{}/{} match, {}/{} certificates valid, {}/{} emptiness scans clean{}",
            matched,
            self.golden,
            self.certificates.iter().filter(|(_, ok)| *ok).count(),
            self.certificates.len(),
            self.empty_scans.iter().filter(|(_, ok)| *ok).count(),
            self.empty_scans.len(),
            if self.flagged.is_empty() {
                String::new()
            } else {
                format!(", {} midpoint-flagged candidates", self.flagged.len())
            }
        )
    }
}

/// Runs the whole verification pipeline.
pub fn verify(jobs: Option<usize>) -> Result<VerifyReport> {
    let golden = golden_catalog()?;
    let mut classification = enumerate_all(jobs)?;
    attach_golden_labels(&mut classification.records, &golden);
    let diff_report = diff(&classification.records, &golden);

    let mut certificates = Vec::new();
    let mut empty_scans = Vec::new();
    let mut flagged = classification.flagged.clone();
    for k in 2..=8u8 {
        let cert = prove_empty_case_ii_xk(k)?;
        certificates.push((k, check_certificate(&cert)?));
        let scan = enumerate_case_ii_xk_scenario(k)?;
        empty_scans.push((k, scan.records.is_empty()));
        flagged.extend(scan.flagged);
    }

    Ok(VerifyReport {
        computed: classification.records.len(),
        golden: golden.len(),
        diff: diff_report,
        certificates,
        empty_scans,
        flagged,
    })
}
