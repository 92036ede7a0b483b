//! Real Schur root detection.
//!
//! For Dynkin quivers every indecomposable is exceptional, so the real Schur
//! roots are exactly the positive roots. Elsewhere a root is confirmed by
//! exhibiting an exceptional representation of that dimension; the probe is
//! one-sided, and an unsuccessful probe is reported as such rather than as
//! a negative answer.

use serde::Serialize;

use crate::einv::EInvariant;
use crate::error::{Error, Result};
use crate::quiver::{DimVec, Quiver};
use crate::rep::{sample_exceptional, DEFAULT_PROBE_BUDGET};
use crate::roots::{positive_real_roots, RootSet};
use crate::RationalRep;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchurMode {
    ExactDynkin,
    Probe { seed: u64, budget: u32 },
}

impl SchurMode {
    pub fn probe(seed: u64) -> Self {
        SchurMode::Probe {
            seed,
            budget: DEFAULT_PROBE_BUDGET,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SchurCertificate {
    /// Dynkin quiver and `alpha` is a positive root.
    DynkinRoot,
    /// Dynkin quiver and `alpha` is not a positive root.
    NotARoot,
    /// A necessary condition failed.
    Filter(String),
    /// An exceptional representation of dimension `alpha`.
    Probe { seed: u64, rep: RationalRep },
    /// The retry budget ran out without a verified sample.
    ProbeExhausted { budget: u32 },
}

impl SchurCertificate {
    pub fn label(&self) -> &'static str {
        match self {
            SchurCertificate::DynkinRoot => "dynkin-root",
            SchurCertificate::NotARoot => "not-a-root",
            SchurCertificate::Filter(_) => "filter",
            SchurCertificate::Probe { .. } => "probe",
            SchurCertificate::ProbeExhausted { .. } => "probe-exhausted",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SchurVerdict {
    pub is_schur: bool,
    pub certificate: SchurCertificate,
}

pub fn is_real_schur_root(
    einv: &EInvariant,
    alpha: &DimVec,
    mode: SchurMode,
) -> Result<SchurVerdict> {
    let quiver = einv.quiver();
    quiver.check_dim(alpha)?;
    if !alpha.is_positive() {
        return Err(Error::NegativeEntry {
            vector: alpha.to_string(),
        });
    }
    match mode {
        SchurMode::ExactDynkin => {
            if !quiver.is_dynkin() {
                return Err(Error::NotDynkin);
            }
            let roots = positive_real_roots(quiver, None)?;
            let is_schur = roots.contains(alpha);
            Ok(SchurVerdict {
                is_schur,
                certificate: if is_schur {
                    SchurCertificate::DynkinRoot
                } else {
                    SchurCertificate::NotARoot
                },
            })
        }
        SchurMode::Probe { seed, budget } => probe(einv, alpha, seed, budget),
    }
}

fn probe(einv: &EInvariant, alpha: &DimVec, seed: u64, budget: u32) -> Result<SchurVerdict> {
    let quiver = einv.quiver();
    let filtered = |why: String| SchurVerdict {
        is_schur: false,
        certificate: SchurCertificate::Filter(why),
    };
    let q = quiver.tits_form(alpha)?;
    if q != 1 {
        return Ok(filtered(format!("Tits form is {q}, not 1")));
    }
    let self_ext = einv.e(alpha, alpha)?;
    if self_ext != 0 {
        return Ok(filtered(format!("E(alpha, alpha) = {self_ext}")));
    }
    match sample_exceptional(quiver, alpha, seed, budget) {
        Ok(rep) => Ok(SchurVerdict {
            is_schur: true,
            certificate: SchurCertificate::Probe { seed, rep },
        }),
        Err(Error::ProbeExhausted { .. }) => Ok(SchurVerdict {
            is_schur: false,
            certificate: SchurCertificate::ProbeExhausted { budget },
        }),
        Err(e) => Err(e),
    }
}

/// Real Schur roots: all positive roots for Dynkin quivers, otherwise the
/// probe-confirmed roots up to `bound` (roots whose probe ran out are
/// listed in `unresolved`).
pub fn real_schur_roots(
    einv: &EInvariant,
    bound: Option<u64>,
    seed: u64,
    budget: u32,
) -> Result<RootSet> {
    let quiver: &Quiver = einv.quiver();
    let mut roots = positive_real_roots(quiver, bound)?;
    if quiver.is_dynkin() {
        return Ok(roots);
    }
    let mut confirmed = Vec::new();
    let mut unresolved = Vec::new();
    for alpha in roots.roots {
        let verdict = probe(einv, &alpha, seed, budget)?;
        match verdict.certificate {
            SchurCertificate::Probe { .. } => confirmed.push(alpha),
            SchurCertificate::ProbeExhausted { .. } => unresolved.push(alpha),
            _ => {}
        }
    }
    roots.roots = confirmed;
    roots.unresolved = unresolved;
    roots.complete = false;
    Ok(roots)
}

#[derive(Debug, Clone, Serialize)]
pub struct VerdictSummary {
    pub is_schur: bool,
    pub certificate: &'static str,
}

impl From<&SchurVerdict> for VerdictSummary {
    fn from(v: &SchurVerdict) -> Self {
        VerdictSummary {
            is_schur: v.is_schur,
            certificate: v.certificate.label(),
        }
    }
}
