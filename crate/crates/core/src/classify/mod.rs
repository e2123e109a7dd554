//! Integral / hyperenergetic / borderenergetic verdicts.
//!
//! [`classify`] works from an [`EnergyReport`] alone. [`reference_verdict`]
//! encodes the published classification tables, and [`compare`] turns
//! disagreements into [`VerdictMismatch`] records.

mod errata;
mod reference;

pub use errata::{known_errata, KnownErratum};
pub use reference::{reference_verdict, ReferenceVerdict};

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::family::Family;
use crate::rational::{self, Rational};
use crate::spectral::{EnergyReport, NUMERIC_COMPARE_TOLERANCE};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("parameters out of domain: {0}")]
    OutOfDomain(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EnergyClass {
    Hyper,
    Border,
    Below,
}

impl EnergyClass {
    pub fn is_hyper(self) -> bool {
        self == EnergyClass::Hyper
    }

    fn from_ordering(o: Ordering) -> Self {
        match o {
            Ordering::Greater => EnergyClass::Hyper,
            Ordering::Equal => EnergyClass::Border,
            Ordering::Less => EnergyClass::Below,
        }
    }
}

impl fmt::Display for EnergyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EnergyClass::Hyper => "hyper",
            EnergyClass::Border => "border",
            EnergyClass::Below => "below",
        })
    }
}

/// One energy compared against the complete-graph baseline.
#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub class: EnergyClass,
    /// energy − baseline, when an exact energy is known.
    pub difference: Option<Rational>,
    pub float_difference: Option<f64>,
    /// Set when the class came from a float within tolerance of the baseline.
    pub borderline: bool,
}

impl Comparison {
    fn new(exact: Option<&Rational>, float: Option<f64>, baseline: &Rational) -> Self {
        if let Some(e) = exact {
            let d = e - baseline;
            return Comparison {
                class: EnergyClass::from_ordering(e.cmp(baseline)),
                float_difference: Some(rational::to_f64(&d)),
                difference: Some(d),
                borderline: false,
            };
        }
        let b = rational::to_f64(baseline);
        let d = float.unwrap_or(f64::NAN) - b;
        let near = d.abs() <= NUMERIC_COMPARE_TOLERANCE * (1.0 + b.abs());
        let class = if near {
            EnergyClass::Border
        } else if d > 0.0 {
            EnergyClass::Hyper
        } else {
            EnergyClass::Below
        };
        Comparison {
            class,
            difference: None,
            float_difference: Some(d),
            borderline: near,
        }
    }

    fn to_json(&self) -> Value {
        json!({
            "class": self.class,
            "difference": self.difference.as_ref().map(rational::to_json),
            "float_difference": self.float_difference,
            "borderline": self.borderline,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub cnl_integral: bool,
    pub cnsl_integral: bool,
    pub cnl: Comparison,
    pub cnsl: Comparison,
    pub reference: Option<ReferenceVerdict>,
}

impl Verdict {
    pub fn with_reference(mut self, r: ReferenceVerdict) -> Self {
        self.reference = Some(r);
        self
    }

    pub fn to_json(&self) -> Value {
        json!({
            "cnl_integral": self.cnl_integral,
            "cnsl_integral": self.cnsl_integral,
            "cnl_energy_vs_baseline": self.cnl.to_json(),
            "cnsl_energy_vs_baseline": self.cnsl.to_json(),
            "reference": self.reference.as_ref().map(ReferenceVerdict::to_json),
        })
    }
}

/// Three-way comparison of both energies against 2(n−1)(n−2).
pub fn classify(report: &EnergyReport) -> Verdict {
    Verdict {
        cnl_integral: report.flags.cnl_integral,
        cnsl_integral: report.flags.cnsl_integral,
        cnl: Comparison::new(report.le_cn.as_ref(), report.le_cn_float, &report.baseline),
        cnsl: Comparison::new(
            report.le_plus_cn.as_ref(),
            report.le_plus_cn_float,
            &report.baseline,
        ),
        reference: None,
    }
}

/// A computed verdict that disagrees with the reference table.
#[derive(Debug, Clone, PartialEq)]
pub struct VerdictMismatch {
    pub family: Family,
    pub field: &'static str,
    pub ours: String,
    pub reference: String,
    pub difference: Option<Rational>,
    /// Identifier of the known erratum covering this mismatch, if any.
    pub explained_by: Option<&'static str>,
}

impl VerdictMismatch {
    pub fn to_json(&self) -> Value {
        json!({
            "family": self.family.name(),
            "params": self.family.params().into_iter().collect::<std::collections::BTreeMap<_, _>>(),
            "field": self.field,
            "ours": self.ours,
            "reference": self.reference,
            "difference": self.difference.as_ref().map(rational::to_json),
            "explained_by": self.explained_by,
        })
    }
}

/// Compares a computed verdict with the reference for `family`.
pub fn compare(
    family: &Family,
    verdict: &Verdict,
    reference: &ReferenceVerdict,
) -> Vec<VerdictMismatch> {
    let errata = known_errata(family);
    let explain = |field: &str| errata.iter().find(|e| e.quantity == field).map(|e| e.id);
    let mut out = Vec::new();
    let mut push = |field: &'static str, ours: String, theirs: String, diff: Option<&Rational>| {
        if ours != theirs {
            out.push(VerdictMismatch {
                family: *family,
                field,
                ours,
                reference: theirs,
                difference: diff.cloned(),
                explained_by: explain(field),
            });
        }
    };
    push(
        "cnl_integral",
        verdict.cnl_integral.to_string(),
        reference.integral.to_string(),
        None,
    );
    push(
        "cnsl_integral",
        verdict.cnsl_integral.to_string(),
        reference.integral.to_string(),
        None,
    );
    push(
        "cnl_hyper",
        verdict.cnl.class.is_hyper().to_string(),
        reference.cnl_hyper.to_string(),
        verdict.cnl.difference.as_ref(),
    );
    push(
        "cnsl_hyper",
        verdict.cnsl.class.is_hyper().to_string(),
        reference.cnsl_hyper.to_string(),
        verdict.cnsl.difference.as_ref(),
    );
    out
}

/// JSON-lines rendering of mismatch records.
pub fn to_json_lines(records: &[VerdictMismatch]) -> String {
    records
        .iter()
        .map(|r| r.to_json().to_string() + "\n")
        .collect()
}
