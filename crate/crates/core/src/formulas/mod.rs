//! Closed-form spectra and energies for the group families.
//!
//! Every evaluator encodes the printed eigenvalue/multiplicity expressions,
//! recomputes both energies from that spectrum, and compares them with the
//! printed energy expressions. The printed spectrum is also compared with
//! the spectrum of the clique decomposition the family is known to have.
//! Mismatches are returned as [`FormulaDiscrepancy`] values, never hidden.

mod corollaries;
mod families;

pub use corollaries::{eval_corollaries, Corollary};
pub use families::{
    eval_ac_general, eval_ac_product, eval_d2m_quotient, eval_gl, eval_hanaki_nu, eval_hanaki_p,
    eval_psl, eval_qd, eval_sz2_quotient, eval_zpzp_quotient,
};

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::graph::CliqueDecomposition;
use crate::rational::{self, Rational};
use crate::spectral::{exact_spectrum_clique_union, ExactSpectrum};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FormulaError {
    #[error("parameters out of domain: {0}")]
    OutOfDomain(String),
    #[error("invalid centralizer sizes: {0}")]
    InvalidSizes(String),
}

/// The closed forms as printed, before any reconciliation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrintedForms {
    pub cnl: ExactSpectrum,
    pub cnsl: ExactSpectrum,
    pub le_cn: Rational,
    pub le_plus_cn: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaDiscrepancy {
    pub quantity: &'static str,
    pub printed: String,
    pub recomputed: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyResult {
    pub source: &'static str,
    pub branch: String,
    pub params: BTreeMap<&'static str, u64>,
    pub decomposition: CliqueDecomposition,
    pub vertex_count: u64,
    pub delta: Rational,
    pub cnl_spectrum: ExactSpectrum,
    pub cnsl_spectrum: ExactSpectrum,
    /// Recomputed from `cnl_spectrum`.
    pub le_cn: Rational,
    /// Recomputed from `cnsl_spectrum`.
    pub le_plus_cn: Rational,
    pub printed: Option<PrintedForms>,
    pub discrepancies: Vec<FormulaDiscrepancy>,
}

impl FamilyResult {
    /// Builds a result from printed forms and the known clique decomposition.
    pub(crate) fn from_printed(
        source: &'static str,
        branch: String,
        params: &[(&'static str, u64)],
        decomposition: CliqueDecomposition,
        printed: PrintedForms,
    ) -> Self {
        let mut r = Self::with_spectra(
            source,
            branch,
            params,
            decomposition,
            printed.cnl.clone(),
            printed.cnsl.clone(),
        );
        let (cnl, cnsl) = exact_spectrum_clique_union(&r.decomposition);
        r.check("cnl_spectrum", &printed.cnl, &cnl);
        r.check("cnsl_spectrum", &printed.cnsl, &cnsl);
        let (le, le_plus) = (r.le_cn.clone(), r.le_plus_cn.clone());
        r.check("le_cn", &printed.le_cn, &le);
        r.check("le_plus_cn", &printed.le_plus_cn, &le_plus);
        r.printed = Some(printed);
        r
    }

    pub(crate) fn with_spectra(
        source: &'static str,
        branch: String,
        params: &[(&'static str, u64)],
        decomposition: CliqueDecomposition,
        cnl: ExactSpectrum,
        cnsl: ExactSpectrum,
    ) -> Self {
        let vertex_count = cnl.total_multiplicity();
        let delta = if vertex_count == 0 {
            Rational::default()
        } else {
            // CN has a zero diagonal, so tr(CNRS) = tr(CNL).
            cnl.trace() / rational::int(vertex_count as i128)
        };
        FamilyResult {
            source,
            branch,
            params: params.iter().copied().collect(),
            decomposition,
            vertex_count,
            le_cn: cnl.energy(&delta),
            le_plus_cn: cnsl.energy(&delta),
            delta,
            cnl_spectrum: cnl,
            cnsl_spectrum: cnsl,
            printed: None,
            discrepancies: Vec::new(),
        }
    }

    pub(crate) fn check<T: PartialEq + Render>(
        &mut self,
        quantity: &'static str,
        printed: &T,
        recomputed: &T,
    ) {
        if printed != recomputed {
            self.discrepancies.push(FormulaDiscrepancy {
                quantity,
                printed: printed.render(),
                recomputed: recomputed.render(),
            });
        }
    }

    pub fn discrepancy_quantities(&self) -> Vec<&'static str> {
        self.discrepancies.iter().map(|d| d.quantity).collect()
    }

    pub fn to_json(&self) -> Value {
        let side = |name: &str, s: &ExactSpectrum, e: &Rational| {
            json!({
                "matrix": name,
                "exact": s.to_json(),
                "energy": {"exact": rational::to_json(e)},
                "delta": rational::to_json(&self.delta),
            })
        };
        json!({
            "source": self.source,
            "branch": self.branch,
            "params": self.params,
            "decomposition": self.decomposition.parts,
            "vertex_count": self.vertex_count,
            "delta": rational::to_json(&self.delta),
            "cnl": side("CNL", &self.cnl_spectrum, &self.le_cn),
            "cnsl": side("CNSL", &self.cnsl_spectrum, &self.le_plus_cn),
            "printed": self.printed.as_ref().map(|p| json!({
                "cnl": p.cnl.to_json(),
                "cnsl": p.cnsl.to_json(),
                "le_cn": rational::to_json(&p.le_cn),
                "le_plus_cn": rational::to_json(&p.le_plus_cn),
            })),
            "discrepancies": self.discrepancies.iter().map(|d| json!({
                "quantity": d.quantity,
                "printed": d.printed,
                "recomputed": d.recomputed,
            })).collect::<Vec<_>>(),
        })
    }
}

pub(crate) trait Render {
    fn render(&self) -> String;
}

impl Render for Rational {
    fn render(&self) -> String {
        rational::to_text(self)
    }
}

impl Render for ExactSpectrum {
    fn render(&self) -> String {
        self.to_text()
    }
}

/// Spectrum from (eigenvalue, multiplicity) expressions. A negative
/// multiplicity can only come from a printed form evaluated outside its
/// range; it is dropped and shows up as a spectrum mismatch.
pub(crate) fn spectrum(pairs: &[(i128, i128)]) -> ExactSpectrum {
    ExactSpectrum::from_integers(
        pairs
            .iter()
            .filter(|p| p.1 > 0)
            .map(|&(v, m)| (v, m as u64)),
    )
}

pub(crate) fn fr(num: i128, den: i128) -> Rational {
    rational::ratio(num, den)
}

pub(crate) fn parts(items: &[(i128, i128)]) -> CliqueDecomposition {
    CliqueDecomposition::from_parts(
        items
            .iter()
            .filter(|p| p.0 > 0 && p.1 > 0)
            .map(|&(m, l)| (m as u64, l as u64)),
    )
}
