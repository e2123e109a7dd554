//! End-to-end verification of a family instance.
//!
//! Each instance is built as a concrete group, its commuting graph is
//! analysed structurally and numerically, the closed forms are evaluated,
//! and the verdict is compared with the reference tables. Every
//! disagreement becomes a [`Mismatch`]; known errata are marked as such.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::classify::{
    classify, compare, known_errata, reference_verdict, ClassifyError, ReferenceVerdict, Verdict,
};
use crate::family::{Family, NotRealizable};
use crate::formulas::{FamilyResult, FormulaError};
use crate::graph::{CliqueDecomposition, CommutingGraph, GraphError};
use crate::group::{quotient_matches, GroupError};
use crate::rational::{self, Rational};
use crate::spectral::{analyze, Analysis, CnMode, ExactSpectrum, Method, SpectralError};

/// Per-eigenvalue tolerance between the numeric and exact spectra.
pub const NUMERIC_SPECTRUM_TOLERANCE: f64 = 1e-8;

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error(transparent)]
    NotRealizable(#[from] NotRealizable),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error("worker pool: {0}")]
    Pool(String),
}

impl PipelineError {
    /// Resource bounds, as opposed to bad input or failed checks.
    pub fn is_resource_bound(&self) -> bool {
        matches!(
            self,
            PipelineError::Group(GroupError::TooLarge { .. })
                | PipelineError::Spectral(SpectralError::NoConvergence { .. })
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub tolerance: f64,
    pub mode: CnMode,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            tolerance: NUMERIC_SPECTRUM_TOLERANCE,
            mode: CnMode::AllPairs,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mismatch {
    /// structure, numeric, formula, printed or verdict.
    pub route: &'static str,
    pub quantity: String,
    pub expected: String,
    pub found: String,
    pub explained_by: Option<&'static str>,
}

impl Mismatch {
    pub fn to_json(&self) -> Value {
        json!({
            "route": self.route,
            "quantity": self.quantity,
            "expected": self.expected,
            "found": self.found,
            "explained_by": self.explained_by,
        })
    }
}

#[derive(Debug, Clone)]
pub struct InstanceReport {
    pub family: Family,
    pub group: String,
    pub group_order: usize,
    pub center_size: usize,
    pub analysis: Analysis,
    pub formula: FamilyResult,
    pub verdict: Verdict,
    pub max_numeric_deviation: f64,
    pub mismatches: Vec<Mismatch>,
}

impl InstanceReport {
    pub fn decomposition(&self) -> Option<&CliqueDecomposition> {
        self.analysis.decomposition.as_ref()
    }

    pub fn reference(&self) -> Option<&ReferenceVerdict> {
        self.verdict.reference.as_ref()
    }

    pub fn unexplained(&self) -> impl Iterator<Item = &Mismatch> {
        self.mismatches.iter().filter(|m| m.explained_by.is_none())
    }

    pub fn ok(&self) -> bool {
        self.unexplained().next().is_none()
    }

    pub fn to_json(&self) -> Value {
        let params: BTreeMap<_, _> = self.family.params().into_iter().collect();
        json!({
            "family": self.family.name(),
            "params": params,
            "group": self.group,
            "group_order": self.group_order,
            "center_size": self.center_size,
            "decomposition": self.decomposition().map(|d| d.parts.clone()),
            "cnl": self.analysis.cnl.to_json(),
            "cnsl": self.analysis.cnsl.to_json(),
            "energy": self.analysis.energy.to_json(),
            "formula": {"source": self.formula.source, "branch": self.formula.branch},
            "verdict": self.verdict.to_json(),
            "max_numeric_deviation": self.max_numeric_deviation,
            "mismatches": self.mismatches.iter().map(Mismatch::to_json).collect::<Vec<_>>(),
            "ok": self.ok(),
        })
    }
}

fn max_deviation(numeric: &[f64], exact: &ExactSpectrum) -> f64 {
    let mut want = exact.expanded_f64();
    want.sort_by(f64::total_cmp);
    if want.len() != numeric.len() {
        return f64::INFINITY;
    }
    numeric
        .iter()
        .zip(&want)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
}

/// Runs every route for one instance.
pub fn verify_instance(
    family: &Family,
    opts: &VerifyOptions,
) -> Result<InstanceReport, PipelineError> {
    let realization = family.realize()?;
    let formula = family.formula()?;
    let reference = reference_verdict(family)?;
    let table = realization.spec.build()?;
    let errata = known_errata(family);
    let explain = |q: &str| errata.iter().find(|e| e.quantity == q).map(|e| e.id);

    let mut mismatches = Vec::new();
    let mut check = |route: &'static str, quantity: &str, expected: String, found: String| {
        if expected != found {
            mismatches.push(Mismatch {
                route,
                quantity: quantity.to_string(),
                expected,
                found,
                explained_by: explain(quantity),
            });
        }
    };

    let center_size = table.center().len();
    check(
        "structure",
        "center_size",
        realization.center_size.to_string(),
        center_size.to_string(),
    );
    if let Some(target) = realization.quotient {
        check(
            "structure",
            "central_quotient",
            "true".into(),
            quotient_matches(&table, target)?.to_string(),
        );
    }
    check(
        "structure",
        "ac_group",
        "true".into(),
        table.is_ac().to_string(),
    );

    let graph = CommutingGraph::from_group(&table)?;
    let analysis = analyze(&graph, Method::Both, opts.mode)?;
    let (cnl, cnsl) = match (&analysis.cnl.exact, &analysis.cnsl.exact) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(SpectralError::NotCliqueUnion.into()),
    };

    // Numeric route against the structural spectra.
    let mut max_dev: f64 = 0.0;
    for (name, report, exact) in [("cnl", &analysis.cnl, cnl), ("cnsl", &analysis.cnsl, cnsl)] {
        let values = &report.numeric.as_ref().expect("numeric route ran").values;
        let dev = max_deviation(values, exact);
        max_dev = max_dev.max(dev);
        if !(dev <= opts.tolerance) {
            check(
                "numeric",
                &format!("{name}_eigenvalues"),
                format!("within {:e}", opts.tolerance),
                format!("{dev:e}"),
            );
        }
        check(
            "numeric",
            &format!("{name}_integral"),
            "true".into(),
            report.integral.unwrap_or(false).to_string(),
        );
    }

    // Formula route against the structural spectra.
    let r = &formula;
    let e = &analysis.energy;
    let text = |x: &Rational| rational::to_text(x);
    let opt_text = |x: &Option<Rational>| x.as_ref().map(text).unwrap_or_default();
    check(
        "formula",
        "vertex_count",
        e.vertex_count.to_string(),
        r.vertex_count.to_string(),
    );
    check("formula", "delta", text(&e.delta), text(&r.delta));
    check(
        "formula",
        "cnl_spectrum",
        cnl.to_text(),
        r.cnl_spectrum.to_text(),
    );
    check(
        "formula",
        "cnsl_spectrum",
        cnsl.to_text(),
        r.cnsl_spectrum.to_text(),
    );
    check("formula", "le_cn", opt_text(&e.le_cn), text(&r.le_cn));
    check(
        "formula",
        "le_plus_cn",
        opt_text(&e.le_plus_cn),
        text(&r.le_plus_cn),
    );
    if let Some(d) = analysis.decomposition.as_ref() {
        check(
            "formula",
            "decomposition",
            format!("{:?}", d.parts),
            format!("{:?}", r.decomposition.parts),
        );
    }
    // Printed forms that differ from the recomputed ones.
    for d in &r.discrepancies {
        check(
            "printed",
            d.quantity,
            d.recomputed.clone(),
            d.printed.clone(),
        );
    }

    let verdict = classify(&analysis.energy).with_reference(reference.clone());
    for v in compare(family, &verdict, &reference) {
        check("verdict", v.field, v.reference, v.ours);
    }

    Ok(InstanceReport {
        family: *family,
        group: realization.spec.to_string(),
        group_order: table.order(),
        center_size,
        analysis,
        formula,
        verdict,
        max_numeric_deviation: max_dev,
        mismatches,
    })
}

/// Verifies many instances on a pool of `jobs` workers (0 = all cores).
/// Results come back sorted by family and parameters.
pub fn sweep(
    families: &[Family],
    jobs: usize,
    opts: &VerifyOptions,
) -> Result<Vec<(Family, Result<InstanceReport, PipelineError>)>, PipelineError> {
    let mut fams = families.to_vec();
    fams.sort();
    fams.dedup();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| PipelineError::Pool(e.to_string()))?;
    Ok(pool.install(|| {
        fams.par_iter()
            .map(|f| (*f, verify_instance(f, opts)))
            .collect()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qd16_agrees_on_all_routes() {
        let r = verify_instance(&Family::Qd { n: 4 }, &VerifyOptions::default()).unwrap();
        assert!(r.mismatches.is_empty(), "{:?}", r.mismatches);
        assert_eq!(r.group_order, 16);
        assert_eq!(r.center_size, 2);
        assert!(r.max_numeric_deviation < 1e-8);
    }

    #[test]
    fn u6n_printed_erratum_is_explained() {
        let r = verify_instance(&Family::U6n { n: 2 }, &VerifyOptions::default()).unwrap();
        assert!(r.ok());
        assert_eq!(r.mismatches.len(), 1);
        assert_eq!(r.mismatches[0].route, "printed");
        assert_eq!(r.mismatches[0].explained_by, Some("u6n-cnsl-factor"));
    }

    #[test]
    fn unrealizable_instances_error() {
        let e = verify_instance(
            &Family::D2mQuotient { m: 4, z: 3 },
            &VerifyOptions::default(),
        );
        assert!(matches!(e, Err(PipelineError::NotRealizable(_))));
    }

    #[test]
    fn sweep_is_sorted_and_deduplicated() {
        let fams = [
            Family::Dihedral { m: 5 },
            Family::Qd { n: 4 },
            Family::Dihedral { m: 4 },
            Family::Qd { n: 4 },
        ];
        let out = sweep(&fams, 2, &VerifyOptions::default()).unwrap();
        let order: Vec<Family> = out.iter().map(|(f, _)| *f).collect();
        assert_eq!(
            order,
            vec![
                Family::Qd { n: 4 },
                Family::Dihedral { m: 4 },
                Family::Dihedral { m: 5 }
            ]
        );
        assert!(out.iter().all(|(_, r)| r.as_ref().unwrap().ok()));
    }
}
