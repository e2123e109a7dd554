use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{
    certify_integral, cn_matrix, cnrs_cnl_cnsl, complete_graph_energy, delta_clique_union,
    delta_of_cnrs, exact_spectrum_clique_union, numeric_energy, numeric_spectrum, CnMode,
    ExactSpectrum, NumericSpectrum, SpectralError,
};
use crate::graph::{clique_decomposition, CliqueCheck, CliqueDecomposition, CommutingGraph};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exact,
    Numeric,
    Both,
}

impl Method {
    pub fn exact(self) -> bool {
        matches!(self, Method::Exact | Method::Both)
    }

    pub fn numeric(self) -> bool {
        matches!(self, Method::Numeric | Method::Both)
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "exact" => Ok(Method::Exact),
            "numeric" => Ok(Method::Numeric),
            "both" => Ok(Method::Both),
            other => Err(format!("unknown method {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MatrixKind {
    #[serde(rename = "CNL")]
    Cnl,
    #[serde(rename = "CNSL")]
    Cnsl,
}

impl fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatrixKind::Cnl => "CNL",
            MatrixKind::Cnsl => "CNSL",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatrixReport {
    pub kind: MatrixKind,
    pub exact: Option<ExactSpectrum>,
    pub numeric: Option<NumericSpectrum>,
    pub energy_exact: Option<Rational>,
    pub energy_float: Option<f64>,
    pub delta: Rational,
    /// Exact integrality when known: from the exact spectrum, or proven by
    /// certification of the numeric one.
    pub integral: Option<bool>,
}

impl MatrixReport {
    pub fn to_json(&self) -> Value {
        json!({
            "matrix": self.kind,
            "exact": self.exact.as_ref().map(ExactSpectrum::to_json),
            "numeric": self.numeric.as_ref().map(|s| s.values.clone()),
            "energy": {
                "exact": self.energy_exact.as_ref().map(rational::to_json),
                "float": self.energy_float,
            },
            "delta": rational::to_json(&self.delta),
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnergyFlags {
    pub cnl_integral: bool,
    pub cnsl_integral: bool,
    pub cnl_hyper: bool,
    pub cnsl_hyper: bool,
    pub cnl_border: bool,
    pub cnsl_border: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnergyReport {
    pub vertex_count: u64,
    pub delta: Rational,
    pub le_cn: Option<Rational>,
    pub le_plus_cn: Option<Rational>,
    pub le_cn_float: Option<f64>,
    pub le_plus_cn_float: Option<f64>,
    pub baseline: Rational,
    pub flags: EnergyFlags,
}

/// Tolerance for energy-vs-baseline comparisons on the numeric path.
pub const NUMERIC_COMPARE_TOLERANCE: f64 = 1e-9;

fn compare(exact: Option<&Rational>, float: Option<f64>, baseline: &Rational) -> Ordering {
    if let Some(e) = exact {
        return e.cmp(baseline);
    }
    let d = float.unwrap_or(f64::NAN) - rational::to_f64(baseline);
    let scale = 1.0 + rational::to_f64(baseline).abs();
    if d.abs() <= NUMERIC_COMPARE_TOLERANCE * scale {
        Ordering::Equal
    } else if d > 0.0 {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

impl EnergyReport {
    fn build(cnl: &MatrixReport, cnsl: &MatrixReport, vertex_count: u64) -> Self {
        let baseline = complete_graph_energy(vertex_count);
        let cnl_cmp = compare(cnl.energy_exact.as_ref(), cnl.energy_float, &baseline);
        let cnsl_cmp = compare(cnsl.energy_exact.as_ref(), cnsl.energy_float, &baseline);
        EnergyReport {
            vertex_count,
            delta: cnl.delta.clone(),
            le_cn: cnl.energy_exact.clone(),
            le_plus_cn: cnsl.energy_exact.clone(),
            le_cn_float: cnl.energy_float,
            le_plus_cn_float: cnsl.energy_float,
            flags: EnergyFlags {
                cnl_integral: cnl.integral.unwrap_or(false),
                cnsl_integral: cnsl.integral.unwrap_or(false),
                cnl_hyper: cnl_cmp == Ordering::Greater,
                cnsl_hyper: cnsl_cmp == Ordering::Greater,
                cnl_border: cnl_cmp == Ordering::Equal,
                cnsl_border: cnsl_cmp == Ordering::Equal,
            },
            baseline,
        }
    }

    pub fn to_json(&self) -> Value {
        let opt = |r: &Option<Rational>| r.as_ref().map(rational::to_json);
        json!({
            "vertex_count": self.vertex_count,
            "delta": rational::to_json(&self.delta),
            "le_cn": opt(&self.le_cn),
            "le_plus_cn": opt(&self.le_plus_cn),
            "le_cn_float": self.le_cn_float,
            "le_plus_cn_float": self.le_plus_cn_float,
            "baseline": rational::to_json(&self.baseline),
            "flags": self.flags,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Analysis {
    pub decomposition: Option<CliqueDecomposition>,
    pub cnl: MatrixReport,
    pub cnsl: MatrixReport,
    pub energy: EnergyReport,
}

/// Spectra and energies of a graph by the requested route(s).
///
/// The exact route uses the clique-union structure and fails with
/// [`SpectralError::NotCliqueUnion`] on other graphs. The numeric route
/// builds the matrices, runs Jacobi and certifies integrality exactly.
pub fn analyze(
    g: &CommutingGraph,
    method: Method,
    mode: CnMode,
) -> Result<Analysis, SpectralError> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(SpectralError::EmptyGraph);
    }
    let decomposition = match clique_decomposition(g) {
        CliqueCheck::CliqueUnion(d) => Some(d),
        CliqueCheck::NotCliqueUnion { .. } => None,
    };
    let mut reports = [MatrixKind::Cnl, MatrixKind::Cnsl].map(|kind| MatrixReport {
        kind,
        exact: None,
        numeric: None,
        energy_exact: None,
        energy_float: None,
        delta: Rational::default(),
        integral: None,
    });
    if method.exact() {
        let d = decomposition
            .as_ref()
            .ok_or(SpectralError::NotCliqueUnion)?;
        let delta = delta_clique_union(d);
        let (cnl, cnsl) = exact_spectrum_clique_union(d);
        for (r, s) in reports.iter_mut().zip([cnl, cnsl]) {
            r.energy_exact = Some(s.energy(&delta));
            r.integral = Some(s.is_integral());
            r.exact = Some(s);
            r.delta = delta.clone();
        }
    }
    if method.numeric() {
        let mats = cnrs_cnl_cnsl(&cn_matrix(g, mode));
        let delta = delta_of_cnrs(&mats.cnrs);
        let delta_f = rational::to_f64(&delta);
        for (r, m) in reports.iter_mut().zip([&mats.cnl, &mats.cnsl]) {
            let spec = numeric_spectrum(m)?;
            let cert = certify_integral(m, &spec)?;
            r.energy_float = Some(numeric_energy(&spec.values, delta_f));
            r.integral = Some(cert.integral && r.integral.unwrap_or(true));
            r.numeric = Some(spec);
            if !method.exact() && cert.integral {
                // Certified: the integer witness is the exact spectrum.
                let s = cert.spectrum();
                r.energy_exact = Some(s.energy(&delta));
                r.exact = Some(s);
            }
            r.delta = delta.clone();
        }
    }
    let [cnl, cnsl] = reports;
    let energy = EnergyReport::build(&cnl, &cnsl, n as u64);
    Ok(Analysis {
        decomposition,
        cnl,
        cnsl,
        energy,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_and_numeric_agree_on_qd16_shape() {
        let g = CommutingGraph::clique_union(&[(2, 4), (6, 1)]);
        let a = analyze(&g, Method::Both, CnMode::AllPairs).unwrap();
        assert_eq!(a.energy.le_cn, Some(rational::ratio(1080, 7)));
        assert_eq!(a.energy.le_plus_cn, Some(rational::ratio(960, 7)));
        assert!((a.energy.le_cn_float.unwrap() - 1080.0 / 7.0).abs() < 1e-8);
        assert!(a.energy.flags.cnl_integral && a.energy.flags.cnsl_integral);
        assert!(!a.energy.flags.cnl_hyper);
        let j = a.cnl.to_json();
        assert_eq!(j["matrix"], "CNL");
        assert_eq!(j["delta"], json!([60, 7]));
        assert_eq!(j["exact"], json!([[0, 1, 9], [24, 1, 5]]));
    }

    #[test]
    fn exact_method_rejects_path() {
        let g = CommutingGraph::from_json(r#"{"n":3,"edges":[[0,1],[1,2]]}"#).unwrap();
        assert!(matches!(
            analyze(&g, Method::Exact, CnMode::AllPairs),
            Err(SpectralError::NotCliqueUnion)
        ));
        let a = analyze(&g, Method::Numeric, CnMode::AllPairs).unwrap();
        assert!(a.energy.le_cn_float.is_some());
    }

    #[test]
    fn numeric_only_recovers_exact_energy_when_certified() {
        let g = CommutingGraph::clique_union(&[(3, 5), (4, 1)]);
        let a = analyze(&g, Method::Numeric, CnMode::AllPairs).unwrap();
        assert_eq!(a.energy.le_cn, Some(rational::ratio(648, 19)));
    }
}
