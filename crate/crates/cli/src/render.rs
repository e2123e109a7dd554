//! Per-instance documents in each output format.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use cn_spectra::classify::{
    classify, compare, reference_verdict, EnergyClass, ReferenceVerdict, Verdict,
};
use cn_spectra::family::Family;
use cn_spectra::graph::{clique_decomposition, CliqueCheck, CommutingGraph};
use cn_spectra::group::{GroupSpec, GroupTable};
use cn_spectra::pipeline::{InstanceReport, PipelineError};
use cn_spectra::rational::{self, Rational};
use cn_spectra::spectral::{analyze, Analysis, CnMode, MatrixReport, Method, SpectralError};

use crate::{CliError, Format};

pub enum Source {
    Family(Family),
    Graph { path: String, text: String },
}

impl Source {
    pub fn label(&self) -> String {
        match self {
            Source::Family(f) => f.to_string(),
            Source::Graph { path, .. } => path.clone(),
        }
    }

    /// Identifies the input for caching: graphs by content, not path.
    pub fn key(&self) -> String {
        match self {
            Source::Family(f) => f.to_string(),
            Source::Graph { text, .. } => format!("graph\n{text}"),
        }
    }

    fn group(&self) -> Result<(GroupSpec, GroupTable), CliError> {
        match self {
            Source::Family(f) => {
                let spec = f.realize().map_err(PipelineError::from)?.spec;
                let table = spec.build().map_err(PipelineError::from)?;
                Ok((spec, table))
            }
            Source::Graph { .. } => Err(CliError::Usage("build needs --family".into())),
        }
    }

    fn graph(&self) -> Result<CommutingGraph, CliError> {
        match self {
            Source::Family(_) => {
                let (_, table) = self.group()?;
                Ok(CommutingGraph::from_group(&table).map_err(PipelineError::from)?)
            }
            Source::Graph { text, .. } => {
                Ok(CommutingGraph::from_json(text).map_err(PipelineError::from)?)
            }
        }
    }

    fn reference(&self) -> Result<Option<ReferenceVerdict>, CliError> {
        match self {
            Source::Family(f) => Ok(Some(reference_verdict(f).map_err(PipelineError::from)?)),
            Source::Graph { .. } => Ok(None),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Item {
    Build,
    Graph,
    Spectrum,
    Energy,
    Classify,
}

impl Item {
    pub fn name(self) -> &'static str {
        match self {
            Item::Build => "build",
            Item::Graph => "graph",
            Item::Spectrum => "spectrum",
            Item::Energy => "energy",
            Item::Classify => "classify",
        }
    }

    pub fn csv_header(self) -> &'static [&'static str] {
        match self {
            Item::Build => &[
                "source",
                "group",
                "order",
                "center_size",
                "centralizer_sizes",
                "ac",
            ],
            Item::Graph => &["source", "u", "v"],
            Item::Spectrum => &["source", "matrix", "eigenvalue", "multiplicity"],
            Item::Energy => &[
                "source",
                "vertices",
                "delta",
                "le_cn",
                "le_plus_cn",
                "baseline",
            ],
            Item::Classify => &[
                "source",
                "cnl_integral",
                "cnsl_integral",
                "cnl_verdict",
                "cnsl_verdict",
                "reference_verdict",
                "match",
            ],
        }
    }
}

pub fn csv_line<S: AsRef<str>>(fields: &[S]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(fields.iter().map(AsRef::as_ref))
        .expect("writing to memory");
    String::from_utf8(w.into_inner().expect("writing to memory")).expect("csv is utf-8")
}

fn line(v: Value) -> String {
    format!("{v}\n")
}

fn energy_text(exact: &Option<Rational>, float: Option<f64>) -> String {
    match (exact, float) {
        (Some(r), _) => rational::to_text(r),
        (None, Some(x)) => format!("{x}"),
        (None, None) => String::new(),
    }
}

fn reference_text(r: &ReferenceVerdict) -> String {
    let word = |h: bool| if h { "hyper" } else { "not-hyper" };
    format!("{}/{}", word(r.cnl_hyper), word(r.cnsl_hyper))
}

fn spectrum_text(r: &MatrixReport) -> String {
    match (&r.exact, &r.numeric) {
        (Some(s), _) => s.to_text(),
        (None, Some(n)) => format!("{:?}", n.values),
        (None, None) => String::new(),
    }
}

/// Renders one instance for a non-verifying command.
pub fn item(
    kind: Item,
    src: &Source,
    method: Method,
    mode: CnMode,
    format: Format,
) -> Result<String, CliError> {
    let label = src.label();
    match kind {
        Item::Build => {
            let (spec, g) = src.group()?;
            let sizes: Vec<usize> = g.distinct_centralizers().iter().map(|c| c.len()).collect();
            let orders: BTreeMap<String, usize> = g
                .order_histogram()
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect();
            let center = g.center().len();
            let ac = g.is_ac();
            Ok(match format {
                Format::Json => line(json!({
                    "source": label,
                    "group": spec.to_string(),
                    "spec": spec,
                    "order": g.order(),
                    "center_size": center,
                    "centralizer_sizes": sizes,
                    "ac": ac,
                    "element_orders": orders,
                })),
                Format::Csv => csv_line(&[
                    label,
                    spec.to_string(),
                    g.order().to_string(),
                    center.to_string(),
                    format!("{sizes:?}"),
                    ac.to_string(),
                ]),
                Format::Text => format!(
                    "{label}: {spec}, order {}, center {center}, centralizers {sizes:?}, AC {ac}\n",
                    g.order()
                ),
                Format::Dot => unreachable!("rejected before rendering"),
            })
        }
        Item::Graph => {
            let g = src.graph()?;
            Ok(match format {
                Format::Json => format!("{}\n", g.to_json()),
                Format::Dot => g.to_dot(),
                Format::Csv => g
                    .edges()
                    .iter()
                    .map(|(u, v)| csv_line(&[label.clone(), u.to_string(), v.to_string()]))
                    .collect(),
                Format::Text => {
                    let shape = match clique_decomposition(&g) {
                        CliqueCheck::CliqueUnion(d) => format!("clique union {:?}", d.parts),
                        CliqueCheck::NotCliqueUnion { .. } => "not a clique union".into(),
                    };
                    format!(
                        "{label}: {} vertices, {} edges, {shape}\n",
                        g.vertex_count(),
                        g.edge_count()
                    )
                }
            })
        }
        Item::Spectrum | Item::Energy | Item::Classify => {
            let g = src.graph()?;
            // `both` degrades to the numeric route on general graphs.
            let a = match analyze(&g, method, mode) {
                Err(SpectralError::NotCliqueUnion) if method == Method::Both => {
                    analyze(&g, Method::Numeric, mode)
                }
                other => other,
            }
            .map_err(PipelineError::from)?;
            match kind {
                Item::Spectrum => Ok(spectrum(&label, &a, method, mode, format)),
                Item::Energy => Ok(energy(&label, &a, format)),
                _ => classified(src, &label, &a, format),
            }
        }
    }
}

fn spectrum(label: &str, a: &Analysis, method: Method, mode: CnMode, format: Format) -> String {
    match format {
        Format::Json => line(json!({
            "source": label,
            "method": method,
            "cn_mode": mode,
            "decomposition": a.decomposition.as_ref().map(|d| d.parts.clone()),
            "cnl": a.cnl.to_json(),
            "cnsl": a.cnsl.to_json(),
        })),
        Format::Csv => {
            let mut out = String::new();
            for r in [&a.cnl, &a.cnsl] {
                let kind = r.kind.to_string();
                match (&r.exact, &r.numeric) {
                    (Some(s), _) => {
                        for (v, m) in &s.pairs {
                            out +=
                                &csv_line(&[label, &kind, &rational::to_text(v), &m.to_string()]);
                        }
                    }
                    (None, Some(n)) => {
                        for v in &n.values {
                            out += &csv_line(&[label, &kind, &v.to_string(), "1"]);
                        }
                    }
                    (None, None) => {}
                }
            }
            out
        }
        _ => format!(
            "{label}\n  CNL  {}\n  CNSL {}\n",
            spectrum_text(&a.cnl),
            spectrum_text(&a.cnsl)
        ),
    }
}

fn energy(label: &str, a: &Analysis, format: Format) -> String {
    let e = &a.energy;
    let le = energy_text(&e.le_cn, e.le_cn_float);
    let le_plus = energy_text(&e.le_plus_cn, e.le_plus_cn_float);
    match format {
        Format::Json => {
            let mut v = e.to_json();
            v["source"] = json!(label);
            line(v)
        }
        Format::Csv => csv_line(&[
            label.to_string(),
            e.vertex_count.to_string(),
            rational::to_text(&e.delta),
            le,
            le_plus,
            rational::to_text(&e.baseline),
        ]),
        _ => format!(
            "{label}: |V| = {}, LE = {le}, LE+ = {le_plus}, baseline {}\n",
            e.vertex_count,
            rational::to_text(&e.baseline)
        ),
    }
}

fn classified(src: &Source, label: &str, a: &Analysis, format: Format) -> Result<String, CliError> {
    let mut verdict: Verdict = classify(&a.energy);
    let mut matches = None;
    if let (Source::Family(f), Some(r)) = (src, src.reference()?) {
        matches = Some(
            compare(f, &verdict, &r)
                .iter()
                .all(|m| m.explained_by.is_some()),
        );
        verdict = verdict.with_reference(r);
    }
    let reference = verdict
        .reference
        .as_ref()
        .map(reference_text)
        .unwrap_or_default();
    let matches_text = matches.map(|m| m.to_string()).unwrap_or_default();
    Ok(match format {
        Format::Json => {
            let mut v = verdict.to_json();
            v["source"] = json!(label);
            v["match"] = json!(matches);
            line(v)
        }
        Format::Csv => csv_line(&[
            label.to_string(),
            verdict.cnl_integral.to_string(),
            verdict.cnsl_integral.to_string(),
            verdict.cnl.class.to_string(),
            verdict.cnsl.class.to_string(),
            reference,
            matches_text,
        ]),
        _ => format!(
            "{label}: CNL {} {}, CNSL {} {}{}\n",
            if verdict.cnl_integral {
                "integral"
            } else {
                "non-integral"
            },
            verdict.cnl.class,
            if verdict.cnsl_integral {
                "integral"
            } else {
                "non-integral"
            },
            verdict.cnsl.class,
            if reference.is_empty() {
                String::new()
            } else {
                format!(", reference {reference}, match {matches_text}")
            }
        ),
    })
}

pub const VERIFY_HEADER: &[&str] = &[
    "family",
    "params",
    "vertices",
    "le_cn",
    "le_plus_cn",
    "baseline",
    "cnl_verdict",
    "cnsl_verdict",
    "reference_verdict",
    "match",
];

/// Every rendering of one verified instance, cached as a unit.
pub fn verify_record(rep: &InstanceReport) -> Value {
    let e = &rep.analysis.energy;
    let le = energy_text(&e.le_cn, e.le_cn_float);
    let le_plus = energy_text(&e.le_plus_cn, e.le_plus_cn_float);
    let params: Vec<String> = rep
        .family
        .params()
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect();
    let reference = rep.reference().map(reference_text).unwrap_or_default();
    let class = |c: EnergyClass| c.to_string();
    let explained: Vec<&str> = rep
        .mismatches
        .iter()
        .filter_map(|m| m.explained_by)
        .collect();
    let status = if rep.ok() { "ok" } else { "MISMATCH" };
    let note = if explained.is_empty() {
        String::new()
    } else {
        format!(" (known errata: {})", explained.join(", "))
    };
    json!({
        "ok": rep.ok(),
        // Kept as text so cached floats are never re-parsed.
        "json": rep.to_json().to_string(),
        "csv": [
            rep.family.name(),
            params.join(";"),
            e.vertex_count.to_string(),
            le,
            le_plus,
            rational::to_text(&e.baseline),
            class(rep.verdict.cnl.class),
            class(rep.verdict.cnsl.class),
            reference,
            rep.ok().to_string(),
        ],
        "text": format!(
            "{:<32} {:<14} |V| {:<4} LE {:<16} LE+ {:<16} {}{}",
            rep.family.to_string(),
            rep.group,
            e.vertex_count,
            le,
            le_plus,
            status,
            note
        ),
        "unexplained": rep.unexplained().map(|m| m.to_json()).collect::<Vec<_>>(),
    })
}

pub fn verify_row(record: &Value, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", record["json"].as_str().unwrap_or_default()),
        Format::Csv => {
            let fields: Vec<&str> = record["csv"]
                .as_array()
                .map(|a| a.iter().filter_map(Value::as_str).collect())
                .unwrap_or_default();
            csv_line(&fields)
        }
        _ => format!("{}\n", record["text"].as_str().unwrap_or_default()),
    }
}
