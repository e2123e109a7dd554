//! Named family instances shared by the formulas, realizations and verdicts.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::formulas::{
    eval_corollaries, eval_d2m_quotient, eval_gl, eval_hanaki_nu, eval_hanaki_p, eval_psl, eval_qd,
    eval_sz2_quotient, eval_zpzp_quotient, Corollary, FamilyResult, FormulaError,
};
use crate::group::{GroupSpec, QuotientTarget};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "family", content = "params", rename_all = "kebab-case")]
pub enum Family {
    Qd { n: u32 },
    Psl { k: u32 },
    Gl { q: u64 },
    HanakiNu { n: u32 },
    HanakiP { p: u32, n: u32 },
    Sz2Quotient { z: u64 },
    ZpzpQuotient { p: u64, z: u64 },
    D2mQuotient { m: u64, z: u64 },
    Metacyclic { m: u64, n: u64 },
    Dihedral { m: u64 },
    U6n { n: u64 },
    Dicyclic { n: u64 },
    OrderP3 { p: u64 },
    FourCentralizer { z: u64 },
    FiveCentralizer { z: u64 },
    PPlus2Centralizer { p: u64, z: u64 },
}

/// Why a family instance has no constructible group.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{family} has no direct-product realization: {reason}")]
pub struct NotRealizable {
    pub family: String,
    pub reason: String,
}

/// Structural facts a realization must satisfy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    pub spec: GroupSpec,
    pub center_size: u64,
    pub quotient: Option<QuotientTarget>,
}

pub const FAMILY_NAMES: &[&str] = &[
    "qd",
    "psl",
    "gl",
    "hanaki-nu",
    "hanaki-p",
    "sz2-quotient",
    "zpzp-quotient",
    "d2m-quotient",
    "metacyclic",
    "dihedral",
    "u6n",
    "dicyclic",
    "order-p3",
    "four-centralizer",
    "five-centralizer",
    "p-plus-2-centralizer",
];

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Qd { .. } => "qd",
            Family::Psl { .. } => "psl",
            Family::Gl { .. } => "gl",
            Family::HanakiNu { .. } => "hanaki-nu",
            Family::HanakiP { .. } => "hanaki-p",
            Family::Sz2Quotient { .. } => "sz2-quotient",
            Family::ZpzpQuotient { .. } => "zpzp-quotient",
            Family::D2mQuotient { .. } => "d2m-quotient",
            Family::Metacyclic { .. } => "metacyclic",
            Family::Dihedral { .. } => "dihedral",
            Family::U6n { .. } => "u6n",
            Family::Dicyclic { .. } => "dicyclic",
            Family::OrderP3 { .. } => "order-p3",
            Family::FourCentralizer { .. } => "four-centralizer",
            Family::FiveCentralizer { .. } => "five-centralizer",
            Family::PPlus2Centralizer { .. } => "p-plus-2-centralizer",
        }
    }

    /// Parameter names a family takes, in display order.
    pub fn param_names(name: &str) -> Option<&'static [&'static str]> {
        Some(match name {
            "qd" | "hanaki-nu" | "u6n" | "dicyclic" => &["n"],
            "psl" => &["k"],
            "gl" => &["q"],
            "hanaki-p" => &["p", "n"],
            "sz2-quotient" | "four-centralizer" | "five-centralizer" => &["z"],
            "zpzp-quotient" | "p-plus-2-centralizer" => &["p", "z"],
            "d2m-quotient" => &["m", "z"],
            "metacyclic" => &["m", "n"],
            "dihedral" => &["m"],
            "order-p3" => &["p"],
            _ => return None,
        })
    }

    /// Builds an instance from a family name and values for its parameters.
    pub fn from_params(name: &str, get: impl Fn(&str) -> Option<u64>) -> Result<Family, String> {
        let names = Self::param_names(name).ok_or_else(|| format!("unknown family {name:?}"))?;
        let mut vals = Vec::with_capacity(names.len());
        for p in names {
            vals.push(get(p).ok_or_else(|| format!("family {name} needs --{p}"))?);
        }
        let small = |v: u64| u32::try_from(v).map_err(|_| format!("parameter {v} too large"));
        Ok(match name {
            "qd" => Family::Qd { n: small(vals[0])? },
            "psl" => Family::Psl { k: small(vals[0])? },
            "gl" => Family::Gl { q: vals[0] },
            "hanaki-nu" => Family::HanakiNu { n: small(vals[0])? },
            "hanaki-p" => Family::HanakiP {
                p: small(vals[0])?,
                n: small(vals[1])?,
            },
            "sz2-quotient" => Family::Sz2Quotient { z: vals[0] },
            "zpzp-quotient" => Family::ZpzpQuotient {
                p: vals[0],
                z: vals[1],
            },
            "d2m-quotient" => Family::D2mQuotient {
                m: vals[0],
                z: vals[1],
            },
            "metacyclic" => Family::Metacyclic {
                m: vals[0],
                n: vals[1],
            },
            "dihedral" => Family::Dihedral { m: vals[0] },
            "u6n" => Family::U6n { n: vals[0] },
            "dicyclic" => Family::Dicyclic { n: vals[0] },
            "order-p3" => Family::OrderP3 { p: vals[0] },
            "four-centralizer" => Family::FourCentralizer { z: vals[0] },
            "five-centralizer" => Family::FiveCentralizer { z: vals[0] },
            "p-plus-2-centralizer" => Family::PPlus2Centralizer {
                p: vals[0],
                z: vals[1],
            },
            _ => unreachable!("names come from param_names"),
        })
    }

    pub fn params(&self) -> Vec<(&'static str, u64)> {
        match *self {
            Family::Qd { n } | Family::HanakiNu { n } => vec![("n", n as u64)],
            Family::U6n { n } | Family::Dicyclic { n } => vec![("n", n)],
            Family::Psl { k } => vec![("k", k as u64)],
            Family::Gl { q } => vec![("q", q)],
            Family::HanakiP { p, n } => vec![("p", p as u64), ("n", n as u64)],
            Family::Sz2Quotient { z }
            | Family::FourCentralizer { z }
            | Family::FiveCentralizer { z } => vec![("z", z)],
            Family::ZpzpQuotient { p, z } | Family::PPlus2Centralizer { p, z } => {
                vec![("p", p), ("z", z)]
            }
            Family::D2mQuotient { m, z } => vec![("m", m), ("z", z)],
            Family::Metacyclic { m, n } => vec![("m", m), ("n", n)],
            Family::Dihedral { m } => vec![("m", m)],
            Family::OrderP3 { p } => vec![("p", p)],
        }
    }

    pub fn formula(&self) -> Result<FamilyResult, FormulaError> {
        match *self {
            Family::Qd { n } => eval_qd(n),
            Family::Psl { k } => eval_psl(k),
            Family::Gl { q } => eval_gl(q),
            Family::HanakiNu { n } => eval_hanaki_nu(n),
            Family::HanakiP { p, n } => eval_hanaki_p(p, n),
            Family::Sz2Quotient { z } => eval_sz2_quotient(z),
            Family::ZpzpQuotient { p, z } => eval_zpzp_quotient(p, z),
            Family::D2mQuotient { m, z } => eval_d2m_quotient(m, z),
            Family::Metacyclic { m, n } => eval_corollaries(Corollary::Metacyclic { m, n }),
            Family::Dihedral { m } => eval_corollaries(Corollary::Dihedral { m }),
            Family::U6n { n } => eval_corollaries(Corollary::U6n { n }),
            Family::Dicyclic { n } => eval_corollaries(Corollary::Dicyclic { n }),
            Family::OrderP3 { p } => eval_corollaries(Corollary::OrderP3 { p }),
            Family::FourCentralizer { z } => eval_corollaries(Corollary::FourCentralizer { z }),
            Family::FiveCentralizer { z } => eval_corollaries(Corollary::FiveCentralizer { z }),
            Family::PPlus2Centralizer { p, z } => {
                eval_corollaries(Corollary::PPlus2Centralizer { p, z })
            }
        }
    }

    /// A concrete group in the family, built as G0 × Z_r where needed.
    pub fn realize(&self) -> Result<Realization, NotRealizable> {
        let fail = |reason: String| NotRealizable {
            family: self.to_string(),
            reason,
        };
        // Heisenberg group mod p (center Z_p, quotient Zp x Zp) times Z_{z/p}.
        let heisenberg = |p: u64, z: u64| -> Result<Realization, NotRealizable> {
            if p > u32::MAX as u64 || !z.is_multiple_of(p) {
                return Err(fail(format!("center size {z} is not a multiple of p={p}")));
            }
            Ok(Realization {
                spec: GroupSpec::HanakiP { p: p as u32, n: 1 }.times_cyclic(z / p),
                center_size: z,
                quotient: Some(QuotientTarget::ZpZp(p)),
            })
        };
        let plain = |spec: GroupSpec, center_size: u64, quotient| {
            Ok(Realization {
                spec,
                center_size,
                quotient,
            })
        };
        match *self {
            Family::Qd { n } => plain(GroupSpec::Quasidihedral { n }, 2, None),
            Family::Psl { k } => plain(GroupSpec::Sl2 { q: 1 << k }, 1, None),
            Family::Gl { q } => plain(GroupSpec::Gl2 { q }, q - 1, None),
            Family::HanakiNu { n } => plain(GroupSpec::HanakiNu { n }, 1 << n, None),
            Family::HanakiP { p, n } => plain(GroupSpec::HanakiP { p, n }, (p as u64).pow(n), None),
            Family::Sz2Quotient { z } => {
                plain(GroupSpec::Sz2.times_cyclic(z), z, Some(QuotientTarget::Sz2))
            }
            Family::ZpzpQuotient { p, z } | Family::PPlus2Centralizer { p, z } => heisenberg(p, z),
            Family::OrderP3 { p } => heisenberg(p, p),
            Family::FourCentralizer { z } => heisenberg(2, z),
            Family::FiveCentralizer { z } => heisenberg(3, z),
            Family::D2mQuotient { m, z } => {
                if m % 2 == 1 {
                    plain(
                        GroupSpec::Dihedral { m }.times_cyclic(z),
                        z,
                        Some(QuotientTarget::D2m(m)),
                    )
                } else if z % 2 == 0 {
                    plain(
                        GroupSpec::Dihedral { m: 2 * m }.times_cyclic(z / 2),
                        z,
                        Some(QuotientTarget::D2m(m)),
                    )
                } else {
                    Err(fail(format!(
                        "even m={m} needs an even center size, got {z}"
                    )))
                }
            }
            Family::Metacyclic { m, n } => {
                let (center, q) = if m % 2 == 1 { (n, m) } else { (2 * n, m / 2) };
                plain(
                    GroupSpec::Metacyclic { m, n },
                    center,
                    Some(QuotientTarget::D2m(q)),
                )
            }
            Family::Dihedral { m } => {
                let (center, q) = if m % 2 == 1 { (1, m) } else { (2, m / 2) };
                plain(
                    GroupSpec::Dihedral { m },
                    center,
                    Some(QuotientTarget::D2m(q)),
                )
            }
            Family::U6n { n } => plain(GroupSpec::U6n { n }, n, Some(QuotientTarget::D2m(3))),
            Family::Dicyclic { n } => {
                plain(GroupSpec::Dicyclic { n }, 2, Some(QuotientTarget::D2m(n)))
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self
            .params()
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        write!(f, "{}({})", self.name(), params.join(","))
    }
}
