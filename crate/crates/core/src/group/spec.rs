use std::fmt;

use serde::{Deserialize, Serialize};

use super::{build_family, build_presented, GroupError, GroupTable};

/// A named group family with its parameters.
///
/// Serialized as `{"family": "...", "params": {...}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", content = "params", rename_all = "kebab-case")]
pub enum GroupSpec {
    Presented {
        m: u64,
        s: u64,
        t: u64,
        k: u64,
    },
    Dihedral {
        m: u64,
    },
    Quasidihedral {
        n: u32,
    },
    Dicyclic {
        n: u64,
    },
    Metacyclic {
        m: u64,
        n: u64,
    },
    U6n {
        n: u64,
    },
    Sz2,
    Gl2 {
        q: u64,
    },
    Sl2 {
        q: u64,
    },
    HanakiNu {
        n: u32,
    },
    HanakiP {
        p: u32,
        n: u32,
    },
    DirectProduct {
        inner: Box<GroupSpec>,
        abelian: Vec<u64>,
    },
}

impl GroupSpec {
    pub fn build(&self) -> Result<GroupTable, GroupError> {
        build_family(self)
    }

    /// `self × Z_z`, or `self` when `z == 1`.
    pub fn times_cyclic(self, z: u64) -> GroupSpec {
        if z == 1 {
            self
        } else {
            GroupSpec::DirectProduct {
                inner: Box::new(self),
                abelian: vec![z],
            }
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Presented { m, s, t, k } => write!(f, "presented({m},{s},{t},{k})"),
            GroupSpec::Dihedral { m } => write!(f, "D{}", 2 * m),
            GroupSpec::Quasidihedral { n } => write!(f, "QD{}", 1u64 << n),
            GroupSpec::Dicyclic { n } => write!(f, "Q{}", 4 * n),
            GroupSpec::Metacyclic { m, n } => write!(f, "M({m},{n})"),
            GroupSpec::U6n { n } => write!(f, "U{}", 6 * n),
            GroupSpec::Sz2 => write!(f, "Sz(2)"),
            GroupSpec::Gl2 { q } => write!(f, "GL(2,{q})"),
            GroupSpec::Sl2 { q } => write!(f, "SL(2,{q})"),
            GroupSpec::HanakiNu { n } => write!(f, "A({n},nu)"),
            GroupSpec::HanakiP { p, n } => write!(f, "A({n},{p})"),
            GroupSpec::DirectProduct { inner, abelian } => {
                write!(f, "{inner}")?;
                for r in abelian {
                    write!(f, "xZ{r}")?;
                }
                Ok(())
            }
        }
    }
}

/// Central quotients the classification theorems are stated for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuotientTarget {
    Sz2,
    ZpZp(u64),
    /// Dihedral of order 2m; m = 2 is the Klein four-group.
    D2m(u64),
}

impl QuotientTarget {
    pub fn build(self) -> Result<GroupTable, GroupError> {
        match self {
            QuotientTarget::Sz2 => build_family(&GroupSpec::Sz2),
            QuotientTarget::ZpZp(p) => build_presented(p, p, 0, 1),
            QuotientTarget::D2m(m) => build_presented(m, 2, 0, m - 1),
        }
    }
}
