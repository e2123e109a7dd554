//! Finite groups as Cayley tables.

mod build;
mod spec;
mod table;

pub use build::{build_family, build_presented, MAX_GROUP_ORDER};
pub use spec::{GroupSpec, QuotientTarget};
pub use table::{
    CayleyDump, GroupTable, Subset, EXHAUSTIVE_ASSOCIATIVITY_LIMIT, SAMPLED_ASSOCIATIVITY_TRIPLES,
};

use crate::field::FieldError;

#[derive(Debug, thiserror::Error)]
pub enum GroupError {
    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),
    #[error("inconsistent presentation (m={m}, s={s}, t={t}, k={k}): {reason}")]
    InvalidPresentation {
        m: u64,
        s: u64,
        t: u64,
        k: u64,
        reason: &'static str,
    },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("group order {order} exceeds the bound {max}")]
    TooLarge { order: u128, max: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Checks G/Z(G) against a target through (order, abelian, order histogram).
///
/// This is an invariant comparison, not an isomorphism test.
pub fn quotient_matches(g: &GroupTable, target: QuotientTarget) -> Result<bool, GroupError> {
    let q = g.central_quotient();
    let t = target.build()?;
    Ok(q.order() == t.order()
        && q.is_abelian() == t.is_abelian()
        && q.order_histogram() == t.order_histogram())
}
