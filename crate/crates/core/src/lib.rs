//! Commuting graphs of finite groups and the spectra of their
//! common-neighbourhood Laplacian (CNL) and signless Laplacian (CNSL).

pub mod classify;
pub mod family;
pub mod field;
pub mod formulas;
pub mod graph;
pub mod group;
pub mod pipeline;
pub mod rational;
pub mod spectral;
