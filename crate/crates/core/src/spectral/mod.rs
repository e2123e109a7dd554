//! CN matrices, their Laplacian spectra and energies.

mod exact;
mod jacobi;
mod matrix;
mod report;

pub use exact::{
    bareiss, certify_integral, complete_graph_energy, delta_clique_union, delta_of_cnrs,
    determinant, exact_spectrum_clique_union, nullity_shifted, numeric_energy, ExactSpectrum,
    IntegralityCertificate, CLUSTER_TOLERANCE,
};
pub use jacobi::{
    jacobi_eigenvalues, numeric_spectrum, NumericSpectrum, MAX_SWEEPS, RELATIVE_TOLERANCE,
};
pub use matrix::{cn_matrix, cnrs_cnl_cnsl, CnMatrices, CnMode, IntMatrix};
pub use report::{
    analyze, Analysis, EnergyFlags, EnergyReport, MatrixKind, MatrixReport, Method,
    NUMERIC_COMPARE_TOLERANCE,
};

#[derive(Debug, thiserror::Error)]
pub enum SpectralError {
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("Jacobi iteration did not converge after {sweeps} sweeps (residual {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },
    #[error("eigenvalue {value} is not near an integer although trace and Frobenius norm match the rounded spectrum")]
    AmbiguousCluster { value: f64 },
    #[error("spectrum has {spectrum} values for a {matrix}x{matrix} matrix")]
    SizeMismatch { matrix: usize, spectrum: usize },
    #[error("the exact method needs a disjoint union of complete graphs")]
    NotCliqueUnion,
    #[error("graph has no vertices")]
    EmptyGraph,
}
