//! Spectral resolution of the walk step.

mod augmented;
mod average;
mod eig;

pub use augmented::{
    augmented_matrix, walk_eigenphases, walk_eigenprojection, AugmentedMatrix, BoundaryValue,
    Eigenphase, EigenphaseMap, SpanBasis, BOUNDARY_BAND,
};
pub use average::{
    closed_form_average, spectral_average_search_probability, spectral_time_average,
    AvgSearchReport, Method, SpectralRow,
};
pub use eig::{
    herm_eig, projection_via_polynomial, sym_eig, sym_eig_grouped, EigenPair,
    SpectralDecomposition, DEFAULT_TOL, MAX_SWEEPS,
};
