//! Intersection-array analytics: tridiagonal quotient matrices, their
//! orthogonal polynomials, spectral lower bounds, and family sweeps toward
//! the 1/4 limit of the average search probability.

mod bounds;
mod poly;
mod sweep;
mod tridiag;

pub use bounds::{
    array_bounds, dual_polynomial_at_degree, expand_cellwise, graph_bounds,
    laplacian_minor_solution, largest_eigenvalue_lower_bound, minor_quotient_perron,
    perron_weight_lower_bound, s1_lower_bound, solve_dense, srg_reference_weight_sum,
    weight_square_sum, BoundCheck, PerronWeightBound, PERRON_AGREEMENT_TOL, SOLVE_AGREEMENT_TOL,
};
pub use poly::{eigvec_from_polys, orthopoly, PolySeq};
pub use sweep::{
    complete_graph_average, family_sweep, limit_criterion, SweepFamily, SweepPoint, SweepRow,
    SweepTable,
};
pub use tridiag::{quotient_b, quotient_s, quotient_shat, Tridiagonal};
