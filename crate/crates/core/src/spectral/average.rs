//! The long-run average probability of finding the marked vertex.
//!
//! Two routes:
//!
//! * [`closed_form_average`]: a finite sum over the spectrum of the
//!   vertex-deleted graph. Writing w(lambda) for the row sum of the
//!   eigenprojection at a neighbour of the marked vertex,
//!
//!     s1 = (1/n) sum_lambda k^3 / ((k - lambda)(k + lambda)^2) w(lambda)^2
//!     s2 = (1/n) (1 - sum_lambda k/(k + lambda) w(lambda))^2
//!
//!   and the average equals s1 + s2.
//!
//! * [`spectral_time_average`]: the arcwise Cesaro limit assembled from the
//!   walk projections, usable as an independent cross-check against direct
//!   simulation.

use super::augmented::{augmented_matrix, SpanBasis, BOUNDARY_BAND};
use super::eig::sym_eig;
use crate::error::{Error, Result};
use crate::graph::{check_equitable, distance_partition, Graph};
use crate::walk::ArcSpace;
use num_complex::Complex64;

/// How an [`AvgSearchReport`] was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    Simulated { steps: usize },
}

/// One distinct eigenvalue's contribution to the closed form.
#[derive(Debug, Clone, Copy)]
pub struct SpectralRow {
    /// Eigenvalue of the vertex-deleted graph.
    pub lambda: f64,
    pub multiplicity: usize,
    /// Row sum of the eigenprojection at a neighbour of the marked vertex.
    pub weight: f64,
    /// This eigenvalue's share of s1.
    pub s1_term: f64,
}

/// Closed-form average search probability, with per-eigenvalue breakdown.
#[derive(Debug, Clone)]
pub struct AvgSearchReport {
    pub graph: String,
    pub n: usize,
    pub k: usize,
    pub marked: usize,
    /// The neighbour used to evaluate the weights (they agree across all
    /// neighbours; this is the smallest one).
    pub witness_neighbour: usize,
    pub rows: Vec<SpectralRow>,
    pub s1: f64,
    pub s2: f64,
    pub method: Method,
}

impl AvgSearchReport {
    pub fn total(&self) -> f64 {
        self.s1 + self.s2
    }
}

/// Spread tolerance for the neighbour-independence assertion.
const WEIGHT_SPREAD_TOL: f64 = 1e-9;

/// Evaluates the closed form at marked vertex `a`.
///
/// Requires a connected regular graph of degree k >= 2 that is 2-connected
/// and whose distance partition at `a` is equitable; refuses otherwise with
/// a witness. The projection weights are computed at every neighbour of `a`
/// and must agree to within 1e-9.
pub fn closed_form_average(g: &Graph, a: usize, tol: f64) -> Result<AvgSearchReport> {
    if a >= g.n() {
        return Err(Error::InvalidParameter(format!(
            "marked vertex {a} out of range for n = {}",
            g.n()
        )));
    }
    let k = g.regular_degree()?;
    if k < 2 {
        return Err(Error::DegreeTooSmall { k });
    }
    let partition = distance_partition(g, a)?;
    check_equitable(g, &partition)?;
    if !g.is_two_connected() {
        let cut = g.articulation_vertex().unwrap_or(0);
        return Err(Error::NotTwoConnected { cut });
    }

    let n = g.n() as f64;
    let kf = k as f64;
    let (del, map) = g.vertex_deleted(a);
    let decomp = sym_eig(&del.adjacency_matrix(), tol)?;

    // Row sums of each projection at every neighbour of a, checked for
    // neighbour independence.
    let neighbours = g.neighbours(a);
    let mut weights = Vec::with_capacity(decomp.pairs().len());
    for pair in decomp.pairs() {
        if pair.value.abs() >= kf * (1.0 - BOUNDARY_BAND) {
            return Err(Error::EigenvalueOutsideDisc {
                lambda: pair.value,
                k: kf,
            });
        }
        let per_neighbour: Vec<f64> = neighbours
            .iter()
            .map(|&v| {
                let row = map.to_new(v).expect("neighbour survives deletion");
                pair.projection.row(row).sum()
            })
            .collect();
        let lo = per_neighbour.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = per_neighbour
            .iter()
            .cloned()
            .fold(f64::NEG_INFINITY, f64::max);
        if hi - lo > WEIGHT_SPREAD_TOL {
            return Err(Error::NeighbourWeightSpread { spread: hi - lo });
        }
        weights.push(per_neighbour[0]);
    }

    let mut rows = Vec::with_capacity(weights.len());
    let mut s1 = 0.0;
    let mut s2_sum = 0.0;
    for (pair, &w) in decomp.pairs().iter().zip(&weights) {
        let lambda = pair.value;
        let s1_term = kf.powi(3) / ((kf - lambda) * (kf + lambda).powi(2)) * w * w / n;
        s1 += s1_term;
        s2_sum += kf / (kf + lambda) * w;
        rows.push(SpectralRow {
            lambda,
            multiplicity: pair.multiplicity,
            weight: w,
            s1_term,
        });
    }
    let s2 = (1.0 - s2_sum).powi(2) / n;

    Ok(AvgSearchReport {
        graph: g.name().to_string(),
        n: g.n(),
        k,
        marked: a,
        witness_neighbour: neighbours[0],
        rows,
        s1,
        s2,
        method: Method::ClosedForm,
    })
}

/// Arcwise Cesaro-limit distribution assembled from the walk projections:
/// sum over eigenphases of |F x0|^2, with the theta = pi component recovered
/// by completeness. Requires 2-connectivity (which kills the phase-0
/// component of the uniform state).
pub fn spectral_time_average(g: &Graph, a: usize, tol: f64) -> Result<Vec<f64>> {
    let aug = augmented_matrix(g, a)?;
    if !g.is_two_connected() {
        let cut = g.articulation_vertex().unwrap_or(0);
        return Err(Error::NotTwoConnected { cut });
    }
    let arcs = ArcSpace::new(g)?;
    let basis = SpanBasis::new(g, a)?;
    let k = aug.degree() as f64;
    let nk = arcs.len();
    let x0 = 1.0 / (nk as f64).sqrt();

    let decomp = aug.decompose(tol)?;
    let indicator = aug.deleted_block_indicator();

    // Accumulate sum_theta |F_theta x0|^2 over interior phases (each counted
    // with its conjugate), and the real part sum for the completeness step.
    let mut dist = vec![0.0; nk];
    let mut real_sum = vec![0.0; nk];
    for pair in decomp.pairs() {
        if pair.value.abs() >= k * (1.0 - BOUNDARY_BAND) {
            continue;
        }
        let theta = (pair.value / k).acos();
        let phase = Complex64::from_polar(1.0, theta);
        // F x0 = x0 * (1 - e^{-i theta}) / (2 sin^2 theta) * (N - e^{i theta} R N) E~ e,
        // where e is the deleted-block indicator.
        let projected = {
            let mut out = vec![Complex64::new(0.0, 0.0); aug.dim()];
            for (r, slot) in out.iter_mut().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for c in 0..aug.dim() {
                    acc += pair.projection[[r, c]] * indicator[c];
                }
                *slot = acc;
            }
            out
        };
        let lifted = basis.apply(&projected);
        let coeff = (Complex64::new(1.0, 0.0) - phase.conj())
            / Complex64::new(2.0 * theta.sin().powi(2), 0.0)
            * x0;
        for i in 0..nk {
            let f_x0 = coeff * (lifted[i] - phase * lifted[arcs.reverse(i)]);
            // The conjugate phase contributes the conjugate vector: same
            // modulus, doubled mass, doubled real part.
            dist[i] += 2.0 * f_x0.norm_sqr();
            real_sum[i] += 2.0 * f_x0.re;
        }
    }
    // Completeness: the theta = pi component is x0 minus everything else.
    for i in 0..nk {
        let residual = x0 - real_sum[i];
        dist[i] += residual * residual;
    }
    Ok(dist)
}

/// Marked-vertex mass of [`spectral_time_average`].
pub fn spectral_average_search_probability(g: &Graph, a: usize, tol: f64) -> Result<f64> {
    let k = g.regular_degree()?;
    let dist = spectral_time_average(g, a, tol)?;
    Ok(dist[a * k..(a + 1) * k].iter().sum())
}
