//! Dense symmetric/Hermitian eigensolver.
//!
//! Cyclic Jacobi with accumulated rotations; small spectra with well
//! separated eigenvalues are the target, so nearby eigenvalues are merged
//! into one projection per group. Hermitian matrices go through the real
//! 2m x 2m embedding [[Re, -Im], [Im, Re]], which carries each complex
//! eigenpair to a doubled real one and each spectral projection to its own
//! embedded image.

use crate::error::{Error, Result};
use ndarray::Array2;
use num_complex::Complex64;

/// Default relative target for the off-diagonal Frobenius norm.
pub const DEFAULT_TOL: f64 = 1e-13;

/// Hard bound on Jacobi sweeps before giving up.
pub const MAX_SWEEPS: usize = 50;

fn default_group_tol(norm: f64) -> f64 {
    1e-8 * norm.max(1.0)
}

/// One grouped eigenvalue with its orthogonal projection.
#[derive(Debug, Clone)]
pub struct EigenPair<S> {
    pub value: f64,
    pub multiplicity: usize,
    pub projection: Array2<S>,
}

/// A full spectral resolution: distinct eigenvalues ascending, projections
/// summing to the identity.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition<S> {
    dim: usize,
    grouping_tolerance: f64,
    pairs: Vec<EigenPair<S>>,
}

impl<S> SpectralDecomposition<S> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn grouping_tolerance(&self) -> f64 {
        self.grouping_tolerance
    }

    pub fn pairs(&self) -> &[EigenPair<S>] {
        &self.pairs
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.pairs.iter().map(|p| p.value).collect()
    }

    pub fn total_multiplicity(&self) -> usize {
        self.pairs.iter().map(|p| p.multiplicity).sum()
    }

    /// Largest eigenvalue (the pairs are sorted ascending).
    pub fn largest(&self) -> &EigenPair<S> {
        self.pairs.last().expect("decomposition is never empty")
    }
}

impl SpectralDecomposition<f64> {
    /// Sum of value * projection; reconstructs the input matrix.
    pub fn reconstruct(&self) -> Array2<f64> {
        let mut m = Array2::zeros((self.dim, self.dim));
        for p in &self.pairs {
            m.scaled_add(p.value, &p.projection);
        }
        m
    }

    /// Sum of all projections; the identity for a complete decomposition.
    pub fn projection_sum(&self) -> Array2<f64> {
        let mut m = Array2::zeros((self.dim, self.dim));
        for p in &self.pairs {
            m += &p.projection;
        }
        m
    }
}

impl SpectralDecomposition<Complex64> {
    pub fn reconstruct(&self) -> Array2<Complex64> {
        let mut m = Array2::zeros((self.dim, self.dim));
        for p in &self.pairs {
            m.scaled_add(Complex64::new(p.value, 0.0), &p.projection);
        }
        m
    }

    pub fn projection_sum(&self) -> Array2<Complex64> {
        let mut m = Array2::zeros((self.dim, self.dim));
        for p in &self.pairs {
            m += &p.projection;
        }
        m
    }
}

fn frobenius(m: &Array2<f64>) -> f64 {
    m.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn off_diagonal_norm(m: &Array2<f64>) -> f64 {
    let n = m.nrows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += m[[i, j]] * m[[i, j]];
            }
        }
    }
    acc.sqrt()
}

/// Raw cyclic Jacobi: returns (eigenvalues, orthogonal V with eigenvectors
/// as columns), unsorted.
fn jacobi(m: &Array2<f64>, tol: f64) -> Result<(Vec<f64>, Array2<f64>)> {
    let n = m.nrows();
    let mut a = m.clone();
    let mut v = Array2::eye(n);
    let scale = frobenius(m);
    if scale == 0.0 || n == 1 {
        return Ok(((0..n).map(|i| a[[i, i]]).collect(), v));
    }
    let target = tol * scale;
    for _sweep in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= target {
            return Ok(((0..n).map(|i| a[[i, i]]).collect(), v));
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[[p, q]];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[[q, q]] - a[[p, p]]) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    1.0 / (theta - (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let app = a[[p, p]];
                let aqq = a[[q, q]];
                a[[p, p]] = app - t * apq;
                a[[q, q]] = aqq + t * apq;
                a[[p, q]] = 0.0;
                a[[q, p]] = 0.0;
                for i in 0..n {
                    if i != p && i != q {
                        let aip = a[[i, p]];
                        let aiq = a[[i, q]];
                        a[[i, p]] = c * aip - s * aiq;
                        a[[p, i]] = a[[i, p]];
                        a[[i, q]] = s * aip + c * aiq;
                        a[[q, i]] = a[[i, q]];
                    }
                }
                for i in 0..n {
                    let vip = v[[i, p]];
                    let viq = v[[i, q]];
                    v[[i, p]] = c * vip - s * viq;
                    v[[i, q]] = s * vip + c * viq;
                }
            }
        }
    }
    let off = off_diagonal_norm(&a);
    if off <= target {
        return Ok(((0..n).map(|i| a[[i, i]]).collect(), v));
    }
    Err(Error::NoConvergence {
        sweeps: MAX_SWEEPS,
        off,
    })
}

/// Groups sorted eigenvalue indices whose gaps are at most `group_tol`.
fn group_indices(values: &[f64], group_tol: f64) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]).then(i.cmp(&j)));
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for idx in order {
        match groups.last_mut() {
            Some(g) if values[idx] - values[*g.last().unwrap()] <= group_tol => g.push(idx),
            _ => groups.push(vec![idx]),
        }
    }
    groups
}

/// Spectral decomposition of a real symmetric matrix with explicit grouping
/// tolerance.
pub fn sym_eig_grouped(
    m: &Array2<f64>,
    tol: f64,
    group_tol: f64,
) -> Result<SpectralDecomposition<f64>> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: m.ncols(),
        });
    }
    if n == 0 {
        return Err(Error::InvalidParameter("empty matrix".into()));
    }
    let scale = m.iter().fold(0.0f64, |acc, x| acc.max(x.abs())).max(1.0);
    for i in 0..n {
        for j in i + 1..n {
            if (m[[i, j]] - m[[j, i]]).abs() > 1e-12 * scale {
                return Err(Error::NotSymmetric { row: i, col: j });
            }
        }
    }
    let (values, vectors) = jacobi(m, tol)?;
    let mut pairs = Vec::new();
    for group in group_indices(&values, group_tol) {
        let value = group.iter().map(|&i| values[i]).sum::<f64>() / group.len() as f64;
        let mut projection = Array2::zeros((n, n));
        for &col in &group {
            for r in 0..n {
                for c in 0..n {
                    projection[[r, c]] += vectors[[r, col]] * vectors[[c, col]];
                }
            }
        }
        pairs.push(EigenPair {
            value,
            multiplicity: group.len(),
            projection,
        });
    }
    Ok(SpectralDecomposition {
        dim: n,
        grouping_tolerance: group_tol,
        pairs,
    })
}

/// Spectral decomposition of a real symmetric matrix with the default
/// grouping tolerance 1e-8 * max(1, ||M||).
pub fn sym_eig(m: &Array2<f64>, tol: f64) -> Result<SpectralDecomposition<f64>> {
    sym_eig_grouped(m, tol, default_group_tol(frobenius(m)))
}

/// Spectral decomposition of a complex Hermitian matrix via the real
/// embedding.
pub fn herm_eig(m: &Array2<Complex64>, tol: f64) -> Result<SpectralDecomposition<Complex64>> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: m.ncols(),
        });
    }
    if n == 0 {
        return Err(Error::InvalidParameter("empty matrix".into()));
    }
    let scale = m.iter().fold(0.0f64, |acc, x| acc.max(x.norm())).max(1.0);
    for i in 0..n {
        for j in i..n {
            if (m[[i, j]] - m[[j, i]].conj()).norm() > 1e-12 * scale {
                return Err(Error::NotHermitian { row: i, col: j });
            }
        }
    }
    let mut embedded = Array2::zeros((2 * n, 2 * n));
    for i in 0..n {
        for j in 0..n {
            let z = m[[i, j]];
            embedded[[i, j]] = z.re;
            embedded[[i + n, j + n]] = z.re;
            embedded[[i, j + n]] = -z.im;
            embedded[[i + n, j]] = z.im;
        }
    }
    let real = sym_eig(&embedded, tol)?;
    let mut pairs = Vec::new();
    for p in real.pairs {
        if p.multiplicity % 2 != 0 {
            return Err(Error::GroupingFailure {
                a: p.value,
                b: p.value,
            });
        }
        let mut projection = Array2::zeros((n, n));
        for i in 0..n {
            for j in 0..n {
                projection[[i, j]] =
                    Complex64::new(p.projection[[i, j]], p.projection[[i + n, j]]);
            }
        }
        pairs.push(EigenPair {
            value: p.value,
            multiplicity: p.multiplicity / 2,
            projection,
        });
    }
    Ok(SpectralDecomposition {
        dim: n,
        grouping_tolerance: real.grouping_tolerance,
        pairs,
    })
}

/// Lagrange interpolation route to the r-th projection:
/// prod over s != r of (M - mu_s I) / (mu_r - mu_s).
///
/// An independent cross-check on the accumulated-rotation projections;
/// refuses when two distinct grouped eigenvalues sit closer than the
/// grouping tolerance, since the product would blow up.
pub fn projection_via_polynomial(
    m: &Array2<f64>,
    decomp: &SpectralDecomposition<f64>,
    r: usize,
) -> Result<Array2<f64>> {
    let n = decomp.dim();
    if m.nrows() != n || m.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: m.nrows(),
        });
    }
    let mu = decomp.eigenvalues();
    if r >= mu.len() {
        return Err(Error::InvalidParameter(format!(
            "eigenvalue index {r} out of range ({} distinct)",
            mu.len()
        )));
    }
    let too_close = decomp
        .grouping_tolerance()
        .max(default_group_tol(frobenius(m)));
    for (s, &v) in mu.iter().enumerate() {
        if s != r && (mu[r] - v).abs() <= too_close {
            return Err(Error::GroupingFailure { a: mu[r], b: v });
        }
    }
    let mut result = Array2::eye(n);
    for (s, &v) in mu.iter().enumerate() {
        if s == r {
            continue;
        }
        let mut shifted = m.clone();
        for i in 0..n {
            shifted[[i, i]] -= v;
        }
        result = result.dot(&shifted) / (mu[r] - v);
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, petersen};
    use ndarray::arr2;

    fn assert_close(a: &Array2<f64>, b: &Array2<f64>, tol: f64) {
        for (x, y) in a.iter().zip(b.iter()) {
            assert!((x - y).abs() < tol, "{x} vs {y}");
        }
    }

    #[test]
    fn two_by_two_swap_matrix() {
        let m = arr2(&[[0.0, 1.0], [1.0, 0.0]]);
        let d = sym_eig(&m, DEFAULT_TOL).unwrap();
        assert_eq!(d.eigenvalues().len(), 2);
        assert!((d.pairs()[0].value + 1.0).abs() < 1e-12);
        assert!((d.pairs()[1].value - 1.0).abs() < 1e-12);
        let plus = arr2(&[[0.5, 0.5], [0.5, 0.5]]);
        let minus = arr2(&[[0.5, -0.5], [-0.5, 0.5]]);
        assert_close(&d.pairs()[1].projection, &plus, 1e-12);
        assert_close(&d.pairs()[0].projection, &minus, 1e-12);
    }

    #[test]
    fn petersen_spectrum() {
        let a = petersen().unwrap().adjacency_matrix();
        let d = sym_eig(&a, DEFAULT_TOL).unwrap();
        let values = d.eigenvalues();
        let mults: Vec<usize> = d.pairs().iter().map(|p| p.multiplicity).collect();
        assert_eq!(values.len(), 3);
        assert!((values[0] + 2.0).abs() < 1e-10);
        assert!((values[1] - 1.0).abs() < 1e-10);
        assert!((values[2] - 3.0).abs() < 1e-10);
        assert_eq!(mults, vec![4, 5, 1]);
    }

    #[test]
    fn decomposition_invariants() {
        for m in [
            petersen().unwrap().adjacency_matrix(),
            complete(7).unwrap().adjacency_matrix(),
        ] {
            let d = sym_eig(&m, DEFAULT_TOL).unwrap();
            assert_eq!(d.total_multiplicity(), d.dim());
            assert_close(&d.reconstruct(), &m, 1e-9);
            assert_close(&d.projection_sum(), &Array2::eye(d.dim()), 1e-9);
            for (i, p) in d.pairs().iter().enumerate() {
                let sq = p.projection.dot(&p.projection);
                assert_close(&sq, &p.projection, 1e-9);
                let tr: f64 = (0..d.dim()).map(|t| p.projection[[t, t]]).sum();
                assert!((tr - p.multiplicity as f64).abs() < 1e-9);
                for (j, q) in d.pairs().iter().enumerate() {
                    if i != j {
                        let prod = p.projection.dot(&q.projection);
                        assert!(prod.iter().all(|x| x.abs() < 1e-9));
                    }
                }
            }
        }
    }

    #[test]
    fn interpolation_route_agrees() {
        let m = petersen().unwrap().adjacency_matrix();
        let d = sym_eig(&m, DEFAULT_TOL).unwrap();
        for r in 0..d.pairs().len() {
            let via_poly = projection_via_polynomial(&m, &d, r).unwrap();
            assert_close(&via_poly, &d.pairs()[r].projection, 1e-8);
        }
    }

    #[test]
    fn asymmetric_matrix_is_rejected() {
        let m = arr2(&[[0.0, 1.0], [0.5, 0.0]]);
        assert!(matches!(
            sym_eig(&m, DEFAULT_TOL),
            Err(Error::NotSymmetric { row: 0, col: 1 })
        ));
    }

    #[test]
    fn nearby_eigenvalues_are_grouped() {
        let m = arr2(&[
            [1.0, 0.0, 0.0],
            [0.0, 1.0 + 1e-12, 0.0],
            [0.0, 0.0, 5.0],
        ]);
        let d = sym_eig(&m, DEFAULT_TOL).unwrap();
        assert_eq!(d.pairs().len(), 2);
        assert_eq!(d.pairs()[0].multiplicity, 2);
    }

    #[test]
    fn hermitian_pauli_y() {
        let i = Complex64::i();
        let m = arr2(&[
            [Complex64::new(0.0, 0.0), i],
            [-i, Complex64::new(0.0, 0.0)],
        ]);
        let d = herm_eig(&m, DEFAULT_TOL).unwrap();
        assert_eq!(d.eigenvalues().len(), 2);
        assert!((d.pairs()[0].value + 1.0).abs() < 1e-12);
        assert!((d.pairs()[1].value - 1.0).abs() < 1e-12);
        for p in d.pairs() {
            assert_eq!(p.multiplicity, 1);
            // Idempotent and Hermitian.
            let sq = p.projection.dot(&p.projection);
            for (x, y) in sq.iter().zip(p.projection.iter()) {
                assert!((x - y).norm() < 1e-12);
            }
            for r in 0..2 {
                for c in 0..2 {
                    assert!((p.projection[[r, c]] - p.projection[[c, r]].conj()).norm() < 1e-12);
                }
            }
        }
        // Reconstruction.
        let back = d.reconstruct();
        for (x, y) in back.iter().zip(m.iter()) {
            assert!((x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn hermitian_handles_real_symmetric_input() {
        let a = petersen().unwrap().adjacency_matrix();
        let m = a.mapv(|x| Complex64::new(x, 0.0));
        let d = herm_eig(&m, DEFAULT_TOL).unwrap();
        let values = d.eigenvalues();
        let mults: Vec<usize> = d.pairs().iter().map(|p| p.multiplicity).collect();
        assert!((values[0] + 2.0).abs() < 1e-10);
        assert_eq!(mults, vec![4, 5, 1]);
        let sum = d.projection_sum();
        for (i, z) in sum.iter().enumerate() {
            let want = if i % (d.dim() + 1) == 0 { 1.0 } else { 0.0 };
            assert!((z - want).norm() < 1e-9);
        }
    }

    #[test]
    fn non_hermitian_matrix_is_rejected() {
        let m = arr2(&[
            [Complex64::new(0.0, 1.0), Complex64::new(0.0, 0.0)],
            [Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)],
        ]);
        assert!(matches!(
            herm_eig(&m, DEFAULT_TOL),
            Err(Error::NotHermitian { row: 0, col: 0 })
        ));
    }

    #[test]
    fn interpolation_refuses_merged_values() {
        let m = arr2(&[[1.0, 0.0], [0.0, 1.0 + 1e-10]]);
        // Force a decomposition whose grouping kept the two values apart
        // even though they are within the default grouping width.
        let d = sym_eig_grouped(&m, DEFAULT_TOL, 1e-12).unwrap();
        assert_eq!(d.pairs().len(), 2);
        assert!(matches!(
            projection_via_polynomial(&m, &d, 0),
            Err(Error::GroupingFailure { .. })
        ));
    }
}
