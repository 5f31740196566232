//! The Hermitian matrix that resolves the walk spectrum.
//!
//! Delete the marked vertex a and adjoin k-1 "clone" coordinates carrying
//! the nontrivial characters of Z_k across a's neighbours:
//!
//!   A~ = [ 0   K* ]
//!        [ K   A(X\a) ]
//!
//! where K[j][m] = exp(2 pi i j (m+1) / k) for the j-th neighbour of a and
//! clone m. Eigenvalues of A~ in the open interval (-k, k) are exactly
//! k*cos(theta) over the non-real eigenphases e^{i theta} of the walk step,
//! and each eigenprojection lifts to the corresponding walk projection.

use super::eig::{herm_eig, EigenPair, SpectralDecomposition};
use crate::error::{Error, Result};
use crate::graph::{DeletionMap, Graph};
use crate::walk::ArcSpace;
use ndarray::Array2;
use num_complex::Complex64;

/// Relative width of the boundary band around |lambda| = k: eigenvalues
/// with |lambda| >= k (1 - BOUNDARY_BAND) are classified as boundary.
pub const BOUNDARY_BAND: f64 = 1e-10;

/// The augmented Hermitian matrix together with its coordinate layout.
#[derive(Debug, Clone)]
pub struct AugmentedMatrix {
    matrix: Array2<Complex64>,
    k: usize,
    marked: usize,
    map: DeletionMap,
}

impl AugmentedMatrix {
    pub fn matrix(&self) -> &Array2<Complex64> {
        &self.matrix
    }

    /// Dimension n + k - 2: clones first, then deleted-graph vertices.
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn clones(&self) -> usize {
        self.k - 1
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn marked(&self) -> usize {
        self.marked
    }

    pub fn map(&self) -> &DeletionMap {
        &self.map
    }

    /// Coordinate of the deleted-graph vertex with original label `u`.
    pub fn vertex_coordinate(&self, u: usize) -> Option<usize> {
        self.map.to_new(u).map(|w| self.clones() + w)
    }

    /// The indicator of the deleted-graph block: (0,...,0, 1,...,1).
    pub fn deleted_block_indicator(&self) -> Vec<Complex64> {
        let mut e = vec![Complex64::new(0.0, 0.0); self.dim()];
        for slot in e.iter_mut().skip(self.clones()) {
            *slot = Complex64::new(1.0, 0.0);
        }
        e
    }

    pub fn decompose(&self, tol: f64) -> Result<SpectralDecomposition<Complex64>> {
        herm_eig(&self.matrix, tol)
    }
}

/// Character block K: row j, clone m -> exp(2 pi i j (m+1) / k).
fn character_block(k: usize) -> Array2<Complex64> {
    let mut block = Array2::zeros((k, k - 1));
    for j in 0..k {
        for m in 0..k - 1 {
            let angle = 2.0 * std::f64::consts::PI * (j * (m + 1)) as f64 / k as f64;
            block[[j, m]] = Complex64::from_polar(1.0, angle);
        }
    }
    block
}

fn walk_preconditions(g: &Graph, a: usize) -> Result<usize> {
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
    if let Some(unreachable) = g.bfs_distances(0).iter().position(Option::is_none) {
        return Err(Error::Disconnected {
            from: 0,
            unreachable,
        });
    }
    Ok(k)
}

/// Builds the augmented matrix for marked vertex `a`.
pub fn augmented_matrix(g: &Graph, a: usize) -> Result<AugmentedMatrix> {
    let k = walk_preconditions(g, a)?;
    let (del, map) = g.vertex_deleted(a);
    let dim = k - 1 + del.n();
    let mut matrix = Array2::zeros((dim, dim));
    for w1 in 0..del.n() {
        for &w2 in del.neighbours(w1) {
            matrix[[k - 1 + w1, k - 1 + w2]] = Complex64::new(1.0, 0.0);
        }
    }
    let block = character_block(k);
    for (j, &v) in g.neighbours(a).iter().enumerate() {
        let w = map.to_new(v).expect("neighbour of a survives deletion");
        for m in 0..k - 1 {
            matrix[[k - 1 + w, m]] = block[[j, m]];
            matrix[[m, k - 1 + w]] = block[[j, m]].conj();
        }
    }
    Ok(AugmentedMatrix {
        matrix,
        k,
        marked: a,
        map,
    })
}

/// The nk x (n+k-2) block map N whose column space the coin-oracle product
/// reflects about: the character block on the marked vertex's arcs, an
/// all-ones column per surviving vertex. Applied matrix-free.
#[derive(Debug, Clone)]
pub struct SpanBasis {
    n: usize,
    k: usize,
    marked: usize,
    map: DeletionMap,
    block: Array2<Complex64>,
}

impl SpanBasis {
    pub fn new(g: &Graph, a: usize) -> Result<Self> {
        let k = walk_preconditions(g, a)?;
        let (_, map) = g.vertex_deleted(a);
        Ok(SpanBasis {
            n: g.n(),
            k,
            marked: a,
            map,
            block: character_block(k),
        })
    }

    pub fn domain_dim(&self) -> usize {
        self.n + self.k - 2
    }

    pub fn range_dim(&self) -> usize {
        self.n * self.k
    }

    /// N y.
    pub fn apply(&self, y: &[Complex64]) -> Vec<Complex64> {
        debug_assert_eq!(y.len(), self.domain_dim());
        let (n, k) = (self.n, self.k);
        let mut out = vec![Complex64::new(0.0, 0.0); n * k];
        for u in 0..n {
            if u == self.marked {
                for j in 0..k {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for m in 0..k - 1 {
                        acc += self.block[[j, m]] * y[m];
                    }
                    out[u * k + j] = acc;
                }
            } else {
                let w = self.map.to_new(u).unwrap();
                let val = y[k - 1 + w];
                for j in 0..k {
                    out[u * k + j] = val;
                }
            }
        }
        out
    }

    /// N* x.
    pub fn apply_adjoint(&self, x: &[Complex64]) -> Vec<Complex64> {
        debug_assert_eq!(x.len(), self.range_dim());
        let (n, k) = (self.n, self.k);
        let mut out = vec![Complex64::new(0.0, 0.0); self.domain_dim()];
        for u in 0..n {
            if u == self.marked {
                for m in 0..k - 1 {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for j in 0..k {
                        acc += self.block[[j, m]].conj() * x[u * k + j];
                    }
                    out[m] = acc;
                }
            } else {
                let w = self.map.to_new(u).unwrap();
                out[k - 1 + w] = x[u * k..(u + 1) * k].iter().sum();
            }
        }
        out
    }

    /// Dense form, for the small-instance projection reconstruction.
    pub fn materialize(&self) -> Array2<Complex64> {
        let mut m = Array2::zeros((self.range_dim(), self.domain_dim()));
        let mut y = vec![Complex64::new(0.0, 0.0); self.domain_dim()];
        for col in 0..self.domain_dim() {
            y.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
            y[col] = Complex64::new(1.0, 0.0);
            let image = self.apply(&y);
            for (row, z) in image.into_iter().enumerate() {
                m[[row, col]] = z;
            }
        }
        m
    }
}

/// One interior eigenphase: e^{i theta} with lambda = k cos(theta).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenphase {
    pub theta: f64,
    pub lambda: f64,
    pub multiplicity: usize,
}

/// Boundary eigenvalue of the augmented matrix (|lambda| = k), reported
/// separately because it does not parametrise a conjugate phase pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryValue {
    pub lambda: f64,
    pub multiplicity: usize,
}

/// The phase content of the walk step read off the augmented spectrum.
#[derive(Debug, Clone)]
pub struct EigenphaseMap {
    pub interior: Vec<Eigenphase>,
    pub boundary: Vec<BoundaryValue>,
}

/// Classifies the augmented spectrum into interior phases and boundary
/// values, ascending in lambda.
pub fn walk_eigenphases(g: &Graph, a: usize, tol: f64) -> Result<EigenphaseMap> {
    let aug = augmented_matrix(g, a)?;
    let k = aug.degree() as f64;
    let decomp = aug.decompose(tol)?;
    let mut map = EigenphaseMap {
        interior: Vec::new(),
        boundary: Vec::new(),
    };
    for pair in decomp.pairs() {
        if pair.value.abs() >= k * (1.0 - BOUNDARY_BAND) {
            map.boundary.push(BoundaryValue {
                lambda: pair.value,
                multiplicity: pair.multiplicity,
            });
        } else {
            map.interior.push(Eigenphase {
                theta: (pair.value / k).acos(),
                lambda: pair.value,
                multiplicity: pair.multiplicity,
            });
        }
    }
    Ok(map)
}

/// Rebuilds the walk projection onto the e^{i theta} eigenspace from the
/// augmented projection E~ for lambda = k cos(theta):
///
///   F = (N - e^{i theta} R N) E~ (N - e^{i theta} R N)* / (2 k sin^2 theta).
///
/// Dense output; intended for small instances and verification.
pub fn walk_eigenprojection(
    g: &Graph,
    a: usize,
    pair: &EigenPair<Complex64>,
) -> Result<Array2<Complex64>> {
    let basis = SpanBasis::new(g, a)?;
    let k = basis.k as f64;
    if pair.value.abs() >= k * (1.0 - BOUNDARY_BAND) {
        return Err(Error::EigenvalueOutsideDisc {
            lambda: pair.value,
            k,
        });
    }
    if pair.projection.nrows() != basis.domain_dim() {
        return Err(Error::DimensionMismatch {
            expected: basis.domain_dim(),
            found: pair.projection.nrows(),
        });
    }
    let theta = (pair.value / k).acos();
    let phase = Complex64::from_polar(1.0, theta);
    let arcs = ArcSpace::new(g)?;
    let n_mat = basis.materialize();
    let mut shifted = Array2::zeros((basis.range_dim(), basis.domain_dim()));
    for i in 0..basis.range_dim() {
        let r = arcs.reverse(i);
        for c in 0..basis.domain_dim() {
            shifted[[i, c]] = n_mat[[i, c]] - phase * n_mat[[r, c]];
        }
    }
    let adjoint = shifted.t().mapv(|z| z.conj());
    let scale = 1.0 / (2.0 * k * theta.sin().powi(2));
    Ok(shifted.dot(&pair.projection).dot(&adjoint) * Complex64::new(scale, 0.0))
}
